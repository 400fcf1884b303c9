use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{BlockInner, MonomialOrder, Polynomial};
use crate::field::{Field, FieldJson};
use crate::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// A polynomial ring: coefficient field, named variables, monomial order.
/// Cheap to clone.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new(field: Field, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        if vars.is_empty() {
            return Err(Error::Invalid("a ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::Invalid(format!("invalid variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate variable {v}")));
            }
            if field.params().contains(v) {
                return Err(Error::Invalid(format!("variable {v} clashes with a field parameter")));
            }
        }
        order.validate(vars.len())?;
        Ok(Ring(Arc::new(RingData { field, vars, order })))
    }

    /// Grevlex ring over the given variable names.
    pub fn grevlex<S: AsRef<str>>(field: Field, vars: &[S]) -> Result<Ring> {
        Ring::new(field, vars.iter().map(|s| s.as_ref().to_string()).collect(), MonomialOrder::GrevLex)
    }

    pub fn lex<S: AsRef<str>>(field: Field, vars: &[S]) -> Result<Ring> {
        Ring::new(field, vars.iter().map(|s| s.as_ref().to_string()).collect(), MonomialOrder::Lex)
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self, i)
    }

    pub fn var_named(&self, name: &str) -> Result<Polynomial> {
        self.var_index(name).map(|i| self.var(i)).ok_or_else(|| Error::UnknownVariable(name.into()))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        Ring::new(self.field().clone(), self.vars().to_vec(), order)
    }

    pub fn with_field(&self, field: Field) -> Result<Ring> {
        Ring::new(field, self.vars().to_vec(), self.order().clone())
    }

    fn inner(&self) -> BlockInner {
        match self.order() {
            MonomialOrder::Lex => BlockInner::Lex,
            MonomialOrder::GrevLex => BlockInner::GrevLex,
            MonomialOrder::Block { inner, .. } => *inner,
        }
    }

    /// Same variables, reordered so that `first` is an elimination block.
    pub fn eliminating(&self, first: &[usize]) -> Result<Ring> {
        if self.order().eliminates(first) {
            return Ok(self.clone());
        }
        let rest: Vec<usize> = (0..self.nvars()).filter(|i| !first.contains(i)).collect();
        let mut blocks = vec![first.to_vec()];
        if !rest.is_empty() {
            blocks.push(rest);
        }
        self.with_order(MonomialOrder::Block { blocks, inner: self.inner() })
    }

    /// New ring with `names` prepended as an elimination block. Existing
    /// variables keep their relative order.
    pub fn extend_front<S: AsRef<str>>(&self, names: &[S]) -> Result<Ring> {
        let k = names.len();
        let mut vars: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        vars.extend(self.vars().iter().cloned());
        let shift = |b: &Vec<usize>| b.iter().map(|i| i + k).collect::<Vec<_>>();
        let order = match self.order() {
            MonomialOrder::Lex => MonomialOrder::Lex,
            MonomialOrder::GrevLex => MonomialOrder::Block {
                blocks: vec![(0..k).collect(), (k..k + self.nvars()).collect()],
                inner: BlockInner::GrevLex,
            },
            MonomialOrder::Block { blocks, inner } => {
                let mut b = vec![(0..k).collect::<Vec<_>>()];
                b.extend(blocks.iter().map(shift));
                MonomialOrder::Block { blocks: b, inner: *inner }
            }
        };
        Ring::new(self.field().clone(), vars, order)
    }

    /// Ring on a subset of the variables with the order's default restriction
    /// (lex stays lex, everything else becomes grevlex).
    pub fn subring(&self, keep: &[usize]) -> Result<Ring> {
        let vars = keep.iter().map(|&i| self.vars()[i].clone()).collect();
        let order = match self.order() {
            MonomialOrder::Lex => MonomialOrder::Lex,
            _ => MonomialOrder::GrevLex,
        };
        Ring::new(self.field().clone(), vars, order)
    }

    /// Parses a polynomial in this ring.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        super::parse::parse_polynomial(text, self)
    }

    pub fn parse_all<S: AsRef<str>>(&self, texts: &[S]) -> Result<Vec<Polynomial>> {
        texts.iter().map(|t| self.parse(t.as_ref())).collect()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field(), self.vars().join(","))
    }
}

/// JSON order: `"grevlex"`, `"lex"`, or `{"blocks": [["t"], ["x","y"]], "inner": "grevlex"}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum OrderJson {
    Named(String),
    Block { blocks: Vec<Vec<String>>, #[serde(default = "default_inner")] inner: String },
}

fn default_inner() -> String {
    "grevlex".into()
}

/// JSON ring: `{"field": {...}, "vars": ["x","y"], "order": "grevlex"}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RingJson {
    #[serde(default = "default_field")]
    pub field: FieldJson,
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderJson>,
}

fn default_field() -> FieldJson {
    FieldJson::Rationals
}

fn parse_inner(s: &str) -> Result<BlockInner> {
    match s.to_ascii_lowercase().as_str() {
        "lex" => Ok(BlockInner::Lex),
        "grevlex" => Ok(BlockInner::GrevLex),
        _ => Err(Error::Invalid(format!("unknown order {s:?}"))),
    }
}

impl RingJson {
    pub fn build(&self) -> Result<Ring> {
        let field = Field::try_from(&self.field)?;
        let order = match &self.order {
            None => MonomialOrder::GrevLex,
            Some(OrderJson::Named(s)) => match parse_inner(s)? {
                BlockInner::Lex => MonomialOrder::Lex,
                BlockInner::GrevLex => MonomialOrder::GrevLex,
            },
            Some(OrderJson::Block { blocks, inner }) => {
                let idx = |name: &String| {
                    self.vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.clone()))
                };
                let blocks = blocks.iter().map(|b| b.iter().map(idx).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
                MonomialOrder::Block { blocks, inner: parse_inner(inner)? }
            }
        };
        Ring::new(field, self.vars.clone(), order)
    }

    pub fn from_ring(ring: &Ring) -> RingJson {
        let order = match ring.order() {
            MonomialOrder::GrevLex => None,
            MonomialOrder::Lex => Some(OrderJson::Named("lex".into())),
            MonomialOrder::Block { blocks, inner } => Some(OrderJson::Block {
                blocks: blocks.iter().map(|b| b.iter().map(|&i| ring.vars()[i].clone()).collect()).collect(),
                inner: match inner {
                    BlockInner::Lex => "lex".into(),
                    BlockInner::GrevLex => "grevlex".into(),
                },
            }),
        };
        RingJson { field: FieldJson::from(ring.field()), vars: ring.vars().to_vec(), order }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_rings() {
        assert!(Ring::grevlex(Field::Rationals, &["x", "x"]).is_err());
        assert!(Ring::grevlex(Field::Rationals, &[] as &[&str]).is_err());
        let f = Field::fractions(Field::Rationals, vec!["z".into()]).unwrap();
        assert!(Ring::grevlex(f, &["x", "z"]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let j: RingJson = serde_json::from_str(
            r#"{"field":{"kind":"Fp","p":101},"vars":["t","x","y"],"order":{"blocks":[["t"],["x","y"]]}}"#,
        )
        .unwrap();
        let r = j.build().unwrap();
        assert!(r.order().eliminates(&[0]));
        assert_eq!(RingJson::from_ring(&r).build().unwrap(), r);
    }

    #[test]
    fn extension_eliminates_new_variables() {
        let r = Ring::grevlex(Field::Rationals, &["x", "y"]).unwrap();
        let s = r.extend_front(&["t"]).unwrap();
        assert_eq!(s.vars(), &["t", "x", "y"]);
        assert!(s.order().eliminates(&[0]));
    }
}
