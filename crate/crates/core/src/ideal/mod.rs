//! Ideals of polynomial rings and the standard ideal-theoretic operations,
//! plus fractional ideals over quotient rings.

mod fractional;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use fractional::{frac_power_stabilize, FractionalIdeal, QuotientRingContext, Stabilized};

use crate::groebner::GroebnerBasis;
use crate::poly::{Polynomial, Ring};
use crate::{Error, Result};

/// Default bound on saturation steps.
pub const SATURATION_BOUND: usize = 30;

/// An ideal given by generators, with a lazily computed reduced Gröbner
/// basis under the ring's order.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

/// Variable names not already used by the ring or its field.
pub(crate) fn fresh_names(ring: &Ring, stem: &str, k: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < k {
        let name = format!("{stem}{i}");
        if ring.var_index(&name).is_none() && !ring.field().params().contains(&name) {
            out.push(name);
        }
        i += 1;
    }
    out
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch(format!("{} vs {}", g.ring(), ring)));
            }
        }
        let mut kept: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(Ideal { ring: ring.clone(), gens: kept, gb: OnceLock::new() })
    }

    pub fn parse<S: AsRef<str>>(ring: &Ring, gens: &[S]) -> Result<Ideal> {
        Ideal::new(ring, ring.parse_all(gens)?)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)], gb: OnceLock::new() }
    }

    pub fn principal(f: &Polynomial) -> Ideal {
        Ideal::new(f.ring(), vec![f.clone()]).expect("same ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced Gröbner basis, computed on first use.
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| Arc::new(GroebnerBasis::ideal(&self.ring, &self.gens).expect("ring checked")))
    }

    pub fn reduced_gb(&self) -> Vec<Polynomial> {
        self.gb().polys()
    }

    /// Generators replaced by the reduced Gröbner basis.
    pub fn canonical(&self) -> Ideal {
        let gens = self.reduced_gb();
        let out = Ideal { ring: self.ring.clone(), gens, gb: OnceLock::new() };
        if let Some(gb) = self.gb.get() {
            let _ = out.gb.set(gb.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_everything()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.gb().normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.gb().contains(f)
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    /// Whether `other` ⊆ `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(other.gens.iter().all(|g| self.contains(g)))
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn add_gens(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn scale(&self, f: &Polynomial) -> Result<Ideal> {
        Ideal::new(&self.ring, self.gens.iter().map(|g| g * f).collect())
    }

    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring").canonical_if_large();
        }
        acc
    }

    fn canonical_if_large(self) -> Ideal {
        if self.gens.len() > 12 {
            self.canonical()
        } else {
            self
        }
    }

    /// Moves the ideal into another ring by variable names.
    pub fn transfer(&self, target: &Ring) -> Result<Ideal> {
        Ideal::new(target, self.gens.iter().map(|g| g.transfer(target)).collect::<Result<_>>()?)
    }

    /// `I ∩ k[remaining variables]`, kept in the same ring.
    pub fn eliminate(&self, drop: &[usize]) -> Result<Ideal> {
        if drop.is_empty() {
            return Ok(self.canonical());
        }
        let er = self.ring.eliminating(drop)?;
        let gb = GroebnerBasis::ideal(&er, &self.transfer(&er)?.gens)?;
        let kept = gb
            .polys()
            .into_iter()
            .filter(|p| p.support().iter().all(|v| !drop.contains(v)))
            .map(|p| p.transfer(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, kept)
    }

    pub fn eliminate_named<S: AsRef<str>>(&self, drop: &[S]) -> Result<Ideal> {
        let idx = drop
            .iter()
            .map(|n| self.ring.var_index(n.as_ref()).ok_or_else(|| Error::UnknownVariable(n.as_ref().into())))
            .collect::<Result<Vec<_>>>()?;
        self.eliminate(&idx)
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let tag = fresh_names(&self.ring, "tag", 1);
        let big = self.ring.extend_front(&tag)?;
        let t = big.var(0);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&t * &g.transfer(&big)?);
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.transfer(&big)?);
        }
        let elim = Ideal::new(&big, gens)?.eliminate(&[0])?;
        elim.transfer(&self.ring)
    }

    /// `I : (g)`.
    pub fn colon_element(&self, g: &Polynomial) -> Result<Ideal> {
        if g.is_zero() {
            return Err(Error::ZeroColonDivisor);
        }
        if self.contains(g) {
            return Ok(Ideal::unit(&self.ring));
        }
        let meet = self.intersect(&Ideal::principal(g))?;
        let gens = meet
            .gens
            .iter()
            .map(|h| h.div_exact(g)?.ok_or_else(|| Error::Certification("intersection element not divisible".into())))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `I : J`, intersected over the generators of `J`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        if other.is_zero() {
            return Err(Error::ZeroColonDivisor);
        }
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let c = self.colon_element(g)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c)?.canonical(),
            });
        }
        Ok(acc.expect("nonzero divisor"))
    }

    /// `I : J^∞` and the first `k` with `I : J^k = I : J^(k+1)`.
    pub fn saturate(&self, other: &Ideal) -> Result<(Ideal, usize)> {
        self.saturate_bounded(other, SATURATION_BOUND)
    }

    pub fn saturate_bounded(&self, other: &Ideal, bound: usize) -> Result<(Ideal, usize)> {
        let mut cur = self.clone();
        for k in 0..=bound {
            let next = cur.colon(other)?;
            if cur.contains_ideal(&next)? {
                return Ok((cur, k));
            }
            cur = next;
        }
        Err(Error::NoStabilization(bound))
    }

    /// Rabinowitsch test: `f` lies in the radical iff `I + (1 - w f)` is the
    /// unit ideal.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", f.ring(), self.ring)));
        }
        let w = fresh_names(&self.ring, "w", 1);
        let big = self.ring.extend_front(&w)?;
        let mut gens = self.transfer(&big)?.gens;
        gens.push(&Polynomial::one(&big) - &(&big.var(0) * &f.transfer(&big)?));
        Ok(Ideal::new(&big, gens)?.is_unit())
    }

    /// Generators sorted canonically, for printing and comparison.
    pub fn gb_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.reduced_gb().iter().map(|p| p.to_string()).collect();
        v.sort();
        v
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Kernel of `target -> source / source_ideal` sending the `i`-th target
/// variable to `images[i]`, by elimination from the graph ideal.
pub fn kernel_of_map(target: &Ring, source_ideal: &Ideal, images: &[Polynomial]) -> Result<Ideal> {
    let source = source_ideal.ring();
    if images.len() != target.nvars() {
        return Err(Error::LengthMismatch(images.len(), target.nvars()));
    }
    let graph = graph_ring(source, target)?;
    let mut gens = source_ideal.transfer(&graph)?.gens;
    for (i, f) in images.iter().enumerate() {
        gens.push(&graph.var(source.nvars() + i) - &f.transfer(&graph)?);
    }
    let drop: Vec<usize> = (0..source.nvars()).collect();
    Ideal::new(&graph, gens)?.eliminate(&drop)?.transfer(target)
}

/// Ring on source variables followed by target variables, with the source
/// block eliminated first.
pub fn graph_ring(source: &Ring, target: &Ring) -> Result<Ring> {
    if source.field() != target.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", source.field(), target.field())));
    }
    for v in source.vars() {
        if target.var_index(v).is_some() {
            return Err(Error::Invalid(format!("variable {v} appears in source and target")));
        }
    }
    let vars: Vec<String> = source.vars().iter().chain(target.vars()).cloned().collect();
    let m = source.nvars();
    let order = crate::poly::MonomialOrder::Block {
        blocks: vec![(0..m).collect(), (m..vars.len()).collect()],
        inner: crate::poly::BlockInner::GrevLex,
    };
    Ring::new(source.field().clone(), vars, order)
}
