use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use mps_core::field::Field;
use mps_core::ideal::Ideal;
use mps_core::matrix::{MatrixJson, PolyMatrix};
use mps_core::poly::{Ring, RingJson};

/// Failure classes that map to process exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("{0}")]
    Fail(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Fail(_) => 1,
            CliError::Input(_) => 2,
            CliError::Certification(_) => 3,
        }
    }
}

/// Sorts a core error into an exit class.
pub fn classify(e: mps_core::Error) -> CliError {
    use mps_core::Error as E;
    match e {
        E::Certification(m) => CliError::Certification(m),
        E::Syntax { .. }
        | E::UnknownVariable(_)
        | E::FieldMismatch(_)
        | E::RingMismatch(_)
        | E::LengthMismatch(..)
        | E::BadSize { .. }
        | E::BadRange(_)
        | E::IndexOutOfRange { .. }
        | E::Invalid(_) => CliError::Input(e.to_string()),
        other => CliError::Fail(other.to_string()),
    }
}

/// `QQ`, `F101`, or either followed by parameters in parentheses, such as
/// `QQ(z)` for the rational function field in `z`.
pub fn parse_field(text: &str) -> Result<Field, CliError> {
    let text = text.trim();
    let (base, params) = match text.split_once('(') {
        Some((b, rest)) => {
            let inner = rest.strip_suffix(')').ok_or_else(|| CliError::Input(format!("unbalanced field {text:?}")))?;
            (b, inner.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect::<Vec<_>>())
        }
        None => (text, Vec::new()),
    };
    let base = match base {
        "QQ" | "Q" => Field::Rationals,
        b if b.starts_with('F') => {
            let p: u32 = b[1..].parse().map_err(|_| CliError::Input(format!("bad prime in {b:?}")))?;
            Field::prime(p).map_err(|e| CliError::Input(e.to_string()))?
        }
        other => return Err(CliError::Input(format!("unknown field {other:?}"))),
    };
    if params.is_empty() {
        return Ok(base);
    }
    Field::fractions(base, params).map_err(|e| CliError::Input(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// `{"ring": {...}, "gens": ["y^2 - x^3", ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealJson {
    pub ring: RingJson,
    #[serde(default)]
    pub gens: Vec<String>,
}

fn with_field(ring: Ring, field: Option<&Field>) -> Result<Ring, CliError> {
    match field {
        Some(f) => ring.with_field(f.clone()).map_err(classify),
        None => Ok(ring),
    }
}

impl IdealJson {
    pub fn build(&self, field: Option<&Field>) -> Result<Ideal, CliError> {
        let ring = with_field(self.ring.build().map_err(classify)?, field)?;
        Ideal::parse(&ring, &self.gens).map_err(classify)
    }
}

pub fn load_ideal(path: &Path, field: Option<&Field>) -> Result<Ideal, CliError> {
    read_json::<IdealJson>(path)?.build(field)
}

pub fn load_matrix(path: &Path, field: Option<&Field>) -> Result<PolyMatrix, CliError> {
    let m: MatrixJson = read_json(path)?;
    let ring = with_field(m.ring.build().map_err(classify)?, field)?;
    PolyMatrix::parse(&ring, &m.rows).map_err(classify)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields() {
        assert_eq!(parse_field("QQ").unwrap(), Field::Rationals);
        assert_eq!(parse_field("F101").unwrap(), Field::prime(101).unwrap());
        assert_eq!(parse_field("QQ(z)").unwrap(), Field::fractions(Field::Rationals, vec!["z".into()]).unwrap());
        assert!(parse_field("F100").is_err());
        assert!(parse_field("R").is_err());
        assert!(parse_field("QQ(z").is_err());
    }
}
