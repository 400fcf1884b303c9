//! Dense matrices over polynomial rings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::{FreeVector, Polynomial, Ring, RingJson};
use crate::{Error, Result};

/// A dense `rows x cols` matrix of polynomials. Columns are read as vectors
/// of `R^rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<PolyMatrix> {
        let nrows = rows.len();
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        if nrows == 0 || ncols == 0 {
            return Err(Error::Invalid("matrix must have at least one row and column".into()));
        }
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::LengthMismatch(row.len(), ncols));
            }
            for e in row {
                if e.ring() != ring {
                    return Err(Error::RingMismatch(format!("{} vs {}", e.ring(), ring)));
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: nrows, cols: ncols, entries })
    }

    pub fn parse<S: AsRef<str>>(ring: &Ring, rows: &[Vec<S>]) -> Result<PolyMatrix> {
        let rows = rows.iter().map(|r| ring.parse_all(r)).collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(ring, rows)
    }

    /// Matrix whose columns are the given vectors of `R^rows`.
    pub fn from_columns(ring: &Ring, rows: usize, cols: &[FreeVector]) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c.get(i).clone());
            }
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn row_vector(&self, i: usize) -> FreeVector {
        FreeVector::from_polys(&self.ring, self.row(i))
    }

    pub fn column(&self, j: usize) -> FreeVector {
        FreeVector::from_polys(&self.ring, (0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<FreeVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch(self.cols, other.rows));
        }
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> PolyMatrix {
        self.submatrix(rows, &(0..self.cols).collect::<Vec<_>>())
    }

    pub fn select_cols(&self, cols: &[usize]) -> PolyMatrix {
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), cols)
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hconcat(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows {
            return Err(Error::LengthMismatch(self.rows, other.rows));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Ok(PolyMatrix::from_columns(&self.ring, self.rows, &cols))
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Result<Polynomial>, ring: &Ring) -> Result<PolyMatrix> {
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn transfer(&self, target: &Ring) -> Result<PolyMatrix> {
        self.map(|p| p.transfer(target), target)
    }

    pub fn scale(&self, f: &Polynomial) -> PolyMatrix {
        self.map(|p| Ok(p * f), &self.ring).expect("infallible")
    }

    /// Rows with string entries, for reports.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_strings().into_iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// JSON matrix: `{"ring": {...}, "rows": [["y", "-x"], ["-x^2", "y"]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub ring: RingJson,
    pub rows: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn build(&self) -> Result<PolyMatrix> {
        let ring = self.ring.build()?;
        PolyMatrix::parse(&ring, &self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn product_and_transpose() {
        let r = Ring::grevlex(Field::Rationals, &["x", "y"]).unwrap();
        let a = PolyMatrix::parse(&r, &[vec!["x", "y"], vec!["0", "1"]]).unwrap();
        let b = PolyMatrix::parse(&r, &[vec!["y"], vec!["-x"]]).unwrap();
        let c = a.mul(&b).unwrap();
        assert!(c.get(0, 0).is_zero());
        assert_eq!(c.get(1, 0).to_string(), "-x");
        assert_eq!(a.transpose().get(1, 0).to_string(), "y");
        assert!(a.mul(&a.transpose().select_cols(&[0])).is_ok());
        assert!(PolyMatrix::parse(&r, &[vec!["x"], vec!["x", "y"]]).is_err());
    }
}
