//! Dimension, codimension, lengths and resolutions.

mod resolution;
#[cfg(test)]
mod tests;

pub use resolution::{free_resolution, ideal_presentation, is_perfect, FreeResolution, Perfection};

use crate::field::Field;
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::module::Submodule;
use crate::poly::{Monomial, MonomialOrder, Ring};
use crate::{Error, Result};

/// Something presented as a quotient `R^m / N` of a free module.
pub trait Cokernel {
    fn relations(&self) -> Submodule;
}

impl Cokernel for Ideal {
    fn relations(&self) -> Submodule {
        Submodule::ideal_times_free(self, 1)
    }
}

impl Cokernel for Submodule {
    fn relations(&self) -> Submodule {
        self.clone()
    }
}

impl Cokernel for PolyMatrix {
    fn relations(&self) -> Submodule {
        Submodule::column_span(self)
    }
}

/// Largest set of variables no lead monomial is supported in.
pub fn max_independent_set(leads: &[Monomial], nvars: usize) -> Vec<usize> {
    fn rec(v: usize, nvars: usize, cur: &mut Vec<usize>, best: &mut Vec<usize>, leads: &[Monomial]) {
        if cur.len() + (nvars - v) <= best.len() {
            return;
        }
        if v == nvars {
            *best = cur.clone();
            return;
        }
        cur.push(v);
        let ok = !leads.iter().any(|m| m.exponents()[v] > 0 && m.support().all(|i| cur.contains(&i)));
        if ok {
            rec(v + 1, nvars, cur, best, leads);
        }
        cur.pop();
        rec(v + 1, nvars, cur, best, leads);
    }
    if leads.iter().any(Monomial::is_one) {
        return Vec::new();
    }
    let mut best = Vec::new();
    let mut cur = Vec::new();
    rec(0, nvars, &mut cur, &mut best, leads);
    best
}

/// Krull dimension of `R / I`; `-1` for the unit ideal.
pub fn krull_dim(i: &Ideal) -> i64 {
    if i.is_unit() {
        return -1;
    }
    let leads: Vec<Monomial> = i.gb().leads().into_iter().map(|(_, m)| m).collect();
    max_independent_set(&leads, i.ring().nvars()).len() as i64
}

/// Codimension of a proper ideal, which over a polynomial ring is its grade.
pub fn codim_grade(i: &Ideal) -> Result<usize> {
    if i.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(i.ring().nvars() - krull_dim(i) as usize)
}

/// `dim_k` of a finite-dimensional quotient.
pub fn length_artinian<M: Cokernel + ?Sized>(m: &M) -> Result<usize> {
    m.relations().quotient_dim()
}

/// Whether `vars` is independent modulo `p`: no lead monomial of `p` is
/// supported inside `vars`.
pub fn is_independent(p: &Ideal, vars: &[usize]) -> bool {
    if p.is_unit() {
        return false;
    }
    !p.gb().leads().iter().any(|(_, m)| m.support().all(|i| vars.contains(&i)))
}

/// Length of `M` at the generic point of the prime `p`, with `invert` an
/// independent set of variables modulo `p` that is moved into the
/// coefficient field. The `k(U)`-dimension of the `p`-primary part is
/// divided by the degree of `p` over `k(U)`.
pub fn local_length<M: Cokernel + ?Sized, S: AsRef<str>>(m: &M, p: &Ideal, invert: &[S]) -> Result<usize> {
    let n = m.relations();
    let ring = n.ring().clone();
    let names: Vec<String> = invert.iter().map(|s| s.as_ref().to_string()).collect();
    let mut idx = Vec::with_capacity(names.len());
    for s in &names {
        idx.push(ring.var_index(s).ok_or_else(|| Error::UnknownVariable(s.clone()))?);
    }
    if !is_independent(p, &idx) {
        return Err(Error::NotIndependent(names));
    }
    let local = localize(&ring, &idx)?;
    let n = n.transfer(&local)?;
    let p = p.transfer(&local)?;
    let after = |e: Error| match e {
        Error::NotArtinian => Error::NotArtinianAfterLocalization(names.clone()),
        e => e,
    };
    let total = n.quotient_dim().map_err(after)?;
    let (sat, _) = n.saturate(&p)?;
    let rest = sat.quotient_dim().map_err(after)?;
    let degree = p.relations().quotient_dim().map_err(after)?;
    let primary = total - rest;
    if degree == 0 || primary % degree != 0 {
        return Err(Error::Certification(format!("primary part of dimension {primary} over a prime of degree {degree}")));
    }
    Ok(primary / degree)
}

/// `R` with the variables in `invert` moved into the coefficient field.
pub fn localize(ring: &Ring, invert: &[usize]) -> Result<Ring> {
    if invert.is_empty() {
        return Ok(ring.clone());
    }
    let keep: Vec<String> =
        (0..ring.nvars()).filter(|i| !invert.contains(i)).map(|i| ring.vars()[i].clone()).collect();
    if keep.is_empty() {
        return Err(Error::Invalid("no variables remain after localization".into()));
    }
    let mut params = ring.field().params().to_vec();
    params.extend(invert.iter().map(|&i| ring.vars()[i].clone()));
    let field = Field::fractions(ring.field().base().clone(), params)?;
    Ring::new(field, keep, MonomialOrder::GrevLex)
}
