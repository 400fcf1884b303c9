//! Buchberger's algorithm for ideals and submodules of free modules, normal
//! forms, cofactor lifting and syzygies.

mod buchberger;
mod order;
mod terms;

use buchberger::{groebner, minimal_pairs, reduce, s_vector, Elt};
pub use order::{SchreyerData, TermOrder};
use terms::{to_poly, to_vector, Ctx, Terms};

use crate::poly::{FreeVector, Monomial, Polynomial, Ring};
use crate::{Error, Result};

/// A reduced Gröbner basis of an ideal (rank one) or of a submodule of
/// `R^rank`, optionally remembering how each element is expressed in the
/// original generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: TermOrder,
    rank: usize,
    elts: Vec<Elt>,
    ninputs: usize,
    tracked: bool,
}

fn check_polys(ring: &Ring, gens: &[Polynomial]) -> Result<()> {
    for g in gens {
        if g.ring() != ring {
            return Err(Error::RingMismatch(format!("{} vs {}", g.ring(), ring)));
        }
    }
    Ok(())
}

fn check_vectors(ring: &Ring, rank: usize, gens: &[FreeVector]) -> Result<()> {
    for g in gens {
        if g.ring() != ring {
            return Err(Error::RingMismatch(format!("{} vs {}", g.ring(), ring)));
        }
        if g.rank() != rank {
            return Err(Error::LengthMismatch(g.rank(), rank));
        }
    }
    Ok(())
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the ideal generated by `gens`.
    pub fn ideal(ring: &Ring, gens: &[Polynomial]) -> Result<GroebnerBasis> {
        Self::ideal_impl(ring, gens, false)
    }

    /// As [`GroebnerBasis::ideal`], also recording each basis element as a
    /// combination of `gens`.
    pub fn ideal_tracked(ring: &Ring, gens: &[Polynomial]) -> Result<GroebnerBasis> {
        Self::ideal_impl(ring, gens, true)
    }

    fn ideal_impl(ring: &Ring, gens: &[Polynomial], track: bool) -> Result<GroebnerBasis> {
        check_polys(ring, gens)?;
        let order = TermOrder::Top;
        let ctx = Ctx::new(ring, &order);
        let n = ring.nvars();
        let inputs = gens
            .iter()
            .enumerate()
            .map(|(i, g)| Elt { v: ctx.from_poly(g, 0), rep: if track { ctx.unit(i, n) } else { Vec::new() } })
            .collect();
        let elts = groebner(&ctx, inputs, true, track);
        Ok(GroebnerBasis { ring: ring.clone(), order, rank: 1, elts, ninputs: gens.len(), tracked: track })
    }

    /// Reduced Gröbner basis of the submodule of `R^rank` generated by `gens`.
    pub fn module(ring: &Ring, rank: usize, gens: &[FreeVector], order: TermOrder, track: bool) -> Result<GroebnerBasis> {
        check_vectors(ring, rank, gens)?;
        let ctx = Ctx::new(ring, &order);
        let n = ring.nvars();
        let inputs = gens
            .iter()
            .enumerate()
            .map(|(i, g)| Elt { v: ctx.from_vector(g), rep: if track { ctx.unit(i, n) } else { Vec::new() } })
            .collect();
        let elts = groebner(&ctx, inputs, rank == 1, track);
        Ok(GroebnerBasis { ring: ring.clone(), order: order.clone(), rank, elts, ninputs: gens.len(), tracked: track })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elts.is_empty()
    }

    /// Basis elements as polynomials (rank one only).
    pub fn polys(&self) -> Vec<Polynomial> {
        self.elts.iter().map(|e| to_poly(&self.ring, &e.v)).collect()
    }

    pub fn vectors(&self) -> Vec<FreeVector> {
        self.elts.iter().map(|e| to_vector(&self.ring, self.rank, &e.v)).collect()
    }

    /// Leading terms as `(component, monomial)`.
    pub fn leads(&self) -> Vec<(usize, Monomial)> {
        self.elts.iter().map(|e| (e.v[0].comp, e.v[0].mono.clone())).collect()
    }

    /// Whether the basis generates the whole free module.
    pub fn is_everything(&self) -> bool {
        (0..self.rank).all(|c| self.elts.iter().any(|e| e.v[0].comp == c && e.v[0].mono.is_one()))
    }

    /// Expression of each basis element in the original generators.
    pub fn representation(&self) -> Option<Vec<FreeVector>> {
        self.tracked.then(|| self.elts.iter().map(|e| to_vector(&self.ring, self.ninputs, &e.rep)).collect())
    }

    fn ctx(&self) -> Ctx<'_> {
        Ctx::new(&self.ring, &self.order)
    }

    fn refs(&self) -> Vec<&Elt> {
        self.elts.iter().collect()
    }

    fn reduce_terms(&self, v: Terms, track: bool) -> Elt {
        reduce(&self.ctx(), Elt { v, rep: Vec::new() }, &self.refs(), track)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let v = self.ctx().from_poly(f, 0);
        to_poly(&self.ring, &self.reduce_terms(v, false).v)
    }

    pub fn normal_form_vec(&self, f: &FreeVector) -> FreeVector {
        let v = self.ctx().from_vector(f);
        to_vector(&self.ring, self.rank, &self.reduce_terms(v, false).v)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_vec(&self, f: &FreeVector) -> bool {
        self.normal_form_vec(f).is_zero()
    }

    /// Cofactors `c` with `f = sum c_i * gens_i`, if `f` lies in the span.
    /// Requires a tracked basis.
    pub fn lift(&self, f: &Polynomial) -> Result<Option<Vec<Polynomial>>> {
        let v = self.ctx().from_poly(f, 0);
        self.lift_terms(v)
    }

    pub fn lift_vec(&self, f: &FreeVector) -> Result<Option<Vec<Polynomial>>> {
        let v = self.ctx().from_vector(f);
        self.lift_terms(v)
    }

    fn lift_terms(&self, v: Terms) -> Result<Option<Vec<Polynomial>>> {
        if !self.tracked {
            return Err(Error::Invalid("lifting needs a tracked Gröbner basis".into()));
        }
        let r = self.reduce_terms(v, true);
        if !r.v.is_empty() {
            return Ok(None);
        }
        let ctx = self.ctx();
        let minus = ctx.scale(&r.rep, &ctx.field.neg(&ctx.field.one()));
        Ok(Some(to_vector(&self.ring, self.ninputs, &minus).into_comps()))
    }

    /// Generators of the syzygies of the original generators (tracked basis).
    fn syzygy_terms(&self, inputs: &[Terms]) -> Vec<Terms> {
        let ctx = self.ctx();
        let n = self.ring.nvars();
        let refs = self.refs();
        let mut out: Vec<Terms> = Vec::new();
        let push = |t: Terms, out: &mut Vec<Terms>| {
            if !t.is_empty() && !out.contains(&t) {
                out.push(t);
            }
        };
        for (i, f) in inputs.iter().enumerate() {
            let r = reduce(&ctx, Elt { v: f.clone(), rep: ctx.unit(i, n) }, &refs, true);
            debug_assert!(r.v.is_empty());
            push(r.rep, &mut out);
        }
        for (i, j) in minimal_pairs(&self.elts) {
            let s = s_vector(&ctx, &self.elts[i], &self.elts[j], true);
            let r = reduce(&ctx, s, &refs, true);
            debug_assert!(r.v.is_empty());
            push(r.rep, &mut out);
        }
        out
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(ring: &Ring, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    Ok(GroebnerBasis::ideal(ring, gens)?.polys())
}

/// Remainder of `f` under division by the (not necessarily Gröbner) list `g`.
pub fn normal_form(f: &Polynomial, g: &[Polynomial]) -> Result<Polynomial> {
    let ring = f.ring();
    check_polys(ring, g)?;
    let order = TermOrder::Top;
    let ctx = Ctx::new(ring, &order);
    let basis: Vec<Elt> = g.iter().filter(|p| !p.is_zero()).map(|p| Elt { v: ctx.from_poly(p, 0), rep: Vec::new() }).collect();
    let refs: Vec<&Elt> = basis.iter().collect();
    let r = reduce(&ctx, Elt { v: ctx.from_poly(f, 0), rep: Vec::new() }, &refs, false);
    Ok(to_poly(ring, &r.v))
}

/// Generators of the module of syzygies of `gens`, as vectors in `R^len`.
pub fn syzygies(ring: &Ring, gens: &[Polynomial]) -> Result<Vec<FreeVector>> {
    let gb = GroebnerBasis::ideal_tracked(ring, gens)?;
    let ctx = gb.ctx();
    let inputs: Vec<Terms> = gens.iter().map(|g| ctx.from_poly(g, 0)).collect();
    Ok(gb.syzygy_terms(&inputs).iter().map(|t| to_vector(ring, gens.len(), t)).collect())
}

/// Generators of the syzygies among vectors of `R^rank`.
pub fn module_syzygies(ring: &Ring, rank: usize, gens: &[FreeVector]) -> Result<Vec<FreeVector>> {
    let gb = GroebnerBasis::module(ring, rank, gens, TermOrder::Top, true)?;
    let ctx = gb.ctx();
    let inputs: Vec<Terms> = gens.iter().map(|g| ctx.from_vector(g)).collect();
    Ok(gb.syzygy_terms(&inputs).iter().map(|t| to_vector(ring, gens.len(), t)).collect())
}

#[cfg(test)]
mod tests;
