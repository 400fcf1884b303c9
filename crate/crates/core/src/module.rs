//! Submodules of free modules `R^rank` and the quotient operations built on
//! syzygies.

use std::sync::{Arc, OnceLock};

use crate::groebner::{module_syzygies, GroebnerBasis, TermOrder};
use crate::ideal::{Ideal, SATURATION_BOUND};
use crate::matrix::PolyMatrix;
use crate::poly::{FreeVector, Monomial, Polynomial, Ring};
use crate::{Error, Result};

/// `N ⊆ R^rank` given by generators. The module GB (position-over-term) is
/// computed on first use.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: Ring,
    rank: usize,
    gens: Vec<FreeVector>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

impl Submodule {
    pub fn new(ring: &Ring, rank: usize, gens: Vec<FreeVector>) -> Result<Submodule> {
        let mut kept: Vec<FreeVector> = Vec::new();
        for g in gens {
            if g.rank() != rank {
                return Err(Error::LengthMismatch(g.rank(), rank));
            }
            if g.ring() != ring {
                return Err(Error::RingMismatch(format!("{} vs {}", g.ring(), ring)));
            }
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(Submodule { ring: ring.clone(), rank, gens: kept, gb: OnceLock::new() })
    }

    /// Column span of `m` inside `R^rows`.
    pub fn column_span(m: &PolyMatrix) -> Submodule {
        Submodule::new(m.ring(), m.nrows(), m.columns()).expect("columns share the ring")
    }

    pub fn zero(ring: &Ring, rank: usize) -> Submodule {
        Submodule::new(ring, rank, Vec::new()).expect("empty")
    }

    pub fn free(ring: &Ring, rank: usize) -> Submodule {
        Submodule::new(ring, rank, (0..rank).map(|i| FreeVector::unit(ring, rank, i)).collect()).expect("units")
    }

    /// `I · R^rank`.
    pub fn ideal_times_free(ideal: &Ideal, rank: usize) -> Submodule {
        let ring = ideal.ring();
        let mut gens = Vec::new();
        for i in 0..rank {
            let e = FreeVector::unit(ring, rank, i);
            gens.extend(ideal.gens().iter().map(|g| e.scale(g)));
        }
        Submodule::new(ring, rank, gens).expect("same ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[FreeVector] {
        &self.gens
    }

    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            Arc::new(
                GroebnerBasis::module(&self.ring, self.rank, &self.gens, TermOrder::Pot, false)
                    .expect("validated generators"),
            )
        })
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, v: &FreeVector) -> bool {
        self.gb().contains_vec(v)
    }

    pub fn contains_module(&self, other: &Submodule) -> bool {
        other.gens.iter().all(|v| self.contains(v))
    }

    pub fn equals(&self, other: &Submodule) -> bool {
        self.rank == other.rank && self.contains_module(other) && other.contains_module(self)
    }

    pub fn normal_form(&self, v: &FreeVector) -> FreeVector {
        self.gb().normal_form_vec(v)
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Submodule::new(&self.ring, self.rank, gens)
    }

    pub fn add_gens(&self, extra: &[FreeVector]) -> Result<Submodule> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Submodule::new(&self.ring, self.rank, gens)
    }

    /// `I · N`.
    pub fn ideal_times(&self, ideal: &Ideal) -> Submodule {
        let mut gens = Vec::new();
        for v in &self.gens {
            gens.extend(ideal.gens().iter().map(|g| v.scale(g)));
        }
        Submodule::new(&self.ring, self.rank, gens).expect("same ring")
    }

    pub fn transfer(&self, target: &Ring) -> Result<Submodule> {
        let gens = self.gens.iter().map(|v| v.transfer(target)).collect::<Result<Vec<_>>>()?;
        Submodule::new(target, self.rank, gens)
    }

    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        if self.is_zero() || other.is_zero() {
            return Ok(Submodule::zero(&self.ring, self.rank));
        }
        let mut all = self.gens.clone();
        all.extend(other.gens.iter().cloned());
        let k = self.gens.len();
        let syz = module_syzygies(&self.ring, self.rank, &all)?;
        let mut gens = Vec::with_capacity(syz.len());
        for s in syz {
            gens.push(FreeVector::from_polys(&self.ring, s.comps()[..k].to_vec()).contract(&self.gens)?);
        }
        Submodule::new(&self.ring, self.rank, gens)
    }

    /// `{r in R : r v in N}`.
    pub fn element_colon(&self, v: &FreeVector) -> Result<Ideal> {
        if v.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let mut all = vec![v.clone()];
        all.extend(self.gens.iter().cloned());
        let syz = module_syzygies(&self.ring, self.rank, &all)?;
        Ideal::new(&self.ring, syz.into_iter().map(|s| s.get(0).clone()).collect())
    }

    /// `Ann(R^rank / N) = {r : r R^rank ⊆ N}`.
    pub fn quotient_annihilator(&self) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for i in 0..self.rank {
            acc = acc.intersect(&self.element_colon(&FreeVector::unit(&self.ring, self.rank, i))?)?;
        }
        Ok(acc)
    }

    /// `{v in R^rank : g v in N}`.
    pub fn divide_by(&self, g: &Polynomial) -> Result<Submodule> {
        if g.is_zero() {
            return Err(Error::ZeroColonDivisor);
        }
        let mut all: Vec<FreeVector> = (0..self.rank).map(|i| FreeVector::unit(&self.ring, self.rank, i).scale(g)).collect();
        all.extend(self.gens.iter().cloned());
        let syz = module_syzygies(&self.ring, self.rank, &all)?;
        let gens = syz.into_iter().map(|s| FreeVector::from_polys(&self.ring, s.comps()[..self.rank].to_vec())).collect();
        Submodule::new(&self.ring, self.rank, gens)
    }

    /// `{v in R^rank : J v ⊆ N}`.
    pub fn colon_ideal(&self, j: &Ideal) -> Result<Submodule> {
        if j.is_zero() {
            return Err(Error::ZeroColonDivisor);
        }
        let mut acc: Option<Submodule> = None;
        for g in j.gens() {
            let part = self.divide_by(g)?;
            acc = Some(match acc {
                None => part,
                Some(a) => a.intersect(&part)?,
            });
        }
        Ok(acc.expect("nonzero ideal has generators"))
    }

    /// `N : J^∞` with the least `k` such that `N : J^k = N : J^(k+1)`.
    pub fn saturate(&self, j: &Ideal) -> Result<(Submodule, usize)> {
        let mut cur = self.clone();
        for k in 0..=SATURATION_BOUND {
            let next = cur.colon_ideal(j)?;
            if cur.contains_module(&next) {
                return Ok((cur, k));
            }
            cur = next;
        }
        Err(Error::NoStabilization(SATURATION_BOUND))
    }

    /// Leading terms of the module GB, as `(component, monomial)`.
    pub fn leads(&self) -> Vec<(usize, Monomial)> {
        self.gb().leads()
    }

    /// `dim_k R^rank / N`, by counting standard pairs.
    pub fn quotient_dim(&self) -> Result<usize> {
        count_standard(&self.leads(), self.rank, self.ring.nvars())
    }
}

/// Number of `(component, monomial)` pairs not divisible by any lead, for
/// `components` components in `nvars` variables. Fails with `NotArtinian`
/// unless every component has a pure power of every variable among its leads.
pub fn count_standard(leads: &[(usize, Monomial)], components: usize, nvars: usize) -> Result<usize> {
    let mut total = 0;
    for c in 0..components {
        let mine: Vec<&Monomial> = leads.iter().filter(|(k, _)| *k == c).map(|(_, m)| m).collect();
        if mine.iter().any(|m| m.is_one()) {
            continue;
        }
        let mut bounds = vec![u32::MAX; nvars];
        for m in &mine {
            let support: Vec<usize> = m.support().collect();
            if support.len() == 1 {
                let v = support[0];
                bounds[v] = bounds[v].min(m.exponents()[v]);
            }
        }
        if bounds.contains(&u32::MAX) {
            return Err(Error::NotArtinian);
        }
        total += count_below(&mine, &bounds);
    }
    Ok(total)
}

/// Walks the box `[0, bounds)` depth-first, skipping any monomial divisible
/// by a lead. Divisibility is upward closed, so a blocked prefix in the last
/// variable cuts the rest of that line.
fn count_below(leads: &[&Monomial], bounds: &[u32]) -> usize {
    let n = bounds.len();
    let mut exps = vec![0u32; n];
    let mut count = 0;
    fn rec(pos: usize, exps: &mut Vec<u32>, bounds: &[u32], leads: &[&Monomial], count: &mut usize) {
        if pos == bounds.len() {
            *count += 1;
            return;
        }
        for e in 0..bounds[pos] {
            exps[pos] = e;
            let blocked = leads.iter().any(|m| {
                m.exponents().iter().enumerate().all(|(i, &a)| if i <= pos { a <= exps[i] } else { a == 0 })
            });
            if blocked {
                break;
            }
            rec(pos + 1, exps, bounds, leads, count);
        }
        exps[pos] = 0;
    }
    if n == 0 {
        return if leads.is_empty() { 1 } else { 0 };
    }
    rec(0, &mut exps, bounds, leads, &mut count);
    count
}
