//! Linkage of determinantal ideals, conductor identities, Rees charts and
//! Koszul homology.

mod conductor;
mod koszul;

pub use conductor::{conductor_suite, rees_algebra, rees_chart_check, self_linkage_check, ConductorVerdicts, ReesChart, ReesIdeal, SelfLinkage};
pub use koszul::{
    generic_matrix, koszul_identity_checks, specialization_check, strong_perfection_instance, Homology, KoszulComplex,
    KoszulIdentities, ModuleVerdict, Specialization, StrongPerfection,
};

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::determinantal::{build_delta, minors_ideal, subsets};
use crate::dim::codim_grade;
use crate::ideal::{Ideal, QuotientRingContext};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::{Error, Result};

/// Draw limit for seeded searches.
pub const SEARCH_BUDGET: usize = 20;

/// One of the four conditions on the ideals of minors.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Condition {
    pub size: usize,
    /// `grade I_size(X)` against `n - size + 1`; `None` for the unit ideal.
    pub grade: Option<usize>,
    pub expected_grade: usize,
    pub grade_holds: bool,
    /// `I_size(X) = I_size` of the last `size` rows.
    pub last_rows_holds: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Hypotheses {
    pub at_p: Condition,
    pub at_p1: Condition,
}

impl Hypotheses {
    pub fn admissible(&self) -> bool {
        self.at_p.grade_holds && self.at_p.last_rows_holds && self.at_p1.grade_holds && self.at_p1.last_rows_holds
    }
}

/// A matrix `X` with a minor size `p`, over `A = R / I_(p+1)(X)`.
#[derive(Clone, Debug)]
pub struct LinkageInstance {
    matrix: PolyMatrix,
    p: usize,
    ctx: QuotientRingContext,
    j: Ideal,
    hypotheses: Hypotheses,
}

fn condition(x: &PolyMatrix, size: usize) -> Result<Condition> {
    let (m, n) = (x.nrows(), x.ncols());
    let full = minors_ideal(x, size)?;
    let grade = codim_grade(&full).ok();
    let expected_grade = n + 1 - size;
    let last = x.select_rows(&(m - size..m).collect::<Vec<_>>());
    let last_rows_holds = full.equals(&minors_ideal(&last, size)?)?;
    Ok(Condition { size, grade, expected_grade, grade_holds: grade == Some(expected_grade), last_rows_holds })
}

impl LinkageInstance {
    /// Computes the four conditions; an instance failing them is still
    /// returned, with the verdict recorded.
    pub fn new(matrix: &PolyMatrix, p: usize) -> Result<LinkageInstance> {
        let (m, n) = (matrix.nrows(), matrix.ncols());
        if m < 2 || n < m {
            return Err(Error::BadRange(format!("need n >= m >= 2, got {m}x{n}")));
        }
        if p == 0 || p >= m {
            return Err(Error::BadRange(format!("p = {p} outside 1..{m}")));
        }
        let hypotheses = Hypotheses { at_p: condition(matrix, p)?, at_p1: condition(matrix, p + 1)? };
        let ctx = QuotientRingContext::new(minors_ideal(matrix, p + 1)?)?;
        let j = ctx.absorb(&minors_ideal(matrix, p)?)?;
        Ok(LinkageInstance { matrix: matrix.clone(), p, ctx, j, hypotheses })
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn context(&self) -> &QuotientRingContext {
        &self.ctx
    }

    /// `I_p(X) + I_(p+1)(X)`.
    pub fn j(&self) -> &Ideal {
        &self.j
    }

    pub fn hypotheses(&self) -> &Hypotheses {
        &self.hypotheses
    }

    pub fn last_rows(&self) -> Vec<usize> {
        let m = self.matrix.nrows();
        (m - self.p..m).collect()
    }

    /// `Σ_k a^k d_i^k` for the row set `i`.
    pub fn delta_for(&self, rows: &[usize], coeffs: &BTreeMap<Vec<usize>, Polynomial>) -> Result<Polynomial> {
        build_delta(&self.matrix, self.p, rows, coeffs)
    }

    /// A regular `Δ` built on the last `p` rows: a single minor if one is
    /// regular, else seeded combinations with coefficients in `0..4`.
    pub fn find_regular_delta(&self, seed: u64, budget: usize) -> Result<DeltaChoice> {
        let rows = self.last_rows();
        let cols = subsets(self.matrix.ncols(), self.p);
        let ring = self.matrix.ring();
        for k in &cols {
            let coeffs = BTreeMap::from([(k.clone(), Polynomial::one(ring))]);
            let d = self.delta_for(&rows, &coeffs)?;
            if !d.is_zero() && self.ctx.is_regular(&d)? {
                return Ok(DeltaChoice { delta: d, coeffs, draws: 0, single_minor: true });
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for draw in 1..=budget {
            let coeffs: BTreeMap<Vec<usize>, Polynomial> =
                cols.iter().map(|k| (k.clone(), Polynomial::from_int(ring, rng.gen_range(0..4)))).collect();
            let d = self.delta_for(&rows, &coeffs)?;
            if !d.is_zero() && self.ctx.is_regular(&d)? {
                return Ok(DeltaChoice { delta: d, coeffs, draws: draw, single_minor: false });
            }
        }
        Err(Error::BudgetExhausted(budget))
    }

    /// Certifies `delta` and builds the ideal `I` of all `Δ_i`.
    pub fn link(&self, choice: &DeltaChoice) -> Result<Linkage> {
        let delta = &choice.delta;
        if !self.j.contains(delta) {
            return Err(Error::RegularityCertificationFailed(format!("{delta} is not in J")));
        }
        if !self.ctx.is_regular(delta)? {
            return Err(Error::RegularityCertificationFailed(format!("{delta} is a zerodivisor")));
        }
        let mut gens = Vec::new();
        for rows in subsets(self.matrix.nrows(), self.p) {
            gens.push(self.delta_for(&rows, &choice.coeffs)?);
        }
        let i = self.ctx.ideal(&gens)?;
        Ok(Linkage { instance: self.clone(), delta: delta.clone(), deltas: gens, i })
    }
}

/// A regular element of the required shape, with its coefficients.
#[derive(Clone, Debug)]
pub struct DeltaChoice {
    pub delta: Polynomial,
    pub coeffs: BTreeMap<Vec<usize>, Polynomial>,
    /// Random draws used; `0` when a single minor was regular.
    pub draws: usize,
    pub single_minor: bool,
}

#[derive(Clone, Debug)]
pub struct Linkage {
    pub instance: LinkageInstance,
    pub delta: Polynomial,
    /// `Δ_i` for every row subset, in lexicographic order.
    pub deltas: Vec<Polynomial>,
    /// `(Δ_i) + I_(p+1)(X)`.
    pub i: Ideal,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LinkageVerdict {
    /// `IJ = ΔJ`.
    pub product: bool,
    /// `J = (Δ) : I`.
    pub colon: bool,
    pub delta_in_i: bool,
    pub i_in_j: bool,
    pub j_in_colon: bool,
}

impl LinkageVerdict {
    /// The inclusions that hold on every instance.
    pub fn inclusions_hold(&self) -> bool {
        self.delta_in_i && self.i_in_j && self.j_in_colon
    }
}

impl Linkage {
    pub fn verify(&self) -> Result<LinkageVerdict> {
        let ctx = &self.instance.ctx;
        let j = &self.instance.j;
        let ij = ctx.absorb(&self.i.product(j)?)?;
        let dj = ctx.absorb(&j.scale(&self.delta)?)?;
        let colon = ctx.ideal(std::slice::from_ref(&self.delta))?.colon(&self.i)?;
        Ok(LinkageVerdict {
            product: ij.equals(&dj)?,
            colon: colon.equals(j)?,
            delta_in_i: self.i.contains(&self.delta),
            i_in_j: j.contains_ideal(&self.i)?,
            j_in_colon: colon.contains_ideal(j)?,
        })
    }
}
