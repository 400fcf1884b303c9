use serde::Serialize;

use crate::determinantal::{minor, minors_ideal, subsets, ModulePresentation};
use crate::dim::{codim_grade, free_resolution};
use crate::field::Field;
use crate::groebner::module_syzygies;
use crate::ideal::{Ideal, QuotientRingContext};
use crate::matrix::PolyMatrix;
use crate::module::Submodule;
use crate::poly::{FreeVector, Polynomial, Ring};
use crate::{Error, Result};

/// Koszul complex of `f_1, ..., f_n` over `A = R / J_A`, carried over `R`.
/// The basis of `K_i` is the `i`-subsets of `0..n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    ctx: QuotientRingContext,
    elems: Vec<Polynomial>,
    /// `maps[i - 1]` is `K_i -> K_(i-1)`.
    maps: Vec<PolyMatrix>,
}

/// `H_i` as the subquotient `Z_i / B_i` of `R^(n choose i)`, together with a
/// presentation on the generators of `Z_i`.
#[derive(Clone, Debug)]
pub struct Homology {
    pub index: usize,
    pub cycles: Submodule,
    pub boundaries: Submodule,
    pub presentation: ModulePresentation,
    pub dim: Option<usize>,
    pub zero: bool,
}

impl KoszulComplex {
    pub fn new(ctx: &QuotientRingContext, elems: Vec<Polynomial>) -> Result<KoszulComplex> {
        let ring = ctx.ring();
        if let Some(f) = elems.iter().find(|f| f.ring() != ring) {
            return Err(Error::RingMismatch(format!("{} vs {}", f.ring(), ring)));
        }
        let n = elems.len();
        let mut maps = Vec::with_capacity(n);
        for i in 1..=n {
            let (src, dst) = (subsets(n, i), subsets(n, i - 1));
            let mut d = PolyMatrix::zeros(ring, dst.len(), src.len());
            for (c, s) in src.iter().enumerate() {
                for (pos, &v) in s.iter().enumerate() {
                    let face: Vec<usize> = s.iter().copied().filter(|&u| u != v).collect();
                    let r = dst.iter().position(|t| *t == face).expect("face is a subset");
                    let f = if pos % 2 == 0 { elems[v].clone() } else { -&elems[v] };
                    d.set(r, c, f);
                }
            }
            maps.push(d);
        }
        Ok(KoszulComplex { ctx: ctx.clone(), elems, maps })
    }

    pub fn context(&self) -> &QuotientRingContext {
        &self.ctx
    }

    pub fn elems(&self) -> &[Polynomial] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    fn rank(&self, i: usize) -> usize {
        subsets(self.len(), i).len()
    }

    /// Consecutive differentials compose to zero over `R`.
    pub fn certify(&self) -> Result<()> {
        for w in self.maps.windows(2) {
            if !w[0].mul(&w[1])?.is_zero() {
                return Err(Error::Certification("Koszul differentials do not compose to zero".into()));
            }
        }
        Ok(())
    }

    fn defining_times_free(&self, rank: usize) -> Vec<FreeVector> {
        let ring = self.ctx.ring();
        let mut out = Vec::new();
        for g in self.ctx.defining().gens() {
            for r in 0..rank {
                out.push(FreeVector::unit(ring, rank, r).scale(g));
            }
        }
        out
    }

    pub fn homology(&self, i: usize) -> Result<Homology> {
        let n = self.len();
        if i > n {
            return Err(Error::BadRange(format!("homological degree {i} outside 0..={n}")));
        }
        let ring = self.ctx.ring();
        let rank = self.rank(i);
        let absorbed = self.defining_times_free(rank);
        let cycles = if i == 0 {
            Submodule::free(ring, rank)
        } else {
            let d = &self.maps[i - 1];
            let mut gens = d.columns();
            gens.extend(self.defining_times_free(d.nrows()));
            let syz = module_syzygies(ring, d.nrows(), &gens)?;
            let kept = syz.into_iter().map(|v| FreeVector::from_polys(ring, v.into_comps()[..rank].to_vec())).collect();
            Submodule::new(ring, rank, kept)?.add_gens(&absorbed)?
        };
        let mut bgens = absorbed;
        if i < n {
            bgens.extend(self.maps[i].columns());
        }
        let boundaries = Submodule::new(ring, rank, bgens)?;
        let z = cycles.gens().to_vec();
        let mut all = z.clone();
        all.extend(boundaries.gens().iter().cloned());
        let rels: Vec<FreeVector> = if z.is_empty() {
            Vec::new()
        } else {
            module_syzygies(ring, rank, &all)?
                .into_iter()
                .map(|v| FreeVector::from_polys(ring, v.into_comps()[..z.len()].to_vec()))
                .filter(|v| !v.is_zero())
                .collect()
        };
        let relmod = Submodule::new(ring, z.len(), rels.clone())?;
        let dim = relmod.quotient_dim().ok();
        let presentation = ModulePresentation::unlabeled(PolyMatrix::from_columns(ring, z.len(), &rels));
        let zero = boundaries.contains_module(&cycles);
        Ok(Homology { index: i, cycles, boundaries, presentation, dim, zero })
    }

    /// Degrees with nonzero homology.
    pub fn nonzero_degrees(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..=self.len() {
            if !self.homology(i)?.zero {
                out.push(i);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KoszulIdentities {
    /// `H_n = (J_A : I) / J_A`.
    pub top_is_annihilator: bool,
    /// `H_0 = A / I`.
    pub bottom_is_quotient: bool,
    pub dims: Vec<Option<usize>>,
    pub euler: Option<i64>,
}

impl KoszulIdentities {
    pub fn all_hold(&self) -> bool {
        self.top_is_annihilator && self.bottom_is_quotient && self.euler == Some(0)
    }
}

pub fn koszul_identity_checks(k: &KoszulComplex) -> Result<KoszulIdentities> {
    k.certify()?;
    let n = k.len();
    let ring = k.ctx.ring();
    let i = k.ctx.ideal(k.elems())?;
    let top = k.homology(n)?;
    let ann = k.ctx.defining().colon(&i)?;
    let top_is_annihilator = top.cycles.equals(&Submodule::ideal_times_free(&ann, 1))
        && top.boundaries.equals(&Submodule::ideal_times_free(k.ctx.defining(), 1));
    let bottom = k.homology(0)?;
    let bottom_is_quotient =
        bottom.cycles.equals(&Submodule::free(ring, 1)) && bottom.boundaries.equals(&Submodule::ideal_times_free(&i, 1));
    let mut dims = Vec::with_capacity(n + 1);
    for d in 0..=n {
        dims.push(if d == 0 { bottom.dim } else if d == n { top.dim } else { k.homology(d)?.dim });
    }
    let euler = dims
        .iter()
        .enumerate()
        .try_fold(0i64, |acc, (d, v)| v.map(|v| if d % 2 == 0 { acc + v as i64 } else { acc - v as i64 }));
    Ok(KoszulIdentities { top_is_annihilator, bottom_is_quotient, dims, euler })
}

fn regular_on(k: &Ideal, f: &Polynomial) -> Result<bool> {
    if k.contains(f) {
        return Ok(false);
    }
    k.contains_ideal(&k.colon_element(f)?)
}

/// Both sides of the specialization identity
/// `((Δ) : I) + (a) = ((Δ) + (a)) : I` modulo `J_A`, after certifying that
/// `a` is regular on `R`, `A` and `A / I` and that `Δ` stays regular mod `a`.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub before: Ideal,
    pub after: Ideal,
    pub holds: bool,
}

pub fn specialization_check(
    ctx: &QuotientRingContext,
    deltas: &[Polynomial],
    i: &[Polynomial],
    a: &[Polynomial],
) -> Result<Specialization> {
    let ring = ctx.ring();
    let ideal_i = ctx.ideal(i)?;
    let mut quotients = [Ideal::zero(ring), ctx.defining().clone(), ideal_i.clone()];
    for (k, f) in a.iter().enumerate() {
        for (q, name) in quotients.iter_mut().zip(["R", "A", "A/I"]) {
            if !regular_on(q, f)? {
                return Err(Error::RegularityCertificationFailed(format!("a_{} = {f} on {name}", k + 1)));
            }
            *q = q.add_gens(std::slice::from_ref(f))?;
        }
    }
    let mut bar = quotients[1].clone();
    for (k, d) in deltas.iter().enumerate() {
        if !ideal_i.contains(d) {
            return Err(Error::Invalid(format!("Δ_{} = {d} is not in I", k + 1)));
        }
        if !regular_on(&bar, d)? {
            return Err(Error::RegularityCertificationFailed(format!("Δ_{} = {d} modulo a", k + 1)));
        }
        bar = bar.add_gens(std::slice::from_ref(d))?;
    }
    let before = ctx.ideal(deltas)?.colon(&ideal_i)?.add_gens(a)?;
    let after = bar.colon(&ideal_i)?;
    Ok(Specialization { holds: before.equals(&after)?, before, after })
}

/// `(rows) x (cols)` matrix of variables `x11, x12, ...`.
pub fn generic_matrix(field: &Field, rows: usize, cols: usize) -> Result<(Ring, PolyMatrix)> {
    let names: Vec<String> = (1..=rows).flat_map(|i| (1..=cols).map(move |j| format!("x{i}{j}"))).collect();
    let ring = Ring::grevlex(field.clone(), &names)?;
    let entries = (0..rows).map(|i| (0..cols).map(|j| ring.var(i * cols + j)).collect()).collect();
    Ok((ring.clone(), PolyMatrix::from_rows(&ring, entries)?))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ModuleVerdict {
    pub index: usize,
    pub pd: usize,
    /// Grade of the annihilator in the polynomial ring.
    pub grade: usize,
}

/// Koszul homology of `I = I_p(first p columns)` over `A = B / I_(p+1)(X)`
/// for a generic `(p+1) x n` matrix `X`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StrongPerfection {
    pub p: usize,
    pub n: usize,
    pub grade_in_quotient: usize,
    /// `grade_B A / I`.
    pub quotient_grade: usize,
    pub modules: Vec<ModuleVerdict>,
}

impl StrongPerfection {
    pub fn grade_one(&self) -> bool {
        self.grade_in_quotient == 1
    }

    /// Every nonzero homology module has projective dimension `target`.
    pub fn pd_all(&self, target: usize) -> bool {
        !self.modules.is_empty() && self.modules.iter().all(|m| m.pd == target)
    }

    /// Every nonzero homology module is perfect of grade `grade_B A / I`.
    pub fn strongly_perfect(&self) -> bool {
        !self.modules.is_empty() && self.modules.iter().all(|m| m.pd == m.grade && m.grade == self.quotient_grade)
    }
}

pub fn strong_perfection_instance(p: usize, n: usize, field: &Field) -> Result<StrongPerfection> {
    if p == 0 || p > 2 || n < p + 1 || n > 4 {
        return Err(Error::BadRange(format!("need 1 <= p <= 2 and p + 1 <= n <= 4, got p = {p}, n = {n}")));
    }
    let (_, x) = generic_matrix(field, p + 1, n)?;
    let ctx = QuotientRingContext::new(minors_ideal(&x, p + 1)?)?;
    let cols: Vec<usize> = (0..p).collect();
    let mut gens = Vec::new();
    for rows in subsets(p + 1, p) {
        gens.push(minor(&x, &rows, &cols)?);
    }
    let i = ctx.ideal(&gens)?;
    let quotient_grade = codim_grade(&i)?;
    let grade_in_quotient = quotient_grade - codim_grade(ctx.defining())?;
    let k = KoszulComplex::new(&ctx, gens)?;
    k.certify()?;
    let mut modules = Vec::new();
    for d in 0..=k.len() {
        let h = k.homology(d)?;
        if h.zero {
            continue;
        }
        let rel = h.presentation.relations();
        let pd = free_resolution(rel, true)?.length();
        let ann = Submodule::column_span(rel).quotient_annihilator()?;
        modules.push(ModuleVerdict { index: d, pd, grade: codim_grade(&ann)? });
    }
    Ok(StrongPerfection { p, n, grade_in_quotient, quotient_grade, modules })
}
