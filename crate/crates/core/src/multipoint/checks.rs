use serde::Serialize;

use super::{Component, FiniteAlgebra, PowerBasis};
use crate::determinantal::fitting_ideal;
use crate::dim::{codim_grade, is_perfect, length_artinian, local_length};
use crate::ideal::Ideal;
use crate::module::Submodule;
use crate::poly::FreeVector;
use crate::{Error, Result};

/// Scheme-theoretic image `Z` against the Fitting ideals of `B`.
#[derive(Clone, Debug)]
pub struct ImageVerdicts {
    pub image: Ideal,
    pub annihilator: Ideal,
    pub fitt0: Ideal,
    pub fitt1: Ideal,
    /// `Fitt_0 : Fitt_1 = Z`.
    pub annihilator_is_image: bool,
    pub fitt0_in_image: bool,
    /// Every generator of each ideal lies in the radical of the other.
    pub same_support: bool,
    pub fitt0_is_image: bool,
}

pub fn scheme_image_and_annihilator(alg: &FiniteAlgebra) -> Result<ImageVerdicts> {
    let image = alg.spec().image_ideal()?;
    let fitt0 = alg.target_ideal(1)?;
    let fitt1 = alg.target_ideal(2)?;
    let annihilator = fitt0.colon(&fitt1)?;
    let mut same_support = true;
    for g in fitt0.gens() {
        same_support &= image.radical_contains(g)?;
    }
    for g in image.gens() {
        same_support &= fitt0.radical_contains(g)?;
    }
    Ok(ImageVerdicts {
        annihilator_is_image: annihilator.equals(&image)?,
        fitt0_in_image: image.contains_ideal(&fitt0)?,
        fitt0_is_image: fitt0.equals(&image)?,
        same_support,
        image,
        annihilator,
        fitt0,
        fitt1,
    })
}

/// The adjoint ideal `Ann(B / O_Z)` three ways, and the conductor.
#[derive(Clone, Debug)]
pub struct AdjointConductor {
    pub via_fitting: Ideal,
    pub via_quotient: Ideal,
    pub via_colon: Ideal,
    /// The adjoint extended to the source, plus `I_X`.
    pub conductor: Ideal,
    pub agree: bool,
}

pub fn adjoint_conductor(alg: &FiniteAlgebra) -> Result<AdjointConductor> {
    let image = alg.spec().image_ideal()?;
    let n1 = alg.target_ideal(1)?;
    if !n1.equals(&image)? {
        return Err(Error::HypothesisViolation("Fitt_0 differs from the image ideal".into()));
    }
    let p = alg.presentation();
    let one = p.labels().iter().position(|l| l == "1").ok_or_else(|| Error::Invalid("no generator 1".into()))?;
    let via_fitting = fitting_ideal(p, 1)?;
    let via_quotient = fitting_ideal(&p.drop_generators(&[one]), 0)?;
    let ring = alg.target();
    let span = Submodule::column_span(p.relations()).add_gens(&[FreeVector::unit(ring, p.ngens(), one)])?;
    let via_colon = span.quotient_annihilator()?;
    let agree = via_fitting.equals(&via_quotient)? && via_fitting.equals(&via_colon)?;
    let conductor = alg.spec().pull_back(&via_fitting)?;
    Ok(AdjointConductor { via_fitting, via_quotient, via_colon, conductor, agree })
}

/// `Fitt_(r-1)(B)` against `Fitt_0(M_r)` for `M_r = B / (1, ..., a^(r-2))`.
#[derive(Clone, Debug)]
pub struct PowerBasisFitting {
    pub fitting: Ideal,
    pub quotient_fitting: Ideal,
    pub holds: bool,
}

pub fn power_basis_fitting_check(alg: &FiniteAlgebra, pb: &PowerBasis, r: usize) -> Result<PowerBasisFitting> {
    let fitting = alg.target_ideal(r)?;
    let quotient_fitting = fitting_ideal(&pb.quotient_module(r)?, 0)?;
    Ok(PowerBasisFitting { holds: fitting.reduced_gb() == quotient_fitting.reduced_gb(), fitting, quotient_fitting })
}

/// Length of `B / N_r B` against `r` times the length of `R / N_r`, at a
/// component.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LengthRelation {
    pub component: String,
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
    /// Set when the component does not have codimension `r`.
    pub hypothesis: Option<String>,
}

pub fn length_relation_check(alg: &FiniteAlgebra, r: usize, comp: &Component) -> Result<LengthRelation> {
    let nr = alg.target_ideal(r)?;
    let mut hypothesis = None;
    let codim = codim_grade(&nr).ok();
    let comp_codim = codim_grade(&comp.prime).ok();
    if codim != Some(r) || comp_codim != Some(r) {
        hypothesis = Some(format!(
            "N_{r} has codimension {} and the component {}, expected {r}",
            codim.map_or("-".into(), |c| c.to_string()),
            comp_codim.map_or("-".into(), |c| c.to_string())
        ));
    }
    let module = alg.presentation().modulo_ideal(&nr);
    let lhs = local_length(&module, &comp.prime, &comp.invert)?;
    let rhs = r * local_length(&nr, &comp.prime, &comp.invert)?;
    Ok(LengthRelation { component: comp.label(), lhs, rhs, holds: lhs == rhs, hypothesis })
}

/// Length additivity along `0 -> R̄^(r-1) -> B ⊗ R̄ -> M_r ⊗ R̄ -> 0` with
/// `R̄ = R / N_r`, and freeness of the kernel.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExactSequence {
    pub total: usize,
    pub free_part: usize,
    pub quotient: usize,
    pub additive: bool,
    pub kernel_free: bool,
}

pub fn exact_sequence_check(alg: &FiniteAlgebra, pb: &PowerBasis, r: usize) -> Result<ExactSequence> {
    let f = alg.target_ideal(r)?;
    let total = length_artinian(&alg.presentation().modulo_ideal(&f))?;
    let free_part = (r - 1) * length_artinian(&f)?;
    let quotient = length_artinian(&pb.quotient_module(r)?.modulo_ideal(&f))?;
    let ring = alg.target();
    let n = pb.degree();
    let rels = Submodule::column_span(pb.presentation.modulo_ideal(&f).relations());
    let head = Submodule::new(ring, n, (0..r - 1).map(|i| FreeVector::unit(ring, n, i)).collect())?;
    let kernel = rels.intersect(&head)?;
    let kernel_free = kernel.gens().iter().all(|v| v.comps()[..r - 1].iter().all(|c| f.contains(c)));
    Ok(ExactSequence { total, free_part, quotient, additive: total == free_part + quotient, kernel_free })
}

/// Per-`r` data of a finite map.
#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub r: usize,
    pub target_ideal: Vec<String>,
    pub source_ideal: Vec<String>,
    pub codim: Option<usize>,
    pub perfect: Option<bool>,
    pub pd: Option<usize>,
    pub grade: Option<usize>,
    pub lengths: Vec<LengthRelation>,
    pub power_basis_fitting: Option<bool>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultipointReport {
    pub basis: Vec<String>,
    pub fiber_degree: usize,
    pub curvilinear: bool,
    pub primitive: Option<String>,
    pub ranks: Vec<RankReport>,
}

/// Everything the pipeline computes for the given values of `r`.
pub fn multipoint_report(alg: &FiniteAlgebra, rs: &[usize], seed: u64, budget: usize) -> Result<MultipointReport> {
    let curvilinear = alg.check_curvilinear()?;
    let pb = if curvilinear { alg.find_primitive(seed, budget).ok() } else { None };
    let mut ranks = Vec::with_capacity(rs.len());
    for &r in rs {
        let nr = alg.target_ideal(r)?;
        let mut notes = Vec::new();
        let codim = codim_grade(&nr).ok();
        let (mut perfect, mut pd, mut grade) = (None, None, None);
        if codim.is_some() {
            match is_perfect(&nr) {
                Ok(p) => {
                    perfect = Some(p.perfect);
                    pd = Some(p.pd);
                    grade = Some(p.grade);
                }
                Err(e) => notes.push(format!("perfection: {e}")),
            }
        }
        let mut lengths = Vec::new();
        for c in alg.spec().components().iter().filter(|c| c.r.is_none_or(|cr| cr == r)) {
            match length_relation_check(alg, r, c) {
                Ok(l) => lengths.push(l),
                Err(e) => notes.push(format!("length at {}: {e}", c.label())),
            }
        }
        let power_basis_fitting = match &pb {
            Some(pb) if r <= pb.degree() => Some(power_basis_fitting_check(alg, pb, r)?.holds),
            _ => None,
        };
        ranks.push(RankReport {
            r,
            target_ideal: nr.gb_strings(),
            source_ideal: alg.source_ideal(r)?.gb_strings(),
            codim,
            perfect,
            pd,
            grade,
            lengths,
            power_basis_fitting,
            notes,
        });
    }
    Ok(MultipointReport {
        basis: alg.basis().iter().map(|b| b.to_string()).collect(),
        fiber_degree: alg.fiber_degree()?,
        curvilinear,
        primitive: pb.map(|p| p.element.to_string()),
        ranks,
    })
}
