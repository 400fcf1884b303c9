use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use mps_core::determinantal::{minors_ideal, row_relation_suite, sylvester_suite};
use mps_core::dim::{codim_grade, is_perfect};
use mps_core::field::Field;
use mps_core::ideal::{Ideal, QuotientRingContext};
use mps_core::linkage::{
    conductor_suite, koszul_identity_checks, self_linkage_check, strong_perfection_instance, ConductorVerdicts,
    KoszulComplex, Linkage, LinkageInstance, StrongPerfection,
};
use mps_core::matrix::MatrixJson;
use mps_core::multipoint::{
    adjoint_conductor, exact_sequence_check, length_relation_check, power_basis_fitting_check,
    scheme_image_and_annihilator, AdjointConductor, FiniteAlgebra, ImageVerdicts, MapJson, PowerBasis,
};
use mps_core::poly::{Ring, RingJson};

use crate::input::{parse_field, CliError};
use crate::report::{CheckResult, Status, VerificationReport};

/// The catalog that ships with the binary.
pub const BUILTIN: &str = include_str!("../catalog/catalog.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(flatten)]
    pub kind: EntryKind,
    pub expect: BTreeMap<String, Expected>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EntryKind {
    Map {
        map: MapJson,
        #[serde(default)]
        primitive_hint: Option<String>,
    },
    Linkage {
        matrix: MatrixJson,
        p: usize,
    },
    Koszul {
        ring: RingJson,
        #[serde(default)]
        defining: Vec<String>,
        elements: Vec<String>,
    },
    StrongPerfection {
        p: usize,
        n: usize,
    },
    Sylvester {
        field: String,
        rows: usize,
        cols: usize,
        p: usize,
        trials: usize,
        row_trials: usize,
    },
}

/// An expected value with the reason it is trusted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Expected {
    pub value: Value,
    /// `derived`, `trivial` or `literature`.
    pub basis: String,
    #[serde(default)]
    pub note: String,
}

impl Catalog {
    pub fn builtin() -> Catalog {
        serde_json::from_str(BUILTIN).expect("built-in catalog parses")
    }

    pub fn parse(text: &str) -> Result<Catalog, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("catalog: {e}")))
    }

    pub fn select(&self, filter: Option<&str>) -> Result<Vec<&CatalogEntry>, CliError> {
        let pattern = match filter {
            Some(f) => Some(glob::Pattern::new(f).map_err(|e| CliError::Input(format!("filter {f:?}: {e}")))?),
            None => None,
        };
        Ok(self.entries.iter().filter(|e| pattern.as_ref().is_none_or(|p| p.matches(&e.name))).collect())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub budget: usize,
    pub jobs: usize,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions { seed: 0, budget: mps_core::linkage::SEARCH_BUDGET, jobs: 1 }
    }
}

/// Runs the selected entries concurrently; reports come back sorted by name.
pub fn run_catalog(entries: &[&CatalogEntry], opts: RunOptions) -> Result<Vec<VerificationReport>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| CliError::Fail(format!("thread pool: {e}")))?;
    let mut reports: Vec<VerificationReport> = pool.install(|| entries.par_iter().map(|e| verify_entry(e, opts)).collect());
    reports.sort_by(|a, b| a.entry.cmp(&b.entry));
    Ok(reports)
}

/// 0 when nothing failed, 3 when an always-true invariant broke, else 1.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.certification_broken) {
        3
    } else if reports.iter().any(VerificationReport::failed) {
        1
    } else {
        0
    }
}

/// A value computed for one check.
enum Computed {
    Ideal(Ideal),
    Value(Value),
    Hypothesis(String),
    Skipped(String),
    Error(mps_core::Error),
}

impl From<mps_core::Result<Computed>> for Computed {
    fn from(r: mps_core::Result<Computed>) -> Computed {
        r.unwrap_or_else(|e| match e {
            mps_core::Error::HypothesisViolation(m) => Computed::Hypothesis(m),
            e => Computed::Error(e),
        })
    }
}

fn val<T: Serialize>(v: T) -> mps_core::Result<Computed> {
    Ok(Computed::Value(serde_json::to_value(v).expect("plain data serializes")))
}

fn compare(key: &str, computed: Computed, expected: &Expected) -> (CheckResult, bool) {
    let note = (!expected.note.is_empty()).then(|| expected.note.clone());
    let mut broken = false;
    let (status, value, extra) = match computed {
        Computed::Ideal(i) => {
            let gb = json!(i.gb_strings());
            let parsed = serde_json::from_value::<Vec<String>>(expected.value.clone())
                .map_err(|e| e.to_string())
                .and_then(|gens| Ideal::parse(i.ring(), &gens).map_err(|e| e.to_string()))
                .and_then(|e| e.equals(&i).map_err(|e| e.to_string()));
            match parsed {
                Ok(true) => (Status::Pass, gb, None),
                Ok(false) => (Status::Fail, gb, None),
                Err(e) => (Status::Fail, gb, Some(format!("expected ideal unreadable: {e}"))),
            }
        }
        Computed::Value(v) => (if v == expected.value { Status::Pass } else { Status::Fail }, v, None),
        Computed::Hypothesis(m) => (Status::HypothesisViolated, Value::Null, Some(m)),
        Computed::Skipped(m) => (Status::Skipped, Value::Null, Some(m)),
        Computed::Error(e) => {
            broken = matches!(e, mps_core::Error::Certification(_));
            (Status::Fail, Value::Null, Some(format!("{key}: {e}")))
        }
    };
    let note = match (note, extra) {
        (Some(a), Some(b)) => Some(format!("{b}; {a}")),
        (a, b) => b.or(a),
    };
    (CheckResult { status, computed: value, expected: expected.value.clone(), note }, broken)
}

fn computed_values(entry: &CatalogEntry, opts: RunOptions) -> Vec<(&String, Computed)> {
    let keys = entry.expect.keys();
    match &entry.kind {
        EntryKind::Map { map, primitive_hint } => match MapContext::new(map, primitive_hint.as_deref(), opts) {
            Ok(mut ctx) => keys.map(|k| (k, Computed::from(ctx.evaluate(k)))).collect(),
            Err(e) => keys.map(|k| (k, Computed::from(Err(e.clone())))).collect(),
        },
        EntryKind::Linkage { matrix, p } => {
            let mut ctx = LinkageContext::new(matrix, *p, opts);
            keys.map(|k| (k, Computed::from(ctx.evaluate(k)))).collect()
        }
        EntryKind::Koszul { ring, defining, elements } => {
            let data = koszul(ring, defining, elements);
            keys.map(|k| {
                let c = match &data {
                    Ok((kc, ids)) => koszul_key(kc, ids, k),
                    Err(e) => Err(e.clone()),
                };
                (k, Computed::from(c))
            })
            .collect()
        }
        EntryKind::StrongPerfection { p, n } => {
            let sp = strong_perfection_instance(*p, *n, &Field::Rationals);
            keys.map(|k| (k, Computed::from(sp.clone().and_then(|sp| strong_perfection_key(&sp, k))))).collect()
        }
        EntryKind::Sylvester { field, rows, cols, p, trials, row_trials } => {
            let ring = parse_field(field)
                .map_err(|e| mps_core::Error::Invalid(e.to_string()))
                .and_then(|f| Ring::grevlex(f, &["x", "y", "z"]));
            keys.map(|k| {
                let c = ring.clone().and_then(|r| match k.as_str() {
                    "sylvester_failures" => sylvester_suite(&r, *rows, *cols, *p, *trials, opts.seed).and_then(|o| val(o.failures)),
                    "row_relation_failures" => {
                        row_relation_suite(&r, *rows, *cols, *p, *row_trials, opts.seed).and_then(|o| val(o.failures))
                    }
                    _ => Ok(unknown(k)),
                });
                (k, Computed::from(c))
            })
            .collect()
        }
    }
}

pub fn verify_entry(entry: &CatalogEntry, opts: RunOptions) -> VerificationReport {
    let mut checks = BTreeMap::new();
    let mut certification_broken = false;
    for (key, computed) in computed_values(entry, opts) {
        // the linkage inclusions hold on every instance that gets this far
        if key == "inclusions" && matches!(&computed, Computed::Value(Value::Bool(false))) {
            certification_broken = true;
        }
        let (c, broken) = compare(key, computed, &entry.expect[key]);
        certification_broken |= broken;
        checks.insert(key.clone(), c);
    }
    VerificationReport { entry: entry.name.clone(), checks, certification_broken }
}

fn unknown(key: &str) -> Computed {
    Computed::Skipped(format!("no check named {key}"))
}

/// Lazily computed data for a finite map.
struct MapContext {
    alg: FiniteAlgebra,
    opts: RunOptions,
    hint: Option<String>,
    pb: Option<mps_core::Result<PowerBasis>>,
    image: Option<mps_core::Result<ImageVerdicts>>,
    adjoint: Option<mps_core::Result<AdjointConductor>>,
}

/// Splits `name_r{r}` or `name_r{r}@{index}` into its parts.
fn ranked(key: &str) -> Option<(&str, usize, Option<usize>)> {
    let (head, at) = match key.split_once('@') {
        Some((h, a)) => (h, Some(a.parse().ok()?)),
        None => (key, None),
    };
    let (name, r) = head.rsplit_once("_r")?;
    Some((name, r.parse().ok()?, at))
}

impl MapContext {
    fn new(map: &MapJson, hint: Option<&str>, opts: RunOptions) -> mps_core::Result<MapContext> {
        let alg = map.build()?.algebra()?;
        Ok(MapContext { alg, opts, hint: hint.map(str::to_string), pb: None, image: None, adjoint: None })
    }

    fn power_basis(&mut self) -> mps_core::Result<PowerBasis> {
        if self.pb.is_none() {
            let pb = match &self.hint {
                Some(h) => self
                    .alg
                    .spec()
                    .source()
                    .parse(h)
                    .and_then(|a| self.alg.power_basis(&a))
                    .and_then(|p| p.ok_or_else(|| mps_core::Error::HypothesisViolation(format!("{h} is not primitive")))),
                None => self.alg.find_primitive(self.opts.seed, self.opts.budget),
            };
            self.pb = Some(pb);
        }
        self.pb.clone().expect("just set")
    }

    fn image(&mut self) -> mps_core::Result<ImageVerdicts> {
        self.image.get_or_insert_with(|| scheme_image_and_annihilator(&self.alg)).clone()
    }

    fn adjoint(&mut self) -> mps_core::Result<AdjointConductor> {
        self.adjoint.get_or_insert_with(|| adjoint_conductor(&self.alg)).clone()
    }

    fn evaluate(&mut self, key: &str) -> mps_core::Result<Computed> {
        let alg = &self.alg;
        match key {
            "basis" => val(alg.basis().iter().map(|b| b.to_string()).collect::<Vec<_>>()),
            "fiber_degree" => val(alg.fiber_degree()?),
            "curvilinear" => val(alg.check_curvilinear()?),
            "primitive" => {
                let n = alg.basis().len();
                val(self.power_basis()?.degree() == n)
            }
            "image" => Ok(Computed::Ideal(self.image()?.image)),
            "annihilator" => Ok(Computed::Ideal(self.image()?.annihilator)),
            "annihilator_is_image" => val(self.image()?.annihilator_is_image),
            "fitt0_in_image" => val(self.image()?.fitt0_in_image),
            "same_support" => val(self.image()?.same_support),
            "fitt0_is_image" => val(self.image()?.fitt0_is_image),
            "fitt0_strictly_inside_annihilator" => {
                let v = self.image()?;
                val(v.annihilator.contains_ideal(&v.fitt0)? && !v.fitt0.equals(&v.annihilator)?)
            }
            "adjoint" => Ok(Computed::Ideal(self.adjoint()?.via_fitting)),
            "conductor" => Ok(Computed::Ideal(self.adjoint()?.conductor)),
            "adjoint_agree" => val(self.adjoint()?.agree),
            _ => self.evaluate_ranked(key),
        }
    }

    fn evaluate_ranked(&mut self, key: &str) -> mps_core::Result<Computed> {
        if let Some(r) = key.strip_prefix("N_").and_then(|r| r.parse().ok()) {
            return Ok(Computed::Ideal(self.alg.target_ideal(r)?));
        }
        if let Some(r) = key.strip_prefix("M_").and_then(|r| r.parse().ok()) {
            return Ok(Computed::Ideal(self.alg.source_ideal(r)?));
        }
        let Some((name, r, at)) = ranked(key) else {
            return Ok(unknown(key));
        };
        match (name, at) {
            ("perfect", None) => {
                let p = is_perfect(&self.alg.target_ideal(r)?)?;
                val(json!({"perfect": p.perfect, "pd": p.pd, "grade": p.grade}))
            }
            ("power_basis_fitting", None) => {
                let pb = self.power_basis()?;
                val(power_basis_fitting_check(&self.alg, &pb, r)?.holds)
            }
            ("exact_sequence", None) => {
                let pb = self.power_basis()?;
                val(exact_sequence_check(&self.alg, &pb, r)?)
            }
            ("length", Some(i)) => {
                let comps = self.alg.spec().components();
                let comp = comps.get(i).ok_or(mps_core::Error::IndexOutOfRange { index: i, bound: comps.len() })?;
                let l = length_relation_check(&self.alg, r, comp)?;
                if let Some(h) = l.hypothesis {
                    return Ok(Computed::Hypothesis(h));
                }
                val(json!({"lhs": l.lhs, "rhs": l.rhs}))
            }
            _ => Ok(unknown(key)),
        }
    }
}

/// Lazily computed data for a linkage instance.
struct LinkageContext {
    instance: mps_core::Result<LinkageInstance>,
    opts: RunOptions,
    link: Option<mps_core::Result<Linkage>>,
    conductor: Option<mps_core::Result<ConductorVerdicts>>,
}

impl LinkageContext {
    fn new(matrix: &MatrixJson, p: usize, opts: RunOptions) -> LinkageContext {
        let instance = matrix.build().and_then(|m| LinkageInstance::new(&m, p));
        LinkageContext { instance, opts, link: None, conductor: None }
    }

    fn link(&mut self) -> mps_core::Result<Linkage> {
        if self.link.is_none() {
            let inst = self.instance.clone()?;
            let res = if inst.hypotheses().admissible() {
                inst.find_regular_delta(self.opts.seed, self.opts.budget).and_then(|c| inst.link(&c))
            } else {
                Err(mps_core::Error::HypothesisViolation("the conditions on the minors fail".into()))
            };
            self.link = Some(res);
        }
        self.link.clone().expect("just set")
    }

    fn j_gens(&self) -> mps_core::Result<Vec<mps_core::poly::Polynomial>> {
        let inst = self.instance.clone()?;
        Ok(minors_ideal(inst.matrix(), inst.p())?.gens().to_vec())
    }

    fn conductor(&mut self) -> mps_core::Result<ConductorVerdicts> {
        if self.conductor.is_none() {
            let res = self.link().and_then(|l| conductor_suite(l.instance.context(), &l.deltas, &self.j_gens()?, &l.delta));
            self.conductor = Some(res);
        }
        self.conductor.clone().expect("just set")
    }

    fn evaluate(&mut self, key: &str) -> mps_core::Result<Computed> {
        let inst = self.instance.clone()?;
        match key {
            "hypotheses" => {
                let h = inst.hypotheses();
                val(json!({
                    "grade_p": h.at_p.grade_holds,
                    "last_rows_p": h.at_p.last_rows_holds,
                    "grade_p1": h.at_p1.grade_holds,
                    "last_rows_p1": h.at_p1.last_rows_holds,
                }))
            }
            "admissible" => val(inst.hypotheses().admissible()),
            "ideal_p" => Ok(Computed::Ideal(minors_ideal(inst.matrix(), inst.p())?)),
            "last_rows_ideal_p" => {
                let last = inst.matrix().select_rows(&inst.last_rows());
                Ok(Computed::Ideal(minors_ideal(&last, inst.p())?))
            }
            "delta_within_budget" => match self.link() {
                Ok(_) => val(true),
                Err(mps_core::Error::BudgetExhausted(_)) => val(false),
                Err(e) => Err(e),
            },
            "delta" => val(self.link()?.delta.to_string()),
            "product" => val(self.link()?.verify()?.product),
            "colon" => val(self.link()?.verify()?.colon),
            "inclusions" => val(self.link()?.verify()?.inclusions_hold()),
            "exponent_at_most_3" => val(self.conductor()?.exponent <= 3),
            "conductor_is_j" => val(self.conductor()?.conductor_is_j),
            "jb_is_j" => val(self.conductor()?.jb_is_j),
            "b_is_endomorphisms" => val(self.conductor()?.b_is_endomorphisms),
            "b_is_dual" => val(self.conductor()?.b_is_dual),
            "rees_agrees" => val(self.conductor()?.rees.agrees),
            "self_linked" => {
                let c = self.conductor()?;
                let l = self.link()?;
                let s = self_linkage_check(l.instance.context(), &self.j_gens()?, &c.algebra, &l.delta, self.opts.seed, self.opts.budget)?;
                val(s.regular && s.self_linked)
            }
            _ => Ok(unknown(key)),
        }
    }
}

fn koszul(
    ring: &RingJson,
    defining: &[String],
    elements: &[String],
) -> mps_core::Result<(KoszulComplex, mps_core::linkage::KoszulIdentities)> {
    let ring = ring.build()?;
    let ctx = QuotientRingContext::new(Ideal::parse(&ring, defining)?)?;
    let k = KoszulComplex::new(&ctx, ring.parse_all(elements)?)?;
    let ids = koszul_identity_checks(&k)?;
    Ok((k, ids))
}

fn koszul_key(k: &KoszulComplex, ids: &mps_core::linkage::KoszulIdentities, key: &str) -> mps_core::Result<Computed> {
    match key {
        "dims" => val(&ids.dims),
        "euler" => val(ids.euler),
        "top_is_annihilator" => val(ids.top_is_annihilator),
        "bottom_is_quotient" => val(ids.bottom_is_quotient),
        "nonzero_degrees" => val(k.nonzero_degrees()?),
        "grade" => {
            let i = k.context().ideal(k.elems())?;
            val(codim_grade(&i)? - codim_grade(k.context().defining()).unwrap_or(0))
        }
        _ => Ok(unknown(key)),
    }
}

fn strong_perfection_key(sp: &StrongPerfection, key: &str) -> mps_core::Result<Computed> {
    match key {
        "grade_in_quotient" => val(sp.grade_in_quotient),
        "quotient_grade" => val(sp.quotient_grade),
        "pds" => val(sp.modules.iter().map(|m| m.pd).collect::<Vec<_>>()),
        "nonzero_degrees" => val(sp.modules.iter().map(|m| m.index).collect::<Vec<_>>()),
        "strongly_perfect" => val(sp.strongly_perfect()),
        _ => Ok(unknown(key)),
    }
}
