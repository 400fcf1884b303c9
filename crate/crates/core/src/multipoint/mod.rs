//! Finite maps `X -> Y = Spec R`, the `R`-module structure of the pushed
//! forward algebra `B`, and the multiple-point ideals cut out by its Fitting
//! ideals.

mod checks;

pub use checks::*;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::determinantal::{fitting_ideal, minors_ideal_ext, ModulePresentation};
use crate::dim::length_artinian;
use crate::groebner::{GroebnerBasis, TermOrder};
use crate::ideal::{graph_ring, Ideal};
use crate::matrix::PolyMatrix;
use crate::poly::{FreeVector, Monomial, Polynomial, Ring, RingJson};
use crate::{Error, Result};

/// Draws tried for a primitive element after the plain source variables.
pub const PRIMITIVE_BUDGET: usize = 20;

/// A designated component of some `N_r`: a prime of the target and a set of
/// target variables independent modulo it.
#[derive(Clone, Debug)]
pub struct Component {
    pub prime: Ideal,
    pub invert: Vec<String>,
    pub r: Option<usize>,
}

impl Component {
    /// The origin of the target.
    pub fn origin(target: &Ring, r: Option<usize>) -> Component {
        let prime = Ideal::new(target, (0..target.nvars()).map(|i| target.var(i)).collect()).expect("variables");
        Component { prime, invert: Vec::new(), r }
    }

    pub fn label(&self) -> String {
        let gens: Vec<String> = self.prime.gens().iter().map(|g| g.to_string()).collect();
        if self.invert.is_empty() {
            format!("({})", gens.join(", "))
        } else {
            format!("({}) over k({})", gens.join(", "), self.invert.join(", "))
        }
    }
}

/// `f: Spec(S / I_X) -> Spec R` given by the images of the target variables.
#[derive(Clone, Debug)]
pub struct FiniteMapSpec {
    target: Ring,
    source_ideal: Ideal,
    images: Vec<Polynomial>,
    components: Vec<Component>,
}

impl FiniteMapSpec {
    pub fn new(target: &Ring, source_ideal: Ideal, images: Vec<Polynomial>, components: Vec<Component>) -> Result<FiniteMapSpec> {
        if images.len() != target.nvars() {
            return Err(Error::LengthMismatch(images.len(), target.nvars()));
        }
        let source = source_ideal.ring();
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", source.field(), target.field())));
        }
        if images.iter().any(|f| f.ring() != source) {
            return Err(Error::RingMismatch("images must lie in the source ring".into()));
        }
        if source_ideal.is_unit() {
            return Err(Error::UnitIdeal);
        }
        for c in &components {
            if c.prime.ring() != target {
                return Err(Error::RingMismatch("component primes must lie in the target ring".into()));
            }
        }
        graph_ring(source, target)?;
        Ok(FiniteMapSpec { target: target.clone(), source_ideal, images, components })
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn source(&self) -> &Ring {
        self.source_ideal.ring()
    }

    pub fn source_ideal(&self) -> &Ideal {
        &self.source_ideal
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Pullback of a target polynomial to the source.
    pub fn comorphism(&self, f: &Polynomial) -> Result<Polynomial> {
        f.substitute(&self.images, self.source())
    }

    /// `f^{-1}(I) = φ(I) S + I_X`.
    pub fn pull_back(&self, i: &Ideal) -> Result<Ideal> {
        let pulled = i.gens().iter().map(|g| self.comorphism(g)).collect::<Result<Vec<_>>>()?;
        self.source_ideal.add_gens(&pulled)
    }

    /// Kernel of `R -> S / I_X`, the ideal of the scheme-theoretic image.
    pub fn image_ideal(&self) -> Result<Ideal> {
        crate::ideal::kernel_of_map(&self.target, &self.source_ideal, &self.images)
    }
}

/// JSON form of a map; see the catalog files for examples.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapJson {
    pub target: RingJson,
    pub source: RingJson,
    #[serde(default)]
    pub source_ideal: Vec<String>,
    pub images: BTreeMap<String, String>,
    #[serde(default)]
    pub components: Vec<ComponentJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentJson {
    pub prime: Vec<String>,
    #[serde(default)]
    pub invert: Vec<String>,
    #[serde(default)]
    pub r: Option<usize>,
}

impl MapJson {
    pub fn build(&self) -> Result<FiniteMapSpec> {
        let target = self.target.build()?;
        let source = self.source.build()?;
        let mut images = Vec::with_capacity(target.nvars());
        for v in target.vars() {
            let s = self.images.get(v).ok_or_else(|| Error::Invalid(format!("no image given for {v}")))?;
            images.push(source.parse(s)?);
        }
        for k in self.images.keys() {
            if target.var_index(k).is_none() {
                return Err(Error::UnknownVariable(k.clone()));
            }
        }
        let components = self
            .components
            .iter()
            .map(|c| Ok(Component { prime: Ideal::parse(&target, &c.prime)?, invert: c.invert.clone(), r: c.r }))
            .collect::<Result<Vec<_>>>()?;
        FiniteMapSpec::new(&target, Ideal::parse(&source, &self.source_ideal)?, images, components)
    }
}

/// Finiteness verdict with the standard source monomials spanning `B`.
#[derive(Clone, Debug)]
pub struct Finiteness {
    pub finite: bool,
    pub basis: Vec<Polynomial>,
}

/// `B = S / I_X` as an algebra over the target, computed in the graph ring
/// `k[u; x]` with the source block eliminated first.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    spec: FiniteMapSpec,
    graph: Ring,
    graph_ideal: Ideal,
    basis: Vec<Polynomial>,
    presentation: ModulePresentation,
    fiber_degree: OnceLock<usize>,
}

impl FiniteMapSpec {
    pub fn graph_ideal(&self) -> Result<Ideal> {
        let graph = graph_ring(self.source(), &self.target)?;
        let m = self.source().nvars();
        let mut gens = self.source_ideal.transfer(&graph)?.gens().to_vec();
        for (i, f) in self.images.iter().enumerate() {
            gens.push(&graph.var(m + i) - &f.transfer(&graph)?);
        }
        Ideal::new(&graph, gens)
    }

    /// `B` is finite over `R` iff every source variable has a pure power
    /// among the leading monomials of the graph ideal.
    pub fn check_finite(&self) -> Result<Finiteness> {
        let g = self.graph_ideal()?;
        let m = self.source().nvars();
        let free: Vec<Monomial> = g
            .gb()
            .leads()
            .into_iter()
            .map(|(_, l)| l)
            .filter(|l| l.support().all(|i| i < m))
            .collect();
        let mut bounds = vec![None; m];
        for l in &free {
            let s: Vec<usize> = l.support().collect();
            if s.len() == 1 {
                let e = l.exponents()[s[0]];
                bounds[s[0]] = Some(bounds[s[0]].map_or(e, |b: u32| b.min(e)));
            }
        }
        if bounds.iter().any(Option::is_none) {
            return Ok(Finiteness { finite: false, basis: Vec::new() });
        }
        let bounds: Vec<u32> = bounds.into_iter().map(|b| b.expect("checked")).collect();
        let mut basis: Vec<Monomial> = Vec::new();
        let mut exps = vec![0u32; m];
        loop {
            let mono = Monomial::from_exponents(exps.clone());
            let padded = Monomial::from_exponents(exps.iter().copied().chain(std::iter::repeat_n(0, self.target.nvars())).collect());
            if !free.iter().any(|l| l.divides(&padded)) {
                basis.push(mono);
            }
            // odometer over the box
            let mut pos = 0;
            while pos < m {
                exps[pos] += 1;
                if exps[pos] < bounds[pos] {
                    break;
                }
                exps[pos] = 0;
                pos += 1;
            }
            if pos == m {
                break;
            }
        }
        let order = self.source().order().clone();
        basis.sort_by(|a, b| order.cmp(a, b));
        let one = self.source().field().one();
        let basis = basis.into_iter().map(|mono| Polynomial::monomial(self.source(), mono, one.clone())).collect();
        Ok(Finiteness { finite: true, basis })
    }

    pub fn algebra(&self) -> Result<FiniteAlgebra> {
        let fin = self.check_finite()?;
        if !fin.finite {
            return Err(Error::HypothesisViolation("the map is not finite".into()));
        }
        let graph = graph_ring(self.source(), &self.target)?;
        let graph_ideal = self.graph_ideal()?.canonical();
        let mut alg = FiniteAlgebra {
            spec: self.clone(),
            graph,
            graph_ideal,
            basis: fin.basis.clone(),
            presentation: ModulePresentation::unlabeled(PolyMatrix::zeros(&self.target, 1, 1)),
            fiber_degree: OnceLock::new(),
        };
        let span = alg.span(&fin.basis)?;
        let labels = fin.basis.iter().map(|b| b.to_string()).collect();
        alg.presentation = ModulePresentation::new(labels, span.relations)?;
        Ok(alg)
    }
}

/// The `R`-span of some elements of `B`, with its relations and a module
/// GB that decides membership in the span.
struct Span {
    gb: GroebnerBasis,
    relations: PolyMatrix,
    rank: usize,
}

impl FiniteAlgebra {
    pub fn spec(&self) -> &FiniteMapSpec {
        &self.spec
    }

    pub fn target(&self) -> &Ring {
        &self.spec.target
    }

    pub fn graph_ideal(&self) -> &Ideal {
        &self.graph_ideal
    }

    /// Standard source monomials generating `B`, with `1` first.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn presentation(&self) -> &ModulePresentation {
        &self.presentation
    }

    /// `dim_k B / m B` at the origin of the target.
    pub fn fiber_degree(&self) -> Result<usize> {
        if let Some(&d) = self.fiber_degree.get() {
            return Ok(d);
        }
        let origin = Component::origin(self.target(), None).prime;
        let d = length_artinian(&self.presentation.modulo_ideal(&origin))?;
        Ok(*self.fiber_degree.get_or_init(|| d))
    }

    /// Works in `k[u; x]^(1+k)`: the vectors `(e_i, unit_i)` and `(g, 0)` for
    /// `g` in the graph ideal, under an order that eliminates component 0 and
    /// then the source variables. The surviving vectors are the
    /// `R`-relations among the `elems`.
    fn span(&self, elems: &[Polynomial]) -> Result<Span> {
        let k = elems.len();
        let rank = k + 1;
        let g = &self.graph;
        let mut gens = Vec::with_capacity(k + self.graph_ideal.gens().len());
        for (i, e) in elems.iter().enumerate() {
            let mut comps = vec![Polynomial::zero(g); rank];
            comps[0] = e.transfer(g)?;
            comps[i + 1] = Polynomial::one(g);
            gens.push(FreeVector::from_polys(g, comps));
        }
        for p in self.graph_ideal.gens() {
            let mut comps = vec![Polynomial::zero(g); rank];
            comps[0] = p.clone();
            gens.push(FreeVector::from_polys(g, comps));
        }
        let order = TermOrder::ElimComponents { first: 1, rest: Box::new(TermOrder::Top) };
        let gb = GroebnerBasis::module(g, rank, &gens, order, false)?;
        let m = self.spec.source().nvars();
        let mut cols = Vec::new();
        for v in gb.vectors() {
            if !v.get(0).is_zero() {
                continue;
            }
            if v.comps().iter().any(|p| p.support().iter().any(|&i| i < m)) {
                continue;
            }
            let comps = v.comps()[1..].iter().map(|p| p.transfer(self.target())).collect::<Result<Vec<_>>>()?;
            cols.push(FreeVector::from_polys(self.target(), comps));
        }
        let relations = PolyMatrix::from_columns(self.target(), k, &cols);
        Ok(Span { gb, relations, rank })
    }

    /// Whether `f` lies in the span computed by `span`.
    fn in_span(&self, span: &Span, f: &Polynomial) -> Result<bool> {
        let g = &self.graph;
        let mut comps = vec![Polynomial::zero(g); span.rank];
        comps[0] = f.transfer(g)?;
        let nf = span.gb.normal_form_vec(&FreeVector::from_polys(g, comps));
        let m = self.spec.source().nvars();
        Ok(nf.get(0).is_zero() && nf.comps().iter().all(|p| p.support().iter().all(|&i| i >= m)))
    }

    /// Presentation of the `R`-module generated by `elems` inside `B`.
    pub fn relations_among(&self, elems: &[Polynomial]) -> Result<PolyMatrix> {
        Ok(self.span(elems)?.relations)
    }

    /// Whether `elems` generate `B` as an `R`-module.
    pub fn generates(&self, elems: &[Polynomial]) -> Result<bool> {
        let span = self.span(elems)?;
        for b in &self.basis {
            if !self.in_span(&span, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `N_r = Fitt_(r-1)(B)`.
    pub fn target_ideal(&self, r: usize) -> Result<Ideal> {
        if r == 0 {
            return Err(Error::BadRange("r must be at least 1".into()));
        }
        fitting_ideal(&self.presentation, r - 1)
    }

    /// `M_r = f^{-1} N_r`.
    pub fn source_ideal(&self, r: usize) -> Result<Ideal> {
        self.spec.pull_back(&self.target_ideal(r)?)
    }

    /// Relative Jacobian test: `Fitt_1(Ω_f)` together with the graph ideal
    /// is the unit ideal.
    pub fn check_curvilinear(&self) -> Result<bool> {
        let g = &self.graph;
        let m = self.spec.source().nvars();
        let mut rels: Vec<Polynomial> = self.spec.source_ideal.transfer(g)?.gens().to_vec();
        for (i, f) in self.spec.images.iter().enumerate() {
            rels.push(&g.var(m + i) - &f.transfer(g)?);
        }
        let mut jac = PolyMatrix::zeros(g, m, rels.len());
        for (c, h) in rels.iter().enumerate() {
            for j in 0..m {
                jac.set(j, c, h.derivative(j));
            }
        }
        let fitt1 = minors_ideal_ext(&jac, m as i64 - 1)?;
        Ok(fitt1.sum(&self.graph_ideal)?.is_unit())
    }

    /// A primitive element: the source variables are tried first, then
    /// seeded combinations with coefficients in `0..4`.
    pub fn find_primitive(&self, seed: u64, budget: usize) -> Result<PowerBasis> {
        let source = self.spec.source();
        let mut candidates: Vec<Polynomial> = (0..source.nvars()).map(|i| source.var(i)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = source.field().clone();
        let mut attempts = 0;
        let mut drawn = 0;
        while attempts < candidates.len() || drawn < budget {
            let a = if attempts < candidates.len() {
                candidates[attempts].clone()
            } else {
                drawn += 1;
                let mut a = Polynomial::zero(source);
                for i in 0..source.nvars() {
                    a = &a + &source.var(i).scale(&field.from_i64(rng.gen_range(0..4)));
                }
                if a.is_zero() || candidates.contains(&a) {
                    continue;
                }
                candidates.push(a.clone());
                a
            };
            attempts += 1;
            if let Some(mut pb) = self.power_basis(&a)? {
                pb.attempts = attempts;
                return Ok(pb);
            }
        }
        Err(Error::NoPrimitiveFound(attempts))
    }
}

impl FiniteAlgebra {
    /// The power basis of `a` if `1, a, ..., a^(n-1)` generate `B`, with `n`
    /// the fiber degree at the origin.
    pub fn power_basis(&self, a: &Polynomial) -> Result<Option<PowerBasis>> {
        let n = self.fiber_degree()?;
        let powers = powers_of(a, n, self.spec.source());
        let span = self.span(&powers)?;
        for b in &self.basis {
            if !self.in_span(&span, b)? {
                return Ok(None);
            }
        }
        let labels = (0..n).map(|k| if k == 0 { "1".to_string() } else { format!("a^{k}") }).collect();
        Ok(Some(PowerBasis { element: a.clone(), attempts: 1, presentation: ModulePresentation::new(labels, span.relations)? }))
    }
}

fn powers_of(a: &Polynomial, n: usize, ring: &Ring) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(n);
    let mut p = Polynomial::one(ring);
    for _ in 0..n {
        out.push(p.clone());
        p = &p * a;
    }
    out
}

/// `B` re-presented on `1, a, ..., a^(n-1)` for a primitive element `a`.
#[derive(Clone, Debug)]
pub struct PowerBasis {
    pub element: Polynomial,
    pub attempts: usize,
    pub presentation: ModulePresentation,
}

impl PowerBasis {
    pub fn degree(&self) -> usize {
        self.presentation.ngens()
    }

    /// `M_r = B / (1, a, ..., a^(r-2))`, presented by the last `n - r + 1`
    /// rows of the power-basis presentation.
    pub fn quotient_module(&self, r: usize) -> Result<ModulePresentation> {
        let n = self.degree();
        if r == 0 || r > n {
            return Err(Error::BadRange(format!("r = {r} outside 1..={n}")));
        }
        Ok(self.presentation.drop_generators(&(0..r - 1).collect::<Vec<_>>()))
    }
}
