use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ideal::{frac_power_stabilize, FractionalIdeal, Ideal, QuotientRingContext};
use crate::poly::{MonomialOrder, Polynomial, Ring};
use crate::{Error, Result};

/// Bound on the powers tried when stabilizing `A[I/Δ]`.
const STABILIZE_BOUND: u32 = 30;

/// `B = A[I/Δ]` against the conductor and `J`, as fractional ideals.
#[derive(Clone, Debug)]
pub struct ConductorVerdicts {
    pub algebra: FractionalIdeal,
    pub exponent: u32,
    /// `A : B`.
    pub conductor: FractionalIdeal,
    pub conductor_is_j: bool,
    pub jb_is_j: bool,
    /// `B = J : J`.
    pub b_is_endomorphisms: bool,
    /// `B = A : J`.
    pub b_is_dual: bool,
    pub rees: ReesChart,
}

impl ConductorVerdicts {
    pub fn all_hold(&self) -> bool {
        self.conductor_is_j && self.jb_is_j && self.b_is_endomorphisms && self.b_is_dual && self.rees.agrees
    }
}

pub fn conductor_suite(ctx: &QuotientRingContext, i: &[Polynomial], j: &[Polynomial], delta: &Polynomial) -> Result<ConductorVerdicts> {
    let stab = frac_power_stabilize(ctx, i, delta, STABILIZE_BOUND)?;
    let b = stab.algebra;
    let one = Polynomial::one(ctx.ring());
    let whole = FractionalIdeal::whole(ctx);
    let jf = FractionalIdeal::new(ctx, j, &one)?;
    let conductor = whole.colon(&b)?;
    let rees = rees_chart_check(ctx, i, delta, &b)?;
    Ok(ConductorVerdicts {
        conductor_is_j: conductor.equals(&jf)?,
        jb_is_j: jf.mul(&b).equals(&jf)?,
        b_is_endomorphisms: jf.colon(&jf)?.equals(&b)?,
        b_is_dual: whole.colon(&jf)?.equals(&b)?,
        algebra: b,
        exponent: stab.exponent,
        conductor,
        rees,
    })
}

#[derive(Clone, Debug)]
pub struct SelfLinkage {
    pub t: Polynomial,
    /// Candidates examined, counting the accepted one.
    pub attempts: usize,
    pub regular: bool,
    /// `J = (t) : J`.
    pub self_linked: bool,
}

/// Searches for `t` with `JB = tB`: generators of `J`, then `delta`, then
/// seeded combinations of the generators.
pub fn self_linkage_check(
    ctx: &QuotientRingContext,
    j: &[Polynomial],
    b: &FractionalIdeal,
    delta: &Polynomial,
    seed: u64,
    budget: usize,
) -> Result<SelfLinkage> {
    let one = Polynomial::one(ctx.ring());
    let jb = FractionalIdeal::new(ctx, j, &one)?.mul(b);
    let mut candidates: Vec<Polynomial> = j.to_vec();
    candidates.push(delta.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = ctx.ring().field().clone();
    for _ in 0..budget {
        let mut f = Polynomial::zero(ctx.ring());
        for g in j {
            f = &f + &g.scale(&field.from_i64(rng.gen_range(0..4)));
        }
        candidates.push(f);
    }
    let jideal = ctx.ideal(j)?;
    for (n, t) in candidates.iter().enumerate() {
        if t.is_zero() || !ctx.is_regular(t)? {
            continue;
        }
        if !jb.equals(&b.scale(t, &one)?)? {
            continue;
        }
        let colon = ctx.ideal(std::slice::from_ref(t))?.colon(&jideal)?;
        return Ok(SelfLinkage { t: t.clone(), attempts: n + 1, regular: true, self_linked: colon.equals(&jideal)? });
    }
    Err(Error::NoPrincipalGenerator(candidates.len()))
}

/// Defining ideal of the Rees algebra `A[w g_1, ..., w g_s]` as a quotient
/// of `R[T_1, ..., T_s]`.
#[derive(Clone, Debug)]
pub struct ReesIdeal {
    pub ring: Ring,
    /// Indices of `T_1, ..., T_s` in `ring`.
    pub t_vars: Vec<usize>,
    pub ideal: Ideal,
}

fn fresh(taken: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

fn with_t_vars(ring: &Ring, s: usize) -> Result<(Ring, Vec<usize>)> {
    let mut vars = ring.vars().to_vec();
    let mut idx = Vec::with_capacity(s);
    for k in 1..=s {
        let name = fresh(&vars, &format!("T{k}"));
        idx.push(vars.len());
        vars.push(name);
    }
    Ok((Ring::new(ring.field().clone(), vars, MonomialOrder::GrevLex)?, idx))
}

/// `gens` with `T_i - w g_i` and the defining ideal, `w` eliminated.
pub fn rees_algebra(ctx: &QuotientRingContext, gens: &[Polynomial]) -> Result<ReesIdeal> {
    let (ring, t_vars) = with_t_vars(ctx.ring(), gens.len())?;
    let ideal = adjoin_and_eliminate(ctx, &ring, &t_vars, gens, None)?;
    Ok(ReesIdeal { ring, t_vars, ideal })
}

/// With `inverse = Some(d)` the extra variable `s` satisfies `d s = 1` and
/// `T_i = s g_i`; otherwise `T_i = w g_i` for a free variable `w`.
fn adjoin_and_eliminate(
    ctx: &QuotientRingContext,
    ring: &Ring,
    t_vars: &[usize],
    gens: &[Polynomial],
    inverse: Option<&Polynomial>,
) -> Result<Ideal> {
    let name = fresh(ring.vars(), if inverse.is_some() { "s" } else { "w" });
    let big = ring.extend_front(&[name])?;
    let w = big.var(0);
    let mut rel = ctx.defining().transfer(&big)?.gens().to_vec();
    for (g, &t) in gens.iter().zip(t_vars) {
        rel.push(&big.var(t + 1) - &(&w * &g.transfer(&big)?));
    }
    if let Some(d) = inverse {
        rel.push(&(&d.transfer(&big)? * &w) - &Polynomial::one(&big));
    }
    Ideal::new(&big, rel)?.eliminate(&[0])?.transfer(ring)
}

/// The chart of the blowup where `delta` generates, computed two ways:
/// dehomogenizing the Rees ideal at `delta`'s coordinate, and as the
/// kernel of `A[T] -> A[1/Δ]`.
#[derive(Clone, Debug)]
pub struct ReesChart {
    pub chart: Ideal,
    pub kernel: Ideal,
    /// Each `g_i / Δ` lies in the stabilized algebra.
    pub fractions_in_algebra: bool,
    pub agrees: bool,
}

pub fn rees_chart_check(ctx: &QuotientRingContext, gens: &[Polynomial], delta: &Polynomial, b: &FractionalIdeal) -> Result<ReesChart> {
    let pos = gens.iter().position(|g| g == delta).ok_or_else(|| Error::Invalid("Δ must be one of the generators".into()))?;
    let rees = rees_algebra(ctx, gens)?;
    let chart = rees.ideal.add_gens(&[&rees.ring.var(rees.t_vars[pos]) - &Polynomial::one(&rees.ring)])?;
    let kernel = adjoin_and_eliminate(ctx, &rees.ring, &rees.t_vars, gens, Some(delta))?;
    let mut fractions_in_algebra = true;
    for g in gens {
        fractions_in_algebra &= FractionalIdeal::new(ctx, std::slice::from_ref(g), delta)?.is_subset(b)?;
    }
    let agrees = fractions_in_algebra && chart.equals(&kernel)?;
    Ok(ReesChart { chart, kernel, fractions_in_algebra, agrees })
}
