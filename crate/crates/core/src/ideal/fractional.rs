use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Ideal;
use crate::poly::{Polynomial, Ring};
use crate::{Error, Result};

/// Draws used when searching for a regular element by random combination.
const REGULAR_SEARCH_BUDGET: usize = 20;

/// A quotient ring `A = R / J_A`, computed inside the ambient ring `R`.
#[derive(Clone, Debug)]
pub struct QuotientRingContext {
    defining: Ideal,
}

impl QuotientRingContext {
    pub fn new(defining: Ideal) -> Result<QuotientRingContext> {
        if defining.is_unit() {
            return Err(Error::UnitIdeal);
        }
        Ok(QuotientRingContext { defining: defining.canonical() })
    }

    pub fn ring(&self) -> &Ring {
        self.defining.ring()
    }

    pub fn defining(&self) -> &Ideal {
        &self.defining
    }

    /// Preimage in `R` of the ideal of `A` generated by `gens`.
    pub fn ideal(&self, gens: &[Polynomial]) -> Result<Ideal> {
        self.defining.add_gens(gens)
    }

    pub fn absorb(&self, i: &Ideal) -> Result<Ideal> {
        self.defining.sum(i)
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.defining.normal_form(f)
    }

    /// `f` is a nonzerodivisor on `A` iff `J_A : f = J_A`.
    pub fn is_regular(&self, f: &Polynomial) -> Result<bool> {
        if self.defining.contains(f) {
            return Ok(false);
        }
        self.defining.contains_ideal(&self.defining.colon_element(f)?)
    }

    /// An `A`-regular element of the ideal generated by `gens`: a generator
    /// if one works, else a seeded random combination.
    pub fn regular_element(&self, gens: &[Polynomial], seed: u64) -> Result<Polynomial> {
        for g in gens {
            if self.is_regular(g)? {
                return Ok(g.clone());
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = self.ring().field().clone();
        for _ in 0..REGULAR_SEARCH_BUDGET {
            let mut f = Polynomial::zero(self.ring());
            for g in gens {
                let c = field.from_i64(rng.gen_range(0..4));
                f = &f + &g.scale(&c);
            }
            if !f.is_zero() && self.is_regular(&f)? {
                return Ok(f);
            }
        }
        Err(Error::BudgetExhausted(REGULAR_SEARCH_BUDGET))
    }
}

/// A fractional ideal `N / d` of `A`: `N` is an ideal of `A` (stored by
/// generators; `J_A` is always added back) and `d` an `A`-regular element.
#[derive(Clone, Debug)]
pub struct FractionalIdeal {
    ctx: QuotientRingContext,
    num: Vec<Polynomial>,
    den: Polynomial,
}

impl FractionalIdeal {
    pub fn new(ctx: &QuotientRingContext, num: &[Polynomial], den: &Polynomial) -> Result<FractionalIdeal> {
        if !ctx.is_regular(den)? {
            return Err(Error::IrregularDenominator(den.to_string()));
        }
        Ok(Self::unchecked(ctx, num.to_vec(), den.clone()))
    }

    fn unchecked(ctx: &QuotientRingContext, num: Vec<Polynomial>, den: Polynomial) -> FractionalIdeal {
        let mut kept: Vec<Polynomial> = Vec::new();
        for g in num {
            let r = ctx.reduce(&g);
            if !r.is_zero() && !kept.contains(&r) {
                kept.push(r);
            }
        }
        FractionalIdeal { ctx: ctx.clone(), num: kept, den }
    }

    /// `A` itself, as `A / 1`.
    pub fn whole(ctx: &QuotientRingContext) -> FractionalIdeal {
        Self::unchecked(ctx, vec![Polynomial::one(ctx.ring())], Polynomial::one(ctx.ring()))
    }

    pub fn context(&self) -> &QuotientRingContext {
        &self.ctx
    }

    pub fn numerator_gens(&self) -> &[Polynomial] {
        &self.num
    }

    /// Numerator as an ideal of `R` containing `J_A`.
    pub fn numerator(&self) -> Ideal {
        self.ctx.ideal(&self.num).expect("same ring")
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn mul(&self, other: &FractionalIdeal) -> FractionalIdeal {
        let mut num = Vec::with_capacity(self.num.len() * other.num.len());
        for a in &self.num {
            for b in &other.num {
                num.push(a * b);
            }
        }
        let den = &self.den * &other.den;
        Self::unchecked(&self.ctx, num, den).compact()
    }

    pub fn add(&self, other: &FractionalIdeal) -> FractionalIdeal {
        let mut num: Vec<Polynomial> = self.num.iter().map(|a| a * &other.den).collect();
        num.extend(other.num.iter().map(|b| b * &self.den));
        Self::unchecked(&self.ctx, num, &self.den * &other.den).compact()
    }

    pub fn power(&self, k: u32) -> FractionalIdeal {
        let mut acc = Self::whole(&self.ctx);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplication by the fraction `f / g`.
    pub fn scale(&self, f: &Polynomial, g: &Polynomial) -> Result<FractionalIdeal> {
        if !self.ctx.is_regular(g)? {
            return Err(Error::IrregularDenominator(g.to_string()));
        }
        Ok(Self::unchecked(&self.ctx, self.num.iter().map(|a| a * f).collect(), &self.den * g))
    }

    /// Whether `self ⊆ other`, by cross-multiplication.
    pub fn is_subset(&self, other: &FractionalIdeal) -> Result<bool> {
        let rhs = self.ctx.ideal(&other.num.iter().map(|b| b * &self.den).collect::<Vec<_>>())?;
        Ok(self.num.iter().all(|a| rhs.contains(&(a * &other.den))))
    }

    pub fn equals(&self, other: &FractionalIdeal) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// `{x in K : x * other ⊆ self}`. With `g0` a regular element of
    /// `other`'s numerator this is `((g0 d_o N_s + J_A) : N_o) / (d_s g0)`.
    pub fn colon(&self, other: &FractionalIdeal) -> Result<FractionalIdeal> {
        let g0 = self.ctx.regular_element(&other.num, 0)?;
        let scaled: Vec<Polynomial> = self.num.iter().map(|a| &(a * &other.den) * &g0).collect();
        let lhs = self.ctx.ideal(&scaled)?;
        let divisor = Ideal::new(self.ctx.ring(), other.num.clone())?;
        if divisor.is_zero() {
            return Err(Error::ZeroColonDivisor);
        }
        let q = lhs.colon(&divisor)?.canonical();
        Ok(Self::unchecked(&self.ctx, q.gens().to_vec(), &self.den * &g0).compact())
    }

    /// Replaces the numerator generators by a reduced basis modulo `J_A`.
    fn compact(self) -> FractionalIdeal {
        if self.num.len() <= 8 {
            return self;
        }
        let gb = self.numerator().canonical();
        let num = gb.gens().iter().filter(|g| !self.ctx.defining().contains(g)).cloned().collect();
        Self::unchecked(&self.ctx, num, self.den)
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.num.iter().map(|p| p.to_string()).collect();
        write!(f, "({}) / ({})", parts.join(", "), self.den)
    }
}

/// Result of stabilizing `A[I/Δ]`.
#[derive(Clone, Debug)]
pub struct Stabilized {
    pub algebra: FractionalIdeal,
    pub exponent: u32,
}

/// `A[I/Δ]` as the stable member of `F_n = (I^n + J_A) / Δ^n`; `exponent` is
/// the least `n >= 1` with `F_(n+1) = F_n`.
pub fn frac_power_stabilize(ctx: &QuotientRingContext, i: &[Polynomial], delta: &Polynomial, bound: u32) -> Result<Stabilized> {
    if !ctx.ideal(i)?.contains(delta) {
        return Err(Error::Invalid("the denominator must lie in the ideal".into()));
    }
    let f1 = FractionalIdeal::new(ctx, i, delta)?;
    let mut cur = f1.clone();
    for n in 1..=bound {
        let next = cur.mul(&f1);
        if next.is_subset(&cur)? {
            return Ok(Stabilized { algebra: cur, exponent: n });
        }
        cur = next;
    }
    Err(Error::NoStabilization(bound as usize))
}
