//! Exact coefficient fields: the rationals, prime fields, and rational
//! function fields over either.

mod ratfunc;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};
pub use ratfunc::{MPoly, RatFunc};

/// A coefficient field. Function fields nest at most one level deep.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
    Fractions { base: Box<Field>, params: Vec<String> },
}

/// A field element in canonical form. Elements do not remember their field;
/// arithmetic goes through [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(BigRational),
    Mod(u32),
    Frac(Box<RatFunc>),
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Rat(q) => q.is_zero(),
            Elem::Mod(a) => *a == 0,
            Elem::Frac(f) => f.is_zero(),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn fractions(base: Field, params: Vec<String>) -> Result<Field> {
        if matches!(base, Field::Fractions { .. }) {
            return Err(Error::Invalid("function fields nest at most one level".into()));
        }
        if params.is_empty() {
            return Ok(base);
        }
        let mut sorted = params.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != params.len() {
            return Err(Error::Invalid("duplicate parameter names".into()));
        }
        Ok(Field::Fractions { base: Box::new(base), params })
    }

    /// The prime or rational subfield underlying this field.
    pub fn base(&self) -> &Field {
        match self {
            Field::Fractions { base, .. } => base,
            f => f,
        }
    }

    pub fn params(&self) -> &[String] {
        match self {
            Field::Fractions { params, .. } => params,
            _ => &[],
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
            Field::Fractions { base, .. } => base.characteristic(),
        }
    }

    pub fn zero(&self) -> Elem {
        self.from_i64(0)
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        match self {
            Field::Rationals => Elem::Rat(BigRational::from_integer(n.into())),
            Field::Prime(p) => Elem::Mod(n.rem_euclid(*p as i64) as u32),
            Field::Fractions { base, params } => Elem::Frac(Box::new(RatFunc {
                num: MPoly::constant(base.from_i64(n), params.len()),
                den: MPoly::constant(base.one(), params.len()),
            })),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self {
            Field::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = (n % BigInt::from(*p) + BigInt::from(*p)) % BigInt::from(*p);
                Elem::Mod(r.to_u32().expect("reduced residue"))
            }
            Field::Fractions { base, params } => Elem::Frac(Box::new(RatFunc {
                num: MPoly::constant(base.from_bigint(n), params.len()),
                den: MPoly::constant(base.one(), params.len()),
            })),
        }
    }

    /// The `i`-th parameter of a function field, as a field element.
    pub fn param(&self, i: usize) -> Result<Elem> {
        match self {
            Field::Fractions { base, params } if i < params.len() => Ok(Elem::Frac(Box::new(RatFunc {
                num: MPoly::var(i, params.len(), base),
                den: MPoly::constant(base.one(), params.len()),
            }))),
            _ => Err(Error::Invalid(format!("field has no parameter {i}"))),
        }
    }

    /// Lift an element of the base field into this field.
    pub fn embed_base(&self, c: &Elem) -> Elem {
        match self {
            Field::Fractions { base, params } => Elem::Frac(Box::new(RatFunc {
                num: MPoly::constant(c.clone(), params.len()),
                den: MPoly::constant(base.one(), params.len()),
            })),
            _ => c.clone(),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (_, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Field::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(((*x as u64 + *y as u64) % *p as u64) as u32),
            (Field::Fractions { base, .. }, Elem::Frac(x), Elem::Frac(y)) => {
                if x.den == y.den {
                    let num = x.num.add(&y.num, base);
                    return Elem::Frac(Box::new(RatFunc::new(num, x.den.clone(), base).expect("nonzero den")));
                }
                let num = x.num.mul(&y.den, base).add(&y.num.mul(&x.den, base), base);
                let den = x.den.mul(&y.den, base);
                Elem::Frac(Box::new(RatFunc::new(num, den, base).expect("nonzero den")))
            }
            _ => panic!("field mismatch in add"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (_, Elem::Rat(x)) => Elem::Rat(-x),
            (Field::Prime(p), Elem::Mod(x)) => Elem::Mod(if *x == 0 { 0 } else { p - x }),
            (Field::Fractions { base, .. }, Elem::Frac(x)) => {
                Elem::Frac(Box::new(RatFunc { num: x.num.neg(base), den: x.den.clone() }))
            }
            _ => panic!("field mismatch in neg"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (_, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Field::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(((*x as u64 * *y as u64) % *p as u64) as u32),
            (Field::Fractions { base, .. }, Elem::Frac(x), Elem::Frac(y)) => {
                if x.is_zero() || y.is_zero() {
                    return self.zero();
                }
                let num = x.num.mul(&y.num, base);
                let den = x.den.mul(&y.den, base);
                Elem::Frac(Box::new(RatFunc::new(num, den, base).expect("nonzero den")))
            }
            _ => panic!("field mismatch in mul"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (_, Elem::Rat(x)) => Elem::Rat(x.recip()),
            (Field::Prime(p), Elem::Mod(x)) => Elem::Mod(mod_pow(*x as u64, *p as u64 - 2, *p as u64) as u32),
            (Field::Fractions { base, .. }, Elem::Frac(x)) => {
                Elem::Frac(Box::new(RatFunc::new(x.den.clone(), x.num.clone(), base)?))
            }
            _ => return Err(Error::FieldMismatch("element does not belong to field".into())),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, mut e: u32) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Checks that `a` is a canonical element of this field.
    pub fn contains(&self, a: &Elem) -> bool {
        match (self, a) {
            (Field::Rationals, Elem::Rat(_)) => true,
            (Field::Prime(p), Elem::Mod(x)) => x < p,
            (Field::Fractions { base, params }, Elem::Frac(f)) => {
                let ok = |m: &MPoly| m.terms.iter().all(|(e, c)| e.len() == params.len() && base.contains(c));
                ok(&f.num) && ok(&f.den) && !f.den.is_zero()
            }
            _ => false,
        }
    }

    /// Whether the element prints with a leading minus sign.
    pub fn is_negative(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(q) => q.is_negative(),
            _ => false,
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Rat(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Elem::Mod(x) => x.to_string(),
            Elem::Frac(f) => {
                let base = self.base();
                let params = self.params();
                let num = format_mpoly(&f.num, base, params);
                if f.den.as_constant().is_some() {
                    format!("({num})")
                } else {
                    format!("({num})/({})", format_mpoly(&f.den, base, params))
                }
            }
        }
    }

    /// Numerator and denominator of a rational, when this is the rationals.
    pub fn as_rational(&self, a: &Elem) -> Option<BigRational> {
        match a {
            Elem::Rat(q) => Some(q.clone()),
            _ => None,
        }
    }

    pub fn rational(&self, num: &BigInt, den: &BigInt) -> Result<Elem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.div(&self.from_bigint(num), &self.from_bigint(den))
    }
}

fn format_mpoly(m: &MPoly, base: &Field, params: &[String]) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in m.terms.iter().enumerate() {
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(i, &x)| if x == 1 { params[i].clone() } else { format!("{}^{}", params[i], x) })
            .collect();
        let neg = base.is_negative(c);
        let abs = if neg { base.neg(c) } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&base.format(&abs));
        } else {
            if !base.is_one(&abs) {
                out.push_str(&base.format(&abs));
                out.push('*');
            }
            out.push_str(&mono.join("*"));
        }
    }
    out
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Fractions { base, params } => write!(f, "{}({})", base, params.join(",")),
        }
    }
}

/// JSON form of a field: `{"kind":"QQ"}`, `{"kind":"Fp","p":101}` or
/// `{"kind":"Frac","base":{...},"params":["z"]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind")]
pub enum FieldJson {
    #[serde(rename = "QQ")]
    Rationals,
    #[serde(rename = "Fp")]
    Prime { p: u32 },
    #[serde(rename = "Frac")]
    Fractions { base: Box<FieldJson>, params: Vec<String> },
}

impl TryFrom<&FieldJson> for Field {
    type Error = Error;

    fn try_from(j: &FieldJson) -> Result<Field> {
        match j {
            FieldJson::Rationals => Ok(Field::Rationals),
            FieldJson::Prime { p } => Field::prime(*p),
            FieldJson::Fractions { base, params } => Field::fractions(Field::try_from(base.as_ref())?, params.clone()),
        }
    }
}

impl From<&Field> for FieldJson {
    fn from(f: &Field) -> FieldJson {
        match f {
            Field::Rationals => FieldJson::Rationals,
            Field::Prime(p) => FieldJson::Prime { p: *p },
            Field::Fractions { base, params } => {
                FieldJson::Fractions { base: Box::new(FieldJson::from(base.as_ref())), params: params.clone() }
            }
        }
    }
}
