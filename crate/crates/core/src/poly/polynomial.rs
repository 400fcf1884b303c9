use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Monomial, Ring};
use crate::field::{Elem, Field};
use crate::{Error, Result};

/// A polynomial with terms sorted strictly descending in the ring's order and
/// no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Elem)>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: Elem) -> Polynomial {
        Polynomial::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &Ring, n: i64) -> Polynomial {
        Polynomial::constant(ring, ring.field().from_i64(n))
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::from_int(ring, 1)
    }

    pub fn var(ring: &Ring, i: usize) -> Polynomial {
        Polynomial::monomial(ring, Monomial::var(i, ring.nvars()), ring.field().one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Elem) -> Polynomial {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, Elem)>) -> Polynomial {
        let order = ring.order();
        let field = ring.field();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead_term(&self) -> Option<&(Monomial, Elem)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&Elem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn as_constant(&self) -> Option<Elem> {
        match self.terms.as_slice() {
            [] => Some(self.field().zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| self.field().is_one(&c)).unwrap_or(false)
    }

    pub fn constant_term(&self) -> Elem {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.field().zero(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    /// Variables occurring in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0)).collect()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        let order = self.ring.order();
        let field = self.ring.field();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(&a[i].1, &b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn neg_ref(&self) -> Polynomial {
        let field = self.ring.field();
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect() }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add_unchecked(&big.mul_term(m, c));
        }
        acc
    }

    /// Multiplies by `c * m`. Monomial multiplication preserves the order, so
    /// no re-sorting is needed.
    pub fn mul_term(&self, m: &Monomial, c: &Elem) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), field.mul(tc, c))).collect(),
        }
    }

    pub fn scale(&self, c: &Elem) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&self.field().inv(c).expect("nonzero lead")),
        }
    }

    /// Exact division by a nonzero constant.
    pub fn div_constant(&self, c: &Elem) -> Result<Polynomial> {
        Ok(self.scale(&self.field().inv(c)?))
    }

    /// Quotient and remainder of division by a single polynomial.
    pub fn divide(&self, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_ring(g)?;
        let (lm, lc) = g.lead_term().ok_or(Error::DivisionByZero)?;
        let field = self.field();
        let lc_inv = field.inv(lc)?;
        let mut quot = Vec::new();
        let mut rem = Vec::new();
        let mut cur = self.clone();
        while let Some((m, c)) = cur.terms.first().cloned() {
            if lm.divides(&m) {
                let q = lm.quotient_of(&m);
                let k = field.mul(&c, &lc_inv);
                cur = &cur - &g.mul_term(&q, &k);
                quot.push((q, k));
            } else {
                rem.push(cur.terms.remove(0));
            }
        }
        Ok((Polynomial::from_terms(&self.ring, quot), Polynomial::from_terms(&self.ring, rem)))
    }

    /// Exact quotient `self / g`, if `g` divides `self`.
    pub fn div_exact(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        let (q, r) = self.divide(g)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let field = self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let mut e = m.0.clone();
                let k = e[var];
                e[var] -= 1;
                (Monomial(e), field.mul(c, &field.from_i64(k as i64)))
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Substitutes `images[i]` for variable `i`; images live in `target`,
    /// whose field must equal this field or be a function field over it.
    pub fn substitute(&self, images: &[Polynomial], target: &Ring) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch(images.len(), self.ring.nvars()));
        }
        let mut acc = Polynomial::zero(target);
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); images.len()];
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, coerce(c, self.field(), target.field())?);
            for i in m.support() {
                let e = m.0[i] as usize;
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Polynomial::one(target));
                }
                while cache.len() <= e {
                    let next = &cache[cache.len() - 1] * &images[i];
                    cache.push(next);
                }
                t = &t * &cache[e];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Moves the polynomial into another ring by matching variable names.
    /// Variables that are parameters of the target field become coefficients.
    pub fn transfer(&self, target: &Ring) -> Result<Polynomial> {
        if self.ring == *target {
            return Ok(self.clone());
        }
        let used = self.support();
        let map: Vec<Option<usize>> = self.ring.vars().iter().map(|v| target.var_index(v)).collect();
        if self.field() == target.field() && used.iter().all(|&i| map[i].is_some()) {
            let n = target.nvars();
            let terms = self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0; n];
                    for i in m.support() {
                        e[map[i].expect("checked")] = m.0[i];
                    }
                    (Monomial(e), c.clone())
                })
                .collect();
            return Ok(Polynomial::from_terms(target, terms));
        }
        let images = self
            .ring
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if let Some(j) = map[i] {
                    return Ok(target.var(j));
                }
                if let Some(k) = target.field().params().iter().position(|p| p == v) {
                    return Ok(Polynomial::constant(target, target.field().param(k)?));
                }
                if used.contains(&i) {
                    Err(Error::UnknownVariable(v.clone()))
                } else {
                    Ok(Polynomial::zero(target))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        self.substitute(&images, target)
    }

    /// Evaluates to a field element when every variable gets a value.
    pub fn evaluate(&self, values: &[Elem]) -> Elem {
        let field = self.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in m.support() {
                t = field.mul(&t, &field.pow(&values[i], m.0[i]));
            }
            acc = field.add(&acc, &t);
        }
        acc
    }
}

/// Maps a coefficient from `from` into `to`.
pub(crate) fn coerce(c: &Elem, from: &Field, to: &Field) -> Result<Elem> {
    if from == to {
        return Ok(c.clone());
    }
    if to.base() == from && !matches!(from, Field::Fractions { .. }) {
        return Ok(to.embed_base(c));
    }
    Err(Error::FieldMismatch(format!("cannot map {from} into {to}")))
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = self.field();
        let names = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = field.is_negative(c);
            let abs = if neg { field.neg(c) } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", field.format(&abs))?;
            } else if field.is_one(&abs) {
                write!(f, "{}", m.format(names))?;
            } else {
                write!(f, "{}*{}", field.format(&abs), m.format(names))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;

    fn qring(vars: &[&str]) -> Ring {
        Ring::grevlex(Field::Rationals, vars).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = qring(&["x", "y"]);
        let p = r.parse("(x+y)*(x-y)").unwrap();
        assert_eq!(p, r.parse("x^2 - y^2").unwrap());
        assert_eq!(&p + &Polynomial::zero(&r), p);
    }

    #[test]
    fn frobenius_in_char_two() {
        let r = Ring::grevlex(Field::prime(2).unwrap(), &["x", "y"]).unwrap();
        assert_eq!(r.parse("(x+y)^2").unwrap().to_string(), "x^2 + y^2");
    }

    #[test]
    fn ring_mismatch() {
        let a = qring(&["x"]).parse("x").unwrap();
        let b = qring(&["y"]).parse("y").unwrap();
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn lex_term_order() {
        let r = Ring::new(Field::Rationals, vec!["x".into(), "y".into()], MonomialOrder::Lex).unwrap();
        assert_eq!(r.parse("y^5 + x").unwrap().to_string(), "x + y^5");
    }

    #[test]
    fn transfer_by_name() {
        let r = qring(&["x", "y"]);
        let s = qring(&["t", "y", "x"]);
        let p = r.parse("x^2*y - 3").unwrap();
        let q = p.transfer(&s).unwrap();
        assert_eq!(q.to_string(), "y*x^2 - 3");
        assert_eq!(q.transfer(&r).unwrap(), p);
        assert!(s.parse("t").unwrap().transfer(&r).is_err());
    }

    #[test]
    fn transfer_into_function_field() {
        let r = qring(&["x", "z"]);
        let k = Field::fractions(Field::Rationals, vec!["z".into()]).unwrap();
        let s = Ring::grevlex(k, &["x"]).unwrap();
        let p = r.parse("x*z - z^2").unwrap();
        let q = p.transfer(&s).unwrap();
        assert_eq!(q.to_string(), "(z)*x + (-z^2)");
    }

    #[test]
    fn substitution_and_derivative() {
        let r = qring(&["x", "y"]);
        let s = qring(&["t"]);
        let f = r.parse("y^2 - x^3").unwrap();
        let img = vec![s.parse("t^2").unwrap(), s.parse("t^3").unwrap()];
        assert!(f.substitute(&img, &s).unwrap().is_zero());
        assert_eq!(f.derivative(0), r.parse("-3*x^2").unwrap());
    }
}
