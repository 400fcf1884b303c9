//! Sparse multivariate polynomials over a base field, used as numerators and
//! denominators of rational-function coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{Elem, Field};

/// Polynomial in the parameters of a function field. Terms are kept in
/// descending lexicographic order of exponent vectors, with nonzero
/// coefficients only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    pub(crate) terms: Vec<(Vec<u32>, Elem)>,
}

fn cmp_lex_desc(a: &[u32], b: &[u32]) -> Ordering {
    b.cmp(a)
}

fn cmp_grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn constant(c: Elem, nvars: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: vec![(vec![0; nvars], c)] }
    }

    pub fn var(i: usize, nvars: usize, base: &Field) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly { terms: vec![(e, base.one())] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<&Elem> {
        match self.terms.as_slice() {
            [(e, c)] if e.iter().all(|&x| x == 0) => Some(c),
            _ => None,
        }
    }

    fn from_map(map: BTreeMap<Vec<u32>, Elem>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        MPoly { terms }
    }

    pub fn add(&self, other: &MPoly, base: &Field) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match cmp_lex_desc(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = base.add(&self.terms[i].1, &other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        MPoly { terms: out }
    }

    pub fn neg(&self, base: &Field) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), base.neg(c))).collect() }
    }

    pub fn sub(&self, other: &MPoly, base: &Field) -> MPoly {
        self.add(&other.neg(base), base)
    }

    pub fn scale(&self, c: &Elem, base: &Field) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, a)| (e.clone(), base.mul(a, c))).collect() }
    }

    fn mul_term(&self, exps: &[u32], c: &Elem, base: &Field) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.iter().zip(exps).map(|(x, y)| x + y).collect(), base.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly, base: &Field) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let mut acc: BTreeMap<Vec<u32>, Elem> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let p = base.mul(ca, cb);
                match acc.get_mut(&e) {
                    Some(v) => *v = base.add(v, &p),
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        MPoly::from_map(acc)
    }

    fn deg_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    /// Coefficient of `x_v^d`, as a polynomial with `x_v` removed.
    fn coeff_in(&self, v: usize, d: u32) -> MPoly {
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .filter(|(e, _)| e[v] == d)
            .map(|(e, c)| {
                let mut e = e.clone();
                e[v] = 0;
                (e, c.clone())
            })
            .collect();
        terms.sort_by(|a, b| cmp_lex_desc(&a.0, &b.0));
        MPoly { terms }
    }

    fn coeffs_in(&self, v: usize) -> Vec<MPoly> {
        let mut seen: Vec<u32> = self.terms.iter().map(|(e, _)| e[v]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.into_iter().map(|d| self.coeff_in(v, d)).collect()
    }

    pub fn div_exact(&self, divisor: &MPoly, base: &Field) -> Option<MPoly> {
        let (le, lc) = divisor.terms.first()?;
        let lc_inv = base.inv(lc).ok()?;
        let mut rem = self.clone();
        let mut quot: Vec<(Vec<u32>, Elem)> = Vec::new();
        while let Some((re, rc)) = rem.terms.first() {
            if re.iter().zip(le).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(le).map(|(a, b)| a - b).collect();
            let c = base.mul(rc, &lc_inv);
            rem = rem.sub(&divisor.mul_term(&e, &c, base), base);
            quot.push((e, c));
        }
        Some(MPoly { terms: quot })
    }

    pub fn monic(&self, base: &Field) -> MPoly {
        match self.terms.first() {
            None => MPoly::zero(),
            Some((_, c)) => self.scale(&base.inv(c).expect("nonzero"), base),
        }
    }

    pub fn lead_coeff_grevlex(&self) -> Option<&Elem> {
        self.terms.iter().max_by(|a, b| cmp_grevlex(&a.0, &b.0)).map(|(_, c)| c)
    }

    fn pseudo_rem(a: &MPoly, b: &MPoly, v: usize, base: &Field) -> MPoly {
        let db = b.deg_in(v);
        let lcb = b.coeff_in(v, db);
        let nvars = b.terms[0].0.len();
        let mut r = a.clone();
        while !r.is_zero() && r.deg_in(v) >= db {
            let dr = r.deg_in(v);
            let lcr = r.coeff_in(v, dr);
            let mut shift = vec![0; nvars];
            shift[v] = dr - db;
            let t = lcr.mul(&MPoly { terms: vec![(shift, base.one())] }, base).mul(b, base);
            r = lcb.mul(&r, base).sub(&t, base);
        }
        r
    }

    fn content(a: &MPoly, v: usize, base: &Field) -> MPoly {
        let mut g = MPoly::zero();
        for c in a.coeffs_in(v) {
            g = Self::gcd_from(&g, &c, v + 1, base);
            if g.as_constant().is_some() {
                break;
            }
        }
        g
    }

    fn primitive_part(a: &MPoly, v: usize, base: &Field) -> MPoly {
        let c = Self::content(a, v, base);
        a.div_exact(&c, base).expect("content divides")
    }

    fn gcd_from(a: &MPoly, b: &MPoly, v: usize, base: &Field) -> MPoly {
        if a.is_zero() {
            return b.monic(base);
        }
        if b.is_zero() {
            return a.monic(base);
        }
        let nvars = a.terms[0].0.len();
        if v >= nvars || a.as_constant().is_some() || b.as_constant().is_some() {
            return MPoly::constant(base.one(), nvars);
        }
        let ca = Self::content(a, v, base);
        let cb = Self::content(b, v, base);
        let c = Self::gcd_from(&ca, &cb, v + 1, base);
        let mut pa = a.div_exact(&ca, base).expect("content divides");
        let mut pb = b.div_exact(&cb, base).expect("content divides");
        if pa.deg_in(v) < pb.deg_in(v) {
            std::mem::swap(&mut pa, &mut pb);
        }
        while !pb.is_zero() {
            if pb.deg_in(v) == 0 {
                pa = MPoly::constant(base.one(), nvars);
                break;
            }
            let r = Self::pseudo_rem(&pa, &pb, v, base);
            pa = pb;
            pb = if r.is_zero() { r } else { Self::primitive_part(&r, v, base) };
        }
        let g = if pa.deg_in(v) == 0 {
            MPoly::constant(base.one(), nvars)
        } else {
            Self::primitive_part(&pa, v, base)
        };
        c.mul(&g, base).monic(base)
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &MPoly, b: &MPoly, base: &Field) -> MPoly {
        Self::gcd_from(a, b, 0, base)
    }
}

/// Reduced fraction of parameter polynomials; the denominator has leading
/// coefficient one under grevlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    pub num: MPoly,
    pub den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly, base: &Field) -> crate::Result<RatFunc> {
        if den.is_zero() {
            return Err(crate::Error::DivisionByZero);
        }
        let nvars = den.terms[0].0.len();
        if num.is_zero() {
            return Ok(RatFunc { num, den: MPoly::constant(base.one(), nvars) });
        }
        let (num, den) = if den.as_constant().is_some() {
            (num, den)
        } else {
            let g = MPoly::gcd(&num, &den, base);
            if g.as_constant().is_some() {
                (num, den)
            } else {
                (num.div_exact(&g, base).expect("gcd divides"), den.div_exact(&g, base).expect("gcd divides"))
            }
        };
        let lc = base.inv(den.lead_coeff_grevlex().expect("nonzero")).expect("nonzero");
        Ok(RatFunc { num: num.scale(&lc, base), den: den.scale(&lc, base) })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}
