//! Sorted term lists in a free module, the working representation of the
//! Gröbner engine. A polynomial is a term list supported in component 0.

use std::cmp::Ordering;

use super::TermOrder;
use crate::field::{Elem, Field};
use crate::poly::{FreeVector, Monomial, MonomialOrder, Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub comp: usize,
    pub mono: Monomial,
    pub coeff: Elem,
}

/// Terms strictly descending in the active term order.
pub(crate) type Terms = Vec<Term>;

static POT: TermOrder = TermOrder::Pot;

pub(crate) struct Ctx<'a> {
    pub field: &'a Field,
    pub mo: &'a MonomialOrder,
    pub to: &'a TermOrder,
}

impl<'a> Ctx<'a> {
    pub fn new(ring: &'a Ring, to: &'a TermOrder) -> Ctx<'a> {
        Ctx { field: ring.field(), mo: ring.order(), to }
    }

    /// Context for tracking vectors, which live in a different free module.
    pub fn reps(&self) -> Ctx<'a> {
        Ctx { field: self.field, mo: self.mo, to: &POT }
    }

    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.to.cmp(self.mo, a.comp, &a.mono, b.comp, &b.mono)
    }

    pub fn sort(&self, mut terms: Vec<Term>) -> Terms {
        terms.sort_by(|a, b| self.cmp(b, a));
        let mut out: Terms = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.comp == t.comp && l.mono == t.mono => l.coeff = self.field.add(&l.coeff, &t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        out
    }

    /// `f - c * m * g`.
    pub fn sub_mul(&self, f: &[Term], c: &Elem, m: &Monomial, g: &[Term]) -> Terms {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let neg = self.field.neg(c);
        let (mut i, mut j) = (0, 0);
        let mut pending: Option<Term> = None;
        loop {
            if pending.is_none() && j < g.len() {
                pending = Some(Term { comp: g[j].comp, mono: g[j].mono.mul(m), coeff: self.field.mul(&g[j].coeff, &neg) });
                j += 1;
            }
            match (f.get(i), pending.take()) {
                (None, None) => break,
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => out.push(b),
                (Some(a), Some(b)) => match self.cmp(a, &b) {
                    Ordering::Greater => {
                        out.push(a.clone());
                        i += 1;
                        pending = Some(b);
                    }
                    Ordering::Less => out.push(b),
                    Ordering::Equal => {
                        let s = self.field.add(&a.coeff, &b.coeff);
                        if !s.is_zero() {
                            out.push(Term { comp: a.comp, mono: a.mono.clone(), coeff: s });
                        }
                        i += 1;
                    }
                },
            }
        }
        out
    }

    pub fn add(&self, f: &[Term], g: &[Term]) -> Terms {
        let one = Monomial::one(f.first().or(g.first()).map(|t| t.mono.nvars()).unwrap_or(0));
        self.sub_mul(f, &self.field.neg(&self.field.one()), &one, g)
    }

    pub fn scale(&self, f: &[Term], c: &Elem) -> Terms {
        if c.is_zero() {
            return Vec::new();
        }
        f.iter().map(|t| Term { comp: t.comp, mono: t.mono.clone(), coeff: self.field.mul(&t.coeff, c) }).collect()
    }

    pub fn monic(&self, f: &[Term]) -> (Terms, Elem) {
        match f.first() {
            None => (Vec::new(), self.field.one()),
            Some(t) => {
                let inv = self.field.inv(&t.coeff).expect("nonzero lead");
                (self.scale(f, &inv), inv)
            }
        }
    }

    pub fn from_poly(&self, p: &Polynomial, comp: usize) -> Terms {
        let terms = p.terms().iter().map(|(m, c)| Term { comp, mono: m.clone(), coeff: c.clone() }).collect();
        if matches!(self.to, TermOrder::Top | TermOrder::Pot) {
            terms
        } else {
            self.sort(terms)
        }
    }

    pub fn from_vector(&self, v: &FreeVector) -> Terms {
        let mut terms = Vec::new();
        for (i, p) in v.entries() {
            terms.extend(p.terms().iter().map(|(m, c)| Term { comp: i, mono: m.clone(), coeff: c.clone() }));
        }
        self.sort(terms)
    }

    pub fn unit(&self, comp: usize, nvars: usize) -> Terms {
        vec![Term { comp, mono: Monomial::one(nvars), coeff: self.field.one() }]
    }
}

pub(crate) fn to_poly(ring: &Ring, f: &[Term]) -> Polynomial {
    Polynomial::from_terms(ring, f.iter().map(|t| (t.mono.clone(), t.coeff.clone())).collect())
}

pub(crate) fn to_vector(ring: &Ring, rank: usize, f: &[Term]) -> FreeVector {
    let mut buckets: Vec<Vec<(Monomial, Elem)>> = vec![Vec::new(); rank];
    for t in f {
        buckets[t.comp].push((t.mono.clone(), t.coeff.clone()));
    }
    FreeVector::from_polys(ring, buckets.into_iter().map(|b| Polynomial::from_terms(ring, b)).collect())
}
