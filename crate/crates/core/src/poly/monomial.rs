use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn var(i: usize, nvars: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Support of the monomial as variable indices.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .support()
            .map(|i| if self.0[i] == 1 { names[i].clone() } else { format!("{}^{}", names[i], self.0[i]) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Order used inside each block of a block order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockInner {
    Lex,
    GrevLex,
}

/// Monomial order on a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Earlier blocks dominate later ones; each block is compared by `inner`
    /// restricted to its variables.
    Block { blocks: Vec<Vec<usize>>, inner: BlockInner },
}

fn grevlex_on(a: &[u32], b: &[u32], idx: &mut dyn Iterator<Item = usize>, da: u32, db: u32) -> Ordering {
    if da != db {
        return da.cmp(&db);
    }
    for i in idx {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Compares exponent vectors, assuming equal lengths.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (&a.0, &b.0);
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                grevlex_on(a, b, &mut (0..a.len()).rev(), da, db)
            }
            MonomialOrder::Block { blocks, inner } => {
                for block in blocks {
                    let o = match inner {
                        BlockInner::Lex => {
                            let mut o = Ordering::Equal;
                            for &i in block {
                                if a[i] != b[i] {
                                    o = a[i].cmp(&b[i]);
                                    break;
                                }
                            }
                            o
                        }
                        BlockInner::GrevLex => {
                            let da: u32 = block.iter().map(|&i| a[i]).sum();
                            let db: u32 = block.iter().map(|&i| b[i]).sum();
                            grevlex_on(a, b, &mut block.iter().rev().copied(), da, db)
                        }
                    };
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn validate(&self, nvars: usize) -> Result<()> {
        if let MonomialOrder::Block { blocks, .. } = self {
            let mut seen = vec![false; nvars];
            for &i in blocks.iter().flatten() {
                if i >= nvars || seen[i] {
                    return Err(Error::Invalid("block order must partition the variables".into()));
                }
                seen[i] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::Invalid("block order must partition the variables".into()));
            }
        }
        Ok(())
    }

    /// Whether every monomial involving a variable of `vars` exceeds every
    /// monomial free of them.
    pub fn eliminates(&self, vars: &[usize]) -> bool {
        if vars.is_empty() {
            return true;
        }
        match self {
            MonomialOrder::Lex => {
                let mut sorted = vars.to_vec();
                sorted.sort_unstable();
                sorted.iter().enumerate().all(|(k, &v)| k == v)
            }
            MonomialOrder::GrevLex => false,
            MonomialOrder::Block { blocks, .. } => {
                let mut covered = 0;
                for block in blocks {
                    if covered == vars.len() {
                        return true;
                    }
                    if !block.iter().all(|v| vars.contains(v)) {
                        return false;
                    }
                    covered += block.len();
                }
                covered == vars.len()
            }
        }
    }
}

/// Compares two monomials, checking that their lengths agree.
pub fn order_compare(a: &Monomial, b: &Monomial, order: &MonomialOrder) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::LengthMismatch(a.nvars(), b.nvars()));
    }
    Ok(order.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn grevlex_examples() {
        assert_eq!(order_compare(&m(&[2, 1]), &m(&[1, 2]), &MonomialOrder::GrevLex).unwrap(), Ordering::Greater);
        assert_eq!(order_compare(&m(&[1, 0]), &m(&[0, 5]), &MonomialOrder::Lex).unwrap(), Ordering::Greater);
        assert_eq!(order_compare(&m(&[3, 1]), &m(&[3, 1]), &MonomialOrder::GrevLex).unwrap(), Ordering::Equal);
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(MonomialOrder::GrevLex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn length_mismatch() {
        assert_eq!(
            order_compare(&m(&[1]), &m(&[1, 0]), &MonomialOrder::Lex),
            Err(Error::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn block_elimination() {
        let o = MonomialOrder::Block { blocks: vec![vec![0], vec![1, 2]], inner: BlockInner::GrevLex };
        assert!(o.eliminates(&[0]));
        assert!(!o.eliminates(&[1]));
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert!(MonomialOrder::Lex.eliminates(&[0, 1]));
        assert!(!MonomialOrder::Lex.eliminates(&[1]));
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::Block { blocks: vec![vec![2], vec![0, 1, 3]], inner: BlockInner::GrevLex },
            MonomialOrder::Block { blocks: vec![vec![1, 3], vec![0, 2]], inner: BlockInner::Lex },
        ]
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..5, 4).prop_map(Monomial)
    }

    proptest! {
        #[test]
        fn order_axioms(a in mono(), b in mono(), c in mono()) {
            for o in orders() {
                let ab = o.cmp(&a, &b);
                prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab);
                prop_assert_ne!(o.cmp(&Monomial::one(4), &a), Ordering::Greater);
                if ab != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                    prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
                }
            }
        }
    }
}
