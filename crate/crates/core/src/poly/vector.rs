use std::fmt;

use super::{Polynomial, Ring};
use crate::{Error, Result};

/// Element of the free module `R^rank`, stored densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeVector {
    ring: Ring,
    comps: Vec<Polynomial>,
}

impl FreeVector {
    pub fn zero(ring: &Ring, rank: usize) -> FreeVector {
        FreeVector { ring: ring.clone(), comps: vec![Polynomial::zero(ring); rank] }
    }

    pub fn unit(ring: &Ring, rank: usize, i: usize) -> FreeVector {
        let mut v = FreeVector::zero(ring, rank);
        v.comps[i] = Polynomial::one(ring);
        v
    }

    pub fn from_polys(ring: &Ring, comps: Vec<Polynomial>) -> FreeVector {
        debug_assert!(comps.iter().all(|p| p.ring() == ring));
        FreeVector { ring: ring.clone(), comps }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<Polynomial> {
        self.comps
    }

    pub fn get(&self, i: usize) -> &Polynomial {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    /// Nonzero components as `(index, polynomial)` pairs.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.comps.iter().enumerate().filter(|(_, p)| !p.is_zero())
    }

    fn check(&self, other: &FreeVector) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        if self.rank() != other.rank() {
            return Err(Error::LengthMismatch(self.rank(), other.rank()));
        }
        Ok(())
    }

    pub fn add(&self, other: &FreeVector) -> Result<FreeVector> {
        self.check(other)?;
        Ok(FreeVector { ring: self.ring.clone(), comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &FreeVector) -> Result<FreeVector> {
        self.check(other)?;
        Ok(FreeVector { ring: self.ring.clone(), comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, f: &Polynomial) -> FreeVector {
        FreeVector { ring: self.ring.clone(), comps: self.comps.iter().map(|a| a * f).collect() }
    }

    /// Contracts against a list of module elements: `sum v_i * gens_i`.
    pub fn contract(&self, gens: &[FreeVector]) -> Result<FreeVector> {
        let rank = gens.first().map(FreeVector::rank).unwrap_or(0);
        if gens.len() != self.rank() {
            return Err(Error::LengthMismatch(gens.len(), self.rank()));
        }
        let mut acc = FreeVector::zero(&self.ring, rank);
        for (c, g) in self.comps.iter().zip(gens) {
            if !c.is_zero() {
                acc = acc.add(&g.scale(c))?;
            }
        }
        Ok(acc)
    }

    /// Contracts against polynomials: `sum v_i * gens_i`.
    pub fn dot(&self, gens: &[Polynomial]) -> Result<Polynomial> {
        if gens.len() != self.rank() {
            return Err(Error::LengthMismatch(gens.len(), self.rank()));
        }
        let mut acc = Polynomial::zero(&self.ring);
        for (c, g) in self.comps.iter().zip(gens) {
            acc = &acc + &(c * g);
        }
        Ok(acc)
    }

    pub fn transfer(&self, target: &Ring) -> Result<FreeVector> {
        Ok(FreeVector { ring: target.clone(), comps: self.comps.iter().map(|p| p.transfer(target)).collect::<Result<_>>()? })
    }
}

impl fmt::Display for FreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
