use std::cmp::Ordering;
use std::sync::Arc;

use crate::poly::{Monomial, MonomialOrder};

/// Order on the terms `m * e_i` of a free module. Lower positions rank
/// higher wherever position decides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    /// Monomial first, then position.
    Top,
    /// Position first, then monomial.
    Pot,
    /// Induced from the leading terms of an ordered generator list.
    Schreyer(Arc<SchreyerData>),
    /// Components below `first` dominate everything else; within each group
    /// `rest` decides.
    ElimComponents { first: usize, rest: Box<TermOrder> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreyerData {
    pub leads: Vec<(usize, Monomial)>,
    pub base: TermOrder,
}

impl TermOrder {
    pub fn schreyer(leads: Vec<(usize, Monomial)>, base: TermOrder) -> TermOrder {
        TermOrder::Schreyer(Arc::new(SchreyerData { leads, base }))
    }

    pub fn cmp(&self, mo: &MonomialOrder, ca: usize, ma: &Monomial, cb: usize, mb: &Monomial) -> Ordering {
        match self {
            TermOrder::Top => mo.cmp(ma, mb).then_with(|| cb.cmp(&ca)),
            TermOrder::Pot => cb.cmp(&ca).then_with(|| mo.cmp(ma, mb)),
            TermOrder::Schreyer(data) => {
                let (la, lb) = (&data.leads[ca], &data.leads[cb]);
                data.base
                    .cmp(mo, la.0, &ma.mul(&la.1), lb.0, &mb.mul(&lb.1))
                    .then_with(|| cb.cmp(&ca))
                    .then_with(|| mo.cmp(ma, mb))
            }
            TermOrder::ElimComponents { first, rest } => {
                let (ga, gb) = (ca < *first, cb < *first);
                ga.cmp(&gb).then_with(|| rest.cmp(mo, ca, ma, cb, mb))
            }
        }
    }
}
