//! Empirical verification of implication theorems over enumerated
//! AG-groupoid classes, and counterexample search for separating examples.
//!
//! Nothing here is a proof: each implication is checked by exhausting
//! every isomorphism class up to a stated order bound.

use crate::enumerate::{enumerate_ag, CensusFilter, EnumError};
use crate::identity::{classify, IdentityId, PropertySet};
use crate::magma::Magma;

/// A universally quantified implication between identity sets, checked
/// over AG-groupoids (the antecedent implicitly includes the left
/// invertive law).
#[derive(Clone, Debug)]
pub struct Implication {
    pub name: &'static str,
    pub antecedent: PropertySet,
    pub consequent: PropertySet,
    pub source: &'static str,
    /// Set when the check depends on the imported left-nuclear-square
    /// definition rather than one stated in the source material.
    pub definition_caveat: bool,
}

/// The fixed implication suite.
pub fn paper_implications() -> Vec<Implication> {
    use IdentityId::*;
    let mk = |name, ante: &[IdentityId], cons: &[IdentityId], source, caveat| Implication {
        name,
        antecedent: PropertySet::from_ids(
            ante.iter().copied().chain(std::iter::once(LeftInvertive)),
        ),
        consequent: PropertySet::from_ids(cons.iter().copied()),
        source,
        definition_caveat: caveat,
    };
    vec![
        mk(
            "lad-implies-right-commutative",
            &[Lad],
            &[RightCommutative],
            "LAD characterization theorem (i)",
            false,
        ),
        mk(
            "lad-implies-self-dual",
            &[Lad],
            &[SelfDual],
            "LAD characterization theorem (ii)",
            false,
        ),
        mk(
            "lad-implies-ag-star-star",
            &[Lad],
            &[AgStarStar],
            "LAD characterization theorem (iii)",
            false,
        ),
        mk(
            "lad-implies-left-distributive",
            &[Lad],
            &[LeftDistributive],
            "LAD characterization theorem (iv)",
            false,
        ),
        mk(
            "lad-implies-paramedial",
            &[Lad],
            &[Paramedial],
            "LAD corollary",
            false,
        ),
        mk(
            "lad-implies-left-nuclear-square",
            &[Lad],
            &[LeftNuclearSquare],
            "LAD corollary (imported left-nuclear-square definition)",
            true,
        ),
        mk(
            "rad-implies-right-distributive",
            &[Rad],
            &[RightDistributive],
            "RAD theorem",
            false,
        ),
        mk(
            "ad-implies-semigroup",
            &[Lad, Rad],
            &[Associative],
            "AD theorem",
            false,
        ),
    ]
}

/// Outcome of exhausting one implication up to an order bound.
#[derive(Clone, Debug)]
pub struct ImplicationReport {
    pub implication: Implication,
    pub max_order: usize,
    pub classes_checked: u64,
    pub counterexample: Option<Magma>,
}

impl ImplicationReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Check one implication over every enumerated AG-groupoid class of order
/// `1..=max_order`. The counterexample, if any, is the first in (order,
/// canonical linearization) order.
pub fn check_implication(
    implication: &Implication,
    max_order: usize,
    jobs: usize,
    allow_long_run: bool,
) -> Result<ImplicationReport, EnumError> {
    let mut classes_checked = 0u64;
    let mut counterexample = None;
    for order in 1..=max_order {
        if counterexample.is_some() {
            break;
        }
        enumerate_ag(order, &CensusFilter::all_pass(), jobs, allow_long_run, |m| {
            classes_checked += 1;
            if counterexample.is_some() {
                return;
            }
            let props = classify(m);
            if props.is_superset(implication.antecedent)
                && !props.is_superset(implication.consequent)
            {
                counterexample = Some(m.clone());
            }
        })?;
    }
    Ok(ImplicationReport {
        implication: implication.clone(),
        max_order,
        classes_checked,
        counterexample,
    })
}

/// First enumerated AG-groupoid class (by order, then canonical
/// linearization) satisfying all `required` and none of the `forbidden`
/// identities; `None` if the search space up to `max_order` is exhausted.
pub fn find_counterexample(
    required: PropertySet,
    forbidden: PropertySet,
    max_order: usize,
    jobs: usize,
    allow_long_run: bool,
) -> Result<Option<Magma>, EnumError> {
    let filter = CensusFilter::new(required, forbidden).expect("disjoint sets");
    for order in 1..=max_order {
        let mut found = None;
        enumerate_ag(order, &filter, jobs, allow_long_run, |m| {
            if found.is_none() {
                found = Some(m.clone());
            }
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}
