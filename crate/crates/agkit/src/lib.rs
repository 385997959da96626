//! Toolkit for finite AG-groupoids (groupoids satisfying the left
//! invertive law `(ab)c = (cb)a`).
//!
//! - [`magma`]: Cayley-table representation, parsing, relabeling.
//! - [`identity`]: the identity catalog, evaluator, and classifier.
//! - [`table_test`]: extended-table membership tests for LAD and RAD.
//! - [`enumerate`]: exhaustive census up to isomorphism.
//! - [`theorems`]: empirical implication checks and counterexample search.

pub mod enumerate;
pub mod identity;
pub mod magma;
pub mod theorems;

pub use enumerate::{census, canonical_form, enumerate_ag, is_canonical, CensusFilter, CensusReport};
pub use identity::{classify, is_ag_groupoid, satisfies, witness_failure, IdentityId, PropertySet};
pub use magma::{Element, Magma, Permutation};
pub use table_test::{derived_table, lad_test, rad_test, render_report, TestReport};
pub use theorems::{check_implication, find_counterexample, paper_implications};
