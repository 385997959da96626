//! Exhaustive generation of AG-groupoids up to isomorphism.
//!
//! Orderly generation: the search branches on the first unset row-major
//! cell with ascending values, propagates the left invertive law to a
//! fixpoint (forcing cells it determines), and emits a completed table
//! only if it is the lexicographic minimum of its isomorphism class.
//! Emission order is therefore ascending canonical linearization, and
//! splitting the tree at a fixed shallow branch depth gives deterministic
//! parallel runs.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::identity::{satisfies, IdentityId, PropertySet};
use crate::magma::{Element, Magma, Permutation, MAX_ORDER};

const UNSET: Element = Element::MAX;

/// Orders below this run without the long-run flag.
pub const LONG_RUN_THRESHOLD: usize = 6;

/// Branch decisions taken before the tree is split across workers.
const SPLIT_BRANCHES: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("order {0} requires the long-run flag (orders >= {LONG_RUN_THRESHOLD})")]
    OrderTooLarge(usize),
    #[error("order {0} is not supported (must be 1..={MAX_ORDER})")]
    UnsupportedOrder(usize),
}

/// A search node: the first `fill_index` row-major cells are set.
#[derive(Clone, Debug)]
pub struct PartialTable {
    order: usize,
    cells: Vec<Element>,
    fill_index: usize,
}

impl PartialTable {
    pub fn empty(order: usize) -> Self {
        PartialTable {
            order,
            cells: vec![UNSET; order * order],
            fill_index: 0,
        }
    }

    pub fn from_prefix(order: usize, prefix: &[Element]) -> Self {
        assert!(prefix.len() <= order * order);
        let mut cells = vec![UNSET; order * order];
        cells[..prefix.len()].copy_from_slice(prefix);
        PartialTable {
            order,
            cells,
            fill_index: prefix.len(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn fill_index(&self) -> usize {
        self.fill_index
    }

    pub fn cells(&self) -> &[Element] {
        &self.cells
    }

    pub fn is_complete(&self) -> bool {
        self.fill_index == self.order * self.order
    }
}

/// Check every fully instantiated instance of the left invertive law
/// `(xy)z = (zy)x` over the set cells. Returns false only on a witnessed
/// violation; never rejects a partial table that instantiates no violated
/// instance.
pub fn propagate(p: &PartialTable) -> bool {
    let n = p.order;
    let t = &p.cells;
    let get = |i: usize, j: usize| t[i * n + j];
    for x in 0..n {
        for y in 0..n {
            let xy = get(x, y);
            if xy == UNSET {
                continue;
            }
            for z in 0..n {
                let lhs = get(xy as usize, z);
                if lhs == UNSET {
                    continue;
                }
                let zy = get(z, y);
                if zy == UNSET {
                    continue;
                }
                let rhs = get(zy as usize, x);
                if rhs != UNSET && lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Backtracking state: cells plus an undo trail. Branch assignments and
/// their forced consequences share the trail, so one checkpoint restores
/// the whole propagation step.
struct Searcher {
    n: usize,
    cells: Vec<Element>,
    trail: Vec<usize>,
}

impl Searcher {
    fn new(n: usize) -> Self {
        Searcher {
            n,
            cells: vec![UNSET; n * n],
            trail: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> Element {
        self.cells[i * self.n + j]
    }

    /// Set a cell or confirm its existing value; false on conflict.
    #[inline]
    fn assign(&mut self, idx: usize, value: Element) -> bool {
        let current = self.cells[idx];
        if current != UNSET {
            return current == value;
        }
        self.cells[idx] = value;
        self.trail.push(idx);
        true
    }

    /// For one law instance `(xy)z = (zy)x` with both inner products
    /// known, unify the two outer cells: check if both set, force the
    /// unset one otherwise.
    #[inline]
    fn unify(&mut self, lhs_cell: usize, rhs_cell: usize) -> bool {
        let lv = self.cells[lhs_cell];
        let rv = self.cells[rhs_cell];
        match (lv == UNSET, rv == UNSET) {
            (false, false) => lv == rv,
            (false, true) => self.assign(rhs_cell, lv),
            (true, false) => self.assign(lhs_cell, rv),
            (true, true) => true,
        }
    }

    /// Assign `idx = value` and propagate the left invertive law to a
    /// fixpoint, forcing determined cells. Returns false on any conflict;
    /// the caller must rewind the trail either way.
    fn assign_and_propagate(&mut self, idx: usize, value: Element) -> bool {
        let mut cursor = self.trail.len();
        if !self.assign(idx, value) {
            return false;
        }
        let n = self.n;
        while cursor < self.trail.len() {
            let cell = self.trail[cursor];
            cursor += 1;
            let (a, b) = (cell / n, cell % n);
            let v = self.cells[cell] as usize;

            // as the inner lhs product t[x][y]: instances (a, b, z)
            for z in 0..n {
                let q = self.get(z, b);
                if q == UNSET {
                    continue;
                }
                if !self.unify(v * n + z, q as usize * n + a) {
                    return false;
                }
            }
            // as the inner rhs product t[z][y]: instances (x, b, a)
            for x in 0..n {
                let p = self.get(x, b);
                if p == UNSET {
                    continue;
                }
                if !self.unify(p as usize * n + a, v * n + x) {
                    return false;
                }
            }
            // as the outer lhs cell t[p][z]: p = a, z = b, over (x, y)
            // with t[x][y] = a
            for x in 0..n {
                for y in 0..n {
                    if self.get(x, y) as usize != a {
                        continue;
                    }
                    let q = self.get(b, y);
                    if q == UNSET {
                        continue;
                    }
                    if !self.unify(cell, q as usize * n + x) {
                        return false;
                    }
                }
            }
            // as the outer rhs cell t[q][x]: q = a, x = b, over (z, y)
            // with t[z][y] = a
            for z in 0..n {
                for y in 0..n {
                    if self.get(z, y) as usize != a {
                        continue;
                    }
                    let p = self.get(b, y);
                    if p == UNSET {
                        continue;
                    }
                    if !self.unify(p as usize * n + z, cell) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn rewind(&mut self, checkpoint: usize) {
        while self.trail.len() > checkpoint {
            let idx = self.trail.pop().unwrap();
            self.cells[idx] = UNSET;
        }
    }

    fn first_unset(&self) -> Option<usize> {
        self.cells.iter().position(|&v| v == UNSET)
    }
}

struct PermSet {
    // (images, inverse images) for every non-identity permutation
    perms: Vec<(Vec<Element>, Vec<Element>)>,
}

impl PermSet {
    fn new(n: usize) -> Self {
        let perms = Permutation::all(n)
            .into_iter()
            .filter(|p| *p != Permutation::identity(n))
            .map(|p| (p.images().to_vec(), p.inverse().images().to_vec()))
            .collect();
        PermSet { perms }
    }

    /// True iff no relabeling is lexicographically smaller than `cells`.
    fn is_canonical(&self, cells: &[Element], n: usize) -> bool {
        for (p, pinv) in &self.perms {
            for idx in 0..n * n {
                let i = idx / n;
                let j = idx % n;
                let relabeled = p[cells[pinv[i] as usize * n + pinv[j] as usize] as usize];
                match relabeled.cmp(&cells[idx]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }
}

/// The lexicographic minimum over all relabelings; two magmas are
/// isomorphic iff their canonical forms are equal.
pub fn canonical_form(m: &Magma) -> Magma {
    let mut best = m.clone();
    for p in Permutation::all(m.order()) {
        let candidate = m.relabel(&p).expect("size matches");
        if candidate.cells() < best.cells() {
            best = candidate;
        }
    }
    best
}

pub fn is_canonical(m: &Magma) -> bool {
    PermSet::new(m.order()).is_canonical(m.cells(), m.order())
}

/// Class filter for census rows: required and forbidden identity sets.
#[derive(Clone, Copy, Debug, Default)]
pub struct CensusFilter {
    pub required: PropertySet,
    pub forbidden: PropertySet,
}

impl CensusFilter {
    pub fn new(required: PropertySet, forbidden: PropertySet) -> Option<Self> {
        if required.is_disjoint(forbidden) {
            Some(CensusFilter { required, forbidden })
        } else {
            None
        }
    }

    pub fn all_pass() -> Self {
        CensusFilter::default()
    }

    pub fn matches(&self, m: &Magma) -> bool {
        self.required.iter().all(|id| satisfies(m, id))
            && self.forbidden.iter().all(|id| !satisfies(m, id))
    }
}

/// Search statistics for one enumeration run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumStats {
    pub order: usize,
    /// Isomorphism classes of AG-groupoids of this order.
    pub total_ag: u64,
    /// Classes passed to the sink (matched the filter).
    pub matched: u64,
    /// Search nodes generated; informative only, excluded from determinism
    /// guarantees.
    pub generated_nodes: u64,
    pub wall_time: Duration,
}

struct SubtreeResult {
    emitted: Vec<Vec<Element>>,
    nodes: u64,
}

/// Collect subtree roots: cell-array snapshots after `branches` branch
/// decisions, in DFS (hence lexicographic) order.
fn collect_roots(searcher: &mut Searcher, branches: usize, nodes: &mut u64, out: &mut Vec<Vec<Element>>) {
    let idx = match searcher.first_unset() {
        None => {
            out.push(searcher.cells.clone());
            return;
        }
        Some(idx) if branches == 0 => {
            let _ = idx;
            out.push(searcher.cells.clone());
            return;
        }
        Some(idx) => idx,
    };
    for value in 0..searcher.n as Element {
        let checkpoint = searcher.trail.len();
        *nodes += 1;
        if searcher.assign_and_propagate(idx, value) {
            collect_roots(searcher, branches - 1, nodes, out);
        }
        searcher.rewind(checkpoint);
    }
}

fn search_subtree(root: &[Element], n: usize, perms: &PermSet) -> SubtreeResult {
    let mut searcher = Searcher::new(n);
    searcher.cells.copy_from_slice(root);
    let mut result = SubtreeResult {
        emitted: Vec::new(),
        nodes: 0,
    };
    fn rec(searcher: &mut Searcher, perms: &PermSet, result: &mut SubtreeResult) {
        let idx = match searcher.first_unset() {
            None => {
                if perms.is_canonical(&searcher.cells, searcher.n) {
                    result.emitted.push(searcher.cells.clone());
                }
                return;
            }
            Some(idx) => idx,
        };
        for value in 0..searcher.n as Element {
            let checkpoint = searcher.trail.len();
            result.nodes += 1;
            if searcher.assign_and_propagate(idx, value) {
                rec(searcher, perms, result);
            }
            searcher.rewind(checkpoint);
        }
    }
    rec(&mut searcher, perms, &mut result);
    result
}

fn check_order(order: usize, allow_long_run: bool) -> Result<(), EnumError> {
    if order == 0 || order > MAX_ORDER {
        return Err(EnumError::UnsupportedOrder(order));
    }
    if order >= LONG_RUN_THRESHOLD && !allow_long_run {
        return Err(EnumError::OrderTooLarge(order));
    }
    Ok(())
}

/// Enumerate AG-groupoids of `order` up to isomorphism, calling `sink`
/// once per class matching `filter`, in ascending canonical linearization
/// order. `jobs` > 1 splits the search tree across threads; counts and the
/// emitted stream are identical for any job count.
pub fn enumerate_ag<F: FnMut(&Magma)>(
    order: usize,
    filter: &CensusFilter,
    jobs: usize,
    allow_long_run: bool,
    mut sink: F,
) -> Result<EnumStats, EnumError> {
    check_order(order, allow_long_run)?;
    let start = Instant::now();
    let n = order;
    let perms = PermSet::new(n);

    // split the tree after a fixed number of branch decisions
    let mut prefix_nodes = 0u64;
    let mut roots = Vec::new();
    let mut splitter = Searcher::new(n);
    collect_roots(&mut splitter, SPLIT_BRANCHES, &mut prefix_nodes, &mut roots);

    let results = run_subtrees(&roots, n, &perms, jobs);

    let mut total_ag = 0u64;
    let mut matched = 0u64;
    let mut generated_nodes = prefix_nodes;
    for r in &results {
        generated_nodes += r.nodes;
        for cells in &r.emitted {
            total_ag += 1;
            let m = Magma::new(n, cells.clone()).expect("search output is closed");
            debug_assert!(satisfies(&m, IdentityId::LeftInvertive));
            if filter.matches(&m) {
                matched += 1;
                sink(&m);
            }
        }
    }

    Ok(EnumStats {
        order,
        total_ag,
        matched,
        generated_nodes,
        wall_time: start.elapsed(),
    })
}

#[cfg(feature = "parallel")]
fn run_subtrees(
    prefixes: &[Vec<Element>],
    n: usize,
    perms: &PermSet,
    jobs: usize,
) -> Vec<SubtreeResult> {
    use rayon::prelude::*;
    if jobs <= 1 {
        return prefixes
            .iter()
            .map(|p| search_subtree(p, n, perms))
            .collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    // par collect preserves input order, so the merged stream is the
    // same as the sequential one
    pool.install(|| {
        prefixes
            .par_iter()
            .map(|p| search_subtree(p, n, perms))
            .collect()
    })
}

#[cfg(not(feature = "parallel"))]
fn run_subtrees(
    prefixes: &[Vec<Element>],
    n: usize,
    perms: &PermSet,
    _jobs: usize,
) -> Vec<SubtreeResult> {
    prefixes
        .iter()
        .map(|p| search_subtree(p, n, perms))
        .collect()
}

/// Per-order census: total AG classes plus the three non-associative rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub order: usize,
    pub total_ag: u64,
    pub rad_non_associative: u64,
    pub lad_non_associative: u64,
    pub ad_non_associative: u64,
    pub generated_nodes: u64,
    pub wall_time: Duration,
}

/// Run the full census for one order in a single enumeration pass.
pub fn census(order: usize, jobs: usize, allow_long_run: bool) -> Result<CensusReport, EnumError> {
    let mut rad_na = 0u64;
    let mut lad_na = 0u64;
    let mut ad_na = 0u64;
    let stats = enumerate_ag(order, &CensusFilter::all_pass(), jobs, allow_long_run, |m| {
        if satisfies(m, IdentityId::Associative) {
            return;
        }
        let rad = satisfies(m, IdentityId::Rad);
        let lad = satisfies(m, IdentityId::Lad);
        if rad {
            rad_na += 1;
        }
        if lad {
            lad_na += 1;
        }
        if rad && lad {
            ad_na += 1;
        }
    })?;
    Ok(CensusReport {
        order,
        total_ag: stats.total_ag,
        rad_non_associative: rad_na,
        lad_non_associative: lad_na,
        ad_non_associative: ad_na,
        generated_nodes: stats.generated_nodes,
        wall_time: stats.wall_time,
    })
}
