//! Catalog of groupoid identities as term equations, plus a generic
//! universally-quantified evaluator and witness finder.
//!
//! An identity holds in a magma when its two term trees evaluate equally
//! under every assignment of elements to variables. Evaluation is
//! exhaustive assignment enumeration: with order ≤ 8 and at most 4
//! variables the cost is bounded by 4096 evaluations per identity.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::magma::{Element, Magma};

pub const VAR_NAMES: [char; 4] = ['a', 'b', 'c', 'd'];

/// A term over at most four variables: either a variable or a product.
#[derive(Clone, PartialEq, Eq)]
pub enum Term {
    Var(u8),
    Prod(Box<Term>, Box<Term>),
}

impl Term {
    pub fn eval(&self, m: &Magma, assignment: &[Element]) -> Element {
        match self {
            Term::Var(i) => assignment[*i as usize],
            Term::Prod(l, r) => m.apply(l.eval(m, assignment), r.eval(m, assignment)),
        }
    }

    fn max_var(&self) -> u8 {
        match self {
            Term::Var(i) => *i,
            Term::Prod(l, r) => l.max_var().max(r.max_var()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "{}", VAR_NAMES[*i as usize]),
            Term::Prod(l, r) => write!(f, "({}{})", l, r),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn v(i: u8) -> Term {
    Term::Var(i)
}

fn p(l: Term, r: Term) -> Term {
    Term::Prod(Box::new(l), Box::new(r))
}

/// One catalog identity: `lhs = rhs`, universally quantified over the
/// variables occurring in either side.
#[derive(Clone, Debug)]
pub struct TermEquation {
    pub lhs: Term,
    pub rhs: Term,
    /// Number of distinct variables; variable indices are `0..var_count`.
    pub var_count: u8,
}

impl TermEquation {
    fn new(lhs: Term, rhs: Term) -> Self {
        let var_count = lhs.max_var().max(rhs.max_var()) + 1;
        TermEquation { lhs, rhs, var_count }
    }

    /// Variable names in catalog order.
    pub fn variables(&self) -> &'static [char] {
        &VAR_NAMES[..self.var_count as usize]
    }
}

impl fmt::Display for TermEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Tags for every identity in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum IdentityId {
    LeftInvertive,
    Associative,
    Commutative,
    Medial,
    Paramedial,
    RightCommutative,
    SelfDual,
    LeftDistributive,
    RightDistributive,
    AgStarStar,
    Flexible,
    Lad,
    Rad,
    LeftNuclearSquare,
}

pub const ALL_IDENTITIES: [IdentityId; 14] = [
    IdentityId::LeftInvertive,
    IdentityId::Associative,
    IdentityId::Commutative,
    IdentityId::Medial,
    IdentityId::Paramedial,
    IdentityId::RightCommutative,
    IdentityId::SelfDual,
    IdentityId::LeftDistributive,
    IdentityId::RightDistributive,
    IdentityId::AgStarStar,
    IdentityId::Flexible,
    IdentityId::Lad,
    IdentityId::Rad,
    IdentityId::LeftNuclearSquare,
];

impl IdentityId {
    /// Stable kebab-case name used by the CLI and report formats.
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::LeftInvertive => "left-invertive",
            IdentityId::Associative => "associative",
            IdentityId::Commutative => "commutative",
            IdentityId::Medial => "medial",
            IdentityId::Paramedial => "paramedial",
            IdentityId::RightCommutative => "right-commutative",
            IdentityId::SelfDual => "self-dual",
            IdentityId::LeftDistributive => "left-distributive",
            IdentityId::RightDistributive => "right-distributive",
            IdentityId::AgStarStar => "ag-star-star",
            IdentityId::Flexible => "flexible",
            IdentityId::Lad => "lad",
            IdentityId::Rad => "rad",
            IdentityId::LeftNuclearSquare => "left-nuclear-square",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("unknown identity name: {0:?}")]
pub struct UnknownIdentity(pub String);

impl FromStr for IdentityId {
    type Err = UnknownIdentity;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_IDENTITIES
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| UnknownIdentity(s.to_string()))
    }
}

/// The fixed identity catalog; stable across runs.
///
/// Medial is `ab·cd = ac·bd`. Left nuclear square is `a²·(bc) = (a²b)c`,
/// an imported definition from the AG-groupoid literature.
pub fn catalog() -> &'static BTreeMap<IdentityId, TermEquation> {
    static CATALOG: OnceLock<BTreeMap<IdentityId, TermEquation>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let (a, b, c, d) = (0u8, 1u8, 2u8, 3u8);
        let mut map = BTreeMap::new();
        let mut add = |id, lhs, rhs| {
            map.insert(id, TermEquation::new(lhs, rhs));
        };
        // (ab)c = (cb)a
        add(
            IdentityId::LeftInvertive,
            p(p(v(a), v(b)), v(c)),
            p(p(v(c), v(b)), v(a)),
        );
        // (ab)c = a(bc)
        add(
            IdentityId::Associative,
            p(p(v(a), v(b)), v(c)),
            p(v(a), p(v(b), v(c))),
        );
        // ab = ba
        add(IdentityId::Commutative, p(v(a), v(b)), p(v(b), v(a)));
        // (ab)(cd) = (ac)(bd)
        add(
            IdentityId::Medial,
            p(p(v(a), v(b)), p(v(c), v(d))),
            p(p(v(a), v(c)), p(v(b), v(d))),
        );
        // (ab)(cd) = (db)(ca)
        add(
            IdentityId::Paramedial,
            p(p(v(a), v(b)), p(v(c), v(d))),
            p(p(v(d), v(b)), p(v(c), v(a))),
        );
        // a(bc) = a(cb)
        add(
            IdentityId::RightCommutative,
            p(v(a), p(v(b), v(c))),
            p(v(a), p(v(c), v(b))),
        );
        // a(bc) = c(ba)
        add(
            IdentityId::SelfDual,
            p(v(a), p(v(b), v(c))),
            p(v(c), p(v(b), v(a))),
        );
        // a(bc) = (ab)(ac)
        add(
            IdentityId::LeftDistributive,
            p(v(a), p(v(b), v(c))),
            p(p(v(a), v(b)), p(v(a), v(c))),
        );
        // (ab)c = (ac)(bc)
        add(
            IdentityId::RightDistributive,
            p(p(v(a), v(b)), v(c)),
            p(p(v(a), v(c)), p(v(b), v(c))),
        );
        // a(bc) = b(ac)
        add(
            IdentityId::AgStarStar,
            p(v(a), p(v(b), v(c))),
            p(v(b), p(v(a), v(c))),
        );
        // a(ba) = (ab)a
        add(
            IdentityId::Flexible,
            p(v(a), p(v(b), v(a))),
            p(p(v(a), v(b)), v(a)),
        );
        // a(bc) = (ab)(ca)
        add(
            IdentityId::Lad,
            p(v(a), p(v(b), v(c))),
            p(p(v(a), v(b)), p(v(c), v(a))),
        );
        // (ab)c = (ca)(bc)
        add(
            IdentityId::Rad,
            p(p(v(a), v(b)), v(c)),
            p(p(v(c), v(a)), p(v(b), v(c))),
        );
        // (aa)(bc) = ((aa)b)c
        add(
            IdentityId::LeftNuclearSquare,
            p(p(v(a), v(a)), p(v(b), v(c))),
            p(p(p(v(a), v(a)), v(b)), v(c)),
        );
        map
    })
}

/// A falsifying assignment for one identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub assignment: Vec<Element>,
    pub lhs_value: Element,
    pub rhs_value: Element,
}

impl Witness {
    /// Re-check this witness against a magma and equation via `apply`.
    pub fn falsifies(&self, m: &Magma, eq: &TermEquation) -> bool {
        let lhs = eq.lhs.eval(m, &self.assignment);
        let rhs = eq.rhs.eval(m, &self.assignment);
        lhs == self.lhs_value && rhs == self.rhs_value && lhs != rhs
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binds: Vec<String> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(i, e)| format!("{}={}", VAR_NAMES[i], e))
            .collect();
        write!(
            f,
            "{} -> lhs={} rhs={}",
            binds.join(" "),
            self.lhs_value,
            self.rhs_value
        )
    }
}

/// Iterate all assignments in lexicographic order of the variable list
/// (first variable most significant), calling `f` until it returns `Some`.
fn scan_assignments<T>(
    n: usize,
    k: usize,
    mut f: impl FnMut(&[Element]) -> Option<T>,
) -> Option<T> {
    let mut assignment = vec![0 as Element; k];
    loop {
        if let Some(t) = f(&assignment) {
            return Some(t);
        }
        // odometer increment, rightmost variable fastest
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            assignment[i] += 1;
            if (assignment[i] as usize) < n {
                break;
            }
            assignment[i] = 0;
        }
    }
}

/// Does `m` satisfy the catalog identity `id` under every assignment?
pub fn satisfies(m: &Magma, id: IdentityId) -> bool {
    witness_failure(m, id).is_none()
}

/// The lexicographically first falsifying assignment, if any.
pub fn witness_failure(m: &Magma, id: IdentityId) -> Option<Witness> {
    let eq = &catalog()[&id];
    scan_assignments(m.order(), eq.var_count as usize, |assignment| {
        let lhs = eq.lhs.eval(m, assignment);
        let rhs = eq.rhs.eval(m, assignment);
        if lhs != rhs {
            Some(Witness {
                assignment: assignment.to_vec(),
                lhs_value: lhs,
                rhs_value: rhs,
            })
        } else {
            None
        }
    })
}

/// Shorthand for the left invertive law.
pub fn is_ag_groupoid(m: &Magma) -> bool {
    satisfies(m, IdentityId::LeftInvertive)
}

/// The set of catalog identities a magma satisfies. Backed by a bitmask
/// over `IdentityId` discriminants.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PropertySet(u16);

impl PropertySet {
    pub const EMPTY: PropertySet = PropertySet(0);

    pub fn from_ids<I: IntoIterator<Item = IdentityId>>(ids: I) -> Self {
        let mut s = PropertySet(0);
        for id in ids {
            s.insert(id);
        }
        s
    }

    pub fn insert(&mut self, id: IdentityId) {
        self.0 |= 1 << id as u8;
    }

    pub fn contains(self, id: IdentityId) -> bool {
        self.0 & (1 << id as u8) != 0
    }

    pub fn is_superset(self, other: PropertySet) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn is_disjoint(self, other: PropertySet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = IdentityId> {
        ALL_IDENTITIES.into_iter().filter(move |&id| self.contains(id))
    }
}

impl FromIterator<IdentityId> for PropertySet {
    fn from_iter<I: IntoIterator<Item = IdentityId>>(iter: I) -> Self {
        PropertySet::from_ids(iter)
    }
}

impl fmt::Debug for PropertySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|id| id.name())).finish()
    }
}

/// Classify a magma against the whole catalog.
pub fn classify(m: &Magma) -> PropertySet {
    ALL_IDENTITIES
        .into_iter()
        .filter(|&id| satisfies(m, id))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::Magma;

    fn lad_example() -> Magma {
        Magma::from_rows(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 2]])
            .unwrap()
    }

    fn ld_example() -> Magma {
        Magma::from_rows(&[&[0, 2, 3, 1], &[3, 1, 0, 2], &[1, 3, 2, 0], &[2, 0, 1, 3]])
            .unwrap()
    }

    fn rad_example() -> Magma {
        Magma::from_rows(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]).unwrap()
    }

    #[test]
    fn catalog_shapes() {
        let cat = catalog();
        assert_eq!(cat.len(), ALL_IDENTITIES.len());
        assert_eq!(
            cat[&IdentityId::LeftInvertive].to_string(),
            "((ab)c) = ((cb)a)"
        );
        assert_eq!(cat[&IdentityId::Lad].to_string(), "(a(bc)) = ((ab)(ca))");
        assert_eq!(cat[&IdentityId::Rad].to_string(), "((ab)c) = ((ca)(bc))");
        assert_eq!(cat[&IdentityId::LeftInvertive].var_count, 3);
        assert_eq!(cat[&IdentityId::Medial].var_count, 4);
    }

    #[test]
    fn identity_names_round_trip() {
        for id in ALL_IDENTITIES {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert!("nonsense".parse::<IdentityId>().is_err());
    }

    #[test]
    fn lad_example_satisfies_lad_and_left_invertive() {
        let m = lad_example();
        assert!(satisfies(&m, IdentityId::Lad));
        assert!(satisfies(&m, IdentityId::LeftInvertive));
        assert!(is_ag_groupoid(&m));
    }

    #[test]
    fn lad_example_not_associative() {
        // (3·3)·3 = 2·3 = 1 but 3·(3·3) = 3·2 = 0
        let m = lad_example();
        assert_eq!(m.apply(m.apply(3, 3), 3), 1);
        assert_eq!(m.apply(3, m.apply(3, 3)), 0);
        assert!(!satisfies(&m, IdentityId::Associative));
    }

    #[test]
    fn ld_example_is_ld_not_lad() {
        let m = ld_example();
        assert!(satisfies(&m, IdentityId::LeftDistributive));
        assert!(!satisfies(&m, IdentityId::Lad));
        assert!(satisfies(&m, IdentityId::LeftInvertive));
    }

    #[test]
    fn constant_magma_satisfies_everything() {
        let m = Magma::new(4, vec![0; 16]).unwrap();
        for id in ALL_IDENTITIES {
            assert!(satisfies(&m, id), "constant magma should satisfy {id}");
            assert_eq!(witness_failure(&m, id), None);
        }
    }

    #[test]
    fn witness_for_lad_failure_re_checks() {
        let m = ld_example();
        let w = witness_failure(&m, IdentityId::Lad).expect("must fail LAD");
        assert!(w.falsifies(&m, &catalog()[&IdentityId::Lad]));
        assert_ne!(w.lhs_value, w.rhs_value);
    }

    #[test]
    fn witness_paper_assignment_also_falsifies() {
        // the known falsifying assignment a=0, b=1, c=3 (0-based):
        // 0·(1·3) vs (0·1)·(3·0)
        let m = ld_example();
        let eq = &catalog()[&IdentityId::Lad];
        let w = Witness {
            assignment: vec![0, 1, 3],
            lhs_value: eq.lhs.eval(&m, &[0, 1, 3]),
            rhs_value: eq.rhs.eval(&m, &[0, 1, 3]),
        };
        assert!(w.falsifies(&m, eq));
    }

    #[test]
    fn witness_is_lexicographically_first() {
        let m = ld_example();
        let eq = &catalog()[&IdentityId::Lad];
        let w = witness_failure(&m, IdentityId::Lad).unwrap();
        // no earlier assignment falsifies
        let n = m.order();
        let mut earlier_ok = true;
        'outer: for a in 0..n as Element {
            for b in 0..n as Element {
                for c in 0..n as Element {
                    let asg = [a, b, c];
                    if asg.as_slice() == w.assignment.as_slice() {
                        break 'outer;
                    }
                    if eq.lhs.eval(&m, &asg) != eq.rhs.eval(&m, &asg) {
                        earlier_ok = false;
                        break 'outer;
                    }
                }
            }
        }
        assert!(earlier_ok);
    }

    #[test]
    fn classify_rad_example() {
        let props = classify(&rad_example());
        assert!(props.contains(IdentityId::LeftInvertive));
        assert!(props.contains(IdentityId::Rad));
        assert!(props.contains(IdentityId::RightDistributive));
        assert!(props.contains(IdentityId::Medial));
        assert!(!props.contains(IdentityId::Associative));
    }

    #[test]
    fn classify_order_one_full_catalog() {
        let props = classify(&Magma::parse("1\n0\n").unwrap());
        for id in ALL_IDENTITIES {
            assert!(props.contains(id));
        }
    }

    #[test]
    fn classify_ld_example() {
        let props = classify(&ld_example());
        assert!(props.contains(IdentityId::LeftInvertive));
        assert!(props.contains(IdentityId::LeftDistributive));
        assert!(!props.contains(IdentityId::Lad));
    }

    #[test]
    fn ag_check_order_two_latin() {
        // [[1,0],[0,1]]: brute-force all 8 triples
        let m = Magma::from_rows(&[&[1, 0], &[0, 1]]).unwrap();
        let mut expect = true;
        for a in 0..2u8 {
            for b in 0..2u8 {
                for c in 0..2u8 {
                    let lhs = m.apply(m.apply(a, b), c);
                    let rhs = m.apply(m.apply(c, b), a);
                    expect &= lhs == rhs;
                }
            }
        }
        assert_eq!(is_ag_groupoid(&m), expect);
    }

    // independent specialized oracle loops for every identity, order <= 3
    fn oracle_satisfies(m: &Magma, id: IdentityId) -> bool {
        let n = m.order() as Element;
        let f = |x: Element, y: Element| m.apply(x, y);
        let mut ok = true;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    ok &= match id {
                        IdentityId::LeftInvertive => f(f(a, b), c) == f(f(c, b), a),
                        IdentityId::Associative => f(f(a, b), c) == f(a, f(b, c)),
                        IdentityId::Commutative => f(a, b) == f(b, a),
                        IdentityId::RightCommutative => f(a, f(b, c)) == f(a, f(c, b)),
                        IdentityId::SelfDual => f(a, f(b, c)) == f(c, f(b, a)),
                        IdentityId::LeftDistributive => f(a, f(b, c)) == f(f(a, b), f(a, c)),
                        IdentityId::RightDistributive => f(f(a, b), c) == f(f(a, c), f(b, c)),
                        IdentityId::AgStarStar => f(a, f(b, c)) == f(b, f(a, c)),
                        IdentityId::Flexible => f(a, f(b, a)) == f(f(a, b), a),
                        IdentityId::Lad => f(a, f(b, c)) == f(f(a, b), f(c, a)),
                        IdentityId::Rad => f(f(a, b), c) == f(f(c, a), f(b, c)),
                        IdentityId::LeftNuclearSquare => {
                            f(f(a, a), f(b, c)) == f(f(f(a, a), b), c)
                        }
                        IdentityId::Medial | IdentityId::Paramedial => {
                            let mut ok4 = true;
                            for d in 0..n {
                                ok4 &= if id == IdentityId::Medial {
                                    f(f(a, b), f(c, d)) == f(f(a, c), f(b, d))
                                } else {
                                    f(f(a, b), f(c, d)) == f(f(d, b), f(c, a))
                                };
                            }
                            ok4
                        }
                    };
                }
            }
        }
        ok
    }

    #[test]
    fn evaluator_agrees_with_specialized_oracle_small_orders() {
        // every magma of order <= 3, every catalog identity
        for n in 1..=3usize {
            let cells = n * n;
            let total = (n as u64).pow(cells as u32);
            for code in 0..total {
                let mut t = Vec::with_capacity(cells);
                let mut c = code;
                for _ in 0..cells {
                    t.push((c % n as u64) as Element);
                    c /= n as u64;
                }
                let m = Magma::new(n, t).unwrap();
                for id in ALL_IDENTITIES {
                    assert_eq!(
                        satisfies(&m, id),
                        oracle_satisfies(&m, id),
                        "order {n} table {code} identity {id}"
                    );
                }
            }
        }
    }

    #[test]
    fn classify_invariant_under_relabel() {
        use crate::magma::Permutation;
        let samples = [lad_example(), ld_example()];
        for m in &samples {
            let base = classify(m);
            for p in Permutation::all(m.order()) {
                assert_eq!(classify(&m.relabel(&p).unwrap()), base);
            }
        }
    }
}
