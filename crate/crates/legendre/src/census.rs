//! Exhaustive census of Legendre curves over one field: brute-force class
//! partition, the H1..H4 stratification for q = 1 (mod 4), and the
//! closed-form counts every observation is checked against.

use std::collections::{BTreeMap, BTreeSet};

use crate::curves::LegendreCurve;
use crate::error::Error;
use crate::gf::{FieldElement, FieldSpec};
use crate::iso::fast_orbit_iso;

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(size: usize) -> UnionFind {
        UnionFind {
            parent: (0..size).collect(),
            rank: vec![0; size],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.rank[ra] < self.rank[rb] {
            self.parent[ra] = rb;
        } else if self.rank[ra] > self.rank[rb] {
            self.parent[rb] = ra;
        } else {
            self.parent[rb] = ra;
            self.rank[ra] += 1;
        }
    }
}

/// The F_q-isomorphism classes of Legendre curves over one field. Classes
/// are sorted internally and ordered by their smallest member, so the whole
/// structure is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    classes: Vec<Vec<FieldElement>>,
}

impl ClassPartition {
    pub fn classes(&self) -> &[Vec<FieldElement>] {
        &self.classes
    }

    pub fn class_count(&self) -> u64 {
        self.classes.len() as u64
    }

    /// Smallest member of each class.
    pub fn representatives(&self) -> impl Iterator<Item = &FieldElement> {
        self.classes.iter().map(|c| &c[0])
    }

    pub fn class_of(&self, lambda: &FieldElement) -> Option<&[FieldElement]> {
        self.classes
            .iter()
            .find(|c| c.contains(lambda))
            .map(|c| c.as_slice())
    }
}

/// Partitions all admissible lambda into F_q-isomorphism classes.
///
/// Candidate partners of lambda are exactly its orbit (isomorphic curves
/// share j, and orbits are the j-fibers), so union-find over
/// [`fast_orbit_iso`] edges needs only O(q) isomorphism tests.
pub fn partition_classes(spec: &FieldSpec) -> ClassPartition {
    let q = spec.order();
    let mut uf = UnionFind::new(q as usize);
    for lambda in spec.elements().skip(2) {
        let curve = LegendreCurve::new(lambda.clone()).unwrap();
        for mu in curve.lambda_orbit() {
            if mu != lambda && fast_orbit_iso(&curve, &mu) {
                uf.union(lambda.index() as usize, mu.index() as usize);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<FieldElement>> = BTreeMap::new();
    for idx in 2..q {
        let root = uf.find(idx as usize);
        groups
            .entry(root)
            .or_default()
            .push(spec.element_from_index(idx).unwrap());
    }
    let mut classes: Vec<Vec<FieldElement>> = groups.into_values().collect();
    // members already ascend (inserted in index order); order classes too
    classes.sort_by_key(|c| c[0].index());
    ClassPartition { classes }
}

/// Number of classes over the algebraic closure: distinct j values among
/// all admissible lambda.
pub fn count_closure_classes(spec: &FieldSpec) -> u64 {
    let js: BTreeSet<u64> = spec
        .elements()
        .skip(2)
        .map(|lambda| LegendreCurve::new(lambda).unwrap().j_invariant().index())
        .collect();
    js.len() as u64
}

/// Closed form for the closure-class count: (q+5)/6 when q = 1, 7 (mod 12),
/// (q+1)/6 when q = 5, 11 (mod 12).
pub fn expected_closure_classes(q: u64) -> Result<u64, Error> {
    match q % 12 {
        1 | 7 => Ok(exact_div(q + 5, 6)),
        5 | 11 => Ok(exact_div(q + 1, 6)),
        _ => Err(Error::InadmissibleOrder(q)),
    }
}

/// Sign-pair stratum of an admissible lambda, for fields with q = 1 (mod 4).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stratum {
    /// lambda and 1 - lambda both squares
    H1,
    /// lambda square, 1 - lambda nonsquare
    H2,
    /// lambda nonsquare, 1 - lambda square
    H3,
    /// neither a square
    H4,
}

impl std::fmt::Display for Stratum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stratum::H1 => "H1",
            Stratum::H2 => "H2",
            Stratum::H3 => "H3",
            Stratum::H4 => "H4",
        })
    }
}

/// Classifies lambda by the signs (jacobi(lambda), jacobi(1 - lambda)).
/// Meaningful as a stratum label only when q = 1 (mod 4); callers gate.
pub fn stratum_of(lambda: &FieldElement) -> Stratum {
    debug_assert!(!lambda.is_zero() && !lambda.is_one());
    let a = lambda.jacobi();
    let b = (lambda.field().one() - lambda).jacobi();
    match (a, b) {
        (1, 1) => Stratum::H1,
        (1, -1) => Stratum::H2,
        (-1, 1) => Stratum::H3,
        (-1, -1) => Stratum::H4,
        _ => unreachable!("admissible lambda has nonzero jacobi signs"),
    }
}

/// The four disjoint lambda sets for q = 1 (mod 4), each sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HStratification {
    pub h1: Vec<FieldElement>,
    pub h2: Vec<FieldElement>,
    pub h3: Vec<FieldElement>,
    pub h4: Vec<FieldElement>,
}

impl HStratification {
    pub fn sizes(&self) -> [u64; 4] {
        [
            self.h1.len() as u64,
            self.h2.len() as u64,
            self.h3.len() as u64,
            self.h4.len() as u64,
        ]
    }

    /// Sizes demanded by the sign-pair counting argument:
    /// |H1| = (q-5)/4 and |H2| = |H3| = |H4| = (q-1)/4.
    pub fn expected_sizes(q: u64) -> [u64; 4] {
        let quarter = exact_div(q - 1, 4);
        [exact_div(q - 5, 4), quarter, quarter, quarter]
    }
}

/// Splits the admissible lambda universe into H1..H4.
pub fn h_stratify(spec: &FieldSpec) -> Result<HStratification, Error> {
    let q = spec.order();
    if q % 4 != 1 {
        return Err(Error::NotOneModFour(q));
    }
    let mut strata = HStratification {
        h1: Vec::new(),
        h2: Vec::new(),
        h3: Vec::new(),
        h4: Vec::new(),
    };
    for lambda in spec.elements().skip(2) {
        match stratum_of(&lambda) {
            Stratum::H1 => strata.h1.push(lambda),
            Stratum::H2 => strata.h2.push(lambda),
            Stratum::H3 => strata.h3.push(lambda),
            Stratum::H4 => strata.h4.push(lambda),
        }
    }
    Ok(strata)
}

fn exact_div(n: u64, d: u64) -> u64 {
    assert!(n % d == 0, "residue dispatch bug: {n} not divisible by {d}");
    n / d
}

/// Closed form for the F_q class count N_q, dispatched on q mod 24:
///
/// ```text
/// (7q+17)/24  q = 1        (7q+13)/24  q = 5
/// (q+2)/3     q = 7, 19    (q-2)/3     q = 11, 23
/// (7q+29)/24  q = 13       (7q+1)/24   q = 17
/// ```
pub fn expected_class_count(q: u64) -> Result<u64, Error> {
    match q % 24 {
        1 => Ok(exact_div(7 * q + 17, 24)),
        5 => Ok(exact_div(7 * q + 13, 24)),
        7 | 19 => Ok(exact_div(q + 2, 3)),
        11 | 23 => Ok(exact_div(q - 2, 3)),
        13 => Ok(exact_div(7 * q + 29, 24)),
        17 => Ok(exact_div(7 * q + 1, 24)),
        _ => Err(Error::InadmissibleOrder(q)),
    }
}

/// Closed forms for the class counts inside H1, H2 u H3, and H4, defined
/// for q = 1 (mod 4). Their sum is the total class count.
pub fn expected_stratum_counts(q: u64) -> Result<(u64, u64, u64), Error> {
    if q % 4 != 1 {
        return Err(Error::NotOneModFour(q));
    }
    let h1 = match q % 24 {
        1 => exact_div(q + 23, 24),
        5 => exact_div(q - 5, 24),
        13 => exact_div(q + 11, 24),
        17 => exact_div(q + 7, 24),
        _ => return Err(Error::InadmissibleOrder(q)),
    };
    let pair = match q % 24 {
        1 | 17 => exact_div(q - 1, 8),
        5 | 13 => exact_div(q + 3, 8),
        _ => unreachable!(),
    };
    Ok((h1, pair, pair))
}

/// Observed-vs-expected comparison of the stratified counts (q = 1 mod 4).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataSummary {
    pub observed_sizes: [u64; 4],
    pub expected_sizes: [u64; 4],
    /// Classes lying wholly in H1 / H2 u H3 / H4.
    pub observed_counts: (u64, u64, u64),
    pub expected_counts: (u64, u64, u64),
}

impl StrataSummary {
    pub fn all_match(&self) -> bool {
        self.observed_sizes == self.expected_sizes && self.observed_counts == self.expected_counts
    }
}

/// Per-field comparison of every observed quantity against its closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    pub q_mod_24: u64,
    pub observed_nq: u64,
    pub expected_nq: u64,
    pub observed_fqbar: u64,
    pub expected_fqbar: u64,
    /// Present exactly when q = 1 (mod 4).
    pub strata: Option<StrataSummary>,
    /// Integer encodings of the smallest member of each class.
    pub representatives: Vec<u64>,
    pub all_match: bool,
}

/// Runs the full pipeline over one field and compares every observation
/// with its formula.
pub fn run_census(spec: &FieldSpec) -> CensusReport {
    let q = spec.order();
    let partition = partition_classes(spec);
    let observed_nq = partition.class_count();
    let expected_nq = expected_class_count(q).expect("field order is admissible");
    let observed_fqbar = count_closure_classes(spec);
    let expected_fqbar = expected_closure_classes(q).expect("field order is admissible");

    let strata = (q % 4 == 1).then(|| {
        let strat = h_stratify(spec).unwrap();
        let mut counts = [0u64; 3];
        for class in partition.classes() {
            // Bucket: 0 = H1, 1 = H2 u H3, 2 = H4. A class never straddles.
            let bucket = |s: Stratum| match s {
                Stratum::H1 => 0usize,
                Stratum::H2 | Stratum::H3 => 1,
                Stratum::H4 => 2,
            };
            let first = bucket(stratum_of(&class[0]));
            for member in &class[1..] {
                assert_eq!(
                    bucket(stratum_of(member)),
                    first,
                    "class of {} straddles strata over F_{q}",
                    class[0]
                );
            }
            counts[first] += 1;
        }
        StrataSummary {
            observed_sizes: strat.sizes(),
            expected_sizes: HStratification::expected_sizes(q),
            observed_counts: (counts[0], counts[1], counts[2]),
            expected_counts: expected_stratum_counts(q).expect("q = 1 mod 4 checked"),
        }
    });

    let all_match = observed_nq == expected_nq
        && observed_fqbar == expected_fqbar
        && strata.as_ref().map_or(true, StrataSummary::all_match);

    CensusReport {
        q,
        p: spec.characteristic(),
        k: spec.extension_degree(),
        q_mod_24: q % 24,
        observed_nq,
        expected_nq,
        observed_fqbar,
        expected_fqbar,
        strata,
        representatives: partition.representatives().map(|r| r.index()).collect(),
        all_match,
    }
}
