//! Positive roots of the A and B series in simple-root coordinates, the
//! coefficientwise root order, and antichain recognition.
//!
//! A root is stored as its full coefficient vector over the simple roots
//! `r_1, ..., r_k`, so both families share one representation and so that the
//! order test is a single coefficient subtraction. In family A every positive
//! root is a contiguous block of 1s; in family B it is either a contiguous
//! block of 1s or a prefix of 2s starting at `r_1` followed by a nonempty
//! block of 1s (the shapes `e_i - e_j`, `e_i`, `e_i + e_j`).

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// The two root-system families handled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
        }
    }
}

/// A root system identifier: family plus rank (= number of simple roots).
///
/// `A_k` has ground set `[k+1]` and `k(k+1)/2` positive roots; `B_k` acts on
/// `[±k]` and has `k²` positive roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootSystemId {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemId {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        if rank == 0 {
            return Err(RootError::ZeroRank);
        }
        Ok(RootSystemId { family, rank })
    }

    /// Number of positive roots: `k(k+1)/2` for family A, `k²` for family B.
    pub fn num_positive_roots(&self) -> usize {
        match self.family {
            Family::A => self.rank * (self.rank + 1) / 2,
            Family::B => self.rank * self.rank,
        }
    }

    /// Degree of the permutation representation: `rank + 1` for family A
    /// (the symmetric group S_{rank+1}), `rank` for family B (signed
    /// permutations of `[±rank]`).
    pub fn ground_size(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B => self.rank,
        }
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("mismatched root systems: {0} vs {1}")]
    SystemMismatch(RootSystemId, RootSystemId),
    #[error("coefficients {coeffs:?} do not form a positive root of {system}")]
    InvalidCoefficients { system: RootSystemId, coeffs: Vec<u8> },
    #[error("duplicate root {0} in antichain input")]
    DuplicateRoot(String),
    #[error("roots {0} and {1} are comparable, so the input is not an antichain")]
    NotAntichain(String, String),
    #[error("the pairwise antichain test requires two distinct roots")]
    EqualRoots,
}

/// A positive root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositiveRoot {
    system: RootSystemId,
    coeffs: Vec<u8>,
}

impl PositiveRoot {
    /// Builds a root from its coefficient vector, validating the family's
    /// coefficient pattern.
    pub fn new(system: RootSystemId, coeffs: Vec<u8>) -> Result<Self, RootError> {
        let bad = || RootError::InvalidCoefficients {
            system,
            coeffs: coeffs.clone(),
        };
        if coeffs.len() != system.rank {
            return Err(bad());
        }
        let first = match coeffs.iter().position(|&c| c != 0) {
            Some(i) => i,
            None => return Err(bad()),
        };
        let last = coeffs.iter().rposition(|&c| c != 0).unwrap();
        // No holes, coefficients in {1, 2}, and 2s (family B only) form a
        // prefix starting at r_1 followed by at least one 1.
        for i in first..=last {
            if coeffs[i] == 0 || coeffs[i] > 2 {
                return Err(bad());
            }
            if i > first && coeffs[i] > coeffs[i - 1] {
                return Err(bad());
            }
        }
        if coeffs[last] != 1 {
            return Err(bad());
        }
        if coeffs[first] == 2 && (system.family != Family::B || first != 0) {
            return Err(bad());
        }
        Ok(PositiveRoot { system, coeffs })
    }

    /// The double-free root `r_first + ... + r_last` (1-based indices).
    pub fn from_interval(
        system: RootSystemId,
        first: usize,
        last: usize,
    ) -> Result<Self, RootError> {
        let mut coeffs = vec![0u8; system.rank];
        if first == 0 || first > last || last > system.rank {
            return Err(RootError::InvalidCoefficients { system, coeffs });
        }
        for c in coeffs.iter_mut().take(last).skip(first - 1) {
            *c = 1;
        }
        PositiveRoot::new(system, coeffs)
    }

    /// The family-B root `2r_1 + ... + 2r_j + r_{j+1} + ... + r_i` with last
    /// double index `j` and last index `i`.
    pub fn with_doubles(
        system: RootSystemId,
        last_double: usize,
        last: usize,
    ) -> Result<Self, RootError> {
        let mut coeffs = vec![0u8; system.rank];
        if last_double == 0 || last_double >= last || last > system.rank {
            return Err(RootError::InvalidCoefficients { system, coeffs });
        }
        for (i, c) in coeffs.iter_mut().take(last).enumerate() {
            *c = if i < last_double { 2 } else { 1 };
        }
        PositiveRoot::new(system, coeffs)
    }

    pub fn system(&self) -> RootSystemId {
        self.system
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    /// Index of the first simple root appearing in this root (1-based).
    pub fn first_index(&self) -> usize {
        self.coeffs.iter().position(|&c| c != 0).unwrap() + 1
    }

    /// Index of the last simple root appearing in this root (1-based).
    pub fn last_index(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0).unwrap() + 1
    }

    pub fn has_doubles(&self) -> bool {
        self.coeffs.first().is_some_and(|&c| c == 2)
    }

    pub fn num_doubles(&self) -> usize {
        self.coeffs.iter().take_while(|&&c| c == 2).count()
    }

    /// Largest `j` with a `2r_j` term, when doubles are present.
    pub fn last_double_index(&self) -> Option<usize> {
        let n = self.num_doubles();
        (n > 0).then_some(n)
    }

    /// Whether simple root `i` appears (as `r_i` or `2r_i`); this is
    /// membership in the overline support.
    pub fn overline_contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.coeffs.len() && self.coeffs[i - 1] != 0
    }

    /// Whether `r_i` belongs to `D`, the set of doubled simple roots other
    /// than `r_1`.
    pub fn d_contains(&self, i: usize) -> bool {
        i >= 2 && i <= self.coeffs.len() && self.coeffs[i - 1] == 2
    }

    /// Overline support as the inclusive index interval `[first, last]`.
    pub fn overline_interval(&self) -> (usize, usize) {
        (self.first_index(), self.last_index())
    }
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sep = "";
        for (i, &c) in self.coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 => {
                    write!(f, "{sep}r{}", i + 1)?;
                    sep = "+";
                }
                _ => {
                    write!(f, "{sep}2r{}", i + 1)?;
                    sep = "+";
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RootJson {
    family: Family,
    coeffs: Vec<u8>,
}

impl Serialize for PositiveRoot {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RootJson {
            family: self.system.family,
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PositiveRoot {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RootJson::deserialize(deserializer)?;
        let system = RootSystemId::new(raw.family, raw.coeffs.len())
            .map_err(|e| D::Error::custom(e.to_string()))?;
        PositiveRoot::new(system, raw.coeffs).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Every positive root of the system, exactly once, in the canonical order:
/// lexicographic on (last index, first index, number of doubles).
pub fn positive_roots(system: RootSystemId) -> Vec<PositiveRoot> {
    let mut roots = Vec::with_capacity(system.num_positive_roots());
    for last in 1..=system.rank {
        for first in 1..=last {
            roots.push(PositiveRoot::from_interval(system, first, last).unwrap());
        }
        if system.family == Family::B {
            for j in 1..last {
                roots.push(PositiveRoot::with_doubles(system, j, last).unwrap());
            }
        }
    }
    roots.sort_by_key(|r| (r.last_index(), r.first_index(), r.num_doubles()));
    debug_assert_eq!(roots.len(), system.num_positive_roots());
    roots
}

/// Root order: `a <= b` iff `b - a` has nonnegative coefficients.
pub fn root_leq(a: &PositiveRoot, b: &PositiveRoot) -> Result<bool, RootError> {
    if a.system != b.system {
        return Err(RootError::SystemMismatch(a.system, b.system));
    }
    Ok(a.coeffs.iter().zip(&b.coeffs).all(|(&x, &y)| x <= y))
}

/// Index-based antichain test for a pair of distinct roots.
///
/// Family A: the firsts and lasts must be ordered the same strict way.
/// Family B: if neither root has doubles the family-A criterion applies; if
/// one does, its last index must be smaller and its double count larger.
pub fn antichain_pair_by_lemma(a: &PositiveRoot, b: &PositiveRoot) -> Result<bool, RootError> {
    if a.system != b.system {
        return Err(RootError::SystemMismatch(a.system, b.system));
    }
    if a == b {
        return Err(RootError::EqualRoots);
    }
    let (fa, la, da) = (a.first_index(), a.last_index(), a.num_doubles());
    let (fb, lb, db) = (b.first_index(), b.last_index(), b.num_doubles());
    let ok = match (da > 0, db > 0) {
        (false, false) => (fa < fb && la < lb) || (fb < fa && lb < la),
        (true, false) => la < lb,
        (false, true) => lb < la,
        (true, true) => (la < lb && da > db) || (lb < la && db > da),
    };
    Ok(ok)
}

/// True iff the roots are pairwise incomparable under [`root_leq`]. The empty
/// list is an antichain; duplicates are an error.
pub fn is_antichain(roots: &[PositiveRoot]) -> Result<bool, RootError> {
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            if a == b {
                return Err(RootError::DuplicateRoot(a.to_string()));
            }
            if root_leq(a, b)? || root_leq(b, a)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An antichain in the root poset, stored as a tuple with strictly
/// increasing last indices. This is the working form of a nonnesting
/// partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Antichain {
    system: RootSystemId,
    roots: Vec<PositiveRoot>,
}

impl Antichain {
    pub fn empty(system: RootSystemId) -> Self {
        Antichain {
            system,
            roots: Vec::new(),
        }
    }

    pub fn system(&self) -> RootSystemId {
        self.system
    }

    pub fn roots(&self) -> &[PositiveRoot] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PositiveRoot> {
        self.roots.iter()
    }
}

impl Serialize for Antichain {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.roots.serialize(serializer)
    }
}

/// Sorts a set of roots into canonical antichain order (strictly increasing
/// last indices), after checking that it really is an antichain.
pub fn canonicalize_antichain(
    system: RootSystemId,
    roots: &[PositiveRoot],
) -> Result<Antichain, RootError> {
    for r in roots {
        if r.system() != system {
            return Err(RootError::SystemMismatch(system, r.system()));
        }
    }
    if !is_antichain(roots)? {
        // is_antichain returned false: find the offending pair for the message.
        for (i, a) in roots.iter().enumerate() {
            for b in &roots[i + 1..] {
                if root_leq(a, b)? || root_leq(b, a)? {
                    return Err(RootError::NotAntichain(a.to_string(), b.to_string()));
                }
            }
        }
        unreachable!();
    }
    let mut sorted = roots.to_vec();
    sorted.sort_by_key(|r| r.last_index());
    debug_assert!(sorted.windows(2).all(|w| w[0].last_index() < w[1].last_index()));
    Ok(Antichain {
        system,
        roots: sorted,
    })
}
