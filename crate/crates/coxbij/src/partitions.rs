//! Set partitions with arc diagrams, the noncrossing/nonnesting predicates,
//! opener/closer/transient statistics, and the correspondences between
//! antichains, (signed) permutations, and partitions.

use crate::roots::{Antichain, Family, PositiveRoot, RootSystemId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("element {0} is out of range for n = {1}")]
    OutOfRange(i64, usize),
    #[error("element {0} appears more than once")]
    RepeatedElement(i64),
    #[error("images do not form a bijection")]
    NotBijective,
    #[error("a signed permutation must commute with negation")]
    NotSignEquivariant,
    #[error("a type A permutation must not change signs")]
    SignChangeInTypeA,
    #[error("blocks do not partition the ground set")]
    NotAPartition,
    #[error("type B blocks must be closed under negation")]
    NotNegationClosed,
}

/// A permutation of `[±n]` commuting with negation. Family A values are the
/// sub-case that fixes signs, i.e. a plain permutation of `[n]`.
///
/// Products compose right to left: in `p.compose(&q)`, `q` acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    family: Family,
    n: usize,
    /// img[i-1] is the image of +i; the image of -i is forced by equivariance.
    img: Vec<i64>,
}

impl SignedPermutation {
    pub fn identity(family: Family, n: usize) -> Self {
        SignedPermutation {
            family,
            n,
            img: (1..=n as i64).collect(),
        }
    }

    pub fn from_images(family: Family, n: usize, img: Vec<i64>) -> Result<Self, PartitionError> {
        if img.len() != n {
            return Err(PartitionError::NotBijective);
        }
        let mut seen = vec![false; n];
        for &v in &img {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a == 0 || a > n {
                return Err(PartitionError::OutOfRange(v, n));
            }
            if seen[a - 1] {
                return Err(PartitionError::NotBijective);
            }
            seen[a - 1] = true;
            if family == Family::A && v < 0 {
                return Err(PartitionError::SignChangeInTypeA);
            }
        }
        Ok(SignedPermutation { family, n, img })
    }

    /// Builds a permutation from explicit cycles. Every mentioned element maps
    /// to the next one in its cycle; unmentioned elements are fixed. For
    /// family B the cycle list must already be sign-complete (mirror cycles
    /// included), otherwise the equivariance check fails.
    pub fn from_cycles(
        family: Family,
        n: usize,
        cycles: &[Vec<i64>],
    ) -> Result<Self, PartitionError> {
        let idx = |v: i64| -> Result<usize, PartitionError> {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a > n || (family == Family::A && v < 0) {
                return Err(PartitionError::OutOfRange(v, n));
            }
            Ok(if v > 0 { a - 1 } else { n + a - 1 })
        };
        // Full image table over [±n]: slots 0..n for +1..+n, n..2n for -1..-n.
        let mut table: Vec<Option<i64>> = vec![None; 2 * n];
        for cycle in cycles {
            for (pos, &v) in cycle.iter().enumerate() {
                let w = cycle[(pos + 1) % cycle.len()];
                idx(w)?;
                let slot = idx(v)?;
                if table[slot].is_some() {
                    return Err(PartitionError::RepeatedElement(v));
                }
                table[slot] = Some(w);
            }
        }
        let mut img = Vec::with_capacity(n);
        for i in 1..=n as i64 {
            img.push(table[(i - 1) as usize].unwrap_or(i));
        }
        let perm = SignedPermutation::from_images(family, n, img)?;
        // Explicit negative images must agree with equivariance.
        for i in 1..=n {
            if let Some(w) = table[n + i - 1] {
                if w != -perm.img[i - 1] {
                    return Err(PartitionError::NotSignEquivariant);
                }
            }
        }
        Ok(perm)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apply(&self, x: i64) -> i64 {
        debug_assert!(x != 0 && x.unsigned_abs() as usize <= self.n);
        if x > 0 {
            self.img[(x - 1) as usize]
        } else {
            -self.img[(-x - 1) as usize]
        }
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let img = (1..=self.n as i64)
            .map(|i| self.apply(other.apply(i)))
            .collect();
        SignedPermutation {
            family: self.family,
            n: self.n,
            img,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &v)| v == i as i64 + 1)
    }

    /// Ground elements in the circular order used to orient cycles:
    /// `1..n` for family A, `1..n, -1..-n` for family B.
    fn circular_order(&self) -> Vec<i64> {
        let mut order: Vec<i64> = (1..=self.n as i64).collect();
        if self.family == Family::B {
            order.extend((1..=self.n as i64).map(|i| -i));
        }
        order
    }

    fn circular_position(&self, x: i64) -> usize {
        if x > 0 {
            (x - 1) as usize
        } else {
            self.n + (-x - 1) as usize
        }
    }

    /// All nontrivial cycles, each written from its circularly least element,
    /// sorted by that element's circular position.
    pub fn cycles(&self) -> Vec<Vec<i64>> {
        let mut seen = BTreeSet::new();
        let mut cycles = Vec::new();
        for start in self.circular_order() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut x = self.apply(start);
            while x != start {
                cycle.push(x);
                seen.insert(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// The positive cycle structure: from each mirror pair `{c, -c}` keep the
    /// cycle containing the smallest positive element of the pair; a
    /// self-mirrored cycle is kept once. Family A keeps every cycle.
    pub fn positive_cycle_structure(&self) -> Vec<Vec<i64>> {
        if self.family == Family::A {
            return self.cycles();
        }
        let mut kept: Vec<Vec<i64>> = Vec::new();
        for cycle in self.cycles() {
            let members: BTreeSet<i64> = cycle.iter().copied().collect();
            let mirror: BTreeSet<i64> = cycle.iter().map(|&x| -x).collect();
            let min_pos = members
                .union(&mirror)
                .filter(|&&x| x > 0)
                .min()
                .copied()
                .unwrap();
            if members.contains(&min_pos) {
                kept.push(cycle);
            }
        }
        kept.sort_by_key(|c| c.iter().filter(|&&x| x > 0).min().copied().unwrap());
        kept
    }

    /// Kept cycles in display order (mixed-sign cycles first, then
    /// all-positive, each group by least positive element), each followed by
    /// its mirror when the mirror is a distinct cycle.
    fn display_cycles(&self) -> Vec<Vec<i64>> {
        let kept = self.positive_cycle_structure();
        let (mixed, positive): (Vec<_>, Vec<_>) =
            kept.into_iter().partition(|c| c.iter().any(|&x| x < 0));
        let mut out = Vec::new();
        for cycle in mixed.into_iter().chain(positive) {
            let members: BTreeSet<i64> = cycle.iter().copied().collect();
            let mirror_set: BTreeSet<i64> = cycle.iter().map(|&x| -x).collect();
            let self_mirrored = self.family == Family::A || members == mirror_set;
            let start = -cycle[0];
            out.push(cycle);
            if !self_mirrored {
                let mut mirror = vec![start];
                let mut x = self.apply(start);
                while x != start {
                    mirror.push(x);
                    x = self.apply(x);
                }
                out.push(mirror);
            }
        }
        out
    }

    /// Cycle notation. Family A uses spaces inside cycles; family B uses
    /// commas and prints each kept cycle followed by its mirror. Mixed-sign
    /// cycles print before all-positive ones, each group ordered by least
    /// positive element. The identity prints as `()`.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.display_cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let sep = match self.family {
            Family::A => " ",
            Family::B => ",",
        };
        let mut out = String::new();
        for cycle in &cycles {
            out.push('(');
            for (i, v) in cycle.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                let _ = write!(out, "{v}");
            }
            out.push(')');
        }
        out
    }

    /// Orbit blocks over the full ground set, singletons included.
    pub fn orbit_blocks(&self) -> Vec<Vec<i64>> {
        let ground: Vec<i64> = match self.family {
            Family::A => (1..=self.n as i64).collect(),
            Family::B => (1..=self.n as i64)
                .flat_map(|i| [i, -i])
                .collect(),
        };
        let mut seen = BTreeSet::new();
        let mut blocks = Vec::new();
        for &start in &ground {
            if seen.contains(&start) {
                continue;
            }
            let mut block = vec![start];
            seen.insert(start);
            let mut x = self.apply(start);
            while x != start {
                block.push(x);
                seen.insert(x);
                x = self.apply(x);
            }
            blocks.push(block);
        }
        blocks
    }
}

#[derive(Serialize, Deserialize)]
struct PermJson {
    n: usize,
    cycles: Vec<Vec<i64>>,
}

impl SignedPermutation {
    /// JSON form `{"n":…,"cycles":[[…],…]}` with the cycles of
    /// [`Self::cycle_notation`] order (mirrors included for family B).
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n, "cycles": self.display_cycles() })
    }

    pub fn from_json_value(
        family: Family,
        value: &serde_json::Value,
    ) -> Result<Self, PartitionError> {
        let raw: PermJson = serde_json::from_value(value.clone())
            .map_err(|_| PartitionError::NotBijective)?;
        SignedPermutation::from_cycles(family, raw.n, &raw.cycles)
    }
}

/// A set partition of the ground set `[n]` (family A) or `[±n]` (family B,
/// closed under negation). Blocks are stored canonically: elements ascending,
/// blocks ordered by their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcPartition {
    family: Family,
    n: usize,
    blocks: Vec<Vec<i64>>,
}

impl ArcPartition {
    pub fn from_blocks(
        family: Family,
        n: usize,
        blocks: Vec<Vec<i64>>,
    ) -> Result<Self, PartitionError> {
        let ground: BTreeSet<i64> = match family {
            Family::A => (1..=n as i64).collect(),
            Family::B => (1..=n as i64).flat_map(|i| [i, -i]).collect(),
        };
        let mut seen = BTreeSet::new();
        for block in &blocks {
            if block.is_empty() {
                return Err(PartitionError::NotAPartition);
            }
            for &x in block {
                if !ground.contains(&x) {
                    return Err(PartitionError::OutOfRange(x, n));
                }
                if !seen.insert(x) {
                    return Err(PartitionError::RepeatedElement(x));
                }
            }
        }
        if seen.len() != ground.len() {
            return Err(PartitionError::NotAPartition);
        }
        let mut canon: Vec<Vec<i64>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        canon.sort_by_key(|b| b[0]);
        if family == Family::B {
            let sets: BTreeSet<Vec<i64>> = canon.iter().cloned().collect();
            for b in &canon {
                let mut neg: Vec<i64> = b.iter().map(|&x| -x).collect();
                neg.sort_unstable();
                if !sets.contains(&neg) {
                    return Err(PartitionError::NotNegationClosed);
                }
            }
        }
        Ok(ArcPartition {
            family,
            n,
            blocks: canon,
        })
    }

    pub fn singletons(family: Family, n: usize) -> Self {
        let blocks = match family {
            Family::A => (1..=n as i64).map(|i| vec![i]).collect(),
            Family::B => (1..=n as i64).flat_map(|i| [vec![i], vec![-i]]).collect(),
        };
        ArcPartition { family, n, blocks }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<i64>] {
        &self.blocks
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "type": match self.family { Family::A => "A", Family::B => "B" },
            "n": self.n,
            "blocks": self.blocks,
        })
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self, PartitionError> {
        #[derive(Deserialize)]
        struct PartitionJson {
            #[serde(rename = "type")]
            family: Family,
            n: usize,
            blocks: Vec<Vec<i64>>,
        }
        let raw: PartitionJson =
            serde_json::from_value(value.clone()).map_err(|_| PartitionError::NotAPartition)?;
        ArcPartition::from_blocks(raw.family, raw.n, raw.blocks)
    }

    /// Arcs between consecutive block members under the given ground order,
    /// as label pairs. For the nonnesting convention the self-negated block
    /// (if any) is routed through the auxiliary label 0.
    pub fn arcs(&self, convention: GroundConvention) -> Vec<(i64, i64)> {
        let mut arcs = Vec::new();
        for block in &self.blocks {
            let mut members = block.clone();
            if convention == GroundConvention::BNonnesting {
                let symmetric = block.iter().all(|&x| block.contains(&(-x)));
                if symmetric && self.family == Family::B {
                    members.push(0);
                }
            }
            members.sort_by_key(|&x| convention.position(x, self.n));
            for w in members.windows(2) {
                arcs.push((w[0], w[1]));
            }
        }
        arcs.sort_by_key(|&(a, _)| convention.position(a, self.n));
        arcs
    }

    fn default_convention(&self, noncrossing: bool) -> GroundConvention {
        match (self.family, noncrossing) {
            (Family::A, _) => GroundConvention::TypeA,
            (Family::B, true) => GroundConvention::BNoncrossing,
            (Family::B, false) => GroundConvention::BNonnesting,
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::from("{");
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push('{');
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{x}");
            }
            s.push('}');
        }
        s.push('}');
        s
    }
}

/// Linear ground orders used for drawing and for the crossing/nesting tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundConvention {
    /// `1, 2, ..., n`.
    TypeA,
    /// `-n, ..., -1, 0, 1, ..., n` (the 0 column carries symmetric-block arcs).
    BNonnesting,
    /// `-1, -2, ..., -n, 1, 2, ..., n`.
    BNoncrossing,
}

impl GroundConvention {
    pub fn position(&self, x: i64, n: usize) -> usize {
        let n = n as i64;
        let p = match self {
            GroundConvention::TypeA => x,
            GroundConvention::BNonnesting => x + n + 1,
            GroundConvention::BNoncrossing => {
                if x < 0 {
                    -x
                } else {
                    n + x
                }
            }
        };
        p as usize
    }

    pub fn labels(&self, n: usize) -> Vec<i64> {
        let n = n as i64;
        match self {
            GroundConvention::TypeA => (1..=n).collect(),
            GroundConvention::BNonnesting => (-n..=n).collect(),
            GroundConvention::BNoncrossing => (1..=n).map(|i| -i).chain(1..=n).collect(),
        }
    }
}

/// True iff no two arcs cross: there are no positions `a < b < c < d` with
/// arcs `(a, c)` and `(b, d)`.
pub fn is_noncrossing(p: &ArcPartition) -> bool {
    let convention = p.default_convention(true);
    let arcs: Vec<(usize, usize)> = p
        .arcs(convention)
        .into_iter()
        .map(|(a, b)| (convention.position(a, p.n()), convention.position(b, p.n())))
        .collect();
    for (i, &(a, c)) in arcs.iter().enumerate() {
        for &(b, d) in &arcs[i + 1..] {
            if (a < b && b < c && c < d) || (b < a && a < d && d < c) {
                return false;
            }
        }
    }
    true
}

/// True iff no arc nests strictly inside another: there are no positions
/// `a < b < c < d` with arcs `(a, d)` and `(b, c)`.
pub fn is_nonnesting(p: &ArcPartition) -> bool {
    let convention = p.default_convention(false);
    let arcs: Vec<(usize, usize)> = p
        .arcs(convention)
        .into_iter()
        .map(|(a, b)| (convention.position(a, p.n()), convention.position(b, p.n())))
        .collect();
    for (i, &(a, d)) in arcs.iter().enumerate() {
        for &(b, c) in &arcs[i + 1..] {
            if (a < b && c < d) || (b < a && d < c) {
                return false;
            }
        }
    }
    true
}

/// The opener/transient/closer statistic. Openers and closers may overlap
/// (each singleton positive block contributes to both); transients are the
/// positive labels in neither.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatTriple {
    pub openers: BTreeSet<i64>,
    pub transients: BTreeSet<i64>,
    pub closers: BTreeSet<i64>,
}

/// Family A: block minima / maxima / the rest. Family B: openers are the
/// least elements of all-positive blocks; closers are the greatest elements
/// of all-positive blocks together with the absolute values of the extremes
/// of mixed-sign blocks; transients are the remaining positive labels.
pub fn stat_triple(p: &ArcPartition) -> StatTriple {
    let mut openers = BTreeSet::new();
    let mut closers = BTreeSet::new();
    match p.family() {
        Family::A => {
            for b in p.blocks() {
                openers.insert(b[0]);
                closers.insert(*b.last().unwrap());
            }
        }
        Family::B => {
            for b in p.blocks() {
                let has_pos = b.iter().any(|&x| x > 0);
                let has_neg = b.iter().any(|&x| x < 0);
                if has_pos && !has_neg {
                    openers.insert(b[0]);
                    closers.insert(*b.last().unwrap());
                } else if has_pos && has_neg {
                    closers.insert(b[0].abs());
                    closers.insert(b.last().unwrap().abs());
                }
            }
        }
    }
    let transients = (1..=p.n() as i64)
        .filter(|x| !openers.contains(x) && !closers.contains(x))
        .collect();
    StatTriple {
        openers,
        transients,
        closers,
    }
}

/// The reflection of a positive root.
///
/// Family A sends `r_j + ... + r_{i-1}` to the transposition `(j, i)`.
/// Family B sends `e_i` to `(i, -i)`, `e_i - e_j` to `(i, j)(-i, -j)` and
/// `e_i + e_j` to `(i, -j)(-i, j)`.
pub fn root_to_permutation(root: &PositiveRoot) -> SignedPermutation {
    let system = root.system();
    let n = system.ground_size();
    let mut perm = SignedPermutation::identity(system.family, n);
    match system.family {
        Family::A => {
            let j = root.first_index() as i64;
            let i = root.last_index() as i64 + 1;
            perm.img[(j - 1) as usize] = i;
            perm.img[(i - 1) as usize] = j;
        }
        Family::B => {
            let i = root.last_index() as i64;
            if let Some(jd) = root.last_double_index() {
                let j = jd as i64;
                perm.img[(i - 1) as usize] = -j;
                perm.img[(j - 1) as usize] = -i;
            } else if root.first_index() == 1 {
                perm.img[(i - 1) as usize] = -i;
            } else {
                let j = root.first_index() as i64 - 1;
                perm.img[(i - 1) as usize] = j;
                perm.img[(j - 1) as usize] = i;
            }
        }
    }
    perm
}

/// Product of a root word, rightmost factor acting first.
pub fn product_of_roots(system: RootSystemId, roots: &[PositiveRoot]) -> SignedPermutation {
    let mut acc = SignedPermutation::identity(system.family, system.ground_size());
    for r in roots {
        acc = acc.compose(&root_to_permutation(r));
    }
    acc
}

/// The nonnesting partition of an antichain: the orbit partition of the
/// product of its reflections.
pub fn antichain_to_nonnesting(a: &Antichain) -> ArcPartition {
    let product = product_of_roots(a.system(), a.roots());
    permutation_to_partition(&product)
}

/// The partition given by a permutation's cycle structure.
pub fn permutation_to_partition(p: &SignedPermutation) -> ArcPartition {
    ArcPartition::from_blocks(p.family(), p.n(), p.orbit_blocks())
        .expect("orbits always partition the ground set")
}

/// Embeds a family-B signed permutation of `[±n]` into `S_{2n}` by
/// relabelling `i ↦ i` for positive `i` and `i ↦ n - i` for negative `i`.
/// The image commutes with `(1, n+1)(2, n+2)...(n, 2n)`.
pub fn embed_b_in_s2n(p: &SignedPermutation) -> SignedPermutation {
    assert_eq!(p.family(), Family::B, "embedding is defined for family B");
    let n = p.n() as i64;
    let relabel = |x: i64| if x > 0 { x } else { n - x };
    let unrelabel = |y: i64| if y <= n { y } else { n - y };
    let img = (1..=2 * n).map(|y| relabel(p.apply(unrelabel(y)))).collect();
    SignedPermutation::from_images(Family::A, 2 * p.n(), img).unwrap()
}

/// The canonically oriented permutation of a partition: each element maps to
/// the next member of its block along the circular order `1..n` (family A)
/// or `1..n, -1..-n` (family B).
pub fn canonical_permutation_of(p: &ArcPartition) -> SignedPermutation {
    let n = p.n();
    let probe = SignedPermutation::identity(p.family(), n);
    let mut img: Vec<i64> = (1..=n as i64).collect();
    for block in p.blocks() {
        let mut members = block.clone();
        members.sort_by_key(|&x| probe.circular_position(x));
        for (pos, &x) in members.iter().enumerate() {
            let next = members[(pos + 1) % members.len()];
            if x > 0 {
                img[(x - 1) as usize] = next;
            }
        }
    }
    SignedPermutation::from_images(p.family(), n, img)
        .expect("successor maps of sign-closed blocks are signed permutations")
}

/// True iff the permutation's cycle partition is noncrossing and every cycle
/// traverses its block in increasing position along the canonical circular
/// order.
pub fn is_canonical_nc_element(p: &SignedPermutation) -> bool {
    let partition = permutation_to_partition(p);
    if !is_noncrossing(&partition) {
        return false;
    }
    canonical_permutation_of(&partition) == *p
}
