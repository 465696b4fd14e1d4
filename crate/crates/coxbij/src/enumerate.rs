//! Exhaustive generation of nonnesting and noncrossing objects, the
//! closed-form counts, and the end-to-end verification sweep.

use crate::bijection::{f_map, g_map, l_map};
use crate::partitions::{
    antichain_to_nonnesting, canonical_permutation_of, is_canonical_nc_element, is_noncrossing,
    permutation_to_partition, stat_triple, ArcPartition, SignedPermutation,
};
use crate::roots::{positive_roots, root_leq, Antichain, Family, RootSystemId};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error(
        "rank {rank} exceeds the enumeration bound {bound} for family {family}; \
         raise COXBIJ_MAX_RANK to sweep larger systems"
    )]
    RankOverBound {
        family: Family,
        rank: usize,
        bound: usize,
    },
}

/// Enumeration bounds. Full sweeps grow Catalan-fast, so ranks are capped by
/// configuration rather than constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankBounds {
    pub max_a: usize,
    pub max_b: usize,
}

impl Default for RankBounds {
    fn default() -> Self {
        RankBounds { max_a: 9, max_b: 6 }
    }
}

impl RankBounds {
    /// Default bounds, overridable through the `COXBIJ_MAX_RANK` environment
    /// variable (which raises or lowers both families).
    pub fn from_env() -> Self {
        match std::env::var("COXBIJ_MAX_RANK")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
        {
            Some(max) => RankBounds {
                max_a: max,
                max_b: max,
            },
            None => RankBounds::default(),
        }
    }

    pub fn check(&self, system: RootSystemId) -> Result<(), EnumerateError> {
        let bound = match system.family {
            Family::A => self.max_a,
            Family::B => self.max_b,
        };
        if system.rank > bound {
            return Err(EnumerateError::RankOverBound {
                family: system.family,
                rank: system.rank,
                bound,
            });
        }
        Ok(())
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

/// The number of nonnesting (equivalently noncrossing) partitions of the
/// system: the Catalan number `C(2n,n)/(n+1)` with `n = rank + 1` for family
/// A, and the central binomial coefficient `C(2n,n)` for family B.
pub fn catalan_count(system: RootSystemId) -> u128 {
    match system.family {
        Family::A => {
            let n = (system.rank + 1) as u64;
            binomial(2 * n, n) / (n as u128 + 1)
        }
        Family::B => {
            let n = system.rank as u64;
            binomial(2 * n, n)
        }
    }
}

/// All antichains of the root poset, the empty one included, each in
/// canonical order; the sequence itself is deterministic (depth-first over
/// the canonical root order).
pub fn enumerate_antichains(
    system: RootSystemId,
    bounds: &RankBounds,
) -> Result<Vec<Antichain>, EnumerateError> {
    bounds.check(system)?;
    let roots = positive_roots(system);
    // Incomparability table over the canonical root order.
    let m = roots.len();
    let mut incomparable = vec![true; m * m];
    for i in 0..m {
        for j in 0..m {
            incomparable[i * m + j] = i != j
                && !root_leq(&roots[i], &roots[j]).unwrap()
                && !root_leq(&roots[j], &roots[i]).unwrap();
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn extend(
        next: usize,
        roots: &[crate::roots::PositiveRoot],
        incomparable: &[bool],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Antichain>,
        system: RootSystemId,
    ) {
        let picked: Vec<_> = chosen.iter().map(|&i| roots[i].clone()).collect();
        out.push(
            crate::roots::canonicalize_antichain(system, &picked)
                .expect("chosen roots are pairwise incomparable"),
        );
        let m = roots.len();
        for i in next..m {
            if chosen.iter().all(|&j| incomparable[j * m + i]) {
                chosen.push(i);
                extend(i + 1, roots, incomparable, chosen, out, system);
                chosen.pop();
            }
        }
    }
    extend(0, &roots, &incomparable, &mut chosen, &mut out, system);
    Ok(out)
}

/// All canonically oriented noncrossing elements: for family A, every
/// noncrossing partition of `[n]` as increasing cycles; for family B, every
/// negation-symmetric noncrossing partition of `[±n]`. Generation backtracks
/// over the display order, keeping only noncrossing states.
pub fn enumerate_nc(
    system: RootSystemId,
    bounds: &RankBounds,
) -> Result<Vec<SignedPermutation>, EnumerateError> {
    bounds.check(system)?;
    let labels: Vec<i64> = match system.family {
        Family::A => (1..=system.ground_size() as i64).collect(),
        Family::B => {
            let n = system.rank as i64;
            (1..=n).map(|i| -i).chain(1..=n).collect()
        }
    };
    // Open blocks form a stack; joining a block closes everything above it,
    // which is exactly the noncrossing discipline. Leaves are filtered as
    // they appear so asymmetric family-B partitions never accumulate.
    let mut open: Vec<Vec<i64>> = Vec::new();
    let mut closed: Vec<Vec<i64>> = Vec::new();
    fn recurse(
        pos: usize,
        labels: &[i64],
        open: &mut Vec<Vec<i64>>,
        closed: &mut Vec<Vec<i64>>,
        keep: &mut dyn FnMut(Vec<Vec<i64>>),
    ) {
        if pos == labels.len() {
            let mut blocks = closed.clone();
            blocks.extend(open.iter().cloned());
            keep(blocks);
            return;
        }
        let x = labels[pos];
        for depth in (0..open.len()).rev() {
            let popped: Vec<Vec<i64>> = open.drain(depth + 1..).collect();
            let closed_mark = closed.len();
            closed.extend(popped.iter().cloned());
            open[depth].push(x);
            recurse(pos + 1, labels, open, closed, keep);
            open[depth].pop();
            closed.truncate(closed_mark);
            open.extend(popped);
        }
        // ...or start a fresh block.
        open.push(vec![x]);
        recurse(pos + 1, labels, open, closed, keep);
        open.pop();
    }
    let mut result = Vec::new();
    let mut keep = |blocks: Vec<Vec<i64>>| {
        // Family B: from_blocks rejects partitions not closed under negation.
        if let Ok(partition) =
            ArcPartition::from_blocks(system.family, system.ground_size(), blocks)
        {
            debug_assert!(is_noncrossing(&partition));
            result.push(canonical_permutation_of(&partition));
        }
    };
    recurse(0, &labels, &mut open, &mut closed, &mut keep);
    Ok(result)
}

/// Outcome of the full sweep over one root system.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub system: String,
    pub nn_count: u64,
    pub nc_count: u64,
    pub expected_count: u64,
    pub bijective: bool,
    pub triples_preserved: bool,
    /// `None` for family B, where the local conversion map does not apply.
    pub lmap_agrees: Option<bool>,
    pub roundtrip_failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.bijective
            && self.triples_preserved
            && self.lmap_agrees.unwrap_or(true)
            && self.roundtrip_failures.is_empty()
            && self.nn_count == self.expected_count
            && self.nc_count == self.expected_count
    }
}

/// Runs the forward map over every antichain and the inverse over every
/// canonical noncrossing element, checking counts, injectivity, both
/// round trips, statistic preservation and (family A) agreement with the
/// local conversion map. Failures are reported, not thrown.
pub fn verify_bijection(
    system: RootSystemId,
    bounds: &RankBounds,
) -> Result<VerificationReport, EnumerateError> {
    let antichains = enumerate_antichains(system, bounds)?;
    let nc_elements = enumerate_nc(system, bounds)?;
    let expected = catalan_count(system) as u64;

    let mut failures = Vec::new();
    let mut triples_ok = true;
    let mut lmap_ok = (system.family == Family::A).then_some(true);
    let mut images: std::collections::HashSet<Vec<i64>> = Default::default();
    let nc_set: std::collections::HashSet<Vec<i64>> = nc_elements
        .iter()
        .map(|p| (1..=p.n() as i64).map(|i| p.apply(i)).collect())
        .collect();

    for a in &antichains {
        let word = f_map(a);
        if word.len() != a.len() {
            failures.push(format!("factor count changed on {}", describe(a)));
        }
        let image = word.product();
        let key: Vec<i64> = (1..=image.n() as i64).map(|i| image.apply(i)).collect();
        if !is_canonical_nc_element(&image) {
            failures.push(format!("image of {} is not canonical", describe(a)));
        }
        if !nc_set.contains(&key) {
            failures.push(format!("image of {} missing from NC sweep", describe(a)));
        }
        if !images.insert(key) {
            failures.push(format!("image of {} collides with another", describe(a)));
        }
        match g_map(&image) {
            Ok(back) if back == *a => {}
            Ok(back) => failures.push(format!(
                "inverse mismatch: {} came back as {}",
                describe(a),
                describe(&back)
            )),
            Err(e) => failures.push(format!("inverse failed on {}: {e}", describe(a))),
        }
        let nn = antichain_to_nonnesting(a);
        let nc = permutation_to_partition(&image);
        if stat_triple(&nn) != stat_triple(&nc) {
            triples_ok = false;
            failures.push(format!("statistics changed on {}", describe(a)));
        }
        if system.family == Family::A {
            match l_map(&nn) {
                Ok(converted) if converted == nc => {}
                _ => {
                    lmap_ok = Some(false);
                    failures.push(format!(
                        "local conversion disagrees with the map on {}",
                        describe(a)
                    ));
                }
            }
        }
    }

    for p in &nc_elements {
        match g_map(p) {
            Ok(a) => {
                let round = f_map(&a).product();
                if round != *p {
                    failures.push(format!(
                        "forward of inverse mismatch on {}",
                        p.cycle_notation()
                    ));
                }
            }
            Err(e) => failures.push(format!("inverse failed on {}: {e}", p.cycle_notation())),
        }
    }

    let nn_count = antichains.len() as u64;
    let nc_count = nc_elements.len() as u64;
    let bijective = failures.is_empty() && nn_count == expected && nc_count == expected;
    Ok(VerificationReport {
        system: system.to_string(),
        nn_count,
        nc_count,
        expected_count: expected,
        bijective,
        triples_preserved: triples_ok,
        lmap_agrees: lmap_ok,
        roundtrip_failures: failures,
    })
}

fn describe(a: &Antichain) -> String {
    let parts: Vec<String> = a.iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}
