//! Cross-module invariants: closure of the antichain-to-diagram
//! correspondence, order independence of orbit partitions, the canonical
//! orientation characterization, and an empirical confluence report for the
//! local conversion map.

use coxbij::bijection::l_map;
use coxbij::enumerate::{enumerate_antichains, RankBounds};
use coxbij::partitions::{
    antichain_to_nonnesting, canonical_permutation_of, is_canonical_nc_element, is_noncrossing,
    is_nonnesting, permutation_to_partition, product_of_roots, stat_triple, ArcPartition,
    GroundConvention,
};
use coxbij::roots::{Family, PositiveRoot, RootSystemId};

fn sys(family: Family, rank: usize) -> RootSystemId {
    RootSystemId::new(family, rank).unwrap()
}

#[test]
fn nonnesting_closure_of_the_correspondence() {
    let bounds = RankBounds::default();
    for system in [sys(Family::A, 6), sys(Family::B, 4)] {
        for a in enumerate_antichains(system, &bounds).unwrap() {
            assert!(
                is_nonnesting(&antichain_to_nonnesting(&a)),
                "nesting diagram from {a:?}"
            );
        }
    }
}

#[test]
fn orbit_partition_is_independent_of_factor_order() {
    let bounds = RankBounds::default();
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for system in [sys(Family::A, 5), sys(Family::B, 4)] {
        for a in enumerate_antichains(system, &bounds).unwrap() {
            let baseline = permutation_to_partition(&product_of_roots(system, a.roots()));
            let mut shuffled: Vec<PositiveRoot> = a.roots().to_vec();
            for i in (1..shuffled.len()).rev() {
                let j = (next() % (i as u64 + 1)) as usize;
                shuffled.swap(i, j);
            }
            let reordered = permutation_to_partition(&product_of_roots(system, &shuffled));
            assert_eq!(baseline, reordered, "orbit partition changed for {a:?}");
        }
    }
}

/// Every set partition of `[n]` as a vector of blocks, via restricted growth
/// strings.
fn all_set_partitions(n: usize) -> Vec<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn extend(rgs: &mut Vec<usize>, pos: usize, max: usize, n: usize, out: &mut Vec<Vec<Vec<i64>>>) {
        if pos == n {
            let blocks_count = max + 1;
            let mut blocks = vec![Vec::new(); blocks_count];
            for (i, &b) in rgs.iter().enumerate() {
                blocks[b].push(i as i64 + 1);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max + 1 {
            rgs[pos] = b;
            extend(rgs, pos + 1, max.max(b), n, out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    rgs[0] = 0;
    extend(&mut rgs, 1, 0, n, &mut out);
    out
}

#[test]
fn canonical_orientation_characterizes_noncrossing() {
    // Exhaustive over all partitions of [n]: the canonically oriented
    // permutation is accepted exactly when the partition is noncrossing,
    // and its cycle structure recovers the partition.
    for n in 1..=8 {
        for blocks in all_set_partitions(n) {
            let p = ArcPartition::from_blocks(Family::A, n, blocks).unwrap();
            let perm = canonical_permutation_of(&p);
            assert_eq!(permutation_to_partition(&perm), p);
            assert_eq!(is_canonical_nc_element(&perm), is_noncrossing(&p), "{p:?}");
        }
    }
}

#[test]
fn canonical_antichains_have_decreasing_double_counts() {
    let bounds = RankBounds::default();
    for rank in 1..=5 {
        for a in enumerate_antichains(sys(Family::B, rank), &bounds).unwrap() {
            let doubles: Vec<usize> = a
                .iter()
                .filter(|r| r.has_doubles())
                .map(|r| r.num_doubles())
                .collect();
            assert!(
                doubles.windows(2).all(|w| w[0] > w[1]),
                "double counts not strictly decreasing in {a:?}"
            );
        }
    }
}

/// Resolves crossings in an arbitrary (seeded) order instead of the
/// left-to-right discipline.
fn l_map_random_order(p: &ArcPartition, seed: u64) -> ArcPartition {
    let mut arcs: Vec<(i64, i64)> = p.arcs(GroundConvention::TypeA);
    arcs.sort_unstable();
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    loop {
        let crossings: Vec<(usize, usize)> = (0..arcs.len())
            .flat_map(|i| (i + 1..arcs.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let (a, c) = arcs[i];
                let (b, d) = arcs[j];
                (a < b && b < c && c < d) || (b < a && a < d && d < c)
            })
            .collect();
        if crossings.is_empty() {
            break;
        }
        let (i, j) = crossings[(next() % crossings.len() as u64) as usize];
        let (a, c) = arcs[i];
        let (b, d) = arcs[j];
        let (hi, lo) = (c.max(d), c.min(d));
        if a < b {
            arcs[i] = (a, hi);
            arcs[j] = (b, lo);
        } else {
            arcs[j] = (b, hi);
            arcs[i] = (a, lo);
        }
    }
    let n = p.n();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for &(a, b) in &arcs {
        let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, Vec<i64>> = Default::default();
    for x in 1..=n {
        let root = find(&mut parent, x);
        blocks.entry(root).or_default().push(x as i64);
    }
    ArcPartition::from_blocks(Family::A, n, blocks.into_values().collect()).unwrap()
}

#[test]
fn lmap_confluence_report() {
    // The conversion map is pinned to a left-to-right discipline; this test
    // measures, without assuming, whether arbitrary resolution orders land on
    // the same partition. Outputs must always be valid noncrossing diagrams
    // with the statistic preserved.
    let bounds = RankBounds::default();
    let mut agreements = 0usize;
    let mut disagreements = 0usize;
    for rank in 1..=5 {
        let system = sys(Family::A, rank);
        for a in enumerate_antichains(system, &bounds).unwrap() {
            let diagram = antichain_to_nonnesting(&a);
            let canonical = l_map(&diagram).unwrap();
            for seed in [1u64, 7, 42] {
                let alternative = l_map_random_order(&diagram, seed);
                assert!(is_noncrossing(&alternative));
                assert_eq!(stat_triple(&alternative), stat_triple(&diagram));
                if alternative == canonical {
                    agreements += 1;
                } else {
                    disagreements += 1;
                }
            }
        }
    }
    println!(
        "confluence report (families A1..A5, 3 seeds): {agreements} agreements, \
         {disagreements} disagreements"
    );
}
