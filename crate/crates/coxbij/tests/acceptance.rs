//! End-to-end acceptance checks: exhaustive count reproduction, bijectivity,
//! the worked golden examples, statistic preservation, agreement with the
//! local conversion map, index-criterion validation and the structural
//! invariants of the forward map. One pass line prints per criterion.

use coxbij::bijection::{
    compute_links, connected_components, f_map, g_map_with_trace, l_map, root_intersection,
};
use coxbij::enumerate::{
    catalan_count, enumerate_antichains, enumerate_nc, verify_bijection, RankBounds,
};
use coxbij::partitions::{
    antichain_to_nonnesting, permutation_to_partition, stat_triple,
};
use coxbij::roots::{
    antichain_pair_by_lemma, canonicalize_antichain, is_antichain, positive_roots, root_leq,
    Antichain, Family, PositiveRoot, RootSystemId,
};

fn sys(family: Family, rank: usize) -> RootSystemId {
    RootSystemId::new(family, rank).unwrap()
}

fn interval(system: RootSystemId, first: usize, last: usize) -> PositiveRoot {
    PositiveRoot::from_interval(system, first, last).unwrap()
}

fn doubled(system: RootSystemId, last_double: usize, last: usize) -> PositiveRoot {
    PositiveRoot::with_doubles(system, last_double, last).unwrap()
}

fn chain(system: RootSystemId, roots: &[PositiveRoot]) -> Antichain {
    canonicalize_antichain(system, roots).unwrap()
}

const A_COUNTS: [u64; 8] = [2, 5, 14, 42, 132, 429, 1430, 4862];
const B_COUNTS: [u64; 6] = [2, 6, 20, 70, 252, 924];

#[test]
fn criterion_1_count_reproduction() {
    let bounds = RankBounds::default();
    for (rank, &expected) in A_COUNTS.iter().enumerate() {
        let system = sys(Family::A, rank + 1);
        assert_eq!(catalan_count(system) as u64, expected, "{system}");
        assert_eq!(
            enumerate_antichains(system, &bounds).unwrap().len() as u64,
            expected,
            "nonnesting count for {system}"
        );
        assert_eq!(
            enumerate_nc(system, &bounds).unwrap().len() as u64,
            expected,
            "noncrossing count for {system}"
        );
    }
    for (rank, &expected) in B_COUNTS.iter().enumerate() {
        let system = sys(Family::B, rank + 1);
        assert_eq!(catalan_count(system) as u64, expected, "{system}");
        assert_eq!(
            enumerate_antichains(system, &bounds).unwrap().len() as u64,
            expected,
            "nonnesting count for {system}"
        );
        assert_eq!(
            enumerate_nc(system, &bounds).unwrap().len() as u64,
            expected,
            "noncrossing count for {system}"
        );
    }
    println!("PASS criterion 1: counts match the closed forms for A1..A8 and B1..B6");
}

#[test]
fn criterion_2_bijectivity() {
    let bounds = RankBounds::default();
    for rank in 1..=8 {
        let report = verify_bijection(sys(Family::A, rank), &bounds).unwrap();
        assert!(report.roundtrip_failures.is_empty(), "{report:?}");
        assert!(report.bijective, "{report:?}");
    }
    for rank in 1..=6 {
        let report = verify_bijection(sys(Family::B, rank), &bounds).unwrap();
        assert!(report.roundtrip_failures.is_empty(), "{report:?}");
        assert!(report.bijective, "{report:?}");
    }
    println!("PASS criterion 2: zero round-trip failures across A1..A8 and B1..B6");
}

fn a7_antichain() -> Antichain {
    let a7 = sys(Family::A, 7);
    chain(
        a7,
        &[
            interval(a7, 1, 2),
            interval(a7, 2, 3),
            interval(a7, 3, 5),
            interval(a7, 4, 6),
            interval(a7, 5, 7),
        ],
    )
}

fn b9_antichain() -> Antichain {
    let b9 = sys(Family::B, 9);
    chain(
        b9,
        &[
            doubled(b9, 4, 5),
            doubled(b9, 2, 6),
            interval(b9, 1, 7),
            interval(b9, 3, 8),
            interval(b9, 4, 9),
        ],
    )
}

fn b11_antichain() -> Antichain {
    let b11 = sys(Family::B, 11);
    chain(
        b11,
        &[
            doubled(b11, 5, 6),
            doubled(b11, 4, 7),
            doubled(b11, 3, 8),
            interval(b11, 2, 9),
            interval(b11, 5, 10),
            interval(b11, 7, 11),
        ],
    )
}

#[test]
fn criterion_3_golden_examples() {
    // Forward images, byte-exact cycle notation.
    let word = f_map(&a7_antichain());
    assert_eq!(word.product().cycle_notation(), "(1 8)(2 3 4 7)(5 6)");

    let word = f_map(&b9_antichain());
    assert_eq!(
        word.product().cycle_notation(),
        "(2,5,-9)(-2,-5,9)(6,-8)(-6,8)(7,-7)(3,4)(-3,-4)"
    );
    let layout = compute_links(&b9_antichain()).unwrap();
    assert_eq!(layout.t, vec![2, 6, 7, 8, 9]);

    let word = f_map(&b11_antichain());
    assert_eq!(
        word.product().cycle_notation(),
        "(4,5,-11)(-4,-5,11)(6,7,-10)(-6,-7,10)(8,-9)(-8,9)(1,3)(-1,-3)"
    );
    let layout = compute_links(&b11_antichain()).unwrap();
    assert_eq!(layout.t, vec![4, 6, 8, 9, 10, 11]);

    // Inverse traces, byte-exact serialization of the recovered antichains.
    let (back, trace) = g_map_with_trace(&f_map(&a7_antichain()).product()).unwrap();
    assert_eq!(trace.components.len(), 1);
    assert!(trace.components[0].t.is_empty());
    assert_eq!(trace.components[0].first_stats, vec![1, 2, 3, 4, 5]);
    assert_eq!(trace.components[0].last_stats, vec![2, 3, 5, 6, 7]);
    assert_eq!(
        serde_json::to_string(&back).unwrap(),
        concat!(
            r#"[{"family":"A","coeffs":[1,1,0,0,0,0,0]},"#,
            r#"{"family":"A","coeffs":[0,1,1,0,0,0,0]},"#,
            r#"{"family":"A","coeffs":[0,0,1,1,1,0,0]},"#,
            r#"{"family":"A","coeffs":[0,0,0,1,1,1,0]},"#,
            r#"{"family":"A","coeffs":[0,0,0,0,1,1,1]}]"#
        )
    );

    let (back, trace) = g_map_with_trace(&f_map(&b9_antichain()).product()).unwrap();
    assert_eq!(trace.components.len(), 1);
    assert_eq!(trace.components[0].t, vec![4, 2]);
    assert_eq!(trace.components[0].first_stats, vec![1, 3, 4]);
    assert_eq!(trace.components[0].last_stats, vec![5, 6, 7, 8, 9]);
    assert_eq!(
        serde_json::to_string(&back).unwrap(),
        concat!(
            r#"[{"family":"B","coeffs":[2,2,2,2,1,0,0,0,0]},"#,
            r#"{"family":"B","coeffs":[2,2,1,1,1,1,0,0,0]},"#,
            r#"{"family":"B","coeffs":[1,1,1,1,1,1,1,0,0]},"#,
            r#"{"family":"B","coeffs":[0,0,1,1,1,1,1,1,0]},"#,
            r#"{"family":"B","coeffs":[0,0,0,1,1,1,1,1,1]}]"#
        )
    );

    let back = coxbij::bijection::g_map(&f_map(&b11_antichain()).product()).unwrap();
    assert_eq!(back, b11_antichain());

    println!("PASS criterion 3: golden forward/inverse examples reproduce byte-exactly");
}

#[test]
fn criterion_4_triple_preservation() {
    let bounds = RankBounds::default();
    for (family, max) in [(Family::A, bounds.max_a), (Family::B, bounds.max_b)] {
        for rank in 1..=max {
            let system = sys(family, rank);
            for a in enumerate_antichains(system, &bounds).unwrap() {
                let nn = antichain_to_nonnesting(&a);
                let nc = permutation_to_partition(&f_map(&a).product());
                assert_eq!(
                    stat_triple(&nn),
                    stat_triple(&nc),
                    "statistics changed in {system}"
                );
            }
        }
    }
    println!("PASS criterion 4: opener/transient/closer triples preserved at every rank in bounds");
}

#[test]
fn criterion_5_lmap_theorem() {
    let bounds = RankBounds::default();
    for rank in 1..=7 {
        let system = sys(Family::A, rank);
        for a in enumerate_antichains(system, &bounds).unwrap() {
            let by_f = permutation_to_partition(&f_map(&a).product());
            let by_l = l_map(&antichain_to_nonnesting(&a)).unwrap();
            assert_eq!(by_f, by_l, "disagreement in {system}");
        }
    }
    println!("PASS criterion 5: the map agrees with the local conversion map on A1..A7");
}

#[test]
fn criterion_6_lemma_validation() {
    for (family, max) in [(Family::A, 8), (Family::B, 6)] {
        for rank in 1..=max {
            let system = sys(family, rank);
            let roots = positive_roots(system);
            for (i, a) in roots.iter().enumerate() {
                for b in &roots[i + 1..] {
                    let by_lemma = antichain_pair_by_lemma(a, b).unwrap();
                    let by_order = !root_leq(a, b).unwrap() && !root_leq(b, a).unwrap();
                    assert_eq!(by_lemma, by_order, "{system}: {a} vs {b}");
                }
            }
        }
    }
    println!("PASS criterion 6: index criteria agree with the coefficient oracle on A1..A8, B1..B6");
}

/// Re-derives the forward recursion with public operations, checking at every
/// step that intermediate tuples are antichains and that the index pool has
/// the expected parity.
fn check_structure(a: &Antichain) {
    for component in connected_components(a) {
        let roots = component.roots();
        if roots.len() < 2 {
            continue;
        }
        if roots.iter().all(|r| !r.has_doubles()) {
            let bars: Vec<PositiveRoot> = roots
                .windows(2)
                .map(|w| root_intersection(&w[0], &w[1]).unwrap())
                .collect();
            assert!(
                is_antichain(&bars).unwrap(),
                "adjacent intersections of {a:?} are not an antichain"
            );
            check_structure(&canonicalize_antichain(a.system(), &bars).unwrap());
        } else if roots.iter().any(|r| !r.has_doubles()) {
            let layout = compute_links(&component).unwrap();
            let ell = layout.gamma_split;
            let odd = roots[ell].first_index() == 1;
            assert_eq!(
                layout.t.len(),
                2 * ell + usize::from(odd),
                "index pool parity violated on {component:?}"
            );
            let thetas: Vec<PositiveRoot> = {
                let mut links = layout.u_links.clone();
                links.sort_by_key(|&(_, mp)| mp);
                links
                    .into_iter()
                    .map(|(k, mp)| root_intersection(&roots[k], &roots[mp]).unwrap())
                    .collect()
            };
            assert!(
                is_antichain(&thetas).unwrap(),
                "u-link intersections of {component:?} are not an antichain"
            );
            check_structure(&canonicalize_antichain(a.system(), &thetas).unwrap());
        }
    }
}

#[test]
fn criterion_7_structural_invariants() {
    let bounds = RankBounds::default();
    for (family, max) in [(Family::A, 8), (Family::B, 6)] {
        for rank in 1..=max {
            let system = sys(family, rank);
            for a in enumerate_antichains(system, &bounds).unwrap() {
                assert_eq!(
                    f_map(&a).len(),
                    a.len(),
                    "factor count changed on {a:?} in {system}"
                );
                check_structure(&a);
            }
        }
    }
    println!(
        "PASS criterion 7: factor counts, index-pool parity and intermediate antichains hold"
    );
}
