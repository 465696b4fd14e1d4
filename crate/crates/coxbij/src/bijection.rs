//! The forward map from nonnesting to noncrossing partitions, the link
//! machinery behind its doubled-root case, the inverse map, and the classical
//! crossing-to-nesting conversion it generalizes.
//!
//! Antichains are handled in canonical order (strictly increasing last
//! indices). Factor words multiply right to left: the rightmost reflection
//! acts first.

use crate::partitions::{
    is_canonical_nc_element, product_of_roots, ArcPartition, SignedPermutation,
};
use crate::roots::{
    canonicalize_antichain, Antichain, Family, PositiveRoot, RootError, RootSystemId,
};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BijectionError {
    #[error("{0}")]
    Root(#[from] RootError),
    #[error("union and intersection require a double-free second root, got {0}")]
    SecondRootHasDoubles(String),
    #[error("supports of {0} and {1} do not intersect")]
    DisjointSupports(String, String),
    #[error("d-intersection requires double roots in the first argument, got {0}")]
    FirstRootHasNoDoubles(String),
    #[error("d-intersection of {0} and {1} is empty")]
    EmptyDIntersection(String, String),
    #[error("link construction needs at least one doubled and one double-free root")]
    LinksNotApplicable,
    #[error("the permutation is not a canonically oriented noncrossing element")]
    NotCanonicalNc,
    #[error("the local conversion map is defined for family A only")]
    NotTypeA,
    #[error("inverse construction invariant failed: {0}")]
    InverseInvariant(String),
}

fn check_plain_pair(a: &PositiveRoot, b: &PositiveRoot) -> Result<(), BijectionError> {
    if a.system() != b.system() {
        return Err(RootError::SystemMismatch(a.system(), b.system()).into());
    }
    if b.has_doubles() {
        return Err(BijectionError::SecondRootHasDoubles(b.to_string()));
    }
    let (fa, la) = a.overline_interval();
    let (fb, lb) = b.overline_interval();
    if lb < fa || la < fb {
        return Err(BijectionError::DisjointSupports(a.to_string(), b.to_string()));
    }
    Ok(())
}

/// Union of two roots: the support of `a` together with the part of `b`'s
/// support outside the overline support of `a`. `b` must be double-free and
/// the supports must intersect.
pub fn root_union(a: &PositiveRoot, b: &PositiveRoot) -> Result<PositiveRoot, BijectionError> {
    check_plain_pair(a, b)?;
    let coeffs = a
        .coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(&x, &y)| if x > 0 { x } else { y })
        .collect();
    Ok(PositiveRoot::new(a.system(), coeffs)?)
}

/// Intersection: the overline support of `a` restricted to the support of
/// `b`. Always a double-free root.
pub fn root_intersection(
    a: &PositiveRoot,
    b: &PositiveRoot,
) -> Result<PositiveRoot, BijectionError> {
    check_plain_pair(a, b)?;
    let coeffs = a
        .coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(&x, &y)| u8::from(x > 0 && y > 0))
        .collect();
    Ok(PositiveRoot::new(a.system(), coeffs)?)
}

/// d-intersection: the doubled simple roots of `a` other than `r_1` that lie
/// in the support of `b`.
pub fn root_d_intersection(
    a: &PositiveRoot,
    b: &PositiveRoot,
) -> Result<PositiveRoot, BijectionError> {
    if a.system() != b.system() {
        return Err(RootError::SystemMismatch(a.system(), b.system()).into());
    }
    if b.has_doubles() {
        return Err(BijectionError::SecondRootHasDoubles(b.to_string()));
    }
    if !a.has_doubles() {
        return Err(BijectionError::FirstRootHasNoDoubles(a.to_string()));
    }
    let coeffs: Vec<u8> = (1..=a.system().rank)
        .map(|i| u8::from(a.d_contains(i) && b.overline_contains(i)))
        .collect();
    if coeffs.iter().all(|&c| c == 0) {
        return Err(BijectionError::EmptyDIntersection(a.to_string(), b.to_string()));
    }
    Ok(PositiveRoot::new(a.system(), coeffs)?)
}

fn supports_touch(a: &PositiveRoot, b: &PositiveRoot) -> bool {
    let (fa, la) = a.overline_interval();
    let (fb, lb) = b.overline_interval();
    fa <= lb && fb <= la
}

/// Maximal runs of the antichain in which adjacent roots have intersecting
/// supports. Distinct components have disjoint support intervals.
pub fn connected_components(a: &Antichain) -> Vec<Antichain> {
    let mut components = Vec::new();
    let roots = a.roots();
    let mut start = 0;
    for i in 1..=roots.len() {
        if i == roots.len() || !supports_touch(&roots[i - 1], &roots[i]) {
            components.push(
                canonicalize_antichain(a.system(), &roots[start..i])
                    .expect("a contiguous slice of an antichain is an antichain"),
            );
            start = i;
        }
    }
    components
}

/// The link structure computed for an antichain that mixes doubled and
/// double-free roots. Index pairs refer to positions in the antichain tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkLayout {
    /// Lower links `(k, m')`: `k` indexes a doubled root, `m'` a double-free
    /// root whose first index is doubled in root `k`.
    pub l_links: Vec<(usize, usize)>,
    /// Upper links `(k, m')`: `k` is the leftmost root carrying the first
    /// index of the admissible root `m'`.
    pub u_links: Vec<(usize, usize)>,
    /// Last double indices of unlinked doubled roots together with last
    /// indices of roots not u-linked to the right, strictly increasing.
    pub t: Vec<usize>,
    /// Number of doubled roots: positions `0..gamma_split` are the doubled
    /// prefix, the rest are double-free.
    pub gamma_split: usize,
}

/// Runs the l-link and u-link procedures on an antichain whose doubled roots
/// form a proper nonempty prefix.
pub fn compute_links(a: &Antichain) -> Result<LinkLayout, BijectionError> {
    compute_links_on(a.roots())
}

fn compute_links_on(roots: &[PositiveRoot]) -> Result<LinkLayout, BijectionError> {
    let m = roots.len();
    let ell = roots.iter().take_while(|r| r.has_doubles()).count();
    if ell == 0 || ell == m || roots[ell..].iter().any(|r| r.has_doubles()) {
        return Err(BijectionError::LinksNotApplicable);
    }

    // l-links: repeatedly take the largest-index double-free root whose first
    // index appears doubled in some remaining doubled root, and link it to
    // the rightmost such doubled root.
    let mut d_avail = vec![true; ell];
    let mut g_avail = vec![true; m];
    let mut l_links = Vec::new();
    loop {
        let mut found = None;
        for mp in (ell..m).rev() {
            if !g_avail[mp] || roots[mp].first_index() == 1 {
                continue;
            }
            let i = roots[mp].first_index();
            if let Some(k) = (0..ell).rev().find(|&k| d_avail[k] && roots[k].coeffs()[i - 1] == 2)
            {
                found = Some((k, mp));
                break;
            }
        }
        match found {
            Some((k, mp)) => {
                l_links.push((k, mp));
                d_avail[k] = false;
                g_avail[mp] = false;
            }
            None => break,
        }
    }

    // u-links: admissible roots are double-free, have first index != 1 and
    // are not l-linked. Take the smallest admissible index and link it to the
    // leftmost earlier root whose support carries its first index and which
    // is not yet u-linked to the right.
    let mut admissible: Vec<bool> = (0..m)
        .map(|i| i >= ell && g_avail[i] && roots[i].first_index() != 1)
        .collect();
    let mut ulinked_right = vec![false; m];
    let mut u_links = Vec::new();
    loop {
        let mut found = None;
        'outer: for mp in ell..m {
            if !admissible[mp] {
                continue;
            }
            let i = roots[mp].first_index();
            for k in 0..mp {
                if !ulinked_right[k] && roots[k].overline_contains(i) {
                    found = Some((k, mp));
                    break 'outer;
                }
            }
        }
        match found {
            Some((k, mp)) => {
                u_links.push((k, mp));
                ulinked_right[k] = true;
                admissible[mp] = false;
            }
            None => break,
        }
    }

    let mut t = Vec::new();
    for (k, root) in roots.iter().enumerate().take(ell) {
        if d_avail[k] {
            t.push(root.last_double_index().unwrap());
        }
    }
    for (k, root) in roots.iter().enumerate() {
        if !ulinked_right[k] {
            t.push(root.last_index());
        }
    }
    t.sort_unstable();
    debug_assert!(t.windows(2).all(|w| w[0] < w[1]), "T entries collide: {t:?}");

    Ok(LinkLayout {
        l_links,
        u_links,
        t,
        gamma_split: ell,
    })
}

/// A factorization of a canonical noncrossing element into reflections,
/// multiplied right to left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcWord {
    system: RootSystemId,
    factors: Vec<PositiveRoot>,
}

impl NcWord {
    pub fn system(&self) -> RootSystemId {
        self.system
    }

    pub fn factors(&self) -> &[PositiveRoot] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> SignedPermutation {
        product_of_roots(self.system, &self.factors)
    }

    pub fn text(&self) -> String {
        if self.factors.is_empty() {
            return "()".to_string();
        }
        self.factors
            .iter()
            .map(|r| format!("({r})"))
            .collect::<String>()
    }
}

/// The forward map from antichains to noncrossing factor words.
///
/// Single roots map to themselves and an all-doubled antichain is returned
/// unchanged. A connected antichain without doubles contributes the union of
/// its roots followed by the image of the adjacent intersections; one with a
/// doubled prefix goes through the link construction. Disconnected antichains
/// map componentwise.
pub fn f_map(a: &Antichain) -> NcWord {
    let mut factors = Vec::with_capacity(a.len());
    f_sequence(a, &mut factors);
    NcWord {
        system: a.system(),
        factors,
    }
}

fn f_sequence(a: &Antichain, out: &mut Vec<PositiveRoot>) {
    for component in connected_components(a) {
        f_connected(&component, out);
    }
}

fn f_connected(a: &Antichain, out: &mut Vec<PositiveRoot>) {
    let roots = a.roots();
    if roots.is_empty() {
        return;
    }
    if roots.len() == 1 {
        out.push(roots[0].clone());
        return;
    }
    if roots.iter().all(PositiveRoot::has_doubles) {
        out.extend_from_slice(roots);
        return;
    }
    if roots.iter().all(|r| !r.has_doubles()) {
        f_case_no_doubles(a, out);
    } else {
        f_case_doubled_prefix(a, out);
    }
}

fn f_case_no_doubles(a: &Antichain, out: &mut Vec<PositiveRoot>) {
    let roots = a.roots();
    let mut union = roots[0].clone();
    for r in &roots[1..] {
        union = root_union(&union, r).expect("connected double-free roots always admit a union");
    }
    out.push(union);
    let bars: Vec<PositiveRoot> = roots
        .windows(2)
        .map(|w| {
            root_intersection(&w[0], &w[1])
                .expect("adjacent roots of a connected antichain intersect")
        })
        .collect();
    let rest = canonicalize_antichain(a.system(), &bars)
        .expect("adjacent intersections of an antichain form an antichain");
    f_sequence(&rest, out);
}

fn f_case_doubled_prefix(a: &Antichain, out: &mut Vec<PositiveRoot>) {
    let roots = a.roots();
    let layout = compute_links_on(roots).expect("mixed antichain admits the link construction");
    let ell = layout.gamma_split;
    let system = a.system();
    let head_starts_at_one = roots[ell].first_index() == 1;
    assert_eq!(
        layout.t.len(),
        2 * ell + usize::from(head_starts_at_one),
        "index pool has the wrong parity for {a:?}"
    );

    let mut pool = layout.t.clone();
    for _ in 0..ell {
        let lo = pool.remove(0);
        let hi = pool.pop().unwrap();
        out.push(
            PositiveRoot::with_doubles(system, lo, hi)
                .expect("pool bounds always yield a doubled root"),
        );
    }
    if head_starts_at_one {
        let last = pool.pop().unwrap();
        out.push(PositiveRoot::from_interval(system, 1, last).unwrap());
    }
    assert!(pool.is_empty());

    let mut d_factors = layout.l_links.clone();
    d_factors.sort_by_key(|link| std::cmp::Reverse(link.0)); // rightmost doubled endpoint first
    for (k, mp) in d_factors {
        out.push(
            root_d_intersection(&roots[k], &roots[mp])
                .expect("l-linked pairs have nonempty d-intersection"),
        );
    }

    let mut u_factors = layout.u_links.clone();
    u_factors.sort_by_key(|&(_, mp)| mp); // leftmost double-free endpoint first
    let thetas: Vec<PositiveRoot> = u_factors
        .into_iter()
        .map(|(k, mp)| {
            root_intersection(&roots[k], &roots[mp])
                .expect("u-linked pairs have intersecting supports")
        })
        .collect();
    let rest = canonicalize_antichain(system, &thetas)
        .expect("u-link intersections form an antichain");
    f_sequence(&rest, out);
}

/// Per-component statistics of the inverse construction, recording the index
/// pool `T` (decreasing), the first-index pool and the last-index pool (both
/// increasing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseTrace {
    pub components: Vec<InverseComponentTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseComponentTrace {
    pub t: Vec<usize>,
    pub first_stats: Vec<usize>,
    pub last_stats: Vec<usize>,
}

/// The inverse map: recovers the antichain whose image is the given
/// canonically oriented noncrossing element.
pub fn g_map(p: &SignedPermutation) -> Result<Antichain, BijectionError> {
    g_map_with_trace(p).map(|(a, _)| a)
}

/// [`g_map`] plus the per-component trace of the construction.
pub fn g_map_with_trace(
    p: &SignedPermutation,
) -> Result<(Antichain, InverseTrace), BijectionError> {
    if !is_canonical_nc_element(p) {
        return Err(BijectionError::NotCanonicalNc);
    }
    let system = match p.family() {
        Family::A => RootSystemId::new(Family::A, p.n() - 1),
        Family::B => RootSystemId::new(Family::B, p.n()),
    }
    .map_err(|_| BijectionError::InverseInvariant("degenerate ground set".into()))?;

    let word = nc_factor_word(system, p)?;
    // Reordering the transpositions must not change the product: each move
    // permutes factors with disjoint entry sets.
    if product_of_roots(system, &word) != *p {
        return Err(BijectionError::InverseInvariant(
            "reordered factor word no longer multiplies to the input".into(),
        ));
    }
    let mut roots_out = Vec::new();
    let mut traces = Vec::new();
    for component in word_components(&word) {
        let (mut part, trace) = invert_component(system, &component)?;
        roots_out.append(&mut part);
        traces.push(trace);
    }
    let antichain = canonicalize_antichain(system, &roots_out)
        .map_err(|e| BijectionError::InverseInvariant(format!("output not an antichain: {e}")))?;
    Ok((antichain, InverseTrace { components: traces }))
}

/// Decomposes the positive cycle structure into transpositions, orders them
/// (mixed-sign ones first, then same-sign, each group by least positive
/// entry) and converts each to its root.
fn nc_factor_word(
    system: RootSystemId,
    p: &SignedPermutation,
) -> Result<Vec<PositiveRoot>, BijectionError> {
    let mut mixed: Vec<(i64, i64)> = Vec::new();
    let mut plain: Vec<(i64, i64)> = Vec::new();
    for cycle in p.positive_cycle_structure() {
        let split = cycle.iter().take_while(|&&x| x > 0).count();
        let (pos, neg) = cycle.split_at(split);
        if neg.iter().any(|&x| x > 0) {
            return Err(BijectionError::InverseInvariant(format!(
                "cycle {cycle:?} is not positives-then-negatives"
            )));
        }
        if neg.is_empty() {
            for w in pos.windows(2) {
                plain.push((w[0], w[1]));
            }
        } else {
            let symmetric = cycle.iter().any(|&x| cycle.contains(&-x));
            mixed.push((pos[0], neg[0]));
            for w in pos.windows(2) {
                plain.push((w[0], w[1]));
            }
            if !symmetric {
                // A distinct mirror block: its positives appear here negated.
                for w in neg.windows(2) {
                    plain.push((-w[0], -w[1]));
                }
            }
        }
    }
    mixed.sort_by_key(|&(a, _)| a);
    plain.sort_by_key(|&(a, _)| a);

    let mut word = Vec::with_capacity(mixed.len() + plain.len());
    for (a, b) in mixed {
        let (a, b) = (a, -b);
        debug_assert!(a > 0 && b > 0);
        let root = if a == b {
            PositiveRoot::from_interval(system, 1, a as usize)
        } else {
            PositiveRoot::with_doubles(system, a.min(b) as usize, a.max(b) as usize)
        };
        word.push(root.map_err(|e| BijectionError::InverseInvariant(e.to_string()))?);
    }
    for (a, b) in plain {
        debug_assert!(0 < a && a < b);
        let root = match system.family {
            Family::A => PositiveRoot::from_interval(system, a as usize, b as usize - 1),
            Family::B => PositiveRoot::from_interval(system, a as usize + 1, b as usize),
        };
        word.push(root.map_err(|e| BijectionError::InverseInvariant(e.to_string()))?);
    }
    Ok(word)
}

/// Groups a factor word into runs whose overline supports transitively
/// overlap, preserving factor order within each group.
fn word_components(word: &[PositiveRoot]) -> Vec<Vec<PositiveRoot>> {
    let m = word.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for i in 0..m {
        for j in i + 1..m {
            if supports_touch(&word[i], &word[j]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<PositiveRoot>)> = Vec::new();
    for (i, factor) in word.iter().enumerate() {
        let rep = find(&mut parent, i);
        match groups.iter_mut().find(|(r, _)| *r == rep) {
            Some((_, members)) => members.push(factor.clone()),
            None => groups.push((rep, vec![factor.clone()])),
        }
    }
    // Components occupy disjoint support intervals; order them by span start.
    groups.sort_by_key(|(_, members)| {
        members.iter().map(|r| r.first_index()).min().unwrap()
    });
    groups.into_iter().map(|(_, members)| members).collect()
}

/// Inverts one connected component of the factor word.
fn invert_component(
    system: RootSystemId,
    comp: &[PositiveRoot],
) -> Result<(Vec<PositiveRoot>, InverseComponentTrace), BijectionError> {
    let k = comp.len();
    let r = comp.iter().take_while(|x| x.has_doubles()).count();
    if comp[r..].iter().any(PositiveRoot::has_doubles) {
        return Err(BijectionError::InverseInvariant(
            "doubled factors are not a prefix of their component".into(),
        ));
    }

    // gamma_prime collects the factors that arose as d-intersections of
    // l-linked pairs; gamma_prime_d the doubled factors they consume. A
    // d-intersection factor's last index equals the last double index of the
    // doubled root it came from, which is smaller than the last index of any
    // other double-free factor in the component, so scanning in ascending
    // last-index order meets all of them first; each must fit inside the
    // doubled part of a still-unmatched doubled factor, rightmost first.
    let mut gamma_prime: Vec<bool> = vec![false; k];
    let mut gamma_prime_d: Vec<bool> = vec![false; k];
    if r > 0 && r < k {
        let mut bar: Vec<usize> = (r..k).filter(|&i| comp[i].first_index() != 1).collect();
        bar.sort_by_key(|&i| comp[i].last_index());
        for &ai in &bar {
            let (fi, li) = comp[ai].overline_interval();
            let candidate = (0..r).rev().find(|&j| {
                !gamma_prime_d[j]
                    && fi >= 2
                    && li <= comp[j].last_double_index().unwrap_or(0)
            });
            if let Some(j) = candidate {
                gamma_prime[ai] = true;
                gamma_prime_d[j] = true;
            }
        }
    }

    let mut t: Vec<usize> = (0..r)
        .filter(|&j| !gamma_prime_d[j])
        .map(|j| comp[j].last_double_index().unwrap())
        .chain((r..k).filter(|&i| gamma_prime[i]).map(|i| comp[i].last_index()))
        .collect();
    t.sort_unstable_by(|a, b| b.cmp(a));

    let mut first_stats: Vec<usize> = comp[r..].iter().map(|x| x.first_index()).collect();
    first_stats.sort_unstable();

    let mut last_stats: Vec<usize> = (0..k)
        .filter(|&i| i < r || !gamma_prime[i])
        .map(|i| comp[i].last_index())
        .chain(
            (0..r)
                .filter(|&j| gamma_prime_d[j])
                .map(|j| comp[j].last_double_index().unwrap()),
        )
        .collect();
    last_stats.sort_unstable();

    if t.len() != r || last_stats.len() != k || first_stats.len() != k - r {
        return Err(BijectionError::InverseInvariant(format!(
            "index pools have inconsistent sizes: |T|={}, |F|={}, |L|={}, r={r}, k={k}",
            t.len(),
            first_stats.len(),
            last_stats.len()
        )));
    }
    if last_stats.windows(2).any(|w| w[0] == w[1]) {
        return Err(BijectionError::InverseInvariant(format!(
            "duplicate entries in the last-index pool {last_stats:?}"
        )));
    }

    let mut out = Vec::with_capacity(k);
    for i in 0..r {
        out.push(
            PositiveRoot::with_doubles(system, t[i], last_stats[i]).map_err(|e| {
                BijectionError::InverseInvariant(format!("doubled output invalid: {e}"))
            })?,
        );
    }
    for i in r..k {
        out.push(
            PositiveRoot::from_interval(system, first_stats[i - r], last_stats[i]).map_err(
                |e| BijectionError::InverseInvariant(format!("plain output invalid: {e}")),
            )?,
        );
    }
    Ok((
        out,
        InverseComponentTrace {
            t,
            first_stats,
            last_stats,
        },
    ))
}

/// The classical crossing-to-nesting conversion on family-A arc diagrams.
///
/// Arcs are processed left to right; each arc repeatedly trades right
/// endpoints with the leftmost arc crossing it until no crossing remains.
pub fn l_map(p: &ArcPartition) -> Result<ArcPartition, BijectionError> {
    if p.family() != Family::A {
        return Err(BijectionError::NotTypeA);
    }
    let mut arcs: Vec<(i64, i64)> = p.arcs(crate::partitions::GroundConvention::TypeA);
    arcs.sort_unstable();
    for k in 0..arcs.len() {
        loop {
            let (a, c) = arcs[k];
            // The leftmost arc crossing arc k, in either role.
            let partner = arcs
                .iter()
                .enumerate()
                .filter(|&(i, &(b, d))| {
                    i != k && ((a < b && b < c && c < d) || (b < a && a < d && d < c))
                })
                .min_by_key(|&(_, &(b, _))| b);
            match partner {
                Some((i, &(b, d))) => {
                    // The arc with the smaller left endpoint takes the larger
                    // right endpoint, turning the crossing into a nesting.
                    let (hi, lo) = (c.max(d), c.min(d));
                    if a < b {
                        arcs[k] = (a, hi);
                        arcs[i] = (b, lo);
                    } else {
                        arcs[i] = (b, hi);
                        arcs[k] = (a, lo);
                    }
                }
                None => break,
            }
        }
    }
    // Rebuild blocks as connected components of the final arc set.
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
    Ok(ArcPartition::from_blocks(Family::A, n, blocks.into_values().collect())
        .expect("components of an arc set partition the ground set"))
}
