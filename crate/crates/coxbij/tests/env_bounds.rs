//! The COXBIJ_MAX_RANK environment variable overrides both enumeration
//! bounds. Kept in its own test binary so the env mutation cannot race other
//! tests.

use coxbij::enumerate::{enumerate_antichains, EnumerateError, RankBounds};
use coxbij::roots::{Family, RootSystemId};

#[test]
fn env_var_overrides_both_bounds() {
    assert_eq!(RankBounds::from_env(), RankBounds { max_a: 9, max_b: 6 });

    std::env::set_var("COXBIJ_MAX_RANK", "2");
    let bounds = RankBounds::from_env();
    assert_eq!(bounds, RankBounds { max_a: 2, max_b: 2 });
    let too_big = RootSystemId::new(Family::A, 3).unwrap();
    assert!(matches!(
        enumerate_antichains(too_big, &bounds),
        Err(EnumerateError::RankOverBound { .. })
    ));

    std::env::set_var("COXBIJ_MAX_RANK", "7");
    let bounds = RankBounds::from_env();
    let b7 = RootSystemId::new(Family::B, 7).unwrap();
    // C(14,7) antichains become reachable once the bound is raised.
    assert_eq!(enumerate_antichains(b7, &bounds).unwrap().len(), 3432);

    std::env::remove_var("COXBIJ_MAX_RANK");
}
