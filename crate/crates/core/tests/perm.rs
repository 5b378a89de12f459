use proptest::prelude::*;

use permshatter::combinatorics::Combinations;
use permshatter::perm::{
    build_scrambling_random, count_induced, induced_pattern, min_shatter, monotone_family,
    verify_t_shattering, PermFamily, Permutation, VerifyMode,
};
use permshatter::{BuildConfig, Error};

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u64).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|order| Permutation::from_order(&order).unwrap())
}

/// Orders on the subset, computed by sorting each member's ranks directly.
fn naive_count(family: &PermFamily, subset: &[u64]) -> usize {
    let mut seen: Vec<Vec<u64>> = family
        .members()
        .iter()
        .map(|p| {
            let mut s = subset.to_vec();
            s.sort_by_key(|&x| p.rank(x));
            s
        })
        .collect();
    seen.sort();
    seen.dedup();
    seen.len()
}

proptest! {
    #[test]
    fn count_matches_naive(members in prop::collection::vec(perm_strategy(7), 1..6), k in 1usize..=4) {
        let fam = PermFamily::new(7, members).unwrap();
        let mut min = usize::MAX;
        for c in Combinations::new(7, k) {
            let subset: Vec<u64> = c.iter().map(|&i| i as u64 + 1).collect();
            let naive = naive_count(&fam, &subset);
            prop_assert_eq!(count_induced(&fam, &subset).unwrap(), naive);
            min = min.min(naive);
        }
        prop_assert_eq!(min_shatter(&fam, k, 1000).unwrap().0, min as u64);
    }

    #[test]
    fn json_round_trip(members in prop::collection::vec(perm_strategy(9), 1..5)) {
        let fam = PermFamily::new(9, members).unwrap();
        prop_assert_eq!(PermFamily::from_json(&fam.to_json()).unwrap(), fam);
    }

    #[test]
    fn patterns_are_permutations(p in perm_strategy(8), a in 1u64..=8, b in 1u64..=8, c in 1u64..=8) {
        prop_assume!(a != b && b != c && a != c);
        let mut ranks = induced_pattern(&p, &[a, b, c]).unwrap().ranks;
        ranks.sort();
        prop_assert_eq!(ranks, vec![1, 2, 3]);
    }
}

#[test]
fn monotone_families_meet_their_target() {
    for n in 3..10 {
        for t in 1..=2u32 {
            let fam = monotone_family(n, t).unwrap();
            for k in 2..=n.min(5) {
                assert_eq!(min_shatter(&fam, k, 10_000).unwrap().0, t as u64);
            }
        }
    }
}

#[test]
fn scrambling_family_survives_a_file_round_trip() {
    let build = build_scrambling_random(8, 3, 17, &BuildConfig::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    build.family.save(&path).unwrap();
    let loaded = PermFamily::load(&path).unwrap();
    let cert = verify_t_shattering(&loaded, 3, 6, VerifyMode::Exhaustive, 1000).unwrap();
    assert_eq!(cert, build.certificate);
}

#[test]
fn budgets_and_bad_input() {
    let fam = monotone_family(30, 2).unwrap();
    assert!(matches!(
        min_shatter(&fam, 4, 100),
        Err(Error::BudgetExceeded { .. })
    ));
    assert!(matches!(
        count_induced(&fam, &[1, 1, 2]),
        Err(Error::DuplicateElement(1))
    ));
    assert!(matches!(
        count_induced(&fam, &[1, 31]),
        Err(Error::ElementOutOfRange { .. })
    ));
    assert!(PermFamily::from_json(r#"{"n": 3, "perms": [[1, 2]]}"#).is_err());
    assert!(PermFamily::from_json(r#"{"n": 3, "perms": [[1, 2, 2]]}"#).is_err());
}

#[test]
fn sampling_is_seeded() {
    let fam = monotone_family(200, 2).unwrap();
    let mode = VerifyMode::Sampled {
        count: 500,
        seed: 3,
    };
    let a = verify_t_shattering(&fam, 3, 3, mode, 0).unwrap();
    let b = verify_t_shattering(&fam, 3, 3, mode, 0).unwrap();
    assert_eq!(a, b);
    assert!(!a.passed);
    assert_eq!(a.min_count, 2);
}
