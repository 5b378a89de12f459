use permshatter::exact::{
    f_exact, lower_bound_thresholds, regime, solve_table, ExactConfig, Regime, TABLE_HEADER,
};
use permshatter::files::csv_string;
use permshatter::perm::min_shatter;
use permshatter::Error;

#[test]
fn full_shattering_values() {
    // every 3-subset in all 6 orders
    let r = f_exact(3, 3, 6, &ExactConfig::default()).unwrap();
    assert_eq!(r.m, 6);
    let r = f_exact(4, 3, 6, &ExactConfig::default()).unwrap();
    assert_eq!(r.m, 6);
    assert_eq!(min_shatter(&r.optimal_family, 3, 100).unwrap().0, 6);
}

#[test]
fn k4_on_five_points() {
    let cfg = ExactConfig::default();
    let mut last = 0;
    for t in 1..=8 {
        let r = f_exact(5, 4, t, &cfg).unwrap();
        assert!(r.m >= last && r.m >= t as usize);
        assert!(min_shatter(&r.optimal_family, 4, 100).unwrap().0 >= t);
        last = r.m;
    }
}

#[test]
fn limits_are_enforced() {
    let cfg = ExactConfig {
        max_n: 5,
        ..ExactConfig::default()
    };
    assert!(matches!(
        f_exact(6, 3, 2, &cfg),
        Err(Error::BudgetExceeded { .. })
    ));
    assert!(f_exact(4, 3, 7, &cfg).is_err());
    let tiny = ExactConfig {
        node_budget: 10,
        ..ExactConfig::default()
    };
    assert!(matches!(
        f_exact(5, 3, 6, &tiny),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn table_csv() {
    let rows = solve_table(&[4], &[3, 4], 3, &ExactConfig::default()).unwrap();
    let text = csv_string(&TABLE_HEADER, &rows).unwrap();
    assert_eq!(
        text,
        "n,k,t,m\n4,3,1,1\n4,3,2,2\n4,3,3,3\n4,4,1,1\n4,4,2,2\n4,4,3,3\n"
    );
}

#[test]
fn regime_boundaries() {
    let expect = [
        (3, 2, Regime::ExactT),
        (3, 3, Regime::Loglog),
        (3, 4, Regime::Loglog),
        (3, 5, Regime::Log),
        (3, 6, Regime::Log),
        (4, 8, Regime::Sqrtlog),
        (4, 9, Regime::Log),
        (5, 9, Regime::Sqrtlog),
        (5, 13, Regime::Unknown),
        (5, 17, Regime::Log),
        (8, 8, Regime::Loglog),
        (8, 12, Regime::Sqrtlog),
        (8, 13, Regime::Unknown),
        (8, 129, Regime::Log),
    ];
    for (k, t, want) in expect {
        assert_eq!(regime(k, t).unwrap().regime, want, "k={k} t={t}");
    }
    assert!(regime(4, 25).is_err());
    assert!(regime(4, 0).is_err());
}

#[test]
fn thresholds_grow_with_n() {
    let small = lower_bound_thresholds(1 << 10, 4).unwrap();
    let large = lower_bound_thresholds(1 << 40, 4).unwrap();
    assert!(small.chain < large.chain);
    assert!(small.tree < large.tree);
}
