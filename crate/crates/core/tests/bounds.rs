use curve_towers::bounds::{
    consistency_chain, constant_c, dil_bound, floor_value, height_bound, height_within_log_bound, isect_bound,
    isect_crossover, log_branch, log_branch_crossover, self_crossing_dilatation, to_decimal, to_f64, Branch, DBig,
};

fn c64() -> f64 {
    (28f64 / 25.0).ln() / 4f64.ln()
}

#[test]
fn constant_agrees_with_double_precision() {
    assert!((to_f64(&constant_c()) - c64()).abs() < 1e-15);
    // 40 digits, and 4^c = 28/25 to that accuracy
    let four = DBig::from(4u8).with_precision(80).value();
    let four_c = (constant_c() * four.ln()).exp();
    let diff = four_c - "1.12".parse::<DBig>().unwrap();
    let eps = "1e-40".parse::<DBig>().unwrap();
    assert!(diff < eps && diff > -eps, "{diff}");
    assert_eq!(to_decimal(&constant_c(), 40).len(), 42);
}

#[test]
fn intersection_bound_crosses_two_at_9623() {
    assert_eq!(isect_crossover(2), 9623);
    // closed form: ((d+2)/2)^c > 2 iff d > 2^(1 + 1/c) - 2
    let threshold = 2f64.powf(1.0 + 1.0 / c64()) - 2.0;
    assert_eq!(threshold.floor() as u64 + 1, 9623);
    // the margin is far wider than double precision error
    assert!((threshold - threshold.round()).abs() > 1e-3);
    let below = isect_bound(9622, false).unwrap();
    let above = isect_bound(9623, false).unwrap();
    assert!(below.value() <= DBig::from(2u8));
    assert!(above.value() > DBig::from(2u8));
    assert_eq!(above.branch, Branch::Direct);
}

#[test]
fn small_intersection_bounds() {
    let r = isect_bound(3, false).unwrap();
    assert!((to_f64(&r.value()) - 2.5f64.powf(c64())).abs() < 1e-12);
    assert!(r.decimal.starts_with("1.0777"));
    assert!(isect_bound(7, true).is_ok());
    assert!(isect_bound(6, true).is_err());
    assert!(isect_bound(2, false).is_err());
    for d in 3..200u64 {
        let v = to_f64(&isect_bound(d, false).unwrap().value());
        assert!((v - ((d + 2) as f64 / 2.0).powf(c64())).abs() < 1e-12);
    }
}

#[test]
fn dilatation_bound_branches() {
    let log64 = |k: u64| c64() * ((k + 3) as f64 / 2.0).ln() - 2f64.ln();
    // the logarithmic branch turns positive at k = 9622
    assert_eq!(log_branch_crossover(&DBig::ZERO), 9622);
    assert!(log64(9621) < 0.0 && log64(9622) > 0.0);
    assert!(log_branch(9621) <= DBig::ZERO && log_branch(9622) > DBig::ZERO);
    // and overtakes the 0.197 floor much later
    let k197 = log_branch_crossover(&floor_value());
    assert!(log64(k197 - 1) <= 0.197 && log64(k197) > 0.197);
    assert_eq!(k197, 107136);
    assert_eq!(dil_bound(1).unwrap().branch, Branch::Floor);
    assert_eq!(dil_bound(9622).unwrap().branch, Branch::Floor);
    assert!(dil_bound(9622).unwrap().value() >= floor_value());
    let big = dil_bound(1_000_000).unwrap();
    assert_eq!(big.branch, Branch::Logarithmic);
    assert!((to_f64(&big.value()) - log64(1_000_000)).abs() < 1e-12);
    assert!((to_f64(&big.value()) - 0.379).abs() < 1e-3);
    assert!(dil_bound(0).is_err());
    assert!((to_f64(&self_crossing_dilatation(10).unwrap().value()) - 5f64.ln()).abs() < 1e-14);
}

#[test]
fn height_bound_matches_logarithms() {
    assert_eq!((height_bound(0), height_bound(1)), (3, 3));
    for n in 2..2000u64 {
        let want = (2.0 * (n as f64).ln() / (28f64 / 25.0).ln()).floor() as u64 + 1;
        assert_eq!(height_bound(n), want, "n = {n}");
        assert!(height_within_log_bound(want, n));
        assert!(!height_within_log_bound(want + 1, n));
    }
}

#[test]
fn chain_of_inequalities() {
    let ok = consistency_chain(4, 3, 6);
    assert!(ok.holds(), "{:?}", ok.checks);
    let names: Vec<&str> = ok.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["height", "depth", "exponent", "inversion"]);
    // depth above 2^k - 2
    assert!(!consistency_chain(4, 3, 7).holds());
    // k = 1 still allows d = 1
    assert!(consistency_chain(1, 1, 1).holds());
    assert!(!consistency_chain(1, 1, 2).holds());
    // too tall for the crossing count
    assert!(!consistency_chain(2, 14, 1).holds());
    // d = 8191 still gives a bound below 2; from 9623 on two crossings are too few
    let inversion = |d| {
        consistency_chain(2, 13, d)
            .checks
            .into_iter()
            .find(|c| c.name == "inversion")
            .unwrap()
            .holds
    };
    assert!(inversion(8191));
    assert!(!inversion(9623));
}
