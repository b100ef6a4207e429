use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use curve_towers::f2::F2Vector;
use curve_towers::functional::{
    audit, ceil_half, ceil_three_sevenths, derandomize_half, derandomize_splitting, expectation_audit_half,
    find_half_functional, find_splitting_functional, random_nonzero_vectors, random_splitting_family, splits,
    splitting_probability, zeta, zeta_scan, SearchConfig, SearchMode, SplittingFamily,
};

fn mask(v: &F2Vector) -> u64 {
    v.ones().fold(0, |m, i| m | 1 << i)
}

/// Best hit count over all functionals, on raw bitmasks.
fn brute_half(vs: &[F2Vector], dim: usize) -> usize {
    let ms: Vec<u64> = vs.iter().map(mask).collect();
    (0..1u64 << dim)
        .map(|f| ms.iter().filter(|&&m| (f & m).count_ones() % 2 == 1).count())
        .max()
        .unwrap()
}

fn brute_split(fam: &SplittingFamily) -> usize {
    let pairs: Vec<(Vec<u64>, Vec<u64>)> = fam
        .pairs
        .iter()
        .map(|(v, w)| (v.iter().map(mask).collect(), w.iter().map(mask).collect()))
        .collect();
    let odd = |f: u64, b: &[u64]| b.iter().any(|&m| (f & m).count_ones() % 2 == 1);
    (1..1u64 << fam.n)
        .map(|f| pairs.iter().filter(|(v, w)| odd(f, v) && odd(f, w)).count())
        .max()
        .unwrap()
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[test]
fn exhaustive_search_finds_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for dim in 1..=9 {
        for m in [1, 2, 7, 20] {
            let vs = random_nonzero_vectors(dim, m, &mut rng);
            let found = find_half_functional(&vs, &SearchConfig::default()).unwrap();
            assert_eq!(found.mode, SearchMode::Exhaustive);
            assert_eq!(found.count, brute_half(&vs, dim));
            assert_eq!(found.count, vs.iter().filter(|v| found.functional.dot(v)).count());
            assert!(found.count >= ceil_half(m));
        }
    }
    for dim in 3..=8 {
        let fam = random_splitting_family(dim, 15, &mut rng);
        fam.validate().unwrap();
        let found = find_splitting_functional(&fam, &SearchConfig::default()).unwrap();
        assert_eq!(found.count, brute_split(&fam));
        assert!(!found.functional.is_zero());
        assert!(found.count >= ceil_three_sevenths(15));
    }
}

#[test]
fn sampling_and_fallback_meet_the_bounds() {
    let cfg = SearchConfig { enum_cap: 0, seed: 3 };
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for dim in [3, 12, 30] {
        let vs = random_nonzero_vectors(dim, 40, &mut rng);
        let found = find_half_functional(&vs, &cfg).unwrap();
        assert_ne!(found.mode, SearchMode::Exhaustive);
        assert!(found.count >= 20);
        assert_eq!(found.count, vs.iter().filter(|v| found.functional.dot(v)).count());
        let fam = random_splitting_family(dim, 40, &mut rng);
        let found = find_splitting_functional(&fam, &cfg).unwrap();
        assert!(found.count >= ceil_three_sevenths(40));
        assert_eq!(found.count, fam.successes(&found.functional));
    }
}

#[test]
fn ceilings() {
    assert_eq!((ceil_half(0), ceil_half(1), ceil_half(4), ceil_half(5)), (0, 1, 2, 3));
    let want: Vec<usize> = (0..30).map(|m| (3 * m + 6) / 7).collect();
    let got: Vec<usize> = (0..30).map(ceil_three_sevenths).collect();
    assert_eq!(got, want);
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn derandomized_half_reaches_half(seed in any::<u64>(), dim in 1usize..40, m in 1usize..60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs = random_nonzero_vectors(dim, m, &mut rng);
        let f = derandomize_half(&vs, dim);
        prop_assert!(vs.iter().filter(|v| f.dot(v)).count() >= ceil_half(m));
    }

    #[test]
    fn derandomized_splitting_reaches_three_sevenths(seed in any::<u64>(), n in 3usize..24, m in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = random_splitting_family(n, m, &mut rng);
        let f = derandomize_splitting(&fam);
        prop_assert!(!f.is_zero());
        prop_assert!(fam.successes(&f) >= ceil_three_sevenths(m));
    }
}

#[test]
fn mean_hit_count_is_half() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for dim in 1..=10 {
        let vs = random_nonzero_vectors(dim, 9, &mut rng);
        assert_eq!(expectation_audit_half(&vs, dim, 24).unwrap(), q(9, 2));
    }
}

#[test]
fn splitting_probability_matches_counting() {
    // coordinate splitting: V spans the first a axes
    for n in 3..=10usize {
        for a in 1..n {
            let v: Vec<F2Vector> = (0..a).map(|i| F2Vector::unit(n, i)).collect();
            let w: Vec<F2Vector> = (a..n).map(|i| F2Vector::unit(n, i)).collect();
            let low = (1u64 << a) - 1;
            let good = (1..1u64 << n).filter(|f| f & low != 0 && f & !low != 0).count() as i64;
            let p = q(good, (1 << n) - 1);
            assert_eq!(splitting_probability(n, &v, &w, 24).unwrap(), p);
            assert_eq!(zeta(a as u32, n as u32).unwrap(), p);
        }
    }
    // and for random splittings, which only change the basis
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let fam = random_splitting_family(7, 20, &mut rng);
    for (v, w) in &fam.pairs {
        let p = splitting_probability(7, v, w, 24).unwrap();
        assert_eq!(p, zeta(v.len() as u32, 7).unwrap());
        assert!(p >= q(3, 7));
    }
}

#[test]
fn zeta_minimum_is_three_sevenths() {
    let scan = zeta_scan(20).unwrap();
    assert_eq!(scan.points, (3..=20).map(|n| n - 1).sum::<usize>());
    assert_eq!(scan.min, q(3, 7));
    assert_eq!(scan.argmin, vec![(1, 3), (2, 3)]);
    // floating point cross check of every value
    for n in 3..=20u32 {
        for a in 1..n {
            let z = zeta(a, n).unwrap();
            let f = ((1u64 << a) - 1) as f64 * ((1u64 << (n - a)) - 1) as f64 / ((1u64 << n) - 1) as f64;
            let zf = z.numer().to_string().parse::<f64>().unwrap() / z.denom().to_string().parse::<f64>().unwrap();
            assert!((f - zf).abs() < 1e-12);
            assert!(f >= 3.0 / 7.0 - 1e-12);
        }
    }
    assert!(zeta(0, 5).is_err() && zeta(5, 5).is_err() && zeta(1, 2).is_err());
}

#[test]
fn bad_input_is_rejected() {
    let cfg = SearchConfig::default();
    assert!(find_half_functional(&[], &cfg).is_err());
    assert!(find_half_functional(&[F2Vector::zeros(3)], &cfg).is_err());
    assert!(find_half_functional(&[F2Vector::unit(3, 0), F2Vector::unit(4, 0)], &cfg).is_err());

    let e = |i| F2Vector::unit(3, i);
    let two_dim = SplittingFamily {
        n: 2,
        pairs: vec![(vec![F2Vector::unit(2, 0)], vec![F2Vector::unit(2, 1)])],
    };
    assert!(find_splitting_functional(&two_dim, &cfg).is_err());
    let overlapping = SplittingFamily {
        n: 3,
        pairs: vec![(vec![e(0), e(1)], vec![e(1)])],
    };
    assert!(overlapping.validate().is_err());
    let empty_side = SplittingFamily {
        n: 3,
        pairs: vec![(vec![e(0), e(1), e(2)], vec![])],
    };
    assert!(empty_side.validate().is_err());
    assert!(splits(&e(0).sum(&e(2)), &[e(0)], &[e(1), e(2)]));
    assert!(!splits(&e(0), &[e(0)], &[e(1), e(2)]));
    assert!(splitting_probability(30, &[], &[], 24).is_err());
}

#[test]
fn audits_pass_in_small_dimensions() {
    for dim in 2..=10 {
        let r = audit(dim, 50, 100 + dim as u64, 24).unwrap();
        assert!(r.all_checks(), "dim {dim}: {:?}", r.checks);
        assert_eq!(r.half_mean, q(25, 1));
        assert_eq!(r.split_best.is_some(), dim >= 3);
    }
}
