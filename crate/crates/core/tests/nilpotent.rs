use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use proptest::prelude::*;

use curve_towers::corpus::{example, examples, punctured_torus, three_holed_sphere};
use curve_towers::covering::{monodromy, pi1_generators};
use curve_towers::nilpotent::{
    free_basis, group_closure, lcs_degree, left_normed, lower_central_series, magnus, nilpotency_class,
    normal_core_report, perm_commutator, perm_identity, perm_inverse, perm_mul, LcsDepth, Perm, Word,
};
use curve_towers::tower::{build_resolving_tower, TowerConfig};

/// Coefficient of a monomial in the Magnus expansion, by splitting the
/// monomial into consecutive blocks, one per letter. A letter x_i takes the
/// empty block or [i]; its inverse takes [i]^j with sign (-1)^j.
fn coefficient_by_blocks(word: &[i32], monomial: &[usize]) -> BigInt {
    let m = monomial.len();
    // ways[p]: signed count of ways the letters so far consumed monomial[..p]
    let mut ways = vec![BigInt::from(0); m + 1];
    ways[0] = BigInt::from(1);
    for &x in word {
        let g = x.unsigned_abs() as usize - 1;
        let mut next = vec![BigInt::from(0); m + 1];
        for p in 0..=m {
            if ways[p] == BigInt::from(0) {
                continue;
            }
            next[p] += &ways[p];
            let mut q = p;
            let mut sign = 1;
            while q < m && monomial[q] == g {
                q += 1;
                sign = -sign;
                if x > 0 {
                    next[q] += &ways[p];
                    break;
                }
                next[q] += &ways[p] * sign;
            }
        }
        ways = next;
    }
    ways[m].clone()
}

fn monomials(rank: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|m: &Vec<usize>| {
                (0..rank).map(move |i| {
                    let mut n = m.clone();
                    n.push(i);
                    n
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn word_strategy(rank: i32) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=rank, any::<bool>()), 0..12)
        .prop_map(|v| Word(v.into_iter().map(|(g, inv)| if inv { -g } else { g }).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn magnus_coefficients_match_block_counting(w in word_strategy(3)) {
        let s = magnus(&w, 3, 4).unwrap();
        for mono in monomials(3, 4) {
            prop_assert_eq!(s.coefficient(&mono), coefficient_by_blocks(w.letters(), &mono));
        }
    }

    #[test]
    fn magnus_is_multiplicative(u in word_strategy(2), v in word_strategy(2)) {
        let lhs = magnus(&u.mul(&v), 2, 5).unwrap();
        let rhs = magnus(&u, 2, 5).unwrap().mul(&magnus(&v, 2, 5).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_and_parse_agree(w in word_strategy(5)) {
        prop_assert_eq!(Word::parse(&w.to_string()).unwrap(), w.clone());
        prop_assert!(w.mul(&w.inverse()).reduced().is_empty());
    }
}

#[test]
fn basic_commutators_sit_at_their_weight() {
    for c in 1..=5 {
        // [a, b, b, ..., b] has weight c
        let gens: Vec<usize> = std::iter::once(0).chain(std::iter::repeat_n(1, c - 1)).collect();
        assert_eq!(lcs_degree(&left_normed(&gens), 2, 6).unwrap(), LcsDepth::Exact(c));
    }
    let ab = Word::commutator(&Word::generator(0), &Word::generator(1));
    let cd = Word::commutator(&Word::generator(2), &Word::generator(3));
    assert_eq!(
        lcs_degree(&Word::commutator(&ab, &cd), 4, 4).unwrap(),
        LcsDepth::Exact(4)
    );
    assert_eq!(
        lcs_degree(&Word::commutator(&ab, &cd), 4, 3).unwrap(),
        LcsDepth::AtLeast(4)
    );
    assert_eq!(
        lcs_degree(&ab.mul(&Word::generator(0)), 2, 4).unwrap(),
        LcsDepth::Exact(1)
    );
    // a^2 is not a commutator but is a square: still weight one over Z
    assert_eq!(lcs_degree(&Word(vec![1, 1]), 1, 3).unwrap(), LcsDepth::Exact(1));
    assert_eq!(LcsDepth::AtLeast(7).lower(), 7);
    assert!(magnus(&Word::generator(3), 2, 3).is_err());
}

#[test]
fn free_bases_of_bordered_surfaces() {
    for ex in [punctured_torus().unwrap(), three_holed_sphere().unwrap()] {
        let s = &ex.triple.surface;
        let basis = free_basis(s).unwrap();
        assert_eq!(basis.rank as i64, 1 - s.euler_characteristic());
        assert_eq!(basis.generator_edges.len(), basis.rank);
        // each filled face is a relation
        for f in 0..s.num_faces() {
            if !s.is_boundary_face(f) {
                assert!(basis.word_of(s.face(f)).is_empty(), "{}: face {f}", ex.name);
            }
        }
        // generator edges read as distinct generators
        for (j, &e) in basis.generator_edges.iter().enumerate() {
            assert_eq!(
                basis.edge_words[e]
                    .letters()
                    .iter()
                    .filter(|x| x.unsigned_abs() as usize == j + 1)
                    .count(),
                1
            );
        }
    }
    // the boundary of a punctured torus is a commutator of the two generators
    let pt = punctured_torus().unwrap();
    let s = &pt.triple.surface;
    let basis = free_basis(s).unwrap();
    let f = (0..s.num_faces()).find(|&f| s.is_boundary_face(f)).unwrap();
    let w = basis.word_of(s.face(f));
    assert_eq!(lcs_degree(&w, basis.rank, 4).unwrap(), LcsDepth::Exact(2));
    assert!(free_basis(&example("g2-n2").unwrap().triple.surface).is_err());
}

fn perm(v: &[u32]) -> Perm {
    v.to_vec()
}

/// Dihedral group of order 2n acting on n points.
fn dihedral(n: u32) -> Vec<Perm> {
    let r: Perm = (0..n).map(|i| (i + 1) % n).collect();
    let s: Perm = (0..n).map(|i| (n - i) % n).collect();
    vec![r, s]
}

#[test]
fn small_permutation_groups() {
    let id = perm_identity(4);
    let p = perm(&[1, 2, 3, 0]);
    assert_eq!(perm_mul(&p, &perm_inverse(&p)), id);
    assert_eq!(perm_commutator(&p, &p), id);

    let klein = group_closure(4, &[perm(&[1, 0, 3, 2]), perm(&[2, 3, 0, 1])], 100).unwrap();
    assert_eq!(klein.order(), 4);
    assert_eq!(nilpotency_class(&klein, 100).unwrap(), Some(1));

    // the dihedral group of order 2^m has class m - 1
    for (n, class) in [(4u32, 2), (8, 3), (16, 4)] {
        let g = group_closure(n as usize, &dihedral(n), 1000).unwrap();
        assert_eq!(g.order(), 2 * n as usize);
        assert_eq!(nilpotency_class(&g, 1000).unwrap(), Some(class));
        let series = lower_central_series(&g, 1000).unwrap();
        let orders: Vec<usize> = series.iter().map(|h| h.order()).collect();
        let mut want = vec![2 * n as usize];
        let mut o = n as usize / 2;
        while o >= 1 {
            want.push(o);
            o /= 2;
        }
        assert_eq!(orders, want);
    }

    let s3 = group_closure(3, &[perm(&[1, 0, 2]), perm(&[1, 2, 0])], 100).unwrap();
    assert_eq!(s3.order(), 6);
    assert_eq!(nilpotency_class(&s3, 100).unwrap(), None);
    assert!(group_closure(6, &[perm(&[1, 0, 2, 3, 4, 5]), perm(&[1, 2, 3, 4, 5, 0])], 100).is_err());
}

/// Order of the group generated by `gens`, by a plain breadth-first search.
fn order_by_search(gens: &[Vec<usize>]) -> usize {
    let id: Vec<usize> = (0..gens[0].len()).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

#[test]
fn monodromy_images_of_corpus_towers() {
    let want = [
        ("g2-n0-diff", 1, 1),
        ("g2-n1", 1, 1),
        ("g2-n2", 2, 1),
        ("g2-n4", 3, 1),
        ("g3-n0-bp", 3, 2),
        ("g3-n0-sep", 3, 2),
        ("g3-n2-bad", 3, 2),
        ("g3-n6", 2, 1),
    ];
    let all = examples().unwrap();
    for (ex, (name, ell, class)) in all.iter().zip(want) {
        assert_eq!(ex.name, name);
        let cert = build_resolving_tower(&ex.triple, &TowerConfig::default()).unwrap();
        let t0 = &cert.triple;
        let m = monodromy(&cert.tower, t0.v(), &pi1_generators(&t0.surface, t0.v()));
        let order = order_by_search(&m.permutations);
        assert_eq!(order, 1 << ell, "{name}");
        let r = normal_core_report(&m, cert.k, 1 << 16);
        assert!(r.all_checks(), "{name}: {:?}", r.checks);
        assert_eq!(r.ell, Some(ell));
        assert!(ell as u64 <= r.ell_bound);
        assert_eq!(r.class, Some(class), "{name}");
        assert_eq!(r.transitive, Some(true));
    }
}
