use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use curve_towers::corpus::{chain_surface, examples};
use curve_towers::covering::{fiber_permutation, lift_triple, pi1_generators, DoubleCover, LiftKind, Tower};
use curve_towers::error::Error;
use curve_towers::f2::{F2Matrix, F2Vector};
use curve_towers::homology::{pushoff_cocycle, Cocycle, H1Space};
use curve_towers::surface::{standard_polygon, Dart, Surface};

fn surfaces() -> Vec<Surface> {
    vec![
        standard_polygon(2),
        standard_polygon(3),
        chain_surface(2, 3).unwrap(),
        chain_surface(3, 3).unwrap(),
    ]
}

fn random_vector(len: usize, rng: &mut ChaCha8Rng) -> F2Vector {
    let bits: Vec<bool> = (0..len).map(|_| rng.gen()).collect();
    F2Vector::from_bits(&bits)
}

/// A cocycle in the class of `phi`, disguised by a random coboundary.
fn random_cocycle(s: &Surface, h: &H1Space, phi: &F2Vector, rng: &mut ChaCha8Rng) -> Cocycle {
    let mut psi = h.cocycle_from_functional(phi);
    let f: Vec<bool> = (0..s.num_vertices()).map(|_| rng.gen()).collect();
    for e in 0..s.num_edges() {
        let d = Dart::new(e, false);
        if f[s.tail(d)] != f[s.head(d)] {
            psi.bits.flip(e);
        }
    }
    psi
}

/// Connected components of the graph on (vertex, sheet) pairs built from psi.
fn lifted_components(s: &Surface, psi: &Cocycle) -> usize {
    let n = 2 * s.num_vertices();
    let mut seen = vec![false; n];
    let mut comps = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        comps += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let (u, sheet) = (x / 2, x % 2);
            for &d in s.rotation(u) {
                let y = 2 * s.head(d) + (sheet ^ psi.value(d.edge()) as usize);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    comps
}

/// Edge chain of a walk, mod 2.
fn chain(s: &Surface, darts: &[Dart]) -> F2Vector {
    let mut v = F2Vector::zeros(s.num_edges());
    for d in darts {
        v.flip(d.edge());
    }
    v
}

/// Is the chain a sum of face boundaries? Solved directly, no tree-cotree.
fn bounds_a_union_of_faces(s: &Surface, c: &F2Vector) -> bool {
    let faces: Vec<F2Vector> = s.faces().iter().map(|f| chain(s, f)).collect();
    let m = F2Matrix::new(
        faces.len(),
        (0..s.num_edges())
            .map(|e| F2Vector::from_bits(&faces.iter().map(|f| f.get(e)).collect::<Vec<_>>()))
            .collect(),
    );
    m.solve(c).is_some()
}

fn random_loop(gens: &[Vec<Dart>], rng: &mut ChaCha8Rng) -> Vec<Dart> {
    let mut w = Vec::new();
    for _ in 0..rng.gen_range(1..5) {
        w.extend(gens[rng.gen_range(0..gens.len())].iter().copied());
    }
    w
}

#[test]
fn first_homology_has_rank_twice_the_genus() {
    for s in surfaces() {
        let h = H1Space::new(&s);
        assert_eq!(h.dim() as i64, 2 * s.genus());
        // the intersection form is nondegenerate
        let gram = F2Matrix::new(h.dim(), h.gram().to_vec());
        assert_eq!(gram.rank(), h.dim());
        for (i, row) in h.gram().iter().enumerate() {
            assert!(!row.get(i), "a class never meets itself mod 2");
        }
    }
}

#[test]
fn null_homologous_loops_agree_with_face_boundaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in surfaces() {
        let h = H1Space::new(&s);
        let gens = pi1_generators(&s, 0);
        for _ in 0..60 {
            let w = random_loop(&gens, &mut rng);
            let zero = h.class_of_darts(&w).is_zero();
            assert_eq!(zero, bounds_a_union_of_faces(&s, &chain(&s, &w)));
        }
    }
}

#[test]
fn pushoff_counts_the_pairing() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for ex in examples().unwrap() {
        let t = &ex.triple;
        let s = &t.surface;
        let h = H1Space::new(s);
        let a = h.class_of(&t.alpha).unwrap();
        let psi = pushoff_cocycle(s, t.alpha.darts());
        psi.check(s).unwrap();
        assert_eq!(h.functional_of(&psi), h.pairing_functional(&a), "{}", ex.name);
        let gens = pi1_generators(s, t.alpha.start());
        for _ in 0..20 {
            let w = random_loop(&gens, &mut rng);
            assert_eq!(psi.eval_darts(&w), h.pairing(&a, &h.class_of_darts(&w)));
        }
    }
}

#[test]
fn random_cocycles_give_connected_covers_of_twice_the_euler_characteristic() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut built = 0;
    let mut rejected = 0;
    for s in surfaces() {
        let h = H1Space::new(&s);
        for _ in 0..100 {
            // about one draw in 2^(2g) is the zero class
            let phi = if rng.gen_bool(0.1) {
                F2Vector::zeros(h.dim())
            } else {
                random_vector(h.dim(), &mut rng)
            };
            let psi = random_cocycle(&s, &h, &phi, &mut rng);
            psi.check(&s).unwrap();
            assert_eq!(h.functional_of(&psi), phi);
            assert_eq!(psi.is_coboundary(&h), phi.is_zero());
            let comps = lifted_components(&s, &psi);
            match DoubleCover::new(&s, psi) {
                Ok(c) => {
                    built += 1;
                    assert_eq!(comps, 1);
                    c.total.validate().unwrap();
                    assert_eq!(c.total.euler_characteristic(), 2 * s.euler_characteristic());
                    assert_eq!(c.total.genus(), 2 * s.genus() - 1);
                    assert_eq!(c.total.num_faces(), 2 * s.num_faces());
                }
                Err(Error::CoboundaryCocycle) => {
                    rejected += 1;
                    assert_eq!(comps, 2);
                    assert!(phi.is_zero());
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }
    assert!(built > 300 && rejected > 10, "built {built}, rejected {rejected}");
}

#[test]
fn deck_transformation_is_a_free_orientation_preserving_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for s in surfaces() {
        let h = H1Space::new(&s);
        let mut phi = random_vector(h.dim(), &mut rng);
        phi.set(0, true);
        let c = DoubleCover::new(&s, random_cocycle(&s, &h, &phi, &mut rng)).unwrap();
        for d in c.total.darts() {
            let g = c.deck(d);
            assert_ne!(g, d);
            assert_eq!(c.deck(g), d);
            assert_eq!(c.project(g), c.project(d));
            assert_eq!(c.deck(c.total.rot_next(d)), c.total.rot_next(g));
            assert_eq!(c.deck(d.partner()), g.partner());
            // projection is a local homeomorphism
            assert_eq!(c.project(c.total.rot_next(d)), s.rot_next(c.project(d)));
        }
    }
}

#[test]
fn lifts_follow_the_truth_table() {
    let table = [
        ((false, false), LiftKind::Closed),
        ((true, false), LiftKind::PartiallyClosed { alpha_closed: false }),
        ((false, true), LiftKind::PartiallyClosed { alpha_closed: true }),
        ((true, true), LiftKind::Nonclosed),
    ];
    for ((a, b), k) in table {
        assert_eq!(LiftKind::from_values(a, b), k);
        assert_eq!(k.is_partially_closed(), a != b);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for ex in examples().unwrap() {
        let t = &ex.triple;
        let s = &t.surface;
        let h = H1Space::new(s);
        let mut seen_closed = false;
        for _ in 0..40 {
            let phi = random_vector(h.dim(), &mut rng);
            if phi.is_zero() {
                continue;
            }
            let c = DoubleCover::new(s, random_cocycle(s, &h, &phi, &mut rng)).unwrap();
            let (pa, pb) = (c.psi.eval(&t.alpha), c.psi.eval(&t.beta));
            // the cocycle value on a loop is the functional on its class
            assert_eq!(pa, phi.dot(&h.class_of(&t.alpha).unwrap()));
            let (la, end) = c.lift_walk(&t.alpha, false).unwrap();
            assert_eq!(end, pa);
            assert_eq!(la.is_closed(), !pa);
            let lt = lift_triple(&c, t).unwrap();
            assert_eq!(lt.kind, LiftKind::from_values(pa, pb));
            if let Some(up) = lt.triple {
                seen_closed = true;
                // each crossing downstairs lifts to one crossing of alpha~ with a lift of beta
                let other = lt.other_beta.unwrap();
                let n1 = up.n();
                let n2 = curve_towers::surface::crossings(&c.total, &up.alpha, &other)
                    .unwrap()
                    .len();
                assert_eq!(n1 + n2, t.n(), "{}", ex.name);
                assert_eq!(up.tau.start(), up.alpha.start());
                assert_eq!(c.project_vertex(up.tau.end()), t.beta.start());
            }
        }
        assert!(seen_closed, "{}: no closed lift in 40 draws", ex.name);
    }
}

#[test]
fn fiber_permutations_match_the_cocycle_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let s = standard_polygon(2);
    let h = H1Space::new(&s);
    let phi1 = F2Vector::unit(h.dim(), 0);
    let c1 = DoubleCover::new(&s, random_cocycle(&s, &h, &phi1, &mut rng)).unwrap();
    let mut tw = Tower::new();
    tw.push(c1.clone());
    for g in pi1_generators(&s, 0) {
        let p = fiber_permutation(&tw, 0, &g);
        let flip = c1.psi.eval_darts(&g) as usize;
        assert_eq!(p, vec![flip, 1 ^ flip]);
    }

    let h1 = H1Space::new(&c1.total);
    let phi2 = random_vector(h1.dim(), &mut rng);
    let phi2 = if phi2.is_zero() {
        F2Vector::unit(h1.dim(), 0)
    } else {
        phi2
    };
    tw.push(DoubleCover::new(&c1.total, random_cocycle(&c1.total, &h1, &phi2, &mut rng)).unwrap());
    assert_eq!(tw.height(), 2);
    assert_eq!(tw.based_lift(0), 0);
    let gens = pi1_generators(&s, 0);
    // the generated group acts transitively on a connected cover
    let mut orbit = [false; 4];
    orbit[0] = true;
    let perms: Vec<Vec<usize>> = gens.iter().map(|g| fiber_permutation(&tw, 0, g)).collect();
    for p in &perms {
        let mut sorted = p.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
    }
    for _ in 0..4 {
        for p in &perms {
            for i in 0..4 {
                if orbit[i] {
                    orbit[p[i]] = true;
                }
            }
        }
    }
    assert!(orbit.iter().all(|&x| x));
}
