//! First homology with F2 coefficients, cocycles and the intersection form.
//!
//! The basis comes from a tree-cotree decomposition: a breadth-first spanning
//! tree of the vertices, a breadth-first spanning tree of the dual graph on
//! filled faces (all boundary faces collapse to one dual root), and the
//! leftover edges. Each leftover edge is one basis vector.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{Echelon, F2Vector};
use crate::surface::{Dart, EdgeWalk, Surface};

#[derive(Clone, Debug)]
pub struct H1Space {
    n_edges: usize,
    dim: usize,
    /// Coordinates of each edge's homology image.
    image: Vec<F2Vector>,
    basis_edges: Vec<usize>,
    reps: Vec<Vec<Dart>>,
    root: usize,
    gram: Vec<F2Vector>,
}

impl H1Space {
    pub fn new(s: &Surface) -> H1Space {
        let n_edges = s.num_edges();
        let root = 0;
        let parent = s.bfs_tree(root);
        let mut in_tree = vec![false; n_edges];
        for d in parent.iter().flatten() {
            in_tree[d.edge()] = true;
        }

        // dual nodes: filled faces, plus one node for all boundary faces
        let nf = s.num_faces();
        let has_boundary = !s.is_closed();
        let infinity = nf;
        let node = |f: usize| if s.is_boundary_face(f) { infinity } else { f };
        let dual_root = if has_boundary {
            infinity
        } else {
            (0..nf).find(|&f| !s.is_boundary_face(f)).unwrap_or(0)
        };
        let mut seen = vec![false; nf + 1];
        seen[dual_root] = true;
        // for each face reached, the edge used to reach it
        let mut via: Vec<Option<usize>> = vec![None; nf + 1];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([dual_root]);
        let faces_of_node = |n: usize| -> Vec<usize> {
            if n == infinity {
                (0..nf).filter(|&f| s.is_boundary_face(f)).collect()
            } else {
                vec![n]
            }
        };
        while let Some(n) = queue.pop_front() {
            for f in faces_of_node(n) {
                for &d in s.face(f) {
                    if in_tree[d.edge()] {
                        continue;
                    }
                    let m = node(s.face_of(d.partner()));
                    if !seen[m] {
                        seen[m] = true;
                        via[m] = Some(d.edge());
                        order.push(m);
                        queue.push_back(m);
                    }
                }
            }
        }
        let mut in_cotree = vec![false; n_edges];
        for e in via.iter().flatten() {
            in_cotree[*e] = true;
        }
        let basis_edges: Vec<usize> = (0..n_edges).filter(|&e| !in_tree[e] && !in_cotree[e]).collect();
        let dim = basis_edges.len();
        let mut image = vec![F2Vector::zeros(dim); n_edges];
        for (j, &e) in basis_edges.iter().enumerate() {
            image[e] = F2Vector::unit(dim, j);
        }
        // cotree edges, leaves first: the face relation of the child face
        for &m in order.iter().rev() {
            let c = via[m].unwrap();
            let mut acc = F2Vector::zeros(dim);
            for &d in s.face(m) {
                if d.edge() != c {
                    acc.add_assign(&image[d.edge()]);
                }
            }
            image[c] = acc;
        }

        let path_from_root = |v: usize| -> Vec<Dart> {
            let mut p = Vec::new();
            let mut x = v;
            while let Some(d) = parent[x] {
                p.push(d);
                x = s.tail(d);
            }
            p.reverse();
            p
        };
        let reps: Vec<Vec<Dart>> = basis_edges
            .iter()
            .map(|&e| {
                let d = Dart::new(e, false);
                let mut w = path_from_root(s.tail(d));
                w.push(d);
                w.extend(path_from_root(s.head(d)).iter().rev().map(|x| x.partner()));
                w
            })
            .collect();
        let mut h = H1Space {
            n_edges,
            dim,
            image,
            basis_edges,
            reps,
            root,
            gram: Vec::new(),
        };
        let pushoffs: Vec<Cocycle> = h.reps.iter().map(|r| pushoff_cocycle(s, r)).collect();
        h.gram = (0..dim)
            .map(|j| {
                let mut row = F2Vector::zeros(dim);
                for (k, psi) in pushoffs.iter().enumerate() {
                    row.set(k, psi.eval_darts(&h.reps[j]));
                }
                row
            })
            .collect();
        h
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_edges(&self) -> usize {
        self.n_edges
    }

    pub fn edge_image(&self, e: usize) -> &F2Vector {
        &self.image[e]
    }

    pub fn basis_edges(&self) -> &[usize] {
        &self.basis_edges
    }

    /// Closed walks at the root vertex representing the basis.
    pub fn representatives(&self) -> &[Vec<Dart>] {
        &self.reps
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Class of a mod-2 edge chain (meaningful for cycles).
    pub fn class_of_chain(&self, chain: &F2Vector) -> F2Vector {
        let mut out = F2Vector::zeros(self.dim);
        for e in chain.ones() {
            out.add_assign(&self.image[e]);
        }
        out
    }

    pub fn class_of_darts(&self, darts: &[Dart]) -> F2Vector {
        let mut out = F2Vector::zeros(self.dim);
        for d in darts {
            out.add_assign(&self.image[d.edge()]);
        }
        out
    }

    pub fn class_of(&self, walk: &EdgeWalk) -> Result<F2Vector> {
        if !walk.is_closed() {
            return Err(Error::InvalidWalk("homology class of an open walk".into()));
        }
        Ok(self.class_of_darts(walk.darts()))
    }

    /// Mod-2 intersection number of two classes.
    pub fn pairing(&self, x: &F2Vector, y: &F2Vector) -> bool {
        let mut acc = false;
        for j in x.ones() {
            acc ^= self.gram[j].dot(y);
        }
        acc
    }

    pub fn gram(&self) -> &[F2Vector] {
        &self.gram
    }

    /// The cocycle whose value on every closed walk is `phi` of its class.
    pub fn cocycle_from_functional(&self, phi: &F2Vector) -> Cocycle {
        assert_eq!(phi.len(), self.dim);
        let mut bits = F2Vector::zeros(self.n_edges);
        for e in 0..self.n_edges {
            if self.image[e].dot(phi) {
                bits.set(e, true);
            }
        }
        Cocycle { bits }
    }

    /// The functional on H1 induced by a cocycle.
    pub fn functional_of(&self, psi: &Cocycle) -> F2Vector {
        let mut phi = F2Vector::zeros(self.dim);
        for (j, rep) in self.reps.iter().enumerate() {
            phi.set(j, psi.eval_darts(rep));
        }
        phi
    }

    /// The functional `x -> <x, y>`.
    pub fn pairing_functional(&self, y: &F2Vector) -> F2Vector {
        let mut phi = F2Vector::zeros(self.dim);
        for j in 0..self.dim {
            phi.set(j, self.gram[j].dot(y));
        }
        phi
    }
}

/// The cocycle counting crossings with the push-off of `walk` to its left.
pub fn pushoff_cocycle(s: &Surface, walk: &[Dart]) -> Cocycle {
    let mut bits = F2Vector::zeros(s.num_edges());
    let n = walk.len();
    for i in 0..n {
        let out = walk[(i + 1) % n];
        let back = walk[i].partner();
        let mut x = s.rot_next(out);
        while x != back {
            bits.flip(x.edge());
            x = s.rot_next(x);
        }
    }
    Cocycle { bits }
}

/// An F2 assignment on edges with zero sum around every filled face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cocycle {
    pub bits: F2Vector,
}

impl Cocycle {
    pub fn zero(n_edges: usize) -> Cocycle {
        Cocycle {
            bits: F2Vector::zeros(n_edges),
        }
    }

    pub fn value(&self, e: usize) -> bool {
        self.bits.get(e)
    }

    pub fn eval_darts(&self, darts: &[Dart]) -> bool {
        darts.iter().fold(false, |acc, d| acc ^ self.bits.get(d.edge()))
    }

    pub fn eval(&self, walk: &EdgeWalk) -> bool {
        self.eval_darts(walk.darts())
    }

    /// Check the face condition on every filled face.
    pub fn check(&self, s: &Surface) -> Result<()> {
        if self.bits.len() != s.num_edges() {
            return Err(Error::Precondition("cocycle length does not match edge count".into()));
        }
        for f in 0..s.num_faces() {
            if !s.is_boundary_face(f) && self.eval_darts(s.face(f)) {
                return Err(Error::Precondition(format!("cocycle is odd around face {f}")));
            }
        }
        Ok(())
    }

    pub fn is_coboundary(&self, h: &H1Space) -> bool {
        h.functional_of(self).is_zero()
    }
}

/// H1 modulo the span of some classes.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    ambient_dim: usize,
    killed: Echelon,
    free: Vec<usize>,
}

impl QuotientSpace {
    pub fn new(ambient_dim: usize, killed: &[F2Vector]) -> QuotientSpace {
        let killed = Echelon::from_vectors(ambient_dim, killed.iter());
        let free = killed.free_columns();
        QuotientSpace {
            ambient_dim,
            killed,
            free,
        }
    }

    /// Quotient by the span of a single nonzero class.
    pub fn by_class(h: &H1Space, beta: &F2Vector) -> Result<QuotientSpace> {
        if beta.is_zero() {
            return Err(Error::Precondition("cannot quotient by the zero class".into()));
        }
        Ok(QuotientSpace::new(h.dim(), std::slice::from_ref(beta)))
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn project(&self, x: &F2Vector) -> F2Vector {
        let r = self.killed.reduce(x);
        let mut out = F2Vector::zeros(self.free.len());
        for (i, &c) in self.free.iter().enumerate() {
            if r.get(c) {
                out.set(i, true);
            }
        }
        out
    }

    /// A functional on the quotient as a functional on the ambient space.
    pub fn lift_functional(&self, phi: &F2Vector) -> F2Vector {
        let mut out = F2Vector::zeros(self.ambient_dim);
        for j in 0..self.ambient_dim {
            if self.project(&F2Vector::unit(self.ambient_dim, j)).dot(phi) {
                out.set(j, true);
            }
        }
        out
    }
}

/// All functionals on an F2 space of dimension `dim`, filtered by affine
/// constraints `f(v) = b`, in increasing order of their bit mask.
pub fn enumerate_functionals<'a>(
    dim: usize,
    constraints: &'a [(F2Vector, bool)],
    nonzero: bool,
    cap: usize,
) -> Result<impl Iterator<Item = F2Vector> + 'a> {
    if dim > cap || dim > 63 {
        return Err(Error::CapExceeded {
            what: "functional enumeration dimension",
            needed: dim as u64,
            cap: cap.min(63) as u64,
        });
    }
    let start = u64::from(nonzero);
    Ok((start..1u64 << dim)
        .map(move |m| F2Vector::from_mask(dim, m))
        .filter(move |f| constraints.iter().all(|(v, b)| f.dot(v) == *b)))
}
