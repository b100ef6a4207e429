//! Regular double covers from cocycles, lifting, towers and monodromy.
//!
//! Vertex `u` of the base has lifts `2u` and `2u + 1`. The two lifts of base
//! edge `e` are total edges `2e` and `2e + 1`, indexed by the sheet at the
//! tail of dart `2e`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::Cocycle;
use crate::surface::{CurveArcTriple, Dart, EdgeWalk, Surface};

#[derive(Clone, Debug)]
pub struct DoubleCover {
    pub base: Surface,
    pub total: Surface,
    pub psi: Cocycle,
}

impl DoubleCover {
    pub fn new(base: &Surface, psi: Cocycle) -> Result<DoubleCover> {
        psi.check(base)?;
        if is_coboundary(base, &psi) {
            return Err(Error::CoboundaryCocycle);
        }
        let rotations: Vec<Vec<Dart>> = (0..2 * base.num_vertices())
            .map(|x| {
                let (u, sheet) = (x / 2, x % 2 == 1);
                base.rotation(u).iter().map(|&d| lift_dart(&psi, d, sheet)).collect()
            })
            .collect();
        let total = Surface::from_rotations(rotations, |walk| {
            base.is_boundary_face(base.face_of(project_dart(walk[0])))
        })?;
        Ok(DoubleCover {
            base: base.clone(),
            total,
            psi,
        })
    }

    /// The lift of base dart `d` whose tail lies on `sheet`.
    pub fn lift(&self, d: Dart, sheet: bool) -> Dart {
        lift_dart(&self.psi, d, sheet)
    }

    pub fn project(&self, d: Dart) -> Dart {
        project_dart(d)
    }

    pub fn project_vertex(&self, x: usize) -> usize {
        x / 2
    }

    pub fn sheet_of_vertex(&self, x: usize) -> bool {
        x % 2 == 1
    }

    pub fn deck(&self, d: Dart) -> Dart {
        let sheet = self.sheet_of_vertex(self.total.tail(d));
        self.lift(self.project(d), !sheet)
    }

    /// Lift a base walk starting on `sheet` over its start vertex. Returns the
    /// lifted darts and the sheet where the lift ends.
    pub fn lift_darts(&self, darts: &[Dart], sheet: bool) -> (Vec<Dart>, bool) {
        let mut at = sheet;
        let mut out = Vec::with_capacity(darts.len());
        for &d in darts {
            out.push(self.lift(d, at));
            at ^= self.psi.value(d.edge());
        }
        (out, at)
    }

    pub fn lift_walk(&self, walk: &EdgeWalk, sheet: bool) -> Result<(EdgeWalk, bool)> {
        let (darts, end) = self.lift_darts(walk.darts(), sheet);
        let start = 2 * walk.start() + sheet as usize;
        let lifted = if walk.is_closed() && end == sheet {
            EdgeWalk::closed(&self.total, darts)?
        } else {
            EdgeWalk::path(&self.total, start, darts)?
        };
        Ok((lifted, end))
    }
}

fn lift_dart(psi: &Cocycle, d: Dart, sheet: bool) -> Dart {
    let e = d.edge();
    let canonical_sheet = if d.is_reversed() { sheet ^ psi.value(e) } else { sheet };
    Dart::new(2 * e + canonical_sheet as usize, d.is_reversed())
}

fn project_dart(d: Dart) -> Dart {
    Dart::new(d.edge() / 2, d.is_reversed())
}

/// True when `psi` is the coboundary of a vertex function.
pub fn is_coboundary(s: &Surface, psi: &Cocycle) -> bool {
    let mut pot: Vec<Option<bool>> = vec![None; s.num_vertices()];
    pot[0] = Some(false);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let pv = pot[v].unwrap();
        for &d in s.rotation(v) {
            let w = s.head(d);
            let want = pv ^ psi.value(d.edge());
            match pot[w] {
                None => {
                    pot[w] = Some(want);
                    queue.push_back(w);
                }
                Some(p) if p != want => return false,
                _ => {}
            }
        }
    }
    true
}

pub fn build_double_cover(s: &Surface, psi: Cocycle) -> Result<DoubleCover> {
    DoubleCover::new(s, psi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LiftKind {
    Closed,
    PartiallyClosed { alpha_closed: bool },
    Nonclosed,
}

impl LiftKind {
    pub fn from_values(psi_alpha: bool, psi_beta: bool) -> LiftKind {
        match (psi_alpha, psi_beta) {
            (false, false) => LiftKind::Closed,
            (true, true) => LiftKind::Nonclosed,
            (a, _) => LiftKind::PartiallyClosed { alpha_closed: !a },
        }
    }

    pub fn is_partially_closed(self) -> bool {
        matches!(self, LiftKind::PartiallyClosed { .. })
    }
}

/// Result of lifting a triple to a double cover at the basepoint's sheet 0.
#[derive(Clone, Debug)]
pub struct LiftedTriple {
    pub kind: LiftKind,
    /// The lifted triple with beta through the end of the lifted tau.
    pub triple: Option<CurveArcTriple>,
    /// The other lift of beta, when beta lifts closed.
    pub other_beta: Option<EdgeWalk>,
}

pub fn lift_triple(c: &DoubleCover, t: &CurveArcTriple) -> Result<LiftedTriple> {
    let kind = LiftKind::from_values(c.psi.eval(&t.alpha), c.psi.eval(&t.beta));
    if kind != LiftKind::Closed {
        return Ok(LiftedTriple {
            kind,
            triple: None,
            other_beta: None,
        });
    }
    let (alpha, _) = c.lift_walk(&t.alpha, false)?;
    let (tau, w_sheet) = c.lift_walk(&t.tau, false)?;
    let (beta, _) = c.lift_walk(&t.beta, w_sheet)?;
    let (other, _) = c.lift_walk(&t.beta, !w_sheet)?;
    let triple = CurveArcTriple::new(c.total.clone(), alpha, beta, tau)?;
    Ok(LiftedTriple {
        kind,
        triple: Some(triple),
        other_beta: Some(other),
    })
}

/// Successive double covers, each over the previous total surface.
#[derive(Clone, Debug, Default)]
pub struct Tower {
    pub levels: Vec<DoubleCover>,
}

impl Tower {
    pub fn new() -> Tower {
        Tower::default()
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn push(&mut self, c: DoubleCover) {
        self.levels.push(c);
    }

    pub fn top(&self) -> Option<&Surface> {
        self.levels.last().map(|c| &c.total)
    }

    /// Base vertex `v` lifted to sheet 0 at every level.
    pub fn based_lift(&self, v: usize) -> usize {
        v << self.levels.len()
    }
}

/// The action of based loops on the fiber over the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monodromy {
    pub degree: usize,
    pub permutations: Vec<Vec<usize>>,
}

/// Permutation of the `2^k` fiber points over `v` induced by a closed walk.
/// Fiber point `i` is the vertex `v * 2^k + i` of the top surface.
pub fn fiber_permutation(tw: &Tower, v: usize, walk: &[Dart]) -> Vec<usize> {
    let k = tw.height();
    let degree = 1usize << k;
    (0..degree)
        .map(|i| {
            let mut darts = walk.to_vec();
            let mut x = v;
            for (level, c) in tw.levels.iter().enumerate() {
                let sheet = (i >> (k - 1 - level)) & 1 == 1;
                darts = c.lift_darts(&darts, sheet).0;
                x = 2 * x + sheet as usize;
            }
            let end = match darts.last() {
                Some(&d) => tw.levels[k - 1].total.head(d),
                None => x,
            };
            end - (v << k)
        })
        .collect()
}

pub fn monodromy(tw: &Tower, v: usize, generators: &[Vec<Dart>]) -> Monodromy {
    Monodromy {
        degree: 1 << tw.height(),
        permutations: generators.iter().map(|g| fiber_permutation(tw, v, g)).collect(),
    }
}

/// Generators of the fundamental group at `v`: one loop per edge outside a
/// breadth-first spanning tree.
pub fn pi1_generators(s: &Surface, v: usize) -> Vec<Vec<Dart>> {
    let parent = s.bfs_tree(v);
    let mut in_tree = vec![false; s.num_edges()];
    for d in parent.iter().flatten() {
        in_tree[d.edge()] = true;
    }
    let path = |mut x: usize| -> Vec<Dart> {
        let mut p = Vec::new();
        while let Some(d) = parent[x] {
            p.push(d);
            x = s.tail(d);
        }
        p.reverse();
        p
    };
    (0..s.num_edges())
        .filter(|&e| !in_tree[e])
        .map(|e| {
            let d = Dart::new(e, false);
            let mut w = path(s.tail(d));
            w.push(d);
            w.extend(path(s.head(d)).iter().rev().map(|x| x.partner()));
            w
        })
        .collect()
}
