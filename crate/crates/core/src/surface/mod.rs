//! Closed and bordered oriented surfaces as rotation systems.
//!
//! Every edge `e` owns the two darts `2e` and `2e + 1`; the dart involution is
//! `d ^ 1`. A dart leaves the vertex in whose rotation it is listed, and the
//! rotation lists darts counterclockwise. The face to the right of a dart `d`
//! continues with `rot_next(partner(d))`, so face walks run clockwise.

mod curves;
mod cut;
mod double;
mod minimal;
mod schema;
mod walk;

pub use curves::{crossings, Crossing, CrossingSet, CurveArcTriple};
pub use cut::{cut_along, cut_along_edges, CutPiece, CutResult};
pub use double::{double, Doubled};
pub use minimal::{
    is_minimal_position, overlay_regions, reduce_to_minimal, FaceComplex, MinimalityWitness, Reduction, Region,
};
pub use schema::{build_surface, BuiltInput, CurvesSpec, EdgeSpec, FaceSpec, InputSpec, VertexSpec};
pub use walk::{concatenate, EdgeWalk};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A half-edge. Edge `e` owns darts `2e` and `2e + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dart(pub usize);

impl Dart {
    #[inline]
    pub fn new(edge: usize, reversed: bool) -> Dart {
        Dart(2 * edge + reversed as usize)
    }

    #[inline]
    pub fn edge(self) -> usize {
        self.0 >> 1
    }

    #[inline]
    pub fn partner(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    /// True for the second dart `2e + 1` of its edge.
    #[inline]
    pub fn is_reversed(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Debug for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

/// An oriented surface given by a rotation system, possibly with some faces
/// left unfilled (boundary components).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surface {
    tail: Vec<usize>,
    rot_next: Vec<Dart>,
    rot_prev: Vec<Dart>,
    face_of: Vec<usize>,
    rotations: Vec<Vec<Dart>>,
    faces: Vec<Vec<Dart>>,
    boundary: Vec<bool>,
}

impl Surface {
    /// Build from counterclockwise rotations; faces are traced. `boundary`
    /// decides, from a traced face walk, whether it is left unfilled.
    pub fn from_rotations(rotations: Vec<Vec<Dart>>, mut boundary: impl FnMut(&[Dart]) -> bool) -> Result<Surface> {
        let n_darts: usize = rotations.iter().map(Vec::len).sum();
        if !n_darts.is_multiple_of(2) {
            return Err(Error::InvalidSurface("odd number of darts".into()));
        }
        let mut tail = vec![usize::MAX; n_darts];
        let mut rot_next = vec![Dart(0); n_darts];
        let mut rot_prev = vec![Dart(0); n_darts];
        for (v, rot) in rotations.iter().enumerate() {
            if rot.is_empty() {
                return Err(Error::InvalidSurface(format!("vertex {v} is isolated")));
            }
            for (i, &d) in rot.iter().enumerate() {
                if d.0 >= n_darts {
                    return Err(Error::InvalidSurface(format!("dart {} out of range", d.0)));
                }
                if tail[d.0] != usize::MAX {
                    return Err(Error::InvalidSurface(format!("dart {} listed at two vertices", d.0)));
                }
                tail[d.0] = v;
                let next = rot[(i + 1) % rot.len()];
                rot_next[d.0] = next;
                rot_prev[next.0] = d;
            }
        }
        let mut face_of = vec![usize::MAX; n_darts];
        let mut faces = Vec::new();
        let mut flags = Vec::new();
        for start in 0..n_darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = Dart(start);
            loop {
                face_of[d.0] = faces.len();
                walk.push(d);
                d = rot_next[d.partner().0];
                if d.0 == start {
                    break;
                }
            }
            flags.push(boundary(&walk));
            faces.push(walk);
        }
        let s = Surface {
            tail,
            rot_next,
            rot_prev,
            face_of,
            rotations,
            faces,
            boundary: flags,
        };
        s.check_connected()?;
        Ok(s)
    }

    /// Build from face walks; vertices are recovered as orbits of
    /// `d -> face_next(partner(d))`. The complex must be connected.
    pub fn from_faces(n_darts: usize, faces: Vec<Vec<Dart>>, boundary: Vec<bool>) -> Result<Surface> {
        let mut comps = components_from_faces(n_darts, &faces, &boundary)?;
        if comps.len() != 1 {
            return Err(Error::InvalidSurface(format!(
                "complex has {} connected components",
                comps.len()
            )));
        }
        let (surface, _) = comps.pop().unwrap();
        Ok(surface)
    }

    fn check_connected(&self) -> Result<()> {
        if self.rotations.is_empty() {
            return Err(Error::InvalidSurface("no vertices".into()));
        }
        let mut seen = vec![false; self.rotations.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &d in &self.rotations[v] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::InvalidSurface("complex is disconnected".into()))
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_edges(&self) -> usize {
        self.tail.len() / 2
    }

    pub fn num_darts(&self) -> usize {
        self.tail.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn num_filled_faces(&self) -> usize {
        self.boundary.iter().filter(|&&b| !b).count()
    }

    pub fn num_boundary_components(&self) -> usize {
        self.boundary.iter().filter(|&&b| b).count()
    }

    pub fn is_closed(&self) -> bool {
        self.num_boundary_components() == 0
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_filled_faces() as i64
    }

    /// Genus from `chi = 2 - 2g - b`.
    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic() - self.num_boundary_components() as i64) / 2
    }

    #[inline]
    pub fn tail(&self, d: Dart) -> usize {
        self.tail[d.0]
    }

    #[inline]
    pub fn head(&self, d: Dart) -> usize {
        self.tail[d.partner().0]
    }

    /// Next dart counterclockwise around `tail(d)`.
    #[inline]
    pub fn rot_next(&self, d: Dart) -> Dart {
        self.rot_next[d.0]
    }

    #[inline]
    pub fn rot_prev(&self, d: Dart) -> Dart {
        self.rot_prev[d.0]
    }

    /// The dart after `d` along the face on the right of `d`.
    #[inline]
    pub fn face_next(&self, d: Dart) -> Dart {
        self.rot_next[d.partner().0]
    }

    #[inline]
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d.0]
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotations
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn face(&self, f: usize) -> &[Dart] {
        &self.faces[f]
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn is_boundary_face(&self, f: usize) -> bool {
        self.boundary[f]
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.num_darts()).map(Dart)
    }

    /// Position of `d` counterclockwise from `from` around their common vertex.
    pub fn ccw_offset(&self, from: Dart, d: Dart) -> usize {
        debug_assert_eq!(self.tail(from), self.tail(d));
        let mut k = 0;
        let mut x = from;
        while x != d {
            x = self.rot_next(x);
            k += 1;
        }
        k
    }

    /// Breadth-first spanning tree from `root`: for each vertex the dart used
    /// to reach it (`None` at the root). Rotation order breaks ties.
    pub fn bfs_tree(&self, root: usize) -> Vec<Option<Dart>> {
        let mut parent = vec![None; self.num_vertices()];
        let mut seen = vec![false; self.num_vertices()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &d in &self.rotations[v] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Shortest path of darts from `from` to `to`.
    pub fn shortest_path(&self, from: usize, to: usize) -> Vec<Dart> {
        let parent = self.bfs_tree(from);
        let mut path = Vec::new();
        let mut v = to;
        while let Some(d) = parent[v] {
            path.push(d);
            v = self.tail(d);
        }
        path.reverse();
        path
    }

    /// Check that every face walk is consistent with the rotation system.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_darts();
        let mut count = vec![0usize; n];
        for (f, walk) in self.faces.iter().enumerate() {
            for (i, &d) in walk.iter().enumerate() {
                count[d.0] += 1;
                let next = walk[(i + 1) % walk.len()];
                if self.face_next(d) != next {
                    return Err(Error::InvalidSurface(format!(
                        "face {f} does not follow the rotation after dart {}",
                        d.0
                    )));
                }
            }
        }
        if let Some(d) = count.iter().position(|&c| c != 1) {
            return Err(Error::InvalidSurface(format!(
                "dart {d} appears {} times in face walks",
                count[d]
            )));
        }
        self.check_connected()
    }
}

/// Assemble a complex from face walks and split it into connected surfaces.
/// Each component comes with the map from its local darts to input darts.
pub(crate) fn components_from_faces(
    n_darts: usize,
    faces: &[Vec<Dart>],
    boundary: &[bool],
) -> Result<Vec<(Surface, Vec<Dart>)>> {
    if !n_darts.is_multiple_of(2) {
        return Err(Error::InvalidSurface("odd number of darts".into()));
    }
    let mut face_next = vec![None; n_darts];
    let mut face_of = vec![usize::MAX; n_darts];
    for (f, walk) in faces.iter().enumerate() {
        if walk.is_empty() {
            return Err(Error::InvalidSurface(format!("face {f} is empty")));
        }
        for (i, &d) in walk.iter().enumerate() {
            if d.0 >= n_darts {
                return Err(Error::InvalidSurface(format!("dart {} out of range", d.0)));
            }
            if face_of[d.0] != usize::MAX {
                return Err(Error::InvalidSurface(format!("dart {} lies in two faces", d.0)));
            }
            face_of[d.0] = f;
            face_next[d.0] = Some(walk[(i + 1) % walk.len()]);
        }
    }
    if let Some(d) = face_of.iter().position(|&f| f == usize::MAX) {
        return Err(Error::InvalidSurface(format!("dart {d} lies in no face")));
    }
    let face_next: Vec<Dart> = face_next.into_iter().map(Option::unwrap).collect();
    // rotation: sigma(x) = face_next(partner(x))
    let sigma = |x: Dart| face_next[x.partner().0];

    // components over darts, connected by partner and face_next
    let mut comp = vec![usize::MAX; n_darts];
    let mut n_comp = 0;
    for s in 0..n_darts {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = n_comp;
        while let Some(x) = stack.pop() {
            for y in [Dart(x).partner().0, face_next[x].0] {
                if comp[y] == usize::MAX {
                    comp[y] = n_comp;
                    stack.push(y);
                }
            }
        }
        n_comp += 1;
    }

    let mut out = Vec::with_capacity(n_comp);
    for c in 0..n_comp {
        // local edge numbering follows global edge order
        let mut local_of = vec![usize::MAX; n_darts];
        let mut back = Vec::new();
        for e in 0..n_darts / 2 {
            if comp[2 * e] == c {
                local_of[2 * e] = back.len();
                back.push(Dart(2 * e));
                local_of[2 * e + 1] = back.len();
                back.push(Dart(2 * e + 1));
            }
        }
        let mut vertex_of = vec![usize::MAX; n_darts];
        let mut rotations = Vec::new();
        for &g in &back {
            if vertex_of[g.0] != usize::MAX {
                continue;
            }
            let v = rotations.len();
            let mut rot = Vec::new();
            let mut x = g;
            loop {
                vertex_of[x.0] = v;
                rot.push(Dart(local_of[x.0]));
                x = sigma(x);
                if x == g {
                    break;
                }
            }
            rotations.push(rot);
        }
        let n_local = back.len();
        let mut tail = vec![0; n_local];
        let mut rot_next = vec![Dart(0); n_local];
        let mut rot_prev = vec![Dart(0); n_local];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                tail[d.0] = v;
                let nx = rot[(i + 1) % rot.len()];
                rot_next[d.0] = nx;
                rot_prev[nx.0] = d;
            }
        }
        let mut local_faces = Vec::new();
        let mut flags = Vec::new();
        let mut lface_of = vec![0; n_local];
        for (f, walk) in faces.iter().enumerate() {
            if comp[walk[0].0] != c {
                continue;
            }
            let lf = local_faces.len();
            let lw: Vec<Dart> = walk.iter().map(|d| Dart(local_of[d.0])).collect();
            for d in &lw {
                lface_of[d.0] = lf;
            }
            local_faces.push(lw);
            flags.push(boundary[f]);
        }
        out.push((
            Surface {
                tail,
                rot_next,
                rot_prev,
                face_of: lface_of,
                rotations,
                faces: local_faces,
                boundary: flags,
            },
            back,
        ));
    }
    Ok(out)
}

/// The closed genus-`g` surface with one vertex, `2g` edges and one face
/// with boundary word `a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1`.
/// Edge `2i` is `a_{i+1}` and edge `2i+1` is `b_{i+1}`.
pub fn standard_polygon(genus: usize) -> Surface {
    assert!(genus >= 1, "standard polygon needs genus >= 1");
    let face: Vec<Dart> = (0..genus)
        .flat_map(|i| {
            let a = 2 * i;
            let b = 2 * i + 1;
            [
                Dart::new(a, false),
                Dart::new(b, false),
                Dart::new(a, true),
                Dart::new(b, true),
            ]
        })
        .collect();
    Surface::from_faces(4 * genus, vec![face], vec![false]).expect("standard polygon is valid")
}
