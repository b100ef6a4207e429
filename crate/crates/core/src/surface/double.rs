use std::collections::HashMap;

use super::{Dart, EdgeWalk, Surface};
use crate::error::{Error, Result};

/// The closed double of a bordered surface.
#[derive(Clone, Debug)]
pub struct Doubled {
    pub surface: Surface,
    /// Image in the double of each dart of the original surface.
    pub embed: Vec<Dart>,
    /// The fold map: each dart of the double to the dart of the original it covers.
    pub retract: Vec<Dart>,
    /// Set when `2g + b < 3`, where the double carries nothing useful.
    pub warning: Option<String>,
}

impl Doubled {
    pub fn embed_walk(&self, original: &Surface, w: &EdgeWalk) -> Result<EdgeWalk> {
        let darts: Vec<Dart> = w.darts().iter().map(|d| self.embed[d.0]).collect();
        if w.is_closed() {
            EdgeWalk::closed(&self.surface, darts)
        } else {
            EdgeWalk::path(&self.surface, self.embed_vertex(original, w.start()), darts)
        }
    }

    pub fn embed_vertex(&self, original: &Surface, v: usize) -> usize {
        self.surface.tail(self.embed[original.rotation(v)[0].0])
    }

    pub fn retract_darts(&self, darts: &[Dart]) -> Vec<Dart> {
        darts.iter().map(|d| self.retract[d.0]).collect()
    }
}

/// Glue a mirror copy of `s` along its boundary.
pub fn double(s: &Surface) -> Result<Doubled> {
    let b = s.num_boundary_components();
    if b == 0 {
        return Err(Error::Precondition("surface is already closed".into()));
    }
    let g = s.genus();
    let twice = 2 * g + b as i64;
    let warning = (twice < 3).then(|| format!("2g + b = {twice} < 3"));
    let n = s.num_darts();
    let on_boundary: Vec<bool> = s.darts().map(|d| s.is_boundary_face(s.face_of(d))).collect();
    for e in 0..s.num_edges() {
        if on_boundary[2 * e] && on_boundary[2 * e + 1] {
            return Err(Error::Precondition(format!("edge {e} has boundary on both sides")));
        }
    }
    let mut seen = vec![false; s.num_vertices()];
    for f in (0..s.num_faces()).filter(|&f| s.is_boundary_face(f)) {
        for &d in s.face(f) {
            if std::mem::replace(&mut seen[s.tail(d)], true) {
                return Err(Error::Precondition(format!(
                    "boundary passes through vertex {} twice",
                    s.tail(d)
                )));
            }
        }
    }
    // raw labels: copy A uses d, copy B uses n + d; a boundary dart's B-copy is
    // replaced by its A-copy so the two copies of that edge merge
    let label_b = |d: Dart| -> usize {
        if on_boundary[d.0] {
            d.0
        } else {
            n + d.0
        }
    };
    let mut faces_raw: Vec<Vec<usize>> = Vec::new();
    for f in 0..s.num_faces() {
        if s.is_boundary_face(f) {
            continue;
        }
        faces_raw.push(s.face(f).iter().map(|d| d.0).collect());
        faces_raw.push(s.face(f).iter().rev().map(|d| label_b(d.partner())).collect());
    }
    // compact the labels into edges
    let mut edge_of: HashMap<usize, usize> = HashMap::new();
    let mut retract = Vec::new();
    let mut relabel = |raw: usize, retract: &mut Vec<Dart>| -> Dart {
        let base = raw & !1;
        let next = edge_of.len();
        let e = *edge_of.entry(base).or_insert_with(|| {
            let orig = Dart(base % n);
            retract.push(orig);
            retract.push(orig.partner());
            next
        });
        Dart(2 * e + (raw & 1))
    };
    let faces: Vec<Vec<Dart>> = faces_raw
        .iter()
        .map(|w| w.iter().map(|&r| relabel(r, &mut retract)).collect())
        .collect();
    let n_new = retract.len();
    let nf = faces.len();
    let surface = Surface::from_faces(n_new, faces, vec![false; nf])?;
    let embed: Vec<Dart> = (0..n)
        .map(|d| {
            let e = edge_of[&(d & !1)];
            Dart(2 * e + (d & 1))
        })
        .collect();
    let expected = 2 * g + b as i64 - 1;
    if surface.genus() != expected {
        return Err(Error::InvalidSurface(format!(
            "double has genus {}, expected {expected}",
            surface.genus()
        )));
    }
    Ok(Doubled {
        surface,
        embed,
        retract,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::minimal::FaceComplex;
    use crate::surface::standard_polygon;

    #[test]
    fn closed_input_is_rejected() {
        assert!(double(&standard_polygon(2)).is_err());
    }

    /// Torus with one triangular hole: subdivide both edges, cone the face.
    fn punctured_torus() -> Surface {
        let mut cx = FaceComplex::of(&standard_polygon(1));
        cx.subdivide(0);
        cx.subdivide(1);
        cx.star(0);
        cx.boundary[0] = true;
        cx.build().unwrap()
    }

    #[test]
    fn pinched_boundary_is_rejected() {
        let s = standard_polygon(1);
        let mut cx = FaceComplex::of(&s);
        let w = cx.faces[0].clone();
        cx.add_chord(w[0], w[2]).unwrap();
        cx.boundary[0] = true;
        let pinched = cx.build().unwrap();
        assert!(double(&pinched).is_err());
    }

    #[test]
    fn punctured_torus_doubles_to_genus_two() {
        let bordered = punctured_torus();
        assert_eq!(bordered.euler_characteristic(), -1);
        assert_eq!(bordered.genus(), 1);
        let d = double(&bordered).unwrap();
        assert_eq!(d.surface.genus(), 2);
        assert_eq!(d.surface.euler_characteristic(), -2);
        assert!(d.warning.is_none());
        for x in bordered.darts() {
            assert_eq!(d.retract[d.embed[x.0].0], x);
        }
    }
}
