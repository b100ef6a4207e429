use super::{components_from_faces, Dart, EdgeWalk, Surface};
use crate::error::{Error, Result};

/// One connected piece of a cut surface.
#[derive(Clone, Debug)]
pub struct CutPiece {
    pub surface: Surface,
    /// For each local dart, the dart of the uncut surface running along it.
    pub origin: Vec<Dart>,
    /// True for darts on the new boundary created by the cut.
    pub on_cut: Vec<bool>,
}

impl CutPiece {
    /// The uncut vertex under a local vertex.
    pub fn vertex_origin(&self, original: &Surface, v: usize) -> usize {
        let d = self.surface.rotation(v)[0];
        original.tail(self.origin[d.0])
    }

    /// Local darts that keep an uncut face on their right.
    pub fn original_darts(&self) -> impl Iterator<Item = (Dart, Dart)> + '_ {
        (0..self.origin.len())
            .filter(|&i| !self.on_cut[i])
            .map(|i| (Dart(i), self.origin[i]))
    }

    /// Local dart whose origin is `d` and which is not a cut copy.
    pub fn local_of(&self, d: Dart) -> Option<Dart> {
        (0..self.origin.len())
            .find(|&i| !self.on_cut[i] && self.origin[i] == d)
            .map(Dart)
    }
}

/// Cut `s` open along every edge in `cut` (an edge mask). Each side of each
/// cut edge becomes its own edge and the gaps become boundary faces.
pub fn cut_along_edges(s: &Surface, cut: &[bool]) -> Result<Vec<CutPiece>> {
    let n = s.num_darts();
    let is_cut = |d: Dart| cut[d.edge()];
    // new dart index for every original dart; cut darts get their own edge
    let mut image = vec![Dart(0); n];
    let mut star = vec![None; n];
    let mut next_edge = 0usize;
    let mut origin = Vec::new();
    let mut on_cut = Vec::new();
    for e in 0..s.num_edges() {
        let (a, b) = (Dart(2 * e), Dart(2 * e + 1));
        if cut[e] {
            for x in [a, b] {
                image[x.0] = Dart(2 * next_edge);
                star[x.0] = Some(Dart(2 * next_edge + 1));
                origin.extend([x, x.partner()]);
                on_cut.extend([false, true]);
                next_edge += 1;
            }
        } else {
            image[a.0] = Dart(2 * next_edge);
            image[b.0] = Dart(2 * next_edge + 1);
            origin.extend([a, b]);
            on_cut.extend([false, false]);
            next_edge += 1;
        }
    }
    let mut faces: Vec<Vec<Dart>> = s
        .faces()
        .iter()
        .map(|w| w.iter().map(|d| image[d.0]).collect())
        .collect();
    let mut boundary: Vec<bool> = (0..s.num_faces()).map(|f| s.is_boundary_face(f)).collect();

    // hole faces: after x* comes (partner y)*, y the first cut dart clockwise from x
    let mut seen = vec![false; n];
    for x0 in s.darts().filter(|&d| is_cut(d)) {
        if seen[x0.0] {
            continue;
        }
        let mut walk = Vec::new();
        let mut x = x0;
        loop {
            seen[x.0] = true;
            walk.push(star[x.0].unwrap());
            let mut y = s.rot_prev(x);
            while !is_cut(y) {
                y = s.rot_prev(y);
            }
            x = y.partner();
            if x == x0 {
                break;
            }
        }
        faces.push(walk);
        boundary.push(true);
    }

    let comps = components_from_faces(2 * next_edge, &faces, &boundary)?;
    Ok(comps
        .into_iter()
        .map(|(surface, back)| CutPiece {
            origin: back.iter().map(|d| origin[d.0]).collect(),
            on_cut: back.iter().map(|d| on_cut[d.0]).collect(),
            surface,
        })
        .collect())
}

/// The two sides of a separating simple closed curve.
#[derive(Clone, Debug)]
pub struct CutResult {
    /// The side containing the faces to the right of the cycle.
    pub right: CutPiece,
    /// The side containing the faces to the left of the cycle.
    pub left: CutPiece,
}

pub fn cut_along(s: &Surface, cycle: &EdgeWalk) -> Result<CutResult> {
    if !cycle.is_closed() || cycle.is_empty() {
        return Err(Error::NotEmbedded("cycle must be a nonempty closed walk".into()));
    }
    if !cycle.is_vertex_simple(s) {
        return Err(Error::NotEmbedded("cycle revisits a vertex".into()));
    }
    let mut mask = vec![false; s.num_edges()];
    for d in cycle.darts() {
        if mask[d.edge()] {
            return Err(Error::NotEmbedded(format!("edge {} used twice", d.edge())));
        }
        mask[d.edge()] = true;
    }
    let mut pieces = cut_along_edges(s, &mask)?;
    match pieces.len() {
        1 => Err(Error::NonSeparating),
        2 => {
            let first = cycle.darts()[0];
            let right_has = |p: &CutPiece| p.local_of(first).is_some();
            let b = pieces.pop().unwrap();
            let a = pieces.pop().unwrap();
            if right_has(&a) {
                Ok(CutResult { right: a, left: b })
            } else {
                Ok(CutResult { right: b, left: a })
            }
        }
        k => Err(Error::InvalidSurface(format!("simple cycle cut into {k} pieces"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::standard_polygon;

    #[test]
    fn nonseparating_loop_is_rejected() {
        let s = standard_polygon(2);
        let a = EdgeWalk::closed(&s, vec![Dart(0)]).unwrap();
        assert!(matches!(cut_along(&s, &a), Err(Error::NonSeparating)));
    }

    #[test]
    fn cutting_a_handle_curve_leaves_one_piece_with_two_holes() {
        let s = standard_polygon(2);
        let mut mask = vec![false; s.num_edges()];
        mask[0] = true;
        let pieces = cut_along_edges(&s, &mask).unwrap();
        assert_eq!(pieces.len(), 1);
        let p = &pieces[0].surface;
        assert_eq!(p.num_boundary_components(), 2);
        assert_eq!(p.euler_characteristic(), s.euler_characteristic());
        assert_eq!(p.genus(), 1);
    }
}
