use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Dart, EdgeWalk, Surface};
use crate::error::{Error, Result};

/// A transverse crossing of alpha and beta at a shared vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub vertex: usize,
    /// Index into alpha of the alpha dart leaving the vertex.
    pub alpha_pos: usize,
    /// Index into beta of the beta dart leaving the vertex.
    pub beta_pos: usize,
    /// +1 when beta passes from the right of alpha to its left.
    pub sign: i8,
}

/// Crossings ordered by position along alpha.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingSet {
    pub points: Vec<Crossing>,
}

impl CrossingSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn alpha_positions(&self) -> Vec<usize> {
        self.points.iter().map(|c| c.alpha_pos).collect()
    }

    pub fn algebraic_count(&self) -> i64 {
        self.points.iter().map(|c| c.sign as i64).sum()
    }
}

/// Count crossings of two closed simple walks, ordered along alpha.
pub fn crossings(s: &Surface, alpha: &EdgeWalk, beta: &EdgeWalk) -> Result<CrossingSet> {
    check_simple(s, alpha, "alpha")?;
    check_simple(s, beta, "beta")?;
    let mut alpha_edges = vec![false; s.num_edges()];
    for d in alpha.darts() {
        alpha_edges[d.edge()] = true;
    }
    if let Some(d) = beta.darts().iter().find(|d| alpha_edges[d.edge()]) {
        return Err(Error::NotTransverse(format!("edge {} is shared", d.edge())));
    }
    let beta_at: HashMap<usize, usize> = beta.vertices(s).into_iter().enumerate().map(|(i, v)| (v, i)).collect();
    let na = alpha.len();
    let nb = beta.len();
    let mut points = Vec::new();
    for (i, v) in alpha.vertices(s).into_iter().enumerate() {
        let Some(&j) = beta_at.get(&v) else { continue };
        let a_out = alpha.darts()[i];
        let a_in = alpha.darts()[(i + na - 1) % na].partner();
        let b_out = beta.darts()[j];
        let b_in = beta.darts()[(j + nb - 1) % nb].partner();
        let pb_out = s.ccw_offset(a_out, b_out);
        let pa_in = s.ccw_offset(a_out, a_in);
        let pb_in = s.ccw_offset(a_out, b_in);
        let out_first = pb_out < pa_in;
        let in_first = pb_in < pa_in;
        if out_first == in_first {
            return Err(Error::NotTransverse(format!(
                "curves touch without crossing at vertex {v}"
            )));
        }
        points.push(Crossing {
            vertex: v,
            alpha_pos: i,
            beta_pos: j,
            sign: if out_first { 1 } else { -1 },
        });
    }
    Ok(CrossingSet { points })
}

fn check_simple(s: &Surface, w: &EdgeWalk, name: &str) -> Result<()> {
    if !w.is_closed() || w.is_empty() {
        return Err(Error::InvalidWalk(format!("{name} must be a nonempty closed walk")));
    }
    if !w.is_vertex_simple(s) {
        return Err(Error::InvalidWalk(format!("{name} is not simple")));
    }
    Ok(())
}

/// Based curves alpha at `v`, beta at `w`, and a path tau from `v` to `w`.
#[derive(Clone, Debug)]
pub struct CurveArcTriple {
    pub surface: Surface,
    pub alpha: EdgeWalk,
    pub beta: EdgeWalk,
    pub tau: EdgeWalk,
    pub crossings: CrossingSet,
}

impl CurveArcTriple {
    pub fn new(surface: Surface, alpha: EdgeWalk, beta: EdgeWalk, tau: EdgeWalk) -> Result<Self> {
        if tau.start() != alpha.start() {
            return Err(Error::InvalidWalk("tau must start at the basepoint of alpha".into()));
        }
        if tau.end() != beta.start() {
            return Err(Error::InvalidWalk("tau must end at the basepoint of beta".into()));
        }
        let crossings = crossings(&surface, &alpha, &beta)?;
        Ok(CurveArcTriple {
            surface,
            alpha,
            beta,
            tau,
            crossings,
        })
    }

    pub fn v(&self) -> usize {
        self.alpha.start()
    }

    pub fn w(&self) -> usize {
        self.beta.start()
    }

    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    /// The closed loop `tau . beta^-1 . tau^-1 . alpha` at `v`.
    pub fn witness_word(&self) -> Vec<Dart> {
        let mut word = self.tau.darts().to_vec();
        word.extend(self.beta.reversed().darts());
        word.extend(self.tau.reversed().darts());
        word.extend(self.alpha.darts());
        word
    }

    /// Beta re-based at its vertex of index `j`, with tau extended along beta.
    pub fn rebase_beta(&self, j: usize) -> Result<CurveArcTriple> {
        let beta = self.beta.rotated(&self.surface, j);
        let along = EdgeWalk::path(&self.surface, self.w(), self.beta.darts()[..j].to_vec())?;
        let tau = self.tau.then(&along)?.reduced(&self.surface);
        CurveArcTriple::new(self.surface.clone(), self.alpha.clone(), beta, tau)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::example;

    #[test]
    fn crossings_are_symmetric_with_opposite_signs() {
        for name in ["g2-n1", "g2-n2", "g2-n4", "g3-n6"] {
            let t = example(name).unwrap().triple;
            let ab = crossings(&t.surface, &t.alpha, &t.beta).unwrap();
            let ba = crossings(&t.surface, &t.beta, &t.alpha).unwrap();
            assert_eq!(ab.len(), ba.len(), "{name}");
            assert_eq!(ab.algebraic_count(), -ba.algebraic_count(), "{name}");
        }
    }

    #[test]
    fn witness_word_is_a_closed_loop_at_v() {
        let t = example("g2-n2").unwrap().triple;
        let w = t.witness_word();
        assert_eq!(t.surface.tail(w[0]), t.v());
        assert_eq!(t.surface.head(*w.last().unwrap()), t.v());
    }

    #[test]
    fn open_walks_are_not_curves() {
        let t = example("g2-n2").unwrap().triple;
        assert!(!t.tau.is_closed());
        assert!(check_simple(&t.surface, &t.tau, "tau").is_err());
        check_simple(&t.surface, &t.alpha, "alpha").unwrap();
    }
}
