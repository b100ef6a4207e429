use serde::{Deserialize, Serialize};

use super::{Dart, Surface};
use crate::error::{Error, Result};
use crate::f2::F2Vector;

/// A walk along edges. Closed walks start and end at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeWalk {
    start: usize,
    end: usize,
    darts: Vec<Dart>,
    closed: bool,
}

impl EdgeWalk {
    /// An open walk from `start`; an empty dart list is the constant path.
    pub fn path(s: &Surface, start: usize, darts: Vec<Dart>) -> Result<EdgeWalk> {
        if start >= s.num_vertices() {
            return Err(Error::InvalidWalk(format!("vertex {start} out of range")));
        }
        let end = check_consecutive(s, start, &darts)?;
        Ok(EdgeWalk {
            start,
            end,
            darts,
            closed: false,
        })
    }

    /// A closed, cyclically reduced walk based at the tail of its first dart.
    pub fn closed(s: &Surface, darts: Vec<Dart>) -> Result<EdgeWalk> {
        let first = *darts
            .first()
            .ok_or_else(|| Error::InvalidWalk("closed walk is empty".into()))?;
        if first.0 >= s.num_darts() {
            return Err(Error::InvalidWalk(format!("dart {} out of range", first.0)));
        }
        let start = s.tail(first);
        let end = check_consecutive(s, start, &darts)?;
        if end != start {
            return Err(Error::InvalidWalk("walk does not close up".into()));
        }
        let n = darts.len();
        for i in 0..n {
            if darts[(i + 1) % n] == darts[i].partner() {
                return Err(Error::InvalidWalk(format!("closed walk backtracks at position {i}")));
            }
        }
        Ok(EdgeWalk {
            start,
            end,
            darts,
            closed: true,
        })
    }

    /// Closed walk that may be empty (trivial loop at `base`); reduction is
    /// applied rather than demanded.
    pub fn closed_reduced(s: &Surface, base: usize, darts: Vec<Dart>) -> Result<EdgeWalk> {
        let end = check_consecutive(s, base, &darts)?;
        if end != base {
            return Err(Error::InvalidWalk("walk does not close up".into()));
        }
        let reduced = cyclic_reduce(free_reduce(&darts));
        let start = reduced.first().map_or(base, |&d| s.tail(d));
        Ok(EdgeWalk {
            start,
            end: start,
            darts: reduced,
            closed: true,
        })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Tail vertices of the darts, in order.
    pub fn vertices(&self, s: &Surface) -> Vec<usize> {
        self.darts.iter().map(|&d| s.tail(d)).collect()
    }

    pub fn reversed(&self) -> EdgeWalk {
        let darts: Vec<Dart> = self.darts.iter().rev().map(|d| d.partner()).collect();
        EdgeWalk {
            start: self.end,
            end: self.start,
            darts,
            closed: self.closed,
        }
    }

    /// Closed walk re-based so that it begins with dart index `i`.
    pub fn rotated(&self, s: &Surface, i: usize) -> EdgeWalk {
        assert!(self.closed, "only closed walks can be rotated");
        let n = self.darts.len();
        let darts: Vec<Dart> = (0..n).map(|k| self.darts[(i + k) % n]).collect();
        let start = s.tail(darts[0]);
        EdgeWalk {
            start,
            end: start,
            darts,
            closed: true,
        }
    }

    /// Open concatenation; `other` must start where `self` ends.
    pub fn then(&self, other: &EdgeWalk) -> Result<EdgeWalk> {
        if self.end != other.start {
            return Err(Error::InvalidWalk(format!(
                "cannot join walk ending at {} to walk starting at {}",
                self.end, other.start
            )));
        }
        let mut darts = self.darts.clone();
        darts.extend_from_slice(&other.darts);
        Ok(EdgeWalk {
            start: self.start,
            end: other.end,
            darts,
            closed: false,
        })
    }

    /// Free reduction; closed walks are also cyclically reduced.
    pub fn reduced(&self, s: &Surface) -> EdgeWalk {
        let mut darts = free_reduce(&self.darts);
        if !self.closed {
            return EdgeWalk {
                start: self.start,
                end: self.end,
                darts,
                closed: false,
            };
        }
        darts = cyclic_reduce(darts);
        let start = darts.first().map_or(self.start, |&d| s.tail(d));
        EdgeWalk {
            start,
            end: start,
            darts,
            closed: true,
        }
    }

    /// Mod-2 count of edge traversals.
    pub fn edge_chain(&self, n_edges: usize) -> F2Vector {
        let mut v = F2Vector::zeros(n_edges);
        for d in &self.darts {
            v.flip(d.edge());
        }
        v
    }

    /// True when no vertex repeats (closed walks: no vertex twice around).
    pub fn is_vertex_simple(&self, s: &Surface) -> bool {
        let mut seen = std::collections::HashSet::new();
        let verts = self.vertices(s);
        let extra = if self.closed { None } else { Some(self.end) };
        verts.into_iter().chain(extra).all(|v| seen.insert(v))
    }
}

fn check_consecutive(s: &Surface, start: usize, darts: &[Dart]) -> Result<usize> {
    let mut at = start;
    for (i, &d) in darts.iter().enumerate() {
        if d.0 >= s.num_darts() {
            return Err(Error::InvalidWalk(format!("dart {} out of range", d.0)));
        }
        if s.tail(d) != at {
            return Err(Error::InvalidWalk(format!(
                "dart {} at position {i} does not leave vertex {at}",
                d.0
            )));
        }
        at = s.head(d);
    }
    Ok(at)
}

fn free_reduce(darts: &[Dart]) -> Vec<Dart> {
    let mut out: Vec<Dart> = Vec::with_capacity(darts.len());
    for &d in darts {
        if out.last() == Some(&d.partner()) {
            out.pop();
        } else {
            out.push(d);
        }
    }
    out
}

fn cyclic_reduce(mut darts: Vec<Dart>) -> Vec<Dart> {
    let mut lo = 0;
    let mut hi = darts.len();
    while hi - lo >= 2 && darts[hi - 1] == darts[lo].partner() {
        lo += 1;
        hi -= 1;
    }
    darts.truncate(hi);
    darts.drain(..lo);
    darts
}

/// Close up `mu` with `eta` into a cyclically reduced closed walk.
pub fn concatenate(s: &Surface, mu: &EdgeWalk, eta: &EdgeWalk) -> Result<EdgeWalk> {
    if mu.end() != eta.start() || eta.end() != mu.start() {
        return Err(Error::InvalidWalk("endpoints of the two arcs do not match".into()));
    }
    let mut darts = mu.darts().to_vec();
    darts.extend_from_slice(eta.darts());
    EdgeWalk::closed_reduced(s, mu.start(), darts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::standard_polygon;

    #[test]
    fn closed_rejects_backtrack() {
        let s = standard_polygon(2);
        assert!(EdgeWalk::closed(&s, vec![Dart(0), Dart(1)]).is_err());
        assert!(EdgeWalk::closed(&s, vec![Dart(0)]).is_ok());
    }

    #[test]
    fn concatenate_cancels_backtrack() {
        let s = standard_polygon(2);
        // all darts are loops at the single vertex
        let mu = EdgeWalk::path(&s, 0, vec![Dart(0), Dart(2)]).unwrap();
        let eta = EdgeWalk::path(&s, 0, vec![Dart(3), Dart(4)]).unwrap();
        let c = concatenate(&s, &mu, &eta).unwrap();
        assert_eq!(c.darts(), &[Dart(0), Dart(4)]);
        assert!(c.is_closed());
    }

    #[test]
    fn arc_and_complement_close_up() {
        let s = standard_polygon(2);
        let mu = EdgeWalk::path(&s, 0, vec![Dart(0)]).unwrap();
        let eta = EdgeWalk::path(&s, 0, vec![Dart(2), Dart(6)]).unwrap();
        let c = concatenate(&s, &mu, &eta).unwrap();
        assert_eq!(c.len(), mu.len() + eta.len());
    }

    #[test]
    fn endpoint_mismatch_is_an_error() {
        let s = standard_polygon(2);
        let mu = EdgeWalk::path(&s, 0, vec![Dart(0)]).unwrap();
        let bogus = EdgeWalk {
            start: 5,
            end: 5,
            darts: vec![],
            closed: false,
        };
        assert!(concatenate(&s, &mu, &bogus).is_err());
    }

    #[test]
    fn reversal_is_involutive() {
        let s = standard_polygon(2);
        let w = EdgeWalk::closed(&s, vec![Dart(0), Dart(2), Dart(5)])
            .unwrap_or_else(|_| EdgeWalk::closed(&s, vec![Dart(0), Dart(4)]).unwrap());
        assert_eq!(w.reversed().reversed(), w);
    }
}
