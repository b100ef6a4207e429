//! Arcs of alpha between consecutive crossings with beta, their relative
//! classes, the separating curves attached to bad arcs, and what happens to
//! the arcs in a double cover.

use serde::{Deserialize, Serialize};

use crate::covering::{pi1_generators, DoubleCover};
use crate::error::{Error, Result};
use crate::f2::{Echelon, F2Vector};
use crate::functional::{ceil_three_sevenths, splits};
use crate::homology::{H1Space, QuotientSpace};
use crate::surface::{cut_along, Crossing, CurveArcTriple, CutPiece, Dart, EdgeWalk, Surface};

/// Homology data of a triple: H1, the classes of the curves, and the
/// quotient by the class of beta (isomorphic to homology relative to beta).
#[derive(Clone, Debug)]
pub struct ArcContext {
    pub h: H1Space,
    pub alpha_class: F2Vector,
    pub beta_class: F2Vector,
    pub q: QuotientSpace,
}

impl ArcContext {
    pub fn new(t: &CurveArcTriple) -> ArcContext {
        let h = H1Space::new(&t.surface);
        let alpha_class = h.class_of_darts(t.alpha.darts());
        let beta_class = h.class_of_darts(t.beta.darts());
        let q = QuotientSpace::new(h.dim(), std::slice::from_ref(&beta_class));
        ArcContext {
            h,
            alpha_class,
            beta_class,
            q,
        }
    }
}

/// A subwalk of alpha from one crossing to the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaArc {
    pub start: Crossing,
    pub end: Crossing,
    pub darts: Vec<Dart>,
}

impl BetaArc {
    fn between(t: &CurveArcTriple, start: Crossing, end: Crossing) -> BetaArc {
        let n = t.alpha.len();
        let len = (end.alpha_pos + n - start.alpha_pos - 1) % n + 1;
        let darts = (0..len).map(|k| t.alpha.darts()[(start.alpha_pos + k) % n]).collect();
        BetaArc { start, end, darts }
    }

    /// The two arcs of beta from the end of the arc back to its start: the
    /// one following beta's orientation, then the one against it.
    pub fn closing_arcs(&self, beta: &EdgeWalk) -> (Vec<Dart>, Vec<Dart>) {
        let m = beta.len();
        let b = beta.darts();
        let (b1, b2) = (self.start.beta_pos, self.end.beta_pos);
        let fwd_len = (b1 + m - b2) % m;
        let forward: Vec<Dart> = (0..fwd_len).map(|k| b[(b2 + k) % m]).collect();
        let back_len = m - fwd_len;
        let backward: Vec<Dart> = (0..back_len).rev().map(|k| b[(b1 + k) % m].partner()).collect();
        (forward, backward)
    }
}

/// The N arcs of alpha cut at its crossings with beta, in order along alpha.
pub fn beta_arcs(t: &CurveArcTriple) -> Result<Vec<BetaArc>> {
    let pts = &t.crossings.points;
    if pts.is_empty() {
        return Err(Error::Precondition(
            "alpha and beta are disjoint, there are no arcs".into(),
        ));
    }
    let n = pts.len();
    Ok((0..n).map(|i| BetaArc::between(t, pts[i], pts[(i + 1) % n])).collect())
}

/// Every other arc, starting with the arc leaving the first crossing along alpha.
pub fn select_disjoint(arcs: &[BetaArc]) -> Result<Vec<BetaArc>> {
    if arcs.len() % 2 == 1 {
        return Err(Error::Precondition(format!("odd number of arcs ({})", arcs.len())));
    }
    Ok(arcs.iter().step_by(2).cloned().collect())
}

/// Class in the quotient by beta of the arc closed up along beta.
pub fn relative_class(t: &CurveArcTriple, ctx: &ArcContext, arc: &BetaArc) -> F2Vector {
    let (eta, _) = arc.closing_arcs(&t.beta);
    let mut loop_darts = arc.darts.clone();
    loop_darts.extend(eta);
    ctx.q.project(&ctx.h.class_of_darts(&loop_darts))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArcKind {
    Good,
    Bad,
}

pub fn classify(t: &CurveArcTriple, ctx: &ArcContext, arc: &BetaArc) -> ArcKind {
    if relative_class(t, ctx, arc).is_zero() {
        ArcKind::Bad
    } else {
        ArcKind::Good
    }
}

/// Disjoint arcs with their relative classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSet {
    pub arcs: Vec<BetaArc>,
    pub classes: Vec<F2Vector>,
}

impl ArcSet {
    pub fn new(t: &CurveArcTriple, ctx: &ArcContext, arcs: Vec<BetaArc>) -> Result<ArcSet> {
        let mut used = std::collections::HashSet::new();
        for a in &arcs {
            for x in [a.start.alpha_pos, a.end.alpha_pos] {
                if !used.insert(x) {
                    return Err(Error::Precondition(format!(
                        "arcs share the crossing at alpha position {x}"
                    )));
                }
            }
        }
        let classes = arcs.iter().map(|a| relative_class(t, ctx, a)).collect();
        Ok(ArcSet { arcs, classes })
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_good(&self, i: usize) -> bool {
        !self.classes[i].is_zero()
    }

    pub fn num_good(&self) -> usize {
        (0..self.len()).filter(|&i| self.is_good(i)).count()
    }

    pub fn num_bad(&self) -> usize {
        self.len() - self.num_good()
    }
}

/// Span in H1 of the loops of one side of a cut.
pub fn side_classes(h: &H1Space, piece: &CutPiece) -> Vec<F2Vector> {
    let mut ech = Echelon::new(h.dim());
    for g in pi1_generators(&piece.surface, 0) {
        let darts: Vec<Dart> = g.iter().map(|d| piece.origin[d.0]).collect();
        ech.insert(&h.class_of_darts(&darts));
    }
    ech.rows().to_vec()
}

fn basis_of(dim: usize, vs: impl IntoIterator<Item = F2Vector>) -> Vec<F2Vector> {
    let mut ech = Echelon::new(dim);
    for v in vs {
        ech.insert(&v);
    }
    ech.rows().to_vec()
}

fn is_disc(p: &CutPiece) -> bool {
    p.surface.euler_characteristic() == 1
}

/// A bad arc closed up by an arc of beta into a separating curve.
#[derive(Clone, Debug)]
pub struct SeparatingPairing {
    /// Index of the arc in its arc set.
    pub arc: usize,
    pub eta: Vec<Dart>,
    /// Whether `eta` follows beta's orientation.
    pub eta_forward: bool,
    pub cycle: EdgeWalk,
    /// Genus of the side away from beta.
    pub away_genus: i64,
    /// Genus of the side containing the rest of beta.
    pub beta_side_genus: i64,
    /// Basis of the projection to the quotient of the away side's homology.
    pub v_basis: Vec<F2Vector>,
    /// The same for the side containing beta.
    pub w_basis: Vec<F2Vector>,
}

pub fn make_separating_pairing(
    t: &CurveArcTriple,
    ctx: &ArcContext,
    arc_index: usize,
    arc: &BetaArc,
) -> Result<SeparatingPairing> {
    if ctx.beta_class.is_zero() {
        return Err(Error::Precondition("beta is null-homologous".into()));
    }
    let s = &t.surface;
    let (fwd, back) = arc.closing_arcs(&t.beta);
    let closed_class = |eta: &[Dart]| {
        let mut d = arc.darts.clone();
        d.extend_from_slice(eta);
        ctx.h.class_of_darts(&d)
    };
    let (cf, cb) = (closed_class(&fwd), closed_class(&back));
    let (eta, other, eta_forward) = match (cf.is_zero(), cb.is_zero()) {
        (true, false) => (fwd, back, true),
        (false, true) => (back, fwd, false),
        (true, true) => {
            return Err(Error::Precondition(
                "both closures vanish, so beta is null-homologous".into(),
            ))
        }
        (false, false) => {
            return Err(Error::Precondition(format!(
                "arc {arc_index} is not bad: neither closure along beta is null-homologous"
            )))
        }
    };
    if arc.start.sign == arc.end.sign {
        return Err(Error::Precondition(format!(
            "bad arc {arc_index} joins crossings of the same sign"
        )));
    }
    let mut darts = arc.darts.clone();
    darts.extend_from_slice(&eta);
    let cycle = EdgeWalk::closed(s, darts)?;
    let sides = cut_along(s, &cycle)?;
    // the rest of beta is disjoint from the cycle apart from its endpoints
    let marker = other[0];
    let beta_side_is_right = sides.right.local_of(marker).is_some() || sides.right.local_of(marker.partner()).is_some();
    let (away, beta_side) = if beta_side_is_right {
        (&sides.left, &sides.right)
    } else {
        (&sides.right, &sides.left)
    };
    for d in &other {
        let inside = beta_side.local_of(*d).is_some() || beta_side.local_of(d.partner()).is_some();
        let on_cycle = cycle.darts().iter().any(|c| c.edge() == d.edge());
        if !inside && !on_cycle {
            return Err(Error::Precondition(
                "beta meets both sides of the separating curve".into(),
            ));
        }
    }
    if is_disc(away) || is_disc(beta_side) {
        return Err(Error::Precondition(format!(
            "the closure of arc {arc_index} bounds a disc, so the curves are not in minimal position"
        )));
    }
    let dim_x = ctx.q.dim();
    let v_basis = basis_of(dim_x, side_classes(&ctx.h, away).iter().map(|c| ctx.q.project(c)));
    let w_basis = basis_of(dim_x, side_classes(&ctx.h, beta_side).iter().map(|c| ctx.q.project(c)));
    let sum = Echelon::from_vectors(dim_x, v_basis.iter().chain(&w_basis)).rank();
    if v_basis.is_empty() || w_basis.is_empty() || v_basis.len() + w_basis.len() != dim_x || sum != dim_x {
        return Err(Error::Precondition(format!(
            "sides of arc {arc_index} do not split the quotient ({} + {} in dimension {dim_x})",
            v_basis.len(),
            w_basis.len()
        )));
    }
    Ok(SeparatingPairing {
        arc: arc_index,
        eta,
        eta_forward,
        cycle,
        away_genus: away.surface.genus(),
        beta_side_genus: beta_side.surface.genus(),
        v_basis,
        w_basis,
    })
}

/// Fates of lifted arcs in a cover where the triple lifts closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcFateReport {
    /// Number of lifted arcs.
    pub lifted: usize,
    /// For each arc, whether its lift still joins two crossings.
    pub still_arc: Vec<bool>,
    /// For each arc whose lift is still an arc, whether the lift is good.
    pub lifted_good: Vec<Option<bool>>,
    pub r: usize,
    pub r_good: usize,
    pub r_bad: usize,
    pub good_before: usize,
    pub bad_before: usize,
    pub good_after: usize,
    /// Bad arcs split by the functional.
    pub split: Vec<usize>,
    /// Split bad arcs whose lifts remain arcs; each is certified good.
    pub certified: Vec<usize>,
    pub checks: Vec<(String, bool)>,
}

impl ArcFateReport {
    pub fn all_checks(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Lift of an arc set along a closed lift of the triple.
pub fn lift_arcs(t1: &CurveArcTriple, arcs: &ArcSet) -> Vec<Option<BetaArc>> {
    let at = |pos: usize| t1.crossings.points.iter().find(|c| c.alpha_pos == pos).copied();
    arcs.arcs
        .iter()
        .map(|a| match (at(a.start.alpha_pos), at(a.end.alpha_pos)) {
            (Some(p), Some(q)) => Some(BetaArc::between(t1, p, q)),
            _ => None,
        })
        .collect()
}

/// Track the arcs of `arcs` (on the base of `cover`) into the cover, where
/// `t1` is the closed lift. `pairings` holds one entry per bad arc and `phi`
/// is the functional on the base quotient that defines the cover.
pub fn arc_fates(
    cover: &DoubleCover,
    t0: &CurveArcTriple,
    arcs: &ArcSet,
    pairings: &[SeparatingPairing],
    phi: &F2Vector,
    t1: &CurveArcTriple,
    ctx1: &ArcContext,
) -> (ArcFateReport, ArcSet) {
    let lifted = lift_arcs(t1, arcs);
    let still_arc: Vec<bool> = lifted.iter().map(Option::is_some).collect();
    let mut lifted_good = vec![None; arcs.len()];
    let mut kept = Vec::new();
    let mut kept_classes = Vec::new();
    for (i, l) in lifted.iter().enumerate() {
        if let Some(a) = l {
            let c = relative_class(t1, ctx1, a);
            lifted_good[i] = Some(!c.is_zero());
            kept.push(a.clone());
            kept_classes.push(c);
        }
    }
    let r_good = (0..arcs.len()).filter(|&i| arcs.is_good(i) && !still_arc[i]).count();
    let r_bad = (0..arcs.len()).filter(|&i| !arcs.is_good(i) && !still_arc[i]).count();
    let good_before = arcs.num_good();
    let bad_before = arcs.num_bad();
    let good_after = lifted_good.iter().filter(|g| **g == Some(true)).count();
    let split: Vec<usize> = pairings
        .iter()
        .filter(|p| splits(phi, &p.v_basis, &p.w_basis))
        .map(|p| p.arc)
        .collect();
    let certified: Vec<usize> = split.iter().copied().filter(|&i| still_arc[i]).collect();

    let mut checks = Vec::new();
    // crossings lost along alpha
    let i0: Vec<usize> = t0.crossings.alpha_positions();
    let i1: Vec<usize> = t1.crossings.alpha_positions();
    checks.push((
        "crossings of the lift are lifts of crossings".into(),
        i1.iter().all(|x| i0.contains(x)),
    ));
    let r = r_good + r_bad;
    checks.push(("n1 <= n0 - r".into(), t1.n() + r <= t0.n()));
    checks.push((
        "old good arcs stay good".into(),
        (0..arcs.len()).all(|i| !arcs.is_good(i) || lifted_good[i] != Some(false)),
    ));
    // the closing curve of each certified arc lifts to a curve that is
    // neither null-homologous nor homologous to beta
    let mut resolve_ok = true;
    for &i in &certified {
        let p = pairings.iter().find(|p| p.arc == i).unwrap();
        let a1 = lifted[i].as_ref().unwrap();
        let sheet = cover.sheet_of_vertex(t1.surface.head(*a1.darts.last().unwrap()));
        let (eta1, _) = cover.lift_darts(&p.eta, sheet);
        let mut d = a1.darts.clone();
        d.extend(eta1);
        let c = ctx1.h.class_of_darts(&d);
        if c.is_zero() || c == ctx1.beta_class || lifted_good[i] != Some(true) {
            resolve_ok = false;
        }
    }
    checks.push(("split bad arcs lift to good arcs".into(), resolve_ok));
    let need = ceil_three_sevenths(bad_before);
    checks.push(("split count >= ceil(3b/7)".into(), split.len() >= need));
    checks.push(("|C| >= ceil(3b/7) - r_b".into(), certified.len() + r_bad >= need));
    checks.push((
        "good after >= good before + ceil(3b/7) - r".into(),
        good_after + r >= good_before + need,
    ));
    let report = ArcFateReport {
        lifted: arcs.len(),
        still_arc,
        lifted_good,
        r,
        r_good,
        r_bad,
        good_before,
        bad_before,
        good_after,
        split,
        certified,
        checks,
    };
    (
        report,
        ArcSet {
            arcs: kept,
            classes: kept_classes,
        },
    )
}

/// Classes in H1 of the loops on each side of a separating cycle.
pub fn separating_sides(s: &Surface, h: &H1Space, cycle: &EdgeWalk) -> Result<(Vec<F2Vector>, Vec<F2Vector>, bool)> {
    let sides = cut_along(s, cycle)?;
    let disc = is_disc(&sides.left) || is_disc(&sides.right);
    Ok((side_classes(h, &sides.right), side_classes(h, &sides.left), disc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::example;

    #[test]
    fn basis_drops_dependent_vectors() {
        let v = |s: &str| s.parse::<F2Vector>().unwrap();
        let b = basis_of(3, [v("110"), v("011"), v("101"), v("000")]);
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn arcs_between_wrap_around_alpha() {
        let t = example("g2-n4").unwrap().triple;
        let pts = &t.crossings.points;
        let last = BetaArc::between(&t, pts[3], pts[0]);
        let n = t.alpha.len();
        assert_eq!(last.darts.len(), (pts[0].alpha_pos + n - pts[3].alpha_pos) % n);
        // an arc from a crossing to itself runs once around alpha
        assert_eq!(BetaArc::between(&t, pts[0], pts[0]).darts.len(), n);
    }
}
