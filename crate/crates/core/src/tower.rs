//! The recursive construction of a tower of double covers in which the top
//! lift of a curve pair is partially closed.
//!
//! Each level applies one of five moves:
//! distinct classes are separated by a functional; a separating curve gets a
//! cover nontrivial on both of its sides; a disjoint homologous pair gets a
//! cover whose lifts have different classes; otherwise the crossing count is
//! cut by a factor 25/28 in at most two levels (make bad arcs good, then
//! resolve half of the good arcs).

use serde::{Deserialize, Serialize};

use crate::arcs::{
    arc_fates, beta_arcs, make_separating_pairing, select_disjoint, side_classes, ArcContext, ArcFateReport, ArcSet,
};
use crate::bounds::{consistency_chain, height_bound, height_within_log_bound, ChainReport};
use crate::covering::{
    fiber_permutation, lift_triple, monodromy, pi1_generators, DoubleCover, LiftKind, LiftedTriple, Tower,
};
use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vector};
use crate::functional::{
    ceil_half, find_half_functional, find_splitting_functional, SearchConfig, SearchMode, SplittingFamily,
};
use crate::homology::{enumerate_functionals, Cocycle, H1Space};
use crate::nilpotent::{normal_core_report, CoreReport};
use crate::surface::{cut_along, cut_along_edges, is_minimal_position, reduce_to_minimal, CurveArcTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Curve {
    Alpha,
    Beta,
}

/// The move applied at one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    /// The classes of the curves differ; a functional tells them apart.
    DistinctClasses,
    /// Disjoint curves with equal nonzero class.
    DisjointHomologous,
    /// A null-homologous curve, split into two lifts of nonzero class.
    Separating(Curve),
    /// Turn a share of the bad arcs good.
    MakeGood,
    /// Remove a crossing for half of the good arcs.
    Resolve,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcStats {
    pub arcs: usize,
    pub good: usize,
    pub bad: usize,
    /// Arcs (or pairs) the functional succeeded on.
    pub hits: usize,
    pub r: usize,
    pub r_good: usize,
    pub r_bad: usize,
    pub certified: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    /// 1 for the first cover over the input surface.
    pub level: usize,
    pub step: Move,
    /// Functional on H1 of the level's base, in its tree-cotree basis.
    pub functional: F2Vector,
    /// One bit per edge of the base.
    pub cocycle: F2Vector,
    pub kind: LiftKind,
    pub genus: i64,
    pub n_before: usize,
    /// Crossings of the lifted pair, when the lift is closed.
    pub n_after: Option<usize>,
    pub mode: Option<SearchMode>,
    pub arcs: Option<ArcStats>,
    pub checks: Vec<(String, bool)>,
}

impl LevelRecord {
    pub fn all_checks(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// One cover together with the lift of the triple into it.
#[derive(Clone, Debug)]
pub struct LevelStep {
    pub cover: DoubleCover,
    pub lift: LiftedTriple,
    pub record: LevelRecord,
}

impl LevelStep {
    fn new(
        t: &CurveArcTriple,
        step: Move,
        level: usize,
        functional: F2Vector,
        cover: DoubleCover,
        lift: LiftedTriple,
    ) -> LevelStep {
        let record = LevelRecord {
            level,
            step,
            functional,
            cocycle: cover.psi.bits.clone(),
            kind: lift.kind,
            genus: t.surface.genus(),
            n_before: t.n(),
            n_after: lift.triple.as_ref().map(CurveArcTriple::n),
            mode: None,
            arcs: None,
            checks: Vec::new(),
        };
        LevelStep { cover, lift, record }
    }

    fn check(&mut self, name: impl Into<String>, holds: bool) {
        self.record.checks.push((name.into(), holds));
    }

    fn closed(&self) -> Result<&CurveArcTriple> {
        self.lift
            .triple
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("level {} did not lift closed", self.record.level)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerConfig {
    pub search: SearchConfig,
    /// Check at every closed level that the lifted pair has no bigon.
    pub check_minimal: bool,
    pub max_levels: usize,
}

impl Default for TowerConfig {
    fn default() -> Self {
        TowerConfig {
            search: SearchConfig::default(),
            check_minimal: false,
            max_levels: 64,
        }
    }
}

fn cover_for(t: &CurveArcTriple, h: &H1Space, phi: &F2Vector) -> Result<(DoubleCover, LiftedTriple)> {
    let cover = DoubleCover::new(&t.surface, h.cocycle_from_functional(phi))?;
    let lift = lift_triple(&cover, t)?;
    Ok((cover, lift))
}

/// A cover in which exactly one of the curves lifts closed, when their
/// classes differ. The functional is the smallest one telling them apart.
pub fn separate_classes(t: &CurveArcTriple, ctx: &ArcContext, level: usize) -> Result<LevelStep> {
    let diff = ctx.alpha_class.sum(&ctx.beta_class);
    let i = diff
        .first_one()
        .ok_or_else(|| Error::Precondition("the curves have the same class".into()))?;
    let phi = F2Vector::unit(ctx.h.dim(), i);
    let (cover, lift) = cover_for(t, &ctx.h, &phi)?;
    let mut step = LevelStep::new(t, Move::DistinctClasses, level, phi, cover, lift);
    step.check("lift is partially closed", step.lift.kind.is_partially_closed());
    Ok(step)
}

/// Candidate functionals: smallest masks first when the dimension allows,
/// else one solution of `f(a) = b` per listed system.
fn candidates(
    dim: usize,
    constraints: &[(F2Vector, bool)],
    criterion: &dyn Fn(&F2Vector) -> bool,
    systems: &dyn Fn() -> Vec<Vec<(F2Vector, bool)>>,
    cfg: &SearchConfig,
) -> Result<(Vec<F2Vector>, bool)> {
    if let Ok(all) = enumerate_functionals(dim, constraints, true, cfg.enum_cap) {
        return Ok((all.filter(|f| criterion(f)).collect(), true));
    }
    let mut out = Vec::new();
    for sys in systems() {
        let m = F2Matrix::new(dim, sys.iter().map(|(v, _)| v.clone()).collect());
        let b = F2Vector::from_bits(&sys.iter().map(|(_, b)| *b).collect::<Vec<_>>());
        if let Some(f) = m.solve(&b) {
            if criterion(&f) && !out.contains(&f) {
                out.push(f);
            }
        }
    }
    Ok((out, false))
}

/// Disjoint curves of equal nonzero class: a cover in which both lift
/// closed and the lifts have different classes.
pub fn split_disjoint_pair(
    t: &CurveArcTriple,
    ctx: &ArcContext,
    level: usize,
    cfg: &SearchConfig,
) -> Result<LevelStep> {
    if t.n() != 0 {
        return Err(Error::Precondition(format!("curves cross {} times", t.n())));
    }
    if ctx.alpha_class.is_zero() || ctx.alpha_class != ctx.beta_class {
        return Err(Error::Precondition("curves must share a nonzero class".into()));
    }
    let s = &t.surface;
    let mut mask = vec![false; s.num_edges()];
    for d in t.alpha.darts().iter().chain(t.beta.darts()) {
        mask[d.edge()] = true;
    }
    let pieces = cut_along_edges(s, &mask)?;
    if pieces.len() != 2 {
        return Err(Error::Precondition(format!(
            "the two curves cut the surface into {} pieces, expected 2",
            pieces.len()
        )));
    }
    if pieces.iter().any(|p| p.surface.euler_characteristic() >= 0) {
        return Err(Error::Precondition(
            "the curves cobound an annulus, so they are isotopic".into(),
        ));
    }
    let vp = side_classes(&ctx.h, &pieces[0]);
    let vq = side_classes(&ctx.h, &pieces[1]);
    let a = ctx.alpha_class.clone();
    let hits = |f: &F2Vector, vs: &[F2Vector]| vs.iter().any(|x| f.dot(x));
    let criterion = |f: &F2Vector| !f.dot(&a) && hits(f, &vp) && hits(f, &vq);
    let systems = || {
        let mut out = Vec::new();
        for p in &vp {
            for q in &vq {
                out.push(vec![(a.clone(), false), (p.clone(), true), (q.clone(), true)]);
            }
        }
        out
    };
    let constraints = [(a.clone(), false)];
    let (cands, exhaustive) = candidates(ctx.h.dim(), &constraints, &criterion, &systems, cfg)?;
    for phi in cands {
        let (cover, lift) = cover_for(t, &ctx.h, &phi)?;
        let Some(t1) = &lift.triple else { continue };
        let h1 = H1Space::new(&t1.surface);
        let (ca, cb) = (h1.class_of_darts(t1.alpha.darts()), h1.class_of_darts(t1.beta.darts()));
        if ca != cb {
            let mut step = LevelStep::new(t, Move::DisjointHomologous, level, phi, cover, lift);
            step.record.mode = Some(if exhaustive {
                SearchMode::Exhaustive
            } else {
                SearchMode::Derandomized
            });
            step.check("lift is closed", step.record.kind == LiftKind::Closed);
            step.check("lifted classes differ", true);
            return Ok(step);
        }
    }
    Err(Error::SearchExhausted(
        "no functional nontrivial on both sides of the pair gives lifts of different classes".into(),
    ))
}

/// A null-homologous curve: a cover nontrivial on both of its sides, so that
/// both lifts of the curve have nonzero class.
pub fn split_separating(
    t: &CurveArcTriple,
    ctx: &ArcContext,
    which: Curve,
    level: usize,
    cfg: &SearchConfig,
) -> Result<LevelStep> {
    let (delta, class) = match which {
        Curve::Alpha => (&t.alpha, &ctx.alpha_class),
        Curve::Beta => (&t.beta, &ctx.beta_class),
    };
    if !class.is_zero() {
        return Err(Error::NonSeparating);
    }
    let sides = cut_along(&t.surface, delta)?;
    if sides.left.surface.euler_characteristic() == 1 || sides.right.surface.euler_characteristic() == 1 {
        return Err(Error::Precondition(format!("{which:?} bounds a disc")));
    }
    let vl = side_classes(&ctx.h, &sides.left);
    let vr = side_classes(&ctx.h, &sides.right);
    let hits = |f: &F2Vector, vs: &[F2Vector]| vs.iter().any(|x| f.dot(x));
    let criterion = |f: &F2Vector| hits(f, &vl) && hits(f, &vr);
    let systems = || {
        let mut out = Vec::new();
        for l in &vl {
            for r in &vr {
                out.push(vec![(l.clone(), true), (r.clone(), true)]);
            }
        }
        out
    };
    let (cands, exhaustive) = candidates(ctx.h.dim(), &[], &criterion, &systems, cfg)?;
    for phi in cands {
        let cover = DoubleCover::new(&t.surface, ctx.h.cocycle_from_functional(&phi))?;
        let h1 = H1Space::new(&cover.total);
        let lifts_nonzero = [false, true].iter().all(|&sheet| {
            let (darts, _) = cover.lift_darts(delta.darts(), sheet);
            !h1.class_of_darts(&darts).is_zero()
        });
        if !lifts_nonzero {
            continue;
        }
        let lift = lift_triple(&cover, t)?;
        let mut step = LevelStep::new(t, Move::Separating(which), level, phi, cover, lift);
        step.record.mode = Some(if exhaustive {
            SearchMode::Exhaustive
        } else {
            SearchMode::Derandomized
        });
        step.check("both lifts of the curve have nonzero class", true);
        step.check("lift is not nonclosed", step.record.kind != LiftKind::Nonclosed);
        return Ok(step);
    }
    Err(Error::SearchExhausted(
        "no functional nontrivial on both sides gives lifts of nonzero class".into(),
    ))
}

/// Output of the make-good step.
#[derive(Clone, Debug)]
pub struct MakeGood {
    pub step: LevelStep,
    pub before: ArcSet,
    pub fates: ArcFateReport,
    /// Lifted arcs that still join crossings, with classes on the cover.
    pub after: ArcSet,
    pub ctx: ArcContext,
}

/// Split at least 3/7 of the bad arcs of a disjoint arc set. The lift is
/// closed and arcs that survive as arcs keep or gain goodness.
pub fn make_good_step(t: &CurveArcTriple, ctx: &ArcContext, level: usize, cfg: &SearchConfig) -> Result<MakeGood> {
    if ctx.alpha_class.is_zero() || ctx.alpha_class != ctx.beta_class {
        return Err(Error::Precondition("curves must share a nonzero class".into()));
    }
    let before = ArcSet::new(t, ctx, select_disjoint(&beta_arcs(t)?)?)?;
    let mut pairings = Vec::new();
    for i in 0..before.len() {
        if !before.is_good(i) {
            pairings.push(make_separating_pairing(t, ctx, i, &before.arcs[i])?);
        }
    }
    let fam = SplittingFamily {
        n: ctx.q.dim(),
        pairs: pairings
            .iter()
            .map(|p| (p.v_basis.clone(), p.w_basis.clone()))
            .collect(),
    };
    let found = find_splitting_functional(&fam, cfg)?;
    let phi = ctx.q.lift_functional(&found.functional);
    let (cover, lift) = cover_for(t, &ctx.h, &phi)?;
    let mut step = LevelStep::new(t, Move::MakeGood, level, phi, cover, lift);
    step.record.mode = Some(found.mode);
    step.check("lift is closed", step.record.kind == LiftKind::Closed);
    let t1 = step.closed()?.clone();
    let ctx1 = ArcContext::new(&t1);
    let (fates, after) = arc_fates(&step.cover, t, &before, &pairings, &found.functional, &t1, &ctx1);
    step.check("n1 <= n0", t1.n() <= t.n());
    step.check("|A0| = n0/2", 2 * before.len() == t.n());
    for (name, ok) in &fates.checks {
        step.check(name.clone(), *ok);
    }
    step.record.arcs = Some(ArcStats {
        arcs: before.len(),
        good: before.num_good(),
        bad: before.num_bad(),
        hits: found.count,
        r: fates.r,
        r_good: fates.r_good,
        r_bad: fates.r_bad,
        certified: fates.certified.len(),
    });
    Ok(MakeGood {
        step,
        before,
        fates,
        after,
        ctx: ctx1,
    })
}

/// A cover in which at least half of the good arcs lose a crossing.
pub fn resolve_isect_step(
    t: &CurveArcTriple,
    ctx: &ArcContext,
    arcs: &ArcSet,
    level: usize,
    cfg: &SearchConfig,
) -> Result<LevelStep> {
    if ctx.alpha_class != ctx.beta_class {
        return Err(Error::Precondition("curves must share a class".into()));
    }
    let good: Vec<usize> = (0..arcs.len()).filter(|&i| arcs.is_good(i)).collect();
    if good.is_empty() {
        return Err(Error::Precondition("no good arcs to resolve".into()));
    }
    let vectors: Vec<F2Vector> = good.iter().map(|&i| arcs.classes[i].clone()).collect();
    let found = find_half_functional(&vectors, cfg)?;
    let phi = ctx.q.lift_functional(&found.functional);
    let (cover, lift) = cover_for(t, &ctx.h, &phi)?;
    let mut step = LevelStep::new(t, Move::Resolve, level, phi, cover, lift);
    step.record.mode = Some(found.mode);
    step.check("lift is closed", step.record.kind == LiftKind::Closed);
    let t2 = step.closed()?.clone();
    let i2 = t2.crossings.alpha_positions();
    let hit: Vec<usize> = good
        .iter()
        .copied()
        .filter(|&i| found.functional.dot(&arcs.classes[i]))
        .collect();
    let one_end = hit.iter().all(|&i| {
        let a = &arcs.arcs[i];
        !(i2.contains(&a.start.alpha_pos) && i2.contains(&a.end.alpha_pos))
    });
    step.check("each resolved arc keeps at most one endpoint", one_end);
    step.check("hits >= ceil(good/2)", hit.len() >= ceil_half(good.len()));
    step.check("n2 <= n1 - hits", t2.n() + hit.len() <= t.n());
    step.check(
        "crossings of the lift are lifts of crossings",
        i2.iter().all(|x| t.crossings.alpha_positions().contains(x)),
    );
    step.record.arcs = Some(ArcStats {
        arcs: arcs.len(),
        good: good.len(),
        bad: arcs.len() - good.len(),
        hits: hit.len(),
        ..ArcStats::default()
    });
    Ok(step)
}

/// One or two levels that either end partially closed or shrink the
/// crossing count to at most 25/28 of its value.
#[derive(Clone, Debug)]
pub struct BasicMove {
    pub steps: Vec<LevelStep>,
    /// Checks on the whole move.
    pub checks: Vec<(String, bool)>,
}

impl BasicMove {
    pub fn last(&self) -> &LevelStep {
        self.steps.last().expect("a basic move has at least one level")
    }
}

pub fn basic_move(t: &CurveArcTriple, ctx: &ArcContext, level: usize, cfg: &SearchConfig) -> Result<BasicMove> {
    let n0 = t.n();
    if n0 < 2 {
        return Err(Error::Precondition(format!("need at least 2 crossings, found {n0}")));
    }
    let mg = make_good_step(t, ctx, level, cfg)?;
    let (g0, b0) = (mg.before.num_good(), mg.before.num_bad());
    let t1 = mg.step.closed()?.clone();
    let mut steps = vec![mg.step];
    if mg.ctx.alpha_class != mg.ctx.beta_class {
        steps.push(separate_classes(&t1, &mg.ctx, level + 1)?);
        return Ok(BasicMove {
            steps,
            checks: Vec::new(),
        });
    }
    if mg.after.num_good() > 0 {
        let step = resolve_isect_step(&t1, &mg.ctx, &mg.after, level + 1, cfg)?;
        steps.push(step);
    }
    let nq = steps.last().unwrap().closed()?.n();
    let checks = vec![
        ("28 nq <= 25 n0".to_string(), 28 * nq <= 25 * n0),
        (
            "14 nq <= 14 n0 - 7 good - 3 bad".to_string(),
            14 * nq + 7 * g0 + 3 * b0 <= 14 * n0,
        ),
    ];
    Ok(BasicMove { steps, checks })
}

/// A tower whose top lift is partially closed, with everything needed to
/// rebuild and re-check it.
#[derive(Clone, Debug)]
pub struct TowerCertificate {
    /// The input after bigon removal.
    pub triple: CurveArcTriple,
    pub bigon_moves: usize,
    pub n0: usize,
    pub genus: i64,
    pub k: usize,
    pub k_bound: u64,
    pub levels: Vec<LevelRecord>,
    pub final_kind: LiftKind,
    /// Whether the witness loop moves the base fiber point.
    pub witness_displaced: bool,
    pub checks: Vec<(String, bool)>,
    pub tower: Tower,
}

impl TowerCertificate {
    pub fn all_checks(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok) && self.levels.iter().all(LevelRecord::all_checks)
    }
}

/// `k <= 2 log_{28/25}(n) + 1` for n >= 2, `k <= 3` otherwise.
pub fn height_ok(k: usize, n: usize) -> bool {
    if n <= 1 {
        k <= 3
    } else {
        height_within_log_bound(k as u64, n as u64)
    }
}

fn check_minimal(t: &CurveArcTriple) -> Result<bool> {
    Ok(is_minimal_position(&t.surface, &t.alpha, &t.beta)?.is_minimal())
}

pub fn build_resolving_tower(input: &CurveArcTriple, cfg: &TowerConfig) -> Result<TowerCertificate> {
    let s = &input.surface;
    if !s.is_closed() || s.genus() < 2 {
        return Err(Error::Precondition(format!(
            "need a closed surface of genus at least 2, found genus {} with {} boundary components",
            s.genus(),
            s.num_boundary_components()
        )));
    }
    let red = reduce_to_minimal(s, &input.alpha, &input.beta, &input.tau)?;
    let t0 = CurveArcTriple::new(red.surface, red.alpha, red.beta, red.tau)?;
    let n0 = t0.n();
    let mut tower = Tower::new();
    let mut levels: Vec<LevelRecord> = Vec::new();
    let mut checks = Vec::new();
    let mut t = t0.clone();
    let mut final_kind = LiftKind::Closed;
    while final_kind == LiftKind::Closed {
        if tower.height() >= cfg.max_levels {
            return Err(Error::IterationCap(cfg.max_levels));
        }
        let ctx = ArcContext::new(&t);
        let level = tower.height() + 1;
        let steps = if ctx.alpha_class != ctx.beta_class {
            vec![separate_classes(&t, &ctx, level)?]
        } else if t.n() % 2 == 1 {
            return Err(Error::Precondition(format!(
                "{} crossings is odd but the classes agree",
                t.n()
            )));
        } else if ctx.alpha_class.is_zero() {
            vec![split_separating(&t, &ctx, Curve::Alpha, level, &cfg.search)?]
        } else if t.n() == 0 {
            vec![split_disjoint_pair(&t, &ctx, level, &cfg.search)?]
        } else {
            let mv = basic_move(&t, &ctx, level, &cfg.search)?;
            let mut steps = mv.steps;
            steps.last_mut().unwrap().record.checks.extend(mv.checks);
            steps
        };
        for mut step in steps {
            let n_before = step.record.n_before;
            if let Some(n) = step.record.n_after {
                step.check("n does not increase", n <= n_before);
            }
            if cfg.check_minimal {
                if let Some(t1) = &step.lift.triple {
                    let ok = check_minimal(t1)?;
                    step.check("lifted pair has no bigon", ok);
                }
            }
            final_kind = step.record.kind;
            if let Some(t1) = step.lift.triple.take() {
                t = t1;
            }
            tower.push(step.cover);
            levels.push(step.record);
        }
        if final_kind == LiftKind::Nonclosed {
            return Err(Error::Precondition("a level lifted neither curve closed".into()));
        }
    }
    let k = tower.height();
    let k_bound = height_bound(n0 as u64);
    checks.push((
        "top lift is partially closed".to_string(),
        final_kind.is_partially_closed(),
    ));
    checks.push(("k within the height bound".to_string(), height_ok(k, n0)));
    let witness = t0.witness_word();
    let witness_displaced = fiber_permutation(&tower, t0.v(), &witness)[0] != 0;
    checks.push(("witness loop moves the base fiber point".to_string(), witness_displaced));
    Ok(TowerCertificate {
        genus: t0.surface.genus(),
        triple: t0,
        bigon_moves: red.moves,
        n0,
        k,
        k_bound,
        levels,
        final_kind,
        witness_displaced,
        checks,
        tower,
    })
}

/// Rebuild the lifted triple at every level from stored cocycles.
pub fn replay(t0: &CurveArcTriple, cocycles: &[F2Vector]) -> Result<(Tower, Vec<(LiftKind, Option<usize>)>)> {
    let mut tower = Tower::new();
    let mut out = Vec::new();
    let mut t = t0.clone();
    for (i, bits) in cocycles.iter().enumerate() {
        if bits.len() != t.surface.num_edges() {
            return Err(Error::Certificate(format!(
                "level {} has {} cocycle bits for {} edges",
                i + 1,
                bits.len(),
                t.surface.num_edges()
            )));
        }
        let psi = Cocycle { bits: bits.clone() };
        let cover = DoubleCover::new(&t.surface, psi)?;
        let lift = lift_triple(&cover, &t)?;
        out.push((lift.kind, lift.triple.as_ref().map(CurveArcTriple::n)));
        tower.push(cover);
        match lift.triple {
            Some(t1) => t = t1,
            None if i + 1 < cocycles.len() => {
                return Err(Error::Certificate(format!("level {} does not lift closed", i + 1)));
            }
            None => {}
        }
    }
    Ok((tower, out))
}

/// Group-theoretic and numerical consequences of a tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsectReport {
    pub n0: usize,
    pub k: usize,
    pub k_bound: u64,
    pub witness_displaced: bool,
    /// Largest lower central series depth the witness can have: 2^k - 2, at least 1.
    pub depth_cap: u64,
    pub core: Option<CoreReport>,
    pub chain: Option<ChainReport>,
    pub notes: Vec<String>,
}

impl IsectReport {
    pub fn all_checks(&self) -> bool {
        self.core.as_ref().is_none_or(CoreReport::all_checks) && self.chain.as_ref().is_none_or(ChainReport::holds)
    }
}

/// Monodromy of the tower (when `k <= max_k`), witness displacement and,
/// given the lower central series depth `d` of the witness, the chain of
/// inequalities relating it to the crossing count.
pub fn intersection_report(cert: &TowerCertificate, d: Option<u64>, max_k: usize, group_cap: usize) -> IsectReport {
    let k = cert.k;
    let mut notes = Vec::new();
    let core = if k <= max_k {
        let t0 = &cert.triple;
        let gens = pi1_generators(&t0.surface, t0.v());
        let m = monodromy(&cert.tower, t0.v(), &gens);
        let report = normal_core_report(&m, k, group_cap);
        if let Some(n) = &report.note {
            notes.push(n.clone());
        }
        Some(report)
    } else {
        notes.push(format!(
            "k = {k} exceeds the monodromy cap {max_k}; only analytic bounds apply"
        ));
        None
    };
    if !cert.witness_displaced {
        notes.push("the witness loop fixes the base fiber point, so this tower does not separate the pair".into());
    }
    let depth_cap = if k >= 64 { u64::MAX } else { ((1u64 << k) - 2).max(1) };
    IsectReport {
        n0: cert.n0,
        k,
        k_bound: cert.k_bound,
        witness_displaced: cert.witness_displaced,
        depth_cap,
        core,
        chain: d.map(|d| consistency_chain(cert.n0 as u64, k as u64, d)),
        notes,
    }
}
