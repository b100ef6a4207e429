//! Portable tower certificates.
//!
//! A certificate stores the (bigon-free) input triple and the cocycle of every
//! level, so anyone can rebuild the covers and re-run the checks. The text
//! form is line oriented: `key: value` pairs, one block per level, and the
//! input as a single line of JSON at the end. Lines starting with `#` are
//! comments.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bounds::height_bound;
use crate::covering::{fiber_permutation, LiftKind};
use crate::error::{Error, Result};
use crate::f2::F2Vector;
use crate::surface::{build_surface, is_minimal_position, CurveArcTriple, InputSpec};
use crate::tower::{height_ok, replay, ArcStats, LevelRecord, Move, TowerCertificate};

pub const HEADER: &str = "# curve-towers certificate v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: Option<String>,
    pub genus: i64,
    pub n0: usize,
    pub bigon_moves: usize,
    pub k: usize,
    pub k_bound: u64,
    pub final_kind: LiftKind,
    pub witness_displaced: bool,
    pub checks: Vec<(String, bool)>,
    pub levels: Vec<LevelRecord>,
    /// The input after bigon removal.
    pub input: InputSpec,
}

impl Certificate {
    pub fn from_tower(name: Option<&str>, cert: &TowerCertificate) -> Certificate {
        let t = &cert.triple;
        Certificate {
            name: name.map(str::to_string),
            genus: cert.genus,
            n0: cert.n0,
            bigon_moves: cert.bigon_moves,
            k: cert.k,
            k_bound: cert.k_bound,
            final_kind: cert.final_kind,
            witness_displaced: cert.witness_displaced,
            checks: cert.checks.clone(),
            levels: cert.levels.clone(),
            input: InputSpec::describe(name.map(str::to_string), &t.surface, Some((&t.alpha, &t.beta, &t.tau))),
        }
    }

    pub fn all_checks(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok) && self.levels.iter().all(LevelRecord::all_checks)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "{HEADER}").unwrap();
        if let Some(n) = &self.name {
            writeln!(w, "name: {n}").unwrap();
        }
        writeln!(w, "genus: {}", self.genus).unwrap();
        writeln!(w, "n0: {}", self.n0).unwrap();
        writeln!(w, "bigon_moves: {}", self.bigon_moves).unwrap();
        writeln!(w, "k: {}", self.k).unwrap();
        writeln!(w, "k_bound: {}", self.k_bound).unwrap();
        writeln!(w, "final: {}", kind_text(self.final_kind)).unwrap();
        writeln!(w, "witness_displaced: {}", self.witness_displaced).unwrap();
        for (name, ok) in &self.checks {
            writeln!(w, "check: {} = {}", name, ok_text(*ok)).unwrap();
        }
        for l in &self.levels {
            writeln!(w, "level: {}", l.level).unwrap();
            writeln!(w, "  move: {}", move_text(l.step)).unwrap();
            writeln!(w, "  base_genus: {}", l.genus).unwrap();
            writeln!(w, "  functional: {}", l.functional).unwrap();
            writeln!(w, "  cocycle: {}", l.cocycle).unwrap();
            writeln!(w, "  lift: {}", kind_text(l.kind)).unwrap();
            match l.n_after {
                Some(n) => writeln!(w, "  crossings: {} -> {}", l.n_before, n).unwrap(),
                None => writeln!(w, "  crossings: {} -> open", l.n_before).unwrap(),
            }
            if let Some(m) = l.mode {
                writeln!(w, "  search: {m:?}").unwrap();
            }
            if let Some(a) = &l.arcs {
                writeln!(
                    w,
                    "  arcs: total={} good={} bad={} hits={} r={} r_good={} r_bad={} certified={}",
                    a.arcs, a.good, a.bad, a.hits, a.r, a.r_good, a.r_bad, a.certified
                )
                .unwrap();
            }
            for (name, ok) in &l.checks {
                writeln!(w, "  check: {} = {}", name, ok_text(*ok)).unwrap();
            }
        }
        writeln!(
            w,
            "input: {}",
            serde_json::to_string(&self.input).expect("input serializes")
        )
        .unwrap();
        out
    }

    /// Parse either the text form or JSON.
    pub fn parse(text: &str) -> Result<Certificate> {
        if text.trim_start().starts_with('{') {
            Ok(serde_json::from_str(text)?)
        } else {
            from_text(text)
        }
    }
}

fn ok_text(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn kind_text(k: LiftKind) -> &'static str {
    match k {
        LiftKind::Closed => "closed",
        LiftKind::PartiallyClosed { alpha_closed: true } => "partially-closed alpha",
        LiftKind::PartiallyClosed { alpha_closed: false } => "partially-closed beta",
        LiftKind::Nonclosed => "nonclosed",
    }
}

fn parse_kind(s: &str) -> Result<LiftKind> {
    Ok(match s {
        "closed" => LiftKind::Closed,
        "partially-closed alpha" => LiftKind::PartiallyClosed { alpha_closed: true },
        "partially-closed beta" => LiftKind::PartiallyClosed { alpha_closed: false },
        "nonclosed" => LiftKind::Nonclosed,
        _ => return Err(Error::Parse(format!("unknown lift kind {s:?}"))),
    })
}

fn move_text(m: Move) -> String {
    match m {
        Move::DistinctClasses => "distinct-classes".into(),
        Move::DisjointHomologous => "disjoint-homologous".into(),
        Move::Separating(c) => format!("separating-{}", format!("{c:?}").to_lowercase()),
        Move::MakeGood => "make-good".into(),
        Move::Resolve => "resolve".into(),
    }
}

fn parse_move(s: &str) -> Result<Move> {
    use crate::tower::Curve;
    Ok(match s {
        "distinct-classes" => Move::DistinctClasses,
        "disjoint-homologous" => Move::DisjointHomologous,
        "separating-alpha" => Move::Separating(Curve::Alpha),
        "separating-beta" => Move::Separating(Curve::Beta),
        "make-good" => Move::MakeGood,
        "resolve" => Move::Resolve,
        _ => return Err(Error::Parse(format!("unknown move {s:?}"))),
    })
}

fn parse_check(s: &str) -> Result<(String, bool)> {
    let (name, ok) = s
        .rsplit_once(" = ")
        .ok_or_else(|| Error::Parse(format!("malformed check {s:?}")))?;
    Ok((name.to_string(), ok == "ok"))
}

fn num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Parse(format!("line {line}: expected a number, found {s:?}")))
}

fn from_text(text: &str) -> Result<Certificate> {
    let mut lines = text.lines().enumerate();
    // leading comments may precede the header
    loop {
        match lines.next() {
            Some((_, h)) if h.trim() == HEADER => break,
            Some((_, h)) if h.trim().is_empty() || h.starts_with('#') => {}
            Some((i, _)) => return Err(Error::Parse(format!("line {}: expected {HEADER:?}", i + 1))),
            None => return Err(Error::Parse(format!("no {HEADER:?} line"))),
        }
    }
    let mut c = Certificate {
        name: None,
        genus: 0,
        n0: 0,
        bigon_moves: 0,
        k: 0,
        k_bound: 0,
        final_kind: LiftKind::Closed,
        witness_displaced: false,
        checks: Vec::new(),
        levels: Vec::new(),
        input: InputSpec {
            name: None,
            vertices: Vec::new(),
            edges: Vec::new(),
            faces: Vec::new(),
            curves: None,
            basepoints: None,
        },
    };
    let mut have_input = false;
    for (i, raw) in lines {
        let line = i + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let nested = raw.starts_with("  ");
        let (key, value) = raw
            .trim()
            .split_once(": ")
            .ok_or_else(|| Error::Parse(format!("line {line}: expected `key: value`")))?;
        if nested {
            let l = c
                .levels
                .last_mut()
                .ok_or_else(|| Error::Parse(format!("line {line}: level field outside a level")))?;
            match key {
                "move" => l.step = parse_move(value)?,
                "base_genus" => l.genus = num(line, value)?,
                "functional" => l.functional = value.parse()?,
                "cocycle" => l.cocycle = value.parse()?,
                "lift" => l.kind = parse_kind(value)?,
                "crossings" => {
                    let (a, b) = value
                        .split_once(" -> ")
                        .ok_or_else(|| Error::Parse(format!("line {line}: expected `n -> m`")))?;
                    l.n_before = num(line, a)?;
                    l.n_after = if b == "open" { None } else { Some(num(line, b)?) };
                }
                "search" => {
                    l.mode = Some(
                        serde_json::from_str(&format!("\"{value}\""))
                            .map_err(|e| Error::Parse(format!("line {line}: {e}")))?,
                    )
                }
                "arcs" => {
                    let mut a = ArcStats::default();
                    for part in value.split_whitespace() {
                        let (k, v) = part
                            .split_once('=')
                            .ok_or_else(|| Error::Parse(format!("line {line}: malformed arc field {part:?}")))?;
                        let v: usize = num(line, v)?;
                        match k {
                            "total" => a.arcs = v,
                            "good" => a.good = v,
                            "bad" => a.bad = v,
                            "hits" => a.hits = v,
                            "r" => a.r = v,
                            "r_good" => a.r_good = v,
                            "r_bad" => a.r_bad = v,
                            "certified" => a.certified = v,
                            _ => return Err(Error::Parse(format!("line {line}: unknown arc field {k:?}"))),
                        }
                    }
                    l.arcs = Some(a);
                }
                "check" => l.checks.push(parse_check(value)?),
                _ => return Err(Error::Parse(format!("line {line}: unknown level field {key:?}"))),
            }
            continue;
        }
        match key {
            "name" => c.name = Some(value.to_string()),
            "genus" => c.genus = num(line, value)?,
            "n0" => c.n0 = num(line, value)?,
            "bigon_moves" => c.bigon_moves = num(line, value)?,
            "k" => c.k = num(line, value)?,
            "k_bound" => c.k_bound = num(line, value)?,
            "final" => c.final_kind = parse_kind(value)?,
            "witness_displaced" => c.witness_displaced = value == "true",
            "check" => c.checks.push(parse_check(value)?),
            "level" => c.levels.push(LevelRecord {
                level: num(line, value)?,
                step: Move::DistinctClasses,
                functional: F2Vector::zeros(0),
                cocycle: F2Vector::zeros(0),
                kind: LiftKind::Closed,
                genus: 0,
                n_before: 0,
                n_after: None,
                mode: None,
                arcs: None,
                checks: Vec::new(),
            }),
            "input" => {
                c.input = serde_json::from_str(value).map_err(|e| Error::Parse(format!("line {line}: {e}")))?;
                have_input = true;
            }
            _ => return Err(Error::Parse(format!("line {line}: unknown field {key:?}"))),
        }
    }
    if !have_input {
        return Err(Error::Parse("certificate has no input line".into()));
    }
    Ok(c)
}

/// Outcome of re-checking a certificate from scratch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub checks: Vec<(String, bool)>,
}

impl Validation {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n.as_str())
            .collect()
    }
}

/// Rebuild the input and every cover, and compare with the recorded data.
/// Structural problems (unparseable input, a cocycle that is not a cocycle)
/// are errors; disagreements are failed checks.
pub fn validate_certificate(c: &Certificate) -> Result<Validation> {
    let built = build_surface(&c.input)?;
    let t0: CurveArcTriple = built
        .triple
        .ok_or_else(|| Error::Certificate("the input carries no curves".into()))?;
    let mut checks = Vec::new();
    let mut check = |name: String, ok: bool| checks.push((name, ok));
    check("surface genus".into(), t0.surface.genus() == c.genus);
    check("crossing count".into(), t0.n() == c.n0);
    check(
        "input pair has no bigon".into(),
        is_minimal_position(&t0.surface, &t0.alpha, &t0.beta)?.is_minimal(),
    );
    check("height matches level count".into(), c.k == c.levels.len());
    let cocycles: Vec<F2Vector> = c.levels.iter().map(|l| l.cocycle.clone()).collect();
    let (tower, kinds) = replay(&t0, &cocycles)?;
    for (l, (kind, n)) in c.levels.iter().zip(&kinds) {
        check(format!("level {} lift kind", l.level), *kind == l.kind);
        check(format!("level {} crossings", l.level), *n == l.n_after);
        check(
            format!("level {} crossings do not increase", l.level),
            n.is_none_or(|n| n <= l.n_before),
        );
    }
    let last = kinds.last().map(|(k, _)| *k);
    check(
        "top lift is partially closed".into(),
        last.is_some_and(LiftKind::is_partially_closed),
    );
    check("final kind".into(), last == Some(c.final_kind));
    check("height bound".into(), c.k_bound == height_bound(c.n0 as u64));
    check("k within the height bound".into(), height_ok(c.k, c.n0));
    let displaced = fiber_permutation(&tower, t0.v(), &t0.witness_word())[0] != 0;
    check("witness loop moves the base fiber point".into(), displaced);
    check("witness flag".into(), displaced == c.witness_displaced);
    Ok(Validation { checks })
}
