//! Curves on surfaces with boundary, handled through the closed double.
//!
//! The fundamental group of a bordered surface is free, so the Magnus
//! expansion gives the exact lower central series depth d of the witness
//! loop. The tower is built on the double, whose crossing number is at most
//! that of the original pair, and d is then compared with the tower height.

use serde::{Deserialize, Serialize};

use crate::bounds::{consistency_chain, ChainReport};
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::nilpotent::{free_basis, lcs_degree, LcsDepth};
use crate::surface::{double, CurveArcTriple};
use crate::tower::{build_resolving_tower, intersection_report, IsectReport, TowerConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleConfig {
    pub tower: TowerConfig,
    pub magnus_depth: usize,
    /// Largest height whose monodromy group is enumerated.
    pub max_k: usize,
    pub group_cap: usize,
}

impl Default for DoubleConfig {
    fn default() -> Self {
        DoubleConfig {
            tower: TowerConfig::default(),
            magnus_depth: 8,
            max_k: 4,
            group_cap: 1 << 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleRun {
    pub genus: i64,
    pub boundary: usize,
    pub double_genus: i64,
    pub warning: Option<String>,
    /// Crossings of the pair on the bordered surface.
    pub n: usize,
    pub rank: usize,
    pub witness: String,
    pub depth: Option<LcsDepth>,
    pub certificate: Certificate,
    pub report: IsectReport,
    /// Chain evaluated with the crossing count on the bordered surface.
    pub chain: Option<ChainReport>,
    pub checks: Vec<(String, bool)>,
    pub notes: Vec<String>,
}

impl DoubleRun {
    pub fn all_checks(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
            && self.certificate.all_checks()
            && self.report.all_checks()
            && self.chain.as_ref().is_none_or(ChainReport::holds)
    }
}

pub fn double_pipeline(name: Option<&str>, t: &CurveArcTriple, cfg: &DoubleConfig) -> Result<DoubleRun> {
    let s = &t.surface;
    let d = double(s)?;
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let b = s.num_boundary_components();
    let expected = 2 * s.genus() + b as i64 - 1;
    checks.push((
        format!("double has genus 2g + b - 1 = {expected}"),
        d.surface.genus() == expected,
    ));
    checks.push(("double is closed".to_string(), d.surface.is_closed()));
    let up = CurveArcTriple::new(
        d.surface.clone(),
        d.embed_walk(s, &t.alpha)?,
        d.embed_walk(s, &t.beta)?,
        d.embed_walk(s, &t.tau)?,
    )?;
    checks.push(("embedding keeps the crossings".to_string(), up.n() == t.n()));
    let tower = build_resolving_tower(&up, &cfg.tower)?;
    checks.push(("crossings do not grow in the double".to_string(), tower.n0 <= t.n()));
    let report = intersection_report(&tower, None, cfg.max_k, cfg.group_cap);
    let certificate = Certificate::from_tower(name, &tower);

    let basis = free_basis(s)?;
    let word = basis.word_of(&t.witness_word());
    let depth = if word.is_empty() {
        notes.push("the witness loop is trivial in the fundamental group".into());
        None
    } else {
        Some(lcs_degree(&word, basis.rank, cfg.magnus_depth)?)
    };
    let chain = match depth {
        Some(LcsDepth::Exact(d)) => Some(consistency_chain(t.n() as u64, tower.k as u64, d as u64)),
        Some(LcsDepth::AtLeast(d)) => {
            notes.push(format!(
                "no Magnus term up to degree {} survives; the chain is checked with the lower estimate d >= {d}",
                cfg.magnus_depth
            ));
            Some(consistency_chain(t.n() as u64, tower.k as u64, d as u64))
        }
        None => None,
    };
    if let Some(w) = &d.warning {
        notes.push(w.clone());
    }
    Ok(DoubleRun {
        genus: s.genus(),
        boundary: b,
        double_genus: d.surface.genus(),
        warning: d.warning,
        n: t.n(),
        rank: basis.rank,
        witness: word.to_string(),
        depth,
        certificate,
        report,
        chain,
        checks,
        notes,
    })
}

/// Reject closed input early with a clear message.
pub fn require_bordered(t: &CurveArcTriple) -> Result<()> {
    if t.surface.is_closed() {
        return Err(Error::Precondition(
            "the surface has no boundary to double along".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::punctured_torus;

    #[test]
    fn punctured_torus_doubles_to_genus_two() {
        let ex = punctured_torus().unwrap();
        let run = double_pipeline(Some("pt"), &ex.triple, &DoubleConfig::default()).unwrap();
        assert_eq!((run.genus, run.boundary, run.double_genus), (1, 1, 2));
        assert_eq!(run.rank, 2);
        assert!(run.all_checks());
    }
}
