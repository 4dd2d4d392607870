//! JSON and text renderings of quotient decisions.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::quotients::{Decision, LevelReport, ScanReport};
use crate::words::Alphabet;

/// One decided level: `{family, level, verdict, witness | coloring, oddGirth, edgeCount, millis}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelJson {
    pub family: String,
    pub level: usize,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring: Option<BTreeMap<String, u8>>,
    pub odd_girth: Option<usize>,
    pub edge_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

pub fn verdict_name(d: &Decision) -> &'static str {
    match d {
        Decision::Bipartite(_) => "Bipartite",
        Decision::OddWalk(_) => "OddWalk",
    }
}

pub fn level_json(family: &str, alpha: &Alphabet, l: &LevelReport, timing: bool) -> LevelJson {
    let (witness, coloring) = match &l.decision {
        Decision::OddWalk(w) => (Some(w.vertices.iter().map(|p| p.display(alpha)).collect()), None),
        Decision::Bipartite(c) => (None, Some(c.map.iter().map(|(p, &c)| (p.display(alpha), c)).collect())),
    };
    LevelJson {
        family: family.to_string(),
        level: l.level,
        verdict: verdict_name(&l.decision).to_string(),
        witness,
        coloring,
        odd_girth: l.odd_girth,
        edge_count: l.edge_count,
        millis: timing.then_some(l.millis),
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanJson {
    pub family: String,
    pub compact: bool,
    pub partial: bool,
    pub headline: String,
    pub levels: Vec<LevelJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compactness_gap: Option<String>,
}

pub fn scan_json(r: &ScanReport, alpha: &Alphabet, timing: bool) -> ScanJson {
    ScanJson {
        family: r.family.clone(),
        compact: r.compact,
        partial: r.partial,
        headline: r.headline(),
        levels: r.levels.iter().map(|l| level_json(&r.family, alpha, l, timing)).collect(),
        compactness_gap: None,
    }
}

pub fn level_text(alpha: &Alphabet, l: &LevelReport, timing: bool) -> String {
    let mut s = format!(
        "level {}: {} ({} vertices, {} edges",
        l.level,
        verdict_name(&l.decision),
        l.vertex_count,
        l.edge_count
    );
    if timing {
        s.push_str(&format!(", {} ms", l.millis));
    }
    s.push(')');
    match &l.decision {
        Decision::OddWalk(w) => s.push_str(&format!("\n  odd closed walk of length {}: {}", w.len(), w.display(alpha))),
        Decision::Bipartite(c) => {
            s.push_str(&format!("\n  level-{} 2-coloring with {} classes listed", c.level, c.map.len()))
        }
    }
    s
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize") + "\n"
}
