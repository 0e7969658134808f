use std::fmt::Write as _;

use dighom::HomologySummary;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Self-describing output of `hom`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub engine: String,
    pub input: String,
    pub vertices: usize,
    pub arcs: usize,
    pub betti: Vec<usize>,
    pub summary: HomologySummary,
    pub wall_time_ms: f64,
}

impl Report {
    pub fn to_text(&self) -> String {
        let s = &self.summary;
        let mut out = String::new();
        let _ = writeln!(out, "engine   {}", self.engine);
        let _ = writeln!(out, "input    {} ({} vertices, {} arcs)", self.input, self.vertices, self.arcs);
        let _ = writeln!(out, "field    {}", s.field);
        let _ = writeln!(out, "reduced  {}", s.reduced);
        let _ = writeln!(out, "{:>6} {:>12} {:>12} {:>12} {:>8}", "degree", "generators", "dim Ω", "rank ∂", "betti");
        for d in &s.degrees {
            let _ = writeln!(
                out,
                "{:>6} {:>12} {:>12} {:>12} {:>8}",
                d.degree, d.dim_allowed, d.dim_omega, d.rank_boundary, d.betti
            );
        }
        let _ = writeln!(out, "betti    {:?}", self.betti);
        let _ = writeln!(out, "time     {:.3} ms", self.wall_time_ms);
        out
    }
}
