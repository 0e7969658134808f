//! Homology engines behind one trait, looked up by name at runtime.
//!
//! The CLI and the filtration code only ever see `&dyn HomologyEngine`;
//! which concrete computation runs is decided by the name a user passes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::linalg::FieldSpec;
use crate::summary::HomologySummary;
use crate::{dfc, oracle, path};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologyParams {
    pub max_degree: usize,
    pub reduced: bool,
    pub field: FieldSpec,
}

pub trait HomologyEngine: Send + Sync {
    /// Registry key, e.g. `path`.
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Convention used when the caller does not choose one.
    fn default_reduced(&self) -> bool;

    /// Fields the engine can compute over.
    fn supports_field(&self, _field: FieldSpec) -> bool {
        true
    }

    /// Size of the generating set in degree `p`, counted cheaply if
    /// possible. Used for resource guards before computing.
    fn generator_count(&self, g: &Digraph, p: usize) -> u128;

    fn compute(&self, g: &Digraph, params: &HomologyParams) -> Result<HomologySummary>;

    /// `∂∘∂ = 0` on the complex built for `params`; the failing degree otherwise.
    fn check_chain_axiom(&self, g: &Digraph, params: &HomologyParams) -> std::result::Result<(), usize>;
}

pub struct PathHomology;

impl HomologyEngine for PathHomology {
    fn name(&self) -> &'static str {
        "path"
    }
    fn description(&self) -> &'static str {
        "path homology on ∂-invariant allowed paths (sparse exact engine)"
    }
    fn default_reduced(&self) -> bool {
        true
    }
    fn generator_count(&self, g: &Digraph, p: usize) -> u128 {
        g.count_allowed_paths(p)
    }
    fn compute(&self, g: &Digraph, params: &HomologyParams) -> Result<HomologySummary> {
        Ok(path::path_betti(g, params.max_degree, params.reduced, params.field))
    }
    fn check_chain_axiom(&self, g: &Digraph, params: &HomologyParams) -> std::result::Result<(), usize> {
        path::check_chain_axiom(g, params.max_degree, params.field)
    }
}

pub struct FlagComplexHomology;

impl HomologyEngine for FlagComplexHomology {
    fn name(&self) -> &'static str {
        "dfc"
    }
    fn description(&self) -> &'static str {
        "directed flag complex homology (sparse exact engine)"
    }
    fn default_reduced(&self) -> bool {
        false
    }
    fn generator_count(&self, g: &Digraph, p: usize) -> u128 {
        // flag simplices are allowed paths with extra arcs, so this bounds them
        g.count_allowed_paths(p)
    }
    fn compute(&self, g: &Digraph, params: &HomologyParams) -> Result<HomologySummary> {
        Ok(dfc::dfc_betti(g, params.max_degree, params.field, params.reduced))
    }
    fn check_chain_axiom(&self, g: &Digraph, params: &HomologyParams) -> std::result::Result<(), usize> {
        dfc::check_chain_axiom(g, params.max_degree + 1, params.field)
    }
}

pub struct OraclePathHomology;

impl HomologyEngine for OraclePathHomology {
    fn name(&self) -> &'static str {
        "oracle-path"
    }
    fn description(&self) -> &'static str {
        "brute-force dense reference for path homology (rationals, small graphs)"
    }
    fn default_reduced(&self) -> bool {
        true
    }
    fn supports_field(&self, field: FieldSpec) -> bool {
        field == FieldSpec::Rationals
    }
    fn generator_count(&self, g: &Digraph, p: usize) -> u128 {
        let n = g.vertex_count() as u128;
        n * n.saturating_sub(1).saturating_pow(p as u32)
    }
    fn compute(&self, g: &Digraph, params: &HomologyParams) -> Result<HomologySummary> {
        require_rationals(self, params.field)?;
        oracle::oracle_path_betti(g, params.max_degree, params.reduced)
    }
    fn check_chain_axiom(&self, g: &Digraph, params: &HomologyParams) -> std::result::Result<(), usize> {
        if oracle::lambda_chain_axiom(g.vertex_count(), params.max_degree + 1) { Ok(()) } else { Err(0) }
    }
}

pub struct OracleFlagHomology;

impl HomologyEngine for OracleFlagHomology {
    fn name(&self) -> &'static str {
        "oracle-dfc"
    }
    fn description(&self) -> &'static str {
        "brute-force dense reference for flag complex homology (rationals, small graphs)"
    }
    fn default_reduced(&self) -> bool {
        false
    }
    fn supports_field(&self, field: FieldSpec) -> bool {
        field == FieldSpec::Rationals
    }
    fn generator_count(&self, g: &Digraph, p: usize) -> u128 {
        let n = g.vertex_count() as u128;
        (0..=p as u128).fold(1u128, |acc, i| acc.saturating_mul(n.saturating_sub(i)))
    }
    fn compute(&self, g: &Digraph, params: &HomologyParams) -> Result<HomologySummary> {
        require_rationals(self, params.field)?;
        oracle::oracle_dfc_betti(g, params.max_degree, params.reduced)
    }
    fn check_chain_axiom(&self, g: &Digraph, params: &HomologyParams) -> std::result::Result<(), usize> {
        if oracle::flag_chain_axiom(g, params.max_degree + 1) { Ok(()) } else { Err(0) }
    }
}

fn require_rationals(engine: &dyn HomologyEngine, field: FieldSpec) -> Result<()> {
    if engine.supports_field(field) {
        Ok(())
    } else {
        Err(Error::FieldError(engine.name().to_string(), field.to_string()))
    }
}

/// Name-keyed collection of engines.
pub struct EngineRegistry {
    engines: BTreeMap<&'static str, Box<dyn HomologyEngine>>,
}

impl EngineRegistry {
    pub fn empty() -> Self {
        EngineRegistry { engines: BTreeMap::new() }
    }

    /// Replaces any engine already registered under the same name.
    pub fn register(&mut self, engine: Box<dyn HomologyEngine>) {
        self.engines.insert(engine.name(), engine);
    }

    pub fn get(&self, name: &str) -> Result<&dyn HomologyEngine> {
        self.engines.get(name).map(|e| e.as_ref()).ok_or_else(|| Error::UnknownEngine(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.engines.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn HomologyEngine> {
        self.engines.values().map(|e| e.as_ref())
    }
}

impl Default for EngineRegistry {
    /// `path`, `dfc`, `oracle-path` and `oracle-dfc`.
    fn default() -> Self {
        let mut registry = EngineRegistry::empty();
        registry.register(Box::new(PathHomology));
        registry.register(Box::new(FlagComplexHomology));
        registry.register(Box::new(OraclePathHomology));
        registry.register(Box::new(OracleFlagHomology));
        registry
    }
}
