use std::fmt::Write as _;
use std::io::Read as _;
use std::path::Path;
use std::time::Instant;

use dighom::dfc::{self, graph_simplicial_betti, theorem2_prediction};
use dighom::edgelist::{parse_edge_list, write_digraph, write_weighted, EdgeList};
use dighom::filtration::betti_curve_in_pool;
use dighom::graph::random_digraph;
use dighom::path::{path_betti, theorem1_prediction};
use dighom::{Digraph, EngineRegistry, Error, FieldSpec, HomologyEngine, HomologyParams, MlpSpec, WeightedDigraph};

use crate::report::{Report, SCHEMA_VERSION};
use crate::{ComplexArgs, CurveArgs, HomArgs, VerifyArgs, Weights};

pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }

    fn guard(message: impl Into<String>) -> Self {
        Failure { code: EXIT_GUARD, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLargeForOracle(_) => Failure::guard(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::input(format!("stdin: {e}")))?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<EdgeList, Failure> {
    let text = read_input(path)?;
    parse_edge_list(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn mlp_gen(widths: Vec<usize>, weights: Weights, seed: Option<u64>, output: Option<&Path>) -> CmdResult {
    let spec = MlpSpec::new(widths).map_err(|e| Failure::input(e.to_string()))?;
    let g = spec.digraph();
    let text = match weights {
        Weights::None => write_digraph(&g),
        Weights::Unit => write_weighted(&WeightedDigraph::unit(g)),
        Weights::Random => {
            let seed = seed.unwrap_or_else(rand::random);
            eprintln!("weight seed {seed}");
            write_weighted(&WeightedDigraph::with_random_weights(g, seed))
        }
    };
    emit(&text, output)?;
    Ok(0)
}

/// Resolves max degree and reduced flag, and applies the generator guard.
fn params_for(engine: &dyn HomologyEngine, g: &Digraph, args: &ComplexArgs) -> Result<HomologyParams, Failure> {
    if !engine.supports_field(args.field) {
        return Err(Failure::input(format!("engine {} does not support {}", engine.name(), args.field)));
    }
    let max_degree = match (args.max_dim, g.longest_path_length()) {
        (Some(d), _) => d,
        (None, Some(longest)) => longest,
        (None, None) => return Err(Failure::guard("input has directed cycles; pass --max-dim explicitly")),
    };
    // one degree above the top is built to get the last boundary rank
    for p in 0..=max_degree + 1 {
        let count = engine.generator_count(g, p);
        if count > args.max_paths {
            return Err(Failure::guard(format!(
                "degree {p} has {count} generators, above --max-paths {}",
                args.max_paths
            )));
        }
    }
    let reduced = args.reduced_flag().unwrap_or_else(|| engine.default_reduced());
    Ok(HomologyParams { max_degree, reduced, field: args.field })
}

pub fn hom(args: &HomArgs) -> CmdResult {
    let registry = EngineRegistry::default();
    let engine = registry.get(&args.engine)?;
    let input = load(&args.input)?;
    let g = input.digraph();
    let params = params_for(engine, g, &args.complex)?;
    let start = Instant::now();
    let summary = engine.compute(g, &params)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let report = Report {
        schema_version: SCHEMA_VERSION,
        engine: engine.name().to_string(),
        input: args.input.display().to_string(),
        vertices: g.vertex_count(),
        arcs: g.arc_count(),
        betti: summary.betti(),
        summary,
        wall_time_ms,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    if let Some(path) = &args.output {
        emit(&json, Some(path))?;
    }
    if args.json {
        print!("{json}");
    } else {
        print!("{}", report.to_text());
    }
    Ok(0)
}

struct Line {
    field: FieldSpec,
    engine: &'static str,
    computed: Vec<usize>,
    predicted: Vec<usize>,
    source: &'static str,
}

impl Line {
    fn first_mismatch(&self) -> Option<usize> {
        (0..self.computed.len().max(self.predicted.len())).find(|&p| self.computed.get(p) != self.predicted.get(p))
    }
}

fn mlp_lines(spec: &MlpSpec, field: FieldSpec) -> [Line; 2] {
    let g = spec.digraph();
    let top = spec.layer_count() - 1;
    let (dfc_predicted, source) = match theorem2_prediction(spec) {
        Some(b) => (b.to_vec(top), "1-#V+#E"),
        None => (graph_simplicial_betti(&g.underlying_undirected()).to_vec(top), "simplicial"),
    };
    [
        Line {
            field,
            engine: "path",
            computed: path_betti(&g, top, true, field).betti(),
            predicted: theorem1_prediction(spec, top),
            source: "prod(n_i-1)",
        },
        Line {
            field,
            engine: "dfc",
            computed: dfc::dfc_betti(&g, top, field, false).betti(),
            predicted: dfc_predicted,
            source,
        },
    ]
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    let spec = MlpSpec::new(args.widths.clone()).map_err(|e| Failure::input(e.to_string()))?;
    let mut out = String::new();
    let _ = writeln!(out, "{spec}: {} vertices, {} arcs", spec.vertex_count(), spec.arc_count());
    let _ = writeln!(out, "{:<7} {:<6} {:<20} {:<20} {:<12} status", "field", "kind", "computed", "predicted", "formula");
    let mut mismatches = 0;
    for &field in &args.fields {
        for line in mlp_lines(&spec, field) {
            let status = match line.first_mismatch() {
                None => "ok".to_string(),
                Some(p) => {
                    mismatches += 1;
                    format!("MISMATCH at degree {p}")
                }
            };
            let _ = writeln!(
                out,
                "{:<7} {:<6} {:<20} {:<20} {:<12} {status}",
                line.field.to_string(),
                line.engine,
                format!("{:?}", line.computed),
                format!("{:?}", line.predicted),
                line.source
            );
        }
    }
    if args.random > 0 {
        let seed = args.seed.unwrap_or_else(rand::random);
        let _ = writeln!(out, "oracle comparison on {} random digraphs, seed {seed}", args.random);
        mismatches += oracle_sweep(args.random, seed, &mut out);
    }
    let _ = writeln!(out, "{}", if mismatches == 0 { "PASS" } else { "FAIL" });
    print!("{out}");
    Ok(if mismatches == 0 { 0 } else { EXIT_MISMATCH })
}

/// Engines against oracles over ℚ on `count` digraphs with at most 7 vertices.
fn oracle_sweep(count: usize, seed: u64, out: &mut String) -> usize {
    let registry = EngineRegistry::default();
    let pairs = [("path", "oracle-path"), ("dfc", "oracle-dfc")];
    let mut mismatches = 0;
    for i in 0..count as u64 {
        let graph_seed = seed.wrapping_add(i);
        let g = random_digraph(1 + (graph_seed % 7) as usize, 0.3, graph_seed);
        for reduced in [false, true] {
            let params = HomologyParams { max_degree: 4, reduced, field: FieldSpec::Rationals };
            for (engine, oracle) in pairs {
                let a = registry.get(engine).and_then(|e| e.compute(&g, &params)).map(|s| s.betti());
                let b = registry.get(oracle).and_then(|e| e.compute(&g, &params)).map(|s| s.betti());
                if a != b {
                    mismatches += 1;
                    let _ = writeln!(out, "graph seed {graph_seed} {engine} reduced={reduced}: {a:?} vs oracle {b:?}");
                }
            }
        }
    }
    mismatches
}

pub fn curve(args: &CurveArgs) -> CmdResult {
    let registry = EngineRegistry::default();
    let engine = registry.get(&args.kind)?;
    let input = load(&args.input)?;
    let Some(wg) = input.weighted() else {
        return Err(Failure::input(format!("{}: curve needs a weight on every arc", args.input.display())));
    };
    let params = params_for(engine, wg.digraph(), &args.complex)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Failure::input(format!("thread pool: {e}")))?;
    let curve = betti_curve_in_pool(wg, engine, &params, &pool)?;
    emit(&curve.to_csv(), args.output.as_deref())?;
    Ok(0)
}

pub fn engines() -> CmdResult {
    let registry = EngineRegistry::default();
    for engine in registry.iter() {
        let convention = if engine.default_reduced() { "reduced" } else { "non-reduced" };
        println!("{:<12} {:<12} {}", engine.name(), convention, engine.description());
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatch_degree() {
        let line = |computed: Vec<usize>, predicted: Vec<usize>| Line {
            field: FieldSpec::Rationals,
            engine: "path",
            computed,
            predicted,
            source: "",
        };
        assert_eq!(line(vec![0, 1], vec![0, 1]).first_mismatch(), None);
        assert_eq!(line(vec![0, 2], vec![0, 1]).first_mismatch(), Some(1));
        assert_eq!(line(vec![0], vec![0, 0]).first_mismatch(), Some(1));
    }

    #[test]
    fn mlp_predictions_hold() {
        for widths in [vec![3], vec![2, 2], vec![3, 1, 2]] {
            let spec = MlpSpec::new(widths).unwrap();
            for line in mlp_lines(&spec, FieldSpec::gf3()) {
                assert_eq!(line.first_mismatch(), None, "{spec} {}", line.engine);
            }
        }
    }

    #[test]
    fn error_exit_codes() {
        assert_eq!(Failure::from(Error::TooLargeForOracle("x".into())).code, EXIT_GUARD);
        assert_eq!(Failure::from(Error::UnknownEngine("x".into())).code, EXIT_INPUT);
    }

    #[test]
    fn default_degree_and_guard() {
        let args = ComplexArgs { field: FieldSpec::Rationals, reduced: false, non_reduced: false, max_dim: None, max_paths: 10 };
        let registry = EngineRegistry::default();
        let path = registry.get("path").unwrap();
        let chain = Digraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let params = params_for(path, &chain, &args).unwrap();
        assert_eq!((params.max_degree, params.reduced), (2, true));
        let dense = MlpSpec::new(vec![4, 4]).unwrap().digraph();
        assert_eq!(params_for(path, &dense, &args).unwrap_err().code, EXIT_GUARD);
    }
}
