//! Weight-magnitude threshold filtrations and Betti curves.
//!
//! At threshold `t` the subgraph keeps every vertex and every arc with
//! `|w| >= t`. The thresholds of a curve are the distinct arc-weight
//! magnitudes, compared exactly as decimals.

use std::fmt::Write as _;

use bigdecimal::BigDecimal;
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::engine::{HomologyEngine, HomologyParams};
use crate::error::Result;
use crate::graph::{Digraph, WeightedDigraph};
use crate::linalg::FieldSpec;

/// Distinct weight magnitudes in strictly ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdSchedule {
    values: Vec<BigDecimal>,
}

impl ThresholdSchedule {
    pub fn values(&self) -> &[BigDecimal] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn magnitude_thresholds(wg: &WeightedDigraph) -> ThresholdSchedule {
    let mut values: Vec<BigDecimal> = wg.weights().iter().map(|w| w.abs().normalized()).collect();
    values.sort();
    values.dedup();
    ThresholdSchedule { values }
}

/// Keeps the arcs with `|w| >= t`; the vertex set is unchanged.
pub fn subgraph_at_threshold(wg: &WeightedDigraph, t: &BigDecimal) -> Digraph {
    let weights = wg.weights();
    wg.digraph().filter_arcs(|i, _, _| weights[i].abs() >= *t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveRow {
    pub threshold: BigDecimal,
    /// 1-based position of the threshold in the schedule.
    pub index: usize,
    pub betti: Vec<usize>,
}

/// Betti numbers of each thresholded subgraph, by ascending threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiCurve {
    pub kind: String,
    pub reduced: bool,
    pub field: FieldSpec,
    pub max_degree: usize,
    pub rows: Vec<CurveRow>,
}

impl BettiCurve {
    /// Number of thresholds `T`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `j / T` for the row at 1-based position `j`.
    pub fn normalized(&self, row: &CurveRow) -> f64 {
        row.index as f64 / self.rows.len() as f64
    }

    /// `threshold,normalized,beta_0,...,beta_{max_degree}` with one row per threshold.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("threshold,normalized");
        for p in 0..=self.max_degree {
            let _ = write!(out, ",beta_{p}");
        }
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "{},{}", row.threshold.to_plain_string(), self.normalized(row));
            for b in &row.betti {
                let _ = write!(out, ",{b}");
            }
            out.push('\n');
        }
        out
    }
}

fn row_at(
    wg: &WeightedDigraph,
    engine: &dyn HomologyEngine,
    params: &HomologyParams,
    index: usize,
    threshold: &BigDecimal,
) -> Result<CurveRow> {
    let sub = subgraph_at_threshold(wg, threshold);
    let summary = engine.compute(&sub, params)?;
    Ok(CurveRow { threshold: threshold.clone(), index: index + 1, betti: summary.betti() })
}

fn assemble(engine: &dyn HomologyEngine, params: &HomologyParams, rows: Vec<CurveRow>) -> BettiCurve {
    BettiCurve {
        kind: engine.name().to_string(),
        reduced: params.reduced,
        field: params.field,
        max_degree: params.max_degree,
        rows,
    }
}

/// Computes the curve one threshold after another.
pub fn betti_curve(wg: &WeightedDigraph, engine: &dyn HomologyEngine, params: &HomologyParams) -> Result<BettiCurve> {
    let schedule = magnitude_thresholds(wg);
    let rows = schedule
        .values()
        .iter()
        .enumerate()
        .map(|(i, t)| row_at(wg, engine, params, i, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(engine, params, rows))
}

/// Same result as [`betti_curve`], with thresholds computed concurrently on
/// the caller's pool. Rows are assembled in threshold order.
pub fn betti_curve_in_pool(
    wg: &WeightedDigraph,
    engine: &dyn HomologyEngine,
    params: &HomologyParams,
    pool: &ThreadPool,
) -> Result<BettiCurve> {
    let schedule = magnitude_thresholds(wg);
    let rows = pool.install(|| {
        schedule
            .values()
            .par_iter()
            .enumerate()
            .map(|(i, t)| row_at(wg, engine, params, i, t))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(assemble(engine, params, rows))
}

#[cfg(test)]
mod tests {
    use std::str::FromStr;

    use super::*;
    use crate::engine::PathHomology;
    use crate::graph::MlpSpec;

    fn dec(s: &str) -> BigDecimal {
        BigDecimal::from_str(s).unwrap()
    }

    fn chain(weights: &[&str]) -> WeightedDigraph {
        let arcs: Vec<_> = weights.iter().enumerate().map(|(i, w)| (i, i + 1, dec(w))).collect();
        WeightedDigraph::new(weights.len() + 1, &arcs).unwrap()
    }

    #[test]
    fn thresholds() {
        let s = magnitude_thresholds(&chain(&["1.0", "-1", "0.5"]));
        assert_eq!(s.values(), &[dec("0.5"), dec("1")]);
        assert_eq!(magnitude_thresholds(&chain(&["2", "2", "-2.00"])).len(), 1);
        assert!(magnitude_thresholds(&WeightedDigraph::unit(Digraph::empty(3))).is_empty());
        assert_eq!(magnitude_thresholds(&chain(&["1e-3", "0.001"])).len(), 1);
    }

    #[test]
    fn thresholded_subgraphs() {
        let wg = chain(&["0.9", "0.1"]);
        assert_eq!(subgraph_at_threshold(&wg, &dec("0")), wg.digraph().clone());
        assert_eq!(subgraph_at_threshold(&wg, &dec("0.5")).arcs(), &[(0, 1)]);
        let none = subgraph_at_threshold(&wg, &dec("1"));
        assert_eq!((none.vertex_count(), none.arc_count()), (3, 0));
        // ties are kept
        assert_eq!(subgraph_at_threshold(&wg, &dec("0.1")).arc_count(), 2);
    }

    #[test]
    fn unit_weights_give_one_row() {
        let g = MlpSpec::new(vec![2, 2]).unwrap().digraph();
        let params = HomologyParams { max_degree: 1, reduced: true, field: FieldSpec::Rationals };
        let curve = betti_curve(&WeightedDigraph::unit(g), &PathHomology, &params).unwrap();
        assert_eq!(curve.len(), 1);
        assert_eq!(curve.rows[0].betti, vec![0, 1]);
        assert_eq!(curve.to_csv(), "threshold,normalized,beta_0,beta_1\n1,1,0,1\n");
    }

    #[test]
    fn csv_layout() {
        let wg = chain(&["0.25", "-1.5"]);
        let params = HomologyParams { max_degree: 1, reduced: false, field: FieldSpec::Rationals };
        let csv = betti_curve(&wg, &PathHomology, &params).unwrap().to_csv();
        assert_eq!(csv, "threshold,normalized,beta_0,beta_1\n0.25,0.5,1,0\n1.5,1,2,0\n");
    }
}
