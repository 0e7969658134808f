use serde::{Deserialize, Serialize};

use crate::linalg::FieldSpec;

/// Chain-space sizes, boundary rank and Betti number in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub degree: usize,
    /// Size of the ambient generating set (allowed paths or flag simplices).
    pub dim_allowed: usize,
    /// Dimension of the chain space (Ω_p for path homology).
    pub dim_omega: usize,
    /// Rank of the boundary map leaving this degree; in degree 0 this is
    /// the augmentation rank (1 for reduced homology of a nonempty graph).
    pub rank_boundary: usize,
    pub betti: usize,
}

/// Betti numbers of a chain complex in degrees `0..=max_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub field: FieldSpec,
    pub reduced: bool,
    pub max_degree: usize,
    pub degrees: Vec<DegreeStats>,
    /// Chain-space dimension in degree `max_degree + 1`.
    pub next_dim: usize,
    /// Rank of the boundary leaving degree `max_degree + 1`.
    pub next_rank: usize,
    /// Set for the digraph without vertices.
    pub empty_graph: bool,
}

impl HomologySummary {
    /// Builds a summary from per-degree sizes and boundary ranks in degrees
    /// `0..=max_degree + 1`.
    pub(crate) fn assemble(
        field: FieldSpec,
        reduced: bool,
        empty_graph: bool,
        dim_allowed: &[usize],
        dim_omega: &[usize],
        ranks: &[usize],
    ) -> Self {
        let max_degree = dim_omega.len() - 2;
        let degrees = (0..=max_degree)
            .map(|p| DegreeStats {
                degree: p,
                dim_allowed: dim_allowed[p],
                dim_omega: dim_omega[p],
                rank_boundary: ranks[p],
                betti: dim_omega[p] - ranks[p] - ranks[p + 1],
            })
            .collect();
        HomologySummary {
            field,
            reduced,
            max_degree,
            degrees,
            next_dim: dim_omega[max_degree + 1],
            next_rank: ranks[max_degree + 1],
            empty_graph,
        }
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    /// `β_p = dim_p − rank_p − rank_{p+1}` in every reported degree.
    pub fn rank_identity_holds(&self) -> bool {
        self.degrees.iter().enumerate().all(|(p, d)| {
            let above = self.degrees.get(p + 1).map_or(self.next_rank, |n| n.rank_boundary);
            d.betti + d.rank_boundary + above == d.dim_omega
        })
    }

    /// Euler characteristic of the chain spaces against the Betti numbers.
    /// Only decidable when the complex vanishes above `max_degree`; the
    /// reduced version accounts for the degree −1 term.
    pub fn euler_check(&self) -> Option<bool> {
        if self.next_dim != 0 {
            return None;
        }
        let alt = |f: &dyn Fn(&DegreeStats) -> usize| -> i64 {
            self.degrees
                .iter()
                .map(|d| if d.degree % 2 == 0 { f(d) as i64 } else { -(f(d) as i64) })
                .sum()
        };
        let chi_chains = alt(&|d| d.dim_omega);
        let chi_betti = alt(&|d| d.betti);
        let shift = i64::from(self.reduced && !self.empty_graph);
        Some(chi_chains - shift == chi_betti)
    }
}
