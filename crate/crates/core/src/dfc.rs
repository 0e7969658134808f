//! Directed flag complex homology and simplicial homology of graphs.

use log::warn;

use crate::graph::{Digraph, MlpSpec, UndirectedGraph, VertexId};
use crate::linalg::{FieldSpec, SparseMatrix};
use crate::summary::HomologySummary;

/// Vertex sequence with an arc `x_i -> x_j` for every `i < j`.
pub type DirectedSimplex = Vec<VertexId>;

/// Directed simplices of a digraph by dimension, each list lexicographically sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagComplex {
    simplices: Vec<Vec<DirectedSimplex>>,
}

impl FlagComplex {
    pub fn max_dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplices(&self, dim: usize) -> &[DirectedSimplex] {
        self.simplices.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    /// Boundary matrix from dimension `dim` to `dim - 1` (`dim >= 1`).
    pub fn boundary(&self, dim: usize, field: FieldSpec) -> SparseMatrix {
        assert!(dim >= 1);
        let rows = self.simplices(dim - 1);
        let cols = self.simplices(dim);
        let entries = cols.iter().enumerate().flat_map(|(c, s)| {
            (0..s.len()).map(move |i| {
                let mut face = s.clone();
                face.remove(i);
                let r = rows.binary_search(&face).expect("flag complexes are closed under faces");
                (r, c, if i % 2 == 0 { 1 } else { -1 })
            })
        });
        SparseMatrix::from_triplets(rows.len(), cols.len(), field, entries).expect("indices in range")
    }
}

/// Enumerates directed simplices up to `max_dim` by extending each ordered
/// clique with the common out-neighbours of all its vertices.
pub fn directed_flag_complex(g: &Digraph, max_dim: usize) -> FlagComplex {
    let mut simplices: Vec<Vec<DirectedSimplex>> = vec![Vec::new(); max_dim + 1];
    simplices[0] = (0..g.vertex_count()).map(|v| vec![v]).collect();
    for d in 1..=max_dim {
        let next: Vec<DirectedSimplex> = simplices[d - 1]
            .iter()
            .flat_map(|s| {
                let last = *s.last().unwrap();
                // candidates must follow the last vertex and be reachable from all earlier ones
                g.out_neighbors(last)
                    .iter()
                    .filter(move |&&z| s[..s.len() - 1].iter().all(|&x| g.has_arc(x, z)))
                    .map(move |&z| {
                        let mut t = s.clone();
                        t.push(z);
                        t
                    })
            })
            .collect();
        simplices[d] = next;
    }
    FlagComplex { simplices }
}

/// Homology of the directed flag complex in degrees `0..=max_dim`.
/// Non-reduced is the usual choice; reduced adds the augmentation in degree 0.
pub fn dfc_betti(g: &Digraph, max_dim: usize, field: FieldSpec, reduced: bool) -> HomologySummary {
    let complex = directed_flag_complex(g, max_dim + 1);
    let dims: Vec<usize> = (0..=max_dim + 1).map(|d| complex.count(d)).collect();
    let mut ranks = vec![0; max_dim + 2];
    let n = g.vertex_count();
    ranks[0] = usize::from(reduced && n > 0);
    for (d, rank) in ranks.iter_mut().enumerate().skip(1) {
        if dims[d] > 0 {
            *rank = complex.boundary(d, field).rank();
        }
    }
    HomologySummary::assemble(field, reduced, n == 0, &dims, &dims, &ranks)
}

/// Checks `∂_{d-1} ∘ ∂_d = 0` on the flag complex for `2 <= d <= max_dim`,
/// plus the augmentation composite in dimension 1.
pub fn check_chain_axiom(g: &Digraph, max_dim: usize, field: FieldSpec) -> Result<(), usize> {
    let complex = directed_flag_complex(g, max_dim);
    for d in 1..=max_dim {
        let upper = complex.boundary(d, field);
        let lower = if d == 1 {
            let n = complex.count(0);
            SparseMatrix::from_triplets(1, n, field, (0..n).map(|i| (0, i, 1))).expect("indices in range")
        } else {
            complex.boundary(d - 1, field)
        };
        if !lower.multiply(&upper).expect("conformable").is_zero() {
            return Err(d);
        }
    }
    Ok(())
}

/// Betti numbers of a graph seen as a 1-dimensional simplicial complex;
/// everything above degree 1 vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplicialBetti {
    pub beta0: usize,
    pub beta1: usize,
}

impl SimplicialBetti {
    /// Betti vector in degrees `0..=max_degree`.
    pub fn to_vec(self, max_degree: usize) -> Vec<usize> {
        (0..=max_degree)
            .map(|p| match p {
                0 => self.beta0,
                1 => self.beta1,
                _ => 0,
            })
            .collect()
    }
}

/// Components and independent cycles from the Euler characteristic:
/// `β_1 = #E − #V + #components`.
pub fn graph_simplicial_betti(g: &UndirectedGraph) -> SimplicialBetti {
    let (components, _) = g.connected_components();
    SimplicialBetti { beta0: components, beta1: g.edge_count() + components - g.vertex_count() }
}

/// `(1, 1 − #V + #E)` computed from the widths alone. The formula needs a
/// connected graph, so a single layer of width above 1 gives `None`.
pub fn theorem2_prediction(spec: &MlpSpec) -> Option<SimplicialBetti> {
    if spec.layer_count() == 1 && spec.vertex_count() > 1 {
        return None;
    }
    Some(SimplicialBetti { beta0: 1, beta1: 1 + spec.arc_count() - spec.vertex_count() })
}

/// Directed flag homology next to the simplicial homology of the
/// underlying undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfcComparison {
    pub dfc: Vec<usize>,
    pub simplicial: Vec<usize>,
    /// Reciprocal arcs break the identification of directed edges with
    /// undirected ones, so agreement is not expected then.
    pub has_reciprocal_arcs: bool,
}

impl DfcComparison {
    pub fn agrees(&self) -> bool {
        self.dfc == self.simplicial
    }
}

pub fn compare_dfc_with_simplicial(g: &Digraph, max_dim: usize, field: FieldSpec) -> DfcComparison {
    let has_reciprocal_arcs = g.has_reciprocal_arcs();
    if has_reciprocal_arcs {
        warn!("digraph has reciprocal arcs; flag homology need not match the underlying graph");
    }
    DfcComparison {
        dfc: dfc_betti(g, max_dim, field, false).betti(),
        simplicial: graph_simplicial_betti(&g.underlying_undirected()).to_vec(max_dim),
        has_reciprocal_arcs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transitive() -> Digraph {
        Digraph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn cyclic() -> Digraph {
        Digraph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn flag_complex_examples() {
        let c = directed_flag_complex(&transitive(), 3);
        assert_eq!(c.simplices(2), &[vec![0, 1, 2]]);
        assert_eq!(c.count(3), 0);
        let c = directed_flag_complex(&cyclic(), 3);
        assert_eq!((c.count(1), c.count(2)), (3, 0));
        let mlp = MlpSpec::new(vec![3, 2, 4]).unwrap().digraph();
        let c = directed_flag_complex(&mlp, 4);
        assert_eq!(c.count(1), 14);
        assert!((2..=4).all(|d| c.count(d) == 0));
    }

    #[test]
    fn flag_complex_is_face_closed() {
        let g = Digraph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (2, 4), (4, 0)]).unwrap();
        let c = directed_flag_complex(&g, 4);
        assert_eq!(c.count(3), 1);
        for d in 1..=c.max_dim() {
            for s in c.simplices(d) {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    assert!(c.simplices(d - 1).binary_search(&f).is_ok());
                }
            }
        }
    }

    #[test]
    fn dfc_betti_examples() {
        let mlp = MlpSpec::new(vec![4, 10, 3]).unwrap().digraph();
        assert_eq!(dfc_betti(&mlp, 2, FieldSpec::Rationals, false).betti(), vec![1, 54, 0]);
        assert_eq!(dfc_betti(&transitive(), 2, FieldSpec::Rationals, false).betti(), vec![1, 0, 0]);
        assert_eq!(dfc_betti(&Digraph::empty(3), 0, FieldSpec::Rationals, false).betti(), vec![3]);
        assert_eq!(dfc_betti(&Digraph::empty(3), 0, FieldSpec::Rationals, true).betti(), vec![2]);
    }

    #[test]
    fn simplicial_examples() {
        let ug = MlpSpec::new(vec![4, 10, 3]).unwrap().digraph().underlying_undirected();
        assert_eq!(graph_simplicial_betti(&ug), SimplicialBetti { beta0: 1, beta1: 54 });
        let tree = UndirectedGraph::new(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(graph_simplicial_betti(&tree), SimplicialBetti { beta0: 1, beta1: 0 });
        let two = UndirectedGraph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(graph_simplicial_betti(&two), SimplicialBetti { beta0: 2, beta1: 0 });
    }

    #[test]
    fn theorem2_values() {
        let p = |w: Vec<usize>| theorem2_prediction(&MlpSpec::new(w).unwrap());
        assert_eq!(p(vec![4, 10, 3]), Some(SimplicialBetti { beta0: 1, beta1: 54 }));
        assert_eq!(p(vec![1, 1, 1]), Some(SimplicialBetti { beta0: 1, beta1: 0 }));
        assert_eq!(p(vec![2, 2]), Some(SimplicialBetti { beta0: 1, beta1: 1 }));
        assert_eq!(p(vec![1]), Some(SimplicialBetti { beta0: 1, beta1: 0 }));
        assert_eq!(p(vec![3]), None);
    }

    #[test]
    fn reciprocal_pair_breaks_agreement() {
        let g = Digraph::from_edge_list(2, &[(0, 1), (1, 0)]).unwrap();
        let cmp = compare_dfc_with_simplicial(&g, 1, FieldSpec::Rationals);
        assert!(cmp.has_reciprocal_arcs);
        assert_eq!(cmp.dfc, vec![1, 1]);
        assert_eq!(cmp.simplicial, vec![1, 0]);
        assert!(!cmp.agrees());
    }

    #[test]
    fn chain_axiom() {
        let g = Digraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(check_chain_axiom(&g, 3, FieldSpec::Rationals), Ok(()));
        assert_eq!(check_chain_axiom(&g, 3, FieldSpec::gf2()), Ok(()));
    }
}
