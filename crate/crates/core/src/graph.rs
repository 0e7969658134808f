//! Directed and undirected graph values, MLP architecture digraphs and a few
//! structural queries shared by the homology engines.

use std::collections::VecDeque;
use std::ops::Range;

use bigdecimal::BigDecimal;
use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vertex index in `0..vertex_count`.
pub type VertexId = usize;

/// Finite simple digraph without self-loops. Reciprocal arcs are allowed.
///
/// Arcs are kept sorted and every out-adjacency list is sorted, so two
/// digraphs built from the same arc set are identical regardless of input
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    vertex_count: usize,
    arcs: Vec<(VertexId, VertexId)>,
    out: Vec<Vec<VertexId>>,
}

impl Digraph {
    /// Builds a digraph, rejecting self-loops, out-of-range endpoints and
    /// repeated arcs.
    pub fn from_edge_list(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut arcs = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::BadVertex { vertex: w, vertex_count });
                }
            }
            if u == v {
                return Err(Error::SelfLoopRejected(u));
            }
            arcs.push((u, v));
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateArc(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_arcs(vertex_count, arcs))
    }

    fn from_sorted_arcs(vertex_count: usize, arcs: Vec<(VertexId, VertexId)>) -> Self {
        let mut out = vec![Vec::new(); vertex_count];
        for &(u, v) in &arcs {
            out[u].push(v);
        }
        Digraph { vertex_count, arcs, out }
    }

    /// Digraph with `vertex_count` vertices and no arcs.
    pub fn empty(vertex_count: usize) -> Self {
        Self::from_sorted_arcs(vertex_count, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    /// Sorted out-neighbours of `v`.
    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out[v]
    }

    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        u < self.vertex_count && self.out[u].binary_search(&v).is_ok()
    }

    /// Index of the arc `(u, v)` in [`Digraph::arcs`].
    pub fn arc_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.arcs.binary_search(&(u, v)).ok()
    }

    /// True if some pair of vertices is joined in both directions.
    pub fn has_reciprocal_arcs(&self) -> bool {
        self.arcs.iter().any(|&(u, v)| u < v && self.has_arc(v, u))
    }

    /// Sub-digraph on the same vertices keeping the arcs for which `keep`
    /// returns true.
    pub fn filter_arcs(&self, mut keep: impl FnMut(usize, VertexId, VertexId) -> bool) -> Digraph {
        let arcs = self
            .arcs
            .iter()
            .enumerate()
            .filter(|&(i, &(u, v))| keep(i, u, v))
            .map(|(_, &a)| a)
            .collect();
        Self::from_sorted_arcs(self.vertex_count, arcs)
    }

    /// Length (in arcs) of the longest directed path, or `None` when the
    /// digraph has a directed cycle.
    pub fn longest_path_length(&self) -> Option<usize> {
        let n = self.vertex_count;
        let mut indegree = vec![0usize; n];
        for &(_, v) in &self.arcs {
            indegree[v] += 1;
        }
        let mut queue: VecDeque<VertexId> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut depth = vec![0usize; n];
        let mut seen = 0;
        let mut longest = 0;
        while let Some(u) = queue.pop_front() {
            seen += 1;
            longest = longest.max(depth[u]);
            for &v in &self.out[u] {
                depth[v] = depth[v].max(depth[u] + 1);
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        (seen == n).then_some(longest)
    }

    pub fn is_acyclic(&self) -> bool {
        self.longest_path_length().is_some()
    }

    /// Number of allowed `p`-paths (walks with `p` arcs), counted without
    /// enumerating them. Saturates at `u128::MAX`.
    pub fn count_allowed_paths(&self, p: usize) -> u128 {
        let mut ending_at = vec![1u128; self.vertex_count];
        for _ in 0..p {
            let mut next = vec![0u128; self.vertex_count];
            for &(u, v) in &self.arcs {
                next[v] = next[v].saturating_add(ending_at[u]);
            }
            ending_at = next;
        }
        ending_at.into_iter().fold(0u128, |a, b| a.saturating_add(b))
    }

    pub fn underlying_undirected(&self) -> UndirectedGraph {
        let mut edges: Vec<(VertexId, VertexId)> =
            self.arcs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        edges.dedup();
        UndirectedGraph { vertex_count: self.vertex_count, edges }
    }
}

/// Simple undirected graph; edges are stored as `(min, max)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UndirectedGraph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl UndirectedGraph {
    pub fn new(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::BadVertex { vertex: w, vertex_count });
                }
            }
            if u == v {
                return Err(Error::SelfLoopRejected(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateArc(w[0].0, w[0].1));
        }
        Ok(UndirectedGraph { vertex_count, edges: normalized })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Component count and a per-vertex label equal to the smallest vertex
    /// of its component.
    pub fn connected_components(&self) -> (usize, Vec<VertexId>) {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            // the smaller root wins, so every root is its component's minimum
            if ru < rv {
                parent[rv] = ru;
            } else if rv < ru {
                parent[ru] = rv;
            }
        }
        let labels: Vec<VertexId> = (0..self.vertex_count).map(|v| find(&mut parent, v)).collect();
        let count = labels.iter().enumerate().filter(|&(v, &l)| v == l).count();
        (count, labels)
    }
}

/// Layer widths `(n_1, ..., n_L)` of a fully connected feed-forward network.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct MlpSpec {
    widths: Vec<usize>,
}

impl MlpSpec {
    pub fn new(widths: Vec<usize>) -> Result<Self> {
        if widths.is_empty() {
            return Err(Error::BadWidths("at least one layer is required".into()));
        }
        if let Some(i) = widths.iter().position(|&n| n == 0) {
            return Err(Error::BadWidths(format!("layer {} has width 0", i + 1)));
        }
        Ok(MlpSpec { widths })
    }

    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    pub fn layer_count(&self) -> usize {
        self.widths.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.widths.iter().sum()
    }

    pub fn arc_count(&self) -> usize {
        self.widths.windows(2).map(|w| w[0] * w[1]).sum()
    }

    /// Vertex range of layer `i` (zero-based).
    pub fn layer(&self, i: usize) -> Range<VertexId> {
        let start: usize = self.widths[..i].iter().sum();
        start..start + self.widths[i]
    }

    pub fn layers(&self) -> impl Iterator<Item = Range<VertexId>> + '_ {
        (0..self.widths.len()).map(|i| self.layer(i))
    }

    /// Complete bipartite arcs from every layer to the next one.
    pub fn digraph(&self) -> Digraph {
        let layers: Vec<_> = self.layers().collect();
        let mut arcs = Vec::with_capacity(self.arc_count());
        for pair in layers.windows(2) {
            for u in pair[0].clone() {
                for v in pair[1].clone() {
                    arcs.push((u, v));
                }
            }
        }
        // consecutive layers are increasing ranges, so the arcs come out sorted
        Digraph::from_sorted_arcs(self.vertex_count(), arcs)
    }
}

impl TryFrom<Vec<usize>> for MlpSpec {
    type Error = Error;
    fn try_from(widths: Vec<usize>) -> Result<Self> {
        MlpSpec::new(widths)
    }
}

impl From<MlpSpec> for Vec<usize> {
    fn from(spec: MlpSpec) -> Self {
        spec.widths
    }
}

impl std::fmt::Display for MlpSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let widths: Vec<String> = self.widths.iter().map(|n| n.to_string()).collect();
        write!(f, "MLP({}; {})", self.widths.len(), widths.join(","))
    }
}

pub fn mlp_digraph(spec: &MlpSpec) -> Digraph {
    spec.digraph()
}

/// Random digraph with `vertex_count` vertices where each ordered pair of
/// distinct vertices is an arc with probability `arc_probability`.
pub fn random_digraph(vertex_count: usize, arc_probability: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..vertex_count {
        for v in 0..vertex_count {
            if u != v && rng.gen_bool(arc_probability) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_sorted_arcs(vertex_count, arcs)
}

/// Digraph with one exact decimal weight per arc, aligned with
/// [`Digraph::arcs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    digraph: Digraph,
    weights: Vec<BigDecimal>,
}

impl WeightedDigraph {
    pub fn new(vertex_count: usize, arcs: &[(VertexId, VertexId, BigDecimal)]) -> Result<Self> {
        let pairs: Vec<_> = arcs.iter().map(|&(u, v, _)| (u, v)).collect();
        let digraph = Digraph::from_edge_list(vertex_count, &pairs)?;
        let mut weights = vec![BigDecimal::from(0); digraph.arc_count()];
        for (u, v, w) in arcs {
            let i = digraph.arc_index(*u, *v).expect("arc was just inserted");
            weights[i] = w.normalized();
        }
        Ok(WeightedDigraph { digraph, weights })
    }

    /// Pairs `digraph` with weights listed in the order of its sorted arcs.
    pub fn from_parts(digraph: Digraph, weights: Vec<BigDecimal>) -> Result<Self> {
        if weights.len() != digraph.arc_count() {
            return Err(Error::BadWeights(format!(
                "{} weights for {} arcs",
                weights.len(),
                digraph.arc_count()
            )));
        }
        let weights = weights.into_iter().map(|w| w.normalized()).collect();
        Ok(WeightedDigraph { digraph, weights })
    }

    /// Every arc gets weight 1.
    pub fn unit(digraph: Digraph) -> Self {
        let weights = vec![BigDecimal::from(1); digraph.arc_count()];
        WeightedDigraph { digraph, weights }
    }

    /// Random signed weights with pairwise distinct magnitudes drawn from
    /// `{0.0001, 0.0002, ..., 100}`, fully determined by `seed`.
    pub fn with_random_weights(digraph: Digraph, seed: u64) -> Self {
        const GRID: usize = 1_000_000;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = digraph.arc_count();
        assert!(m <= GRID, "too many arcs for distinct random magnitudes");
        let picks = sample(&mut rng, GRID, m).into_vec();
        let weights = picks
            .into_iter()
            .map(|k| {
                let magnitude = BigInt::from(k as u64 + 1);
                let signed = if rng.gen_bool(0.5) { -magnitude } else { magnitude };
                BigDecimal::new(signed, 4).normalized()
            })
            .collect();
        WeightedDigraph { digraph, weights }
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    /// Weights aligned with `digraph().arcs()`.
    pub fn weights(&self) -> &[BigDecimal] {
        &self.weights
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<&BigDecimal> {
        self.digraph.arc_index(u, v).map(|i| &self.weights[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edge_list_basics() {
        let g = Digraph::from_edge_list(3, &[]).unwrap();
        assert_eq!((g.vertex_count(), g.arc_count()), (3, 0));
        let g = Digraph::from_edge_list(3, &[(1, 2), (0, 1)]).unwrap();
        assert_eq!(g.arcs(), &[(0, 1), (1, 2)]);
        assert_eq!(Digraph::from_edge_list(2, &[(0, 0)]), Err(Error::SelfLoopRejected(0)));
        assert_eq!(
            Digraph::from_edge_list(2, &[(0, 2)]),
            Err(Error::BadVertex { vertex: 2, vertex_count: 2 })
        );
        assert_eq!(Digraph::from_edge_list(2, &[(0, 1), (0, 1)]), Err(Error::DuplicateArc(0, 1)));
    }

    #[test]
    fn mlp_shapes() {
        let g = MlpSpec::new(vec![2, 2]).unwrap().digraph();
        assert_eq!((g.vertex_count(), g.arc_count()), (4, 4));
        let g = MlpSpec::new(vec![4, 10, 3]).unwrap().digraph();
        assert_eq!((g.vertex_count(), g.arc_count()), (17, 70));
        assert!(!g.has_reciprocal_arcs());
        let g = MlpSpec::new(vec![1]).unwrap().digraph();
        assert_eq!((g.vertex_count(), g.arc_count()), (1, 0));
        assert!(MlpSpec::new(vec![]).is_err());
        assert!(MlpSpec::new(vec![3, 0]).is_err());
    }

    #[test]
    fn undirected_collapse() {
        let g = Digraph::from_edge_list(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(g.has_reciprocal_arcs());
        assert_eq!(g.underlying_undirected().edges(), &[(0, 1)]);
        let ug = MlpSpec::new(vec![4, 10, 3]).unwrap().digraph().underlying_undirected();
        assert_eq!((ug.vertex_count(), ug.edge_count()), (17, 70));
        assert_eq!(ug.connected_components().0, 1);
    }

    #[test]
    fn longest_paths() {
        assert_eq!(MlpSpec::new(vec![4, 10, 3]).unwrap().digraph().longest_path_length(), Some(2));
        let cyc = Digraph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(cyc.longest_path_length(), None);
        assert_eq!(Digraph::empty(1).longest_path_length(), Some(0));
    }

    #[test]
    fn components() {
        let ug = UndirectedGraph::new(3, &[]).unwrap();
        assert_eq!(ug.connected_components(), (3, vec![0, 1, 2]));
        let ug = UndirectedGraph::new(3, &[(2, 1), (0, 1)]).unwrap();
        assert_eq!(ug.connected_components(), (1, vec![0, 0, 0]));
        let ug = UndirectedGraph::new(5, &[(4, 2), (3, 1)]).unwrap();
        assert_eq!(ug.connected_components(), (3, vec![0, 1, 2, 1, 2]));
    }

    #[test]
    fn path_counts() {
        let g = MlpSpec::new(vec![4, 10, 3]).unwrap().digraph();
        assert_eq!(g.count_allowed_paths(0), 17);
        assert_eq!(g.count_allowed_paths(1), 70);
        assert_eq!(g.count_allowed_paths(2), 120);
        assert_eq!(g.count_allowed_paths(3), 0);
    }

    #[test]
    fn random_weights_distinct_and_reproducible() {
        let g = MlpSpec::new(vec![4, 10, 3]).unwrap().digraph();
        let a = WeightedDigraph::with_random_weights(g.clone(), 7);
        let b = WeightedDigraph::with_random_weights(g, 7);
        assert_eq!(a, b);
        let mut mags: Vec<_> = a.weights().iter().map(|w| w.abs()).collect();
        mags.sort();
        mags.dedup();
        assert_eq!(mags.len(), 70);
    }
}
