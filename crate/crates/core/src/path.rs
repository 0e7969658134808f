//! Path homology of digraphs.
//!
//! Chains live on allowed elementary paths. The boundary of an allowed path
//! is the alternating sum of its vertex-omission faces; faces with a repeated
//! consecutive vertex are identified with zero (regular path homology). The
//! chain complex is formed by the ∂-invariant subspaces Ω_p, i.e. allowed
//! chains whose boundary has no component on non-allowed paths.
//!
//! All path lists are kept in lexicographic vertex order, so coordinates and
//! canonical kernel bases are reproducible.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::graph::{Digraph, MlpSpec, VertexId};
use crate::linalg::{FieldSpec, Scalar, SparseMatrix};
use crate::summary::HomologySummary;

/// A sequence `(x_0, ..., x_p)` of vertices; its degree is `p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryPath(Vec<VertexId>);

impl ElementaryPath {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        assert!(!vertices.is_empty(), "an elementary path has at least one vertex");
        ElementaryPath(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    /// No vertex repeats consecutively.
    pub fn is_regular(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_allowed(&self, g: &Digraph) -> bool {
        self.0.windows(2).all(|w| g.has_arc(w[0], w[1]))
    }

    /// The path with vertex `i` omitted.
    pub fn face(&self, i: usize) -> ElementaryPath {
        let mut v = self.0.clone();
        v.remove(i);
        ElementaryPath(v)
    }

    /// Concatenation `self · other`.
    pub fn join(&self, other: &ElementaryPath) -> ElementaryPath {
        ElementaryPath(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for ElementaryPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Allowed `p`-paths for every `p` in `0..=max`, each list in lexicographic order.
pub fn allowed_paths_upto(g: &Digraph, max: usize) -> Vec<Vec<ElementaryPath>> {
    let mut levels: Vec<Vec<ElementaryPath>> = Vec::with_capacity(max + 1);
    levels.push((0..g.vertex_count()).map(|v| ElementaryPath(vec![v])).collect());
    for _ in 0..max {
        let prev = levels.last().unwrap();
        let next = prev
            .iter()
            .flat_map(|path| {
                let last = *path.0.last().unwrap();
                g.out_neighbors(last).iter().map(move |&w| {
                    let mut v = path.0.clone();
                    v.push(w);
                    ElementaryPath(v)
                })
            })
            .collect();
        levels.push(next);
    }
    levels
}

/// Allowed `p`-paths in lexicographic order.
pub fn allowed_paths(g: &Digraph, p: usize) -> Vec<ElementaryPath> {
    allowed_paths_upto(g, p).pop().unwrap()
}

/// The boundary of the allowed `p`-paths split by the kind of face.
#[derive(Debug, Clone)]
pub struct BoundaryBlocks {
    pub degree: usize,
    /// Column labels: allowed `p`-paths.
    pub columns: Vec<ElementaryPath>,
    /// Row labels of `allowed_block`: allowed `(p-1)`-paths.
    pub allowed_rows: Vec<ElementaryPath>,
    /// Row labels of `non_allowed_block`: the regular non-allowed faces that occur.
    pub non_allowed_rows: Vec<ElementaryPath>,
    pub allowed_block: SparseMatrix,
    pub non_allowed_block: SparseMatrix,
}

fn blocks_from(
    g: &Digraph,
    degree: usize,
    columns: Vec<ElementaryPath>,
    allowed_rows: Vec<ElementaryPath>,
    field: FieldSpec,
) -> BoundaryBlocks {
    let mut allowed_terms = Vec::new();
    let mut other_terms: Vec<(ElementaryPath, usize, i64)> = Vec::new();
    for (c, path) in columns.iter().enumerate() {
        for i in 0..=degree {
            let face = path.face(i);
            if !face.is_regular() {
                continue;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            match allowed_rows.binary_search(&face) {
                Ok(r) => allowed_terms.push((r, c, sign)),
                Err(_) => {
                    debug_assert!(!face.is_allowed(g));
                    other_terms.push((face, c, sign));
                }
            }
        }
    }
    let non_allowed_rows: Vec<ElementaryPath> =
        other_terms.iter().map(|(f, _, _)| f.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let other_entries = other_terms
        .into_iter()
        .map(|(f, c, s)| (non_allowed_rows.binary_search(&f).unwrap(), c, s));
    let allowed_block = SparseMatrix::from_triplets(allowed_rows.len(), columns.len(), field, allowed_terms)
        .expect("indices in range");
    let non_allowed_block =
        SparseMatrix::from_triplets(non_allowed_rows.len(), columns.len(), field, other_entries)
            .expect("indices in range");
    BoundaryBlocks { degree, columns, allowed_rows, non_allowed_rows, allowed_block, non_allowed_block }
}

/// Boundary of the allowed `p`-paths (`p >= 1`), with allowed faces in one
/// block and regular non-allowed faces in the other. Irregular faces are dropped.
pub fn boundary_blocks(g: &Digraph, p: usize, field: FieldSpec) -> BoundaryBlocks {
    assert!(p >= 1, "boundary blocks start in degree 1");
    let mut levels = allowed_paths_upto(g, p);
    let columns = levels.pop().unwrap();
    let rows = levels.pop().unwrap();
    blocks_from(g, p, columns, rows, field)
}

/// Basis of Ω_p in the coordinates of the allowed `p`-paths.
#[derive(Debug, Clone)]
pub struct OmegaBasis {
    pub degree: usize,
    pub allowed_paths: Vec<ElementaryPath>,
    /// One column per basis vector, rows indexed by `allowed_paths`.
    pub basis: SparseMatrix,
}

impl OmegaBasis {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

fn omega_from(blocks: Option<&BoundaryBlocks>, allowed: Vec<ElementaryPath>, degree: usize, field: FieldSpec) -> OmegaBasis {
    let basis = match blocks {
        // every face of an allowed 0- or 1-path is allowed
        Some(b) if degree >= 2 => b.non_allowed_block.null_space(),
        Some(b) => SparseMatrix::identity(b.columns.len(), field),
        None => SparseMatrix::identity(allowed.len(), field),
    };
    OmegaBasis { degree, allowed_paths: allowed, basis }
}

pub fn omega_basis(g: &Digraph, p: usize, field: FieldSpec) -> OmegaBasis {
    if p == 0 {
        return omega_from(None, allowed_paths(g, 0), 0, field);
    }
    let blocks = boundary_blocks(g, p, field);
    let allowed = blocks.columns.clone();
    omega_from(Some(&blocks), allowed, p, field)
}

/// Degree up to which chains have to be built to report `max_degree`: one
/// more than `max_degree`, but never past the longest path of a DAG.
fn top_degree(g: &Digraph, max_degree: usize) -> usize {
    match g.longest_path_length() {
        Some(longest) => (max_degree + 1).min(longest),
        None => max_degree + 1,
    }
}

/// Path homology Betti numbers in degrees `0..=max_degree`.
///
/// In reduced mode Ω_0 maps onto the field by the coefficient sum. For a
/// DAG nothing above its longest path is built; those degrees are zero.
pub fn path_betti(g: &Digraph, max_degree: usize, reduced: bool, field: FieldSpec) -> HomologySummary {
    let top = top_degree(g, max_degree);
    let levels = allowed_paths_upto(g, top);
    let mut dim_allowed = vec![0; max_degree + 2];
    let mut dim_omega = vec![0; max_degree + 2];
    let mut ranks = vec![0; max_degree + 3];

    let n = g.vertex_count();
    dim_allowed[0] = n;
    dim_omega[0] = n;
    ranks[0] = usize::from(reduced && n > 0);
    for p in 1..=top {
        let blocks = blocks_from(g, p, levels[p].clone(), levels[p - 1].clone(), field);
        let omega = omega_from(Some(&blocks), Vec::new(), p, field);
        dim_allowed[p] = levels[p].len();
        dim_omega[p] = omega.dim();
        ranks[p] = blocks.allowed_block.multiply(&omega.basis).expect("conformable").rank();
    }
    ranks.truncate(max_degree + 2);
    HomologySummary::assemble(field, reduced, n == 0, &dim_allowed, &dim_omega, &ranks)
}

/// Checks `∂_{p-1} ∘ ∂_p = 0` on Ω_p for `1 <= p <= max_degree + 1`,
/// including the augmentation in degree 0. Returns the first failing degree.
pub fn check_chain_axiom(g: &Digraph, max_degree: usize, field: FieldSpec) -> std::result::Result<(), usize> {
    let top = top_degree(g, max_degree);
    let levels = allowed_paths_upto(g, top);
    let mut lower: Option<BoundaryBlocks> = None;
    for p in 1..=top {
        let blocks = blocks_from(g, p, levels[p].clone(), levels[p - 1].clone(), field);
        let omega = omega_from(Some(&blocks), Vec::new(), p, field);
        if !blocks.non_allowed_block.multiply(&omega.basis).expect("conformable").is_zero() {
            return Err(p);
        }
        let image = blocks.allowed_block.multiply(&omega.basis).expect("conformable");
        let composite_zero = match &lower {
            None => {
                let augmentation = SparseMatrix::from_triplets(
                    1,
                    levels[0].len(),
                    field,
                    (0..levels[0].len()).map(|i| (0, i, 1)),
                )
                .expect("indices in range");
                augmentation.multiply(&image).expect("conformable").is_zero()
            }
            Some(lb) => {
                lb.allowed_block.multiply(&image).expect("conformable").is_zero()
                    && lb.non_allowed_block.multiply(&image).expect("conformable").is_zero()
            }
        };
        if !composite_zero {
            return Err(p);
        }
        lower = Some(blocks);
    }
    Ok(())
}

/// Closed-form reduced path Betti numbers of an MLP digraph: the product
/// of `(n_i - 1)` in degree `L - 1`, zero elsewhere.
pub fn theorem1_prediction(spec: &MlpSpec, max_degree: usize) -> Vec<usize> {
    let mut betti = vec![0; max_degree + 1];
    let top = spec.layer_count() - 1;
    if top <= max_degree {
        betti[top] = spec.widths().iter().map(|n| n - 1).fold(1usize, usize::saturating_mul);
    }
    betti
}

/// A formal linear combination of elementary paths of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathChain {
    degree: usize,
    field: FieldSpec,
    terms: BTreeMap<ElementaryPath, Scalar>,
}

impl PathChain {
    pub fn zero(degree: usize, field: FieldSpec) -> Self {
        PathChain { degree, field, terms: BTreeMap::new() }
    }

    /// Adds `coeff · path`; zero coefficients are dropped.
    pub fn add_term(&mut self, path: ElementaryPath, coeff: i64) {
        assert_eq!(path.degree(), self.degree, "chain terms must share one degree");
        let add = self.field.from_i64(coeff);
        let next = match self.terms.remove(&path) {
            None => add,
            Some(old) => sum_scalars(self.field, [old, add].iter()),
        };
        if !next.is_zero() {
            self.terms.insert(path, next);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<ElementaryPath, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coordinates against a lexicographically sorted path list, or `None`
    /// if some term is not in the list.
    pub fn coordinates(&self, basis: &[ElementaryPath]) -> Option<Vec<(usize, Scalar)>> {
        self.terms
            .iter()
            .map(|(path, c)| basis.binary_search(path).ok().map(|i| (i, c.clone())))
            .collect()
    }

    /// Coefficient sum, the augmentation of a degree-0 chain.
    pub fn coefficient_sum(&self) -> Scalar {
        sum_scalars(self.field, self.terms.values())
    }
}

fn sum_scalars<'a>(field: FieldSpec, values: impl Iterator<Item = &'a Scalar>) -> Scalar {
    let mut acc = field.zero();
    for v in values {
        acc = match (acc, v) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue(a), Scalar::Residue(b)) => {
                Scalar::Residue(((a as u64 + *b as u64) % field.characteristic() as u64) as u32)
            }
            _ => unreachable!("one field per chain"),
        };
    }
    acc
}

/// The chains `(w¹_1 − w¹_{j_1})(w²_1 − w²_{j_2})⋯(wᴸ_1 − wᴸ_{j_L})` for
/// `j_i ∈ 2..=n_i`, where `wⁱ_k` is the k-th vertex of layer i. There are
/// `∏(n_i − 1)` of them, listed with `(j_1, ..., j_L)` in lexicographic
/// order; expanded, each has `2^L` terms with coefficients ±1.
pub fn explicit_cycle_basis(spec: &MlpSpec, field: FieldSpec) -> Vec<PathChain> {
    let layers: Vec<_> = spec.layers().collect();
    let l = layers.len();
    let mut out = Vec::new();
    let mut choice = vec![1usize; l];
    if spec.widths().iter().any(|&n| n < 2) {
        return out;
    }
    loop {
        let mut chain = PathChain::zero(l - 1, field);
        for mask in 0u32..(1 << l) {
            let vertices: Vec<VertexId> = (0..l)
                .map(|i| layers[i].start + if mask >> i & 1 == 1 { choice[i] } else { 0 })
                .collect();
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            chain.add_term(ElementaryPath(vertices), sign);
        }
        out.push(chain);

        // odometer over choice[i] in 1..n_i, last layer fastest
        let mut i = l;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < spec.widths()[i] {
                break;
            }
            choice[i] = 1;
        }
    }
}

/// Full boundary of a chain: all regular faces, allowed or not.
pub fn chain_boundary(chain: &PathChain) -> Option<PathChain> {
    if chain.degree == 0 {
        return None;
    }
    let mut out = PathChain::zero(chain.degree - 1, chain.field);
    let mut acc: BTreeMap<ElementaryPath, Scalar> = BTreeMap::new();
    for (path, coeff) in &chain.terms {
        for i in 0..=chain.degree {
            let face = path.face(i);
            if !face.is_regular() {
                continue;
            }
            let signed = if i % 2 == 0 { coeff.clone() } else { negate(chain.field, coeff) };
            let entry = acc.remove(&face).map_or(signed.clone(), |old| sum_scalars(chain.field, [old, signed].iter()));
            if !entry.is_zero() {
                acc.insert(face, entry);
            }
        }
    }
    out.terms = acc;
    Some(out)
}

fn negate(field: FieldSpec, s: &Scalar) -> Scalar {
    match s {
        Scalar::Rational(q) => Scalar::Rational(-q),
        Scalar::Residue(r) => Scalar::Residue((field.characteristic() - r) % field.characteristic()),
    }
}

/// Outcome of checking [`explicit_cycle_basis`] against the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBasisCheck {
    pub expected: usize,
    pub count: usize,
    /// Every chain's boundary is exactly zero (coefficient sum zero in degree 0).
    pub all_cycles: bool,
    /// Every chain is supported on allowed paths and its boundary has no
    /// component on non-allowed paths.
    pub all_in_omega: bool,
    pub stacked_rank: usize,
}

impl CycleBasisCheck {
    pub fn passed(&self) -> bool {
        self.count == self.expected && self.all_cycles && self.all_in_omega && self.stacked_rank == self.expected
    }
}

pub fn check_cycle_basis(spec: &MlpSpec, field: FieldSpec) -> CycleBasisCheck {
    let g = spec.digraph();
    let degree = spec.layer_count() - 1;
    let chains = explicit_cycle_basis(spec, field);
    let expected = spec.widths().iter().map(|n| n - 1).product();
    let allowed = allowed_paths(&g, degree);

    let mut all_cycles = true;
    let mut all_in_omega = true;
    let mut columns = Vec::with_capacity(chains.len());
    for chain in &chains {
        match chain.coordinates(&allowed) {
            Some(coords) => columns.push(coords),
            None => {
                all_in_omega = false;
                continue;
            }
        }
        match chain_boundary(chain) {
            None => all_cycles &= chain.coefficient_sum().is_zero(),
            Some(b) => {
                all_cycles &= b.is_zero();
                all_in_omega &= b.terms.keys().all(|p| p.is_allowed(&g));
            }
        }
    }
    let stacked = SparseMatrix::from_columns(allowed.len(), field, columns).expect("coordinates in range");
    CycleBasisCheck { expected, count: chains.len(), all_cycles, all_in_omega, stacked_rank: stacked.rank() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn path(v: &[usize]) -> ElementaryPath {
        ElementaryPath::new(v.to_vec())
    }

    #[test]
    fn allowed_path_enumeration() {
        let chain = Digraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(allowed_paths(&chain, 2), vec![path(&[0, 1, 2])]);
        assert_eq!(allowed_paths(&chain, 0).len(), 3);
        let mlp = MlpSpec::new(vec![4, 10, 3]).unwrap().digraph();
        assert_eq!(allowed_paths(&mlp, 2).len(), 120);
        let all = allowed_paths(&mlp, 1);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn boundary_block_examples() {
        let chain = Digraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let b = boundary_blocks(&chain, 2, q());
        assert_eq!(b.allowed_rows, vec![path(&[0, 1]), path(&[1, 2])]);
        assert_eq!(b.allowed_block.get(0, 0), Some(&q().from_i64(1)));
        assert_eq!(b.allowed_block.get(1, 0), Some(&q().from_i64(1)));
        assert_eq!(b.non_allowed_rows, vec![path(&[0, 2])]);
        assert_eq!(b.non_allowed_block.get(0, 0), Some(&q().from_i64(-1)));

        let mlp = MlpSpec::new(vec![2, 2]).unwrap().digraph();
        let b = boundary_blocks(&mlp, 1, q());
        assert_eq!(b.non_allowed_block.rows(), 0);
        assert_eq!(b.allowed_block.nnz(), 8);

        let recip = Digraph::from_edge_list(2, &[(0, 1), (1, 0)]).unwrap();
        let b = boundary_blocks(&recip, 2, q());
        let c = b.columns.iter().position(|p| p == &path(&[0, 1, 0])).unwrap();
        // (1,0) − (0,0) + (0,1): the irregular middle face is dropped
        let col: Vec<_> = b.allowed_block.column(c).iter().map(|(r, s)| (b.allowed_rows[*r].clone(), s.clone())).collect();
        assert_eq!(col, vec![(path(&[0, 1]), q().from_i64(1)), (path(&[1, 0]), q().from_i64(1))]);
        assert!(b.non_allowed_block.column(c).is_empty());
    }

    #[test]
    fn omega_dimensions() {
        let cyc = Digraph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(omega_basis(&cyc, 2, q()).dim(), 0);
        let mlp = MlpSpec::new(vec![4, 10, 3]).unwrap().digraph();
        assert_eq!(omega_basis(&mlp, 2, q()).dim(), 108);
        assert_eq!(omega_basis(&mlp, 1, q()).dim(), 70);
        assert_eq!(omega_basis(&cyc, 1, q()).dim(), 3);
    }

    #[test]
    fn betti_examples() {
        let mlp = MlpSpec::new(vec![2, 2]).unwrap().digraph();
        assert_eq!(path_betti(&mlp, 1, true, q()).betti(), vec![0, 1]);
        let arc = Digraph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(path_betti(&arc, 1, true, q()).betti(), vec![0, 0]);
        let cyc = Digraph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let s = path_betti(&cyc, 2, false, q());
        assert_eq!(s.betti(), vec![1, 1, 0]);
        assert!(s.rank_identity_holds());
    }

    #[test]
    fn dag_cap_leaves_zero_degrees() {
        let mlp = MlpSpec::new(vec![2, 3]).unwrap().digraph();
        let s = path_betti(&mlp, 4, true, q());
        assert_eq!(s.betti(), vec![0, 2, 0, 0, 0]);
        assert_eq!(s.euler_check(), Some(true));
    }

    #[test]
    fn empty_graph_is_flagged() {
        let s = path_betti(&Digraph::empty(0), 1, true, q());
        assert!(s.empty_graph);
        assert_eq!(s.betti(), vec![0, 0]);
    }

    #[test]
    fn theorem1_values() {
        let spec = MlpSpec::new(vec![4, 10, 3]).unwrap();
        assert_eq!(theorem1_prediction(&spec, 2), vec![0, 0, 54]);
        assert_eq!(theorem1_prediction(&MlpSpec::new(vec![1, 6]).unwrap(), 1), vec![0, 0]);
        assert_eq!(theorem1_prediction(&MlpSpec::new(vec![2, 2, 2, 2]).unwrap(), 3), vec![0, 0, 0, 1]);
    }

    #[test]
    fn two_layer_cycle() {
        let spec = MlpSpec::new(vec![2, 2]).unwrap();
        let chains = explicit_cycle_basis(&spec, q());
        assert_eq!(chains.len(), 1);
        let expected: Vec<(ElementaryPath, Scalar)> = vec![
            (path(&[0, 2]), q().from_i64(1)),
            (path(&[0, 3]), q().from_i64(-1)),
            (path(&[1, 2]), q().from_i64(-1)),
            (path(&[1, 3]), q().from_i64(1)),
        ];
        assert_eq!(chains[0].terms().clone().into_iter().collect::<Vec<_>>(), expected);
        assert!(explicit_cycle_basis(&MlpSpec::new(vec![1, 3]).unwrap(), q()).is_empty());
    }

    #[test]
    fn three_layer_cycle_is_closed() {
        let spec = MlpSpec::new(vec![2, 2, 2]).unwrap();
        let chains = explicit_cycle_basis(&spec, q());
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].terms().len(), 8);
        assert!(chain_boundary(&chains[0]).unwrap().is_zero());
        assert!(check_cycle_basis(&spec, q()).passed());
    }

    #[test]
    fn chain_axiom_on_small_graphs() {
        let cyc = Digraph::from_edge_list(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 0), (1, 0)]).unwrap();
        assert_eq!(check_chain_axiom(&cyc, 3, q()), Ok(()));
        assert_eq!(check_chain_axiom(&cyc, 3, FieldSpec::gf2()), Ok(()));
    }
}
