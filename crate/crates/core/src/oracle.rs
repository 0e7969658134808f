//! Brute-force reference computations for small digraphs.
//!
//! Everything here works straight from the definitions with dense rational
//! matrices: all regular elementary paths over the vertex set are
//! enumerated, allowed ones are picked out by checking arcs, and ranks come
//! from a plain dense Gauss-Jordan routine. Nothing is shared with the
//! sparse engine, so agreement between the two is meaningful.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::linalg::FieldSpec;
use crate::summary::HomologySummary;

pub const MAX_VERTICES: usize = 12;
pub const MAX_DEGREE: usize = 6;
/// Cap on the number of regular elementary paths enumerated in one degree.
pub const MAX_ELEMENTARY_PATHS: u128 = 2_000_000;

type Dense = Vec<Vec<BigRational>>;

/// Row-reduces in place to reduced row echelon form; returns pivot columns.
fn dense_rref(m: &mut Dense) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn dense_rank(mut m: Dense) -> usize {
    dense_rref(&mut m).len()
}

/// Kernel basis vectors of a dense matrix with `cols` columns.
fn dense_kernel(mut m: Dense, cols: usize) -> Vec<Vec<BigRational>> {
    let pivots = dense_rref(&mut m);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

fn guard(g: &Digraph, max_degree: usize) -> Result<()> {
    let n = g.vertex_count();
    if n > MAX_VERTICES {
        return Err(Error::TooLargeForOracle(format!("{n} vertices (limit {MAX_VERTICES})")));
    }
    if max_degree > MAX_DEGREE {
        return Err(Error::TooLargeForOracle(format!("degree {max_degree} (limit {MAX_DEGREE})")));
    }
    let top = (max_degree + 1) as u32;
    let count = (n as u128) * (n.saturating_sub(1) as u128).pow(top);
    if count > MAX_ELEMENTARY_PATHS {
        return Err(Error::TooLargeForOracle(format!("{count} elementary {top}-paths")));
    }
    Ok(())
}

/// All regular elementary `p`-paths over `0..n`.
fn regular_paths(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut paths: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for _ in 0..p {
        paths = paths
            .into_iter()
            .flat_map(|path| {
                let last = *path.last().unwrap();
                (0..n).filter(move |&w| w != last).map(move |w| {
                    let mut next = path.clone();
                    next.push(w);
                    next
                })
            })
            .collect();
    }
    paths
}

fn is_allowed(g: &Digraph, path: &[usize]) -> bool {
    path.windows(2).all(|w| g.arcs().contains(&(w[0], w[1])))
}

/// Boundary of an elementary path as `(face, sign)` pairs, irregular faces
/// included (callers drop what is not in Λ).
fn faces(path: &[usize]) -> Vec<(Vec<usize>, i64)> {
    (0..path.len())
        .map(|i| {
            let mut f = path.to_vec();
            f.remove(i);
            (f, if i % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Reference path homology, reduced or not, in degrees `0..=max_degree`.
pub fn oracle_path_betti(g: &Digraph, max_degree: usize, reduced: bool) -> Result<HomologySummary> {
    guard(g, max_degree)?;
    let n = g.vertex_count();
    let top = max_degree + 1;

    let lambda: Vec<Vec<Vec<usize>>> = (0..=top).map(|p| regular_paths(n, p)).collect();
    let allowed: Vec<Vec<Vec<usize>>> =
        lambda.iter().map(|level| level.iter().filter(|p| is_allowed(g, p)).cloned().collect()).collect();

    // Ω_p basis vectors in allowed-path coordinates
    let mut omega: Vec<Vec<Vec<BigRational>>> = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let a = &allowed[p];
        if p == 0 {
            omega.push((0..a.len()).map(|i| (0..a.len()).map(|j| int((i == j) as i64)).collect()).collect());
            continue;
        }
        let lambda_index: HashMap<&[usize], usize> =
            lambda[p - 1].iter().enumerate().map(|(i, x)| (x.as_slice(), i)).collect();
        // ∂ in Λ_{p-1} coordinates, kept sparse until the zero rows are gone
        let mut rows: HashMap<usize, Vec<BigRational>> = HashMap::new();
        for (c, path) in a.iter().enumerate() {
            for (face, sign) in faces(path) {
                let Some(&r) = lambda_index.get(face.as_slice()) else { continue };
                if is_allowed(g, &face) {
                    continue;
                }
                let row = rows.entry(r).or_insert_with(|| vec![BigRational::zero(); a.len()]);
                row[c] += int(sign);
            }
        }
        let projected: Dense = rows.into_values().collect();
        omega.push(dense_kernel(projected, a.len()));
    }

    let mut ranks = vec![0usize; top + 1];
    ranks[0] = usize::from(reduced && n > 0);
    for p in 1..=top {
        let lower_index: HashMap<&[usize], usize> =
            allowed[p - 1].iter().enumerate().map(|(i, x)| (x.as_slice(), i)).collect();
        let images: Dense = omega[p]
            .iter()
            .map(|v| {
                let mut image = vec![BigRational::zero(); allowed[p - 1].len()];
                for (c, coeff) in v.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    for (face, sign) in faces(&allowed[p][c]) {
                        if let Some(&r) = lower_index.get(face.as_slice()) {
                            image[r] += coeff * int(sign);
                        }
                    }
                }
                image
            })
            .collect();
        ranks[p] = dense_rank(images);
    }

    let dim_allowed: Vec<usize> = allowed.iter().map(Vec::len).collect();
    let dim_omega: Vec<usize> = omega.iter().map(Vec::len).collect();
    Ok(HomologySummary::assemble(FieldSpec::Rationals, reduced, n == 0, &dim_allowed, &dim_omega, &ranks))
}

/// Every vertex sequence of length `d + 1` in which each earlier vertex has
/// an arc to each later one.
fn naive_simplices(g: &Digraph, d: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seqs: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for _ in 0..d {
        seqs = seqs
            .into_iter()
            .flat_map(|s| {
                (0..n).filter(|w| !s.contains(w)).map(|w| {
                    let mut t = s.clone();
                    t.push(w);
                    t
                }).collect::<Vec<_>>()
            })
            .collect();
    }
    seqs.retain(|s| {
        (0..s.len()).all(|i| (i + 1..s.len()).all(|j| g.arcs().contains(&(s[i], s[j]))))
    });
    seqs
}

/// Reference directed flag complex homology in degrees `0..=max_dim`.
pub fn oracle_dfc_betti(g: &Digraph, max_dim: usize, reduced: bool) -> Result<HomologySummary> {
    guard(g, max_dim)?;
    let n = g.vertex_count();
    let top = max_dim + 1;
    let simplices: Vec<Vec<Vec<usize>>> = (0..=top).map(|d| naive_simplices(g, d)).collect();
    let mut ranks = vec![0usize; top + 1];
    ranks[0] = usize::from(reduced && n > 0);
    for d in 1..=top {
        let index: HashMap<&[usize], usize> =
            simplices[d - 1].iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let columns: Dense = simplices[d]
            .iter()
            .map(|s| {
                let mut col = vec![BigRational::zero(); simplices[d - 1].len()];
                for (face, sign) in faces(s) {
                    col[index[face.as_slice()]] += int(sign);
                }
                col
            })
            .collect();
        ranks[d] = dense_rank(columns);
    }
    let dims: Vec<usize> = simplices.iter().map(Vec::len).collect();
    Ok(HomologySummary::assemble(FieldSpec::Rationals, reduced, n == 0, &dims, &dims, &ranks))
}

/// `∂∘∂ = 0` on the full elementary path complex Λ over `n` vertices, up to degree `top`.
pub fn lambda_chain_axiom(n: usize, top: usize) -> bool {
    (2..=top).all(|p| {
        regular_paths(n, p).iter().all(|path| {
            let mut acc: HashMap<Vec<usize>, i64> = HashMap::new();
            for (face, s) in faces(path) {
                if face.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                for (ff, t) in faces(&face) {
                    if ff.windows(2).any(|w| w[0] == w[1]) {
                        continue;
                    }
                    *acc.entry(ff).or_insert(0) += s * t;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    })
}

/// `∂∘∂ = 0` on the naive flag complex up to dimension `top`.
pub fn flag_chain_axiom(g: &Digraph, top: usize) -> bool {
    (2..=top).all(|d| {
        naive_simplices(g, d).iter().all(|s| {
            let mut acc: HashMap<Vec<usize>, i64> = HashMap::new();
            for (face, a) in faces(s) {
                for (ff, b) in faces(&face) {
                    *acc.entry(ff).or_insert(0) += a * b;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    })
}
