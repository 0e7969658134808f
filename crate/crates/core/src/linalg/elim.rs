//! Sparse Gaussian elimination: Markowitz-pivoted rank and canonical kernels.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::FieldOps;

pub(crate) type Row<E> = Vec<(usize, E)>;

/// `alpha * a + beta * b` over sorted sparse rows, dropping zeros.
fn combine<E: Clone>(
    a: &[(usize, E)],
    b: &[(usize, E)],
    scale_a: impl Fn(&E) -> E,
    scale_b: impl Fn(&E) -> E,
    add: impl Fn(&E, &E) -> E,
    is_zero: impl Fn(&E) -> bool,
) -> Row<E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        let (col, val) = if take_a {
            i += 1;
            (a[i - 1].0, scale_a(&a[i - 1].1))
        } else if take_b {
            j += 1;
            (b[j - 1].0, scale_b(&b[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, add(&scale_a(&a[i - 1].1), &scale_b(&b[j - 1].1)))
        };
        if !is_zero(&val) {
            out.push((col, val));
        }
    }
    out
}

fn entry<E>(row: &[(usize, E)], col: usize) -> Option<&E> {
    row.binary_search_by_key(&col, |&(c, _)| c).ok().map(|i| &row[i].1)
}

/// One elimination step: clear `col` from `target` using `pivot`.
pub(crate) trait Reducer {
    type E: Clone;
    fn eliminate(&self, target: &[(usize, Self::E)], pivot: &[(usize, Self::E)], col: usize) -> Row<Self::E>;
    fn is_unit(&self, e: &Self::E) -> bool;
}

/// Fraction-free elimination on integer rows; each result is divided by
/// its content so entries stay small.
pub(crate) struct IntegerReducer;

impl Reducer for IntegerReducer {
    type E = BigInt;

    fn eliminate(&self, target: &[(usize, BigInt)], pivot: &[(usize, BigInt)], col: usize) -> Row<BigInt> {
        let a = entry(pivot, col).expect("pivot entry");
        let b = entry(target, col).expect("target entry");
        let g = a.gcd(b);
        let (a, b) = (a / &g, b / &g);
        let mut row = combine(target, pivot, |x| x * &a, |y| -(y * &b), |x, y| x + y, |x| x.is_zero());
        let content = row.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
        if !content.is_zero() && !content.is_one() {
            for (_, x) in &mut row {
                *x /= &content;
            }
        }
        row
    }

    fn is_unit(&self, e: &BigInt) -> bool {
        e.abs().is_one()
    }
}

pub(crate) struct FieldReducer<'a, F: FieldOps>(pub &'a F);

impl<F: FieldOps> Reducer for FieldReducer<'_, F> {
    type E = F::E;

    fn eliminate(&self, target: &[(usize, F::E)], pivot: &[(usize, F::E)], col: usize) -> Row<F::E> {
        let f = self.0;
        let a = entry(pivot, col).expect("pivot entry");
        let b = entry(target, col).expect("target entry");
        let factor = f.neg(&f.mul(b, &f.inv(a)));
        combine(target, pivot, |x| x.clone(), |y| f.mul(y, &factor), |x, y| f.add(x, y), |x| f.is_zero(x))
    }

    fn is_unit(&self, e: &F::E) -> bool {
        self.0.is_unit_like(e)
    }
}

/// Rank by Gaussian elimination with Markowitz pivot selection: each step
/// takes the nonzero minimizing `(row_len - 1) * (col_len - 1)`, preferring
/// unit entries, then the smallest `(row, col)`.
pub(crate) fn markowitz_rank<R: Reducer>(reducer: &R, mut rows: Vec<Row<R::E>>, ncols: usize) -> usize {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    let mut active: BTreeSet<usize> = BTreeSet::new();
    for (r, row) in rows.iter().enumerate() {
        if !row.is_empty() {
            active.insert(r);
        }
        for &(c, _) in row {
            col_rows[c].insert(r);
        }
    }

    let mut rank = 0;
    loop {
        let mut best: Option<(usize, bool, usize, usize)> = None;
        'search: for &r in &active {
            let row_cost = rows[r].len() - 1;
            for (c, e) in &rows[r] {
                let key = (row_cost * (col_rows[*c].len() - 1), !reducer.is_unit(e), r, *c);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                    if key.0 == 0 && !key.1 {
                        break 'search;
                    }
                }
            }
        }
        let Some((_, _, pr, pc)) = best else { break };
        rank += 1;

        active.remove(&pr);
        let pivot = std::mem::take(&mut rows[pr]);
        for &(c, _) in &pivot {
            col_rows[c].remove(&pr);
        }
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for t in targets {
            let reduced = reducer.eliminate(&rows[t], &pivot, pc);
            for &(c, _) in &rows[t] {
                col_rows[c].remove(&t);
            }
            for &(c, _) in &reduced {
                col_rows[c].insert(t);
            }
            if reduced.is_empty() {
                active.remove(&t);
            }
            rows[t] = reduced;
        }
    }
    rank
}

/// Reduced row echelon form with pivots taken left to right. Returns the
/// reduced pivot rows (leading entry 1) and their pivot columns.
pub(crate) fn rref<F: FieldOps>(field: &F, mut rows: Vec<Row<F::E>>, ncols: usize) -> (Vec<Row<F::E>>, Vec<usize>) {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c].insert(r);
        }
    }
    let mut is_pivot_row = vec![false; rows.len()];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let reducer = FieldReducer(field);

    for c in 0..ncols {
        // non-pivot rows never hold entries left of c, so any of them with an
        // entry at c has its leading entry there
        let chosen = col_rows[c]
            .iter()
            .copied()
            .filter(|&r| !is_pivot_row[r])
            .min_by_key(|&r| (rows[r].len(), r));
        let Some(pr) = chosen else { continue };
        is_pivot_row[pr] = true;

        let lead_inv = field.inv(entry(&rows[pr], c).unwrap());
        for (_, x) in &mut rows[pr] {
            *x = field.mul(x, &lead_inv);
        }
        let pivot = rows[pr].clone();
        let targets: Vec<usize> = col_rows[c].iter().copied().filter(|&r| r != pr).collect();
        for t in targets {
            let reduced = reducer.eliminate(&rows[t], &pivot, c);
            for &(cc, _) in &rows[t] {
                col_rows[cc].remove(&t);
            }
            for &(cc, _) in &reduced {
                col_rows[cc].insert(t);
            }
            rows[t] = reduced;
        }
        pivots.push((c, pr));
    }
    let pivot_cols = pivots.iter().map(|&(c, _)| c).collect();
    let pivot_rows = pivots.into_iter().map(|(_, r)| std::mem::take(&mut rows[r])).collect();
    (pivot_rows, pivot_cols)
}

/// Canonical right-kernel basis: one vector per non-pivot column `f`, with
/// a 1 at `f`, zeros at the other free columns, and the negated RREF
/// entries at the pivot columns. Vectors come in increasing order of `f`.
pub(crate) fn kernel_basis<F: FieldOps>(field: &F, rows: Vec<Row<F::E>>, ncols: usize) -> Vec<Row<F::E>> {
    let (pivot_rows, pivot_cols) = rref(field, rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    // free column -> entries (pivot col, value) gathered from the RREF rows
    let mut by_free: Vec<Vec<(usize, F::E)>> = vec![Vec::new(); ncols];
    for (row, &pc) in pivot_rows.iter().zip(&pivot_cols) {
        for (c, x) in row {
            if *c != pc {
                by_free[*c].push((pc, field.neg(x)));
            }
        }
    }
    let one = one_of(field);
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = std::mem::take(&mut by_free[f]);
            v.push((f, one.clone()));
            v.sort_by_key(|&(c, _)| c);
            v
        })
        .collect()
}

fn one_of<F: FieldOps>(field: &F) -> F::E {
    field.lift(&field.spec().one())
}
