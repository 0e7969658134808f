//! Exact sparse linear algebra over the rationals and prime fields.

mod elim;
mod field;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use field::{FieldSpec, Prime, Scalar};
use field::{FieldOps, PrimeOps, RationalOps};

use crate::error::{Error, Result};

/// Column-major sparse matrix over one [`FieldSpec`]. Each column is a
/// list of `(row, value)` pairs sorted by row with no stored zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    columns: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Self {
        SparseMatrix { rows, cols, field, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let columns = (0..n).map(|i| vec![(i, field.one())]).collect();
        SparseMatrix { rows: n, cols: n, field, columns }
    }

    /// Builds a matrix from integer triplets; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        field: FieldSpec,
        entries: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::ShapeError(format!("entry ({r}, {c}) outside {rows}x{cols}")));
            }
            *acc.entry((c, r)).or_insert(0) += v;
        }
        let mut columns = vec![Vec::new(); cols];
        for ((c, r), v) in acc {
            let s = field.from_i64(v);
            if !s.is_zero() {
                columns[c].push((r, s));
            }
        }
        Ok(SparseMatrix { rows, cols, field, columns })
    }

    /// Builds a matrix from columns of `(row, value)` pairs in any order.
    /// Zeros are dropped; repeated rows within a column are rejected.
    pub fn from_columns(rows: usize, field: FieldSpec, columns: Vec<Vec<(usize, Scalar)>>) -> Result<Self> {
        let cols = columns.len();
        let mut checked = Vec::with_capacity(cols);
        for mut col in columns {
            col.retain(|(_, s)| !s.is_zero());
            col.sort_by_key(|&(r, _)| r);
            for (i, (r, s)) in col.iter().enumerate() {
                if *r >= rows || (i > 0 && col[i - 1].0 == *r) {
                    return Err(Error::ShapeError(format!("bad row index {r} in a {rows}-row matrix")));
                }
                if !field.contains(s) {
                    return Err(Error::FieldError(field.to_string(), s.to_string()));
                }
            }
            checked.push(col);
        }
        Ok(SparseMatrix { rows, cols, field, columns: checked })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn column(&self, c: usize) -> &[(usize, Scalar)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vec<(usize, Scalar)>] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Scalar> {
        let col = &self.columns[c];
        col.binary_search_by_key(&r, |&(rr, _)| rr).ok().map(|i| &col[i].1)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, s) in col {
                columns[*r].push((c, s.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, field: self.field, columns }
    }

    fn typed_rows<F: FieldOps>(&self, f: &F) -> Vec<Vec<(usize, F::E)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, s) in col {
                rows[*r].push((c, f.lift(s)));
            }
        }
        rows
    }

    /// Exact rank over the matrix's field.
    pub fn rank(&self) -> usize {
        match self.field {
            FieldSpec::Rationals => {
                // clear denominators row by row, then eliminate fraction-free
                let rows = self
                    .typed_rows(&RationalOps)
                    .into_iter()
                    .map(|row| {
                        let lcm = row.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
                        row.into_iter().map(|(c, q)| (c, (q * &lcm).to_integer())).collect()
                    })
                    .collect();
                elim::markowitz_rank(&elim::IntegerReducer, rows, self.cols)
            }
            FieldSpec::Prime(p) => {
                let ops = PrimeOps { p: p.get() as u64 };
                let rows = self.typed_rows(&ops);
                elim::markowitz_rank(&elim::FieldReducer(&ops), rows, self.cols)
            }
        }
    }

    /// Canonical basis of the right kernel, one basis vector per column of
    /// the result. The basis is the unique one whose restriction to the
    /// non-pivot coordinates of the reduced row echelon form is the
    /// identity, ordered by those coordinates.
    pub fn null_space(&self) -> SparseMatrix {
        fn run<F: FieldOps>(m: &SparseMatrix, f: &F) -> SparseMatrix {
            let basis = elim::kernel_basis(f, m.typed_rows(f), m.cols);
            let columns = basis
                .into_iter()
                .map(|v| v.into_iter().map(|(r, e)| (r, f.lower(e))).collect())
                .collect::<Vec<_>>();
            SparseMatrix { rows: m.cols, cols: columns.len(), field: m.field, columns }
        }
        match self.field {
            FieldSpec::Rationals => run(self, &RationalOps),
            FieldSpec::Prime(p) => run(self, &PrimeOps { p: p.get() as u64 }),
        }
    }

    /// Exact product `self * other`.
    pub fn multiply(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.field != other.field {
            return Err(Error::FieldError(self.field.to_string(), other.field.to_string()));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeError(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        fn run<F: FieldOps>(a: &SparseMatrix, b: &SparseMatrix, f: &F) -> SparseMatrix {
            let a_cols: Vec<Vec<(usize, F::E)>> =
                a.columns.iter().map(|col| col.iter().map(|(r, s)| (*r, f.lift(s))).collect()).collect();
            let columns = b
                .columns
                .iter()
                .map(|bcol| {
                    let mut acc: BTreeMap<usize, F::E> = BTreeMap::new();
                    for (k, bk) in bcol {
                        let bk = f.lift(bk);
                        for (r, ark) in &a_cols[*k] {
                            let term = f.mul(ark, &bk);
                            let slot = acc.entry(*r).or_insert_with(|| f.zero());
                            *slot = f.add(slot, &term);
                        }
                    }
                    acc.into_iter().filter(|(_, e)| !f.is_zero(e)).map(|(r, e)| (r, f.lower(e))).collect()
                })
                .collect();
            SparseMatrix { rows: a.rows, cols: b.cols, field: a.field, columns }
        }
        Ok(match self.field {
            FieldSpec::Rationals => run(self, other, &RationalOps),
            FieldSpec::Prime(p) => run(self, other, &PrimeOps { p: p.get() as u64 }),
        })
    }

    /// Same entries interpreted in another field. Rational entries whose
    /// denominator vanishes in the target field are rejected.
    pub fn to_field(&self, target: FieldSpec) -> Result<SparseMatrix> {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(r, s)| {
                        target
                            .from_rational(&s.to_rational())
                            .map(|t| (*r, t))
                            .ok_or_else(|| Error::FieldError(self.field.to_string(), target.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SparseMatrix::from_columns(self.rows, target, columns)
    }

    /// Places the columns of `other` after the columns of `self`.
    pub fn hstack(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.field != other.field {
            return Err(Error::FieldError(self.field.to_string(), other.field.to_string()));
        }
        if self.rows != other.rows {
            return Err(Error::ShapeError(format!("row counts {} and {} differ", self.rows, other.rows)));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(SparseMatrix { rows: self.rows, cols: columns.len(), field: self.field, columns })
    }

    /// Dense rational copy, mostly for tests and debugging.
    pub fn to_dense_rational(&self) -> Vec<Vec<num_rational::BigRational>> {
        let mut dense = vec![vec![num_rational::BigRational::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, s) in col {
                dense[*r][c] = s.to_rational();
            }
        }
        dense
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} over {} [", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|c| self.get(r, c).map_or("0".to_string(), |s| s.to_string())).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
