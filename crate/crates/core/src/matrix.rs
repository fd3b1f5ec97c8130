//! Dense exact linear algebra over `F_p`: Gaussian elimination, rank,
//! kernels and subquotient bookkeeping. Everything here is desk scale,
//! so a straightforward dense representation is fine.

use crate::fp::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u64>>) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols));
        let p = field.p() as u64;
        let data = rows.iter().flatten().map(|&x| x % p).collect();
        FpMatrix {
            field,
            rows: rows.len(),
            cols: ncols,
            data,
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.field.p() as u64;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn compose(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        let f = self.field;
        let mut out = FpMatrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form; returns (rref, pivot column list).
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.data.swap_chunks(pr, row, m.cols);
            let inv = f.inv(m.get(row, col));
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && m.get(r, col) != 0 {
                    let factor = m.get(r, col);
                    for c in col..m.cols {
                        let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, as column vectors of length `cols`.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let (rref, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rref.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `A x = b`; `None` if inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let f = self.field;
        let mut aug = FpMatrix::zero(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let (rref, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = rref.get(r, self.cols);
        }
        Some(x)
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl SwapChunks for Vec<u64> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (left, right) = self.split_at_mut(hi * width);
        left[lo * width..(lo + 1) * width].swap_with_slice(&mut right[..width]);
    }
}

/// A subquotient `Z / B` of `F_p^n` presented by spanning vectors,
/// with a chosen complement basis for computing induced maps.
pub struct Subquotient {
    field: PrimeField,
    /// Columns: first the boundary basis, then the homology representatives.
    span: FpMatrix,
    boundary_rank: usize,
    reps: Vec<Vec<u64>>,
}

impl Subquotient {
    /// Build `Z / B` where `Z = span(cycles)` and `B = span(boundaries) <= Z`.
    pub fn new(field: PrimeField, cycles: &[Vec<u64>], boundaries: &[Vec<u64>]) -> Self {
        let n = cycles
            .first()
            .or_else(|| boundaries.first())
            .map_or(0, |v| v.len());
        // Column-reduce boundaries to an independent set, then extend by cycles.
        let mut chosen: Vec<Vec<u64>> = Vec::new();
        let mut boundary_rank = 0;
        for (phase, pool) in [boundaries, cycles].iter().enumerate() {
            for v in pool.iter() {
                let mut candidate = chosen.clone();
                candidate.push(v.clone());
                if rank_of_columns(field, &candidate, n) > chosen.len() {
                    chosen.push(v.clone());
                }
            }
            if phase == 0 {
                boundary_rank = chosen.len();
            }
        }
        let reps = chosen[boundary_rank..].to_vec();
        let span = columns_matrix(field, &chosen, n);
        Subquotient {
            field,
            span,
            boundary_rank,
            reps,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Vec<u64>] {
        &self.reps
    }

    /// Coordinates of `v` on the representative basis (quotient by `B`).
    /// `None` if `v` is not in `Z`.
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        let x = self.span.solve(v)?;
        Some(x[self.boundary_rank..].to_vec())
    }

    /// Matrix of a map `t` on the quotient, given its action on ambient
    /// vectors. `t` must preserve `Z` and `B`.
    pub fn induced_matrix(&self, t: impl Fn(&[u64]) -> Vec<u64>) -> FpMatrix {
        let k = self.dim();
        let mut m = FpMatrix::zero(self.field, k, k);
        for (j, rep) in self.reps.iter().enumerate() {
            let image = t(rep);
            let coords = self
                .coords(&image)
                .expect("induced map must preserve the cycle space");
            for (i, &c) in coords.iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Dimension of the fixed subspace of an induced endomorphism.
    pub fn fixed_dim(&self, t: impl Fn(&[u64]) -> Vec<u64>) -> usize {
        let m = self.induced_matrix(t);
        let f = self.field;
        let mut diff = m;
        for i in 0..diff.rows() {
            let v = f.sub(diff.get(i, i), 1);
            diff.set(i, i, v);
        }
        diff.cols() - diff.rank()
    }
}

fn columns_matrix(field: PrimeField, cols: &[Vec<u64>], n: usize) -> FpMatrix {
    let mut m = FpMatrix::zero(field, n, cols.len());
    for (j, v) in cols.iter().enumerate() {
        for (i, &x) in v.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

fn rank_of_columns(field: PrimeField, cols: &[Vec<u64>], n: usize) -> usize {
    columns_matrix(field, cols, n).rank()
}
