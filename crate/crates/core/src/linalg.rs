//! Dense matrices over a prime field `F_p`.
//!
//! Everything above this module (module maps, Koszul differentials, quotient
//! spaces) is expressed through [`Matrix`] and the handful of elimination
//! routines here. Entries are stored reduced mod `p` in row-major order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default characteristic used by the CLI and the presets.
pub const DEFAULT_PRIME: u32 = 32003;

/// The coefficient field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct FieldSpec {
    p: u32,
}

impl FieldSpec {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(p));
        }
        Ok(FieldSpec { p })
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, handy for reports.
    pub fn to_i64(self, v: u32) -> i64 {
        if v > self.p / 2 {
            v as i64 - self.p as i64
        } else {
            v as i64
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec { p: DEFAULT_PRIME }
    }
}

impl TryFrom<u32> for FieldSpec {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        FieldSpec::new(p)
    }
}

impl From<FieldSpec> for u32 {
    fn from(f: FieldSpec) -> u32 {
        f.p
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of already-reduced entries.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from signed integer rows, reducing every entry mod `p`.
    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Shape(format!(
                    "ragged matrix: expected {c} columns, found {}",
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&v| field.from_i64(v)));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zero(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v;
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u32::from(r == c)))
    }

    pub fn to_i64_rows(&self, field: FieldSpec) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&v| field.to_i64(v)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn scale(&self, field: FieldSpec, s: u32) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| field.mul(v, s)).collect(),
        }
    }

    pub fn neg(&self, field: FieldSpec) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| field.neg(v)).collect(),
        }
    }

    pub fn add(&self, field: FieldSpec, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, field: FieldSpec, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| field.sub(a, b))
                .collect(),
        }
    }

    /// `self * other`. Zero entries of `self` are skipped, which makes products
    /// with monomial matrices (permutation actions) cheap.
    pub fn mul(&self, field: FieldSpec, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let n = other.cols;
        let p = field.p as u64;
        let mut acc = vec![0u64; n];
        let mut out = Matrix::zero(self.rows, n);
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0u32;
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (slot, &b) in acc.iter_mut().zip(brow) {
                    *slot += a * b as u64;
                }
                pending += 1;
                // a*b < 2^62; reduce well before the accumulator can overflow.
                if pending == 3 {
                    acc.iter_mut().for_each(|s| *s %= p);
                    pending = 0;
                }
            }
            for (c, s) in acc.iter().enumerate() {
                out.data[r * n + c] = (s % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, field: FieldSpec, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut s = 0u64;
                for (a, b) in self.row(r).iter().zip(v) {
                    s = (s + *a as u64 * *b as u64) % field.p as u64;
                }
                s as u32
            })
            .collect()
    }

    /// Columns `[a | b]` side by side.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = Matrix::zero(self.rows, cols);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row(r));
        }
        out
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zero(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    /// Block diagonal matrix.
    pub fn block_diagonal(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}

/// Row echelon data for a matrix: reduced rows and the pivot columns.
struct Echelon {
    reduced: Matrix,
    pivots: Vec<usize>,
}

/// Gauss–Jordan elimination, scanning columns left to right.
fn rref(field: FieldSpec, m: &Matrix) -> Echelon {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut prow = 0;
    for c in 0..cols {
        if prow == rows {
            break;
        }
        let Some(sel) = (prow..rows).find(|&r| a.data[r * cols + c] != 0) else {
            continue;
        };
        if sel != prow {
            for k in 0..cols {
                a.data.swap(sel * cols + k, prow * cols + k);
            }
        }
        let inv = field.inv(a.data[prow * cols + c]);
        for k in c..cols {
            let v = a.data[prow * cols + k];
            a.data[prow * cols + k] = field.mul(v, inv);
        }
        let pivot_row: Vec<u32> = a.data[prow * cols..(prow + 1) * cols].to_vec();
        for r in 0..rows {
            if r == prow {
                continue;
            }
            let factor = a.data[r * cols + c];
            if factor == 0 {
                continue;
            }
            let neg = field.neg(factor) as u64;
            let p = field.p as u64;
            let row = &mut a.data[r * cols..(r + 1) * cols];
            for k in c..cols {
                let pv = pivot_row[k];
                if pv != 0 {
                    row[k] = ((row[k] as u64 + neg * pv as u64) % p) as u32;
                }
            }
        }
        pivots.push(c);
        prow += 1;
    }
    Echelon { reduced: a, pivots }
}

/// Rank together with the lexicographically first maximal set of independent
/// columns.
pub fn rank_profile(field: FieldSpec, m: &Matrix) -> (usize, Vec<usize>) {
    let e = rank_only_echelon(field, m);
    (e.len(), e)
}

fn rank_only_echelon(field: FieldSpec, m: &Matrix) -> Vec<usize> {
    // Forward elimination only; cheaper than full reduction.
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let p = field.p as u64;
    let mut pivots = Vec::new();
    let mut prow = 0;
    for c in 0..cols {
        if prow == rows {
            break;
        }
        let Some(sel) = (prow..rows).find(|&r| a.data[r * cols + c] != 0) else {
            continue;
        };
        if sel != prow {
            for k in 0..cols {
                a.data.swap(sel * cols + k, prow * cols + k);
            }
        }
        let inv = field.inv(a.data[prow * cols + c]);
        let nz: Vec<(usize, u32)> = (c..cols)
            .filter_map(|k| {
                let v = a.data[prow * cols + k];
                (v != 0).then(|| (k, field.mul(v, inv)))
            })
            .collect();
        for r in prow + 1..rows {
            let factor = a.data[r * cols + c];
            if factor == 0 {
                continue;
            }
            let neg = field.neg(factor) as u64;
            let row = &mut a.data[r * cols..(r + 1) * cols];
            for &(k, pv) in &nz {
                row[k] = ((row[k] as u64 + neg * pv as u64) % p) as u32;
            }
        }
        pivots.push(c);
        prow += 1;
    }
    pivots
}

pub fn rank(field: FieldSpec, m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    // Eliminating along the shorter side is cheaper; rank is transpose invariant.
    if m.cols > m.rows {
        rank_only_echelon(field, &m.transpose()).len()
    } else {
        rank_only_echelon(field, m).len()
    }
}

/// Columns form a basis of the null space of `m`.
pub fn kernel_basis(field: FieldSpec, m: &Matrix) -> Matrix {
    let Echelon { reduced, pivots } = rref(field, m);
    let n = m.cols;
    let mut is_pivot = vec![None; n];
    for (i, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    let free: Vec<usize> = (0..n).filter(|&c| is_pivot[c].is_none()).collect();
    let mut k = Matrix::zero(n, free.len());
    for (j, &f) in free.iter().enumerate() {
        k.set(f, j, 1);
        for (i, &pc) in pivots.iter().enumerate() {
            let v = reduced.get(i, f);
            if v != 0 {
                k.set(pc, j, field.neg(v));
            }
        }
    }
    k
}

/// Independent columns of `m` spanning its column space (the pivot columns).
pub fn column_basis(field: FieldSpec, m: &Matrix) -> Matrix {
    let (_, pivots) = rank_profile(field, m);
    m.select_columns(&pivots)
}

/// Solves `a * x = b`. Returns `None` when some column of `b` is outside the
/// column space of `a`. When `a` has dependent columns the free variables are
/// set to zero.
pub fn solve(field: FieldSpec, a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows, b.rows, "solve: row mismatch");
    let aug = a.hcat(b);
    let Echelon { reduced, pivots } = rref(field, &aug);
    if pivots.iter().any(|&c| c >= a.cols) {
        return None;
    }
    let mut x = Matrix::zero(a.cols, b.cols);
    for (i, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, reduced.get(i, a.cols + j));
        }
    }
    Some(x)
}

pub fn inverse(field: FieldSpec, m: &Matrix) -> Option<Matrix> {
    if m.rows != m.cols {
        return None;
    }
    solve(field, m, &Matrix::identity(m.rows)).filter(|_| rank(field, m) == m.rows)
}

/// Quotient `F^d / U` with a chosen complement: `projection` maps onto the
/// quotient coordinates, `lift` is a section of it (standard basis vectors
/// completing the pivot columns of `U`).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ambient_dim: usize,
    pub subspace: Matrix,
    pub projection: Matrix,
    pub lift: Matrix,
}

impl Quotient {
    pub fn new(field: FieldSpec, ambient_dim: usize, subspace: &Matrix) -> Quotient {
        assert_eq!(subspace.rows, ambient_dim);
        let aug = subspace.hcat(&Matrix::identity(ambient_dim));
        let (_, pivots) = rank_profile(field, &aug);
        let sub_cols: Vec<usize> = pivots.iter().copied().filter(|&c| c < subspace.cols).collect();
        let comp: Vec<usize> = pivots
            .iter()
            .copied()
            .filter(|&c| c >= subspace.cols)
            .map(|c| c - subspace.cols)
            .collect();
        let basis_sub = subspace.select_columns(&sub_cols);
        let lift = Matrix::identity(ambient_dim).select_columns(&comp);
        let full = basis_sub.hcat(&lift);
        let inv = inverse(field, &full).expect("basis completion is invertible");
        let projection = inv.select_rows(&(sub_cols.len()..ambient_dim).collect::<Vec<_>>());
        Quotient {
            ambient_dim,
            subspace: basis_sub,
            projection,
            lift,
        }
    }

    pub fn dim(&self) -> usize {
        self.projection.rows
    }

    /// The map `F^d/U -> F^{d'}/U'` induced by `map`, which must carry `U`
    /// into `U'`.
    pub fn induced(&self, field: FieldSpec, map: &Matrix, target: &Quotient) -> Result<Matrix> {
        assert_eq!(map.cols, self.ambient_dim);
        assert_eq!(map.rows, target.ambient_dim);
        let leak = target.projection.mul(field, &map.mul(field, &self.subspace));
        if !leak.is_zero() {
            return Err(Error::NotWellDefined(
                "map does not carry the subspace into the target subspace".into(),
            ));
        }
        Ok(target.projection.mul(field, &map.mul(field, &self.lift)))
    }
}

/// Result of [`quotient_calculus`].
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub quotient_dim: usize,
    pub projection: Matrix,
    pub induced_map: Matrix,
}

/// Quotients the domain of `map` by `subspace` and its codomain by
/// `target_subspace`, returning the source projection and the induced map.
pub fn quotient_calculus(
    field: FieldSpec,
    map: &Matrix,
    subspace: &Matrix,
    target_subspace: &Matrix,
) -> Result<QuotientData> {
    let src = Quotient::new(field, map.cols, subspace);
    let tgt = Quotient::new(field, map.rows, target_subspace);
    let induced_map = src.induced(field, map, &tgt)?;
    Ok(QuotientData {
        quotient_dim: src.dim(),
        projection: src.projection,
        induced_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    /// Independent rank oracle: plain row reduction over i64 mod p, written
    /// without touching the routines above.
    fn oracle_rank(p: i64, rows: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.iter().map(|v| v.rem_euclid(p)).collect())
            .collect();
        let ncols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..ncols {
            let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = (0..p).find(|x| a[rank][c] * x % p == 1).unwrap();
            for r in 0..a.len() {
                if r != rank && a[r][c] != 0 {
                    let factor = a[r][c] * inv % p;
                    for k in 0..ncols {
                        a[r][k] = (a[r][k] - factor * a[rank][k]).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FieldSpec::new(32003).is_ok());
        assert!(FieldSpec::new(2).is_ok());
        assert!(matches!(FieldSpec::new(1), Err(Error::InvalidField(1))));
        assert!(matches!(FieldSpec::new(32004), Err(Error::InvalidField(_))));
    }

    #[test]
    fn rank_profile_examples() {
        let f5 = f(5);
        assert_eq!(rank_profile(f5, &Matrix::zero(0, 0)), (0, vec![]));
        assert_eq!(rank_profile(f5, &Matrix::identity(3)), (3, vec![0, 1, 2]));
        let m = Matrix::from_i64_rows(f5, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(oracle_rank(5, &[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_profile(f5, &m), (1, vec![0]));
    }

    #[test]
    fn kernel_examples() {
        let f7 = f(7);
        assert_eq!(kernel_basis(f7, &Matrix::identity(4)).cols(), 0);
        let z = Matrix::zero(2, 3);
        let k = kernel_basis(f7, &z);
        assert_eq!(k.cols(), 3);
        assert_eq!(rank(f7, &k), 3);

        let m = Matrix::from_i64_rows(f7, &[vec![1, 1]]).unwrap();
        let k = kernel_basis(f7, &m);
        assert_eq!(k.cols(), 1);
        // proportional to (1, -1)
        let (a, b) = (k.get(0, 0), k.get(1, 0));
        assert_ne!(a, 0);
        assert_eq!(f7.add(a, b), 0);
    }

    #[test]
    fn quotient_examples() {
        let f5 = f(5);
        let full = Matrix::identity(3);
        let q = quotient_calculus(f5, &Matrix::identity(3), &full, &full).unwrap();
        assert_eq!(q.quotient_dim, 0);

        let zero_sub = Matrix::zero(3, 0);
        let q = quotient_calculus(f5, &Matrix::identity(3), &zero_sub, &zero_sub).unwrap();
        assert!(q.projection.is_identity());

        let line = Matrix::from_i64_rows(f5, &[vec![1], vec![1]]).unwrap();
        let q = quotient_calculus(f5, &Matrix::identity(2), &line, &line).unwrap();
        assert_eq!(q.quotient_dim, 1);
        assert!(q.induced_map.is_identity());
        // projection kills the subspace
        assert!(q.projection.mul(f5, &line).is_zero());
    }

    #[test]
    fn quotient_rejects_ill_defined_map() {
        let f5 = f(5);
        let e1 = Matrix::from_i64_rows(f5, &[vec![1], vec![0]]).unwrap();
        let e2 = Matrix::from_i64_rows(f5, &[vec![0], vec![1]]).unwrap();
        let swap = Matrix::from_i64_rows(f5, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(
            quotient_calculus(f5, &swap, &e1, &e1),
            Err(Error::NotWellDefined(_))
        ));
        assert!(quotient_calculus(f5, &swap, &e1, &e2).is_ok());
    }

    #[test]
    fn solve_and_inverse() {
        let f7 = f(7);
        let a = Matrix::from_i64_rows(f7, &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = inverse(f7, &a).unwrap();
        assert!(a.mul(f7, &inv).is_identity());
        let singular = Matrix::from_i64_rows(f7, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(inverse(f7, &singular).is_none());
        let b = Matrix::from_i64_rows(f7, &[vec![1], vec![0]]).unwrap();
        assert!(solve(f7, &singular, &b).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel(rows in small_matrix(), p in prop::sample::select(vec![2u32, 3, 5, 7, 32003])) {
            let field = f(p);
            let cols = rows.first().map_or(0, Vec::len);
            let m = if rows.is_empty() { Matrix::zero(0, 0) } else { Matrix::from_i64_rows(field, &rows).unwrap() };
            let (r, pivots) = rank_profile(field, &m);
            prop_assert_eq!(r, pivots.len());
            prop_assert_eq!(r, rank(field, &m));
            if !rows.is_empty() {
                prop_assert_eq!(r, oracle_rank(p as i64, &rows));
            }
            let k = kernel_basis(field, &m);
            prop_assert_eq!(r + k.cols(), m.cols());
            prop_assert!(m.mul(field, &k).is_zero());
            prop_assert_eq!(rank(field, &k), k.cols());
            // determinism of pivots
            prop_assert_eq!(rank_profile(field, &m).1, pivots.clone());
            // pivots are independent and span
            let sel = m.select_columns(&pivots);
            prop_assert_eq!(rank(field, &sel), r);
            let _ = cols;
        }

        #[test]
        fn quotient_projection_kills_exactly_the_subspace(rows in small_matrix()) {
            let field = f(11);
            if rows.is_empty() { return Ok(()); }
            let sub = Matrix::from_i64_rows(field, &rows).unwrap();
            let q = Quotient::new(field, sub.rows(), &sub);
            prop_assert!(q.projection.mul(field, &sub).is_zero());
            prop_assert_eq!(q.dim() + rank(field, &sub), sub.rows());
            prop_assert!(q.projection.mul(field, &q.lift).is_identity());
            prop_assert_eq!(kernel_basis(field, &q.projection).cols(), rank(field, &sub));
        }
    }
}
