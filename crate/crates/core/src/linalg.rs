//! Dense exact matrices: fraction-free determinants over integral domains
//! and ranks over fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{AlgebraicScalar, LaurentScalar, ParameterSpec, Specialization};

/// Symbolic determinants above this dimension are refused by default.
pub const DEFAULT_MAX_SYMBOLIC_DIM: usize = 64;

/// Rows with at least this many entries are reduced in parallel.
const PAR_THRESHOLD: usize = 48;

/// Commutative integral domain with exact division.
pub trait RingElement: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, other: &Self) -> Result<Self>;
}

pub trait FieldElement: RingElement {
    fn inv(&self) -> Result<Self>;
}

impl RingElement for LaurentScalar {
    fn zero_like(&self) -> Self {
        LaurentScalar::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        LaurentScalar::one(self.nvars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Result<Self> {
        LaurentScalar::div_exact(self, other)
    }
}

impl RingElement for AlgebraicScalar {
    fn zero_like(&self) -> Self {
        AlgebraicScalar::zero(self.field())
    }
    fn one_like(&self) -> Self {
        AlgebraicScalar::one(self.field())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Result<Self> {
        self.try_div(other)
    }
}

impl FieldElement for AlgebraicScalar {
    fn inv(&self) -> Result<Self> {
        self.inverse()
    }
}

impl RingElement for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self / other)
    }
}

impl FieldElement for BigRational {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }
}

impl RingElement for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = self.div_rem(other);
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }
}

/// Dense row-major matrix. `zero` fixes the scalar kind (colour count or
/// number field) even when the matrix is empty.
#[derive(Clone, PartialEq)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
    zero: T,
}

impl<T: RingElement> ExactMatrix<T> {
    pub fn zeros(rows: usize, cols: usize, zero: T) -> Self {
        Self { rows, cols, entries: vec![zero.clone(); rows * cols], zero }
    }

    pub fn identity(n: usize, zero: T) -> Self {
        let mut m = Self::zeros(n, n, zero);
        for i in 0..n {
            m.entries[i * n + i] = m.zero.one_like();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, zero: T, f: impl Fn(usize, usize) -> T) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, entries, zero }
    }

    pub fn from_rows(zero: T, rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, entries: rows.into_iter().flatten().collect(), zero })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn zero_elem(&self) -> &T {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.zero.clone(), |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, self.zero.clone(), |i, j| {
            let mut acc = self.zero.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero_elem() {
                    acc = acc.add(&a.mul(other.get(k, j)));
                }
            }
            acc
        }))
    }

    pub fn map<U: RingElement>(&self, zero: U, f: impl Fn(&T) -> U) -> ExactMatrix<U> {
        ExactMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect(), zero }
    }

    pub fn try_map<U: RingElement>(&self, zero: U, f: impl Fn(&T) -> Result<U>) -> Result<ExactMatrix<U>> {
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
            zero,
        })
    }

    /// Principal submatrix on `idx` (rows and columns in the given order).
    pub fn principal(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), self.zero.clone(), |i, j| self.get(idx[i], idx[j]).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(zero: T, blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(n, c, zero);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Kronecker product; the left factor indexes the most significant digit.
    pub fn kronecker(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, self.zero.clone(), |i, j| {
            self.get(i / other.rows, j / other.cols).mul(other.get(i % other.rows, j % other.cols))
        })
    }

    /// Index sets of the irreducible diagonal blocks: connected components
    /// of the graph with an edge `i - j` whenever `M[i][j]` or `M[j][i]` is
    /// nonzero. Each component is sorted; components are ordered by their
    /// smallest index.
    pub fn diagonal_blocks(&self) -> Vec<Vec<usize>> {
        let n = self.rows;
        let mut uf = UnionFind::<usize>::new(n);
        for i in 0..n {
            for j in 0..n.min(self.cols) {
                if i != j && !self.get(i, j).is_zero_elem() {
                    uf.union(i, j);
                }
            }
        }
        let labels = uf.into_labeling();
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let root = labels[i];
            if slot[root] == usize::MAX {
                slot[root] = comps.len();
                comps.push(Vec::new());
            }
            comps[slot[root]].push(i);
        }
        comps
    }
}

impl<T: fmt::Display> fmt::Display for ExactMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> =
                self.entries[i * self.cols..(i + 1) * self.cols].iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for ExactMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

fn bareiss<T: RingElement>(mut m: ExactMatrix<T>) -> Result<T> {
    let n = m.rows;
    let one = m.zero.one_like();
    if n == 0 {
        return Ok(one);
    }
    let mut sign_flip = false;
    let mut prev = one;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero_elem()) else {
            return Ok(m.zero.clone());
        };
        if p != k {
            m.swap_rows(p, k);
            sign_flip = !sign_flip;
        }
        if k + 1 == n {
            break;
        }
        let pivot = m.get(k, k).clone();
        let pivot_row: Vec<T> = m.row(k)[k + 1..].to_vec();
        let cols = m.cols;
        let tail = &mut m.entries[(k + 1) * cols..];
        let update = |row: &mut [T]| -> Result<()> {
            let lead = row[k].clone();
            for (j, pk) in (k + 1..n).zip(&pivot_row) {
                let v = row[j].mul(&pivot);
                let v = if lead.is_zero_elem() { v } else { v.sub(&lead.mul(pk)) };
                row[j] = v.div_exact(&prev)?;
            }
            row[k] = lead.zero_like();
            Ok(())
        };
        if n - k > PAR_THRESHOLD {
            tail.par_chunks_mut(cols).try_for_each(update)?;
        } else {
            tail.chunks_mut(cols).try_for_each(update)?;
        }
        prev = pivot;
    }
    let d = m.get(n - 1, n - 1).clone();
    Ok(if sign_flip { d.neg() } else { d })
}

/// Exact determinant by fraction-free elimination, after splitting into
/// irreducible diagonal blocks.
pub fn determinant<T: RingElement>(m: &ExactMatrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let mut acc = m.zero.one_like();
    for block in m.diagonal_blocks() {
        let d = bareiss(m.principal(&block))?;
        if d.is_zero_elem() {
            return Ok(d);
        }
        acc = acc.mul(&d);
    }
    Ok(acc)
}

/// Symbolic determinant with the dimension guard.
pub fn determinant_symbolic(m: &ExactMatrix<LaurentScalar>, limit: usize) -> Result<LaurentScalar> {
    if m.rows > limit {
        return Err(Error::SymbolicTooLarge { dim: m.rows, limit });
    }
    determinant(m)
}

/// Exact rank by Gaussian elimination; pivots are the first nonzero entry
/// in each column.
pub fn rank<T: FieldElement>(m: &ExactMatrix<T>) -> Result<usize> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero_elem()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a.get(r, c).inv()?;
        let pivot_row: Vec<T> = a.row(r)[c..].iter().map(|x| x.mul(&inv)).collect();
        let tail = &mut a.entries[(r + 1) * cols..];
        let update = |row: &mut [T]| {
            let lead = row[c].clone();
            if lead.is_zero_elem() {
                return;
            }
            for (j, pj) in (c..cols).zip(&pivot_row) {
                if !pj.is_zero_elem() {
                    row[j] = row[j].sub(&lead.mul(pj));
                }
            }
        };
        if rows - r > PAR_THRESHOLD {
            tail.par_chunks_mut(cols).for_each(update);
        } else {
            tail.chunks_mut(cols).for_each(update);
        }
        r += 1;
    }
    Ok(r)
}

/// Evaluates every entry at `point`.
pub fn specialize(m: &ExactMatrix<LaurentScalar>, point: &ParameterSpec) -> Result<ExactMatrix<AlgebraicScalar>> {
    let s = Specialization::new(point)?;
    m.try_map(AlgebraicScalar::zero(s.field()), |x| s.evaluate(x))
}

/// Rank of a Laurent matrix after specialization.
pub fn rank_at(m: &ExactMatrix<LaurentScalar>, point: &ParameterSpec) -> Result<usize> {
    rank(&specialize(m, point)?)
}

/// Integer matrix lifted into the rationals.
pub fn rational_matrix(rows: &[Vec<i64>]) -> ExactMatrix<BigRational> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    ExactMatrix::from_fn(r, c, BigRational::zero(), |i, j| BigRational::from_integer(rows[i][j].into()))
}

/// Integer matrix over `BigInt`.
pub fn integer_matrix(rows: &[Vec<i64>]) -> ExactMatrix<BigInt> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    ExactMatrix::from_fn(r, c, BigInt::zero(), |i, j| BigInt::from(rows[i][j]))
}
