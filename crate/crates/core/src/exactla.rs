//! Dense exact linear algebra over prime fields.
//!
//! Every canonical form in the crate flows through [`RowReducer`], which keeps a
//! fully reduced row echelon basis with lowest-index pivots. Vectors are plain
//! `u32` slices of residues; the modulus travels with the [`Prime`] or the
//! [`FpMatrix`] that owns them.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported modulus.
pub const MAX_PRIME: u32 = 97;

/// A validated prime modulus `2 <= p <= 97`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        (self.0 - a) % self.0
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.0
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a % self.0 != 0, "inverse of zero");
        self.pow(a, (self.0 - 2) as u64)
    }

    /// `a + s*b` componentwise, in place.
    pub fn axpy(self, a: &mut [u32], s: u32, b: &[u32]) {
        if s == 0 {
            return;
        }
        for (x, &y) in a.iter_mut().zip(b) {
            *x = (*x + s * y) % self.0;
        }
    }

    pub fn scale(self, a: &mut [u32], s: u32) {
        for x in a.iter_mut() {
            *x = (*x * s) % self.0;
        }
    }

    /// Binomial coefficient `C(n, k) mod p` by Lucas' theorem.
    pub fn binomial(self, mut n: u64, mut k: u64) -> u32 {
        let p = self.0 as u64;
        let mut acc = 1u32;
        while k > 0 {
            let (ni, ki) = (n % p, k % p);
            if ki > ni {
                return 0;
            }
            // small binomial by multiplicative formula over F_p
            let mut num = 1u32;
            let mut den = 1u32;
            for i in 0..ki {
                num = self.mul(num, (ni - i) as u32);
                den = self.mul(den, (i + 1) as u32);
            }
            acc = self.mul(acc, self.mul(num, self.inv(den)));
            n /= p;
            k /= p;
        }
        acc
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    p: Prime,
}

impl FpScalar {
    pub fn new(value: i64, p: Prime) -> Self {
        FpScalar {
            value: p.reduce(value),
            p,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn prime(self) -> Prime {
        self.p
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: Prime,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed entries, reducing each mod `p`.
    pub fn from_rows<R: AsRef<[i64]>>(p: Prime, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| p.reduce(x)));
        }
        Ok(FpMatrix {
            rows: rows.len(),
            cols,
            p,
            data,
        })
    }

    /// Builds a matrix from already-reduced row-major residues.
    pub fn from_residues(p: Prime, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= p.value()) {
            return Err(Error::ResidueOutOfRange {
                value: bad,
                p: p.value(),
            });
        }
        Ok(FpMatrix {
            rows,
            cols,
            p,
            data,
        })
    }

    /// The matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(p: Prime, n_rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, n_rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x % p.value();
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
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p.value();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_same_shape(&self, other: &FpMatrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.value(), other.p.value()));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(other)?;
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| p.add(a, b))
            .collect();
        Ok(FpMatrix { data, ..*self })
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(other)?;
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| p.sub(a, b))
            .collect();
        Ok(FpMatrix { data, ..*self })
    }

    pub fn scaled(&self, s: u32) -> FpMatrix {
        let mut out = self.clone();
        self.p.scale(&mut out.data, s % self.p.value());
        out
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.value(), other.p.value()));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let p = self.p;
        let mut out = FpMatrix::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    p.axpy(dst, a, other.row(k));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let p = self.p.value() as u64;
        Ok((0..self.rows)
            .map(|r| {
                let s: u64 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect())
    }

    /// `self^n` for square matrices, by repeated multiplication.
    pub fn pow(&self, n: u32) -> Result<FpMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = FpMatrix::identity(self.p, self.rows);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }
}

/// Incremental Gauss-Jordan elimination.
///
/// Rows are pushed one at a time; the stored basis is kept in reduced row
/// echelon form sorted by pivot column, so the final state is the RREF of the
/// span of everything pushed, independent of push order.
#[derive(Clone, Debug)]
pub struct RowReducer {
    p: Prime,
    cols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(p: Prime, cols: usize) -> Self {
        RowReducer {
            p,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Eliminates the pivot coordinates of `v` against the stored rows.
    pub fn reduce_in_place(&self, v: &mut [u32]) {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                self.p.axpy(v, self.p.neg(c), row);
            }
        }
    }

    /// Adds a row; returns `true` when it enlarged the span.
    pub fn push(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        self.reduce_in_place(&mut v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.p;
        let inv = p.inv(v[piv]);
        p.scale(&mut v, inv);
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                p.axpy(row, p.neg(c), &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, v);
        true
    }

    /// Basis of the orthogonal complement (null space of the stored rows),
    /// one vector per free column in increasing column order.
    pub fn null_space(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &q in &self.pivots {
            is_pivot[q] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (row, &q) in self.rows.iter().zip(&self.pivots) {
                    v[q] = p.neg(row[f]);
                }
                v
            })
            .collect()
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: FpMatrix,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &FpMatrix) -> Rref {
    let mut red = RowReducer::new(m.p, m.cols);
    for r in 0..m.rows {
        red.push(m.row(r).to_vec());
    }
    let mut reduced = FpMatrix::zeros(m.p, m.rows, m.cols);
    for (i, row) in red.rows.iter().enumerate() {
        reduced.data[i * m.cols..(i + 1) * m.cols].copy_from_slice(row);
    }
    Rref {
        reduced,
        rank: red.rank(),
        pivot_columns: red.pivots,
    }
}

pub fn kernel(m: &FpMatrix) -> Vec<Vec<u32>> {
    let mut red = RowReducer::new(m.p, m.cols);
    for r in 0..m.rows {
        red.push(m.row(r).to_vec());
    }
    red.null_space()
}

/// A consistent linear system's solution set `particular + span(kernel_basis)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<u32>,
    pub kernel_basis: Vec<Vec<u32>>,
}

/// Solves `a·x = b`; `Ok(None)` when the system is inconsistent.
///
/// The particular solution has every free variable set to zero.
pub fn solve(a: &FpMatrix, b: &[u32]) -> Result<Option<Solution>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    solve_rows(a.p, a.cols, (0..a.rows).map(|r| (a.row(r).to_vec(), b[r])))
}

/// Solves a system given as a stream of `(coefficients, rhs)` equations.
pub fn solve_rows<I>(p: Prime, unknowns: usize, equations: I) -> Result<Option<Solution>>
where
    I: IntoIterator<Item = (Vec<u32>, u32)>,
{
    let mut red = RowReducer::new(p, unknowns + 1);
    for (mut coeffs, rhs) in equations {
        if coeffs.len() != unknowns {
            return Err(Error::DimensionMismatch {
                expected: unknowns,
                found: coeffs.len(),
            });
        }
        coeffs.push(rhs % p.value());
        red.push(coeffs);
        if red.pivots.last() == Some(&unknowns) {
            return Ok(None);
        }
    }
    let mut particular = vec![0; unknowns];
    for (row, &q) in red.rows.iter().zip(&red.pivots) {
        particular[q] = row[unknowns];
    }
    let mut homogeneous = RowReducer::new(p, unknowns);
    for row in &red.rows {
        homogeneous.push(row[..unknowns].to_vec());
    }
    Ok(Some(Solution {
        particular,
        kernel_basis: homogeneous.null_space(),
    }))
}

/// A linear system `L·x = b` prepared for many right-hand sides.
///
/// A maximal independent set of rows is reduced once, keeping the row
/// operations; each solve applies them to the matching entries of `b` and
/// then checks the full system, which detects inconsistency.
#[derive(Clone, Debug)]
pub struct PreparedSystem {
    p: Prime,
    matrix: FpMatrix,
    selected: Vec<usize>,
    pivots: Vec<usize>,
    transform: Vec<Vec<u32>>,
    null_space: Vec<Vec<u32>>,
}

impl PreparedSystem {
    pub fn new(matrix: FpMatrix) -> Self {
        let p = matrix.prime();
        let cols = matrix.cols();
        let mut probe = RowReducer::new(p, cols);
        let selected: Vec<usize> = (0..matrix.rows())
            .filter(|&r| probe.push(matrix.row(r).to_vec()))
            .collect();
        let rank = selected.len();
        let mut red = RowReducer::new(p, cols + rank);
        for (s, &r) in selected.iter().enumerate() {
            let mut row = matrix.row(r).to_vec();
            row.resize(cols + rank, 0);
            row[cols + s] = 1;
            red.push(row);
        }
        // independent rows: every pivot lies in the coefficient block
        let pivots = red.pivots().to_vec();
        debug_assert!(pivots.iter().all(|&q| q < cols));
        let transform = red.basis().iter().map(|row| row[cols..].to_vec()).collect();
        PreparedSystem {
            p,
            null_space: probe.null_space(),
            matrix,
            selected,
            pivots,
            transform,
        }
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.selected.len()
    }

    pub fn null_space(&self) -> &[Vec<u32>] {
        &self.null_space
    }

    /// Particular solution with free variables zero, or `None` if inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.matrix.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.rows(),
                found: b.len(),
            });
        }
        let p = self.p.value() as u64;
        let b_sel: Vec<u64> = self.selected.iter().map(|&r| b[r] as u64).collect();
        let mut x = vec![0u32; self.matrix.cols()];
        for (t, &q) in self.transform.iter().zip(&self.pivots) {
            let s: u64 = t.iter().zip(&b_sel).map(|(&a, &c)| a as u64 * c).sum();
            x[q] = (s % p) as u32;
        }
        if self.matrix.mul_vec(&x)? != b.iter().map(|&v| v % self.p.value()).collect::<Vec<_>>() {
            return Ok(None);
        }
        Ok(Some(x))
    }
}

/// A subspace of `F_p^n` held in reduced echelon form; reduction modulo it
/// gives canonical coset representatives.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    reducer: RowReducer,
}

impl Subspace {
    pub fn new(p: Prime, ambient: usize) -> Self {
        Subspace {
            ambient,
            reducer: RowReducer::new(p, ambient),
        }
    }

    pub fn spanned_by<V: AsRef<[u32]>>(p: Prime, ambient: usize, vectors: &[V]) -> Result<Self> {
        let mut s = Subspace::new(p, ambient);
        for v in vectors {
            s.add(v.as_ref())?;
        }
        Ok(s)
    }

    pub fn add(&mut self, v: &[u32]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(self.reducer.push(v.to_vec()))
    }

    pub fn dimension(&self) -> usize {
        self.reducer.rank()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        self.reducer.basis()
    }

    pub fn pivots(&self) -> &[usize] {
        self.reducer.pivots()
    }

    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut out = v.to_vec();
        self.reducer.reduce_in_place(&mut out);
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

/// Canonical representative of `v + span(subspace_basis)`.
pub fn coset_reduce<V: AsRef<[u32]>>(
    p: Prime,
    subspace_basis: &[V],
    v: &[u32],
) -> Result<Vec<u32>> {
    Ok(Subspace::spanned_by(p, v.len(), subspace_basis)?.reduce(v))
}
