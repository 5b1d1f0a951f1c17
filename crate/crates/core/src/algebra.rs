//! Finite-dimensional algebras over `F_p` given by structure constants.
//!
//! The table stores `e_i · e_j = Σ_k c[i][j][k] e_k` flattened at index
//! `(i * dim + j) * dim + k`. Constructors for group algebras, truncated
//! polynomial algebras and matrix algebras all emit such a table.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{FpMatrix, Prime, RowReducer};

/// Hard upper bound on algebra dimension.
pub const MAX_DIM: usize = 64;

/// Group data kept alongside a group algebra: the Cayley table plus the
/// identity and inverses it determines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupData {
    cayley: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupData {
    /// Checks the group axioms on a Cayley table of indices.
    pub fn from_cayley(cayley: Vec<Vec<usize>>) -> Result<Self> {
        let n = cayley.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (g, row) in cayley.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {g} has length {}, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&h| h >= n) {
                return Err(Error::NotAGroup(format!(
                    "closure: entry {bad} in row {g} is out of range"
                )));
            }
        }
        for g in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for h in 0..n {
                seen_row[cayley[g][h]] = true;
                seen_col[cayley[h][g]] = true;
            }
            if seen_row.contains(&false) {
                return Err(Error::NotAGroup(format!("row {g} is not a permutation")));
            }
            if seen_col.contains(&false) {
                return Err(Error::NotAGroup(format!("column {g} is not a permutation")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| cayley[e][g] == g && cayley[g][e] == g))
            .ok_or_else(|| Error::NotAGroup("identity: no two-sided identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| cayley[g][h] == identity && cayley[h][g] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("inverses: element {g} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(GroupData {
            cayley,
            identity,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn product(&self, g: usize, h: usize) -> usize {
        self.cayley[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }
}

/// A failed associativity or unit check, by basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Associativity { i, j, k } => {
                write!(f, "associativity fails on basis triple ({i}, {j}, {k})")
            }
            Violation::LeftUnit { i } => write!(f, "1·e_{i} != e_{i}"),
            Violation::RightUnit { i } => write!(f, "e_{i}·1 != e_{i}"),
        }
    }
}

/// Coefficient vector of an element of some algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coeffs: Vec<u32>,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    p: Prime,
    labels: Vec<String>,
    constants: Vec<u32>,
    unit: Vec<u32>,
    group: Option<GroupData>,
}

impl Algebra {
    /// Builds an algebra from a `dim × dim` table of coefficient vectors.
    ///
    /// Only shapes and residues are checked here; associativity and the unit
    /// law are reported by [`Algebra::validate`].
    pub fn from_structure_constants(
        p: Prime,
        labels: Vec<String>,
        table: &[Vec<Vec<u32>>],
        unit: Vec<u32>,
    ) -> Result<Self> {
        let dim = labels.len();
        check_dim(dim)?;
        if table.len() != dim {
            return Err(Error::InvalidAlgebra(format!(
                "table has {} rows, expected {dim}",
                table.len()
            )));
        }
        let mut constants = Vec::with_capacity(dim * dim * dim);
        for (i, row) in table.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidAlgebra(format!(
                    "table row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != dim {
                    return Err(Error::InvalidAlgebra(format!(
                        "product e_{i}·e_{j} has {} coefficients, expected {dim}",
                        v.len()
                    )));
                }
                constants.extend(v.iter().map(|&c| c % p.value()));
            }
        }
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra(format!(
                "unit has {} coefficients, expected {dim}",
                unit.len()
            )));
        }
        let unit = unit.into_iter().map(|c| c % p.value()).collect();
        Ok(Algebra {
            p,
            labels,
            constants,
            unit,
            group: None,
        })
    }

    /// The group algebra `F_p G` of a group given by its Cayley table.
    pub fn group_algebra(cayley: Vec<Vec<usize>>, labels: Vec<String>, p: Prime) -> Result<Self> {
        let group = GroupData::from_cayley(cayley)?;
        let n = group.order();
        check_dim(n)?;
        if labels.len() != n {
            return Err(Error::InvalidAlgebra(format!(
                "{} labels for a group of order {n}",
                labels.len()
            )));
        }
        let mut constants = vec![0; n * n * n];
        for g in 0..n {
            for h in 0..n {
                constants[(g * n + h) * n + group.product(g, h)] = 1;
            }
        }
        let mut unit = vec![0; n];
        unit[group.identity()] = 1;
        Ok(Algebra {
            p,
            labels,
            constants,
            unit,
            group: Some(group),
        })
    }

    /// `F_p[x]/(x^n)` on the monomial basis.
    pub fn truncated_poly(p: Prime, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "truncated_poly needs n >= 1".into(),
            ));
        }
        check_dim(n)?;
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let mut constants = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    constants[(i * n + j) * n + i + j] = 1;
                }
            }
        }
        let mut unit = vec![0; n];
        unit[0] = 1;
        Ok(Algebra {
            p,
            labels,
            constants,
            unit,
            group: None,
        })
    }

    /// `M_m(A)` on the basis `E_st ⊗ e_i`, indexed `(s * m + t) * dim + i`.
    pub fn matrix_algebra(a: &Algebra, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter(
                "matrix_algebra needs m >= 1".into(),
            ));
        }
        let d = a.dim();
        let n = m * m * d;
        check_dim(n)?;
        let idx = |s: usize, t: usize, i: usize| (s * m + t) * d + i;
        let mut labels = Vec::with_capacity(n);
        for s in 0..m {
            for t in 0..m {
                for l in &a.labels {
                    labels.push(if m == 1 {
                        l.clone()
                    } else {
                        format!("E{},{}:{l}", s + 1, t + 1)
                    });
                }
            }
        }
        let mut constants = vec![0; n * n * n];
        for s in 0..m {
            for t in 0..m {
                for v in 0..m {
                    for i in 0..d {
                        for j in 0..d {
                            let row = idx(s, t, i);
                            let col = idx(t, v, j);
                            let base = (row * n + col) * n;
                            for (k, &c) in a.product_of_basis(i, j).iter().enumerate() {
                                constants[base + idx(s, v, k)] = c;
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![0; n];
        for s in 0..m {
            for (i, &c) in a.unit.iter().enumerate() {
                unit[idx(s, s, i)] = c;
            }
        }
        Ok(Algebra {
            p: a.p,
            labels,
            constants,
            unit,
            group: None,
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn group(&self) -> Option<&GroupData> {
        self.group.as_ref()
    }

    /// Coefficients of `e_i · e_j`.
    #[inline]
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[u32] {
        let n = self.dim();
        &self.constants[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// The full table as nested vectors.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<u32>>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.product_of_basis(i, j).to_vec())
                    .collect()
            })
            .collect()
    }

    /// Returns a copy with one structure constant overwritten. Group data is
    /// dropped since the table no longer comes from a group.
    pub fn with_constant(&self, i: usize, j: usize, k: usize, value: u32) -> Algebra {
        let n = self.dim();
        let mut out = self.clone();
        out.constants[(i * n + j) * n + k] = value % self.p.value();
        out.group = None;
        out
    }

    /// Empty iff associativity and the two-sided unit law hold on the basis.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_of_basis(i, j).to_vec();
                for k in 0..n {
                    let lhs = self.mul_coeffs(&ij, &basis_vector(n, k));
                    let jk = self.product_of_basis(j, k).to_vec();
                    let rhs = self.mul_coeffs(&basis_vector(n, i), &jk);
                    if lhs != rhs {
                        out.push(Violation::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..n {
            let e = basis_vector(n, i);
            if self.mul_coeffs(&self.unit, &e) != e {
                out.push(Violation::LeftUnit { i });
            }
            if self.mul_coeffs(&e, &self.unit) != e {
                out.push(Violation::RightUnit { i });
            }
        }
        out
    }

    pub fn element(&self, coeffs: Vec<u32>) -> Result<AlgebraElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coeffs.len(),
            });
        }
        let p = self.p.value();
        Ok(AlgebraElement {
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        })
    }

    /// Element from signed integer coefficients.
    pub fn element_from_signed(&self, coeffs: &[i64]) -> Result<AlgebraElement> {
        self.element(coeffs.iter().map(|&c| self.p.reduce(c)).collect())
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement {
            coeffs: basis_vector(self.dim(), i),
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            coeffs: vec![0; self.dim()],
        }
    }

    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement {
            coeffs: self.unit.clone(),
        }
    }

    fn check_parent(&self, x: &AlgebraElement) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    pub(crate) fn mul_coeffs(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let n = self.dim();
        let p = self.p;
        let mut out = vec![0; n];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                p.axpy(&mut out, p.mul(a, b), self.product_of_basis(i, j));
            }
        }
        out
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_parent(x)?;
        self.check_parent(y)?;
        Ok(AlgebraElement {
            coeffs: self.mul_coeffs(&x.coeffs, &y.coeffs),
        })
    }

    /// `xy - yx`.
    pub fn commutator(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        let xy = self.multiply(x, y)?;
        let yx = self.multiply(y, x)?;
        self.sub(&xy, &yx)
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_parent(x)?;
        self.check_parent(y)?;
        let p = self.p;
        Ok(AlgebraElement {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(&a, &b)| p.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_parent(x)?;
        self.check_parent(y)?;
        let p = self.p;
        Ok(AlgebraElement {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(&a, &b)| p.sub(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, s: u32, x: &AlgebraElement) -> AlgebraElement {
        let mut coeffs = x.coeffs.clone();
        self.p.scale(&mut coeffs, s % self.p.value());
        AlgebraElement { coeffs }
    }

    /// Matrix of `y ↦ x·y` (column `j` is `x·e_j`).
    pub fn left_multiplication(&self, x: &AlgebraElement) -> Result<FpMatrix> {
        self.check_parent(x)?;
        let n = self.dim();
        let cols: Vec<Vec<u32>> = (0..n)
            .map(|j| self.mul_coeffs(&x.coeffs, &basis_vector(n, j)))
            .collect();
        Ok(FpMatrix::from_columns(self.p, n, &cols))
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_multiplication(&self, x: &AlgebraElement) -> Result<FpMatrix> {
        self.check_parent(x)?;
        let n = self.dim();
        let cols: Vec<Vec<u32>> = (0..n)
            .map(|j| self.mul_coeffs(&basis_vector(n, j), &x.coeffs))
            .collect();
        Ok(FpMatrix::from_columns(self.p, n, &cols))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n)
            .all(|i| (i + 1..n).all(|j| self.product_of_basis(i, j) == self.product_of_basis(j, i)))
    }

    /// Canonical basis of the center, the kernel of `z ↦ ([z, e_i])_i`.
    pub fn center(&self) -> Vec<AlgebraElement> {
        let n = self.dim();
        let p = self.p;
        let mut red = RowReducer::new(p, n);
        for i in 0..n {
            for k in 0..n {
                let row = (0..n)
                    .map(|l| {
                        p.sub(
                            self.product_of_basis(l, i)[k],
                            self.product_of_basis(i, l)[k],
                        )
                    })
                    .collect();
                red.push(row);
            }
        }
        red.null_space()
            .into_iter()
            .map(|coeffs| AlgebraElement { coeffs })
            .collect()
    }

    /// Human-readable form with signed coefficients, e.g. `1 - (132)`.
    pub fn format_element(&self, x: &AlgebraElement) -> String {
        let p = self.p.value() as i64;
        let mut out = String::new();
        for (i, &c) in x.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = c as i64;
            let signed = if c > p / 2 { c - p } else { c };
            let (neg, mag) = (signed < 0, signed.abs());
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != 1 {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&self.labels[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Index of the basis element with the given label.
    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

pub(crate) fn basis_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidAlgebra("dimension must be at least 1".into()));
    }
    if dim > MAX_DIM {
        return Err(Error::DimensionCap { dim, cap: MAX_DIM });
    }
    Ok(())
}
