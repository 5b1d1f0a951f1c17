//! Derivations, inner derivations and the first Hochschild cohomology
//! `HH¹(A) = Der(A)/Inn(A)` with its bracket and p-power map.
//!
//! Linear maps are stored as `dim × dim` matrices whose column `j` is the
//! image of `e_j`. Flattening is row-major, so the coefficient of `e_k` in
//! `f(e_j)` sits at index `k * dim + j`; the same indexing is used for the
//! unknowns of the Leibniz system.

use crate::algebra::{basis_vector, Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::exactla::{FpMatrix, Prime, RowReducer, Subspace};

/// A linear self-map of an algebra's underlying vector space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearEndo {
    matrix: FpMatrix,
}

impl LinearEndo {
    /// Wraps a square matrix. Panics on non-square input; use
    /// [`LinearEndo::try_new`] for untrusted data.
    pub fn new(matrix: FpMatrix) -> Self {
        Self::try_new(matrix).expect("linear endomorphism must be square")
    }

    pub fn try_new(matrix: FpMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        Ok(LinearEndo { matrix })
    }

    pub fn zero(p: Prime, dim: usize) -> Self {
        LinearEndo {
            matrix: FpMatrix::zeros(p, dim, dim),
        }
    }

    pub fn identity(p: Prime, dim: usize) -> Self {
        LinearEndo {
            matrix: FpMatrix::identity(p, dim),
        }
    }

    /// The map sending `e_j` to `images[j]`.
    pub fn from_images(p: Prime, images: &[Vec<u32>]) -> Result<Self> {
        let n = images.len();
        if let Some(bad) = images.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(LinearEndo {
            matrix: FpMatrix::from_columns(p, n, images),
        })
    }

    pub fn from_flat(p: Prime, dim: usize, flat: Vec<u32>) -> Result<Self> {
        Ok(LinearEndo {
            matrix: FpMatrix::from_residues(p, dim, dim, flat)?,
        })
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn flat(&self) -> &[u32] {
        self.matrix.as_slice()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn prime(&self) -> Prime {
        self.matrix.prime()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Image of `e_j`.
    pub fn image_of_basis(&self, j: usize) -> Vec<u32> {
        self.matrix.column(j)
    }

    pub fn apply_coeffs(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(v).expect("dimension checked by caller")
    }

    pub fn apply(&self, a: &Algebra, x: &AlgebraElement) -> Result<AlgebraElement> {
        check_endo(a, self)?;
        if x.dim() != self.dim() {
            return Err(Error::ParentMismatch);
        }
        a.element(self.apply_coeffs(x.coeffs()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearEndo) -> Result<LinearEndo> {
        self.check_compatible(other)?;
        Ok(LinearEndo {
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    pub fn add(&self, other: &LinearEndo) -> Result<LinearEndo> {
        self.check_compatible(other)?;
        Ok(LinearEndo {
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn sub(&self, other: &LinearEndo) -> Result<LinearEndo> {
        self.check_compatible(other)?;
        Ok(LinearEndo {
            matrix: self.matrix.sub(&other.matrix)?,
        })
    }

    pub fn scaled(&self, s: u32) -> LinearEndo {
        LinearEndo {
            matrix: self.matrix.scaled(s),
        }
    }

    /// `n`-fold composite; `n = 0` is the identity.
    pub fn power(&self, n: u32) -> LinearEndo {
        LinearEndo {
            matrix: self.matrix.pow(n).expect("square"),
        }
    }

    fn check_compatible(&self, other: &LinearEndo) -> Result<()> {
        if self.dim() != other.dim() || self.prime() != other.prime() {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }
}

pub(crate) fn check_endo(a: &Algebra, f: &LinearEndo) -> Result<()> {
    if f.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: f.dim(),
        });
    }
    if f.prime() != a.prime() {
        return Err(Error::ModulusMismatch(a.prime().value(), f.prime().value()));
    }
    Ok(())
}

/// First basis pair `(i, j)` with `f(e_i e_j) != e_i f(e_j) + f(e_i) e_j`.
pub fn leibniz_failure(a: &Algebra, f: &LinearEndo) -> Result<Option<(usize, usize)>> {
    check_endo(a, f)?;
    let n = a.dim();
    let p = a.prime();
    let images: Vec<Vec<u32>> = (0..n).map(|j| f.image_of_basis(j)).collect();
    for i in 0..n {
        let ei = basis_vector(n, i);
        for j in 0..n {
            let ej = basis_vector(n, j);
            let lhs = f.apply_coeffs(a.product_of_basis(i, j));
            let mut rhs = a.mul_coeffs(&ei, &images[j]);
            p.axpy(&mut rhs, 1, &a.mul_coeffs(&images[i], &ej));
            if lhs != rhs {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn is_derivation(a: &Algebra, f: &LinearEndo) -> Result<bool> {
    Ok(leibniz_failure(a, f)?.is_none())
}

pub(crate) fn require_derivation(a: &Algebra, f: &LinearEndo) -> Result<()> {
    match leibniz_failure(a, f)? {
        Some((i, j)) => Err(Error::NotADerivation { i, j }),
        None => Ok(()),
    }
}

/// Rows of the Leibniz operator `f ↦ (f(e_i e_j) - e_i f(e_j) - f(e_i) e_j)_{i,j}`,
/// one row per `(i, j, k)` output coordinate, over the flattened unknowns of `f`.
pub(crate) fn leibniz_rows(
    a: &Algebra,
) -> impl Iterator<Item = (usize, usize, usize, Vec<u32>)> + '_ {
    let n = a.dim();
    let p = a.prime();
    (0..n).flat_map(move |i| {
        (0..n).flat_map(move |j| {
            (0..n).map(move |k| {
                let mut row = vec![0u32; n * n];
                // f(e_i e_j)_k = Σ_l c_ij^l F[k][l]
                for (l, &c) in a.product_of_basis(i, j).iter().enumerate() {
                    row[k * n + l] = p.add(row[k * n + l], c);
                }
                // (e_i f(e_j))_k = Σ_m F[m][j] c_im^k
                for m in 0..n {
                    let c = a.product_of_basis(i, m)[k];
                    row[m * n + j] = p.sub(row[m * n + j], c);
                }
                // (f(e_i) e_j)_k = Σ_m F[m][i] c_mj^k
                for m in 0..n {
                    let c = a.product_of_basis(m, j)[k];
                    row[m * n + i] = p.sub(row[m * n + i], c);
                }
                (i, j, k, row)
            })
        })
    })
}

/// Canonical basis of `Der(A)`: the kernel of the Leibniz system, one vector
/// per free unknown in increasing index order.
pub fn derivation_space(a: &Algebra) -> Vec<LinearEndo> {
    let n = a.dim();
    let mut red = RowReducer::new(a.prime(), n * n);
    for (_, _, _, row) in leibniz_rows(a) {
        red.push(row);
    }
    red.null_space()
        .into_iter()
        .map(|v| LinearEndo::from_flat(a.prime(), n, v).expect("shape"))
        .collect()
}

/// `ad_x = [x, -]`.
pub fn inner_derivation(a: &Algebra, x: &AlgebraElement) -> Result<LinearEndo> {
    let l = a.left_multiplication(x)?;
    let r = a.right_multiplication(x)?;
    Ok(LinearEndo { matrix: l.sub(&r)? })
}

/// The subspace `Inn(A)` of flattened endomorphisms.
pub fn inner_subspace(a: &Algebra) -> Subspace {
    let n = a.dim();
    let mut s = Subspace::new(a.prime(), n * n);
    for i in 0..n {
        let ad = inner_derivation(a, &a.basis_element(i)).expect("basis element");
        s.add(ad.flat()).expect("shape");
    }
    s
}

/// Canonical (reduced echelon) basis of `Inn(A)`.
pub fn inner_derivations(a: &Algebra) -> Vec<LinearEndo> {
    let n = a.dim();
    inner_subspace(a)
        .basis()
        .iter()
        .map(|v| LinearEndo::from_flat(a.prime(), n, v.clone()).expect("shape"))
        .collect()
}

/// A class in `HH¹(A)`, stored by its canonical representative: the
/// derivation reduced modulo the echelon basis of `Inn(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HH1Class {
    representative: LinearEndo,
}

impl HH1Class {
    pub fn representative(&self) -> &LinearEndo {
        &self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }
}

/// Cached `Der(A)`, `Inn(A)` and a class basis of `HH¹(A)`.
#[derive(Clone, Debug)]
pub struct FirstCohomology {
    derivations: Vec<LinearEndo>,
    inner: Subspace,
    classes: Vec<HH1Class>,
}

impl FirstCohomology {
    pub fn compute(a: &Algebra) -> Self {
        let derivations = derivation_space(a);
        let inner = inner_subspace(a);
        let mut span = inner.clone();
        let mut classes = Vec::new();
        for d in &derivations {
            if span.add(d.flat()).expect("shape") {
                classes.push(HH1Class {
                    representative: reduce_endo(&inner, d),
                });
            }
        }
        FirstCohomology {
            derivations,
            inner,
            classes,
        }
    }

    pub fn derivations(&self) -> &[LinearEndo] {
        &self.derivations
    }

    pub fn inner(&self) -> &Subspace {
        &self.inner
    }

    pub fn classes(&self) -> &[HH1Class] {
        &self.classes
    }

    pub fn hh1_dimension(&self) -> usize {
        self.classes.len()
    }

    /// Class of a derivation already known to satisfy Leibniz.
    pub fn class_of_derivation(&self, d: &LinearEndo) -> HH1Class {
        HH1Class {
            representative: reduce_endo(&self.inner, d),
        }
    }

    pub fn class_of(&self, a: &Algebra, d: &LinearEndo) -> Result<HH1Class> {
        require_derivation(a, d)?;
        Ok(self.class_of_derivation(d))
    }

    /// Coordinates of a class in [`FirstCohomology::classes`].
    pub fn coordinates(&self, x: &HH1Class) -> Result<Vec<u32>> {
        let p = x.representative.prime();
        let cols: Vec<Vec<u32>> = self
            .classes
            .iter()
            .map(|c| c.representative.flat().to_vec())
            .collect();
        let m = FpMatrix::from_columns(p, x.representative.flat().len(), &cols);
        match crate::exactla::solve(&m, x.representative.flat())? {
            Some(sol) => Ok(sol.particular),
            None => Err(Error::InvalidParameter(
                "class does not belong to this algebra".into(),
            )),
        }
    }

    /// The class `Σ c_i · classes[i]`.
    pub fn class_from_coordinates(&self, p: Prime, dim: usize, coords: &[u32]) -> HH1Class {
        let mut rep = LinearEndo::zero(p, dim);
        for (c, x) in coords.iter().zip(&self.classes) {
            rep = rep.add(&x.representative.scaled(*c)).expect("same algebra");
        }
        HH1Class {
            representative: rep,
        }
    }
}

fn reduce_endo(inner: &Subspace, d: &LinearEndo) -> LinearEndo {
    LinearEndo::from_flat(d.prime(), d.dim(), inner.reduce(d.flat())).expect("shape")
}

pub fn hh1_basis(a: &Algebra) -> Vec<HH1Class> {
    FirstCohomology::compute(a).classes
}

/// Canonical class of `d + Inn(A)`.
pub fn class_of(a: &Algebra, d: &LinearEndo) -> Result<HH1Class> {
    require_derivation(a, d)?;
    Ok(HH1Class {
        representative: reduce_endo(&inner_subspace(a), d),
    })
}

/// `d∘e - e∘d`.
pub fn bracket(d: &LinearEndo, e: &LinearEndo) -> Result<LinearEndo> {
    d.compose(e)?.sub(&e.compose(d)?)
}

pub fn bracket_classes(a: &Algebra, x: &HH1Class, y: &HH1Class) -> Result<HH1Class> {
    check_endo(a, &x.representative)?;
    check_endo(a, &y.representative)?;
    class_of(a, &bracket(&x.representative, &y.representative)?)
}

/// The `p`-fold composite `d ∘ … ∘ d`.
pub fn p_power(a: &Algebra, d: &LinearEndo) -> Result<LinearEndo> {
    require_derivation(a, d)?;
    Ok(d.power(a.prime().value()))
}

pub fn p_power_class(a: &Algebra, x: &HH1Class) -> Result<HH1Class> {
    class_of(a, &p_power(a, &x.representative)?)
}
