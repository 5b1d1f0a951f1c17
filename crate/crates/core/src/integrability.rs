//! Truncated higher derivations and integrability of derivations.
//!
//! A higher derivation `(D_0 = Id, D_1, …, D_N)` truncated at order `N`
//! describes an automorphism `a ↦ Σ D_i(a) t^i` of `A[t]/(t^{N+1})`. The
//! group law is composition of those automorphisms, and a derivation `d` is
//! `r`-integrable to order `N` when it occurs as `D_r` of such a sequence with
//! `D_1 = … = D_{r-1} = 0`.

use crate::algebra::{basis_vector, Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::exactla::{FpMatrix, PreparedSystem, Prime, Subspace};
use crate::hochschild::{
    check_endo, derivation_space, leibniz_rows, require_derivation, FirstCohomology, HH1Class,
    LinearEndo,
};

/// Default node budget for the integrability search.
pub const DEFAULT_BRANCH_LIMIT: usize = 1000;

/// Largest `p^dim HH¹` for which [`hh1_r`] tests every class.
pub const CLASS_ENUMERATION_LIMIT: u64 = 729;

/// An element `Σ a_i t^i` of `A[t]/(t^{N+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedElement {
    coeffs: Vec<AlgebraElement>,
}

impl TruncatedElement {
    pub fn new(a: &Algebra, coeffs: Vec<AlgebraElement>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "truncated element needs at least one coefficient".into(),
            ));
        }
        if coeffs.iter().any(|c| c.dim() != a.dim()) {
            return Err(Error::ParentMismatch);
        }
        Ok(TruncatedElement { coeffs })
    }

    /// `x` placed in degree zero.
    pub fn constant(a: &Algebra, order: usize, x: &AlgebraElement) -> Self {
        let mut coeffs = vec![a.zero(); order + 1];
        coeffs[0] = x.clone();
        TruncatedElement { coeffs }
    }

    /// `1 + t^r d`, truncated at `order`.
    pub fn one_plus_t_power(a: &Algebra, order: usize, r: usize, d: &AlgebraElement) -> Self {
        let mut out = Self::constant(a, order, &a.unit());
        if r <= order {
            out.coeffs[r] = a.add(&out.coeffs[r], d).expect("same algebra");
        }
        out
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[AlgebraElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &AlgebraElement {
        &self.coeffs[i]
    }

    pub fn mul(&self, a: &Algebra, other: &TruncatedElement) -> Result<TruncatedElement> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        let n = self.order();
        let p = a.prime();
        let mut out = vec![vec![0u32; a.dim()]; n + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                let prod = a.multiply(x, y)?;
                p.axpy(&mut out[i + j], 1, prod.coeffs());
            }
        }
        Ok(TruncatedElement {
            coeffs: out
                .into_iter()
                .map(|v| a.element(v).expect("shape"))
                .collect(),
        })
    }

    /// Inverse of an element whose constant term is `1`.
    pub fn inverse_unipotent(&self, a: &Algebra) -> Result<TruncatedElement> {
        if self.coeffs[0] != a.unit() {
            return Err(Error::NotInvertible);
        }
        // x = 1 + y with y ∈ tA[t]; x^{-1} = Σ_k (-y)^k
        let n = self.order();
        let mut minus_y = self.clone();
        minus_y.coeffs[0] = a.zero();
        for c in minus_y.coeffs.iter_mut() {
            *c = a.scale(a.prime().value() - 1, c);
        }
        let mut acc = Self::constant(a, n, &a.unit());
        let mut term = acc.clone();
        for _ in 0..n {
            term = term.mul(a, &minus_y)?;
            for (s, t) in acc.coeffs.iter_mut().zip(&term.coeffs) {
                *s = a.add(s, t)?;
            }
        }
        Ok(acc)
    }
}

/// `(D_0 = Id, D_1, …, D_N)` satisfying the Leibniz rule through order `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedHigherDerivation {
    terms: Vec<LinearEndo>,
}

impl TruncatedHigherDerivation {
    /// Validates `D_0 = Id` and Leibniz at every degree.
    pub fn new(a: &Algebra, terms: Vec<LinearEndo>) -> Result<Self> {
        if terms.len() < 2 {
            return Err(Error::NotAHigherDerivation(
                "order must be at least 1".into(),
            ));
        }
        for t in &terms {
            check_endo(a, t)?;
        }
        if terms[0] != LinearEndo::identity(a.prime(), a.dim()) {
            return Err(Error::NotAHigherDerivation(
                "D_0 is not the identity".into(),
            ));
        }
        if let Some((n, i, j)) = higher_leibniz_failure(a, &terms) {
            return Err(Error::NotAHigherDerivation(format!(
                "Leibniz fails at degree {n} on basis pair ({i}, {j})"
            )));
        }
        Ok(TruncatedHigherDerivation { terms })
    }

    pub(crate) fn from_trusted(terms: Vec<LinearEndo>) -> Self {
        TruncatedHigherDerivation { terms }
    }

    pub fn identity(a: &Algebra, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter("order must be at least 1".into()));
        }
        let mut terms = vec![LinearEndo::zero(a.prime(), a.dim()); order + 1];
        terms[0] = LinearEndo::identity(a.prime(), a.dim());
        Ok(TruncatedHigherDerivation { terms })
    }

    /// The higher derivation with `α(e_j) = images[j]`.
    pub fn from_basis_images(a: &Algebra, images: &[TruncatedElement]) -> Result<Self> {
        if images.len() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: images.len(),
            });
        }
        let order = images[0].order();
        if images.iter().any(|x| x.order() != order) {
            return Err(Error::OrderMismatch(
                order,
                images.iter().map(|x| x.order()).max().unwrap_or(0),
            ));
        }
        let terms = (0..=order)
            .map(|i| {
                let cols: Vec<Vec<u32>> = images
                    .iter()
                    .map(|x| x.coeff(i).coeffs().to_vec())
                    .collect();
                LinearEndo::from_images(a.prime(), &cols)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(a, terms)
    }

    /// The inner automorphism `a ↦ c^{-1} a c` for `c` with constant term 1.
    pub fn conjugation(a: &Algebra, c: &TruncatedElement) -> Result<Self> {
        conjugate(a, &Self::identity(a, c.order())?, c)
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[LinearEndo] {
        &self.terms
    }

    pub fn term(&self, i: usize) -> &LinearEndo {
        &self.terms[i]
    }

    pub fn dim(&self) -> usize {
        self.terms[0].dim()
    }

    pub fn prime(&self) -> Prime {
        self.terms[0].prime()
    }

    /// `α(x) = Σ D_i(x) t^i`.
    pub fn evaluate(&self, a: &Algebra, x: &AlgebraElement) -> Result<TruncatedElement> {
        let coeffs = self
            .terms
            .iter()
            .map(|d| d.apply(a, x))
            .collect::<Result<Vec<_>>>()?;
        TruncatedElement::new(a, coeffs)
    }

    /// Re-checks the defining identities; used to audit solver output.
    pub fn verify(&self, a: &Algebra) -> Result<()> {
        Self::new(a, self.terms.clone()).map(|_| ())
    }
}

/// First `(degree, i, j)` where `D_n(e_i e_j) != Σ_{a+b=n} D_a(e_i) D_b(e_j)`.
pub fn higher_leibniz_failure(a: &Algebra, terms: &[LinearEndo]) -> Option<(usize, usize, usize)> {
    let n = a.dim();
    let p = a.prime();
    let images: Vec<Vec<Vec<u32>>> = terms
        .iter()
        .map(|d| (0..n).map(|j| d.image_of_basis(j)).collect())
        .collect();
    for deg in 1..terms.len() {
        for i in 0..n {
            for j in 0..n {
                let lhs = terms[deg].apply_coeffs(a.product_of_basis(i, j));
                let mut rhs = vec![0; n];
                for s in 0..=deg {
                    p.axpy(
                        &mut rhs,
                        1,
                        &a.mul_coeffs(&images[s][i], &images[deg - s][j]),
                    );
                }
                if lhs != rhs {
                    return Some((deg, i, j));
                }
            }
        }
    }
    None
}

/// Smallest `i >= 1` with `D_i != 0`; `None` when the sequence is the identity
/// through its order.
pub fn leading_index(hd: &TruncatedHigherDerivation) -> Option<usize> {
    (1..hd.terms.len()).find(|&i| !hd.terms[i].is_zero())
}

fn check_pair(u: &TruncatedHigherDerivation, v: &TruncatedHigherDerivation) -> Result<()> {
    if u.dim() != v.dim() || u.prime() != v.prime() {
        return Err(Error::ParentMismatch);
    }
    if u.order() != v.order() {
        return Err(Error::OrderMismatch(u.order(), v.order()));
    }
    Ok(())
}

/// The composite automorphism `u ∘ v`: term `n` is `Σ_{i+j=n} u_i ∘ v_j`.
pub fn hd_compose(
    u: &TruncatedHigherDerivation,
    v: &TruncatedHigherDerivation,
) -> Result<TruncatedHigherDerivation> {
    check_pair(u, v)?;
    let terms = (0..=u.order())
        .map(|n| {
            let mut acc = LinearEndo::zero(u.prime(), u.dim());
            for i in 0..=n {
                acc = acc.add(&u.terms[i].compose(&v.terms[n - i])?)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedHigherDerivation::from_trusted(terms))
}

/// `E_0 = Id`, `E_n = -Σ_{i=1}^{n} D_i ∘ E_{n-i}`.
pub fn hd_inverse(u: &TruncatedHigherDerivation) -> TruncatedHigherDerivation {
    let (p, dim) = (u.prime(), u.dim());
    let mut inv: Vec<LinearEndo> = vec![LinearEndo::identity(p, dim)];
    for n in 1..=u.order() {
        let mut acc = LinearEndo::zero(p, dim);
        for i in 1..=n {
            acc = acc
                .add(&u.terms[i].compose(&inv[n - i]).expect("same shape"))
                .expect("same shape");
        }
        inv.push(acc.scaled(p.value() - 1));
    }
    TruncatedHigherDerivation::from_trusted(inv)
}

/// `n`-fold composite of `u` with itself; `n = 0` gives the identity.
pub fn hd_power(u: &TruncatedHigherDerivation, n: u32) -> TruncatedHigherDerivation {
    let mut terms = vec![LinearEndo::zero(u.prime(), u.dim()); u.order() + 1];
    terms[0] = LinearEndo::identity(u.prime(), u.dim());
    let mut acc = TruncatedHigherDerivation::from_trusted(terms);
    for _ in 0..n {
        acc = hd_compose(&acc, u).expect("same shape");
    }
    acc
}

/// Coefficient of `t^l` in `(Σ D_i t^i)^n` from the closed form
/// `Σ_{c=1}^{l} C(n,c) Σ_{i_1+…+i_c=l, i_j>=1} D_{i_1} ∘ … ∘ D_{i_c}`.
pub fn hd_term_formula(u: &TruncatedHigherDerivation, n: u64, l: usize) -> Result<LinearEndo> {
    if l > u.order() {
        return Err(Error::InvalidParameter(format!(
            "degree {l} exceeds order {}",
            u.order()
        )));
    }
    let (p, dim) = (u.prime(), u.dim());
    if l == 0 {
        return Ok(LinearEndo::identity(p, dim));
    }
    let mut total = LinearEndo::zero(p, dim);
    for c in 1..=l {
        let binom = p.binomial(n, c as u64);
        if binom == 0 {
            continue;
        }
        let mut inner = LinearEndo::zero(p, dim);
        let mut parts = Vec::with_capacity(c);
        for_each_composition(l, c, &mut parts, &mut |parts| {
            let mut prod = LinearEndo::identity(p, dim);
            for &i in parts {
                prod = prod.compose(&u.terms[i]).expect("same shape");
            }
            inner = inner.add(&prod).expect("same shape");
        });
        total = total.add(&inner.scaled(binom))?;
    }
    Ok(total)
}

/// Calls `f` on every composition of `total` into `count` positive parts.
fn for_each_composition(
    total: usize,
    count: usize,
    parts: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if count == 0 {
        if total == 0 {
            f(parts);
        }
        return;
    }
    if total < count {
        return;
    }
    for first in 1..=total - (count - 1) {
        parts.push(first);
        for_each_composition(total - first, count - 1, parts, f);
        parts.pop();
    }
}

/// Result of [`integrate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegrationOutcome {
    Integrated(TruncatedHigherDerivation),
    /// No extension found. `degree` is where the last explored branch failed;
    /// `exhausted` is true when the whole search tree was visited, so the
    /// derivation is provably not integrable to this order.
    Obstructed {
        degree: usize,
        branches_explored: usize,
        exhausted: bool,
    },
}

impl IntegrationOutcome {
    pub fn is_integrated(&self) -> bool {
        matches!(self, IntegrationOutcome::Integrated(_))
    }
}

struct Search<'a> {
    a: &'a Algebra,
    system: PreparedSystem,
    der: Vec<Vec<u32>>,
    der_space: Subspace,
    r: usize,
    order: usize,
    branch_limit: usize,
    nodes: usize,
    limit_hit: bool,
    last_failure: usize,
}

impl Search<'_> {
    /// Right-hand side `Σ_{a+b=n, 0<a,b<n} D_a(e_i) D_b(e_j)` in Leibniz-row
    /// order. Terms not yet chosen count as zero.
    fn rhs(&self, terms: &[LinearEndo], n: usize) -> Vec<u32> {
        let a = self.a;
        let dim = a.dim();
        let p = a.prime();
        let known = |s: usize| s < terms.len() && !terms[s].is_zero();
        let images: Vec<Vec<Vec<u32>>> = terms
            .iter()
            .map(|d| (0..dim).map(|j| d.image_of_basis(j)).collect())
            .collect();
        let mut out = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = vec![0; dim];
                for s in 1..n {
                    if known(s) && known(n - s) {
                        p.axpy(&mut acc, 1, &a.mul_coeffs(&images[s][i], &images[n - s][j]));
                    }
                }
                out.extend(acc);
            }
        }
        out
    }

    /// `E(e_i) D(e_j) + D(e_i) E(e_j)` in Leibniz-row order.
    fn cross(&self, e: &[u32], d: &LinearEndo) -> Vec<u32> {
        let a = self.a;
        let dim = a.dim();
        let p = a.prime();
        let e = LinearEndo::from_flat(p, dim, e.to_vec()).expect("shape");
        let mut out = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = a.mul_coeffs(&e.image_of_basis(i), &d.image_of_basis(j));
                p.axpy(
                    &mut acc,
                    1,
                    &a.mul_coeffs(&d.image_of_basis(i), &e.image_of_basis(j)),
                );
                out.extend(acc);
            }
        }
        out
    }

    /// Affine set of `Der(A)`-coordinates `c` for which `D_n = base + Σ c_i der_i`
    /// keeps degree `n + r` solvable, as (offset, direction basis). `D_n` first
    /// meets the known terms there, paired with `D_r`, and only linearly.
    fn admissible(
        &self,
        terms: &mut Vec<LinearEndo>,
        base: &[u32],
    ) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
        let n = terms.len();
        let k = self.der.len();
        let target = n + self.r;
        if target > self.order {
            return Some((vec![0; k], (0..k).map(|i| basis_vector(k, i)).collect()));
        }
        let p = self.a.prime();
        terms.push(LinearEndo::from_flat(p, self.a.dim(), base.to_vec()).expect("shape"));
        let b0 = self.rhs(terms, target);
        terms.pop();
        let columns: Vec<Vec<u32>> = self
            .der
            .iter()
            .map(|v| self.cross(v, &terms[self.r]))
            .collect();
        let l = self.system.matrix();
        let unknowns = k + l.cols();
        // Σ c_i b_i - L y = -b0
        let equations = (0..l.rows()).map(|row| {
            let mut coeffs: Vec<u32> = columns.iter().map(|col| col[row]).collect();
            coeffs.extend(l.row(row).iter().map(|&v| p.neg(v)));
            (coeffs, p.neg(b0[row]))
        });
        let solution = crate::exactla::solve_rows(p, unknowns, equations).expect("shape")?;
        let mut directions = Subspace::new(p, k);
        for v in &solution.kernel_basis {
            directions.add(&v[..k]).expect("shape");
        }
        Some((
            solution.particular[..k].to_vec(),
            directions.basis().to_vec(),
        ))
    }

    fn extend(&mut self, terms: &mut Vec<LinearEndo>) -> bool {
        let n = terms.len();
        if n > self.order {
            return true;
        }
        let rhs = self.rhs(terms, n);
        let Some(particular) = self.system.solve(&rhs).expect("shape") else {
            self.last_failure = n;
            return false;
        };
        let p = self.a.prime();
        let base = self.der_space.reduce(&particular);
        let Some((offset, directions)) = self.admissible(terms, &base) else {
            self.last_failure = n + self.r;
            return false;
        };
        let mut start = base;
        for (c, v) in offset.iter().zip(&self.der) {
            p.axpy(&mut start, *c, v);
        }
        let steps: Vec<Vec<u32>> = directions
            .iter()
            .map(|dir| {
                let mut step = vec![0; start.len()];
                for (c, v) in dir.iter().zip(&self.der) {
                    p.axpy(&mut step, *c, v);
                }
                step
            })
            .collect();
        let mut digits = vec![0u32; steps.len()];
        loop {
            if self.nodes >= self.branch_limit {
                self.limit_hit = true;
                return false;
            }
            self.nodes += 1;
            let mut candidate = start.clone();
            for (c, v) in digits.iter().zip(&steps) {
                p.axpy(&mut candidate, *c, v);
            }
            terms.push(LinearEndo::from_flat(p, self.a.dim(), candidate).expect("shape"));
            if self.extend(terms) {
                return true;
            }
            terms.pop();
            if self.limit_hit || !increment(&mut digits, p.value()) {
                return false;
            }
        }
    }
}

/// Base-`p` counter, least significant digit first; `false` on wrap-around.
fn increment(digits: &mut [u32], p: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// Searches for `D_{r+1}, …, D_N` extending `(Id, 0, …, 0, D_r = d)` to a
/// truncated higher derivation.
///
/// Each degree is an affine linear system whose solution set is a coset of
/// `Der(A)`. The search is depth-first over that coset, restricted to the
/// translates that keep degree `n + r` solvable (an affine condition), and
/// visits at most `branch_limit` nodes. The restriction discards no
/// solution, so an exhausted search proves non-integrability.
pub fn integrate(
    a: &Algebra,
    d: &LinearEndo,
    r: usize,
    order: usize,
    branch_limit: usize,
) -> Result<IntegrationOutcome> {
    require_derivation(a, d)?;
    if r == 0 || r > order {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= r <= N, got r = {r}, N = {order}"
        )));
    }
    if branch_limit == 0 {
        return Err(Error::InvalidParameter(
            "branch limit must be positive".into(),
        ));
    }
    let (p, dim) = (a.prime(), a.dim());
    let mut terms = vec![LinearEndo::zero(p, dim); r + 1];
    terms[0] = LinearEndo::identity(p, dim);
    terms[r] = d.clone();
    if r == order {
        return Ok(IntegrationOutcome::Integrated(
            TruncatedHigherDerivation::new(a, terms)?,
        ));
    }

    let rows: Vec<Vec<u32>> = leibniz_rows(a).map(|(_, _, _, row)| row).collect();
    let flat: Vec<u32> = rows.into_iter().flatten().collect();
    let system = PreparedSystem::new(FpMatrix::from_residues(
        p,
        dim * dim * dim,
        dim * dim,
        flat,
    )?);
    let der: Vec<Vec<u32>> = derivation_space(a)
        .iter()
        .map(|e| e.flat().to_vec())
        .collect();
    let der_space = Subspace::spanned_by(p, dim * dim, &der)?;
    let mut search = Search {
        a,
        system,
        der,
        der_space,
        r,
        order,
        branch_limit,
        nodes: 0,
        limit_hit: false,
        last_failure: 0,
    };
    if search.extend(&mut terms) {
        return Ok(IntegrationOutcome::Integrated(
            TruncatedHigherDerivation::new(a, terms)?,
        ));
    }
    Ok(IntegrationOutcome::Obstructed {
        degree: search.last_failure,
        branches_explored: search.nodes,
        exhausted: !search.limit_hit,
    })
}

/// Classes of `HH¹(A)` with a representative `r`-integrable to order `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedIntegrableClasses {
    /// Canonical basis of the integrable subspace, reduced against the
    /// `HH¹` class basis.
    pub classes: Vec<HH1Class>,
    /// `false` when some search hit its branch limit or the class space was
    /// too large to enumerate; the span is then only a lower bound.
    pub exact: bool,
}

/// Order-`N` approximation of `HH¹_r(A)`.
///
/// Integrable derivations form a subgroup containing `Inn(A)`, so it is
/// enough to test one representative per class and close under addition.
/// When `p^{dim HH¹}` is at most [`CLASS_ENUMERATION_LIMIT`] every class
/// outside the span found so far is tested; otherwise only the basis classes
/// are tested and the result is flagged as a lower bound.
pub fn hh1_r(
    a: &Algebra,
    r: usize,
    order: usize,
    branch_limit: usize,
) -> Result<TruncatedIntegrableClasses> {
    if r == 0 || r > order {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= r <= N, got r = {r}, N = {order}"
        )));
    }
    let (p, dim) = (a.prime(), a.dim());
    let h = FirstCohomology::compute(a);
    let k = h.hh1_dimension();
    let mut found = Subspace::new(p, k);
    let mut exact = true;
    let test = |coords: &[u32], found: &mut Subspace, exact: &mut bool| -> Result<()> {
        if found.contains(coords) {
            return Ok(());
        }
        let class = h.class_from_coordinates(p, dim, coords);
        match integrate(a, class.representative(), r, order, branch_limit)? {
            IntegrationOutcome::Integrated(_) => {
                found.add(coords)?;
            }
            IntegrationOutcome::Obstructed { exhausted, .. } => {
                if !exhausted {
                    *exact = false;
                }
            }
        }
        Ok(())
    };
    let enumerable = (p.value() as u64)
        .checked_pow(k as u32)
        .is_some_and(|n| n <= CLASS_ENUMERATION_LIMIT);
    if enumerable {
        let mut digits = vec![0u32; k];
        while increment(&mut digits, p.value()) {
            test(&digits, &mut found, &mut exact)?;
            if found.dimension() == k {
                break;
            }
        }
    } else {
        for i in 0..k {
            test(&basis_vector(k, i), &mut found, &mut exact)?;
        }
        if found.dimension() < k {
            exact = false;
        }
    }
    let classes = found
        .basis()
        .iter()
        .map(|coords| h.class_from_coordinates(p, dim, coords))
        .collect();
    Ok(TruncatedIntegrableClasses { classes, exact })
}

/// `a ↦ c^{-1} α(a) c` in `A[t]/(t^{N+1})`.
fn conjugate(
    a: &Algebra,
    hd: &TruncatedHigherDerivation,
    c: &TruncatedElement,
) -> Result<TruncatedHigherDerivation> {
    if c.order() != hd.order() {
        return Err(Error::OrderMismatch(hd.order(), c.order()));
    }
    let c_inv = c.inverse_unipotent(a)?;
    let images = (0..a.dim())
        .map(|j| {
            c_inv
                .mul(a, &hd.evaluate(a, &a.basis_element(j))?)?
                .mul(a, c)
        })
        .collect::<Result<Vec<_>>>()?;
    TruncatedHigherDerivation::from_basis_images(a, &images)
}

/// Conjugates `hd` by `c = 1 + t^r d`. When `D_r = [d, -]` the result has
/// leading index at least `r + 1`.
pub fn conj_adjust(
    a: &Algebra,
    hd: &TruncatedHigherDerivation,
    d: &AlgebraElement,
    r: usize,
) -> Result<TruncatedHigherDerivation> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    if let Some(found) = leading_index(hd) {
        if found < r {
            return Err(Error::LeadingIndexTooLow { found, required: r });
        }
    }
    let c = TruncatedElement::one_plus_t_power(a, hd.order(), r, d);
    conjugate(a, hd, &c)
}
