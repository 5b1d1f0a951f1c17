//! Transfer along the bimodule `kG` for a subgroup `H` of index two, inner
//! derivation solvability, and the matrix-algebra (Morita) induced map on
//! `HH¹`.

use crate::algebra::{Algebra, AlgebraElement};
use crate::builtin;
use crate::error::{Error, Result};
use crate::exactla::{solve_rows, FpScalar, Prime, Subspace};
use crate::hochschild::{
    check_endo, is_derivation, require_derivation, FirstCohomology, HH1Class, LinearEndo,
};

/// `kG` as a `kG`-`kH` bimodule, with a left transversal of `H` in `G`.
#[derive(Clone, Debug)]
pub struct GroupBimoduleSetup {
    big: Algebra,
    sub: Algebra,
    embedding: Vec<usize>,
    coset_reps: Vec<usize>,
    /// For each `g ∈ G`, the `(rep position, h)` with `g = s·h`.
    decomposition: Vec<(usize, usize)>,
}

impl GroupBimoduleSetup {
    pub fn new(
        big: Algebra,
        sub: Algebra,
        embedding: Vec<usize>,
        coset_reps: Vec<usize>,
    ) -> Result<Self> {
        if big.prime() != sub.prime() {
            return Err(Error::ModulusMismatch(
                big.prime().value(),
                sub.prime().value(),
            ));
        }
        let g = big.group().ok_or(Error::NotGroupAlgebra)?;
        let h = sub.group().ok_or(Error::NotGroupAlgebra)?;
        if embedding.len() != h.order() || embedding.iter().any(|&x| x >= g.order()) {
            return Err(Error::InvalidParameter(
                "embedding does not map H into G".into(),
            ));
        }
        for a in 0..h.order() {
            for b in 0..h.order() {
                if embedding[h.product(a, b)] != g.product(embedding[a], embedding[b]) {
                    return Err(Error::InvalidParameter(format!(
                        "embedding is not multiplicative on ({a}, {b})"
                    )));
                }
            }
        }
        let mut decomposition = vec![None; g.order()];
        for (pos, &s) in coset_reps.iter().enumerate() {
            if s >= g.order() {
                return Err(Error::InvalidParameter(format!(
                    "coset representative {s} out of range"
                )));
            }
            for (hi, &he) in embedding.iter().enumerate() {
                let x = g.product(s, he);
                if decomposition[x].replace((pos, hi)).is_some() {
                    return Err(Error::InvalidParameter(format!(
                        "element {x} lies in two cosets"
                    )));
                }
            }
        }
        let decomposition = decomposition
            .into_iter()
            .enumerate()
            .map(|(x, d)| {
                d.ok_or_else(|| {
                    Error::InvalidParameter(format!("element {x} is not covered by the cosets"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupBimoduleSetup {
            big,
            sub,
            embedding,
            coset_reps,
            decomposition,
        })
    }

    /// `kS_3` over `kH`, `H = {1, (123), (132)}`, representatives `{1, (12)}`.
    pub fn s3_over_c3(p: Prime) -> Result<Self> {
        Self::new(
            builtin::s3_group_algebra(p)?,
            builtin::c3_in_s3_group_algebra(p)?,
            vec![0, 1, 2],
            vec![0, 3],
        )
    }

    pub fn big(&self) -> &Algebra {
        &self.big
    }

    pub fn sub(&self) -> &Algebra {
        &self.sub
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    pub fn coset_reps(&self) -> &[usize] {
        &self.coset_reps
    }

    fn group(&self) -> &crate::algebra::GroupData {
        self.big.group().expect("checked at construction")
    }

    fn embed(&self, y: &AlgebraElement) -> AlgebraElement {
        let mut out = vec![0; self.big.dim()];
        for (h, &c) in y.coeffs().iter().enumerate() {
            out[self.embedding[h]] = c;
        }
        self.big.element(out).expect("shape")
    }
}

/// `⟨x, y⟩ = Σ x_g y_h [gh = 1]` on a group algebra.
pub fn symmetrizing_form(a: &Algebra, x: &AlgebraElement, y: &AlgebraElement) -> Result<FpScalar> {
    let g = a.group().ok_or(Error::NotGroupAlgebra)?;
    if x.dim() != a.dim() || y.dim() != a.dim() {
        return Err(Error::ParentMismatch);
    }
    let p = a.prime();
    let mut acc = 0u32;
    for (i, &xi) in x.coeffs().iter().enumerate() {
        if xi != 0 {
            acc = p.add(acc, p.mul(xi, y.coeffs()[g.inverse(i)]));
        }
    }
    Ok(FpScalar::new(acc as i64, p))
}

/// `φ_s`: the `kH`-linear projection with `φ_s(s·h) = h` and `φ_s(g) = 0`
/// off the coset `sH`.
pub fn dual_basis_projection(
    setup: &GroupBimoduleSetup,
    s: usize,
    x: &AlgebraElement,
) -> Result<AlgebraElement> {
    let pos = setup
        .coset_reps
        .iter()
        .position(|&r| r == s)
        .ok_or_else(|| Error::InvalidParameter(format!("{s} is not a coset representative")))?;
    if x.dim() != setup.big.dim() {
        return Err(Error::ParentMismatch);
    }
    let mut out = vec![0; setup.sub.dim()];
    for (g, &c) in x.coeffs().iter().enumerate() {
        let (q, h) = setup.decomposition[g];
        if q == pos {
            out[h] = setup.big.prime().add(out[h], c);
        }
    }
    setup.sub.element(out)
}

/// The four sums of the two-coset transfer formula evaluated at `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferTerms {
    /// `Σ_h ⟨h⁻¹, f(φ_1(a))⟩ h`
    pub first: AlgebraElement,
    /// `Σ_h ⟨h⁻¹t, f(φ_t(a))⟩ th`
    pub second: AlgebraElement,
    /// `Σ_h ⟨h⁻¹, f(φ_1(at))⟩ ht`
    pub third: AlgebraElement,
    /// `Σ_h ⟨h⁻¹, f(φ_t(at))⟩ tht`
    pub fourth: AlgebraElement,
}

impl TransferTerms {
    pub fn total(&self, a: &Algebra) -> AlgebraElement {
        [&self.second, &self.third, &self.fourth]
            .into_iter()
            .fold(self.first.clone(), |acc, x| {
                a.add(&acc, x).expect("same algebra")
            })
    }
}

fn two_cosets(setup: &GroupBimoduleSetup) -> Result<(usize, usize)> {
    let id = setup.group().identity();
    match setup.coset_reps.as_slice() {
        &[a, b] if a == id => Ok((a, b)),
        &[a, b] if b == id => Ok((b, a)),
        &[_, _] => Err(Error::UnsupportedSetup(
            "the identity must represent the coset H".into(),
        )),
        reps => Err(Error::UnsupportedSetup(format!(
            "transfer is implemented for two cosets, got {}",
            reps.len()
        ))),
    }
}

/// Evaluates each term of the transfer formula at the basis element `g`.
pub fn transfer_terms(
    setup: &GroupBimoduleSetup,
    f: &LinearEndo,
    g: usize,
) -> Result<TransferTerms> {
    let (one, t) = two_cosets(setup)?;
    check_endo(&setup.sub, f)?;
    let big = &setup.big;
    let grp = setup.group();
    let a = big.basis_element(g);
    let at = big.basis_element(grp.product(g, t));
    let image = |s: usize, x: &AlgebraElement| -> Result<AlgebraElement> {
        let y = dual_basis_projection(setup, s, x)?;
        Ok(setup.embed(&f.apply(&setup.sub, &y)?))
    };
    let y1 = image(one, &a)?;
    let yt = image(t, &a)?;
    let y1t = image(one, &at)?;
    let ytt = image(t, &at)?;

    let p = big.prime();
    let mut terms = [
        vec![0u32; big.dim()],
        vec![0; big.dim()],
        vec![0; big.dim()],
        vec![0; big.dim()],
    ];
    for &h in &setup.embedding {
        let h_inv = big.basis_element(grp.inverse(h));
        let h_inv_t = big.basis_element(grp.product(grp.inverse(h), t));
        let c1 = symmetrizing_form(big, &h_inv, &y1)?.value();
        let c2 = symmetrizing_form(big, &h_inv_t, &yt)?.value();
        let c3 = symmetrizing_form(big, &h_inv, &y1t)?.value();
        let c4 = symmetrizing_form(big, &h_inv, &ytt)?.value();
        terms[0][h] = p.add(terms[0][h], c1);
        let th = grp.product(t, h);
        terms[1][th] = p.add(terms[1][th], c2);
        let ht = grp.product(h, t);
        terms[2][ht] = p.add(terms[2][ht], c3);
        let tht = grp.product(th, t);
        terms[3][tht] = p.add(terms[3][tht], c4);
    }
    let [first, second, third, fourth] = terms.map(|v| big.element(v).expect("shape"));
    Ok(TransferTerms {
        first,
        second,
        third,
        fourth,
    })
}

/// `tr(f)` on `kG` from the two-coset transfer formula, term by term as
/// written. It is a linear map; whether it is a derivation is left to the
/// caller to check.
pub fn transfer_map(setup: &GroupBimoduleSetup, f: &LinearEndo) -> Result<LinearEndo> {
    let images = (0..setup.big.dim())
        .map(|g| Ok(transfer_terms(setup, f, g)?.total(&setup.big).into_coeffs()))
        .collect::<Result<Vec<_>>>()?;
    LinearEndo::from_images(setup.big.prime(), &images)
}

/// The collapsed two-term sum `Σ_h (⟨h⁻¹, f(φ_1(a))⟩ + ⟨h, f(φ_t(at))⟩) h`
/// used when evaluating the transfer on `a ∈ H` by hand.
pub fn transfer_on_subgroup_element(
    setup: &GroupBimoduleSetup,
    f: &LinearEndo,
    g: usize,
) -> Result<AlgebraElement> {
    let (one, t) = two_cosets(setup)?;
    check_endo(&setup.sub, f)?;
    let big = &setup.big;
    let grp = setup.group();
    let a = big.basis_element(g);
    let at = big.basis_element(grp.product(g, t));
    let y1 = setup.embed(&f.apply(&setup.sub, &dual_basis_projection(setup, one, &a)?)?);
    let ytt = setup.embed(&f.apply(&setup.sub, &dual_basis_projection(setup, t, &at)?)?);
    let p = big.prime();
    let mut out = vec![0; big.dim()];
    for &h in &setup.embedding {
        let c1 = symmetrizing_form(big, &big.basis_element(grp.inverse(h)), &y1)?.value();
        let c2 = symmetrizing_form(big, &big.basis_element(h), &ytt)?.value();
        out[h] = p.add(out[h], p.add(c1, c2));
    }
    big.element(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InnerSolveOutcome {
    Witness(AlgebraElement),
    NoSolution,
}

impl InnerSolveOutcome {
    pub fn is_solvable(&self) -> bool {
        matches!(self, InnerSolveOutcome::Witness(_))
    }
}

/// Solves `[x, g_i] = v_i` simultaneously for `x ∈ A`.
pub fn is_inner(
    a: &Algebra,
    constraints: &[(AlgebraElement, AlgebraElement)],
) -> Result<InnerSolveOutcome> {
    let n = a.dim();
    let mut equations = Vec::with_capacity(constraints.len() * n);
    for (g, v) in constraints {
        if g.dim() != n || v.dim() != n {
            return Err(Error::ParentMismatch);
        }
        let brackets: Vec<AlgebraElement> = (0..n)
            .map(|l| a.commutator(&a.basis_element(l), g))
            .collect::<Result<_>>()?;
        for k in 0..n {
            let row = brackets.iter().map(|b| b.coeffs()[k]).collect();
            equations.push((row, v.coeffs()[k]));
        }
    }
    Ok(match solve_rows(a.prime(), n, equations)? {
        Some(sol) => InnerSolveOutcome::Witness(a.element(sol.particular)?),
        None => InnerSolveOutcome::NoSolution,
    })
}

/// Whether `d` is `ad_x` for some `x`.
pub fn inner_witness(a: &Algebra, d: &LinearEndo) -> Result<InnerSolveOutcome> {
    check_endo(a, d)?;
    let constraints: Vec<_> = (0..a.dim())
        .map(|g| {
            (
                a.basis_element(g),
                a.element(d.image_of_basis(g)).expect("shape"),
            )
        })
        .collect();
    is_inner(a, &constraints)
}

/// Comparison of `tr(f^{∘p})` with `tr(f)^{∘p}` on `kG`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPowerTransferReport {
    pub transfer: LinearEndo,
    pub transfer_is_derivation: bool,
    pub transfer_of_power: LinearEndo,
    pub power_of_transfer: LinearEndo,
    /// `tr(f)^{∘p} - tr(f^{∘p})`
    pub difference: LinearEndo,
    /// Whether the difference is an inner derivation of `kG`.
    pub difference_inner: InnerSolveOutcome,
    /// True when the difference vanishes in `HH¹(kG)`, i.e. is inner.
    pub commutes: bool,
}

pub fn ppower_transfer_discrepancy(
    setup: &GroupBimoduleSetup,
    f: &LinearEndo,
) -> Result<PPowerTransferReport> {
    require_derivation(&setup.sub, f)?;
    let p = setup.sub.prime().value();
    let transfer = transfer_map(setup, f)?;
    let transfer_of_power = transfer_map(setup, &f.power(p))?;
    let power_of_transfer = transfer.power(p);
    let difference = power_of_transfer.sub(&transfer_of_power)?;
    let difference_inner = inner_witness(&setup.big, &difference)?;
    Ok(PPowerTransferReport {
        transfer_is_derivation: is_derivation(&setup.big, &transfer)?,
        commutes: difference_inner.is_solvable(),
        transfer,
        transfer_of_power,
        power_of_transfer,
        difference,
        difference_inner,
    })
}

/// `Id ⊗ D` on `M_m(A)`: `E_st ⊗ e_i ↦ E_st ⊗ D(e_i)`.
pub fn morita_extension(a: &Algebra, m: usize, d: &LinearEndo) -> Result<LinearEndo> {
    check_endo(a, d)?;
    let n = a.dim();
    let big_dim = m * m * n;
    if big_dim > crate::algebra::MAX_DIM {
        return Err(Error::DimensionCap {
            dim: big_dim,
            cap: crate::algebra::MAX_DIM,
        });
    }
    let mut images = Vec::with_capacity(big_dim);
    for block in 0..m * m {
        for i in 0..n {
            let mut v = vec![0; big_dim];
            v[block * n..(block + 1) * n].copy_from_slice(&d.image_of_basis(i));
            images.push(v);
        }
    }
    LinearEndo::from_images(a.prime(), &images)
}

/// Image of a class of `A` in `HH¹(M_m(A))`.
pub fn morita_induced_class_map(a: &Algebra, m: usize, x: &HH1Class) -> Result<HH1Class> {
    let b = Algebra::matrix_algebra(a, m)?;
    crate::hochschild::class_of(&b, &morita_extension(a, m, x.representative())?)
}

/// Desk-scale comparison of `HH¹(A)` and `HH¹(M_m(A))` under `Id ⊗ -`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoritaCheck {
    pub source_dimension: usize,
    pub target_dimension: usize,
    pub source_classes: Vec<HH1Class>,
    pub image_classes: Vec<HH1Class>,
    pub injective: bool,
    /// Per basis class: `morita([p] x) == [p] morita(x)`.
    pub ppower_commutes: Vec<bool>,
    /// Per ordered pair of basis classes: the bracket is preserved.
    pub bracket_commutes: Vec<((usize, usize), bool)>,
}

impl MoritaCheck {
    pub fn all_commute(&self) -> bool {
        self.ppower_commutes.iter().all(|&b| b) && self.bracket_commutes.iter().all(|&(_, b)| b)
    }
}

pub fn morita_check(a: &Algebra, m: usize) -> Result<MoritaCheck> {
    let b = Algebra::matrix_algebra(a, m)?;
    let ha = FirstCohomology::compute(a);
    let hb = FirstCohomology::compute(&b);
    let extend =
        |d: &LinearEndo| -> Result<HH1Class> { hb.class_of(&b, &morita_extension(a, m, d)?) };

    let source_classes = ha.classes().to_vec();
    let image_classes = source_classes
        .iter()
        .map(|x| extend(x.representative()))
        .collect::<Result<Vec<_>>>()?;
    let span = Subspace::spanned_by(
        a.prime(),
        b.dim() * b.dim(),
        &image_classes
            .iter()
            .map(|x| x.representative().flat().to_vec())
            .collect::<Vec<_>>(),
    )?;
    let injective = span.dimension() == source_classes.len();

    let p = a.prime().value();
    let ppower_commutes = source_classes
        .iter()
        .zip(&image_classes)
        .map(|(x, y)| {
            let lhs = extend(
                &ha.class_of(a, &x.representative().power(p))?
                    .representative()
                    .clone(),
            )?;
            let rhs = hb.class_of(&b, &y.representative().power(p))?;
            Ok(lhs == rhs)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut bracket_commutes = Vec::new();
    for (i, x) in source_classes.iter().enumerate() {
        for (j, y) in source_classes.iter().enumerate() {
            let br = crate::hochschild::bracket(x.representative(), y.representative())?;
            let lhs = extend(ha.class_of(a, &br)?.representative())?;
            let br_img = crate::hochschild::bracket(
                image_classes[i].representative(),
                image_classes[j].representative(),
            )?;
            let rhs = hb.class_of(&b, &br_img)?;
            bracket_commutes.push(((i, j), lhs == rhs));
        }
    }
    Ok(MoritaCheck {
        source_dimension: ha.hh1_dimension(),
        target_dimension: hb.hh1_dimension(),
        source_classes,
        image_classes,
        injective,
        ppower_commutes,
        bracket_commutes,
    })
}
