//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

pub mod oracle;

use hochschild_core::builtin;
use hochschild_core::integrability::{hd_compose, leading_index};
use hochschild_core::{
    Algebra, AlgebraElement, Prime, TruncatedElement, TruncatedHigherDerivation,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

/// The algebras the restricted-structure checks run on.
pub fn named_algebras() -> Vec<(&'static str, Algebra)> {
    vec![
        ("F3C3", builtin::cyclic_group_algebra(3, prime(3)).unwrap()),
        ("F2[x]/x^4", Algebra::truncated_poly(prime(2), 4).unwrap()),
        ("F3[x]/x^3", Algebra::truncated_poly(prime(3), 3).unwrap()),
        ("F3S3", builtin::s3_group_algebra(prime(3)).unwrap()),
    ]
}

pub fn random_element<R: Rng>(rng: &mut R, a: &Algebra) -> AlgebraElement {
    let p = a.prime().value();
    a.element((0..a.dim()).map(|_| rng.gen_range(0..p)).collect())
        .unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HdKind {
    /// `x ↦ x + Σ_{i≥r} t^i x q_i` on a truncated polynomial ring.
    Substitution,
    /// Conjugation by a unipotent `1 + Σ_{i≥r} t^i c_i` on 2×2 matrices.
    Inner,
    /// Product of two samples of the same kind on the same algebra.
    Composite,
}

#[derive(Clone, Debug)]
pub struct HdSample {
    pub kind: HdKind,
    pub algebra: Algebra,
    pub hd: TruncatedHigherDerivation,
    pub r: usize,
}

fn polynomial_ring<R: Rng>(rng: &mut R, p: Prime) -> Algebra {
    Algebra::truncated_poly(p, rng.gen_range(3..=4)).unwrap()
}

fn matrices(p: Prime) -> Algebra {
    let field = Algebra::truncated_poly(p, 1).unwrap();
    Algebra::matrix_algebra(&field, 2).unwrap()
}

fn substitution<R: Rng>(
    rng: &mut R,
    a: &Algebra,
    r: usize,
    order: usize,
) -> TruncatedHigherDerivation {
    let x = a.basis_element(1);
    loop {
        let mut coeffs = vec![a.zero(); order + 1];
        coeffs[0] = x.clone();
        for c in coeffs.iter_mut().skip(r) {
            *c = a.multiply(&x, &random_element(rng, a)).unwrap();
        }
        if coeffs[r].is_zero() {
            continue;
        }
        let y = TruncatedElement::new(a, coeffs).unwrap();
        let mut images = vec![TruncatedElement::constant(a, order, &a.unit())];
        for k in 1..a.dim() {
            let next = images[k - 1].mul(a, &y).unwrap();
            images.push(next);
        }
        return TruncatedHigherDerivation::from_basis_images(a, &images).unwrap();
    }
}

fn inner<R: Rng>(rng: &mut R, a: &Algebra, r: usize, order: usize) -> TruncatedHigherDerivation {
    loop {
        let mut coeffs = vec![a.zero(); order + 1];
        coeffs[0] = a.unit();
        for c in coeffs.iter_mut().skip(r) {
            *c = random_element(rng, a);
        }
        let c = TruncatedElement::new(a, coeffs).unwrap();
        let hd = TruncatedHigherDerivation::conjugation(a, &c).unwrap();
        if leading_index(&hd) == Some(r) {
            return hd;
        }
    }
}

/// A higher derivation with leading index exactly `r`, `p ∈ {2, 3}`,
/// on an algebra of dimension at most 4.
pub fn random_hd<R: Rng>(rng: &mut R, p: Prime, r: usize, order: usize) -> HdSample {
    let kind = match rng.gen_range(0..3) {
        0 => HdKind::Substitution,
        1 => HdKind::Inner,
        _ => HdKind::Composite,
    };
    let base = if rng.gen_bool(0.5) {
        HdKind::Substitution
    } else {
        HdKind::Inner
    };
    let algebra = match (kind, base) {
        (HdKind::Substitution, _) | (HdKind::Composite, HdKind::Substitution) => {
            polynomial_ring(rng, p)
        }
        _ => matrices(p),
    };
    let draw = |rng: &mut R, k: HdKind| match k {
        HdKind::Substitution => substitution(rng, &algebra, r, order),
        _ => inner(rng, &algebra, r, order),
    };
    let hd = match kind {
        HdKind::Composite => loop {
            let u = draw(rng, base);
            let v = draw(rng, base);
            let w = hd_compose(&u, &v).unwrap();
            if leading_index(&w) == Some(r) {
                break w;
            }
        },
        k => draw(rng, k),
    };
    HdSample {
        kind,
        algebra,
        hd,
        r,
    }
}

/// Samples covering `r ∈ {1, 2}` and `p ∈ {2, 3}` with order at least `r·p`.
pub fn hd_samples(seed: u64, count: usize) -> Vec<HdSample> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let p = prime(if i % 2 == 0 { 2 } else { 3 });
            let r = 1 + (i / 2) % 2;
            let order = r * p.value() as usize + rng.gen_range(0..=1);
            random_hd(&mut rng, p, r, order)
        })
        .collect()
}

/// A further higher derivation on the algebra of an existing sample, of the
/// same order. Commutative samples are truncated polynomial rings.
pub fn random_hd_on<R: Rng>(
    rng: &mut R,
    a: &Algebra,
    r: usize,
    order: usize,
) -> TruncatedHigherDerivation {
    if a.is_commutative() {
        substitution(rng, a, r, order)
    } else {
        inner(rng, a, r, order)
    }
}
