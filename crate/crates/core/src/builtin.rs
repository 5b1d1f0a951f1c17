//! Built-in groups and the C_3 derivations used in the S_3 example.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{FpMatrix, Prime};
use crate::hochschild::LinearEndo;

/// Largest cyclic group shipped as a built-in.
pub const MAX_CYCLIC_ORDER: usize = 12;

/// Labels of S_3 in basis order.
pub const S3_LABELS: [&str; 6] = ["1", "(123)", "(132)", "(12)", "(13)", "(23)"];

/// Cayley table of S_3, composing permutations right to left
/// (`(gh)(x) = g(h(x))`), so `(12)(123) = (23)` and `(123)(12) = (13)`.
pub const S3_CAYLEY: [[usize; 6]; 6] = [
    [0, 1, 2, 3, 4, 5],
    [1, 2, 0, 4, 5, 3],
    [2, 0, 1, 5, 3, 4],
    [3, 5, 4, 0, 2, 1],
    [4, 3, 5, 1, 0, 2],
    [5, 4, 3, 2, 1, 0],
];

pub fn cyclic_cayley(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect()
}

pub fn cyclic_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect()
}

/// `F_p C_n` on the basis `1, g, …, g^{n-1}`.
pub fn cyclic_group_algebra(n: usize, p: Prime) -> Result<Algebra> {
    if n == 0 || n > MAX_CYCLIC_ORDER {
        return Err(Error::InvalidParameter(format!(
            "built-in cyclic groups have order 1..={MAX_CYCLIC_ORDER}, got {n}"
        )));
    }
    Algebra::group_algebra(cyclic_cayley(n), cyclic_labels(n), p)
}

pub fn s3_group_algebra(p: Prime) -> Result<Algebra> {
    Algebra::group_algebra(
        S3_CAYLEY.iter().map(|r| r.to_vec()).collect(),
        S3_LABELS.iter().map(|s| s.to_string()).collect(),
        p,
    )
}

/// `F_p H` for `H = {1, (123), (132)} ≤ S_3`.
pub fn c3_in_s3_group_algebra(p: Prime) -> Result<Algebra> {
    Algebra::group_algebra(
        cyclic_cayley(3),
        S3_LABELS[..3].iter().map(|s| s.to_string()).collect(),
        p,
    )
}

/// The derivation `f_k` of `F_p C_3` with `f_k(g) = g^k`, for `k ∈ {0, 1, 2}`.
///
/// Leibniz forces `f_k(1) = 0` and `f_k(g^2) = 2 g^{k+1}`.
pub fn c3_derivation(k: usize, p: Prime) -> Result<LinearEndo> {
    if k > 2 {
        return Err(Error::InvalidParameter(format!(
            "no built-in derivation f{k}"
        )));
    }
    let mut m = FpMatrix::zeros(p, 3, 3);
    m.set(k, 1, 1);
    m.set((k + 1) % 3, 2, 2);
    Ok(LinearEndo::new(m))
}
