//! Exhaustive enumerations used as independent checks. Nothing here calls
//! into the linear-algebra kernel.

use hochschild_core::Algebra;

/// Every vector of `F_p^n` in lexicographic order.
pub fn all_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn mat_vec(p: u32, rows: &[Vec<u32>], x: &[u32]) -> Vec<u32> {
    rows.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<u32>() % p)
        .collect()
}

/// All solutions of `A x = b`, by trying every `x`.
pub fn solutions(p: u32, rows: &[Vec<u32>], cols: usize, b: &[u32]) -> Vec<Vec<u32>> {
    all_vectors(p, cols)
        .into_iter()
        .filter(|x| mat_vec(p, rows, x) == b)
        .collect()
}

/// All vectors of the span of `basis`, sorted.
pub fn span(p: u32, n: usize, basis: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = all_vectors(p, basis.len())
        .into_iter()
        .map(|coeffs| {
            let mut v = vec![0; n];
            for (c, b) in coeffs.iter().zip(basis) {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = (*vi + c * bi) % p;
                }
            }
            v
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Every linear map (flattened row-major, `f[k * n + j]` is the `e_k`
/// coefficient of `f(e_j)`) satisfying the Leibniz rule on all basis pairs,
/// read straight off the structure constants.
pub fn derivations(a: &Algebra) -> Vec<Vec<u32>> {
    let (p, n) = (a.prime().value(), a.dim());
    let c = |i: usize, j: usize, k: usize| a.product_of_basis(i, j)[k];
    let mut found: Vec<Vec<u32>> = all_vectors(p, n * n)
        .into_iter()
        .filter(|f| {
            let img = |j: usize, k: usize| f[k * n + j];
            (0..n).all(|i| {
                (0..n).all(|j| {
                    (0..n).all(|k| {
                        // f(e_i e_j) - e_i f(e_j) - f(e_i) e_j, coordinate k
                        let mut acc = 0u32;
                        for l in 0..n {
                            acc += c(i, j, l) * img(l, k);
                            acc += (p - 1) * ((img(j, l) * c(i, l, k)) % p);
                            acc += (p - 1) * ((img(i, l) * c(l, j, k)) % p);
                        }
                        acc % p == 0
                    })
                })
            })
        })
        .collect();
    found.sort();
    found
}

/// Checks `D_0 = Id` and `D_n(e_i e_j) = Σ_{a+b=n} D_a(e_i) D_b(e_j)` for
/// every degree, with each term given as row-major flattened matrices.
pub fn is_higher_derivation(a: &Algebra, terms: &[Vec<u32>]) -> bool {
    let (p, n) = (a.prime().value(), a.dim());
    let image = |d: &[u32], j: usize| -> Vec<u32> { (0..n).map(|k| d[k * n + j]).collect() };
    let product = |x: &[u32], y: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; n];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                if xi * yj % p == 0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = (*o + xi * yj % p * a.product_of_basis(i, j)[k]) % p;
                }
            }
        }
        out
    };
    let identity = (0..n * n)
        .map(|ix| u32::from(ix / n == ix % n))
        .collect::<Vec<_>>();
    if terms.first() != Some(&identity) {
        return false;
    }
    (0..terms.len()).all(|deg| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = terms[deg].chunks(n).map(|row| {
                    (0..n)
                        .map(|l| a.product_of_basis(i, j)[l] * row[l])
                        .sum::<u32>()
                        % p
                });
                let mut rhs = vec![0u32; n];
                for s in 0..=deg {
                    let prod = product(&image(&terms[s], i), &image(&terms[deg - s], j));
                    for (r, v) in rhs.iter_mut().zip(prod) {
                        *r = (*r + v) % p;
                    }
                }
                lhs.eq(rhs)
            })
        })
    })
}
