//! The small cochain complex obtained from the tensor product of the periodic
//! resolutions of the cyclic factors.
//!
//! In degrees 1, 2, 3 the complex is `A^{c_k} -> A^{b_k} -> A^{a_k}` with
//! `c_k = k`, `b_k = k(k+1)/2` and `a_k = a_{k-1} + b_{k-1} + c_{k-1} + 1`. The maps are
//! built by induction on the number of factors:
//!
//! `D1_k((x), y) = (D1_{k-1}(x), 0, ..., 0, n_k y)`
//! `D2_k((x), (y), z) = (D2_{k-1}(x), D1_{k-1}(y), -n_k y_1, ..., -n_k y_{k-1}, 0)`

use super::matrix::IntMatrix;
use super::shape::AbelianGroupShape;
use super::smith::homology_mod;
use crate::error::{Error, Result};
use crate::group::GroupSpec;

/// `(a_k, b_k, c_k)`: ranks of the free modules in degrees 3, 2 and 1.
pub fn resolution_ranks(k: usize) -> (usize, usize, usize) {
    assert!(k >= 1);
    let (mut a, mut b, mut c) = (1, 1, 1);
    for _ in 2..=k {
        let next_a = a + b + c + 1;
        let next_b = b + c + 1;
        let next_c = c + 1;
        (a, b, c) = (next_a, next_b, next_c);
    }
    (a, b, c)
}

fn modulus_i64(n: u64) -> i64 {
    i64::try_from(n).expect("modulus fits in i64")
}

/// `(D1_k, D2_k)` as integer matrices of shapes `b_k x k` and `a_k x b_k`.
pub fn tensor_resolution_maps(group: &GroupSpec) -> (IntMatrix, IntMatrix) {
    let moduli = group.moduli();
    let mut d1 = IntMatrix::from_rows(vec![vec![modulus_i64(moduli[0])]]);
    let mut d2 = IntMatrix::zeros(1, 1);
    for (step, &nk) in moduli.iter().enumerate().skip(1) {
        let k = step + 1;
        let (a_prev, b_prev, c_prev) = resolution_ranks(k - 1);
        let (a, b, c) = resolution_ranks(k);
        let nk = modulus_i64(nk);

        let mut next1 = IntMatrix::zeros(b, c);
        for i in 0..b_prev {
            for j in 0..c_prev {
                next1[(i, j)] = d1[(i, j)];
            }
        }
        next1[(b - 1, c - 1)] = nk;

        let mut next2 = IntMatrix::zeros(a, b);
        for i in 0..a_prev {
            for j in 0..b_prev {
                next2[(i, j)] = d2[(i, j)];
            }
        }
        for i in 0..b_prev {
            for j in 0..c_prev {
                next2[(a_prev + i, b_prev + j)] = d1[(i, j)];
            }
        }
        for i in 0..c_prev {
            next2[(a_prev + b_prev + i, b_prev + i)] = -nk;
        }

        d1 = next1;
        d2 = next2;
    }
    (d1, d2)
}

/// `H^2(G, μ_N)` as `ker(D2_k mod N) / im(D1_k mod N)`.
pub fn h2_from_resolution(group: &GroupSpec, n: u64) -> Result<AbelianGroupShape> {
    if n == 0 {
        return Err(Error::Structural("μ_N needs N >= 1".into()));
    }
    let (d1, d2) = tensor_resolution_maps(group);
    Ok(homology_mod(&d1, &d2, n))
}
