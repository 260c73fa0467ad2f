//! The inhomogeneous bar complex `C^n(G, Z_N)` with trivial action.

use super::matrix::IntMatrix;
use super::shape::AbelianGroupShape;
use super::smith::PreparedComplex;
use crate::error::{guard, Error, Result};
use crate::group::{Cayley, GroupSpec};

/// Largest `|G|^3` (row count of the degree-2 boundary) accepted by [`h2_bruteforce`].
pub const BRUTEFORCE_ROW_LIMIT: u128 = 24 * 24 * 24;
const BOUNDARY_CELL_LIMIT: u128 = 1 << 28;

fn tuple_index(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

fn decode(order: usize, mut index: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = index % order;
        index /= order;
    }
}

/// Matrix of `∂^n : C^n -> C^{n+1}` in the delta-function bases indexed by
/// `enumerate(G)^n` (lexicographic tuples). Columns are n-tuples, rows (n+1)-tuples:
///
/// `∂f(g_1..g_{n+1}) = f(g_2..g_{n+1}) + Σ_i (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g_1..g_n)`.
pub fn boundary_matrix(group: &GroupSpec, degree: usize) -> Result<IntMatrix> {
    if !(1..=3).contains(&degree) {
        return Err(Error::Unsupported(format!("boundary maps are provided for degrees 1..=3, not {degree}")));
    }
    let order = group.order();
    let cols = order.pow(degree as u32);
    let rows = cols * order;
    guard("boundary matrix cells", rows as u128 * cols as u128, BOUNDARY_CELL_LIMIT)?;
    let cayley = group.cayley();
    Ok(boundary_from_cayley(&cayley, degree))
}

fn boundary_from_cayley(cayley: &Cayley, degree: usize) -> IntMatrix {
    let order = cayley.order();
    let cols = order.pow(degree as u32);
    let rows = cols * order;
    let mut m = IntMatrix::zeros(rows, cols);
    let mut tuple = vec![0usize; degree + 1];
    let mut face = vec![0usize; degree];
    for row in 0..rows {
        decode(order, row, &mut tuple);
        m[(row, tuple_index(order, &tuple[1..]))] += 1;
        for i in 0..degree {
            face.clear();
            face.extend_from_slice(&tuple[..i]);
            face.push(cayley.mul(tuple[i], tuple[i + 1]));
            face.extend_from_slice(&tuple[i + 2..]);
            let sign = if i % 2 == 0 { -1 } else { 1 };
            m[(row, tuple_index(order, &face))] += sign;
        }
        let sign = if degree % 2 == 0 { -1 } else { 1 };
        m[(row, tuple_index(order, &tuple[..degree]))] += sign;
    }
    m
}

/// `H^2(G, μ_N)` as `ker(∂^2 mod N) / im(∂^1 mod N)` on unnormalized cochains.
pub fn h2_bruteforce(group: &GroupSpec, n: u64) -> Result<AbelianGroupShape> {
    Ok(h2_bruteforce_many(group, &[n])?.remove(0))
}

/// [`h2_bruteforce`] for several `N` at once, sharing the integer elimination of `∂^2`.
pub fn h2_bruteforce_many(group: &GroupSpec, ns: &[u64]) -> Result<Vec<AbelianGroupShape>> {
    if ns.contains(&0) {
        return Err(Error::Structural("μ_N needs N >= 1".into()));
    }
    let order = group.order() as u128;
    guard("brute-force H^2 (|G|^3 cochain rows)", order.pow(3), BRUTEFORCE_ROW_LIMIT)?;
    let cayley = group.cayley();
    let d1 = boundary_from_cayley(&cayley, 1);
    let d2 = boundary_from_cayley(&cayley, 2);
    let complex = PreparedComplex::new(&d1, &d2);
    Ok(ns.iter().map(|&n| complex.homology_mod(n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: &[u64]) -> GroupSpec {
        GroupSpec::new(m.to_vec()).unwrap()
    }

    #[test]
    fn degree_one_on_z2() {
        // ∂ρ(g,h) = ρ(h) - ρ(gh) + ρ(g), evaluated by hand on all four pairs
        let m = boundary_matrix(&g(&[2]), 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 2));
        // columns: δ_0, δ_1 ; rows (0,0),(0,1),(1,0),(1,1)
        // row (0,1): ρ(1) - ρ(1) + ρ(0) -> δ_0 coefficient 1, δ_1 coefficient 0
        let hand = IntMatrix::from_rows(vec![vec![1, 0], vec![1, 0], vec![1, 0], vec![-1, 2]]);
        assert_eq!(m, hand);
        assert_eq!(m[(3, 1)], 2);
        assert!(m.entries().iter().all(|x| (-2..=2).contains(x)));
    }

    #[test]
    fn complex_property() {
        for moduli in [vec![2, 2], vec![3], vec![4], vec![2, 3]] {
            let grp = g(&moduli);
            let d1 = boundary_matrix(&grp, 1).unwrap();
            let d2 = boundary_matrix(&grp, 2).unwrap();
            assert!(d2.mul(&d1).is_zero());
            if grp.order() <= 4 {
                let d3 = boundary_matrix(&grp, 3).unwrap();
                assert!(d3.mul(&d2).is_zero());
            }
        }
        assert!(boundary_matrix(&g(&[2]), 4).is_err());
        assert!(boundary_matrix(&g(&[2]), 0).is_err());
    }

    #[test]
    fn linearity_zero_cochain() {
        let d = boundary_matrix(&g(&[3]), 2).unwrap();
        assert!(d.apply(&vec![0; d.cols()]).iter().all(|x| x == &0.into()));
    }

    #[test]
    fn bruteforce_small_cases() {
        assert!(h2_bruteforce(&g(&[2]), 2).unwrap().cyclic_orders() == [2]);
        assert_eq!(h2_bruteforce(&g(&[2, 2]), 2).unwrap().cyclic_orders(), &[2, 2, 2]);
        for n in [1, 2, 5, 12] {
            assert!(h2_bruteforce(&g(&[1]), n).unwrap().is_trivial());
        }
        assert!(matches!(h2_bruteforce(&g(&[5, 5]), 2), Err(Error::Resource { .. })));
    }
}
