//! `H^2(G, A)` for finite abelian `G` with trivial action, computed three ways:
//! the bar complex, the tensor-product resolution, and the closed form
//! `⊕_i A/n_iA ⊕ ⊕_{i<j} Ann_A(n_i) ∩ Ann_A(n_j)`.

mod bar;
mod matrix;
mod resolution;
mod shape;
mod smith;

pub use bar::{boundary_matrix, h2_bruteforce, h2_bruteforce_many, BRUTEFORCE_ROW_LIMIT};
pub use matrix::{BigMatrix, IntMatrix, Matrix};
pub use resolution::{h2_from_resolution, resolution_ranks, tensor_resolution_maps};
pub use shape::AbelianGroupShape;
pub use smith::{homology_mod, PreparedComplex, invariant_factors, smith_normal_form, smith_normal_form_big, solve_mod, SmithForm, Transforms};

use crate::coeff::CoeffDescriptor;
use crate::group::GroupSpec;

pub fn h2_closed_form(group: &GroupSpec, coeff: &CoeffDescriptor) -> AbelianGroupShape {
    let moduli = group.moduli();
    let quotients = moduli.iter().map(|&n| coeff.quot_order(n));
    let pairs = moduli
        .iter()
        .enumerate()
        .flat_map(|(i, &ni)| moduli[i + 1..].iter().map(move |&nj| coeff.ann_meet_order(ni, nj)));
    AbelianGroupShape::from_cyclic_orders(quotients.chain(pairs).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: &[u64]) -> GroupSpec {
        GroupSpec::new(m.to_vec()).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let cstar = CoeffDescriptor::CStar;
        let s = h2_closed_form(&g(&[6, 4, 9]), &cstar);
        assert_eq!(s, AbelianGroupShape::from_cyclic_orders([2, 3, 1]));
        assert_eq!(h2_closed_form(&g(&[2, 2]), &CoeffDescriptor::RStar).cyclic_orders(), &[2, 2, 2]);
        for n in 1..20 {
            assert!(h2_closed_form(&g(&[n]), &cstar).is_trivial());
        }
    }

    #[test]
    fn presentation_independence() {
        for coeff in [CoeffDescriptor::CStar, CoeffDescriptor::RStar, CoeffDescriptor::MuN(12), CoeffDescriptor::MuN(4)] {
            assert_eq!(h2_closed_form(&g(&[6]), &coeff), h2_closed_form(&g(&[2, 3]), &coeff));
        }
    }
}
