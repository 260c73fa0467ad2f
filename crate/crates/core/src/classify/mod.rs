//! Classification of graded twisted algebras: associative classes over `C` and `R`,
//! and (1,2)-symmetric classes over a finite `μ_N`.

mod assoc;
mod symmetric;

pub use assoc::{count_assoc_classes, enumerate_assoc_representatives, iso_test_associative, q_invariant, Field};
pub use symmetric::{
    brute_force_sym_classes, count_sym_classes, enumerate_sym_classes, free_slots, iso_test_symmetric,
    reconstruct_from_params, sym_params, Slot, SymClassParams, SymParamsIter, BRUTE_FORCE_TABLE_LIMIT,
};
