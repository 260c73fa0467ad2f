//! Exact computations of `H^2(G, A)` for finite abelian groups and the classification
//! of `G`-graded twisted algebras, associative and (1,2)-symmetric.
//!
//! * [`group`]: `Z_{n_1} x ... x Z_{n_k}` and its elements.
//! * [`coeff`]: coefficient groups `μ_N`, `C*`, `R*`.
//! * [`cohomology`]: bar complex, tensor resolution and closed form of `H^2`.
//! * [`algebra`]: structure constant tables, `q`/`r`, rescaling, standard bases.
//! * [`classify`]: counting, enumeration and isomorphism tests.
//! * [`cli`]: the `twistalg` command line.

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod coeff;
pub mod cohomology;
pub mod error;
pub mod group;

pub use error::{Error, Result};
