//! Exact n-generalized commutator calculus over finite-rank rings.
//!
//! Rings are free modules over `Z` or `Z/m` with a multiplication table of
//! structure constants. Additive subgroups are kept in a canonical form, which
//! makes subgroup equality a comparison of basis rows, and every closure
//! (ideals, subrings, generalized Lie ideals) is a saturation to a fixed point.

pub mod builtin;
pub mod commutator;
pub mod error;
pub mod int;
pub mod lattice;
pub mod ring;
pub mod subring;
pub mod text;
pub mod verifier;

pub use commutator::{
    bracket_n, bracket_power, bracket_subgroup, herstein_k, ideal_generated, is_ideal, is_lie_ideal,
    is_n_gen_lie_ideal, n_gen_lie_closure, power_subgroup, power_values_subgroup, product_subgroup,
    squares_subgroup, BracketSpec, Side,
};
pub use error::{Error, Result};
pub use int::Int;
pub use lattice::{canonical_form, saturate, Subgroup};
pub use ring::{make_ring, Budget, Coords, Modulus, Ring, RingElement, RingPresentation};
pub use subring::{center, idempotents, subring_generated, Subring};
