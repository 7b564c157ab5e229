//! Exact integer and residue-ring linear algebra.

mod arith;
mod gf2;
mod matrix;
mod modular;
mod snf;

pub use arith::{composition_length, gcd, mod_inverse};
pub use gf2::{rank_gf2, solve_gf2};
pub use matrix::Matrix;
pub use modular::{
    enumerate_solutions, invariant_divisors_mod, solve_mod, solve_mod_promoting, ModInvariants, SolutionSpace,
    Solutions,
};
pub use snf::{integer_snf, integer_snf_promoting, SmithDecomposition};
