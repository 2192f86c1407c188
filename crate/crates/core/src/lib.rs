//! Harmonic analysis on bounded Vilenkin groups.
//!
//! The crate models the group `G_m` for a bounded radix sequence `m`,
//! truncated at a finite level `N`, together with
//!
//! - the Vilenkin character system and a fast mixed-radix (Chrestenson)
//!   transform with a quadratic-time oracle ([`transform`]),
//! - Cesàro numbers `A_n^α` and the partial sums, Fejér means and Cesàro
//!   means of any order above −1, including negative orders ([`cesaro`]),
//! - Dirichlet, Fejér and Cesàro tail kernels with probes of their
//!   estimates ([`kernel`]),
//! - L^p norms, exact moduli of continuity and the approximation experiment
//!   for `σ_n^{−α}` ([`approx`]).
//!
//! Functions are stored on the grid of `I_N` cosets; see [`group`] for the
//! layout.

pub mod approx;
pub mod cesaro;
pub mod cli;
pub mod error;
pub mod group;
pub mod io;
pub mod kernel;
pub mod selftest;
pub mod transform;

pub use approx::{
    approximation_error, convergence_table, gen_indicator, gen_lacunary, gen_random, lp_norm,
    modulus, theorem_bound, ConvergenceRow, Exponent, FunctionSpec, ModulusProfile, NPolicy,
};
pub use cesaro::{
    asymptotic_ratio, cesaro_mean, cesaro_numbers, check_identity_diff, check_identity_sum,
    fejer_mean, partial_sum, CesaroTable,
};
pub use error::{Error, Result};
pub use group::{parse_radices, GroupPoint, MixedRadixIndex, RadixStructure};
pub use kernel::{
    convolve, dirichlet_kernel, fejer_kernel, lemma1_ratio, shell_profile, tail_kernel,
    zero_identity_i12, zero_identity_ii2, KernelProfile, ShellStats,
};
pub use transform::{
    character, forward, forward_naive, inverse, rademacher, vilenkin_char, Spectrum, StepFunction,
    TransformPlan, ORACLE_CAP,
};

pub use num_complex::Complex64;
