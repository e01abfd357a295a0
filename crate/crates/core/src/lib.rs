//! Summation methods for complex sequences: r-binomial (Euler) averages,
//! convolution transforms and W-weighted averages, each usable in exact
//! rational arithmetic or in `f64`.
//!
//! The arithmetic mode is a type parameter. Everything generic over
//! [`Real`] runs unchanged with [`Rational`] or `f64`, and the two can't be mixed.
//!
//! ```
//! use eulersum::{binomial_sweep, parse_sequence, Rational};
//!
//! let x = parse_sequence::<Rational>("conv(const:1;finite:1/3,1/3,1/3)").unwrap();
//! let sweep = binomial_sweep(&x, 4, "1/2".parse().unwrap()).unwrap();
//! assert_eq!(sweep[4].re.to_string(), "7/8");
//! ```

pub mod binomial;
pub mod cli;
pub mod convolution;
pub mod error;
pub mod identity;
pub mod lang;
pub mod limit;
pub mod numeric;
pub mod sequence;
pub mod weighted;

pub use binomial::{
    binomial_average, binomial_sweep, check_k_step_expansion, check_one_step_recurrence,
    check_sup_bound, sweep_values, weights_row, BinomialRow, RecurrenceChecker, SupBoundReport,
};
pub use convolution::{convolve_at, WeightProfile};
pub use error::{Error, Result};
pub use identity::{
    alternating_sum, chu_vandermonde_check, chu_vandermonde_sweep, closed_form,
    find_star_violation, verify_ell_one_slice, verify_star_star, IdentityReport,
};
pub use lang::{parse_profile, parse_sequence, parse_weight};
pub use limit::{
    estimate_limit, run_main_theorem_experiment, run_r_independence_experiment,
    run_shift_invariance_experiment, run_weighted_composition_experiment, ExperimentConfig,
    LimitEstimate, Verdict,
};
pub use numeric::{
    binomial_coefficient, generalized_binomial, parse_complex, parse_rational, real,
    render_complex, ComplexScalar, Mode, Rational, Real,
};
pub use sequence::SequenceSpec;
pub use weighted::{
    equivalence_residual, lambda_profile_of, power_boundary_term, ratio_power_check,
    weighted_average, weighted_prefix, WeightFunction,
};
