//! Finite-N limit estimation for average sweeps, and the composition experiments
//! built on it.
//!
//! A [`LimitEstimate`] is a heuristic: the sweep counts as converged when its
//! last `window` entries all lie within `tolerance` of their mean. Reports
//! therefore say "consistent with" or "inconsistent with", never "proved".

use std::fmt;

use num_complex::Complex;
use num_traits::Zero;

use crate::binomial::{binomial_sweep, check_r, sweep_values};
use crate::convolution::WeightProfile;
use crate::error::{Error, Result};
use crate::numeric::{modulus, render_complex, Real};
use crate::sequence::SequenceSpec;
use crate::weighted::{weighted_prefix, WeightFunction};

pub const DEFAULT_WINDOW: usize = 10;
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct LimitEstimate<R: Real> {
    /// Mean of the last `window` sweep entries.
    pub value: Complex<R>,
    pub converged: bool,
    /// Largest index of the sweep, i.e. `N_max`.
    pub n_used: usize,
    pub window: usize,
    pub max_window_deviation: f64,
    pub tolerance: f64,
}

impl<R: Real> fmt::Display for LimitEstimate<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}, max deviation {:.3e} over last {} of N <= {}, tolerance {:.1e})",
            render_complex(&self.value),
            if self.converged { "converged" } else { "not converged" },
            self.max_window_deviation,
            self.window,
            self.n_used,
            self.tolerance
        )
    }
}

pub fn estimate_limit<R: Real>(
    sweep: &[Complex<R>],
    tolerance: f64,
    window: usize,
) -> Result<LimitEstimate<R>> {
    if window == 0 {
        return Err(Error::invalid("window must be positive"));
    }
    if window > sweep.len() {
        return Err(Error::invalid(format!(
            "window {window} exceeds sweep length {}",
            sweep.len()
        )));
    }
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(Error::invalid("tolerance must be non-negative"));
    }
    let tail = &sweep[sweep.len() - window..];
    let sum = tail.iter().cloned().fold(Complex::zero(), |a, b| a + b);
    let value = sum / R::from_usize(window);
    let max_window_deviation = tail
        .iter()
        .map(|v| modulus(&(v.clone() - value.clone())))
        .fold(0.0, f64::max);
    Ok(LimitEstimate {
        value,
        converged: max_window_deviation <= tolerance,
        n_used: sweep.len() - 1,
        window,
        max_window_deviation,
        tolerance,
    })
}

/// Sweep length and convergence criterion shared by every experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub n_max: usize,
    pub tolerance: f64,
    pub window: usize,
}

impl ExperimentConfig {
    pub fn new(n_max: usize) -> Self {
        ExperimentConfig {
            n_max,
            tolerance: DEFAULT_TOLERANCE,
            window: DEFAULT_WINDOW,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_window(mut self, window: usize) -> Self {
        self.window = window;
        self
    }

    fn estimate<R: Real>(&self, sweep: &[Complex<R>]) -> Result<LimitEstimate<R>> {
        estimate_limit(sweep, self.tolerance, self.window)
    }

    fn converged_base<R: Real>(
        &self,
        x: &SequenceSpec<R>,
        r: R,
    ) -> Result<(Vec<Complex<R>>, LimitEstimate<R>)> {
        let sweep = binomial_sweep(x, self.n_max, r)?;
        let estimate = self.estimate(&sweep)?;
        if !estimate.converged {
            return Err(Error::NonConvergence(format!(
                "binomial averages of {x}: {estimate}"
            )));
        }
        Ok((sweep, estimate))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ConsistentWith,
    InconsistentWith,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::ConsistentWith
        } else {
            Verdict::InconsistentWith
        }
    }

    pub fn is_consistent(self) -> bool {
        self == Verdict::ConsistentWith
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ConsistentWith => "consistent with",
            Verdict::InconsistentWith => "inconsistent with",
        })
    }
}

/// Binomial averages of the convolved sequence versus both limit formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct MainTheoremReport<R: Real> {
    /// Limit `L` of the binomial averages of `x`.
    pub base: LimitEstimate<R>,
    /// Limit of the binomial averages of the convolved sequence.
    pub convolved: LimitEstimate<R>,
    pub convolved_sweep: Vec<Complex<R>>,
    /// `L * sum lambda_k`.
    pub correct_rhs: Complex<R>,
    /// `L * (lambda_0 + sum_{n>=1} lambda_n r^{n-1})`.
    pub incorrect_rhs: Complex<R>,
    pub gap_to_correct: f64,
    pub gap_to_incorrect: f64,
    /// Allowed gap: the tolerance scaled by `1 + |sum lambda_k|`.
    pub gap_tolerance: f64,
    /// Whether the estimate agrees with `L * sum lambda_k`.
    pub verdict: Verdict,
    /// Whether the estimate agrees with the `r`-dependent formula.
    pub incorrect_verdict: Verdict,
}

pub fn run_main_theorem_experiment<R: Real>(
    x: &SequenceSpec<R>,
    weights: &WeightProfile<R>,
    r: R,
    config: ExperimentConfig,
) -> Result<MainTheoremReport<R>> {
    check_r(&r)?;
    let (_, base) = config.converged_base(x, r.clone())?;
    let convolved_seq = x.clone().convolved(weights.clone());
    let convolved_sweep = binomial_sweep(&convolved_seq, config.n_max, r.clone())?;
    let convolved = config.estimate(&convolved_sweep)?;

    let correct_rhs = weights.correct_rhs(&base.value);
    let incorrect_rhs = weights.incorrect_rhs(&r, &base.value)?;
    let gap_to_correct = modulus(&(convolved.value.clone() - correct_rhs.clone()));
    let gap_to_incorrect = modulus(&(convolved.value.clone() - incorrect_rhs.clone()));
    let gap_tolerance = config.tolerance * (1.0 + modulus(&weights.total_sum()));

    Ok(MainTheoremReport {
        verdict: Verdict::from_bool(convolved.converged && gap_to_correct <= gap_tolerance),
        incorrect_verdict: Verdict::from_bool(
            convolved.converged && gap_to_incorrect <= gap_tolerance,
        ),
        base,
        convolved,
        convolved_sweep,
        correct_rhs,
        incorrect_rhs,
        gap_to_correct,
        gap_to_incorrect,
        gap_tolerance,
    })
}

/// Limits of `E_N(T^j x)` for `j = 1..=k` against the limit of `E_N x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftInvarianceReport<R: Real> {
    pub base: LimitEstimate<R>,
    /// `shifted[j - 1]` is the estimate for `T^j x`.
    pub shifted: Vec<LimitEstimate<R>>,
    /// Largest `|limit(T^j x) - limit(x)|`.
    pub max_gap: f64,
    pub verdict: Verdict,
}

pub fn run_shift_invariance_experiment<R: Real>(
    x: &SequenceSpec<R>,
    k: usize,
    r: R,
    config: ExperimentConfig,
) -> Result<ShiftInvarianceReport<R>> {
    let (_, base) = config.converged_base(x, r.clone())?;
    let values = x.prefix(config.n_max)?;
    let mut shifted = Vec::with_capacity(k);
    for j in 1..=k {
        let mut padded = vec![Complex::zero(); j.min(values.len())];
        padded.extend(values.iter().take(values.len().saturating_sub(j)).cloned());
        let sweep = sweep_values(&padded, r.clone())?;
        shifted.push(config.estimate(&sweep)?);
    }
    let max_gap = shifted
        .iter()
        .map(|e| modulus(&(e.value.clone() - base.value.clone())))
        .fold(0.0, f64::max);
    let ok = shifted.iter().all(|e| e.converged) && max_gap <= config.tolerance;
    Ok(ShiftInvarianceReport {
        base,
        shifted,
        max_gap,
        verdict: Verdict::from_bool(ok),
    })
}

/// Limits of the same sequence under two different `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct RIndependenceReport<R: Real> {
    pub at_r: LimitEstimate<R>,
    pub at_r_prime: LimitEstimate<R>,
    pub gap: f64,
    pub verdict: Verdict,
}

/// Requires `0 < r' < r < 1`: a limit at `r` carries over to every smaller `r'`.
pub fn run_r_independence_experiment<R: Real>(
    x: &SequenceSpec<R>,
    r: R,
    r_prime: R,
    config: ExperimentConfig,
) -> Result<RIndependenceReport<R>> {
    check_r(&r)?;
    check_r(&r_prime)?;
    if r_prime >= r {
        return Err(Error::invalid(format!(
            "need r' < r, got r' = {} and r = {}",
            r_prime.render(),
            r.render()
        )));
    }
    let (_, at_r) = config.converged_base(x, r)?;
    let sweep = binomial_sweep(x, config.n_max, r_prime)?;
    let at_r_prime = config.estimate(&sweep)?;
    let gap = modulus(&(at_r.value.clone() - at_r_prime.value.clone()));
    Ok(RIndependenceReport {
        verdict: Verdict::from_bool(at_r_prime.converged && gap <= 2.0 * config.tolerance),
        at_r,
        at_r_prime,
        gap,
    })
}

/// Binomial averages of `y_n = E^W_n x` against the limit of `E_N x`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedCompositionReport<R: Real> {
    pub base: LimitEstimate<R>,
    pub composed: LimitEstimate<R>,
    pub composed_sweep: Vec<Complex<R>>,
    pub gap: f64,
    pub verdict: Verdict,
}

pub fn run_weighted_composition_experiment<R: Real>(
    w: &WeightFunction<R>,
    x: &SequenceSpec<R>,
    r: R,
    config: ExperimentConfig,
) -> Result<WeightedCompositionReport<R>> {
    check_r(&r)?;
    if !x.is_bounded() {
        return Err(Error::Unbounded(x.to_string()));
    }
    let (_, base) = config.converged_base(x, r.clone())?;
    let y = weighted_prefix(w, x, config.n_max)?;
    let composed_sweep = sweep_values(&y, r)?;
    let composed = config.estimate(&composed_sweep)?;
    let gap = modulus(&(composed.value.clone() - base.value.clone()));
    Ok(WeightedCompositionReport {
        verdict: Verdict::from_bool(composed.converged && gap <= 2.0 * config.tolerance),
        base,
        composed,
        composed_sweep,
        gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{parse_rational, real, Rational};
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn c(s: &str) -> Complex<Rational> {
        real(q(s))
    }

    fn f(v: f64) -> Complex<f64> {
        real(v)
    }

    fn thirds<R: Real>() -> WeightProfile<R> {
        let third = real(R::one() / R::from_usize(3));
        WeightProfile::finite(vec![third.clone(), third.clone(), third])
    }

    fn alternating() -> SequenceSpec<f64> {
        SequenceSpec::geometric(f(-1.0))
    }

    #[test]
    fn estimate_examples() {
        let ones = vec![c("1"); 20];
        let est = estimate_limit(&ones, 0.0, 10).unwrap();
        assert_eq!(est.value, c("1"));
        assert!(est.converged);
        assert_eq!(est.n_used, 19);

        let closed: Vec<_> = (0..=100)
            .map(|n: i32| f(1.0 - (n as f64 + 2.0) / (3.0 * 2f64.powi(n))))
            .collect();
        let est = estimate_limit(&closed, 1e-9, 10).unwrap();
        assert!(est.converged);
        assert!((est.value.re - 1.0).abs() < 1e-9);

        let osc: Vec<_> = (0..50).map(|n| f(if n % 2 == 0 { 1.0 } else { -1.0 })).collect();
        let est = estimate_limit(&osc, 1e-3, 10).unwrap();
        assert!(!est.converged);
        assert_eq!(est.value, f(0.0));
    }

    #[test]
    fn estimate_rejects_bad_window() {
        let s = vec![f(1.0); 5];
        assert!(estimate_limit(&s, 1e-8, 6).is_err());
        assert!(estimate_limit(&s, 1e-8, 0).is_err());
        assert!(estimate_limit(&s, f64::NAN, 2).is_err());
    }

    #[test]
    fn main_theorem_counterexample() {
        let x = SequenceSpec::constant(f(1.0));
        let report = run_main_theorem_experiment(
            &x,
            &thirds(),
            0.5,
            ExperimentConfig::new(100).with_tolerance(1e-9),
        )
        .unwrap();
        assert!((report.convolved.value.re - 1.0).abs() <= 1e-9);
        assert!(report.gap_to_correct <= 1e-9);
        assert!((report.gap_to_incorrect - 1.0 / 6.0).abs() < 1e-9);
        assert!(report.verdict.is_consistent());
        assert!(!report.incorrect_verdict.is_consistent());
    }

    #[test]
    fn main_theorem_exact_mode() {
        let x = SequenceSpec::constant(c("1"));
        let report =
            run_main_theorem_experiment(&x, &thirds(), q("1/2"), ExperimentConfig::new(60))
                .unwrap();
        assert_eq!(report.correct_rhs, c("1"));
        assert_eq!(report.incorrect_rhs, c("5/6"));
        assert_eq!(report.base.value, c("1"));
        assert!(report.verdict.is_consistent());
    }

    #[test]
    fn identity_convolution_makes_formulas_agree() {
        let x = SequenceSpec::constant(f(1.0));
        let identity = WeightProfile::finite(vec![f(1.0)]);
        let report =
            run_main_theorem_experiment(&x, &identity, 0.5, ExperimentConfig::new(80)).unwrap();
        assert_eq!(report.correct_rhs, report.incorrect_rhs);
        assert!(report.verdict.is_consistent() && report.incorrect_verdict.is_consistent());
    }

    #[test]
    fn main_theorem_geometric_tail() {
        let x = SequenceSpec::constant(f(1.0)).plus(alternating());
        let tail = WeightProfile::geometric_tail(f(0.5), 0.5).unwrap();
        let report = run_main_theorem_experiment(&x, &tail, 0.5, ExperimentConfig::new(200)).unwrap();
        assert!((report.convolved.value.re - 1.0).abs() < 1e-6);
        assert!(report.verdict.is_consistent());
    }

    #[test]
    fn non_convergent_base_is_an_error() {
        let x = SequenceSpec::geometric(f(-3.0));
        let err = run_main_theorem_experiment(&x, &thirds(), 0.5, ExperimentConfig::new(50));
        assert!(matches!(err, Err(Error::NonConvergence(_))));
    }

    #[test]
    fn shift_invariance_examples() {
        let cfg = ExperimentConfig::new(100);
        let report =
            run_shift_invariance_experiment(&SequenceSpec::constant(f(1.0)), 3, 0.5, cfg).unwrap();
        assert_eq!(report.shifted.len(), 3);
        assert!(report.shifted.iter().all(|e| (e.value.re - 1.0).abs() < 1e-8));
        assert!(report.verdict.is_consistent());

        let report = run_shift_invariance_experiment(&alternating(), 3, 0.5, cfg).unwrap();
        assert!(report.base.value.norm() < 1e-15);
        assert!(report.shifted.iter().all(|e| e.value.norm() < 1e-8));

        let report = run_shift_invariance_experiment(&alternating(), 0, 0.5, cfg).unwrap();
        assert!(report.shifted.is_empty());
        assert_eq!(report.max_gap, 0.0);
    }

    #[test]
    fn shifted_estimates_match_spec_shift() {
        let x = SequenceSpec::periodic(vec![f(1.0), f(0.5), f(-0.25)]).unwrap();
        let cfg = ExperimentConfig::new(40).with_tolerance(1.0);
        let report = run_shift_invariance_experiment(&x, 4, 0.3, cfg).unwrap();
        for (i, est) in report.shifted.iter().enumerate() {
            let sweep = binomial_sweep(&x.clone().shift_right(i + 1), 40, 0.3).unwrap();
            assert_eq!(est, &estimate_limit(&sweep, 1.0, 10).unwrap());
        }
    }

    #[test]
    fn r_independence_examples() {
        let cfg = ExperimentConfig::new(200).with_tolerance(1e-6);
        let ones = SequenceSpec::constant(f(1.0));
        let report = run_r_independence_experiment(&ones, 0.7, 0.3, cfg).unwrap();
        assert!(report.verdict.is_consistent());

        let conv = ones.clone().convolved(thirds());
        let report = run_r_independence_experiment(&conv, 0.7, 0.3, cfg).unwrap();
        assert!(report.gap < 1e-6);

        let report = run_r_independence_experiment(&alternating(), 0.5, 0.25, cfg).unwrap();
        assert!(report.at_r.value.norm() < 1e-12 && report.at_r_prime.value.norm() < 1e-12);

        assert!(run_r_independence_experiment(&ones, 0.3, 0.7, cfg).is_err());
        assert!(run_r_independence_experiment(&ones, 0.5, 0.5, cfg).is_err());
    }

    #[test]
    fn weighted_composition_examples() {
        let cfg = ExperimentConfig::new(200).with_tolerance(1e-6);
        let pow2 = WeightFunction::power(2.0).unwrap();
        let report =
            run_weighted_composition_experiment(&pow2, &SequenceSpec::constant(f(1.0)), 0.5, cfg)
                .unwrap();
        assert!((report.composed.value.re - 1.0).abs() < 1e-6);
        assert!(report.verdict.is_consistent());

        let report =
            run_weighted_composition_experiment(&pow2, &SequenceSpec::constant(f(0.0)), 0.5, cfg)
                .unwrap();
        assert_eq!(report.composed.value, f(0.0));

        let unbounded = SequenceSpec::geometric(f(1.5));
        assert!(matches!(
            run_weighted_composition_experiment(&pow2, &unbounded, 0.5, cfg),
            Err(Error::Unbounded(_))
        ));
    }

    #[test]
    fn cesaro_composition_drifts_toward_zero() {
        // y_n = -1/n for odd n, 0 for even n; E_N y behaves like -1/(2 r N).
        let x = SequenceSpec::periodic(vec![f(1.0), f(-1.0)]).unwrap();
        let linear = WeightFunction::Linear;
        let at = |n_max| {
            run_weighted_composition_experiment(&linear, &x, 0.5, ExperimentConfig::new(n_max))
                .unwrap()
                .composed
                .value
                .re
        };
        let (a, b, c) = (at(100), at(200), at(400));
        assert!(a < b && b < c && c < 0.0);
        assert!((b * 200.0 + 1.0).abs() < 0.05);
    }

    proptest! {
        #[test]
        fn convergence_is_monotone_in_tolerance(
            values in prop::collection::vec(-1.0f64..1.0, 10..40),
            tol in 0.0f64..1.0,
            extra in 0.0f64..1.0,
            window in 1usize..10,
        ) {
            let sweep: Vec<_> = values.into_iter().map(f).collect();
            let tight = estimate_limit(&sweep, tol, window).unwrap();
            let loose = estimate_limit(&sweep, tol + extra, window).unwrap();
            prop_assert!(!tight.converged || loose.converged);
            prop_assert_eq!(tight.value, loose.value);
        }
    }
}
