//! r-binomial (Euler) averages
//! `E_N x = sum_{n<=N} C(N,n) r^n (1-r)^{N-n} x_n` and their algebraic checks.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::{modulus, Real};
use crate::sequence::SequenceSpec;

pub(crate) fn check_r<R: Real>(r: &R) -> Result<()> {
    if !(*r > R::zero() && *r < R::one()) {
        return Err(Error::RNotInUnitInterval(r.render()));
    }
    Ok(())
}

/// Row `N` of the binomial kernel: `weights[n] = C(N,n) r^n (1-r)^{N-n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialRow<R: Real> {
    n: usize,
    r: R,
    q: R,
    weights: Vec<R>,
}

impl<R: Real> BinomialRow<R> {
    /// The `N = 0` row, `[1]`.
    pub fn first(r: R) -> Result<Self> {
        check_r(&r)?;
        let q = R::one() - r.clone();
        Ok(BinomialRow {
            n: 0,
            r,
            q,
            weights: vec![R::one()],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> &R {
        &self.r
    }

    pub fn weights(&self) -> &[R] {
        &self.weights
    }

    pub fn into_weights(self) -> Vec<R> {
        self.weights
    }

    /// Moves to row `N + 1` via `w'_n = r w_{n-1} + (1-r) w_n`.
    ///
    /// Every term is a positive combination of positive numbers, so the
    /// floating-point update has no cancellation.
    pub fn advance(&mut self) {
        let last = self.weights[self.n].clone();
        self.weights.push(self.r.clone() * last);
        for n in (1..=self.n).rev() {
            self.weights[n] = self.r.clone() * self.weights[n - 1].clone()
                + self.q.clone() * self.weights[n].clone();
        }
        self.weights[0] = self.q.clone() * self.weights[0].clone();
        self.n += 1;
    }

    pub fn total(&self) -> R {
        R::sum_all(self.weights.iter().cloned())
    }

    /// `sum_n w_n x_n` over the first `N + 1` values of `x`.
    pub fn apply(&self, x: &[Complex<R>]) -> Complex<R> {
        debug_assert!(x.len() > self.n);
        let re = R::sum_all(
            self.weights
                .iter()
                .zip(x)
                .map(|(w, v)| w.clone() * v.re.clone()),
        );
        let im = R::sum_all(
            self.weights
                .iter()
                .zip(x)
                .map(|(w, v)| w.clone() * v.im.clone()),
        );
        Complex::new(re, im)
    }
}

/// Row `N` of the kernel, built by `N` incremental updates from `[1]`.
pub fn weights_row<R: Real>(n: usize, r: R) -> Result<BinomialRow<R>> {
    let mut row = BinomialRow::first(r)?;
    for _ in 0..n {
        row.advance();
    }
    Ok(row)
}

/// `E_N x`, with the convention `E_0 x = x_0`.
pub fn binomial_average<R: Real>(x: &SequenceSpec<R>, n: usize, r: R) -> Result<Complex<R>> {
    let row = weights_row(n, r)?;
    let values = x.prefix(n)?;
    Ok(row.apply(&values))
}

/// `[E_0 x, ..., E_{N_max} x]` in `O(N_max^2)`.
pub fn binomial_sweep<R: Real>(
    x: &SequenceSpec<R>,
    n_max: usize,
    r: R,
) -> Result<Vec<Complex<R>>> {
    check_r(&r)?;
    let values = x.prefix(n_max)?;
    sweep_values(&values, r)
}

/// Binomial sweep over an already materialized prefix; the sweep has `values.len()` entries.
pub fn sweep_values<R: Real>(values: &[Complex<R>], r: R) -> Result<Vec<Complex<R>>> {
    let mut row = BinomialRow::first(r)?;
    let mut out = Vec::with_capacity(values.len());
    for n in 0..values.len() {
        if n > 0 {
            row.advance();
        }
        out.push(row.apply(&values[..=n]));
    }
    Ok(out)
}

/// Precomputed sweeps of `x` and `(x_{n+1})` for evaluating the one-step and
/// k-step recurrences at many `(N, k)` without recomputing averages.
#[derive(Debug, Clone)]
pub struct RecurrenceChecker<R: Real> {
    r: R,
    q: R,
    plain: Vec<Complex<R>>,
    advanced: Vec<Complex<R>>,
}

impl<R: Real> RecurrenceChecker<R> {
    /// Supports `N + k <= horizon`.
    pub fn new(x: &SequenceSpec<R>, r: R, horizon: usize) -> Result<Self> {
        check_r(&r)?;
        let plain = binomial_sweep(x, horizon, r.clone())?;
        let advanced = binomial_sweep(&x.clone().shift_left(1), horizon, r.clone())?;
        let q = R::one() - r.clone();
        Ok(RecurrenceChecker {
            r,
            q,
            plain,
            advanced,
        })
    }

    pub fn horizon(&self) -> usize {
        self.plain.len() - 1
    }

    fn check_range(&self, n: usize, k: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::invalid("recurrence checks require N >= 1"));
        }
        if k == 0 {
            return Err(Error::invalid("k-step expansion requires k >= 1"));
        }
        if n + k > self.horizon() {
            return Err(Error::invalid(format!(
                "N + k = {} exceeds the precomputed horizon {}",
                n + k,
                self.horizon()
            )));
        }
        Ok(())
    }

    /// `r E_N(x_{n+1}) + (1-r) E_N(x_n) - E_{N+1}(x_n)`.
    pub fn one_step(&self, n: usize) -> Result<Complex<R>> {
        self.check_range(n, 1)?;
        Ok(self.advanced[n].clone() * self.r.clone() + self.plain[n].clone() * self.q.clone()
            - self.plain[n + 1].clone())
    }

    /// `E_{N+k}(x_n) - [r sum_{i<k} (1-r)^{k-i-1} E_{N+i}(x_{n+1}) + (1-r)^k E_N(x_n)]`.
    pub fn k_step(&self, n: usize, k: usize) -> Result<Complex<R>> {
        self.check_range(n, k)?;
        // Horner form: acc_{i+1} = (1-r) acc_i + r E_{N+i}(x_{n+1}), acc_0 = E_N(x_n).
        let mut acc = self.plain[n].clone();
        for i in 0..k {
            acc = acc * self.q.clone() + self.advanced[n + i].clone() * self.r.clone();
        }
        Ok(self.plain[n + k].clone() - acc)
    }
}

/// Residual of `r E_N(x_{n+1}) + (1-r) E_N(x_n) = E_{N+1}(x_n)`; exactly zero in exact mode.
pub fn check_one_step_recurrence<R: Real>(
    x: &SequenceSpec<R>,
    n: usize,
    r: R,
) -> Result<Complex<R>> {
    RecurrenceChecker::new(x, r, n + 1)?.one_step(n)
}

/// Residual of the k-step expansion of `E_{N+k}`; `k = 1` is the one-step recurrence.
pub fn check_k_step_expansion<R: Real>(
    x: &SequenceSpec<R>,
    n: usize,
    k: usize,
    r: R,
) -> Result<Complex<R>> {
    RecurrenceChecker::new(x, r, n + k)?.k_step(n, k)
}

/// Outcome of [`check_sup_bound`].
#[derive(Debug, Clone, PartialEq)]
pub struct SupBoundReport {
    /// `margins[i]` is `max_{M<N} |E_M x| - |E_N(Tx)|` for `N = i + 1`.
    pub margins: Vec<f64>,
    pub holds: bool,
    /// First `N` at which the bound fails, if any.
    pub first_failure: Option<usize>,
}

impl SupBoundReport {
    pub fn min_margin(&self) -> f64 {
        self.margins.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Checks `|E_N(Tx)| <= max_{0<=M<N} |E_M x|` for `1 <= N <= N_max`, where `T`
/// prepends a zero.
///
/// Exact mode compares squared moduli exactly; float mode allows for rounding
/// proportional to `N`.
pub fn check_sup_bound<R: Real>(x: &SequenceSpec<R>, n_max: usize, r: R) -> Result<SupBoundReport> {
    if n_max == 0 {
        return Err(Error::invalid("N_max must be positive"));
    }
    let base = binomial_sweep(x, n_max, r.clone())?;
    let shifted = binomial_sweep(&x.clone().shift_right(1), n_max, r)?;

    let mut margins = Vec::with_capacity(n_max);
    let mut first_failure = None;
    let mut running_max_sq = base[0].norm_sqr();
    let mut running_max_at = 0;
    for n in 1..=n_max {
        let value_sq = shifted[n].norm_sqr();
        let allowance = running_max_sq.rounding_allowance(n);
        if value_sq > running_max_sq.clone() + allowance && first_failure.is_none() {
            first_failure = Some(n);
        }
        margins.push(modulus(&base[running_max_at]) - modulus(&shifted[n]));
        let next_sq = base[n].norm_sqr();
        if next_sq > running_max_sq {
            running_max_sq = next_sq;
            running_max_at = n;
        }
    }
    Ok(SupBoundReport {
        margins,
        holds: first_failure.is_none(),
        first_failure,
    })
}
