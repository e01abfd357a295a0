//! W-weighted averages `E^W_N x = (1/W(N)) sum_{n=1}^{N} (W(n) - W(n-1)) x_n`.

use std::fmt;
use std::path::{Path, PathBuf};

use num_complex::Complex;
use num_traits::Zero;

use crate::convolution::{convolve_at, WeightProfile};
use crate::error::{Error, Result};
use crate::numeric::Real;
use crate::sequence::SequenceSpec;

/// An increasing weight function `W: N -> R`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightFunction<R: Real> {
    /// `W(N) = a^N`, `a > 1`.
    Power(R),
    /// `W(N) = N`; the weighted average is the Cesàro mean.
    Linear,
    /// `W(N) = N^p`, `p >= 1`.
    Polynomial(u32),
    /// User-supplied values `W(0), W(1), ...`, strictly increasing.
    Table { source: PathBuf, values: Vec<R> },
}

impl<R: Real> WeightFunction<R> {
    pub fn power(base: R) -> Result<Self> {
        if base <= R::one() {
            return Err(Error::invalid(format!(
                "power weight needs a base > 1, got {}",
                base.render()
            )));
        }
        Ok(WeightFunction::Power(base))
    }

    pub fn polynomial(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::invalid("polynomial weight needs degree >= 1"));
        }
        Ok(WeightFunction::Polynomial(p))
    }

    pub fn table(source: impl Into<PathBuf>, values: Vec<R>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::invalid("weight table needs at least two values"));
        }
        if let Some(i) = values.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::invalid(format!(
                "weight table must be strictly increasing (entry {} does not exceed entry {i})",
                i + 1
            )));
        }
        Ok(WeightFunction::Table {
            source: source.into(),
            values,
        })
    }

    /// Reads one real value per line.
    pub fn table_from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let values = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(R::parse_real)
            .collect::<Result<Vec<_>>>()?;
        Self::table(path, values)
    }

    /// `W(N)`.
    pub fn value(&self, n: usize) -> Result<R> {
        match self {
            WeightFunction::Power(a) => Ok(num_traits::pow(a.clone(), n)),
            WeightFunction::Linear => Ok(R::from_usize(n)),
            WeightFunction::Polynomial(p) => Ok(num_traits::pow(R::from_usize(n), *p as usize)),
            WeightFunction::Table { values, .. } => {
                values.get(n).cloned().ok_or(Error::IndexOutOfRange {
                    index: n,
                    len: values.len(),
                })
            }
        }
    }

    /// `W(n) - W(n-1)` for `n >= 1`.
    pub fn delta(&self, n: usize) -> Result<R> {
        if n == 0 {
            return Err(Error::invalid("delta W(n) is defined for n >= 1"));
        }
        Ok(self.value(n)? - self.value(n - 1)?)
    }

    /// `lim W(N-1)/W(N)`.
    pub fn ratio_limit(&self) -> Result<R> {
        match self {
            WeightFunction::Power(a) => Ok(R::one() / a.clone()),
            WeightFunction::Linear | WeightFunction::Polynomial(_) => Ok(R::one()),
            WeightFunction::Table { .. } => Err(Error::NoClosedForm(
                "a finite weight table has no ratio limit".into(),
            )),
        }
    }
}

impl<R: Real> fmt::Display for WeightFunction<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightFunction::Power(a) => write!(f, "pow:{}", a.render()),
            WeightFunction::Linear => f.write_str("linear"),
            WeightFunction::Polynomial(p) => write!(f, "poly:{p}"),
            WeightFunction::Table { source, .. } => write!(f, "table:{}", source.display()),
        }
    }
}

/// `E^W_N x`. The sum starts at `n = 1`, so `x_0` never contributes.
pub fn weighted_average<R: Real>(
    w: &WeightFunction<R>,
    x: &SequenceSpec<R>,
    n: usize,
) -> Result<Complex<R>> {
    if n == 0 {
        return Err(Error::invalid("weighted average needs N >= 1"));
    }
    let values = x.prefix(n)?;
    let mut acc = Complex::zero();
    for (i, v) in values.iter().enumerate().skip(1) {
        acc = acc + v.clone() * w.delta(i)?;
    }
    let total = w.value(n)?;
    if total.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(acc / total)
}

/// `[y_0, ..., y_last]` with `y_n = E^W_n x` for `n >= 1` and `y_0 = 0`
/// (the empty sum), computed with a running sum in `O(last)`.
pub fn weighted_prefix<R: Real>(
    w: &WeightFunction<R>,
    x: &SequenceSpec<R>,
    last: usize,
) -> Result<Vec<Complex<R>>> {
    let values = x.prefix(last)?;
    let mut out = Vec::with_capacity(last + 1);
    out.push(Complex::zero());
    let mut acc: Complex<R> = Complex::zero();
    for (n, v) in values.iter().enumerate().skip(1) {
        acc = acc + v.clone() * w.delta(n)?;
        let total = w.value(n)?;
        if total.is_zero() {
            return Err(Error::DivisionByZero);
        }
        out.push(acc.clone() / total);
    }
    Ok(out)
}

/// The convolution profile `lambda_n = L^n - L^{n+1}` matching `W`, where `L` is the ratio limit.
pub fn lambda_profile_of<R: Real>(w: &WeightFunction<R>) -> Result<WeightProfile<R>> {
    let limit = w.ratio_limit()?;
    if !(limit > R::zero() && limit < R::one()) {
        return Err(Error::HypothesisViolation(format!(
            "ratio limit of {w} is {}, outside (0, 1)",
            limit.render()
        )));
    }
    WeightProfile::ratio_telescoping(limit)
}

/// `E^W_N x - sum_{k=0}^{N} lambda_k x_{N-k}`.
///
/// For `W = a^N` this is exactly `-lambda_N x_0`: the weighted average never
/// sees `x_0`, the convolution does.
pub fn equivalence_residual<R: Real>(
    w: &WeightFunction<R>,
    x: &SequenceSpec<R>,
    n: usize,
) -> Result<Complex<R>> {
    if !x.is_bounded() {
        return Err(Error::Unbounded(x.to_string()));
    }
    let profile = lambda_profile_of(w)?;
    Ok(weighted_average(w, x, n)? - convolve_at(x, &profile, n)?)
}

/// Convergence of `W(N-k)/W(N)` to `L^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioPowerReport<R: Real> {
    pub k: usize,
    /// `L^k`.
    pub target: R,
    /// `(N, |W(N-k)/W(N) - L^k|)` for `k <= N <= N_max` (and `N >= 1`).
    pub deviations: Vec<(usize, R)>,
    /// Whether the deviations never increase with `N`.
    pub non_increasing: bool,
}

impl<R: Real> RatioPowerReport<R> {
    pub fn last_deviation(&self) -> Option<&R> {
        self.deviations.last().map(|(_, d)| d)
    }
}

pub fn ratio_power_check<R: Real>(
    w: &WeightFunction<R>,
    k: usize,
    n_max: usize,
) -> Result<RatioPowerReport<R>> {
    let limit = w.ratio_limit()?;
    let target = num_traits::pow(limit, k);
    let mut deviations = Vec::new();
    for n in k.max(1)..=n_max {
        let denominator = w.value(n)?;
        if denominator.is_zero() {
            continue;
        }
        let ratio = w.value(n - k)? / denominator;
        let deviation = num_traits::Signed::abs(&(ratio - target.clone()));
        deviations.push((n, deviation));
    }
    let non_increasing = deviations.windows(2).all(|p| p[1].1 <= p[0].1);
    Ok(RatioPowerReport {
        k,
        target,
        deviations,
        non_increasing,
    })
}

/// `-lambda_N x_0`, the exact residual predicted for power weights.
pub fn power_boundary_term<R: Real>(
    profile: &WeightProfile<R>,
    x: &SequenceSpec<R>,
    n: usize,
) -> Result<Complex<R>> {
    Ok(-(profile.weight(n) * x.eval(0)?))
}
