//! Lazily evaluated complex sequences.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::convolution::WeightProfile;
use crate::error::{Error, Result};
use crate::numeric::{parse_complex, render_complex, Real};

/// A symbolic description of a complex sequence `x_0, x_1, ...`.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceSpec<R: Real> {
    /// `x_n = c`.
    Constant(Complex<R>),
    /// `x_n = z^n`.
    Geometric(Complex<R>),
    /// `x_n = values[n mod len]`. Must be non-empty.
    Periodic(Vec<Complex<R>>),
    /// Values loaded from a text file, one per line.
    FromFile {
        path: PathBuf,
        values: Arc<[Complex<R>]>,
    },
    /// `T^k x`: `k` leading zeros, then the inner sequence.
    ShiftRight(Box<SequenceSpec<R>>, usize),
    /// `x_{n+k}`.
    ShiftLeft(Box<SequenceSpec<R>>, usize),
    Scale(Box<SequenceSpec<R>>, Complex<R>),
    Sum(Box<SequenceSpec<R>>, Box<SequenceSpec<R>>),
    /// `sum_{k<=n} lambda_k x_{n-k}`.
    Convolved(Box<SequenceSpec<R>>, WeightProfile<R>),
}

impl<R: Real> SequenceSpec<R> {
    pub fn constant(c: Complex<R>) -> Self {
        SequenceSpec::Constant(c)
    }

    pub fn geometric(z: Complex<R>) -> Self {
        SequenceSpec::Geometric(z)
    }

    pub fn periodic(values: Vec<Complex<R>>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("periodic sequence needs at least one value"));
        }
        Ok(SequenceSpec::Periodic(values))
    }

    /// Reads one complex value per line; line `i` (from 0) is `x_i`. Blank lines are skipped.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let text = std::fs::read_to_string(&path).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
        let values = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(parse_complex::<R>)
            .collect::<Result<Vec<_>>>()?;
        Ok(SequenceSpec::FromFile {
            path,
            values: values.into(),
        })
    }

    pub fn shift_right(self, k: usize) -> Self {
        SequenceSpec::ShiftRight(Box::new(self), k)
    }

    pub fn shift_left(self, k: usize) -> Self {
        SequenceSpec::ShiftLeft(Box::new(self), k)
    }

    pub fn scale(self, c: Complex<R>) -> Self {
        SequenceSpec::Scale(Box::new(self), c)
    }

    pub fn plus(self, other: SequenceSpec<R>) -> Self {
        SequenceSpec::Sum(Box::new(self), Box::new(other))
    }

    pub fn convolved(self, weights: WeightProfile<R>) -> Self {
        SequenceSpec::Convolved(Box::new(self), weights)
    }

    /// `x_n`.
    pub fn eval(&self, n: usize) -> Result<Complex<R>> {
        match self {
            SequenceSpec::Constant(c) => Ok(c.clone()),
            SequenceSpec::Geometric(z) => Ok(num_traits::pow(z.clone(), n)),
            SequenceSpec::Periodic(values) => {
                if values.is_empty() {
                    return Err(Error::invalid("empty periodic sequence"));
                }
                Ok(values[n % values.len()].clone())
            }
            SequenceSpec::FromFile { values, .. } => {
                values.get(n).cloned().ok_or(Error::IndexOutOfRange {
                    index: n,
                    len: values.len(),
                })
            }
            SequenceSpec::ShiftRight(inner, k) => {
                if n < *k {
                    Ok(Complex::zero())
                } else {
                    inner.eval(n - k)
                }
            }
            SequenceSpec::ShiftLeft(inner, k) => inner.eval(n + k),
            SequenceSpec::Scale(inner, c) => Ok(inner.eval(n)? * c.clone()),
            SequenceSpec::Sum(a, b) => Ok(a.eval(n)? + b.eval(n)?),
            SequenceSpec::Convolved(inner, weights) => {
                crate::convolution::convolve_at(inner, weights, n)
            }
        }
    }

    /// `[x_0, ..., x_last]`.
    pub fn prefix(&self, last: usize) -> Result<Vec<Complex<R>>> {
        match self {
            SequenceSpec::Constant(c) => Ok(vec![c.clone(); last + 1]),
            SequenceSpec::Geometric(z) => {
                let mut out = Vec::with_capacity(last + 1);
                let mut power = Complex::one();
                for _ in 0..=last {
                    out.push(power.clone());
                    power = power * z.clone();
                }
                Ok(out)
            }
            SequenceSpec::Periodic(_) => (0..=last).map(|n| self.eval(n)).collect(),
            SequenceSpec::FromFile { values, .. } => {
                if last >= values.len() {
                    return Err(Error::IndexOutOfRange {
                        index: last,
                        len: values.len(),
                    });
                }
                Ok(values[..=last].to_vec())
            }
            SequenceSpec::ShiftRight(inner, k) => {
                let mut out = vec![Complex::zero(); (*k).min(last + 1)];
                if last >= *k {
                    out.extend(inner.prefix(last - k)?);
                }
                Ok(out)
            }
            SequenceSpec::ShiftLeft(inner, k) => {
                let mut values = inner.prefix(last + k)?;
                Ok(values.split_off(*k))
            }
            SequenceSpec::Scale(inner, c) => Ok(inner
                .prefix(last)?
                .into_iter()
                .map(|v| v * c.clone())
                .collect()),
            SequenceSpec::Sum(a, b) => Ok(a
                .prefix(last)?
                .into_iter()
                .zip(b.prefix(last)?)
                .map(|(u, v)| u + v)
                .collect()),
            SequenceSpec::Convolved(inner, weights) => {
                let x = inner.prefix(last)?;
                let lambda = weights.weights(last);
                Ok(crate::convolution::convolve_prefix(&lambda, &x))
            }
        }
    }

    /// Whether the sequence is known to be bounded.
    ///
    /// Geometric sequences count as bounded only when `|z| <= 1`; convolutions
    /// inherit boundedness from their input since every profile is absolutely summable.
    pub fn is_bounded(&self) -> bool {
        match self {
            SequenceSpec::Constant(_)
            | SequenceSpec::Periodic(_)
            | SequenceSpec::FromFile { .. } => true,
            SequenceSpec::Geometric(z) => z.norm_sqr() <= R::one(),
            SequenceSpec::ShiftRight(inner, _)
            | SequenceSpec::ShiftLeft(inner, _)
            | SequenceSpec::Scale(inner, _)
            | SequenceSpec::Convolved(inner, _) => inner.is_bounded(),
            SequenceSpec::Sum(a, b) => a.is_bounded() && b.is_bounded(),
        }
    }
}

/// Renders the sequence in the mini-language accepted by [`crate::lang::parse_sequence`].
impl<R: Real> fmt::Display for SequenceSpec<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::Constant(c) => write!(f, "const:{}", render_complex(c)),
            SequenceSpec::Geometric(z) => write!(f, "geom:{}", render_complex(z)),
            SequenceSpec::Periodic(values) => {
                let parts: Vec<_> = values.iter().map(render_complex).collect();
                write!(f, "periodic:{}", parts.join(","))
            }
            SequenceSpec::FromFile { path, .. } => write!(f, "file:{}", path.display()),
            SequenceSpec::ShiftRight(inner, k) => write!(f, "shiftR:{k}({inner})"),
            SequenceSpec::ShiftLeft(inner, k) => write!(f, "shiftL:{k}({inner})"),
            SequenceSpec::Scale(inner, c) => write!(f, "scale:{}({inner})", render_complex(c)),
            SequenceSpec::Sum(a, b) => write!(f, "sum({a};{b})"),
            SequenceSpec::Convolved(inner, w) => write!(f, "conv({inner};{w})"),
        }
    }
}
