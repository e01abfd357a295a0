//! Convolution summation methods `x -> (sum_{k<=n} lambda_k x_{n-k})_n`.
//!
//! Weight profiles are closed-form objects: `lambda_k` is available for every
//! `k`, so a convolution at index `n` always uses all `n + 1` terms and the
//! infinite sums `sum lambda_k` and `sum |lambda_k|` are evaluated exactly.

use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::binomial::check_r;
use crate::error::{Error, Result};
use crate::numeric::{real, render_complex, Real};
use crate::sequence::SequenceSpec;

/// The weight sequence `(lambda_k)` of a convolution method.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightProfile<R: Real> {
    /// `lambda_k = values[k]`, zero past the end.
    FiniteSupport(Vec<Complex<R>>),
    /// `lambda_k = c * ratio^k` with `|ratio| < 1`.
    GeometricTail { c: Complex<R>, ratio: R },
    /// `lambda_k = L^k - L^{k+1}` with `0 < L < 1`.
    RatioTelescoping(R),
}

impl<R: Real> WeightProfile<R> {
    pub fn finite(values: Vec<Complex<R>>) -> Self {
        WeightProfile::FiniteSupport(values)
    }

    pub fn geometric_tail(c: Complex<R>, ratio: R) -> Result<Self> {
        if ratio.abs() >= R::one() {
            return Err(Error::invalid(format!(
                "geometric tail ratio must satisfy |ratio| < 1, got {}",
                ratio.render()
            )));
        }
        Ok(WeightProfile::GeometricTail { c, ratio })
    }

    pub fn ratio_telescoping(limit: R) -> Result<Self> {
        if limit <= R::zero() || limit >= R::one() {
            return Err(Error::HypothesisViolation(format!(
                "telescoping ratio must lie in (0, 1), got {}",
                limit.render()
            )));
        }
        Ok(WeightProfile::RatioTelescoping(limit))
    }

    /// `lambda_k`.
    pub fn weight(&self, k: usize) -> Complex<R> {
        match self {
            WeightProfile::FiniteSupport(values) => {
                values.get(k).cloned().unwrap_or_else(Complex::zero)
            }
            WeightProfile::GeometricTail { c, ratio } => {
                c.clone() * num_traits::pow(ratio.clone(), k)
            }
            WeightProfile::RatioTelescoping(l) => {
                let power = num_traits::pow(l.clone(), k);
                real(power.clone() - power * l.clone())
            }
        }
    }

    /// `[lambda_0, ..., lambda_last]`.
    pub fn weights(&self, last: usize) -> Vec<Complex<R>> {
        match self {
            WeightProfile::FiniteSupport(_) => (0..=last).map(|k| self.weight(k)).collect(),
            WeightProfile::GeometricTail { c, ratio } => {
                successive_powers(ratio, last).map(|p| c.clone() * p).collect()
            }
            WeightProfile::RatioTelescoping(l) => {
                let factor = R::one() - l.clone();
                successive_powers(l, last)
                    .map(|p| real(p * factor.clone()))
                    .collect()
            }
        }
    }

    /// `sum_k lambda_k` in closed form.
    pub fn total_sum(&self) -> Complex<R> {
        match self {
            WeightProfile::FiniteSupport(values) => values
                .iter()
                .cloned()
                .fold(Complex::zero(), |acc, v| acc + v),
            WeightProfile::GeometricTail { c, ratio } => {
                c.clone() / (R::one() - ratio.clone())
            }
            WeightProfile::RatioTelescoping(_) => Complex::one(),
        }
    }

    /// `sum_k |lambda_k|` in closed form.
    ///
    /// Fails in exact mode when a complex weight has an irrational modulus.
    pub fn abs_sum(&self) -> Result<R> {
        let modulus = |z: &Complex<R>| {
            z.norm_sqr().exact_sqrt().ok_or_else(|| {
                Error::NoClosedForm(format!(
                    "|{}| is not rational",
                    render_complex(z)
                ))
            })
        };
        match self {
            WeightProfile::FiniteSupport(values) => {
                let mut acc = R::zero();
                for v in values {
                    acc = acc + modulus(v)?;
                }
                Ok(acc)
            }
            WeightProfile::GeometricTail { c, ratio } => {
                Ok(modulus(c)? / (R::one() - ratio.abs()))
            }
            WeightProfile::RatioTelescoping(_) => Ok(R::one()),
        }
    }

    /// `L * (lambda_0 + sum_{n>=1} lambda_n r^{n-1})`.
    ///
    /// This limit formula is false in general. It is kept to measure how far it
    /// lands from the true limit [`WeightProfile::correct_rhs`].
    pub fn incorrect_rhs(&self, r: &R, limit: &Complex<R>) -> Result<Complex<R>> {
        check_r(r)?;
        let bracket = match self {
            WeightProfile::FiniteSupport(values) => {
                let mut acc = Complex::zero();
                let mut power = R::one();
                for (n, v) in values.iter().enumerate() {
                    if n == 0 {
                        acc = acc + v.clone();
                    } else {
                        acc = acc + v.clone() * power.clone();
                        power = power * r.clone();
                    }
                }
                acc
            }
            WeightProfile::GeometricTail { c, ratio } => {
                // c + c*q * sum_m (q r)^m
                let tail = ratio.clone() / (R::one() - ratio.clone() * r.clone());
                c.clone() + c.clone() * tail
            }
            WeightProfile::RatioTelescoping(l) => {
                let head = R::one() - l.clone();
                let tail = head.clone() * l.clone() / (R::one() - l.clone() * r.clone());
                real(head + tail)
            }
        };
        Ok(limit.clone() * bracket)
    }

    /// `L * sum_k lambda_k`, the limit of the binomial averages of the convolved sequence.
    pub fn correct_rhs(&self, limit: &Complex<R>) -> Complex<R> {
        limit.clone() * self.total_sum()
    }
}

fn successive_powers<R: Real>(base: &R, last: usize) -> impl Iterator<Item = R> + '_ {
    std::iter::successors(Some(R::one()), move |p| Some(p.clone() * base.clone())).take(last + 1)
}

/// `sum_{k=0}^{n} lambda_k x_{n-k}`.
pub fn convolve_at<R: Real>(
    x: &SequenceSpec<R>,
    weights: &WeightProfile<R>,
    n: usize,
) -> Result<Complex<R>> {
    let values = x.prefix(n)?;
    let lambda = weights.weights(n);
    Ok(convolve_index(&lambda, &values, n))
}

fn convolve_index<R: Real>(lambda: &[Complex<R>], x: &[Complex<R>], n: usize) -> Complex<R> {
    (0..=n).fold(Complex::zero(), |acc, k| {
        acc + lambda[k].clone() * x[n - k].clone()
    })
}

/// Every convolution index `0..x.len()` at once, `O(len^2)`.
pub fn convolve_prefix<R: Real>(lambda: &[Complex<R>], x: &[Complex<R>]) -> Vec<Complex<R>> {
    debug_assert!(lambda.len() >= x.len());
    (0..x.len()).map(|n| convolve_index(lambda, x, n)).collect()
}

impl<R: Real> fmt::Display for WeightProfile<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightProfile::FiniteSupport(values) => {
                let parts: Vec<_> = values.iter().map(render_complex).collect();
                write!(f, "finite:{}", parts.join(","))
            }
            WeightProfile::GeometricTail { c, ratio } => {
                write!(f, "geomtail:c={},ratio={}", render_complex(c), ratio.render())
            }
            WeightProfile::RatioTelescoping(l) => write!(f, "ratiotel:L={}", l.render()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{parse_rational, Rational};
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn c(s: &str) -> Complex<Rational> {
        real(q(s))
    }

    fn thirds() -> WeightProfile<Rational> {
        WeightProfile::finite(vec![c("1/3"), c("1/3"), c("1/3")])
    }

    fn ones() -> SequenceSpec<Rational> {
        SequenceSpec::constant(c("1"))
    }

    #[test]
    fn convolve_examples() {
        assert_eq!(convolve_at(&ones(), &thirds(), 5).unwrap(), c("1"));
        assert_eq!(convolve_at(&ones(), &thirds(), 0).unwrap(), c("1/3"));
        let x = SequenceSpec::periodic(vec![c("2"), c("-1/5"), c("7")]).unwrap();
        let identity = WeightProfile::finite(vec![c("1")]);
        for n in 0..12 {
            assert_eq!(convolve_at(&x, &identity, n).unwrap(), x.eval(n).unwrap());
        }
    }

    #[test]
    fn total_sum_examples() {
        assert_eq!(thirds().total_sum(), c("1"));
        let tail = WeightProfile::geometric_tail(c("1/2"), q("1/2")).unwrap();
        assert_eq!(tail.total_sum(), c("1"));
        let tel = WeightProfile::<f64>::ratio_telescoping((-1.0f64).exp()).unwrap();
        assert_eq!(tel.total_sum(), Complex::new(1.0, 0.0));
    }

    #[test]
    fn incorrect_rhs_examples() {
        assert_eq!(thirds().incorrect_rhs(&q("1/2"), &c("1")).unwrap(), c("5/6"));
        let identity = WeightProfile::finite(vec![c("1")]);
        assert_eq!(
            identity.incorrect_rhs(&q("3/7"), &c("-4/9")).unwrap(),
            c("-4/9")
        );
        let shifted = WeightProfile::finite(vec![c("0"), c("1")]);
        assert_eq!(shifted.incorrect_rhs(&q("1/2"), &c("2")).unwrap(), c("2"));
        assert!(thirds().incorrect_rhs(&q("1"), &c("1")).is_err());
    }

    #[test]
    fn incorrect_rhs_closed_forms_match_partial_sums() {
        let r = q("2/5");
        let profiles = [
            WeightProfile::geometric_tail(c("3/4"), q("-2/3")).unwrap(),
            WeightProfile::ratio_telescoping(q("1/3")).unwrap(),
        ];
        for profile in profiles {
            let closed = profile.incorrect_rhs(&r, &c("1")).unwrap().re.to_f64();
            let mut partial = profile.weight(0).re.to_f64();
            for n in 1..200 {
                partial += profile.weight(n).re.to_f64() * r.to_f64().powi(n as i32 - 1);
            }
            assert!((closed - partial).abs() < 1e-12, "{profile}: {closed} vs {partial}");
        }
    }

    #[test]
    fn correct_rhs_examples() {
        assert_eq!(thirds().correct_rhs(&c("1")), c("1"));
        let zero_sum = WeightProfile::finite(vec![c("1"), c("-1")]);
        assert_eq!(zero_sum.correct_rhs(&c("17/3")), c("0"));
        let tail = WeightProfile::geometric_tail(c("1/2"), q("1/2")).unwrap();
        assert_eq!(tail.correct_rhs(&c("3")), c("3"));
    }

    #[test]
    fn telescoping_weights_positive_and_sum_to_one() {
        let tel = WeightProfile::ratio_telescoping(q("2/3")).unwrap();
        assert_eq!(tel.total_sum(), c("1"));
        assert_eq!(tel.abs_sum().unwrap(), q("1"));
        let w = tel.weights(60);
        assert!(w.iter().all(|v| v.re > q("0") && v.im.is_zero()));
        // partial sums telescope to 1 - L^{n+1}
        let partial = w.into_iter().fold(c("0"), |a, b| a + b);
        assert_eq!(partial, c("1") - real(num_traits::pow(q("2/3"), 61)));
    }

    #[test]
    fn profile_constructors_validate() {
        assert!(WeightProfile::geometric_tail(c("1"), q("1")).is_err());
        assert!(WeightProfile::geometric_tail(c("1"), q("-3/2")).is_err());
        assert!(matches!(
            WeightProfile::ratio_telescoping(q("1")),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(WeightProfile::ratio_telescoping(q("0")).is_err());
    }

    #[test]
    fn abs_sum_needs_rational_modulus() {
        let ok = WeightProfile::finite(vec![Complex::new(q("3/5"), q("4/5")), c("-1/2")]);
        assert_eq!(ok.abs_sum().unwrap(), q("3/2"));
        let irrational = WeightProfile::finite(vec![Complex::new(q("1"), q("1"))]);
        assert!(matches!(irrational.abs_sum(), Err(Error::NoClosedForm(_))));
        let tail = WeightProfile::geometric_tail(c("-1/2"), q("-1/2")).unwrap();
        assert_eq!(tail.abs_sum().unwrap(), q("1"));
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..10).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    fn profile() -> impl Strategy<Value = WeightProfile<Rational>> {
        prop_oneof![
            prop::collection::vec(small().prop_map(real), 0..8).prop_map(WeightProfile::FiniteSupport),
            (small(), -9i64..=9).prop_map(|(c, r)| WeightProfile::geometric_tail(real(c), Rational::new(r.into(), 10.into())).unwrap()),
            (1i64..=9).prop_map(|l| WeightProfile::ratio_telescoping(Rational::new(l.into(), 10.into())).unwrap()),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn abs_sum_dominates_total_sum(p in profile()) {
            let abs = p.abs_sum().unwrap();
            prop_assert!(abs.clone() * abs >= p.total_sum().norm_sqr());
        }

        #[test]
        fn finite_convolution_matches_double_loop(
            lambda in prop::collection::vec(small().prop_map(real), 1..6),
            xs in prop::collection::vec(small().prop_map(real), 1..6),
        ) {
            let x = SequenceSpec::periodic(xs).unwrap();
            let weights = WeightProfile::finite(lambda.clone());
            let fast = x.clone().convolved(weights.clone()).prefix(100).unwrap();
            for n in 0..=100usize {
                let mut brute = c("0");
                for k in 0..=n {
                    for (j, l) in lambda.iter().enumerate() {
                        if j == k {
                            brute += l.clone() * x.eval(n - k).unwrap();
                        }
                    }
                }
                prop_assert_eq!(&fast[n], &brute);
                prop_assert_eq!(convolve_at(&x, &weights, n).unwrap(), brute);
            }
        }
    }
}
