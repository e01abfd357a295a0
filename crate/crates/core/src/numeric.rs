//! Exact and floating-point scalars.
//!
//! Every computation in this crate is generic over a [`Real`] type. Two
//! implementations exist: [`Rational`] (arbitrary-precision, canonical
//! `p/q`, never rounds) and `f64` (IEEE-754 double). Complex values are
//! `num_complex::Complex<R>`. The arithmetic mode of a computation is thus a
//! type parameter, and a single computation cannot mix the two.
//!
//! [`ComplexScalar`] is the run-time tagged counterpart used at text and
//! report boundaries, where the mode is only known after parsing.

use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Canonical arbitrary-precision rational number.
pub type Rational = BigRational;

/// Arithmetic mode of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::parse(format!("unknown mode `{other}`"))),
        }
    }
}

/// `C(n, k)`, zero when `k > n`.
///
/// Computed by the multiplicative recurrence `C(n, i+1) = C(n, i)(n-i)/(i+1)`,
/// where every division is exact.
pub fn binomial_coefficient(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Generalized binomial coefficient `a(a-1)...(a-j+1) / j!` for any integer `a`.
///
/// Agrees with [`binomial_coefficient`] for `a >= 0`. The running product is
/// `C(a, i)` after `i` steps, so each division by `i + 1` is exact.
pub fn generalized_binomial(a: &BigInt, j: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..j {
        acc *= a - BigInt::from(i);
        let divisor = BigInt::from(i + 1);
        debug_assert!((&acc % &divisor).is_zero());
        acc /= divisor;
    }
    acc
}

/// Parses `p/q`, `p`, or a decimal literal such as `-1.25e-3` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::parse("empty number"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num)?;
        let den = parse_integer(den)?;
        if den.is_zero() {
            return Err(Error::parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s)
}

fn parse_integer(s: &str) -> Result<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix('+').unwrap_or(s);
    let body = digits.strip_prefix('-').unwrap_or(digits);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(format!("invalid integer `{s}`")));
    }
    BigInt::from_str(digits).map_err(|_| Error::parse(format!("invalid integer `{s}`")))
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::parse(format!("invalid number `{s}`"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if exponent.unsigned_abs() > 100_000 {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(&digits).map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Scalar field used by every generic computation.
pub trait Real:
    Clone + Debug + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static
{
    const MODE: Mode;

    fn from_rational(q: &Rational) -> Self;

    fn from_usize(n: usize) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn to_f64(&self) -> f64;

    /// Parses a real literal in this mode.
    fn parse_real(text: &str) -> Result<Self>;

    /// Lossless text form: `p/q` for rationals, 17 significant digits for floats.
    fn render(&self) -> String;

    /// Square root when it is representable in this mode.
    fn exact_sqrt(&self) -> Option<Self>;

    fn sum_all<I: IntoIterator<Item = Self>>(iter: I) -> Self {
        iter.into_iter().fold(Self::zero(), |acc, v| acc + v)
    }

    /// Rounding allowance for comparing a quantity of magnitude `self`
    /// produced by about `ops` floating operations. Zero in exact mode.
    fn rounding_allowance(&self, ops: usize) -> Self;

    fn into_scalar(z: Complex<Self>) -> ComplexScalar;

    fn from_scalar(z: &ComplexScalar) -> Result<Complex<Self>>;
}

impl Real for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_real(text: &str) -> Result<Self> {
        match text.trim() {
            "e" | "pi" => Err(Error::NotRational(text.trim().to_string())),
            s => parse_rational(s),
        }
    }

    fn render(&self) -> String {
        self.to_string()
    }

    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        (&n * &n == *self.numer() && &d * &d == *self.denom()).then(|| Rational::new(n, d))
    }

    fn rounding_allowance(&self, _ops: usize) -> Self {
        Rational::zero()
    }

    fn into_scalar(z: Complex<Self>) -> ComplexScalar {
        ComplexScalar::Exact(z)
    }

    fn from_scalar(z: &ComplexScalar) -> Result<Complex<Self>> {
        match z {
            ComplexScalar::Exact(v) => Ok(v.clone()),
            ComplexScalar::Float(_) => Err(Error::ModeMismatch),
        }
    }
}

impl Real for f64 {
    const MODE: Mode = Mode::Float;

    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn from_usize(n: usize) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_real(text: &str) -> Result<Self> {
        let s = text.trim();
        let value = match s {
            "e" => std::f64::consts::E,
            "pi" => std::f64::consts::PI,
            _ if s.contains('/') => Self::from_rational(&parse_rational(s)?),
            _ => {
                let v: f64 = s
                    .parse()
                    .map_err(|_| Error::parse(format!("invalid number `{s}`")))?;
                if !v.is_finite() {
                    return Err(Error::parse(format!("non-finite number `{s}`")));
                }
                v
            }
        };
        Ok(value)
    }

    fn render(&self) -> String {
        format!("{self:.16e}")
    }

    fn exact_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    /// Neumaier compensated summation.
    fn sum_all<I: IntoIterator<Item = Self>>(iter: I) -> Self {
        let mut sum = 0.0_f64;
        let mut comp = 0.0_f64;
        for v in iter {
            let t = sum + v;
            if sum.abs() >= v.abs() {
                comp += (sum - t) + v;
            } else {
                comp += (v - t) + sum;
            }
            sum = t;
        }
        sum + comp
    }

    fn rounding_allowance(&self, ops: usize) -> Self {
        self.abs() * (ops as f64 + 1.0) * 8.0 * f64::EPSILON
    }

    fn into_scalar(z: Complex<Self>) -> ComplexScalar {
        ComplexScalar::Float(z)
    }

    fn from_scalar(z: &ComplexScalar) -> Result<Complex<Self>> {
        match z {
            ComplexScalar::Float(v) => Ok(*v),
            ComplexScalar::Exact(_) => Err(Error::ModeMismatch),
        }
    }
}

/// Embeds a real into the complex plane.
pub fn real<R: Real>(v: R) -> Complex<R> {
    Complex::new(v, R::zero())
}

/// `|z|` as a double, used for reporting margins and deviations.
pub fn modulus<R: Real>(z: &Complex<R>) -> f64 {
    z.norm_sqr().to_f64().sqrt()
}

/// Parses `a+bi`, `a`, `bi`, `-i` and similar forms. Parts may be rational or decimal.
pub fn parse_complex<R: Real>(text: &str) -> Result<Complex<R>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::parse("empty complex literal"));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(real(R::parse_real(&s)?));
    };
    let split = imaginary_split(body);
    let (re_text, im_text) = body.split_at(split);
    let re = if re_text.is_empty() {
        R::zero()
    } else {
        R::parse_real(re_text)?
    };
    let im = match im_text {
        "" | "+" => R::one(),
        "-" => -R::one(),
        t => R::parse_real(t)?,
    };
    Ok(Complex::new(re, im))
}

// Position of the sign that starts the imaginary part, or 0 if there is no real part.
fn imaginary_split(body: &str) -> usize {
    let bytes = body.as_bytes();
    for pos in (1..bytes.len()).rev() {
        if bytes[pos] != b'+' && bytes[pos] != b'-' {
            continue;
        }
        let prev = bytes[pos - 1];
        let is_exponent = matches!(prev, b'e' | b'E')
            && pos >= 2
            && (bytes[pos - 2].is_ascii_digit() || bytes[pos - 2] == b'.');
        if !is_exponent {
            return pos;
        }
    }
    0
}

/// Text form of a complex value: the real part alone when the imaginary part is zero.
pub fn render_complex<R: Real>(z: &Complex<R>) -> String {
    if z.im.is_zero() {
        return z.re.render();
    }
    let im = z.im.render();
    let im = if im.starts_with('-') { im } else { format!("+{im}") };
    format!("{}{}i", z.re.render(), im)
}

/// A complex scalar tagged with its arithmetic mode.
#[derive(Debug, Clone, PartialEq)]
pub enum ComplexScalar {
    Exact(Complex<Rational>),
    Float(Complex64),
}

impl ComplexScalar {
    pub fn parse(text: &str, mode: Mode) -> Result<Self> {
        match mode {
            Mode::Exact => parse_complex::<Rational>(text).map(ComplexScalar::Exact),
            Mode::Float => parse_complex::<f64>(text).map(ComplexScalar::Float),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            ComplexScalar::Exact(_) => Mode::Exact,
            ComplexScalar::Float(_) => Mode::Float,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        match self {
            ComplexScalar::Exact(z) => Complex64::new(Real::to_f64(&z.re), Real::to_f64(&z.im)),
            ComplexScalar::Float(z) => *z,
        }
    }

    /// Real and imaginary parts in their lossless text form.
    pub fn parts(&self) -> (String, String) {
        match self {
            ComplexScalar::Exact(z) => (z.re.render(), z.im.render()),
            ComplexScalar::Float(z) => (z.re.render(), z.im.render()),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, |a, b| Ok(a + b), |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, |a, b| Ok(a - b), |a, b| a - b)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, |a, b| Ok(a * b), |a, b| a * b)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.combine(
            rhs,
            |a, b| {
                if b.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(a / b)
                }
            },
            |a, b| a / b,
        )
    }

    fn combine(
        &self,
        rhs: &Self,
        exact: impl FnOnce(Complex<Rational>, Complex<Rational>) -> Result<Complex<Rational>>,
        float: impl FnOnce(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        match (self, rhs) {
            (ComplexScalar::Exact(a), ComplexScalar::Exact(b)) => {
                exact(a.clone(), b.clone()).map(ComplexScalar::Exact)
            }
            (ComplexScalar::Float(a), ComplexScalar::Float(b)) => {
                Ok(ComplexScalar::Float(float(*a, *b)))
            }
            _ => Err(Error::ModeMismatch),
        }
    }
}

impl Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexScalar::Exact(z) => f.write_str(&render_complex(z)),
            ComplexScalar::Float(z) => f.write_str(&render_complex(z)),
        }
    }
}
