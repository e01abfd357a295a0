//! Exact checks of the alternating binomial sums
//! `S(n,k,l) = sum_{j=k}^{n-l} (-1)^{j-k} C(n, j+l) C(j, k)`.
//!
//! `S(n,k,l) = 1` holds only for `l = 1`; the general value is
//! `C(n-(k+1), l-1)`, which follows from the Chu–Vandermonde identity.
//! Everything here is integer arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{binomial_coefficient, generalized_binomial};

/// Which identity a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityId {
    /// `S(n,k,l) = 1` (false for `l >= 2`).
    AlternatingSumIsOne,
    /// `S(n,k,l) = C(n-(k+1), l-1)`.
    AlternatingSumClosedForm,
    /// `sum_j G(a, r-j) G(b, j) = G(a+b, r)` with generalized binomials `G`.
    ChuVandermonde,
}

impl IdentityId {
    /// CSV column names for the three parameters.
    pub fn parameter_names(self) -> [&'static str; 3] {
        match self {
            IdentityId::ChuVandermonde => ["a", "b", "r"],
            _ => ["n", "k", "l"],
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityId::AlternatingSumIsOne => "alternating-sum-is-one",
            IdentityId::AlternatingSumClosedForm => "alternating-sum-closed-form",
            IdentityId::ChuVandermonde => "chu-vandermonde",
        })
    }
}

/// One evaluated instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IdentityCase {
    pub params: [i64; 3],
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl IdentityCase {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub identity: IdentityId,
    /// Human-readable description of the swept parameter ranges.
    pub ranges: String,
    /// Every checked case in lexicographic parameter order.
    pub cases: Vec<IdentityCase>,
}

impl IdentityReport {
    fn new(identity: IdentityId, ranges: String, mut cases: Vec<IdentityCase>) -> Self {
        cases.sort();
        IdentityReport {
            identity,
            ranges,
            cases,
        }
    }

    pub fn violations(&self) -> impl Iterator<Item = &IdentityCase> {
        self.cases.iter().filter(|c| !c.holds())
    }

    pub fn violation_count(&self) -> usize {
        self.violations().count()
    }

    pub fn all_hold(&self) -> bool {
        self.cases.iter().all(IdentityCase::holds)
    }

    /// `n,k,l,lhs,rhs,ok` rows (or `a,b,r,...` for Chu–Vandermonde), with a header.
    pub fn to_csv(&self) -> String {
        let [p, q, r] = self.identity.parameter_names();
        let mut out = format!("{p},{q},{r},lhs,rhs,ok\n");
        for case in &self.cases {
            let [a, b, c] = case.params;
            out.push_str(&format!(
                "{a},{b},{c},{},{},{}\n",
                case.lhs,
                case.rhs,
                case.holds()
            ));
        }
        out
    }
}

fn check_triple(n: u64, k: u64, l: u64) -> Result<()> {
    if l == 0 || l >= n || k > n - l {
        return Err(Error::invalid(format!(
            "need 1 <= l < n and 0 <= k <= n - l, got (n, k, l) = ({n}, {k}, {l})"
        )));
    }
    Ok(())
}

/// `S(n,k,l)` by direct summation.
pub fn alternating_sum(n: u64, k: u64, l: u64) -> Result<BigInt> {
    check_triple(n, k, l)?;
    let mut acc = BigInt::zero();
    for j in k..=n - l {
        let term = binomial_coefficient(n, j + l) * binomial_coefficient(j, k);
        if (j - k).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `S(n,k,l)` rewritten with `(-1)^i C(k+i, k) = G(-k-1, i)` and reindexed:
/// `sum_{i=0}^{n-l-k} C(n, (n-l-k) - i) G(-(k+1), i)`. No alternating signs appear.
pub fn alternating_sum_negated(n: u64, k: u64, l: u64) -> Result<BigInt> {
    check_triple(n, k, l)?;
    let top = -BigInt::from(k + 1);
    let r = n - l - k;
    Ok((0..=r)
        .map(|i| binomial_coefficient(n, r - i) * generalized_binomial(&top, i))
        .sum())
}

/// `C(n-(k+1), l-1)`.
pub fn closed_form(n: u64, k: u64, l: u64) -> Result<BigInt> {
    check_triple(n, k, l)?;
    Ok(binomial_coefficient(n - k - 1, l - 1))
}

fn triples(n_max: u64) -> impl ParallelIterator<Item = (u64, u64, u64)> {
    (2..=n_max)
        .into_par_iter()
        .flat_map_iter(|n| (1..n).flat_map(move |l| (0..=n - l).map(move |k| (n, k, l))))
}

/// Checks `S(n,k,l) = C(n-(k+1), l-1)` for all `1 <= l < n <= n_max`, `0 <= k <= n-l`.
pub fn verify_star_star(n_max: u64) -> Result<IdentityReport> {
    if n_max < 2 {
        return Err(Error::invalid("n_max must be at least 2"));
    }
    let cases = triples(n_max)
        .map(|(n, k, l)| {
            Ok(IdentityCase {
                params: [n as i64, k as i64, l as i64],
                lhs: alternating_sum(n, k, l)?,
                rhs: closed_form(n, k, l)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityReport::new(
        IdentityId::AlternatingSumClosedForm,
        format!("2 <= n <= {n_max}, 1 <= l < n, 0 <= k <= n - l"),
        cases,
    ))
}

/// Checks `S(n,1..,1) = 1`, the only slice on which the constant-one claim is true.
pub fn verify_ell_one_slice(n_max: u64) -> Result<IdentityReport> {
    if n_max < 2 {
        return Err(Error::invalid("n_max must be at least 2"));
    }
    let cases = (2..=n_max)
        .into_par_iter()
        .flat_map_iter(|n| (0..n).map(move |k| (n, k)))
        .map(|(n, k)| {
            Ok(IdentityCase {
                params: [n as i64, k as i64, 1],
                lhs: alternating_sum(n, k, 1)?,
                rhs: BigInt::one(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityReport::new(
        IdentityId::AlternatingSumIsOne,
        format!("2 <= n <= {n_max}, l = 1, 0 <= k <= n - 1"),
        cases,
    ))
}

/// A triple where `S(n,k,l) != 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarViolation {
    pub n: u64,
    pub k: u64,
    pub l: u64,
    pub lhs: BigInt,
    /// The claimed value, always 1.
    pub claimed: BigInt,
}

/// Lexicographically smallest `(n, k, l)` with `n <= n_max` and `S(n,k,l) != 1`.
pub fn find_star_violation(n_max: u64) -> Result<Option<StarViolation>> {
    find_star_violation_in(n_max, 1..=u64::MAX)
}

/// As [`find_star_violation`], restricted to `l` in `ells`.
pub fn find_star_violation_in(
    n_max: u64,
    ells: std::ops::RangeInclusive<u64>,
) -> Result<Option<StarViolation>> {
    if n_max < 3 {
        return Err(Error::invalid("n_max must be at least 3"));
    }
    for n in 2..=n_max {
        for k in 0..n {
            for l in 1..n - k + 1 {
                if l >= n || !ells.contains(&l) {
                    continue;
                }
                let lhs = alternating_sum(n, k, l)?;
                if !lhs.is_one() {
                    return Ok(Some(StarViolation {
                        n,
                        k,
                        l,
                        lhs,
                        claimed: BigInt::one(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// `sum_{j=0}^{r} G(a, r-j) G(b, j) - G(a+b, r)`; zero for every `a`, `b`, `r`.
pub fn chu_vandermonde_check(a: &BigInt, b: &BigInt, r: u64) -> BigInt {
    let (lhs, rhs) = chu_vandermonde_sides(a, b, r);
    lhs - rhs
}

fn chu_vandermonde_sides(a: &BigInt, b: &BigInt, r: u64) -> (BigInt, BigInt) {
    let lhs = (0..=r)
        .map(|j| generalized_binomial(a, r - j) * generalized_binomial(b, j))
        .sum();
    (lhs, generalized_binomial(&(a + b), r))
}

/// Chu–Vandermonde over `|a|, |b| <= bound`, `0 <= r <= bound`.
pub fn chu_vandermonde_sweep(bound: i64) -> Result<IdentityReport> {
    if bound < 0 {
        return Err(Error::invalid("bound must be non-negative"));
    }
    let cases = (-bound..=bound)
        .into_par_iter()
        .flat_map_iter(|a| {
            (-bound..=bound).flat_map(move |b| (0..=bound).map(move |r| (a, b, r)))
        })
        .map(|(a, b, r)| {
            let (lhs, rhs) = chu_vandermonde_sides(&a.into(), &b.into(), r as u64);
            IdentityCase {
                params: [a, b, r],
                lhs,
                rhs,
            }
        })
        .collect();
    Ok(IdentityReport::new(
        IdentityId::ChuVandermonde,
        format!("|a|, |b| <= {bound}, 0 <= r <= {bound}"),
        cases,
    ))
}
