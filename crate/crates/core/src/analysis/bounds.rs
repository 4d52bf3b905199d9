//! Closed-form bound evaluators.
//!
//! Factorials and tail probabilities are exact (arbitrary-precision
//! integers and rationals); logarithmic forms are evaluated in double
//! precision under the documented assumption that `f64` log/pow carry at
//! most ~1e-12 relative error, which is orders of magnitude below every
//! margin these bounds are compared against.

use alloc::format;
use alloc::string::String;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Float, One, Zero};

/// Minimum admissible coefficient for the random-order mean bounds:
/// `2e / (e - log2 e)` rounded to the conventional display value.
pub const RANDOM_ORDER_COEFF_MIN: f64 = 4.262;

/// The exact coefficient threshold `2e / (e - log2 e)` (≈ 4.26201).
pub fn random_order_coeff_exact() -> f64 {
    let e = core::f64::consts::E;
    2.0 * e / (e - core::f64::consts::LOG2_E)
}

/// A bound request: which closed form, at which parameters.
///
/// Kind names as used by the CLI are in comments.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    /// `first-fit-tail`: n^2 / ell!  — probability that a first-fit run on
    /// a random-order tree uses a color >= ell.
    FirstFitTail { n: u64, ell: u32 },
    /// `parity-first-fit-tail`: k^2 / floor((ell-3)/4)! for ell >= 7.
    ParityFirstFitTail { k: u64, ell: u32 },
    /// `factorial-tail-sum`: 2 / s!  — upper bound for `sum_{l>=s} 1/l!`.
    FactorialTailSum { s: u32 },
    /// `factorial-power`: n^(c (1 - log2(e)/e)) for c >= e — the power of n
    /// that ell! dominates once ell >= c log n / log log n.
    FactorialPower { c: f64, n: u64 },
    /// `first-fit-mean`: c log n / log log n + 3 for c >= 4.262.
    FirstFitMean { c: f64, n: u64 },
    /// `parity-first-fit-mean`: 4 c log k / log log k + 71 for c >= 4.262.
    ParityFirstFitMean { c: f64, k: u64 },
    /// `advice-first-fit-errors`: log k + 3 for k >= 1.
    AdviceFirstFitErrors { k: u64 },
    /// `advice-first-fit-size`: log n + 3 - log 3.
    AdviceFirstFitSize { n: u64 },
    /// `advice-cbip-errors`: 2 log k + 4 for k >= 1.
    AdviceCbipErrors { k: u64 },
    /// `advice-cbip-size`: 2 log n - 1.64 for n >= 1500.
    AdviceCbipSize { n: u64 },
    /// `advice-cbip-size-any`: 2 log(n+2) + 3 - 2 log 5, valid for all n.
    AdviceCbipSizeAny { n: u64 },
    /// `cbip-size`: 2 log n - 1.999 for n >= 5770.
    CbipSize { n: u64 },
    /// `cbip-size-any`: 2 log(n+2) - 2, valid for all n.
    CbipSizeAny { n: u64 },
}

/// Evaluated bound: exact rational where the form is rational, double
/// precision otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue {
    Exact(BigRational),
    Float(f64),
}

impl BoundValue {
    /// Lossy view for report columns; exact values convert through f64.
    pub fn as_f64(&self) -> f64 {
        match self {
            BoundValue::Float(x) => *x,
            BoundValue::Exact(r) => rational_to_f64(r),
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Float(x) => write!(f, "{x}"),
            BoundValue::Exact(r) => write!(f, "{r}"),
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // Good enough for display/report purposes on the magnitudes used here.
    let num = big_to_f64(r.numer());
    let den = big_to_f64(r.denom());
    num / den
}

fn big_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// A parameter outside a bound's stated domain; names the violated
/// condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainError {
    pub condition: String,
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parameter outside bound domain: requires {}", self.condition)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DomainError {}

fn require(ok: bool, condition: &str) -> Result<(), DomainError> {
    if ok {
        Ok(())
    } else {
        Err(DomainError {
            condition: String::from(condition),
        })
    }
}

/// Exact factorial.
pub fn factorial(n: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=u64::from(n) {
        acc *= i;
    }
    acc
}

fn log2(x: f64) -> f64 {
    Float::log2(x)
}

/// Evaluates a bound at its parameters, rejecting out-of-domain requests.
pub fn evaluate(bound: &Bound) -> Result<BoundValue, DomainError> {
    match *bound {
        Bound::FirstFitTail { n, ell } => {
            require(n >= 1, "n >= 1")?;
            require(ell >= 1, "ell >= 1")?;
            let num = BigInt::from(n) * BigInt::from(n);
            let den = BigInt::from(factorial(ell));
            Ok(BoundValue::Exact(BigRational::new(num, den)))
        }
        Bound::ParityFirstFitTail { k, ell } => {
            require(ell >= 7, "ell >= 7")?;
            let num = BigInt::from(k) * BigInt::from(k);
            let den = BigInt::from(factorial((ell - 3) / 4));
            Ok(BoundValue::Exact(BigRational::new(num, den)))
        }
        Bound::FactorialTailSum { s } => {
            require(s >= 1, "s >= 1")?;
            let num = BigInt::from(2);
            let den = BigInt::from(factorial(s));
            Ok(BoundValue::Exact(BigRational::new(num, den)))
        }
        Bound::FactorialPower { c, n } => {
            require(c >= core::f64::consts::E, "c >= e")?;
            require(n >= 2, "n >= 2")?;
            let exponent = c * (1.0 - core::f64::consts::LOG2_E / core::f64::consts::E);
            Ok(BoundValue::Float(Float::powf(n as f64, exponent)))
        }
        Bound::FirstFitMean { c, n } => {
            require(c >= RANDOM_ORDER_COEFF_MIN, "c >= 4.262")?;
            require(n >= 3, "n >= 3 (log log n must be positive)")?;
            let ln = log2(n as f64);
            Ok(BoundValue::Float(c * ln / log2(ln) + 3.0))
        }
        Bound::ParityFirstFitMean { c, k } => {
            require(c >= RANDOM_ORDER_COEFF_MIN, "c >= 4.262")?;
            require(k >= 3, "k >= 3 (log log k must be positive)")?;
            let lk = log2(k as f64);
            Ok(BoundValue::Float(4.0 * c * lk / log2(lk) + 71.0))
        }
        Bound::AdviceFirstFitErrors { k } => {
            require(k >= 1, "k >= 1")?;
            Ok(BoundValue::Float(log2(k as f64) + 3.0))
        }
        Bound::AdviceFirstFitSize { n } => {
            require(n >= 1, "n >= 1")?;
            Ok(BoundValue::Float(log2(n as f64) + 3.0 - log2(3.0)))
        }
        Bound::AdviceCbipErrors { k } => {
            require(k >= 1, "k >= 1")?;
            Ok(BoundValue::Float(2.0 * log2(k as f64) + 4.0))
        }
        Bound::AdviceCbipSize { n } => {
            require(n >= 1500, "n >= 1500")?;
            Ok(BoundValue::Float(2.0 * log2(n as f64) - 1.64))
        }
        Bound::AdviceCbipSizeAny { n } => {
            require(n >= 1, "n >= 1")?;
            Ok(BoundValue::Float(
                2.0 * log2((n + 2) as f64) + 3.0 - 2.0 * log2(5.0),
            ))
        }
        Bound::CbipSize { n } => {
            require(n >= 5770, "n >= 5770")?;
            Ok(BoundValue::Float(2.0 * log2(n as f64) - 1.999))
        }
        Bound::CbipSizeAny { n } => {
            require(n >= 1, "n >= 1")?;
            Ok(BoundValue::Float(2.0 * log2((n + 2) as f64) - 2.0))
        }
    }
}

/// Rigorous check that `sum_{l >= s} 1/l! <= 2/s!`.
///
/// The infinite sum is bracketed by an exact partial sum up to `s + 40` plus
/// the exact geometric majorant of the remainder:
/// `sum_{l > M} 1/l! <= (1/(M+1)!) * (M+2)/(M+1)`.
pub fn factorial_tail_sum_holds(s: u32) -> bool {
    let m = s + 40;
    let mut partial = BigRational::zero();
    for l in s..=m {
        partial += BigRational::new(BigInt::one(), BigInt::from(factorial(l)));
    }
    let remainder = BigRational::new(
        BigInt::from(m + 2),
        BigInt::from(factorial(m + 1)) * BigInt::from(m + 1),
    );
    let upper = partial + remainder;
    let bound = BigRational::new(BigInt::from(2), BigInt::from(factorial(s)));
    upper <= bound
}

/// Outcome of checking that `ell! >= n^(c (1 - log2(e)/e))` at
/// `ell = ceil(c log n / log log n)`.
#[derive(Clone, Debug)]
pub struct FactorialPowerCheck {
    pub ell: u32,
    pub rhs: f64,
    pub holds: bool,
}

/// Verifies the factorial-growth inequality on concrete parameters: the
/// factorial side is exact; the power side is an f64 converted exactly to a
/// rational before comparison.
pub fn factorial_power_check(c: f64, n: u64) -> Result<FactorialPowerCheck, DomainError> {
    require(c >= core::f64::consts::E, "c >= e")?;
    require(n >= 4, "n >= 4 (log log n must be positive)")?;
    let ln = log2(n as f64);
    let ell = Float::ceil(c * ln / log2(ln)) as u32;
    let rhs = match evaluate(&Bound::FactorialPower { c, n })? {
        BoundValue::Float(x) => x,
        BoundValue::Exact(_) => unreachable!("factorial-power is a float bound"),
    };
    let rhs_exact = BigRational::from_float(rhs).ok_or(DomainError {
        condition: format!("finite rhs (got {rhs})"),
    })?;
    let lhs = BigRational::from_integer(BigInt::from(factorial(ell)));
    Ok(FactorialPowerCheck {
        ell,
        rhs,
        holds: lhs >= rhs_exact,
    })
}
