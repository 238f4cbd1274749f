//! Exact rational arithmetic for q-objects and truncated series in `a^2`.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::{QzError, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator. Every verification path in the crate runs on this
/// type; no floating point is involved.
pub type ExactRational = num::BigRational;

/// Shorthand for small rational literals in code and tests.
pub fn rat(num: i64, den: i64) -> ExactRational {
    ExactRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

/// Parse `"p"` or `"p/r"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| QzError::ParseRational(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(ExactRational::from_integer(parse_int(s)?)),
        Some((p, r)) => {
            let den = parse_int(r)?;
            if den.is_zero() {
                return Err(QzError::ParseRational(s.to_string()));
            }
            Ok(ExactRational::new(parse_int(p)?, den))
        }
    }
}

/// `x^e` for any integer exponent, including negative ones (`x != 0`).
pub fn qpow(x: &ExactRational, e: i64) -> ExactRational {
    if e == 0 {
        return ExactRational::one();
    }
    let mut base = if e < 0 { x.recip() } else { x.clone() };
    let mut e = e.unsigned_abs();
    let mut acc = ExactRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// `10^(-digits)` as an exact rational.
pub fn ten_pow_neg(digits: u32) -> ExactRational {
    ExactRational::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}

/// Render an exact rational as a decimal string with `digits` fractional
/// digits, rounded to nearest (ties away from zero).
pub fn to_decimal_string(x: &ExactRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = x * ExactRational::from_integer(scale);
    // round half away from zero: floor(|x| + 1/2) with the sign reattached
    let two = BigInt::from(2);
    let mag = (scaled.numer().abs() * &two + scaled.denom()) / (scaled.denom() * &two);
    let neg = scaled.is_negative() && !mag.is_zero();
    let digits_str = mag.to_string();
    let d = digits as usize;
    let (int_part, frac_part) = if digits_str.len() > d {
        let split = digits_str.len() - d;
        (digits_str[..split].to_string(), digits_str[split..].to_string())
    } else {
        ("0".to_string(), format!("{:0>width$}", digits_str, width = d))
    };
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Which side of `|q| = 1` the context lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `|q| < 1`: the convergent-series regime.
    Inside,
    /// `|q| > 1`: used by the zeta(3) certificates before the `q -> 1/q`
    /// rewrite.
    Outside,
}

/// A fixed rational value of q plus the precision/truncation policy shared
/// by every summation in the crate.
#[derive(Debug, Clone)]
pub struct QContext {
    q: ExactRational,
    regime: Regime,
    target_digits: u32,
    max_terms: u64,
}

impl QContext {
    pub fn new(q: ExactRational, target_digits: u32, max_terms: u64) -> Result<Self> {
        if q.is_zero() {
            return Err(QzError::Precondition("q must be nonzero".into()));
        }
        if q.abs() == ExactRational::one() {
            return Err(QzError::Precondition("|q| must differ from 1".into()));
        }
        if target_digits == 0 || max_terms == 0 {
            return Err(QzError::Precondition(
                "target_digits and max_terms must be >= 1".into(),
            ));
        }
        let regime = if q.abs() < ExactRational::one() {
            Regime::Inside
        } else {
            Regime::Outside
        };
        Ok(Self {
            q,
            regime,
            target_digits,
            max_terms,
        })
    }

    pub fn q(&self) -> &ExactRational {
        &self.q
    }

    /// `q^e` for any integer exponent.
    pub fn q_pow(&self, e: i64) -> ExactRational {
        qpow(&self.q, e)
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }

    /// The accuracy target `10^(-target_digits)`.
    pub fn eps(&self) -> ExactRational {
        ten_pow_neg(self.target_digits)
    }

    /// Same q and budget, different digit target.
    pub fn with_digits(&self, target_digits: u32) -> Self {
        Self {
            target_digits,
            ..self.clone()
        }
    }

    pub fn require_inside(&self) -> Result<()> {
        if self.regime == Regime::Inside && self.q.is_positive() {
            Ok(())
        } else {
            Err(QzError::Precondition("requires 0 < q < 1".into()))
        }
    }

    pub fn require_outside(&self) -> Result<()> {
        if self.regime == Regime::Outside && self.q.is_positive() {
            Ok(())
        } else {
            Err(QzError::Precondition("requires q > 1".into()))
        }
    }
}

/// q-integer `[n]_q = (1 - q^n)/(1 - q)`.
pub fn q_number(n: u64, ctx: &QContext) -> Result<ExactRational> {
    if n == 0 {
        return Err(QzError::Precondition("q_number requires n >= 1".into()));
    }
    let one = ExactRational::one();
    Ok((&one - ctx.q_pow(n as i64)) / (&one - ctx.q()))
}

/// q-Pochhammer symbol `(x; q)_n = prod_{j=0}^{n-1} (1 - x q^j)`.
pub fn q_pochhammer(x: &ExactRational, n: u64, ctx: &QContext) -> ExactRational {
    let mut acc = ExactRational::one();
    let mut xq = x.clone();
    for _ in 0..n {
        acc *= ExactRational::one() - &xq;
        xq *= ctx.q();
    }
    acc
}

/// Gaussian binomial coefficient `[n k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k})`.
pub fn q_binomial(n: u64, k: u64, ctx: &QContext) -> Result<ExactRational> {
    if k > n {
        return Err(QzError::Precondition(format!(
            "q_binomial requires n >= k >= 0, got n={n}, k={k}"
        )));
    }
    let q = ctx.q().clone();
    let top = q_pochhammer(&q, n, ctx);
    let bottom = q_pochhammer(&q, k, ctx) * q_pochhammer(&q, n - k, ctx);
    Ok(top / bottom)
}

/// The paired product `(q + c; q)_n (q - c; q)_n
/// = prod_{j=0}^{n-1} ((1 - q^{j+1})^2 - c^2 q^{2j})`.
pub fn poch_pair(c: &ExactRational, n: u64, ctx: &QContext) -> ExactRational {
    let one = ExactRational::one();
    let c2 = c * c;
    let mut acc = ExactRational::one();
    for j in 0..n as i64 {
        let f = &one - ctx.q_pow(j + 1);
        acc *= &f * &f - &c2 * ctx.q_pow(2 * j);
    }
    acc
}

/// Same paired product with `c^2` given as a truncated series in `a^2`
/// (e.g. `c = a q (1-q)` enters only through `c^2 = a^2 q^2 (1-q)^2`).
pub fn poch_pair_series(c_squared: &SeriesInA, n: u64, ctx: &QContext) -> Result<SeriesInA> {
    let order = c_squared.order();
    let one = ExactRational::one();
    let mut acc = SeriesInA::constant(ExactRational::one(), order);
    for j in 0..n as i64 {
        let f = &one - ctx.q_pow(j + 1);
        let factor = SeriesInA::constant(&f * &f, order)
            .sub(&c_squared.scale(&ctx.q_pow(2 * j)))?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Truncated power series in `a^2`: `coeffs[k]` is the coefficient of
/// `a^(2k)`. The truncation order is closed under all ring operations.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesInA {
    coeffs: Vec<ExactRational>,
}

/// Ring operation selector for [`series_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Div,
}

impl SeriesInA {
    pub fn from_coeffs(coeffs: Vec<ExactRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(QzError::Precondition(
                "a series needs at least the a^0 coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn constant(c: ExactRational, order: usize) -> Self {
        let mut coeffs = vec![ExactRational::zero(); order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![ExactRational::zero(); order + 1],
        }
    }

    /// Truncation order K: coefficients run over `a^0 .. a^(2K)`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &ExactRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn check_order(&self, rhs: &Self) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(QzError::OrderMismatch {
                lhs: self.order(),
                rhs: rhs.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let order = self.order();
        let mut coeffs = vec![ExactRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Self { coeffs })
    }

    /// Truncated division; the divisor must have a nonzero constant term.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        if rhs.coeffs[0].is_zero() {
            return Err(QzError::SeriesDivisionByZero);
        }
        let order = self.order();
        let inv0 = rhs.coeffs[0].recip();
        let mut out = vec![ExactRational::zero(); order + 1];
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &rhs.coeffs[j] * &out[k - j];
            }
            out[k] = acc * &inv0;
        }
        Ok(Self { coeffs: out })
    }

    /// Evaluate the series at a concrete value of `a^2`.
    pub fn eval_at_a_squared(&self, a2: &ExactRational) -> ExactRational {
        let mut acc = ExactRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * a2 + c;
        }
        acc
    }
}

/// Truncated ring operation on two series of equal order.
pub fn series_arith(lhs: &SeriesInA, rhs: &SeriesInA, op: SeriesOp) -> Result<SeriesInA> {
    match op {
        SeriesOp::Add => lhs.add(rhs),
        SeriesOp::Mul => lhs.mul(rhs),
        SeriesOp::Div => lhs.div(rhs),
    }
}
