//! Defining series for q-zeta values with rigorous, cheap tail bounds.
//!
//! Each summand here decays at least geometrically; the stopping rule
//! dominates the tail by `C * r^n` with `C`, `r` read off the summand and
//! bounds the remainder in closed form. The accelerated counterparts live
//! in [`crate::accel`].

use num::{One, Signed, Zero};

use crate::qcore::{int, q_number, rat, ten_pow_neg, ExactRational, QContext, SeriesInA};
use crate::{QzError, Result};

/// A partial sum together with how it was obtained and a rigorous bound on
/// the truncation error.
#[derive(Debug, Clone)]
pub struct SumResult {
    pub value: ExactRational,
    pub terms_used: u64,
    pub tail_bound: ExactRational,
}

/// How to bound the tail of a series.
#[derive(Debug, Clone)]
pub(crate) enum TailRule {
    /// `|term(n)| <= c * r^n` for every n from the start index on; the tail
    /// after summing through N is `c * r^(N+1) / (1 - r)`.
    Geometric { c: ExactRational, r: ExactRational },
    /// Stop once the next term has shrunk below `ratio_cap` times its
    /// predecessor; the tail is bounded by `|t_next| / (1 - ratio_cap)`,
    /// a crude but sufficient rule for terms decaying like `q^(c*n^2)`.
    NextTerm { ratio_cap: ExactRational },
}

/// Sum `term(start) + term(start+1) + ...` until the tail rule certifies
/// the remainder below `eps`. Terms are requested strictly sequentially,
/// so the closure may carry running-product state.
pub(crate) fn sum_series<F>(
    mut term: F,
    start: u64,
    rule: &TailRule,
    eps: &ExactRational,
    max_terms: u64,
) -> Result<SumResult>
where
    F: FnMut(u64) -> Result<ExactRational>,
{
    match rule {
        TailRule::Geometric { c, r } => {
            if !(r.abs() < ExactRational::one()) {
                return Err(QzError::Precondition("geometric ratio must satisfy |r| < 1".into()));
            }
            let one_minus_r = ExactRational::one() - r;
            let mut value = ExactRational::zero();
            let mut rpow = pow_u(r, start);
            let mut n = start;
            loop {
                value += term(n)?;
                rpow *= r;
                let tail = c * &rpow / &one_minus_r;
                if tail < *eps {
                    return Ok(SumResult {
                        value,
                        terms_used: n - start + 1,
                        tail_bound: tail,
                    });
                }
                n += 1;
                if n - start >= max_terms {
                    return Err(QzError::MaxTermsExhausted {
                        terms: n - start,
                        tail_bound: tail.to_string(),
                    });
                }
            }
        }
        TailRule::NextTerm { ratio_cap } => {
            if !(ratio_cap.is_positive() && ratio_cap < &ExactRational::one()) {
                return Err(QzError::Precondition("ratio cap must lie in (0,1)".into()));
            }
            let denom = ExactRational::one() - ratio_cap;
            let mut prev = term(start)?;
            let mut value = prev.clone();
            let mut n = start + 1;
            loop {
                let t = term(n)?;
                let ratio_ok = t.abs() <= ratio_cap * prev.abs();
                if ratio_ok {
                    let tail = t.abs() / &denom;
                    if tail < *eps {
                        return Ok(SumResult {
                            value,
                            terms_used: n - start,
                            tail_bound: tail,
                        });
                    }
                }
                value += &t;
                prev = t;
                n += 1;
                if n - start > max_terms {
                    return Err(QzError::MaxTermsExhausted {
                        terms: n - start - 1,
                        tail_bound: prev.abs().to_string(),
                    });
                }
            }
        }
    }
}

fn pow_u(x: &ExactRational, e: u64) -> ExactRational {
    let mut acc = ExactRational::one();
    let mut base = x.clone();
    let mut e = e;
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

/// The default ratio cap for next-term tail rules: halfway between the
/// asymptotic term ratio of the slowest series in the given context and 1.
pub(crate) fn default_ratio_cap(ctx: &QContext) -> ExactRational {
    let q = ctx.q();
    let r = if q.abs() < ExactRational::one() {
        q.abs()
    } else {
        q.abs().recip()
    };
    (ExactRational::one() + r) / int(2)
}

/// Naive q-zeta series `zeta[s] = sum_{n>=1} q^(n(s-1)) / [n]_q^s`.
pub fn zeta_q_naive(s: u32, ctx: &QContext) -> Result<SumResult> {
    zeta_q_naive_eps(s, ctx, &ctx.eps())
}

pub(crate) fn zeta_q_naive_eps(s: u32, ctx: &QContext, eps: &ExactRational) -> Result<SumResult> {
    ctx.require_inside()?;
    if s < 2 {
        return Err(QzError::Precondition("zeta_q_naive requires s >= 2".into()));
    }
    let r = ctx.q_pow((s - 1) as i64);
    let rule = TailRule::Geometric {
        c: ExactRational::one(),
        r,
    };
    let ctx2 = ctx.clone();
    sum_series(
        move |n| {
            let qn = ctx2.q_pow((n as i64) * (s as i64 - 1));
            let m = q_number(n, &ctx2)?;
            Ok(qn / pow_u(&m, s as u64))
        },
        1,
        &rule,
        eps,
        ctx.max_terms(),
    )
}

/// Left-hand side of the generating-function identity at a concrete `a`:
/// `sum_{n>=1} q^n / ([n]_q^2 - a^2 q^(2n))`.
pub fn genfunc_lhs_numeric(a: &ExactRational, ctx: &QContext) -> Result<SumResult> {
    genfunc_lhs_numeric_eps(a, ctx, &ctx.eps())
}

pub(crate) fn genfunc_lhs_numeric_eps(
    a: &ExactRational,
    ctx: &QContext,
    eps: &ExactRational,
) -> Result<SumResult> {
    ctx.require_inside()?;
    if !(a.abs() < ExactRational::one()) {
        return Err(QzError::Precondition("genfunc_lhs_numeric requires |a| < 1".into()));
    }
    // [n]_q >= 1 and a^2 q^(2n) <= a^2 q^2, so every denominator is at
    // least 1 - a^2 q^2 > 0.
    let a2 = a * a;
    let floor = ExactRational::one() - &a2 * ctx.q_pow(2);
    let rule = TailRule::Geometric {
        c: floor.recip(),
        r: ctx.q().clone(),
    };
    let ctx2 = ctx.clone();
    sum_series(
        move |n| {
            let m = q_number(n, &ctx2)?;
            let den = &m * &m - &a2 * ctx2.q_pow(2 * n as i64);
            Ok(ctx2.q_pow(n as i64) / den)
        },
        1,
        &rule,
        eps,
        ctx.max_terms(),
    )
}

/// A truncated series result: the coefficients plus a tail bound that
/// applies to every coefficient individually.
#[derive(Debug, Clone)]
pub struct SeriesResult {
    pub series: SeriesInA,
    pub terms_used: u64,
    pub tail_bound: ExactRational,
}

/// Expand the generating-function LHS in powers of `a^2` up to order K:
/// the coefficient of `a^(2k)` converges to `zeta[2k+2]`.
pub fn genfunc_lhs_series(k_order: usize, ctx: &QContext) -> Result<SeriesResult> {
    ctx.require_inside()?;
    // Coefficient k of the n-th summand is q^(n(2k+1)) / [n]^(2k+2), which
    // is at most q^n uniformly in k, so one geometric bound serves all
    // coefficients.
    let eps = ctx.eps();
    let one_minus_q = ExactRational::one() - ctx.q();
    let mut acc = SeriesInA::zero(k_order);
    let mut n: u64 = 0;
    loop {
        n += 1;
        if n > ctx.max_terms() {
            return Err(QzError::MaxTermsExhausted {
                terms: n - 1,
                tail_bound: "geometric tail above target".into(),
            });
        }
        let m = q_number(n, ctx)?;
        let q2n = ctx.q_pow(2 * n as i64);
        // q^n / ([n]^2 - a^2 q^(2n)) as a truncated series
        let numer = SeriesInA::constant(ctx.q_pow(n as i64), k_order);
        let mut den_coeffs = vec![ExactRational::zero(); k_order + 1];
        den_coeffs[0] = &m * &m;
        if k_order >= 1 {
            den_coeffs[1] = -q2n;
        }
        let den = SeriesInA::from_coeffs(den_coeffs)?;
        acc = acc.add(&numer.div(&den)?)?;
        let tail = ctx.q_pow(n as i64 + 1) / &one_minus_q;
        if tail < eps {
            return Ok(SeriesResult {
                series: acc,
                terms_used: n,
                tail_bound: tail,
            });
        }
    }
}

/// The companion q-analogue target `sum_{n>=1} q^n / [n]_q^3`.
pub fn zeta3_alt_naive(ctx: &QContext) -> Result<SumResult> {
    zeta3_alt_naive_eps(ctx, &ctx.eps())
}

pub(crate) fn zeta3_alt_naive_eps(ctx: &QContext, eps: &ExactRational) -> Result<SumResult> {
    ctx.require_inside()?;
    let rule = TailRule::Geometric {
        c: ExactRational::one(),
        r: ctx.q().clone(),
    };
    let ctx2 = ctx.clone();
    sum_series(
        move |n| {
            let m = q_number(n, &ctx2)?;
            Ok(ctx2.q_pow(n as i64) / (&m * &m * &m))
        },
        1,
        &rule,
        eps,
        ctx.max_terms(),
    )
}

/// pi^2/6 to 55 decimal digits, for the q -> 1 sanity report.
const ZETA2_DECIMAL: &str =
    "1.6449340668482264364724151666460251892189499012067984377";

/// Classical zeta oracle for the q -> 1 limit checks. `s = 2` returns a
/// rational approximation of pi^2/6; `s = 3` sums Markov's accelerated
/// series `(5/2) sum (-1)^(k-1) / (k^3 binom(2k,k))` in exact arithmetic.
pub fn classical_zeta_oracle(s: u32) -> Result<SumResult> {
    match s {
        2 => {
            let (ip, fp) = ZETA2_DECIMAL.split_once('.').unwrap();
            let digits = fp.len() as u32;
            let scaled: num::BigInt = format!("{ip}{fp}").parse().unwrap();
            let value = ExactRational::new(scaled, num::BigInt::from(10u32).pow(digits));
            Ok(SumResult {
                value,
                terms_used: 0,
                tail_bound: ten_pow_neg(digits),
            })
        }
        3 => {
            let rule = TailRule::NextTerm { ratio_cap: rat(1, 2) };
            let mut binom = ExactRational::one(); // binom(2k, k), updated incrementally
            sum_series(
                move |k| {
                    let ki = k as i64;
                    // binom(2k,k) = binom(2k-2,k-1) * 2(2k-1)/k
                    binom *= rat(2 * (2 * ki - 1), ki);
                    let sign = if k % 2 == 1 { int(1) } else { int(-1) };
                    Ok(rat(5, 2) * sign / (int(ki * ki * ki) * &binom))
                },
                1,
                &rule,
                &ten_pow_neg(40),
                10_000,
            )
        }
        _ => Err(QzError::Unsupported(format!(
            "classical_zeta_oracle supports s in {{2, 3}}, got {s}"
        ))),
    }
}

/// Loose q -> 1 sanity report: evaluates `zeta[2]` at q close to 1 in f64
/// (a rendering-only path; no exact guarantee intended) and returns
/// `(value, |value - pi^2/6|)`.
pub fn zeta2_limit_report(q: f64) -> (f64, f64) {
    assert!(q > 0.0 && q < 1.0);
    let mut sum = 0.0f64;
    let mut qn = 1.0f64;
    let mut n = 0u64;
    loop {
        n += 1;
        qn *= q;
        let m = (1.0 - qn) / (1.0 - q);
        let term = qn / (m * m);
        sum += term;
        if term < 1e-17 && n > 10 {
            break;
        }
    }
    let zeta2 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
    (sum, (sum - zeta2).abs())
}
