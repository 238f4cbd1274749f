//! Small exact polynomial types for kernel shift-ratios: univariate in
//! `y = q^k` (used by the per-n solver) and bivariate in `(x, y) = (q^n, q^k)`.

use num::{One, Zero};

use crate::qcore::{qpow, ExactRational};

/// Dense univariate polynomial over exact rationals, variable `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<ExactRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(ExactRational::zero());
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn one() -> Self {
        Self::new(vec![ExactRational::one()])
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> ExactRational {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `y^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = vec![ExactRational::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Self::new(out)
    }

    /// `p(c * y)`: scale the argument, i.e. `coeffs[j] *= c^j`.
    pub fn scale_arg(&self, c: &ExactRational) -> Self {
        let mut cj = ExactRational::one();
        Self::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let out = a * &cj;
                    cj *= c;
                    out
                })
                .collect(),
        )
    }

    pub fn eval(&self, y: &ExactRational) -> ExactRational {
        let mut acc = ExactRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c;
        }
        acc
    }
}

/// Sparse bivariate polynomial over exact rationals in `(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2 {
    // sorted by (x-power, y-power), coefficients nonzero
    terms: Vec<(u32, u32, ExactRational)>,
}

impl Poly2 {
    pub fn from_terms(terms: Vec<(u32, u32, ExactRational)>) -> Self {
        let mut map: std::collections::BTreeMap<(u32, u32), ExactRational> = Default::default();
        for (i, j, c) in terms {
            *map.entry((i, j)).or_insert_with(ExactRational::zero) += c;
        }
        Self {
            terms: map
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((i, j), c)| (i, j, c))
                .collect(),
        }
    }

    pub fn zero() -> Self {
        Self { terms: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::from_terms(vec![(0, 0, c)])
    }

    pub fn term(i: u32, j: u32, c: ExactRational) -> Self {
        Self::from_terms(vec![(i, j, c)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        Self::from_terms(terms)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().map(|(i, j, c)| (*i, *j, -c)));
        Self::from_terms(terms)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (i1, j1, c1) in &self.terms {
            for (i2, j2, c2) in &rhs.terms {
                terms.push((i1 + i2, j1 + j2, c1 * c2));
            }
        }
        Self::from_terms(terms)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(i, j, a)| (*i, *j, a * c)).collect())
    }

    pub fn eval(&self, x: &ExactRational, y: &ExactRational) -> ExactRational {
        let mut acc = ExactRational::zero();
        for (i, j, c) in &self.terms {
            acc += c * qpow(x, *i as i64) * qpow(y, *j as i64);
        }
        acc
    }

    /// Substitute a concrete x, leaving a univariate polynomial in y.
    pub fn eval_x(&self, x: &ExactRational) -> Poly {
        let max_j = self.terms.iter().map(|(_, j, _)| *j).max().unwrap_or(0) as usize;
        let mut coeffs = vec![ExactRational::zero(); max_j + 1];
        for (i, j, c) in &self.terms {
            coeffs[*j as usize] += c * qpow(x, *i as i64);
        }
        Poly::new(coeffs)
    }
}

/// Ratio of two bivariate polynomials; denominators are checked at every
/// evaluation point.
#[derive(Debug, Clone, PartialEq)]
pub struct RatFunc2 {
    pub num: Poly2,
    pub den: Poly2,
}

impl RatFunc2 {
    pub fn new(num: Poly2, den: Poly2) -> Self {
        Self { num, den }
    }

    /// Evaluate; `None` when the denominator vanishes.
    pub fn eval(&self, x: &ExactRational, y: &ExactRational) -> Option<ExactRational> {
        let d = self.den.eval(x, y);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x, y) / d)
    }
}
