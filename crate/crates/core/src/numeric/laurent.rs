//! Laurent polynomials with exact rational coefficients.
//!
//! A symbol `Σ β_j c^j` is stored as a lowest exponent plus a dense coefficient
//! vector. Leading and trailing zeros are always trimmed; the zero polynomial
//! has no coefficients.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::numeric::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    lowest_degree: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPolynomial {
    /// Builds `Σ coeffs[i] c^(lowest_degree + i)` and trims zero ends.
    pub fn new(lowest_degree: i64, coeffs: Vec<Rational>) -> Self {
        let mut p = LaurentPolynomial {
            lowest_degree,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        LaurentPolynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPolynomial::new(0, vec![c])
    }

    pub fn monomial(coeff: Rational, degree: i64) -> Self {
        LaurentPolynomial::new(degree, vec![coeff])
    }

    /// `(1 + c + ... + c^(s-1)) / s`.
    pub fn smoothing_factor(arity: usize) -> Self {
        let w = Rational::new(1, arity as i64);
        LaurentPolynomial::new(0, vec![w; arity])
    }

    fn trim(&mut self) {
        let Some(first) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            self.coeffs.clear();
            self.lowest_degree = 0;
            return;
        };
        let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        self.coeffs.truncate(last + 1);
        self.coeffs.drain(..first);
        self.lowest_degree += first as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lowest_degree(&self) -> i64 {
        self.lowest_degree
    }

    /// Exponent of the highest nonzero term. Zero polynomial reports `lowest_degree - 1`.
    pub fn highest_degree(&self) -> i64 {
        self.lowest_degree + self.coeffs.len() as i64 - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `highest - lowest` for nonzero polynomials, `None` for zero.
    pub fn degree_span(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.coeffs.len() - 1)
    }

    /// Coefficient of `c^degree` (zero outside the stored range).
    pub fn coeff(&self, degree: i64) -> Rational {
        let idx = degree - self.lowest_degree;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Rational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Same coefficients shifted to start at `c^0`.
    pub fn normalized(&self) -> Self {
        LaurentPolynomial {
            lowest_degree: 0,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn shifted(&self, by: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPolynomial {
            lowest_degree: self.lowest_degree + by,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        LaurentPolynomial::new(
            self.lowest_degree,
            self.coeffs.iter().map(|c| c * k).collect(),
        )
    }

    /// Sum of all coefficients, i.e. the value at `c = 1`.
    pub fn value_at_one(&self) -> Rational {
        self.coeffs.iter().sum()
    }

    pub fn multiply(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || other.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPolynomial::new(self.lowest_degree + other.lowest_degree, out)
    }

    /// `a(c^k)`.
    pub fn substitute_power(&self, k: usize) -> LaurentPolynomial {
        assert!(k >= 1, "substitute_power needs k >= 1");
        if self.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        LaurentPolynomial::new(self.lowest_degree * k as i64, out)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    ///
    /// # Panics
    /// Panics if `divisor` is the zero polynomial.
    pub fn try_divide(&self, divisor: &LaurentPolynomial) -> Option<LaurentPolynomial> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(LaurentPolynomial::zero());
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return None;
        }
        // Both ends are nonzero, so the quotient must span exactly the length difference.
        let mut rem = self.coeffs.clone();
        let n = divisor.coeffs.len();
        let qlen = rem.len() - n + 1;
        let lead = divisor.coeffs.last().unwrap();
        let mut q = vec![Rational::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + n - 1] / lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &(&c * d);
                }
            }
            q[i] = c;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return None;
        }
        Some(LaurentPolynomial::new(
            self.lowest_degree - divisor.lowest_degree,
            q,
        ))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lowest_degree.min(rhs.lowest_degree);
        let hi = self.highest_degree().max(rhs.highest_degree());
        let coeffs = (lo..=hi).map(|d| self.coeff(d) + rhs.coeff(d)).collect();
        LaurentPolynomial::new(lo, coeffs)
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &rhs.scale(&Rational::from(-1))
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.multiply(rhs)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let d = self.lowest_degree + i as i64;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c} c")?,
                _ => write!(f, "{c} c^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}
