use thiserror::Error;

use crate::numeric::{LaurentPolynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MaskError {
    #[error("arity must be at least 2, got {0}")]
    InvalidArity(usize),
    #[error("mask has no nonzero coefficient")]
    Empty,
    #[error("a dual binary mask needs a nonzero even number of weights, got {0}")]
    OddDualLength(usize),
}

/// Refinement mask `β_j` of an `r`-ary scheme.
///
/// A scheme maps `g^k` to `g^{k+1}` by `g^{k+1}_i = Σ_j β[i - r·j] g^k_j`.
/// Coefficients are stored densely from `first_index` and trimmed so both ends
/// are nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mask {
    arity: usize,
    first_index: i64,
    coefficients: Vec<Rational>,
}

/// One phase (coset) of a mask: `g^{k+1}_{rφ+η} = Σ_t weights[t] g^k_{φ+offsets[t]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stencil {
    pub phase: i64,
    pub offsets: Vec<i64>,
    pub weights: Vec<Rational>,
}

impl Stencil {
    pub fn is_empty(&self) -> bool {
        self.weights.iter().all(Rational::is_zero)
    }

    /// Number of source points between the first and last nonzero weight.
    pub fn width(&self) -> usize {
        let first = self.weights.iter().position(|w| !w.is_zero());
        let last = self.weights.iter().rposition(|w| !w.is_zero());
        match (first, last) {
            (Some(a), Some(b)) => b - a + 1,
            _ => 0,
        }
    }

    pub fn sum(&self) -> Rational {
        self.weights.iter().sum()
    }

    /// Nonzero `(offset, weight)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.offsets
            .iter()
            .copied()
            .zip(&self.weights)
            .filter(|(_, w)| !w.is_zero())
    }

    /// Weights in offset order with zero ends removed.
    pub fn trimmed_weights(&self) -> &[Rational] {
        let first = self.weights.iter().position(|w| !w.is_zero());
        let last = self.weights.iter().rposition(|w| !w.is_zero());
        match (first, last) {
            (Some(a), Some(b)) => &self.weights[a..=b],
            _ => &[],
        }
    }

    /// Offset of the first nonzero weight.
    pub fn first_offset(&self) -> Option<i64> {
        self.terms().next().map(|(t, _)| t)
    }
}

impl Mask {
    pub fn new(
        arity: usize,
        first_index: i64,
        coefficients: Vec<Rational>,
    ) -> Result<Self, MaskError> {
        if arity < 2 {
            return Err(MaskError::InvalidArity(arity));
        }
        let first = coefficients
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(MaskError::Empty)?;
        let last = coefficients.iter().rposition(|c| !c.is_zero()).unwrap();
        Ok(Mask {
            arity,
            first_index: first_index + first as i64,
            coefficients: coefficients[first..=last].to_vec(),
        })
    }

    /// Dual binary mask from its `2n` distinct weights `β_{2-2n}, β_{4-2n}, …, β_{2n}`.
    ///
    /// The two rules are `g_{2φ-1} = Σ_λ β_{2λ} g_{φ+λ-1}` and
    /// `g_{2φ} = Σ_λ β_{2-2λ} g_{φ+λ}`, which places `β_i` at mask positions
    /// `1 - i` and `i - 2`. The result is symmetric about `-1/2` with support
    /// `[-2n, 2n-1]`.
    pub fn from_dual_weights(weights: &[Rational]) -> Result<Self, MaskError> {
        if weights.is_empty() || !weights.len().is_multiple_of(2) {
            return Err(MaskError::OddDualLength(weights.len()));
        }
        let n = (weights.len() / 2) as i64;
        let mut coeffs = vec![Rational::zero(); 4 * n as usize];
        for (k, w) in weights.iter().enumerate() {
            let beta_index = 2 - 2 * n + 2 * k as i64;
            coeffs[(1 - beta_index + 2 * n) as usize] = w.clone();
            coeffs[(beta_index - 2 + 2 * n) as usize] = w.clone();
        }
        Mask::new(2, -2 * n, coeffs)
    }

    /// Inverse of [`Mask::from_dual_weights`]; `None` unless the mask has exactly that layout.
    pub fn dual_weights(&self) -> Option<Vec<Rational>> {
        if self.arity != 2 || !self.coefficients.len().is_multiple_of(4) {
            return None;
        }
        let n = (self.coefficients.len() / 4) as i64;
        if self.first_index != -2 * n {
            return None;
        }
        let weights: Vec<Rational> = (0..2 * n)
            .map(|k| self.coeff(2 - 2 * n + 2 * k - 2))
            .collect();
        (Mask::from_dual_weights(&weights).ok()? == *self).then_some(weights)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn first_index(&self) -> i64 {
        self.first_index
    }

    pub fn last_index(&self) -> i64 {
        self.first_index + self.coefficients.len() as i64 - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `β_index`, zero outside the support.
    pub fn coeff(&self, index: i64) -> Rational {
        let k = index - self.first_index;
        if k < 0 || k >= self.coefficients.len() as i64 {
            Rational::zero()
        } else {
            self.coefficients[k as usize].clone()
        }
    }

    pub(crate) fn coeff_ref(&self, index: i64) -> Option<&Rational> {
        let k = index - self.first_index;
        if k < 0 || k >= self.coefficients.len() as i64 {
            None
        } else {
            Some(&self.coefficients[k as usize]).filter(|c| !c.is_zero())
        }
    }

    /// The symbol `Σ_j β_j c^j`.
    pub fn symbol(&self) -> LaurentPolynomial {
        LaurentPolynomial::new(self.first_index, self.coefficients.clone())
    }

    pub fn from_symbol(arity: usize, symbol: &LaurentPolynomial) -> Result<Self, MaskError> {
        Mask::new(
            arity,
            symbol.lowest_degree(),
            symbol.coefficients().to_vec(),
        )
    }

    /// Phase labels `η`, centred on zero: `{-1, 0}` for binary, `{-2, -1, 0, 1}` for quaternary.
    pub fn phases(&self) -> impl Iterator<Item = i64> {
        let r = self.arity as i64;
        let lo = -(r / 2);
        lo..lo + r
    }

    /// The stencil producing refined points of phase `eta`.
    pub fn stencil(&self, eta: i64) -> Stencil {
        let r = self.arity as i64;
        // β[η - r t] must fall inside [first, last].
        let t_min = (eta - self.last_index()).div_euclid(r)
            + i64::from((eta - self.last_index()).rem_euclid(r) != 0);
        let t_max = (eta - self.first_index).div_euclid(r);
        let offsets: Vec<i64> = (t_min..=t_max).collect();
        let weights = offsets.iter().map(|t| self.coeff(eta - r * t)).collect();
        Stencil {
            phase: eta,
            offsets,
            weights,
        }
    }

    /// One stencil per residue class of the mask index modulo the arity.
    pub fn stencils(&self) -> Vec<Stencil> {
        self.phases().map(|eta| self.stencil(eta)).collect()
    }

    /// Largest rule width over all phases.
    pub fn max_stencil_width(&self) -> usize {
        self.stencils()
            .iter()
            .map(Stencil::width)
            .max()
            .unwrap_or(0)
    }

    /// Whether `β_j = β_{c - j}` for some centre `c`.
    pub fn is_palindromic(&self) -> bool {
        self.coefficients.iter().eq(self.coefficients.iter().rev())
    }
}

impl std::fmt::Debug for Mask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Mask")
            .field("arity", &self.arity)
            .field("first_index", &self.first_index)
            .field("coefficients", &self.coefficients)
            .finish()
    }
}
