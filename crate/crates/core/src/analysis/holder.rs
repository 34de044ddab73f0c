use thiserror::Error;

use crate::numeric::{
    spectral_norm, spectral_radius, LaurentPolynomial, Rational, SmallMatrix, DEFAULT_TOLERANCE,
};
use crate::scheme::SubdivisionScheme;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("scheme has an empty mask")]
    EmptyMask,
    #[error("scheme {0:?} cannot be analyzed: every transfer matrix has spectral radius 0")]
    NotAnalyzable(String),
    #[error("scheme {name:?} fails the convergence condition (coset sums {sums})")]
    NotConvergent { name: String, sums: String },
    #[error("product depth must be at least 1")]
    InvalidDepth,
    #[error(transparent)]
    Conversion(#[from] crate::conversion::ConversionError),
}

/// Largest `p` with `σ_s^p | μ` and the exact quotient `ν`, where
/// `σ_s(c) = (1 + c + … + c^{s-1}) / s`.
pub fn smoothing_factorization(
    symbol: &LaurentPolynomial,
    arity: usize,
) -> (usize, LaurentPolynomial) {
    assert!(!symbol.is_zero(), "zero symbol");
    let sigma = LaurentPolynomial::smoothing_factor(arity);
    let mut p = 0;
    let mut nu = symbol.clone();
    while let Some(q) = nu.try_divide(&sigma) {
        nu = q;
        p += 1;
    }
    (p, nu)
}

/// `E_0 … E_t` with `(E_q)_{ij} = e_{t+i-s·j+q}` for `ν = Σ e_k c^k` shifted to start at `c^0`.
///
/// Returns an empty list when `ν` is a monomial (`t = 0`).
pub fn transfer_matrices(nu: &LaurentPolynomial, arity: usize) -> Vec<SmallMatrix> {
    let e = nu.normalized();
    let t = e.degree_span().unwrap_or(0);
    if t == 0 {
        return Vec::new();
    }
    let s = arity as i64;
    let ti = t as i64;
    (0..=ti)
        .map(|q| SmallMatrix::from_fn(t, |i, j| e.coeff(ti + i as i64 - s * j as i64 + q)))
        .collect()
}

/// Matrix norm used for the upper bound on `ξ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UpperNorm {
    /// Largest singular value. This is the bound behind the published regularity decimals.
    #[default]
    Spectral,
    /// Maximum absolute row sum, exact.
    Infinity,
}

impl UpperNorm {
    pub fn label(self) -> &'static str {
        match self {
            UpperNorm::Spectral => "spectral",
            UpperNorm::Infinity => "infinity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderOptions {
    /// Length of the matrix products used for the bounds; 1 uses the matrices themselves.
    pub depth: usize,
    pub tolerance: f64,
    pub upper_norm: UpperNorm,
}

impl Default for HolderOptions {
    fn default() -> Self {
        HolderOptions {
            depth: 1,
            tolerance: DEFAULT_TOLERANCE,
            upper_norm: UpperNorm::default(),
        }
    }
}

impl HolderOptions {
    pub fn with_norm(upper_norm: UpperNorm) -> Self {
        HolderOptions {
            upper_norm,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegularityReport {
    pub scheme: String,
    pub arity: usize,
    pub smoothing_order: usize,
    /// `ν` with its original Laurent degrees.
    pub remainder: LaurentPolynomial,
    /// `e_0 … e_t`.
    pub remainder_coeffs: Vec<Rational>,
    pub matrices: Vec<SmallMatrix>,
    pub spectral_radii: Vec<f64>,
    pub inf_norms: Vec<Rational>,
    pub spectral_norms: Vec<f64>,
    pub upper_norm: UpperNorm,
    pub depth: usize,
    pub xi_lower: f64,
    pub xi_upper: f64,
    /// Exact `ξ` upper bound when it is rational (infinity norm at depth 1, or `t = 0`).
    pub xi_upper_exact: Option<Rational>,
    pub xi_mid: f64,
    pub r_lower: f64,
    pub r_mid: f64,
    pub r_upper: f64,
}

fn log_base(x: f64, base: usize) -> f64 {
    x.ln() / (base as f64).ln()
}

fn products(matrices: &[SmallMatrix], depth: usize) -> Vec<SmallMatrix> {
    let mut out: Vec<SmallMatrix> = matrices.to_vec();
    for _ in 1..depth {
        out = out
            .iter()
            .flat_map(|p| matrices.iter().map(move |m| p * m))
            .collect();
    }
    out
}

/// Hölder regularity bounds `r = p - log_s ξ`, with `ξ` between the largest
/// spectral radius and the largest infinity norm of the transfer matrices.
pub fn holder_regularity(s: &SubdivisionScheme) -> Result<RegularityReport, AnalysisError> {
    holder_regularity_with(s, HolderOptions::default())
}

pub fn holder_regularity_with(
    scheme: &SubdivisionScheme,
    opts: HolderOptions,
) -> Result<RegularityReport, AnalysisError> {
    if opts.depth == 0 {
        return Err(AnalysisError::InvalidDepth);
    }
    let symbol = scheme.mask.symbol();
    if symbol.is_zero() {
        return Err(AnalysisError::EmptyMask);
    }
    let arity = scheme.arity();
    let (p, nu) = smoothing_factorization(&symbol, arity);
    let remainder_coeffs = nu.coefficients().to_vec();
    let matrices = transfer_matrices(&nu, arity);

    let norm_of = |m: &SmallMatrix| match opts.upper_norm {
        UpperNorm::Spectral => spectral_norm(m),
        UpperNorm::Infinity => m.infinity_norm().to_f64(),
    };
    let (spectral_radii, inf_norms, spectral_norms, xi_lower, xi_upper, xi_upper_exact) =
        if matrices.is_empty() {
            let e0 = remainder_coeffs[0].abs();
            let x = e0.to_f64();
            (vec![x], vec![e0.clone()], vec![x], x, x, Some(e0))
        } else {
            let radii: Vec<f64> = matrices
                .iter()
                .map(|m| spectral_radius(m, opts.tolerance).expect("positive tolerance"))
                .collect();
            let inf: Vec<Rational> = matrices.iter().map(SmallMatrix::infinity_norm).collect();
            let two: Vec<f64> = matrices.iter().map(spectral_norm).collect();
            let (lo, hi, exact) = if opts.depth == 1 {
                let lo = radii.iter().copied().fold(0.0, f64::max);
                match opts.upper_norm {
                    UpperNorm::Spectral => (lo, two.iter().copied().fold(0.0, f64::max), None),
                    UpperNorm::Infinity => {
                        let hi = inf.iter().max().unwrap().clone();
                        (lo, hi.to_f64(), Some(hi))
                    }
                }
            } else {
                let inv = 1.0 / opts.depth as f64;
                let mut lo = 0.0f64;
                let mut hi = 0.0f64;
                for prod in products(&matrices, opts.depth) {
                    let rho = spectral_radius(&prod, opts.tolerance).expect("positive tolerance");
                    lo = lo.max(rho.powf(inv));
                    hi = hi.max(norm_of(&prod).powf(inv));
                }
                (lo, hi, None)
            };
            (radii, inf, two, lo, hi, exact)
        };
    if xi_lower.is_nan() || xi_lower <= 0.0 {
        return Err(AnalysisError::NotAnalyzable(scheme.name.clone()));
    }
    let xi_mid = (xi_lower + xi_upper) / 2.0;
    let pf = p as f64;
    Ok(RegularityReport {
        scheme: scheme.name.clone(),
        arity,
        smoothing_order: p,
        remainder: nu,
        remainder_coeffs,
        matrices,
        spectral_radii,
        inf_norms,
        spectral_norms,
        upper_norm: opts.upper_norm,
        depth: opts.depth,
        xi_lower,
        xi_upper,
        xi_upper_exact,
        xi_mid,
        r_lower: pf - log_base(xi_upper, arity),
        r_mid: pf - log_base(xi_mid, arity),
        r_upper: pf - log_base(xi_lower, arity),
    })
}
