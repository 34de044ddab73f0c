//! Spectral radius of small rational matrices.
//!
//! The matrix is first split into the diagonal blocks of its Frobenius normal
//! form (strongly connected components of the sparsity graph). Singleton blocks
//! contribute their diagonal entry exactly, which covers triangular and
//! zero-column/zero-row structure without any floating point. Each remaining
//! block gets an exact characteristic polynomial; its square-free part has only
//! simple roots, which are located from floating-point eigenvalue estimates and
//! then polished by Newton steps whose residuals are evaluated in exact
//! complex-rational arithmetic.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use thiserror::Error;

use crate::numeric::{Rational, SmallMatrix};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

const MAX_NEWTON_STEPS: usize = 60;

/// Relative distance under which two eigenvalue estimates may be one repeated root.
const CLUSTER_GAP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
}

/// Largest eigenvalue modulus of `m`, accurate to `tol` in absolute terms.
pub fn spectral_radius(m: &SmallMatrix, tol: f64) -> Result<f64, SpectralError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(SpectralError::InvalidTolerance(tol));
    }
    let mut radius = 0.0f64;
    for block in irreducible_blocks(m) {
        let r = if block.len() == 1 {
            let i = block[0];
            m.at(i, i).abs().to_f64()
        } else {
            block_radius(&m.principal_submatrix(&block), tol)
        };
        radius = radius.max(r);
    }
    Ok(radius)
}

/// Index sets of the diagonal blocks of the Frobenius normal form.
fn irreducible_blocks(m: &SmallMatrix) -> Vec<Vec<usize>> {
    let n = m.size();
    let mut g = DiGraph::<(), ()>::with_capacity(n, n * n);
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && !m.at(i, j).is_zero() {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|comp| {
            let mut idx: Vec<usize> = comp.into_iter().map(|v| v.index()).collect();
            idx.sort_unstable();
            idx
        })
        .collect()
}

fn block_radius(block: &SmallMatrix, tol: f64) -> f64 {
    let estimates = float_eigenvalues(block);
    let moduli: Vec<f64> = estimates.iter().map(|(re, im)| re.hypot(*im)).collect();
    let top = moduli.iter().copied().fold(0.0, f64::max);
    let margin = CLUSTER_GAP * (1.0 + top);
    let candidates: Vec<(f64, f64)> = estimates
        .iter()
        .zip(&moduli)
        .filter(|(_, m)| **m >= top - margin)
        .map(|(z, _)| *z)
        .collect();
    // Newton only converges quadratically on simple roots; strip multiplicities
    // when two estimates sit close enough to be the same eigenvalue.
    let clustered = candidates.iter().any(|a| {
        estimates
            .iter()
            .filter(|b| (a.0 - b.0).hypot(a.1 - b.1) < margin)
            .count()
            > 1
    });
    let charpoly = characteristic_polynomial(block);
    let poly = if clustered {
        square_free(&charpoly)
    } else {
        make_monic(charpoly)
    };
    let deriv = derivative(&poly);
    candidates
        .into_iter()
        .map(|(re, im)| {
            let (re, im) = newton_polish(&poly, &deriv, re, im, tol);
            re.hypot(im)
        })
        .fold(0.0, f64::max)
}

/// Largest singular value `‖m‖₂`, from a floating-point SVD.
pub fn spectral_norm(m: &SmallMatrix) -> f64 {
    let n = m.size();
    let rows = m.to_f64_rows();
    DMatrix::from_fn(n, n, |i, j| rows[i][j])
        .singular_values()
        .max()
}

fn float_eigenvalues(block: &SmallMatrix) -> Vec<(f64, f64)> {
    let n = block.size();
    let rows = block.to_f64_rows();
    let dm = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    dm.complex_eigenvalues()
        .iter()
        .map(|z| (z.re, z.im))
        .collect()
}

/// Characteristic polynomial `det(λI - M)`, coefficients from `λ^0` upwards.
///
/// The matrix is scaled to integers and expanded with Berkowitz's division-free
/// recurrence, then rescaled.
pub fn characteristic_polynomial(m: &SmallMatrix) -> Vec<Rational> {
    let n = m.size();
    let scale = m
        .rows()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let a: Vec<Vec<BigInt>> = m
        .rows()
        .map(|r| r.iter().map(|x| x.numer() * (&scale / x.denom())).collect())
        .collect();

    // v holds the coefficients of the leading principal minor's polynomial, highest power first.
    let mut v: Vec<BigInt> = vec![BigInt::one(), -a[0][0].clone()];
    for r in 1..n {
        let row = &a[r][..r];
        let mut x: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        let mut t: Vec<BigInt> = vec![BigInt::one(), -a[r][r].clone()];
        for _ in 0..r {
            let dot: BigInt = row.iter().zip(&x).map(|(p, q)| p * q).sum();
            t.push(-dot);
            x = (0..r)
                .map(|i| (0..r).map(|k| &a[i][k] * &x[k]).sum())
                .collect();
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for j in 0..=i.min(v.len() - 1) {
                *slot += &t[i - j] * &v[j];
            }
        }
        v = next;
    }
    // Undo the scaling: coefficient of λ^k picks up scale^(k-n).
    let scale = Rational::from_integer(scale);
    let mut out = Vec::with_capacity(n + 1);
    let mut factor = Rational::one();
    for k in 0..=n {
        out.push(Rational::from_integer(v[n - k].clone()) * &factor);
        factor *= &scale;
    }
    let lead = factor.recip() * &scale;
    out.into_iter().map(|c| c * &lead).collect()
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * &Rational::from(k as i64))
        .collect()
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
}

fn make_monic(mut p: Vec<Rational>) -> Vec<Rational> {
    trim(&mut p);
    if let Some(lead) = p.last().cloned() {
        for c in &mut p {
            *c = &*c / &lead;
        }
    }
    p
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &(&c * bi);
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn poly_div(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let lead = b.last().expect("nonzero divisor");
    if r.len() < b.len() {
        return vec![Rational::zero()];
    }
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &(&c * bi);
        }
        q[shift] = c;
        r.pop();
    }
    q
}

fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = make_monic(a.to_vec());
    let mut y = make_monic(b.to_vec());
    while !y.is_empty() {
        let r = make_monic(poly_rem(&x, &y));
        x = y;
        y = r;
    }
    x
}

/// `p / gcd(p, p')`: same roots, all simple.
fn square_free(p: &[Rational]) -> Vec<Rational> {
    let d = derivative(p);
    if d.iter().all(Rational::is_zero) {
        return make_monic(p.to_vec());
    }
    let g = poly_gcd(p, &d);
    make_monic(poly_div(p, &g))
}

#[derive(Clone)]
struct ComplexQ {
    re: Rational,
    im: Rational,
}

impl ComplexQ {
    fn mul(&self, o: &ComplexQ) -> ComplexQ {
        ComplexQ {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn add_real(mut self, c: &Rational) -> ComplexQ {
        self.re += c;
        self
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn div(&self, o: &ComplexQ) -> ComplexQ {
        let den = &o.re * &o.re + &o.im * &o.im;
        ComplexQ {
            re: (&self.re * &o.re + &self.im * &o.im) / &den,
            im: (&self.im * &o.re - &self.re * &o.im) / &den,
        }
    }
}

fn horner(p: &[Rational], z: &ComplexQ) -> ComplexQ {
    let mut acc = ComplexQ {
        re: Rational::zero(),
        im: Rational::zero(),
    };
    for c in p.iter().rev() {
        acc = acc.mul(z).add_real(c);
    }
    acc
}

/// Newton iteration on a square-free polynomial. Each residual is exact; only the
/// iterate itself is rounded back to double precision between steps.
fn newton_polish(p: &[Rational], dp: &[Rational], re: f64, im: f64, tol: f64) -> (f64, f64) {
    if p.len() <= 1 || !re.is_finite() || !im.is_finite() {
        return (re, im);
    }
    let start = (re, im);
    let (mut re, mut im) = (re, im);
    for _ in 0..MAX_NEWTON_STEPS {
        let z = ComplexQ {
            re: Rational::from_f64(re).unwrap(),
            im: Rational::from_f64(im).unwrap(),
        };
        let f = horner(p, &z);
        if f.is_zero() {
            break;
        }
        let df = horner(dp, &z);
        if df.is_zero() {
            break;
        }
        let step = f.div(&df);
        let (sr, si) = (step.re.to_f64(), step.im.to_f64());
        let next_re = (&z.re - &step.re).to_f64();
        let next_im = (&z.im - &step.im).to_f64();
        if !next_re.is_finite() || !next_im.is_finite() {
            return start;
        }
        re = next_re;
        im = next_im;
        let size = sr.hypot(si);
        if size < tol * 1e-3 || size <= f64::EPSILON * re.hypot(im) {
            break;
        }
    }
    // A wild jump means the estimate was attracted elsewhere; keep the original.
    if (re - start.0).hypot(im - start.1) > 1e-3 * (1.0 + start.0.hypot(start.1)) {
        return start;
    }
    (re, im)
}
