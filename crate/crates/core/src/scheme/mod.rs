//! Masks, their coset stencils, and named subdivision schemes.

pub mod catalog;
pub mod io;
mod mask;

pub use catalog::{Catalog, CatalogError};
pub use mask::{Mask, MaskError, Stencil};

use crate::numeric::Rational;

/// A mask together with a name and a short note on where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionScheme {
    pub name: String,
    pub provenance: String,
    pub mask: Mask,
}

/// Per-phase coset sums of a mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceCheck {
    /// `(phase, Σ_j β_{rj+η})` in phase order.
    pub sums: Vec<(i64, Rational)>,
}

impl ConvergenceCheck {
    pub fn passed(&self) -> bool {
        self.sums.iter().all(|(_, s)| s.is_one())
    }
}

impl SubdivisionScheme {
    pub fn new(name: impl Into<String>, provenance: impl Into<String>, mask: Mask) -> Self {
        SubdivisionScheme {
            name: name.into(),
            provenance: provenance.into(),
            mask,
        }
    }

    pub fn arity(&self) -> usize {
        self.mask.arity()
    }

    pub fn stencils(&self) -> Vec<Stencil> {
        self.mask.stencils()
    }

    /// Every coset of the mask must sum to one for the scheme to converge.
    pub fn check_convergence_condition(&self) -> ConvergenceCheck {
        ConvergenceCheck {
            sums: self
                .stencils()
                .into_iter()
                .map(|s| (s.phase, s.sum()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn half_half_quaternary_fails() {
        let s = SubdivisionScheme::new(
            "halves",
            "test",
            Mask::new(4, 0, vec![rat(1, 2), rat(1, 2)]).unwrap(),
        );
        let check = s.check_convergence_condition();
        assert!(!check.passed());
        let mut sums: Vec<Rational> = check.sums.into_iter().map(|(_, s)| s).collect();
        sums.sort();
        assert_eq!(sums, vec![rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 2)]);
    }
}
