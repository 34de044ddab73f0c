//! Hölder regularity, polynomial generation and polynomial precision.

mod holder;
mod precision;
pub mod report;

pub use holder::{
    holder_regularity, holder_regularity_with, smoothing_factorization, transfer_matrices,
    AnalysisError, HolderOptions, RegularityReport, UpperNorm,
};
pub use precision::{
    degree_of_generation, degree_of_precision, PrecisionReport, DEFAULT_MAX_DEGREE,
};

use crate::conversion::convert_theorem;
use crate::scheme::SubdivisionScheme;

/// Regularity of a binary scheme next to that of its quaternary conversion.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularityPair {
    pub binary: RegularityReport,
    pub quaternary: RegularityReport,
    /// `quaternary.r_mid - binary.r_mid`.
    pub delta_mid: f64,
}

pub fn regularity_pair_report(binary: &SubdivisionScheme) -> Result<RegularityPair, AnalysisError> {
    let quaternary = convert_theorem(binary)?.quaternary;
    let b = holder_regularity(binary)?;
    let q = holder_regularity(&quaternary)?;
    Ok(RegularityPair {
        delta_mid: q.r_mid - b.r_mid,
        binary: b,
        quaternary: q,
    })
}
