use crate::numeric::Rational;
use crate::refinement::{refine_once_labelled, Polygon, Topology};
use crate::scheme::SubdivisionScheme;

use super::holder::{smoothing_factorization, AnalysisError};

pub const DEFAULT_MAX_DEGREE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecisionReport {
    pub degree_of_precision: i64,
    pub degree_of_generation: i64,
    /// Shift `τ` with `g'_i = ((i + τ)/s)^d` when linears are reproduced.
    pub parameter_shift: Option<Rational>,
}

/// `p - 1` where `p` is the smoothing order; `-1` when `p = 0`.
pub fn degree_of_generation(s: &SubdivisionScheme) -> i64 {
    let (p, _) = smoothing_factorization(&s.mask.symbol(), s.arity());
    p as i64 - 1
}

/// Refines `g_j = j^d` on an open window and returns `(i, g'_i)` for every refined label.
fn refine_power(s: &SubdivisionScheme, d: u32, window: usize) -> Vec<(i64, Rational)> {
    let points = (0..window as i64)
        .map(|j| vec![Rational::from(j).pow(d)])
        .collect();
    let poly = Polygon::new(points, Topology::Open).expect("window has at least two points");
    let (refined, labels) = refine_once_labelled(&poly, s).expect("window is wider than the mask");
    labels
        .into_iter()
        .zip(refined.points().iter().map(|p| p[0].clone()))
        .collect()
}

/// Largest `d` such that polynomial data of every degree up to `d` is reproduced
/// after the shift detected from linear data.
pub fn degree_of_precision(
    s: &SubdivisionScheme,
    max_degree: usize,
) -> Result<PrecisionReport, AnalysisError> {
    let check = s.check_convergence_condition();
    if !check.passed() {
        let sums: Vec<String> = check.sums.iter().map(|(_, v)| v.to_string()).collect();
        return Err(AnalysisError::NotConvergent {
            name: s.name.clone(),
            sums: sums.join(", "),
        });
    }
    let dog = degree_of_generation(s);
    let width = s.mask.len();
    let window = |d: usize| 2 * width + d + 2;
    let arity = Rational::from(s.arity() as i64);

    let mut report = PrecisionReport {
        degree_of_precision: 0,
        degree_of_generation: dog,
        parameter_shift: None,
    };
    if max_degree == 0 {
        return Ok(report);
    }
    let linear = refine_power(s, 1, window(1));
    let shifts: Vec<Rational> = linear
        .iter()
        .map(|(i, g)| &arity * g - Rational::from(*i))
        .collect();
    let tau = shifts[0].clone();
    if shifts.iter().any(|t| *t != tau) {
        return Ok(report);
    }
    report.degree_of_precision = 1;
    report.parameter_shift = Some(tau.clone());
    for d in 2..=max_degree {
        let data = refine_power(s, d as u32, window(d));
        let ok = data
            .iter()
            .all(|(i, g)| *g == ((Rational::from(*i) + &tau) / &arity).pow(d as u32));
        if !ok {
            break;
        }
        report.degree_of_precision = d as i64;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use crate::scheme::Mask;

    fn dual(ws: &[(i64, i64)]) -> SubdivisionScheme {
        let w: Vec<Rational> = ws.iter().map(|&(n, d)| rat(n, d)).collect();
        SubdivisionScheme::new("t", "", Mask::from_dual_weights(&w).unwrap())
    }

    #[test]
    fn chaikin() {
        let s = dual(&[(1, 4), (3, 4)]);
        let r = degree_of_precision(&s, DEFAULT_MAX_DEGREE).unwrap();
        assert_eq!(r.degree_of_precision, 1);
        assert_eq!(r.degree_of_generation, 2);
        assert_eq!(r.parameter_shift, Some(rat(1, 2)));
    }

    #[test]
    fn four_point_interpolatory_reproduces_cubics() {
        let s = SubdivisionScheme::new(
            "dd4",
            "",
            Mask::new(
                2,
                -3,
                [-1, 0, 9, 16, 9, 0, -1]
                    .iter()
                    .map(|&n| rat(n, 16))
                    .collect(),
            )
            .unwrap(),
        );
        let r = degree_of_precision(&s, 8).unwrap();
        assert_eq!(r.degree_of_precision, 3);
        assert_eq!(r.parameter_shift, Some(rat(0, 1)));
        assert_eq!(r.degree_of_generation, 3);
    }

    #[test]
    fn non_affine_rejected() {
        let s = SubdivisionScheme::new(
            "h",
            "",
            Mask::new(4, 0, vec![rat(1, 2), rat(1, 2)]).unwrap(),
        );
        assert!(matches!(
            degree_of_precision(&s, 4),
            Err(AnalysisError::NotConvergent { .. })
        ));
        assert_eq!(degree_of_generation(&s), -1);
    }

    #[test]
    fn asymmetric_mask_loses_linears() {
        let s = SubdivisionScheme::new(
            "a",
            "",
            Mask::new(2, 0, vec![rat(1, 2), rat(1, 3), rat(1, 2), rat(2, 3)]).unwrap(),
        );
        let r = degree_of_precision(&s, 4).unwrap();
        assert_eq!(r.degree_of_precision, 0);
        assert_eq!(r.parameter_shift, None);
    }
}
