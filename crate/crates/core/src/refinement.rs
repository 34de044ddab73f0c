//! Applying a scheme to control polygons.
//!
//! Refined points follow `g'_i = Σ_j β[i - r·j] g_j`. Closed polygons wrap
//! indices cyclically and yield `r·N` points labelled `i = 0..r·N`. Open
//! polygons keep only the refined points whose whole stencil lies inside the
//! data; nothing is extrapolated.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::numeric::{ParseRationalError, Rational};
use crate::scheme::{Mask, SubdivisionScheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    Closed,
    Open,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Closed => "closed",
            Topology::Open => "open",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("too few points for a polygon ({topology}): need {needed}, got {found}")]
    TooFewPoints {
        topology: Topology,
        needed: usize,
        found: usize,
    },
    #[error("points must all have the same positive dimension")]
    Dimension,
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
}

pub type Point = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    points: Vec<Point>,
    topology: Topology,
}

impl Polygon {
    pub fn new(points: Vec<Point>, topology: Topology) -> Result<Self, PolygonError> {
        let needed = match topology {
            Topology::Closed => 3,
            Topology::Open => 2,
        };
        if points.len() < needed {
            return Err(PolygonError::TooFewPoints {
                topology,
                needed,
                found: points.len(),
            });
        }
        let d = points[0].len();
        if d == 0 || points.iter().any(|p| p.len() != d) {
            return Err(PolygonError::Dimension);
        }
        Ok(Polygon { points, topology })
    }

    pub fn closed(points: Vec<Point>) -> Result<Self, PolygonError> {
        Polygon::new(points, Topology::Closed)
    }

    pub fn open(points: Vec<Point>) -> Result<Self, PolygonError> {
        Polygon::new(points, Topology::Open)
    }

    /// Builds a polygon from integer coordinates.
    pub fn from_integers(coords: &[&[i64]], topology: Topology) -> Result<Self, PolygonError> {
        let points = coords
            .iter()
            .map(|p| p.iter().map(|&x| Rational::from(x)).collect())
            .collect();
        Polygon::new(points, topology)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.points[0].len()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.points
            .iter()
            .map(|p| p.iter().map(Rational::to_f64).collect())
            .collect()
    }

    /// Parses the CSV form: an optional `closed` or `open` header (default
    /// closed), then one point per line.
    pub fn from_csv(text: &str) -> Result<Self, PolygonError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();
        let (line, header) = *lines.peek().ok_or(PolygonError::Csv {
            line: 1,
            message: "no points".into(),
        })?;
        let topology = match header.to_ascii_lowercase().as_str() {
            "closed" => Some(Topology::Closed),
            "open" => Some(Topology::Open),
            _ => None,
        };
        if topology.is_some() {
            lines.next();
        } else if !header.starts_with(|c: char| c.is_ascii_digit() || "+-.".contains(c)) {
            return Err(PolygonError::Csv {
                line,
                message: format!("header must be \"closed\" or \"open\", got {header:?}"),
            });
        }
        let mut points = Vec::new();
        for (line, l) in lines {
            let p = l
                .split(',')
                .map(|t| Rational::parse_flexible(t.trim()))
                .collect::<Result<Point, ParseRationalError>>()
                .map_err(|e| PolygonError::Csv {
                    line,
                    message: e.to_string(),
                })?;
            points.push(p);
        }
        Polygon::new(points, topology.unwrap_or(Topology::Closed))
    }

    /// The same points under another topology.
    pub fn with_topology(self, topology: Topology) -> Result<Self, PolygonError> {
        Polygon::new(self.points, topology)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{}\n", self.topology);
        for p in &self.points {
            let cells: Vec<String> = p.iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

impl FromStr for Polygon {
    type Err = PolygonError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Polygon::from_csv(s)
    }
}

/// Source indices `j` and weights with `β[i - r·j] ≠ 0`.
fn contributions(mask: &Mask, i: i64) -> impl Iterator<Item = (i64, &Rational)> {
    let r = mask.arity() as i64;
    let lo = (i - mask.last_index()).div_euclid(r)
        + i64::from((i - mask.last_index()).rem_euclid(r) != 0);
    let hi = (i - mask.first_index()).div_euclid(r);
    (lo..=hi).filter_map(move |j| mask.coeff_ref(i - r * j).map(|w| (j, w)))
}

/// Labels `i` of the refined points produced from `n` source points.
fn output_indices(mask: &Mask, n: usize, topology: Topology) -> Result<Vec<i64>, PolygonError> {
    let r = mask.arity() as i64;
    let n = n as i64;
    match topology {
        Topology::Closed => Ok((0..r * n).collect()),
        Topology::Open => {
            let width = mask.max_stencil_width();
            if (n as usize) < width {
                return Err(PolygonError::TooFewPoints {
                    topology,
                    needed: width,
                    found: n as usize,
                });
            }
            let lo = mask.first_index();
            let hi = r * (n - 1) + mask.last_index();
            Ok((lo..=hi)
                .filter(|&i| contributions(mask, i).all(|(j, _)| (0..n).contains(&j)))
                .collect())
        }
    }
}

fn combine(p: &Polygon, terms: impl Iterator<Item = (i64, Rational)>) -> Point {
    let n = p.len() as i64;
    let mut acc = vec![Rational::zero(); p.dimension()];
    for (j, w) in terms {
        let src = &p.points[j.rem_euclid(n) as usize];
        for (a, x) in acc.iter_mut().zip(src) {
            *a += &w * x;
        }
    }
    acc
}

/// One refinement step, also returning the label `i` of each refined point.
pub fn refine_once_labelled(
    p: &Polygon,
    s: &SubdivisionScheme,
) -> Result<(Polygon, Vec<i64>), PolygonError> {
    let indices = output_indices(&s.mask, p.len(), p.topology)?;
    let points = indices
        .iter()
        .map(|&i| combine(p, contributions(&s.mask, i).map(|(j, w)| (j, w.clone()))))
        .collect();
    Ok((Polygon::new(points, p.topology)?, indices))
}

/// One refinement step.
pub fn refine_once(p: &Polygon, s: &SubdivisionScheme) -> Result<Polygon, PolygonError> {
    refine_once_labelled(p, s).map(|(q, _)| q)
}

#[derive(Debug, Clone)]
pub struct RefinementTrace {
    pub scheme: SubdivisionScheme,
    /// `levels[0]` is the input.
    pub levels: Vec<Polygon>,
    /// For each level after the first, the label `i` of every refined point.
    pub indices: Vec<Vec<i64>>,
}

/// `k` refinement steps.
pub fn refine(
    p: &Polygon,
    s: &SubdivisionScheme,
    k: usize,
) -> Result<RefinementTrace, PolygonError> {
    let mut levels = vec![p.clone()];
    let mut indices = Vec::with_capacity(k);
    for _ in 0..k {
        let (next, idx) = refine_once_labelled(levels.last().unwrap(), s)?;
        levels.push(next);
        indices.push(idx);
    }
    Ok(RefinementTrace {
        scheme: s.clone(),
        levels,
        indices,
    })
}

fn linf(a: &Point, b: &Point) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Source index nearest the weighted centre of the stencil for refined label `i`.
fn anchor(mask: &Mask, i: i64) -> i64 {
    let terms: Vec<(i64, &Rational)> = contributions(mask, i).collect();
    let total: Rational = terms.iter().map(|(_, w)| *w).sum();
    let centre = if total.is_zero() {
        let (a, b) = (terms[0].0, terms[terms.len() - 1].0);
        Rational::new(a + b, 2)
    } else {
        terms
            .iter()
            .map(|(j, w)| Rational::from(*j) * *w)
            .sum::<Rational>()
            / &total
    };
    let rounded = (centre + Rational::new(1, 2)).floor();
    i64::try_from(rounded).expect("index fits in i64")
}

impl RefinementTrace {
    /// Largest L∞ distance from a refined point to its anchor source point, over all steps.
    ///
    /// Zero for a trace without refinement steps.
    pub fn displacement_bound(&self) -> Rational {
        displacement_bound(self)
    }

    /// The same bound for each step separately.
    pub fn displacement_per_level(&self) -> Vec<Rational> {
        let mask = &self.scheme.mask;
        self.levels
            .windows(2)
            .zip(&self.indices)
            .map(|(pair, idx)| {
                let (src, dst) = (&pair[0], &pair[1]);
                let n = src.len() as i64;
                idx.iter()
                    .zip(dst.points())
                    .map(|(&i, q)| {
                        let j = anchor(mask, i).rem_euclid(n) as usize;
                        linf(q, &src.points()[j])
                    })
                    .max()
                    .unwrap_or_else(Rational::zero)
            })
            .collect()
    }
}

pub fn displacement_bound(trace: &RefinementTrace) -> Rational {
    trace
        .displacement_per_level()
        .into_iter()
        .max()
        .unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn chaikin() -> SubdivisionScheme {
        SubdivisionScheme::new(
            "chaikin",
            "",
            Mask::from_dual_weights(&[rat(1, 4), rat(3, 4)]).unwrap(),
        )
    }

    fn square() -> Polygon {
        Polygon::from_integers(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]], Topology::Closed).unwrap()
    }

    fn pt(x: (i64, i64), y: (i64, i64)) -> Point {
        vec![rat(x.0, x.1), rat(y.0, y.1)]
    }

    #[test]
    fn chaikin_square() {
        let q = refine_once(&square(), &chaikin()).unwrap();
        assert_eq!(q.len(), 8);
        for p in [
            pt((1, 4), (0, 1)),
            pt((3, 4), (0, 1)),
            pt((1, 1), (1, 4)),
            pt((1, 1), (3, 4)),
        ] {
            assert!(q.points().contains(&p), "{p:?}");
        }
    }

    #[test]
    fn counts_and_displacement() {
        let t = refine(&square(), &chaikin(), 2).unwrap();
        assert_eq!(
            t.levels.iter().map(Polygon::len).collect::<Vec<_>>(),
            [4, 8, 16]
        );
        assert_eq!(t.displacement_per_level()[0], rat(1, 4));
        assert_eq!(refine(&square(), &chaikin(), 0).unwrap().levels.len(), 1);
    }

    #[test]
    fn constant_polygon_stays_put() {
        let p = Polygon::from_integers(&[&[2, 5], &[2, 5], &[2, 5]], Topology::Closed).unwrap();
        let t = refine(&p, &chaikin(), 2).unwrap();
        assert!(t.levels[2]
            .points()
            .iter()
            .all(|q| *q == vec![rat(2, 1), rat(5, 1)]));
        assert!(t.displacement_bound().is_zero());
    }

    #[test]
    fn open_clipping() {
        let p = Polygon::from_integers(&[&[0], &[4], &[8]], Topology::Open).unwrap();
        let q = refine_once(&p, &chaikin()).unwrap();
        assert_eq!(
            q.points(),
            &[
                vec![rat(1, 1)],
                vec![rat(3, 1)],
                vec![rat(5, 1)],
                vec![rat(7, 1)]
            ]
        );
        let wide = SubdivisionScheme::new(
            "w",
            "",
            Mask::from_dual_weights(&[rat(1, 384), rat(121, 384), rat(235, 384), rat(9, 128)])
                .unwrap(),
        );
        let two = Polygon::from_integers(&[&[0], &[1]], Topology::Open).unwrap();
        assert!(matches!(
            refine_once(&two, &wide),
            Err(PolygonError::TooFewPoints {
                needed: 4,
                found: 2,
                ..
            })
        ));
    }

    #[test]
    fn csv_round_trip() {
        let p = Polygon::from_csv("closed\n0,0\n1/2, 0.25\n1,1e1\n").unwrap();
        assert_eq!(p.points()[1], pt((1, 2), (1, 4)));
        assert_eq!(p.points()[2], pt((1, 1), (10, 1)));
        assert_eq!(Polygon::from_csv(&p.to_csv()).unwrap(), p);
        assert!(Polygon::from_csv("loop\n0,0").is_err());
        assert!(matches!(
            Polygon::from_csv("open\n0,0\n1,x\n"),
            Err(PolygonError::Csv { line: 3, .. })
        ));
        assert_eq!(
            Polygon::from_csv("open\n0,0\n1\n"),
            Err(PolygonError::Dimension)
        );
        let bare = Polygon::from_csv("0,0\n1,0\n0,1\n").unwrap();
        assert_eq!(bare.topology(), Topology::Closed);
        assert_eq!(bare.len(), 3);
        assert_eq!(
            bare.with_topology(Topology::Open).unwrap().topology(),
            Topology::Open
        );
    }
}
