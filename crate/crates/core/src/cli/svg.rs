//! SVG 1.1 output of refinement levels, one polyline per level.

use std::fmt::Write as _;

use crate::refinement::{Polygon, RefinementTrace, Topology};

const PALETTE: [&str; 5] = ["#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
const INITIAL: &str = "#d62728";

#[derive(Debug, Clone, PartialEq)]
pub struct Style {
    pub stroke: &'static str,
    /// Stroke width as a fraction of the larger scene extent.
    pub width: f64,
    pub dashed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
    pub style: Style,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgScene {
    pub title: String,
    pub polylines: Vec<Polyline>,
}

/// Rounds to 9 significant digits and prints without an exponent.
fn num(x: f64) -> String {
    let v: f64 = format!("{x:.8e}").parse().expect("formatted float");
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

impl SvgScene {
    /// Scene for a refinement trace of planar polygons. `None` unless every level is 2-D.
    pub fn from_trace(trace: &RefinementTrace) -> Option<SvgScene> {
        let last = trace.levels.len() - 1;
        let polylines = trace
            .levels
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let style = match k {
                    0 => Style {
                        stroke: INITIAL,
                        width: 0.004,
                        dashed: false,
                    },
                    k => Style {
                        stroke: PALETTE[(k - 1) % PALETTE.len()],
                        width: if k == last { 0.004 } else { 0.0025 },
                        dashed: k != last,
                    },
                };
                Polyline::from_polygon(p, style)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(SvgScene {
            title: format!("{} refinement, {} steps", trace.scheme.name, last),
            polylines,
        })
    }

    /// `(min x, min y, width, height)` in SVG coordinates (y pointing down), with a 5% margin.
    pub fn view_box(&self) -> [f64; 4] {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in self.polylines.iter().flat_map(|l| &l.points) {
            let q = [p[0], -p[1]];
            for a in 0..2 {
                lo[a] = lo[a].min(q[a]);
                hi[a] = hi[a].max(q[a]);
            }
        }
        if lo[0] > hi[0] {
            return [0.0, 0.0, 1.0, 1.0];
        }
        let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]);
        let extent = if extent > 0.0 { extent } else { 1.0 };
        let margin = 0.05 * extent;
        [
            lo[0] - margin,
            lo[1] - margin,
            hi[0] - lo[0] + 2.0 * margin,
            hi[1] - lo[1] + 2.0 * margin,
        ]
    }

    pub fn to_svg(&self) -> String {
        let [x, y, w, h] = self.view_box();
        let extent = w.max(h);
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"800\" height=\"{}\">",
            num(x),
            num(y),
            num(w),
            num(h),
            num((800.0 * h / w).round())
        );
        let _ = writeln!(out, "  <title>{}</title>", escape(&self.title));
        for (k, l) in self.polylines.iter().enumerate() {
            let mut pts: Vec<String> = l
                .points
                .iter()
                .map(|p| format!("{},{}", num(p[0]), num(-p[1])))
                .collect();
            if l.closed && !pts.is_empty() {
                pts.push(pts[0].clone());
            }
            let dash = if l.style.dashed {
                format!(
                    " stroke-dasharray=\"{} {}\"",
                    num(0.02 * extent),
                    num(0.01 * extent)
                )
            } else {
                String::new()
            };
            let _ = writeln!(
                out,
                "  <polyline id=\"level-{k}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{dash} points=\"{}\"/>",
                l.style.stroke,
                num(l.style.width * extent),
                pts.join(" ")
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

impl Polyline {
    fn from_polygon(p: &Polygon, style: Style) -> Option<Polyline> {
        if p.dimension() != 2 {
            return None;
        }
        Some(Polyline {
            points: p.to_f64().into_iter().map(|v| [v[0], v[1]]).collect(),
            closed: p.topology() == Topology::Closed,
            style,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_digits() {
        assert_eq!(num(1.0 / 3.0), "0.333333333");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(1234567890123.0), "1234567890000");
        assert_eq!(num(0.5), "0.5");
    }

    #[test]
    fn escapes_title() {
        assert_eq!(escape("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
    }

    #[test]
    fn margin_is_five_percent() {
        let scene = SvgScene {
            title: String::new(),
            polylines: vec![Polyline {
                points: vec![[0.0, 0.0], [10.0, 0.0], [10.0, 10.0]],
                closed: true,
                style: Style {
                    stroke: INITIAL,
                    width: 0.004,
                    dashed: false,
                },
            }],
        };
        assert_eq!(scene.view_box(), [-0.5, -10.5, 11.0, 11.0]);
    }
}
