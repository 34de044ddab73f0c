//! The `subdiv` command line.
//!
//! Exit codes: 0 success, 1 a `verify` check failed, 2 bad input (parse or
//! I/O), 3 a precondition failed (parity, arity, too few points,
//! convergence), 4 the closed-form conversion disagrees with the symbol product.

pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::report::{pair_json, precision_json, regularity_json, regularity_text};
use crate::analysis::{
    degree_of_precision, holder_regularity_with, AnalysisError, HolderOptions, UpperNorm,
    DEFAULT_MAX_DEGREE,
};
use crate::conversion::{convert_theorem, convert_via_symbol, rule_lines, ConversionError};
use crate::refinement::{refine, Polygon, PolygonError, Topology};
use crate::scheme::io::{mask_to_json, read_mask_file, MaskFile};
use crate::scheme::{Catalog, SubdivisionScheme};
use crate::verify::{verify_catalog, CheckGroup};
use svg::SvgScene;

#[derive(Debug, Parser)]
#[command(
    name = "subdiv",
    version,
    about = "Exact analysis and refinement of stationary subdivision schemes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Theorem,
    Symbol,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Spectral,
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OnlyArg {
    Catalog,
    Convert,
    Holder,
    Precision,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SchemeSource {
    /// Catalog scheme name
    #[arg(long)]
    pub scheme: Option<String>,
    /// Mask JSON file
    #[arg(long, value_name = "FILE")]
    pub mask: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TopologyArgs {
    /// Treat the polygon as closed (overrides the CSV header)
    #[arg(long, conflicts_with = "open")]
    pub closed: bool,
    /// Treat the polygon as open
    #[arg(long)]
    pub open: bool,
}

impl TopologyArgs {
    fn choice(&self) -> Option<Topology> {
        match (self.closed, self.open) {
            (true, _) => Some(Topology::Closed),
            (_, true) => Some(Topology::Open),
            _ => None,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert a binary scheme to its quaternary counterpart
    Convert {
        /// Binary mask JSON file
        #[arg(
            long = "in",
            value_name = "FILE",
            required_unless_present = "scheme",
            conflicts_with = "scheme"
        )]
        input: Option<PathBuf>,
        /// Catalog binary scheme instead of a file
        #[arg(long)]
        scheme: Option<String>,
        /// Write the quaternary mask JSON here
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "theorem")]
        method: Method,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Refine a control polygon
    Refine {
        #[command(flatten)]
        source: SchemeSource,
        /// Polygon CSV: optional closed/open header, one point per line
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[command(flatten)]
        topology: TopologyArgs,
        /// Write the final level as CSV here
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Hölder regularity bounds
    Holder {
        #[command(flatten)]
        source: SchemeSource,
        /// Norm for the upper bound
        #[arg(long, value_enum, default_value = "spectral")]
        norm: NormArg,
        /// Length of matrix products used for the bounds
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Also analyze the quaternary conversion of a binary scheme
        #[arg(long)]
        pair: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Degree of polynomial precision and generation
    Precision {
        #[command(flatten)]
        source: SchemeSource,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List catalog schemes, or show one
    Catalog {
        name: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the catalog against the reference values
    Verify {
        #[arg(long, value_enum)]
        only: Option<OnlyArg>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Plot a polygon and its refinements as SVG
    Plot {
        #[command(flatten)]
        source: SchemeSource,
        /// Polygon CSV
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        steps: usize,
        #[command(flatten)]
        topology: TopologyArgs,
        /// SVG file; standard output when absent
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

/// A failed command: exit code and message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    fn precondition(message: impl ToString) -> Self {
        Failure {
            code: 3,
            message: message.to_string(),
        }
    }
}

impl From<ConversionError> for Failure {
    fn from(e: ConversionError) -> Self {
        Failure::precondition(e)
    }
}

impl From<PolygonError> for Failure {
    fn from(e: PolygonError) -> Self {
        match e {
            PolygonError::TooFewPoints { .. } => Failure::precondition(e),
            _ => Failure::input(e),
        }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        Failure::precondition(e)
    }
}

type Outcome = Result<i32, Failure>;

fn load_scheme(source: &SchemeSource) -> Result<SubdivisionScheme, Failure> {
    match (&source.scheme, &source.mask) {
        (_, Some(path)) => {
            read_mask_file(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
        }
        (Some(name), None) => Catalog::load()
            .map_err(Failure::input)?
            .get(name)
            .map_err(Failure::input),
        (None, None) => Err(Failure::input("no scheme given")),
    }
}

fn load_polygon(path: &Path, topology: Option<Topology>) -> Result<Polygon, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let p =
        Polygon::from_csv(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(match topology {
        Some(t) => p.with_topology(t)?,
        None => p,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(Failure::input)
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(v).expect("serializable");
    text.push('\n');
    emit(out, &text)
}

fn mask_value(s: &SubdivisionScheme) -> Value {
    serde_json::to_value(MaskFile::from_scheme(s)).expect("serializable")
}

fn rules_text(s: &SubdivisionScheme) -> String {
    rule_lines(s).iter().map(|l| format!("{l}\n")).collect()
}

fn cmd_convert(
    input: Option<&Path>,
    scheme: Option<&str>,
    out_path: Option<&Path>,
    method: Method,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let binary = match input {
        Some(path) => {
            read_mask_file(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
        }
        None => load_scheme(&SchemeSource {
            scheme: scheme.map(str::to_string),
            mask: None,
        })?,
    };
    let (quaternary, detail) = match method {
        Method::Theorem => {
            let r = convert_theorem(&binary)?;
            (r.quaternary, Some((r.parity, r.rule_widths)))
        }
        Method::Symbol => (convert_via_symbol(&binary)?, None),
        Method::Both => {
            let r = convert_theorem(&binary)?;
            let oracle = convert_via_symbol(&binary)?;
            if oracle.mask != r.quaternary.mask {
                return Err(Failure {
                    code: 4,
                    message: format!(
                        "{}: closed-form conversion differs from the symbol product\n  closed form: {}\n  symbol:      {}",
                        binary.name,
                        mask_to_json(&r.quaternary).trim_end().replace('\n', ""),
                        mask_to_json(&oracle).trim_end().replace('\n', "")
                    ),
                });
            }
            (r.quaternary, Some((r.parity, r.rule_widths)))
        }
    };
    if let Some(path) = out_path {
        write_file(path, &mask_to_json(&quaternary))?;
    }
    match format {
        Format::Json => {
            let mut v = json!({
                "binary": binary.name,
                "method": format!("{method:?}").to_lowercase(),
                "mask": mask_value(&quaternary),
                "rules": rule_lines(&quaternary).iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            if let Some((parity, widths)) = detail {
                v["parity"] = json!(parity.to_string());
                v["rule_widths"] = json!(widths);
            }
            emit_json(out, &v)?;
        }
        Format::Text => {
            let mut text = format!("{} -> {}", binary.name, quaternary.name);
            if let Some((parity, widths)) = detail {
                text.push_str(&format!(", {parity}, rule widths {widths:?}"));
            }
            if method == Method::Both {
                text.push_str(", symbol product agrees");
            }
            text.push('\n');
            text.push_str(&rules_text(&quaternary));
            if out_path.is_none() {
                text.push_str(&mask_to_json(&quaternary));
            }
            emit(out, &text)?;
        }
    }
    Ok(0)
}

fn polygon_json(p: &Polygon) -> Value {
    json!({
        "topology": p.topology().to_string(),
        "points": p.points().iter()
            .map(|q| q.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_refine(
    source: &SchemeSource,
    input: &Path,
    steps: usize,
    topology: Option<Topology>,
    out_path: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let scheme = load_scheme(source)?;
    let polygon = load_polygon(input, topology)?;
    let trace = refine(&polygon, &scheme, steps)?;
    let last = trace.levels.last().expect("input level");
    if let Some(path) = out_path {
        write_file(path, &last.to_csv())?;
    }
    match format {
        Format::Json => emit_json(
            out,
            &json!({
                "scheme": scheme.name,
                "steps": steps,
                "levels": trace.levels.iter().map(polygon_json).collect::<Vec<_>>(),
                "displacement_bound": trace.displacement_bound().to_string(),
            }),
        )?,
        Format::Text if out_path.is_some() => {
            let counts: Vec<String> = trace.levels.iter().map(|l| l.len().to_string()).collect();
            emit(
                out,
                &format!(
                    "{}: {} points per level\n",
                    scheme.name,
                    counts.join(" -> ")
                ),
            )?
        }
        Format::Text => emit(out, &last.to_csv())?,
    }
    Ok(0)
}

fn cmd_holder(
    source: &SchemeSource,
    norm: NormArg,
    depth: usize,
    pair: bool,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let scheme = load_scheme(source)?;
    let options = HolderOptions {
        depth,
        upper_norm: match norm {
            NormArg::Spectral => UpperNorm::Spectral,
            NormArg::Infinity => UpperNorm::Infinity,
        },
        ..HolderOptions::default()
    };
    let report = holder_regularity_with(&scheme, options)?;
    if !pair {
        match format {
            Format::Json => emit_json(out, &regularity_json(&report))?,
            Format::Text => emit(out, &regularity_text(&report))?,
        }
        return Ok(0);
    }
    let quaternary = convert_theorem(&scheme)?.quaternary;
    let q = holder_regularity_with(&quaternary, options)?;
    let p = crate::analysis::RegularityPair {
        delta_mid: q.r_mid - report.r_mid,
        binary: report,
        quaternary: q,
    };
    match format {
        Format::Json => emit_json(out, &pair_json(&p))?,
        Format::Text => emit(
            out,
            &format!(
                "{}{}r_mid difference (quaternary - binary): {:.9}\n",
                regularity_text(&p.binary),
                regularity_text(&p.quaternary),
                p.delta_mid
            ),
        )?,
    }
    Ok(0)
}

fn cmd_precision(
    source: &SchemeSource,
    max_degree: usize,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let scheme = load_scheme(source)?;
    let r = degree_of_precision(&scheme, max_degree)?;
    match format {
        Format::Json => emit_json(out, &precision_json(&scheme.name, &r))?,
        Format::Text => {
            let shift = r
                .parameter_shift
                .as_ref()
                .map_or("none".to_string(), ToString::to_string);
            emit(
                out,
                &format!(
                    "{}: degree of precision {}, degree of generation {}, parameter shift {shift}\n",
                    scheme.name, r.degree_of_precision, r.degree_of_generation
                ),
            )?
        }
    }
    Ok(0)
}

fn cmd_catalog(name: Option<&str>, format: Format, out: &mut dyn Write) -> Outcome {
    let cat = Catalog::load().map_err(Failure::input)?;
    if let Some(name) = name {
        let s = cat.get(name).map_err(Failure::input)?;
        match format {
            Format::Json => emit_json(out, &mask_value(&s))?,
            Format::Text => emit(
                out,
                &format!(
                    "{} ({})\n{}{}",
                    s.name,
                    s.provenance,
                    rules_text(&s),
                    mask_to_json(&s)
                ),
            )?,
        }
        return Ok(0);
    }
    match format {
        Format::Json => emit_json(
            out,
            &Value::Array(
                cat.iter()
                    .map(|s| {
                        json!({
                            "name": s.name,
                            "arity": s.arity(),
                            "first_index": s.mask.first_index(),
                            "last_index": s.mask.last_index(),
                            "provenance": s.provenance,
                        })
                    })
                    .collect(),
            ),
        )?,
        Format::Text => {
            let width = cat.names().map(str::len).max().unwrap_or(0);
            let text: String = cat
                .iter()
                .map(|s| {
                    format!(
                        "{:<width$}  arity {}  support [{}, {}]  {}\n",
                        s.name,
                        s.arity(),
                        s.mask.first_index(),
                        s.mask.last_index(),
                        s.provenance
                    )
                })
                .collect();
            emit(out, &text)?
        }
    }
    Ok(0)
}

fn cmd_verify(only: Option<OnlyArg>, format: Format, out: &mut dyn Write) -> Outcome {
    let cat = Catalog::load().map_err(Failure::input)?;
    let group = only.map(|o| match o {
        OnlyArg::Catalog => CheckGroup::Catalog,
        OnlyArg::Convert => CheckGroup::Convert,
        OnlyArg::Holder => CheckGroup::Holder,
        OnlyArg::Precision => CheckGroup::Precision,
    });
    let report = verify_catalog(&cat, group);
    match format {
        Format::Json => emit_json(out, &report.to_json())?,
        Format::Text => emit(out, &report.to_text())?,
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_plot(
    source: &SchemeSource,
    input: &Path,
    steps: usize,
    topology: Option<Topology>,
    out_path: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let scheme = load_scheme(source)?;
    let polygon = load_polygon(input, topology)?;
    if polygon.dimension() != 2 {
        return Err(Failure::input(format!(
            "{}: plot needs 2-D points, got dimension {}",
            input.display(),
            polygon.dimension()
        )));
    }
    let trace = refine(&polygon, &scheme, steps)?;
    let svg = SvgScene::from_trace(&trace)
        .expect("planar levels")
        .to_svg();
    match out_path {
        Some(path) => write_file(path, &svg)?,
        None => emit(out, &svg)?,
    }
    Ok(0)
}

/// Runs a parsed command, writing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Convert {
            input,
            scheme,
            out: out_path,
            method,
            format,
        } => cmd_convert(
            input.as_deref(),
            scheme.as_deref(),
            out_path.as_deref(),
            *method,
            *format,
            out,
        ),
        Command::Refine {
            source,
            input,
            steps,
            topology,
            out: out_path,
            format,
        } => cmd_refine(
            source,
            input,
            *steps,
            topology.choice(),
            out_path.as_deref(),
            *format,
            out,
        ),
        Command::Holder {
            source,
            norm,
            depth,
            pair,
            format,
        } => cmd_holder(source, *norm, *depth, *pair, *format, out),
        Command::Precision {
            source,
            max_degree,
            format,
        } => cmd_precision(source, *max_degree, *format, out),
        Command::Catalog { name, format } => cmd_catalog(name.as_deref(), *format, out),
        Command::Verify { only, format } => cmd_verify(*only, *format, out),
        Command::Plot {
            source,
            input,
            steps,
            topology,
            out: out_path,
        } => cmd_plot(
            source,
            input,
            *steps,
            topology.choice(),
            out_path.as_deref(),
            out,
        ),
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("subdiv").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn convert_catalog_scheme_both() {
        let (code, out, _) = run_args(&[
            "convert",
            "--scheme",
            "binary-chaikin-2pt",
            "--method",
            "both",
        ]);
        assert_eq!(code, 0);
        assert!(
            out.contains("g[4φ-2] = 3/16 g[φ-1] + 3/4 g[φ] + 1/16 g[φ+1]"),
            "{out}"
        );
        assert!(out.contains("symbol product agrees"));
    }

    #[test]
    fn missing_scheme_is_usage_error() {
        let (code, _, err) = run_args(&["holder"]);
        assert_eq!(code, 2);
        assert!(err.contains("--scheme"), "{err}");
    }

    #[test]
    fn unknown_scheme() {
        let (code, _, err) = run_args(&["precision", "--scheme", "nope"]);
        assert_eq!(code, 2);
        assert!(err.contains("nope"));
    }

    #[test]
    fn catalog_lists_everything() {
        let (code, out, _) = run_args(&["catalog"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 14);
    }

    #[test]
    fn chaikin_regularity_text() {
        let (code, out, _) = run_args(&[
            "holder",
            "--scheme",
            "binary-chaikin-2pt",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["r_mid"], json!(2.0));
        assert_eq!(v["smoothing_order"], json!(3));
    }
}
