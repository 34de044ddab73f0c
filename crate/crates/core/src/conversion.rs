//! Binary to relaxed quaternary conversion.
//!
//! A quaternary step that equals two binary steps has symbol `A(c)·A(c²)`.
//! [`convert_even`] and [`convert_odd`] build the four quaternary rules from
//! closed-form double sums over the dual weights; [`convert_via_symbol`]
//! multiplies symbols directly and works for any binary mask.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::numeric::Rational;
use crate::scheme::{Mask, MaskError, Stencil, SubdivisionScheme};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConversionError {
    #[error("expected a binary scheme, got arity {0}")]
    WrongArity(usize),
    #[error("expected {expected} dual weights, found {found}")]
    WrongParity { expected: String, found: usize },
    #[error("mask is not a symmetric dual binary layout")]
    NotDualLayout,
    #[error("m = {given} does not match the {found} dual weights (m = {inferred})")]
    MismatchedM {
        given: usize,
        inferred: usize,
        found: usize,
    },
    #[error("converted mask is empty: {0}")]
    Degenerate(#[from] MaskError),
}

/// Which closed form applies: `4m` dual weights (even) or `4m + 2` (odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even(usize),
    Odd(usize),
}

impl Parity {
    /// Parity of a dual binary scheme with `count` weights.
    pub fn of_count(count: usize) -> Option<Parity> {
        match count % 4 {
            0 if count > 0 => Some(Parity::Even(count / 4)),
            2 => Some(Parity::Odd(count / 4)),
            _ => None,
        }
    }

    pub fn weight_count(self) -> usize {
        match self {
            Parity::Even(m) => 4 * m,
            Parity::Odd(m) => 4 * m + 2,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even(m) => write!(f, "even (m = {m})"),
            Parity::Odd(m) => write!(f, "odd (m = {m})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConversionResult {
    pub quaternary: SubdivisionScheme,
    pub parity: Parity,
    /// Nonzero support width of the rules for phases `-2, -1, 0, 1`.
    pub rule_widths: [usize; 4],
}

impl ConversionResult {
    fn new(quaternary: SubdivisionScheme, parity: Parity) -> Self {
        let mut rule_widths = [0; 4];
        for (w, s) in rule_widths.iter_mut().zip(quaternary.stencils()) {
            *w = s.width();
        }
        ConversionResult {
            quaternary,
            parity,
            rule_widths,
        }
    }

    /// Widest rule, used for naming.
    pub fn point_count(&self) -> usize {
        self.rule_widths.iter().copied().max().unwrap_or(0)
    }
}

/// Dual weights of a binary scheme, indexed by the even label `i` of `β_i`.
struct DualWeights(BTreeMap<i64, Rational>);

impl DualWeights {
    fn get(&self, i: i64) -> Option<&Rational> {
        self.0.get(&i)
    }
}

fn dual_weights(binary: &SubdivisionScheme) -> Result<(DualWeights, usize), ConversionError> {
    if binary.arity() != 2 {
        return Err(ConversionError::WrongArity(binary.arity()));
    }
    let w = binary
        .mask
        .dual_weights()
        .ok_or(ConversionError::NotDualLayout)?;
    let count = w.len();
    let n = (count / 2) as i64;
    let map = w
        .into_iter()
        .enumerate()
        .map(|(k, v)| (2 - 2 * n + 2 * k as i64, v))
        .collect();
    Ok((DualWeights(map), count))
}

fn check_m(given: Option<usize>, parity: Parity, count: usize) -> Result<usize, ConversionError> {
    let inferred = match parity {
        Parity::Even(m) | Parity::Odd(m) => m,
    };
    match given {
        Some(m) if m != inferred => Err(ConversionError::MismatchedM {
            given: m,
            inferred,
            found: count,
        }),
        _ => Ok(inferred),
    }
}

/// Accumulates `β_a·β_b` into phase `eta` at source offset `t`.
struct RuleBuilder {
    terms: BTreeMap<i64, Rational>,
}

impl RuleBuilder {
    fn new() -> Self {
        RuleBuilder {
            terms: BTreeMap::new(),
        }
    }

    fn add(&mut self, beta: &DualWeights, eta: i64, t: i64, a: i64, b: i64) {
        if let (Some(x), Some(y)) = (beta.get(a), beta.get(b)) {
            *self.terms.entry(eta - 4 * t).or_insert_with(Rational::zero) += x * y;
        }
    }

    fn finish(self, name: String, provenance: &str) -> Result<SubdivisionScheme, ConversionError> {
        let (Some(&first), Some(&last)) = (self.terms.keys().next(), self.terms.keys().next_back())
        else {
            return Err(MaskError::Empty.into());
        };
        let mut terms = self.terms;
        let dense = (first..=last)
            .map(|k| terms.remove(&k).unwrap_or_else(Rational::zero))
            .collect();
        let mask = Mask::new(4, first, dense)?;
        Ok(SubdivisionScheme::new(name, provenance, mask))
    }
}

fn quaternary_name(binary: &SubdivisionScheme) -> String {
    format!("{}-quaternary", binary.name)
}

/// Closed-form conversion of a `4m`-weight dual binary scheme.
///
/// `m` is inferred from the weight count when `None`.
pub fn convert_even(
    binary: &SubdivisionScheme,
    m: Option<usize>,
) -> Result<ConversionResult, ConversionError> {
    let (beta, count) = dual_weights(binary)?;
    let parity = Parity::of_count(count).filter(|p| matches!(p, Parity::Even(_)));
    let Some(parity) = parity else {
        return Err(ConversionError::WrongParity {
            expected: "a multiple of 4".into(),
            found: count,
        });
    };
    let m = check_m(m, parity, count)? as i64;
    let mut rb = RuleBuilder::new();
    for l in (1 - m)..=m {
        for a in (-2 * m)..(2 * m) {
            let b = &beta;
            rb.add(b, -2, a + l, 4 - 4 * l, -2 * a);
            rb.add(b, -2, a + l, 2 - 4 * l, 2 + 2 * a);
            rb.add(b, -1, a + l, 4 * l - 2, -2 * a);
            rb.add(b, -1, a + l, 4 * l, 2 + 2 * a);
            rb.add(b, 0, a + l, 4 - 4 * l, 2 + 2 * a);
            rb.add(b, 0, a + l + 1, 2 - 4 * l, -2 * a);
            rb.add(b, 1, a + l, 4 * l - 2, 2 + 2 * a);
            rb.add(b, 1, a + l + 1, 4 * l, -2 * a);
        }
    }
    let q = rb.finish(quaternary_name(binary), "closed-form conversion, even case")?;
    Ok(ConversionResult::new(q, parity))
}

/// Closed-form conversion of a `4m + 2`-weight dual binary scheme.
pub fn convert_odd(
    binary: &SubdivisionScheme,
    m: Option<usize>,
) -> Result<ConversionResult, ConversionError> {
    let (beta, count) = dual_weights(binary)?;
    let parity = Parity::of_count(count).filter(|p| matches!(p, Parity::Odd(_)));
    let Some(parity) = parity else {
        return Err(ConversionError::WrongParity {
            expected: "2 more than a multiple of 4".into(),
            found: count,
        });
    };
    let m = check_m(m, parity, count)? as i64;
    let mut rb = RuleBuilder::new();
    for l in -m..=m {
        for a in (-2 * m)..=(2 * m + 1) {
            let b = &beta;
            rb.add(b, -2, a + l - 1, 2 - 4 * l, 2 * a);
            rb.add(b, -2, a + l, -4 * l, 2 - 2 * a);
            rb.add(b, -1, a + l - 1, 4 * l, 2 * a);
            rb.add(b, -1, a + l, 2 + 4 * l, 2 - 2 * a);
            rb.add(b, 0, a + l, 2 - 4 * l, 2 - 2 * a);
            rb.add(b, 0, a + l, -4 * l, 2 * a);
            rb.add(b, 1, a + l, 4 * l, 2 - 2 * a);
            rb.add(b, 1, a + l, 2 + 4 * l, 2 * a);
        }
    }
    let q = rb.finish(quaternary_name(binary), "closed-form conversion, odd case")?;
    Ok(ConversionResult::new(q, parity))
}

/// Picks [`convert_even`] or [`convert_odd`] from the weight count.
pub fn convert_theorem(binary: &SubdivisionScheme) -> Result<ConversionResult, ConversionError> {
    let (_, count) = dual_weights(binary)?;
    match Parity::of_count(count) {
        Some(Parity::Even(_)) => convert_even(binary, None),
        Some(Parity::Odd(_)) => convert_odd(binary, None),
        None => Err(ConversionError::WrongParity {
            expected: "an even number".into(),
            found: count,
        }),
    }
}

/// Quaternary scheme with symbol `A(c)·A(c²)`.
pub fn convert_via_symbol(
    binary: &SubdivisionScheme,
) -> Result<SubdivisionScheme, ConversionError> {
    if binary.arity() != 2 {
        return Err(ConversionError::WrongArity(binary.arity()));
    }
    let a = binary.mask.symbol();
    let product = a.multiply(&a.substitute_power(2));
    let mask = Mask::from_symbol(4, &product)?;
    let provenance = match binary
        .mask
        .dual_weights()
        .map(|w| Parity::of_count(w.len()))
    {
        Some(Some(_)) => "symbol product A(c)A(c^2)",
        _ => "symbol product A(c)A(c^2); no closed form covers this mask layout",
    };
    Ok(SubdivisionScheme::new(
        quaternary_name(binary),
        provenance,
        mask,
    ))
}

/// One rule `g[rφ+η] = Σ w g[φ+t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleLine {
    pub arity: usize,
    pub phase: i64,
    pub terms: Vec<(i64, Rational)>,
}

fn fmt_index(f: &mut fmt::Formatter<'_>, var: &str, k: i64) -> fmt::Result {
    match k {
        0 => write!(f, "{var}"),
        k if k > 0 => write!(f, "{var}+{k}"),
        k => write!(f, "{var}{k}"),
    }
}

impl fmt::Display for RuleLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g[")?;
        fmt_index(f, &format!("{}φ", self.arity), self.phase)?;
        write!(f, "] = ")?;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, w)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{w} g[")?;
            fmt_index(f, "φ", *t)?;
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl From<(usize, &Stencil)> for RuleLine {
    fn from((arity, s): (usize, &Stencil)) -> Self {
        RuleLine {
            arity,
            phase: s.phase,
            terms: s.terms().map(|(t, w)| (t, w.clone())).collect(),
        }
    }
}

/// Per-phase rule listing of any scheme.
pub fn rule_lines(scheme: &SubdivisionScheme) -> Vec<RuleLine> {
    scheme
        .stencils()
        .iter()
        .map(|s| RuleLine::from((scheme.arity(), s)))
        .collect()
}

pub fn expand_rule_text(result: &ConversionResult) -> Vec<RuleLine> {
    rule_lines(&result.quaternary)
}
