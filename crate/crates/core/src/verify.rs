//! Regression of the catalog against the published reference values: the seven
//! conversion pairs, the degree table and the six regularity pairs.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::analysis::{degree_of_precision, holder_regularity, report::real, DEFAULT_MAX_DEGREE};
use crate::conversion::{convert_theorem, convert_via_symbol};
use crate::scheme::catalog::builtin_pairs;
use crate::scheme::{Catalog, Mask};

/// Tolerance on `r_mid` against the published decimals.
pub const HOLDER_TOLERANCE: f64 = 2e-2;
/// Differences from the published decimals above this are flagged (not failed).
pub const FLAG_THRESHOLD: f64 = 1e-6;

/// `(scheme, degree of precision, degree of generation)`.
pub const DEGREE_TABLE: [(&str, i64, i64); 14] = [
    ("binary-chaikin-2pt", 1, 2),
    ("binary-siddiqi-4pt", 1, 4),
    ("binary-siddiqi-6pt", 1, 6),
    ("binary-siddiqi-8pt", 1, 8),
    ("binary-binomial-10pt", 9, 10),
    ("binary-siddiqi-10pt", 1, 10),
    ("binary-siddiqi-12pt", 1, 12),
    ("quat-chaikin-derived", 1, 2),
    ("quat-5pt", 1, 4),
    ("quat-8pt", 1, 6),
    ("quat-11pt", 1, 8),
    ("quat-14pt-binomial", 9, 10),
    ("quat-14pt", 1, 10),
    ("quat-17pt", 1, 12),
];

/// Published midpoint regularity: `(binary, quaternary, r binary, r quaternary)`.
pub const HOLDER_TABLE: [(&str, &str, f64, f64); 6] = [
    ("binary-siddiqi-4pt", "quat-5pt", 4.124809715, 4.12397897),
    ("binary-siddiqi-6pt", "quat-8pt", 6.383689358, 6.378805452),
    ("binary-siddiqi-8pt", "quat-11pt", 8.575077912, 8.561638397),
    (
        "binary-binomial-10pt",
        "quat-14pt-binomial",
        3.768111637,
        4.571743466,
    ),
    ("binary-siddiqi-10pt", "quat-14pt", 10.67905327, 10.65483615),
    ("binary-siddiqi-12pt", "quat-17pt", 12.72368201, 12.69332847),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckGroup {
    Catalog,
    Convert,
    Precision,
    Holder,
}

impl CheckGroup {
    pub fn label(self) -> &'static str {
        match self {
            CheckGroup::Catalog => "catalog",
            CheckGroup::Convert => "convert",
            CheckGroup::Precision => "precision",
            CheckGroup::Holder => "holder",
        }
    }
}

impl fmt::Display for CheckGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CheckGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "catalog" => Ok(CheckGroup::Catalog),
            "convert" => Ok(CheckGroup::Convert),
            "precision" => Ok(CheckGroup::Precision),
            "holder" => Ok(CheckGroup::Holder),
            _ => Err(format!(
                "unknown check group {s:?} (expected catalog, convert, precision or holder)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub group: CheckGroup,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
    /// Computed minus published value, for regularity checks.
    pub delta: Option<f64>,
    /// Set when `|delta|` exceeds [`FLAG_THRESHOLD`].
    pub flagged: bool,
}

impl CheckOutcome {
    fn new(
        group: CheckGroup,
        subject: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> Self {
        CheckOutcome {
            group,
            subject: subject.into(),
            passed,
            detail: detail.into(),
            delta: None,
            flagged: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    pub fn to_text(&self) -> String {
        let width = self
            .outcomes
            .iter()
            .map(|o| o.subject.len())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for o in &self.outcomes {
            out.push_str(&format!(
                "{:<9} {:<width$}  {}  {}{}\n",
                o.group.label(),
                o.subject,
                if o.passed { "PASS" } else { "FAIL" },
                o.detail,
                if o.flagged {
                    "  [differs from published value by more than 1e-6]"
                } else {
                    ""
                },
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            self.outcomes.len(),
            self.outcomes.len() - failed,
            failed
        ));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.outcomes.iter().map(|o| json!({
                "group": o.group.label(),
                "subject": o.subject,
                "passed": o.passed,
                "detail": o.detail,
                "delta": o.delta.map(real),
                "flagged": o.flagged,
            })).collect::<Vec<_>>(),
        })
    }
}

fn mask_difference(expected: &Mask, found: &Mask) -> Option<String> {
    if expected == found {
        return None;
    }
    if expected.first_index() != found.first_index() || expected.len() != found.len() {
        return Some(format!(
            "support [{}, {}] expected [{}, {}]",
            found.first_index(),
            found.last_index(),
            expected.first_index(),
            expected.last_index()
        ));
    }
    let k = (expected.first_index()..=expected.last_index())
        .find(|&k| expected.coeff(k) != found.coeff(k))
        .expect("masks differ somewhere");
    Some(format!(
        "coefficient {k} is {} expected {}",
        found.coeff(k),
        expected.coeff(k)
    ))
}

fn catalog_checks(cat: &Catalog, out: &mut Vec<CheckOutcome>) {
    for s in cat.iter() {
        let check = s.check_convergence_condition();
        let detail = if check.passed() {
            "coset sums all 1".to_string()
        } else {
            let sums: Vec<String> = check
                .sums
                .iter()
                .map(|(eta, v)| format!("{eta}:{v}"))
                .collect();
            format!("coset sums {}", sums.join(", "))
        };
        out.push(CheckOutcome::new(
            CheckGroup::Catalog,
            &s.name,
            check.passed(),
            detail,
        ));
    }
}

fn convert_checks(cat: &Catalog, out: &mut Vec<CheckOutcome>) {
    for (b, q) in builtin_pairs() {
        let subject = format!("{b} -> {q}");
        let outcome = (|| {
            let binary = cat.get(b).map_err(|e| e.to_string())?;
            let table = cat.get(q).map_err(|e| e.to_string())?;
            let theorem = convert_theorem(&binary).map_err(|e| format!("{b}: {e}"))?;
            let symbol = convert_via_symbol(&binary).map_err(|e| format!("{b}: {e}"))?;
            if let Some(d) = mask_difference(&symbol.mask, &theorem.quaternary.mask) {
                return Err(format!("closed form differs from symbol product: {d}"));
            }
            if let Some(d) = mask_difference(&table.mask, &theorem.quaternary.mask) {
                return Err(format!("{q}: conversion of {b} differs from table: {d}"));
            }
            Ok(format!(
                "{} coefficients equal, rule widths {:?}",
                table.mask.len(),
                theorem.rule_widths
            ))
        })();
        out.push(match outcome {
            Ok(d) => CheckOutcome::new(CheckGroup::Convert, subject, true, d),
            Err(d) => CheckOutcome::new(CheckGroup::Convert, subject, false, d),
        });
    }
}

fn precision_checks(cat: &Catalog, out: &mut Vec<CheckOutcome>) {
    for (name, dop, dog) in DEGREE_TABLE {
        let outcome = cat
            .get(name)
            .map_err(|e| e.to_string())
            .and_then(|s| degree_of_precision(&s, DEFAULT_MAX_DEGREE).map_err(|e| e.to_string()));
        out.push(match outcome {
            Ok(r) => {
                let ok = r.degree_of_precision == dop && r.degree_of_generation == dog;
                CheckOutcome::new(
                    CheckGroup::Precision,
                    name,
                    ok,
                    format!(
                        "DoP {} DoG {} (table {dop} {dog})",
                        r.degree_of_precision, r.degree_of_generation
                    ),
                )
            }
            Err(e) => CheckOutcome::new(CheckGroup::Precision, name, false, e),
        });
    }
}

fn holder_check(cat: &Catalog, name: &str, published: f64) -> CheckOutcome {
    let report = match cat
        .get(name)
        .map_err(|e| e.to_string())
        .and_then(|s| holder_regularity(&s).map_err(|e| e.to_string()))
    {
        Ok(r) => r,
        Err(e) => return CheckOutcome::new(CheckGroup::Holder, name, false, e),
    };
    let delta = report.r_mid - published;
    let ordered = report.r_lower <= report.r_mid && report.r_mid <= report.r_upper;
    let inf_upper = report
        .inf_norms
        .iter()
        .map(|n| n.to_f64())
        .fold(report.xi_lower, f64::max);
    let inf_mid = report.smoothing_order as f64
        - ((report.xi_lower + inf_upper) / 2.0).ln() / (report.arity as f64).ln();
    let mut detail = format!(
        "r_mid {:.9} published {published} delta {delta:+.2e}; bounds [{:.9}, {:.9}]; infinity-norm midpoint {inf_mid:.9}",
        report.r_mid, report.r_lower, report.r_upper
    );
    if !ordered {
        detail.push_str("; bounds out of order");
    }
    CheckOutcome {
        group: CheckGroup::Holder,
        subject: name.to_string(),
        passed: ordered && delta.abs() <= HOLDER_TOLERANCE,
        detail,
        delta: Some(delta),
        flagged: delta.abs() > FLAG_THRESHOLD,
    }
}

fn holder_checks(cat: &Catalog, out: &mut Vec<CheckOutcome>) {
    for (b, q, rb, rq) in HOLDER_TABLE {
        out.push(holder_check(cat, b, rb));
        out.push(holder_check(cat, q, rq));
    }
}

/// Runs every check group, or only `only`.
pub fn verify_catalog(cat: &Catalog, only: Option<CheckGroup>) -> VerifyReport {
    let mut outcomes = Vec::new();
    let wanted = |g: CheckGroup| only.is_none_or(|o| o == g);
    if wanted(CheckGroup::Catalog) {
        catalog_checks(cat, &mut outcomes);
    }
    if wanted(CheckGroup::Convert) {
        convert_checks(cat, &mut outcomes);
    }
    if wanted(CheckGroup::Precision) {
        precision_checks(cat, &mut outcomes);
    }
    if wanted(CheckGroup::Holder) {
        holder_checks(cat, &mut outcomes);
    }
    VerifyReport { outcomes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use crate::scheme::SubdivisionScheme;

    #[test]
    fn conversion_group_passes() {
        let r = verify_catalog(Catalog::builtin(), Some(CheckGroup::Convert));
        assert_eq!(r.outcomes.len(), 7);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn corrupted_quaternary_is_named() {
        let mut cat = Catalog::builtin().clone();
        let good = cat.get("quat-5pt").unwrap();
        let mut coeffs = good.mask.coefficients().to_vec();
        coeffs.swap(0, 1);
        let bad = Mask::new(4, good.mask.first_index(), coeffs).unwrap();
        cat.replace(SubdivisionScheme::new("quat-5pt", "corrupted", bad));
        let r = verify_catalog(&cat, Some(CheckGroup::Convert));
        let failed: Vec<_> = r.failures().collect();
        assert_eq!(failed.len(), 1);
        assert!(
            failed[0].detail.starts_with("quat-5pt:"),
            "{}",
            failed[0].detail
        );
    }

    #[test]
    fn non_affine_entry_fails_catalog_group() {
        let mut cat = Catalog::builtin().clone();
        let m = Mask::new(2, 0, vec![rat(1, 2), rat(1, 2), rat(1, 4)]).unwrap();
        cat.replace(SubdivisionScheme::new("lopsided", "test", m));
        let r = verify_catalog(&cat, Some(CheckGroup::Catalog));
        let failed: Vec<_> = r.failures().map(|o| o.subject.as_str()).collect();
        assert_eq!(failed, ["lopsided"]);
    }

    #[test]
    fn group_names_parse() {
        for g in [
            CheckGroup::Catalog,
            CheckGroup::Convert,
            CheckGroup::Precision,
            CheckGroup::Holder,
        ] {
            assert_eq!(g.label().parse::<CheckGroup>().unwrap(), g);
        }
        assert!("everything".parse::<CheckGroup>().is_err());
    }
}
