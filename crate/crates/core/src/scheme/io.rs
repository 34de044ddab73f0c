//! JSON mask files: `{"name", "arity", "first_index", "coefficients": ["p/q", …]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Mask, MaskError, SubdivisionScheme};
use crate::numeric::Rational;

#[derive(Debug, Error)]
pub enum MaskFileError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid mask JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid mask: {0}")]
    Mask(#[from] MaskError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaskFile {
    pub name: String,
    pub arity: usize,
    pub first_index: i64,
    pub coefficients: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl MaskFile {
    pub fn from_scheme(s: &SubdivisionScheme) -> Self {
        MaskFile {
            name: s.name.clone(),
            arity: s.mask.arity(),
            first_index: s.mask.first_index(),
            coefficients: s.mask.coefficients().to_vec(),
            provenance: (!s.provenance.is_empty()).then(|| s.provenance.clone()),
        }
    }

    pub fn into_scheme(self) -> Result<SubdivisionScheme, MaskError> {
        let mask = Mask::new(self.arity, self.first_index, self.coefficients)?;
        Ok(SubdivisionScheme::new(
            self.name,
            self.provenance.unwrap_or_else(|| "user file".to_string()),
            mask,
        ))
    }
}

pub fn parse_mask_json(text: &str) -> Result<SubdivisionScheme, MaskFileError> {
    let file: MaskFile = serde_json::from_str(text)?;
    Ok(file.into_scheme()?)
}

pub fn mask_to_json(s: &SubdivisionScheme) -> String {
    let mut text = serde_json::to_string_pretty(&MaskFile::from_scheme(s)).expect("serializable");
    text.push('\n');
    text
}

pub fn read_mask_file(path: &Path) -> Result<SubdivisionScheme, MaskFileError> {
    parse_mask_json(&std::fs::read_to_string(path)?)
}

pub fn write_mask_file(path: &Path, s: &SubdivisionScheme) -> Result<(), MaskFileError> {
    std::fs::write(path, mask_to_json(s))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn round_trip() {
        let text =
            r#"{"name":"c","arity":2,"first_index":-2,"coefficients":["1/4","3/4","3/4","1/4"]}"#;
        let s = parse_mask_json(text).unwrap();
        assert_eq!(s.mask.first_index(), -2);
        assert_eq!(s.mask.coefficients()[1], rat(3, 4));
        let back = parse_mask_json(&mask_to_json(&s)).unwrap();
        assert_eq!(back.mask, s.mask);
    }

    #[test]
    fn rejects_bad_tokens() {
        for bad in ["\"1/0\"", "\"1 /4\"", "\"0.25\"", "0.25", "\"1/-4\""] {
            let text =
                format!(r#"{{"name":"c","arity":2,"first_index":0,"coefficients":[{bad}]}}"#);
            assert!(parse_mask_json(&text).is_err(), "{bad}");
        }
    }

    #[test]
    fn rejects_empty_and_low_arity() {
        let zero = r#"{"name":"z","arity":2,"first_index":0,"coefficients":["0/1"]}"#;
        assert!(matches!(
            parse_mask_json(zero),
            Err(MaskFileError::Mask(MaskError::Empty))
        ));
        let unary = r#"{"name":"u","arity":1,"first_index":0,"coefficients":["1/1"]}"#;
        assert!(matches!(
            parse_mask_json(unary),
            Err(MaskFileError::Mask(MaskError::InvalidArity(1)))
        ));
    }
}
