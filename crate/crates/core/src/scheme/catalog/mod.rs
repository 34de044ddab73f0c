//! Built-in schemes and optional user additions.

mod data;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use thiserror::Error;

use super::io::{read_mask_file, MaskFileError};
use super::{Mask, SubdivisionScheme};
use crate::numeric::Rational;

/// Environment variable naming a directory of extra mask JSON files.
pub const CATALOG_DIR_ENV: &str = "SUBDIV_CATALOG_DIR";

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown scheme {0:?}")]
    UnknownScheme(String),
    #[error("duplicate scheme name {name:?} in {path}")]
    Duplicate { name: String, path: PathBuf },
    #[error("cannot read catalog directory {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: MaskFileError,
    },
}

struct BinaryEntry {
    name: &'static str,
    provenance: &'static str,
    /// `β_{2-2n}, β_{4-2n}, …, β_{2n}`.
    weights: &'static [&'static str],
}

/// A quaternary scheme stored as its two distinct rules.
///
/// The phase `-2` rule uses `outer` on offsets `outer_start..`, phase `-1`
/// uses the same offsets with `outer` reversed; phases `0` and `1` do the same
/// with `inner`.
struct QuaternaryEntry {
    name: &'static str,
    provenance: &'static str,
    /// Binary scheme whose conversion this is.
    source: &'static str,
    outer_start: i64,
    outer: &'static [&'static str],
    inner_start: i64,
    inner: &'static [&'static str],
}

fn parse_all(tokens: &[&str]) -> Vec<Rational> {
    tokens
        .iter()
        .map(|t| t.parse().expect("catalog literal"))
        .collect()
}

impl BinaryEntry {
    fn build(&self) -> SubdivisionScheme {
        let mask = Mask::from_dual_weights(&parse_all(self.weights)).expect("catalog mask");
        SubdivisionScheme::new(self.name, self.provenance, mask)
    }
}

impl QuaternaryEntry {
    fn build(&self) -> SubdivisionScheme {
        let outer = parse_all(self.outer);
        let inner = parse_all(self.inner);
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        let mut place = |eta: i64, start: i64, row: &mut dyn Iterator<Item = &Rational>| {
            for (k, w) in row.enumerate() {
                coeffs.insert(eta - 4 * (start + k as i64), w.clone());
            }
        };
        place(-2, self.outer_start, &mut outer.iter());
        place(-1, self.outer_start, &mut outer.iter().rev());
        place(0, self.inner_start, &mut inner.iter());
        place(1, self.inner_start, &mut inner.iter().rev());
        let first = *coeffs.keys().next().unwrap();
        let last = *coeffs.keys().next_back().unwrap();
        let dense = (first..=last)
            .map(|k| coeffs.remove(&k).unwrap_or_else(Rational::zero))
            .collect();
        let mask = Mask::new(4, first, dense).expect("catalog mask");
        SubdivisionScheme::new(self.name, self.provenance, mask)
    }
}

/// Names of the seven binary schemes paired with their quaternary conversions.
pub fn builtin_pairs() -> Vec<(&'static str, &'static str)> {
    data::QUATERNARY
        .iter()
        .map(|q| (q.source, q.name))
        .collect()
}

/// Immutable name-to-scheme map.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: BTreeMap<String, SubdivisionScheme>,
}

impl Catalog {
    /// The fourteen schemes tabulated in the source tables.
    pub fn builtin() -> &'static Catalog {
        static BUILTIN: OnceLock<Catalog> = OnceLock::new();
        BUILTIN.get_or_init(|| {
            let mut entries = BTreeMap::new();
            let schemes = data::BINARY
                .iter()
                .map(BinaryEntry::build)
                .chain(data::QUATERNARY.iter().map(QuaternaryEntry::build));
            for s in schemes {
                entries.insert(s.name.clone(), s);
            }
            Catalog { entries }
        })
    }

    /// Built-ins plus every `*.json` mask in the directory named by [`CATALOG_DIR_ENV`].
    pub fn load() -> Result<Catalog, CatalogError> {
        let mut cat = Catalog::builtin().clone();
        if let Some(dir) = std::env::var_os(CATALOG_DIR_ENV) {
            cat.merge_dir(Path::new(&dir))?;
        }
        Ok(cat)
    }

    /// Adds every `*.json` file in `dir`, in file-name order.
    pub fn merge_dir(&mut self, dir: &Path) -> Result<(), CatalogError> {
        let io_err = |source| CatalogError::Io {
            path: dir.to_path_buf(),
            source,
        };
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(io_err)?
            .map(|e| e.map(|e| e.path()))
            .collect::<Result<_, _>>()
            .map_err(io_err)?;
        paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
        paths.sort();
        for path in paths {
            let scheme = read_mask_file(&path).map_err(|source| CatalogError::File {
                path: path.clone(),
                source,
            })?;
            self.insert(scheme, &path)?;
        }
        Ok(())
    }

    fn insert(&mut self, scheme: SubdivisionScheme, origin: &Path) -> Result<(), CatalogError> {
        if self.entries.contains_key(&scheme.name) {
            return Err(CatalogError::Duplicate {
                name: scheme.name,
                path: origin.to_path_buf(),
            });
        }
        self.entries.insert(scheme.name.clone(), scheme);
        Ok(())
    }

    /// Inserts `scheme`, returning any entry it displaces.
    pub fn replace(&mut self, scheme: SubdivisionScheme) -> Option<SubdivisionScheme> {
        self.entries.insert(scheme.name.clone(), scheme)
    }

    pub fn get(&self, name: &str) -> Result<SubdivisionScheme, CatalogError> {
        self.entries
            .get(name)
            .cloned()
            .ok_or_else(|| CatalogError::UnknownScheme(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &SubdivisionScheme> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
