use std::fmt;
use std::ops::Mul;

use crate::numeric::Rational;

/// Square matrix of exact rationals.
///
/// [`SmallMatrix::get`] and [`SmallMatrix::set`] use 1-based `(row, column)`
/// indices so that transfer-matrix formulas can be written as they are usually
/// stated. [`SmallMatrix::at`] is the 0-based accessor used internally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SmallMatrix {
    size: usize,
    entries: Vec<Rational>,
}

impl SmallMatrix {
    pub fn zeros(size: usize) -> Self {
        assert!(size >= 1, "matrix size must be positive");
        SmallMatrix {
            size,
            entries: vec![Rational::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = SmallMatrix::zeros(size);
        for i in 0..size {
            m.entries[i * size + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; panics unless the rows form a square grid.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let size = rows.len();
        assert!(size >= 1, "matrix size must be positive");
        assert!(
            rows.iter().all(|r| r.len() == size),
            "matrix must be square"
        );
        SmallMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(size >= 1, "matrix size must be positive");
        let mut entries = Vec::with_capacity(size * size);
        for i in 1..=size {
            for j in 1..=size {
                entries.push(f(i, j));
            }
        }
        SmallMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// 1-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!((1..=self.size).contains(&i) && (1..=self.size).contains(&j));
        &self.entries[(i - 1) * self.size + (j - 1)]
    }

    /// 1-based entry update.
    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!((1..=self.size).contains(&i) && (1..=self.size).contains(&j));
        self.entries[(i - 1) * self.size + (j - 1)] = value;
    }

    pub(crate) fn at(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.size + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.size)
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.rows()
            .map(|r| r.iter().map(Rational::to_f64).collect())
            .collect()
    }

    /// Maximum absolute row sum.
    pub fn infinity_norm(&self) -> Rational {
        self.rows()
            .map(|row| row.iter().map(Rational::abs).sum::<Rational>())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Principal submatrix on the given 0-based indices.
    pub(crate) fn principal_submatrix(&self, keep: &[usize]) -> SmallMatrix {
        let n = keep.len();
        let mut entries = Vec::with_capacity(n * n);
        for &i in keep {
            for &j in keep {
                entries.push(self.at(i, j).clone());
            }
        }
        SmallMatrix { size: n, entries }
    }
}

impl Mul for &SmallMatrix {
    type Output = SmallMatrix;

    fn mul(self, rhs: &SmallMatrix) -> SmallMatrix {
        assert_eq!(self.size, rhs.size, "matrix sizes differ");
        let n = self.size;
        let mut out = SmallMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for SmallMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SmallMatrix {}x{} [", self.size, self.size)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
