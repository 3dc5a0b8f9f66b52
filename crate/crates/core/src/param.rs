//! The solution family of a unimodular row.
//!
//! If `x a^t = 1`, every other solution is `y = x + a H` for some
//! antisymmetric `H`, and conversely every such `y` is a solution. The
//! converse rests on `(a H) a^t = 0`, which holds for any tuple `a`.
//!
//! Nothing here uses more than the commutative-ring operations on
//! [`MultiPoly`].

use crate::error::{Error, Result};
use crate::multipoly::{MultiPoly, PolyTuple};

/// `N x N` polynomial matrix with `H[j][k] = -H[k][j]`.
///
/// Only the strict upper triangle is stored, so antisymmetry cannot be
/// violated once a value exists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AntisymMatrix {
    size: usize,
    n: usize,
    // Row-major strict upper triangle: (0,1), (0,2), ..., (1,2), ...
    upper: Vec<MultiPoly>,
}

impl AntisymMatrix {
    pub fn zero(size: usize, n: usize) -> Self {
        AntisymMatrix {
            size,
            n,
            upper: vec![MultiPoly::zero(n); size * size.saturating_sub(1) / 2],
        }
    }

    /// Validates a full matrix; fails with `NotAntisymmetric` at the first
    /// offending entry.
    pub fn from_full(entries: Vec<Vec<MultiPoly>>, n: usize) -> Result<Self> {
        let size = entries.len();
        let mut m = AntisymMatrix::zero(size, n);
        for (j, row) in entries.iter().enumerate() {
            if row.len() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    found: row.len(),
                });
            }
            for (k, e) in row.iter().enumerate() {
                if e.n() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: e.n(),
                    });
                }
                if !(e + &entries[k][j]).is_zero() {
                    return Err(Error::NotAntisymmetric {
                        row: j + 1,
                        col: k + 1,
                    });
                }
            }
        }
        for (j, row) in entries.iter().enumerate() {
            for (k, p) in row.iter().enumerate().skip(j + 1) {
                m.set(j, k, p.clone())?;
            }
        }
        Ok(m)
    }

    /// Size `N`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Variable count of the entries.
    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(&self, j: usize, k: usize) -> usize {
        debug_assert!(j < k && k < self.size);
        j * self.size - j * (j + 1) / 2 + (k - j - 1)
    }

    /// Sets `H[j][k] = p` and `H[k][j] = -p` (0-based, `j != k`).
    pub fn set(&mut self, j: usize, k: usize, p: MultiPoly) -> Result<()> {
        if j >= self.size || k >= self.size {
            return Err(Error::IndexOutOfRange(format!(
                "({j},{k}) in a {0}x{0} matrix",
                self.size
            )));
        }
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.n(),
            });
        }
        match j.cmp(&k) {
            std::cmp::Ordering::Less => {
                let s = self.slot(j, k);
                self.upper[s] = p;
            }
            std::cmp::Ordering::Greater => {
                let s = self.slot(k, j);
                self.upper[s] = -p;
            }
            std::cmp::Ordering::Equal if p.is_zero() => {}
            std::cmp::Ordering::Equal => {
                return Err(Error::NotAntisymmetric {
                    row: j + 1,
                    col: k + 1,
                })
            }
        }
        Ok(())
    }

    /// `H[j][k]` (0-based).
    pub fn get(&self, j: usize, k: usize) -> MultiPoly {
        match j.cmp(&k) {
            std::cmp::Ordering::Less => self.upper[self.slot(j, k)].clone(),
            std::cmp::Ordering::Greater => -&self.upper[self.slot(k, j)],
            std::cmp::Ordering::Equal => MultiPoly::zero(self.n),
        }
    }

    /// Strict upper triangle `((j, k), H[j][k])`, 0-based, row-major.
    pub fn upper_entries(&self) -> impl Iterator<Item = ((usize, usize), &MultiPoly)> {
        let size = self.size;
        (0..size)
            .flat_map(move |j| (j + 1..size).map(move |k| (j, k)))
            .zip(self.upper.iter())
    }

    pub fn to_full(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.size)
            .map(|j| (0..self.size).map(|k| self.get(j, k)).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(MultiPoly::is_zero)
    }

    /// Entrywise map; preserves antisymmetry when `op` commutes with negation.
    pub fn map_upper(&self, op: impl Fn(&MultiPoly) -> MultiPoly) -> AntisymMatrix {
        AntisymMatrix {
            size: self.size,
            n: self.n,
            upper: self.upper.iter().map(op).collect(),
        }
    }

    pub fn checked_sub(&self, other: &AntisymMatrix) -> Result<AntisymMatrix> {
        self.check_same_shape(other)?;
        Ok(AntisymMatrix {
            size: self.size,
            n: self.n,
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn checked_add(&self, other: &AntisymMatrix) -> Result<AntisymMatrix> {
        self.check_same_shape(other)?;
        Ok(AntisymMatrix {
            size: self.size,
            n: self.n,
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    fn check_same_shape(&self, other: &AntisymMatrix) -> Result<()> {
        if self.size != other.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: other.size,
            });
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Largest total degree over all entries; `-1` when zero.
    pub fn max_entry_degree(&self) -> i64 {
        self.upper
            .iter()
            .map(MultiPoly::total_degree)
            .max()
            .unwrap_or(-1)
    }

    /// Row vector times matrix: `(a H)_k = sum_j a_j H[j][k]`.
    pub fn left_mul(&self, a: &PolyTuple) -> Result<PolyTuple> {
        self.check_tuple(a)?;
        let entries = (0..self.size)
            .map(|k| {
                (0..self.size).fold(MultiPoly::zero(self.n), |acc, j| {
                    if j == k {
                        return acc;
                    }
                    &acc + &(a.get(j) * &self.get(j, k))
                })
            })
            .collect();
        PolyTuple::new(entries)
    }

    fn check_tuple(&self, a: &PolyTuple) -> Result<()> {
        if a.len() != self.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: a.len(),
            });
        }
        if a.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: a.n(),
            });
        }
        Ok(())
    }
}

/// `y = x + a H`. If `x a^t = 1` then `y a^t = 1`.
pub fn apply_shift(a: &PolyTuple, x: &PolyTuple, h: &AntisymMatrix) -> Result<PolyTuple> {
    a.check_compatible(x)?;
    x.checked_add(&h.left_mul(a)?)
}

/// `H[j][k] = x_j y_k - x_k y_j`.
///
/// When `x` and `y` both solve the Bezout equation for some `a`, then
/// `y = x + a H`, since `x_k - y_k = sum_{j != k} a_j (y_j x_k - y_k x_j)`.
pub fn difference_matrix(x: &PolyTuple, y: &PolyTuple) -> Result<AntisymMatrix> {
    x.check_compatible(y)?;
    let size = x.len();
    let mut h = AntisymMatrix::zero(size, x.n());
    for j in 0..size {
        for k in j + 1..size {
            let e = &(x.get(j) * y.get(k)) - &(x.get(k) * y.get(j));
            h.set(j, k, e)?;
        }
    }
    Ok(h)
}

/// Computes `(a H) a^t`. Identically zero for every `a` and antisymmetric `H`.
pub fn annihilation_residual(a: &PolyTuple, h: &AntisymMatrix) -> Result<MultiPoly> {
    h.left_mul(a)?.dot(a)
}
