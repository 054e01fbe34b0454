//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything here is fraction-free in the elimination phase (Bareiss one-step
//! condensation, so intermediate entries stay integral and divisions are
//! exact) with rational back-substitution cleared to primitive integer
//! vectors at the boundary. No floating point anywhere.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::gcd_all;

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::LengthMismatch {
                    expected: ncols,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Builds a matrix whose `j`th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<BigInt>]) -> Result<Self> {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, Vec::len);
        for col in cols {
            if col.len() != nrows {
                return Err(Error::LengthMismatch {
                    expected: nrows,
                    got: col.len(),
                });
            }
        }
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in 0..nrows {
            for col in cols {
                entries.push(col[r].clone());
            }
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Convenience constructor for literal test data.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let converted = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::from_rows(converted).expect("ragged literal rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    fn to_row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }
}

/// Witness that a target column satisfies `k * target = sum_j coeffs[j] * col_j`
/// with `k > 0` and `gcd(k, coeffs) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependenceWitness {
    pub k: BigInt,
    pub coeffs: Vec<BigInt>,
}

impl DependenceWitness {
    pub fn new(k: BigInt, coeffs: Vec<BigInt>) -> Result<Self> {
        if !k.is_positive() {
            return Err(Error::ModelInvalid {
                reason: format!("witness multiplier {k} is not positive"),
            });
        }
        let mut g = gcd_all(&coeffs);
        g = num::integer::gcd(g, k.clone());
        if !g.is_one() {
            return Err(Error::ModelInvalid {
                reason: format!("witness is not gcd-reduced (gcd {g})"),
            });
        }
        Ok(Self { k, coeffs })
    }

    /// Exact check of the defining equation against the given columns.
    pub fn holds_for(&self, target: &[BigInt], cols: &[Vec<BigInt>]) -> bool {
        if cols.len() != self.coeffs.len() {
            return false;
        }
        (0..target.len()).all(|r| {
            let lhs = &self.k * &target[r];
            let rhs: BigInt = self
                .coeffs
                .iter()
                .zip(cols)
                .map(|(c, col)| c * &col[r])
                .sum();
            lhs == rhs
        })
    }
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivot_cols: Vec<usize>,
    swaps: usize,
}

/// Bareiss fraction-free elimination with row pivoting; divisions are exact.
fn echelon(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = rows.len();
    let mut prev = BigInt::one();
    let mut pivot_cols = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            swaps += 1;
        }
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let num = &rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                rows[i][j] = num / &prev;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }
    Echelon {
        rows,
        pivot_cols,
        swaps,
    }
}

/// Rank over the rationals (equivalently, over the integers as a free module).
pub fn rank_int(m: &IntMatrix) -> usize {
    echelon(m.to_row_vecs(), m.cols).pivot_cols.len()
}

/// Determinant of a square matrix via the last Bareiss pivot.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::LengthMismatch {
            expected: m.rows,
            got: m.cols,
        });
    }
    if m.rows == 0 {
        return Ok(BigInt::one());
    }
    let ech = echelon(m.to_row_vecs(), m.cols);
    if ech.pivot_cols.len() < m.rows {
        return Ok(BigInt::zero());
    }
    let last = ech.rows[m.rows - 1][m.cols - 1].clone();
    Ok(if ech.swaps % 2 == 0 { last } else { -last })
}

/// True when the selected columns are linearly independent. Duplicate indices
/// count as a repeated column and therefore a dependent selection.
pub fn columns_independent(m: &IntMatrix, selected: &[usize]) -> Result<bool> {
    for &i in selected {
        if i >= m.cols {
            return Err(Error::IndexOutOfRange {
                index: i,
                cols: m.cols,
            });
        }
    }
    if selected.is_empty() {
        return Ok(true);
    }
    let cols: Vec<Vec<BigInt>> = selected.iter().map(|&i| m.column(i)).collect();
    let sub = IntMatrix::from_columns(&cols)?;
    Ok(rank_int(&sub) == selected.len())
}

/// Scales a rational vector to a primitive integer vector whose first nonzero
/// entry is positive.
fn clear_to_primitive(xs: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in xs {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let mut ints: Vec<BigInt> = xs
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let g = gcd_all(&ints);
    if !g.is_zero() && !g.is_one() {
        for v in &mut ints {
            *v /= &g;
        }
    }
    if let Some(first) = ints.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            for v in &mut ints {
                *v = -v.clone();
            }
        }
    }
    ints
}

/// Primitive basis of the integer kernel, one vector per free column in
/// ascending column order. Each vector is gcd-reduced with its first nonzero
/// entry positive.
pub fn nullspace_primitive(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let ech = echelon(m.to_row_vecs(), m.cols);
    let is_pivot = {
        let mut mask = vec![false; m.cols];
        for &c in &ech.pivot_cols {
            mask[c] = true;
        }
        mask
    };
    let mut basis = Vec::new();
    for f in 0..m.cols {
        if is_pivot[f] {
            continue;
        }
        let mut x = vec![BigRational::zero(); m.cols];
        x[f] = BigRational::one();
        for (ri, &pc) in ech.pivot_cols.iter().enumerate().rev() {
            let row = &ech.rows[ri];
            let mut sum = BigRational::zero();
            for j in pc + 1..m.cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    sum += BigRational::from(row[j].clone()) * &x[j];
                }
            }
            x[pc] = -sum / BigRational::from(row[pc].clone());
        }
        basis.push(clear_to_primitive(&x));
    }
    basis
}

/// Solves `k * target = sum_j coeffs[j] * cols[j]` for the canonical integer
/// witness (`k > 0`, gcd-reduced), or `None` when the target is outside the
/// span of `cols`. The columns must be independent.
pub fn solve_dependence(
    target: &[BigInt],
    cols: &[Vec<BigInt>],
) -> Result<Option<DependenceWitness>> {
    let n = target.len();
    for col in cols {
        if col.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: col.len(),
            });
        }
    }
    if !cols.is_empty() {
        let col_matrix = IntMatrix::from_columns(cols)?;
        if rank_int(&col_matrix) != cols.len() {
            return Err(Error::DependentColumns);
        }
    }
    if cols.is_empty() {
        return Ok(if target.iter().all(Zero::is_zero) {
            Some(DependenceWitness {
                k: BigInt::one(),
                coeffs: Vec::new(),
            })
        } else {
            None
        });
    }

    let mut augmented = vec![target.to_vec()];
    augmented.extend(cols.iter().cloned());
    let kernel = nullspace_primitive(&IntMatrix::from_columns(&augmented)?);
    debug_assert!(kernel.len() <= 1, "independent columns admit at most one kernel line");
    let Some(v) = kernel.into_iter().next() else {
        return Ok(None);
    };
    // v[0] = 0 would make the remaining entries a dependence among `cols`.
    debug_assert!(v[0].is_positive());
    let k = v[0].clone();
    let coeffs = v[1..].iter().map(|c| -c.clone()).collect();
    Ok(Some(DependenceWitness { k, coeffs }))
}
