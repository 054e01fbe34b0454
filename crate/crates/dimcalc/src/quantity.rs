//! Quantities over a free scalable commutative monoid: an exact rational
//! measure paired with an integer exponent vector over named base quantities.
//!
//! The scalar mode picks the coefficient system (all rationals, nonnegative,
//! or positive) and decides which measures and operations are admissible.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed};

use crate::error::{Error, Result};
use crate::intlinalg::{self, IntMatrix};
use crate::rational::{big_to_i64, is_negative, rat_nth_root, rat_pow};

/// Scalar system the space is built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Real,
    NonNegative,
    Positive,
}

impl ScalarMode {
    /// True when a measure is allowed to occur in this mode.
    pub fn admits(&self, value: &BigRational) -> bool {
        match self {
            ScalarMode::Real => true,
            ScalarMode::NonNegative => !is_negative(value),
            ScalarMode::Positive => value.is_positive(),
        }
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ScalarMode::Real => "real",
            ScalarMode::NonNegative => "non-negative",
            ScalarMode::Positive => "positive",
        };
        f.write_str(name)
    }
}

/// Signature of a quantity space: ordered base quantity names plus the mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceSig {
    base_names: Vec<String>,
    mode: ScalarMode,
}

impl SpaceSig {
    pub fn new(base_names: Vec<String>, mode: ScalarMode) -> Result<Arc<Self>> {
        for (i, name) in base_names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::SemanticError {
                    msg: "base name must be nonempty".into(),
                });
            }
            if base_names[..i].contains(name) {
                return Err(Error::DuplicateName { name: name.clone() });
            }
        }
        Ok(Arc::new(Self { base_names, mode }))
    }

    pub fn base_names(&self) -> &[String] {
        &self.base_names
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    /// Number of base quantities.
    pub fn dims(&self) -> usize {
        self.base_names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.base_names.iter().position(|n| n == name)
    }
}

/// Integer exponent vector over the base quantities of some space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpVec(Vec<i64>);

impl ExpVec {
    pub fn new(exps: Vec<i64>) -> Self {
        Self(exps)
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// Standard basis vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn checked_add(&self, other: &ExpVec) -> Result<ExpVec> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        ))
    }

    pub fn checked_sub(&self, other: &ExpVec) -> Result<ExpVec> {
        self.checked_add(&other.scaled(-1))
    }

    pub fn scaled(&self, c: i64) -> ExpVec {
        Self(
            self.0
                .iter()
                .map(|v| v.checked_mul(c).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise exact division, `None` when some entry is not divisible.
    pub fn exact_div(&self, k: i64) -> Option<ExpVec> {
        debug_assert!(k != 0);
        let mut out = Vec::with_capacity(self.len());
        for &v in &self.0 {
            if v % k != 0 {
                return None;
            }
            out.push(v / k);
        }
        Some(Self(out))
    }

    pub fn to_bigint_column(&self) -> Vec<BigInt> {
        self.0.iter().map(|&v| BigInt::from(v)).collect()
    }
}

/// A quantity: exact rational measure, exponent vector, and the space both
/// live in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantity {
    measure: BigRational,
    exps: ExpVec,
    space: Arc<SpaceSig>,
}

impl Quantity {
    pub fn new(measure: BigRational, exps: ExpVec, space: &Arc<SpaceSig>) -> Result<Self> {
        if exps.len() != space.dims() {
            return Err(Error::LengthMismatch {
                expected: space.dims(),
                got: exps.len(),
            });
        }
        if !space.mode().admits(&measure) {
            return Err(Error::InadmissibleMeasure {
                measure: measure.to_string(),
                mode: space.mode(),
            });
        }
        Ok(Self {
            measure,
            exps,
            space: Arc::clone(space),
        })
    }

    /// The multiplicative identity `1_Q`.
    pub fn one(space: &Arc<SpaceSig>) -> Self {
        Self {
            measure: BigRational::one(),
            exps: ExpVec::zero(space.dims()),
            space: Arc::clone(space),
        }
    }

    /// The `i`th base quantity (measure 1, exponent vector `e_i`).
    pub fn base(space: &Arc<SpaceSig>, i: usize) -> Self {
        Self {
            measure: BigRational::one(),
            exps: ExpVec::unit(space.dims(), i),
            space: Arc::clone(space),
        }
    }

    pub fn measure(&self) -> &BigRational {
        &self.measure
    }

    pub fn dimension(&self) -> &ExpVec {
        &self.exps
    }

    pub fn space(&self) -> &Arc<SpaceSig> {
        &self.space
    }

    pub fn is_invertible(&self) -> bool {
        !num::Zero::is_zero(&self.measure)
    }

    /// True when the exponent vector is zero (dimensionless).
    pub fn is_quasiscalar(&self) -> bool {
        self.exps.is_zero()
    }

    fn same_space(&self, other: &Quantity) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn mul(&self, other: &Quantity) -> Result<Quantity> {
        self.same_space(other)?;
        Ok(Quantity {
            measure: &self.measure * &other.measure,
            exps: self.exps.checked_add(&other.exps)?,
            space: Arc::clone(&self.space),
        })
    }

    /// Scalar action `a * q`; the resulting measure must stay admissible.
    pub fn smul(&self, a: &BigRational) -> Result<Quantity> {
        let measure = a * &self.measure;
        if !self.space.mode().admits(&measure) {
            return Err(Error::InadmissibleMeasure {
                measure: measure.to_string(),
                mode: self.space.mode(),
            });
        }
        Ok(Quantity {
            measure,
            exps: self.exps.clone(),
            space: Arc::clone(&self.space),
        })
    }

    pub fn inv(&self) -> Result<Quantity> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Ok(Quantity {
            measure: self.measure.recip(),
            exps: self.exps.scaled(-1),
            space: Arc::clone(&self.space),
        })
    }

    pub fn powi(&self, c: i64) -> Result<Quantity> {
        if c == 0 {
            return Ok(Quantity::one(&self.space));
        }
        Ok(Quantity {
            measure: rat_pow(&self.measure, c)?,
            exps: self.exps.scaled(c),
            space: Arc::clone(&self.space),
        })
    }

    /// True when both quantities have the same exponent vector.
    pub fn equidim(&self, other: &Quantity) -> Result<bool> {
        self.same_space(other)?;
        Ok(self.exps == other.exps)
    }

    pub fn add(&self, other: &Quantity) -> Result<Quantity> {
        if !self.equidim(other)? {
            return Err(Error::NotEquidimensional);
        }
        Ok(Quantity {
            measure: &self.measure + &other.measure,
            exps: self.exps.clone(),
            space: Arc::clone(&self.space),
        })
    }

    /// Subtraction needs additive inverses, so only the real mode allows it.
    pub fn sub(&self, other: &Quantity) -> Result<Quantity> {
        if self.space.mode() != ScalarMode::Real {
            return Err(Error::ModeForbidsNegation {
                mode: self.space.mode(),
            });
        }
        if !self.equidim(other)? {
            return Err(Error::NotEquidimensional);
        }
        Ok(Quantity {
            measure: &self.measure - &other.measure,
            exps: self.exps.clone(),
            space: Arc::clone(&self.space),
        })
    }

    /// Re-expresses the quantity relative to a new basis of the same space.
    ///
    /// The basis exponent matrix must be unimodular (determinant ±1); the
    /// returned quantity carries the coordinates and measure relative to the
    /// new basis.
    pub fn rebase(&self, new_basis: &[Quantity]) -> Result<Quantity> {
        let n = self.space.dims();
        if new_basis.len() != n {
            return Err(Error::NotABasis);
        }
        for b in new_basis {
            self.same_space(b)?;
            if !b.is_invertible() {
                return Err(Error::NotInvertible);
            }
        }
        let cols: Vec<Vec<BigInt>> = new_basis
            .iter()
            .map(|b| b.exps.to_bigint_column())
            .collect();
        let matrix = IntMatrix::from_columns(&cols)?;
        let det = intlinalg::determinant(&matrix)?;
        if !det.abs().is_one() {
            return Err(Error::NotABasis);
        }
        let witness = intlinalg::solve_dependence(&self.exps.to_bigint_column(), &cols)?
            .expect("unimodular basis spans the exponent lattice");
        debug_assert!(witness.k.is_one());
        let coords: Vec<i64> = witness.coeffs.iter().map(big_to_i64).collect();
        let mut measure = self.measure.clone();
        for (b, &c) in new_basis.iter().zip(&coords) {
            measure /= rat_pow(&b.measure, c)?;
        }
        Ok(Quantity {
            measure,
            exps: ExpVec::new(coords),
            space: Arc::clone(&self.space),
        })
    }

    /// Exact `k`th root; exists only for positive measures that are perfect
    /// `k`th powers with componentwise divisible exponents.
    pub fn kth_root(&self, k: u32) -> Result<Quantity> {
        assert!(k > 0, "root degree must be positive");
        let exps = self
            .exps
            .exact_div(i64::from(k))
            .ok_or(Error::ExponentsNotDivisible { k })?;
        Ok(Quantity {
            measure: rat_nth_root(&self.measure, k)?,
            exps,
            space: Arc::clone(&self.space),
        })
    }
}

/// Evaluates the monomial `coeff * prod_i args[i]^exps[i]` in the given space.
pub fn monomial_eval(
    space: &Arc<SpaceSig>,
    coeff: &BigRational,
    args: &[Quantity],
    exps: &[i64],
) -> Result<Quantity> {
    if args.len() != exps.len() {
        return Err(Error::LengthMismatch {
            expected: args.len(),
            got: exps.len(),
        });
    }
    let mut measure = coeff.clone();
    let mut dims = ExpVec::zero(space.dims());
    for (arg, &e) in args.iter().zip(exps) {
        if arg.space() != space {
            return Err(Error::SpaceMismatch);
        }
        measure *= rat_pow(arg.measure(), e)?;
        dims = dims.checked_add(&arg.dimension().scaled(e))?;
    }
    Quantity::new(measure, dims, space)
}
