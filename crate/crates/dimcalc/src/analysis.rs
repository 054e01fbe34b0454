//! Dimensional models and relation synthesis.
//!
//! A dimensional matrix lists variable dimensions over named bases. For a
//! chosen dependent variable, every maximal independent subset of the other
//! heads that carries the dependent dimension yields a model; solving a model
//! produces the canonical power-law witness and one dimensionless group per
//! remaining variable.

use num::{BigInt, BigRational, One};

use crate::dimension::{self, DimSet};
use crate::error::{Error, Result};
use crate::intlinalg;
use crate::quantity::ExpVec;

/// Variable dimensions over an ordered list of base names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionalMatrix {
    base_names: Vec<String>,
    heads: DimSet,
}

/// Builds a dimensional matrix, rejecting duplicate names and exponent
/// vectors whose length differs from the base count.
pub fn build_matrix(
    base_names: Vec<String>,
    vars: Vec<(String, ExpVec)>,
) -> Result<DimensionalMatrix> {
    for (i, name) in base_names.iter().enumerate() {
        if base_names[..i].contains(name) {
            return Err(Error::DuplicateName { name: name.clone() });
        }
    }
    for (_, exps) in &vars {
        if exps.len() != base_names.len() {
            return Err(Error::LengthMismatch {
                expected: base_names.len(),
                got: exps.len(),
            });
        }
    }
    Ok(DimensionalMatrix {
        base_names,
        heads: DimSet::new(vars)?,
    })
}

impl DimensionalMatrix {
    pub fn base_names(&self) -> &[String] {
        &self.base_names
    }

    pub fn heads(&self) -> &DimSet {
        &self.heads
    }

    pub fn rank(&self) -> usize {
        dimension::group_rank(&self.heads)
    }

    fn column_of(&self, name: &str) -> Result<Vec<BigInt>> {
        let i = self.heads.index_of(name).ok_or_else(|| Error::UnknownName {
            name: name.to_string(),
        })?;
        Ok(self.heads.member(i).1.to_bigint_column())
    }
}

/// One way of splitting the variables: a dependent variable, the independent
/// variables spanning its dimension, and the remaining (dependent) variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionalModel {
    pub dependent: String,
    pub dependents: Vec<String>,
    pub independents: Vec<String>,
}

/// Canonical witness row for one remaining variable: `p^c = prod_j q_j^coeffs[j]`
/// up to a dimensionless factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiGroupRow {
    pub name: String,
    pub c: BigInt,
    pub coeffs: Vec<BigInt>,
}

/// Solved model: the dependent witness plus one row (one dimensionless group)
/// per remaining variable. The opaque function symbol has arity `rows.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiRelation {
    pub dependent: String,
    pub independents: Vec<String>,
    pub k: BigInt,
    pub k_coeffs: Vec<BigInt>,
    pub rows: Vec<PiGroupRow>,
}

/// Enumerates every dimensional model for the chosen dependent variable, in
/// the fixed order produced by the maximal-subset enumeration.
pub fn enumerate_models(m: &DimensionalMatrix, dependent: &str) -> Result<Vec<DimensionalModel>> {
    if m.heads.index_of(dependent).is_none() {
        return Err(Error::UnknownName {
            name: dependent.to_string(),
        });
    }
    let subsets = dimension::maximal_independent_subsets_excluding(&m.heads, dependent)?;
    Ok(subsets
        .into_iter()
        .map(|subset| {
            let independents: Vec<String> = subset
                .iter()
                .map(|&i| m.heads.member(i).0.to_string())
                .collect();
            let dependents: Vec<String> = (0..m.heads.len())
                .filter(|&i| !subset.contains(&i))
                .map(|i| m.heads.member(i).0.to_string())
                .filter(|n| n != dependent)
                .collect();
            DimensionalModel {
                dependent: dependent.to_string(),
                dependents,
                independents,
            }
        })
        .collect())
}

/// Solves one model into its canonical relation.
pub fn solve_model(m: &DimensionalMatrix, model: &DimensionalModel) -> Result<PiRelation> {
    let mut seen = Vec::new();
    for name in model
        .independents
        .iter()
        .chain(&model.dependents)
        .chain(std::iter::once(&model.dependent))
    {
        if m.heads.index_of(name).is_none() {
            return Err(Error::UnknownName { name: name.clone() });
        }
        if seen.contains(&name) {
            return Err(Error::ModelInvalid {
                reason: format!("variable `{name}` listed twice"),
            });
        }
        seen.push(name);
    }
    if seen.len() != m.heads.len() {
        return Err(Error::ModelInvalid {
            reason: "model does not cover every variable exactly once".into(),
        });
    }

    let cols: Vec<Vec<BigInt>> = model
        .independents
        .iter()
        .map(|n| m.column_of(n))
        .collect::<Result<_>>()?;

    let solve = |name: &str| -> Result<(BigInt, Vec<BigInt>)> {
        let target = m.column_of(name)?;
        match intlinalg::solve_dependence(&target, &cols) {
            Ok(Some(w)) => Ok((w.k, w.coeffs)),
            Ok(None) => Err(Error::ModelInvalid {
                reason: format!("`{name}` is not dependent on the independent set"),
            }),
            Err(Error::DependentColumns) => Err(Error::ModelInvalid {
                reason: "independent set is not independent".into(),
            }),
            Err(e) => Err(e),
        }
    };

    let (k, k_coeffs) = solve(&model.dependent)?;
    let rows = model
        .dependents
        .iter()
        .map(|name| {
            let (c, coeffs) = solve(name)?;
            Ok(PiGroupRow {
                name: name.clone(),
                c,
                coeffs,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(PiRelation {
        dependent: model.dependent.clone(),
        independents: model.independents.clone(),
        k,
        k_coeffs,
        rows,
    })
}

/// True when both sides of an equation have the same exponent vector.
pub fn check_homogeneous(lhs: &ExpVec, rhs: &ExpVec) -> Result<bool> {
    if lhs.len() != rhs.len() {
        return Err(Error::LengthMismatch {
            expected: lhs.len(),
            got: rhs.len(),
        });
    }
    Ok(lhs == rhs)
}

/// Which serialization of the relation to print.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationForm {
    Power,
    Root,
}

/// Renders the relation with the default function symbol `Phi`.
pub fn render_relation(r: &PiRelation, form: RelationForm) -> String {
    match form {
        RelationForm::Power => r.power_string("Phi"),
        RelationForm::Root => r.root_string("Phi"),
    }
}

impl PiRelation {
    /// Arity of the opaque function symbol.
    pub fn phi_arity(&self) -> usize {
        self.rows.len()
    }

    /// One dimensionless group per row: `p^c / (q1^c1 * ...)`, with unit
    /// exponents and empty denominators elided.
    pub fn pi_group_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|row| {
                let numerator = if row.c.is_one() {
                    row.name.clone()
                } else {
                    format!("{}^{}", row.name, row.c)
                };
                let denom: Vec<String> = self
                    .independents
                    .iter()
                    .zip(&row.coeffs)
                    .filter(|(_, c)| !num::Zero::is_zero(*c))
                    .map(|(name, c)| {
                        if c.is_one() {
                            name.clone()
                        } else {
                            format!("{name}^{c}")
                        }
                    })
                    .collect();
                match denom.len() {
                    0 => numerator,
                    1 => format!("{numerator}/{}", denom[0]),
                    _ => format!("{numerator}/({})", denom.join("*")),
                }
            })
            .collect()
    }

    fn phi_call(&self, phi: &str) -> String {
        format!("{phi}({})", self.pi_group_strings().join(", "))
    }

    /// Integral form `p^k = q1^k1 * ... * Phi(pi1, ...)`; zero exponents are
    /// dropped, everything else is printed explicitly.
    pub fn power_string(&self, phi: &str) -> String {
        let mut parts: Vec<String> = self
            .independents
            .iter()
            .zip(&self.k_coeffs)
            .filter(|(_, c)| !num::Zero::is_zero(*c))
            .map(|(name, c)| format!("{name}^{c}"))
            .collect();
        parts.push(self.phi_call(phi));
        format!("{}^{} = {}", self.dependent, self.k, parts.join(" * "))
    }

    fn root_core(&self, phi: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.rows.is_empty() {
            // A nullary function symbol is just an unknown constant.
            parts.push("K".to_string());
        }
        for (name, c) in self.independents.iter().zip(&self.k_coeffs) {
            if num::Zero::is_zero(c) {
                continue;
            }
            let e = BigRational::new(c.clone(), self.k.clone());
            let rendered = if e.denom().is_one() {
                if e.numer().is_one() {
                    name.clone()
                } else {
                    format!("{name}^{}", e.numer())
                }
            } else {
                format!("{name}^({}/{})", e.numer(), e.denom())
            };
            parts.push(rendered);
        }
        if !self.rows.is_empty() {
            parts.push(self.phi_call(phi));
        }
        if parts.is_empty() {
            // No factors at all: the dependent is itself dimensionless.
            parts.push("K".to_string());
        }
        format!("{} = {}", self.dependent, parts.join(" * "))
    }

    /// Fractional-exponent form `p = q1^(k1/k) * ... * Phi(...)`, or `K` for a
    /// nullary function symbol.
    pub fn root_string(&self, phi: &str) -> String {
        self.root_core(phi)
    }

    /// Same shape as the root form but read at the level of scalar measures.
    pub fn scalar_string(&self, phi: &str) -> String {
        self.root_core(phi)
    }
}
