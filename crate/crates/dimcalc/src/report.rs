//! Analysis reports in JSON and plain-text form.
//!
//! JSON field order is fixed by declaration order below and serialization is
//! byte-stable, so reports can be compared as raw bytes.

use serde::Serialize;

use crate::analysis::{enumerate_models, solve_model};
use crate::error::Result;
use crate::problem::{format_dim_expr, ProblemFile};
use crate::rational::big_to_i64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariableReport {
    pub name: String,
    pub dims: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub name: String,
    pub c: i64,
    pub c_j: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub independents: Vec<String>,
    pub dependents: Vec<String>,
    /// Witness exponent of the dependent variable.
    pub k: i64,
    /// Witness exponents of the independents, in `independents` order.
    pub k_j: Vec<i64>,
    pub rows: Vec<RowReport>,
    pub pi_groups: Vec<String>,
    pub relation_power: String,
    pub relation_root: String,
    pub relation_scalar: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub bases: Vec<String>,
    pub variables: Vec<VariableReport>,
    pub dependent: String,
    pub rank: usize,
    pub models: Vec<ModelReport>,
    /// Human-readable notes; text output only.
    #[serde(skip)]
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn from_problem(p: &ProblemFile) -> Result<Report> {
        let matrix = p.matrix()?;
        let models = enumerate_models(&matrix, &p.dependent)?;
        let mut model_reports = Vec::with_capacity(models.len());
        for model in &models {
            let rel = solve_model(&matrix, model)?;
            model_reports.push(ModelReport {
                independents: model.independents.clone(),
                dependents: model.dependents.clone(),
                k: big_to_i64(&rel.k),
                k_j: rel.k_coeffs.iter().map(big_to_i64).collect(),
                rows: rel
                    .rows
                    .iter()
                    .map(|r| RowReport {
                        name: r.name.clone(),
                        c: big_to_i64(&r.c),
                        c_j: r.coeffs.iter().map(big_to_i64).collect(),
                    })
                    .collect(),
                pi_groups: rel.pi_group_strings(),
                relation_power: rel.power_string("Phi"),
                relation_root: rel.root_string("Phi"),
                relation_scalar: rel.scalar_string("phi"),
            });
        }
        let mut diagnostics = Vec::new();
        if model_reports.is_empty() {
            diagnostics.push(format!(
                "`{}` does not depend dimensionally on the other variables; \
                 no product of their powers matches its dimension",
                p.dependent
            ));
        }
        Ok(Report {
            bases: p.bases.clone(),
            variables: p
                .vars
                .iter()
                .map(|(name, dims)| VariableReport {
                    name: name.clone(),
                    dims: dims.as_slice().to_vec(),
                })
                .collect(),
            dependent: p.dependent.clone(),
            rank: matrix.rank(),
            models: model_reports,
            diagnostics,
        })
    }

    pub fn to_json_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("report structs always serialize")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report structs always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("bases: {}\n", self.bases.join(" ")));
        out.push_str("variables:\n");
        for v in &self.variables {
            let dims = crate::quantity::ExpVec::new(v.dims.clone());
            out.push_str(&format!(
                "  {} : {}\n",
                v.name,
                format_dim_expr(&dims, &self.bases)
            ));
        }
        out.push_str(&format!("dependent: {}\n", self.dependent));
        out.push_str(&format!("rank: {}\n", self.rank));
        out.push_str(&format!("models: {}\n", self.models.len()));
        for (i, m) in self.models.iter().enumerate() {
            let n = i + 1;
            out.push('\n');
            out.push_str(&format!("model {n}\n"));
            out.push_str(&format!("  independents: {}\n", m.independents.join(" ")));
            out.push_str(&format!(
                "  dependents: {}\n",
                if m.dependents.is_empty() {
                    "(none)".to_string()
                } else {
                    m.dependents.join(" ")
                }
            ));
            out.push_str(&format!(
                "  witness: {}\n",
                witness_eq(&self.dependent, m.k, &m.independents, &m.k_j)
            ));
            for r in &m.rows {
                out.push_str(&format!(
                    "  row {}: {}\n",
                    r.name,
                    witness_eq(&r.name, r.c, &m.independents, &r.c_j)
                ));
            }
            out.push_str(&format!(
                "  pi groups: {}\n",
                if m.pi_groups.is_empty() {
                    "(none)".to_string()
                } else {
                    m.pi_groups.join(", ")
                }
            ));
            let phi = format!("Phi_{n}");
            let phi_scalar = format!("phi_{n}");
            out.push_str(&format!(
                "  power: {}\n",
                relabel(&m.relation_power, "Phi", &phi)
            ));
            out.push_str(&format!(
                "  root: {}\n",
                relabel(&m.relation_root, "Phi", &phi)
            ));
            out.push_str(&format!(
                "  scalar: {}\n",
                relabel(&m.relation_scalar, "phi", &phi_scalar)
            ));
        }
        for d in &self.diagnostics {
            out.push('\n');
            out.push_str(&format!("note: {d}\n"));
        }
        out
    }
}

/// `name^k = i1^c1 * i2^c2 * ...`, keeping zero exponents visible; an empty
/// product renders as `1`.
fn witness_eq(name: &str, k: i64, independents: &[String], coeffs: &[i64]) -> String {
    let rhs = if independents.is_empty() {
        "1".to_string()
    } else {
        independents
            .iter()
            .zip(coeffs)
            .map(|(n, c)| format!("{n}^{c}"))
            .collect::<Vec<_>>()
            .join(" * ")
    };
    format!("{name}^{k} = {rhs}")
}

/// Renames the function symbol before its opening parenthesis. The JSON forms
/// use a bare `Phi`; the text report numbers it per model. The constant `K`
/// in nullary root forms stays as is.
fn relabel(relation: &str, from: &str, to: &str) -> String {
    relation.replace(&format!("{from}("), &format!("{to}("))
}
