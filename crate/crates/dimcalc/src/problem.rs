//! Line-oriented problem files and the equation homogeneity checker.
//!
//! ```text
//! # simple pendulum
//! base L T M
//! var t : T
//! var l : L
//! var m : M
//! var theta : 1
//! var g : L*T^-2
//! dependent t
//! ```
//!
//! `base` lines must precede `var` and `unit` lines; `dependent` may appear
//! anywhere and must name a declared variable. `unit` lines use the same
//! syntax as units files, with the base dimension names acting as coherent
//! base units.

use std::sync::Arc;

use crate::analysis::{self, DimensionalMatrix};
use crate::error::{Error, Result};
use crate::lex::{Cursor, Tok};
use crate::quantity::{ExpVec, Quantity, ScalarMode, SpaceSig};
use crate::units::UnitRegistry;

/// Parsed problem file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub bases: Vec<String>,
    pub vars: Vec<(String, ExpVec)>,
    pub dependent: String,
    /// Units declared inline, resolved to quantities over the problem space.
    pub units: Vec<(String, Quantity)>,
}

/// Renders an exponent vector in the `base^int` product syntax (`1` for the
/// zero vector), matching what the parser accepts.
pub fn format_dim_expr(exps: &ExpVec, bases: &[String]) -> String {
    let parts: Vec<String> = bases
        .iter()
        .enumerate()
        .filter(|&(i, _)| exps.get(i) != 0)
        .map(|(i, name)| {
            if exps.get(i) == 1 {
                name.clone()
            } else {
                format!("{name}^{}", exps.get(i))
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn parse_dim_expr(text: &str, line: usize, bases: &[String]) -> Result<ExpVec> {
    let mut exps = vec![0i64; bases.len()];
    if text.trim() == "1" {
        return Ok(ExpVec::new(exps));
    }
    let mut cur = Cursor::new(text, line)?;
    let mut negate = false;
    loop {
        match cur.next() {
            Some(spanned) => match spanned.tok {
                Tok::Ident(name) => {
                    let idx = bases.iter().position(|b| b == &name).ok_or_else(|| {
                        Error::SemanticError {
                            msg: format!("line {line}: unknown base `{name}`"),
                        }
                    })?;
                    let mut e = 1;
                    if let Some(Tok::Caret) = cur.peek() {
                        cur.next();
                        e = cur.parse_exponent()?;
                    }
                    exps[idx] += if negate { -e } else { e };
                    negate = false;
                    match cur.peek() {
                        None => break,
                        Some(Tok::Star) => {
                            cur.next();
                        }
                        Some(Tok::Slash) => {
                            cur.next();
                            negate = true;
                        }
                        _ => return Err(cur.error("expected `*` or `/`")),
                    }
                }
                _ => {
                    return Err(Error::ParseError {
                        line,
                        col: spanned.col,
                        msg: "expected a base name".into(),
                    })
                }
            },
            None => return Err(cur.error("expected a base name")),
        }
    }
    Ok(ExpVec::new(exps))
}

/// Parses a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut bases: Vec<String> = Vec::new();
    let mut vars: Vec<(String, ExpVec)> = Vec::new();
    let mut dependent: Option<String> = None;
    let mut registry: Option<UnitRegistry> = None;
    let mut bases_frozen = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match keyword {
            "base" => {
                if bases_frozen {
                    return Err(Error::SemanticError {
                        msg: format!(
                            "line {line_no}: base declarations must precede var and unit lines"
                        ),
                    });
                }
                if rest.is_empty() {
                    return Err(Error::ParseError {
                        line: line_no,
                        col: 1,
                        msg: "base declaration names no dimensions".into(),
                    });
                }
                for name in rest.split_whitespace() {
                    ident_or_parse_error(name, line_no)?;
                    if bases.contains(&name.to_string()) {
                        return Err(Error::SemanticError {
                            msg: format!("line {line_no}: duplicate base `{name}`"),
                        });
                    }
                    bases.push(name.to_string());
                }
            }
            "var" => {
                bases_frozen = true;
                let (name, expr) = rest.split_once(':').ok_or(Error::ParseError {
                    line: line_no,
                    col: 1,
                    msg: "expected `var <name> : <dim-expr>`".into(),
                })?;
                let name = name.trim();
                ident_or_parse_error(name, line_no)?;
                if vars.iter().any(|(n, _)| n == name) {
                    return Err(Error::SemanticError {
                        msg: format!("line {line_no}: duplicate var `{name}`"),
                    });
                }
                let dims = parse_dim_expr(expr, line_no, &bases)?;
                vars.push((name.to_string(), dims));
            }
            "dependent" => {
                if dependent.is_some() {
                    return Err(Error::SemanticError {
                        msg: format!("line {line_no}: duplicate dependent declaration"),
                    });
                }
                ident_or_parse_error(rest, line_no)?;
                dependent = Some(rest.to_string());
            }
            "unit" => {
                bases_frozen = true;
                if bases.is_empty() {
                    return Err(Error::SemanticError {
                        msg: format!(
                            "line {line_no}: unit definition before any base declaration"
                        ),
                    });
                }
                let reg = match registry.as_mut() {
                    Some(r) => r,
                    None => {
                        let space = SpaceSig::new(bases.clone(), ScalarMode::Real)?;
                        registry = Some(UnitRegistry::new(&space));
                        registry.as_mut().unwrap()
                    }
                };
                let (name, value) = rest.split_once('=').ok_or(Error::ParseError {
                    line: line_no,
                    col: 1,
                    msg: "expected `unit <name> = <rational> <unit-expr>`".into(),
                })?;
                let name = name.trim();
                ident_or_parse_error(name, line_no)?;
                let quantity = reg.parse_literal_at(value, line_no)?;
                reg.define_unit(name, quantity)?;
            }
            _ => {
                return Err(Error::ParseError {
                    line: line_no,
                    col: 1,
                    msg: format!("unknown directive `{keyword}`"),
                })
            }
        }
    }

    if bases.is_empty() {
        return Err(Error::SemanticError {
            msg: "problem declares no base dimensions".into(),
        });
    }
    let dependent = dependent.ok_or(Error::SemanticError {
        msg: "missing dependent declaration".into(),
    })?;
    if !vars.iter().any(|(n, _)| n == &dependent) {
        return Err(Error::SemanticError {
            msg: format!("dependent `{dependent}` is not a declared var"),
        });
    }
    let units = registry
        .map(|reg| {
            reg.unit_names()
                .filter(|n| !bases.iter().any(|b| b == n))
                .map(|n| (n.to_string(), reg.lookup(n).unwrap().clone()))
                .collect()
        })
        .unwrap_or_default();
    Ok(ProblemFile {
        bases,
        vars,
        dependent,
        units,
    })
}

fn ident_or_parse_error(name: &str, line: usize) -> Result<()> {
    let mut chars = name.chars();
    let head_ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    if head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        Ok(())
    } else {
        Err(Error::ParseError {
            line,
            col: 1,
            msg: format!("invalid name `{name}`"),
        })
    }
}

impl ProblemFile {
    /// The quantity space spanned by the base dimensions.
    pub fn space(&self) -> Result<Arc<SpaceSig>> {
        SpaceSig::new(self.bases.clone(), ScalarMode::Real)
    }

    /// The dimensional matrix of the declared variables.
    pub fn matrix(&self) -> Result<DimensionalMatrix> {
        analysis::build_matrix(self.bases.clone(), self.vars.clone())
    }

    /// Registry with the base dimensions as coherent units plus any inline
    /// unit definitions.
    pub fn registry(&self) -> Result<UnitRegistry> {
        let mut reg = UnitRegistry::new(&self.space()?);
        for (name, q) in &self.units {
            reg.define_unit(name, q.clone())?;
        }
        Ok(reg)
    }

    pub fn var_dims(&self, name: &str) -> Option<&ExpVec> {
        self.vars
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
    }

    /// Renders the problem back into parseable source.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("base ");
        out.push_str(&self.bases.join(" "));
        out.push('\n');
        for (name, dims) in &self.vars {
            out.push_str(&format!(
                "var {name} : {}\n",
                format_dim_expr(dims, &self.bases)
            ));
        }
        for (name, q) in &self.units {
            let mut measure_and_unit = q.measure().to_string();
            let dims = format_dim_expr(q.dimension(), &self.bases);
            if dims != "1" {
                measure_and_unit.push(' ');
                measure_and_unit.push_str(&dims);
            }
            out.push_str(&format!("unit {name} = {measure_and_unit}\n"));
        }
        out.push_str(&format!("dependent {}\n", self.dependent));
        out
    }
}

/// One parsed equation term with its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDims {
    pub text: String,
    pub dims: ExpVec,
}

/// Two adjacent terms joined by `+`, `-`, or `=` whose dimensions differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub junction: char,
    pub left: TermDims,
    pub right: TermDims,
}

/// Outcome of a homogeneity check: all terms in reading order plus every
/// junction that mixes dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationCheck {
    pub terms: Vec<TermDims>,
    pub violations: Vec<Violation>,
}

impl EquationCheck {
    pub fn homogeneous(&self) -> bool {
        self.violations.is_empty()
    }
}

struct SideParse {
    terms: Vec<TermDims>,
    /// Operator preceding term `i + 1`.
    junctions: Vec<char>,
}

fn parse_term(cur: &mut Cursor, p: &ProblemFile) -> Result<TermDims> {
    let mut dims = ExpVec::zero(p.bases.len());
    let mut text = String::new();
    let mut divide = false;
    loop {
        let factor_text;
        match cur.next() {
            Some(spanned) => match spanned.tok {
                Tok::Ident(name) => {
                    let var_dims = p.var_dims(&name).ok_or_else(|| Error::UnknownVariable {
                        name: name.clone(),
                    })?;
                    let mut e = 1;
                    if let Some(Tok::Caret) = cur.peek() {
                        cur.next();
                        e = cur.parse_exponent()?;
                    }
                    let signed = if divide { -e } else { e };
                    dims = dims.checked_add(&var_dims.scaled(signed))?;
                    factor_text = if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    };
                }
                Tok::Number(n) => {
                    // Numeric factors are dimensionless.
                    factor_text = n;
                }
                _ => {
                    return Err(Error::ParseError {
                        line: 1,
                        col: spanned.col,
                        msg: "expected a variable or number".into(),
                    })
                }
            },
            None => return Err(cur.error("expected a term")),
        }
        if text.is_empty() {
            text = factor_text;
        } else {
            text.push(if divide { '/' } else { '*' });
            text.push_str(&factor_text);
        }
        divide = false;
        match cur.peek() {
            Some(Tok::Star) => {
                cur.next();
            }
            Some(Tok::Slash) => {
                cur.next();
                divide = true;
            }
            _ => break,
        }
    }
    Ok(TermDims { text, dims })
}

fn parse_side(cur: &mut Cursor, p: &ProblemFile) -> Result<SideParse> {
    let mut terms = Vec::new();
    let mut junctions = Vec::new();
    // A leading sign does not affect dimensions.
    if let Some(Tok::Minus | Tok::Plus) = cur.peek() {
        cur.next();
    }
    terms.push(parse_term(cur, p)?);
    loop {
        match cur.peek() {
            Some(Tok::Plus) => {
                cur.next();
                junctions.push('+');
            }
            Some(Tok::Minus) => {
                cur.next();
                junctions.push('-');
            }
            Some(Tok::Eq) | None => break,
            _ => return Err(cur.error("expected `+`, `-`, or `=`")),
        }
        terms.push(parse_term(cur, p)?);
    }
    Ok(SideParse { terms, junctions })
}

/// Parses an equation over the problem's variables and reports every junction
/// joining terms of unequal dimension. `-` inside exponents is not a
/// junction; there is no grouping syntax.
pub fn check_equation(p: &ProblemFile, equation: &str) -> Result<EquationCheck> {
    let mut cur = Cursor::new(equation, 1)?;
    let lhs = parse_side(&mut cur, p)?;
    match cur.next() {
        Some(s) if s.tok == Tok::Eq => {}
        _ => return Err(cur.error("expected `=`")),
    }
    let rhs = parse_side(&mut cur, p)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }

    fn scan_side(side: &SideParse, violations: &mut Vec<Violation>) {
        for (i, op) in side.junctions.iter().enumerate() {
            let left = &side.terms[i];
            let right = &side.terms[i + 1];
            if left.dims != right.dims {
                violations.push(Violation {
                    junction: *op,
                    left: left.clone(),
                    right: right.clone(),
                });
            }
        }
    }
    let mut violations = Vec::new();
    scan_side(&lhs, &mut violations);
    let eq_left = lhs.terms.last().expect("side has at least one term").clone();
    let eq_right = rhs.terms.first().expect("side has at least one term").clone();
    if eq_left.dims != eq_right.dims {
        violations.push(Violation {
            junction: '=',
            left: eq_left,
            right: eq_right,
        });
    }
    scan_side(&rhs, &mut violations);

    let mut terms = lhs.terms;
    terms.extend(rhs.terms);
    Ok(EquationCheck { terms, violations })
}
