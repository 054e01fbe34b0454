//! Unit registries: named invertible quantities over a shared space, unit
//! expressions, quantity literals, and exact conversion.
//!
//! A units file declares base units in a `base` header and derived units as
//! `unit <name> = <rational> <unit-expr>`. Derived units resolve eagerly, so
//! later definitions may reference earlier ones but not vice versa.

use std::fmt;
use std::sync::Arc;

use num::{BigRational, One};

use crate::error::{Error, Result};
use crate::lex::{Cursor, Tok};
use crate::quantity::{ExpVec, Quantity, ScalarMode, SpaceSig};
use crate::rational::parse_rational;

/// Product of named units with integer exponents; `1` denotes the empty
/// product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitExpr {
    factors: Vec<(String, i64)>,
}

impl UnitExpr {
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_at(text, 1)
    }

    /// Parses with a line number for error reporting inside files.
    pub(crate) fn parse_at(text: &str, line: usize) -> Result<Self> {
        if text.trim() == "1" {
            return Ok(Self { factors: vec![] });
        }
        let mut cur = Cursor::new(text, line)?;
        let mut factors = Vec::new();
        let mut negate_next = false;
        loop {
            match cur.next() {
                Some(spanned) => match spanned.tok {
                    Tok::Ident(name) => {
                        let mut exp = 1;
                        if let Some(Tok::Caret) = cur.peek() {
                            cur.next();
                            exp = cur.parse_exponent()?;
                        }
                        factors.push((name, if negate_next { -exp } else { exp }));
                        negate_next = false;
                        // A following factor may be juxtaposed with whitespace.
                        match cur.peek() {
                            Some(Tok::Star) => {
                                cur.next();
                            }
                            Some(Tok::Slash) => {
                                cur.next();
                                negate_next = true;
                            }
                            Some(Tok::Ident(_)) => {}
                            None => break,
                            _ => return Err(cur.error("expected `*`, `/`, or a unit name")),
                        }
                    }
                    _ => {
                        return Err(Error::ParseError {
                            line,
                            col: spanned.col,
                            msg: "expected a unit name".into(),
                        })
                    }
                },
                // Empty input or a trailing operator.
                None => return Err(cur.error("expected a unit name")),
            }
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[(String, i64)] {
        &self.factors
    }
}

impl fmt::Display for UnitExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(n, e)| {
                if *e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Registry of units over one quantity space. Base names double as coherent
/// base units with measure 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitRegistry {
    space: Arc<SpaceSig>,
    units: Vec<(String, Quantity)>,
}

impl UnitRegistry {
    pub fn new(space: &Arc<SpaceSig>) -> Self {
        let units = space
            .base_names()
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), Quantity::base(space, i)))
            .collect();
        Self {
            space: Arc::clone(space),
            units,
        }
    }

    pub fn space(&self) -> &Arc<SpaceSig> {
        &self.space
    }

    pub fn lookup(&self, name: &str) -> Option<&Quantity> {
        self.units
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, q)| q)
    }

    pub fn unit_names(&self) -> impl Iterator<Item = &str> {
        self.units.iter().map(|(n, _)| n.as_str())
    }

    /// Registers a derived unit; the value must be invertible and live in the
    /// registry's space.
    pub fn define_unit(&mut self, name: &str, value: Quantity) -> Result<()> {
        if self.lookup(name).is_some() {
            return Err(Error::DuplicateUnit {
                name: name.to_string(),
            });
        }
        if value.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        if !value.is_invertible() {
            return Err(Error::NotInvertible);
        }
        self.units.push((name.to_string(), value));
        Ok(())
    }

    /// Evaluates a unit expression to its quantity.
    pub fn resolve(&self, expr: &UnitExpr) -> Result<Quantity> {
        let mut acc = Quantity::one(&self.space);
        for (name, exp) in &expr.factors {
            let unit = self.lookup(name).ok_or_else(|| Error::UnknownUnit {
                name: name.clone(),
            })?;
            acc = acc.mul(&unit.powi(*exp)?)?;
        }
        Ok(acc)
    }

    /// Parses `<rational> [<unit-expr>]`; a bare rational is dimensionless.
    pub fn parse_quantity_literal(&self, text: &str) -> Result<Quantity> {
        self.parse_literal_at(text, 1)
    }

    pub(crate) fn parse_literal_at(&self, text: &str, line: usize) -> Result<Quantity> {
        let trimmed = text.trim_start();
        let lead_ws = text.len() - trimmed.len();
        let split = trimmed
            .find(char::is_whitespace)
            .unwrap_or(trimmed.len());
        let (number, rest) = trimmed.split_at(split);
        if number.is_empty() {
            return Err(Error::ParseError {
                line,
                col: lead_ws + 1,
                msg: "expected a rational measure".into(),
            });
        }
        let measure = parse_rational(number).ok_or_else(|| Error::ParseError {
            line,
            col: lead_ws + 1,
            msg: format!("invalid rational `{number}`"),
        })?;
        let unit = if rest.trim().is_empty() {
            Quantity::one(&self.space)
        } else {
            self.resolve(&UnitExpr::parse_at(rest.trim(), line)?)?
        };
        unit.smul(&measure)
    }

    /// Exact value of `q` expressed in the target unit.
    pub fn convert(&self, q: &Quantity, target: &UnitExpr) -> Result<BigRational> {
        let unit = self.resolve(target)?;
        if !q.equidim(&unit)? {
            return Err(Error::NotEquidimensional);
        }
        Ok(q.measure() / unit.measure())
    }

    /// The measure-1 quantity with the given dimension.
    pub fn coherent_unit_for(&self, dims: &ExpVec) -> Result<Quantity> {
        Quantity::new(BigRational::one(), dims.clone(), &self.space)
    }

    /// Renders a quantity in coherent base units, e.g. `3/2 m*s^-2`.
    pub fn render_in_base(&self, q: &Quantity) -> String {
        let mut out = q.measure().to_string();
        let factors: Vec<String> = self
            .space
            .base_names()
            .iter()
            .enumerate()
            .filter(|&(i, _)| q.dimension().get(i) != 0)
            .map(|(i, name)| {
                let e = q.dimension().get(i);
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if !factors.is_empty() {
            out.push(' ');
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses a units file: comments (`#`), a `base` header, then `unit`
    /// definitions resolved eagerly against what is already defined.
    pub fn from_units_file(text: &str) -> Result<Self> {
        let mut bases: Vec<String> = Vec::new();
        let mut registry: Option<UnitRegistry> = None;
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
                    if registry.is_some() {
                        return Err(Error::SemanticError {
                            msg: format!(
                                "line {line_no}: base declarations must precede unit definitions"
                            ),
                        });
                    }
                    if rest.is_empty() {
                        return Err(Error::ParseError {
                            line: line_no,
                            col: 1,
                            msg: "base declaration names no units".into(),
                        });
                    }
                    for name in rest.split_whitespace() {
                        check_ident(name, line_no)?;
                        bases.push(name.to_string());
                    }
                }
                "unit" => {
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
                    check_ident(name, line_no)?;
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
        match registry {
            Some(r) => Ok(r),
            None if bases.is_empty() => Err(Error::SemanticError {
                msg: "units file declares no base units".into(),
            }),
            None => {
                let space = SpaceSig::new(bases, ScalarMode::Real)?;
                Ok(UnitRegistry::new(&space))
            }
        }
    }
}

fn check_ident(name: &str, line: usize) -> Result<()> {
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
