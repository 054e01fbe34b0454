//! Dimensions as integer exponent vectors in a free abelian group, plus the
//! combinatorics dimensional analysis runs on: dependence of one dimension on
//! a set, ranks, and all maximal independent subsets avoiding a chosen head.

use num::BigInt;

use crate::error::{Error, Result};
use crate::intlinalg::{self, DependenceWitness, IntMatrix};
use crate::quantity::ExpVec;

/// Ordered set of named dimensions with exponent vectors of equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimSet {
    members: Vec<(String, ExpVec)>,
}

impl DimSet {
    pub fn new(members: Vec<(String, ExpVec)>) -> Result<Self> {
        let dims = members.first().map_or(0, |(_, e)| e.len());
        for (i, (name, exps)) in members.iter().enumerate() {
            if members[..i].iter().any(|(n, _)| n == name) {
                return Err(Error::DuplicateName { name: name.clone() });
            }
            if exps.len() != dims {
                return Err(Error::LengthMismatch {
                    expected: dims,
                    got: exps.len(),
                });
            }
        }
        Ok(Self { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, i: usize) -> (&str, &ExpVec) {
        let (name, exps) = &self.members[i];
        (name, exps)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.members.iter().position(|(n, _)| n == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.members.iter().map(|(n, _)| n.as_str())
    }

    fn columns(&self) -> Vec<Vec<BigInt>> {
        self.members
            .iter()
            .map(|(_, e)| e.to_bigint_column())
            .collect()
    }

    fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.columns()).expect("uniform column lengths")
    }
}

/// Canonical witness that `d` depends on the independent set `s`, if any.
pub fn depends_on(d: &ExpVec, s: &DimSet) -> Result<Option<DependenceWitness>> {
    intlinalg::solve_dependence(&d.to_bigint_column(), &s.columns())
}

/// True when the members of `s` are independent in the dimension group.
pub fn independent_set(s: &DimSet) -> bool {
    if s.is_empty() {
        return true;
    }
    let m = s.matrix();
    intlinalg::rank_int(&m) == s.len()
}

/// Rank of the subgroup generated by the members of `s`.
pub fn group_rank(s: &DimSet) -> usize {
    if s.is_empty() {
        return 0;
    }
    intlinalg::rank_int(&s.matrix())
}

/// Ascending-lexicographic subsets of `pool` with `size` elements.
fn combinations(pool: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn recurse(pool: &[usize], start: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        let needed = size - current.len();
        for i in start..=pool.len().saturating_sub(needed) {
            current.push(pool[i]);
            recurse(pool, i + 1, size, current, out);
            current.pop();
        }
    }
    if size <= pool.len() {
        recurse(pool, 0, size, &mut current, &mut out);
    }
    out
}

/// All maximal independent subsets of `heads` that do not contain the head
/// named `excluded` and on which every remaining head (the excluded one
/// included) depends.
///
/// Returned as index sets into `heads`, each ascending, listed in descending
/// lexicographic order; this matches the fixed order model enumeration uses.
pub fn maximal_independent_subsets_excluding(
    heads: &DimSet,
    excluded: &str,
) -> Result<Vec<Vec<usize>>> {
    let ex = heads.index_of(excluded).ok_or_else(|| Error::UnknownName {
        name: excluded.to_string(),
    })?;
    let matrix = heads.matrix();
    let others: Vec<usize> = (0..heads.len()).filter(|&i| i != ex).collect();
    let rank = {
        let sub = DimSet::new(
            others
                .iter()
                .map(|&i| {
                    let (n, e) = heads.member(i);
                    (n.to_string(), e.clone())
                })
                .collect(),
        )?;
        group_rank(&sub)
    };

    let mut found = Vec::new();
    'candidates: for subset in combinations(&others, rank) {
        if !intlinalg::columns_independent(&matrix, &subset)? {
            continue;
        }
        let cols: Vec<Vec<BigInt>> = subset.iter().map(|&i| matrix.column(i)).collect();
        for i in 0..heads.len() {
            if subset.contains(&i) {
                continue;
            }
            let target = heads.member(i).1.to_bigint_column();
            if intlinalg::solve_dependence(&target, &cols)?.is_none() {
                continue 'candidates;
            }
        }
        found.push(subset);
    }
    found.reverse();
    Ok(found)
}
