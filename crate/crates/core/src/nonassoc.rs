//! Index of nonassociativity and Szász–Hájek (SH) groupoids: those with
//! exactly one nonassociative triple.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;

/// Most triples listed in a report; the count itself is always exact.
pub const TRIPLE_CAP: usize = 1000;

/// Equality pattern of the unique nonassociative triple `(p, q, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShType {
    Aaa,
    Aba,
    Aab,
    Abb,
    Abc,
}

impl ShType {
    pub fn of(p: usize, q: usize, r: usize) -> Self {
        match (p == q, q == r, p == r) {
            (true, true, _) => ShType::Aaa,
            (true, false, _) => ShType::Aab,
            (false, true, _) => ShType::Abb,
            (false, false, true) => ShType::Aba,
            (false, false, false) => ShType::Abc,
        }
    }
}

impl fmt::Display for ShType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShType::Aaa => "aaa",
            ShType::Aba => "aba",
            ShType::Aab => "aab",
            ShType::Abb => "abb",
            ShType::Abc => "abc",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ShReport {
    pub ns_count: usize,
    /// Nonassociative triples in index order, at most [`TRIPLE_CAP`].
    pub triples: Vec<[usize; 3]>,
    /// Present iff `ns_count == 1`.
    pub sh_type: Option<ShType>,
    /// Present iff `ns_count == 1`.
    pub minimal_sh: Option<bool>,
}

impl ShReport {
    pub fn is_sh(&self) -> bool {
        self.ns_count == 1
    }
}

/// Counts the triples with `(ab)c ≠ a(bc)`.
pub fn ns_index(g: &Groupoid) -> ShReport {
    let n = g.order();
    let mut count = 0;
    let mut triples = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let ab = g.mul(a, b);
            for c in 0..n {
                if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                    count += 1;
                    if triples.len() < TRIPLE_CAP {
                        triples.push([a, b, c]);
                    }
                }
            }
        }
    }
    let (sh_type, minimal_sh) = if count == 1 {
        let [p, q, r] = triples[0];
        (
            Some(ShType::of(p, q, r)),
            Some(generates_all(g, &triples[0])),
        )
    } else {
        (None, None)
    };
    ShReport {
        ns_count: count,
        triples,
        sh_type,
        minimal_sh,
    }
}

fn generates_all(g: &Groupoid, triple: &[usize; 3]) -> bool {
    g.generate_subuniverse(triple)
        .map(|s| s.len() == g.order())
        .unwrap_or(false)
}

fn unique_triple(g: &Groupoid) -> Result<[usize; 3]> {
    let report = ns_index(g);
    if report.ns_count != 1 {
        return Err(Error::NotSh(report.ns_count));
    }
    Ok(report.triples[0])
}

/// Whether the unique nonassociative triple generates the whole groupoid.
pub fn is_minimal_sh(g: &Groupoid) -> Result<bool> {
    Ok(generates_all(g, &unique_triple(g)?))
}

/// For each member `t` of the unique nonassociative triple: `xy = t`
/// only if `x = t` or `y = t`. Returns the first offending `(x, y)`.
pub fn sh_factor_violation(g: &Groupoid) -> Result<Option<(usize, usize)>> {
    let triple = unique_triple(g)?;
    let n = g.order();
    for x in 0..n {
        for y in 0..n {
            let t = g.mul(x, y);
            if triple.contains(&t) && x != t && y != t {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

pub fn check_sh_factor_property(g: &Groupoid) -> Result<bool> {
    Ok(sh_factor_violation(g)?.is_none())
}
