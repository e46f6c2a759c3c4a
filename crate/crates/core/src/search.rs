//! Exhaustive scans over all multiplication tables of a given size.
//!
//! Tables are enumerated in row-major lexicographic order (cell `(0,0)` most
//! significant; diagonal cells fixed when only idempotent tables are
//! scanned). Work is split across threads, and the reduction keeps the
//! least violating table, so results do not depend on the thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::{Elem, Groupoid};
use crate::term::{scheme_identity, Identity, Scheme};
use crate::variety::{CompiledSet, Variety};

/// Largest size scanned when only idempotent tables are enumerated.
pub const MAX_IDEMPOTENT_SIZE: usize = 4;
/// Largest size scanned over all tables.
pub const MAX_GENERAL_SIZE: usize = 3;

const CHUNK: u64 = 1 << 14;

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub size: usize,
    pub idempotent_only: bool,
    /// Scheme identities a table must satisfy to be checked.
    pub satisfy: Vec<(Scheme, usize)>,
    pub check: Variety,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchSummary {
    pub tables: u64,
    /// Tables satisfying every requested identity.
    pub satisfying: u64,
    /// Satisfying tables outside the checked variety.
    pub violations: u64,
    /// The first violating table in enumeration order.
    pub first_witness: Option<Groupoid>,
}

/// Identities in the order they are applied as filters.
pub fn search_identities(satisfy: &[(Scheme, usize)]) -> Result<Vec<Identity>> {
    let mut ids = Vec::new();
    for &(scheme, n) in satisfy {
        ids.extend(scheme_identity(scheme, n)?);
    }
    Ok(ids)
}

pub fn cmd_search(spec: &SearchSpec) -> Result<SearchSummary> {
    let n = spec.size;
    let limit = if spec.idempotent_only {
        MAX_IDEMPOTENT_SIZE
    } else {
        MAX_GENERAL_SIZE
    };
    if n == 0 || n > limit {
        return Err(Error::guard("search size", limit as u64, n as u64));
    }
    let filters = CompiledSet::new(&search_identities(&spec.satisfy)?)?;
    let free: Vec<usize> = (0..n * n)
        .filter(|&c| !spec.idempotent_only || c / n != c % n)
        .collect();
    let total = (n as u64).pow(free.len() as u32);

    let chunks = total.div_ceil(CHUNK);
    let partial = (0..chunks)
        .into_par_iter()
        .map(|chunk| -> Result<Partial> {
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut table: Vec<Elem> = (0..n * n)
                .map(|c| if c / n == c % n { (c / n) as Elem } else { 0 })
                .collect();
            decode(start, n, &free, &mut table);
            let mut acc = Partial::default();
            for code in start..end {
                if filters.holds(&table, n) {
                    acc.satisfying += 1;
                    let g = Groupoid::from_raw(n, table.clone())?;
                    if !spec.check.contains(&g)? {
                        acc.violations += 1;
                        if acc.first.is_none() {
                            acc.first = Some((code, g));
                        }
                    }
                }
                increment(n, &free, &mut table);
            }
            Ok(acc)
        })
        .try_reduce(Partial::default, |a, b| Ok(a.merge(b)))?;

    Ok(SearchSummary {
        tables: total,
        satisfying: partial.satisfying,
        violations: partial.violations,
        first_witness: partial.first.map(|(_, g)| g),
    })
}

#[derive(Default)]
struct Partial {
    satisfying: u64,
    violations: u64,
    first: Option<(u64, Groupoid)>,
}

impl Partial {
    fn merge(self, other: Partial) -> Partial {
        let first = match (self.first, other.first) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        Partial {
            satisfying: self.satisfying + other.satisfying,
            violations: self.violations + other.violations,
            first,
        }
    }
}

/// Writes the table with enumeration index `code` into the free cells; the
/// first free cell is the most significant digit.
fn decode(mut code: u64, n: usize, free: &[usize], table: &mut [Elem]) {
    for &cell in free.iter().rev() {
        table[cell] = (code % n as u64) as Elem;
        code /= n as u64;
    }
}

fn increment(n: usize, free: &[usize], table: &mut [Elem]) {
    for &cell in free.iter().rev() {
        table[cell] += 1;
        if (table[cell] as usize) < n {
            return;
        }
        table[cell] = 0;
    }
}

/// Every idempotent table of size `n`, in enumeration order.
pub fn idempotent_tables(n: usize) -> Result<impl Iterator<Item = Groupoid>> {
    if n == 0 || n > MAX_IDEMPOTENT_SIZE {
        return Err(Error::guard(
            "table enumeration size",
            MAX_IDEMPOTENT_SIZE as u64,
            n as u64,
        ));
    }
    let free: Vec<usize> = (0..n * n).filter(|&c| c / n != c % n).collect();
    let total = (n as u64).pow(free.len() as u32);
    Ok((0..total).map(move |code| {
        let mut table: Vec<Elem> = (0..n * n)
            .map(|c| if c / n == c % n { (c / n) as Elem } else { 0 })
            .collect();
        decode(code, n, &free, &mut table);
        Groupoid::from_raw(n, table).expect("decoded tables are in range")
    }))
}
