//! Associative spectra: how many distinct term functions the bracketings of
//! each size induce on a groupoid.
//!
//! The bracketing of size `n` with left factor `L` and right factor `R`
//! induces `(a, b) ↦ L(a) · R(b)`, so its function depends only on `|L|` and
//! the classes of `L` and `R`. Each distinct such key is tabulated once as an
//! outer product of two representative tables, fingerprinted with a 128-bit
//! hash, and compared entry-by-entry against any class with the same
//! fingerprint before merging.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use xxhash_rust::xxh3::xxh3_128;

use crate::bracketing::{catalan, enumerate_bracketings, Bracketing, MAX_ENUM_SIZE};
use crate::error::{Error, Result};
use crate::groupoid::{Elem, Groupoid};
use crate::optable::{checked_pow, OpTable, MAX_ARITY};
use crate::term::{scheme_identity, Scheme};

/// Default limit on table entries evaluated per size.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
/// Largest `max_n` accepted by [`spectrum`].
pub const MAX_SPECTRUM_N: usize = 10;
/// Bytes of key tables held at once during one parallel batch.
const BATCH_BYTES: usize = 1 << 26;

/// `values[n-1] = s(n)`; `classes[n-1]` partitions the bracketing indices of
/// size `n` (in [`enumerate_bracketings`] order) by induced function.
/// Classes are ordered by their least member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub values: Vec<usize>,
    pub classes: Vec<Vec<Vec<usize>>>,
}

/// Tabulates the `|b|`-ary term function of `b` on `g`.
pub fn term_function(g: &Groupoid, b: &Bracketing, budget: u64) -> Result<OpTable> {
    let k = b.size();
    if k > MAX_ARITY {
        return Err(Error::guard(
            "term function arity",
            MAX_ARITY as u64,
            k as u64,
        ));
    }
    let n = g.order();
    let len = table_len(n, k)?;
    if len as u64 > budget {
        return Err(Error::BudgetExceeded {
            needed: len as u64,
            budget,
            completed: Vec::new(),
        });
    }
    let mut args = vec![0usize; k];
    let mut entries = Vec::with_capacity(len);
    for t in 0..len {
        let mut rest = t;
        for slot in args.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        entries.push(b.evaluate(g, &args) as Elem);
    }
    Ok(OpTable::from_parts_unchecked(k, n, entries))
}

fn table_len(order: usize, arity: usize) -> Result<usize> {
    checked_pow(order, arity).ok_or_else(|| Error::guard("table size", usize::MAX as u64, u64::MAX))
}

/// Composition key of a bracketing: left size, left class, right class.
type Key = (usize, usize, usize);

struct Level {
    /// Class of each bracketing of this size, in enumeration order.
    class_of: Vec<usize>,
    /// Key that produced each class's first member.
    rep_key: Vec<Key>,
    /// Representative tables, when retained.
    tables: Vec<Vec<Elem>>,
}

/// Computes `s(1), …, s(max_n)` with the classes of bracketings.
pub fn spectrum(g: &Groupoid, max_n: usize, budget: u64) -> Result<SpectrumReport> {
    if max_n == 0 || max_n > MAX_SPECTRUM_N {
        return Err(Error::guard(
            "spectrum size",
            MAX_SPECTRUM_N as u64,
            max_n as u64,
        ));
    }
    let order = g.order();
    let mut levels: Vec<Level> = Vec::with_capacity(max_n + 1);
    levels.push(Level {
        class_of: Vec::new(),
        rep_key: Vec::new(),
        tables: Vec::new(),
    });
    levels.push(Level {
        class_of: vec![0],
        rep_key: vec![(0, 0, 0)],
        tables: vec![(0..order).map(|a| a as Elem).collect()],
    });
    let mut report = SpectrumReport {
        values: vec![1],
        classes: vec![vec![vec![0]]],
    };

    for n in 2..=max_n {
        // Keys in order of first appearance over the bracketing enumeration.
        let mut key_index: HashMap<Key, usize> = HashMap::new();
        let mut keys: Vec<Key> = Vec::new();
        let mut key_of = Vec::with_capacity(catalan(n)? as usize);
        for l in 1..n {
            for &cl in &levels[l].class_of {
                for &cr in &levels[n - l].class_of {
                    let key = (l, cl, cr);
                    let idx = *key_index.entry(key).or_insert_with(|| {
                        keys.push(key);
                        keys.len() - 1
                    });
                    key_of.push(idx);
                }
            }
        }

        let len = table_len(order, n)?;
        let needed = (keys.len() as u64).saturating_mul(len as u64);
        if needed > budget {
            return Err(Error::BudgetExceeded {
                needed,
                budget,
                completed: report.values,
            });
        }

        let keep_tables = n < max_n;
        let build = |key: &Key| outer_product(g, &levels, n, *key);
        let mut by_hash: HashMap<u128, Vec<usize>> = HashMap::new();
        let mut level = Level {
            class_of: Vec::with_capacity(key_of.len()),
            rep_key: Vec::new(),
            tables: Vec::new(),
        };
        let mut class_of_key = Vec::with_capacity(keys.len());
        let batch = (BATCH_BYTES / len.max(1)).max(1);
        for chunk in keys.chunks(batch) {
            let built: Vec<(u128, Vec<Elem>)> = chunk
                .par_iter()
                .map(|k| {
                    let t = build(k);
                    (xxh3_128(&t), t)
                })
                .collect();
            for (key, (hash, table)) in chunk.iter().zip(built) {
                let candidates = by_hash.entry(hash).or_default();
                let found = candidates.iter().copied().find(|&c| {
                    if keep_tables {
                        level.tables[c] == table
                    } else {
                        build(&level.rep_key[c]) == table
                    }
                });
                let class = match found {
                    Some(c) => c,
                    None => {
                        let c = level.rep_key.len();
                        level.rep_key.push(*key);
                        if keep_tables {
                            level.tables.push(table);
                        }
                        candidates.push(c);
                        c
                    }
                };
                class_of_key.push(class);
            }
        }
        level.class_of = key_of.iter().map(|&k| class_of_key[k]).collect();

        let mut classes = vec![Vec::new(); level.rep_key.len()];
        for (i, &c) in level.class_of.iter().enumerate() {
            classes[c].push(i);
        }
        report.values.push(classes.len());
        report.classes.push(classes);
        levels.push(level);
    }
    Ok(report)
}

/// `(a₁…aₙ) ↦ L(a₁…a_l) · R(a_{l+1}…aₙ)` for the representatives named by `key`.
fn outer_product(g: &Groupoid, levels: &[Level], n: usize, (l, cl, cr): Key) -> Vec<Elem> {
    let left = &levels[l].tables[cl];
    let right = &levels[n - l].tables[cr];
    let table = g.table();
    let order = g.order();
    let mut out = Vec::with_capacity(left.len() * right.len());
    for &a in left.iter() {
        let row = &table[a as usize * order..(a as usize + 1) * order];
        out.extend(right.iter().map(|&b| row[b as usize]));
    }
    out
}

/// Independent reference: tabulates every bracketing directly and groups
/// identical tables exactly. Intended for small cross-checks.
pub fn spectrum_exact(g: &Groupoid, max_n: usize, budget: u64) -> Result<SpectrumReport> {
    let mut report = SpectrumReport {
        values: Vec::new(),
        classes: Vec::new(),
    };
    for n in 1..=max_n {
        let mut seen: HashMap<Vec<Elem>, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, b) in enumerate_bracketings(n)?.iter().enumerate() {
            let t = term_function(g, b, budget)?.into_entries();
            let next = classes.len();
            let c = *seen.entry(t).or_insert(next);
            if c == next {
                classes.push(Vec::new());
            }
            classes[c].push(i);
        }
        report.values.push(classes.len());
        report.classes.push(classes);
    }
    Ok(report)
}

/// Number of distinct left-depth sequences modulo `k` among the bracketings
/// of each size `1..=max_n`.
///
/// Built recursively: the sequence of `L·R` is that of `L` shifted by one
/// followed by that of `R`.
pub fn spectrum_ak_oracle(k: usize, max_n: usize) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::Invalid(format!(
            "modulus must be at least 2, got {k}"
        )));
    }
    if max_n > MAX_ENUM_SIZE {
        return Err(Error::guard(
            "oracle size",
            MAX_ENUM_SIZE as u64,
            max_n as u64,
        ));
    }
    let mut sets: Vec<Vec<Vec<u8>>> = vec![Vec::new()];
    let mut out = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let mut set: HashSet<Vec<u8>> = HashSet::new();
        if n == 1 {
            set.insert(vec![0]);
        }
        for l in 1..n {
            for left in &sets[l] {
                let shifted: Vec<u8> = left.iter().map(|&d| ((d as usize + 1) % k) as u8).collect();
                for right in &sets[n - l] {
                    let mut seq = shifted.clone();
                    seq.extend_from_slice(right);
                    set.insert(seq);
                }
            }
        }
        out.push(set.len());
        let mut level: Vec<Vec<u8>> = set.into_iter().collect();
        level.sort_unstable();
        sets.push(level);
    }
    Ok(out)
}

/// Whether `g` satisfies `←(x1…xn) ≈ x1·←(x2…xn)`.
pub fn nulla_satisfied(g: &Groupoid, n: usize) -> Result<bool> {
    let ids = scheme_identity(Scheme::Nulla, n)?;
    for id in &ids {
        if id.counterexample(g)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
