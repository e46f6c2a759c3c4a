//! Finite groupoids (sets with one binary operation) and the `.gpd` table format.
//!
//! Elements are dense indices `0..n` with a side table of display names; the
//! multiplication table is stored row-major as bytes, so `table[i * n + j]` is
//! the product of element `i` (left factor) by element `j`.
//!
//! A `.gpd` document looks like this:
//!
//! ```text
//! # comments run to end of line
//! a b c
//! a a c
//! b b b
//! c c c
//! ```
//!
//! The first significant line lists the element names; the next `n` lines are
//! the rows of the table.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported carrier; elements are stored as bytes.
pub const MAX_ORDER: usize = 256;

/// Dense element index as stored in multiplication tables.
pub type Elem = u8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Groupoid {
    names: Vec<String>,
    table: Vec<Elem>,
}

impl Groupoid {
    /// Builds a groupoid from names and a flat row-major table.
    pub fn from_table(names: Vec<String>, table: Vec<Elem>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Invalid(
                "a groupoid needs at least one element".into(),
            ));
        }
        if n > MAX_ORDER {
            return Err(Error::guard("groupoid order", MAX_ORDER as u64, n as u64));
        }
        if table.len() != n * n {
            return Err(Error::Invalid(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        let mut seen = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '#') {
                return Err(Error::Invalid(format!("invalid element name {name:?}")));
            }
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate name `{name}`")));
            }
        }
        if let Some(&bad) = table.iter().find(|&&e| e as usize >= n) {
            return Err(Error::ElementOutOfRange {
                index: bad as usize,
                order: n,
            });
        }
        Ok(Groupoid { names, table })
    }

    /// Builds a groupoid by tabulating `product(i, j)`.
    pub fn from_fn(names: Vec<String>, product: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = names.len();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let p = product(i, j);
                if p >= n.min(MAX_ORDER) {
                    return Err(Error::ElementOutOfRange { index: p, order: n });
                }
                table.push(p as Elem);
            }
        }
        Self::from_table(names, table)
    }

    /// Groupoid on `0..n` named by their decimal index.
    pub fn from_raw(n: usize, table: Vec<Elem>) -> Result<Self> {
        Self::from_table((0..n).map(|i| i.to_string()).collect(), table)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Resolves a list of element names to indices.
    pub fn indices_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|s| {
                self.index_of(s.as_ref())
                    .ok_or_else(|| Error::Invalid(format!("unknown element `{}`", s.as_ref())))
            })
            .collect()
    }

    /// The raw row-major table.
    #[inline]
    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    /// Copy of this groupoid with a single table entry replaced.
    pub fn with_entry(&self, a: usize, b: usize, value: usize) -> Result<Self> {
        let n = self.order();
        for idx in [a, b, value] {
            if idx >= n {
                return Err(Error::ElementOutOfRange {
                    index: idx,
                    order: n,
                });
            }
        }
        let mut out = self.clone();
        out.table[a * n + b] = value as Elem;
        Ok(out)
    }

    /// Copy of this groupoid with new element names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order() {
            return Err(Error::Invalid("name count does not match the order".into()));
        }
        Self::from_table(names, self.table.clone())
    }

    /// The dual groupoid, with product `x ∘ y = y · x`.
    pub fn dual(&self) -> Self {
        let n = self.order();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[j * n + i] = self.table[i * n + j];
            }
        }
        Groupoid {
            names: self.names.clone(),
            table,
        }
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.order()).all(|i| self.mul(i, i) == i)
    }

    /// Smallest subset containing `seeds` and closed under the product,
    /// returned in ascending index order.
    pub fn generate_subuniverse(&self, seeds: &[usize]) -> Result<Vec<usize>> {
        let n = self.order();
        if seeds.is_empty() {
            return Err(Error::Invalid("seed set must be nonempty".into()));
        }
        let mut member = vec![false; n];
        let mut members = Vec::new();
        for &s in seeds {
            if s >= n {
                return Err(Error::ElementOutOfRange { index: s, order: n });
            }
            if !member[s] {
                member[s] = true;
                members.push(s);
            }
        }
        // Every new element is multiplied against everything found so far
        // (on both sides), so each pair is visited exactly once.
        let mut next = 0;
        while next < members.len() {
            let x = members[next];
            for k in 0..=next {
                let y = members[k];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !member[p] {
                        member[p] = true;
                        members.push(p);
                    }
                }
            }
            next += 1;
        }
        members.sort_unstable();
        Ok(members)
    }

    /// Parses a `.gpd` document.
    pub fn parse_gpd(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
            .filter(|(_, l)| !l.trim().is_empty());

        let (header_line, header) = lines.next().ok_or_else(|| Error::table(1, "empty file"))?;
        let names: Vec<String> = header.split_whitespace().map(str::to_owned).collect();
        let n = names.len();
        if n > MAX_ORDER {
            return Err(Error::guard("groupoid order", MAX_ORDER as u64, n as u64));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(Error::table(
                    header_line,
                    format!("duplicate name `{name}`"),
                ));
            }
        }

        let mut table = Vec::with_capacity(n * n);
        for row in 0..n {
            let (line, text) = lines.next().ok_or_else(|| {
                Error::table(header_line, format!("expected {n} rows, found {row}"))
            })?;
            let tokens: Vec<&str> = text.split_whitespace().collect();
            if tokens.len() != n {
                return Err(Error::table(
                    line,
                    format!(
                        "row length mismatch: expected {n} tokens, found {}",
                        tokens.len()
                    ),
                ));
            }
            for tok in tokens {
                let &e = index
                    .get(tok)
                    .ok_or_else(|| Error::table(line, format!("unknown token `{tok}`")))?;
                table.push(e as Elem);
            }
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::table(
                line,
                format!("unexpected extra row after {n} rows"),
            ));
        }
        Ok(Groupoid { names, table })
    }

    /// Serializes to `.gpd`: names line, then rows, single-space separated.
    pub fn to_gpd(&self) -> String {
        let n = self.order();
        let mut out = self.names.join(" ");
        out.push('\n');
        for i in 0..n {
            let row: Vec<&str> = (0..n).map(|j| self.name(self.mul(i, j))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl FromStr for Groupoid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_gpd(s)
    }
}

impl fmt::Display for Groupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_gpd())
    }
}

impl fmt::Debug for Groupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Groupoid {{ {} }}",
            self.to_gpd().trim_end().replace('\n', " / ")
        )
    }
}

/// Serialized as element names plus rows of product names.
impl serde::Serialize for Groupoid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let n = self.order();
        let rows: Vec<Vec<&str>> = (0..n)
            .map(|i| (0..n).map(|j| self.name(self.mul(i, j))).collect())
            .collect();
        let mut st = s.serialize_struct("Groupoid", 2)?;
        st.serialize_field("names", &self.names)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

/// Parses a `.gpd` document.
pub fn parse_groupoid(text: &str) -> Result<Groupoid> {
    Groupoid::parse_gpd(text)
}
