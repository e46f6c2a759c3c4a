//! Tabulated finitary operations on a groupoid's carrier.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::{Elem, Groupoid};
use crate::partition::Partition;

/// Largest arity an [`OpTable`] may have.
pub const MAX_ARITY: usize = 8;

/// A `k`-ary operation on `0..base`, stored as a flat row-major table:
/// the tuple `(a₁, …, a_k)` sits at `Σ aᵢ · base^(k−i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct OpTable {
    arity: usize,
    base: usize,
    entries: Vec<Elem>,
}

impl OpTable {
    pub fn new(arity: usize, base: usize, entries: Vec<Elem>) -> Result<Self> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::guard(
                "operation arity",
                MAX_ARITY as u64,
                arity as u64,
            ));
        }
        let len = checked_pow(base, arity)
            .ok_or_else(|| Error::guard("operation table size", u64::MAX, u64::MAX))?;
        if entries.len() != len {
            return Err(Error::Invalid(format!(
                "operation table has {} entries, expected {len}",
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e as usize >= base) {
            return Err(Error::ElementOutOfRange {
                index: bad as usize,
                order: base,
            });
        }
        Ok(OpTable {
            arity,
            base,
            entries,
        })
    }

    pub(crate) fn from_parts_unchecked(arity: usize, base: usize, entries: Vec<Elem>) -> Self {
        debug_assert_eq!(entries.len(), base.pow(arity as u32));
        OpTable {
            arity,
            base,
            entries,
        }
    }

    /// The `index`-th `arity`-ary projection (0-based).
    pub fn projection(arity: usize, base: usize, index: usize) -> Self {
        assert!(index < arity);
        let len = base.pow(arity as u32);
        let stride = base.pow((arity - 1 - index) as u32);
        let entries = (0..len).map(|t| ((t / stride) % base) as Elem).collect();
        OpTable {
            arity,
            base,
            entries,
        }
    }

    /// The basic operation of `g` as a binary table.
    pub fn basic(g: &Groupoid) -> Self {
        OpTable {
            arity: 2,
            base: g.order(),
            entries: g.table().to_vec(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Elem> {
        self.entries
    }

    pub fn apply(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        let idx = args.iter().fold(0, |acc, &a| acc * self.base + a);
        self.entries[idx] as usize
    }

    /// Decodes a flat index into its argument tuple.
    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.arity];
        for slot in out.iter_mut().rev() {
            *slot = index % self.base;
            index /= self.base;
        }
        out
    }

    /// True when some argument position is returned unchanged on every tuple.
    pub fn is_projection(&self) -> bool {
        (0..self.arity).any(|i| *self == OpTable::projection(self.arity, self.base, i))
    }

    /// Whether the equivalence `p` is compatible with this operation.
    ///
    /// It suffices to change one argument at a time: for every tuple and
    /// every position, replacing the argument by its block representative
    /// must not change the block of the result.
    pub fn preserves_partition(&self, p: &Partition) -> bool {
        assert_eq!(p.base(), self.base);
        let block = p.block_index();
        let rep: Vec<usize> = (0..self.base).map(|x| p.representative(x)).collect();
        let strides: Vec<usize> = (0..self.arity)
            .map(|i| self.base.pow((self.arity - 1 - i) as u32))
            .collect();
        for (t, &value) in self.entries.iter().enumerate() {
            let target = block[value as usize];
            for &stride in &strides {
                let arg = (t / stride) % self.base;
                let r = rep[arg];
                if r == arg {
                    continue;
                }
                let moved = t - arg * stride + r * stride;
                if block[self.entries[moved] as usize] != target {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `subset` (given as a membership mask) is closed under the operation.
    pub fn preserves_subset(&self, member: &[bool]) -> bool {
        assert_eq!(member.len(), self.base);
        let elems: Vec<usize> = (0..self.base).filter(|&x| member[x]).collect();
        if elems.is_empty() {
            return true;
        }
        let mut counter = vec![0usize; self.arity];
        loop {
            let idx = counter.iter().fold(0, |acc, &c| acc * self.base + elems[c]);
            if !member[self.entries[idx] as usize] {
                return false;
            }
            // odometer over elems^arity
            let mut pos = self.arity;
            loop {
                if pos == 0 {
                    return true;
                }
                pos -= 1;
                counter[pos] += 1;
                if counter[pos] < elems.len() {
                    break;
                }
                counter[pos] = 0;
            }
        }
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projections() {
        let p0 = OpTable::projection(2, 3, 0);
        let p1 = OpTable::projection(2, 3, 1);
        assert_eq!(p0.apply(&[2, 1]), 2);
        assert_eq!(p1.apply(&[2, 1]), 1);
        assert!(p0.is_projection() && p1.is_projection());
        let p = OpTable::projection(3, 2, 1);
        assert_eq!(p.tuple(5), vec![1, 0, 1]);
        assert_eq!(p.apply(&[1, 0, 1]), 0);
    }

    #[test]
    fn validates() {
        assert!(OpTable::new(2, 2, vec![0, 1, 1]).is_err());
        assert!(OpTable::new(2, 2, vec![0, 1, 1, 2]).is_err());
        assert!(OpTable::new(9, 2, vec![0; 512]).is_err());
        assert!(OpTable::new(1, 2, vec![1, 0]).is_ok());
    }

    #[test]
    fn subset_closure() {
        // min on {0,1,2}
        let min = OpTable::new(2, 3, vec![0, 0, 0, 0, 1, 1, 0, 1, 2]).unwrap();
        assert!(min.preserves_subset(&[false, true, true]));
        assert!(min.preserves_subset(&[false, false, false]));
        let succ = OpTable::new(1, 3, vec![1, 2, 0]).unwrap();
        assert!(!succ.preserves_subset(&[true, true, false]));
    }
}
