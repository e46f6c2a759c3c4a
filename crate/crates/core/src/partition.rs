//! Equivalence relations on a groupoid's carrier: enumeration, congruence
//! tests and quotients.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::{Elem, Groupoid};
use crate::optable::OpTable;

/// Largest carrier for which partitions are enumerated (Bell(12) = 4 213 597).
pub const MAX_PARTITION_BASE: usize = 12;

/// A partition of `0..n` into disjoint nonempty blocks.
///
/// Stored canonically: each block ascending, blocks ordered by their least
/// element.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    #[serde(skip)]
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(base: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; base];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in block {
                if x >= base {
                    return Err(Error::ElementOutOfRange {
                        index: x,
                        order: base,
                    });
                }
                if block_of[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} appears twice"
                    )));
                }
                block_of[x] = b;
            }
        }
        if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "element {x} is not covered"
            )));
        }
        Ok(Self::from_labels(&block_of))
    }

    /// Builds a partition from a block label per element (any labelling).
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut relabel = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = Vec::with_capacity(labels.len());
        for (x, &l) in labels.iter().enumerate() {
            let b = *relabel.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(x);
            block_of.push(b);
        }
        Partition { blocks, block_of }
    }

    /// Every element in its own block.
    pub fn discrete(base: usize) -> Self {
        Self::from_labels(&(0..base).collect::<Vec<_>>())
    }

    /// A single block.
    pub fn total(base: usize) -> Self {
        Self::from_labels(&vec![0; base])
    }

    /// Parses blocks of element names separated by `|`, e.g. `"a | b | e f"`.
    /// Elements not mentioned become singletons.
    pub fn parse_named(g: &Groupoid, text: &str) -> Result<Self> {
        let n = g.order();
        let mut labels: Vec<Option<usize>> = vec![None; n];
        for (b, chunk) in text.split('|').enumerate() {
            for name in chunk.split(|c: char| c.is_whitespace() || c == ',') {
                if name.is_empty() {
                    continue;
                }
                let x = g
                    .index_of(name)
                    .ok_or_else(|| Error::InvalidPartition(format!("unknown element `{name}`")))?;
                if labels[x].replace(b).is_some() {
                    return Err(Error::InvalidPartition(format!("`{name}` appears twice")));
                }
            }
        }
        let mut next = text.split('|').count();
        let labels: Vec<usize> = labels
            .into_iter()
            .map(|l| {
                l.unwrap_or_else(|| {
                    next += 1;
                    next
                })
            })
            .collect();
        Ok(Self::from_labels(&labels))
    }

    pub fn base(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Block number of each element.
    pub fn block_index(&self) -> &[usize] {
        &self.block_of
    }

    /// Least element of the block containing `x`.
    pub fn representative(&self, x: usize) -> usize {
        self.blocks[self.block_of[x]][0]
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.base()
    }

    /// Renders blocks with element names, e.g. `{a} {b} {c} {e,f}`.
    pub fn display_with<'a>(&'a self, g: &'a Groupoid) -> impl fmt::Display + 'a {
        struct Named<'a>(&'a Partition, &'a Groupoid);
        impl fmt::Display for Named<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, block) in self.0.blocks.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    let names: Vec<&str> = block.iter().map(|&x| self.1.name(x)).collect();
                    write!(f, "{{{}}}", names.join(","))?;
                }
                Ok(())
            }
        }
        Named(self, g)
    }
}

/// Streams every partition of `0..n` exactly once.
///
/// Order: by number of blocks descending (finest first), then by restricted
/// growth string in lexicographic order. Witness searches therefore report
/// the finest relation first.
pub fn enumerate_partitions(n: usize) -> Result<Partitions> {
    if n > MAX_PARTITION_BASE {
        return Err(Error::guard(
            "partition enumeration size",
            MAX_PARTITION_BASE as u64,
            n as u64,
        ));
    }
    Ok(Partitions {
        n,
        blocks: n,
        current: None,
        done: n == 0,
    })
}

/// Iterator returned by [`enumerate_partitions`].
pub struct Partitions {
    n: usize,
    blocks: usize,
    current: Option<Vec<usize>>,
    done: bool,
}

impl Partitions {
    /// Lexicographically least restricted growth string with exactly `k` blocks.
    fn first(n: usize, k: usize) -> Vec<usize> {
        let mut rgs = vec![0; n - k + 1];
        rgs.extend(1..k);
        rgs
    }

    /// Lexicographic successor among strings with exactly `k` blocks.
    fn advance(rgs: &mut [usize], k: usize) -> bool {
        let n = rgs.len();
        let mut prefix_max = vec![0; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(rgs[i - 1]);
        }
        for i in (1..n).rev() {
            if rgs[i] + 1 > k - 1 || rgs[i] > prefix_max[i] {
                continue;
            }
            let value = rgs[i] + 1;
            let top = prefix_max[i].max(value);
            let remaining = n - i - 1;
            let missing = k - 1 - top;
            if remaining < missing {
                continue;
            }
            rgs[i] = value;
            let zeros = remaining - missing;
            for slot in rgs[i + 1..i + 1 + zeros].iter_mut() {
                *slot = 0;
            }
            for (off, slot) in rgs[i + 1 + zeros..].iter_mut().enumerate() {
                *slot = top + 1 + off;
            }
            return true;
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        match &mut self.current {
            None => self.current = Some(Self::first(self.n, self.blocks)),
            Some(rgs) => {
                if !Self::advance(rgs, self.blocks) {
                    if self.blocks == 1 {
                        self.done = true;
                        return None;
                    }
                    self.blocks -= 1;
                    *rgs = Self::first(self.n, self.blocks);
                }
            }
        }
        self.current.as_deref().map(Partition::from_labels)
    }
}

/// Whether `p` is compatible with the product of `g`.
pub fn is_congruence(g: &Groupoid, p: &Partition) -> bool {
    assert_eq!(
        p.base(),
        g.order(),
        "partition base must match the groupoid order"
    );
    let n = g.order();
    let block = p.block_index();
    for x in 0..n {
        let rx = p.representative(x);
        for y in 0..n {
            let target = block[g.mul(x, y)];
            if block[g.mul(rx, y)] != target || block[g.mul(x, p.representative(y))] != target {
                return false;
            }
        }
    }
    true
}

/// All congruences of `g`, in [`enumerate_partitions`] order.
pub fn congruences(g: &Groupoid) -> Result<Vec<Partition>> {
    Ok(enumerate_partitions(g.order())?
        .filter(|p| is_congruence(g, p))
        .collect())
}

/// The factor groupoid `g / p`. Blocks become elements named by joining
/// member names with `+` in file order.
pub fn quotient(g: &Groupoid, p: &Partition) -> Result<Groupoid> {
    if p.base() != g.order() {
        return Err(Error::InvalidPartition(
            "partition base does not match the groupoid".into(),
        ));
    }
    if !is_congruence(g, p) {
        return Err(Error::NotCongruence);
    }
    let names = p
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&x| g.name(x)).collect::<Vec<_>>().join("+"))
        .collect();
    let m = p.block_count();
    let mut table = Vec::with_capacity(m * m);
    for bi in p.blocks() {
        for bj in p.blocks() {
            table.push(p.block_index()[g.mul(bi[0], bj[0])] as Elem);
        }
    }
    Groupoid::from_table(names, table)
}

/// First partition (in enumeration order) preserved by `suspect` but not by
/// `basic`.
pub(crate) fn first_separating_partition(
    basic: &OpTable,
    suspect: &OpTable,
) -> Result<Option<Partition>> {
    Ok(enumerate_partitions(basic.base())?
        .find(|p| suspect.preserves_partition(p) && !basic.preserves_partition(p)))
}
