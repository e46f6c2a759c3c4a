//! Binary part of the clone of a groupoid, its two-generated free algebra,
//! and relational certificates of non-minimality.
//!
//! The binary part is the closure of the two projections under
//! `(u, v) ↦ f∘(u, v)`. The same closure with any binary term operation `h`
//! in place of `f` gives exactly the binary part of the clone `[h]`, so
//! `f` missing from it certifies `f ∉ [h]`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::{Elem, Groupoid};
use crate::optable::OpTable;
use crate::partition::{first_separating_partition, Partition};
use crate::term::{parse_term, Term};
use crate::variety::{is_left_zero, is_right_zero};

/// Default bound on the number of distinct binary operations.
pub const CLONE_LIMIT: usize = 100_000;
/// Largest carrier searched for subset witnesses.
pub const MAX_SUBSET_BASE: usize = 20;

#[derive(Clone, Debug)]
pub struct BinaryClonePart {
    ops: Vec<OpTable>,
    terms: Vec<Term>,
    /// `product[i * len + j]` is the index of `f∘(ops[i], ops[j])`.
    product: Vec<usize>,
    basic: usize,
}

impl BinaryClonePart {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// `ops()[0]` and `ops()[1]` are the first and second projections.
    pub fn ops(&self) -> &[OpTable] {
        &self.ops
    }

    /// Generating term of each operation, in discovery order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Names such as `x`, `(x y)`, `((x y) x)`.
    pub fn names(&self) -> Vec<String> {
        self.terms.iter().map(Term::to_string).collect()
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.product[i * self.ops.len() + j]
    }

    /// Index of the basic operation `f = f∘(e₁, e₂)`.
    pub fn basic_index(&self) -> usize {
        self.basic
    }

    pub fn index_of(&self, op: &OpTable) -> Option<usize> {
        self.ops.iter().position(|o| o == op)
    }
}

/// Operations, their terms, and the composition table `(i, j) ↦ k`.
type Closure = (Vec<OpTable>, Vec<Term>, HashMap<(usize, usize), usize>);

/// Closure of `{e₁, e₂}` on a carrier of size `base` under pointwise `op`.
fn close(base: usize, op: impl Fn(usize, usize) -> usize, limit: usize) -> Result<Closure> {
    let e1 = OpTable::projection(2, base, 0);
    let e2 = OpTable::projection(2, base, 1);
    let mut index: HashMap<Vec<Elem>, usize> = HashMap::new();
    index.insert(e1.entries().to_vec(), 0);
    index.entry(e2.entries().to_vec()).or_insert(1);
    let mut ops = vec![e1, e2];
    let mut terms = vec![Term::var("x"), Term::var("y")];
    let mut product = HashMap::new();
    // On a one-element carrier the projections coincide; both are kept so
    // that indices 0 and 1 always name them, and products resolve to 0.
    let mut m = 0;
    while m < ops.len() {
        let mut pairs = Vec::with_capacity(2 * m + 1);
        for i in 0..=m {
            pairs.push((i, m));
            if i != m {
                pairs.push((m, i));
            }
        }
        for (i, j) in pairs {
            let entries: Vec<Elem> = ops[i]
                .entries()
                .iter()
                .zip(ops[j].entries())
                .map(|(&u, &v)| op(u as usize, v as usize) as Elem)
                .collect();
            let k = match index.get(&entries) {
                Some(&k) => k,
                None => {
                    if ops.len() >= limit {
                        return Err(Error::guard(
                            "binary clone size",
                            limit as u64,
                            ops.len() as u64 + 1,
                        ));
                    }
                    let k = ops.len();
                    index.insert(entries.clone(), k);
                    ops.push(OpTable::from_parts_unchecked(2, base, entries));
                    terms.push(Term::app(terms[i].clone(), terms[j].clone()));
                    k
                }
            };
            product.insert((i, j), k);
        }
        m += 1;
    }
    Ok((ops, terms, product))
}

pub fn binary_clone_part(g: &Groupoid) -> Result<BinaryClonePart> {
    binary_clone_part_with_limit(g, CLONE_LIMIT)
}

pub fn binary_clone_part_with_limit(g: &Groupoid, limit: usize) -> Result<BinaryClonePart> {
    let (ops, terms, map) = close(g.order(), |a, b| g.mul(a, b), limit)?;
    let len = ops.len();
    let mut product = vec![0; len * len];
    for ((i, j), k) in map {
        product[i * len + j] = k;
    }
    let basic = product[1];
    Ok(BinaryClonePart {
        ops,
        terms,
        product,
        basic,
    })
}

/// The two-generated free algebra of the variety generated by `g`, realized
/// on the binary term operations, with element names in compact form
/// (`x`, `y`, `xy`, `(xy)x`, …).
pub fn f2_table(g: &Groupoid) -> Result<Groupoid> {
    let part = binary_clone_part(g)?;
    let mut len = part.len();
    // One-element carriers give coinciding projections; keep one.
    if len == 2 && part.ops[0] == part.ops[1] {
        len = 1;
    }
    let names: Vec<String> = part.terms[..len].iter().map(Term::compact).collect();
    Groupoid::from_fn(names, |i, j| part.product(i, j))
}

/// A groupoid has a trivial clone iff it is a left or right zero semigroup.
pub fn is_trivial_clone(g: &Groupoid) -> bool {
    is_left_zero(g) || is_right_zero(g)
}

/// Trivial-clone test by closure: the closure stays at the two projections.
pub fn is_trivial_clone_by_closure(g: &Groupoid) -> bool {
    binary_clone_part_with_limit(g, 2).is_ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MinimalityVerdict {
    /// Every nontrivial binary `h` regenerates `f`. Consistent with a
    /// minimal clone; higher-arity generators are not examined.
    Passes,
    /// Indices (into the clone part) of nontrivial binary operations `h`
    /// with `f ∉ [h]`. The clone is not minimal.
    FailsWithWitness { ops: Vec<usize> },
}

/// Checks `f ∈ [h]` for every nontrivial binary term operation `h`.
pub fn binary_minimality_proxy(g: &Groupoid) -> Result<MinimalityVerdict> {
    let part = binary_clone_part(g)?;
    minimality_proxy_for(g, &part)
}

pub fn minimality_proxy_for(g: &Groupoid, part: &BinaryClonePart) -> Result<MinimalityVerdict> {
    if is_trivial_clone(g) {
        return Err(Error::Invalid("the basic operation is a projection".into()));
    }
    let basic = part.ops[part.basic].entries();
    let base = g.order();
    let mut failing = Vec::new();
    for (idx, h) in part.ops.iter().enumerate() {
        if h.is_projection() {
            continue;
        }
        let (ops, _, _) = close(base, |a, b| h.apply(&[a, b]), CLONE_LIMIT)?;
        if !ops.iter().any(|o| o.entries() == basic) {
            failing.push(idx);
        }
    }
    Ok(if failing.is_empty() {
        MinimalityVerdict::Passes
    } else {
        MinimalityVerdict::FailsWithWitness { ops: failing }
    })
}

/// A compatible relation of the suspect operation that the basic operation
/// does not preserve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum RelationPayload {
    Partition(Partition),
    Subset(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SubsetWitness {
    #[serde(flatten)]
    pub relation: RelationPayload,
    pub preserved_by: String,
    pub violated_by: String,
}

/// First partition (finest first) preserved by `suspect` but not by the
/// basic operation.
pub fn find_partition_witness(g: &Groupoid, suspect: &OpTable) -> Result<Option<Partition>> {
    check_suspect(g, suspect)?;
    first_separating_partition(&OpTable::basic(g), suspect)
}

/// First nonempty subset, by ascending membership mask (bit `i` = element
/// `i`), closed under `suspect` but not under the basic operation.
pub fn find_subset_witness(g: &Groupoid, suspect: &OpTable) -> Result<Option<Vec<usize>>> {
    check_suspect(g, suspect)?;
    let n = g.order();
    if n > MAX_SUBSET_BASE {
        return Err(Error::guard(
            "subset witness base",
            MAX_SUBSET_BASE as u64,
            n as u64,
        ));
    }
    let basic = OpTable::basic(g);
    let mut member = vec![false; n];
    for mask in 1u32..(1u32 << n) {
        for (i, m) in member.iter_mut().enumerate() {
            *m = mask >> i & 1 == 1;
        }
        if suspect.preserves_subset(&member) && !basic.preserves_subset(&member) {
            return Ok(Some((0..n).filter(|&i| member[i]).collect()));
        }
    }
    Ok(None)
}

/// Partitions first, then subsets.
pub fn find_relational_witness(
    g: &Groupoid,
    suspect: &OpTable,
    suspect_name: &str,
) -> Result<Option<SubsetWitness>> {
    let relation = match find_partition_witness(g, suspect)? {
        Some(p) => Some(RelationPayload::Partition(p)),
        None => find_subset_witness(g, suspect)?.map(RelationPayload::Subset),
    };
    Ok(relation.map(|relation| SubsetWitness {
        relation,
        preserved_by: suspect_name.to_owned(),
        violated_by: "(x y)".to_owned(),
    }))
}

fn check_suspect(g: &Groupoid, suspect: &OpTable) -> Result<()> {
    if suspect.base() != g.order() {
        return Err(Error::Invalid(format!(
            "suspect operation is on {} elements, groupoid has {}",
            suspect.base(),
            g.order()
        )));
    }
    Ok(())
}

/// The binary operation `(x, y) ↦ t(x, y)` of a term over the variables
/// `x` and `y`.
pub fn binary_term_op(g: &Groupoid, text: &str) -> Result<OpTable> {
    let term = parse_term(text)?;
    let slots = term
        .vars()
        .iter()
        .map(|v| match v.as_str() {
            "x" => Ok(0),
            "y" => Ok(1),
            other => Err(Error::Invalid(format!(
                "binary terms use the variables x and y, found `{other}`"
            ))),
        })
        .collect::<Result<Vec<usize>>>()?;
    let n = g.order();
    let mut entries = Vec::with_capacity(n * n);
    let mut env = vec![0; slots.len()];
    for x in 0..n {
        for y in 0..n {
            for (e, &s) in env.iter_mut().zip(&slots) {
                *e = if s == 0 { x } else { y };
            }
            entries.push(term.evaluate(g, &env)? as Elem);
        }
    }
    Ok(OpTable::from_parts_unchecked(2, n, entries))
}
