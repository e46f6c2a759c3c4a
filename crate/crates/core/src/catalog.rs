//! Named groupoids: stored tables, their duals, and parameterized families.
//!
//! Every entry carries the properties it is expected to have as [`Tag`]s.
//! Tags are claims to be checked, never inputs to other computations.

use std::fmt;

use serde::Serialize;

use crate::bracketing::catalan;
use crate::clone::{binary_minimality_proxy, MinimalityVerdict};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::nonassoc::{ns_index, ShType};
use crate::spectrum::{spectrum, DEFAULT_BUDGET};
use crate::variety::{is_prime, Variety};

/// Largest `k` accepted by [`build_ak`].
pub const MAX_AK: usize = 64;
/// Largest prime accepted by [`build_f2_cp`].
pub const MAX_F2_CP: u64 = 31;
/// Largest chain length accepted by [`build_chain_groupoid`].
pub const MAX_CHAIN: usize = 5;

/// Largest `n` used when checking spectrum tags.
const TAG_SPECTRUM_N: usize = 7;
const TAG_CATALAN_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Tag {
    Idempotent,
    Semigroup,
    NotSemigroup,
    InB,
    InDualB,
    InA,
    InD,
    InDcapA,
    InCp(u64),
    RectBand,
    ShAbc,
    ShAba,
    ShAab,
    MinimalSh,
    /// The binary minimality proxy passes.
    ProxyPasses,
    /// The binary minimality proxy certifies a non-minimal clone.
    CloneNotMinimal,
    /// `s(n) = 2^(n−2)` for `2 ≤ n ≤ 7`.
    Spectrum2Pow,
    /// `s(n) = C(n−1)` for `n ≤ 6`.
    SpectrumCatalan,
}

impl Tag {
    /// Recomputes the property on `g`.
    pub fn check(&self, g: &Groupoid) -> Result<bool> {
        let sh = |t: ShType| ns_index(g).sh_type == Some(t);
        Ok(match self {
            Tag::Idempotent => g.is_idempotent(),
            Tag::Semigroup => Variety::Semigroup.contains(g)?,
            Tag::NotSemigroup => !Variety::Semigroup.contains(g)?,
            Tag::InB => Variety::B.contains(g)?,
            Tag::InDualB => Variety::Dual(Box::new(Variety::B)).contains(g)?,
            Tag::InA => Variety::A.contains(g)?,
            Tag::InD => Variety::D.contains(g)?,
            Tag::InDcapA => Variety::DCapA.contains(g)?,
            Tag::InCp(p) => Variety::Cp(*p).contains(g)?,
            Tag::RectBand => Variety::RectBand.contains(g)?,
            Tag::ShAbc => sh(ShType::Abc),
            Tag::ShAba => sh(ShType::Aba),
            Tag::ShAab => sh(ShType::Aab),
            Tag::MinimalSh => ns_index(g).minimal_sh == Some(true),
            Tag::ProxyPasses => binary_minimality_proxy(g)? == MinimalityVerdict::Passes,
            Tag::CloneNotMinimal => {
                matches!(
                    binary_minimality_proxy(g)?,
                    MinimalityVerdict::FailsWithWitness { .. }
                )
            }
            Tag::Spectrum2Pow => {
                let s = spectrum(g, TAG_SPECTRUM_N, DEFAULT_BUDGET)?.values;
                (2..=TAG_SPECTRUM_N).all(|n| s[n - 1] == 1 << (n - 2))
            }
            Tag::SpectrumCatalan => {
                let s = spectrum(g, TAG_CATALAN_N, DEFAULT_BUDGET)?.values;
                (1..=TAG_CATALAN_N)
                    .all(|n| catalan(n).map(|c| s[n - 1] as u64 == c).unwrap_or(false))
            }
        })
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Idempotent => "idempotent",
            Tag::Semigroup => "semigroup",
            Tag::NotSemigroup => "notSemigroup",
            Tag::InB => "inB",
            Tag::InDualB => "inDualB",
            Tag::InA => "inA",
            Tag::InD => "inD",
            Tag::InDcapA => "inDcapA",
            Tag::InCp(p) => return write!(f, "inCp:{p}"),
            Tag::RectBand => "rectBand",
            Tag::ShAbc => "shAbc",
            Tag::ShAba => "shAba",
            Tag::ShAab => "shAab",
            Tag::MinimalSh => "minimalSh",
            Tag::ProxyPasses => "proxyPasses",
            Tag::CloneNotMinimal => "cloneNotMinimal",
            Tag::Spectrum2Pow => "spectrum2Pow",
            Tag::SpectrumCatalan => "spectrumCatalan",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub groupoid: Groupoid,
    pub provenance: String,
    pub tags: Vec<Tag>,
    /// Name of the entry this one is the dual of.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_of: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

const STORED: &[(&str, &str, &str)] = &[
    (
        "G1",
        include_str!("../data/G1.gpd"),
        "minimal SH-groupoid of type (a,b,c) in B",
    ),
    (
        "G2",
        include_str!("../data/G2.gpd"),
        "minimal SH-groupoid in B; quotient of G1",
    ),
    (
        "G3",
        include_str!("../data/G3.gpd"),
        "three-element minimal SH-groupoid in B with maximal spectrum",
    ),
    (
        "G4",
        include_str!("../data/G4.gpd"),
        "minimal SH-groupoid of type (a,b,c) in B",
    ),
    (
        "G5",
        include_str!("../data/G5.gpd"),
        "minimal SH-groupoid in B; quotient of G4",
    ),
    (
        "G6",
        include_str!("../data/G6.gpd"),
        "eight-element minimal SH-groupoid in B",
    ),
    (
        "G7",
        include_str!("../data/G7.gpd"),
        "minimal SH-groupoid in B; quotient of G6",
    ),
    (
        "G8",
        include_str!("../data/G8.gpd"),
        "minimal SH-groupoid in B; quotient of G6",
    ),
    (
        "G9",
        include_str!("../data/G9.gpd"),
        "minimal SH-groupoid in B; quotient of G6",
    ),
    (
        "G10",
        include_str!("../data/G10.gpd"),
        "minimal SH-groupoid in B; quotient of G6",
    ),
    (
        "aba-4",
        include_str!("../data/aba-4.gpd"),
        "idempotent minimal SH-groupoid of type (a,b,a)",
    ),
    (
        "aba-3",
        include_str!("../data/aba-3.gpd"),
        "idempotent minimal SH-groupoid of type (a,b,a); quotient of aba-4",
    ),
    (
        "aab-eps",
        include_str!("../data/aab-eps.gpd"),
        "minimal SH-groupoid of type (a,a,b)",
    ),
    (
        "propD-F2",
        include_str!("../data/propD-F2.gpd"),
        "two-generated free algebra of a variety inside D",
    ),
    (
        "rectband-F2",
        include_str!("../data/rectband-F2.gpd"),
        "two-generated free rectangular band",
    ),
    (
        "shB-F2",
        include_str!("../data/shB-F2.gpd"),
        "two-generated free algebra generated by an SH-groupoid with a minimal clone",
    ),
];

impl Catalog {
    /// All built-in entries.
    pub fn builtin() -> Self {
        let mut entries = Vec::new();
        for &(name, text, provenance) in STORED {
            let g = Groupoid::parse_gpd(text).expect("stored tables are well formed");
            entries.push(CatalogEntry {
                name: name.to_owned(),
                groupoid: g,
                provenance: provenance.to_owned(),
                tags: stored_tags(name),
                dual_of: None,
            });
        }
        let duals: Vec<CatalogEntry> = entries
            .iter()
            .filter(|e| e.name.starts_with('G') || e.name.starts_with("aba"))
            .map(|e| CatalogEntry {
                name: format!("{}d", e.name),
                groupoid: e.groupoid.dual(),
                provenance: format!("dual of {}", e.name),
                tags: e
                    .tags
                    .iter()
                    .map(|t| match t {
                        Tag::InB => Tag::InDualB,
                        other => *other,
                    })
                    .collect(),
                dual_of: Some(e.name.clone()),
            })
            .collect();
        entries.extend(duals);
        for name in ["A2", "A3", "A4", "f2cp-2", "f2cp-3", "chain-2", "chain-3"] {
            entries.push(build_family(name).expect("built-in family parameters are valid"));
        }
        Catalog { entries }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    /// A stored entry, or a family member such as `A5`, `f2cp-7`, `chain-4`.
    pub fn get(&self, name: &str) -> Result<CatalogEntry> {
        match self.entries.iter().find(|e| e.name == name) {
            Some(e) => Ok(e.clone()),
            None => build_family(name),
        }
    }

    pub fn groupoid(&self, name: &str) -> Result<Groupoid> {
        Ok(self.get(name)?.groupoid)
    }

    /// Replaces an entry's table; entries derived as its dual follow.
    pub fn replace(&mut self, name: &str, g: Groupoid) -> Result<()> {
        let entry = self
            .entries
            .iter_mut()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::UnknownEntry(name.to_owned()))?;
        entry.groupoid = g.clone();
        for e in self.entries.iter_mut() {
            if e.dual_of.as_deref() == Some(name) {
                e.groupoid = g.dual();
            }
        }
        Ok(())
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::builtin()
    }
}

fn stored_tags(name: &str) -> Vec<Tag> {
    use Tag::*;
    match name {
        "G3" => vec![
            Idempotent,
            NotSemigroup,
            InB,
            ShAbc,
            MinimalSh,
            ProxyPasses,
            SpectrumCatalan,
        ],
        n if n.starts_with('G') => {
            vec![Idempotent, NotSemigroup, InB, ShAbc, MinimalSh, ProxyPasses]
        }
        "aba-4" | "aba-3" => vec![Idempotent, ShAba, MinimalSh, CloneNotMinimal],
        "aab-eps" => vec![Idempotent, ShAab, MinimalSh, CloneNotMinimal],
        "propD-F2" => vec![Idempotent, NotSemigroup, InD, InA, InDcapA, Spectrum2Pow],
        "rectband-F2" => vec![RectBand, Semigroup],
        "shB-F2" => vec![Idempotent],
        _ => Vec::new(),
    }
}

fn build_family(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownEntry(name.to_owned());
    let param = |s: &str| s.parse::<u64>().map_err(|_| unknown());
    let (groupoid, provenance, tags) = if let Some(k) = name.strip_prefix('A') {
        let k = param(k)? as usize;
        let mut tags = vec![Tag::Idempotent, Tag::NotSemigroup];
        if k == 2 {
            tags.push(Tag::Spectrum2Pow);
        }
        (
            build_ak(k)?,
            format!("Z_{k} with an adjoined element e"),
            tags,
        )
    } else if let Some(p) = name.strip_prefix("f2cp-") {
        let p = param(p)?;
        (
            build_f2_cp(p)?,
            format!("two-generated free {p}-cyclic groupoid"),
            vec![
                Tag::Idempotent,
                Tag::NotSemigroup,
                Tag::InCp(p),
                Tag::InA,
                Tag::Spectrum2Pow,
            ],
        )
    } else if let Some(m) = name.strip_prefix("chain-") {
        let m = param(m)? as usize;
        let tags = if m >= 3 {
            vec![
                Tag::Idempotent,
                Tag::NotSemigroup,
                Tag::InB,
                Tag::InA,
                Tag::Spectrum2Pow,
            ]
        } else {
            vec![Tag::Idempotent, Tag::Semigroup]
        };
        (
            build_chain_groupoid(m)?,
            format!("chain groupoid over a {m}-element chain"),
            tags,
        )
    } else {
        return Err(unknown());
    };
    Ok(CatalogEntry {
        name: name.to_owned(),
        groupoid,
        provenance,
        tags,
        dual_of: None,
    })
}

pub fn catalog_get(name: &str) -> Result<CatalogEntry> {
    Catalog::builtin().get(name)
}

pub fn catalog_list() -> Vec<String> {
    Catalog::builtin().names()
}

/// `ℤ_k ∪ {e}`: `xy = y` for `y ≠ e`, `xe = x+1 (mod k)` for `x ≠ e`, `ee = e`.
/// Elements `0 … k−1` are followed by `e`.
pub fn build_ak(k: usize) -> Result<Groupoid> {
    if k < 2 {
        return Err(Error::Invalid(format!("A_k needs k ≥ 2, got {k}")));
    }
    if k > MAX_AK {
        return Err(Error::guard("A_k modulus", MAX_AK as u64, k as u64));
    }
    let e = k;
    let mut names: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    names.push("e".into());
    Groupoid::from_fn(names, |x, y| match (x == e, y == e) {
        (_, false) => y,
        (false, true) => (x + 1) % k,
        (true, true) => e,
    })
}

/// The `2p` binary operations `fᵢ`, `fᵢᵈ` of the free `p`-cyclic groupoid:
/// `fᵢfⱼ = fᵢ`, `fᵢfⱼᵈ = fᵢ₊₁`, `fᵢᵈfⱼᵈ = fᵢᵈ`, `fᵢᵈfⱼ = fᵢ₊₁ᵈ` (indices mod p).
pub fn build_f2_cp(p: u64) -> Result<Groupoid> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_F2_CP {
        return Err(Error::guard("cyclic prime", MAX_F2_CP, p));
    }
    let p = p as usize;
    let names: Vec<String> = (0..p)
        .map(|i| format!("f{i}"))
        .chain((0..p).map(|i| format!("f{i}d")))
        .collect();
    Groupoid::from_fn(names, |a, b| {
        let (i, a_dual) = (a % p, a >= p);
        let b_dual = b >= p;
        let idx = if a_dual == b_dual { i } else { (i + 1) % p };
        idx + if a_dual { p } else { 0 }
    })
}

/// Nonempty subsets of `{1, …, m}` as chains `a₁ < ⋯ < a_k`, ordered by bit
/// mask; `a · b` appends `max b` to `a` when it exceeds `max a`.
pub fn build_chain_groupoid(m: usize) -> Result<Groupoid> {
    if m == 0 {
        return Err(Error::Invalid("chain length must be at least 1".into()));
    }
    if m > MAX_CHAIN {
        return Err(Error::guard("chain length", MAX_CHAIN as u64, m as u64));
    }
    let masks: Vec<u32> = (1..(1u32 << m)).collect();
    let names = masks
        .iter()
        .map(|&mask| {
            (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join("<")
        })
        .collect();
    let top = |mask: u32| 31 - mask.leading_zeros();
    Groupoid::from_fn(names, |a, b| {
        let (ma, mb) = (masks[a], masks[b]);
        let product = if top(mb) > top(ma) {
            ma | 1 << top(mb)
        } else {
            ma
        };
        (product - 1) as usize
    })
}
