//! The claim ledger: every checkable statement about the catalog groupoids,
//! recomputed from their tables.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::bracketing::{catalan, enumerate_bracketings};
use crate::catalog::{build_ak, Catalog};
use crate::clone::{
    binary_clone_part, binary_term_op, f2_table, find_relational_witness, find_subset_witness,
    minimality_proxy_for, MinimalityVerdict, RelationPayload,
};
use crate::error::Result;
use crate::groupoid::Groupoid;
use crate::iso::are_isomorphic;
use crate::nonassoc::{ns_index, sh_factor_violation, ShType};
use crate::partition::{congruences, quotient, Partition};
use crate::search::{cmd_search, idempotent_tables, SearchSpec};
use crate::spectrum::{nulla_satisfied, spectrum, spectrum_ak_oracle, DEFAULT_BUDGET};
use crate::term::{parse_identity, Scheme};
use crate::variety::Variety;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClaimResult {
    pub claim_id: String,
    pub description: String,
    pub status: Status,
    /// Computed values on success; a concrete counterexample on failure.
    pub detail: String,
}

/// Outcome of one check: `Ok(detail)` passes, `Err(witness)` fails.
type Outcome = std::result::Result<String, String>;

struct Claim {
    id: String,
    description: String,
    slow: bool,
    run: Box<dyn Fn(&Catalog) -> Outcome + Send + Sync>,
}

fn claim(
    id: impl Into<String>,
    description: impl Into<String>,
    run: impl Fn(&Catalog) -> Outcome + Send + Sync + 'static,
) -> Claim {
    Claim {
        id: id.into(),
        description: description.into(),
        slow: false,
        run: Box::new(run),
    }
}

/// Runs every claim against `catalog`. In `fast` mode, slow claims are
/// reported as skipped.
pub fn verify_paper(catalog: &Catalog, fast: bool) -> Vec<ClaimResult> {
    claims()
        .into_par_iter()
        .map(|c| {
            if fast && c.slow {
                return ClaimResult {
                    claim_id: c.id,
                    description: c.description,
                    status: Status::Skipped,
                    detail: "slow claim; run without fast mode".into(),
                };
            }
            let (status, detail) = match (c.run)(catalog) {
                Ok(d) => (Status::Pass, d),
                Err(w) => (Status::Fail, w),
            };
            ClaimResult {
                claim_id: c.id,
                description: c.description,
                status,
                detail,
            }
        })
        .collect()
}

/// Identifiers of every claim, in report order.
pub fn claim_ids() -> Vec<String> {
    claims().into_iter().map(|c| c.id).collect()
}

fn err(e: crate::error::Error) -> String {
    format!("error: {e}")
}

fn get(cat: &Catalog, name: &str) -> std::result::Result<Groupoid, String> {
    cat.groupoid(name).map_err(err)
}

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn claims() -> Vec<Claim> {
    let mut out = vec![claim(
        "catalan-counts",
        "bracketings of sizes 1..8 number 1,1,2,5,14,42,132,429",
        |_| {
            let counts: Vec<usize> = (1..=8)
                .map(|n| enumerate_bracketings(n).map(|b| b.len()))
                .collect::<Result<_>>()
                .map_err(err)?;
            let formula: Vec<usize> = (1..=8).map(|n| catalan(n).unwrap() as usize).collect();
            ensure(
                counts == [1, 1, 2, 5, 14, 42, 132, 429] && counts == formula,
                || format!("enumerated {counts:?}, formula {formula:?}"),
            )?;
            Ok(format!("{counts:?}"))
        },
    )];

    for name in ["propD-F2", "f2cp-2", "f2cp-3", "chain-3", "A2"] {
        out.push(claim(
            format!("spectrum-2pow-{name}"),
            format!("{name} is not a semigroup and s(n) = 2^(n-2) for 2 <= n <= 7"),
            move |cat| {
                let g = get(cat, name)?;
                let ns = ns_index(&g).ns_count;
                ensure(ns > 0, || "table is associative".into())?;
                let s = spectrum(&g, 7, DEFAULT_BUDGET).map_err(err)?.values;
                let want: Vec<usize> = (1..=7)
                    .map(|n| if n < 2 { 1 } else { 1 << (n - 2) })
                    .collect();
                ensure(s == want, || format!("spectrum {s:?}, expected {want:?}"))?;
                Ok(format!("ns = {ns}, spectrum {s:?}"))
            },
        ));
    }

    out.push(claim(
        "G3-spectrum-catalan",
        "s(n) of G3 is the Catalan number C(n-1) for n <= 6",
        |cat| {
            let s = spectrum(&get(cat, "G3")?, 6, DEFAULT_BUDGET)
                .map_err(err)?
                .values;
            let want: Vec<usize> = (1..=6).map(|n| catalan(n).unwrap() as usize).collect();
            ensure(s == want, || format!("spectrum {s:?}, expected {want:?}"))?;
            Ok(format!("{s:?}"))
        },
    ));

    for k in [2usize, 3, 4] {
        out.push(claim(
            format!("ak-oracle-k{k}"),
            format!("spectrum of A{k} equals the left-depth-mod-{k} count for n <= 6"),
            move |cat| {
                let g = cat
                    .groupoid(&format!("A{k}"))
                    .or_else(|_| build_ak(k))
                    .map_err(err)?;
                let brute = spectrum(&g, 6, DEFAULT_BUDGET).map_err(err)?.values;
                let oracle = spectrum_ak_oracle(k, 6).map_err(err)?;
                ensure(brute == oracle, || {
                    format!("brute force {brute:?}, oracle {oracle:?}")
                })?;
                Ok(format!("{brute:?}"))
            },
        ));
    }
    out.push(claim(
        "ak-nulla",
        "A_k satisfies the left-associated = x1 * left-associated identity of size n iff k divides n-2 (k = 2,3,4; n = 3..8)",
        |cat| {
            for k in [2usize, 3, 4] {
                let g = cat.groupoid(&format!("A{k}")).or_else(|_| build_ak(k)).map_err(err)?;
                for n in 3..=8 {
                    let holds = nulla_satisfied(&g, n).map_err(err)?;
                    ensure(holds == ((n - 2) % k == 0), || {
                        format!("k = {k}, n = {n}: identity {}", if holds { "holds" } else { "fails" })
                    })?;
                }
            }
            Ok("all 18 cases agree".into())
        },
    ));

    for i in 1..=10 {
        for dual in [false, true] {
            let name = format!("G{i}{}", if dual { "d" } else { "" });
            out.push(claim(
                format!("sh-{name}"),
                format!(
                    "{name}: one nonassociative triple of type (a,b,c) generating it, factor property, {}, binary proxy passes",
                    if dual { "dual in B" } else { "in B" }
                ),
                move |cat| sh_suite(cat, &name, dual),
            ));
        }
    }

    out.push(claim(
        "G1-quotient",
        "G1 has exactly one nontrivial congruence separating its nonassociative pair; the quotient is G2",
        |cat| {
            let qs = separating_quotients(&get(cat, "G1")?)?;
            ensure(qs.len() == 1, || format!("{} such congruences", qs.len()))?;
            let g2 = get(cat, "G2")?;
            ensure(are_isomorphic(&qs[0].1, &g2).map_err(err)?, || {
                format!("quotient {:?} is not isomorphic to G2", qs[0].1)
            })?;
            Ok(format!("congruence {:?}", qs[0].0.blocks()))
        },
    ));
    out.push(claim(
        "G4-quotient",
        "merging e and f in G4 is a congruence with quotient G5",
        |cat| {
            let g4 = get(cat, "G4")?;
            let p = Partition::parse_named(&g4, "e f").map_err(err)?;
            let q = quotient(&g4, &p).map_err(err)?;
            ensure(are_isomorphic(&q, &get(cat, "G5")?).map_err(err)?, || {
                format!("quotient {q:?} is not isomorphic to G5")
            })?;
            Ok(format!("quotient on {:?}", q.names()))
        },
    ));
    out.push(claim(
        "G6-quotients",
        "G6 has exactly four nontrivial congruences separating its nonassociative pair, with quotients G7, G8, G9, G10",
        |cat| {
            let qs = separating_quotients(&get(cat, "G6")?)?;
            ensure(qs.len() == 4, || format!("{} such congruences", qs.len()))?;
            let mut matched = Vec::new();
            for target in ["G7", "G8", "G9", "G10"] {
                let t = get(cat, target)?;
                let hit = qs
                    .iter()
                    .position(|(_, q)| are_isomorphic(q, &t).unwrap_or(false))
                    .ok_or_else(|| format!("no quotient isomorphic to {target}"))?;
                if matched.contains(&hit) {
                    return Err(format!("{target} matches an already used quotient"));
                }
                matched.push(hit);
            }
            Ok(format!("quotient sizes {:?}", qs.iter().map(|(_, q)| q.order()).collect::<Vec<_>>()))
        },
    ));

    for name in ["aba-4", "aba-3"] {
        out.push(claim(
            format!("witness-{name}"),
            format!("{name}: x(yx) is a nontrivial binary operation preserving a partition with block {{b,d}} that the product does not"),
            move |cat| {
                let g = get(cat, name)?;
                let suspect = binary_term_op(&g, "(x (y x))").map_err(err)?;
                proxy_flags(&g, &suspect, "x(yx)")?;
                let w = find_relational_witness(&g, &suspect, "(x (y x))")
                    .map_err(err)?
                    .ok_or("no relational witness")?;
                let RelationPayload::Partition(p) = &w.relation else {
                    return Err(format!("first witness is not a partition: {w:?}"));
                };
                let bd = g.indices_of(&["b", "d"]).map_err(err)?;
                ensure(p.blocks().contains(&bd), || {
                    format!("partition {} has no block {{b,d}}", p.display_with(&g))
                })?;
                Ok(format!("partition {}", p.display_with(&g)))
            },
        ));
    }
    out.push(claim(
        "witness-aab-eps",
        "aab-eps: x(xy) is a nontrivial binary operation preserving {a,b,e} while the product does not",
        |cat| {
            let g = get(cat, "aab-eps")?;
            let suspect = binary_term_op(&g, "(x (x y))").map_err(err)?;
            proxy_flags(&g, &suspect, "x(xy)")?;
            let s = find_subset_witness(&g, &suspect).map_err(err)?.ok_or("no subset witness")?;
            let want = g.indices_of(&["a", "b", "e"]).map_err(err)?;
            ensure(s == want, || format!("first subset witness is {s:?}"))?;
            Ok("subset {a,b,e}".into())
        },
    ));

    out.push(claim(
        "disjointness-G",
        "each of G1..G10 violates x(y(zu)) = x((yz)u) at x=a, y=a, z=b, u=c",
        |cat| disjointness(cat, false),
    ));
    out.push(claim(
        "disjointness-Gd",
        "each dual of G1..G10 violates x(y(zu)) = x((yz)u) at x=a, y=c, z=b, u=a",
        |cat| disjointness(cat, true),
    ));

    out.push(claim(
        "scan3-s3-semigroup",
        "over all 729 idempotent 3-element tables, s(3) = 1 iff the table is associative",
        |_| {
            let mut bad = None;
            for g in idempotent_tables(3).map_err(err)? {
                let s3 = spectrum(&g, 3, DEFAULT_BUDGET).map_err(err)?.values[2];
                if (s3 == 1) != (ns_index(&g).ns_count == 0) {
                    bad = Some(g);
                    break;
                }
            }
            match bad {
                Some(g) => Err(format!("counterexample {g:?}")),
                None => Ok("729 tables agree".into()),
            }
        },
    ));
    for (id, desc, satisfy, size, slow) in [
        (
            "scan3-left-eq-right-3",
            "idempotent 3-element tables with ((x1x2)x3) = (x1(x2x3)) are semigroups",
            vec![(Scheme::LeftEqRight, 3)],
            3,
            false,
        ),
        (
            "scan3-left-eq-right-4",
            "idempotent 3-element tables with left- and right-associated products of size 4 equal are semigroups",
            vec![(Scheme::LeftEqRight, 4)],
            3,
            false,
        ),
        (
            "scan3-prefixed-pair-3",
            "idempotent 3-element tables satisfying both prefixed associativity identities are semigroups",
            vec![(Scheme::PrefixedPair, 3)],
            3,
            false,
        ),
        (
            "scan4-left-eq-right-4",
            "idempotent 4-element tables with left- and right-associated products of size 4 equal are semigroups",
            vec![(Scheme::LeftEqRight, 4)],
            4,
            true,
        ),
    ] {
        let mut c = claim(id, desc, move |_| {
            let s = cmd_search(&SearchSpec {
                size,
                idempotent_only: true,
                satisfy: satisfy.clone(),
                check: Variety::Semigroup,
            })
            .map_err(err)?;
            match s.first_witness {
                Some(w) => Err(format!("{} counterexamples, first {w:?}", s.violations)),
                None => Ok(format!("{} tables, {} satisfying, 0 counterexamples", s.tables, s.satisfying)),
            }
        });
        c.slow = slow;
        out.push(c);
    }

    for name in ["propD-F2", "f2cp-2"] {
        out.push(claim(
            format!("f2-fixed-{name}"),
            format!("the two-generated free algebra computed from {name} is isomorphic to {name}"),
            move |cat| {
                let g = get(cat, name)?;
                let f2 = f2_table(&g).map_err(err)?;
                ensure(are_isomorphic(&f2, &g).map_err(err)?, || {
                    format!("binary part has {} operations: {f2:?}", f2.order())
                })?;
                Ok(format!("{} binary operations", f2.order()))
            },
        ));
    }

    out.push(claim(
        "catalog-tags",
        "every catalog tag holds on its table",
        |cat| {
            let mut checked = 0;
            for e in cat.entries() {
                for t in &e.tags {
                    let ok = t.check(&e.groupoid).map_err(err)?;
                    ensure(ok, || format!("{}: tag {t} does not hold", e.name))?;
                    checked += 1;
                }
            }
            Ok(format!("{checked} tags on {} entries", cat.entries().len()))
        },
    ));
    out
}

fn sh_suite(cat: &Catalog, name: &str, dual: bool) -> Outcome {
    let g = get(cat, name)?;
    let r = ns_index(&g);
    ensure(r.ns_count == 1, || {
        format!("ns = {}, triples {:?}", r.ns_count, r.triples)
    })?;
    ensure(r.sh_type == Some(ShType::Abc), || {
        format!("type {:?}", r.sh_type)
    })?;
    ensure(r.minimal_sh == Some(true), || {
        "the triple does not generate the groupoid".into()
    })?;
    if let Some((x, y)) = sh_factor_violation(&g).map_err(err)? {
        return Err(format!(
            "factor property fails at ({}, {})",
            g.name(x),
            g.name(y)
        ));
    }
    let variety = if dual {
        Variety::Dual(Box::new(Variety::B))
    } else {
        Variety::B
    };
    if let Some(v) = variety.violation(&g).map_err(err)? {
        return Err(format!(
            "not in {variety}: {} fails at {:?}",
            v.identity, v.assignment
        ));
    }
    let part = binary_clone_part(&g).map_err(err)?;
    let verdict = minimality_proxy_for(&g, &part).map_err(err)?;
    ensure(verdict == MinimalityVerdict::Passes, || {
        format!("proxy: {verdict:?}")
    })?;
    let [a, b, c] = r.triples[0];
    Ok(format!(
        "triple ({},{},{}), {} binary operations",
        g.name(a),
        g.name(b),
        g.name(c),
        part.len()
    ))
}

/// Nontrivial congruences that keep `(ab)c` and `a(bc)` apart for the unique
/// nonassociative triple, with their quotients.
fn separating_quotients(g: &Groupoid) -> std::result::Result<Vec<(Partition, Groupoid)>, String> {
    let r = ns_index(g);
    ensure(r.ns_count == 1, || format!("ns = {}", r.ns_count))?;
    let [a, b, c] = r.triples[0];
    let (left, right) = (g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
    let mut out = Vec::new();
    for p in congruences(g).map_err(err)? {
        if p.is_discrete() || p.same_block(left, right) {
            continue;
        }
        let q = quotient(g, &p).map_err(err)?;
        out.push((p, q));
    }
    Ok(out)
}

/// The proxy must fail, and `suspect` must be among the failing operations.
fn proxy_flags(
    g: &Groupoid,
    suspect: &crate::optable::OpTable,
    label: &str,
) -> std::result::Result<(), String> {
    ensure(!suspect.is_projection(), || {
        format!("{label} is a projection")
    })?;
    let part = binary_clone_part(g).map_err(err)?;
    match minimality_proxy_for(g, &part).map_err(err)? {
        MinimalityVerdict::Passes => Err("binary minimality proxy passes".into()),
        MinimalityVerdict::FailsWithWitness { ops } => {
            ensure(ops.iter().any(|&i| part.ops()[i] == *suspect), || {
                let names: Vec<String> = ops.iter().map(|&i| part.terms()[i].to_string()).collect();
                format!("{label} is not among the failing operations {names:?}")
            })
        }
    }
}

fn disjointness(cat: &Catalog, dual: bool) -> Outcome {
    let id = parse_identity("(x (y (z u))) = (x ((y z) u))").expect("built-in identity");
    let at = if dual {
        ["a", "c", "b", "a"]
    } else {
        ["a", "a", "b", "c"]
    };
    for i in 1..=10 {
        let name = format!("G{i}{}", if dual { "d" } else { "" });
        let g = get(cat, &name)?;
        let args = g.indices_of(&at).map_err(err)?;
        let holds = id.holds_at(&g, &args).map_err(err)?;
        ensure(!holds, || format!("{name}: identity holds at {at:?}"))?;
    }
    Ok(format!("all ten fail at {at:?}"))
}

/// Renders results as one line per claim.
pub fn render_results(results: &[ClaimResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&format!("{} {:<28} {}\n", r.status, r.claim_id, r.detail));
    }
    out
}
