//! Acceptance gate: one test per criterion, each printing a PASS/FAIL line
//! (visible with `--nocapture`). Expected values come from closed forms or from
//! brute-force oracles written here, independent of the library algorithms.

use std::collections::HashSet;

use grpd::bracketing::{enumerate_bracketings, Bracketing};
use grpd::catalog::{build_ak, build_chain_groupoid, build_f2_cp, Catalog};
use grpd::clone::{
    binary_clone_part, binary_term_op, f2_table, find_relational_witness, find_subset_witness,
    minimality_proxy_for, MinimalityVerdict, RelationPayload,
};
use grpd::harness::{verify_paper, Status};
use grpd::iso::are_isomorphic;
use grpd::nonassoc::{ns_index, ShType};
use grpd::partition::{congruences, quotient, Partition};
use grpd::search::{cmd_search, idempotent_tables, SearchSpec};
use grpd::spectrum::{nulla_satisfied, spectrum, spectrum_ak_oracle, DEFAULT_BUDGET};
use grpd::term::{parse_identity, Scheme};
use grpd::variety::Variety;
use grpd::Groupoid;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    format!("error: {err}")
}

// ---- oracles ----

fn binomial_catalan(n: usize) -> u64 {
    // C(n-1) = binom(2m, m) / (m + 1), m = n - 1
    let m = (n - 1) as u64;
    let mut c = 1u64;
    for i in 0..m {
        c = c * (2 * m - i) / (i + 1);
    }
    c / (m + 1)
}

/// Distinct term functions of the size-`n` bracketings, by evaluating every
/// bracketing on every tuple and deduplicating the value vectors.
fn brute_spectrum(g: &Groupoid, n: usize) -> usize {
    let k = g.order();
    let total = k.pow(n as u32);
    let mut seen = HashSet::new();
    let mut args = vec![0; n];
    for b in enumerate_bracketings(n).unwrap() {
        let mut values = Vec::with_capacity(total);
        for code in 0..total {
            let mut c = code;
            for slot in args.iter_mut().rev() {
                *slot = c % k;
                c /= k;
            }
            values.push(eval(&b, g, &args) as u8);
        }
        seen.insert(values);
    }
    seen.len()
}

fn eval(b: &Bracketing, g: &Groupoid, args: &[usize]) -> usize {
    match b.factors() {
        None => args[0],
        Some((l, r)) => {
            let s = l.size();
            g.mul(eval(l, g, &args[..s]), eval(r, g, &args[s..]))
        }
    }
}

/// Distinct left-depth sequences mod `k`, from a direct tree walk.
fn depth_classes(k: usize, n: usize) -> usize {
    fn walk(b: &Bracketing, d: usize, out: &mut Vec<usize>) {
        match b.factors() {
            None => out.push(d),
            Some((l, r)) => {
                walk(l, d + 1, out);
                walk(r, d, out);
            }
        }
    }
    let mut seen = HashSet::new();
    for b in enumerate_bracketings(n).unwrap() {
        let mut depths = Vec::new();
        walk(&b, 0, &mut depths);
        seen.insert(depths.into_iter().map(|d| d % k).collect::<Vec<_>>());
    }
    seen.len()
}

fn associative(g: &Groupoid) -> bool {
    let n = g.order();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))))
}

fn nonassociative_triples(g: &Groupoid) -> Vec<[usize; 3]> {
    let n = g.order();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

fn generated(g: &Groupoid, seeds: &[usize]) -> usize {
    let mut set: HashSet<usize> = seeds.iter().copied().collect();
    loop {
        let next: HashSet<usize> = set
            .iter()
            .flat_map(|&x| set.iter().map(move |&y| (x, y)))
            .map(|(x, y)| g.mul(x, y))
            .chain(set.iter().copied())
            .collect();
        if next.len() == set.len() {
            return set.len();
        }
        set = next;
    }
}

/// Membership in B with product `m`, checked identity by identity.
fn in_b_oracle(n: usize, m: impl Fn(usize, usize) -> usize) -> bool {
    (0..n).all(|x| {
        m(x, x) == x
            && (0..n).all(|y| {
                let xy = m(x, y);
                m(x, xy) == xy
                    && m(x, m(y, x)) == xy
                    && m(xy, x) == xy
                    && m(xy, y) == xy
                    && m(xy, m(y, x)) == xy
            })
    })
}

fn is_congruence(g: &Groupoid, p: &Partition) -> bool {
    let n = g.order();
    (0..n).all(|a| {
        (0..n).all(|b| {
            !p.same_block(a, b)
                || (0..n).all(|c| {
                    p.same_block(g.mul(a, c), g.mul(b, c)) && p.same_block(g.mul(c, a), g.mul(c, b))
                })
        })
    })
}

// ---- criteria ----

fn catalan_counts() -> Check {
    let counts: Vec<usize> = (1..=8)
        .map(|n| enumerate_bracketings(n).unwrap().len())
        .collect();
    let formula: Vec<usize> = (1..=8).map(|n| binomial_catalan(n) as usize).collect();
    ensure(counts == [1, 1, 2, 5, 14, 42, 132, 429], || {
        format!("{counts:?}")
    })?;
    ensure(counts == formula, || format!("formula {formula:?}"))?;
    ensure(counts[3] == 5, || "size four".into())?;
    Ok(format!("{counts:?}"))
}

fn power_of_two_spectra(cat: &Catalog) -> Check {
    let entries = [
        ("propD-F2", cat.groupoid("propD-F2").map_err(e)?),
        ("f2cp-2", build_f2_cp(2).map_err(e)?),
        ("f2cp-3", build_f2_cp(3).map_err(e)?),
        ("chain-3", build_chain_groupoid(3).map_err(e)?),
        ("A2", build_ak(2).map_err(e)?),
    ];
    for (name, g) in &entries {
        ensure(!associative(g), || format!("{name} is a semigroup"))?;
        let lib = spectrum(g, 7, DEFAULT_BUDGET).map_err(e)?.values;
        for n in 2..=7 {
            let brute = brute_spectrum(g, n);
            ensure(brute == 1 << (n - 2), || {
                format!("{name}: s({n}) = {brute}")
            })?;
            ensure(lib[n - 1] == brute, || {
                format!("{name}: library s({n}) = {}", lib[n - 1])
            })?;
        }
    }
    Ok("five groupoids, s(n) = 2^(n-2) for n = 2..7".into())
}

fn maximal_spectrum(cat: &Catalog) -> Check {
    let g = cat.groupoid("G3").map_err(e)?;
    let brute: Vec<usize> = (1..=6).map(|n| brute_spectrum(&g, n)).collect();
    let want: Vec<usize> = (1..=6).map(|n| binomial_catalan(n) as usize).collect();
    ensure(brute == want, || format!("brute force {brute:?}"))?;
    let lib = spectrum(&g, 6, DEFAULT_BUDGET).map_err(e)?.values;
    ensure(lib == want, || format!("library {lib:?}"))?;
    Ok(format!("{want:?}"))
}

fn ak_oracle() -> Check {
    for k in 2..=4 {
        let g = build_ak(k).map_err(e)?;
        let lib = spectrum(&g, 6, DEFAULT_BUDGET).map_err(e)?.values;
        let oracle = spectrum_ak_oracle(k, 6).map_err(e)?;
        let walk: Vec<usize> = (1..=6).map(|n| depth_classes(k, n)).collect();
        let brute: Vec<usize> = (1..=6).map(|n| brute_spectrum(&g, n)).collect();
        ensure(lib == oracle && oracle == walk && walk == brute, || {
            format!("k = {k}: library {lib:?}, oracle {oracle:?}, walk {walk:?}, brute {brute:?}")
        })?;
        for n in 3..=8 {
            let holds = nulla_satisfied(&g, n).map_err(e)?;
            // direct: left-associated product against x1 times the left-associated rest
            let direct = (0..g.order().pow(n as u32)).all(|code| {
                let mut c = code;
                let mut args = vec![0; n];
                for slot in args.iter_mut().rev() {
                    *slot = c % g.order();
                    c /= g.order();
                }
                let left = args[1..].iter().fold(args[0], |acc, &x| g.mul(acc, x));
                let rest = args[2..].iter().fold(args[1], |acc, &x| g.mul(acc, x));
                left == g.mul(args[0], rest)
            });
            ensure(holds == direct && holds == ((n - 2) % k == 0), || {
                format!("k = {k}, n = {n}: library {holds}, direct {direct}")
            })?;
        }
    }
    Ok("k = 2..4 agree for n <= 6; identity holds iff k | n-2 for n = 3..8".into())
}

fn sh_suite(cat: &Catalog) -> Check {
    for i in 1..=10 {
        for dual in [false, true] {
            let name = format!("G{i}{}", if dual { "d" } else { "" });
            let g = cat.groupoid(&name).map_err(e)?;
            let triples = nonassociative_triples(&g);
            ensure(triples.len() == 1, || {
                format!("{name}: ns = {}", triples.len())
            })?;
            let [p, q, r] = triples[0];
            ensure(p != q && q != r && p != r, || {
                format!("{name}: triple {:?}", triples[0])
            })?;
            let report = ns_index(&g);
            ensure(
                report.triples == triples && report.sh_type == Some(ShType::Abc),
                || format!("{name}: library report {report:?}"),
            )?;
            ensure(generated(&g, &triples[0]) == g.order(), || {
                format!("{name}: triple does not generate")
            })?;
            ensure(report.minimal_sh == Some(true), || {
                format!("{name}: library says not minimal")
            })?;
            let n = g.order();
            for x in 0..n {
                for y in 0..n {
                    let t = g.mul(x, y);
                    ensure(!triples[0].contains(&t) || x == t || y == t, || {
                        format!("{name}: {}{} = {}", g.name(x), g.name(y), g.name(t))
                    })?;
                }
            }
            let oracle = if dual {
                in_b_oracle(n, |x, y| g.mul(y, x))
            } else {
                in_b_oracle(n, |x, y| g.mul(x, y))
            };
            let variety = if dual {
                Variety::Dual(Box::new(Variety::B))
            } else {
                Variety::B
            };
            ensure(oracle && variety.contains(&g).map_err(e)?, || {
                format!("{name}: not in {variety}")
            })?;
            let part = binary_clone_part(&g).map_err(e)?;
            let verdict = minimality_proxy_for(&g, &part).map_err(e)?;
            ensure(verdict == MinimalityVerdict::Passes, || {
                format!("{name}: proxy {verdict:?}")
            })?;
        }
    }
    Ok("20 groupoids".into())
}

fn separating(g: &Groupoid) -> Result<Vec<Groupoid>, String> {
    let [a, b, c] = nonassociative_triples(g)[0];
    let (l, r) = (g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
    let mut out = Vec::new();
    for p in congruences(g).map_err(e)? {
        ensure(is_congruence(g, &p), || {
            format!("not a congruence: {}", p.display_with(g))
        })?;
        if p.block_count() < g.order() && !p.same_block(l, r) {
            out.push(quotient(g, &p).map_err(e)?);
        }
    }
    Ok(out)
}

fn quotient_structure(cat: &Catalog) -> Check {
    let g = |n: &str| cat.groupoid(n).map_err(e);
    let q1 = separating(&g("G1")?)?;
    ensure(q1.len() == 1, || format!("G1: {} congruences", q1.len()))?;
    ensure(are_isomorphic(&q1[0], &g("G2")?).map_err(e)?, || {
        "G1 quotient is not G2".into()
    })?;

    let g4 = g("G4")?;
    let p = Partition::parse_named(&g4, "e f").map_err(e)?;
    ensure(is_congruence(&g4, &p), || {
        "e=f is not a congruence of G4".into()
    })?;
    ensure(
        are_isomorphic(&quotient(&g4, &p).map_err(e)?, &g("G5")?).map_err(e)?,
        || "G4 quotient is not G5".into(),
    )?;

    let q6 = separating(&g("G6")?)?;
    ensure(q6.len() == 4, || format!("G6: {} congruences", q6.len()))?;
    let mut used = [false; 4];
    for t in ["G7", "G8", "G9", "G10"] {
        let target = g(t)?;
        let hit = (0..4)
            .find(|&i| !used[i] && are_isomorphic(&q6[i], &target).unwrap_or(false))
            .ok_or_else(|| format!("no quotient of G6 matches {t}"))?;
        used[hit] = true;
    }
    Ok("G1 -> G2, G4 -> G5, G6 -> G7..G10".into())
}

fn nonminimality_witnesses(cat: &Catalog) -> Check {
    for name in ["aba-4", "aba-3"] {
        let g = cat.groupoid(name).map_err(e)?;
        let suspect = binary_term_op(&g, "(x (y x))").map_err(e)?;
        let part = binary_clone_part(&g).map_err(e)?;
        match minimality_proxy_for(&g, &part).map_err(e)? {
            MinimalityVerdict::Passes => return Err(format!("{name}: proxy passes")),
            MinimalityVerdict::FailsWithWitness { ops } => {
                ensure(ops.iter().any(|&i| part.ops()[i] == suspect), || {
                    format!("{name}: x(yx) not among failing operations")
                })?
            }
        }
        let w = find_relational_witness(&g, &suspect, "(x (y x))").map_err(e)?;
        let bd = g.indices_of(&["b", "d"]).map_err(e)?;
        match w.map(|w| w.relation) {
            Some(RelationPayload::Partition(p)) => {
                ensure(p.blocks().contains(&bd), || {
                    format!("{name}: {}", p.display_with(&g))
                })?;
                ensure(suspect.preserves_partition(&p), || {
                    format!("{name}: x(yx) breaks it")
                })?;
            }
            other => return Err(format!("{name}: witness {other:?}")),
        }
    }
    let g = cat.groupoid("aab-eps").map_err(e)?;
    let suspect = binary_term_op(&g, "(x (x y))").map_err(e)?;
    let part = binary_clone_part(&g).map_err(e)?;
    ensure(
        matches!(minimality_proxy_for(&g, &part).map_err(e)?,
            MinimalityVerdict::FailsWithWitness { ref ops } if ops.iter().any(|&i| part.ops()[i] == suspect)),
        || "aab-eps: proxy does not flag x(xy)".into(),
    )?;
    let s = find_subset_witness(&g, &suspect).map_err(e)?;
    let abe = g.indices_of(&["a", "b", "e"]).map_err(e)?;
    ensure(s.as_ref() == Some(&abe), || {
        format!("aab-eps: subset {s:?}")
    })?;
    Ok("{b,d} partitions for x(yx), {a,b,e} for x(xy)".into())
}

fn disjointness(cat: &Catalog) -> Check {
    let id = parse_identity("(x (y (z u))) = (x ((y z) u))").map_err(e)?;
    for i in 1..=10 {
        for (suffix, at) in [("", ["a", "a", "b", "c"]), ("d", ["a", "c", "b", "a"])] {
            let g = cat.groupoid(&format!("G{i}{suffix}")).map_err(e)?;
            let v = g.indices_of(&at).map_err(e)?;
            let (x, y, z, u) = (v[0], v[1], v[2], v[3]);
            let direct = g.mul(x, g.mul(y, g.mul(z, u))) == g.mul(x, g.mul(g.mul(y, z), u));
            let lib = id.holds_at(&g, &v).map_err(e)?;
            ensure(!direct && !lib, || {
                format!("G{i}{suffix} satisfies it at {at:?}")
            })?;
        }
    }
    Ok("20 groupoids fail at the stated assignments".into())
}

fn exhaustive_scans() -> Check {
    let mut semigroups = 0;
    for g in idempotent_tables(3).map_err(e)? {
        let s3 = brute_spectrum(&g, 3);
        ensure((s3 == 1) == associative(&g), || {
            format!("s(3) = {s3} on {g:?}")
        })?;
        semigroups += usize::from(associative(&g));
    }
    let scan = |size, satisfy: Vec<(Scheme, usize)>| {
        cmd_search(&SearchSpec {
            size,
            idempotent_only: true,
            satisfy,
            check: Variety::Semigroup,
        })
        .map_err(e)
    };
    let mut lines = vec![format!("{semigroups} semigroups among 729")];
    for (size, satisfy) in [
        (3, vec![(Scheme::LeftEqRight, 3)]),
        (3, vec![(Scheme::LeftEqRight, 4)]),
        (3, vec![(Scheme::PrefixedPair, 3)]),
        (4, vec![(Scheme::LeftEqRight, 4)]),
    ] {
        let s = scan(size, satisfy.clone())?;
        ensure(
            s.tables == (size as u64).pow((size * size - size) as u32),
            || format!("{} tables", s.tables),
        )?;
        ensure(s.violations == 0, || {
            format!("{satisfy:?} on size {size}: {:?}", s.first_witness)
        })?;
        lines.push(format!(
            "size {size} {satisfy:?}: {} satisfying",
            s.satisfying
        ));
    }
    Ok(lines.join("; "))
}

fn clone_fixed_points(cat: &Catalog) -> Check {
    for g in [
        cat.groupoid("propD-F2").map_err(e)?,
        build_f2_cp(2).map_err(e)?,
    ] {
        let f2 = f2_table(&g).map_err(e)?;
        ensure(are_isomorphic(&f2, &g).map_err(e)?, || {
            format!("{f2:?} vs {g:?}")
        })?;
    }
    ensure(
        f2_table(&build_f2_cp(2).map_err(e)?).map_err(e)?.order() == 4,
        || "2p operations".into(),
    )?;
    Ok("propD-F2 and f2cp-2 are their own binary parts".into())
}

fn mutation_sensitivity() -> Check {
    let g3 = Catalog::builtin().groupoid("G3").map_err(e)?;
    let n = g3.order();
    let mut mutants = 0;
    for a in 0..n {
        for b in 0..n {
            for v in (0..n).filter(|&v| v != g3.mul(a, b)) {
                let mut cat = Catalog::builtin();
                cat.replace("G3", g3.with_entry(a, b, v).map_err(e)?)
                    .map_err(e)?;
                let results = verify_paper(&cat, true);
                let failing: Vec<_> = results
                    .iter()
                    .filter(|r| r.status == Status::Fail)
                    .collect();
                ensure(!failing.is_empty(), || {
                    format!("mutant ({a},{b}) -> {v} passes every claim")
                })?;
                ensure(failing.iter().all(|r| !r.detail.is_empty()), || {
                    "failure without witness".into()
                })?;
                mutants += 1;
            }
        }
    }
    Ok(format!("all {mutants} single-entry mutants are caught"))
}

/// Prints the criterion's line and fails the test on a failing criterion.
fn report(number: usize, name: &str, result: Check) {
    match result {
        Ok(detail) => println!("PASS criterion {number}: {name}: {detail}"),
        Err(witness) => {
            println!("FAIL criterion {number}: {name}: {witness}");
            panic!("criterion {number} ({name}) failed: {witness}");
        }
    }
}

macro_rules! criteria {
    ($($test:ident: $number:literal, $name:literal, $check:expr;)*) => {
        $(
            #[test]
            fn $test() {
                let cat = Catalog::builtin();
                let check: fn(&Catalog) -> Check = $check;
                report($number, $name, check(&cat));
            }
        )*
    };
}

criteria! {
    criterion_01_catalan_counts: 1, "catalan counts", |_| catalan_counts();
    criterion_02_power_of_two_spectra: 2, "power-of-two spectra", power_of_two_spectra;
    criterion_03_maximal_spectrum: 3, "maximal spectrum of G3", maximal_spectrum;
    criterion_04_ak_oracle: 4, "A_k oracle equivalence", |_| ak_oracle();
    criterion_05_sh_suite: 5, "SH suite", sh_suite;
    criterion_06_quotient_structure: 6, "quotient structure", quotient_structure;
    criterion_07_nonminimality_witnesses: 7, "non-minimality witnesses", nonminimality_witnesses;
    criterion_08_disjointness: 8, "disjointness", disjointness;
    criterion_09_exhaustive_scans: 9, "exhaustive scans", |_| exhaustive_scans();
    criterion_10_clone_fixed_points: 10, "clone fixed points", clone_fixed_points;
    criterion_11_mutation_sensitivity: 11, "mutation sensitivity", |_| mutation_sensitivity();
}
