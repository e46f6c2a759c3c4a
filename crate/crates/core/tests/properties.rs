use proptest::prelude::*;

use grpd::bracketing::{catalan, enumerate_bracketings, parse_bracketing, Bracketing};
use grpd::clone::binary_clone_part;
use grpd::iso::find_isomorphism;
use grpd::nonassoc::ns_index;
use grpd::optable::OpTable;
use grpd::partition::{congruences, quotient, Partition};
use grpd::spectrum::{spectrum, spectrum_exact, DEFAULT_BUDGET};
use grpd::variety::{in_a, in_d, in_d_cap_a, is_semigroup, Variety};
use grpd::{parse_term, Groupoid};

fn groupoid(max: usize) -> impl Strategy<Value = Groupoid> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(0..n as u8, n * n)
            .prop_map(move |t| Groupoid::from_raw(n, t).unwrap())
    })
}

/// A random table together with a random relabelling of it.
fn relabelled(max: usize) -> impl Strategy<Value = (Groupoid, Groupoid)> {
    groupoid(max).prop_flat_map(|g| {
        let n = g.order();
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(move |perm| {
                let mut table = vec![0u8; n * n];
                for a in 0..n {
                    for b in 0..n {
                        table[perm[a] * n + perm[b]] = perm[g.mul(a, b)] as u8;
                    }
                }
                (g.clone(), Groupoid::from_raw(n, table).unwrap())
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dual_is_an_involution(g in groupoid(6)) {
        prop_assert_eq!(g.dual().dual(), g.clone());
        prop_assert_eq!(ns_index(&g.dual()).ns_count, ns_index(&g).ns_count);
    }

    #[test]
    fn gpd_round_trip(g in groupoid(6)) {
        prop_assert_eq!(Groupoid::parse_gpd(&g.to_gpd()).unwrap(), g);
    }

    #[test]
    fn discrete_quotient_is_isomorphic(g in groupoid(6)) {
        let q = quotient(&g, &Partition::discrete(g.order())).unwrap();
        prop_assert!(find_isomorphism(&q, &g, false).unwrap().is_some());
    }

    #[test]
    fn congruence_products_are_well_defined(g in groupoid(5)) {
        let n = g.order();
        for p in congruences(&g).unwrap() {
            let q = quotient(&g, &p).unwrap();
            // every choice of representatives lands in the same class
            for a in 0..n {
                for b in 0..n {
                    let class = p.block_index()[g.mul(a, b)];
                    prop_assert_eq!(q.mul(p.block_index()[a], p.block_index()[b]), class);
                }
            }
        }
    }

    #[test]
    fn subuniverse_closure_is_monotone_and_idempotent(
        g in groupoid(7),
        seeds in prop::collection::vec(0usize..7, 1..4),
        extra in 0usize..7,
    ) {
        let n = g.order();
        let seeds: Vec<usize> = seeds.into_iter().map(|s| s % n).collect();
        let s = g.generate_subuniverse(&seeds).unwrap();
        prop_assert_eq!(g.generate_subuniverse(&s).unwrap(), s.clone());
        let mut more = seeds.clone();
        more.push(extra % n);
        let t = g.generate_subuniverse(&more).unwrap();
        prop_assert!(s.iter().all(|x| t.contains(x)));
    }

    #[test]
    fn isomorphic_groupoids_share_invariants((g, h) in relabelled(5)) {
        let iso = find_isomorphism(&g, &h, false).unwrap();
        prop_assert!(iso.is_some());
        prop_assert_eq!(ns_index(&g).ns_count, ns_index(&h).ns_count);
        prop_assert_eq!(
            spectrum(&g, 5, DEFAULT_BUDGET).unwrap().values,
            spectrum(&h, 5, DEFAULT_BUDGET).unwrap().values
        );
    }

    #[test]
    fn fingerprint_spectrum_matches_exact(g in groupoid(4)) {
        let fast = spectrum(&g, 6, DEFAULT_BUDGET).unwrap();
        let exact = spectrum_exact(&g, 6, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(&fast, &exact);
        for (n, &s) in fast.values.iter().enumerate() {
            prop_assert!(s as u64 <= catalan(n + 1).unwrap());
        }
        prop_assert_eq!(&fast.values[..2], &[1, 1]);
        prop_assert_eq!(fast.values[2] == 1, is_semigroup(&g));
    }

    #[test]
    fn semigroups_have_index_zero(g in groupoid(5)) {
        prop_assert_eq!(ns_index(&g).ns_count == 0, is_semigroup(&g));
        if is_semigroup(&g) {
            prop_assert!(in_a(&g));
        }
        if in_d_cap_a(&g) {
            prop_assert!(in_d(&g) && in_a(&g));
        }
    }
}

#[test]
fn bracketing_counts_are_catalan() {
    for n in 1..=12 {
        assert_eq!(
            enumerate_bracketings(n).unwrap().len() as u64,
            catalan(n).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn left_depth_sequences_are_well_formed_and_distinct() {
    for n in 2..=8 {
        let all = enumerate_bracketings(n).unwrap();
        let mut seqs = Vec::new();
        for b in &all {
            let d = b.left_depths();
            assert_eq!(d.len(), n);
            assert_eq!(*d.last().unwrap(), 0, "{b}");
            assert!(d[0] >= 1, "{b}");
            seqs.push(d);
        }
        seqs.sort();
        seqs.dedup();
        assert_eq!(seqs.len(), all.len(), "n = {n}");
    }
}

#[test]
fn bracketings_round_trip_through_text() {
    for n in 1..=8 {
        for b in enumerate_bracketings(n).unwrap() {
            let back: Bracketing = parse_bracketing(&b.to_string()).unwrap();
            assert_eq!(back, b);
        }
    }
}

#[test]
fn idempotence_follows_from_idempotent_varieties() {
    let cat = grpd::catalog::Catalog::builtin();
    let mut checked = 0;
    for e in cat.entries() {
        let g = &e.groupoid;
        for v in [
            Variety::B,
            Variety::D,
            Variety::DCapA,
            Variety::RectBand,
            Variety::Cp(2),
            Variety::Cp(3),
        ] {
            if v.contains(g).unwrap() {
                assert!(g.is_idempotent(), "{} in {v}", e.name);
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

/// The clone part of every two-element table and of some named groupoids is
/// closed under composition with the basic operation.
#[test]
fn binary_clone_part_is_closed() {
    let two =
        (0..16u8).map(|c| Groupoid::from_raw(2, (0..4).map(|i| c >> i & 1).collect()).unwrap());
    let cat = grpd::catalog::Catalog::builtin();
    let named = ["G1", "G3", "aba-3", "propD-F2", "f2cp-2", "A2"].map(|n| cat.groupoid(n).unwrap());
    for g in two.chain(named) {
        let part = binary_clone_part(&g).unwrap();
        let basic = OpTable::basic(&g);
        assert_eq!(part.ops()[part.basic_index()], basic);
        assert_eq!(
            parse_term("(x y)").unwrap().term_function(&g).unwrap(),
            basic
        );
        let k = g.order();
        for f in part.ops() {
            for h in part.ops() {
                let entries: Vec<u8> = (0..k * k)
                    .map(|c| g.mul(f.entries()[c] as usize, h.entries()[c] as usize) as u8)
                    .collect();
                assert!(
                    part.index_of(&OpTable::new(2, k, entries).unwrap())
                        .is_some(),
                    "{g:?}"
                );
            }
        }
    }
}
