use grpd::catalog::Catalog;
use grpd::harness::{claim_ids, verify_paper, Status};

#[test]
fn every_fast_claim_passes_on_the_builtin_catalog() {
    let results = verify_paper(&Catalog::builtin(), true);
    let failed: Vec<_> = results
        .iter()
        .filter(|r| r.status == Status::Fail)
        .collect();
    assert!(failed.is_empty(), "{failed:#?}");
    assert!(results.len() >= 25);
}

#[test]
fn claim_ids_are_unique() {
    let ids = claim_ids();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len());
}
