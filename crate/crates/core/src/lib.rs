//! Finite groupoid analysis: associative spectra, nonassociativity indices,
//! binary clone parts, and variety membership checks.

pub mod bracketing;
pub mod catalog;
pub mod clone;
pub mod error;
pub mod groupoid;
pub mod harness;
pub mod iso;
pub mod nonassoc;
pub mod optable;
pub mod partition;
pub mod search;
pub mod spectrum;
pub mod term;
pub mod variety;

pub use bracketing::{catalan, enumerate_bracketings, parse_bracketing, Bracketing};
pub use catalog::{
    build_ak, build_chain_groupoid, build_f2_cp, catalog_get, catalog_list, Catalog, CatalogEntry,
    Tag,
};
pub use clone::{
    binary_clone_part, binary_minimality_proxy, f2_table, find_relational_witness,
    is_trivial_clone, BinaryClonePart, MinimalityVerdict, SubsetWitness,
};
pub use error::{Error, Result};
pub use groupoid::{parse_groupoid, Elem, Groupoid};
pub use harness::{render_results, verify_paper, ClaimResult, Status};
pub use iso::{are_isomorphic, find_isomorphism, Isomorphism};
pub use nonassoc::{check_sh_factor_property, is_minimal_sh, ns_index, ShReport, ShType};
pub use optable::OpTable;
pub use partition::{congruences, enumerate_partitions, is_congruence, quotient, Partition};
pub use search::{cmd_search, SearchSpec, SearchSummary};
pub use spectrum::{
    nulla_satisfied, spectrum, spectrum_ak_oracle, spectrum_exact, term_function, SpectrumReport,
};
pub use term::{
    parse_identity, parse_term, satisfies_identity, scheme_identity, Identity, Scheme, Term,
};
pub use variety::{
    in_a, in_b, in_cp, in_d, in_d_cap_a, is_semigroup, satisfies_d_scheme, Variety, Violation,
};
