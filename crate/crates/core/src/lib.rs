//! Symplectic graphs `Sp(2ν, 2)` over GF(2), Godsil-McKay switching with
//! respect to automorphism orbit partitions, and the triple common-neighbour
//! invariant that separates the switched families.

pub mod bitset;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod graph6;
pub mod orbits;
pub mod partition;
pub mod suite;
pub mod switching;
pub mod triples;
pub mod variants;

pub use bitset::Bitset;
pub use error::{Error, Result};
pub use gf2::{pair_swap, rank, solve_affine, symp_form, AffineSolutionSet, BitVector, Gf2Matrix};
pub use graph::{
    build_symplectic, common_neighbors, edge_difference, verify_srg, SrgCertificate, SrgFailure,
    SympGraph,
};
pub use orbits::{
    classify_e, classify_s, generate_aut_e_group, orbit_closure, orbit_partition_e,
    orbit_partition_s, two_cell_partition, OrbitLabelE, OrbitLabelS, SCell, SpecialQuadruple,
};
pub use partition::{PartitionReport, VertexPartition};
pub use suite::{
    run_suite, scan_families, Check, FamilyEntry, FamilyScanReport, SuiteOptions, SuiteReport,
};
pub use switching::{
    apply_switch, find_gm_cells, gm_cell_reports, is_equitable, neighbor_count_table, GmCellReport,
    NeighborTable, SwitchRecord, Verdict,
};
pub use triples::{
    classify_triple_case, expected_min_nonzero, predict_switched_count, sample_triples,
    scan_min_nonzero, triple_count, CellTriple, ExpectedMinimum, ScanMode, SwitchContext,
    TripleCase, TripleScanReport,
};
pub use variants::{build_variant, switch_variant, Variant, VariantGraph};
