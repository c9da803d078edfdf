//! Finite quasigroups as Latin squares: construction over GF(p^r),
//! enumeration of proper subquasigroups, and checks for the properties that
//! matter when a quasigroup is used as a cryptographic primitive
//! (simplicity, non-affineness, polynomial completeness, no subquasigroups).

pub mod construction;
pub mod field;
pub mod properties;
pub mod report;
pub mod subq;
pub mod table;

pub use construction::{
    build_table, choose_c, construct, construct_suitable, konig_rados_count, range_of_f, CStrategy,
    Construction, ConstructionError, ConstructionParams, RootCount,
};
pub use field::{FieldCtx, FieldElem, FieldError};
pub use properties::{
    affine_criterion, affine_witness, count_associative_triples, is_affine,
    is_polynomially_complete, is_simple, principal_congruence, two_generation_check,
    AffinityWitness, CongruenceClosure, Partition, PropertyError,
};
pub use report::{AnalysisReport, ConstructionReport};
pub use subq::{
    diagonal_core, find_all_subquasigroups, generated_by, is_closed, no_proper_subq_via_diagonal,
    order4_simplicity, GenerationTrace, SubqError, SubqReport,
};
pub use table::{cycle_decomposition, CycleDecomposition, Permutation, QTable, TableError};
