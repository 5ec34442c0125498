//! Compression of a finite simplicial complex with a regular finite-group
//! action into a complex-of-groups triple `(Y, S, T)`, reconstruction of an
//! equivariantly isomorphic complex from the triple, and exact verification
//! of the roundtrip.
//!
//! ```
//! use std::sync::Arc;
//! use cogcomp_core::{compress, reconstruct, verify_roundtrip, FiniteGroup, GroupAction, SimplicialComplex};
//!
//! // Rotation by 4 on a 24-cycle, generated by a single permutation.
//! let cycle: Vec<[u32; 2]> = (0..24).map(|i| [i, (i + 1) % 24]).collect();
//! let x = Arc::new(SimplicialComplex::from_maximal(&cycle).unwrap());
//! let rot = (0..24).map(|v| (v + 4) % 24).collect();
//! let g = Arc::new(FiniteGroup::from_generators(24, vec![("r".into(), rot)]).unwrap());
//! let action = GroupAction::from_permutation_group(g, x).unwrap();
//!
//! let (triple, cert) = compress(&action).unwrap();
//! assert_eq!(triple.quotient().len(), 8);
//! let z = reconstruct(&triple).unwrap();
//! assert!(verify_roundtrip(&action, &cert, &z).unwrap().passed());
//! ```

pub mod action;
pub mod cog;
pub mod compress;
pub mod counters;
pub mod group;
pub mod reconstruct;
pub mod simplicial;
pub mod verify;

pub use action::{
    induced_action_on_subdivision, ActionError, GroupAction, Quotient, RegularityCondition,
    RegularityReport, RegularityViolation,
};
pub use cog::{
    validate_against_action, validate_triple, CompressedTriple, CompressionCertificate,
    TripleDocument, TripleError, ValidationReport, Violation,
};
pub use compress::{compress, compress_with_policy, CompressStats, LiftPolicy};
pub use counters::{OpCounters, OpCounts};
pub use group::{
    uniqsort, ElementId, FiniteGroup, GroupDocument, GroupError, Subgroup, SubgroupError,
};
pub use reconstruct::{
    basic_construction, check_partial_order, realize, reconstruct, reconstruct_unchecked,
    reconstruct_with_stats, recovered_action, Label, LabeledPoset, PartialOrderReport,
    ReconstructError, ReconstructStats, ReconstructedComplex,
};
pub use simplicial::{
    barycentric_subdivision, complexes_equal, ComplexDocument, FaceRelation, SimplexId,
    SimplicialComplex, SimplicialError, SubdivisionMap,
};
pub use verify::{
    find_equivariant_isomorphism, find_equivariant_isomorphism_bounded, verify_quotient_identity,
    verify_roundtrip, EquivarianceReport, Property, VerifyError, DEFAULT_ISOMORPHISM_BOUND,
};
