//! Classification of HNN-extensions of finite groups with finite associated
//! subgroups, their profinite genus, and a finite-quotient oracle.

pub mod base;
pub mod error;
pub mod fingerprint;
pub mod genus;
pub mod group;
pub mod hnn;
pub mod morphisms;
pub mod named;
pub mod spec;

pub use base::{BaseGroup, SubgroupInfo};
pub use error::{Error, Result};
pub use fingerprint::{compare, fingerprint, hom_count_hnn, Comparison, FingerprintEntry, FingerprintVector, Fingerprinter, Probe, ProbeSet};
pub use genus::{
    genus_in_class_a, genus_report, k_invariant, n_out_image, GenusReport, GenusValue, KInvariant, NOutData, RuleCheck,
};
pub use group::{
    all_subgroups, center, centralizer, conjugacy_classes_of_subgroups, is_conjugate_subgroups, make_group_from_table,
    normalizer, subgroup_closure, FiniteGroup, Group, Subgroup, SubgroupClass,
};
pub use morphisms::{
    aut_group, count_homs, enumerate_homs, enumerate_isomorphisms, restriction_images, GroupMap, MapKind, OutGroup,
    RestrictionImages,
};
pub use hnn::{
    build_gamma_bar, double_coset_count, gamma_action, hnn_isomorphic, iso_class_count, normalize_hnn, pair_orbit_catalog,
    total_iso_count, GammaBarGroup, HnnData, HnnFile, HnnIso, IsoSet, IsoWitness, PairOrbitCatalog,
};
pub use spec::{named_group, GroupSpec};

/// Size limits applied by the enumeration routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group whose subgroups are enumerated.
    pub subgroup_order: usize,
    /// Largest group whose automorphisms are enumerated.
    pub aut_order: usize,
    /// Largest probe group for homomorphism counting.
    pub probe_order: usize,
    /// Largest `|Iso(H, K)|` acted on by permutations.
    pub iso_set: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { subgroup_order: 256, aut_order: 128, probe_order: 60, iso_set: 20_000 }
    }
}
