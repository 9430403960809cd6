//! Exact finite-group counting behind measures on definable sets of perfect
//! e-free PAC fields.
//!
//! Every field-theoretic quantity is handled through its Galois image: a
//! [`CoverScenario`] carries `G = Gal(L/k(a))`, the normal subgroup
//! `G0 = Gal(L/k_L(a))`, and target subgroup classes `[H_i]`. Measures are
//! ratios of e-tuple counts computed over the subgroup lattice of `G`.

pub mod amenability;
pub mod asymptotics;
pub mod bitset;
pub mod catalog;
pub mod construct;
pub mod counting;
pub mod error;
pub mod group;
pub mod lattice;
pub mod limits;
pub mod measure;
pub mod montecarlo;
pub mod perm;
pub mod powersum;
pub mod pro_p;

pub use amenability::{audit, finite_index_extend, finite_kernel_pull, uniform_measure, MeasuredGroup};
pub use asymptotics::{generic_target, omega_sum, ultralimit, SeriesValue};
pub use bitset::ElementSet;
pub use construct::GroupSpec;
pub use error::{Error, Result};
pub use group::{quotient_map, Epimorphism, FiniteGroup, Subgroup};
pub use lattice::{sylow_subgroup, SubgroupClass, SubgroupLattice};
pub use limits::Limits;
pub use measure::{
    bijection_factor, closed_form, measure_at, measure_split_at, validate_scenario, validate_tower, verify_refinement,
    CoverScenario, MeasureReport, ScenarioSpec, TargetSpec, TowerScenario, TowerSpec,
};
pub use montecarlo::{sample_measure, EstimateReport};
pub use perm::Permutation;
pub use powersum::SignedPowerSum;
pub use pro_p::{prop_measure_at, survey_choices, verify_prop_refinement, SylowChoice};
