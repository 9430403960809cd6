//! Shared fixtures for the benchmarks.

use galmeasure_core::catalog::scenario_spec;
use galmeasure_core::{validate_scenario, CoverScenario, Limits};

/// Catalog scenarios exercised by the benchmarks, smallest first.
pub const BENCH_IDS: &[&str] = &["s3-over-a3", "d4-over-c4", "fifth-root", "wreath-5-2", "s5-transposition"];

pub fn scenario(id: &str) -> CoverScenario {
    validate_scenario(&scenario_spec(id).expect("catalog id"), &Limits::default()).expect("valid catalog scenario")
}
