use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use super::count::measure_at;
use super::scenario::CoverScenario;
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct BijectionReport {
    pub target: String,
    pub e: usize,
    /// `|H|`.
    pub target_order: usize,
    /// `|N_G(H)|`.
    pub normalizer_order: usize,
    /// `[N:H]^{e-1}`.
    pub factor: BigRational,
    /// `[G:N]^{e-1}`, the number of conjugates of `H` to the power `e - 1`.
    pub conjugate_factor: BigRational,
    /// Measure of the target in the original scenario.
    pub measure_v: BigRational,
    /// Measure of `H` in the scenario induced on `N`.
    pub measure_w: BigRational,
    pub induced: CoverScenario,
}

impl BijectionReport {
    /// `μ_W / μ_V`, when `μ_V ≠ 0`.
    pub fn observed_ratio(&self) -> Option<BigRational> {
        (!self.measure_v.is_zero()).then(|| &self.measure_w / &self.measure_v)
    }

    /// `μ_V · [N:H]^{e-1} = μ_W`.
    pub fn identity_holds(&self) -> bool {
        &self.measure_v * &self.factor == self.measure_w
    }

    /// `μ_V · [G:N]^{e-1} = μ_W`.
    pub fn conjugate_identity_holds(&self) -> bool {
        &self.measure_v * &self.conjugate_factor == self.measure_w
    }
}

fn power(base: usize, e: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(BigUint::from(base).pow(e as u32 - 1)))
}

/// Scaling factor for the target `H` together with the scenario induced on
/// `N = N_G(H)`: group `N`, `G0' = N ∩ G0`, single target `H`, in which `H`
/// is normal and regular.
pub fn bijection_factor(s: &CoverScenario, target: &str, e: usize) -> Result<BijectionReport> {
    if e == 0 {
        return Err(crate::error::Error::ZeroRank);
    }
    let t = s.target(target)?;
    let lattice = s.lattice();
    let h = t.node;
    let n = lattice.normalizer_of(h);
    let target_order = lattice.node(h).order();
    let normalizer_order = lattice.node(n).order();
    let g_order = s.group().order();

    let induced =
        s.restricted_to(format!("{}/normalizer", s.name()), n, &[(target.to_string(), h)])?;
    let measure_v = measure_at(s, e)?.value(target).cloned().unwrap_or_else(BigRational::zero);
    let measure_w = measure_at(&induced, e)?.entries[0].value.clone();

    let factor = power(normalizer_order / target_order, e);
    let conjugate_factor = power(g_order / normalizer_order, e);
    Ok(BijectionReport {
        target: target.to_string(),
        e,
        target_order,
        normalizer_order,
        factor,
        conjugate_factor,
        measure_v,
        measure_w,
        induced,
    })
}
