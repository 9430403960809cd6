//! Invariant finitely additive measures on finite groups, built from a
//! subgroup of finite index or through an epimorphism with finite kernel.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{Epimorphism, FiniteGroup, Subgroup};

#[derive(Clone, Debug)]
enum Construction {
    Uniform,
    /// `μ(X) = Σ_{x ∈ X} w_x`.
    Weighted(Vec<BigRational>),
    /// Left transversal `reps` of `sub` in `G`; `base` lives on `sub` realized
    /// as a group, whose element `i` is `sub.members()[i]`.
    FiniteIndexExtend { sub: Subgroup, reps: Vec<usize>, base: Box<MeasuredGroup> },
    KernelPull { pi: Epimorphism, base: Box<MeasuredGroup> },
}

/// A finite group with a measure on all of its subsets.
#[derive(Clone, Debug)]
pub struct MeasuredGroup {
    group: Arc<FiniteGroup>,
    construction: Construction,
}

pub fn uniform_measure(g: Arc<FiniteGroup>) -> MeasuredGroup {
    MeasuredGroup { group: g, construction: Construction::Uniform }
}

/// A measure from nonnegative point weights summing to 1. Invariant only
/// when the weights are constant.
pub fn weighted_measure(g: Arc<FiniteGroup>, weights: Vec<BigRational>) -> Result<MeasuredGroup> {
    if weights.len() != g.order() {
        return Err(Error::InvalidForm(format!("{} weights for {} elements", weights.len(), g.order())));
    }
    if weights.iter().any(|w| w < &BigRational::zero()) || !weights.iter().sum::<BigRational>().is_one() {
        return Err(Error::InvalidForm("weights must be nonnegative and sum to 1".into()));
    }
    Ok(MeasuredGroup { group: g, construction: Construction::Weighted(weights) })
}

/// `μ_G(X) = (1/n) Σ_i μ_H(g_i⁻¹(X ∩ g_i H))` over a left transversal with
/// `g_1 = 1`.
pub fn finite_index_extend(
    g: Arc<FiniteGroup>,
    sub: &Subgroup,
    base: MeasuredGroup,
    reps: Vec<usize>,
) -> Result<MeasuredGroup> {
    if base.group.elements() != g.subgroup_as_group(sub).elements() {
        return Err(Error::NotTransversal("base measure is not defined on the given subgroup".into()));
    }
    let index = g.order() / sub.order();
    if reps.len() != index {
        return Err(Error::NotTransversal(format!("{} representatives for index {index}", reps.len())));
    }
    if reps.first() != Some(&g.identity()) {
        return Err(Error::NotTransversal("first representative must be the identity".into()));
    }
    let mut covered = ElementSet::new(g.order());
    for &r in &reps {
        g.check_index(r)?;
        for &h in sub.members() {
            if !covered.insert(g.mul(r, h)) {
                return Err(Error::NotTransversal(format!("{} repeats a coset", g.element(r))));
            }
        }
    }
    Ok(MeasuredGroup {
        group: g,
        construction: Construction::FiniteIndexExtend { sub: sub.clone(), reps, base: Box::new(base) },
    })
}

/// First left transversal in canonical element order.
pub fn canonical_transversal(g: &FiniteGroup, sub: &Subgroup) -> Vec<usize> {
    let mut covered = ElementSet::new(g.order());
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if !covered.contains(x) {
            reps.push(x);
            for &h in sub.members() {
                covered.insert(g.mul(x, h));
            }
        }
    }
    reps
}

/// `μ_G(X) = (1/n) Σ_i i·μ_H(π((X)_i))` with `(X)_i` the points of `X` whose
/// fiber meets `X` in exactly `i` points and `n = |ker π|`.
pub fn finite_kernel_pull(pi: Epimorphism, base: MeasuredGroup) -> Result<MeasuredGroup> {
    if base.group.as_ref() != pi.target().as_ref() {
        return Err(Error::NotHomomorphism("base measure is not on the epimorphism's target".into()));
    }
    Ok(MeasuredGroup {
        group: pi.source().clone(),
        construction: Construction::KernelPull { pi, base: Box::new(base) },
    })
}

impl MeasuredGroup {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn measure(&self, x: &ElementSet) -> BigRational {
        let g = &self.group;
        match &self.construction {
            Construction::Uniform => {
                BigRational::new(BigInt::from(x.len()), BigInt::from(g.order()))
            }
            Construction::Weighted(w) => x.iter().map(|i| &w[i]).sum(),
            Construction::FiniteIndexExtend { sub, reps, base } => {
                let mut total = BigRational::zero();
                for &r in reps {
                    let rinv = g.inv(r);
                    let idx = x.iter().filter_map(|y| sub.members().binary_search(&g.mul(rinv, y)).ok());
                    total += base.measure(&ElementSet::from_indices(sub.order(), idx));
                }
                total / BigRational::from_integer(BigInt::from(reps.len()))
            }
            Construction::KernelPull { pi, base } => {
                let h = pi.target();
                let n = g.order() / h.order();
                let mut per_fiber = vec![0usize; h.order()];
                for y in x.iter() {
                    per_fiber[pi.apply(y)] += 1;
                }
                let mut total = BigRational::zero();
                for i in 1..=n {
                    let image = ElementSet::from_indices(h.order(), (0..h.order()).filter(|&f| per_fiber[f] == i));
                    if !image.is_empty() {
                        total += base.measure(&image) * BigRational::from_integer(BigInt::from(i));
                    }
                }
                total / BigRational::from_integer(BigInt::from(n))
            }
        }
    }

    /// `gX`.
    pub fn translate(&self, g: usize, x: &ElementSet) -> ElementSet {
        ElementSet::from_indices(self.group.order(), x.iter().map(|y| self.group.mul(g, y)))
    }
}

/// Outcome of checking the measure axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureAudit {
    pub subsets_checked: u64,
    pub exhaustive: bool,
    pub total_mass_one: bool,
    pub empty_zero: bool,
    pub in_unit_interval: bool,
    pub additive: bool,
    pub invariant: bool,
    /// Agrees with `|X|/|G|` on every checked subset.
    pub uniform: bool,
}

impl MeasureAudit {
    pub fn is_invariant_measure(&self) -> bool {
        self.total_mass_one && self.empty_zero && self.in_unit_interval && self.additive && self.invariant
    }
}

/// Largest order for which every subset is checked.
pub const EXHAUSTIVE_MAX_ORDER: usize = 12;

fn subset_from_mask(n: usize, mask: u64) -> ElementSet {
    ElementSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1))
}

/// Exhaustive over all `2^|G|` subsets when `|G| ≤ 12`: additivity through
/// `μ(X) = μ(X ∖ {max X}) + μ({max X})`, which by induction gives
/// `μ(X) = Σ_{x ∈ X} μ({x})` and hence additivity on disjoint sets, and
/// invariance under every left translation. Above that size, `samples` random
/// disjoint pairs are checked instead.
pub fn audit(m: &MeasuredGroup, samples: u64, seed: u64) -> MeasureAudit {
    let g = m.group();
    let n = g.order();
    let full = m.measure(&ElementSet::full(n));
    let empty = m.measure(&ElementSet::new(n));
    let mut a = MeasureAudit {
        subsets_checked: 0,
        exhaustive: n <= EXHAUSTIVE_MAX_ORDER,
        total_mass_one: full.is_one(),
        empty_zero: empty.is_zero(),
        in_unit_interval: true,
        additive: true,
        invariant: true,
        uniform: true,
    };
    let unit = |v: &BigRational| !(v < &BigRational::zero() || v > &BigRational::one());
    let uniform = |k: usize| BigRational::new(BigInt::from(k), BigInt::from(n));
    if a.exhaustive {
        let count = 1u64 << n;
        let values: Vec<BigRational> = (0..count).map(|mask| m.measure(&subset_from_mask(n, mask))).collect();
        let index = |set: &ElementSet| set.iter().fold(0u64, |acc, i| acc | 1 << i);
        for mask in 1..count {
            let v = &values[mask as usize];
            let top = 63 - mask.leading_zeros() as u64;
            a.in_unit_interval &= unit(v);
            a.additive &= *v == &values[(mask & !(1 << top)) as usize] + &values[1usize << top];
            a.uniform &= *v == uniform(mask.count_ones() as usize);
            let set = subset_from_mask(n, mask);
            for x in 0..n {
                a.invariant &= values[index(&m.translate(x, &set)) as usize] == *v;
            }
        }
        a.subsets_checked = count;
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let mut left = ElementSet::new(n);
            let mut right = ElementSet::new(n);
            for i in 0..n {
                match rng.random_range(0..3u8) {
                    0 => {
                        left.insert(i);
                    }
                    1 => {
                        right.insert(i);
                    }
                    _ => {}
                }
            }
            let (ml, mr) = (m.measure(&left), m.measure(&right));
            let mu = m.measure(&left.union(&right));
            a.in_unit_interval &= unit(&ml) && unit(&mu);
            a.additive &= mu == &ml + &mr;
            a.uniform &= ml == uniform(left.len());
            let gx = rng.random_range(0..n);
            a.invariant &= m.measure(&m.translate(gx, &left)) == ml;
        }
        a.subsets_checked = 2 * samples;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::GroupSpec;
    use crate::group::quotient_map;
    use crate::perm::Permutation;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn set(n: usize, xs: impl IntoIterator<Item = usize>) -> ElementSet {
        ElementSet::from_indices(n, xs)
    }

    #[test]
    fn uniform_examples() {
        let s3 = Arc::new(GroupSpec::Symmetric(3).build().unwrap());
        let a3 = s3.subgroup_generated(&[s3.index_of(&Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()).unwrap()]);
        let m = uniform_measure(s3.clone());
        assert_eq!(m.measure(a3.unwrap().mask()), q(1, 2));
        assert_eq!(m.measure(&ElementSet::full(6)), q(1, 1));
        let c4 = Arc::new(GroupSpec::Cyclic(4).build().unwrap());
        assert_eq!(uniform_measure(c4).measure(&set(4, [1])), q(1, 4));
    }

    #[test]
    fn extend_examples() {
        let s3 = Arc::new(GroupSpec::Symmetric(3).build().unwrap());
        let r = s3.index_of(&Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()).unwrap();
        let a3 = s3.subgroup_generated(&[r]).unwrap();
        let base = uniform_measure(Arc::new(s3.subgroup_as_group(&a3)));
        let reps = canonical_transversal(&s3, &a3);
        let m = finite_index_extend(s3.clone(), &a3, base.clone(), reps).unwrap();
        let transpositions = set(6, (0..6).filter(|&x| !a3.contains(x)));
        assert_eq!(m.measure(&transpositions), q(1, 2));
        assert_eq!(m.measure(&ElementSet::full(6)), q(1, 1));
        assert!(matches!(
            finite_index_extend(s3.clone(), &a3, base.clone(), vec![0, r]),
            Err(Error::NotTransversal(_))
        ));
        assert!(matches!(finite_index_extend(s3.clone(), &a3, base, vec![0]), Err(Error::NotTransversal(_))));

        let c4 = Arc::new(GroupSpec::Cyclic(4).build().unwrap());
        let g = c4.index_of(&Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()).unwrap();
        let c2 = c4.subgroup_generated(&[c4.mul(g, g)]).unwrap();
        let base = uniform_measure(Arc::new(c4.subgroup_as_group(&c2)));
        let m = finite_index_extend(c4.clone(), &c2, base, canonical_transversal(&c4, &c2)).unwrap();
        assert_eq!(m.measure(c2.mask()), q(1, 2));
    }

    #[test]
    fn pull_examples() {
        let c4 = Arc::new(GroupSpec::Cyclic(4).build().unwrap());
        let g = c4.index_of(&Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()).unwrap();
        let c2 = c4.subgroup_generated(&[c4.mul(g, g)]).unwrap();
        let pi = quotient_map(&c4, &c2).unwrap();
        let base = uniform_measure(pi.target().clone());
        let m = finite_kernel_pull(pi, base).unwrap();
        assert_eq!(m.measure(&set(4, [g])), q(1, 4));
        assert_eq!(m.measure(c2.mask()), q(1, 2));
        assert_eq!(m.measure(&ElementSet::full(4)), q(1, 1));
    }

    #[test]
    fn audits_pass_exhaustively() {
        let d4 = Arc::new(GroupSpec::Dihedral(4).build().unwrap());
        let r = d4.index_of(&Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()).unwrap();
        let c4 = d4.subgroup_generated(&[r]).unwrap();
        let ext = finite_index_extend(
            d4.clone(),
            &c4,
            uniform_measure(Arc::new(d4.subgroup_as_group(&c4))),
            canonical_transversal(&d4, &c4),
        )
        .unwrap();
        let a = audit(&ext, 0, 0);
        assert!(a.exhaustive && a.is_invariant_measure() && a.uniform, "{a:?}");
        assert_eq!(a.subsets_checked, 256);
        let pi = quotient_map(&d4, &c4).unwrap();
        let pull = finite_kernel_pull(pi.clone(), uniform_measure(pi.target().clone())).unwrap();
        assert!(audit(&pull, 0, 0).is_invariant_measure());
    }

    #[test]
    fn sampled_audit_above_the_exhaustive_size() {
        let s4 = Arc::new(GroupSpec::Symmetric(4).build().unwrap());
        let m = uniform_measure(s4);
        let a = audit(&m, 200, 7);
        assert!(!a.exhaustive);
        assert!(a.is_invariant_measure() && a.uniform);
    }

    #[test]
    fn non_invariant_measures_are_caught() {
        let c4 = Arc::new(GroupSpec::Cyclic(4).build().unwrap());
        let point = weighted_measure(c4.clone(), vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)]).unwrap();
        let a = audit(&point, 0, 0);
        assert!(a.additive && a.total_mass_one && !a.invariant && !a.uniform);
        let g = c4.index_of(&Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()).unwrap();
        let sub = c4.subgroup_generated(&[c4.mul(g, g)]).unwrap();
        let pi = quotient_map(&c4, &sub).unwrap();
        let skewed = weighted_measure(pi.target().clone(), vec![q(1, 3), q(2, 3)]).unwrap();
        let pulled = finite_kernel_pull(pi, skewed).unwrap();
        assert!(!audit(&pulled, 0, 0).invariant);
        assert!(weighted_measure(c4, vec![q(1, 2); 4]).is_err());
    }
}
