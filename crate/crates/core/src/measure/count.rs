use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scenario::CoverScenario;
use crate::counting::{first_generating_tuple, tuple_spectrum};
use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;
use crate::powersum::SignedPowerSum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetMeasure {
    pub name: String,
    pub numerator: BigUint,
    pub denominator: BigUint,
    pub value: BigRational,
}

/// Which counting produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountingScheme {
    /// Tuples of `G^e` generating a regular subgroup.
    Regular,
    /// Tuples `σ0·τ` with `τ ∈ G0^e`.
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureReport {
    pub scenario: String,
    pub e: usize,
    pub scheme: CountingScheme,
    pub entries: Vec<TargetMeasure>,
    pub regular_total: BigUint,
}

impl MeasureReport {
    pub fn value(&self, target: &str) -> Option<&BigRational> {
        self.entries.iter().find(|t| t.name == target).map(|t| &t.value)
    }

    pub fn values(&self) -> Vec<(&str, &BigRational)> {
        self.entries.iter().map(|t| (t.name.as_str(), &t.value)).collect()
    }

    pub fn total(&self) -> BigRational {
        self.entries.iter().map(|t| t.value.clone()).sum()
    }
}

pub(crate) fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

fn report(
    s: &CoverScenario,
    e: usize,
    scheme: CountingScheme,
    numerators: Vec<BigUint>,
    denominator: BigUint,
) -> MeasureReport {
    let entries = s
        .targets()
        .iter()
        .zip(numerators)
        .map(|(t, numerator)| TargetMeasure {
            name: t.name.clone(),
            value: ratio(&numerator, &denominator),
            numerator,
            denominator: denominator.clone(),
        })
        .collect();
    MeasureReport { scenario: s.name().to_string(), e, scheme, entries, regular_total: denominator }
}

/// Ratio of e-tuples generating a conjugate of each target to e-tuples
/// generating any regular subgroup.
pub fn measure_at(s: &CoverScenario, e: usize) -> Result<MeasureReport> {
    if e == 0 {
        return Err(Error::ZeroRank);
    }
    let spectrum = tuple_spectrum(s.lattice(), e);
    let denominator: BigUint = s.regular_classes().map(|c| spectrum.count(c).clone()).sum();
    if denominator.is_zero() {
        return Err(Error::NoRegularTuples { e });
    }
    let numerators = s.targets().iter().map(|t| spectrum.count(t.class).clone()).collect();
    Ok(report(s, e, CountingScheme::Regular, numerators, denominator))
}

/// Default `σ0`: the complement's generators padded with identities, or the
/// first generating e-tuple of the complement when it has too many generators.
pub fn default_sigma0(s: &CoverScenario, e: usize) -> Result<Vec<usize>> {
    let c = s.complement().ok_or(Error::NotSplit)?;
    let g = s.group();
    let gens = c.generators();
    if gens.len() <= e {
        let mut t = gens.to_vec();
        t.resize(e, g.identity());
        return Ok(t);
    }
    let cg = std::sync::Arc::new(g.subgroup_as_group(c));
    let cl = SubgroupLattice::with_cap(cg, s.limits().max_subgroups)?;
    let t = first_generating_tuple(&cl, e).ok_or(Error::NoRegularTuples { e })?;
    Ok(t.into_iter().map(|i| c.members()[i]).collect())
}

/// Split counting: `|{τ ∈ G0^e : ⟨σ0·τ⟩ ~ H_i}| / |G0|^e`.
///
/// Runs a dynamic program over lattice nodes: after `i` coordinates the state
/// is the subgroup generated so far, and each step joins it with `σ0_i·τ_i`
/// for every `τ_i ∈ G0`.
pub fn measure_split_at(s: &CoverScenario, e: usize, sigma0: Option<&[usize]>) -> Result<MeasureReport> {
    if e == 0 {
        return Err(Error::ZeroRank);
    }
    let c = s.complement().ok_or(Error::NotSplit)?;
    let g = s.group();
    let lattice = s.lattice();
    let sigma0 = match sigma0 {
        Some(t) => {
            if t.len() != e {
                return Err(Error::Sigma0NotGenerating(format!("expected {e} entries, got {}", t.len())));
            }
            for &x in t {
                g.check_index(x)?;
                if !c.contains(x) {
                    return Err(Error::Sigma0NotGenerating(format!("{} is not in the complement", g.element(x))));
                }
            }
            let node = lattice.join_cache().generated(t);
            if !s.is_regular_node(node) {
                return Err(Error::Sigma0NotGenerating("image does not generate G/G0".into()));
            }
            t.to_vec()
        }
        None => default_sigma0(s, e)?,
    };

    let g0 = s.g0().members();
    let mut cache = lattice.join_cache();
    let mut states: HashMap<usize, BigUint> = HashMap::from([(lattice.trivial_node(), BigUint::one())]);
    for &sig in &sigma0 {
        let steps: Vec<usize> = g0.iter().map(|&t| g.mul(sig, t)).collect();
        let mut next: HashMap<usize, BigUint> = HashMap::with_capacity(states.len());
        for (node, count) in &states {
            for &x in &steps {
                let j = cache.join(*node, x);
                *next.entry(j).or_insert_with(BigUint::zero) += count;
            }
        }
        states = next;
    }
    let mut per_class = vec![BigUint::zero(); lattice.classes().len()];
    for (node, count) in states {
        per_class[lattice.class_of(node)] += count;
    }
    let numerators = s.targets().iter().map(|t| per_class[t.class].clone()).collect();
    let denominator = BigUint::from(g0.len()).pow(e as u32);
    Ok(report(s, e, CountingScheme::Split, numerators, denominator))
}

/// `Σ_{D ~ H} Σ_{K ≤ D, K·G0 = G} μ(K, D) (|K ∩ G0| / |G0|)^e`.
///
/// A `σ0·τ` tuple lies in `K` for exactly `|K ∩ G0|^e` choices of `τ` when `K`
/// is regular and for none otherwise, so Möbius inversion over `K ≤ D` gives
/// the count of tuples generating exactly `D`.
pub fn closed_form(s: &CoverScenario, target: &str) -> Result<SignedPowerSum> {
    if !s.is_split() {
        return Err(Error::NotSplit);
    }
    let t = s.target(target)?;
    let lattice = s.lattice();
    let q = s.quotient_order();
    let n = s.g0().order() as u64;
    let mut terms = Vec::new();
    for &d in &lattice.class(t.class).nodes {
        for (k, mu) in lattice.mobius_below(d) {
            if mu != 0 && s.is_regular_node(k) {
                let ni = (lattice.node(k).order() / q) as u64;
                terms.push((BigInt::from(mu), ni));
            }
        }
    }
    SignedPowerSum::new(n, terms, Vec::new(), 1)
}
