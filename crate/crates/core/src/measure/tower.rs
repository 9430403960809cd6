use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::count::{measure_at, ratio};
use super::scenario::{validate_scenario, CoverScenario, ScenarioSpec};
use crate::counting::{enumeration_size, for_each_generated, gaschutz_count, tuple_spectrum};
use crate::error::{Error, Result};
use crate::group::{quotient_map, Epimorphism};
use crate::lattice::SubgroupLattice;
use crate::limits::Limits;
use crate::perm::Permutation;

/// Unvalidated tower data. `restriction` lists the images of the upper
/// group's generators, in the order the upper group reports them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct TowerSpec {
    pub name: String,
    pub upper: ScenarioSpec,
    pub lower: ScenarioSpec,
    pub restriction: Vec<Permutation>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub metadata: String,
}

/// `upper` covers `lower` through `restriction: upper.G → lower.G`.
#[derive(Clone, Debug)]
pub struct TowerScenario {
    name: String,
    upper: CoverScenario,
    lower: CoverScenario,
    restriction: Epimorphism,
}

pub fn validate_tower(spec: &TowerSpec, limits: &Limits) -> Result<TowerScenario> {
    let upper = validate_scenario(&spec.upper, limits)?;
    let lower = validate_scenario(&spec.lower, limits)?;
    let r = Epimorphism::from_generator_images(upper.group().clone(), lower.group().clone(), &spec.restriction)
        .map_err(|e| Error::BadTower(format!("restriction: {e}")))?;
    TowerScenario::new(spec.name.clone(), upper, lower, r)
}

impl TowerScenario {
    /// Requires `r(G0_M) ⊆ G0_L` and `r⁻¹(G0_L) = G0_M·ker r`; the second
    /// condition says the constant field of the lower level is exactly the
    /// part of the upper constant field lying in the lower function field.
    pub fn new(name: String, upper: CoverScenario, lower: CoverScenario, restriction: Epimorphism) -> Result<Self> {
        if restriction.source().as_ref() != upper.group().as_ref()
            || restriction.target().as_ref() != lower.group().as_ref()
        {
            return Err(Error::BadTower("restriction does not map upper.G onto lower.G".into()));
        }
        let image = restriction.image(upper.g0());
        if !lower.group().is_subgroup_of(&image, lower.g0()) {
            return Err(Error::BadTower("restriction does not map upper G0 into lower G0".into()));
        }
        let kernel = restriction.kernel();
        let g0_ker = upper.group().product_size(upper.g0(), &kernel);
        if g0_ker != lower.g0().order() * kernel.order() {
            return Err(Error::BadTower(format!(
                "preimage of lower G0 has order {} but G0·ker has order {g0_ker}",
                lower.g0().order() * kernel.order()
            )));
        }
        Ok(TowerScenario { name, upper, lower, restriction })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn upper(&self) -> &CoverScenario {
        &self.upper
    }

    pub fn lower(&self) -> &CoverScenario {
        &self.lower
    }

    pub fn restriction(&self) -> &Epimorphism {
        &self.restriction
    }

    /// The induced epimorphism `Q_M → Q_L`.
    pub fn quotient_map(&self) -> Result<Epimorphism> {
        let qm = quotient_map(self.upper.group(), self.upper.g0())?;
        let ql = quotient_map(self.lower.group(), self.lower.g0())?;
        let mut map = vec![0; qm.target().order()];
        for x in 0..self.upper.group().order() {
            map[qm.apply(x)] = ql.apply(self.restriction.apply(x));
        }
        Epimorphism::new(qm.target().clone(), ql.target().clone(), map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetAgreement {
    pub name: String,
    pub lower: BigRational,
    /// Upper measure of all regular classes restricting onto the target;
    /// `None` when the upper quotient is not e-generated.
    pub upper: Option<BigRational>,
}

impl TargetAgreement {
    pub fn agrees(&self) -> bool {
        self.upper.as_ref() == Some(&self.lower)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementReport {
    pub tower: String,
    pub e: usize,
    pub regular_lower_tuples: u64,
    /// Lift count → number of regular lower tuples with that many lifts.
    pub lift_counts: BTreeMap<u64, u64>,
    /// `φ(Q_M → Q_L)`.
    pub quotient_factor: BigUint,
    /// `|ker r ∩ G0_M|`.
    pub kernel_order: usize,
    pub predicted: BigUint,
    pub targets: Vec<TargetAgreement>,
}

impl RefinementReport {
    pub fn all_equal(&self) -> bool {
        self.lift_counts.len() == 1
    }

    pub fn common_value(&self) -> Option<u64> {
        if self.all_equal() {
            self.lift_counts.keys().next().copied()
        } else {
            None
        }
    }

    pub fn matches_prediction(&self) -> bool {
        self.common_value().map(BigUint::from) == Some(self.predicted.clone())
    }

    pub fn measures_agree(&self) -> bool {
        self.targets.iter().all(TargetAgreement::agrees)
    }

    pub fn holds(&self) -> bool {
        self.matches_prediction() && self.measures_agree()
    }
}

/// Enumerates every upper tuple, buckets the regular ones by restriction,
/// and reads off the lift count of every regular lower tuple.
pub fn verify_refinement(t: &TowerScenario, e: usize) -> Result<RefinementReport> {
    if e == 0 {
        return Err(Error::ZeroRank);
    }
    let upper = &t.upper;
    let lower = &t.lower;
    let cap = upper.limits().max_enumeration;
    let nu = upper.group().order();
    let nl = lower.group().order();
    enumeration_size(nu, e, cap)?;
    enumeration_size(nl, e, cap)?;
    let lower_report = measure_at(lower, e)?;

    let encode = |tuple: &[usize]| tuple.iter().fold(0u64, |acc, &x| acc * nl as u64 + x as u64);
    let mut lifts: HashMap<u64, u64> = HashMap::new();
    let all: Vec<usize> = (0..nu).collect();
    let choices: Vec<&[usize]> = vec![&all; e];
    let mut cache = upper.lattice().join_cache();
    let mut image = vec![0usize; e];
    for_each_generated(&mut cache, &choices, &mut |tuple, node| {
        if upper.is_regular_node(node) {
            for (slot, &x) in image.iter_mut().zip(tuple) {
                *slot = t.restriction.apply(x);
            }
            *lifts.entry(encode(&image)).or_insert(0) += 1;
        }
    });

    let lall: Vec<usize> = (0..nl).collect();
    let lchoices: Vec<&[usize]> = vec![&lall; e];
    let mut lcache = lower.lattice().join_cache();
    let mut lift_counts = BTreeMap::new();
    let mut regular_lower_tuples = 0;
    for_each_generated(&mut lcache, &lchoices, &mut |tuple, node| {
        if lower.is_regular_node(node) {
            regular_lower_tuples += 1;
            let c = lifts.get(&encode(tuple)).copied().unwrap_or(0);
            *lift_counts.entry(c).or_insert(0) += 1;
        }
    });

    let qmap = t.quotient_map()?;
    let qm_lattice = SubgroupLattice::with_cap(qmap.source().clone(), upper.limits().max_subgroups)?;
    let ql_lattice = SubgroupLattice::with_cap(qmap.target().clone(), lower.limits().max_subgroups)?;
    let quotient_factor = match gaschutz_count(&qmap, &qm_lattice, &ql_lattice, e, None) {
        Ok(r) => r.lift_count,
        Err(Error::NotEGenerated { .. }) => BigUint::zero(),
        Err(err) => return Err(err),
    };
    let kernel_order = upper.group().intersection(&t.restriction.kernel(), upper.g0()).order();
    let predicted = &quotient_factor * BigUint::from(kernel_order).pow(e as u32);

    let spectrum = tuple_spectrum(upper.lattice(), e);
    let upper_total: BigUint = upper.regular_classes().map(|c| spectrum.count(c).clone()).sum();
    let ll = lower.lattice();
    let restricted_class: Vec<Option<usize>> = upper
        .lattice()
        .classes()
        .iter()
        .map(|c| {
            upper.is_regular_class(c.id).then(|| {
                let img = t.restriction.image(upper.lattice().node(c.representative));
                ll.class_of(ll.node_of_subgroup(&img))
            })
        })
        .collect();
    let targets = lower
        .targets()
        .iter()
        .zip(&lower_report.entries)
        .map(|(target, entry)| {
            let upper_value = (!upper_total.is_zero()).then(|| {
                let num: BigUint = restricted_class
                    .iter()
                    .enumerate()
                    .filter(|(_, rc)| **rc == Some(target.class))
                    .map(|(c, _)| spectrum.count(c).clone())
                    .sum();
                ratio(&num, &upper_total)
            });
            TargetAgreement { name: target.name.clone(), lower: entry.value.clone(), upper: upper_value }
        })
        .collect();

    Ok(RefinementReport {
        tower: t.name.clone(),
        e,
        regular_lower_tuples,
        lift_counts,
        quotient_factor,
        kernel_order,
        predicted,
        targets,
    })
}

/// Identity tower on a scenario.
pub fn trivial_tower(s: &CoverScenario) -> Result<TowerScenario> {
    let id = Epimorphism::identity(Arc::clone(s.group()));
    TowerScenario::new(format!("{}/identity", s.name()), s.clone(), s.clone(), id)
}
