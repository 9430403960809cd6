//! Counting e-tuples by the subgroup they generate.
//!
//! The main path is Möbius inversion over the subgroup lattice; direct
//! enumeration is kept as an oracle.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::Epimorphism;
use crate::lattice::{JoinCache, SubgroupLattice};

/// Default cap on the number of tuples any enumeration may visit.
pub const DEFAULT_MAX_ENUMERATION: u64 = 10_000_000;

/// `base^e`, checked against an enumeration cap.
pub fn enumeration_size(base: usize, e: usize, cap: u64) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..e {
        total = match total.checked_mul(base as u64) {
            Some(t) if t <= cap => t,
            _ => {
                return Err(Error::EnumerationTooLarge {
                    required: BigUint::from(base).pow(e as u32).to_string(),
                    cap,
                })
            }
        };
    }
    if total > cap {
        return Err(Error::EnumerationTooLarge { required: total.to_string(), cap });
    }
    Ok(total)
}

/// Number of e-tuples of elements of node `h` that generate `h`:
/// `Σ_{K ≤ H} μ(K, H) |K|^e`.
pub fn hall_phi(lattice: &SubgroupLattice, h: usize, e: usize) -> BigUint {
    let mut total = BigInt::zero();
    for (k, mu) in lattice.mobius_below(h) {
        if mu != 0 {
            total += BigInt::from(mu) * BigInt::from(lattice.node(k).order()).pow(e as u32);
        }
    }
    total.to_biguint().expect("generating-tuple counts are nonnegative")
}

/// Counts of e-tuples of `G` by the conjugacy class of the subgroup they generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleSpectrum {
    pub group_order: usize,
    pub e: usize,
    /// Indexed by subgroup-class id of the lattice.
    pub counts: Vec<BigUint>,
}

impl TupleSpectrum {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn count(&self, class: usize) -> &BigUint {
        &self.counts[class]
    }
}

/// `counts[D] = [G : N_G(D)] · φ(D, e)` for every class `[D]`.
pub fn tuple_spectrum(lattice: &SubgroupLattice, e: usize) -> TupleSpectrum {
    let counts = lattice
        .classes()
        .iter()
        .map(|c| hall_phi(lattice, c.representative, e) * BigUint::from(c.size()))
        .collect();
    TupleSpectrum { group_order: lattice.group().order(), e, counts }
}

/// Visits every tuple in `choices[0] × … × choices[e-1]` in lexicographic
/// order, passing the node each tuple generates.
pub(crate) fn for_each_generated(
    cache: &mut JoinCache<'_>,
    choices: &[&[usize]],
    visit: &mut impl FnMut(&[usize], usize),
) {
    fn rec(
        cache: &mut JoinCache<'_>,
        choices: &[&[usize]],
        depth: usize,
        node: usize,
        tuple: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize], usize),
    ) {
        if depth == choices.len() {
            visit(tuple, node);
            return;
        }
        for &g in choices[depth] {
            let next = cache.join(node, g);
            tuple.push(g);
            rec(cache, choices, depth + 1, next, tuple, visit);
            tuple.pop();
        }
    }
    let mut tuple = Vec::with_capacity(choices.len());
    rec(cache, choices, 0, 0, &mut tuple, visit);
}

/// Same contract as [`tuple_spectrum`], by enumerating every e-tuple.
pub fn brute_force_spectrum(lattice: &SubgroupLattice, e: usize, cap: u64) -> Result<TupleSpectrum> {
    let n = lattice.group().order();
    enumeration_size(n, e, cap)?;
    let all: Vec<usize> = (0..n).collect();
    let choices: Vec<&[usize]> = vec![&all; e];
    let mut counts = vec![0u64; lattice.classes().len()];
    let mut cache = lattice.join_cache();
    for_each_generated(&mut cache, &choices, &mut |_, node| counts[lattice.class_of(node)] += 1);
    Ok(TupleSpectrum { group_order: n, e, counts: counts.into_iter().map(BigUint::from).collect() })
}

/// Result of counting generating lifts along an epimorphism `F → E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaschutzReport {
    pub e: usize,
    /// Target tuple whose lifts were counted.
    pub target_tuple: Vec<usize>,
    /// `φ(F/E)`.
    pub lift_count: BigUint,
    /// `φ(F)`.
    pub source_gen_count: BigUint,
    /// `φ(E)`.
    pub target_gen_count: BigUint,
}

impl GaschutzReport {
    pub fn is_multiplicative(&self) -> bool {
        self.source_gen_count == &self.lift_count * &self.target_gen_count
    }
}

fn check_lattices(f: &Epimorphism, source: &SubgroupLattice, target: &SubgroupLattice) -> Result<()> {
    if source.group().as_ref() != f.source().as_ref() || target.group().as_ref() != f.target().as_ref() {
        return Err(Error::NotHomomorphism("lattices do not belong to the epimorphism's groups".into()));
    }
    Ok(())
}

/// The lexicographically first e-tuple generating the lattice's whole group.
pub fn first_generating_tuple(lattice: &SubgroupLattice, e: usize) -> Option<Vec<usize>> {
    fn rec(
        cache: &mut JoinCache<'_>,
        n: usize,
        whole: usize,
        e: usize,
        node: usize,
        tuple: &mut Vec<usize>,
    ) -> bool {
        if tuple.len() == e {
            return node == whole;
        }
        for g in 0..n {
            let next = cache.join(node, g);
            tuple.push(g);
            if rec(cache, n, whole, e, next, tuple) {
                return true;
            }
            tuple.pop();
        }
        false
    }
    if hall_phi(lattice, lattice.whole_node(), e).is_zero() {
        return None;
    }
    let mut cache = lattice.join_cache();
    let mut tuple = Vec::with_capacity(e);
    rec(&mut cache, lattice.group().order(), lattice.whole_node(), e, 0, &mut tuple).then_some(tuple)
}

/// Counts generating lifts of one generating target tuple (the canonical first
/// one if none is supplied).
pub fn gaschutz_count(
    f: &Epimorphism,
    source: &SubgroupLattice,
    target: &SubgroupLattice,
    e: usize,
    target_tuple: Option<&[usize]>,
) -> Result<GaschutzReport> {
    if e == 0 {
        return Err(Error::ZeroRank);
    }
    check_lattices(f, source, target)?;
    let source_gen_count = hall_phi(source, source.whole_node(), e);
    if source_gen_count.is_zero() {
        return Err(Error::NotEGenerated { e });
    }
    let target_gen_count = hall_phi(target, target.whole_node(), e);
    let tuple = match target_tuple {
        Some(t) => {
            if t.len() != e {
                return Err(Error::NotGenerating);
            }
            for &x in t {
                f.target().check_index(x)?;
            }
            if target.join_cache().generated(t) != target.whole_node() {
                return Err(Error::NotGenerating);
            }
            t.to_vec()
        }
        None => first_generating_tuple(target, e).expect("image of an e-generated group is e-generated"),
    };
    let fibers = f.fibers();
    let choices: Vec<&[usize]> = tuple.iter().map(|&y| fibers[y].as_slice()).collect();
    let whole = source.whole_node();
    let mut lifts = 0u64;
    let mut cache = source.join_cache();
    for_each_generated(&mut cache, &choices, &mut |_, node| {
        if node == whole {
            lifts += 1;
        }
    });
    Ok(GaschutzReport {
        e,
        target_tuple: tuple,
        lift_count: BigUint::from(lifts),
        source_gen_count,
        target_gen_count,
    })
}

/// Generating-lift counts over every generating target tuple at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftProfile {
    pub e: usize,
    /// Number of generating target tuples.
    pub generating_targets: u64,
    /// Distinct lift counts observed, with how many target tuples had each.
    pub counts: BTreeMap<u64, u64>,
}

impl LiftProfile {
    /// True when every generating target tuple has the same, nonzero, number of lifts.
    pub fn is_constant(&self) -> bool {
        self.counts.len() == 1 && !self.counts.contains_key(&0)
    }

    pub fn common_value(&self) -> Option<u64> {
        if self.is_constant() {
            self.counts.keys().next().copied()
        } else {
            None
        }
    }
}

/// Enumerates all of `source^e`, buckets generating tuples by their image,
/// and tallies lift counts over every generating target tuple.
pub fn gaschutz_profile(
    f: &Epimorphism,
    source: &SubgroupLattice,
    target: &SubgroupLattice,
    e: usize,
    cap: u64,
) -> Result<LiftProfile> {
    check_lattices(f, source, target)?;
    let ns = f.source().order();
    let nt = f.target().order();
    enumeration_size(ns, e, cap)?;
    let encode = |t: &[usize]| t.iter().fold(0u64, |acc, &x| acc * nt as u64 + x as u64);

    let mut per_image: HashMap<u64, u64> = HashMap::new();
    let all: Vec<usize> = (0..ns).collect();
    let choices: Vec<&[usize]> = vec![&all; e];
    let whole = source.whole_node();
    let mut cache = source.join_cache();
    let mut image = vec![0usize; e];
    for_each_generated(&mut cache, &choices, &mut |tuple, node| {
        if node == whole {
            for (slot, &x) in image.iter_mut().zip(tuple) {
                *slot = f.apply(x);
            }
            *per_image.entry(encode(&image)).or_insert(0) += 1;
        }
    });

    let tall: Vec<usize> = (0..nt).collect();
    let tchoices: Vec<&[usize]> = vec![&tall; e];
    let twhole = target.whole_node();
    let mut tcache = target.join_cache();
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut generating_targets = 0;
    for_each_generated(&mut tcache, &tchoices, &mut |tuple, node| {
        if node == twhole {
            generating_targets += 1;
            let c = per_image.get(&encode(tuple)).copied().unwrap_or(0);
            *counts.entry(c).or_insert(0) += 1;
        }
    });
    Ok(LiftProfile { e, generating_targets, counts })
}

/// Distinct class ids that occur in a spectrum with nonzero count.
pub fn support(spectrum: &TupleSpectrum) -> BTreeSet<usize> {
    spectrum.counts.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect()
}
