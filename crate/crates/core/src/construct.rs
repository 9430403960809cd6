//! Named group constructions realized as permutation groups.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Epimorphism, FiniteGroup, DEFAULT_MAX_GROUP_ORDER};
use crate::perm::Permutation;

/// Descriptor of a group, as it appears in scenario files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    /// `kernel ⋊ acting`. `action[j][i]` is the image of the `i`-th kernel
    /// generator under the automorphism assigned to the `j`-th acting generator.
    Semidirect { kernel: Box<GroupSpec>, acting: Box<GroupSpec>, action: Vec<Vec<Permutation>> },
    /// Imprimitive wreath product `base ≀ top`, base acting on each block.
    Wreath { base: Box<GroupSpec>, top: Box<GroupSpec> },
    Generators { degree: usize, gens: Vec<Permutation> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        self.build_capped(DEFAULT_MAX_GROUP_ORDER)
    }

    pub fn build_capped(&self, cap: usize) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(n) => cyclic(*n, cap),
            GroupSpec::Symmetric(n) => symmetric(*n, cap),
            GroupSpec::Dihedral(n) => dihedral(*n, cap),
            GroupSpec::DirectProduct(a, b) => direct_product(&a.build_capped(cap)?, &b.build_capped(cap)?, cap),
            GroupSpec::Semidirect { kernel, acting, action } => {
                semidirect(&kernel.build_capped(cap)?, &acting.build_capped(cap)?, action, cap)
            }
            GroupSpec::Wreath { base, top } => wreath(&base.build_capped(cap)?, &top.build_capped(cap)?, cap),
            GroupSpec::Generators { degree, gens } => FiniteGroup::from_generators_capped(*degree, gens.clone(), cap),
        }
    }
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidConstruction(format!("{what} needs a positive parameter")))
    } else {
        Ok(())
    }
}

fn n_cycle(n: usize) -> Permutation {
    Permutation::new((0..n as u32).map(|i| (i + 1) % n as u32).collect()).expect("rotation")
}

pub fn cyclic(n: usize, cap: usize) -> Result<FiniteGroup> {
    positive(n, "cyclic")?;
    let gens = if n > 1 { vec![n_cycle(n)] } else { vec![] };
    FiniteGroup::from_generators_capped(n, gens, cap)
}

pub fn symmetric(n: usize, cap: usize) -> Result<FiniteGroup> {
    positive(n, "symmetric")?;
    let mut gens = Vec::new();
    if n > 1 {
        gens.push(Permutation::from_cycles(n, &[&[0, 1]])?);
    }
    if n > 2 {
        gens.push(n_cycle(n));
    }
    FiniteGroup::from_generators_capped(n, gens, cap)
}

pub fn dihedral(n: usize, cap: usize) -> Result<FiniteGroup> {
    positive(n, "dihedral")?;
    match n {
        1 => cyclic(2, cap),
        2 => {
            let a = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]])?;
            let b = Permutation::from_cycles(4, &[&[0, 2], &[1, 3]])?;
            FiniteGroup::from_generators_capped(4, vec![a, b], cap)
        }
        _ => {
            let refl = Permutation::new((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())?;
            FiniteGroup::from_generators_capped(n, vec![n_cycle(n), refl], cap)
        }
    }
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let degree = a.degree() + b.degree();
    let gens = a
        .generators()
        .iter()
        .map(|g| g.shifted(0, degree))
        .chain(b.generators().iter().map(|g| g.shifted(a.degree(), degree)))
        .collect();
    FiniteGroup::from_generators_capped(degree, gens, cap)
}

/// Realized on `K ⊔ A`: `(k, a)` sends `x ∈ K` to `k·α_a(x)` and `b ∈ A` to `a·b`,
/// which is faithful for any action.
pub fn semidirect(
    kernel: &FiniteGroup,
    acting: &FiniteGroup,
    action: &[Vec<Permutation>],
    cap: usize,
) -> Result<FiniteGroup> {
    if action.len() != acting.generators().len() {
        return Err(Error::InvalidAction(format!(
            "{} automorphisms given for {} acting generators",
            action.len(),
            acting.generators().len()
        )));
    }
    let k_arc = Arc::new(kernel.clone());
    let mut autos = Vec::with_capacity(action.len());
    for (j, images) in action.iter().enumerate() {
        let f = Epimorphism::from_generator_images(k_arc.clone(), k_arc.clone(), images).map_err(|e| {
            Error::InvalidAction(format!("assignment for acting generator {j} is not an automorphism: {e}"))
        })?;
        autos.push(f);
    }
    let nk = kernel.order();
    let na = acting.order();
    let degree = nk + na;
    let mut gens = Vec::new();
    for &k in kernel.generator_indices() {
        let images = (0..nk)
            .map(|x| kernel.mul(k, x) as u32)
            .chain((0..na).map(|b| (nk + b) as u32))
            .collect();
        gens.push(Permutation::new(images)?);
    }
    for (j, &a) in acting.generator_indices().iter().enumerate() {
        let images = (0..nk)
            .map(|x| autos[j].apply(x) as u32)
            .chain((0..na).map(|b| (nk + acting.mul(a, b)) as u32))
            .collect();
        gens.push(Permutation::new(images)?);
    }
    let g = FiniteGroup::from_generators_capped(degree, gens, cap)?;
    if g.order() != nk * na {
        return Err(Error::InvalidAction(format!(
            "assignment does not extend to a homomorphism into Aut(K): closure has order {} instead of {}",
            g.order(),
            nk * na
        )));
    }
    Ok(g)
}

pub fn wreath(base: &FiniteGroup, top: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let m = base.degree();
    let t = top.degree();
    let degree = m * t;
    let mut gens: Vec<Permutation> = base.generators().iter().map(|g| g.shifted(0, degree)).collect();
    for tau in top.generators() {
        let images = (0..degree).map(|p| (tau.apply((p / m) as u32) as usize * m + p % m) as u32).collect();
        gens.push(Permutation::new(images)?);
    }
    FiniteGroup::from_generators_capped(degree, gens, cap)
}
