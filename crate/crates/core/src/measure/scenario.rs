use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::construct::GroupSpec;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::SubgroupLattice;
use crate::limits::Limits;
use crate::perm::Permutation;

/// A named target subgroup, given by generators inside the scenario group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetSpec {
    pub name: String,
    pub generators: Vec<Permutation>,
}

/// Unvalidated scenario data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ScenarioSpec {
    #[serde(default)]
    pub name: String,
    pub group: GroupSpec,
    /// Generators of `G0`.
    pub g0: Vec<Permutation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement: Option<Vec<Permutation>>,
    pub targets: Vec<TargetSpec>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub metadata: String,
}

impl ScenarioSpec {
    /// Same scenario with every point of the domain renamed by `relabel`.
    pub fn relabeled(&self, relabel: &Permutation, limits: &Limits) -> Result<ScenarioSpec> {
        let g = self.group.build_capped(limits.max_group_order)?;
        if relabel.degree() != g.degree() {
            return Err(Error::InvalidPermutation(format!(
                "relabeling has degree {} but the group acts on {} points",
                relabel.degree(),
                g.degree()
            )));
        }
        let conj = |ps: &[Permutation]| ps.iter().map(|p| p.conjugated_by(relabel)).collect::<Vec<_>>();
        Ok(ScenarioSpec {
            name: self.name.clone(),
            group: GroupSpec::Generators { degree: g.degree(), gens: conj(g.generators()) },
            g0: conj(&self.g0),
            complement: self.complement.as_deref().map(conj),
            targets: self
                .targets
                .iter()
                .map(|t| TargetSpec { name: t.name.clone(), generators: conj(&t.generators) })
                .collect(),
            metadata: self.metadata.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub name: String,
    /// Lattice node of the representative.
    pub node: usize,
    /// Conjugacy class id in the lattice.
    pub class: usize,
}

/// A validated scenario: `G`, normal `G0`, optional complement, regular targets.
#[derive(Clone)]
pub struct CoverScenario {
    name: String,
    group: Arc<FiniteGroup>,
    lattice: Arc<SubgroupLattice>,
    g0: Subgroup,
    complement: Option<Subgroup>,
    targets: Vec<Target>,
    /// Per lattice class: `D·G0 = G`.
    regular: Vec<bool>,
    limits: Limits,
}

impl std::fmt::Debug for CoverScenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoverScenario")
            .field("name", &self.name)
            .field("order", &self.group.order())
            .field("g0_order", &self.g0.order())
            .field("split", &self.complement.is_some())
            .field("targets", &self.targets)
            .finish()
    }
}

fn subgroup_from_perms(g: &FiniteGroup, perms: &[Permutation], what: &str) -> Result<Subgroup> {
    let mut idx = Vec::with_capacity(perms.len());
    for p in perms {
        let i = g.index_of(p).ok_or_else(|| Error::NotMember(format!("{what}: {p}")))?;
        idx.push(i);
    }
    g.subgroup_generated(&idx)
}

/// Builds `G`, its lattice and every subgroup, then checks the invariants.
pub fn validate_scenario(spec: &ScenarioSpec, limits: &Limits) -> Result<CoverScenario> {
    let g = Arc::new(spec.group.build_capped(limits.max_group_order)?);
    let lattice = Arc::new(SubgroupLattice::with_cap(g.clone(), limits.max_subgroups)?);
    let g0 = subgroup_from_perms(&g, &spec.g0, "G0 generator")?;
    let complement = match &spec.complement {
        Some(c) => Some(subgroup_from_perms(&g, c, "complement generator")?),
        None => None,
    };
    let mut targets = Vec::with_capacity(spec.targets.len());
    for t in &spec.targets {
        let h = subgroup_from_perms(&g, &t.generators, &format!("target `{}` generator", t.name))?;
        targets.push((t.name.clone(), lattice.node_of_subgroup(&h)));
    }
    CoverScenario::from_parts(spec.name.clone(), lattice, g0, complement, targets, *limits)
}

impl CoverScenario {
    /// Validates a scenario assembled from lattice nodes.
    pub fn from_parts(
        name: String,
        lattice: Arc<SubgroupLattice>,
        g0: Subgroup,
        complement: Option<Subgroup>,
        targets: Vec<(String, usize)>,
        limits: Limits,
    ) -> Result<Self> {
        let group = lattice.group().clone();
        let n = group.order();
        if !group.is_normal(&g0) {
            return Err(Error::NotNormal(format!("G0 of order {} in G of order {n}", g0.order())));
        }
        if let Some(c) = &complement {
            if !group.intersection(c, &g0).is_trivial() {
                return Err(Error::BadComplement("C ∩ G0 is not trivial".into()));
            }
            if c.order() * g0.order() != n {
                return Err(Error::BadComplement(format!(
                    "|C|·|G0| = {}·{} differs from |G| = {n}",
                    c.order(),
                    g0.order()
                )));
            }
        }
        if targets.is_empty() {
            return Err(Error::NoTargets);
        }
        let regular = lattice
            .classes()
            .iter()
            .map(|c| group.product_size(lattice.node(c.representative), &g0) == n)
            .collect::<Vec<bool>>();
        let mut out: Vec<Target> = Vec::with_capacity(targets.len());
        for (name, node) in targets {
            let class = lattice.class_of(node);
            if !regular[class] {
                return Err(Error::NotRegularTarget(name));
            }
            if let Some(prev) = out.iter().find(|t| t.class == class) {
                return Err(Error::DuplicateTarget(prev.name.clone(), name));
            }
            out.push(Target { name, node, class });
        }
        Ok(CoverScenario { name, group, lattice, g0, complement, targets: out, regular, limits })
    }

    /// The same scenario with every regular class as a target, named
    /// `order-<|D|>#<class id>`.
    pub fn with_all_regular_targets(&self) -> CoverScenario {
        let targets = self
            .lattice
            .classes()
            .iter()
            .filter(|c| self.regular[c.id])
            .map(|c| Target { name: format!("order-{}#{}", c.order, c.id), node: c.representative, class: c.id })
            .collect();
        CoverScenario { targets, ..self.clone() }
    }

    /// The same scenario with a different target list.
    pub fn with_targets(&self, targets: Vec<(String, usize)>) -> Result<CoverScenario> {
        CoverScenario::from_parts(
            self.name.clone(),
            self.lattice.clone(),
            self.g0.clone(),
            self.complement.clone(),
            targets,
            self.limits,
        )
    }

    /// Restricts the scenario to the subgroup at lattice node `sub`: the new
    /// group is that subgroup, `G0' = sub ∩ G0`, and targets are the given
    /// nodes of `G` (each must lie in `sub`). No complement is carried over.
    pub fn restricted_to(&self, name: String, sub: usize, targets: &[(String, usize)]) -> Result<CoverScenario> {
        let s = self.lattice.node(sub);
        let g = &self.group;
        let sg = Arc::new(g.subgroup_as_group(s));
        let lattice = Arc::new(SubgroupLattice::with_cap(sg.clone(), self.limits.max_subgroups)?);
        let map_sub = |h: &Subgroup| -> Result<Subgroup> {
            let mut idx = Vec::with_capacity(h.generators().len());
            for &x in h.generators() {
                let i = s
                    .members()
                    .binary_search(&x)
                    .map_err(|_| Error::NotMember(format!("{} lies outside the subgroup", g.element(x))))?;
                idx.push(i);
            }
            Ok(sg.closure(&idx))
        };
        let inter = g.intersection(s, &self.g0);
        let g0 = map_sub(&inter)?;
        let mut mapped = Vec::with_capacity(targets.len());
        for (tname, node) in targets {
            let h = map_sub(self.lattice.node(*node))?;
            mapped.push((tname.clone(), lattice.node_of_subgroup(&h)));
        }
        CoverScenario::from_parts(name, lattice, g0, None, mapped, self.limits)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn g0(&self) -> &Subgroup {
        &self.g0
    }

    pub fn g0_node(&self) -> usize {
        self.lattice.node_of_subgroup(&self.g0)
    }

    pub fn complement(&self) -> Option<&Subgroup> {
        self.complement.as_ref()
    }

    pub fn is_split(&self) -> bool {
        self.complement.is_some()
    }

    pub fn targets(&self) -> &[Target] {
        &self.targets
    }

    pub fn target(&self, name: &str) -> Result<&Target> {
        self.targets.iter().find(|t| t.name == name).ok_or_else(|| Error::UnknownTarget(name.to_string()))
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn set_limits(&mut self, limits: Limits) {
        self.limits = limits;
    }

    /// `|Q| = [G : G0]`.
    pub fn quotient_order(&self) -> usize {
        self.group.order() / self.g0.order()
    }

    pub fn is_regular_class(&self, class: usize) -> bool {
        self.regular[class]
    }

    pub fn is_regular_node(&self, node: usize) -> bool {
        self.regular[self.lattice.class_of(node)]
    }

    pub fn regular_classes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.regular.len()).filter(|&c| self.regular[c])
    }
}
