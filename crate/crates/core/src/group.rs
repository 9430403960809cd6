//! Finite permutation groups with a fully materialized element table.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on |G|.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 2000;

/// A finite permutation group. Elements are sorted lexicographically by image
/// sequence, so index 0 is always the identity.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteGroup {
    /// The closure of `gens` under composition, capped at [`DEFAULT_MAX_GROUP_ORDER`].
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::from_generators_capped(degree, gens, DEFAULT_MAX_GROUP_ORDER)
    }

    pub fn from_generators_capped(degree: usize, gens: Vec<Permutation>, cap: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut list = vec![id];
        let mut i = 0;
        while i < list.len() {
            for g in &gens {
                let p = list[i].compose(g);
                if !seen.contains(&p) {
                    if list.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    seen.insert(p.clone());
                    list.push(p);
                }
            }
            i += 1;
        }
        list.sort();
        Ok(Self::from_sorted_elements(degree, gens, list))
    }

    fn from_sorted_elements(degree: usize, generators: Vec<Permutation>, elements: Vec<Permutation>) -> Self {
        let n = elements.len();
        let index: HashMap<Permutation, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut mul = vec![0u32; n * n];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                mul[a * n + b] = index[&pa.compose(pb)] as u32;
            }
        }
        let inv = elements.iter().map(|p| index[&p.inverse()] as u32).collect();
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        FiniteGroup { degree, generators, generator_indices, elements, index, mul, inv }
    }

    /// Realizes a subgroup as a group in its own right on the same domain.
    /// Element `i` of the result is `h.members()[i]` of `self`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        let gens = h.generators().iter().map(|&g| self.elements[g].clone()).collect();
        let elements = h.members().iter().map(|&g| self.elements[g].clone()).collect();
        Self::from_sorted_elements(self.degree, gens, elements)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.order() {
            Ok(())
        } else {
            Err(Error::BadIndex { index: i, order: self.order() })
        }
    }

    /// Index of `a ∘ b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g a g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Number of elements of each order; used as a cheap isomorphism invariant.
    pub fn order_census(&self) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for a in 0..self.order() {
            *census.entry(self.element_order(a)).or_insert(0) += 1;
        }
        census
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_parts(ElementSet::full(self.order()), self.generator_indices.clone())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_parts(ElementSet::from_indices(self.order(), [0]), Vec::new())
    }

    /// Least subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Result<Subgroup> {
        for &g in gens {
            self.check_index(g)?;
        }
        Ok(self.closure(gens))
    }

    pub(crate) fn closure(&self, gens: &[usize]) -> Subgroup {
        self.extend_closure(&self.trivial(), gens)
    }

    /// `⟨H, extra⟩`, grown from the members of `h`.
    pub fn extend_closure(&self, h: &Subgroup, extra: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = h.generators().to_vec();
        for &g in extra {
            if g != 0 && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let mut mask = h.mask().clone();
        let mut list: Vec<usize> = h.members().to_vec();
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if mask.insert(y) {
                    list.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_parts(mask, gens)
    }

    /// Closure of an arbitrary element set, e.g. the image of a homomorphism.
    pub fn subgroup_from_set(&self, set: &ElementSet) -> Subgroup {
        let gens: Vec<usize> = set.iter().collect();
        self.closure(&gens)
    }

    pub fn conjugate_set(&self, h: &ElementSet, g: usize) -> ElementSet {
        ElementSet::from_indices(self.order(), h.iter().map(|a| self.conj(g, a)))
    }

    pub fn is_subgroup_of(&self, h: &Subgroup, k: &Subgroup) -> bool {
        h.mask().is_subset(k.mask())
    }

    /// True iff `g H g⁻¹ = H` for all `g`; checked on generators of both.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generator_indices.iter().all(|&g| self.normalizes(g, h))
    }

    /// Whether `h` is normalized by every element of `by`.
    pub fn is_normalized_by(&self, h: &Subgroup, by: &Subgroup) -> bool {
        by.generators().iter().all(|&g| self.normalizes(g, h))
    }

    pub fn normalizes(&self, g: usize, h: &Subgroup) -> bool {
        h.generators().iter().all(|&a| h.contains(self.conj(g, a)))
    }

    /// `N_G(H) = {g : g H g⁻¹ = H}`.
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let mask = ElementSet::from_indices(self.order(), (0..self.order()).filter(|&g| self.normalizes(g, h)));
        let mut s = Subgroup::from_parts(mask, Vec::new());
        s.generators = minimal_generators(self, &s);
        s
    }

    pub fn intersection(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let set = h.mask().intersection(k.mask());
        let mut s = self.subgroup_from_set(&set);
        s.generators = minimal_generators(self, &s);
        s
    }

    /// `|HK| = |H||K| / |H ∩ K|`; equals the order of `⟨H, K⟩` when one normalizes the other.
    pub fn product_size(&self, h: &Subgroup, k: &Subgroup) -> usize {
        h.order() * k.order() / h.mask().intersection(k.mask()).len()
    }

    /// Whether the tuple generates exactly `target`.
    pub fn generates(&self, tuple: &[usize], target: &Subgroup) -> bool {
        tuple.iter().all(|&t| target.contains(t)) && self.closure(tuple).order() == target.order()
    }
}

/// A short generating set picked greedily in element order.
pub(crate) fn minimal_generators(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let mut cur = g.trivial();
    let mut gens = Vec::new();
    for &x in h.members() {
        if cur.order() == h.order() {
            break;
        }
        if !cur.contains(x) {
            cur = g.extend_closure(&cur, &[x]);
            gens.push(x);
        }
    }
    gens
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

/// A subgroup of some parent group, stored as a set of parent element indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    mask: ElementSet,
    members: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_parts(mask: ElementSet, generators: Vec<usize>) -> Self {
        let members = mask.iter().collect();
        Subgroup { mask, members, generators }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Sorted parent indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn mask(&self) -> &ElementSet {
        &self.mask
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mask.hash(state)
    }
}

/// A surjective homomorphism between finite groups, tabulated on source indices.
#[derive(Clone, Debug)]
pub struct Epimorphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl Epimorphism {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::NotHomomorphism(format!(
                "map has {} entries for a source of order {}",
                map.len(),
                source.order()
            )));
        }
        for &y in &map {
            target.check_index(y)?;
        }
        for &s in source.generator_indices() {
            for x in 0..source.order() {
                if map[source.mul(x, s)] != target.mul(map[x], map[s]) {
                    return Err(Error::NotHomomorphism("map does not respect composition".into()));
                }
            }
        }
        if map[0] != 0 {
            return Err(Error::NotHomomorphism("identity not sent to identity".into()));
        }
        let image = ElementSet::from_indices(target.order(), map.iter().copied());
        if image.len() != target.order() {
            return Err(Error::NotHomomorphism(format!(
                "not surjective: image has {} of {} elements",
                image.len(),
                target.order()
            )));
        }
        Ok(Epimorphism { source, target, map })
    }

    /// Extends an assignment on the source's generators to the whole group.
    pub fn from_generator_images(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: &[Permutation],
    ) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::NotHomomorphism(format!(
                "{} generator images for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        let img: Vec<usize> = images
            .iter()
            .map(|p| target.index_of(p).ok_or_else(|| Error::NotMember(p.to_string())))
            .collect::<Result<_>>()?;
        let mut map = vec![usize::MAX; source.order()];
        map[0] = 0;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (k, &s) in source.generator_indices().iter().enumerate() {
                let y = source.mul(x, s);
                let fy = target.mul(map[x], img[k]);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return Err(Error::NotHomomorphism("generator images violate a relation".into()));
                }
            }
            i += 1;
        }
        Epimorphism::new(source, target, map)
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let map = (0..group.order()).collect();
        Epimorphism { source: group.clone(), target: group, map }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn kernel(&self) -> Subgroup {
        let set = ElementSet::from_indices(self.source.order(), (0..self.source.order()).filter(|&x| self.map[x] == 0));
        let mut k = self.source.subgroup_from_set(&set);
        k.generators = minimal_generators(&self.source, &k);
        k
    }

    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let set = ElementSet::from_indices(self.target.order(), h.members().iter().map(|&x| self.map[x]));
        let mut s = self.target.subgroup_from_set(&set);
        s.generators = minimal_generators(&self.target, &s);
        s
    }

    /// Full preimage of a target subgroup.
    pub fn preimage(&self, h: &Subgroup) -> Subgroup {
        let set = ElementSet::from_indices(
            self.source.order(),
            (0..self.source.order()).filter(|&x| h.contains(self.map[x])),
        );
        let mut s = self.source.subgroup_from_set(&set);
        s.generators = minimal_generators(&self.source, &s);
        s
    }

    /// `fiber[y]` lists the source elements mapping to `y`.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.target.order()];
        for (x, &y) in self.map.iter().enumerate() {
            fibers[y].push(x);
        }
        fibers
    }

    /// `g ↦ other(self(g))`.
    pub fn then(&self, other: &Epimorphism) -> Result<Epimorphism> {
        if other.source.as_ref() != self.target.as_ref() {
            return Err(Error::NotHomomorphism("composition of mismatched maps".into()));
        }
        let map = self.map.iter().map(|&y| other.map[y]).collect();
        Ok(Epimorphism { source: self.source.clone(), target: other.target.clone(), map })
    }
}

/// The natural projection `G → G/N`, with the quotient acting on left cosets.
pub fn quotient_map(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<Epimorphism> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal(format!("subgroup of order {} is not normal", n.order())));
    }
    let order = g.order();
    // coset id of each element, numbered by smallest member
    let mut coset_of = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if coset_of[x] == usize::MAX {
            let id = reps.len();
            reps.push(x);
            for &k in n.members() {
                coset_of[g.mul(x, k)] = id;
            }
        }
    }
    let degree = reps.len();
    let action = |x: usize| -> Permutation {
        let images = reps.iter().map(|&r| coset_of[g.mul(x, r)] as u32).collect();
        Permutation::new(images).expect("left multiplication permutes cosets")
    };
    let gens = g.generator_indices().iter().map(|&s| action(s)).collect();
    let q = Arc::new(FiniteGroup::from_generators_capped(degree, gens, order.max(1))?);
    let map = (0..order)
        .map(|x| q.index_of(&action(x)).expect("image lies in the quotient"))
        .collect();
    Epimorphism::new(g.clone(), q, map)
}
