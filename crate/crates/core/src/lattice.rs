//! The full subgroup lattice of a finite group, with Möbius values,
//! conjugacy classes of subgroups and normalizers.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{minimal_generators, FiniteGroup, Subgroup};

/// Default cap on the number of subgroups.
pub const DEFAULT_MAX_SUBGROUPS: usize = 100_000;

/// A conjugacy class of subgroups; `representative` is its smallest node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    pub id: usize,
    pub representative: usize,
    pub nodes: Vec<usize>,
    pub order: usize,
}

impl SubgroupClass {
    pub fn size(&self) -> usize {
        self.nodes.len()
    }
}

pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    nodes: Vec<Subgroup>,
    lookup: HashMap<ElementSet, usize>,
    /// `below[h]`: every node contained in `h` (including `h`), ascending.
    below: Vec<Vec<usize>>,
    /// `mobius[h][j] = μ(below[h][j], h)`.
    mobius: Vec<Vec<i64>>,
    class_of: Vec<usize>,
    classes: Vec<SubgroupClass>,
    normalizer_of: Vec<usize>,
}

impl SubgroupLattice {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self> {
        Self::with_cap(group, DEFAULT_MAX_SUBGROUPS)
    }

    /// Enumerates subgroups bottom-up: cyclic subgroups first, then joins of
    /// every known subgroup with every cyclic one until nothing new appears.
    pub fn with_cap(group: Arc<FiniteGroup>, cap: usize) -> Result<Self> {
        let g = group.as_ref();
        let n = g.order();
        let mut found: HashMap<ElementSet, Subgroup> = HashMap::new();
        let mut cyclic_gens: Vec<usize> = Vec::new();
        for x in 0..n {
            let c = g.closure(&[x]);
            if !found.contains_key(c.mask()) {
                cyclic_gens.push(x);
                found.insert(c.mask().clone(), c);
                if found.len() > cap {
                    return Err(Error::LatticeTooLarge { cap });
                }
            }
        }
        let mut queue: Vec<ElementSet> = found.keys().cloned().collect();
        queue.sort();
        let mut i = 0;
        while i < queue.len() {
            let h = found[&queue[i]].clone();
            for &x in &cyclic_gens {
                if h.contains(x) {
                    continue;
                }
                let j = g.extend_closure(&h, &[x]);
                if !found.contains_key(j.mask()) {
                    queue.push(j.mask().clone());
                    found.insert(j.mask().clone(), j);
                    if found.len() > cap {
                        return Err(Error::LatticeTooLarge { cap });
                    }
                }
            }
            i += 1;
        }

        let mut nodes: Vec<Subgroup> = found
            .into_values()
            .map(|s| Subgroup::from_parts(s.mask().clone(), minimal_generators(g, &s)))
            .collect();
        nodes.sort_by(|a, b| a.members().cmp(b.members()));
        let lookup: HashMap<ElementSet, usize> =
            nodes.iter().enumerate().map(|(i, s)| (s.mask().clone(), i)).collect();

        let count = nodes.len();
        let mut below = vec![Vec::new(); count];
        let mut above = vec![Vec::new(); count];
        for h in 0..count {
            for k in 0..count {
                let (hs, ks) = (&nodes[h], &nodes[k]);
                if hs.order() % ks.order() == 0 && ks.mask().is_subset(hs.mask()) {
                    below[h].push(k);
                    above[k].push(h);
                }
            }
        }

        // μ(H,H) = 1, μ(K,H) = -Σ_{K < D ≤ H} μ(D,H), processed from large K to small
        let mut mobius = vec![Vec::new(); count];
        for h in 0..count {
            let mut local: HashMap<usize, i64> = HashMap::with_capacity(below[h].len());
            let mut order: Vec<usize> = below[h].clone();
            order.sort_by_key(|&k| std::cmp::Reverse(nodes[k].order()));
            for &k in &order {
                if k == h {
                    local.insert(k, 1);
                    continue;
                }
                let s: i64 = above[k]
                    .iter()
                    .filter(|&&d| d != k)
                    .filter_map(|d| local.get(d))
                    .sum();
                local.insert(k, -s);
            }
            mobius[h] = below[h].iter().map(|k| local[k]).collect();
        }

        let mut class_of = vec![usize::MAX; count];
        let mut classes = Vec::new();
        for start in 0..count {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut orbit = vec![start];
            class_of[start] = id;
            let mut i = 0;
            while i < orbit.len() {
                let mask = nodes[orbit[i]].mask().clone();
                for &s in g.generator_indices() {
                    let c = lookup[&g.conjugate_set(&mask, s)];
                    if class_of[c] == usize::MAX {
                        class_of[c] = id;
                        orbit.push(c);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            classes.push(SubgroupClass { id, representative: start, order: nodes[start].order(), nodes: orbit });
        }

        let normalizer_of = nodes.iter().map(|s| lookup[g.normalizer(s).mask()]).collect();

        Ok(SubgroupLattice { group, nodes, lookup, below, mobius, class_of, classes, normalizer_of })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &Subgroup {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[Subgroup] {
        &self.nodes
    }

    pub fn node_of(&self, set: &ElementSet) -> Option<usize> {
        self.lookup.get(set).copied()
    }

    /// Node of a subgroup; panics if `h` is not a subgroup of this lattice's group.
    pub fn node_of_subgroup(&self, h: &Subgroup) -> usize {
        self.lookup[h.mask()]
    }

    pub fn trivial_node(&self) -> usize {
        0
    }

    pub fn whole_node(&self) -> usize {
        self.lookup[&ElementSet::full(self.group.order())]
    }

    pub fn below(&self, h: usize) -> &[usize] {
        &self.below[h]
    }

    /// `(K, μ(K, H))` for every `K ≤ H`.
    pub fn mobius_below(&self, h: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.below[h].iter().copied().zip(self.mobius[h].iter().copied())
    }

    /// `μ(K, H)`, or 0 when `K` is not contained in `H`.
    pub fn mobius(&self, k: usize, h: usize) -> i64 {
        match self.below[h].binary_search(&k) {
            Ok(j) => self.mobius[h][j],
            Err(_) => 0,
        }
    }

    pub fn contains(&self, k: usize, h: usize) -> bool {
        self.below[h].binary_search(&k).is_ok()
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class_of(&self, node: usize) -> usize {
        self.class_of[node]
    }

    pub fn class(&self, id: usize) -> &SubgroupClass {
        &self.classes[id]
    }

    pub fn normalizer_of(&self, node: usize) -> usize {
        self.normalizer_of[node]
    }

    /// Memoized `⟨H, g⟩` on node ids.
    pub fn join_cache(&self) -> JoinCache<'_> {
        JoinCache { lattice: self, memo: HashMap::new() }
    }
}

pub struct JoinCache<'a> {
    lattice: &'a SubgroupLattice,
    memo: HashMap<(u32, u32), u32>,
}

impl JoinCache<'_> {
    pub fn join(&mut self, node: usize, g: usize) -> usize {
        let lattice = self.lattice;
        if lattice.nodes[node].contains(g) {
            return node;
        }
        *self.memo.entry((node as u32, g as u32)).or_insert_with(|| {
            let j = lattice.group.extend_closure(&lattice.nodes[node], &[g]);
            lattice.lookup[j.mask()] as u32
        }) as usize
    }

    /// Node generated by a tuple.
    pub fn generated(&mut self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |node, &g| self.join(node, g))
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The largest power of `p` dividing `n`.
pub fn p_part(n: usize, p: u64) -> usize {
    let p = p as usize;
    let mut m = n;
    let mut part = 1;
    while m.is_multiple_of(p) {
        m /= p;
        part *= p;
    }
    part
}

pub fn is_p_power(n: usize, p: u64) -> bool {
    p_part(n, p) == n
}

/// First node (in canonical order) whose order is the full `p`-part of `|G|`.
pub fn sylow_subgroup(lattice: &SubgroupLattice, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = p_part(lattice.group().order(), p);
    Ok((0..lattice.len()).find(|&i| lattice.node(i).order() == target).expect("Sylow subgroups exist"))
}

/// All `p`-Sylow nodes, in canonical order.
pub fn sylow_subgroups(lattice: &SubgroupLattice, p: u64) -> Result<Vec<usize>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = p_part(lattice.group().order(), p);
    Ok((0..lattice.len()).filter(|&i| lattice.node(i).order() == target).collect())
}
