//! Measures recomputed without the subgroup lattice: every tuple's closure is
//! built directly and compared to every conjugate of the target.

use std::collections::HashSet;

use galmeasure_core::catalog::scenario_spec;
use galmeasure_core::{measure_at, measure_split_at, validate_scenario, ElementSet, FiniteGroup, Limits};
use num_bigint::BigInt;
use num_rational::BigRational;

fn closure(g: &FiniteGroup, gens: &[usize]) -> ElementSet {
    let mut set = ElementSet::new(g.order());
    set.insert(g.identity());
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

fn naive_measure(id: &str, target: &str, e: usize) -> BigRational {
    let spec = scenario_spec(id).unwrap();
    let g = spec.group.build().unwrap();
    let idx = |ps: &[galmeasure_core::Permutation]| ps.iter().map(|p| g.index_of(p).unwrap()).collect::<Vec<_>>();
    let g0 = closure(&g, &idx(&spec.g0));
    let t = spec.targets.iter().find(|t| t.name == target).unwrap();
    let h = closure(&g, &idx(&t.generators));
    let conjugates: HashSet<ElementSet> = (0..g.order()).map(|x| g.conjugate_set(&h, x)).collect();
    let n = g.order();
    let (mut hits, mut regular) = (0u64, 0u64);
    let mut tuple = vec![0usize; e];
    loop {
        let d = closure(&g, &tuple);
        let product: HashSet<usize> = d.iter().flat_map(|a| g0.iter().map(move |b| (a, b))).map(|(a, b)| g.mul(a, b)).collect();
        if product.len() == n {
            regular += 1;
            if conjugates.contains(&d) {
                hits += 1;
            }
        }
        let mut i = 0;
        while i < e {
            tuple[i] += 1;
            if tuple[i] < n {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
        if i == e {
            break;
        }
    }
    BigRational::new(BigInt::from(hits), BigInt::from(regular))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Values produced by `naive_measure` and frozen here.
const FROZEN: &[(&str, &str, usize, i64, i64)] = &[
    ("squares", "trivial", 2, 1, 4),
    ("squares", "full", 2, 3, 4),
    ("fifth-root", "image", 1, 1, 1),
    ("fifth-root", "image", 2, 1, 5),
    ("fifth-root", "full", 2, 4, 5),
    ("s3-over-a3", "transposition", 1, 1, 1),
    ("s3-over-a3", "transposition", 2, 1, 3),
    ("s3-over-a3", "transposition", 3, 1, 9),
    ("d4-over-c4", "vertex-reflection", 1, 1, 2),
    ("d4-over-c4", "vertex-reflection", 2, 1, 8),
    ("d4-over-c4", "full", 2, 1, 2),
    ("c2xc4-pro2", "c4", 2, 1, 4),
    ("c2xc4-pro2", "twisted-c4", 2, 1, 4),
    ("c2xc4-pro2", "full", 2, 1, 2),
    ("wreath-5-2", "top", 1, 1, 5),
    ("wreath-5-2", "top", 2, 1, 125),
    ("s5-transposition", "transposition", 1, 1, 12),
    ("s5-transposition", "transposition", 2, 1, 480),
];

#[test]
fn oracle_reproduces_frozen_values() {
    for &(id, target, e, n, d) in FROZEN {
        assert_eq!(naive_measure(id, target, e), q(n, d), "{id} {target} e={e}");
    }
}

#[test]
fn library_matches_frozen_values() {
    for &(id, target, e, n, d) in FROZEN {
        let s = validate_scenario(&scenario_spec(id).unwrap(), &Limits::default()).unwrap();
        let r = measure_at(&s, e).unwrap();
        assert_eq!(r.value(target).unwrap(), &q(n, d), "{id} {target} e={e}");
        if s.is_split() {
            let r = measure_split_at(&s, e, None).unwrap();
            assert_eq!(r.value(target).unwrap(), &q(n, d), "split {id} {target} e={e}");
        }
    }
}
