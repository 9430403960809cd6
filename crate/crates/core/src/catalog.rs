//! Worked examples as scenario and tower data.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::construct::GroupSpec;
use crate::error::Result;
use crate::group::{quotient_map, Epimorphism};
use crate::limits::Limits;
use crate::measure::{validate_scenario, validate_tower, ScenarioSpec, TargetSpec, TowerSpec};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
#[allow(clippy::large_enum_variant)]
pub enum CatalogEntry {
    Scenario(ScenarioSpec),
    Tower(TowerSpec),
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        match self {
            CatalogEntry::Scenario(s) => &s.name,
            CatalogEntry::Tower(t) => &t.name,
        }
    }
}

pub const SCENARIO_IDS: &[&str] = &[
    "squares",
    "fifth-root",
    "s5-transposition",
    "wreath-5-2",
    "s3-over-a3",
    "d4-over-c4",
    "c4-over-c2",
    "c2xc4-pro2",
];

pub const TOWER_IDS: &[&str] = &[
    "c4-over-c2-tower",
    "c8-over-c4-tower",
    "c4xc2-over-c2xc2-tower",
    "c4xc4-over-c2xc2-tower",
    "s3-over-c2-tower",
    "fifth-root-over-c4-tower",
    "s3-identity-tower",
];

fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
    Permutation::from_cycles(degree, cycles).expect("catalog permutation")
}

fn id(degree: usize) -> Permutation {
    Permutation::identity(degree)
}

fn target(name: &str, generators: Vec<Permutation>) -> TargetSpec {
    TargetSpec { name: name.to_string(), generators }
}

fn scenario(
    name: &str,
    group: GroupSpec,
    g0: Vec<Permutation>,
    complement: Option<Vec<Permutation>>,
    targets: Vec<TargetSpec>,
    description: &str,
) -> ScenarioSpec {
    ScenarioSpec {
        name: name.to_string(),
        group,
        g0,
        complement,
        targets,
        metadata: description.to_string(),
    }
}

fn frobenius20() -> GroupSpec {
    GroupSpec::Generators { degree: 5, gens: vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[1, 2, 4, 3]])] }
}

fn c(n: usize) -> Box<GroupSpec> {
    Box::new(GroupSpec::Cyclic(n))
}

pub fn scenario_spec(id_: &str) -> Option<ScenarioSpec> {
    let s = match id_ {
        "squares" => {
            let t = cyc(2, &[&[0, 1]]);
            scenario(
                "squares",
                GroupSpec::Cyclic(2),
                vec![t.clone()],
                Some(vec![]),
                vec![target("trivial", vec![]), target("full", vec![t])],
                "L = k(sqrt a) over k(a); the trivial target is the set of squares",
            )
        }
        "fifth-root" => {
            let r = cyc(5, &[&[0, 1, 2, 3, 4]]);
            let s = cyc(5, &[&[1, 2, 4, 3]]);
            scenario(
                "fifth-root",
                frobenius20(),
                vec![r.clone()],
                Some(vec![s.clone()]),
                vec![target("image", vec![s.clone()]), target("full", vec![r, s])],
                "splitting field of x^5 - a over k(a) with k free of 5th roots of unity; image of x -> x^5 on G_m",
            )
        }
        "s5-transposition" => {
            let t = cyc(5, &[&[0, 1]]);
            let f = cyc(5, &[&[0, 1, 2, 3, 4]]);
            scenario(
                "s5-transposition",
                GroupSpec::Symmetric(5),
                vec![t.clone(), f.clone()],
                Some(vec![]),
                vec![target("transposition", vec![t.clone()]), target("full", vec![t, f])],
                "generic quintic with geometric group S5; the target is the class of a transposition",
            )
        }
        "wreath-5-2" => {
            let a = cyc(10, &[&[0, 1, 2, 3, 4]]);
            let b = cyc(10, &[&[5, 6, 7, 8, 9]]);
            let swap = cyc(10, &[&[0, 5], &[1, 6], &[2, 7], &[3, 8], &[4, 9]]);
            scenario(
                "wreath-5-2",
                GroupSpec::Wreath { base: c(5), top: c(2) },
                vec![a.clone(), b],
                Some(vec![swap.clone()]),
                vec![target("top", vec![swap.clone()]), target("full", vec![a, swap])],
                "Galois group Z/5 wreath Z/2 with the base as geometric part",
            )
        }
        "s3-over-a3" => {
            let t = cyc(3, &[&[0, 1]]);
            let r = cyc(3, &[&[0, 1, 2]]);
            scenario(
                "s3-over-a3",
                GroupSpec::Symmetric(3),
                vec![r.clone()],
                Some(vec![t.clone()]),
                vec![target("transposition", vec![t.clone()]), target("full", vec![t, r])],
                "cubic with geometric group A3 and constant field extension of degree 2",
            )
        }
        "d4-over-c4" => {
            let r = cyc(4, &[&[0, 1, 2, 3]]);
            let s = cyc(4, &[&[1, 3]]);
            let s2 = cyc(4, &[&[0, 1], &[2, 3]]);
            scenario(
                "d4-over-c4",
                GroupSpec::Dihedral(4),
                vec![r.clone()],
                Some(vec![s.clone()]),
                vec![
                    target("vertex-reflection", vec![s.clone()]),
                    target("edge-reflection", vec![s2]),
                    target("full", vec![r, s]),
                ],
                "dihedral group of order 8 over its rotation subgroup",
            )
        }
        "c4-over-c2" => {
            let g = cyc(4, &[&[0, 1, 2, 3]]);
            scenario(
                "c4-over-c2",
                GroupSpec::Cyclic(4),
                vec![g.compose(&g)],
                None,
                vec![target("full", vec![g])],
                "cyclic quartic whose quadratic subfield is a constant extension; not split",
            )
        }
        "c2xc4-pro2" => {
            let a = cyc(6, &[&[0, 1]]);
            let b = cyc(6, &[&[2, 3, 4, 5]]);
            let b2 = b.compose(&b);
            scenario(
                "c2xc4-pro2",
                GroupSpec::DirectProduct(c(2), c(4)),
                vec![a.clone(), b2],
                None,
                vec![
                    target("c4", vec![b.clone()]),
                    target("twisted-c4", vec![a.compose(&b)]),
                    target("full", vec![a, b]),
                ],
                "2-group C2 x C4 over C2 x C2; not split",
            )
        }
        _ => return None,
    };
    Some(s)
}

fn tower(name: &str, upper: ScenarioSpec, lower: ScenarioSpec, restriction: Vec<Permutation>, d: &str) -> TowerSpec {
    TowerSpec { name: name.to_string(), upper, lower, restriction, metadata: d.to_string() }
}

fn cyclic_total(n: usize) -> ScenarioSpec {
    let g = Permutation::new((0..n as u32).map(|i| (i + 1) % n as u32).collect()).expect("rotation");
    scenario(
        &format!("c{n}"),
        GroupSpec::Cyclic(n),
        vec![g.clone()],
        Some(vec![]),
        vec![target("trivial", vec![]), target("full", vec![g])],
        "",
    )
}

pub fn tower_spec(id_: &str) -> Option<TowerSpec> {
    let t = match id_ {
        "c4-over-c2-tower" => tower(
            "c4-over-c2-tower",
            cyclic_total(4),
            cyclic_total(2),
            vec![cyc(2, &[&[0, 1]])],
            "C4 over C2, both purely geometric",
        ),
        "c8-over-c4-tower" => tower(
            "c8-over-c4-tower",
            cyclic_total(8),
            cyclic_total(4),
            vec![cyc(4, &[&[0, 1, 2, 3]])],
            "C8 over C4, both purely geometric",
        ),
        "c4xc2-over-c2xc2-tower" => {
            let a = cyc(6, &[&[0, 1, 2, 3]]);
            let b = cyc(6, &[&[4, 5]]);
            let upper = scenario(
                "c4xc2",
                GroupSpec::DirectProduct(c(4), c(2)),
                vec![b.clone()],
                Some(vec![a.clone()]),
                vec![
                    target("c4", vec![a.clone()]),
                    target("twisted-c4", vec![a.compose(&b)]),
                    target("full", vec![a, b]),
                ],
                "",
            );
            let x = cyc(4, &[&[0, 1]]);
            let y = cyc(4, &[&[2, 3]]);
            let lower = scenario(
                "c2xc2",
                GroupSpec::DirectProduct(c(2), c(2)),
                vec![y.clone()],
                Some(vec![x.clone()]),
                vec![
                    target("c2", vec![x.clone()]),
                    target("diagonal", vec![x.compose(&y)]),
                    target("full", vec![x.clone(), y.clone()]),
                ],
                "",
            );
            tower("c4xc2-over-c2xc2-tower", upper, lower, vec![x, y], "constant parts C4 over C2, trivial kernel in G0")
        }
        "c4xc4-over-c2xc2-tower" => {
            let a = cyc(8, &[&[0, 1, 2, 3]]);
            let b = cyc(8, &[&[4, 5, 6, 7]]);
            let upper = scenario(
                "c4xc4",
                GroupSpec::DirectProduct(c(4), c(4)),
                vec![b.clone()],
                Some(vec![a.clone()]),
                vec![target("c4", vec![a.clone()]), target("full", vec![a, b])],
                "",
            );
            let x = cyc(4, &[&[0, 1]]);
            let y = cyc(4, &[&[2, 3]]);
            let lower = scenario(
                "c2xc2",
                GroupSpec::DirectProduct(c(2), c(2)),
                vec![y.clone()],
                Some(vec![x.clone()]),
                vec![target("c2", vec![x.clone()]), target("full", vec![x.clone(), y.clone()])],
                "",
            );
            tower("c4xc4-over-c2xc2-tower", upper, lower, vec![x, y], "constant parts C4 over C2, kernel of order 2 in G0")
        }
        "s3-over-c2-tower" => {
            let s3 = scenario_spec("s3-over-a3").expect("catalog");
            let t = cyc(2, &[&[0, 1]]);
            let lower = scenario(
                "c2-constant",
                GroupSpec::Cyclic(2),
                vec![],
                Some(vec![t.clone()]),
                vec![target("full", vec![t.clone()])],
                "",
            );
            // S3 is generated by (0 1) and (0 1 2) in that order
            tower("s3-over-c2-tower", s3, lower, vec![t, id(2)], "S3 over its constant quotient C2")
        }
        "fifth-root-over-c4-tower" => {
            let f = scenario_spec("fifth-root").expect("catalog");
            let g = cyc(4, &[&[0, 1, 2, 3]]);
            let lower = scenario(
                "c4-constant",
                GroupSpec::Cyclic(4),
                vec![],
                Some(vec![g.clone()]),
                vec![target("full", vec![g.clone()])],
                "",
            );
            tower("fifth-root-over-c4-tower", f, lower, vec![id(4), g], "fifth-root scenario over its constant quotient")
        }
        "s3-identity-tower" => {
            let s3 = scenario_spec("s3-over-a3").expect("catalog");
            tower(
                "s3-identity-tower",
                s3.clone(),
                s3,
                vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])],
                "identity restriction",
            )
        }
        _ => return None,
    };
    Some(t)
}

pub fn entry(id_: &str) -> Option<CatalogEntry> {
    scenario_spec(id_).map(CatalogEntry::Scenario).or_else(|| tower_spec(id_).map(CatalogEntry::Tower))
}

pub fn all_ids() -> impl Iterator<Item = &'static str> {
    SCENARIO_IDS.iter().chain(TOWER_IDS).copied()
}

/// Named epimorphisms for Gaschütz checks: every tower restriction and every
/// nontrivial projection `G → G/G0`.
pub fn epimorphisms(limits: &Limits) -> Result<Vec<(String, Epimorphism)>> {
    let mut out = Vec::new();
    for &t in TOWER_IDS {
        let tw = validate_tower(&tower_spec(t).expect("catalog"), limits)?;
        if tw.upper().group().order() != tw.lower().group().order() {
            out.push((format!("{t}:restriction"), tw.restriction().clone()));
        }
    }
    for &s in SCENARIO_IDS {
        let sc = validate_scenario(&scenario_spec(s).expect("catalog"), limits)?;
        if sc.quotient_order() > 1 && sc.g0().order() > 1 {
            out.push((format!("{s}:quotient"), quotient_map(&Arc::clone(sc.group()), sc.g0())?));
        }
    }
    Ok(out)
}
