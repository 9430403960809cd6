//! Measures for fields with free pro-p absolute Galois group, counted inside
//! a p-Sylow subgroup.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::group::Epimorphism;
use crate::lattice::{is_p_power, is_prime, sylow_subgroups};
use crate::measure::{measure_at, verify_refinement, CoverScenario, MeasureReport, RefinementReport, TowerScenario};

/// A Sylow node of `G` and, per target, a node of the target's `G`-class
/// lying inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowChoice {
    pub sylow: usize,
    pub embedded: Vec<usize>,
}

fn check_preconditions(s: &CoverScenario, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = s.quotient_order();
    if !is_p_power(q, p) {
        return Err(Error::QuotientNotPGroup { p, order: q });
    }
    for t in s.targets() {
        if !is_p_power(s.lattice().node(t.node).order(), p) {
            return Err(Error::TargetNotPGroup { p, name: t.name.clone() });
        }
    }
    Ok(())
}

/// Nodes of the `G`-class of `node` contained in the subgroup at `sylow`.
pub fn embeddings(s: &CoverScenario, node: usize, sylow: usize) -> Vec<usize> {
    let lattice = s.lattice();
    lattice
        .class(lattice.class_of(node))
        .nodes
        .iter()
        .copied()
        .filter(|&k| lattice.contains(k, sylow))
        .collect()
}

/// First Sylow in canonical order, first embedded conjugate of each target.
pub fn default_choice(s: &CoverScenario, p: u64) -> Result<SylowChoice> {
    check_preconditions(s, p)?;
    let sylow = sylow_subgroups(s.lattice(), p)?[0];
    let embedded = s.targets().iter().map(|t| embeddings(s, t.node, sylow)[0]).collect();
    Ok(SylowChoice { sylow, embedded })
}

fn check_choice(s: &CoverScenario, p: u64, choice: &SylowChoice) -> Result<()> {
    let lattice = s.lattice();
    if choice.sylow >= lattice.len() || !sylow_subgroups(lattice, p)?.contains(&choice.sylow) {
        return Err(Error::BadChoice(format!("node {} is not a {p}-Sylow subgroup", choice.sylow)));
    }
    if choice.embedded.len() != s.targets().len() {
        return Err(Error::BadChoice(format!(
            "{} embeddings for {} targets",
            choice.embedded.len(),
            s.targets().len()
        )));
    }
    for (t, &h) in s.targets().iter().zip(&choice.embedded) {
        if h >= lattice.len() || lattice.class_of(h) != t.class || !lattice.contains(h, choice.sylow) {
            return Err(Error::BadChoice(format!(
                "node {h} is not a conjugate of `{}` inside the Sylow subgroup",
                t.name
            )));
        }
    }
    Ok(())
}

/// The scenario restricted to the chosen Sylow `S`: group `S`, `G0' = S ∩ G0`,
/// targets the embedded conjugates, compared up to conjugacy in `S`.
pub fn sylow_scenario(s: &CoverScenario, p: u64, choice: &SylowChoice) -> Result<CoverScenario> {
    check_preconditions(s, p)?;
    check_choice(s, p, choice)?;
    let targets: Vec<(String, usize)> =
        s.targets().iter().zip(&choice.embedded).map(|(t, &h)| (t.name.clone(), h)).collect();
    s.restricted_to(format!("{}/sylow-{p}", s.name()), choice.sylow, &targets)
}

/// `|{σ ∈ S^e : ⟨σ⟩ ~_S H′}| / |{σ ∈ S^e : ⟨σ⟩·(S ∩ G0) = S}|`.
pub fn prop_measure_at(s: &CoverScenario, p: u64, e: usize, choice: Option<&SylowChoice>) -> Result<MeasureReport> {
    let choice = match choice {
        Some(c) => c.clone(),
        None => default_choice(s, p)?,
    };
    let sub = sylow_scenario(s, p, &choice)?;
    let mut report = measure_at(&sub, e)?;
    report.scenario = s.name().to_string();
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceValue {
    pub sylow: usize,
    pub embedded: usize,
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetSurvey {
    pub target: String,
    pub values: Vec<ChoiceValue>,
}

impl TargetSurvey {
    pub fn is_invariant(&self) -> bool {
        self.values.windows(2).all(|w| w[0].value == w[1].value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceSurvey {
    pub p: u64,
    pub e: usize,
    pub sylow_count: usize,
    pub targets: Vec<TargetSurvey>,
}

impl ChoiceSurvey {
    pub fn is_invariant(&self) -> bool {
        self.targets.iter().all(TargetSurvey::is_invariant)
    }
}

/// Measures every target under every Sylow subgroup and every embedded
/// conjugate. Each target's value only depends on its own embedding, so
/// targets are varied one at a time.
pub fn survey_choices(s: &CoverScenario, p: u64, e: usize) -> Result<ChoiceSurvey> {
    check_preconditions(s, p)?;
    let sylows = sylow_subgroups(s.lattice(), p)?;
    let mut targets: Vec<TargetSurvey> =
        s.targets().iter().map(|t| TargetSurvey { target: t.name.clone(), values: Vec::new() }).collect();
    for &sylow in &sylows {
        let per_target: Vec<Vec<usize>> = s.targets().iter().map(|t| embeddings(s, t.node, sylow)).collect();
        let base: Vec<usize> = per_target.iter().map(|v| v[0]).collect();
        for (i, options) in per_target.iter().enumerate() {
            for &h in options {
                let mut embedded = base.clone();
                embedded[i] = h;
                let r = prop_measure_at(s, p, e, Some(&SylowChoice { sylow, embedded }))?;
                targets[i].values.push(ChoiceValue { sylow, embedded: h, value: r.entries[i].value.clone() });
            }
        }
    }
    Ok(ChoiceSurvey { p, e, sylow_count: sylows.len(), targets })
}

/// Targets of a level that are `p`-groups, embedded in `sylow`; the Sylow
/// itself when none are.
fn p_targets(s: &CoverScenario, p: u64, sylow: usize) -> Vec<(String, usize)> {
    let mut out: Vec<(String, usize)> = s
        .targets()
        .iter()
        .filter(|t| is_p_power(s.lattice().node(t.node).order(), p))
        .map(|t| (t.name.clone(), embeddings(s, t.node, sylow)[0]))
        .collect();
    if out.is_empty() {
        out.push(("sylow".into(), sylow));
    }
    out
}

/// Refinement check between the Sylow subgroups of both levels: the first
/// upper Sylow and its image, which is a Sylow of the lower group.
pub fn verify_prop_refinement(t: &TowerScenario, p: u64, e: usize) -> Result<RefinementReport> {
    let upper = t.upper();
    let lower = t.lower();
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    for level in [upper, lower] {
        let q = level.quotient_order();
        if !is_p_power(q, p) {
            return Err(Error::QuotientNotPGroup { p, order: q });
        }
    }
    let sm = sylow_subgroups(upper.lattice(), p)?[0];
    let image = t.restriction().image(upper.lattice().node(sm));
    let sl = lower.lattice().node_of_subgroup(&image);

    let up = upper.restricted_to(format!("{}/sylow-{p}", upper.name()), sm, &p_targets(upper, p, sm))?;
    let low = lower.restricted_to(format!("{}/sylow-{p}", lower.name()), sl, &p_targets(lower, p, sl))?;
    let sm_members = upper.lattice().node(sm).members();
    let sl_members = lower.lattice().node(sl).members();
    let map = sm_members
        .iter()
        .map(|&x| sl_members.binary_search(&t.restriction().apply(x)).expect("image lies in the lower Sylow"))
        .collect();
    let r = Epimorphism::new(up.group().clone(), low.group().clone(), map)?;
    let sub = TowerScenario::new(format!("{}/sylow-{p}", t.name()), up, low, r)?;
    verify_refinement(&sub, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{scenario_spec, tower_spec};
    use crate::limits::Limits;
    use crate::measure::{validate_scenario, validate_tower};
    use crate::perm::Permutation;
    use crate::{GroupSpec, ScenarioSpec, TargetSpec};

    fn load(id: &str) -> CoverScenario {
        validate_scenario(&scenario_spec(id).unwrap(), &Limits::default()).unwrap()
    }

    #[test]
    fn p_groups_agree_with_measure_at() {
        for id in ["squares", "d4-over-c4", "c4-over-c2", "c2xc4-pro2"] {
            let s = load(id);
            for e in 1..=3 {
                assert_eq!(
                    prop_measure_at(&s, 2, e, None).unwrap().values(),
                    measure_at(&s, e).unwrap().values(),
                    "{id} e={e}"
                );
            }
        }
    }

    #[test]
    fn preconditions() {
        let f = load("fifth-root");
        assert_eq!(prop_measure_at(&f, 5, 2, None).unwrap_err(), Error::QuotientNotPGroup { p: 5, order: 4 });
        assert_eq!(prop_measure_at(&f, 4, 2, None).unwrap_err(), Error::NotPrime(4));
        let s5 = load("s5-transposition");
        assert!(matches!(prop_measure_at(&s5, 2, 2, None), Err(Error::TargetNotPGroup { .. })));
    }

    #[test]
    fn brute_force_over_sylow() {
        // C2 × C4 is its own Sylow; count pairs generating ⟨b⟩ among pairs with ⟨σ⟩·G0 = G
        let s = load("c2xc4-pro2");
        let g = s.group();
        let lattice = s.lattice();
        let c4 = s.target("c4").unwrap().node;
        let mut hits = 0;
        let mut regular = 0;
        let mut cache = lattice.join_cache();
        for x in 0..g.order() {
            for y in 0..g.order() {
                let node = cache.generated(&[x, y]);
                if s.is_regular_node(node) {
                    regular += 1;
                    if node == c4 {
                        hits += 1;
                    }
                }
            }
        }
        let r = prop_measure_at(&s, 2, 2, None).unwrap();
        assert_eq!(r.value("c4").unwrap(), &BigRational::new(hits.into(), regular.into()));
    }

    #[test]
    fn choices_are_invariant() {
        let s5 = load("s5-transposition");
        let t = s5.target("transposition").unwrap().node;
        let s5 = s5.with_targets(vec![("transposition".into(), t)]).unwrap();
        let survey = survey_choices(&s5, 2, 2).unwrap();
        assert_eq!(survey.sylow_count, 15);
        assert_eq!(survey.targets[0].values.len(), 30);
        assert!(survey.is_invariant());
        let s3 = load("s3-over-a3");
        let t = s3.target("transposition").unwrap().node;
        let s3 = s3.with_targets(vec![("transposition".into(), t)]).unwrap();
        let survey = survey_choices(&s3, 2, 2).unwrap();
        assert_eq!(survey.sylow_count, 3);
        assert!(survey.is_invariant());
    }

    #[test]
    fn sylow_measure_differs_from_full_measure() {
        // Q = C2 for S3 over A3: inside the Sylow C2 every regular tuple generates it
        let s3 = load("s3-over-a3");
        let t = s3.target("transposition").unwrap().node;
        let s3 = s3.with_targets(vec![("transposition".into(), t)]).unwrap();
        let r = prop_measure_at(&s3, 2, 2, None).unwrap();
        assert_eq!(r.value("transposition").unwrap(), &BigRational::from_integer(1.into()));
    }

    #[test]
    fn bad_choices_are_rejected() {
        let s = load("d4-over-c4");
        let mut c = default_choice(&s, 2).unwrap();
        c.embedded.pop();
        assert!(matches!(prop_measure_at(&s, 2, 1, Some(&c)), Err(Error::BadChoice(_))));
        let c = SylowChoice { sylow: 0, embedded: vec![0, 0, 0] };
        assert!(matches!(prop_measure_at(&s, 2, 1, Some(&c)), Err(Error::BadChoice(_))));
    }

    #[test]
    fn prop_refinement() {
        let t = validate_tower(&tower_spec("c8-over-c4-tower").unwrap(), &Limits::default()).unwrap();
        for e in 1..=3 {
            let r = verify_prop_refinement(&t, 2, e).unwrap();
            assert_eq!(r.common_value(), Some(1 << e));
            assert!(r.holds());
        }
        for id in ["c4xc2-over-c2xc2-tower", "s3-identity-tower", "s3-over-c2-tower", "c4-over-c2-tower"] {
            let t = validate_tower(&tower_spec(id).unwrap(), &Limits::default()).unwrap();
            for e in 1..=3 {
                let r = verify_prop_refinement(&t, 2, e).unwrap();
                assert!(r.holds(), "{id} e={e}: {r:?}");
            }
        }
        let id = validate_tower(&tower_spec("s3-identity-tower").unwrap(), &Limits::default()).unwrap();
        assert_eq!(verify_prop_refinement(&id, 2, 2).unwrap().common_value(), Some(1));
    }

    #[test]
    fn c4_over_c2_full_target() {
        let spec = ScenarioSpec {
            name: "c4".into(),
            group: GroupSpec::Cyclic(4),
            g0: vec![Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap()],
            complement: None,
            targets: vec![TargetSpec { name: "trivial".into(), generators: vec![] }],
            metadata: String::new(),
        };
        // trivial · C2 ≠ C4
        assert!(matches!(validate_scenario(&spec, &Limits::default()), Err(Error::NotRegularTarget(_))));
        let s = load("c4-over-c2");
        assert_eq!(prop_measure_at(&s, 2, 2, None).unwrap().values(), measure_at(&s, 2).unwrap().values());
    }
}
