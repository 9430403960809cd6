//! Measures of target classes on cover scenarios.

mod bijection;
mod count;
mod scenario;
mod tower;

pub use bijection::{bijection_factor, BijectionReport};
pub use count::{
    closed_form, default_sigma0, measure_at, measure_split_at, CountingScheme, MeasureReport, TargetMeasure,
};
pub use scenario::{validate_scenario, CoverScenario, ScenarioSpec, Target, TargetSpec};
pub use tower::{
    trivial_tower, validate_tower, verify_refinement, RefinementReport, TargetAgreement, TowerScenario, TowerSpec,
};

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    use super::*;
    use crate::catalog::{scenario_spec, tower_spec, SCENARIO_IDS, TOWER_IDS};
    use crate::construct::GroupSpec;
    use crate::error::Error;
    use crate::limits::Limits;
    use crate::perm::Permutation;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn pow_q(n: i64, d: i64, e: usize) -> BigRational {
        q(n, d).pow(e as i32)
    }

    fn load(id: &str) -> CoverScenario {
        validate_scenario(&scenario_spec(id).unwrap(), &Limits::default()).unwrap()
    }

    fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(degree, cycles).unwrap()
    }

    #[test]
    fn every_catalog_entry_validates() {
        for id in SCENARIO_IDS {
            load(id);
        }
        for id in TOWER_IDS {
            validate_tower(&tower_spec(id).unwrap(), &Limits::default()).unwrap();
        }
    }

    #[test]
    fn validation_examples() {
        let s3 = GroupSpec::Symmetric(3);
        let a3 = vec![cyc(3, &[&[0, 1, 2]])];
        let spec = |targets: Vec<TargetSpec>, g0: Vec<Permutation>| ScenarioSpec {
            name: "s3".into(),
            group: s3.clone(),
            g0,
            complement: None,
            targets,
            metadata: String::new(),
        };
        let tr = TargetSpec { name: "t".into(), generators: vec![cyc(3, &[&[0, 1]])] };
        let a3t = TargetSpec { name: "a3".into(), generators: a3.clone() };
        assert!(validate_scenario(&spec(vec![tr.clone()], a3.clone()), &Limits::default()).is_ok());
        assert_eq!(
            validate_scenario(&spec(vec![a3t], a3.clone()), &Limits::default()).unwrap_err(),
            Error::NotRegularTarget("a3".into())
        );
        let not_normal = spec(vec![tr.clone()], vec![cyc(3, &[&[0, 1]])]);
        assert!(matches!(validate_scenario(&not_normal, &Limits::default()), Err(Error::NotNormal(_))));
        let tr2 = TargetSpec { name: "t2".into(), generators: vec![cyc(3, &[&[1, 2]])] };
        assert_eq!(
            validate_scenario(&spec(vec![tr, tr2], a3.clone()), &Limits::default()).unwrap_err(),
            Error::DuplicateTarget("t".into(), "t2".into())
        );
        let mut bad = spec(vec![], a3);
        assert_eq!(validate_scenario(&bad, &Limits::default()).unwrap_err(), Error::NoTargets);
        bad.targets = vec![TargetSpec { name: "t".into(), generators: vec![cyc(3, &[&[0, 1]])] }];
        bad.complement = Some(vec![cyc(3, &[&[0, 1, 2]])]);
        assert!(matches!(validate_scenario(&bad, &Limits::default()), Err(Error::BadComplement(_))));
    }

    #[test]
    fn squares_measures() {
        let s = load("squares");
        for e in 1..=8 {
            let r = measure_at(&s, e).unwrap();
            assert_eq!(r.value("trivial").unwrap(), &pow_q(1, 2, e));
            assert_eq!(r.total(), BigRational::one());
        }
        let r = measure_at(&s, 2).unwrap();
        assert_eq!(r.value("full").unwrap(), &q(3, 4));
        let split = measure_split_at(&s, 3, None).unwrap();
        assert_eq!(split.value("trivial").unwrap(), &q(1, 8));
    }

    #[test]
    fn fifth_root_measures() {
        let s = load("fifth-root");
        assert_eq!(measure_at(&s, 1).unwrap().value("image").unwrap(), &BigRational::one());
        for e in 2..=5 {
            let expected = pow_q(1, 5, e - 1);
            assert_eq!(measure_at(&s, e).unwrap().value("image").unwrap(), &expected);
            assert_eq!(measure_split_at(&s, e, None).unwrap().value("image").unwrap(), &expected);
        }
    }

    #[test]
    fn schemes_agree_on_split_catalog() {
        for id in SCENARIO_IDS {
            let s = load(id);
            if !s.is_split() {
                assert_eq!(measure_split_at(&s, 2, None).unwrap_err(), Error::NotSplit);
                continue;
            }
            let all = s.with_all_regular_targets();
            for e in 1..=4 {
                let a = measure_at(&all, e).unwrap();
                let b = measure_split_at(&all, e, None).unwrap();
                assert_eq!(a.values(), b.values(), "{id} e={e}");
                assert_eq!(b.total(), BigRational::one());
            }
        }
    }

    #[test]
    fn sigma0_choices_are_checked() {
        let s = load("fifth-root");
        let g = s.group();
        let r = g.index_of(&cyc(5, &[&[0, 1, 2, 3, 4]])).unwrap();
        let c = g.index_of(&cyc(5, &[&[1, 2, 4, 3]])).unwrap();
        let c2 = g.mul(c, c);
        assert!(matches!(measure_split_at(&s, 2, Some(&[r, c])), Err(Error::Sigma0NotGenerating(_))));
        assert!(matches!(measure_split_at(&s, 2, Some(&[c2, c2])), Err(Error::Sigma0NotGenerating(_))));
        assert!(matches!(measure_split_at(&s, 2, Some(&[c])), Err(Error::Sigma0NotGenerating(_))));
        let a = measure_split_at(&s, 2, Some(&[c2, c])).unwrap();
        let b = measure_split_at(&s, 2, Some(&[g.inv(c), 0])).unwrap();
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn closed_form_examples() {
        let s = load("squares");
        let t = closed_form(&s, "trivial").unwrap();
        assert_eq!(t.base(), 2);
        assert_eq!(t.terms().len(), 1);
        assert_eq!((t.terms()[0].coefficient.clone(), t.terms()[0].numerator), (BigInt::one(), 1));
        let f = closed_form(&s, "full").unwrap();
        assert_eq!(f.signed_expansion(), vec![(-1, 1), (1, 2)]);
        let fr = closed_form(&load("fifth-root"), "image").unwrap();
        assert_eq!(fr.base(), 5);
        assert_eq!(fr.evaluate(1), BigRational::one());
        for e in 2..=6 {
            assert_eq!(fr.evaluate(e), pow_q(1, 5, e - 1));
        }
        assert_eq!(closed_form(&load("c4-over-c2"), "full").unwrap_err(), Error::NotSplit);
    }

    #[test]
    fn closed_forms_match_split_counts() {
        for id in SCENARIO_IDS {
            let s = load(id);
            if !s.is_split() {
                continue;
            }
            let s = s.with_all_regular_targets();
            for e in 1..=5 {
                let r = measure_split_at(&s, e, None).unwrap();
                for t in s.targets() {
                    let f = closed_form(&s, &t.name).unwrap();
                    assert!(f.terms().iter().all(|term| term.numerator <= f.base()));
                    assert_eq!(&f.evaluate(e), r.value(&t.name).unwrap(), "{id} {} e={e}", t.name);
                }
            }
        }
    }

    #[test]
    fn non_generated_targets_vanish() {
        let s = load("wreath-5-2");
        // C5 ≀ C2 needs two generators
        let r = measure_at(&s, 1).unwrap();
        assert!(r.value("full").unwrap().is_zero());
    }

    #[test]
    fn quotient_not_generated_is_an_error() {
        let s = load("c2xc4-pro2");
        assert!(measure_at(&s, 1).is_ok());
        let spec = ScenarioSpec {
            name: "klein-constant".into(),
            group: GroupSpec::Dihedral(2),
            g0: vec![],
            complement: None,
            targets: vec![TargetSpec {
                name: "full".into(),
                generators: vec![cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])],
            }],
            metadata: String::new(),
        };
        let k = validate_scenario(&spec, &Limits::default()).unwrap();
        assert_eq!(measure_at(&k, 1).unwrap_err(), Error::NoRegularTuples { e: 1 });
        assert_eq!(measure_at(&k, 2).unwrap().value("full").unwrap(), &BigRational::one());
    }

    #[test]
    fn relabeling_preserves_measures() {
        let spec = scenario_spec("fifth-root").unwrap();
        let pi = cyc(5, &[&[0, 3], &[1, 4, 2]]);
        let moved = validate_scenario(&spec.relabeled(&pi, &Limits::default()).unwrap(), &Limits::default()).unwrap();
        let s = load("fifth-root");
        for e in 1..=3 {
            assert_eq!(measure_at(&s, e).unwrap().values(), measure_at(&moved, e).unwrap().values());
        }
    }

    #[test]
    fn refinement_examples() {
        let c4 = validate_tower(&tower_spec("c4-over-c2-tower").unwrap(), &Limits::default()).unwrap();
        let r = verify_refinement(&c4, 2).unwrap();
        assert_eq!(r.common_value(), Some(4));
        assert!(r.holds());
        for id in TOWER_IDS {
            let t = validate_tower(&tower_spec(id).unwrap(), &Limits::default()).unwrap();
            for e in 1..=3 {
                match verify_refinement(&t, e) {
                    Ok(r) => assert!(r.holds(), "{id} e={e}: {r:?}"),
                    Err(Error::NoRegularTuples { .. }) => {}
                    Err(err) => panic!("{id} e={e}: {err}"),
                }
            }
        }
        let id = trivial_tower(&load("s3-over-a3")).unwrap();
        assert_eq!(verify_refinement(&id, 2).unwrap().common_value(), Some(1));
    }

    #[test]
    fn c4_quotient_tower_uses_gaschutz_factor() {
        let t = validate_tower(&tower_spec("c4xc4-over-c2xc2-tower").unwrap(), &Limits::default()).unwrap();
        let r = verify_refinement(&t, 1).unwrap();
        assert_eq!(r.kernel_order, 2);
        assert_eq!(r.quotient_factor, 2u32.into());
        assert_eq!(r.common_value(), Some(4));
    }

    #[test]
    fn towers_reject_mismatched_constant_parts() {
        // C2 with trivial G0 over C2 with G0 = C2: the constant quotient would vanish
        let t = cyc(2, &[&[0, 1]]);
        let mut upper = tower_spec("c4-over-c2-tower").unwrap().lower;
        upper.g0 = vec![];
        upper.complement = Some(vec![t.clone()]);
        upper.targets.retain(|x| x.name == "full");
        let lower = tower_spec("c4-over-c2-tower").unwrap().lower;
        let spec = TowerSpec {
            name: "bad".into(),
            upper,
            lower,
            restriction: vec![t],
            metadata: String::new(),
        };
        assert!(matches!(validate_tower(&spec, &Limits::default()), Err(Error::BadTower(_))));
    }

    #[test]
    fn bijection_examples() {
        let sq = load("squares");
        let b = bijection_factor(&sq, "trivial", 2).unwrap();
        assert_eq!(b.factor, q(2, 1));
        let s5 = load("s5-transposition");
        let b = bijection_factor(&s5, "transposition", 2).unwrap();
        assert_eq!(b.factor, q(6, 1));
        assert_eq!(b.normalizer_order, 12);
        assert_eq!(b.measure_v, q(1, 480));
        assert_eq!(b.measure_w, q(1, 48));
        assert_eq!(b.observed_ratio(), Some(q(10, 1)));
        assert!(b.conjugate_identity_holds());
        for id in SCENARIO_IDS {
            let s = load(id);
            for t in s.targets() {
                let b = bijection_factor(&s, &t.name, 1).unwrap();
                assert_eq!(b.factor, BigRational::one());
            }
        }
    }
}
