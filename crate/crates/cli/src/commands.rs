//! One function per subcommand, each filling a [`ReportDocument`].

use std::collections::BTreeMap;

use galmeasure_core::asymptotics::generic_target;
use galmeasure_core::catalog::{self, CatalogEntry};
use galmeasure_core::counting::{brute_force_spectrum, gaschutz_count, gaschutz_profile, tuple_spectrum};
use galmeasure_core::measure::{measure_split_at, trivial_tower, RefinementReport};
use galmeasure_core::pro_p::{default_choice, survey_choices};
use galmeasure_core::{
    bijection_factor, closed_form, measure_at, omega_sum, prop_measure_at, quotient_map, sample_measure, ultralimit,
    validate_scenario, validate_tower, verify_prop_refinement, verify_refinement, CoverScenario, Epimorphism, Error,
    Limits, SubgroupLattice, TowerScenario,
};
use serde_json::{json, Map, Value};

use crate::file::{self, InputFile, CATALOG_PREFIX};
use crate::report::{big, power_sum, q, series, sig6, ReportDocument};
use crate::{Cli, CliError, Command, Scheme};

/// Tuples per brute-force cross-check of the spectrum.
const BRUTE_FORCE_BUDGET: u64 = 1_000_000;
/// Ranks tabulated next to a closed form.
const CLOSED_FORM_RANKS: usize = 6;
/// Sigma band reported for Monte Carlo estimates.
const MC_SIGMAS: f64 = 4.0;

pub enum Output {
    Report(ReportDocument),
    /// Bare text, used by `catalog --export`.
    Raw(String),
}

type Params = BTreeMap<String, Value>;

struct Loaded {
    input: String,
    file: InputFile,
}

impl Loaded {
    fn open(input: &str) -> Result<Self, CliError> {
        Ok(Loaded { input: input.to_string(), file: file::load(input)? })
    }

    fn scenario(&self, limits: &Limits) -> Result<CoverScenario, CliError> {
        match &self.file {
            InputFile::Scenario(f) => Ok(validate_scenario(&f.scenario, limits)?),
            InputFile::Tower(_) => Err(CliError::Invalid {
                kind: "WrongInputKind",
                message: format!("{} is a tower; this command needs a scenario", self.input),
            }),
        }
    }

    /// Towers as given; a scenario becomes its identity tower.
    fn tower(&self, limits: &Limits) -> Result<TowerScenario, CliError> {
        match &self.file {
            InputFile::Tower(f) => Ok(validate_tower(&f.tower, limits)?),
            InputFile::Scenario(_) => Ok(trivial_tower(&self.scenario(limits)?)?),
        }
    }

    fn document(&self, command: &str, mut params: Params, limits: &Limits, results: Value) -> ReportDocument {
        params.insert("max-group-order".into(), json!(limits.max_group_order));
        params.insert("max-enumeration".into(), json!(limits.max_enumeration));
        let mut doc = ReportDocument::new(command);
        doc.input = Some(self.input.clone());
        doc.input_digest = Some(self.file.digest());
        doc.parameters = params;
        doc.results = results;
        doc
    }
}

fn params(pairs: &[(&str, Value)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let limits = cli.limits();
    let report = |input: &str, command: &str, p: Params, f: &dyn Fn(&Loaded) -> Result<Value, CliError>| {
        let loaded = Loaded::open(input)?;
        let results = f(&loaded)?;
        Ok(Output::Report(loaded.document(command, p, &limits, results)))
    };
    match &cli.command {
        Command::Validate(a) => report(&a.input, "validate", Params::new(), &|l| validate(l, &limits)),
        Command::Measure(a) => {
            let scheme = match a.scheme {
                Scheme::Regular => "regular",
                Scheme::Split => "split",
            };
            let p = params(&[("e", json!(a.e)), ("target", json!(a.target)), ("scheme", json!(scheme))]);
            report(&a.input, "measure", p, &|l| measure(&l.scenario(&limits)?, a.e, a.target.as_deref(), a.scheme))
        }
        Command::ClosedForm(a) => {
            let p = params(&[("target", json!(a.target))]);
            report(&a.input, "closed-form", p, &|l| closed(&l.scenario(&limits)?, &a.target))
        }
        Command::OmegaSum(a) => {
            let p = params(&[("target", json!(a.target)), ("start", json!(a.start))]);
            report(&a.input, "omega-sum", p, &|l| {
                let s = l.scenario(&limits)?;
                let r = omega_sum(&closed_form(&s, &a.target)?, a.start)?;
                Ok(json!({ "target": a.target, "start": r.start, "value": series(&r.value), "form": power_sum(&r.form) }))
            })
        }
        Command::Ultralimit(a) => {
            let p = params(&[("target", json!(a.target))]);
            report(&a.input, "ultralimit", p, &|l| limit(&l.scenario(&limits)?, a.target.as_deref()))
        }
        Command::Spectrum(a) => {
            let p = params(&[("e", json!(a.e))]);
            report(&a.input, "spectrum", p, &|l| spectrum(&l.scenario(&limits)?, a.e, &limits))
        }
        Command::Gaschutz(a) => {
            let p = params(&[("e", json!(a.e))]);
            report(&a.input, "gaschutz", p, &|l| gaschutz(l, a.e, &limits))
        }
        Command::VerifyRefinement(a) => {
            let p = params(&[("e", json!(a.e))]);
            report(&a.input, "verify-refinement", p, &|l| {
                Ok(refinement(&verify_refinement(&l.tower(&limits)?, a.e)?))
            })
        }
        Command::PropMeasure(a) => {
            let p = params(&[("prime", json!(a.prime)), ("e", json!(a.e)), ("target", json!(a.target))]);
            report(&a.input, "prop-measure", p, &|l| prop(l, a.prime, a.e, a.target.as_deref(), &limits))
        }
        Command::BijectionFactor(a) => {
            let p = params(&[("target", json!(a.target)), ("e", json!(a.e))]);
            report(&a.input, "bijection-factor", p, &|l| {
                let r = bijection_factor(&l.scenario(&limits)?, &a.target, a.e)?;
                Ok(json!({
                    "target": r.target,
                    "e": r.e,
                    "target-order": r.target_order,
                    "normalizer-order": r.normalizer_order,
                    "factor": q(&r.factor),
                    "conjugate-factor": q(&r.conjugate_factor),
                    "measure-v": q(&r.measure_v),
                    "measure-w": q(&r.measure_w),
                    "observed-ratio": r.observed_ratio().as_ref().map(q),
                    "identity-holds": r.identity_holds(),
                    "conjugate-identity-holds": r.conjugate_identity_holds(),
                }))
            })
        }
        Command::Montecarlo(a) => {
            let p = params(&[
                ("target", json!(a.target)),
                ("e", json!(a.e)),
                ("samples", json!(a.samples)),
                ("seed", json!(a.seed)),
            ]);
            report(&a.input, "montecarlo", p, &|l| {
                let r = sample_measure(&l.scenario(&limits)?, &a.target, a.e, a.samples, a.seed, true)?;
                Ok(json!({
                    "target": r.target,
                    "e": r.e,
                    "samples": r.samples,
                    "seed": r.seed,
                    "generator": r.generator,
                    "accepted": r.accepted,
                    "hits": r.hits,
                    "estimate": q(&r.estimate),
                    "exact": q(&r.exact),
                    "abs-error": q(&r.abs_error),
                    "sigma": sig6(r.sigma),
                    "within-4-sigma": r.within(MC_SIGMAS),
                }))
            })
        }
        Command::Catalog(a) => catalog_command(a.id.as_deref(), a.export, &limits),
    }
}

fn scenario_summary(s: &CoverScenario) -> Value {
    let lattice = s.lattice();
    let targets: Vec<Value> = s
        .targets()
        .iter()
        .map(|t| {
            json!({
                "name": t.name,
                "order": lattice.node(t.node).order(),
                "conjugates": lattice.class(t.class).size(),
                "normalizer-order": lattice.node(lattice.normalizer_of(t.node)).order(),
            })
        })
        .collect();
    json!({
        "name": s.name(),
        "group-order": s.group().order(),
        "degree": s.group().degree(),
        "g0-order": s.g0().order(),
        "quotient-order": s.quotient_order(),
        "split": s.is_split(),
        "subgroups": lattice.len(),
        "subgroup-classes": lattice.classes().len(),
        "regular-classes": s.regular_classes().count(),
        "targets": targets,
    })
}

fn validate(l: &Loaded, limits: &Limits) -> Result<Value, CliError> {
    match &l.file {
        InputFile::Scenario(_) => {
            let mut v = scenario_summary(&l.scenario(limits)?);
            v["kind"] = json!("scenario");
            Ok(v)
        }
        InputFile::Tower(_) => {
            let t = l.tower(limits)?;
            let kernel = t.restriction().kernel();
            let in_g0 = t.upper().group().intersection(&kernel, t.upper().g0()).order();
            Ok(json!({
                "kind": "tower",
                "name": t.name(),
                "upper": scenario_summary(t.upper()),
                "lower": scenario_summary(t.lower()),
                "kernel-order": kernel.order(),
                "kernel-in-g0-order": in_g0,
            }))
        }
    }
}

fn measure(s: &CoverScenario, e: usize, target: Option<&str>, scheme: Scheme) -> Result<Value, CliError> {
    if let Some(t) = target {
        s.target(t)?;
    }
    let r = match scheme {
        Scheme::Regular => measure_at(s, e)?,
        Scheme::Split => measure_split_at(s, e, None)?,
    };
    let entries: Vec<Value> = r
        .entries
        .iter()
        .filter(|m| target.is_none_or(|t| t == m.name))
        .map(|m| json!({ "name": m.name, "numerator": big(&m.numerator), "denominator": big(&m.denominator), "value": q(&m.value) }))
        .collect();
    Ok(json!({
        "scheme": format!("{:?}", r.scheme).to_lowercase(),
        "e": r.e,
        "regular-total": big(&r.regular_total),
        "targets": entries,
        "total": q(&r.total()),
    }))
}

fn closed(s: &CoverScenario, target: &str) -> Result<Value, CliError> {
    let f = closed_form(s, target)?;
    let mut v = power_sum(&f);
    let values: Vec<Value> = (1..=CLOSED_FORM_RANKS).map(|e| json!({ "e": e, "value": q(&f.evaluate(e)) })).collect();
    v["target"] = json!(target);
    v["values"] = Value::Array(values);
    Ok(v)
}

fn limit(s: &CoverScenario, target: Option<&str>) -> Result<Value, CliError> {
    match target {
        Some(t) => {
            let r = ultralimit(&closed_form(s, t)?)?;
            Ok(json!({ "target": t, "value": r.value, "form": r.form.to_string() }))
        }
        None => {
            let g = generic_target(s)?;
            let rows: Vec<Value> = g.ultralimits.iter().map(|(n, v)| json!({ "name": n, "value": v })).collect();
            Ok(json!({ "generic-target": g.target, "consistent": g.is_consistent(), "targets": rows }))
        }
    }
}

fn spectrum(s: &CoverScenario, e: usize, limits: &Limits) -> Result<Value, CliError> {
    if e == 0 {
        return Err(Error::ZeroRank.into());
    }
    let lattice = s.lattice();
    let sp = tuple_spectrum(lattice, e);
    let rows: Vec<Value> = lattice
        .classes()
        .iter()
        .map(|c| {
            json!({
                "class": c.id,
                "order": c.order,
                "conjugates": c.size(),
                "regular": s.is_regular_class(c.id),
                "tuples": big(sp.count(c.id)),
            })
        })
        .collect();
    let budget = BRUTE_FORCE_BUDGET.min(limits.max_enumeration);
    let check = match brute_force_spectrum(lattice, e, budget) {
        Ok(slow) => Value::Bool(slow == sp),
        Err(err) if err.is_resource_cap() => Value::Null,
        Err(err) => return Err(err.into()),
    };
    Ok(json!({ "e": e, "group-order": s.group().order(), "total": big(&sp.total()), "classes": rows, "brute-force-agrees": check }))
}

fn gaschutz(l: &Loaded, e: usize, limits: &Limits) -> Result<Value, CliError> {
    let (name, f, source, target): (String, Epimorphism, _, _) = match &l.file {
        InputFile::Tower(_) => {
            let t = l.tower(limits)?;
            (format!("{}:restriction", t.name()), t.restriction().clone(), t.upper().lattice().clone(), t.lower().lattice().clone())
        }
        InputFile::Scenario(_) => {
            let s = l.scenario(limits)?;
            let f = quotient_map(s.group(), s.g0())?;
            let target = std::sync::Arc::new(SubgroupLattice::with_cap(f.target().clone(), limits.max_subgroups)?);
            (format!("{}:quotient", s.name()), f, s.lattice().clone(), target)
        }
    };
    let r = gaschutz_count(&f, &source, &target, e, None)?;
    let profile = match gaschutz_profile(&f, &source, &target, e, limits.max_enumeration) {
        Ok(p) => {
            let rows: Vec<Value> = p.counts.iter().map(|(lifts, n)| json!({ "lifts": lifts, "target-tuples": n })).collect();
            json!({ "generating-targets": p.generating_targets, "constant": p.is_constant(), "lift-counts": rows })
        }
        Err(err) if err.is_resource_cap() => Value::Null,
        Err(err) => return Err(err.into()),
    };
    let tuple: Vec<Value> = r.target_tuple.iter().map(|&x| json!(f.target().element(x))).collect();
    Ok(json!({
        "map": name,
        "e": e,
        "source-order": f.source().order(),
        "target-order": f.target().order(),
        "kernel-order": f.kernel().order(),
        "target-tuple": tuple,
        "lift-count": big(&r.lift_count),
        "source-generating": big(&r.source_gen_count),
        "target-generating": big(&r.target_gen_count),
        "multiplicative": r.is_multiplicative(),
        "profile": profile,
    }))
}

fn refinement(r: &RefinementReport) -> Value {
    let lifts: Vec<Value> = r.lift_counts.iter().map(|(c, n)| json!({ "lifts": c, "lower-tuples": n })).collect();
    let targets: Vec<Value> = r
        .targets
        .iter()
        .map(|t| json!({ "name": t.name, "lower": q(&t.lower), "upper": t.upper.as_ref().map(q), "agrees": t.agrees() }))
        .collect();
    json!({
        "tower": r.tower,
        "e": r.e,
        "regular-lower-tuples": r.regular_lower_tuples,
        "lift-counts": lifts,
        "quotient-factor": big(&r.quotient_factor),
        "kernel-order": r.kernel_order,
        "predicted": big(&r.predicted),
        "all-equal": r.all_equal(),
        "matches-prediction": r.matches_prediction(),
        "measures-agree": r.measures_agree(),
        "holds": r.holds(),
        "targets": targets,
    })
}

fn prop(l: &Loaded, p: u64, e: usize, target: Option<&str>, limits: &Limits) -> Result<Value, CliError> {
    if let InputFile::Tower(_) = l.file {
        let mut v = refinement(&verify_prop_refinement(&l.tower(limits)?, p, e)?);
        v["prime"] = json!(p);
        return Ok(v);
    }
    let s = l.scenario(limits)?;
    if let Some(t) = target {
        s.target(t)?;
    }
    let choice = default_choice(&s, p)?;
    let r = prop_measure_at(&s, p, e, Some(&choice))?;
    let survey = survey_choices(&s, p, e)?;
    let rows: Vec<Value> = r
        .entries
        .iter()
        .zip(&survey.targets)
        .filter(|(m, _)| target.is_none_or(|t| t == m.name))
        .map(|(m, sv)| json!({ "name": m.name, "value": q(&m.value), "choices": sv.values.len(), "choice-invariant": sv.is_invariant() }))
        .collect();
    Ok(json!({
        "prime": p,
        "e": e,
        "sylow-order": s.lattice().node(choice.sylow).order(),
        "sylow-count": survey.sylow_count,
        "regular-total": big(&r.regular_total),
        "targets": rows,
        "choice-invariant": survey.is_invariant(),
    }))
}

fn catalog_command(id: Option<&str>, export: bool, limits: &Limits) -> Result<Output, CliError> {
    let Some(id) = id else {
        let rows: Vec<Value> = catalog::all_ids()
            .map(|id| {
                let (kind, metadata) = match catalog::entry(id).expect("listed id") {
                    CatalogEntry::Scenario(s) => ("scenario", s.metadata),
                    CatalogEntry::Tower(t) => ("tower", t.metadata),
                };
                json!({ "id": id, "kind": kind, "metadata": metadata })
            })
            .collect();
        let mut doc = ReportDocument::new("catalog");
        doc.results = json!({ "entries": rows });
        return Ok(Output::Report(doc));
    };
    let id = id.strip_prefix(CATALOG_PREFIX).unwrap_or(id);
    let loaded = Loaded::open(&format!("{CATALOG_PREFIX}{id}"))?;
    if export {
        return Ok(Output::Raw(loaded.file.canonical()));
    }
    let file: Value = serde_json::from_str(&loaded.file.canonical()).expect("canonical JSON");
    let mut results = Map::new();
    results.insert("id".into(), json!(id));
    results.insert("kind".into(), json!(loaded.file.kind()));
    results.insert("file".into(), file);
    Ok(Output::Report(loaded.document("catalog", Params::new(), limits, Value::Object(results))))
}
