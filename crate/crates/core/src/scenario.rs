//! Named scenarios: a sequence of checks on JSON-specified objects together with
//! the outcomes each check is expected to have.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::eala::{check_construction, chi_iso, root_space_dims, Eala, EalaOptions};
use crate::error::{Error, Result};
use crate::lattice::{window, LatticeVec};
use crate::lie::{
    check_axioms, diag_conjugation_iso, dimension_match, identity_map, opposite_iso, ssp_isotope_iso, tkk_isotope_iso,
    verify_graded_map, AxiomOptions, GradedMap,
};
use crate::quadform::{check_isometry, classify, is_isometric, twist_witness, QuadFormF2};
use crate::report::{CheckOutcome, Report, Tally};
use crate::spec::{ModelSpec, ShiftSpec, TorusSpec};
use crate::torus::{check_flavor_laws, check_involution, invariants, involution_isotope, Involution, LawOptions};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoKind {
    Identity,
    Diag,
    Opposite,
    Tkk,
    Ssp,
}

/// Negate the image of one source component; defaults to the first nonzero root at degree 0.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Perturb {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Vec<i64>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Op {
    FlavorLaws {
        torus: TorusSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<i64>,
    },
    Involution {
        torus: TorusSpec,
        e: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<i64>,
    },
    Invariants {
        torus: TorusSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<i64>,
    },
    QuadformClassify {
        n: usize,
    },
    /// For every hermitian twist degree h in the window, the forms of ι and ι^(h)
    /// are isometric through τ̄(λ̄) = λ̄ + κ_p(h̄, λ̄) h̄.
    QuadformTwist {
        torus: TorusSpec,
        e: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<i64>,
    },
    LieAxioms {
        model: ModelSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        samples: Option<usize>,
    },
    LieIso {
        iso: IsoKind,
        model: ModelSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shift: Option<ShiftSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        perturb: Option<Perturb>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<i64>,
    },
    EalaBuild {
        model: ModelSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        samples: Option<usize>,
    },
    EalaChi {
        model: ModelSpec,
        shift: ShiftSpec,
        #[serde(default)]
        perturb: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        samples: Option<usize>,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Step {
    pub label: String,
    #[serde(flatten)]
    pub op: Op,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(tag = "expect", rename_all = "snake_case")]
pub enum Expectation {
    /// A named check of a step passes or fails; `witness` asks for a serialized witness on failure.
    Check {
        step: String,
        check: String,
        passed: bool,
        #[serde(default)]
        witness: bool,
    },
    /// Every check of a step passes, or at least one fails.
    Step { step: String, passed: bool },
    /// A value reported by a step.
    Value { step: String, key: String, value: Value },
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub steps: Vec<Step>,
    pub expectations: Vec<Expectation>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct RunOptions {
    pub seed: u64,
    /// Replaces every step window when set.
    pub window: Option<i64>,
    pub timing: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct StepResult {
    pub label: String,
    pub report: Report,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl StepResult {
    fn new(label: &str, report: Report) -> Self {
        StepResult { label: label.to_string(), report, values: BTreeMap::new(), duration_ms: None }
    }

    fn value(mut self, key: &str, v: impl Serialize) -> Self {
        self.values.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
        self
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Diff {
    pub expected: Expectation,
    pub actual: Value,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub passed: bool,
    pub steps: Vec<StepResult>,
    pub diffs: Vec<Diff>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl ScenarioReport {
    pub fn summary_lines(&self) -> Vec<String> {
        let mut out = vec![format!("scenario {}: {}", self.scenario, if self.passed { "PASS" } else { "FAIL" })];
        for s in &self.steps {
            let time = s.duration_ms.map(|d| format!(" [{d} ms]")).unwrap_or_default();
            out.push(format!("  step {}: {}{time}", s.label, s.report.subject));
            out.extend(s.report.summary_lines().into_iter().map(|l| format!("    {l}")));
            for (k, v) in &s.values {
                out.push(format!("    {k} = {v}"));
            }
        }
        for d in &self.diffs {
            out.push(format!(
                "  expectation not met: {} (actual {})",
                serde_json::to_string(&d.expected).expect("serializable"),
                d.actual
            ));
        }
        out
    }
}

fn step_window(w: Option<i64>, opts: &RunOptions, default: i64) -> i64 {
    opts.window.or(w).unwrap_or(default)
}

fn involution(torus: &TorusSpec, e: &[i64]) -> Result<Involution> {
    Involution::new(&torus.build()?, e.to_vec())
}

fn classify_step(label: &str, n: usize) -> Result<StepResult> {
    let classes = classify(n)?;
    let total = QuadFormF2::form_count(n);
    let mut report = Report::new(format!("quadratic forms of rank {n}"));
    let sum: usize = classes.iter().map(|c| c.size).sum();
    report.push(CheckOutcome::from_bool("orbit sizes sum to form count", sum == total, || json!({"sum": sum, "total": total})));
    let mut distinct = Tally::default();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            let iso = is_isometric(&a.representative, &b.representative)?;
            distinct.check(iso.is_none(), || json!({"forms": [&a.representative, &b.representative], "tau": iso}));
        }
    }
    report.push(distinct.outcome("class representatives pairwise non-isometric"));
    let mut trip = Tally::default();
    for idx in 0..total {
        let k = QuadFormF2::from_index(n, idx);
        let (q, e) = k.to_torus_data();
        let back = QuadFormF2::from_torus_with_involution(&q, &e)?;
        trip.check(back == k, || json!({"form": k, "q": q, "e": e}));
    }
    report.push(trip.outcome("torus data round trip"));
    let mut sizes: Vec<usize> = classes.iter().map(|c| c.size).collect();
    sizes.sort_unstable();
    Ok(StepResult::new(label, report).value("classes", classes.len()).value("orbit_sizes", sizes))
}

fn twist_step(label: &str, torus: &TorusSpec, e: &[i64], w: i64) -> Result<StepResult> {
    let iota = involution(torus, e)?;
    let kappa = iota.quadratic_form()?;
    let n = kappa.rank();
    let mut report = Report::new(format!("involution twists of {} (window {w})", iota.torus().kind_name()));
    let (mut explicit, mut search) = (Tally::default(), Tally::default());
    let mut count = 0;
    for h in window(n, w).into_iter().filter(|h| iota.is_hermitian(h)) {
        count += 1;
        let kappa2 = involution_isotope(&iota, &h)?.quadratic_form()?;
        let tau = twist_witness(&kappa, h.mod2_mask());
        explicit.check(check_isometry(&kappa, &kappa2, &tau), || json!({"h": h, "kappa": kappa, "kappa_h": kappa2, "tau": tau}));
        let found = is_isometric(&kappa, &kappa2)?;
        search.check(found.is_some(), || json!({"h": h, "kappa": kappa, "kappa_h": kappa2}));
    }
    report.push(explicit.outcome("explicit witness is an isometry"));
    report.push(search.outcome("isometry search succeeds"));
    Ok(StepResult::new(label, report).value("hermitian_degrees", count))
}

fn build_iso(iso: IsoKind, model: &ModelSpec, shift: Option<&ShiftSpec>) -> Result<GradedMap> {
    let m = model.build()?;
    let s = || -> Result<_> {
        shift.ok_or_else(|| Error::Validation(format!("{iso:?} map needs a shift"))).and_then(ShiftSpec::build)
    };
    match iso {
        IsoKind::Identity => Ok(identity_map(&m)),
        IsoKind::Diag => diag_conjugation_iso(&m, &s()?),
        IsoKind::Opposite => opposite_iso(&m),
        IsoKind::Tkk => tkk_isotope_iso(&m, &s()?),
        IsoKind::Ssp => ssp_isotope_iso(&m, &s()?),
    }
}

fn perturb_map(phi: GradedMap, p: &Perturb) -> Result<GradedMap> {
    let n = phi.source.lattice_rank();
    let degree = p.degree.clone().map(LatticeVec).unwrap_or_else(|| LatticeVec::zero(n));
    let root = match &p.root {
        Some(r) => LatticeVec(r.clone()),
        None => phi
            .source
            .datum()
            .nonzero_roots()
            .into_iter()
            .find(|a| !phi.source.basis(a, &degree).is_empty())
            .ok_or_else(|| Error::Validation(format!("no nonzero root space in degree {degree}")))?,
    };
    Ok(phi.perturbed(&root, &degree))
}

fn run_step(step: &Step, opts: &RunOptions) -> Result<StepResult> {
    let label = step.label.as_str();
    match &step.op {
        Op::FlavorLaws { torus, window } => {
            let a = torus.build()?;
            Ok(StepResult::new(label, check_flavor_laws(&a, &LawOptions::with_window(step_window(*window, opts, 2)))))
        }
        Op::Involution { torus, e, window } => {
            let iota = involution(torus, e)?;
            Ok(StepResult::new(label, check_involution(&iota, &LawOptions::with_window(step_window(*window, opts, 2)))?))
        }
        Op::Invariants { torus, window } => {
            let a = torus.build()?;
            let inv = invariants(&a, step_window(*window, opts, 1))?;
            let mut report = Report::new(format!("invariants of {}", a.kind_name()));
            report.push(CheckOutcome::from_bool("centrality table agrees with gamma", inv.centrality_consistent, || {
                json!(inv.centrality.iter().find(|r| r.centroidal != r.in_gamma))
            }));
            Ok(StepResult::new(label, report)
                .value("sigma", &inv.sigma)
                .value("gamma", &inv.gamma)
                .value("cosets", &inv.cosets)
                .value("support", &inv.support))
        }
        Op::QuadformClassify { n } => classify_step(label, *n),
        Op::QuadformTwist { torus, e, window } => twist_step(label, torus, e, step_window(*window, opts, 2)),
        Op::LieAxioms { model, window, samples } => {
            let m = model.build()?;
            let ax = AxiomOptions { window: step_window(*window, opts, 1), jacobi_samples: samples.unwrap_or(2000), seed: opts.seed };
            Ok(StepResult::new(label, check_axioms(&m, &ax)))
        }
        Op::LieIso { iso, model, shift, perturb, window } => {
            let mut phi = build_iso(*iso, model, shift.as_ref())?;
            if let Some(p) = perturb {
                phi = perturb_map(phi, p)?;
            }
            let w = step_window(*window, opts, 1);
            let mut report = verify_graded_map(&phi, w);
            report.push(dimension_match(&phi, w));
            Ok(StepResult::new(label, report).value("target", phi.target.name()))
        }
        Op::EalaBuild { model, window, samples } => {
            let e = Eala::new(&model.build()?)?;
            let w = step_window(*window, opts, 2);
            let eo = EalaOptions { window: w, samples: samples.unwrap_or(5000), seed: opts.seed };
            let report = check_construction(&e, &eo);
            let root_dims = root_space_dims(&e, w);
            let max_root_dim = root_dims.iter().map(|d| d.dim_e).max().unwrap_or(0);
            Ok(StepResult::new(label, report)
                .value("degree_zero_dim", e.degree_zero_dim())
                .value("h_dim", e.h_basis().len())
                .value("max_root_space_dim", max_root_dim))
        }
        Op::EalaChi { model, shift, perturb, window, samples } => {
            let mut chi = chi_iso(&model.build()?, &shift.build()?)?;
            if *perturb {
                chi = chi.perturbed();
            }
            let w = step_window(*window, opts, 1);
            Ok(StepResult::new(label, chi.verify(w, samples.unwrap_or(5000), opts.seed)))
        }
    }
}

fn validate(s: &Scenario) -> Result<()> {
    let mut labels = std::collections::BTreeSet::new();
    for st in &s.steps {
        if !labels.insert(st.label.as_str()) {
            return Err(Error::Validation(format!("duplicate step label {:?}", st.label)));
        }
    }
    for e in &s.expectations {
        let step = match e {
            Expectation::Check { step, .. } | Expectation::Step { step, .. } | Expectation::Value { step, .. } => step,
        };
        if !labels.contains(step.as_str()) {
            return Err(Error::Validation(format!("expectation refers to unknown step {step:?}")));
        }
    }
    Ok(())
}

fn compare(e: &Expectation, steps: &[StepResult]) -> Option<Diff> {
    let find = |label: &str| steps.iter().find(|s| s.label == label).expect("validated");
    let diff = |actual: Value| Some(Diff { expected: e.clone(), actual });
    match e {
        Expectation::Check { step, check, passed, witness } => {
            let Some(c) = find(step).report.get(check) else {
                return diff(json!("no such check"));
            };
            let ok = c.passed == *passed && (!*witness || c.passed || c.witness.is_some());
            if ok {
                None
            } else {
                diff(json!({"passed": c.passed, "witness": c.witness}))
            }
        }
        Expectation::Step { step, passed } => {
            let r = &find(step).report;
            if r.all_passed() == *passed {
                None
            } else {
                diff(json!({"passed": r.all_passed(), "failing": r.failing().map(|c| c.name.clone()).collect::<Vec<_>>()}))
            }
        }
        Expectation::Value { step, key, value } => match find(step).values.get(key) {
            Some(v) if v == value => None,
            Some(v) => diff(v.clone()),
            None => diff(Value::Null),
        },
    }
}

/// Runs every step in order and compares the results with the expectations.
pub fn run_scenario(s: &Scenario, opts: &RunOptions) -> Result<ScenarioReport> {
    validate(s)?;
    let start = Instant::now();
    let mut steps = Vec::with_capacity(s.steps.len());
    for st in &s.steps {
        let t = Instant::now();
        let mut r = run_step(st, opts)?;
        if opts.timing {
            r.duration_ms = Some(t.elapsed().as_millis() as u64);
        }
        steps.push(r);
    }
    let diffs: Vec<Diff> = s.expectations.iter().filter_map(|e| compare(e, &steps)).collect();
    Ok(ScenarioReport {
        scenario: s.name.clone(),
        passed: diffs.is_empty(),
        steps,
        diffs,
        duration_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

fn scenario(v: Value) -> Scenario {
    serde_json::from_value(v).expect("built-in scenarios are well formed")
}

fn kq() -> Value {
    json!({"kind": "quantum", "n": 2, "q": [[1, -1], [-1, 1]]})
}

fn sl2_loop() -> Value {
    json!({"model": "sl", "r": 1, "coord": {"kind": "laurent", "n": 1}})
}

/// The built-in catalogue.
pub fn catalogue() -> Vec<Scenario> {
    vec![
        scenario(json!({
            "name": "flavor-laws",
            "description": "associativity of k_q, the alternative laws of the octonion torus and the Jordan identity of the spin factor and k_q^+",
            "steps": [
                {"label": "quantum", "op": "flavor_laws", "torus": kq(), "window": 2},
                {"label": "octonion", "op": "flavor_laws", "torus": {"kind": "octonion"}, "window": 2},
                {"label": "spin", "op": "flavor_laws", "torus": {"kind": "spin", "n": 3}, "window": 2},
                {"label": "plus", "op": "flavor_laws", "torus": {"kind": "jordan_plus", "q": [[1, -1], [-1, 1]]}, "window": 2}
            ],
            "expectations": [
                {"expect": "step", "step": "quantum", "passed": true},
                {"expect": "check", "step": "quantum", "check": "associativity", "passed": true},
                {"expect": "step", "step": "octonion", "passed": true},
                {"expect": "check", "step": "octonion", "check": "non-associativity witness", "passed": true},
                {"expect": "check", "step": "spin", "check": "jordan identity", "passed": true},
                {"expect": "check", "step": "plus", "check": "jordan identity", "passed": true},
                {"expect": "step", "step": "spin", "passed": true},
                {"expect": "step", "step": "plus", "passed": true}
            ]
        })),
        scenario(json!({
            "name": "octonion-alternative",
            "description": "the octonion torus satisfies both alternative laws and (x1x2)x3 = -x1(x2x3)",
            "steps": [{"label": "octonion", "op": "flavor_laws", "torus": {"kind": "octonion"}, "window": 2}],
            "expectations": [
                {"expect": "check", "step": "octonion", "check": "alternative laws", "passed": true},
                {"expect": "check", "step": "octonion", "check": "non-associativity witness", "passed": true},
                {"expect": "step", "step": "octonion", "passed": true}
            ]
        })),
        scenario(json!({
            "name": "lie-torus-axioms",
            "description": "window checks of the Lie torus axioms for TKK(spin), sl_4(k_q) and ssp_8(k_q, iota)",
            "steps": [
                {"label": "tkk-spin", "op": "lie_axioms", "model": {"model": "tkk", "coord": {"kind": "spin", "n": 3}}, "window": 1},
                {"label": "sl4-quantum", "op": "lie_axioms", "model": {"model": "sl", "r": 3, "coord": kq()}, "window": 1},
                {"label": "ssp8-quantum", "op": "lie_axioms", "model": {"model": "ssp", "r": 4, "coord": kq(), "involution": {"e": [1, 1]}}, "window": 1}
            ],
            "expectations": [
                {"expect": "step", "step": "tkk-spin", "passed": true},
                {"expect": "step", "step": "sl4-quantum", "passed": true},
                {"expect": "step", "step": "ssp8-quantum", "passed": true}
            ]
        })),
        scenario(json!({
            "name": "isotope-isomorphisms",
            "description": "explicit graded isomorphisms between isotopes: diagonal conjugation, TKK of a u-isotope, ssp of a twisted involution, and the opposite map",
            "steps": [
                {"label": "diag", "op": "lie_iso", "iso": "diag", "model": {"model": "sl", "r": 2, "coord": kq()}, "shift": "1,0;0,1", "window": 1},
                {"label": "tkk", "op": "lie_iso", "iso": "tkk", "model": {"model": "tkk", "coord": {"kind": "spin", "n": 3}}, "shift": "1,0,0", "window": 1},
                {"label": "ssp", "op": "lie_iso", "iso": "ssp", "model": {"model": "ssp", "r": 2, "coord": kq(), "involution": {"e": [1, 1]}}, "shift": "0,1;1,0", "window": 1},
                {"label": "opposite", "op": "lie_iso", "iso": "opposite", "model": {"model": "sl", "r": 2, "coord": kq()}, "window": 1}
            ],
            "expectations": [
                {"expect": "step", "step": "diag", "passed": true},
                {"expect": "step", "step": "tkk", "passed": true},
                {"expect": "step", "step": "ssp", "passed": true},
                {"expect": "step", "step": "opposite", "passed": true}
            ]
        })),
        scenario(json!({
            "name": "spin-sigma-obstruction",
            "description": "the coset sum of the support distinguishes the spin factor from its isotope by a_{e1}, whose TKK algebra is an isotope of TKK(spin)",
            "steps": [
                {"label": "spin", "op": "invariants", "torus": {"kind": "spin", "n": 3}},
                {"label": "isotope", "op": "invariants", "torus": {"kind": "jordan_isotope", "base": {"kind": "spin", "n": 3}, "u": [-1, 0, 0]}},
                {"label": "tkk-iso", "op": "lie_iso", "iso": "tkk", "model": {"model": "tkk", "coord": {"kind": "spin", "n": 3}}, "shift": "1,0,0", "window": 1}
            ],
            "expectations": [
                {"expect": "value", "step": "spin", "key": "sigma", "value": [0, 0, 0]},
                {"expect": "value", "step": "isotope", "key": "sigma", "value": [1, 0, 0]},
                {"expect": "step", "step": "tkk-iso", "passed": true}
            ]
        })),
        scenario(json!({
            "name": "quadform-classify-n2",
            "description": "isometry classes of mod-2 quadratic forms of rank 2, the torus round trip, and invariance under involution twists",
            "steps": [
                {"label": "classify", "op": "quadform_classify", "n": 2},
                {"label": "twist-11", "op": "quadform_twist", "torus": kq(), "e": [1, 1], "window": 2},
                {"label": "twist-1m", "op": "quadform_twist", "torus": kq(), "e": [1, -1], "window": 2},
                {"label": "twist-mm", "op": "quadform_twist", "torus": kq(), "e": [-1, -1], "window": 2},
                {"label": "involution", "op": "involution", "torus": kq(), "e": [1, 1], "window": 2}
            ],
            "expectations": [
                {"expect": "value", "step": "classify", "key": "classes", "value": 4},
                {"expect": "value", "step": "classify", "key": "orbit_sizes", "value": [1, 1, 3, 3]},
                {"expect": "step", "step": "classify", "passed": true},
                {"expect": "step", "step": "twist-11", "passed": true},
                {"expect": "step", "step": "twist-1m", "passed": true},
                {"expect": "step", "step": "twist-mm", "passed": true},
                {"expect": "step", "step": "involution", "passed": true}
            ]
        })),
        scenario(json!({
            "name": "eala-sl2-loop",
            "description": "E(L, SCDer, 0) for L = sl_2 over k[t, t^-1]",
            "steps": [{"label": "build", "op": "eala_build", "model": sl2_loop(), "window": 2}],
            "expectations": [
                {"expect": "value", "step": "build", "key": "degree_zero_dim", "value": 5},
                {"expect": "value", "step": "build", "key": "h_dim", "value": 3},
                {"expect": "value", "step": "build", "key": "max_root_space_dim", "value": 1},
                {"expect": "step", "step": "build", "passed": true}
            ]
        })),
        scenario(json!({
            "name": "thm-6-chi-sl2-n1",
            "description": "the map chi from E(L) to E(L^(s)) for L = sl_2 over k[t, t^-1] and s(alpha) = 1",
            "steps": [
                {"label": "chi", "op": "eala_chi", "model": sl2_loop(), "shift": "1", "window": 1},
                {"label": "chi-w2", "op": "eala_chi", "model": sl2_loop(), "shift": "1", "window": 2, "samples": 2000}
            ],
            "expectations": [
                {"expect": "step", "step": "chi", "passed": true},
                {"expect": "step", "step": "chi-w2", "passed": true}
            ]
        })),
        scenario(json!({
            "name": "negative-controls",
            "description": "one corrupted structure constant, sign or map entry per layer must produce a failure with a witness",
            "steps": [
                {"label": "quantum-constant", "op": "flavor_laws", "window": 2,
                 "torus": {"kind": "perturbed", "base": kq(), "left": [1, 0], "right": [0, 1], "value": 2}},
                {"label": "octonion-sign", "op": "flavor_laws", "window": 2,
                 "torus": {"kind": "perturbed", "base": {"kind": "octonion"}, "left": [1, 0, 0], "right": [0, 1, 0], "value": -1}},
                {"label": "spin-constant", "op": "flavor_laws", "window": 2,
                 "torus": {"kind": "perturbed", "base": {"kind": "spin", "n": 3}, "left": [1, 0, 0], "right": [1, 0, 0], "value": 2}},
                {"label": "sl-constant", "op": "lie_axioms", "window": 1, "samples": 2000,
                 "model": {"model": "sl", "r": 2, "coord": {"kind": "perturbed", "base": kq(), "left": [1, 0], "right": [-1, 0], "value": 2}}},
                {"label": "diag-entry", "op": "lie_iso", "iso": "diag", "model": {"model": "sl", "r": 2, "coord": kq()}, "shift": "1,0;0,1", "perturb": {}, "window": 1},
                {"label": "tkk-entry", "op": "lie_iso", "iso": "tkk", "model": {"model": "tkk", "coord": {"kind": "spin", "n": 3}}, "shift": "1,0,0", "perturb": {}, "window": 1},
                {"label": "ssp-entry", "op": "lie_iso", "iso": "ssp", "model": {"model": "ssp", "r": 2, "coord": kq(), "involution": {"e": [1, 1]}}, "shift": "0,1;1,0", "perturb": {}, "window": 1},
                {"label": "eala-constant", "op": "eala_build", "window": 1, "samples": 3000,
                 "model": {"model": "sl", "r": 1, "coord": {"kind": "perturbed", "base": {"kind": "laurent", "n": 1}, "left": [1], "right": [-1], "value": 2}}},
                {"label": "chi-sign", "op": "eala_chi", "model": sl2_loop(), "shift": "1", "perturb": true, "window": 1}
            ],
            "expectations": [
                {"expect": "check", "step": "quantum-constant", "check": "associativity", "passed": false, "witness": true},
                {"expect": "check", "step": "octonion-sign", "check": "alternative laws", "passed": false, "witness": true},
                {"expect": "check", "step": "spin-constant", "check": "jordan identity", "passed": false, "witness": true},
                {"expect": "step", "step": "sl-constant", "passed": false},
                {"expect": "check", "step": "diag-entry", "check": "bracket preserved", "passed": false, "witness": true},
                {"expect": "check", "step": "tkk-entry", "check": "bracket preserved", "passed": false, "witness": true},
                {"expect": "check", "step": "ssp-entry", "check": "bracket preserved", "passed": false, "witness": true},
                {"expect": "step", "step": "eala-constant", "passed": false},
                {"expect": "check", "step": "chi-sign", "check": "bracket preserved", "passed": false, "witness": true}
            ]
        })),
        scenario(json!({
            "name": "corrupted-expectation",
            "description": "a deliberately wrong expected value; running it must fail and show the diff",
            "steps": [{"label": "spin", "op": "invariants", "torus": {"kind": "spin", "n": 3}}],
            "expectations": [{"expect": "value", "step": "spin", "key": "sigma", "value": [1, 0, 0]}]
        })),
    ]
}

pub fn list_scenarios() -> Vec<String> {
    catalogue().into_iter().map(|s| s.name).collect()
}

pub fn find_scenario(name: &str) -> Result<Scenario> {
    catalogue()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Validation(format!("unknown scenario {name:?}; known: {}", list_scenarios().join(", "))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_names_are_unique() {
        let names = list_scenarios();
        let set: std::collections::BTreeSet<_> = names.iter().collect();
        assert_eq!(set.len(), names.len());
        assert!(names.contains(&"thm-6-chi-sl2-n1".to_string()));
        assert!(names.contains(&"quadform-classify-n2".to_string()));
        for s in catalogue() {
            validate(&s).unwrap();
        }
    }

    #[test]
    fn scenarios_round_trip_through_json() {
        for s in catalogue() {
            let text = serde_json::to_string(&s).unwrap();
            let back: Scenario = serde_json::from_str(&text).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn corrupted_expectation_fails_with_diff() {
        let r = run_scenario(&find_scenario("corrupted-expectation").unwrap(), &RunOptions::default()).unwrap();
        assert!(!r.passed);
        assert_eq!(r.diffs.len(), 1);
        assert_eq!(r.diffs[0].actual, json!([0, 0, 0]));
    }

    #[test]
    fn unknown_step_is_rejected() {
        let mut s = find_scenario("corrupted-expectation").unwrap();
        s.expectations.push(Expectation::Step { step: "nope".into(), passed: true });
        assert!(matches!(run_scenario(&s, &RunOptions::default()), Err(Error::Validation(_))));
    }
}
