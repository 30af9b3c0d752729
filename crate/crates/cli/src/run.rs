//! Task pipelines. Each produces a JSON body with sorted keys.

use serde::Serialize;
use serde_json::{json, Value};
use syzlab_core::group::{decompose_rep, regular_representation, validate_irrep_catalog};
use syzlab_core::invariant::{minimal_generators, noether_number};
use syzlab_core::poly::WeightScope;
use syzlab_core::schur::{
    build_universal_rep, cauchy_check, full_syzygy_degree, kostka_number, lemma1_check, lr_coefficient, row_bound_check,
    schur_multiplicities, stabilization_check, weight_decomposition, SchurDecomposition, Space, UniversalSpec,
};
use syzlab_core::{
    audit, build_e, inequality_chain_check, m_bound_check, molien_series, ComplementOrder, Error, GeneratorMode,
    InvariantRing, KoszulComplex, Limits, NoetherResult, Partition, TorTable,
};

use crate::error::{CliError, Result};
use crate::problem::{GroupSetting, Problem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Group,
    Invariants,
    Noether,
    Syzygies,
    Bounds,
    Universal,
    Schur,
    Chain,
}

impl Task {
    pub const ALL: [Task; 8] =
        [Task::Group, Task::Invariants, Task::Noether, Task::Syzygies, Task::Bounds, Task::Universal, Task::Schur, Task::Chain];

    pub fn name(self) -> &'static str {
        match self {
            Task::Group => "group",
            Task::Invariants => "invariants",
            Task::Noether => "noether",
            Task::Syzygies => "syzygies",
            Task::Bounds => "bounds",
            Task::Universal => "universal",
            Task::Schur => "schur",
            Task::Chain => "chain",
        }
    }

    pub fn parse(s: &str) -> Result<Task> {
        Task::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| CliError::Schema(format!("unknown task: {s}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BudgetLevel {
    Small,
    Default,
    Large,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub level: BudgetLevel,
    pub limits: Limits,
    /// Largest `dim W` for which optional universal-representation syzygies are computed.
    pub universal_dim_limit: usize,
}

impl Budget {
    pub fn new(level: BudgetLevel) -> Self {
        let d = Limits::default();
        let (limits, universal_dim_limit) = match level {
            BudgetLevel::Small => (Limits { order_limit: 64, basis_limit: 2000, exact_noether_limit: 4, ..d }, 4),
            BudgetLevel::Default => (d, 8),
            BudgetLevel::Large => (Limits { basis_limit: 200_000, exact_noether_limit: 12, ..d }, 12),
        };
        Budget { level, limits, universal_dim_limit }
    }
}

/// Every parameter a run used, after applying overrides and defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub task: Task,
    pub p: usize,
    pub p_max: usize,
    pub mode: GeneratorMode,
    pub max_degree: usize,
    pub g_max: usize,
    pub budget: Budget,
}

#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub p: Option<usize>,
    pub p_max: Option<usize>,
    pub mode: Option<GeneratorMode>,
}

pub fn resolve_parameters(task: Task, problem: &Problem, overrides: &Overrides, budget: Budget) -> Result<Parameters> {
    let doc = &problem.doc;
    let p = overrides.p.or(doc.p).unwrap_or(1);
    let explicit_p_max = overrides.p_max.or(doc.p_max);
    let p_max = match task {
        Task::Chain => explicit_p_max.unwrap_or(12),
        Task::Bounds => explicit_p_max.unwrap_or(p),
        _ => explicit_p_max.unwrap_or(p.max(2)),
    };
    if p == 0 || p_max == 0 {
        return Err(CliError::Usage("p must be at least 1".into()));
    }
    if p_max < p && task != Task::Chain {
        return Err(CliError::Usage(format!("p_max = {p_max} is below p = {p}")));
    }
    let g = problem.setting.as_ref().map_or(1, |s| s.group.order());
    let max_degree = doc.max_degree.unwrap_or(match task {
        Task::Schur => 6,
        _ => 2 * g,
    });
    Ok(Parameters {
        task,
        p,
        p_max,
        mode: overrides.mode.or(doc.mode).unwrap_or(GeneratorMode::Minimal),
        max_degree,
        g_max: doc.g_max.unwrap_or(12),
        budget,
    })
}

pub fn run_task(problem: &Problem, params: &Parameters) -> Result<Value> {
    if params.task == Task::Chain {
        return chain(params);
    }
    let s = problem
        .setting
        .as_ref()
        .ok_or_else(|| CliError::Schema(format!("task {} needs a \"group\"", params.task.name())))?;
    match params.task {
        Task::Group => group(s),
        Task::Invariants => invariants(s, params),
        Task::Noether => noether_task(s, params),
        Task::Syzygies => syzygies(s, params),
        Task::Bounds => bounds(s, params),
        Task::Universal => universal(s, params),
        Task::Schur => schur(problem, s, params),
        Task::Chain => unreachable!(),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn group(s: &GroupSetting) -> Result<Value> {
    let g = s.group.order();
    let rep = s.representation()?;
    let catalog = s.catalog.as_ref().map(|c| {
        let v = validate_irrep_catalog(c);
        let (m, n) = (c.m(), c.n());
        json!({
            "irrep_degrees": c.degrees(),
            "m": m,
            "n": n,
            "m_bound": {"m_squared": m * m, "ng": n * g, "passed": m_bound_check(n, g, m)},
            "validation": {
                "sum_of_squares": v.sum_of_squares,
                "irrep_count": v.irrep_count,
                "class_count": v.class_count,
                "failures": v.failures,
                "passed": v.passed(),
            },
        })
    });
    let decomposition = s.catalog.as_ref().map(|c| decompose_rep(&rep, c)).transpose()?;
    Ok(json!({
        "source": s.source,
        "order": g,
        "exponent": s.group.exponent(),
        "generator_count": s.group.generators().len(),
        "class_sizes": s.group.classes().iter().map(Vec::len).collect::<Vec<_>>(),
        "catalog": catalog,
        "rep": {"degree": rep.degree(), "multiplicities": decomposition},
    }))
}

fn invariants(s: &GroupSetting, params: &Parameters) -> Result<Value> {
    let ring = s.ring(&params.budget.limits)?;
    let d = params.max_degree;
    let molien = molien_series(ring.rep(), d)?;
    let hilbert = ring.hilbert_function(d)?;
    if molien != hilbert {
        return Err(Error::inconsistency(format!("Molien series {molien:?} disagrees with invariant bases {hilbert:?}")).into());
    }
    let mg = minimal_generators(&ring, s.group.order(), ComplementOrder::Forward)?;
    Ok(json!({
        "rep_degree": ring.rep().degree(),
        "molien": molien,
        "generator_degrees": mg.degrees,
        "generator_count": mg.degrees.len(),
        "beta_v": mg.beta_v,
        "searched_to": mg.stop,
    }))
}

/// β(G) from the regular representation when the order allows, otherwise the bound `g`.
pub fn noether(s: &GroupSetting, limits: &Limits) -> Result<NoetherResult> {
    if let Some(c) = &s.catalog {
        return Ok(noether_number(c, limits.exact_noether_limit, limits.basis_limit)?);
    }
    let g = s.group.order();
    if g > limits.exact_noether_limit {
        return Ok(NoetherResult { value: g, exact: false });
    }
    let ring = InvariantRing::plain(regular_representation(&s.group), limits.basis_limit)?;
    let mg = minimal_generators(&ring, g, ComplementOrder::Forward)?;
    Ok(NoetherResult { value: mg.beta_v, exact: true })
}

fn beta_value(beta: &NoetherResult) -> Value {
    json!({
        "value": beta.value,
        "exact": beta.exact,
        "method": if beta.exact { "regular representation" } else { "fallback (Noether bound g)" },
    })
}

fn noether_task(s: &GroupSetting, params: &Parameters) -> Result<Value> {
    let beta = noether(s, &params.budget.limits)?;
    Ok(json!({"order": s.group.order(), "beta": beta_value(&beta)}))
}

pub fn tor_value(t: &TorTable) -> Value {
    let rows: Vec<Value> = t.entries.iter().map(|(&(p, d), &dim)| json!({"p": p, "d": d, "dim": dim})).collect();
    json!({
        "mode": t.mode,
        "p_max": t.p_max,
        "rows": rows,
        "ceilings": t.ceilings,
        "guard": t.guard,
        "scanned_to": t.scanned_to,
        "euler_checked": t.euler_checked,
    })
}

fn syzygies(s: &GroupSetting, params: &Parameters) -> Result<Value> {
    let limits = &params.budget.limits;
    let beta = noether(s, limits)?;
    let ring = s.ring(limits)?;
    let gens = build_e(&ring, params.mode, &beta, ComplementOrder::Forward)?;
    let k = KoszulComplex::new(&ring, &gens)?;
    let table = k.tor_table(params.p_max)?;
    let degrees = |t: &TorTable| -> Vec<Value> {
        (1..=params.p_max).map(|p| json!({"p": p, "value": t.top_degree(p), "ceiling": t.ceilings[p]})).collect()
    };
    let (s_p, s_prime_p) = match params.mode {
        GeneratorMode::Minimal => (degrees(&table), None),
        GeneratorMode::Full => {
            let min = build_e(&ring, GeneratorMode::Minimal, &beta, ComplementOrder::Forward)?;
            let t = KoszulComplex::new(&ring, &min)?.tor_table(params.p_max)?;
            (degrees(&t), Some(degrees(&table)))
        }
    };
    Ok(json!({
        "beta": beta_value(&beta),
        "rep_degree": ring.rep().degree(),
        "generators": {"mode": gens.mode, "count": gens.len(), "degrees": gens.degrees(), "beta_v": gens.beta_v},
        "tor_table": tor_value(&table),
        "s_p": s_p,
        "s_prime_p": s_prime_p,
    }))
}

fn bounds(s: &GroupSetting, params: &Parameters) -> Result<Value> {
    let limits = &params.budget.limits;
    let catalog = s.require_catalog()?;
    let beta = noether(s, limits)?;
    let ring = s.ring(limits)?;
    let first = if params.p_max > params.p { 1 } else { params.p };
    let reports = audit(&ring, catalog, &beta, first..=params.p_max, params.mode)?;
    let violated = reports.iter().filter(|r| r.conjecture_violated()).count();
    Ok(json!({"beta": beta_value(&beta), "reports": to_value(&reports), "conjecture_violations": violated}))
}

fn describe(spec: &UniversalSpec) -> String {
    let parts: Vec<String> = spec
        .multiplicities
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, k)| format!("V_{}⊗C^{k}", i + 1))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

fn universal(s: &GroupSetting, params: &Parameters) -> Result<Value> {
    let limits = &params.budget.limits;
    let catalog = s.require_catalog()?;
    let beta = noether(s, limits)?;
    let spec = build_universal_rep(catalog, &beta, params.p)?;
    let within = spec.degree() <= params.budget.universal_dim_limit;
    let s_prime_p =
        if within { full_syzygy_degree(catalog, &spec.multiplicities, &beta, params.p, limits.basis_limit)? } else { None };
    Ok(json!({
        "p": params.p,
        "beta": beta_value(&beta),
        "multiplicities": spec.multiplicities,
        "irrep_degrees": spec.irrep_degrees,
        "description": describe(&spec),
        "dimension": spec.degree(),
        "expected_dimension": beta.value * catalog.m() * params.p + catalog.group().order(),
        "s_prime_p": s_prime_p,
        "s_prime_p_computed": within,
    }))
}

fn decomposition_rows(d: &SchurDecomposition) -> Vec<Value> {
    d.multiplicities.iter().map(|(shape, m)| json!({"shape": shape, "multiplicity": m})).collect()
}

fn partition(v: &[usize]) -> Result<Partition> {
    Ok(Partition::new(v.to_vec())?)
}

fn schur(problem: &Problem, s: &GroupSetting, params: &Parameters) -> Result<Value> {
    let limits = &params.budget.limits;
    let catalog = s.require_catalog()?;
    let degrees = catalog.degrees();
    let beta = noether(s, limits)?;
    let p = params.p;

    let mut cauchy = Vec::new();
    for (i, &di) in degrees.iter().enumerate() {
        for d in 0..=params.max_degree {
            let c = cauchy_check(catalog, i, di + 1, d)?;
            if !c.passed {
                return Err(Error::inconsistency(format!("Cauchy formula fails for irrep {i}, d = {d}")).into());
            }
            cauchy.push(json!({"irrep": i + 1, "k": di + 1, "d": d, "dimension": c.lhs.to_string(), "passed": c.passed}));
        }
    }

    // ℓ_i(R_d) ≤ d_i at the certifying dimensions k_i = d_i + 1
    let spec = UniversalSpec::new(catalog, degrees.iter().map(|d| d + 1).collect())?;
    let ring = spec.ring(catalog, limits.basis_limit)?;
    let no_gens = NoetherResult { value: 1, exact: false };
    let gens = build_e(&ring, GeneratorMode::Full, &no_gens, ComplementOrder::Forward)?;
    let k = KoszulComplex::new(&ring, &gens)?;
    let mut invariant_rows = Vec::new();
    for d in 0..=params.max_degree {
        let weights = weight_decomposition(&k, Space::Invariants { d }, WeightScope::Dominant)?;
        let decomp = schur_multiplicities(&weights, ring.layout())?;
        if decomp.dimension() != ring.degree_dim(d)? as u128 {
            return Err(Error::inconsistency(format!("Schur decomposition of R_{d} does not reconstruct its dimension")).into());
        }
        let r = row_bound_check(&decomp, &degrees)?;
        invariant_rows.push(json!({
            "d": d,
            "multiplicities": spec.multiplicities,
            "bounds": r.bounds,
            "max_rows": r.max_rows,
            "passed": r.passed,
            "witnesses": r.witnesses,
            "decomposition": decomposition_rows(&decomp),
        }));
    }

    // ℓ_i(Tor_p) ≤ βp + d_i at k_i = βp + d_i + 1
    let grown = build_universal_rep(catalog, &beta, p)?.grown(1);
    let syzygy_rows = if grown.degree() <= params.budget.universal_dim_limit {
        let ring = grown.ring(catalog, limits.basis_limit)?;
        let gens = build_e(&ring, GeneratorMode::Full, &beta, ComplementOrder::Forward)?;
        let k = KoszulComplex::new(&ring, &gens)?;
        let bounds: Vec<usize> = degrees.iter().map(|d| beta.value * p + d).collect();
        let mut rows = Vec::new();
        for d in 0..=k.ceiling(p) {
            let weights = weight_decomposition(&k, Space::Tor { p, d }, WeightScope::Dominant)?;
            let decomp = schur_multiplicities(&weights, ring.layout())?;
            if decomp.is_empty() {
                continue;
            }
            let r = row_bound_check(&decomp, &bounds)?;
            rows.push(json!({
                "d": d,
                "bounds": r.bounds,
                "max_rows": r.max_rows,
                "passed": r.passed,
                "witnesses": r.witnesses,
                "decomposition": decomposition_rows(&decomp),
            }));
        }
        json!({"p": p, "multiplicities": grown.multiplicities, "rows": rows, "checked_to": k.ceiling(p)})
    } else {
        Value::Null
    };

    let mut samples: Vec<(String, Vec<usize>)> = Vec::new();
    if let Some(list) = &problem.doc.samples {
        samples.extend(list.iter().map(|ks| (format!("{ks:?}"), ks.clone())));
    } else if let Some(ks) = s.multiplicities() {
        samples.push((format!("{ks:?}"), ks.to_vec()));
    }
    for (_, ks) in &samples {
        if ks.len() != catalog.len() {
            return Err(CliError::Schema(format!("sample {ks:?} needs {} multiplicities", catalog.len())));
        }
    }
    let universal_dim = build_universal_rep(catalog, &beta, p)?.degree();
    let lemma1 = if !samples.is_empty() && universal_dim <= params.budget.universal_dim_limit {
        let r = lemma1_check(catalog, &beta, &samples, p, limits.basis_limit)?;
        json!({"report": to_value(&r), "passed": r.passed()})
    } else {
        Value::Null
    };

    let stabilization = match s.multiplicities() {
        Some(ks) if ks.iter().map(|k| k + 1).zip(&degrees).map(|(k, d)| k * d).sum::<usize>() <= params.budget.universal_dim_limit => {
            let spec = UniversalSpec::new(catalog, ks.to_vec())?;
            match full_syzygy_degree(catalog, ks, &beta, p, limits.basis_limit)? {
                Some(d) => to_value(&stabilization_check(catalog, &spec, &beta, p, d, GeneratorMode::Full, limits.basis_limit)?),
                None => Value::Null,
            }
        }
        _ => Value::Null,
    };

    let kostka = problem
        .doc
        .kostka
        .iter()
        .flatten()
        .map(|[l, m]| Ok(json!({"lambda": l, "mu": m, "value": kostka_number(&partition(l)?, m)?})))
        .collect::<Result<Vec<_>>>()?;
    let lr = problem
        .doc
        .lr
        .iter()
        .flatten()
        .map(|[l, m, n]| {
            Ok(json!({"lambda": l, "mu": m, "nu": n, "value": lr_coefficient(&partition(l)?, &partition(m)?, &partition(n)?)}))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(json!({
        "beta": beta_value(&beta),
        "p": p,
        "cauchy": cauchy,
        "invariant_row_bounds": invariant_rows,
        "syzygy_row_bounds": syzygy_rows,
        "lemma1": lemma1,
        "stabilization": stabilization,
        "kostka": kostka,
        "lr": lr,
    }))
}

fn chain(params: &Parameters) -> Result<Value> {
    let r = inequality_chain_check(params.g_max, params.p_max);
    if !r.passed() {
        return Err(Error::inconsistency(format!("bound inequality chain fails: {}", r.failures.join("; "))).into());
    }
    Ok(json!({"report": to_value(&r), "passed": r.passed()}))
}
