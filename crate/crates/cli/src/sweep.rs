//! Parameter sweeps: a generator, a grid of its parameters and a seed list.
//! Each trial is an independent pure run; aggregates do not depend on
//! trial order.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sqham::extremal::cover::{build_good_pair_graph, hall_triangle_cover, is_triangle_cover, square_ham_from_cover};
use sqham::extremal::{extremal_square_cycle, Segment};
use sqham::generators::{
    gen_bad_vertex_instance, gen_cover_plus_noise, gen_gnp, gen_near_complete_tripartite, standard_parts, two_triangles,
};
use sqham::nonextremal::facts::{ore_edges_check, Implication};
use sqham::nonextremal::{assemble, four_or_five};
use sqham::oracles::{exact_square_ham_cycle, SearchBudget, SearchOutcome};
use sqham::ratio_serde::parse_ratio;
use sqham::{verify_square_cycle, Graph, Parameters, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// Every cross pattern between two triangles; grid key `mask`.
    FourOrFive,
    /// Ore-degree versus edge count on `G(n, p)`; keys `n`, `p`, `d`.
    OreEdges,
    /// Triangle cover and cycle on near-complete tripartite graphs; keys `m`, `alpha_prime`.
    NearTripartite,
    /// Extremal engine on instances with planted bad vertices; keys `m`, `alpha_prime`, `beta`, `gamma`.
    BadVertex,
    /// Full non-extremal pipeline on planted covers; keys `n`, `class_size`, `noise`.
    Planted,
    /// Both engines on `G(n, p)`, optionally cross-checked by the exact oracle; keys `n`, `p`.
    Gnp,
}

impl Generator {
    fn keys(self) -> &'static [&'static str] {
        match self {
            Generator::FourOrFive => &["mask"],
            Generator::OreEdges => &["n", "p", "d"],
            Generator::NearTripartite => &["m", "alpha_prime"],
            Generator::BadVertex => &["m", "alpha_prime", "beta", "gamma"],
            Generator::Planted => &["n", "class_size", "noise"],
            Generator::Gnp => &["n", "p"],
        }
    }
}

/// A list of values, or `{"range": [a, b]}` for the integers `a..b`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Values {
    List(Vec<Value>),
    Range { range: [i64; 2] },
}

impl Values {
    fn expand(&self) -> Vec<Value> {
        match self {
            Values::List(v) => v.clone(),
            Values::Range { range: [a, b] } => (*a..*b).map(Value::from).collect(),
        }
    }
}

/// A count (seeds `0..k`), an explicit list, or a range.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Seeds {
    Count(u64),
    List(Vec<u64>),
    Range { range: [u64; 2] },
}

impl Seeds {
    fn expand(&self) -> Vec<u64> {
        match self {
            Seeds::Count(k) => (0..*k).collect(),
            Seeds::List(v) => v.clone(),
            Seeds::Range { range: [a, b] } => (*a..*b).collect(),
        }
    }
}

impl Default for Seeds {
    fn default() -> Self {
        Seeds::Count(1)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub generator: Generator,
    #[serde(default)]
    pub grid: BTreeMap<String, Values>,
    #[serde(default)]
    pub seeds: Seeds,
    /// Cross-check emitted witnesses with the exact oracle (`gnp` only).
    #[serde(default)]
    pub oracle: bool,
    pub params: Option<Parameters>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trial {
    pub point: usize,
    pub seed: u64,
    pub ok: bool,
    /// `success`, `failure`, `precondition`, `no_witness` or `disagreement`.
    pub outcome: &'static str,
    pub stage: Option<&'static str>,
    pub detail: Option<String>,
    pub ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub p50: f64,
    pub p90: f64,
    pub p99: f64,
    pub max: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointSummary {
    pub grid: BTreeMap<String, Value>,
    pub trials: usize,
    pub successes: usize,
    pub rate: f64,
    pub outcomes: BTreeMap<&'static str, usize>,
    pub timing_ms: Timing,
    pub failures: Vec<Trial>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub generator: Generator,
    pub points: Vec<PointSummary>,
    pub trials: usize,
    pub successes: usize,
    pub rate: f64,
    pub disagreements: usize,
    pub timing_ms: Timing,
    pub rows: Vec<Trial>,
}

pub fn validate(spec: &SweepSpec) -> Result<Vec<BTreeMap<String, Value>>, String> {
    if spec.grid.is_empty() {
        return Err(format!("grid is empty; {:?} needs keys {:?}", spec.generator, spec.generator.keys()));
    }
    let keys = spec.generator.keys();
    for k in spec.grid.keys() {
        if !keys.contains(&k.as_str()) {
            return Err(format!("unknown grid key {k:?}; {:?} takes {keys:?}", spec.generator));
        }
    }
    for k in keys {
        match spec.grid.get(*k) {
            None => return Err(format!("grid key {k:?} is missing")),
            Some(v) if v.expand().is_empty() => return Err(format!("grid key {k:?} has no values")),
            Some(_) => {}
        }
    }
    if spec.generator != Generator::FourOrFive && spec.seeds.expand().is_empty() {
        return Err("seed list is empty".into());
    }
    if spec.oracle && spec.generator != Generator::Gnp {
        return Err("oracle cross-check is only available for the gnp generator".into());
    }
    if let Some(p) = &spec.params {
        p.validate().map_err(|e| e.to_string())?;
    }
    let mut points = vec![BTreeMap::new()];
    for (k, vals) in &spec.grid {
        let vals = vals.expand();
        points = points
            .into_iter()
            .flat_map(|p| {
                vals.iter().map(move |v| {
                    let mut q = p.clone();
                    q.insert(k.clone(), v.clone());
                    q
                })
            })
            .collect();
    }
    for p in &points {
        for k in keys {
            let v = &p[*k];
            match *k {
                "mask" | "n" | "m" | "class_size" => {
                    v.as_u64().ok_or_else(|| format!("{k} must be a non-negative integer, got {v}"))?;
                }
                _ => {
                    ratio(v).map_err(|e| format!("{k}: {e}"))?;
                }
            }
        }
    }
    Ok(points)
}

fn ratio(v: &Value) -> Result<Rational, String> {
    match v {
        Value::String(s) => parse_ratio(s),
        Value::Number(x) => parse_ratio(&x.to_string()),
        _ => Err(format!("expected a rational, got {v}")),
    }
}

fn int(p: &BTreeMap<String, Value>, k: &str) -> usize {
    p[k].as_u64().expect("validated") as usize
}

fn rat(p: &BTreeMap<String, Value>, k: &str) -> Rational {
    ratio(&p[k]).expect("validated")
}

struct TrialResult {
    ok: bool,
    outcome: &'static str,
    stage: Option<&'static str>,
    detail: Option<String>,
}

impl TrialResult {
    fn success() -> Self {
        TrialResult { ok: true, outcome: "success", stage: None, detail: None }
    }

    fn failure(stage: &'static str, detail: impl Into<String>) -> Self {
        TrialResult { ok: false, outcome: "failure", stage: Some(stage), detail: Some(detail.into()) }
    }

    fn precondition(detail: impl Into<String>) -> Self {
        TrialResult { ok: false, outcome: "precondition", stage: Some("precondition"), detail: Some(detail.into()) }
    }
}

fn trial(spec: &SweepSpec, params: &Parameters, budget: SearchBudget, p: &BTreeMap<String, Value>, seed: u64) -> TrialResult {
    match spec.generator {
        Generator::FourOrFive => {
            let mask = int(p, "mask");
            if mask >= 512 {
                return TrialResult::precondition(format!("mask {mask} is not a 9-bit pattern"));
            }
            let g = two_triangles(mask as u16);
            match four_or_five(&g, [0, 1, 2], [3, 4, 5]) {
                Ok(r) if r.holds(&g, [0, 1, 2], [3, 4, 5]) => TrialResult::success(),
                Ok(r) => TrialResult::failure("four_or_five", format!("returned branch does not hold: {r:?}")),
                Err(e) => TrialResult::failure("four_or_five", e.to_string()),
            }
        }
        Generator::OreEdges => {
            let g = match gen_gnp(int(p, "n"), rat(p, "p"), seed) {
                Ok(g) => g,
                Err(e) => return TrialResult::precondition(e.to_string()),
            };
            match ore_edges_check(&g, rat(p, "d")) {
                Ok(r) if r.status == Implication::Violated => TrialResult::failure("ore_edges", format!("{r:?}")),
                Ok(_) => TrialResult::success(),
                Err(e) => TrialResult::precondition(e.to_string()),
            }
        }
        Generator::NearTripartite => {
            let (m, a) = (int(p, "m"), rat(p, "alpha_prime"));
            let g = match gen_near_complete_tripartite(m, a, seed) {
                Ok(g) => g,
                Err(e) => return TrialResult::precondition(e.to_string()),
            };
            let parts = standard_parts(m);
            let cover = match hall_triangle_cover(&g, &parts, a) {
                Ok(c) if is_triangle_cover(&g, &parts, &c) => c,
                Ok(_) => return TrialResult::failure("cover", "returned cover is not a triangle cover"),
                Err(e) => return TrialResult::failure("cover", e.to_string()),
            };
            let pieces: Vec<Segment> = cover.triangles.iter().map(|&t| t.into()).collect();
            let gp = build_good_pair_graph(&g, &pieces);
            if 2 * gp.min_degree <= m {
                return TrialResult::failure("good_pairs", format!("good-pair min degree {} is not above {m}/2", gp.min_degree));
            }
            match square_ham_from_cover(&g, &pieces, None) {
                Ok(c) if hamiltonian(&g, &c) => TrialResult::success(),
                Ok(_) => TrialResult::failure("assemble", "cycle does not verify"),
                Err(e) => TrialResult::failure("assemble", e.to_string()),
            }
        }
        Generator::BadVertex => {
            let m = int(p, "m");
            let inst = match gen_bad_vertex_instance(m, rat(p, "alpha_prime"), rat(p, "beta"), rat(p, "gamma"), seed) {
                Ok(i) => i,
                Err(e) => return TrialResult::precondition(e.to_string()),
            };
            let params = Parameters { alpha_prime: rat(p, "alpha_prime"), beta: rat(p, "beta"), gamma: rat(p, "gamma"), ..params.clone() };
            match extremal_square_cycle(&inst.graph, &standard_parts(m), &params) {
                Ok(w) if hamiltonian(&inst.graph, &w.cycle) => TrialResult::success(),
                Ok(_) => TrialResult::failure("assemble", "cycle does not verify"),
                Err(e) => TrialResult::failure("extremal", e.to_string()),
            }
        }
        Generator::Planted => {
            let inst = match gen_cover_plus_noise(int(p, "n"), int(p, "class_size"), rat(p, "noise"), seed, params) {
                Ok(i) => i,
                Err(e) => return TrialResult::precondition(e.to_string()),
            };
            let params = Parameters { class_size: Some(int(p, "class_size")), ..params.clone() };
            match assemble(&inst.graph, &params) {
                Ok(w) if hamiltonian(&inst.graph, &w.cycle) => TrialResult::success(),
                Ok(_) => TrialResult::failure("assemble", "cycle does not verify"),
                Err(e) => TrialResult { ok: false, outcome: status_word(&e), stage: Some(e.stage()), detail: Some(e.to_string()) },
            }
        }
        Generator::Gnp => {
            let g = match gen_gnp(int(p, "n"), rat(p, "p"), seed) {
                Ok(g) => g,
                Err(e) => return TrialResult::precondition(e.to_string()),
            };
            gnp_trial(&g, params, budget, spec.oracle)
        }
    }
}

fn status_word(e: &sqham::nonextremal::NonExtremalError) -> &'static str {
    if e.stage() == "precondition" {
        "precondition"
    } else {
        "failure"
    }
}

fn hamiltonian(g: &Graph, c: &[usize]) -> bool {
    verify_square_cycle(g, c).is_ok_and(|r| r.hamiltonian)
}

/// Runs the non-extremal pipeline and, when `n` is a multiple of three, the
/// extremal engine on the consecutive-id partition. Every emitted witness
/// must verify and, with `oracle`, must agree with the exact search.
fn gnp_trial(g: &Graph, params: &Parameters, budget: SearchBudget, oracle: bool) -> TrialResult {
    let n = g.n();
    let mut witnesses = Vec::new();
    if let Ok(w) = assemble(g, params) {
        witnesses.push(("assemble", w.cycle));
    }
    if n >= 6 && n % 3 == 0 {
        if let Ok(w) = extremal_square_cycle(g, &standard_parts(n / 3), params) {
            witnesses.push(("extremal", w.cycle));
        }
    }
    for (engine, c) in &witnesses {
        if !hamiltonian(g, c) {
            return TrialResult::failure(engine, "emitted witness does not verify");
        }
    }
    if witnesses.is_empty() {
        return TrialResult { ok: true, outcome: "no_witness", stage: None, detail: None };
    }
    if oracle && n >= 5 {
        match exact_square_ham_cycle(g, budget) {
            Ok(SearchOutcome::NotExists) => {
                let engine = witnesses[0].0;
                return TrialResult {
                    ok: false,
                    outcome: "disagreement",
                    stage: Some(engine),
                    detail: Some("exact search reports no square Hamiltonian cycle".into()),
                };
            }
            Ok(_) => {}
            Err(e) => return TrialResult::precondition(e.to_string()),
        }
    }
    TrialResult::success()
}

fn percentiles(mut ms: Vec<f64>) -> Timing {
    if ms.is_empty() {
        return Timing { p50: 0.0, p90: 0.0, p99: 0.0, max: 0.0 };
    }
    ms.sort_by(f64::total_cmp);
    let at = |q: f64| ms[((q * (ms.len() - 1) as f64).round() as usize).min(ms.len() - 1)];
    Timing { p50: at(0.5), p90: at(0.9), p99: at(0.99), max: ms[ms.len() - 1] }
}

pub fn run_sweep(spec: &SweepSpec, base: &Parameters, budget: SearchBudget) -> Result<SweepReport, String> {
    let points = validate(spec)?;
    let params = spec.params.clone().unwrap_or_else(|| base.clone());
    let seeds = if spec.generator == Generator::FourOrFive { vec![0] } else { spec.seeds.expand() };
    let mut rows = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for &seed in &seeds {
            let start = Instant::now();
            let r = trial(spec, &params, budget, p, seed);
            let ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
            rows.push(Trial { point: i, seed, ok: r.ok, outcome: r.outcome, stage: r.stage, detail: r.detail, ms });
        }
    }
    let summaries = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mine: Vec<&Trial> = rows.iter().filter(|t| t.point == i).collect();
            let successes = mine.iter().filter(|t| t.ok).count();
            let mut outcomes = BTreeMap::new();
            for t in &mine {
                *outcomes.entry(t.outcome).or_insert(0) += 1;
            }
            PointSummary {
                grid: p.clone(),
                trials: mine.len(),
                successes,
                rate: successes as f64 / mine.len().max(1) as f64,
                outcomes,
                timing_ms: percentiles(mine.iter().map(|t| t.ms).collect()),
                failures: mine.iter().filter(|t| !t.ok).map(|t| (*t).clone()).collect(),
            }
        })
        .collect();
    let successes = rows.iter().filter(|t| t.ok).count();
    Ok(SweepReport {
        generator: spec.generator,
        points: summaries,
        trials: rows.len(),
        successes,
        rate: successes as f64 / rows.len().max(1) as f64,
        disagreements: rows.iter().filter(|t| t.outcome == "disagreement").count(),
        timing_ms: percentiles(rows.iter().map(|t| t.ms).collect()),
        rows,
    })
}
