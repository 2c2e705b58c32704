//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Tolerances are the constants below.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sqham::extremal::cover::{build_good_pair_graph, hall_triangle_cover, square_ham_from_cover, Segment};
use sqham::extremal::extremal_square_cycle;
use sqham::generators::{
    gen_bad_vertex_instance, gen_cover_plus_noise, gen_gnp, gen_near_complete_tripartite, standard_parts, two_triangles,
};
use sqham::nonextremal::facts::{ore_edges_check, Implication};
use sqham::nonextremal::{assemble, connect_edges, four_or_five, FourOrFive, NonExtremalError, NonExtremalWitness};
use sqham::oracles::{exact_square_ham_cycle, SearchBudget, SearchOutcome};
use sqham::{Graph, Parameters, Rational, Vertex};

const FOUR_OR_FIVE_SECS: f64 = 1.0;
const ORE_EDGES_GRAPHS: usize = 10_000;
const ORE_EDGES_MAX_N: usize = 40;
const ORE_EDGES_SECS: f64 = 30.0;
const TRIPARTITE_MS: [usize; 4] = [10, 20, 40, 60];
const TRIPARTITE_SEEDS: u64 = 20;
const TRIPARTITE_SECS: f64 = 60.0;
const BAD_VERTEX_M: usize = 60;
const BAD_VERTEX_SEEDS: u64 = 20;
const CONNECT_N: usize = 300;
const CONNECT_INSTANCES: u64 = 5;
const CONNECT_PAIRS: usize = 100;
const CONNECT_MAX_Q: usize = 18;
const CONNECT_MIN_RATE: f64 = 0.95;
const ORACLE_GRAPHS: u64 = 500;
const ORACLE_MAX_N: usize = 12;
const PLANTED_NS: [usize; 3] = [300, 1000, 3000];
const PLANTED_CLASS: usize = 25;
const PLANTED_SEEDS: u64 = 10;
const PLANTED_MIN_RATE: f64 = 0.90;
const PLANTED_RUN_SECS: f64 = 60.0;

fn alpha_prime_tripartite() -> Rational {
    Rational::new(1, 50)
}

fn planted_noise() -> Rational {
    Rational::new(19, 20)
}

fn planted_params() -> Parameters {
    Parameters { class_size: Some(PLANTED_CLASS), ..Parameters::default() }
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

/// Square Hamiltonian cycle check written from the definition, independent
/// of the library verifier.
fn is_square_ham_cycle(g: &Graph, c: &[Vertex]) -> bool {
    let n = g.n();
    if c.len() != n || n < 5 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in c {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..n).all(|i| g.adjacent(c[i], c[(i + 1) % n]) && g.adjacent(c[i], c[(i + 2) % n]))
}

fn is_square_path(g: &Graph, p: &[Vertex]) -> bool {
    let mut seen = vec![false; g.n()];
    p.iter().all(|&v| v < g.n() && !std::mem::replace(&mut seen[v], true))
        && (0..p.len()).all(|i| (1..=2).all(|d| i + d >= p.len() || g.adjacent(p[i], p[i + d])))
}

/// `min deg(u) + deg(v)` over non-adjacent pairs, by direct enumeration.
fn brute_ore_degree(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = None;
    for u in 0..n {
        for v in u + 1..n {
            if !g.adjacent(u, v) {
                let s = g.degree(u) + g.degree(v);
                best = Some(best.map_or(s, |b: usize| b.min(s)));
            }
        }
    }
    best
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let (mut paths, mut pairs, mut bad) = (0, 0, Vec::new());
    for mask in 0..512u16 {
        let g = two_triangles(mask);
        let (t, t2) = ([0, 1, 2], [3, 4, 5]);
        match four_or_five(&g, t, t2) {
            Ok(FourOrFive::SquarePath(p)) => {
                if is_square_path(&g, &p) && p[..3].iter().all(|v| t.contains(v)) && p[3..].iter().all(|v| t2.contains(v)) {
                    paths += 1;
                } else {
                    bad.push(mask);
                }
            }
            Ok(FourOrFive::NonEdgePairs((x1, y1), (x2, y2))) => {
                if x1 != x2 && y1 != y2 && x1 < 3 && x2 < 3 && y1 >= 3 && y2 >= 3 && !g.adjacent(x1, y1) && !g.adjacent(x2, y2) {
                    pairs += 1;
                } else {
                    bad.push(mask);
                }
            }
            Err(_) => bad.push(mask),
        }
    }
    let t = secs(start.elapsed());
    verdict(
        bad.is_empty() && t < FOUR_OR_FIVE_SECS,
        format!("512 patterns: {paths} square paths, {pairs} non-edge pairs, {} bad; {t:.3}s (< {FOUR_OR_FIVE_SECS}s)", bad.len()),
    )
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut violations, mut mismatches, mut exercised) = (0, 0, 0);
    for _ in 0..ORE_EDGES_GRAPHS {
        let n = rng.gen_range(2..=ORE_EDGES_MAX_N);
        let p = Rational::new(rng.gen_range(1..=20), 20);
        let g = gen_gnp(n, p, rng.gen()).expect("valid probability");
        let d2 = brute_ore_degree(&g);
        let e = Rational::from_integer(g.edge_count() as i64);
        let nn = Rational::from_integer(n as i64);
        for k in 1..=7 {
            let d = Rational::new(k, 10);
            let hyp = d2.is_some_and(|x| Rational::from_integer(x as i64) >= Rational::from_integer(2) * d * nn);
            if hyp {
                exercised += 1;
                if e < d * nn * nn / Rational::from_integer(2) {
                    violations += 1;
                }
            }
            let lib = ore_edges_check(&g, d).expect("n >= 2").status;
            let expect = match (d2, hyp) {
                (None, _) => Implication::Vacuous,
                (Some(_), false) => Implication::HypothesisFails,
                (Some(_), true) if e >= d * nn * nn / Rational::from_integer(2) => Implication::Holds,
                _ => Implication::Violated,
            };
            mismatches += usize::from(lib != expect);
        }
    }
    let t = secs(start.elapsed());
    verdict(
        violations == 0 && mismatches == 0 && t < ORE_EDGES_SECS,
        format!(
            "{ORE_EDGES_GRAPHS} graphs x 7 values of d: {exercised} with hypothesis, {violations} violations, {mismatches} library mismatches; {t:.2}s (< {ORE_EDGES_SECS}s)"
        ),
    )
}

fn tripartite_witness(m: usize, seed: u64) -> Result<(Vec<Vertex>, usize), String> {
    let a = alpha_prime_tripartite();
    let g = gen_near_complete_tripartite(m, a, seed).map_err(|e| e.to_string())?;
    let parts = standard_parts(m);
    let cover = hall_triangle_cover(&g, &parts, a).map_err(|e| e.to_string())?;
    // Perfect cover: m disjoint triangles, one vertex per class each.
    let mut seen = vec![false; 3 * m];
    let perfect = cover.triangles.len() == m
        && cover.triangles.iter().all(|t| {
            (0..3).all(|h| t[h] / m == h && !std::mem::replace(&mut seen[t[h]], true))
                && g.adjacent(t[0], t[1])
                && g.adjacent(t[1], t[2])
                && g.adjacent(t[0], t[2])
        });
    if !perfect {
        return Err("cover is not a perfect triangle cover".into());
    }
    let pieces: Vec<Segment> = cover.triangles.iter().map(|&t| t.into()).collect();
    let gp = build_good_pair_graph(&g, &pieces);
    if 2 * gp.min_degree <= m {
        return Err(format!("good-pair graph has minimum degree {} <= m/2", gp.min_degree));
    }
    let c = square_ham_from_cover(&g, &pieces, None).map_err(|e| e.to_string())?;
    if !is_square_ham_cycle(&g, &c) {
        return Err("cycle does not verify".into());
    }
    Ok((c, gp.min_degree))
}

fn criterion_3(ledger: &mut Vec<(String, Vec<u8>)>) -> Verdict {
    let start = Instant::now();
    let (mut ok, mut fails, mut min_ratio) = (0, Vec::new(), f64::INFINITY);
    for m in TRIPARTITE_MS {
        for seed in 0..TRIPARTITE_SEEDS {
            match tripartite_witness(m, seed) {
                Ok((c, d)) => {
                    ok += 1;
                    min_ratio = min_ratio.min(d as f64 / m as f64);
                    ledger.push((format!("tripartite m={m} seed={seed}"), serde_json::to_vec(&c).unwrap()));
                }
                Err(e) => fails.push(format!("m={m} seed={seed}: {e}")),
            }
        }
    }
    let total = TRIPARTITE_MS.len() * TRIPARTITE_SEEDS as usize;
    let t = secs(start.elapsed());
    verdict(
        ok == total && t < TRIPARTITE_SECS,
        format!("{ok}/{total} perfect covers and verified cycles, min δ(H′)/m = {min_ratio:.3} (> 0.5); {t:.2}s (< {TRIPARTITE_SECS}s){}", first(&fails)),
    )
}

fn bad_vertex_witness(seed: u64) -> Result<Vec<Vertex>, String> {
    let p = Parameters::default();
    let (a, b, c) = (Rational::new(1, 100), Rational::new(1, 20), Rational::new(3, 10));
    let inst = gen_bad_vertex_instance(BAD_VERTEX_M, a, b, c, seed).map_err(|e| e.to_string())?;
    let params = Parameters { alpha_prime: a, beta: b, gamma: c, ..p };
    let w = extremal_square_cycle(&inst.graph, &standard_parts(BAD_VERTEX_M), &params).map_err(|e| e.to_string())?;
    if !is_square_ham_cycle(&inst.graph, &w.cycle) {
        return Err("cycle does not verify".into());
    }
    if inst.bad.is_empty() || !inst.bad.iter().all(|v| w.cycle.contains(v)) {
        return Err("a planted bad vertex is missing".into());
    }
    Ok(w.cycle)
}

fn criterion_4(ledger: &mut Vec<(String, Vec<u8>)>) -> Verdict {
    let mut fails = Vec::new();
    for seed in 0..BAD_VERTEX_SEEDS {
        match bad_vertex_witness(seed) {
            Ok(c) => ledger.push((format!("bad-vertex seed={seed}"), serde_json::to_vec(&c).unwrap())),
            Err(e) => fails.push(format!("seed {seed}: {e}")),
        }
    }
    let ok = BAD_VERTEX_SEEDS as usize - fails.len();
    verdict(
        fails.is_empty(),
        format!("m = {BAD_VERTEX_M}, α′ = 1/100, β = 1/20, γ = 3/10: {ok}/{BAD_VERTEX_SEEDS} verified cycles through every bad vertex{}", first(&fails)),
    )
}

fn criterion_5() -> Verdict {
    let p = planted_params();
    let (mut tried, mut ok, mut long, mut broken, mut skipped) = (0, 0, 0, 0, 0);
    let mut deepest: BTreeMap<String, usize> = BTreeMap::new();
    let mut max_q = 0;
    for inst_seed in 0..CONNECT_INSTANCES {
        let inst = gen_cover_plus_noise(CONNECT_N, PLANTED_CLASS, planted_noise(), 500 + inst_seed, &p).expect("planted instance");
        let g = &inst.graph;
        let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(inst_seed);
        let mut done = 0;
        while done < CONNECT_PAIRS {
            let a = edges[rng.gen_range(0..edges.len())];
            let b = edges[rng.gen_range(0..edges.len())];
            if [b.0, b.1].contains(&a.0) || [b.0, b.1].contains(&a.1) {
                continue;
            }
            match connect_edges(g, a, b, &g.empty_set(), &p) {
                Err(NonExtremalError::Hypothesis(_)) => {
                    skipped += 1;
                    continue;
                }
                Ok(c) => {
                    let ends = (c.path[0], c.path[1]) == a && (c.path[c.path.len() - 2], c.path[c.path.len() - 1]) == b;
                    if !is_square_path(g, &c.path) || !ends {
                        broken += 1;
                    } else if c.q().len() > CONNECT_MAX_Q {
                        long += 1;
                    } else {
                        ok += 1;
                    }
                    max_q = max_q.max(c.q().len());
                }
                Err(e) => {
                    let key = match &e {
                        NonExtremalError::ConnectorExhausted { deepest, .. } => deepest.to_string(),
                        other => other.stage().to_string(),
                    };
                    *deepest.entry(key).or_insert(0) += 1;
                }
            }
            tried += 1;
            done += 1;
        }
    }
    let rate = ok as f64 / tried as f64;
    verdict(
        broken == 0 && long == 0 && rate >= CONNECT_MIN_RATE,
        format!(
            "{tried} pairs on {CONNECT_INSTANCES} instances (n = {CONNECT_N}): success {:.1}% (>= {:.0}%), max |Q| = {max_q} (<= {CONNECT_MAX_Q}), {broken} unverified, {long} too long, {skipped} pairs outside the hypothesis resampled, failures by deepest case {deepest:?}",
            100.0 * rate,
            100.0 * CONNECT_MIN_RATE
        ),
    )
}

/// The small-graph mix: half `G(n, p)`, half near-tripartite graphs with
/// random in-class edges added.
fn small_graph(i: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(6_000 + i);
    if i % 2 == 0 {
        let n = rng.gen_range(5..=ORACLE_MAX_N);
        gen_gnp(n, Rational::new(rng.gen_range(12..=20), 20), rng.gen()).expect("valid probability")
    } else {
        let m = rng.gen_range(2..=ORACLE_MAX_N / 3);
        let base = gen_near_complete_tripartite(m, Rational::new(rng.gen_range(0..=2), 5), rng.gen()).expect("valid m");
        let extra = Rational::new(rng.gen_range(0..=4), 4);
        let mut coin = ChaCha8Rng::seed_from_u64(rng.gen());
        Graph::from_fn(3 * m, |u, v| base.adjacent(u, v) || (u / m == v / m && coin.gen_ratio(*extra.numer() as u32, 4)))
    }
}

fn small_witnesses(g: &Graph) -> Vec<(&'static str, Vec<Vertex>)> {
    let tiny = Parameters { class_size: Some(1), min_class: 1, enforce_connect_floor: false, ..Parameters::default() };
    let mut out = Vec::new();
    if let Ok(w) = assemble(g, &tiny) {
        out.push(("assemble", w.cycle));
    }
    if g.n() % 3 == 0 {
        if let Ok(w) = extremal_square_cycle(g, &standard_parts(g.n() / 3), &Parameters::default()) {
            out.push(("extremal", w.cycle));
        }
    }
    out
}

fn criterion_6(ledger: &mut Vec<(String, Vec<u8>)>) -> Verdict {
    let (mut emitted, mut disagreements, mut undecided, mut invalid) = (0, 0, 0, 0);
    let mut by_engine: BTreeMap<&str, usize> = BTreeMap::new();
    let mut oracle_yes = 0;
    for i in 0..ORACLE_GRAPHS {
        let g = small_graph(i);
        let ws = small_witnesses(&g);
        let exact = exact_square_ham_cycle(&g, SearchBudget::nodes(50_000_000)).expect("n >= 5");
        oracle_yes += usize::from(matches!(exact, SearchOutcome::Found(_)));
        for (engine, c) in ws {
            emitted += 1;
            *by_engine.entry(engine).or_insert(0) += 1;
            invalid += usize::from(!is_square_ham_cycle(&g, &c));
            match exact {
                SearchOutcome::Found(_) => {}
                SearchOutcome::NotExists => disagreements += 1,
                SearchOutcome::BudgetExhausted => undecided += 1,
            }
            ledger.push((format!("small graph {i} {engine}"), serde_json::to_vec(&c).unwrap()));
        }
    }
    verdict(
        disagreements == 0 && undecided == 0 && invalid == 0,
        format!(
            "{ORACLE_GRAPHS} graphs (n <= {ORACLE_MAX_N}), oracle finds a cycle in {oracle_yes}: {emitted} witnesses emitted {by_engine:?}, {disagreements} disagreements, {undecided} undecided, {invalid} invalid"
        ),
    )
}

struct PlantedRun {
    n: usize,
    seed: u64,
    secs: f64,
    result: Result<NonExtremalWitness, NonExtremalError>,
    graph: Graph,
}

fn planted_run(n: usize, seed: u64) -> PlantedRun {
    let start = Instant::now();
    let p = planted_params();
    let inst = gen_cover_plus_noise(n, PLANTED_CLASS, planted_noise(), seed, &p).expect("planted instance");
    let result = assemble(&inst.graph, &p);
    PlantedRun { n, seed, secs: secs(start.elapsed()), result, graph: inst.graph }
}

fn criterion_7(runs: &[PlantedRun], ledger: &mut Vec<(String, Vec<u8>)>) -> Verdict {
    let (mut ok, mut slow, mut undiagnosed) = (0, 0, 0);
    let mut stages: BTreeMap<&str, usize> = BTreeMap::new();
    let mut per_n: BTreeMap<usize, (usize, f64)> = BTreeMap::new();
    let mut fails = Vec::new();
    for r in runs {
        let entry = per_n.entry(r.n).or_insert((0, 0.0));
        entry.1 = entry.1.max(r.secs);
        if r.secs >= PLANTED_RUN_SECS {
            slow += 1;
        }
        match &r.result {
            Ok(w) if is_square_ham_cycle(&r.graph, &w.cycle) && r.secs < PLANTED_RUN_SECS => {
                ok += 1;
                entry.0 += 1;
                ledger.push((format!("planted n={} seed={}", r.n, r.seed), serde_json::to_vec(w).unwrap()));
            }
            Ok(_) => fails.push(format!("n={} seed={}: slow or unverified", r.n, r.seed)),
            Err(e) => {
                *stages.entry(e.stage()).or_insert(0) += 1;
                undiagnosed += usize::from(e.to_string().is_empty());
                fails.push(format!("n={} seed={}: [{}] {e}", r.n, r.seed, e.stage()));
            }
        }
    }
    let rate = ok as f64 / runs.len() as f64;
    let summary: Vec<String> =
        per_n.iter().map(|(n, (k, t))| format!("n={n}: {k}/{PLANTED_SEEDS} (max {t:.2}s)")).collect();
    verdict(
        rate >= PLANTED_MIN_RATE && undiagnosed == 0,
        format!(
            "class {PLANTED_CLASS}, noise 19/20: {} ; success {:.0}% (>= {:.0}%), {slow} runs over {PLANTED_RUN_SECS}s, failures by stage {stages:?}{}",
            summary.join(", "),
            100.0 * rate,
            100.0 * PLANTED_MIN_RATE,
            first(&fails)
        ),
    )
}

/// Every bookkeeping invariant of one successful run; returns the first
/// violation.
fn bookkeeping(g: &Graph, w: &NonExtremalWitness) -> Result<(), String> {
    let n = g.n();
    let s = w.cover.s;
    for (i, b) in w.cover.blocks.iter().enumerate() {
        for part in &b.parts {
            if part.len() < s || part.len() > 2 * s {
                return Err(format!("cover block {i} has a class of {} outside [{s}, {}]", part.len(), 2 * s));
            }
        }
    }
    let cc = &w.connected;
    let mut owner = vec![usize::MAX; n];
    for (i, b) in cc.blocks.iter().enumerate() {
        for &v in b.parts.iter().flatten() {
            if owner[v] != usize::MAX {
                return Err(format!("vertex {v} lies in two blocks"));
            }
            owner[v] = i;
        }
    }
    let mut on_connector = vec![false; n];
    for (i, c) in cc.connectors.iter().enumerate() {
        for &v in &c.path {
            if std::mem::replace(&mut on_connector[v], true) {
                return Err(format!("vertex {v} lies on two connectors"));
            }
        }
        if c.q().iter().any(|&v| owner[v] != usize::MAX) {
            return Err(format!("middle of connector {i} meets a block"));
        }
        let (from, to) = (&cc.blocks[c.from], &cc.blocks[c.to]);
        if !(0..3).all(|h| from.parts[h].contains(&c.u()[h]) && to.parts[h].contains(&c.v()[h])) {
            return Err(format!("connector {i} does not end in its blocks"));
        }
    }
    let forbidden = cc.connectors.iter().map(|c| c.path.len()).sum::<usize>();
    if forbidden != cc.forbidden.len() || forbidden * s > 48 * n {
        return Err(format!("{forbidden} connector vertices against the bound 48n/s = {}", 48 * n / s));
    }
    let ins = &w.insertion;
    let cap = ins.freeze_at.min(ins.block_cap);
    if let Some((i, c)) = ins.counts.iter().enumerate().find(|&(_, &c)| c > cap) {
        return Err(format!("block {i} took {c} insertions over the cap {cap}"));
    }
    if ins.max_triangles > 8 {
        return Err(format!("an insertion modified {} triangles", ins.max_triangles));
    }
    Ok(())
}

fn criterion_8(runs: &[PlantedRun]) -> Verdict {
    let mut checked = 0;
    let mut violations = Vec::new();
    for r in runs {
        if let Ok(w) = &r.result {
            checked += 1;
            if let Err(e) = bookkeeping(&r.graph, w) {
                violations.push(format!("n={} seed={}: {e}", r.n, r.seed));
            }
        }
    }
    verdict(
        violations.is_empty() && checked > 0,
        format!(
            "{checked} successful runs: class sizes in [s, 2s], connectors disjoint and off the blocks, forbidden <= 48n/s, insertion caps; {} violations{}",
            violations.len(),
            first(&violations)
        ),
    )
}

fn criterion_9(first_pass: &[(String, Vec<u8>)]) -> Verdict {
    let mut second = Vec::new();
    for m in TRIPARTITE_MS {
        for seed in 0..TRIPARTITE_SEEDS {
            if let Ok((c, _)) = tripartite_witness(m, seed) {
                second.push((format!("tripartite m={m} seed={seed}"), serde_json::to_vec(&c).unwrap()));
            }
        }
    }
    for seed in 0..BAD_VERTEX_SEEDS {
        if let Ok(c) = bad_vertex_witness(seed) {
            second.push((format!("bad-vertex seed={seed}"), serde_json::to_vec(&c).unwrap()));
        }
    }
    for i in 0..ORACLE_GRAPHS {
        for (engine, c) in small_witnesses(&small_graph(i)) {
            second.push((format!("small graph {i} {engine}"), serde_json::to_vec(&c).unwrap()));
        }
    }
    for n in PLANTED_NS {
        for seed in 0..PLANTED_SEEDS {
            let r = planted_run(n, seed);
            if let Ok(w) = &r.result {
                if r.secs < PLANTED_RUN_SECS {
                    second.push((format!("planted n={n} seed={seed}"), serde_json::to_vec(w).unwrap()));
                }
            }
        }
    }
    let differing: Vec<&String> =
        first_pass.iter().zip(&second).filter(|(a, b)| a != b).map(|(a, _)| &a.0).collect();
    let bytes: usize = first_pass.iter().map(|(_, b)| b.len()).sum();
    verdict(
        first_pass.len() == second.len() && differing.is_empty(),
        format!(
            "{} witnesses ({bytes} bytes) regenerated: {} in the second pass, {} differ{}",
            first_pass.len(),
            second.len(),
            differing.len(),
            differing.first().map(|s| format!(" (first: {s})")).unwrap_or_default()
        ),
    )
}

fn first(items: &[String]) -> String {
    items.first().map(|s| format!("; first: {s}")).unwrap_or_default()
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags such as `--nocapture`; `--list`
    // must print nothing so that tooling can enumerate tests.
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut ledger = Vec::new();
    let mut results = Vec::new();
    let mut report = |k: usize, name: &str, v: Verdict| {
        println!("{} criterion {k} ({name}): {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        results.push(v.pass);
    };
    report(1, "four-or-five patterns", criterion_1());
    report(2, "ore degree and edge count", criterion_2());
    report(3, "near-complete tripartite covers", criterion_3(&mut ledger));
    report(4, "bad-vertex instances", criterion_4(&mut ledger));
    report(5, "connector length", criterion_5());
    report(6, "oracle agreement", criterion_6(&mut ledger));
    let runs: Vec<PlantedRun> =
        PLANTED_NS.iter().flat_map(|&n| (0..PLANTED_SEEDS).map(move |seed| planted_run(n, seed))).collect();
    report(7, "planted pipeline", criterion_7(&runs, &mut ledger));
    report(8, "bookkeeping invariants", criterion_8(&runs));
    drop(runs);
    report(9, "determinism", criterion_9(&ledger));
    let failed = results.iter().filter(|&&p| !p).count();
    println!("acceptance: {}/{} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
