use sqham::extremal::cover::cross_min_degree;
use sqham::extremal::repair::bad_vertices;
use sqham::generators::*;
use sqham::measures::ore_degree;
use sqham::oracles::{exact_square_ham_cycle, SearchBudget, SearchOutcome};
use sqham::{Graph, Parameters, Rational};

#[test]
fn near_complete_respects_floor_and_hall() {
    for seed in 0..20 {
        let g = gen_near_complete_tripartite(10, Rational::new(1, 5), seed).unwrap();
        assert!(cross_min_degree(&g, &standard_parts(10)) >= 8);
        let g5 = gen_near_complete_tripartite(5, Rational::new(1, 5), seed).unwrap();
        // Hall's condition for the first two classes, by subset enumeration.
        for mask in 1u32..32 {
            let s: Vec<usize> = (0..5).filter(|i| mask >> i & 1 == 1).collect();
            let nb = (5..10).filter(|&y| s.iter().any(|&x| g5.adjacent(x, y))).count();
            assert!(nb >= s.len());
        }
    }
}

#[test]
fn generators_are_deterministic() {
    let a = gen_near_complete_tripartite(12, Rational::new(1, 10), 9).unwrap();
    let b = gen_near_complete_tripartite(12, Rational::new(1, 10), 9).unwrap();
    assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
    let p = Parameters::default();
    let x = gen_cover_plus_noise(300, 25, Rational::new(9, 10), 4, &p).unwrap();
    let y = gen_cover_plus_noise(300, 25, Rational::new(9, 10), 4, &p).unwrap();
    assert_eq!(x.graph.edges().collect::<Vec<_>>(), y.graph.edges().collect::<Vec<_>>());
    assert_eq!(x.plan.blocks, y.plan.blocks);
}

#[test]
fn bad_vertex_degree_scans() {
    let (a, b, c) = (Rational::new(1, 100), Rational::new(1, 20), Rational::new(3, 10));
    for seed in 0..20 {
        let inst = gen_bad_vertex_instance(60, a, b, c, seed).unwrap();
        let parts = standard_parts(60);
        let bad = bad_vertices(&inst.graph, &parts, a);
        assert_eq!(bad, inst.bad);
        for p in &parts {
            let k = bad.iter().filter(|v| p.contains(v)).count();
            assert_eq!(k, 2);
            assert!(k as f64 <= 2.0 * 0.05 * 60.0);
        }
        assert!(cross_min_degree(&inst.graph, &parts) >= 18);
    }
    assert!(gen_bad_vertex_instance(60, Rational::new(1, 10), b, c, 0).is_err());
}

#[test]
fn cover_plus_noise_post_check_matches_oracle() {
    let p = Parameters::default();
    for seed in 0..3 {
        let inst = gen_cover_plus_noise(300, 25, Rational::new(17, 20), seed, &p).unwrap();
        let d2 = ore_degree(&inst.graph).unwrap();
        assert_eq!(Some(d2), inst.plan.ore_degree);
        assert!(Rational::from_integer(d2 as i64) >= (Rational::new(4, 3) - Rational::new(2, 1000)) * Rational::from_integer(300));
        assert!(inst.plan.blocks.iter().all(|t| t.is_complete_in(&inst.graph) && t.min_class() == 25));
    }
}

fn check_tight(n: usize, target: Tightness) -> Graph {
    let rep = search_tightness_example(n, target, SearchBudget::nodes(5_000_000)).unwrap();
    assert_eq!(rep.outcome, "found", "{target:?} at n = {n}: {rep:?}");
    let g = rep.graph.unwrap();
    assert!(meets_tightness(&g, target));
    assert_eq!(exact_square_ham_cycle(&g, SearchBudget::default()).unwrap(), SearchOutcome::NotExists);
    g
}

#[test]
fn tightness_examples_found_and_certified() {
    let g = check_tight(12, Tightness::LowVertex);
    assert_eq!(ore_degree(&g), Some(16));
    assert_eq!(g.min_degree(), 6);
    let h = check_tight(11, Tightness::CliqueJoin);
    assert_eq!(ore_degree(&h), Some(14));
    check_tight(8, Tightness::CliqueJoin);
}
