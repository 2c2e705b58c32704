use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sqham::extremal_detect::{classify, find_sparse_set, is_sparse_witness, sparse_target, Condition, Mode};
use sqham::graph::Graph;
use sqham::Rational;

fn sparse(g: &Graph, mask: u32, alpha: Rational, k: usize) -> bool {
    let vs: Vec<usize> = (0..g.n()).filter(|&i| mask >> i & 1 == 1).collect();
    if vs.len() < k {
        return false;
    }
    let mut e = 0;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            e += g.adjacent(vs[i], vs[j]) as i64;
        }
    }
    Rational::new(2 * e, (vs.len() * vs.len()) as i64) < alpha
}

/// Condition by definition: all subsets, all disjoint pairs.
fn brute(g: &Graph, alpha: Rational) -> Condition {
    let n = g.n();
    let k = sparse_target(n, alpha);
    let list: Vec<u32> = (0..1u32 << n).filter(|&m| sparse(g, m, alpha, k)).collect();
    if list.iter().any(|&a| list.iter().any(|&b| a & b == 0)) {
        return Condition::Ec2;
    }
    if !list.is_empty() {
        return Condition::Ec3;
    }
    let bound = (Rational::new(1, 3) + alpha) * Rational::from_integer(n as i64);
    if (0..n).any(|v| Rational::from_integer(g.degree(v) as i64) < bound) {
        return Condition::Ec1;
    }
    Condition::NonExtremal
}

#[test]
fn exact_classify_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let alphas = [Rational::new(1, 10), Rational::new(1, 5), Rational::new(3, 10)];
    let mut seen = std::collections::BTreeSet::new();
    for round in 0..300 {
        let n = rng.gen_range(5..=12);
        let p = rng.gen_range(0.05..1.0);
        let g = if round % 10 == 0 {
            // Clique on n-1 vertices plus a pendant vertex.
            Graph::from_fn(n, |u, v| v < n - 1 || u == 0)
        } else {
            Graph::from_fn(n, |_, _| rng.gen_bool(p))
        };
        let alpha = alphas[rng.gen_range(0..3)];
        let rep = classify(&g, alpha, Some(Mode::Exact), 0, 1).unwrap();
        assert_eq!(rep.condition, brute(&g, alpha), "n={n} alpha={alpha}");
        for set in [&rep.a1, &rep.a2].into_iter().flatten() {
            assert!(is_sparse_witness(&g, &g.set_of(set.iter().copied()), alpha));
        }
        if let (Some(a), Some(b)) = (&rep.a1, &rep.a2) {
            assert!(a.iter().all(|v| !b.contains(v)));
        }
        seen.insert(format!("{:?}", rep.condition));
    }
    assert_eq!(seen.len(), 4, "sample should hit every verdict: {seen:?}");
}

#[test]
fn exact_sparse_search_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..20 {
        let g = Graph::from_fn(15, |_, _| rng.gen_bool(0.5));
        let alpha = Rational::new(rng.gen_range(1..=4), 10);
        let k = sparse_target(15, alpha);
        let exists = (0..1u32 << 15).any(|m| sparse(&g, m, alpha, k));
        let out = find_sparse_set(&g, alpha, Mode::Exact, &g.vertex_set(), 0, 1).unwrap();
        assert_eq!(out.set.is_some(), exists);
    }
}

#[test]
fn heuristic_witnesses_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..40 {
        let n = rng.gen_range(20..60);
        let p = rng.gen_range(0.05..0.6);
        let g = Graph::from_fn(n, |_, _| rng.gen_bool(p));
        let alpha = Rational::new(1, 5);
        let rep = classify(&g, alpha, Some(Mode::Heuristic), 1, 10).unwrap();
        for set in [&rep.a1, &rep.a2].into_iter().flatten() {
            assert!(is_sparse_witness(&g, &g.set_of(set.iter().copied()), alpha));
        }
        if rep.condition == Condition::NonExtremal {
            assert!(!rep.certified);
        }
    }
}
