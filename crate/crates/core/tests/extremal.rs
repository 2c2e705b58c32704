use sqham::extremal::cover::{
    build_good_pair_graph, good_pair_union_bound, hall_triangle_cover, is_triangle_cover, square_ham_from_cover, Segment,
};
use sqham::extremal::dirac::{dirac_ham_cycle, is_ham_cycle};
use sqham::extremal::extremal_square_cycle;
use sqham::generators::{gen_bad_vertex_instance, gen_near_complete_tripartite, standard_parts};
use sqham::{verify_square_cycle, verify_square_path, Graph, Parameters, Rational};

#[test]
fn near_complete_instances_close_into_square_cycles() {
    let a = Rational::new(1, 50);
    for m in [10, 20, 30] {
        for seed in 0..5 {
            let g = gen_near_complete_tripartite(m, a, seed).unwrap();
            let parts = standard_parts(m);
            let cover = hall_triangle_cover(&g, &parts, a).unwrap();
            assert!(is_triangle_cover(&g, &parts, &cover));
            let pieces: Vec<Segment> = cover.triangles.iter().map(|&t| t.into()).collect();
            let gp = build_good_pair_graph(&g, &pieces);
            assert!(2 * gp.min_degree > m);
            assert!(Rational::from_integer(gp.min_degree as i64) >= good_pair_union_bound(m, a));
            let c = square_ham_from_cover(&g, &pieces, None).unwrap();
            assert!(verify_square_cycle(&g, &c).unwrap().hamiltonian);
            let p = square_ham_from_cover(&g, &pieces, Some((0, m - 1))).unwrap();
            assert!(verify_square_path(&g, &p));
            assert_eq!(&p[..3], &pieces[0].0[..]);
            assert_eq!(&p[3 * m - 3..], &pieces[m - 1].0[..]);
        }
    }
}

#[test]
fn dirac_on_random_dense_graph() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(50);
    let g = loop {
        let g = Graph::from_fn(50, |_, _| rng.gen_bool(0.75));
        if 2 * g.min_degree() > 50 {
            break g;
        }
    };
    assert!(is_ham_cycle(&g, &dirac_ham_cycle(&g).unwrap()));
}

#[test]
fn bad_vertex_instances_assemble() {
    let params = Parameters::default();
    for seed in 0..5 {
        let inst = gen_bad_vertex_instance(60, params.alpha_prime, params.beta, params.gamma, seed).unwrap();
        let w = extremal_square_cycle(&inst.graph, &standard_parts(60), &params).unwrap();
        assert!(verify_square_cycle(&inst.graph, &w.cycle).unwrap().hamiltonian);
        assert_eq!(w.stats.exceptional_segments, 6);
        let bound = (Rational::from_integer(1) - Rational::from_integer(3) * params.alpha_prime) * Rational::from_integer(60);
        assert!(Rational::from_integer(w.stats.exceptional_degree.unwrap() as i64) >= bound);
    }
}
