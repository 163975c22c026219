use genus_core::census::connected_graphs;
use genus_core::oracle::{brute_force_genus, DEFAULT_ORACLE_CAP};
use genus_core::{
    generate, initial_bounds, verify_certificate, Budget, BoundsSession, EngineConfig,
    RefineOutcome,
};

#[test]
fn brackets_contain_the_oracle_genus() {
    for n in 2..=6 {
        for g in connected_graphs(n) {
            let (truth, _) = brute_force_genus(&g, DEFAULT_ORACLE_CAP).unwrap();
            let (lo, hi) = initial_bounds(&g);
            assert!(lo <= truth && truth <= hi, "initial [{lo}, {hi}] vs {truth}");
            let mut s = BoundsSession::new(&g, EngineConfig::default());
            s.sample_upper(5, n as u64);
            let mut steps = 0;
            loop {
                let st = s.state();
                assert!(st.lower <= truth && truth <= st.upper);
                if s.refine(Budget::unlimited()).unwrap() == RefineOutcome::Closed {
                    break;
                }
                steps += 1;
                assert!(steps < 50);
            }
            let st = s.state();
            assert_eq!((st.lower, st.upper), (truth, truth), "edges {:?}", g.edges());
            for w in st.history.windows(2) {
                assert!(w[1].lower >= w[0].lower && w[1].upper <= w[0].upper);
            }
            if let Some(cert) = s.certificate() {
                assert!(verify_certificate(&g, cert).unwrap().is_valid());
                assert_eq!(cert.claimed_genus, truth);
            }
        }
    }
}

#[test]
fn tiny_budgets_never_tighten() {
    let g = generate("complete:6").unwrap();
    let mut s = BoundsSession::new(&g, EngineConfig::default());
    let start = (s.state().lower, s.state().upper);
    for _ in 0..5 {
        assert_eq!(s.refine(Budget::nodes(1)).unwrap(), RefineOutcome::BudgetExceeded);
    }
    assert_eq!((s.state().lower, s.state().upper), start);
    assert_eq!(s.state().history.len(), 6);
}

#[test]
fn k33_initial_bracket() {
    assert_eq!(initial_bounds(&generate("bipartite:3,3").unwrap()), (1, 2));
}

#[test]
fn heuristic_never_beats_girth_bound() {
    for spec in ["complete:6", "petersen", "heawood", "bipartite:4,4", "circulant:10:1,3"] {
        let g = generate(spec).unwrap();
        let (lo, _) = initial_bounds(&g);
        for seed in 0..5 {
            let (genus, cert) = genus_core::heuristic_upper_bound(&g, 10, seed).unwrap();
            assert!(genus >= lo);
            assert!(verify_certificate(&g, &cert).unwrap().is_valid());
        }
    }
}
