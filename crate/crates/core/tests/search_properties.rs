use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use genus_core::census::random_connected;
use genus_core::cycles::{build_cycle_index, count_cycles_up_to};
use genus_core::distribution::generate_distributions;
use genus_core::search::{search_with, CandidateTable, SearchConfig, SearchControl};
use genus_core::{
    genus_from_face_count, verify_certificate, Budget, EmbeddingCertificate, SearchResult,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn found_face_sets_are_embeddings(seed in any::<u64>(), n in 3usize..=7, extra in 1usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(&mut rng, n, 4, extra);
        let counts = count_cycles_up_to(&g, g.n());
        prop_assume!(!counts.is_empty());
        let population: Vec<(usize, usize)> =
            counts.iter().map(|(&l, &c)| (l, 2 * c as usize)).collect();
        let index = build_cycle_index(&g, counts.keys().copied(), usize::MAX).unwrap();
        let table = CandidateTable::new(&g, &index);
        for dist in generate_distributions(&population, 2 * g.m()).take(20) {
            let control = SearchControl::new(Budget::nodes(500_000));
            let r = search_with(&g, &table, &dist, &SearchConfig::default(), &control);
            if let SearchResult::Found(faces) = r {
                prop_assert_eq!(faces.len(), dist.face_count());
                let walks: Vec<_> = faces.iter().map(|f| f.darts.clone()).collect();
                let used: usize = walks.iter().map(Vec::len).sum();
                prop_assert_eq!(used, 2 * g.m());
                let cert = EmbeddingCertificate::from_dart_faces(&g, &walks);
                prop_assert_eq!(cert.claimed_genus, genus_from_face_count(g.n(), g.m(), faces.len()));
                let report = verify_certificate(&g, &cert).unwrap();
                prop_assert!(report.is_valid(), "{:?}", report.violations);
            }
        }
    }

    #[test]
    fn single_thread_is_deterministic(seed in any::<u64>(), n in 4usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(&mut rng, n, 4, 2 * n);
        let a = genus_core::compute_genus(&g, &Default::default());
        let b = genus_core::compute_genus(&g, &Default::default());
        prop_assert_eq!(a, b);
    }
}
