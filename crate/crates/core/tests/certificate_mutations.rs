use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use genus_core::{
    compute_genus, deserialize_certificate, generate, serialize_certificate, verify_certificate,
    Condition, EmbeddingCertificate, EngineConfig, Graph,
};

fn fixtures() -> Vec<(Graph, EmbeddingCertificate)> {
    [
        "complete:5",
        "complete:6",
        "bipartite:3,3",
        "bipartite:4,5",
        "petersen",
        "heawood",
        "multipartite:2,2,2,2",
        "circulant:14:1,2,3,6",
        "cycle:7",
    ]
    .iter()
    .map(|spec| {
        let g = generate(spec).unwrap();
        let cert = compute_genus(&g, &EngineConfig::default()).unwrap().certificate;
        (g, cert)
    })
    .collect()
}

#[test]
fn round_trip_through_text() {
    for (g, cert) in fixtures() {
        let text = serialize_certificate(&cert);
        let back = deserialize_certificate(&text).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&g, &back).unwrap().is_valid());
    }
}

#[test]
fn thousand_mutations_are_rejected() {
    let cases = fixtures();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut by_kind = [0usize; 3];
    for _ in 0..1000 {
        let (g, original) = &cases[rng.gen_range(0..cases.len())];
        let mut cert = original.clone();
        let kind = rng.gen_range(0..3);
        let expected = match kind {
            0 => {
                let i = rng.gen_range(0..cert.faces.len());
                cert.faces[i] = cert.faces[i].reversed();
                Condition::DartCover
            }
            1 => {
                let i = rng.gen_range(0..cert.faces.len());
                cert.faces.remove(i);
                Condition::DartCover
            }
            _ => {
                let delta = rng.gen_range(1..=3);
                cert.claimed_genus = if cert.claimed_genus >= delta && rng.gen_bool(0.5) {
                    cert.claimed_genus - delta
                } else {
                    cert.claimed_genus + delta
                };
                Condition::Genus
            }
        };
        by_kind[kind] += 1;
        let report = verify_certificate(g, &cert).unwrap();
        assert!(!report.is_valid());
        assert!(report.has(expected), "kind {kind}: {:?}", report.violations);
    }
    assert!(by_kind.iter().all(|&k| k > 250));
}

#[test]
fn wrong_graph_is_a_fingerprint_error() {
    let (_, cert) = fixtures().remove(0);
    let other = generate("complete:6").unwrap();
    assert!(verify_certificate(&other, &cert).is_err());
}
