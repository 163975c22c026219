use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use genus_core::census::{connected_graphs, random_connected};
use genus_core::oracle::{brute_force_genus, trace_faces, RotationSystem, DEFAULT_ORACLE_CAP};
use genus_core::{compute_genus, verify_certificate, EngineConfig, Graph};

fn check(g: &Graph) -> Result<(), String> {
    let (expected, witness) = brute_force_genus(g, DEFAULT_ORACLE_CAP).map_err(|e| e.to_string())?;
    let faces = trace_faces(g, &witness);
    let euler = g.n() as i64 - g.m() as i64 + faces.len() as i64;
    if euler > 2 || (2 - euler) % 2 != 0 || (2 - euler) / 2 != expected as i64 {
        return Err(format!("oracle witness breaks Euler: {euler}"));
    }
    let report = compute_genus(g, &EngineConfig::default()).map_err(|e| format!("{e} on {g:?}"))?;
    if report.genus != expected {
        return Err(format!(
            "engine {} vs oracle {expected} on edges {:?}",
            report.genus,
            g.edges()
        ));
    }
    let verdict = verify_certificate(g, &report.certificate).map_err(|e| e.to_string())?;
    if !verdict.is_valid() {
        return Err(format!("certificate rejected: {:?}", verdict.violations));
    }
    Ok(())
}

#[test]
fn census_up_to_six_vertices() {
    let mut failures = Vec::new();
    let mut total = 0;
    for n in 2..=6 {
        for g in connected_graphs(n) {
            total += 1;
            if let Err(e) = check(&g) {
                failures.push(e);
            }
        }
    }
    assert_eq!(total, 142);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn random_bounded_degree_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = Vec::new();
    for _ in 0..200 {
        let n = rng.gen_range(3..=8);
        let extra = rng.gen_range(0..=2 * n);
        let g = random_connected(&mut rng, n, 4, extra);
        if let Err(e) = check(&g) {
            failures.push(e);
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn every_rotation_obeys_euler_parity() {
    let g = genus_core::generate("bipartite:3,3").unwrap();
    // flip each vertex between its two cyclic orders
    for mask in 0u32..64 {
        let orders = (0..6)
            .map(|v| if mask >> v & 1 == 1 { vec![0, 2, 1] } else { vec![0, 1, 2] })
            .collect();
        let rot = RotationSystem::new(&g, orders).unwrap();
        let faces = trace_faces(&g, &rot);
        assert_eq!(faces.iter().map(Vec::len).sum::<usize>(), 18);
        assert_eq!((6 + 9 + faces.len()) % 2, 0);
    }
}

#[test]
#[ignore = "extended sample, minutes"]
fn wider_random_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut failures = Vec::new();
    for _ in 0..3000 {
        let n = rng.gen_range(4..=9);
        let extra = rng.gen_range(0..=3 * n);
        let g = random_connected(&mut rng, n, 5, extra);
        if genus_core::oracle::rotation_count(&g) > 20_000_000 {
            continue;
        }
        if let Err(e) = check(&g) {
            failures.push(e);
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
