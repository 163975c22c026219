//! Acceptance suite. Prints one PASS or FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use genus_core::census::{connected_graphs, random_connected};
use genus_core::formulas::{genus_formula_complete, genus_formula_complete_bipartite};
use genus_core::oracle::{brute_force_genus, DEFAULT_ORACLE_CAP};
use genus_core::{
    compute_genus, generate, initial_bounds, verify_certificate, Budget, BoundsSession, Condition,
    EngineConfig, Graph, RefineOutcome,
};

const LIMIT_FORMULA: Duration = Duration::from_secs(120);
const LIMIT_CAGE: Duration = Duration::from_secs(600);
const LIMIT_COCKTAIL: Duration = Duration::from_secs(600);
const LIMIT_CIRCULANT: Duration = Duration::from_secs(3600);
const MUTATIONS: usize = 1000;
const RANDOM_GRAPHS: usize = 200;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

/// Genus of `spec` within `limit`, with the certificate checked.
fn timed_genus(spec: &str, limit: Duration) -> Result<(usize, Duration), String> {
    let g = generate(spec).map_err(|e| format!("{spec}: {e}"))?;
    let config = EngineConfig {
        budget: Budget {
            max_nodes: None,
            max_time: Some(limit),
        },
        ..EngineConfig::default()
    };
    let start = Instant::now();
    let report = compute_genus(&g, &config).map_err(|e| format!("{spec}: {e}"))?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{spec}: {took:?} over {limit:?}"));
    }
    let verdict = verify_certificate(&g, &report.certificate).map_err(|e| e.to_string())?;
    if !verdict.is_valid() {
        return Err(format!("{spec}: certificate rejected"));
    }
    Ok((report.genus, took))
}

fn table(cases: &[(String, usize)], limit: Duration) -> Outcome {
    let mut slowest = Duration::ZERO;
    for (spec, want) in cases {
        let (got, took) = timed_genus(spec, limit)?;
        if got != *want {
            return Err(format!("{spec}: genus {got}, expected {want}"));
        }
        slowest = slowest.max(took);
    }
    Ok(format!("{} graphs, slowest {:.2}s", cases.len(), slowest.as_secs_f64()))
}

fn complete_cases() -> Vec<(String, usize)> {
    (3..=8)
        .map(|n| (format!("complete:{n}"), genus_formula_complete(n)))
        .collect()
}

fn bipartite_cases() -> Vec<(String, usize)> {
    let mut out = Vec::new();
    for a in 2..=4 {
        for b in a..=9 - a {
            out.push((format!("bipartite:{a},{b}"), genus_formula_complete_bipartite(a, b)));
        }
    }
    out
}

fn cage_cases() -> Vec<(String, usize)> {
    [(3, 0), (4, 1), (5, 1), (6, 1), (7, 2), (8, 4)]
        .iter()
        .map(|&(girth, g)| (format!("cage:3:{girth}"), g))
        .collect()
}

fn cocktail_cases() -> Vec<(String, usize)> {
    [
        ("multipartite:2,2", 0),
        ("multipartite:2,2,2", 0),
        ("multipartite:2,2,2,2", 1),
        ("multipartite:2,2,2,2,2", 3),
    ]
    .iter()
    .map(|&(s, g)| (s.to_string(), g))
    .collect()
}

fn circulant_cases() -> Vec<(String, usize)> {
    [
        ("circulant:14:1,2,3,6", 4),
        ("circulant:18:1,3,9", 4),
        ("circulant:20:1,3,5", 6),
        ("circulant:20:1,6,9", 6),
    ]
    .iter()
    .map(|&(s, g)| (s.to_string(), g))
    .collect()
}

fn gating_specs() -> Vec<String> {
    [
        complete_cases(),
        bipartite_cases(),
        cage_cases(),
        cocktail_cases(),
        circulant_cases(),
    ]
    .concat()
    .into_iter()
    .map(|(s, _)| s)
    .collect()
}

fn oracle_mismatch(g: &Graph) -> Option<String> {
    let (truth, _) = brute_force_genus(g, DEFAULT_ORACLE_CAP).expect("small graph");
    match compute_genus(g, &EngineConfig::default()) {
        Ok(r) if r.genus == truth => None,
        Ok(r) => Some(format!("engine {} vs oracle {truth} on {:?}", r.genus, g.edges())),
        Err(e) => Some(format!("{e} on {:?}", g.edges())),
    }
}

fn census() -> Vec<Graph> {
    (2..=6).flat_map(connected_graphs).collect()
}

fn criterion_oracle() -> Outcome {
    let census = census();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let random: Vec<Graph> = (0..RANDOM_GRAPHS)
        .map(|_| {
            let n = rng.gen_range(3..=8);
            let extra = rng.gen_range(0..=2 * n);
            random_connected(&mut rng, n, 4, extra)
        })
        .collect();
    let mismatches: Vec<String> = census.iter().chain(&random).filter_map(oracle_mismatch).collect();
    if mismatches.is_empty() {
        Ok(format!("{} census + {} random graphs agree", census.len(), random.len()))
    } else {
        Err(format!("{} mismatches, first: {}", mismatches.len(), mismatches[0]))
    }
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_genus"))
}

fn criterion_certificates() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let specs = gating_specs();
    for (i, spec) in specs.iter().enumerate() {
        let path = dir.path().join(format!("{i}.cert"));
        let p = path.to_str().unwrap();
        let run = binary()
            .args(["genus", "--gen", spec, "--emit-certificate", p])
            .output()
            .map_err(|e| e.to_string())?;
        if !run.status.success() {
            return Err(format!("genus failed on {spec}"));
        }
        let check = binary()
            .args(["verify", "--gen", spec, "--certificate", p])
            .output()
            .map_err(|e| e.to_string())?;
        if !check.status.success() {
            return Err(format!("verify rejected the certificate of {spec}"));
        }
    }

    let bases: Vec<(Graph, genus_core::EmbeddingCertificate)> = specs
        .iter()
        .filter(|s| !s.starts_with("cage:3:3") && !s.contains("bipartite:2,"))
        .take(12)
        .map(|s| {
            let g = generate(s).unwrap();
            let c = compute_genus(&g, &EngineConfig::default()).unwrap().certificate;
            (g, c)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for round in 0..MUTATIONS {
        let (g, base) = &bases[rng.gen_range(0..bases.len())];
        let mut cert = base.clone();
        let expected = match rng.gen_range(0..3) {
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
                cert.claimed_genus += rng.gen_range(1..=3);
                Condition::Genus
            }
        };
        let report = verify_certificate(g, &cert).map_err(|e| e.to_string())?;
        if report.is_valid() || !report.has(expected) {
            return Err(format!("mutation {round} not rejected as {expected:?}"));
        }
    }
    Ok(format!(
        "{} emitted certificates verified, {MUTATIONS} mutations rejected",
        specs.len()
    ))
}

fn criterion_bounds() -> Outcome {
    if initial_bounds(&generate("bipartite:3,3").unwrap()) != (1, 2) {
        return Err("K3,3 initial bounds are not (1, 2)".into());
    }
    let graphs = census();
    for g in &graphs {
        let (truth, _) = brute_force_genus(g, DEFAULT_ORACLE_CAP).unwrap();
        let mut s = BoundsSession::new(g, EngineConfig::default());
        loop {
            let st = s.state();
            if st.lower > truth || truth > st.upper {
                return Err(format!("[{}, {}] misses {truth} on {:?}", st.lower, st.upper, g.edges()));
            }
            match s.refine(Budget::unlimited()) {
                Ok(RefineOutcome::Closed) => break,
                Ok(_) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
        let st = s.state();
        if (st.lower, st.upper) != (truth, truth) {
            return Err(format!("closed at [{}, {}], oracle {truth}", st.lower, st.upper));
        }
        if st
            .history
            .windows(2)
            .any(|w| w[1].lower < w[0].lower || w[1].upper > w[0].upper)
        {
            return Err("bracket widened".into());
        }
    }
    Ok(format!("{} census graphs bracketed and closed", graphs.len()))
}

fn criterion_determinism() -> Outcome {
    let run = |spec: &str, dir: &std::path::Path, tag: &str| -> Result<(Vec<u8>, Vec<u8>), String> {
        let path = dir.join(format!("{tag}.cert"));
        let out = binary()
            .args(["genus", "--gen", spec, "--threads", "1", "--seed", "7"])
            .args(["--emit-certificate", path.to_str().unwrap()])
            .output()
            .map_err(|e| e.to_string())?;
        Ok((out.stdout, std::fs::read(&path).map_err(|e| e.to_string())?))
    };
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let specs = gating_specs();
    for spec in &specs {
        let a = run(spec, dir.path(), "a")?;
        let b = run(spec, dir.path(), "b")?;
        if a != b {
            return Err(format!("{spec}: outputs differ"));
        }
    }
    Ok(format!("{} graphs, two runs byte-identical", specs.len()))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 complete graphs", Box::new(|| table(&complete_cases(), LIMIT_FORMULA))),
        ("2 complete bipartite graphs", Box::new(|| table(&bipartite_cases(), LIMIT_FORMULA))),
        ("3 cubic cages (3,3)..(3,8)", Box::new(|| table(&cage_cases(), LIMIT_CAGE))),
        ("4 cocktail party graphs", Box::new(|| table(&cocktail_cases(), LIMIT_COCKTAIL))),
        ("5 circulants", Box::new(|| table(&circulant_cases(), LIMIT_CIRCULANT))),
        ("6 oracle equivalence", Box::new(criterion_oracle)),
        ("7 certificate round trip and mutations", Box::new(criterion_certificates)),
        ("8 bounds soundness", Box::new(criterion_bounds)),
        ("9 determinism", Box::new(criterion_determinism)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!(
        "INFO cages (3,9) and (3,10) are not shipped as fixtures; extended rows not run"
    );
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
