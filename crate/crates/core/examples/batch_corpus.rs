//! Generate a random corpus of defining graphs, analyze it through the
//! command-line front end in `--dir` mode and tally the outcomes.

use std::collections::BTreeMap;
use std::fs;

use artin_center::cli::{self, BatchEntry};
use artin_center::graph::{DefiningGraph, Label};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng) -> DefiningGraph {
    let n = rng.gen_range(2..=7);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut g = DefiningGraph::new(&names).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            let m = match rng.gen_range(0..10) {
                0..=3 => Label::Finite(2),
                4..=6 => Label::Finite(3),
                7 => Label::Finite(4),
                8 => Label::Finite(rng.gen_range(5..=7)),
                _ => Label::Infinite,
            };
            g.set_label(u, v, m).unwrap();
        }
    }
    g
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = std::env::temp_dir().join(format!("artin-corpus-{}", std::process::id()));
    let input = root.join("graphs");
    fs::create_dir_all(&input)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..60 {
        fs::write(input.join(format!("g{i:03}.graph")), random_graph(&mut rng).serialize())?;
    }

    let reports = root.join("reports");
    let args = [
        "artin-center",
        "--json",
        "analyze",
        "--dir",
        input.to_str().unwrap(),
        "--out",
        reports.to_str().unwrap(),
    ];
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(args, &mut out, &mut err);
    let entries: Vec<BatchEntry> = serde_json::from_slice(&out)?;

    let mut tally = BTreeMap::new();
    for e in &entries {
        *tally.entry(e.status.clone()).or_insert(0) += 1;
    }
    println!("exit code {code}, {} graphs: {tally:?}", entries.len());
    for e in entries.iter().filter(|e| e.status == "UNKNOWN") {
        let text = fs::read_to_string(input.join(&e.file))?;
        println!("unresolved {}:\n{text}", e.file);
    }
    fs::remove_dir_all(&root)?;
    Ok(())
}
