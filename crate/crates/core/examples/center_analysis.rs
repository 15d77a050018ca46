//! Run the center analysis over the bundled fixture graphs and replay every
//! verdict.

use std::fs;
use std::path::Path;

use artin_center::analyzer::{establish, replay};
use artin_center::graph::DefiningGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut files: Vec<_> = fs::read_dir(&dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "graph"))
        .collect();
    files.sort();

    for path in files {
        let graph: DefiningGraph = fs::read_to_string(&path)?.parse()?;
        let report = establish(&graph)?;
        replay(&report)?;
        println!("== {}", path.file_name().unwrap().to_string_lossy());
        print!("{}", report.to_text());
    }
    Ok(())
}
