//! Retracting words onto a special subgroup, with the per-letter trace.

use artin_center::coxeter::CoxeterGroup;
use artin_center::graph::DefiningGraph;
use artin_center::retraction::{retract, retract_trace};
use artin_center::word::ArtinWord;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g: DefiningGraph = "vertices: r s t\nedge r s 2\nedge r t 3\nedge s t 3".parse()?;
    let w = CoxeterGroup::new(&g);
    let x = g.vertex_set(&["s", "t"])?;

    for text in ["r s r^-1", "r t r^-1", "s t r t^-1 s^-1 r^2 t"] {
        let word = ArtinWord::parse(text, &g)?;
        let trace = retract_trace(&w, x, &word);
        println!("{text}  ->  {}", trace.output().to_string_with(&g));
        print!("{}", trace.to_table(&w));
        println!();
    }

    // On pure words the retraction is a homomorphism.
    let a = ArtinWord::parse("r^2 t s^2 t^-1", &g)?;
    let b = ArtinWord::parse("(r t)^3", &g)?;
    println!("a pure: {}, b pure: {}", a.is_pure(&w), b.is_pure(&w));
    println!("π(ab)   = {}", retract(&w, x, &a.concat(&b)).to_string_with(&g));
    println!("π(a)π(b) = {}", retract(&w, x, &a).concat(&retract(&w, x, &b)).to_string_with(&g));
    Ok(())
}
