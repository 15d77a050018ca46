//! Rank-two Artin groups: greedy normal forms, equality and centers.

use artin_center::dihedral::Dihedral;
use artin_center::graph::DefiningGraph;
use artin_center::word::ArtinWord;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for m in [2, 3, 4, 5] {
        let g: DefiningGraph = format!("vertices: s t\nedge s t {m}").parse()?;
        let d = Dihedral::in_graph(&g, 0, 1)?;
        let z = d.center_generator().expect("finite label");
        println!("m = {m}: Δ = {}, center generated by {}", d.delta()?.to_string_with(&g), z.to_string_with(&g));
        for text in ["s t s t s t", "s^-1 t s t", "t^2 s^-1 t^-1 s^3", "(s t)^2 s t^-2"] {
            let w = ArtinWord::parse(text, &g)?;
            let nf = d.normal_form(&w)?;
            println!("  {text:<20} -> {}", d.nf_to_string(&nf, &g));
        }
        let s = ArtinWord::parse("s", &g)?;
        let delta = d.delta()?;
        println!("  Δ central: {}", d.commute(&delta, &s)?);
    }

    let free: DefiningGraph = "vertices: s t".parse()?;
    let d = Dihedral::in_graph(&free, 0, 1)?;
    let a = ArtinWord::parse("s t t^-1 s", &free)?;
    let b = ArtinWord::parse("s^2", &free)?;
    println!("m = inf: {} == {}: {}", a.to_string_with(&free), b.to_string_with(&free), d.equal(&a, &b)?);
    Ok(())
}
