//! Parse a defining graph and take it apart: join factors, cone points,
//! induced subgraphs and the amalgam along a missing edge.

use artin_center::graph::DefiningGraph;

const GRAPH: &str = "\
# two commuting blocks, one of them a square with a missing diagonal
vertices: a b c d e
edge a b 3
edge b c 4
edge c d 3
edge d a 5
edge a e 2
edge b e 2
edge c e 2
edge d e 2
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g: DefiningGraph = GRAPH.parse()?;
    println!("{} vertices, clique: {}", g.len(), g.is_clique());
    println!("cone points: {}", g.fmt_set(g.cone_points()));

    for (i, set) in g.join_factor_sets().into_iter().enumerate() {
        let f = g.induced(set)?;
        println!(
            "factor {i}: {}  cone points {}",
            g.fmt_set(set),
            f.fmt_set(f.cone_points())
        );
    }

    let (a, c) = (g.index_of("a").unwrap(), g.index_of("c").unwrap());
    let (left, mid, right) = g.amalgam_split_sets(a, c)?;
    println!(
        "m(a,c) = {}: A_{} *_A_{} A_{}",
        g.label(a, c),
        g.fmt_set(left),
        g.fmt_set(mid),
        g.fmt_set(right)
    );

    print!("normalized:\n{}", g.serialize());
    Ok(())
}
