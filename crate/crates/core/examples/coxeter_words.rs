//! The Coxeter quotient through its exact geometric representation:
//! reduced words, lengths, descents, finiteness tests and Coxeter numbers.

use artin_center::coxeter::CoxeterGroup;
use artin_center::graph::DefiningGraph;
use artin_center::word::ArtinWord;

fn show(g: &DefiningGraph, word: &[usize]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(" ")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h3: DefiningGraph = "vertices: a b c\nedge a b 5\nedge b c 3\nedge a c 2".parse()?;
    let w = CoxeterGroup::new(&h3);

    for text in ["a a", "a b a b a b a b a b", "c b a b c", "b a b a b a"] {
        let word = ArtinWord::parse(text, &h3)?;
        let x = w.theta(&word);
        println!(
            "{text:<22} -> {:<14} length {}  left descents {}",
            show(&h3, &w.reduced_word(&x)),
            w.length(&x),
            h3.fmt_set(w.left_descents(&x))
        );
    }

    let w0 = w.longest_element()?;
    println!("w0 = {} (length {}), w0 = -1: {}", show(&h3, &w.reduced_word(&w0)), w.length(&w0), w0.matrix().is_neg_identity());
    println!("Coxeter number h(H3) = {}", w.coxeter_number()?);

    for (name, text) in [
        ("A3", "vertices: a b c\nedge a b 3\nedge b c 3\nedge a c 2"),
        ("A~2", "vertices: a b c\nedge a b 3\nedge b c 3\nedge a c 3"),
        ("B~2", "vertices: a b c\nedge a b 4\nedge b c 4\nedge a c 2"),
        ("(4,4,4)", "vertices: a b c\nedge a b 4\nedge b c 4\nedge a c 4"),
    ] {
        let g = CoxeterGroup::new(&text.parse()?);
        println!("{name:<8} spherical {:<5} affine {}", g.is_spherical(), g.is_affine()?);
    }
    Ok(())
}
