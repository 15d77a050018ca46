//! Minimal coset representatives: u = v·w with v ∈ W_X and w having no left
//! descent in X.

use artin_center::coxeter::CoxeterGroup;
use artin_center::graph::DefiningGraph;
use artin_center::word::ArtinWord;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g: DefiningGraph = "vertices: a b c d\nedge a b 3\nedge b c 4\nedge c d 3\nedge a c 2\nedge b d 2".parse()?;
    let w = CoxeterGroup::new(&g);
    let x = g.vertex_set(&["a", "b"])?;
    let spell = |e: &artin_center::coxeter::CoxeterElement| {
        let word = w.reduced_word(e);
        if word.is_empty() {
            "1".to_string()
        } else {
            word.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(" ")
        }
    };

    for text in ["a b c d", "b a c b", "d c b a b", "c b c b"] {
        let u = w.theta(&ArtinWord::parse(text, &g)?);
        let dec = w.coset_decompose(&u, x);
        assert_eq!(dec.v.mul(&dec.w), u);
        println!(
            "{text:<10} = ({}) · ({})   w is X-reduced: {}",
            spell(&dec.v),
            spell(&dec.w),
            w.is_x_reduced(&dec.w, x)
        );
    }
    Ok(())
}
