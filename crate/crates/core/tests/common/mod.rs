#![allow(dead_code)]

use std::path::PathBuf;

use artin_center::coxeter::CoxeterGroup;
use artin_center::dihedral::rank_two_equal;
use artin_center::graph::{DefiningGraph, Label, VertexId, VertexSet};
use artin_center::word::{ArtinWord, Letter};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.graph"))
}

pub fn fixture(name: &str) -> DefiningGraph {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    DefiningGraph::parse(&text).expect("fixture parses")
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Uniform word over `pool`; each letter is inverted with probability `inv`.
pub fn random_word(rng: &mut ChaCha8Rng, pool: &[VertexId], len: usize, inv: f64) -> ArtinWord {
    if pool.is_empty() {
        return ArtinWord::empty();
    }
    let letters = (0..len)
        .map(|_| {
            let v = *pool.choose(rng).expect("nonempty pool");
            if rng.gen_bool(inv) {
                Letter::neg(v)
            } else {
                Letter::pos(v)
            }
        })
        .collect();
    ArtinWord::from_letters(letters)
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> VertexSet {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

/// Subset of the given size.
pub fn random_subset_of_size(rng: &mut ChaCha8Rng, n: usize, k: usize) -> VertexSet {
    let mut all: Vec<VertexId> = (0..n).collect();
    all.shuffle(rng);
    all.into_iter().take(k.min(n)).collect()
}

/// A word `a · r` with `θ(a · r) = 1`, where `r` spells `θ(a)⁻¹` with random signs.
pub fn random_pure_word(rng: &mut ChaCha8Rng, group: &CoxeterGroup, len: usize) -> ArtinWord {
    let pool: Vec<VertexId> = (0..group.rank()).collect();
    let a = random_word(rng, &pool, len, 0.4);
    let mut back = group.reduced_word(&group.theta(&a));
    back.reverse();
    let tail = ArtinWord::from_letters(
        back.into_iter()
            .map(|v| if rng.gen_bool(0.5) { Letter::neg(v) } else { Letter::pos(v) })
            .collect(),
    );
    a.concat(&tail)
}

/// The alternating positive word `s t s ⋯` of length `m`.
pub fn alternating(s: VertexId, t: VertexId, m: u32) -> ArtinWord {
    ArtinWord::positive(&(0..m).map(|i| if i % 2 == 0 { s } else { t }).collect::<Vec<_>>())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oracle {
    /// Decided exactly by the rank-two normal form.
    Full,
    /// Coxeter image and abelianization of `A_X` agree.
    Necessary,
}

/// Equality of two words over `X` in `A_X`.
pub fn equal_in(group: &CoxeterGroup, subset: VertexSet, a: &ArtinWord, b: &ArtinWord) -> (bool, Oracle) {
    if let Some(eq) = rank_two_equal(group.graph(), subset, a, b) {
        return (eq, Oracle::Full);
    }
    let classes = group.graph().odd_classes(subset);
    let eq = group.theta(a) == group.theta(b) && a.class_sums(&classes) == b.class_sums(&classes);
    (eq, Oracle::Necessary)
}

/// Random graph where each pair gets a label from `labels` with probability
/// `p` and is otherwise left at infinity.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, labels: &[u32]) -> DefiningGraph {
    let mut g = DefiningGraph::new(&names(n)).expect("valid names");
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                let m = *labels.choose(rng).expect("nonempty labels");
                g.set_label(u, v, Label::Finite(m)).expect("valid label");
            }
        }
    }
    g
}

/// Vertices joined by a finite label to every other vertex, read straight off the labels.
pub fn count_cone_points(g: &DefiningGraph) -> usize {
    let n = g.len();
    (0..n)
        .filter(|&v| (0..n).all(|u| u == v || g.label(u, v).is_finite()))
        .count()
}

fn cos_pi_over(m: Label) -> f64 {
    match m {
        Label::Finite(m) => (std::f64::consts::PI / m as f64).cos(),
        Label::Infinite => 1.0,
    }
}

/// Floating-point Gram matrix `(-cos(π/m_ij))` with unit diagonal.
pub fn gram_f64(g: &DefiningGraph) -> Vec<Vec<f64>> {
    let n = g.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 1.0 } else { -cos_pi_over(g.label(i, j)) })
                .collect()
        })
        .collect()
}

pub fn det_f64(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))
            .expect("nonempty column");
        if a[p][c].abs() < 1e-14 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        let pivot = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            let f = row[c] / pivot[c];
            for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                *x -= f * p;
            }
        }
    }
    det
}

/// Positive definiteness by leading minors in floating point.
pub fn positive_definite_f64(g: &DefiningGraph) -> bool {
    let gram = gram_f64(g);
    (1..=gram.len()).all(|k| {
        let minor: Vec<Vec<f64>> = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
        det_f64(minor) > 1e-9
    })
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Order of `s_1 ⋯ s_n` from floating-point matrix powers, capped at `cap`.
pub fn coxeter_element_order_f64(g: &DefiningGraph, cap: u64) -> Option<u64> {
    let n = g.len();
    let gram = gram_f64(g);
    let eye: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut c = eye.clone();
    for s in 0..n {
        let mut r = eye.clone();
        for j in 0..n {
            r[s][j] -= 2.0 * gram[s][j];
        }
        c = mat_mul(&c, &r);
    }
    let mut p = c.clone();
    for k in 1..=cap {
        let dist: f64 = p
            .iter()
            .zip(&eye)
            .flat_map(|(x, y)| x.iter().zip(y).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if dist < 1e-7 {
            return Some(k);
        }
        p = mat_mul(&p, &c);
    }
    None
}
