//! Rank-two Artin groups `A(m) = ⟨s, t | sts… = tst…⟩` (`m` letters a side).
//!
//! For finite `m` equality is decided by the left greedy normal form
//! `Δ^k · a_1 ⋯ a_r` where `Δ = sts…` (`m` letters, starting with `s`) and each
//! `a_i` is a proper nonempty prefix of `Δ` or of its `t`-spelling, i.e. an
//! alternating word of length `< m`. Such a factor has exactly one starting and
//! one finishing letter, so the pair `(a_i, a_{i+1})` is left-weighted exactly
//! when `a_{i+1}` starts with the last letter of `a_i`.
//!
//! For `m = ∞` the group is free on `s, t` and equality is free reduction.

use thiserror::Error;

use crate::graph::{DefiningGraph, Label, VertexId, VertexSet};
use crate::word::{ArtinWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DihedralError {
    #[error("m = ∞ has no Garside structure; use free reduction")]
    InfiniteLabel,
    #[error("letter on vertex #{0} is not one of the two generators")]
    ForeignLetter(VertexId),
    #[error("the two generators must be distinct")]
    SameGenerator,
}

/// An alternating positive word of length `len` starting with `first`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleFactor {
    pub first: VertexId,
    pub len: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GarsideNormalForm {
    pub delta_power: i64,
    pub factors: Vec<SimpleFactor>,
}

impl GarsideNormalForm {
    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }
}

/// The dihedral Artin group on two named vertices of some ambient graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dihedral {
    m: Label,
    s: VertexId,
    t: VertexId,
}

impl Dihedral {
    pub fn new(m: Label, s: VertexId, t: VertexId) -> Result<Dihedral, DihedralError> {
        if s == t {
            return Err(DihedralError::SameGenerator);
        }
        Ok(Dihedral { m, s, t })
    }

    /// The rank-two group spanned by `x < y` inside `graph`.
    pub fn in_graph(graph: &DefiningGraph, x: VertexId, y: VertexId) -> Result<Dihedral, DihedralError> {
        Dihedral::new(graph.label(x, y), x.min(y), x.max(y))
    }

    pub fn label(&self) -> Label {
        self.m
    }

    pub fn generators(&self) -> (VertexId, VertexId) {
        (self.s, self.t)
    }

    fn other(&self, x: VertexId) -> VertexId {
        if x == self.s {
            self.t
        } else {
            self.s
        }
    }

    fn finite_m(&self) -> Result<u32, DihedralError> {
        self.m.finite().ok_or(DihedralError::InfiniteLabel)
    }

    fn check(&self, word: &ArtinWord) -> Result<(), DihedralError> {
        match word
            .letters()
            .iter()
            .find(|l| l.vertex != self.s && l.vertex != self.t)
        {
            Some(l) => Err(DihedralError::ForeignLetter(l.vertex)),
            None => Ok(()),
        }
    }

    /// Conjugation by `Δ`: swaps the generators iff `m` is odd.
    fn tau(&self, m: u32, x: VertexId) -> VertexId {
        if m % 2 == 1 {
            self.other(x)
        } else {
            x
        }
    }

    fn alternating(&self, first: VertexId, len: u32) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(len as usize);
        let mut x = first;
        for _ in 0..len {
            out.push(x);
            x = self.other(x);
        }
        out
    }

    fn last_letter(&self, f: SimpleFactor) -> VertexId {
        if f.len % 2 == 1 {
            f.first
        } else {
            self.other(f.first)
        }
    }

    /// `Δ = sts…` with `m` letters.
    pub fn delta(&self) -> Result<ArtinWord, DihedralError> {
        let m = self.finite_m()?;
        Ok(ArtinWord::positive(&self.alternating(self.s, m)))
    }

    fn push_letter(&self, m: u32, nf: &mut GarsideNormalForm, x: VertexId) {
        match nf.factors.last_mut() {
            Some(last) if self.last_letter(*last) != x => {
                last.len += 1;
                if last.len == m {
                    nf.factors.pop();
                    nf.delta_power += 1;
                    for f in &mut nf.factors {
                        f.first = self.tau(m, f.first);
                    }
                }
            }
            _ => {
                if m == 1 {
                    nf.delta_power += 1;
                } else {
                    nf.factors.push(SimpleFactor { first: x, len: 1 });
                }
            }
        }
    }

    /// Left greedy normal form of `word`.
    pub fn normal_form(&self, word: &ArtinWord) -> Result<GarsideNormalForm, DihedralError> {
        let m = self.finite_m()?;
        self.check(word)?;
        let mut nf = GarsideNormalForm {
            delta_power: 0,
            factors: Vec::new(),
        };
        for l in word.letters() {
            if !l.inverse {
                self.push_letter(m, &mut nf, l.vertex);
                continue;
            }
            // x⁻¹ = Δ⁻¹·r(x) with r(x)·x = Δ, and F·Δ⁻¹ = Δ⁻¹·τ(F).
            nf.delta_power -= 1;
            for f in &mut nf.factors {
                f.first = self.tau(m, f.first);
            }
            let x = l.vertex;
            let first = if m % 2 == 1 { x } else { self.other(x) };
            for y in self.alternating(first, m - 1) {
                self.push_letter(m, &mut nf, y);
            }
        }
        Ok(nf)
    }

    /// The word `Δ^k · a_1 ⋯ a_r`.
    pub fn nf_word(&self, nf: &GarsideNormalForm) -> ArtinWord {
        let delta = ArtinWord::positive(&self.alternating(
            self.s,
            self.m.finite().expect("normal forms only exist for finite m"),
        ));
        let mut word = delta.pow(nf.delta_power);
        for f in &nf.factors {
            word = word.concat(&ArtinWord::positive(&self.alternating(f.first, f.len)));
        }
        word
    }

    /// Renders a normal form as `D^k · (s t) (t)` using vertex names.
    pub fn nf_to_string(&self, nf: &GarsideNormalForm, graph: &DefiningGraph) -> String {
        let mut parts = Vec::new();
        if nf.delta_power != 0 {
            parts.push(format!("D^{}", nf.delta_power));
        }
        for f in &nf.factors {
            let w = ArtinWord::positive(&self.alternating(f.first, f.len));
            parts.push(format!("({})", w.to_string_with(graph)));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" · ")
        }
    }

    /// Equality in the group: normal forms for finite `m`, free reduction for `m = ∞`.
    pub fn equal(&self, a: &ArtinWord, b: &ArtinWord) -> Result<bool, DihedralError> {
        self.check(a)?;
        self.check(b)?;
        match self.m {
            Label::Finite(_) => Ok(self.normal_form(a)? == self.normal_form(b)?),
            Label::Infinite => Ok(free_reduce(a) == free_reduce(b)),
        }
    }

    pub fn commute(&self, a: &ArtinWord, b: &ArtinWord) -> Result<bool, DihedralError> {
        self.equal(&a.concat(b), &b.concat(a))
    }

    /// Generator of the (infinite cyclic) center: `(st)^{m/2} = Δ` for even
    /// `m`, `(st)^m = Δ²` for odd `m`. `None` for `m = ∞`, whose center is trivial.
    pub fn center_generator(&self) -> Option<ArtinWord> {
        let m = self.m.finite()?;
        let st = ArtinWord::positive(&[self.s, self.t]);
        Some(if m % 2 == 0 {
            st.pow(i64::from(m / 2))
        } else {
            st.pow(i64::from(m))
        })
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(word: &ArtinWord) -> ArtinWord {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word.letters() {
        if out.last() == Some(&l.inverted()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    ArtinWord::from_letters(out)
}

/// Equality in the special subgroup `A_X` when `|X| ≤ 2`; `None` for larger `X`.
///
/// Both words must be spelled over `X`.
pub fn rank_two_equal(
    graph: &DefiningGraph,
    subset: VertexSet,
    a: &ArtinWord,
    b: &ArtinWord,
) -> Option<bool> {
    debug_assert!(a.support().is_subset(subset) && b.support().is_subset(subset));
    match subset.len() {
        0 => Some(true),
        1 => {
            let n = graph.len();
            Some(a.abelianize(n) == b.abelianize(n))
        }
        2 => {
            let mut it = subset.iter();
            let (x, y) = (it.next()?, it.next()?);
            let d = Dihedral::in_graph(graph, x, y).ok()?;
            d.equal(a, b).ok()
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    fn graph(m: &str) -> DefiningGraph {
        if m == "inf" {
            DefiningGraph::parse("vertices: s t").unwrap()
        } else {
            DefiningGraph::parse(&format!("vertices: s t\nedge s t {m}")).unwrap()
        }
    }

    fn d(m: u32) -> (Dihedral, DefiningGraph) {
        let g = graph(&m.to_string());
        (Dihedral::in_graph(&g, 0, 1).unwrap(), g)
    }

    /// All positive words equal to `w` in the monoid, by braid moves.
    fn braid_class(w: &[usize], m: usize) -> HashSet<Vec<usize>> {
        let alt = |first: usize| -> Vec<usize> { (0..m).map(|i| (first + i) % 2).collect() };
        let (a, b) = (alt(0), alt(1));
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        while let Some(x) = queue.pop_front() {
            for i in 0..x.len().saturating_sub(m - 1) {
                let window = &x[i..i + m];
                let repl = if window == a.as_slice() {
                    &b
                } else if window == b.as_slice() {
                    &a
                } else {
                    continue;
                };
                let mut y = x.clone();
                y[i..i + m].copy_from_slice(repl);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Multiplies by `Δ^{2k}` to clear inverses (Δ² is central), then compares
    /// positive words in the monoid.
    fn rewriting_equal(m: usize, a: &ArtinWord, b: &ArtinWord) -> bool {
        let positive = |w: &ArtinWord| -> (usize, Vec<usize>) {
            let mut out = Vec::new();
            let mut k = 0;
            for l in w.letters() {
                if l.inverse {
                    // Δ²·x⁻¹ is the alternating word of length 2m - 1 that
                    // becomes Δ² once x is appended.
                    k += 1;
                    let first = (l.vertex + 1) % 2;
                    out.extend((0..2 * m - 1).map(|i| (first + i) % 2));
                } else {
                    out.push(l.vertex);
                }
            }
            (k, out)
        };
        let delta2: Vec<usize> = (0..2 * m).map(|i| i % 2).collect();
        let (ka, mut pa) = positive(a);
        let (kb, mut pb) = positive(b);
        for _ in 0..kb {
            pa.splice(0..0, delta2.iter().copied());
        }
        for _ in 0..ka {
            pb.splice(0..0, delta2.iter().copied());
        }
        pa.len() == pb.len() && braid_class(&pa, m).contains(&pb)
    }

    #[test]
    fn normal_form_examples() {
        let (d3, g) = d(3);
        let p = |s: &str| ArtinWord::parse(s, &g).unwrap();
        let sts = d3.normal_form(&p("s t s")).unwrap();
        assert_eq!(sts, d3.normal_form(&p("t s t")).unwrap());
        assert_eq!(sts, GarsideNormalForm { delta_power: 1, factors: vec![] });
        assert!(d3.normal_form(&p("s s^-1")).unwrap().is_identity());
        assert!(d3.normal_form(&p("s^-1 s")).unwrap().is_identity());
        let cube = d3.normal_form(&p("(s t)^3")).unwrap();
        assert_eq!(cube, GarsideNormalForm { delta_power: 2, factors: vec![] });
        assert!(rewriting_equal(3, &p("(s t)^3"), &p("s t s t s t")));
        assert!(rewriting_equal(3, &p("(s t)^3"), &p("s t s s t s")));
        assert!(!rewriting_equal(3, &p("(s t)^3"), &p("s t s s s t")));

        let (dinf, g) = (Dihedral::in_graph(&graph("inf"), 0, 1).unwrap(), graph("inf"));
        assert_eq!(
            dinf.normal_form(&ArtinWord::parse("s", &g).unwrap()),
            Err(DihedralError::InfiniteLabel)
        );
    }

    #[test]
    fn equality_examples() {
        let (d3, g3) = d(3);
        let p3 = |s: &str| ArtinWord::parse(s, &g3).unwrap();
        assert!(d3.equal(&p3("s t s"), &p3("t s t")).unwrap());
        let ginf = graph("inf");
        let dinf = Dihedral::in_graph(&ginf, 0, 1).unwrap();
        let pinf = |s: &str| ArtinWord::parse(s, &ginf).unwrap();
        assert!(!dinf.equal(&pinf("s t"), &pinf("t s")).unwrap());
        assert!(dinf.equal(&pinf("s t t^-1 s"), &pinf("s^2")).unwrap());
        let (d4, g4) = d(4);
        let p4 = |s: &str| ArtinWord::parse(s, &g4).unwrap();
        assert!(d4.equal(&p4("(s t)^2 s"), &p4("s (t s)^2")).unwrap());
        assert!(rewriting_equal(4, &p4("(s t)^2 s"), &p4("s (t s)^2")));
    }

    #[test]
    fn center_generators() {
        for (m, expected) in [(2, "s t"), (4, "(s t)^2"), (3, "(s t)^3")] {
            let (dm, g) = d(m);
            let z = dm.center_generator().unwrap();
            assert_eq!(z, ArtinWord::parse(expected, &g).unwrap());
            for x in ["s", "t"] {
                let x = ArtinWord::parse(x, &g).unwrap();
                assert!(dm.commute(&z, &x).unwrap());
            }
        }
        let (d3, g) = d(3);
        let p = |s: &str| ArtinWord::parse(s, &g).unwrap();
        assert!(!d3.commute(&p("s t"), &p("s")).unwrap());
        assert!(!d3.commute(&p("s t s"), &p("s")).unwrap());
        let ginf = graph("inf");
        assert_eq!(Dihedral::in_graph(&ginf, 0, 1).unwrap().center_generator(), None);
    }

    #[test]
    fn free_reduce_examples() {
        let g = graph("inf");
        let p = |s: &str| ArtinWord::parse(s, &g).unwrap();
        assert!(free_reduce(&p("s s^-1")).is_empty());
        assert_eq!(free_reduce(&p("s t t^-1 s")), p("s^2"));
        assert_eq!(free_reduce(&p("s t^-1 s")), p("s t^-1 s"));
    }

    #[test]
    fn foreign_letters_rejected() {
        let g = DefiningGraph::parse("vertices: s t u\nedge s t 3").unwrap();
        let dd = Dihedral::in_graph(&g, 0, 1).unwrap();
        let w = ArtinWord::parse("s u", &g).unwrap();
        assert_eq!(dd.normal_form(&w), Err(DihedralError::ForeignLetter(2)));
        assert_eq!(Dihedral::new(Label::Finite(3), 1, 1), Err(DihedralError::SameGenerator));
    }

    #[test]
    fn normal_forms_agree_with_rewriting_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for m in 2..=5u32 {
            let (dm, _) = d(m);
            for _ in 0..150 {
                let len_a = rng.gen_range(0..6);
                let len_b = rng.gen_range(0..6);
                let mut rand_word = |len: usize| {
                    ArtinWord::from_letters(
                        (0..len)
                            .map(|_| Letter {
                                vertex: rng.gen_range(0..2),
                                inverse: rng.gen_bool(0.2),
                            })
                            .collect(),
                    )
                };
                let a = rand_word(len_a);
                let b = rand_word(len_b);
                if a.letters().iter().chain(b.letters()).filter(|l| l.inverse).count() > 1 {
                    continue;
                }
                assert_eq!(
                    dm.equal(&a, &b).unwrap(),
                    rewriting_equal(m as usize, &a, &b),
                    "m={m} a={a:?} b={b:?}"
                );
                // Every word equals its own normal form spelled out.
                let nf = dm.normal_form(&a).unwrap();
                assert!(nf.delta_power < 0 || rewriting_equal(m as usize, &a, &dm.nf_word(&nf)));
                assert_eq!(dm.normal_form(&dm.nf_word(&nf)).unwrap(), nf);
            }
        }
    }

    fn letters() -> impl Strategy<Value = Vec<Letter>> {
        proptest::collection::vec((0usize..2, any::<bool>()), 0..24).prop_map(|v| {
            v.into_iter()
                .map(|(vertex, inverse)| Letter { vertex, inverse })
                .collect()
        })
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn nf_is_canonical(m in 2u32..=8, a in letters(), b in letters()) {
            let (dm, g) = d(m);
            let a = ArtinWord::from_letters(a);
            let b = ArtinWord::from_letters(b);
            let na = dm.normal_form(&a).unwrap();
            // idempotent
            prop_assert_eq!(&dm.normal_form(&dm.nf_word(&na)).unwrap(), &na);
            // left-weighted, proper factors
            for pair in na.factors.windows(2) {
                prop_assert_eq!(dm.last_letter(pair[0]), pair[1].first);
            }
            prop_assert!(na.factors.iter().all(|f| f.len >= 1 && f.len < m));
            // congruence
            let ab = dm.normal_form(&a.concat(&b)).unwrap();
            prop_assert_eq!(&dm.normal_form(&dm.nf_word(&na).concat(&b)).unwrap(), &ab);
            // w · w⁻¹ = 1
            prop_assert!(dm.normal_form(&a.concat(&a.inverse())).unwrap().is_identity());
            // compatible with the Coxeter quotient
            let w = crate::coxeter::CoxeterGroup::new(&g);
            prop_assert_eq!(w.theta(&a), w.theta(&dm.nf_word(&na)));
            let classes = g.odd_classes(g.vertices());
            prop_assert_eq!(a.class_sums(&classes), dm.nf_word(&na).class_sums(&classes));
            // center
            let z = dm.center_generator().unwrap();
            prop_assert!(dm.commute(&z, &a).unwrap());
        }
    }
}
