//! The retraction `A_Γ → A_X` computed one letter at a time.
//!
//! For a word `σ_{v_1}^{ε_1} ⋯ σ_{v_p}^{ε_p}` put `u_0 = 1`, `u_i = u_{i-1} s_{v_i}`
//! and split `u_i = v_i · w_i` with `v_i ∈ W_X` and `w_i` `(X, ∅)`-reduced. The
//! `i`-th letter is conjugated to `t_i = w_{i-1} s w_{i-1}⁻¹` (if `ε_i = +1`) or
//! `t_i = w_i s w_i⁻¹` (if `ε_i = -1`). When `t_i` is a simple reflection `s_x`
//! with `x ∈ X` the output gains `σ_x^{ε_i}`; otherwise the letter vanishes.
//!
//! `w_i` is obtained from `w_{i-1} s_{v_i}` by stripping left descents in `X`,
//! which is the coset decomposition of `u_i` because `(X, ∅)`-reduced
//! representatives are unique.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterElement, CoxeterGroup};
use crate::graph::{DefiningGraph, VertexSet};
use crate::word::{ArtinWord, Letter};

/// One processed letter.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub letter: Letter,
    /// `u_i = u_{i-1} · s_{letter}`.
    pub u: CoxeterElement,
    /// The `W_X` part of `u_i`.
    pub v: CoxeterElement,
    /// The `(X, ∅)`-reduced part of `u_i`.
    pub w: CoxeterElement,
    /// The reflection the letter is conjugated to.
    pub t: CoxeterElement,
    /// The emitted letter, if `t` lies in `S_X`.
    pub tau: Option<Letter>,
}

#[derive(Debug, Clone)]
pub struct RetractionTrace {
    pub subset: VertexSet,
    pub steps: Vec<TraceStep>,
}

impl RetractionTrace {
    /// The retracted word `τ_1 ⋯ τ_p`.
    pub fn output(&self) -> ArtinWord {
        ArtinWord::from_letters(self.steps.iter().filter_map(|s| s.tau).collect())
    }

    /// Every step with its elements spelled as reduced words.
    pub fn records(&self, group: &CoxeterGroup) -> Vec<TraceRecord> {
        let g = group.graph();
        let spell = |e: &CoxeterElement| -> String {
            let word = group.reduced_word(e);
            if word.is_empty() {
                "1".to_string()
            } else {
                word.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(" ")
            }
        };
        let letter = |l: Letter| ArtinWord::from_letters(vec![l]).to_string_with(g);
        self.steps
            .iter()
            .enumerate()
            .map(|(i, s)| TraceRecord {
                index: i + 1,
                letter: letter(s.letter),
                u: spell(&s.u),
                v: spell(&s.v),
                w: spell(&s.w),
                t: spell(&s.t),
                tau: s.tau.map(letter),
            })
            .collect()
    }

    /// A fixed-width table, one line per letter.
    pub fn to_table(&self, group: &CoxeterGroup) -> String {
        let records = self.records(group);
        let header = ["i", "letter", "u_i", "v_i", "w_i", "t_i", "tau_i"];
        let rows: Vec<[String; 7]> = records
            .into_iter()
            .map(|r| {
                [
                    r.index.to_string(),
                    r.letter,
                    r.u,
                    r.v,
                    r.w,
                    r.t,
                    r.tau.unwrap_or_else(|| "-".to_string()),
                ]
            })
            .collect();
        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let mut line = |cells: &[&str]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&header);
        for row in &rows {
            let cells: Vec<&str> = row.iter().map(String::as_str).collect();
            line(&cells);
        }
        out
    }
}

/// A trace row with elements as reduced words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceRecord {
    pub index: usize,
    pub letter: String,
    pub u: String,
    pub v: String,
    pub w: String,
    pub t: String,
    pub tau: Option<String>,
}

pub fn retract_trace(group: &CoxeterGroup, subset: VertexSet, word: &ArtinWord) -> RetractionTrace {
    let mut u = group.identity();
    let mut v = group.identity();
    let mut w = group.identity();
    let mut steps = Vec::with_capacity(word.len());
    for &letter in word.letters() {
        let s = letter.vertex;
        let shifted = group.right_mul_gen(&w, s);
        let (stripped, w_next) = group.strip_left(&shifted, subset);
        let t = if letter.inverse {
            group.conjugate_generator(&w_next, s)
        } else {
            group.conjugate_generator(&w, s)
        };
        for x in stripped {
            v = group.right_mul_gen(&v, x);
        }
        u = group.right_mul_gen(&u, s);
        w = w_next;
        let tau = group.is_reflection_in(&t, subset).map(|x| Letter {
            vertex: x,
            inverse: letter.inverse,
        });
        steps.push(TraceStep {
            letter,
            u: u.clone(),
            v: v.clone(),
            w: w.clone(),
            t,
            tau,
        });
    }
    RetractionTrace { subset, steps }
}

pub fn retract(group: &CoxeterGroup, subset: VertexSet, word: &ArtinWord) -> ArtinWord {
    let mut w = group.identity();
    let mut out = ArtinWord::empty();
    for &letter in word.letters() {
        let s = letter.vertex;
        let shifted = group.right_mul_gen(&w, s);
        let (_, w_next) = group.strip_left(&shifted, subset);
        let t = if letter.inverse {
            group.conjugate_generator(&w_next, s)
        } else {
            group.conjugate_generator(&w, s)
        };
        if let Some(x) = group.is_reflection_in(&t, subset) {
            out.push(Letter {
                vertex: x,
                inverse: letter.inverse,
            });
        }
        w = w_next;
    }
    out
}

/// Convenience wrapper building the Coxeter group on the fly.
pub fn retract_in(graph: &DefiningGraph, subset: VertexSet, word: &ArtinWord) -> ArtinWord {
    retract(&CoxeterGroup::new(graph), subset, word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rst() -> (CoxeterGroup, VertexSet) {
        let g = DefiningGraph::parse("vertices: r s t\nedge r s 2\nedge r t 3\nedge s t 3").unwrap();
        let x = g.vertex_set(&["s", "t"]).unwrap();
        (CoxeterGroup::new(&g), x)
    }

    #[test]
    fn hand_trace() {
        let (w, x) = rst();
        let g = w.graph().clone();
        let p = |s: &str| ArtinWord::parse(s, &g).unwrap();
        assert!(retract(&w, x, &p("r")).is_empty());
        assert_eq!(retract(&w, x, &p("r s r^-1")), p("s"));

        let trace = retract_trace(&w, x, &p("r s r^-1"));
        let (r, s) = (0, 1);
        let ts: Vec<_> = trace.steps.iter().map(|st| st.t.clone()).collect();
        assert_eq!(ts[0], *w.simple_reflection(r));
        assert_eq!(ts[1], *w.simple_reflection(s));
        assert_eq!(ts[2], *w.simple_reflection(r));
        assert!(trace.steps[2].w.is_identity());
        assert_eq!(trace.output(), p("s"));
        let rec = trace.records(&w);
        assert_eq!(
            rec.iter().map(|r| r.t.as_str()).collect::<Vec<_>>(),
            ["r", "s", "r"]
        );
        assert_eq!(rec[1].tau.as_deref(), Some("s"));
        assert!(trace.to_table(&w).lines().count() == 4);
    }

    #[test]
    fn trivial_traces() {
        let (w, x) = rst();
        let g = w.graph().clone();
        assert!(retract_trace(&w, x, &ArtinWord::empty()).steps.is_empty());
        let trace = retract_trace(&w, x, &ArtinWord::parse("s", &g).unwrap());
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].t, *w.simple_reflection(1));
        assert_eq!(trace.steps[0].tau, Some(Letter::pos(1)));
    }

    #[test]
    fn identity_on_subgroup_words() {
        let (w, x) = rst();
        let g = w.graph().clone();
        let word = ArtinWord::parse("s t^-1 s^2 t s^-3", &g).unwrap();
        assert_eq!(retract(&w, x, &word), word);
    }

    #[test]
    fn trace_invariants_hold() {
        let (w, x) = rst();
        let g = w.graph().clone();
        let word = ArtinWord::parse("r t s^-1 r^-1 t r s r^-1 t^-1", &g).unwrap();
        let trace = retract_trace(&w, x, &word);
        let mut prev_w = w.identity();
        let mut u = w.identity();
        for st in &trace.steps {
            u = w.right_mul_gen(&u, st.letter.vertex);
            assert_eq!(st.u, u);
            assert_eq!(st.v.mul(&st.w), st.u);
            assert!(w.is_x_reduced(&st.w, x));
            assert!(w.reduced_word(&st.v).iter().all(|&y| x.contains(y)));
            let base = if st.letter.inverse { &st.w } else { &prev_w };
            assert_eq!(st.t, w.conjugate_generator(base, st.letter.vertex));
            assert_eq!(st.tau.is_some(), w.is_reflection_in(&st.t, x).is_some());
            prev_w = st.w.clone();
        }
        assert_eq!(trace.output(), retract(&w, x, &word));
    }
}
