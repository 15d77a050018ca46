//! The Coxeter group `W_Γ` through its faithful geometric representation.
//!
//! `W_Γ` acts on the real vector space with basis `{α_s}` preserving the form
//! `B(α_s, α_t) = -cos(π/m_st)` (`-1` when `m_st = ∞`). The simple reflection
//! `s` sends `α_t ↦ α_t + 2cos(π/m_st)·α_s` and `α_s ↦ -α_s`. Elements are
//! stored as their matrix together with the matrix of their inverse, so that
//! both left and right descents can be read off a single column:
//!
//! * `s` is a left descent of `w` iff `w⁻¹(α_s)` is a negative root;
//! * `s` is a right descent of `w` iff `w(α_s)` is a negative root.
//!
//! Every root has all of its coordinates of one sign, so the sign of the first
//! nonzero coordinate decides.

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::graph::{DefiningGraph, Label, VertexId, VertexSet};
use crate::matrix::Matrix;
use crate::scalar::{FieldContext, FieldExt, Scalar, Sign};
use crate::word::ArtinWord;

/// Largest graph accepted by the exponential principal-minor scans.
pub const MAX_MINOR_VERTICES: usize = 16;
/// Iteration guard for the order of the Coxeter element.
pub const COXETER_NUMBER_GUARD: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("the Coxeter group is infinite")]
    NotSpherical,
    #[error("graph has {0} vertices; principal-minor scans are limited to {MAX_MINOR_VERTICES}")]
    TooLarge(usize),
    #[error("Coxeter element order exceeds {COXETER_NUMBER_GUARD}")]
    GuardExceeded,
}

/// An element of `W_Γ`.
#[derive(Debug, Clone)]
pub struct CoxeterElement {
    mat: Matrix,
    inv: Matrix,
    word: OnceLock<Vec<VertexId>>,
}

impl PartialEq for CoxeterElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for CoxeterElement {}

impl std::hash::Hash for CoxeterElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl CoxeterElement {
    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inv
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    pub fn inverse(&self) -> CoxeterElement {
        CoxeterElement {
            mat: self.inv.clone(),
            inv: self.mat.clone(),
            word: OnceLock::new(),
        }
    }

    pub fn mul(&self, other: &CoxeterElement) -> CoxeterElement {
        CoxeterElement {
            mat: self.mat.mul(&other.mat),
            inv: other.inv.mul(&self.inv),
            word: OnceLock::new(),
        }
    }

    /// `w(α_s)`, coordinates in the simple-root basis.
    pub fn root_image(&self, s: VertexId) -> Vec<Scalar> {
        self.mat.column(s).cloned().collect()
    }
}

/// `(v, w)` with `u = v·w`, `v ∈ W_X` and `w` the `(X, ∅)`-reduced element of `W_X u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDecomposition {
    pub v: CoxeterElement,
    pub w: CoxeterElement,
    /// Reduced word of `v`, built from the stripped descents.
    pub v_word: Vec<VertexId>,
    pub subset: VertexSet,
}

fn root_sign<'a>(coords: impl Iterator<Item = &'a Scalar>) -> Sign {
    for c in coords {
        if !c.is_zero() {
            return c.sign().expect("root coordinates are real");
        }
    }
    Sign::Zero
}

/// `W_Γ` for a fixed defining graph.
#[derive(Debug, Clone)]
pub struct CoxeterGroup {
    graph: DefiningGraph,
    ctx: Arc<FieldContext>,
    /// `2cos(π/m_st)` for `s ≠ t` with `m_st ≠ 2`.
    coupling: Vec<Vec<(VertexId, Scalar)>>,
    generators: Vec<CoxeterElement>,
    identity: CoxeterElement,
}

impl CoxeterGroup {
    pub fn new(graph: &DefiningGraph) -> CoxeterGroup {
        let ctx = FieldContext::for_labels(graph.finite_labels());
        CoxeterGroup::with_field(graph, ctx)
    }

    /// Uses a caller-supplied field; its `N` must be a multiple of every finite label.
    pub fn with_field(graph: &DefiningGraph, ctx: Arc<FieldContext>) -> CoxeterGroup {
        let n = graph.len();
        let coupling: Vec<Vec<(VertexId, Scalar)>> = (0..n)
            .map(|s| {
                (0..n)
                    .filter(|&t| t != s && graph.label(s, t) != Label::Finite(2))
                    .map(|t| {
                        let c = ctx
                            .two_cos_pi_over(graph.label(s, t))
                            .expect("field contains every label");
                        (t, c)
                    })
                    .collect()
            })
            .collect();
        let eye = Matrix::identity(&ctx, n);
        let identity = CoxeterElement {
            mat: eye.clone(),
            inv: eye.clone(),
            word: OnceLock::from(Vec::new()),
        };
        let generators = (0..n)
            .map(|s| {
                let mut m = eye.clone();
                m.set(s, s, ctx.integer(-1));
                for (t, c) in &coupling[s] {
                    m.set(s, *t, c.clone());
                }
                CoxeterElement {
                    mat: m.clone(),
                    inv: m,
                    word: OnceLock::from(vec![s]),
                }
            })
            .collect();
        CoxeterGroup {
            graph: graph.clone(),
            ctx,
            coupling,
            generators,
            identity,
        }
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.graph.len()
    }

    pub fn identity(&self) -> CoxeterElement {
        self.identity.clone()
    }

    /// The simple reflection `s`.
    pub fn simple_reflection(&self, s: VertexId) -> &CoxeterElement {
        &self.generators[s]
    }

    /// `s·w`.
    pub fn left_mul_gen(&self, s: VertexId, w: &CoxeterElement) -> CoxeterElement {
        CoxeterElement {
            mat: self.reflect_rows(s, &w.mat),
            inv: self.reflect_cols(s, &w.inv),
            word: OnceLock::new(),
        }
    }

    /// `w·s`.
    pub fn right_mul_gen(&self, w: &CoxeterElement, s: VertexId) -> CoxeterElement {
        CoxeterElement {
            mat: self.reflect_cols(s, &w.mat),
            inv: self.reflect_rows(s, &w.inv),
            word: OnceLock::new(),
        }
    }

    /// `S·M`: only row `s` changes.
    fn reflect_rows(&self, s: VertexId, m: &Matrix) -> Matrix {
        let n = self.rank();
        let mut out = m.clone();
        for j in 0..n {
            let mut acc = -m.get(s, j);
            for (t, c) in &self.coupling[s] {
                let x = m.get(*t, j);
                if !x.is_zero() {
                    acc = &acc + &(c * x);
                }
            }
            out.set(s, j, acc);
        }
        out
    }

    /// `M·S`: column `j ≠ s` gains `M[·, s]·c_sj`, column `s` is negated.
    fn reflect_cols(&self, s: VertexId, m: &Matrix) -> Matrix {
        let n = self.rank();
        let mut out = m.clone();
        for i in 0..n {
            let x = m.get(i, s);
            if x.is_zero() {
                continue;
            }
            out.set(i, s, -x);
            for (t, c) in &self.coupling[s] {
                let y = m.get(i, *t) + &(x * c);
                out.set(i, *t, y);
            }
        }
        out
    }

    /// Product of the simple reflections spelled by `word`.
    pub fn from_word(&self, word: &[VertexId]) -> CoxeterElement {
        word.iter()
            .fold(self.identity(), |w, &s| self.right_mul_gen(&w, s))
    }

    /// The image of an Artin word under `σ_v ↦ s_v`; exponent signs are irrelevant.
    pub fn theta(&self, word: &ArtinWord) -> CoxeterElement {
        word.letters()
            .iter()
            .fold(self.identity(), |w, l| self.right_mul_gen(&w, l.vertex))
    }

    pub fn is_left_descent(&self, w: &CoxeterElement, s: VertexId) -> bool {
        root_sign(w.inv.column(s)) == Sign::Negative
    }

    pub fn is_right_descent(&self, w: &CoxeterElement, s: VertexId) -> bool {
        root_sign(w.mat.column(s)) == Sign::Negative
    }

    pub fn left_descents(&self, w: &CoxeterElement) -> VertexSet {
        (0..self.rank())
            .filter(|&s| self.is_left_descent(w, s))
            .collect()
    }

    pub fn right_descents(&self, w: &CoxeterElement) -> VertexSet {
        (0..self.rank())
            .filter(|&s| self.is_right_descent(w, s))
            .collect()
    }

    fn first_left_descent_in(&self, w: &CoxeterElement, set: VertexSet) -> Option<VertexId> {
        set.iter().find(|&s| self.is_left_descent(w, s))
    }

    /// The canonical reduced word: repeatedly strip the smallest left descent.
    pub fn reduced_word(&self, w: &CoxeterElement) -> Vec<VertexId> {
        w.word
            .get_or_init(|| {
                let all = self.graph.vertices();
                let mut word = Vec::new();
                let mut cur = w.clone();
                while let Some(s) = self.first_left_descent_in(&cur, all) {
                    word.push(s);
                    cur = self.left_mul_gen(s, &cur);
                }
                debug_assert!(cur.is_identity());
                word
            })
            .clone()
    }

    pub fn length(&self, w: &CoxeterElement) -> usize {
        self.reduced_word(w).len()
    }

    /// No element of `subset` is a left descent of `w`.
    pub fn is_x_reduced(&self, w: &CoxeterElement, subset: VertexSet) -> bool {
        self.first_left_descent_in(w, subset).is_none()
    }

    /// Strips left descents in `subset` until none remain.
    ///
    /// Returns the stripped letters `s_1, …, s_k` (so `u = s_1⋯s_k · w`) and `w`.
    pub fn strip_left(
        &self,
        u: &CoxeterElement,
        subset: VertexSet,
    ) -> (Vec<VertexId>, CoxeterElement) {
        let mut stripped = Vec::new();
        let mut w = u.clone();
        while let Some(s) = self.first_left_descent_in(&w, subset) {
            stripped.push(s);
            w = self.left_mul_gen(s, &w);
        }
        (stripped, w)
    }

    /// `u = v·w` with `v ∈ W_X` and `w` `(X, ∅)`-reduced.
    pub fn coset_decompose(&self, u: &CoxeterElement, subset: VertexSet) -> CosetDecomposition {
        let (stripped, w) = self.strip_left(u, subset);
        let v = self.from_word(&stripped);
        CosetDecomposition {
            v,
            w,
            v_word: stripped,
            subset,
        }
    }

    /// `w·s·w⁻¹`.
    pub fn conjugate_generator(&self, w: &CoxeterElement, s: VertexId) -> CoxeterElement {
        self.right_mul_gen(w, s).mul(&w.inverse())
    }

    /// The `x ∈ subset` with `t = s_x`, if any.
    pub fn is_reflection_in(&self, t: &CoxeterElement, subset: VertexSet) -> Option<VertexId> {
        subset.iter().find(|&x| self.generators[x] == *t)
    }

    /// The Gram matrix: `1` on the diagonal and `-cos(π/m_st)` off it.
    pub fn gram_matrix(&self) -> Matrix {
        let g = &self.graph;
        Matrix::from_fn(g.len(), |i, j| {
            if i == j {
                self.ctx.one()
            } else {
                -self
                    .ctx
                    .cos_pi_over(g.label(i, j))
                    .expect("field contains every label")
            }
        })
    }

    /// `W_Γ` is finite iff the Gram matrix is positive definite, which is
    /// decided by the signs of its leading principal minors.
    pub fn is_spherical(&self) -> bool {
        let gram = self.gram_matrix();
        (1..=self.rank()).all(|k| {
            let leading = VertexSet::full(k);
            gram.principal(leading).det(&self.ctx).sign().expect("real") == Sign::Positive
        })
    }

    /// For irreducible `Γ`: the Gram matrix is positive semidefinite of rank `n − 1`.
    pub fn is_affine(&self) -> Result<bool, CoxeterError> {
        let n = self.rank();
        if n > MAX_MINOR_VERTICES {
            return Err(CoxeterError::TooLarge(n));
        }
        if n == 0 {
            return Ok(false);
        }
        let gram = self.gram_matrix();
        let sign_of = |set: VertexSet| gram.principal(set).det(&self.ctx).sign().expect("real");
        let all = self.graph.vertices();
        if sign_of(all) != Sign::Zero {
            return Ok(false);
        }
        if !all.iter().any(|v| sign_of(all.without(v)) == Sign::Positive) {
            return Ok(false);
        }
        let psd = (1..all.bits()).all(|bits| sign_of(VertexSet::from_bits(bits)) != Sign::Negative);
        Ok(psd)
    }

    /// `s_1 s_2 ⋯ s_n` in declaration order.
    pub fn coxeter_element(&self) -> CoxeterElement {
        self.from_word(&(0..self.rank()).collect::<Vec<_>>())
    }

    /// Order of the Coxeter element of a finite `W_Γ`.
    pub fn coxeter_number(&self) -> Result<u64, CoxeterError> {
        if !self.is_spherical() {
            return Err(CoxeterError::NotSpherical);
        }
        let c = self.coxeter_element();
        let mut power = c.clone();
        let mut h = 1;
        while !power.is_identity() {
            if h >= COXETER_NUMBER_GUARD {
                return Err(CoxeterError::GuardExceeded);
            }
            power = power.mul(&c);
            h += 1;
        }
        Ok(h)
    }

    /// `w₀`, built by right-multiplying by the smallest non-descent until
    /// every generator is a right descent.
    pub fn longest_element(&self) -> Result<CoxeterElement, CoxeterError> {
        if !self.is_spherical() {
            return Err(CoxeterError::NotSpherical);
        }
        let mut w = self.identity();
        while let Some(s) = (0..self.rank()).find(|&s| !self.is_right_descent(&w, s)) {
            w = self.right_mul_gen(&w, s);
        }
        Ok(w)
    }
}
