//! Decides, where the available rules reach, whether the center of `A_Γ` is
//! free abelian of rank equal to the number of spherical irreducible factors.
//!
//! Each irreducible factor is resolved by the first applicable rule:
//!
//! 1. spherical: the center is infinite cyclic, generated by a power of the
//!    Coxeter element word;
//! 2. two-dimensional, 3. affine, 4. FC type: classes where the center of an
//!    irreducible non-spherical factor is known to be trivial;
//! 5. no cone points: trivial center;
//! 6. cone set `T ≠ ∅` on a non-clique: the center lies in `A_T`, and if `A_T`
//!    itself is resolved then the factor has trivial center;
//! 7. anything else is reported as unknown.
//!
//! Every predicate that was evaluated is recorded so the verdict can be
//! replayed independently.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{CoxeterError, CoxeterGroup, MAX_MINOR_VERTICES};
use crate::graph::{DefiningGraph, GraphError, VertexId, VertexSet};
use crate::scalar::Sign;
use crate::word::ArtinWord;

pub const DEFAULT_MAX_VERTICES: usize = 16;

#[derive(Debug, Error)]
pub enum AnalyzerError {
    #[error("graph has {n} vertices, more than the limit of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("graph is reducible")]
    Reducible,
    #[error("graph is not spherical")]
    NotSpherical,
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("recorded factors differ from the join decomposition")]
    FactorMismatch,
    #[error("factor {factor}: predicate {predicate} now evaluates to {actual}")]
    PredicateMismatch {
        factor: String,
        predicate: Predicate,
        actual: bool,
    },
    #[error("factor {factor}: rule {rule} lacks premise {predicate} = {expected}")]
    MissingPremise {
        factor: String,
        rule: Rule,
        predicate: Predicate,
        expected: bool,
    },
    #[error("factor {0}: status does not match the recorded rule")]
    StatusMismatch(String),
    #[error("factor {0}: child analysis is inconsistent")]
    ChildMismatch(String),
    #[error("summary fields disagree with the factor verdicts")]
    SummaryMismatch,
    #[error(transparent)]
    Analyzer(#[from] AnalyzerError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TrivialReason {
    NotCone,
    ConeRecursion,
    TwoDimensional,
    Euclidean,
    FcType,
}

impl fmt::Display for TrivialReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrivialReason::NotCone => "NOT_CONE",
            TrivialReason::ConeRecursion => "CONE_RECURSION",
            TrivialReason::TwoDimensional => "TWO_DIMENSIONAL",
            TrivialReason::Euclidean => "EUCLIDEAN",
            TrivialReason::FcType => "FC_TYPE",
        })
    }
}

#[derive(Debug, Clone)]
pub enum ConjectureStatus {
    /// Center infinite cyclic; generator spelled over the parent graph.
    Spherical { generator: ArtinWord },
    EstablishedTrivial {
        reason: TrivialReason,
        child: Option<Box<AnalysisReport>>,
    },
    /// `Z(A_F) ⊆ Z(A_T)`; `containment` is `T`, in parent indices.
    Unknown {
        containment: VertexSet,
        child: Option<Box<AnalysisReport>>,
    },
}

impl ConjectureStatus {
    pub fn is_resolved(&self) -> bool {
        !matches!(self, ConjectureStatus::Unknown { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            ConjectureStatus::Spherical { .. } => "SPHERICAL",
            ConjectureStatus::EstablishedTrivial { .. } => "ESTABLISHED_TRIVIAL",
            ConjectureStatus::Unknown { .. } => "UNKNOWN",
        }
    }

    pub fn child(&self) -> Option<&AnalysisReport> {
        match self {
            ConjectureStatus::EstablishedTrivial { child, .. }
            | ConjectureStatus::Unknown { child, .. } => child.as_deref(),
            ConjectureStatus::Spherical { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    Spherical,
    TwoDimensional,
    Affine,
    FcType,
    Clique,
    ConeFree,
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Predicate::Spherical => "spherical",
            Predicate::TwoDimensional => "two_dimensional",
            Predicate::Affine => "affine",
            Predicate::FcType => "fc_type",
            Predicate::Clique => "clique",
            Predicate::ConeFree => "cone_free",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Spherical,
    TwoDimensional,
    Euclidean,
    FcType,
    NotCone,
    ConeRecursion,
    ConeContainment,
    CliqueUnresolved,
}

impl Rule {
    /// Short justification printed next to each verdict.
    pub fn citation(self) -> &'static str {
        match self {
            Rule::Spherical => {
                "spherical type: center infinite cyclic, generated by Δ or Δ² \
                 (Brieskorn-Saito, Deligne)"
            }
            Rule::TwoDimensional => {
                "irreducible non-spherical two-dimensional type has trivial center"
            }
            Rule::Euclidean => "irreducible affine type has trivial center",
            Rule::FcType => "irreducible non-spherical FC type has trivial center",
            Rule::NotCone => "no cone points: Z(A_F) ⊆ Z(A_∅) = 1",
            Rule::ConeRecursion => {
                "cone set T on a non-clique: Z(A_F) ⊆ Z(A_T), and A_T is resolved, \
                 so the center of the irreducible non-spherical factor is trivial"
            }
            Rule::ConeContainment => "cone set T on a non-clique: Z(A_F) ⊆ Z(A_T)",
            Rule::CliqueUnresolved => "clique not covered by any rule",
        }
    }

    /// Predicate values the rule requires.
    pub fn premises(self) -> &'static [(Predicate, bool)] {
        use Predicate as P;
        match self {
            Rule::Spherical => &[(P::Spherical, true)],
            Rule::TwoDimensional => &[(P::Spherical, false), (P::TwoDimensional, true)],
            Rule::Euclidean => &[(P::Spherical, false), (P::Affine, true)],
            Rule::FcType => &[(P::Spherical, false), (P::FcType, true)],
            Rule::NotCone => &[(P::Spherical, false), (P::Clique, false), (P::ConeFree, true)],
            Rule::ConeRecursion | Rule::ConeContainment => {
                &[(P::Spherical, false), (P::Clique, false), (P::ConeFree, false)]
            }
            Rule::CliqueUnresolved => &[
                (P::Spherical, false),
                (P::TwoDimensional, false),
                (P::Affine, false),
                (P::FcType, false),
                (P::Clique, true),
            ],
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub predicate: Predicate,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct ReasoningStep {
    pub factor: VertexSet,
    pub checks: Vec<Check>,
    pub rule: Rule,
}

#[derive(Debug, Clone)]
pub struct FactorReport {
    /// Vertices in the analysed graph.
    pub vertices: VertexSet,
    pub graph: DefiningGraph,
    pub status: ConjectureStatus,
}

#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub graph: DefiningGraph,
    pub factors: Vec<FactorReport>,
    pub established: bool,
    /// Number of spherical factors; a lower bound when not established.
    pub center_rank: usize,
    pub center_generators: Vec<ArtinWord>,
    pub reasoning: Vec<ReasoningStep>,
}

/// The three known-class detectors, whose order is configurable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseClass {
    TwoDimensional,
    Euclidean,
    FcType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzerConfig {
    pub max_vertices: usize,
    pub base_order: [BaseClass; 3],
}

impl Default for AnalyzerConfig {
    fn default() -> Self {
        AnalyzerConfig {
            max_vertices: DEFAULT_MAX_VERTICES,
            base_order: [BaseClass::TwoDimensional, BaseClass::Euclidean, BaseClass::FcType],
        }
    }
}

fn positive_definite(group: &CoxeterGroup, gram: &crate::matrix::Matrix, set: VertexSet) -> bool {
    let idx: Vec<VertexId> = set.iter().collect();
    (1..=idx.len()).all(|k| {
        let leading: VertexSet = idx[..k].iter().copied().collect();
        gram.principal(leading).det(group.field()).sign().expect("Gram entries are real")
            == Sign::Positive
    })
}

/// The order-`h` or `h/2` power of the Coxeter element word generating `Z(A_Γ)`.
pub fn spherical_center_generator(graph: &DefiningGraph) -> Result<ArtinWord, AnalyzerError> {
    if !graph.is_irreducible() || graph.is_empty() {
        return Err(AnalyzerError::Reducible);
    }
    let group = CoxeterGroup::new(graph);
    if !group.is_spherical() {
        return Err(AnalyzerError::NotSpherical);
    }
    let h = group.coxeter_number()?;
    let w0 = group.longest_element()?;
    let c = ArtinWord::positive(&(0..graph.len()).collect::<Vec<_>>());
    let k = if w0.matrix().is_neg_identity() { h / 2 } else { h };
    Ok(c.pow(k as i64))
}

/// No three vertices span a spherical subgraph.
pub fn is_two_dimensional(graph: &DefiningGraph) -> bool {
    let n = graph.len();
    if n < 3 {
        return true;
    }
    let group = CoxeterGroup::new(graph);
    let gram = group.gram_matrix();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let triple: VertexSet = [a, b, c].into_iter().collect();
                if positive_definite(&group, &gram, triple) {
                    return false;
                }
            }
        }
    }
    true
}

/// Maximal cliques (finite-label complete subgraphs), by Bron-Kerbosch with pivoting.
pub fn maximal_cliques(graph: &DefiningGraph) -> Vec<VertexSet> {
    let n = graph.len();
    let nbrs: Vec<VertexSet> = (0..n)
        .map(|v| (0..n).filter(|&u| u != v && graph.label(u, v).is_finite()).collect())
        .collect();
    fn bk(r: VertexSet, mut p: VertexSet, mut x: VertexSet, nbrs: &[VertexSet], out: &mut Vec<VertexSet>) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        let pivot = p.union(x).iter().max_by_key(|&u| p.intersection(nbrs[u]).len());
        let pivot_nbrs = pivot.map_or(VertexSet::EMPTY, |u| nbrs[u]);
        for v in p.difference(pivot_nbrs).iter() {
            bk(r.with(v), p.intersection(nbrs[v]), x.intersection(nbrs[v]), nbrs, out);
            p.remove(v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        bk(VertexSet::EMPTY, graph.vertices(), VertexSet::EMPTY, &nbrs, &mut out);
    }
    out.sort_by_key(|s| s.bits());
    out
}

/// Every clique spans a spherical subgraph; maximal cliques suffice.
pub fn is_fc_type(graph: &DefiningGraph) -> Result<bool, AnalyzerError> {
    if graph.len() > MAX_MINOR_VERTICES {
        return Err(AnalyzerError::TooManyVertices {
            n: graph.len(),
            max: MAX_MINOR_VERTICES,
        });
    }
    let group = CoxeterGroup::new(graph);
    let gram = group.gram_matrix();
    Ok(maximal_cliques(graph)
        .into_iter()
        .all(|c| positive_definite(&group, &gram, c)))
}

fn evaluate(graph: &DefiningGraph, predicate: Predicate) -> Result<bool, AnalyzerError> {
    Ok(match predicate {
        Predicate::Spherical => CoxeterGroup::new(graph).is_spherical(),
        Predicate::TwoDimensional => is_two_dimensional(graph),
        Predicate::Affine => CoxeterGroup::new(graph).is_affine()?,
        Predicate::FcType => is_fc_type(graph)?,
        Predicate::Clique => graph.is_clique(),
        Predicate::ConeFree => graph.cone_points().is_empty(),
    })
}

fn lift(word: &ArtinWord, set: VertexSet) -> ArtinWord {
    let map: Vec<VertexId> = set.iter().collect();
    ArtinWord::from_letters(
        word.letters()
            .iter()
            .map(|l| crate::word::Letter {
                vertex: map[l.vertex],
                inverse: l.inverse,
            })
            .collect(),
    )
}

fn lift_set(inner: VertexSet, set: VertexSet) -> VertexSet {
    let map: Vec<VertexId> = set.iter().collect();
    inner.iter().map(|v| map[v]).collect()
}

pub fn establish(graph: &DefiningGraph) -> Result<AnalysisReport, AnalyzerError> {
    establish_with(graph, &AnalyzerConfig::default())
}

pub fn establish_with(
    graph: &DefiningGraph,
    config: &AnalyzerConfig,
) -> Result<AnalysisReport, AnalyzerError> {
    if graph.len() > config.max_vertices {
        return Err(AnalyzerError::TooManyVertices {
            n: graph.len(),
            max: config.max_vertices,
        });
    }
    let mut factors = Vec::new();
    let mut reasoning = Vec::new();
    for set in graph.join_factor_sets() {
        let factor = graph.induced(set)?;
        let (status, checks, rule) = classify(&factor, set, config)?;
        reasoning.push(ReasoningStep {
            factor: set,
            checks,
            rule,
        });
        factors.push(FactorReport {
            vertices: set,
            graph: factor,
            status,
        });
    }
    let established = factors.iter().all(|f| f.status.is_resolved());
    let center_generators: Vec<ArtinWord> = factors
        .iter()
        .filter_map(|f| match &f.status {
            ConjectureStatus::Spherical { generator } => Some(generator.clone()),
            _ => None,
        })
        .collect();
    Ok(AnalysisReport {
        graph: graph.clone(),
        factors,
        established,
        center_rank: center_generators.len(),
        center_generators,
        reasoning,
    })
}

type Classified = (ConjectureStatus, Vec<Check>, Rule);

fn classify(factor: &DefiningGraph, set: VertexSet, config: &AnalyzerConfig) -> Result<Classified, AnalyzerError> {
    let mut checks = Vec::new();
    let check = |p: Predicate, checks: &mut Vec<Check>| -> Result<bool, AnalyzerError> {
        let holds = evaluate(factor, p)?;
        checks.push(Check { predicate: p, holds });
        Ok(holds)
    };
    let trivial = |reason| ConjectureStatus::EstablishedTrivial { reason, child: None };

    if check(Predicate::Spherical, &mut checks)? {
        let generator = lift(&spherical_center_generator(factor)?, set);
        return Ok((ConjectureStatus::Spherical { generator }, checks, Rule::Spherical));
    }
    for class in config.base_order {
        let (p, reason, rule) = match class {
            BaseClass::TwoDimensional => {
                (Predicate::TwoDimensional, TrivialReason::TwoDimensional, Rule::TwoDimensional)
            }
            BaseClass::Euclidean => (Predicate::Affine, TrivialReason::Euclidean, Rule::Euclidean),
            BaseClass::FcType => (Predicate::FcType, TrivialReason::FcType, Rule::FcType),
        };
        if check(p, &mut checks)? {
            return Ok((trivial(reason), checks, rule));
        }
    }
    if check(Predicate::Clique, &mut checks)? {
        let status = ConjectureStatus::Unknown {
            containment: set,
            child: None,
        };
        return Ok((status, checks, Rule::CliqueUnresolved));
    }
    if check(Predicate::ConeFree, &mut checks)? {
        return Ok((trivial(TrivialReason::NotCone), checks, Rule::NotCone));
    }
    let cone = factor.cone_points();
    let child = Box::new(establish_with(&factor.induced(cone)?, config)?);
    if child.established {
        let status = ConjectureStatus::EstablishedTrivial {
            reason: TrivialReason::ConeRecursion,
            child: Some(child),
        };
        Ok((status, checks, Rule::ConeRecursion))
    } else {
        let status = ConjectureStatus::Unknown {
            containment: lift_set(cone, set),
            child: Some(child),
        };
        Ok((status, checks, Rule::ConeContainment))
    }
}

/// Re-evaluates every recorded predicate and checks each verdict follows
/// from its premises.
pub fn replay(report: &AnalysisReport) -> Result<(), ReplayError> {
    let graph = &report.graph;
    let sets: Vec<VertexSet> = report.factors.iter().map(|f| f.vertices).collect();
    if sets != graph.join_factor_sets() || report.reasoning.len() != report.factors.len() {
        return Err(ReplayError::FactorMismatch);
    }
    let mut generators = Vec::new();
    for (step, fr) in report.reasoning.iter().zip(&report.factors) {
        let name = graph.fmt_set(fr.vertices);
        if step.factor != fr.vertices {
            return Err(ReplayError::FactorMismatch);
        }
        let factor = graph.induced(fr.vertices).map_err(AnalyzerError::from)?;
        for c in &step.checks {
            let actual = evaluate(&factor, c.predicate)?;
            if actual != c.holds {
                return Err(ReplayError::PredicateMismatch {
                    factor: name,
                    predicate: c.predicate,
                    actual,
                });
            }
        }
        for &(predicate, expected) in step.rule.premises() {
            if !step.checks.contains(&Check { predicate, holds: expected }) {
                return Err(ReplayError::MissingPremise {
                    factor: name,
                    rule: step.rule,
                    predicate,
                    expected,
                });
            }
        }
        let mismatch = || ReplayError::StatusMismatch(name.clone());
        match (&fr.status, step.rule) {
            (ConjectureStatus::Spherical { generator }, Rule::Spherical) => {
                let expected = lift(&spherical_center_generator(&factor)?, fr.vertices);
                if *generator != expected {
                    return Err(mismatch());
                }
                generators.push(generator.clone());
            }
            (ConjectureStatus::EstablishedTrivial { reason, child }, rule) => {
                let ok = matches!(
                    (reason, rule),
                    (TrivialReason::TwoDimensional, Rule::TwoDimensional)
                        | (TrivialReason::Euclidean, Rule::Euclidean)
                        | (TrivialReason::FcType, Rule::FcType)
                        | (TrivialReason::NotCone, Rule::NotCone)
                        | (TrivialReason::ConeRecursion, Rule::ConeRecursion)
                );
                if !ok {
                    return Err(mismatch());
                }
                if rule == Rule::ConeRecursion {
                    let child = child.as_deref().ok_or_else(|| ReplayError::ChildMismatch(name.clone()))?;
                    check_child(&factor, child, &name)?;
                    if !child.established {
                        return Err(ReplayError::ChildMismatch(name));
                    }
                }
            }
            (ConjectureStatus::Unknown { containment, child }, Rule::ConeContainment) => {
                let child = child.as_deref().ok_or_else(|| ReplayError::ChildMismatch(name.clone()))?;
                check_child(&factor, child, &name)?;
                if child.established || *containment != lift_set(factor.cone_points(), fr.vertices) {
                    return Err(ReplayError::ChildMismatch(name));
                }
            }
            (ConjectureStatus::Unknown { containment, child: None }, Rule::CliqueUnresolved) => {
                if *containment != fr.vertices {
                    return Err(mismatch());
                }
            }
            _ => return Err(mismatch()),
        }
    }
    let established = report.factors.iter().all(|f| f.status.is_resolved());
    if established != report.established
        || generators != report.center_generators
        || report.center_rank != generators.len()
    {
        return Err(ReplayError::SummaryMismatch);
    }
    Ok(())
}

fn check_child(factor: &DefiningGraph, child: &AnalysisReport, name: &str) -> Result<(), ReplayError> {
    let expected = factor
        .induced(factor.cone_points())
        .map_err(AnalyzerError::from)?;
    if child.graph != expected {
        return Err(ReplayError::ChildMismatch(name.to_string()));
    }
    replay(child)
}

/// Structured form of a report with vertices and words spelled by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportView {
    pub graph: String,
    pub vertices: Vec<String>,
    pub established: bool,
    pub center_rank: usize,
    pub center_generators: Vec<String>,
    pub factors: Vec<FactorView>,
    pub reasoning: Vec<StepView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorView {
    pub vertices: Vec<String>,
    pub status: String,
    pub reason: Option<TrivialReason>,
    pub generator: Option<String>,
    pub containment: Option<Vec<String>>,
    pub child: Option<Box<ReportView>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepView {
    pub factor: Vec<String>,
    pub rule: Rule,
    pub citation: String,
    pub checks: Vec<Check>,
}

impl AnalysisReport {
    pub fn view(&self) -> ReportView {
        let g = &self.graph;
        let names = |set: VertexSet| -> Vec<String> { g.set_names(set).into_iter().map(String::from).collect() };
        ReportView {
            graph: g.serialize(),
            vertices: g.names().to_vec(),
            established: self.established,
            center_rank: self.center_rank,
            center_generators: self.center_generators.iter().map(|w| w.to_string_with(g)).collect(),
            factors: self
                .factors
                .iter()
                .map(|f| {
                    let (reason, generator, containment) = match &f.status {
                        ConjectureStatus::Spherical { generator } => {
                            (None, Some(generator.to_string_with(g)), None)
                        }
                        ConjectureStatus::EstablishedTrivial { reason, .. } => (Some(*reason), None, None),
                        ConjectureStatus::Unknown { containment, .. } => (None, None, Some(names(*containment))),
                    };
                    FactorView {
                        vertices: names(f.vertices),
                        status: f.status.label().to_string(),
                        reason,
                        generator,
                        containment,
                        child: f.status.child().map(|c| Box::new(c.view())),
                    }
                })
                .collect(),
            reasoning: self
                .reasoning
                .iter()
                .map(|s| StepView {
                    factor: names(s.factor),
                    rule: s.rule,
                    citation: s.rule.citation().to_string(),
                    checks: s.checks.clone(),
                })
                .collect(),
        }
    }

    /// Human-readable report including the reasoning chain.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        let g = &self.graph;
        let _ = writeln!(
            out,
            "{pad}graph {} ({} vertices, {} irreducible factor{})",
            g.fmt_set(g.vertices()),
            g.len(),
            self.factors.len(),
            if self.factors.len() == 1 { "" } else { "s" }
        );
        for (f, step) in self.factors.iter().zip(&self.reasoning) {
            let head = match &f.status {
                ConjectureStatus::Spherical { generator } => {
                    format!("SPHERICAL, z = {}", generator.to_string_with(g))
                }
                ConjectureStatus::EstablishedTrivial { reason, .. } => {
                    format!("ESTABLISHED_TRIVIAL ({reason})")
                }
                ConjectureStatus::Unknown { containment, .. } => {
                    format!("UNKNOWN, Z(A_F) ⊆ Z(A_T) with T = {}", g.fmt_set(*containment))
                }
            };
            let _ = writeln!(out, "{pad}  factor {}: {head}", g.fmt_set(f.vertices));
            let checks: Vec<String> = step
                .checks
                .iter()
                .map(|c| format!("{}={}", c.predicate, if c.holds { "yes" } else { "no" }))
                .collect();
            let _ = writeln!(out, "{pad}    checks: {}", checks.join(", "));
            let _ = writeln!(out, "{pad}    rule {}: {}", step.rule, step.rule.citation());
            if let Some(child) = f.status.child() {
                let _ = writeln!(out, "{pad}    cone set analysis:");
                child.write_text(out, depth + 3);
            }
        }
        let gens: Vec<String> = self.center_generators.iter().map(|w| w.to_string_with(g)).collect();
        if self.established {
            let _ = writeln!(
                out,
                "{pad}established: yes, Z(A) = Z^{}{}",
                self.center_rank,
                if gens.is_empty() {
                    " (trivial)".to_string()
                } else {
                    format!(" generated by {}", gens.join(", "))
                }
            );
        } else {
            let _ = writeln!(
                out,
                "{pad}established: no, spherical factors contribute Z^{}",
                self.center_rank
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> DefiningGraph {
        DefiningGraph::parse(text).unwrap()
    }

    fn w(text: &str, graph: &DefiningGraph) -> ArtinWord {
        ArtinWord::parse(text, graph).unwrap()
    }

    #[test]
    fn spherical_generators() {
        let one = g("vertices: s");
        assert_eq!(spherical_center_generator(&one).unwrap(), w("s", &one));
        let e3 = g("vertices: s t\nedge s t 3");
        assert_eq!(spherical_center_generator(&e3).unwrap(), w("(s t)^3", &e3));
        let e4 = g("vertices: s t\nedge s t 4");
        assert_eq!(spherical_center_generator(&e4).unwrap(), w("(s t)^2", &e4));
        let a3 = g("vertices: a b c\nedge a b 3\nedge b c 3\nedge a c 2");
        // h = 4, w0 ≠ -1 in type A3
        assert_eq!(spherical_center_generator(&a3).unwrap(), w("(a b c)^4", &a3));
        let b3 = g("vertices: a b c\nedge a b 4\nedge b c 3\nedge a c 2");
        assert_eq!(spherical_center_generator(&b3).unwrap(), w("(a b c)^3", &b3));
        assert!(matches!(
            spherical_center_generator(&g("vertices: s t\nedge s t 2")),
            Err(AnalyzerError::Reducible)
        ));
        assert!(matches!(
            spherical_center_generator(&g("vertices: s t")),
            Err(AnalyzerError::NotSpherical)
        ));
    }

    #[test]
    fn detectors() {
        let tri = g("vertices: a b c\nedge a b 3\nedge b c 3\nedge a c 3");
        assert!(is_two_dimensional(&tri));
        assert!(!is_fc_type(&tri).unwrap());
        let a3 = g("vertices: a b c\nedge a b 3\nedge b c 3\nedge a c 2");
        assert!(!is_two_dimensional(&a3));
        let path_inf = g("vertices: a b c\nedge a b 3\nedge b c 3");
        assert!(is_two_dimensional(&path_inf));
        assert!(is_two_dimensional(&g("vertices: a b\nedge a b 3")));
        let raag = g("vertices: a b c d\nedge a b 2\nedge b c 2\nedge c d 2\nedge a c 2");
        assert!(is_fc_type(&raag).unwrap());
        assert!(is_fc_type(&g("vertices: a b c")).unwrap());
        assert_eq!(maximal_cliques(&raag).len(), 2);
    }

    #[test]
    fn establish_examples() {
        let one = establish(&g("vertices: s")).unwrap();
        assert!(one.established);
        assert_eq!(one.center_rank, 1);

        let path = establish(&g("vertices: a b c\nedge a b 2\nedge b c 2")).unwrap();
        assert!(path.established);
        assert_eq!(path.center_rank, 1);
        assert_eq!(path.center_generators, vec![w("b", &path.graph)]);

        let star = establish(&g("vertices: t u v\nedge t u 3\nedge t v 2")).unwrap();
        assert!(star.established);
        assert_eq!(star.center_rank, 0);
        for r in [&one, &path, &star] {
            replay(r).unwrap();
        }
    }

    #[test]
    fn unknown_clique_and_cone_recursion() {
        let clique = g("vertices: a b c d
edge a b 3
edge b c 3
edge a c 2
edge a d 3
edge b d 3
edge c d 3");
        let r = establish(&clique).unwrap();
        assert!(!r.established);
        assert_eq!(r.reasoning[0].rule, Rule::CliqueUnresolved);
        replay(&r).unwrap();

        let cone = g("vertices: a b c d e
edge a b 3
edge b c 3
edge a c 2
edge a d 3
edge b d 3
edge c d 3
edge a e 3
edge b e 3
edge c e 3");
        let r = establish(&cone).unwrap();
        assert!(r.established);
        assert_eq!(r.reasoning[0].rule, Rule::ConeRecursion);
        replay(&r).unwrap();

        let nested = g("vertices: a b c d e f
edge a b 3
edge b c 3
edge a c 2
edge a d 3
edge b d 3
edge c d 3
edge a e 3
edge b e 3
edge c e 3
edge d e 3
edge a f 3
edge b f 3
edge c f 3
edge d f 3");
        let r = establish(&nested).unwrap();
        assert!(!r.established);
        assert_eq!(r.reasoning[0].rule, Rule::ConeContainment);
        match &r.factors[0].status {
            ConjectureStatus::Unknown { containment, child } => {
                assert_eq!(*containment, nested.vertex_set(&["a", "b", "c", "d"]).unwrap());
                assert!(child.is_some());
            }
            other => panic!("{other:?}"),
        }
        replay(&r).unwrap();
        let view = r.view();
        let json = serde_json::to_string(&view).unwrap();
        assert_eq!(serde_json::from_str::<ReportView>(&json).unwrap(), view);
        assert!(r.to_text().contains("UNKNOWN"));
    }

    #[test]
    fn replay_detects_tampering() {
        let mut r = establish(&g("vertices: t u v\nedge t u 3\nedge t v 2")).unwrap();
        r.reasoning[0].checks[0].holds = true;
        assert!(replay(&r).is_err());
        let mut r = establish(&g("vertices: a b c\nedge a b 3\nedge b c 3\nedge a c 3")).unwrap();
        r.center_rank = 1;
        assert!(matches!(replay(&r), Err(ReplayError::SummaryMismatch)));
    }

    #[test]
    fn guard() {
        let names: Vec<String> = (0..17).map(|i| format!("v{i}")).collect();
        let big = DefiningGraph::new(&names).unwrap();
        assert!(matches!(establish(&big), Err(AnalyzerError::TooManyVertices { n: 17, max: 16 })));
    }
}
