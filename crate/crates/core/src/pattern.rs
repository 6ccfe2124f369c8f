//! Patterns, specifications, and the declarative satisfaction check.
//!
//! Embeddings inside a pattern are id inclusions: the positive
//! precondition `C` uses a subset of the ids of the positive graph `Q`, and
//! every negative condition graph contains all ids of `Q`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::GraphMorphism;
use crate::triple::{
    self, glue_over_side, restrict, validate_triple, Direction, MetamodelTriple, Side, TripleGraph, TripleMorphism,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    /// Positive graph with negative conditions.
    S,
    /// Adds a positive precondition.
    C,
    /// A single forbidden graph.
    N,
}

/// A named extension `Q ⊆ graph`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Condition {
    pub name: String,
    pub graph: TripleGraph,
}

impl Condition {
    pub fn new(name: &str, graph: TripleGraph) -> Self {
        Condition {
            name: name.to_string(),
            graph,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    pub kind: PatternKind,
    pub pos_pre: TripleGraph,
    pub positive: TripleGraph,
    pub neg_pre: Vec<Condition>,
    pub neg_post: Vec<Condition>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern `{pattern}`: {msg}")]
    Malformed { pattern: String, msg: String },
}

impl Pattern {
    pub fn simple(name: &str, positive: TripleGraph) -> Self {
        Pattern {
            name: name.into(),
            kind: PatternKind::S,
            pos_pre: TripleGraph::new(),
            positive,
            neg_pre: Vec::new(),
            neg_post: Vec::new(),
        }
    }

    pub fn composite(name: &str, pos_pre: TripleGraph, positive: TripleGraph) -> Self {
        Pattern {
            name: name.into(),
            kind: PatternKind::C,
            pos_pre,
            positive,
            neg_pre: Vec::new(),
            neg_post: Vec::new(),
        }
    }

    pub fn negative(name: &str, forbidden: TripleGraph) -> Self {
        Pattern {
            name: name.into(),
            kind: PatternKind::N,
            pos_pre: TripleGraph::new(),
            positive: TripleGraph::new(),
            neg_pre: Vec::new(),
            neg_post: vec![Condition::new(name, forbidden)],
        }
    }

    pub fn with_neg_pre(mut self, name: &str, graph: TripleGraph) -> Self {
        self.neg_pre.push(Condition::new(name, graph));
        self
    }

    pub fn with_neg_post(mut self, name: &str, graph: TripleGraph) -> Self {
        self.neg_post.push(Condition::new(name, graph));
        self
    }

    /// The forbidden graph of an N-pattern.
    pub fn forbidden(&self) -> Option<&TripleGraph> {
        match self.kind {
            PatternKind::N => self.neg_post.first().map(|c| &c.graph),
            _ => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.kind != PatternKind::N
    }

    /// Structural checks: kind shape and id-inclusion embeddings.
    pub fn check(&self, mm: &MetamodelTriple) -> Result<(), PatternError> {
        let err = |msg: String| {
            Err(PatternError::Malformed {
                pattern: self.name.clone(),
                msg,
            })
        };
        match self.kind {
            PatternKind::S if !self.pos_pre.is_empty() => {
                return err("an S-pattern has no positive precondition".into())
            }
            PatternKind::N => {
                if !self.pos_pre.is_empty() || !self.positive.is_empty() {
                    return err("an N-pattern has empty positive graphs".into());
                }
                if self.neg_post.len() != 1 || !self.neg_pre.is_empty() {
                    return err("an N-pattern has exactly one forbidden graph and no preconditions".into());
                }
            }
            _ => {}
        }
        let mut graphs = vec![
            ("positive graph", &self.positive),
            ("positive precondition", &self.pos_pre),
        ];
        graphs.extend(self.neg_pre.iter().map(|c| ("negative precondition", &c.graph)));
        graphs.extend(self.neg_post.iter().map(|c| ("negative postcondition", &c.graph)));
        for (what, g) in graphs {
            let v = validate_triple(g, mm);
            if !v.is_empty() {
                return err(format!("{what} is ill-typed: {}", v.join("; ")));
            }
        }
        if !self.positive.includes(&self.pos_pre) {
            return err(
                "positive precondition is not included in the positive graph (ids of C must be ids of Q)".into(),
            );
        }
        for c in self.neg_pre.iter().chain(self.neg_post.iter()) {
            if !c.graph.includes(&self.positive) {
                return err(format!(
                    "condition `{}` does not contain the positive graph (embedding not total)",
                    c.name
                ));
            }
        }
        Ok(())
    }

    pub fn mirrored(&self) -> Pattern {
        let m = |cs: &Vec<Condition>| cs.iter().map(|c| Condition::new(&c.name, c.graph.mirrored())).collect();
        Pattern {
            name: self.name.clone(),
            kind: self.kind,
            pos_pre: self.pos_pre.mirrored(),
            positive: self.positive.mirrored(),
            neg_pre: m(&self.neg_pre),
            neg_post: m(&self.neg_post),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specification {
    pub metamodel: MetamodelTriple,
    pub patterns: Vec<Pattern>,
}

impl Specification {
    pub fn new(metamodel: MetamodelTriple) -> Self {
        Specification {
            metamodel,
            patterns: Vec::new(),
        }
    }

    pub fn with(mut self, p: Pattern) -> Self {
        self.patterns.push(p);
        self
    }

    pub fn pattern(&self, name: &str) -> Option<&Pattern> {
        self.patterns.iter().find(|p| p.name == name)
    }

    /// Well-formedness of an input specification, including the rule that
    /// initially only N-patterns carry negative postconditions.
    pub fn validate(&self) -> Result<(), PatternError> {
        self.metamodel.validate().map_err(|msg| PatternError::Malformed {
            pattern: "<metamodel>".into(),
            msg,
        })?;
        let mut names = BTreeSet::new();
        for p in &self.patterns {
            if !names.insert(&p.name) {
                return Err(PatternError::Malformed {
                    pattern: p.name.clone(),
                    msg: "duplicate pattern name".into(),
                });
            }
            p.check(&self.metamodel)?;
            if p.kind != PatternKind::N && !p.neg_post.is_empty() {
                return Err(PatternError::Malformed {
                    pattern: p.name.clone(),
                    msg: "only N-patterns may carry negative postconditions in an input specification; express the postcondition as an N-pattern".into(),
                });
            }
        }
        Ok(())
    }

    pub fn mirrored(&self) -> Specification {
        Specification {
            metamodel: self.metamodel.mirrored(),
            patterns: self.patterns.iter().map(Pattern::mirrored).collect(),
        }
    }
}

/// A directed negative precondition `N^x_i = C +_{C|x} C_i|x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedCondition {
    pub name: String,
    pub graph: TripleGraph,
    /// Set when the directed condition is isomorphic to the base and is
    /// therefore not evaluated.
    pub excluded: bool,
}

/// The base `P_x = C +_{C|x} Q|x` of a pattern in one direction, with its
/// directed negative preconditions. All graphs use the pattern's ids, so
/// `P_x -> Q` and `P_x -> N^x_i` are inclusions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedBase {
    pub direction: Direction,
    pub base: TripleGraph,
    pub neg_pre: Vec<DirectedCondition>,
}

pub fn directed_base(p: &Pattern, dir: Direction) -> DirectedBase {
    let side = dir.side();
    let base = glue_over_side(&p.pos_pre, &p.positive, side).expect("pattern embeddings are inclusions");
    let neg_pre = p
        .neg_pre
        .iter()
        .map(|c| {
            let graph = glue_over_side(&p.pos_pre, &c.graph, side).expect("pattern embeddings are inclusions");
            let excluded = triple::triple_isomorphism(&graph, &base).is_some();
            DirectedCondition {
                name: c.name.clone(),
                graph,
                excluded,
            }
        })
        .collect();
    DirectedBase {
        direction: dir,
        base,
        neg_pre,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MatchClass {
    Positive,
    Negative,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedMatch {
    /// The base match `P_x -> host`.
    pub base: TripleMorphism,
    pub class: MatchClass,
    /// For negative matches, the blocking precondition; for violated ones
    /// with a Q-occurrence, the postcondition that fired.
    pub reason: Option<String>,
}

/// Classifies every base match of `p` in `host` for one direction.
pub fn check_pattern(host: &TripleGraph, p: &Pattern, dir: Direction) -> Vec<ClassifiedMatch> {
    let db = directed_base(p, dir);
    let host_flat = host.flatten();
    let base_flat = db.base.flatten();
    let q_flat = p.positive.flatten();
    let negs: Vec<_> = db
        .neg_pre
        .iter()
        .filter(|n| !n.excluded)
        .map(|n| (n, n.graph.flatten()))
        .collect();
    let posts: Vec<_> = p.neg_post.iter().map(|c| (c, c.graph.flatten())).collect();
    let bases = crate::graph::find_monomorphisms(&base_flat, &host_flat, &GraphMorphism::new())
        .expect("empty anchor is consistent");
    let mut out = Vec::with_capacity(bases.len());
    for m in bases {
        let blocked = negs
            .iter()
            .find(|(_, g)| crate::graph::extends(g, &host_flat, &m))
            .map(|(n, _)| n.name.clone());
        if let Some(name) = blocked {
            out.push(ClassifiedMatch {
                base: TripleMorphism::from_flat(&m),
                class: MatchClass::Negative,
                reason: Some(name),
            });
            continue;
        }
        // Some witness for Q that avoids every postcondition.
        let mut class = MatchClass::Violated;
        let mut reason = None;
        let _ = crate::graph::for_each_monomorphism(&q_flat, &host_flat, &m, |qm| {
            match posts.iter().find(|(_, g)| crate::graph::extends(g, &host_flat, qm)) {
                None => {
                    class = MatchClass::Positive;
                    reason = None;
                    std::ops::ControlFlow::Break(())
                }
                Some((c, _)) => {
                    reason.get_or_insert_with(|| c.name.clone());
                    std::ops::ControlFlow::Continue(())
                }
            }
        });
        out.push(ClassifiedMatch {
            base: TripleMorphism::from_flat(&m),
            class,
            reason,
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionReport {
    pub direction: Direction,
    pub matches: Vec<ClassifiedMatch>,
}

impl DirectionReport {
    pub fn satisfied(&self) -> bool {
        self.matches.iter().all(|m| m.class != MatchClass::Violated)
    }

    pub fn vacuous(&self) -> bool {
        self.matches.is_empty()
    }

    pub fn classes(&self) -> Vec<MatchClass> {
        self.matches.iter().map(|m| m.class).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternReport {
    pub pattern: String,
    pub forward: DirectionReport,
    pub backward: DirectionReport,
}

impl PatternReport {
    pub fn satisfied(&self) -> bool {
        self.forward.satisfied() && self.backward.satisfied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatisfactionReport {
    pub patterns: Vec<PatternReport>,
}

impl SatisfactionReport {
    pub fn satisfied(&self) -> bool {
        self.patterns.iter().all(PatternReport::satisfied)
    }

    pub fn violated_patterns(&self) -> Vec<String> {
        self.patterns
            .iter()
            .filter(|p| !p.satisfied())
            .map(|p| p.pattern.clone())
            .collect()
    }

    pub fn pattern(&self, name: &str) -> Option<&PatternReport> {
        self.patterns.iter().find(|p| p.pattern == name)
    }
}

pub fn check_patterns<'a>(host: &TripleGraph, patterns: impl IntoIterator<Item = &'a Pattern>) -> SatisfactionReport {
    let mut patterns: Vec<PatternReport> = patterns
        .into_iter()
        .map(|p| PatternReport {
            pattern: p.name.clone(),
            forward: DirectionReport {
                direction: Direction::Forward,
                matches: check_pattern(host, p, Direction::Forward),
            },
            backward: DirectionReport {
                direction: Direction::Backward,
                matches: check_pattern(host, p, Direction::Backward),
            },
        })
        .collect();
    patterns.sort_by(|a, b| a.pattern.cmp(&b.pattern));
    SatisfactionReport { patterns }
}

pub fn check_spec(host: &TripleGraph, s: &Specification) -> SatisfactionReport {
    check_patterns(host, &s.patterns)
}

/// Cheap boolean form of [`check_spec`] that stops at the first violation.
pub fn satisfies<'a>(host: &TripleGraph, patterns: impl IntoIterator<Item = &'a Pattern>) -> bool {
    patterns.into_iter().all(|p| {
        [Direction::Forward, Direction::Backward].into_iter().all(|d| {
            check_pattern(host, p, d)
                .iter()
                .all(|m| m.class != MatchClass::Violated)
        })
    })
}

/// `restrict` re-exported for callers working only with patterns.
pub fn side_of(t: &TripleGraph, side: Side) -> TripleGraph {
    restrict(t, side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn c_t_forward_base_is_one_class() {
        let spec = fixtures::class2rel();
        let ct = spec.pattern("C-T").unwrap();
        let db = directed_base(ct, Direction::Forward);
        assert_eq!(db.base.size(), 1);
        assert_eq!(db.neg_pre.len(), 1);
        assert_eq!(db.neg_pre[0].graph.source.nodes.len(), 2);
        assert!(!db.neg_pre[0].excluded);
    }

    #[test]
    fn c_t_backward_precondition_is_excluded() {
        let spec = fixtures::class2rel();
        let db = directed_base(spec.pattern("C-T").unwrap(), Direction::Backward);
        assert_eq!(db.base.target.nodes.len(), 1);
        assert!(db.neg_pre[0].excluded);
    }

    #[test]
    fn n_pattern_base_is_empty() {
        let spec = fixtures::class2rel();
        let np = spec.pattern("notDupF").unwrap();
        for d in [Direction::Forward, Direction::Backward] {
            assert!(directed_base(np, d).base.is_empty());
        }
    }

    #[test]
    fn subclass_host_classification() {
        let spec = fixtures::class2rel();
        let ct = spec.pattern("C-T").unwrap();
        let host = fixtures::subclass_host();
        let fwd = check_pattern(&host, ct, Direction::Forward);
        assert_eq!(
            fwd.iter().map(|m| m.class).collect::<Vec<_>>(),
            vec![MatchClass::Positive, MatchClass::Negative]
        );
        let bwd = check_pattern(&host, ct, Direction::Backward);
        assert_eq!(
            bwd.iter().map(|m| m.class).collect::<Vec<_>>(),
            vec![MatchClass::Positive]
        );
    }

    #[test]
    fn empty_host_is_vacuous() {
        let spec = fixtures::class2rel();
        for p in &spec.patterns {
            if p.kind == PatternKind::S {
                assert!(check_pattern(&TripleGraph::new(), p, Direction::Forward).is_empty());
            }
        }
    }

    #[test]
    fn orphan_class_violates_c_t() {
        let spec = Specification::new(fixtures::class2rel().metamodel)
            .with(fixtures::class2rel().pattern("C-T").unwrap().clone());
        let host = TripleGraph::new().with_source(crate::graph::Graph::new().with_node("c", "C"));
        let r = check_spec(&host, &spec);
        assert!(!r.satisfied());
        assert_eq!(r.violated_patterns(), vec!["C-T".to_string()]);
    }

    #[test]
    fn duplicated_f_violates_not_dup_f() {
        let spec = fixtures::class2rel();
        let np = spec.pattern("notDupF").unwrap();
        let host = np.forbidden().unwrap().clone();
        let r = check_patterns(&host, [np]);
        assert!(!r.satisfied());
        assert!(check_patterns(&TripleGraph::new(), [np]).satisfied());
    }

    #[test]
    fn postcondition_on_s_pattern_is_rejected() {
        let spec = fixtures::class2rel();
        let mut bad = spec.clone();
        let q = bad.patterns[0].positive.clone();
        bad.patterns[0].neg_post.push(Condition::new("x", q));
        let e = bad.validate().unwrap_err();
        assert!(e.to_string().contains("only N-patterns"));
    }
}
