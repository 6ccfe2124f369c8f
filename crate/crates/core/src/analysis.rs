//! Static checks over specifications and the Hippocratic probe.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::deduction::PipelineOptions;
use crate::engine::find_applicable;
use crate::pattern::{check_spec, PatternKind, Specification};
use crate::rulegen::{generate_rules, RuleError};
use crate::triple::{first_triple_monomorphism, Direction, TripleGraph, TripleMorphism};

/// A positive pattern whose positive graph contains a forbidden graph, so
/// its rule can never be applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conflict {
    pub positive: String,
    pub negative: String,
    /// Embedding of the forbidden graph into the positive graph.
    pub witness: TripleMorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub pattern: String,
    pub form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SideCoverage {
    pub covered_nodes: BTreeSet<String>,
    pub uncovered_nodes: BTreeSet<String>,
    pub covered_edges: BTreeSet<String>,
    pub uncovered_edges: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Coverage {
    pub source: SideCoverage,
    pub target: SideCoverage,
}

/// Properties defined over all models that this report does not decide.
pub const UNDECIDED: [&str; 4] = [
    "forward functionality (FF)",
    "backward functionality (FB)",
    "relating functionality (FR)",
    "specification-level contradiction",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub conflicts: Vec<Conflict>,
    pub tautologies: Vec<Finding>,
    pub contradictions: Vec<Finding>,
    pub coverage: Coverage,
    pub undecided: Vec<String>,
}

fn positives(s: &Specification) -> impl Iterator<Item = &crate::pattern::Pattern> {
    s.patterns.iter().filter(|p| p.kind != PatternKind::N)
}

pub fn find_conflicts(s: &Specification) -> Vec<Conflict> {
    let mut out = Vec::new();
    for p in positives(s) {
        for n in s.patterns.iter().filter(|p| p.kind == PatternKind::N) {
            let qn = n.forbidden().expect("N-pattern");
            if let Some(w) = first_triple_monomorphism(qn, &p.positive, &TripleMorphism::new()) {
                out.push(Conflict {
                    positive: p.name.clone(),
                    negative: n.name.clone(),
                    witness: w,
                });
            }
        }
    }
    out
}

/// `←N(C_i) ⇒ P(Q)` with `C_i ≅ Q` over `Q`, or `←P(C) ⇒ P(Q)` with `C ≅ Q`
/// over `C`. Both reduce to equal sizes because the embeddings are
/// inclusions.
pub fn find_tautologies(s: &Specification) -> Vec<Finding> {
    let mut out = Vec::new();
    for p in positives(s) {
        let size = p.positive.size();
        if let Some(c) = p.neg_pre.iter().find(|c| c.graph.size() == size) {
            out.push(Finding {
                pattern: p.name.clone(),
                form: format!("(i) negative precondition `{}` equals the positive graph", c.name),
            });
        }
        if p.kind == PatternKind::C && p.pos_pre.size() == size {
            out.push(Finding {
                pattern: p.name.clone(),
                form: "(ii) positive precondition equals the positive graph".into(),
            });
        }
    }
    out
}

/// `P(Q) ∧ →N(Q)`: a negative postcondition equal to the positive graph.
pub fn find_contradictions(s: &Specification) -> Vec<Finding> {
    positives(s)
        .filter_map(|p| {
            p.neg_post
                .iter()
                .find(|c| c.graph.size() == p.positive.size())
                .map(|c| Finding {
                    pattern: p.name.clone(),
                    form: format!("negative postcondition `{}` equals the positive graph", c.name),
                })
        })
        .collect()
}

pub fn language_covering(s: &Specification) -> Coverage {
    let mut cov = Coverage::default();
    for (side, types, pick) in [
        (
            &mut cov.source,
            &s.metamodel.source,
            (|t: &TripleGraph| t.source.clone()) as fn(&TripleGraph) -> _,
        ),
        (&mut cov.target, &s.metamodel.target, |t: &TripleGraph| t.target.clone()),
    ] {
        // Every graph of a positive pattern counts, conditions included.
        for p in positives(s) {
            let conds = p.neg_pre.iter().chain(&p.neg_post).map(|c| &c.graph);
            for g in [&p.positive, &p.pos_pre].into_iter().chain(conds).map(pick) {
                side.covered_nodes.extend(g.nodes.values().cloned());
                side.covered_edges.extend(g.edges.values().map(|e| e.ty.clone()));
            }
        }
        side.uncovered_nodes = types.node_types.difference(&side.covered_nodes).cloned().collect();
        side.uncovered_edges = types
            .edge_types
            .keys()
            .filter(|k| !side.covered_edges.contains(*k))
            .cloned()
            .collect();
    }
    cov
}

pub fn analyze(s: &Specification) -> AnalysisReport {
    AnalysisReport {
        conflicts: find_conflicts(s),
        tautologies: find_tautologies(s),
        contradictions: find_contradictions(s),
        coverage: language_covering(s),
        undecided: UNDECIDED.iter().map(|u| u.to_string()).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HippocraticVerdict {
    /// The host does not satisfy the specification; nothing to probe.
    NotApplicable {
        violated: Vec<String>,
    },
    Pass,
    /// A rule could still modify a consistent host.
    Fail {
        rule: String,
        morphism: TripleMorphism,
    },
}

/// On a host satisfying `s`, no compiled forward or backward rule may be
/// applicable.
pub fn hippocratic_probe(s: &Specification, host: &TripleGraph) -> Result<HippocraticVerdict, RuleError> {
    let report = check_spec(host, s);
    if !report.satisfied() {
        return Ok(HippocraticVerdict::NotApplicable {
            violated: report.violated_patterns(),
        });
    }
    for dir in [Direction::Forward, Direction::Backward] {
        for r in generate_rules(s, dir, PipelineOptions::default())?.rules {
            if let Some(m) = find_applicable(&r, host).into_iter().next() {
                return Ok(HippocraticVerdict::Fail {
                    rule: r.name,
                    morphism: m.morphism,
                });
            }
        }
    }
    Ok(HippocraticVerdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pattern::Pattern;

    #[test]
    fn class2rel_is_clean() {
        let r = analyze(&fixtures::class2rel());
        assert!(r.conflicts.is_empty());
        assert!(r.tautologies.is_empty());
        assert!(r.contradictions.is_empty());
        assert!(r.coverage.source.uncovered_nodes.is_empty());
        assert!(r.coverage.target.uncovered_nodes.is_empty());
        assert!(r.coverage.source.covered_edges.contains("parent"));
        assert!(r.coverage.source.uncovered_edges.is_empty());
        assert_eq!(r.undecided.len(), 4);
    }

    #[test]
    fn self_conflict_and_degenerate_forms() {
        let s = fixtures::class2rel();
        let q = s.pattern("C-T").unwrap().positive.clone();
        let mut t = Specification::new(s.metamodel.clone())
            .with(Pattern::simple("P", q.clone()))
            .with(Pattern::negative("N", q.clone()));
        assert_eq!(find_conflicts(&t).len(), 1);
        t.patterns
            .push(Pattern::simple("Taut1", q.clone()).with_neg_pre("same", q.clone()));
        t.patterns.push(Pattern::composite("Taut2", q.clone(), q.clone()));
        t.patterns
            .push(Pattern::simple("Contra", q.clone()).with_neg_post("same", q.clone()));
        let taut: Vec<_> = find_tautologies(&t).into_iter().map(|f| f.pattern).collect();
        assert_eq!(taut, ["Taut1", "Taut2"]);
        assert_eq!(find_contradictions(&t)[0].pattern, "Contra");
    }

    #[test]
    fn empty_spec_covers_nothing() {
        let s = Specification::new(fixtures::class2rel_metamodel());
        let c = language_covering(&s);
        assert!(c.source.covered_nodes.is_empty());
        assert_eq!(c.source.uncovered_nodes.len(), 3);
    }

    #[test]
    fn subclass_host_probe() {
        let s = fixtures::class2rel();
        let ct = Specification::new(s.metamodel.clone()).with(s.pattern("C-T").unwrap().clone());
        assert_eq!(
            hippocratic_probe(&ct, &fixtures::subclass_host()).unwrap(),
            HippocraticVerdict::Pass
        );
        let bad = TripleGraph::new().with_source(crate::graph::Graph::new().with_node("c", "C"));
        assert!(matches!(
            hippocratic_probe(&ct, &bad).unwrap(),
            HippocraticVerdict::NotApplicable { .. }
        ));
    }
}
