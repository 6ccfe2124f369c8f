//! Non-deleting rewriting with NACs and postconditions, saturation, and the
//! verified forward/backward transformations.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::deduction::PipelineOptions;
use crate::graph::{self, Graph, GraphMorphism};
use crate::pattern::{check_spec, SatisfactionReport, Specification};
use crate::rulegen::{generate_rules, RuleError, RuleSet, TggRule};
use crate::triple::{triple_extends, Corr, Direction, Side, TripleGraph, TripleMorphism};

/// Safety net against non-terminating rule sets.
pub const STEP_LIMIT: usize = 100_000;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Rules(#[from] RuleError),
    #[error("rule `{rule}` is blocked by NAC `{nac}` at this match")]
    Blocked { rule: String, nac: String },
    #[error("postcondition `{post}` of rule `{rule}` fired; application rejected")]
    PostConditionFired { rule: String, post: String },
    #[error("saturation exceeded {0} steps")]
    StepLimit(usize),
    #[error("the input side was modified by the transformation")]
    InputChanged,
    #[error("result violates the specification (source outside the domain); violated patterns: {}", violated.join(", "))]
    Verification {
        violated: Vec<String>,
        triple: Box<TripleGraph>,
    },
}

impl EngineError {
    /// Errors caused by malformed input rather than by the transformation.
    pub fn is_input_error(&self) -> bool {
        matches!(self, EngineError::Input(_) | EngineError::Rules(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleMatch {
    pub rule: String,
    /// The match `L -> host`.
    pub morphism: TripleMorphism,
    pub blocked_by: Option<String>,
}

/// A rule with flat encodings prepared for matching.
struct Prepared<'a> {
    rule: &'a TggRule,
    lhs: Graph,
    nacs: Vec<(&'a str, Graph)>,
}

impl<'a> Prepared<'a> {
    fn new(rule: &'a TggRule) -> Self {
        Prepared {
            rule,
            lhs: rule.lhs.flatten(),
            nacs: rule.nacs.iter().map(|n| (n.name.as_str(), n.graph.flatten())).collect(),
        }
    }

    fn blocking(&self, host: &Graph, m: &GraphMorphism) -> Option<&'a str> {
        self.nacs
            .iter()
            .find(|(_, g)| graph::extends(g, host, m))
            .map(|(n, _)| *n)
    }

    fn for_each_applicable(&self, host: &Graph, mut f: impl FnMut(&GraphMorphism) -> ControlFlow<()>) {
        let _ = graph::for_each_monomorphism(&self.lhs, host, &GraphMorphism::new(), |m| {
            if self.blocking(host, m).is_none() {
                f(m)
            } else {
                ControlFlow::Continue(())
            }
        });
    }
}

/// All matches of `L`, each marked with the first NAC that blocks it.
pub fn find_matches(rule: &TggRule, host: &TripleGraph) -> Vec<RuleMatch> {
    let p = Prepared::new(rule);
    let h = host.flatten();
    graph::find_monomorphisms(&p.lhs, &h, &GraphMorphism::new())
        .unwrap_or_default()
        .into_iter()
        .map(|m| RuleMatch {
            rule: rule.name.clone(),
            blocked_by: p.blocking(&h, &m).map(String::from),
            morphism: TripleMorphism::from_flat(&m),
        })
        .collect()
}

pub fn find_applicable(rule: &TggRule, host: &TripleGraph) -> Vec<RuleMatch> {
    find_matches(rule, host)
        .into_iter()
        .filter(|m| m.blocked_by.is_none())
        .collect()
}

/// Total number of `L` matches of all rules in `host`.
pub fn base_match_count(rules: &[TggRule], host: &TripleGraph) -> usize {
    let h = host.flatten();
    rules
        .iter()
        .map(|r| {
            graph::find_monomorphisms(&r.lhs.flatten(), &h, &GraphMorphism::new())
                .map(|v| v.len())
                .unwrap_or(0)
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Application {
    pub host: TripleGraph,
    /// The comatch `R -> host'`.
    pub comatch: TripleMorphism,
    /// Elements added by the step. May reference existing nodes.
    pub delta: TripleGraph,
}

fn fresh(base: &str, taken: &mut BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "x" } else { stem };
    let id = (1..)
        .map(|n| format!("{stem}{n}"))
        .find(|c| !taken.contains(c) && !taken.contains(&format!("cs:{c}")) && !taken.contains(&format!("ct:{c}")))
        .unwrap();
    taken.insert(id.clone());
    id
}

/// Applies `rule` at `m`: the pushout of `L ⊆ R` and `m`, where the host
/// keeps its ids and created elements get fresh ones. The postconditions are
/// checked on the comatch.
pub fn apply(rule: &TggRule, m: &TripleMorphism, host: &TripleGraph) -> Result<Application, EngineError> {
    m.validate(&rule.lhs, host)
        .map_err(|e| EngineError::Input(format!("invalid match for `{}`: {e}", rule.name)))?;
    let p = Prepared::new(rule);
    let h = host.flatten();
    if let Some(nac) = p.blocking(&h, &m.to_flat_for(&rule.lhs)) {
        return Err(EngineError::Blocked {
            rule: rule.name.clone(),
            nac: nac.to_string(),
        });
    }
    let created = rule.created();
    let mut taken = host.ids();
    let mut co = m.clone();
    for id in created
        .source
        .nodes
        .keys()
        .chain(created.target.nodes.keys())
        .chain(created.corr.keys())
    {
        co.nodes.insert(id.clone(), fresh(id, &mut taken));
    }
    for id in created.source.edges.keys().chain(created.target.edges.keys()) {
        co.edges.insert(id.clone(), fresh(id, &mut taken));
    }
    let at = |x: &str| co.nodes[x].clone();
    let mut delta = TripleGraph::new();
    for (src, dst) in [
        (&created.source, &mut delta.source),
        (&created.target, &mut delta.target),
    ] {
        for (id, ty) in &src.nodes {
            dst.add_node(&co.nodes[id], ty);
        }
        for (id, e) in &src.edges {
            dst.add_edge(&co.edges[id], &e.ty, &at(&e.src), &at(&e.tgt));
        }
    }
    for (id, c) in &created.corr {
        delta.corr.insert(
            co.nodes[id].clone(),
            Corr {
                ty: c.ty.clone(),
                source: at(&c.source),
                target: at(&c.target),
            },
        );
    }
    let next = host.union(&delta);
    for post in &rule.posts {
        if triple_extends(&post.graph, &next, &co) {
            return Err(EngineError::PostConditionFired {
                rule: rule.name.clone(),
                post: post.name.clone(),
            });
        }
    }
    Ok(Application {
        host: next,
        comatch: co,
        delta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    /// First applicable match in (rule name, match) order.
    #[default]
    Canonical,
    /// Uniform choice among all applicable matches, seeded.
    Random(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: String,
    pub morphism: TripleMorphism,
    pub delta: TripleGraph,
}

/// A tentative application undone because a postcondition fired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub rule: String,
    pub morphism: TripleMorphism,
    pub post: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    pub steps: Vec<Step>,
    pub rejected: Vec<Rejection>,
}

impl Trace {
    /// Replays the deltas on `start`.
    pub fn replay(&self, start: &TripleGraph) -> TripleGraph {
        self.steps.iter().fold(start.clone(), |h, s| h.union(&s.delta))
    }
}

/// Applies rules until none is applicable. A match whose application would
/// trigger a postcondition is rejected for good (the host only grows, so it
/// would fire again) and recorded in the trace.
pub fn saturate(
    rules: &[TggRule],
    start: &TripleGraph,
    schedule: Schedule,
) -> Result<(TripleGraph, Trace), EngineError> {
    let mut sorted: Vec<&TggRule> = rules.iter().collect();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    let prepared: Vec<Prepared> = sorted.iter().map(|r| Prepared::new(r)).collect();
    let mut rng = match schedule {
        Schedule::Random(seed) => Some(StdRng::seed_from_u64(seed)),
        Schedule::Canonical => None,
    };
    let mut host = start.clone();
    let mut trace = Trace::default();
    let mut rejected: BTreeSet<(usize, GraphMorphism)> = BTreeSet::new();
    loop {
        let h = host.flatten();
        let pick: Option<(usize, GraphMorphism)> = match rng.as_mut() {
            None => {
                let mut found = None;
                for (i, p) in prepared.iter().enumerate() {
                    p.for_each_applicable(&h, |m| {
                        if rejected.contains(&(i, m.clone())) {
                            return ControlFlow::Continue(());
                        }
                        found = Some((i, m.clone()));
                        ControlFlow::Break(())
                    });
                    if found.is_some() {
                        break;
                    }
                }
                found
            }
            Some(rng) => {
                let mut all = Vec::new();
                for (i, p) in prepared.iter().enumerate() {
                    p.for_each_applicable(&h, |m| {
                        if !rejected.contains(&(i, m.clone())) {
                            all.push((i, m.clone()));
                        }
                        ControlFlow::Continue(())
                    });
                }
                if all.is_empty() {
                    None
                } else {
                    let k = rng.gen_range(0..all.len());
                    Some(all.swap_remove(k))
                }
            }
        };
        let Some((i, m)) = pick else {
            return Ok((host, trace));
        };
        if trace.steps.len() >= STEP_LIMIT {
            return Err(EngineError::StepLimit(STEP_LIMIT));
        }
        let rule = prepared[i].rule;
        let tm = TripleMorphism::from_flat(&m);
        let app = match apply(rule, &tm, &host) {
            Err(EngineError::PostConditionFired { post, .. }) => {
                trace.rejected.push(Rejection {
                    rule: rule.name.clone(),
                    morphism: tm,
                    post,
                });
                rejected.insert((i, m));
                continue;
            }
            r => r?,
        };
        let m = tm;
        trace.steps.push(Step {
            rule: rule.name.clone(),
            morphism: m,
            delta: app.delta,
        });
        host = app.host;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransformOptions {
    pub np_deduction: bool,
    pub schedule: Schedule,
}

impl Default for TransformOptions {
    fn default() -> Self {
        TransformOptions {
            np_deduction: true,
            schedule: Schedule::Canonical,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TransformOutcome {
    pub triple: TripleGraph,
    pub trace: Trace,
    pub rules: RuleSet,
    pub report: SatisfactionReport,
}

/// Compiles the rules for `dir`, saturates from the model on the input
/// side, and verifies the result against the specification.
pub fn transform(
    s: &Specification,
    model: &Graph,
    dir: Direction,
    opts: TransformOptions,
) -> Result<TransformOutcome, EngineError> {
    s.validate().map_err(|e| EngineError::Input(e.to_string()))?;
    let side = dir.side();
    let types = s.metamodel.types(side).expect("source and target have type graphs");
    model
        .validate(types)
        .map_err(|e| EngineError::Input(format!("model is not typed over the {} metamodel: {e}", dir.name())))?;
    let rules = generate_rules(
        s,
        dir,
        PipelineOptions {
            np_deduction: opts.np_deduction,
        },
    )?;
    let start = match side {
        Side::Target => TripleGraph::new().with_target(model.clone()),
        _ => TripleGraph::new().with_source(model.clone()),
    };
    let (triple, trace) = saturate(&rules.rules, &start, opts.schedule)?;
    let kept = match side {
        Side::Target => &triple.target,
        _ => &triple.source,
    };
    if kept != model {
        return Err(EngineError::InputChanged);
    }
    let report = check_spec(&triple, s);
    if !report.satisfied() {
        return Err(EngineError::Verification {
            violated: report.violated_patterns(),
            triple: Box::new(triple),
        });
    }
    Ok(TransformOutcome {
        triple,
        trace,
        rules,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::triple::triple_isomorphism;

    fn fwd(s: &Specification, g: &Graph) -> Result<TransformOutcome, EngineError> {
        transform(s, g, Direction::Forward, TransformOptions::default())
    }

    #[test]
    fn class_table_rule_on_subclass_host() {
        let rs = generate_rules(&fixtures::class2rel(), Direction::Forward, PipelineOptions::default()).unwrap();
        let ct = rs.rules.iter().find(|r| r.name == "fwd:C-T").unwrap();
        let host = TripleGraph::new().with_source(
            Graph::new()
                .with_node("c1", "C")
                .with_node("c2", "C")
                .with_edge("p", "parent", "c2", "c1"),
        );
        let ms = find_matches(ct, &host);
        assert_eq!(ms.len(), 2);
        assert_eq!(ms.iter().filter(|m| m.blocked_by.is_none()).count(), 1);
        assert_eq!(ms[1].blocked_by.as_deref(), Some("noParent"));
        let app = apply(ct, &ms[0].morphism, &host).unwrap();
        assert_eq!(app.delta.target.nodes.len(), 1);
        assert_eq!(app.delta.corr.len(), 1);
        let again = find_matches(ct, &app.host);
        assert_eq!(again[0].blocked_by.as_deref(), Some(crate::rulegen::RHS_NAC));
        assert!(apply(ct, &again[0].morphism, &app.host).is_err());
    }

    #[test]
    fn one_class_one_attribute() {
        let src = fixtures::class2rel_sources()[1].1.clone();
        let out = fwd(&fixtures::class2rel(), &src).unwrap();
        assert_eq!(out.triple.target.nodes.len(), 2);
        assert_eq!(out.triple.corr.len(), 2);
        assert_eq!(out.trace.replay(&TripleGraph::new().with_source(src)), out.triple);
    }

    #[test]
    fn subclass_gets_no_table() {
        let src = fixtures::class2rel_sources()[2].1.clone();
        let out = fwd(&fixtures::class2rel(), &src).unwrap();
        let related: Vec<&str> = out.triple.corr.values().map(|c| c.source.as_str()).collect();
        assert!(related.contains(&"c1") && related.contains(&"a"));
        assert!(!related.contains(&"c2"));
    }

    #[test]
    fn empty_source_gives_empty_triple() {
        let out = fwd(&fixtures::class2rel(), &Graph::new()).unwrap();
        assert!(out.triple.is_empty());
        assert!(out.trace.steps.is_empty());
    }

    #[test]
    fn shared_b_needs_reuse() {
        let s = fixtures::shared_b();
        let two = fixtures::nodes("A", 2);
        let without = transform(
            &s,
            &two,
            Direction::Forward,
            TransformOptions {
                np_deduction: false,
                ..Default::default()
            },
        );
        assert!(matches!(without, Err(EngineError::Verification { .. })));
        let out = fwd(&s, &two).unwrap();
        let bs = out.triple.target.nodes.values().filter(|t| *t == "B").count();
        assert_eq!((bs, out.triple.corr.len()), (1, 2));
    }

    #[test]
    fn random_schedules_agree_on_simple_sources() {
        let s = fixtures::class2rel();
        let src = fixtures::class2rel_sources()[3].1.clone();
        let base = fwd(&s, &src).unwrap().triple;
        for seed in 0..5 {
            let out = transform(
                &s,
                &src,
                Direction::Forward,
                TransformOptions {
                    schedule: Schedule::Random(seed),
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(triple_isomorphism(&out.triple, &base).is_some());
        }
    }

    #[test]
    fn ill_typed_model_is_an_input_error() {
        let bad = Graph::new().with_node("x", "Nope");
        assert!(fwd(&fixtures::class2rel(), &bad).unwrap_err().is_input_error());
    }
}
