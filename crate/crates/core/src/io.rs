//! JSON documents for specifications, models, triples, rules and reports.
//!
//! Graphs are explicit node/edge/correspondence lists; embeddings inside a
//! pattern or rule are given by shared ids.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{AnalysisReport, Coverage, Finding};
use crate::deduction::Deduction;
use crate::engine::Trace;
use crate::graph::{Graph, TypeGraph};
use crate::pattern::{Condition, MatchClass, Pattern, PatternError, PatternKind, SatisfactionReport, Specification};
use crate::rulegen::{RuleSet, TggRule};
use crate::triple::{Corr, CorrType, Direction, MetamodelTriple, TripleGraph, TripleMorphism};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("syntax error at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("{0}")]
    Semantic(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Syntax {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        }
    }
}

// ---------------------------------------------------------------------------
// Graph documents
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: String,
    #[serde(rename = "type")]
    pub ty: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    #[serde(default)]
    pub nodes: Vec<NodeDoc>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
}

impl From<&Graph> for GraphDoc {
    fn from(g: &Graph) -> Self {
        GraphDoc {
            nodes: g
                .nodes
                .iter()
                .map(|(id, ty)| NodeDoc {
                    id: id.clone(),
                    ty: ty.clone(),
                })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|(id, e)| EdgeDoc {
                    id: id.clone(),
                    ty: e.ty.clone(),
                    src: e.src.clone(),
                    tgt: e.tgt.clone(),
                })
                .collect(),
        }
    }
}

impl GraphDoc {
    pub fn to_graph(&self, taken: &mut BTreeSet<String>) -> Result<Graph, IoError> {
        let mut g = Graph::new();
        for n in &self.nodes {
            claim(taken, &n.id)?;
            g.add_node(&n.id, &n.ty);
        }
        for e in &self.edges {
            claim(taken, &e.id)?;
            g.add_edge(&e.id, &e.ty, &e.src, &e.tgt);
        }
        g.check_structure().map_err(|e| IoError::Semantic(e.to_string()))?;
        Ok(g)
    }
}

fn claim(taken: &mut BTreeSet<String>, id: &str) -> Result<(), IoError> {
    if id.starts_with("cs:") || id.starts_with("ct:") {
        return Err(IoError::Semantic(format!("id `{id}` uses a reserved prefix")));
    }
    if !taken.insert(id.to_string()) {
        return Err(IoError::Semantic(format!("duplicate id `{id}`")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrDoc {
    pub id: String,
    #[serde(rename = "type", default = "default_corr_type")]
    pub ty: String,
    pub source: String,
    pub target: String,
}

fn default_corr_type() -> String {
    crate::triple::DEFAULT_CORR_TYPE.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDoc {
    #[serde(default)]
    pub source: GraphDoc,
    #[serde(default)]
    pub target: GraphDoc,
    #[serde(default)]
    pub corr: Vec<CorrDoc>,
}

impl From<&TripleGraph> for TripleDoc {
    fn from(t: &TripleGraph) -> Self {
        TripleDoc {
            source: (&t.source).into(),
            target: (&t.target).into(),
            corr: t
                .corr
                .iter()
                .map(|(id, c)| CorrDoc {
                    id: id.clone(),
                    ty: c.ty.clone(),
                    source: c.source.clone(),
                    target: c.target.clone(),
                })
                .collect(),
        }
    }
}

impl TripleDoc {
    pub fn to_triple(&self) -> Result<TripleGraph, IoError> {
        let mut taken = BTreeSet::new();
        let source = self.source.to_graph(&mut taken)?;
        let target = self.target.to_graph(&mut taken)?;
        let mut t = TripleGraph::new().with_source(source).with_target(target);
        for c in &self.corr {
            claim(&mut taken, &c.id)?;
            if !t.source.nodes.contains_key(&c.source) {
                return Err(IoError::Semantic(format!(
                    "correspondence `{}`: dangling cs `{}`",
                    c.id, c.source
                )));
            }
            if !t.target.nodes.contains_key(&c.target) {
                return Err(IoError::Semantic(format!(
                    "correspondence `{}`: dangling ct `{}`",
                    c.id, c.target
                )));
            }
            t.corr.insert(
                c.id.clone(),
                Corr {
                    ty: c.ty.clone(),
                    source: c.source.clone(),
                    target: c.target.clone(),
                },
            );
        }
        Ok(t)
    }
}

// ---------------------------------------------------------------------------
// Specification documents
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeTypeDoc {
    #[serde(rename = "type")]
    pub ty: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeGraphDoc {
    #[serde(default)]
    pub nodes: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeTypeDoc>,
}

impl From<&TypeGraph> for TypeGraphDoc {
    fn from(t: &TypeGraph) -> Self {
        TypeGraphDoc {
            nodes: t.node_types.iter().cloned().collect(),
            edges: t
                .edge_types
                .iter()
                .map(|(ty, (s, g))| EdgeTypeDoc {
                    ty: ty.clone(),
                    src: s.clone(),
                    tgt: g.clone(),
                })
                .collect(),
        }
    }
}

impl TypeGraphDoc {
    fn to_type_graph(&self) -> TypeGraph {
        let mut t = TypeGraph::new();
        for n in &self.nodes {
            t = t.with_node(n);
        }
        for e in &self.edges {
            t = t.with_edge(&e.ty, &e.src, &e.tgt);
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetamodelDoc {
    pub source: TypeGraphDoc,
    pub target: TypeGraphDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub corr: Vec<CorrType>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionDoc {
    pub name: String,
    pub graph: TripleDoc,
}

impl From<&Condition> for ConditionDoc {
    fn from(c: &Condition) -> Self {
        ConditionDoc {
            name: c.name.clone(),
            graph: (&c.graph).into(),
        }
    }
}

impl ConditionDoc {
    fn to_condition(&self) -> Result<Condition, IoError> {
        Ok(Condition::new(&self.name, self.graph.to_triple()?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct PatternDoc {
    pub name: String,
    pub kind: PatternKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos_pre: Option<TripleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive: Option<TripleDoc>,
    /// The forbidden graph of an N-pattern.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<TripleDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub neg_pre: Vec<ConditionDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub neg_post: Vec<ConditionDoc>,
}

impl From<&Pattern> for PatternDoc {
    fn from(p: &Pattern) -> Self {
        if p.kind == PatternKind::N {
            return PatternDoc {
                name: p.name.clone(),
                kind: p.kind,
                pos_pre: None,
                positive: None,
                forbidden: p.forbidden().map(Into::into),
                neg_pre: Vec::new(),
                neg_post: Vec::new(),
            };
        }
        PatternDoc {
            name: p.name.clone(),
            kind: p.kind,
            pos_pre: (p.kind == PatternKind::C).then(|| (&p.pos_pre).into()),
            positive: Some((&p.positive).into()),
            forbidden: None,
            neg_pre: p.neg_pre.iter().map(Into::into).collect(),
            neg_post: p.neg_post.iter().map(Into::into).collect(),
        }
    }
}

impl PatternDoc {
    pub fn to_pattern(&self) -> Result<Pattern, IoError> {
        let bad = |msg: &str| {
            IoError::Pattern(PatternError::Malformed {
                pattern: self.name.clone(),
                msg: msg.into(),
            })
        };
        if self.kind == PatternKind::N {
            if self.positive.is_some()
                || self.pos_pre.is_some()
                || !self.neg_pre.is_empty()
                || !self.neg_post.is_empty()
            {
                return Err(bad("an N-pattern has only a `forbidden` graph"));
            }
            let f = self
                .forbidden
                .as_ref()
                .ok_or_else(|| bad("an N-pattern needs a `forbidden` graph"))?;
            return Ok(Pattern::negative(&self.name, f.to_triple()?));
        }
        if self.forbidden.is_some() {
            return Err(bad("only N-patterns have a `forbidden` graph"));
        }
        if self.kind == PatternKind::S && self.pos_pre.is_some() {
            return Err(bad("an S-pattern has no positive precondition; use kind C"));
        }
        let positive = self
            .positive
            .as_ref()
            .ok_or_else(|| bad("missing `positive` graph"))?
            .to_triple()?;
        Ok(Pattern {
            name: self.name.clone(),
            kind: self.kind,
            pos_pre: match &self.pos_pre {
                Some(d) => d.to_triple()?,
                None => TripleGraph::new(),
            },
            positive,
            neg_pre: self
                .neg_pre
                .iter()
                .map(ConditionDoc::to_condition)
                .collect::<Result<_, _>>()?,
            neg_post: self
                .neg_post
                .iter()
                .map(ConditionDoc::to_condition)
                .collect::<Result<_, _>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    pub metamodel: MetamodelDoc,
    pub patterns: Vec<PatternDoc>,
}

impl From<&Specification> for SpecDoc {
    fn from(s: &Specification) -> Self {
        let corr = if s.metamodel.corr == MetamodelTriple::new(TypeGraph::new(), TypeGraph::new()).corr {
            Vec::new()
        } else {
            s.metamodel.corr.clone()
        };
        SpecDoc {
            metamodel: MetamodelDoc {
                source: (&s.metamodel.source).into(),
                target: (&s.metamodel.target).into(),
                corr,
            },
            patterns: s.patterns.iter().map(Into::into).collect(),
        }
    }
}

impl SpecDoc {
    pub fn to_spec(&self) -> Result<Specification, IoError> {
        let mut mm = MetamodelTriple::new(
            self.metamodel.source.to_type_graph(),
            self.metamodel.target.to_type_graph(),
        );
        if !self.metamodel.corr.is_empty() {
            mm.corr = self.metamodel.corr.clone();
        }
        let mut s = Specification::new(mm);
        for p in &self.patterns {
            s.patterns.push(p.to_pattern()?);
        }
        s.validate()?;
        Ok(s)
    }
}

/// Parses and validates a specification, including the rules that `C` ids
/// are ids of `Q`, that every condition contains `Q`, and that only
/// N-patterns carry negative postconditions.
pub fn parse_spec(text: &str) -> Result<Specification, IoError> {
    serde_json::from_str::<SpecDoc>(text)?.to_spec()
}

pub fn spec_to_json(s: &Specification) -> String {
    pretty(&SpecDoc::from(s))
}

pub fn parse_model(text: &str) -> Result<Graph, IoError> {
    serde_json::from_str::<GraphDoc>(text)?.to_graph(&mut BTreeSet::new())
}

pub fn model_to_json(g: &Graph) -> String {
    pretty(&GraphDoc::from(g))
}

pub fn parse_triple(text: &str) -> Result<TripleGraph, IoError> {
    serde_json::from_str::<TripleDoc>(text)?.to_triple()
}

pub fn triple_to_json(t: &TripleGraph) -> String {
    pretty(&TripleDoc::from(t))
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents always serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Rule and deduction documents
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDoc {
    pub name: String,
    pub direction: Direction,
    pub provenance: String,
    pub lhs: TripleDoc,
    pub rhs: TripleDoc,
    pub nacs: Vec<ConditionDoc>,
    #[serde(default)]
    pub posts: Vec<ConditionDoc>,
}

impl From<&TggRule> for RuleDoc {
    fn from(r: &TggRule) -> Self {
        RuleDoc {
            name: r.name.clone(),
            direction: r.direction,
            provenance: r.provenance.clone(),
            lhs: (&r.lhs).into(),
            rhs: (&r.rhs).into(),
            nacs: r.nacs.iter().map(Into::into).collect(),
            posts: r.posts.iter().map(Into::into).collect(),
        }
    }
}

impl RuleDoc {
    pub fn to_rule(&self) -> Result<TggRule, IoError> {
        let lhs = self.lhs.to_triple()?;
        let rhs = self.rhs.to_triple()?;
        let nacs: Vec<Condition> = self
            .nacs
            .iter()
            .map(ConditionDoc::to_condition)
            .collect::<Result<_, _>>()?;
        let posts: Vec<Condition> = self
            .posts
            .iter()
            .map(ConditionDoc::to_condition)
            .collect::<Result<_, _>>()?;
        let bad = |msg: String| IoError::Semantic(format!("rule `{}`: {msg}", self.name));
        if !rhs.includes(&lhs) {
            return Err(bad("lhs is not included in rhs".into()));
        }
        if let Some(n) = nacs.iter().find(|n| !n.graph.includes(&lhs)) {
            return Err(bad(format!("NAC `{}` does not contain the lhs", n.name)));
        }
        if let Some(n) = posts.iter().find(|n| !n.graph.includes(&rhs)) {
            return Err(bad(format!("postcondition `{}` does not contain the rhs", n.name)));
        }
        Ok(TggRule {
            name: self.name.clone(),
            direction: self.direction,
            lhs,
            rhs,
            nacs,
            posts,
            provenance: self.provenance.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RulesDoc {
    pub direction: Direction,
    pub rules: Vec<RuleDoc>,
    /// Deduction log: every derivation, skip and dependency.
    #[serde(default)]
    pub provenance: Vec<String>,
}

impl From<&RuleSet> for RulesDoc {
    fn from(r: &RuleSet) -> Self {
        RulesDoc {
            direction: r.direction,
            rules: r.rules.iter().map(Into::into).collect(),
            provenance: r.deduction.log.clone(),
        }
    }
}

pub fn rules_to_json(r: &RuleSet) -> String {
    pretty(&RulesDoc::from(r))
}

pub fn parse_rules(text: &str) -> Result<Vec<TggRule>, IoError> {
    serde_json::from_str::<RulesDoc>(text)?
        .rules
        .iter()
        .map(RuleDoc::to_rule)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedDoc {
    #[serde(flatten)]
    pub pattern: PatternDoc,
    #[serde(default)]
    pub deps: Vec<ConditionDoc>,
    #[serde(default)]
    pub provenance: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeductionDoc {
    pub patterns: Vec<AnnotatedDoc>,
    pub log: Vec<String>,
}

impl From<&Deduction> for DeductionDoc {
    fn from(d: &Deduction) -> Self {
        DeductionDoc {
            patterns: d
                .patterns
                .iter()
                .map(|a| AnnotatedDoc {
                    pattern: (&a.pattern).into(),
                    deps: a
                        .deps
                        .iter()
                        .map(|d| ConditionDoc {
                            name: d.name.clone(),
                            graph: (&d.graph).into(),
                        })
                        .collect(),
                    provenance: a.provenance.clone(),
                })
                .collect(),
            log: d.log.clone(),
        }
    }
}

pub fn deduction_to_json(d: &Deduction) -> String {
    pretty(&DeductionDoc::from(d))
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchDoc {
    pub base: BTreeMap<String, String>,
    pub class: MatchClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternReportDoc {
    pub pattern: String,
    pub satisfied: bool,
    pub forward: Vec<MatchDoc>,
    pub backward: Vec<MatchDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub satisfied: bool,
    pub patterns: Vec<PatternReportDoc>,
}

fn morphism_map(m: &TripleMorphism) -> BTreeMap<String, String> {
    m.nodes
        .iter()
        .chain(&m.edges)
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect()
}

impl From<&SatisfactionReport> for ReportDoc {
    fn from(r: &SatisfactionReport) -> Self {
        let ms = |d: &crate::pattern::DirectionReport| {
            d.matches
                .iter()
                .map(|m| MatchDoc {
                    base: morphism_map(&m.base),
                    class: m.class,
                    reason: m.reason.clone(),
                })
                .collect()
        };
        ReportDoc {
            satisfied: r.satisfied(),
            patterns: r
                .patterns
                .iter()
                .map(|p| PatternReportDoc {
                    pattern: p.pattern.clone(),
                    satisfied: p.satisfied(),
                    forward: ms(&p.forward),
                    backward: ms(&p.backward),
                })
                .collect(),
        }
    }
}

pub fn report_to_json(r: &SatisfactionReport) -> String {
    pretty(&ReportDoc::from(r))
}

pub fn parse_report(text: &str) -> Result<ReportDoc, IoError> {
    Ok(serde_json::from_str(text)?)
}

/// Human-readable satisfaction report.
pub fn report_to_text(r: &SatisfactionReport) -> String {
    let mut out = String::new();
    let classes = |d: &crate::pattern::DirectionReport| {
        let v: Vec<String> = d.matches.iter().map(|m| format!("{:?}", m.class)).collect();
        format!("[{}]", v.join(", "))
    };
    for p in &r.patterns {
        out.push_str(&format!(
            "{} {}: forward {} backward {}\n",
            if p.satisfied() { "ok  " } else { "FAIL" },
            p.pattern,
            classes(&p.forward),
            classes(&p.backward)
        ));
    }
    out.push_str(if r.satisfied() { "satisfied\n" } else { "violated\n" });
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConflictDoc {
    pub positive: String,
    pub negative: String,
    pub witness: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisDoc {
    pub conflicts: Vec<ConflictDoc>,
    pub tautologies: Vec<FindingDoc>,
    pub contradictions: Vec<FindingDoc>,
    pub coverage: CoverageDoc,
    pub undecided: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindingDoc {
    pub pattern: String,
    pub form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverageDoc {
    pub covered_source_types: BTreeSet<String>,
    pub uncovered_source_types: BTreeSet<String>,
    pub covered_target_types: BTreeSet<String>,
    pub uncovered_target_types: BTreeSet<String>,
}

impl From<&Coverage> for CoverageDoc {
    fn from(c: &Coverage) -> Self {
        let join = |a: &BTreeSet<String>, b: &BTreeSet<String>| a.union(b).cloned().collect();
        CoverageDoc {
            covered_source_types: join(&c.source.covered_nodes, &c.source.covered_edges),
            uncovered_source_types: join(&c.source.uncovered_nodes, &c.source.uncovered_edges),
            covered_target_types: join(&c.target.covered_nodes, &c.target.covered_edges),
            uncovered_target_types: join(&c.target.uncovered_nodes, &c.target.uncovered_edges),
        }
    }
}

impl From<&Finding> for FindingDoc {
    fn from(f: &Finding) -> Self {
        FindingDoc {
            pattern: f.pattern.clone(),
            form: f.form.clone(),
        }
    }
}

impl From<&AnalysisReport> for AnalysisDoc {
    fn from(r: &AnalysisReport) -> Self {
        AnalysisDoc {
            conflicts: r
                .conflicts
                .iter()
                .map(|c| ConflictDoc {
                    positive: c.positive.clone(),
                    negative: c.negative.clone(),
                    witness: morphism_map(&c.witness),
                })
                .collect(),
            tautologies: r.tautologies.iter().map(Into::into).collect(),
            contradictions: r.contradictions.iter().map(Into::into).collect(),
            coverage: (&r.coverage).into(),
            undecided: r.undecided.clone(),
        }
    }
}

pub fn analysis_to_json(r: &AnalysisReport) -> String {
    pretty(&AnalysisDoc::from(r))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDoc {
    pub rule: String,
    #[serde(rename = "match")]
    pub morphism: BTreeMap<String, String>,
    pub delta: TripleDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDoc {
    pub steps: Vec<StepDoc>,
    #[serde(default)]
    pub rejected: Vec<String>,
}

impl From<&Trace> for TraceDoc {
    fn from(t: &Trace) -> Self {
        TraceDoc {
            steps: t
                .steps
                .iter()
                .map(|s| StepDoc {
                    rule: s.rule.clone(),
                    morphism: morphism_map(&s.morphism),
                    delta: (&s.delta).into(),
                })
                .collect(),
            rejected: t
                .rejected
                .iter()
                .map(|r| format!("{} rejected by postcondition {}", r.rule, r.post))
                .collect(),
        }
    }
}

pub fn trace_to_json(t: &Trace) -> String {
    pretty(&TraceDoc::from(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn spec_round_trip() {
        let s = fixtures::class2rel();
        let text = spec_to_json(&s);
        assert_eq!(parse_spec(&text).unwrap(), s);
    }

    #[test]
    fn triple_and_model_round_trip() {
        let t = fixtures::subclass_host();
        assert_eq!(parse_triple(&triple_to_json(&t)).unwrap(), t);
        let g = t.source.clone();
        assert_eq!(parse_model(&model_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn syntax_error_has_location() {
        let e = parse_spec("{\n  \"metamodel\": ").unwrap_err();
        assert!(matches!(e, IoError::Syntax { line: 2, .. }), "{e}");
    }

    #[test]
    fn s_pattern_with_postcondition_is_rejected() {
        let mut doc = SpecDoc::from(&fixtures::class2rel());
        let q = doc.patterns[0].positive.clone().unwrap();
        doc.patterns[0].neg_post.push(ConditionDoc {
            name: "x".into(),
            graph: q,
        });
        let e = parse_spec(&serde_json::to_string(&doc).unwrap()).unwrap_err();
        assert!(e.to_string().contains("only N-patterns"), "{e}");
    }

    #[test]
    fn condition_must_contain_positive_ids() {
        let mut doc = SpecDoc::from(&fixtures::class2rel());
        let c = &mut doc.patterns[0].neg_pre[0].graph;
        c.corr.clear();
        let e = parse_spec(&serde_json::to_string(&doc).unwrap()).unwrap_err();
        assert!(
            e.to_string().contains("noParent") && e.to_string().contains("C-T"),
            "{e}"
        );
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let e = parse_model(r#"{"nodes":[{"id":"x","type":"C"},{"id":"x","type":"A"}]}"#).unwrap_err();
        assert!(e.to_string().contains("duplicate id"));
    }
}
