//! Compilation of annotated patterns into operational, non-deleting rules.

use thiserror::Error;

use crate::deduction::{
    run_deduction_pipeline, same_extension, AnnotatedPattern, Deduction, DeductionError, PipelineOptions,
};
use crate::pattern::{directed_base, Condition, Specification};
use crate::triple::{glue_subobjects, Direction, TripleGraph};

#[derive(Debug, Error)]
pub enum RuleError {
    #[error("pattern `{0}` has an empty positive graph")]
    EmptyPositive(String),
    #[error(transparent)]
    Deduction(#[from] DeductionError),
}

/// A non-deleting rule `L ⊆ R`. NACs contain `L` and posts contain `R`, all
/// by id inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TggRule {
    pub name: String,
    pub direction: Direction,
    pub lhs: TripleGraph,
    pub rhs: TripleGraph,
    pub nacs: Vec<Condition>,
    pub posts: Vec<Condition>,
    /// The pattern the rule was derived from.
    pub provenance: String,
}

pub const RHS_NAC: &str = "RHS";

impl TggRule {
    /// Elements of `R` not in `L`.
    pub fn created(&self) -> TripleGraph {
        let l = self.lhs.ids();
        let mut out = self.rhs.clone();
        out.source.nodes.retain(|k, _| !l.contains(k));
        out.source.edges.retain(|k, _| !l.contains(k));
        out.target.nodes.retain(|k, _| !l.contains(k));
        out.target.edges.retain(|k, _| !l.contains(k));
        out.corr.retain(|k, _| !l.contains(k));
        out
    }

    pub fn rhs_nac(&self) -> Option<&Condition> {
        self.nacs.iter().find(|n| n.name == RHS_NAC)
    }
}

/// `S = L +_B D` with `B = L ∩ D`, as a sub-triple of `R`.
pub fn left_extension(lhs: &TripleGraph, rhs: &TripleGraph, dep: &TripleGraph) -> TripleGraph {
    glue_subobjects(rhs, lhs, dep).expect("both are sub-triples of the right-hand side")
}

pub fn rule_name(pattern: &str, dir: Direction) -> String {
    let tag = match dir {
        Direction::Forward => "fwd",
        Direction::Backward => "bwd",
    };
    format!("{tag}:{pattern}")
}

pub fn derive_rule(a: &AnnotatedPattern, dir: Direction) -> Result<TggRule, RuleError> {
    let p = &a.pattern;
    if p.positive.is_empty() {
        return Err(RuleError::EmptyPositive(p.name.clone()));
    }
    let db = directed_base(p, dir);
    let lhs = db.base;
    let rhs = p.positive.clone();
    let mut nacs = vec![Condition::new(RHS_NAC, rhs.clone())];
    let mut push = |c: Condition| {
        if !nacs.iter().any(|n| same_extension(&lhs, &n.graph, &c.graph)) {
            nacs.push(c);
        }
    };
    for n in db.neg_pre.into_iter().filter(|n| !n.excluded) {
        push(Condition::new(&n.name, n.graph));
    }
    for d in &a.deps {
        push(Condition::new(
            &format!("dep:{}", d.name),
            left_extension(&lhs, &rhs, &d.graph),
        ));
    }
    Ok(TggRule {
        name: rule_name(&p.name, dir),
        direction: dir,
        lhs,
        rhs,
        nacs,
        posts: p.neg_post.clone(),
        provenance: p.name.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    pub direction: Direction,
    pub rules: Vec<TggRule>,
    pub deduction: Deduction,
}

/// Runs the deduction pipeline and derives one rule per causal pattern, in
/// pattern creation order.
pub fn generate_rules(s: &Specification, dir: Direction, opts: PipelineOptions) -> Result<RuleSet, RuleError> {
    let deduction = run_deduction_pipeline(s, opts)?;
    let rules = deduction
        .patterns
        .iter()
        .map(|a| derive_rule(a, dir))
        .collect::<Result<_, _>>()?;
    Ok(RuleSet {
        direction: dir,
        rules,
        deduction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::triple::triple_isomorphism;

    fn rules(dir: Direction) -> RuleSet {
        generate_rules(&fixtures::class2rel(), dir, PipelineOptions::default()).unwrap()
    }

    fn rule<'a>(rs: &'a RuleSet, p: &str) -> &'a TggRule {
        rs.rules.iter().find(|r| r.provenance == p).unwrap()
    }

    #[test]
    fn class2rel_has_ten_rules_each_way() {
        assert_eq!(rules(Direction::Forward).rules.len(), 10);
        assert_eq!(rules(Direction::Backward).rules.len(), 10);
    }

    #[test]
    fn class_table_forward_rule() {
        let rs = rules(Direction::Forward);
        let r = rule(&rs, "C-T");
        assert_eq!(r.lhs.size(), 1);
        let names: Vec<&str> = r.nacs.iter().map(|n| n.name.as_str()).collect();
        assert_eq!(names[0], RHS_NAC);
        assert!(names.contains(&"noParent"));
        assert!(r.nacs.iter().all(|n| n.graph.includes(&r.lhs)));
    }

    #[test]
    fn class_table_backward_rule_has_only_rhs_nac_and_deps() {
        let rs = rules(Direction::Backward);
        let r = rule(&rs, "C-T");
        assert!(!r.nacs.iter().any(|n| n.name == "noParent"));
        assert_eq!(r.lhs.target.nodes.len(), 1);
    }

    #[test]
    fn attribute_rule_forbids_existing_table() {
        let rs = rules(Direction::Forward);
        let r = rule(&rs, "A-Co");
        let dep = r.nacs.iter().find(|n| n.name == "dep:C-T.A-Co").unwrap();
        // L = class with attribute; the NAC adds the class's table.
        assert_eq!(dep.graph.target.nodes.len(), 1);
        assert_eq!(dep.graph.corr.len(), 1);
        assert!(r.nacs.iter().any(|n| n.name.starts_with("noParent")));
    }

    #[test]
    fn left_extension_corner_cases() {
        let rs = rules(Direction::Forward);
        let r = rule(&rs, "A-Co");
        assert_eq!(left_extension(&r.lhs, &r.rhs, &r.lhs), r.lhs);
        let t = r.rhs.sub(&["t".to_string()].into());
        let s = left_extension(&r.lhs, &r.rhs, &t);
        assert_eq!(s.size(), r.lhs.size() + 1);
    }

    #[test]
    fn forward_rules_never_create_source_elements() {
        for r in rules(Direction::Forward).rules {
            assert!(r.created().source.is_empty(), "{}", r.name);
            assert!(r
                .rhs_nac()
                .is_some_and(|n| triple_isomorphism(&n.graph, &r.rhs).is_some()));
        }
    }
}
