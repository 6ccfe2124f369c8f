//! Deduction and annotation rules that enrich a specification with derived
//! patterns and dependencies before rule generation.

mod completion;
mod mio;
mod pipeline;

use std::collections::BTreeSet;

use thiserror::Error;

pub use completion::completion;
pub use mio::{mi, MioSpan};
pub use pipeline::{run_deduction_pipeline, Deduction, PipelineOptions};

use crate::graph::{self, GraphMorphism};
use crate::pattern::{Condition, Pattern, PatternError, PatternKind, Specification};
use crate::triple::{
    find_triple_monomorphisms, first_triple_monomorphism, glue_subobjects, triple_extends, triple_isomorphic_under,
    triple_pushout, TripleError, TripleGraph, TripleMorphism,
};

#[derive(Debug, Error)]
pub enum DeductionError {
    #[error("{op} expects {expected} patterns, got `{pattern}`")]
    WrongKind {
        op: &'static str,
        expected: &'static str,
        pattern: String,
    },
    #[error("span apex is empty")]
    EmptyApex,
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// A dependency `D_k -> Q`, stored as a sub-triple of the positive graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dep {
    pub name: String,
    pub graph: TripleGraph,
}

/// A pattern together with its dependencies and derivation history.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedPattern {
    pub pattern: Pattern,
    pub deps: Vec<Dep>,
    /// Names of the patterns this one was derived from.
    pub provenance: Vec<String>,
    /// Morphisms from each parent's positive graph into this one.
    pub legs: Vec<(String, TripleMorphism)>,
}

impl AnnotatedPattern {
    pub fn new(pattern: Pattern) -> Self {
        AnnotatedPattern {
            pattern,
            deps: Vec::new(),
            provenance: Vec::new(),
            legs: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.pattern.name
    }

    /// Adds a dependency unless the same sub-triple is already recorded.
    pub fn add_dep(&mut self, name: &str, graph: TripleGraph) -> bool {
        debug_assert!(self.pattern.positive.includes(&graph));
        if self.deps.iter().any(|d| d.graph == graph) {
            return false;
        }
        self.deps.push(Dep {
            name: name.to_string(),
            graph,
        });
        true
    }
}

/// A derived pattern with the morphisms from its parents' positive graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derived {
    pub pattern: Pattern,
    pub legs: Vec<(String, TripleMorphism)>,
}

/// `C +_Q Q'` for a condition `Q ⊆ C` along `embed: Q -> Q'`, using the ids
/// of `Q'` for the shared part.
pub fn transfer_condition(
    q: &TripleGraph,
    q2: &TripleGraph,
    embed: &TripleMorphism,
    cond: &TripleGraph,
) -> Result<TripleGraph, TripleError> {
    Ok(triple_pushout(q, q2, embed, cond, &TripleMorphism::inclusion(q))?.object)
}

/// Whether two extensions of `q` are isomorphic by an iso that is the
/// identity on `q`.
pub fn same_extension(q: &TripleGraph, a: &TripleGraph, b: &TripleGraph) -> bool {
    triple_isomorphic_under(a, b, &TripleMorphism::inclusion(q))
}

/// Drops conditions isomorphic (over `q`) to an earlier one.
pub fn dedup_conditions(q: &TripleGraph, conds: Vec<Condition>) -> Vec<Condition> {
    let mut kept: Vec<Condition> = Vec::new();
    for c in conds {
        if !kept.iter().any(|k| same_extension(q, &k.graph, &c.graph)) {
            kept.push(c);
        }
    }
    kept
}

fn unique_name(taken: &[Condition], base: &str) -> String {
    if !taken.iter().any(|c| c.name == base) {
        return base.to_string();
    }
    (2..)
        .map(|k| format!("{base}[{k}]"))
        .find(|n| !taken.iter().any(|c| &c.name == n))
        .unwrap()
}

fn conditions_match(a: &[Condition], b: &[Condition], iso: &TripleMorphism, q: &TripleGraph) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for c in a {
        let anchor = restrict_to(iso, q);
        let hit = b.iter().enumerate().position(|(j, d)| {
            !used[j] && c.graph.size() == d.graph.size() && triple_extends(&c.graph, &d.graph, &anchor)
        });
        match hit {
            Some(j) => used[j] = true,
            None => return false,
        }
    }
    true
}

fn restrict_to(m: &TripleMorphism, t: &TripleGraph) -> TripleMorphism {
    let ids = t.ids();
    TripleMorphism {
        nodes: m
            .nodes
            .iter()
            .filter(|(k, _)| ids.contains(*k))
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect(),
        edges: m
            .edges
            .iter()
            .filter(|(k, _)| ids.contains(*k))
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect(),
    }
}

/// Pattern equivalence up to iso: an iso of positive graphs carrying the
/// precondition onto the precondition, under which the negative conditions
/// correspond one to one. Names are ignored.
pub fn equivalent(p: &Pattern, r: &Pattern) -> bool {
    if p.positive.size() != r.positive.size()
        || p.pos_pre.size() != r.pos_pre.size()
        || p.neg_pre.len() != r.neg_pre.len()
        || p.neg_post.len() != r.neg_post.len()
        || p.kind == PatternKind::N && r.kind != PatternKind::N
    {
        return false;
    }
    if p.kind == PatternKind::N {
        return p
            .forbidden()
            .zip(r.forbidden())
            .is_some_and(|(a, b)| crate::triple::triple_isomorphism(a, b).is_some());
    }
    let isos = find_triple_monomorphisms(&p.positive, &r.positive, &TripleMorphism::new()).unwrap_or_default();
    isos.iter().any(|iso| {
        let pre: BTreeSet<String> = p.pos_pre.ids().iter().filter_map(|x| iso.get(x).cloned()).collect();
        pre == r.pos_pre.ids()
            && conditions_match(&p.neg_pre, &r.neg_pre, iso, &p.positive)
            && conditions_match(&p.neg_post, &r.neg_post, iso, &p.positive)
    })
}

/// `←P(Q) ⇒ P(Q)`: the precondition is the whole positive graph.
pub fn is_tautology(p: &Pattern) -> bool {
    p.kind != PatternKind::N && p.pos_pre.size() == p.positive.size()
}

// ---------------------------------------------------------------------------
// PW
// ---------------------------------------------------------------------------

/// Transfers negative preconditions of each S-pattern to every S-pattern
/// whose positive graph contains it, until nothing changes. Returns the new
/// specification and a log of the transfers.
pub fn pw_logged(s: &Specification) -> (Specification, Vec<String>) {
    let mut out = s.clone();
    let mut log = Vec::new();
    let simple: Vec<usize> = (0..out.patterns.len())
        .filter(|&i| out.patterns[i].kind == PatternKind::S)
        .collect();
    loop {
        let mut changed = false;
        for &i in &simple {
            for &j in &simple {
                if i == j || out.patterns[i].neg_pre.is_empty() {
                    continue;
                }
                let (q1, q2) = (out.patterns[i].positive.clone(), out.patterns[j].positive.clone());
                let embeds = find_triple_monomorphisms(&q1, &q2, &TripleMorphism::new()).unwrap_or_default();
                for e in embeds {
                    for c in out.patterns[i].neg_pre.clone() {
                        let subsumed = out.patterns[j]
                            .neg_pre
                            .iter()
                            .any(|d| triple_extends(&c.graph, &d.graph, &e));
                        if subsumed {
                            continue;
                        }
                        let g = transfer_condition(&q1, &q2, &e, &c.graph).expect("injective legs always glue");
                        let name = unique_name(&out.patterns[j].neg_pre, &c.name);
                        log.push(format!(
                            "PW: {}.{} transferred to {} as {}",
                            out.patterns[i].name, c.name, out.patterns[j].name, name
                        ));
                        out.patterns[j].neg_pre.push(Condition::new(&name, g));
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return (out, log);
        }
    }
}

pub fn pw(s: &Specification) -> Specification {
    pw_logged(s).0
}

// ---------------------------------------------------------------------------
// S- and C-deduction
// ---------------------------------------------------------------------------

/// Glues two patterns along a span of their positive graphs. The
/// precondition is the union of the images of both preconditions and of
/// the apex; for S-patterns this is the apex itself.
pub fn c_deduce(p1: &Pattern, p2: &Pattern, span: &MioSpan) -> Result<Derived, DeductionError> {
    if span.apex.is_empty() {
        return Err(DeductionError::EmptyApex);
    }
    for p in [p1, p2] {
        if p.kind == PatternKind::N {
            return Err(DeductionError::WrongKind {
                op: "C-deduction",
                expected: "positive",
                pattern: p.name.clone(),
            });
        }
    }
    let (q1, q2) = (&p1.positive, &p2.positive);
    let po = triple_pushout(&span.apex, q1, &span.m1(), q2, &span.m2)?;
    let q = po.object;
    let (j1, j2) = (po.from_left, po.from_right);
    let mut pre = span.apex.ids();
    pre.extend(p1.pos_pre.ids());
    pre.extend(p2.pos_pre.ids().iter().filter_map(|x| j2.get(x).cloned()));
    let pos_pre = q.sub(&pre);
    let mut neg_pre = Vec::new();
    for (p, j) in [(p1, &j1), (p2, &j2)] {
        for c in &p.neg_pre {
            let g = transfer_condition(&p.positive, &q, j, &c.graph)?;
            let name = unique_name(&neg_pre, &c.name);
            neg_pre.push(Condition::new(&name, g));
        }
    }
    let neg_pre = dedup_conditions(&q, neg_pre);
    Ok(Derived {
        pattern: Pattern {
            name: format!("{}.{}", p1.name, p2.name),
            kind: PatternKind::C,
            pos_pre,
            positive: q,
            neg_pre,
            neg_post: Vec::new(),
        },
        legs: vec![(p1.name.clone(), j1), (p2.name.clone(), j2)],
    })
}

pub fn s_deduce(p1: &Pattern, p2: &Pattern, span: &MioSpan) -> Result<Derived, DeductionError> {
    for p in [p1, p2] {
        if p.kind != PatternKind::S {
            return Err(DeductionError::WrongKind {
                op: "S-deduction",
                expected: "S",
                pattern: p.name.clone(),
            });
        }
    }
    c_deduce(p1, p2, span)
}

/// Annotates both patterns with every MIO of their positive graphs and
/// returns them followed by one derived pattern per MIO.
pub fn s_annotate(a1: &AnnotatedPattern, a2: &AnnotatedPattern) -> Result<Vec<AnnotatedPattern>, DeductionError> {
    let (mut b1, mut b2) = (a1.clone(), a2.clone());
    let same = a1.name() == a2.name();
    let spans = mi(&a1.pattern.positive, &a2.pattern.positive);
    let mut derived = Vec::new();
    for (k, span) in spans.iter().enumerate() {
        let mut d = c_deduce(&a1.pattern, &a2.pattern, span)?;
        if spans.len() > 1 {
            d.pattern.name = format!("{}[{}]", d.pattern.name, k + 1);
        }
        b1.add_dep(&d.pattern.name, span.apex.clone());
        if same {
            b1.add_dep(&d.pattern.name, span.image(&a2.pattern.positive));
        } else {
            b2.add_dep(&d.pattern.name, span.image(&a2.pattern.positive));
        }
        derived.push(AnnotatedPattern {
            provenance: d.legs.iter().map(|(n, _)| n.clone()).collect(),
            legs: d.legs,
            pattern: d.pattern,
            deps: Vec::new(),
        });
    }
    let mut out = vec![b1];
    if !same {
        out.push(b2);
    }
    out.extend(derived);
    Ok(out)
}

// ---------------------------------------------------------------------------
// N-deduction
// ---------------------------------------------------------------------------

/// Adds one negative postcondition `Q +_M C_N` per MIO of `Q` and the
/// forbidden graph, up to isomorphism over `Q`.
pub fn n_deduce(p: &Pattern, np: &Pattern) -> Result<Pattern, DeductionError> {
    let cn = np.forbidden().ok_or_else(|| DeductionError::WrongKind {
        op: "N-deduction",
        expected: "N",
        pattern: np.name.clone(),
    })?;
    let mut out = p.clone();
    for span in mi(&p.positive, cn) {
        let g = triple_pushout(&span.apex, &p.positive, &span.m1(), cn, &span.m2)?.object;
        if out.neg_post.iter().any(|c| same_extension(&p.positive, &c.graph, &g)) {
            continue;
        }
        let name = unique_name(&out.neg_post, &np.name);
        out.neg_post.push(Condition::new(&name, g));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// NP- and CNP-deduction
// ---------------------------------------------------------------------------

/// `S = S1 ∪ S2` with `S1 ≅ S2`, `S1 ≠ S2`, and `S1` the image of a MIO of
/// `Q` and `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub span: MioSpan,
    pub s1: TripleGraph,
    pub s2: TripleGraph,
    /// Completion of the MIO inside `Q`.
    pub completion: TripleGraph,
}

impl Decomposition {
    pub fn overlap(&self) -> TripleGraph {
        let ids: BTreeSet<String> = self.s1.ids().intersection(&self.s2.ids()).cloned().collect();
        self.s1.sub(&ids)
    }
}

/// All decompositions of `s` relative to `q`, in canonical order.
pub fn decompositions(q: &TripleGraph, s: &TripleGraph) -> Vec<Decomposition> {
    let sf = s.flatten();
    let mut out = Vec::new();
    for span in mi(q, s) {
        let s1 = span.image(s);
        let ms = graph::find_monomorphisms(&s1.flatten(), &sf, &GraphMorphism::new()).unwrap_or_default();
        let mut seen = BTreeSet::new();
        for m in ms {
            let s2 = s.sub(&TripleMorphism::from_flat(&m).image_ids());
            if s2 == s1 || !seen.insert(s2.ids()) {
                continue;
            }
            let all: BTreeSet<String> = s1.ids().union(&s2.ids()).cloned().collect();
            if all != s.ids() {
                continue;
            }
            out.push(Decomposition {
                completion: completion(&span.apex.ids(), q),
                span: span.clone(),
                s1: s1.clone(),
                s2,
            });
        }
    }
    out
}

/// Derives a pattern that reuses the completion of a decomposition half.
/// The precondition is `C` glued with the completion over their overlap.
pub fn cnp_deduce(p: &Pattern, np: &Pattern) -> Result<Option<(Derived, Decomposition)>, DeductionError> {
    let s = np.forbidden().ok_or_else(|| DeductionError::WrongKind {
        op: "NP-deduction",
        expected: "N",
        pattern: np.name.clone(),
    })?;
    if p.kind == PatternKind::N {
        return Err(DeductionError::WrongKind {
            op: "NP-deduction",
            expected: "positive",
            pattern: p.name.clone(),
        });
    }
    let Some(dec) = decompositions(&p.positive, s).into_iter().next() else {
        return Ok(None);
    };
    let pos_pre = glue_subobjects(&p.positive, &p.pos_pre, &dec.completion)?;
    let derived = Derived {
        pattern: Pattern {
            name: format!("{}.{}", p.name, np.name),
            kind: PatternKind::C,
            pos_pre,
            positive: p.positive.clone(),
            neg_pre: p.neg_pre.clone(),
            neg_post: p.neg_post.clone(),
        },
        legs: vec![(p.name.clone(), TripleMorphism::inclusion(&p.positive))],
    };
    Ok(Some((derived, dec)))
}

/// NP-deduction for patterns without a positive precondition.
pub fn np_deduce(p: &Pattern, np: &Pattern) -> Result<Option<(Derived, Decomposition)>, DeductionError> {
    if !p.pos_pre.is_empty() {
        return Err(DeductionError::WrongKind {
            op: "NP-deduction",
            expected: "S",
            pattern: p.name.clone(),
        });
    }
    cnp_deduce(p, np)
}

/// Adds the derived pattern's precondition as a dependency of `a` and
/// returns `a` followed by the derived pattern, if any.
pub fn np_annotate(a: &AnnotatedPattern, an: &AnnotatedPattern) -> Result<Vec<AnnotatedPattern>, DeductionError> {
    let mut a2 = a.clone();
    let Some((d, _)) = cnp_deduce(&a.pattern, &an.pattern)? else {
        return Ok(vec![a2]);
    };
    a2.add_dep(&d.pattern.name, d.pattern.pos_pre.clone());
    let derived = AnnotatedPattern {
        provenance: vec![a.name().to_string(), an.name().to_string()],
        legs: d.legs,
        pattern: d.pattern,
        deps: Vec::new(),
    };
    Ok(vec![a2, derived])
}

/// Whether a dependency is already provided by a precondition: some
/// injective morphism `D -> C` exists.
pub fn dep_within(dep: &TripleGraph, pre: &TripleGraph) -> bool {
    dep.size() <= pre.size() && first_triple_monomorphism(dep, pre, &TripleMorphism::new()).is_some()
}
