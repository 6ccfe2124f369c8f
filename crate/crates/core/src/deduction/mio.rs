//! Maximal intersection objects of two triple graphs.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::graph::{self, Graph, GraphMorphism};
use crate::triple::{TripleGraph, TripleMorphism};

/// A span `T1 <- M -> T2` of injective morphisms. `apex` is a sub-triple of
/// `T1` (so `m1` is the inclusion); `m2` maps the apex ids into `T2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MioSpan {
    pub apex: TripleGraph,
    pub m2: TripleMorphism,
}

impl MioSpan {
    pub fn m1(&self) -> TripleMorphism {
        TripleMorphism::inclusion(&self.apex)
    }

    /// `m2(M)` as a sub-triple of `t2`.
    pub fn image(&self, t2: &TripleGraph) -> TripleGraph {
        t2.sub(&self.m2.image_ids())
    }
}

/// Partial injective map between flat encodings, closed under incidence.
type State = BTreeMap<String, String>;

struct Search<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    inc1: BTreeMap<&'a str, Vec<&'a str>>,
    seen: HashSet<Vec<(String, String)>>,
    maximal: Vec<State>,
}

impl<'a> Search<'a> {
    fn new(g1: &'a Graph, g2: &'a Graph) -> Self {
        let mut inc1: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (id, e) in &g1.edges {
            inc1.entry(e.src.as_str()).or_default().push(id);
            if e.tgt != e.src {
                inc1.entry(e.tgt.as_str()).or_default().push(id);
            }
        }
        Search {
            g1,
            g2,
            inc1,
            seen: HashSet::new(),
            maximal: Vec::new(),
        }
    }

    fn is_node1(&self, id: &str) -> bool {
        self.g1.nodes.contains_key(id)
    }

    /// Maps node `a` to `b` if consistent; returns false on conflict.
    fn bind(&self, st: &mut State, used: &mut BTreeSet<String>, a: &str, b: &str) -> bool {
        match st.get(a) {
            Some(x) => x == b,
            None => {
                if used.contains(b) || self.g1.nodes.get(a) != self.g2.nodes.get(b) {
                    return false;
                }
                st.insert(a.to_string(), b.to_string());
                used.insert(b.to_string());
                true
            }
        }
    }

    fn bind_edge(&self, st: &mut State, used: &mut BTreeSet<String>, e1: &str, e2: &str) -> bool {
        let (x, y) = (&self.g1.edges[e1], &self.g2.edges[e2]);
        if x.ty != y.ty {
            return false;
        }
        if let Some(m) = st.get(e1) {
            return m == e2;
        }
        if used.contains(e2) {
            return false;
        }
        if !self.bind(st, used, &x.src, &y.src) || !self.bind(st, used, &x.tgt, &y.tgt) {
            return false;
        }
        st.insert(e1.to_string(), e2.to_string());
        used.insert(e2.to_string());
        true
    }

    /// Mapped correspondence nodes drag their anchors along.
    fn close(&self, st: &mut State, used: &mut BTreeSet<String>) -> bool {
        loop {
            let pending: Vec<(String, String)> = st
                .iter()
                .filter(|(a, _)| self.is_node1(a) && self.g1.nodes[*a].starts_with("c/"))
                .flat_map(|(a, b)| ["cs:", "ct:"].map(|p| (format!("{p}{a}"), format!("{p}{b}"))))
                .filter(|(e1, _)| !st.contains_key(e1))
                .collect();
            if pending.is_empty() {
                return true;
            }
            for (e1, e2) in pending {
                if !self.g2.edges.contains_key(&e2) || !self.bind_edge(st, used, &e1, &e2) {
                    return false;
                }
            }
        }
    }

    fn key(st: &State) -> Vec<(String, String)> {
        st.iter().map(|(a, b)| (a.clone(), b.clone())).collect()
    }

    fn grow(&mut self, st: State) {
        if !self.seen.insert(Self::key(&st)) {
            return;
        }
        let used: BTreeSet<String> = st.values().cloned().collect();
        let mut extended = false;
        let frontier: Vec<&str> = st
            .keys()
            .filter(|k| self.is_node1(k))
            .flat_map(|n| self.inc1.get(n.as_str()).cloned().unwrap_or_default())
            .filter(|e| !st.contains_key(*e))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for e1 in frontier {
            let cands: Vec<String> = self
                .g2
                .edges
                .iter()
                .filter(|(id, e)| e.ty == self.g1.edges[e1].ty && !used.contains(*id))
                .map(|(id, _)| id.clone())
                .collect();
            for e2 in cands {
                let mut next = st.clone();
                let mut u = used.clone();
                if self.bind_edge(&mut next, &mut u, e1, &e2) && self.close(&mut next, &mut u) {
                    extended = true;
                    self.grow(next);
                }
            }
        }
        if !extended {
            self.maximal.push(st);
        }
    }
}

/// All maximal connected common sub-triples of `t1` and `t2`, as spans,
/// deduplicated up to automorphisms of `t2`, in canonical order.
pub fn mi(t1: &TripleGraph, t2: &TripleGraph) -> Vec<MioSpan> {
    let g1 = t1.flatten();
    let g2 = t2.flatten();
    let mut search = Search::new(&g1, &g2);
    for (a, ta) in &g1.nodes {
        for (b, tb) in &g2.nodes {
            if ta != tb {
                continue;
            }
            let mut st = State::new();
            let mut used = BTreeSet::new();
            if search.bind(&mut st, &mut used, a, b) && search.close(&mut st, &mut used) {
                search.grow(st);
            }
        }
    }
    let mut states = std::mem::take(&mut search.maximal);
    states.sort_by_key(|s| {
        let dom: Vec<String> = s.keys().cloned().collect();
        (dom, Search::key(s))
    });
    let mut kept: Vec<State> = Vec::new();
    for st in states {
        // A grown state can be a strict part of another maximal state only
        // if it is not maximal, so only the Aut(t2) check is needed.
        let dup = kept.iter().any(|k| {
            k.len() == st.len() && k.keys().eq(st.keys()) && {
                let mut anchor = GraphMorphism::new();
                for (a, b) in k {
                    let c = &st[a];
                    if g2.nodes.contains_key(b) {
                        anchor.nodes.insert(b.clone(), c.clone());
                    } else {
                        anchor.edges.insert(b.clone(), c.clone());
                    }
                }
                graph::isomorphic_under(&g2, &g2, &anchor)
            }
        });
        if !dup {
            kept.push(st);
        }
    }
    kept.into_iter()
        .map(|st| {
            let dom: BTreeSet<String> = st.keys().cloned().collect();
            let apex_flat = g1.subgraph(&dom);
            let mut m = GraphMorphism::new();
            for (a, b) in &st {
                if g1.nodes.contains_key(a) {
                    m.nodes.insert(a.clone(), b.clone());
                } else {
                    m.edges.insert(a.clone(), b.clone());
                }
            }
            MioSpan {
                apex: TripleGraph::from_flat(&apex_flat).expect("closed under anchors"),
                m2: TripleMorphism::from_flat(&m),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q(name: &str) -> TripleGraph {
        fixtures::class2rel().pattern(name).unwrap().positive.clone()
    }

    #[test]
    fn class_table_square_is_the_only_mio_with_attributes() {
        let spans = mi(&q("C-T"), &q("A-Co"));
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].apex, q("C-T"));
    }

    #[test]
    fn foreign_key_overlaps_collapse_to_one() {
        let spec = fixtures::class2rel();
        let s = spec.pattern("notDupF").unwrap().forbidden().unwrap().clone();
        let spans = mi(&q("A-Co2"), &s);
        assert_eq!(spans.len(), 1);
        let m = &spans[0].apex;
        assert_eq!(m.target.nodes.values().filter(|t| *t == "T").count(), 2);
        assert_eq!(m.target.nodes.values().filter(|t| *t == "F").count(), 1);
        assert!(m.source.is_empty() && m.corr.is_empty());
    }

    #[test]
    fn class_table_occurs_twice_in_reference_pattern() {
        let spans = mi(&q("C-T"), &q("A-Co2"));
        assert_eq!(spans.len(), 2);
        assert!(spans.iter().all(|s| s.apex == q("C-T")));
    }

    #[test]
    fn disjoint_types_have_no_mio() {
        let a = TripleGraph::new().with_source(Graph::new().with_node("c", "C"));
        let b = TripleGraph::new().with_target(Graph::new().with_node("t", "T"));
        assert!(mi(&a, &b).is_empty());
    }

    #[test]
    fn spans_are_valid_injective_morphisms() {
        let (a, b) = (q("A-Co"), q("A-Co2"));
        let spans = mi(&a, &b);
        assert_eq!(spans.len(), 2);
        for s in spans {
            assert!(a.includes(&s.apex));
            s.m2.validate(&s.apex, &b).unwrap();
            assert!(s.m2.is_injective());
        }
    }
}
