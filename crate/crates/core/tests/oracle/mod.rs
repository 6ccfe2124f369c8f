//! Brute-force enumeration of small typed triple graphs. Used as an oracle
//! independent of the deduction pipeline and the rule engine.

#![allow(dead_code)]

use tripat::graph::{Graph, TypeGraph};
use tripat::triple::{triple_isomorphism, MetamodelTriple, TripleGraph};

/// Assignments of node counts to `types` with total at most `max`.
fn count_vectors(types: usize, max: usize) -> Vec<Vec<usize>> {
    if types == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for n in 0..=max {
        for mut rest in count_vectors(types - 1, max - n) {
            rest.insert(0, n);
            out.push(rest);
        }
    }
    out
}

fn nodes_for(tg: &TypeGraph, counts: &[usize], prefix: &str) -> Graph {
    let mut g = Graph::new();
    for (ty, &n) in tg.node_types.iter().zip(counts) {
        for i in 1..=n {
            g.add_node(&format!("{prefix}{}{i}", ty.to_lowercase()), ty);
        }
    }
    g
}

/// Every possible edge between the nodes of `g`, as (type, src, tgt).
fn edge_slots(tg: &TypeGraph, g: &Graph) -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    for (ety, (s, t)) in &tg.edge_types {
        for (a, aty) in &g.nodes {
            for (b, bty) in &g.nodes {
                if aty == s && bty == t {
                    out.push((ety.clone(), a.clone(), b.clone()));
                }
            }
        }
    }
    out
}

/// Every possible correspondence between the two sides.
fn corr_slots(mm: &MetamodelTriple, s: &Graph, t: &Graph) -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    for ct in &mm.corr {
        for (a, aty) in &s.nodes {
            for (b, bty) in &t.nodes {
                if ct.source.as_ref().is_none_or(|x| x == aty) && ct.target.as_ref().is_none_or(|x| x == bty) {
                    out.push((ct.name.clone(), a.clone(), b.clone()));
                }
            }
        }
    }
    out
}

/// Subsets of `0..n` with at most `k` elements.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&l: &usize| l + 1);
            for i in start..n {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Parts of a triple graph: source edges, target edges and correspondences
/// are all drawn from one list of slots.
enum Slot {
    Source(String, String, String),
    Target(String, String, String),
    Corr(String, String, String),
}

fn build(s: &Graph, t: &Graph, slots: &[Slot], pick: &[usize], tag: &str) -> TripleGraph {
    let (mut s, mut t) = (s.clone(), t.clone());
    let mut corrs = Vec::new();
    for (n, &i) in pick.iter().enumerate() {
        match &slots[i] {
            Slot::Source(ty, a, b) => s.add_edge(&format!("{tag}e_{n}"), ty, a, b),
            Slot::Target(ty, a, b) => t.add_edge(&format!("{tag}e_{n}"), ty, a, b),
            Slot::Corr(ty, a, b) => corrs.push((format!("{tag}k_{n}"), ty.clone(), a.clone(), b.clone())),
        }
    }
    let mut out = TripleGraph::new().with_source(s).with_target(t);
    for (id, ty, a, b) in corrs {
        out = out.with_corr(&id, &ty, &a, &b);
    }
    out
}

/// All triple graphs typed over `mm` with at most `max` elements (nodes,
/// edges and correspondences), without parallel edges or correspondences.
/// Isomorphic copies are not removed.
pub fn triples(mm: &MetamodelTriple, max: usize) -> Vec<TripleGraph> {
    let (ns, nt) = (mm.source.node_types.len(), mm.target.node_types.len());
    let mut out = Vec::new();
    for counts in count_vectors(ns + nt, max) {
        let used: usize = counts.iter().sum();
        let s = nodes_for(&mm.source, &counts[..ns], "s");
        let t = nodes_for(&mm.target, &counts[ns..], "t");
        let mut slots: Vec<Slot> = edge_slots(&mm.source, &s)
            .into_iter()
            .map(|(a, b, c)| Slot::Source(a, b, c))
            .collect();
        slots.extend(
            edge_slots(&mm.target, &t)
                .into_iter()
                .map(|(a, b, c)| Slot::Target(a, b, c)),
        );
        slots.extend(corr_slots(mm, &s, &t).into_iter().map(|(a, b, c)| Slot::Corr(a, b, c)));
        for pick in subsets(slots.len(), max - used) {
            out.push(build(&s, &t, &slots, &pick, ""));
        }
    }
    out
}

/// All triples whose source side is exactly `source` and whose target side
/// has at most `max_nodes` nodes and `max_edges` edges.
pub fn completions(mm: &MetamodelTriple, source: &Graph, max_nodes: usize, max_edges: usize) -> Vec<TripleGraph> {
    let nt = mm.target.node_types.len();
    let mut out = Vec::new();
    for counts in count_vectors(nt, max_nodes) {
        let t = nodes_for(&mm.target, &counts, "t");
        let edges: Vec<Slot> = edge_slots(&mm.target, &t)
            .into_iter()
            .map(|(a, b, c)| Slot::Target(a, b, c))
            .collect();
        let corrs: Vec<Slot> = corr_slots(mm, source, &t)
            .into_iter()
            .map(|(a, b, c)| Slot::Corr(a, b, c))
            .collect();
        let ne = edges.len();
        let slots: Vec<Slot> = edges.into_iter().chain(corrs).collect();
        for e in subsets(ne, max_edges) {
            for c in subsets(slots.len() - ne, slots.len() - ne) {
                let pick: Vec<usize> = e.iter().copied().chain(c.iter().map(|i| i + ne)).collect();
                out.push(build(source, &t, &slots, &pick, "t"));
            }
        }
    }
    out
}

/// Representatives of the isomorphism classes of `ts`.
pub fn up_to_iso(ts: Vec<TripleGraph>) -> Vec<TripleGraph> {
    let mut reps: Vec<TripleGraph> = Vec::new();
    for t in ts {
        if !reps
            .iter()
            .any(|r| r.size() == t.size() && triple_isomorphism(r, &t).is_some())
        {
            reps.push(t);
        }
    }
    reps
}

/// Source models of at most `max` elements typed over `tg`.
pub fn graphs(tg: &TypeGraph, max: usize) -> Vec<Graph> {
    let mm = MetamodelTriple::new(tg.clone(), TypeGraph::new());
    triples(&mm, max).into_iter().map(|t| t.source).collect()
}
