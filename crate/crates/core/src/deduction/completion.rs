use std::collections::BTreeSet;

use crate::triple::TripleGraph;

/// The least sub-triple `G` of `t` containing the ids `m` that is closed
/// under related partners, unrelated nodes, induced edges, and the
/// correspondences linking included pairs.
pub fn completion(m: &BTreeSet<String>, t: &TripleGraph) -> TripleGraph {
    let mut nodes: BTreeSet<String> = m
        .iter()
        .filter(|id| t.source.nodes.contains_key(*id) || t.target.nodes.contains_key(*id))
        .cloned()
        .collect();
    // Anchors of correspondences already in `m`.
    for id in m {
        if let Some(c) = t.corr.get(id) {
            nodes.insert(c.source.clone());
            nodes.insert(c.target.clone());
        }
    }
    for id in t.source.nodes.keys().chain(t.target.nodes.keys()) {
        if !t.is_related(id) {
            nodes.insert(id.clone());
        }
    }
    loop {
        let mut grew = false;
        for c in t.corr.values() {
            let (s, g) = (nodes.contains(&c.source), nodes.contains(&c.target));
            if s != g {
                nodes.insert(c.source.clone());
                nodes.insert(c.target.clone());
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let mut ids = nodes.clone();
    for (id, c) in &t.corr {
        if nodes.contains(&c.source) && nodes.contains(&c.target) {
            ids.insert(id.clone());
        }
    }
    for g in [&t.source, &t.target] {
        for (id, e) in &g.edges {
            if nodes.contains(&e.src) && nodes.contains(&e.tgt) {
                ids.insert(id.clone());
            }
        }
    }
    t.sub(&ids)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn full_graph_is_closed() {
        let q = fixtures::class2rel().pattern("A-Co2").unwrap().positive.clone();
        assert_eq!(completion(&q.ids(), &q), q);
    }

    #[test]
    fn one_table_drags_its_class_and_unrelated_context() {
        let q = fixtures::class2rel().pattern("A-Co2").unwrap().positive.clone();
        let g = completion(&BTreeSet::from(["t1".to_string()]), &q);
        let want: BTreeSet<String> = ["t1", "c1", "k1", "r", "f", "rs", "e1"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(g.ids(), want);
    }

    #[test]
    fn completion_is_least() {
        let q = fixtures::class2rel().pattern("A-Co2").unwrap().positive.clone();
        let m = BTreeSet::from(["t1".to_string(), "t2".to_string(), "f".to_string()]);
        let g = completion(&m, &q);
        for id in g.ids() {
            if m.contains(&id) || !g.source.nodes.contains_key(&id) && !g.target.nodes.contains_key(&id) {
                continue;
            }
            let mut smaller = g.ids();
            smaller.remove(&id);
            let shrunk = q.sub(&smaller);
            assert_ne!(completion(&shrunk.ids(), &q), shrunk, "removing {id} keeps closure");
        }
    }
}
