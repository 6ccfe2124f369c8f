//! Typed graphs, injective morphisms and the binary limit/colimit
//! constructions used by everything else in the crate.
//!
//! Graphs are plain values: nodes carry a type name, edges carry a type name
//! and their endpoints. Ids are strings and must be unique within a graph
//! (node and edge ids share one namespace).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{edge}` references missing node `{node}`")]
    DanglingEdge { edge: String, node: String },
    #[error("unknown node type `{0}`")]
    UnknownNodeType(String),
    #[error("unknown edge type `{0}`")]
    UnknownEdgeType(String),
    #[error("edge `{edge}` of type `{ty}` connects nodes of the wrong types")]
    EdgeTyping { edge: String, ty: String },
    #[error("type graph mismatch: {0}")]
    TypeMismatch(String),
    #[error("inconsistent anchor: {0}")]
    InconsistentAnchor(String),
    #[error("morphism is not valid: {0}")]
    InvalidMorphism(String),
    #[error("apex mismatch: {0}")]
    ApexMismatch(String),
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
}

/// Node and edge type declarations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeGraph {
    pub node_types: BTreeSet<String>,
    /// edge type name -> (source node type, target node type)
    pub edge_types: BTreeMap<String, (String, String)>,
}

impl TypeGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_node(mut self, ty: &str) -> Self {
        self.node_types.insert(ty.to_string());
        self
    }

    pub fn with_edge(mut self, ty: &str, src: &str, tgt: &str) -> Self {
        self.edge_types
            .insert(ty.to_string(), (src.to_string(), tgt.to_string()));
        self
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        for (name, (s, t)) in &self.edge_types {
            for end in [s, t] {
                if !self.node_types.contains(end) {
                    return Err(GraphError::TypeMismatch(format!(
                        "edge type `{name}` refers to undeclared node type `{end}`"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    #[serde(rename = "type")]
    pub ty: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    /// node id -> node type
    pub nodes: BTreeMap<String, String>,
    /// edge id -> edge
    pub edges: BTreeMap<String, Edge>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_node(mut self, id: &str, ty: &str) -> Self {
        self.add_node(id, ty);
        self
    }

    pub fn with_edge(mut self, id: &str, ty: &str, src: &str, tgt: &str) -> Self {
        self.add_edge(id, ty, src, tgt);
        self
    }

    pub fn add_node(&mut self, id: &str, ty: &str) {
        self.nodes.insert(id.to_string(), ty.to_string());
    }

    pub fn add_edge(&mut self, id: &str, ty: &str, src: &str, tgt: &str) {
        self.edges.insert(
            id.to_string(),
            Edge {
                ty: ty.to_string(),
                src: src.to_string(),
                tgt: tgt.to_string(),
            },
        );
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.edges.is_empty()
    }

    /// Number of nodes plus edges.
    pub fn size(&self) -> usize {
        self.nodes.len() + self.edges.len()
    }

    pub fn contains_id(&self, id: &str) -> bool {
        self.nodes.contains_key(id) || self.edges.contains_key(id)
    }

    /// Structural well-formedness: unique ids, no dangling edges.
    pub fn check_structure(&self) -> Result<(), GraphError> {
        for (id, e) in &self.edges {
            if self.nodes.contains_key(id) {
                return Err(GraphError::DuplicateId(id.clone()));
            }
            for end in [&e.src, &e.tgt] {
                if !self.nodes.contains_key(end) {
                    return Err(GraphError::DanglingEdge {
                        edge: id.clone(),
                        node: end.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Structure plus typing against `types`.
    pub fn validate(&self, types: &TypeGraph) -> Result<(), GraphError> {
        self.check_structure()?;
        for ty in self.nodes.values() {
            if !types.node_types.contains(ty) {
                return Err(GraphError::UnknownNodeType(ty.clone()));
            }
        }
        for (id, e) in &self.edges {
            let (s, t) = types
                .edge_types
                .get(&e.ty)
                .ok_or_else(|| GraphError::UnknownEdgeType(e.ty.clone()))?;
            if &self.nodes[&e.src] != s || &self.nodes[&e.tgt] != t {
                return Err(GraphError::EdgeTyping {
                    edge: id.clone(),
                    ty: e.ty.clone(),
                });
            }
        }
        Ok(())
    }

    /// The subgraph on the given ids. Edges whose endpoints are not kept are
    /// dropped even if listed.
    pub fn subgraph(&self, ids: &BTreeSet<String>) -> Graph {
        let nodes: BTreeMap<_, _> = self
            .nodes
            .iter()
            .filter(|(id, _)| ids.contains(*id))
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|(id, e)| ids.contains(*id) && nodes.contains_key(&e.src) && nodes.contains_key(&e.tgt))
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect();
        Graph { nodes, edges }
    }

    pub fn ids(&self) -> BTreeSet<String> {
        self.nodes.keys().chain(self.edges.keys()).cloned().collect()
    }

    /// Rename every element through `f`. `f` must be injective.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Graph {
        Graph {
            nodes: self.nodes.iter().map(|(id, t)| (f(id), t.clone())).collect(),
            edges: self
                .edges
                .iter()
                .map(|(id, e)| {
                    (
                        f(id),
                        Edge {
                            ty: e.ty.clone(),
                            src: f(&e.src),
                            tgt: f(&e.tgt),
                        },
                    )
                })
                .collect(),
        }
    }

    /// Image of `self` under `m`, using the codomain's ids.
    pub fn image_ids(&self, m: &GraphMorphism) -> BTreeSet<String> {
        self.ids().iter().filter_map(|id| m.get(id).cloned()).collect()
    }
}

/// A graph morphism given by its node and edge maps.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphMorphism {
    pub nodes: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
}

impl GraphMorphism {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity(g: &Graph) -> Self {
        GraphMorphism {
            nodes: g.nodes.keys().map(|k| (k.clone(), k.clone())).collect(),
            edges: g.edges.keys().map(|k| (k.clone(), k.clone())).collect(),
        }
    }

    /// Inclusion of `sub` into a graph that uses the same ids.
    pub fn inclusion(sub: &Graph) -> Self {
        Self::identity(sub)
    }

    pub fn get(&self, id: &str) -> Option<&String> {
        self.nodes.get(id).or_else(|| self.edges.get(id))
    }

    pub fn compose(&self, then: &GraphMorphism) -> GraphMorphism {
        GraphMorphism {
            nodes: self
                .nodes
                .iter()
                .filter_map(|(a, b)| then.nodes.get(b).map(|c| (a.clone(), c.clone())))
                .collect(),
            edges: self
                .edges
                .iter()
                .filter_map(|(a, b)| then.edges.get(b).map(|c| (a.clone(), c.clone())))
                .collect(),
        }
    }

    pub fn inverse(&self) -> GraphMorphism {
        GraphMorphism {
            nodes: self.nodes.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
            edges: self.edges.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let n: BTreeSet<_> = self.nodes.values().collect();
        let e: BTreeSet<_> = self.edges.values().collect();
        n.len() == self.nodes.len() && e.len() == self.edges.len()
    }

    /// Checks totality, typing and structure preservation.
    pub fn validate(&self, dom: &Graph, cod: &Graph) -> Result<(), GraphError> {
        let bad = |m: String| Err(GraphError::InvalidMorphism(m));
        if self.nodes.len() != dom.nodes.len() || self.edges.len() != dom.edges.len() {
            return bad("not total on its domain".into());
        }
        for (id, ty) in &dom.nodes {
            match self.nodes.get(id).and_then(|x| cod.nodes.get(x)) {
                Some(t) if t == ty => {}
                _ => return bad(format!("node `{id}` is unmapped or retyped")),
            }
        }
        for (id, e) in &dom.edges {
            let Some(img) = self.edges.get(id).and_then(|x| cod.edges.get(x)) else {
                return bad(format!("edge `{id}` is unmapped"));
            };
            if img.ty != e.ty || self.nodes.get(&e.src) != Some(&img.src) || self.nodes.get(&e.tgt) != Some(&img.tgt) {
                return bad(format!("edge `{id}` is not preserved"));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Matching
// ---------------------------------------------------------------------------

/// Host graph indexed for matching. Nodes are ordered by (type, id) so the
/// search explores candidates in canonical order.
struct Indexed<'a> {
    ids: Vec<&'a str>,
    tys: Vec<&'a str>,
    pos: HashMap<&'a str, usize>,
    /// (src, tgt, type) -> edge ids sorted
    between: HashMap<(usize, usize, &'a str), Vec<&'a str>>,
    out: Vec<Vec<(usize, &'a str)>>,
    inc: Vec<Vec<(usize, &'a str)>>,
}

impl<'a> Indexed<'a> {
    fn new(g: &'a Graph) -> Self {
        let mut order: Vec<(&str, &str)> = g.nodes.iter().map(|(i, t)| (t.as_str(), i.as_str())).collect();
        order.sort();
        let ids: Vec<&str> = order.iter().map(|x| x.1).collect();
        let tys: Vec<&str> = order.iter().map(|x| x.0).collect();
        let pos: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
        let mut between: HashMap<(usize, usize, &str), Vec<&str>> = HashMap::new();
        let mut out = vec![Vec::new(); ids.len()];
        let mut inc = vec![Vec::new(); ids.len()];
        for (eid, e) in &g.edges {
            let (s, t) = (pos[e.src.as_str()], pos[e.tgt.as_str()]);
            between.entry((s, t, e.ty.as_str())).or_default().push(eid.as_str());
            out[s].push((t, e.ty.as_str()));
            inc[t].push((s, e.ty.as_str()));
        }
        for v in out.iter_mut().chain(inc.iter_mut()) {
            v.sort();
            v.dedup();
        }
        Indexed {
            ids,
            tys,
            pos,
            between,
            out,
            inc,
        }
    }
}

/// Partial morphism used to pin part of a match.
pub type Anchor = GraphMorphism;

/// Calls `visit` for every injective morphism `pattern -> host` extending
/// `anchor`, in canonical order. Stops early when `visit` breaks.
pub fn for_each_monomorphism<F>(pattern: &Graph, host: &Graph, anchor: &Anchor, mut visit: F) -> Result<(), GraphError>
where
    F: FnMut(&GraphMorphism) -> ControlFlow<()>,
{
    let mut node_anchor = anchor.nodes.clone();
    // Edge anchors pin their endpoints as well.
    for (pe, he) in &anchor.edges {
        let p = pattern
            .edges
            .get(pe)
            .ok_or_else(|| GraphError::InconsistentAnchor(format!("unknown pattern edge `{pe}`")))?;
        let h = host
            .edges
            .get(he)
            .ok_or_else(|| GraphError::InconsistentAnchor(format!("unknown host edge `{he}`")))?;
        if p.ty != h.ty {
            return Err(GraphError::InconsistentAnchor(format!("edge `{pe}` retyped")));
        }
        for (a, b) in [(&p.src, &h.src), (&p.tgt, &h.tgt)] {
            match node_anchor.get(a) {
                Some(x) if x != b => {
                    return Err(GraphError::InconsistentAnchor(format!(
                        "edge `{pe}` endpoint `{a}` disagrees with node anchor"
                    )))
                }
                _ => {
                    node_anchor.insert(a.clone(), b.clone());
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    for (p, h) in &node_anchor {
        let (Some(pt), Some(ht)) = (pattern.nodes.get(p), host.nodes.get(h)) else {
            return Err(GraphError::InconsistentAnchor(format!(
                "`{p}` -> `{h}` names a missing node"
            )));
        };
        if pt != ht {
            return Err(GraphError::InconsistentAnchor(format!("`{p}` -> `{h}` changes type")));
        }
        if !seen.insert(h) {
            return Err(GraphError::InconsistentAnchor(format!("`{h}` is hit twice")));
        }
    }
    let edge_targets: BTreeSet<_> = anchor.edges.values().collect();
    if edge_targets.len() != anchor.edges.len() {
        return Err(GraphError::InconsistentAnchor("edge anchor is not injective".into()));
    }

    if pattern.nodes.len() > host.nodes.len() || pattern.edges.len() > host.edges.len() {
        return Ok(());
    }

    let hi = Indexed::new(host);
    let pi = Indexed::new(pattern);
    let n = pi.ids.len();

    // Search order: anchored nodes first, then greedily the node with most
    // links to already placed nodes, ties broken canonically.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for (i, id) in pi.ids.iter().enumerate() {
        if node_anchor.contains_key(*id) {
            order.push(i);
            placed[i] = true;
        }
    }
    while order.len() < n {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..n {
            if placed[v] {
                continue;
            }
            let links = pi.out[v]
                .iter()
                .chain(pi.inc[v].iter())
                .filter(|(w, _)| placed[*w])
                .count();
            if best.is_none_or(|(_, b)| links > b) {
                best = Some((v, links));
            }
        }
        let v = best.unwrap().0;
        placed[v] = true;
        order.push(v);
    }
    let mut rank = vec![0; n];
    for (k, v) in order.iter().enumerate() {
        rank[*v] = k;
    }

    // Per position: edge multiplicity constraints towards earlier positions.
    let mut constraints: Vec<Vec<(usize, usize, &str, usize)>> = vec![Vec::new(); n];
    for (&(s, t, ty), es) in &pi.between {
        let k = rank[s].max(rank[t]);
        constraints[k].push((s, t, ty, es.len()));
    }
    for c in constraints.iter_mut() {
        c.sort();
    }

    let anchored: Vec<Option<usize>> = pi
        .ids
        .iter()
        .map(|id| node_anchor.get(*id).map(|h| hi.pos[h.as_str()]))
        .collect();

    let mut assign: Vec<usize> = vec![usize::MAX; n];
    let mut used = vec![false; hi.ids.len()];
    let mut stop = false;
    let edge_anchor = &anchor.edges;

    fn edges_ok(cons: &[(usize, usize, &str, usize)], assign: &[usize], hi: &Indexed) -> bool {
        cons.iter()
            .all(|&(s, t, ty, cnt)| hi.between.get(&(assign[s], assign[t], ty)).map_or(0, |v| v.len()) >= cnt)
    }

    #[allow(clippy::too_many_arguments)]
    fn rec<F: FnMut(&GraphMorphism) -> ControlFlow<()>>(
        k: usize,
        order: &[usize],
        pi: &Indexed,
        hi: &Indexed,
        anchored: &[Option<usize>],
        constraints: &[Vec<(usize, usize, &str, usize)>],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        pattern: &Graph,
        edge_anchor: &BTreeMap<String, String>,
        visit: &mut F,
        stop: &mut bool,
    ) {
        if *stop {
            return;
        }
        if k == order.len() {
            emit_edges(pi, hi, assign, pattern, edge_anchor, visit, stop);
            return;
        }
        let v = order[k];
        let candidates: Vec<usize> = if let Some(h) = anchored[v] {
            vec![h]
        } else {
            // Neighbourhood of an already assigned node if there is one.
            let mut cands: Option<Vec<usize>> = None;
            for &(w, ty) in &pi.out[v] {
                if assign[w] != usize::MAX {
                    cands = Some(
                        hi.inc[assign[w]]
                            .iter()
                            .filter(|(_, t)| *t == ty)
                            .map(|(x, _)| *x)
                            .collect(),
                    );
                    break;
                }
            }
            if cands.is_none() {
                for &(w, ty) in &pi.inc[v] {
                    if assign[w] != usize::MAX {
                        cands = Some(
                            hi.out[assign[w]]
                                .iter()
                                .filter(|(_, t)| *t == ty)
                                .map(|(x, _)| *x)
                                .collect(),
                        );
                        break;
                    }
                }
            }
            let mut c = cands.unwrap_or_else(|| (0..hi.ids.len()).collect());
            c.sort();
            c.dedup();
            c
        };
        for h in candidates {
            if used[h] || hi.tys[h] != pi.tys[v] {
                continue;
            }
            assign[v] = h;
            if edges_ok(&constraints[k], assign, hi) {
                used[h] = true;
                rec(
                    k + 1,
                    order,
                    pi,
                    hi,
                    anchored,
                    constraints,
                    assign,
                    used,
                    pattern,
                    edge_anchor,
                    visit,
                    stop,
                );
                used[h] = false;
            }
            assign[v] = usize::MAX;
            if *stop {
                return;
            }
        }
    }

    fn emit_edges<F: FnMut(&GraphMorphism) -> ControlFlow<()>>(
        pi: &Indexed,
        hi: &Indexed,
        assign: &[usize],
        pattern: &Graph,
        edge_anchor: &BTreeMap<String, String>,
        visit: &mut F,
        stop: &mut bool,
    ) {
        let nodes: BTreeMap<String, String> = pi
            .ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.to_string(), hi.ids[assign[i]].to_string()))
            .collect();
        // Pattern edges grouped by their host slot; each group is matched
        // injectively onto the parallel host edges of that slot.
        let mut groups: Vec<(Vec<&str>, Vec<&str>)> = Vec::new();
        let mut keys: Vec<_> = pi.between.keys().collect();
        keys.sort();
        for key in keys {
            let (s, t, ty) = *key;
            let pes = pi.between[key].clone();
            let hes = hi.between[&(assign[s], assign[t], ty)].clone();
            groups.push((pes, hes));
        }
        let mut edges = BTreeMap::new();
        let _ = pattern;
        #[allow(clippy::too_many_arguments)]
        fn go<F: FnMut(&GraphMorphism) -> ControlFlow<()>>(
            gi: usize,
            ei: usize,
            groups: &[(Vec<&str>, Vec<&str>)],
            taken: &mut BTreeSet<String>,
            edges: &mut BTreeMap<String, String>,
            nodes: &BTreeMap<String, String>,
            edge_anchor: &BTreeMap<String, String>,
            visit: &mut F,
            stop: &mut bool,
        ) {
            if *stop {
                return;
            }
            if gi == groups.len() {
                let m = GraphMorphism {
                    nodes: nodes.clone(),
                    edges: edges.clone(),
                };
                if visit(&m).is_break() {
                    *stop = true;
                }
                return;
            }
            let (pes, hes) = &groups[gi];
            if ei == pes.len() {
                go(gi + 1, 0, groups, taken, edges, nodes, edge_anchor, visit, stop);
                return;
            }
            let pe = pes[ei];
            for he in hes {
                if taken.contains(*he) {
                    continue;
                }
                if let Some(fixed) = edge_anchor.get(pe) {
                    if fixed != he {
                        continue;
                    }
                }
                taken.insert(he.to_string());
                edges.insert(pe.to_string(), he.to_string());
                go(gi, ei + 1, groups, taken, edges, nodes, edge_anchor, visit, stop);
                edges.remove(pe);
                taken.remove(*he);
                if *stop {
                    return;
                }
            }
        }
        go(
            0,
            0,
            &groups,
            &mut BTreeSet::new(),
            &mut edges,
            &nodes,
            edge_anchor,
            visit,
            stop,
        );
    }

    rec(
        0,
        &order,
        &pi,
        &hi,
        &anchored,
        &constraints,
        &mut assign,
        &mut used,
        pattern,
        edge_anchor,
        &mut visit,
        &mut stop,
    );
    Ok(())
}

/// All injective, type-preserving morphisms `pattern -> host` extending
/// `anchor`, in canonical order.
pub fn find_monomorphisms(pattern: &Graph, host: &Graph, anchor: &Anchor) -> Result<Vec<GraphMorphism>, GraphError> {
    let mut all = Vec::new();
    for_each_monomorphism(pattern, host, anchor, |m| {
        all.push(m.clone());
        ControlFlow::Continue(())
    })?;
    Ok(all)
}

/// First monomorphism in canonical order, if any.
pub fn first_monomorphism(pattern: &Graph, host: &Graph, anchor: &Anchor) -> Result<Option<GraphMorphism>, GraphError> {
    let mut found = None;
    for_each_monomorphism(pattern, host, anchor, |m| {
        found = Some(m.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Whether `anchor` extends to an injective morphism `pattern -> host`.
/// Inconsistent anchors simply do not extend.
pub fn extends(pattern: &Graph, host: &Graph, anchor: &Anchor) -> bool {
    matches!(first_monomorphism(pattern, host, anchor), Ok(Some(_)))
}

/// A bijective morphism `g1 -> g2` if one exists.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Option<GraphMorphism> {
    if g1.nodes.len() != g2.nodes.len() || g1.edges.len() != g2.edges.len() {
        return None;
    }
    let mut t1: Vec<_> = g1.nodes.values().collect();
    let mut t2: Vec<_> = g2.nodes.values().collect();
    t1.sort();
    t2.sort();
    if t1 != t2 {
        return None;
    }
    first_monomorphism(g1, g2, &Anchor::new()).ok().flatten()
}

/// Whether an isomorphism `g1 -> g2` extending `anchor` exists.
pub fn isomorphic_under(g1: &Graph, g2: &Graph, anchor: &Anchor) -> bool {
    g1.nodes.len() == g2.nodes.len() && g1.edges.len() == g2.edges.len() && extends(g1, g2, anchor)
}

// ---------------------------------------------------------------------------
// Pushout and pullback
// ---------------------------------------------------------------------------

/// Result of a pushout `A +_M B`: the object and the two coprojections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushout {
    pub object: Graph,
    pub from_left: GraphMorphism,
    pub from_right: GraphMorphism,
}

/// Result of a pullback `A x_C B`: the object and the two projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pullback {
    pub object: Graph,
    pub to_left: GraphMorphism,
    pub to_right: GraphMorphism,
}

/// Fresh id for a right-only element: `b:` prefixes until unused.
pub(crate) fn fresh_id(id: &str, taken: &BTreeSet<String>) -> String {
    let mut cand = format!("b:{id}");
    while taken.contains(&cand) {
        cand = format!("b:{cand}");
    }
    cand
}

/// Pushout of the span `A <-left- M -right-> B` for injective legs.
///
/// The copy of `A` keeps its ids; elements only in `B` are renamed with a
/// `b:` prefix.
pub fn pushout(
    apex: &Graph,
    a: &Graph,
    left: &GraphMorphism,
    b: &Graph,
    right: &GraphMorphism,
) -> Result<Pushout, GraphError> {
    left.validate(apex, a)
        .map_err(|e| GraphError::ApexMismatch(format!("left leg: {e}")))?;
    right
        .validate(apex, b)
        .map_err(|e| GraphError::ApexMismatch(format!("right leg: {e}")))?;
    if !left.is_injective() || !right.is_injective() {
        return Err(GraphError::ApexMismatch("legs must be injective".into()));
    }
    let right_inv = right.inverse();
    let mut object = a.clone();
    let mut taken = a.ids();
    taken.extend(b.ids());
    let mut from_right = GraphMorphism::new();
    for (id, ty) in &b.nodes {
        let img = match right_inv.nodes.get(id) {
            Some(m) => left.nodes[m].clone(),
            None => {
                let f = fresh_id(id, &taken);
                taken.insert(f.clone());
                object.nodes.insert(f.clone(), ty.clone());
                f
            }
        };
        from_right.nodes.insert(id.clone(), img);
    }
    for (id, e) in &b.edges {
        let img = match right_inv.edges.get(id) {
            Some(m) => left.edges[m].clone(),
            None => {
                let f = fresh_id(id, &taken);
                taken.insert(f.clone());
                object.edges.insert(
                    f.clone(),
                    Edge {
                        ty: e.ty.clone(),
                        src: from_right.nodes[&e.src].clone(),
                        tgt: from_right.nodes[&e.tgt].clone(),
                    },
                );
                f
            }
        };
        from_right.edges.insert(id.clone(), img);
    }
    Ok(Pushout {
        object,
        from_left: GraphMorphism::identity(a),
        from_right,
    })
}

/// Pullback of the cospan `A -left-> C <-right- B`.
///
/// Elements are pairs `(a, b)` with equal images. A pair keeps the id of `a`
/// when `a` has a single partner, otherwise it is named `a*b`.
pub fn pullback(
    a: &Graph,
    left: &GraphMorphism,
    b: &Graph,
    right: &GraphMorphism,
    c: &Graph,
) -> Result<Pullback, GraphError> {
    left.validate(a, c)
        .map_err(|e| GraphError::CodomainMismatch(format!("left leg: {e}")))?;
    right
        .validate(b, c)
        .map_err(|e| GraphError::CodomainMismatch(format!("right leg: {e}")))?;
    let mut pre_b: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (x, y) in right.nodes.iter().chain(right.edges.iter()) {
        pre_b.entry(y.as_str()).or_default().push(x.as_str());
    }
    let pair_id = |x: &str, partners: &Vec<&str>, y: &str| {
        if partners.len() == 1 {
            x.to_string()
        } else {
            format!("{x}*{y}")
        }
    };
    let mut object = Graph::new();
    let mut to_left = GraphMorphism::new();
    let mut to_right = GraphMorphism::new();
    let mut node_pairs: BTreeMap<(String, String), String> = BTreeMap::new();
    for (x, ty) in &a.nodes {
        if let Some(ps) = pre_b.get(left.nodes[x].as_str()) {
            for y in ps {
                let id = pair_id(x, ps, y);
                object.nodes.insert(id.clone(), ty.clone());
                to_left.nodes.insert(id.clone(), x.clone());
                to_right.nodes.insert(id.clone(), y.to_string());
                node_pairs.insert((x.clone(), y.to_string()), id);
            }
        }
    }
    for (x, e) in &a.edges {
        if let Some(ps) = pre_b.get(left.edges[x].as_str()) {
            for y in ps {
                let be = &b.edges[*y];
                let (Some(s), Some(t)) = (
                    node_pairs.get(&(e.src.clone(), be.src.clone())),
                    node_pairs.get(&(e.tgt.clone(), be.tgt.clone())),
                ) else {
                    continue;
                };
                let id = pair_id(x, ps, y);
                object.edges.insert(
                    id.clone(),
                    Edge {
                        ty: e.ty.clone(),
                        src: s.clone(),
                        tgt: t.clone(),
                    },
                );
                to_left.edges.insert(id.clone(), x.clone());
                to_right.edges.insert(id.clone(), y.to_string());
            }
        }
    }
    Ok(Pullback {
        object,
        to_left,
        to_right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subclass_flat() -> Graph {
        // Source side of the satisfaction example: two classes, one the
        // parent of the other.
        Graph::new()
            .with_node("c1", "C")
            .with_node("c2", "C")
            .with_edge("p", "parent", "c2", "c1")
            .with_node("t1", "T")
    }

    #[test]
    fn one_class_pattern_matches_both_classes() {
        let pat = Graph::new().with_node("x", "C");
        let ms = find_monomorphisms(&pat, &subclass_flat(), &Anchor::new()).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0].nodes["x"], "c1");
        assert_eq!(ms[1].nodes["x"], "c2");
    }

    #[test]
    fn empty_pattern_has_one_match() {
        let ms = find_monomorphisms(&Graph::new(), &subclass_flat(), &Anchor::new()).unwrap();
        assert_eq!(ms, vec![GraphMorphism::new()]);
    }

    #[test]
    fn discrete_host_count() {
        let host = Graph::new()
            .with_node("a1", "A")
            .with_node("a2", "A")
            .with_node("a3", "A");
        let pat = Graph::new().with_node("x", "A");
        assert_eq!(find_monomorphisms(&pat, &host, &Anchor::new()).unwrap().len(), 3);
    }

    #[test]
    fn parallel_edges_are_matched_injectively() {
        let host = Graph::new()
            .with_node("u", "N")
            .with_node("v", "N")
            .with_edge("e1", "k", "u", "v")
            .with_edge("e2", "k", "u", "v");
        let pat = Graph::new()
            .with_node("x", "N")
            .with_node("y", "N")
            .with_edge("f1", "k", "x", "y")
            .with_edge("f2", "k", "x", "y");
        assert_eq!(find_monomorphisms(&pat, &host, &Anchor::new()).unwrap().len(), 2);
        let one = Graph::new()
            .with_node("x", "N")
            .with_node("y", "N")
            .with_edge("f1", "k", "x", "y");
        assert_eq!(find_monomorphisms(&one, &host, &Anchor::new()).unwrap().len(), 2);
    }

    #[test]
    fn anchors_are_respected_and_checked() {
        let pat = Graph::new().with_node("x", "C");
        let mut anchor = Anchor::new();
        anchor.nodes.insert("x".into(), "c2".into());
        let ms = find_monomorphisms(&pat, &subclass_flat(), &anchor).unwrap();
        assert_eq!(ms.len(), 1);
        anchor.nodes.insert("x".into(), "t1".into());
        assert!(matches!(
            find_monomorphisms(&pat, &subclass_flat(), &anchor),
            Err(GraphError::InconsistentAnchor(_))
        ));
    }

    #[test]
    fn iso_identity_and_type_mismatch() {
        let g = subclass_flat();
        let iso = are_isomorphic(&g, &g).unwrap();
        assert_eq!(iso, GraphMorphism::identity(&g));
        let c = Graph::new().with_node("x", "C");
        let t = Graph::new().with_node("x", "T");
        assert!(are_isomorphic(&c, &t).is_none());
    }

    #[test]
    fn pushout_over_empty_is_disjoint_union() {
        let a = Graph::new().with_node("x", "C");
        let b = Graph::new().with_node("x", "T");
        let po = pushout(&Graph::new(), &a, &GraphMorphism::new(), &b, &GraphMorphism::new()).unwrap();
        assert_eq!(po.object.nodes.len(), 2);
        assert_eq!(po.from_right.nodes["x"], "b:x");
    }

    #[test]
    fn pushout_rejects_bad_apex() {
        let a = Graph::new().with_node("x", "C");
        let m = Graph::new().with_node("m", "C");
        let mut left = GraphMorphism::new();
        left.nodes.insert("m".into(), "nope".into());
        let err = pushout(&m, &a, &left, &a, &GraphMorphism::identity(&a)).unwrap_err();
        assert!(matches!(err, GraphError::ApexMismatch(_)));
    }

    #[test]
    fn pullback_of_overlapping_images() {
        let c = Graph::new().with_node("c", "C").with_node("t", "T").with_node("u", "T");
        let a = Graph::new().with_node("c", "C").with_node("t", "T");
        let b = Graph::new().with_node("t", "T").with_node("u", "T");
        let pb = pullback(&a, &GraphMorphism::identity(&a), &b, &GraphMorphism::identity(&b), &c).unwrap();
        assert_eq!(pb.object, Graph::new().with_node("t", "T"));
        let disjoint = Graph::new().with_node("u", "T");
        let pb = pullback(
            &a,
            &GraphMorphism::identity(&a),
            &disjoint,
            &GraphMorphism::identity(&disjoint),
            &c,
        )
        .unwrap();
        assert!(pb.object.is_empty());
    }
}
