//! Triple graphs: a source graph and a target graph related through
//! correspondence nodes with total anchor maps into each side.
//!
//! Every operation on triples goes through a *flat* encoding: one typed
//! graph where source nodes carry type `s/T`, target nodes `t/T`,
//! correspondence nodes `c/K`, and each correspondence node has an edge of
//! type `#cs` to its source anchor and `#ct` to its target anchor. Triple
//! morphisms are exactly the graph morphisms between flat encodings, so the
//! graph-level matcher, pushout and pullback serve both layers.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{self, Graph, GraphError, GraphMorphism, TypeGraph};

pub const DEFAULT_CORR_TYPE: &str = "rel";
const CS: &str = "#cs";
const CT: &str = "#ct";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Source,
    Target,
    Corr,
}

/// Transformation direction. Forward reads the source and builds the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    /// The side a directed base is read from.
    pub fn side(self) -> Side {
        match self {
            Direction::Forward => Side::Source,
            Direction::Backward => Side::Target,
        }
    }

    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        }
    }
}

impl std::str::FromStr for Direction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "forward" => Ok(Direction::Forward),
            "backward" => Ok(Direction::Backward),
            other => Err(format!("unknown direction `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CorrType {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetamodelTriple {
    pub source: TypeGraph,
    pub target: TypeGraph,
    pub corr: Vec<CorrType>,
}

impl MetamodelTriple {
    /// A metamodel with the universal `rel` correspondence type.
    pub fn new(source: TypeGraph, target: TypeGraph) -> Self {
        MetamodelTriple {
            source,
            target,
            corr: vec![CorrType {
                name: DEFAULT_CORR_TYPE.into(),
                source: None,
                target: None,
            }],
        }
    }

    pub fn corr_type(&self, name: &str) -> Option<&CorrType> {
        self.corr.iter().find(|c| c.name == name)
    }

    pub fn types(&self, side: Side) -> Option<&TypeGraph> {
        match side {
            Side::Source => Some(&self.source),
            Side::Target => Some(&self.target),
            Side::Corr => None,
        }
    }

    pub fn mirrored(&self) -> MetamodelTriple {
        MetamodelTriple {
            source: self.target.clone(),
            target: self.source.clone(),
            corr: self
                .corr
                .iter()
                .map(|c| CorrType {
                    name: c.name.clone(),
                    source: c.target.clone(),
                    target: c.source.clone(),
                })
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        self.source.validate().map_err(|e| format!("source: {e}"))?;
        self.target.validate().map_err(|e| format!("target: {e}"))?;
        if self.corr.is_empty() {
            return Err("at least one correspondence type is required".into());
        }
        let mut names = BTreeSet::new();
        for c in &self.corr {
            if !names.insert(&c.name) {
                return Err(format!("duplicate correspondence type `{}`", c.name));
            }
            if let Some(s) = &c.source {
                if !self.source.node_types.contains(s) {
                    return Err(format!("corr type `{}` names unknown source type `{s}`", c.name));
                }
            }
            if let Some(t) = &c.target {
                if !self.target.node_types.contains(t) {
                    return Err(format!("corr type `{}` names unknown target type `{t}`", c.name));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Corr {
    #[serde(rename = "type")]
    pub ty: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleGraph {
    pub source: Graph,
    pub target: Graph,
    pub corr: BTreeMap<String, Corr>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TripleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("flat graph is not a triple encoding: {0}")]
    NotATriple(String),
}

impl TripleGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_source(mut self, source: Graph) -> Self {
        self.source = source;
        self
    }

    pub fn with_target(mut self, target: Graph) -> Self {
        self.target = target;
        self
    }

    pub fn with_corr(mut self, id: &str, ty: &str, source: &str, target: &str) -> Self {
        self.corr.insert(
            id.into(),
            Corr {
                ty: ty.into(),
                source: source.into(),
                target: target.into(),
            },
        );
        self
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty() && self.target.is_empty() && self.corr.is_empty()
    }

    /// Nodes, edges and correspondence nodes.
    pub fn size(&self) -> usize {
        self.source.size() + self.target.size() + self.corr.len()
    }

    pub fn ids(&self) -> BTreeSet<String> {
        let mut ids = self.source.ids();
        ids.extend(self.target.ids());
        ids.extend(self.corr.keys().cloned());
        ids
    }

    pub fn contains_id(&self, id: &str) -> bool {
        self.source.contains_id(id) || self.target.contains_id(id) || self.corr.contains_key(id)
    }

    /// Source node and target node related by some correspondence node.
    pub fn related(&self, s: &str, t: &str) -> bool {
        self.corr.values().any(|c| c.source == s && c.target == t)
    }

    /// Whether a source or target node is anchored by some correspondence.
    pub fn is_related(&self, node: &str) -> bool {
        self.corr.values().any(|c| c.source == node || c.target == node)
    }

    /// Sub-triple on the given ids. Correspondence nodes whose anchors are
    /// not kept are dropped, as are dangling edges.
    pub fn sub(&self, ids: &BTreeSet<String>) -> TripleGraph {
        let source = self.source.subgraph(ids);
        let target = self.target.subgraph(ids);
        let corr = self
            .corr
            .iter()
            .filter(|(id, c)| {
                ids.contains(*id) && source.nodes.contains_key(&c.source) && target.nodes.contains_key(&c.target)
            })
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect();
        TripleGraph { source, target, corr }
    }

    /// Whether `other` is a sub-triple of `self` by ids.
    pub fn includes(&self, other: &TripleGraph) -> bool {
        other
            .source
            .nodes
            .iter()
            .all(|(k, v)| self.source.nodes.get(k) == Some(v))
            && other
                .target
                .nodes
                .iter()
                .all(|(k, v)| self.target.nodes.get(k) == Some(v))
            && other
                .source
                .edges
                .iter()
                .all(|(k, v)| self.source.edges.get(k) == Some(v))
            && other
                .target
                .edges
                .iter()
                .all(|(k, v)| self.target.edges.get(k) == Some(v))
            && other.corr.iter().all(|(k, v)| self.corr.get(k) == Some(v))
    }

    /// Union of two sub-triples that agree on shared ids.
    pub fn union(&self, other: &TripleGraph) -> TripleGraph {
        let mut out = self.clone();
        out.source.nodes.extend(other.source.nodes.clone());
        out.source.edges.extend(other.source.edges.clone());
        out.target.nodes.extend(other.target.nodes.clone());
        out.target.edges.extend(other.target.edges.clone());
        out.corr.extend(other.corr.clone());
        out
    }

    /// Source and target swapped.
    pub fn mirrored(&self) -> TripleGraph {
        TripleGraph {
            source: self.target.clone(),
            target: self.source.clone(),
            corr: self
                .corr
                .iter()
                .map(|(id, c)| {
                    (
                        id.clone(),
                        Corr {
                            ty: c.ty.clone(),
                            source: c.target.clone(),
                            target: c.source.clone(),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn flatten(&self) -> Graph {
        let mut g = Graph::new();
        for (id, ty) in &self.source.nodes {
            g.add_node(id, &format!("s/{ty}"));
        }
        for (id, e) in &self.source.edges {
            g.add_edge(id, &format!("s/{}", e.ty), &e.src, &e.tgt);
        }
        for (id, ty) in &self.target.nodes {
            g.add_node(id, &format!("t/{ty}"));
        }
        for (id, e) in &self.target.edges {
            g.add_edge(id, &format!("t/{}", e.ty), &e.src, &e.tgt);
        }
        for (id, c) in &self.corr {
            g.add_node(id, &format!("c/{}", c.ty));
            g.add_edge(&format!("cs:{id}"), CS, id, &c.source);
            g.add_edge(&format!("ct:{id}"), CT, id, &c.target);
        }
        g
    }

    pub fn from_flat(g: &Graph) -> Result<TripleGraph, TripleError> {
        let mut t = TripleGraph::new();
        let mut anchors: BTreeMap<&str, (Option<&str>, Option<&str>)> = BTreeMap::new();
        for (id, ty) in &g.nodes {
            if let Some(x) = ty.strip_prefix("s/") {
                t.source.add_node(id, x);
            } else if let Some(x) = ty.strip_prefix("t/") {
                t.target.add_node(id, x);
            } else if ty.starts_with("c/") {
                anchors.insert(id.as_str(), (None, None));
            } else {
                return Err(TripleError::NotATriple(format!("node `{id}` has type `{ty}`")));
            }
        }
        for (id, e) in &g.edges {
            if e.ty == CS || e.ty == CT {
                let slot = anchors
                    .get_mut(e.src.as_str())
                    .ok_or_else(|| TripleError::NotATriple(format!("anchor edge `{id}` not from a corr node")))?;
                let which = if e.ty == CS { &mut slot.0 } else { &mut slot.1 };
                if which.replace(e.tgt.as_str()).is_some() {
                    return Err(TripleError::NotATriple(format!("corr `{}` has two anchors", e.src)));
                }
            } else if let Some(x) = e.ty.strip_prefix("s/") {
                t.source.add_edge(id, x, &e.src, &e.tgt);
            } else if let Some(x) = e.ty.strip_prefix("t/") {
                t.target.add_edge(id, x, &e.src, &e.tgt);
            } else {
                return Err(TripleError::NotATriple(format!("edge `{id}` has type `{}`", e.ty)));
            }
        }
        for (id, (s, tg)) in anchors {
            let (Some(s), Some(tg)) = (s, tg) else {
                return Err(TripleError::NotATriple(format!("corr `{id}` is missing an anchor")));
            };
            let ty = g.nodes[id].strip_prefix("c/").unwrap();
            t.corr.insert(
                id.to_string(),
                Corr {
                    ty: ty.to_string(),
                    source: s.to_string(),
                    target: tg.to_string(),
                },
            );
        }
        Ok(t)
    }
}

/// Componentwise morphism between triples, stored as one map over node ids
/// (source, target and correspondence nodes) and one over edge ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleMorphism {
    pub nodes: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
}

impl TripleMorphism {
    pub fn new() -> Self {
        Self::default()
    }

    /// Identity on the ids of `t`; also the inclusion of `t` into any
    /// triple that contains it by ids.
    pub fn inclusion(t: &TripleGraph) -> Self {
        let mut nodes = BTreeMap::new();
        for id in t.source.nodes.keys().chain(t.target.nodes.keys()).chain(t.corr.keys()) {
            nodes.insert(id.clone(), id.clone());
        }
        let edges = t
            .source
            .edges
            .keys()
            .chain(t.target.edges.keys())
            .map(|k| (k.clone(), k.clone()))
            .collect();
        TripleMorphism { nodes, edges }
    }

    pub fn get(&self, id: &str) -> Option<&String> {
        self.nodes.get(id).or_else(|| self.edges.get(id))
    }

    pub fn part(&self, t: &TripleGraph, side: Side) -> GraphMorphism {
        let pick = |ids: Vec<&String>, map: &BTreeMap<String, String>| {
            ids.into_iter()
                .filter_map(|k| map.get(k).map(|v| (k.clone(), v.clone())))
                .collect()
        };
        match side {
            Side::Source => GraphMorphism {
                nodes: pick(t.source.nodes.keys().collect(), &self.nodes),
                edges: pick(t.source.edges.keys().collect(), &self.edges),
            },
            Side::Target => GraphMorphism {
                nodes: pick(t.target.nodes.keys().collect(), &self.nodes),
                edges: pick(t.target.edges.keys().collect(), &self.edges),
            },
            Side::Corr => GraphMorphism {
                nodes: pick(t.corr.keys().collect(), &self.nodes),
                edges: BTreeMap::new(),
            },
        }
    }

    /// Flat morphism restricted to the anchor edges that exist in `dom`.
    pub(crate) fn to_flat_for(&self, dom: &TripleGraph) -> GraphMorphism {
        let mut m = GraphMorphism {
            nodes: self.nodes.clone(),
            edges: self.edges.clone(),
        };
        for id in dom.corr.keys() {
            if let Some(b) = self.nodes.get(id) {
                m.edges.insert(format!("cs:{id}"), format!("cs:{b}"));
                m.edges.insert(format!("ct:{id}"), format!("ct:{b}"));
            }
        }
        m
    }

    pub fn from_flat(m: &GraphMorphism) -> TripleMorphism {
        TripleMorphism {
            nodes: m.nodes.clone(),
            edges: m
                .edges
                .iter()
                .filter(|(k, _)| !(k.starts_with("cs:") || k.starts_with("ct:")))
                .map(|(a, b)| (a.clone(), b.clone()))
                .collect(),
        }
    }

    pub fn compose(&self, then: &TripleMorphism) -> TripleMorphism {
        TripleMorphism {
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

    pub fn inverse(&self) -> TripleMorphism {
        TripleMorphism {
            nodes: self.nodes.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
            edges: self.edges.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let n: BTreeSet<_> = self.nodes.values().collect();
        let e: BTreeSet<_> = self.edges.values().collect();
        n.len() == self.nodes.len() && e.len() == self.edges.len()
    }

    /// Totality, typing, structure preservation and anchor commutation.
    pub fn validate(&self, dom: &TripleGraph, cod: &TripleGraph) -> Result<(), GraphError> {
        if self.nodes.len() != dom.source.nodes.len() + dom.target.nodes.len() + dom.corr.len()
            || self.edges.len() != dom.source.edges.len() + dom.target.edges.len()
        {
            return Err(GraphError::InvalidMorphism("not total on its domain".into()));
        }
        self.to_flat_for(dom).validate(&dom.flatten(), &cod.flatten())
    }

    /// Image of the domain in the codomain's ids.
    pub fn image_ids(&self) -> BTreeSet<String> {
        self.nodes.values().chain(self.edges.values()).cloned().collect()
    }

    /// Rename the domain side: `self` seen as a morphism from the renamed
    /// domain.
    pub fn relabel_domain(&self, rename: &TripleMorphism) -> TripleMorphism {
        rename.inverse().compose(self)
    }
}

// ---------------------------------------------------------------------------
// Validation and restriction
// ---------------------------------------------------------------------------

/// Checks a triple against a metamodel. Returns every violation found.
pub fn validate_triple(t: &TripleGraph, mm: &MetamodelTriple) -> Vec<String> {
    let mut out = Vec::new();
    if let Err(e) = t.source.validate(&mm.source) {
        out.push(format!("source: {e}"));
    }
    if let Err(e) = t.target.validate(&mm.target) {
        out.push(format!("target: {e}"));
    }
    let mut seen = BTreeSet::new();
    for id in t
        .source
        .ids()
        .into_iter()
        .chain(t.target.ids())
        .chain(t.corr.keys().cloned())
    {
        if !seen.insert(id.clone()) {
            out.push(format!("duplicate id `{id}` across components"));
        }
    }
    for id in t.source.edges.keys().chain(t.target.edges.keys()) {
        if id.starts_with("cs:") || id.starts_with("ct:") {
            out.push(format!("edge id `{id}` uses a reserved prefix"));
        }
    }
    for (id, c) in &t.corr {
        let Some(ct) = mm.corr_type(&c.ty) else {
            out.push(format!("corr `{id}`: unknown correspondence type `{}`", c.ty));
            continue;
        };
        match t.source.nodes.get(&c.source) {
            None => out.push(format!("corr `{id}`: dangling cs (missing source node `{}`)", c.source)),
            Some(ty) => {
                if ct.source.as_ref().is_some_and(|x| x != ty) {
                    out.push(format!(
                        "corr `{id}`: type `{}` requires source type `{}`, found `{ty}`",
                        c.ty,
                        ct.source.as_ref().unwrap()
                    ));
                }
            }
        }
        match t.target.nodes.get(&c.target) {
            None => out.push(format!("corr `{id}`: dangling ct (missing target node `{}`)", c.target)),
            Some(ty) => {
                if ct.target.as_ref().is_some_and(|x| x != ty) {
                    out.push(format!(
                        "corr `{id}`: type `{}` requires target type `{}`, found `{ty}`",
                        c.ty,
                        ct.target.as_ref().unwrap()
                    ));
                }
            }
        }
    }
    out
}

/// The smallest well-formed triple containing the requested component.
pub fn restrict(t: &TripleGraph, side: Side) -> TripleGraph {
    match side {
        Side::Source => TripleGraph::new().with_source(t.source.clone()),
        Side::Target => TripleGraph::new().with_target(t.target.clone()),
        Side::Corr => {
            let mut r = TripleGraph::new();
            for (id, c) in &t.corr {
                if let (Some(s), Some(tt)) = (t.source.nodes.get(&c.source), t.target.nodes.get(&c.target)) {
                    r.source.add_node(&c.source, s);
                    r.target.add_node(&c.target, tt);
                    r.corr.insert(id.clone(), c.clone());
                }
            }
            r
        }
    }
}

// ---------------------------------------------------------------------------
// Matching and constructions on triples
// ---------------------------------------------------------------------------

pub fn find_triple_monomorphisms(
    pattern: &TripleGraph,
    host: &TripleGraph,
    anchor: &TripleMorphism,
) -> Result<Vec<TripleMorphism>, GraphError> {
    let ms = graph::find_monomorphisms(&pattern.flatten(), &host.flatten(), &anchor.to_flat_for(pattern))?;
    Ok(ms.iter().map(TripleMorphism::from_flat).collect())
}

/// Whether `anchor` (a partial map from `pattern`) extends to an injective
/// triple morphism into `host`.
pub fn triple_extends(pattern: &TripleGraph, host: &TripleGraph, anchor: &TripleMorphism) -> bool {
    graph::extends(&pattern.flatten(), &host.flatten(), &anchor.to_flat_for(pattern))
}

pub fn first_triple_monomorphism(
    pattern: &TripleGraph,
    host: &TripleGraph,
    anchor: &TripleMorphism,
) -> Option<TripleMorphism> {
    graph::first_monomorphism(&pattern.flatten(), &host.flatten(), &anchor.to_flat_for(pattern))
        .ok()
        .flatten()
        .map(|m| TripleMorphism::from_flat(&m))
}

pub fn triple_isomorphism(a: &TripleGraph, b: &TripleGraph) -> Option<TripleMorphism> {
    graph::are_isomorphic(&a.flatten(), &b.flatten()).map(|m| TripleMorphism::from_flat(&m))
}

/// Whether an isomorphism `a -> b` extending `anchor` exists.
pub fn triple_isomorphic_under(a: &TripleGraph, b: &TripleGraph, anchor: &TripleMorphism) -> bool {
    a.size() == b.size() && triple_extends(a, b, anchor)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePushout {
    pub object: TripleGraph,
    pub from_left: TripleMorphism,
    pub from_right: TripleMorphism,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePullback {
    pub object: TripleGraph,
    pub to_left: TripleMorphism,
    pub to_right: TripleMorphism,
}

/// Pushout `A +_M B` computed on flat encodings; `A` keeps its ids.
pub fn triple_pushout(
    apex: &TripleGraph,
    a: &TripleGraph,
    left: &TripleMorphism,
    b: &TripleGraph,
    right: &TripleMorphism,
) -> Result<TriplePushout, TripleError> {
    let po = graph::pushout(
        &apex.flatten(),
        &a.flatten(),
        &left.to_flat_for(apex),
        &b.flatten(),
        &right.to_flat_for(apex),
    )?;
    let object = TripleGraph::from_flat(&po.object)?;
    debug_assert!(object
        .corr
        .values()
        .all(|c| object.source.nodes.contains_key(&c.source) && object.target.nodes.contains_key(&c.target)));
    Ok(TriplePushout {
        object,
        from_left: TripleMorphism::from_flat(&po.from_left),
        from_right: TripleMorphism::from_flat(&po.from_right),
    })
}

/// Pullback `A x_C B` computed on flat encodings.
pub fn triple_pullback(
    a: &TripleGraph,
    left: &TripleMorphism,
    b: &TripleGraph,
    right: &TripleMorphism,
    c: &TripleGraph,
) -> Result<TriplePullback, TripleError> {
    let pb = graph::pullback(
        &a.flatten(),
        &left.to_flat_for(a),
        &b.flatten(),
        &right.to_flat_for(b),
        &c.flatten(),
    )?;
    Ok(TriplePullback {
        object: TripleGraph::from_flat(&pb.object)?,
        to_left: TripleMorphism::from_flat(&pb.to_left),
        to_right: TripleMorphism::from_flat(&pb.to_right),
    })
}

/// Glues two sub-triples of `host` (both given by ids) along their
/// pullback, and returns the pushout renamed into `host`'s ids through the
/// mediating morphism. For injective inclusions this is the union of the
/// two sub-triples.
pub fn glue_subobjects(host: &TripleGraph, a: &TripleGraph, b: &TripleGraph) -> Result<TripleGraph, TripleError> {
    let ia = TripleMorphism::inclusion(a);
    let ib = TripleMorphism::inclusion(b);
    let pb = triple_pullback(a, &ia, b, &ib, host)?;
    let po = triple_pushout(&pb.object, a, &pb.to_left, b, &pb.to_right)?;
    // Mediating morphism: A-copy is the identity, B-only elements map back
    // to their own ids in `host`.
    let back = po.from_right.inverse();
    let rename = |id: &str| back.get(id).cloned().unwrap_or_else(|| id.to_string());
    let flat = po.object.flatten().rename(rename);
    let glued = TripleGraph::from_flat(&flat)?;
    debug_assert!(host.includes(&glued));
    Ok(glued)
}

/// `C +_{C|x} Q|_x` for a pattern-style inclusion `C ⊆ Q`, returned as a
/// sub-triple of `q` (so the embedding into `Q` is the inclusion).
pub fn glue_over_side(c: &TripleGraph, q: &TripleGraph, side: Side) -> Result<TripleGraph, TripleError> {
    let qx = restrict(q, side);
    glue_subobjects(q, c, &qx)
}

/// Flat morphism helper kept for callers that work on graphs directly.
pub fn anchor_from(pairs: &[(&str, &str)]) -> TripleMorphism {
    let mut m = TripleMorphism::new();
    for (a, b) in pairs {
        m.nodes.insert(a.to_string(), b.to_string());
    }
    m
}
