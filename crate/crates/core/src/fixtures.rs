//! Built-in example specifications and models.
//!
//! These mirror the JSON files shipped under `fixtures/` and are used by the
//! test suites; the JSON files are checked against them.

use crate::graph::{Graph, TypeGraph};
use crate::pattern::{Pattern, Specification};
use crate::triple::{MetamodelTriple, TripleGraph};

pub fn class2rel_metamodel() -> MetamodelTriple {
    MetamodelTriple::new(
        TypeGraph::new()
            .with_node("C")
            .with_node("A")
            .with_node("R")
            .with_edge("parent", "C", "C")
            .with_edge("attrs", "C", "A")
            .with_edge("rsrc", "C", "R")
            .with_edge("rdst", "R", "C"),
        TypeGraph::new()
            .with_node("T")
            .with_node("Co")
            .with_node("F")
            .with_edge("cols", "T", "Co")
            .with_edge("ends", "F", "T"),
    )
}

fn class_table() -> TripleGraph {
    TripleGraph::new()
        .with_source(Graph::new().with_node("c", "C"))
        .with_target(Graph::new().with_node("t", "T"))
        .with_corr("k", "rel", "c", "t")
}

/// Classes, attributes and references mapped to tables, columns and foreign
/// keys. Subclasses get no table of their own.
pub fn class2rel() -> Specification {
    let ct = class_table();
    let no_parent = TripleGraph::new()
        .with_source(
            Graph::new()
                .with_node("c", "C")
                .with_node("p", "C")
                .with_edge("cp", "parent", "c", "p"),
        )
        .with_target(Graph::new().with_node("t", "T"))
        .with_corr("k", "rel", "c", "t");

    let a_co = TripleGraph::new()
        .with_source(
            Graph::new()
                .with_node("c", "C")
                .with_node("a", "A")
                .with_edge("ca", "attrs", "c", "a"),
        )
        .with_target(
            Graph::new()
                .with_node("t", "T")
                .with_node("co", "Co")
                .with_edge("tc", "cols", "t", "co"),
        )
        .with_corr("k", "rel", "c", "t")
        .with_corr("ka", "rel", "a", "co");

    // An attribute of a referenced class also becomes a column of the
    // referenced table, linked from the referencing table by a foreign key.
    let a_co2 = TripleGraph::new()
        .with_source(
            Graph::new()
                .with_node("c1", "C")
                .with_node("r", "R")
                .with_node("c2", "C")
                .with_node("a", "A")
                .with_edge("rs", "rsrc", "c1", "r")
                .with_edge("rd", "rdst", "r", "c2")
                .with_edge("ca", "attrs", "c2", "a"),
        )
        .with_target(
            Graph::new()
                .with_node("t1", "T")
                .with_node("f", "F")
                .with_node("t2", "T")
                .with_node("co", "Co")
                .with_edge("e1", "ends", "f", "t1")
                .with_edge("e2", "ends", "f", "t2")
                .with_edge("tc", "cols", "t2", "co"),
        )
        .with_corr("k1", "rel", "c1", "t1")
        .with_corr("k2", "rel", "c2", "t2")
        .with_corr("ka", "rel", "a", "co");

    // At most one foreign key between the same two tables.
    let dup_f = TripleGraph::new().with_target(
        Graph::new()
            .with_node("t1", "T")
            .with_node("t2", "T")
            .with_node("f1", "F")
            .with_node("f2", "F")
            .with_edge("e11", "ends", "f1", "t1")
            .with_edge("e12", "ends", "f1", "t2")
            .with_edge("e21", "ends", "f2", "t1")
            .with_edge("e22", "ends", "f2", "t2"),
    );

    Specification::new(class2rel_metamodel())
        .with(Pattern::simple("C-T", ct).with_neg_pre("noParent", no_parent))
        .with(Pattern::simple("A-Co", a_co))
        .with(Pattern::simple("A-Co2", a_co2))
        .with(Pattern::negative("notDupF", dup_f))
}

/// Two classes, `c2` a subclass of `c1`, with only `c1` related to a table.
pub fn subclass_host() -> TripleGraph {
    TripleGraph::new()
        .with_source(
            Graph::new()
                .with_node("c1", "C")
                .with_node("c2", "C")
                .with_edge("p", "parent", "c2", "c1"),
        )
        .with_target(Graph::new().with_node("t1", "T"))
        .with_corr("k1", "rel", "c1", "t1")
}

/// Every `A` gets an `E` pointing at a `B`, but at most one `B` may exist.
/// Without deriving a pattern that reuses the `B`, the forward rules cannot
/// handle more than one `A`.
pub fn shared_b() -> Specification {
    let mm = MetamodelTriple::new(
        TypeGraph::new().with_node("A"),
        TypeGraph::new().with_node("E").with_node("B").with_edge("of", "E", "B"),
    );
    let q = TripleGraph::new()
        .with_source(Graph::new().with_node("a", "A"))
        .with_target(
            Graph::new()
                .with_node("e", "E")
                .with_node("b", "B")
                .with_edge("eb", "of", "e", "b"),
        )
        .with_corr("k", "rel", "a", "e");
    let two_b = TripleGraph::new().with_target(Graph::new().with_node("b1", "B").with_node("b2", "B"));
    Specification::new(mm)
        .with(Pattern::simple("A-E", q))
        .with(Pattern::negative("oneB", two_b))
}

pub fn nodes(ty: &str, n: usize) -> Graph {
    let mut g = Graph::new();
    for i in 1..=n {
        g.add_node(&format!("{}{i}", ty.to_lowercase()), ty);
    }
    g
}

/// One-to-one relation between `A`s and `B`s.
pub fn bijection() -> Specification {
    let mm = MetamodelTriple::new(TypeGraph::new().with_node("A"), TypeGraph::new().with_node("B"));
    let q = TripleGraph::new()
        .with_source(Graph::new().with_node("a", "A"))
        .with_target(Graph::new().with_node("b", "B"))
        .with_corr("k", "rel", "a", "b");
    let a_two_b = TripleGraph::new()
        .with_source(Graph::new().with_node("a", "A"))
        .with_target(Graph::new().with_node("b1", "B").with_node("b2", "B"))
        .with_corr("k1", "rel", "a", "b1")
        .with_corr("k2", "rel", "a", "b2");
    let b_two_a = TripleGraph::new()
        .with_source(Graph::new().with_node("a1", "A").with_node("a2", "A"))
        .with_target(Graph::new().with_node("b", "B"))
        .with_corr("k1", "rel", "a1", "b")
        .with_corr("k2", "rel", "a2", "b");
    Specification::new(mm)
        .with(Pattern::simple("A-B", q))
        .with(Pattern::negative("oneB", a_two_b))
        .with(Pattern::negative("oneA", b_two_a))
}

/// Chains of `A`s mapped to chains of `B`s, one `B` per `A`.
pub fn chains() -> Specification {
    let mm = MetamodelTriple::new(
        TypeGraph::new().with_node("A").with_edge("next", "A", "A"),
        TypeGraph::new().with_node("B").with_edge("next", "B", "B"),
    );
    let node = TripleGraph::new()
        .with_source(Graph::new().with_node("a", "A"))
        .with_target(Graph::new().with_node("b", "B"))
        .with_corr("k", "rel", "a", "b");
    let link = TripleGraph::new()
        .with_source(
            Graph::new()
                .with_node("a1", "A")
                .with_node("a2", "A")
                .with_edge("an", "next", "a1", "a2"),
        )
        .with_target(
            Graph::new()
                .with_node("b1", "B")
                .with_node("b2", "B")
                .with_edge("bn", "next", "b1", "b2"),
        )
        .with_corr("k1", "rel", "a1", "b1")
        .with_corr("k2", "rel", "a2", "b2");
    let a_two_b = TripleGraph::new()
        .with_source(Graph::new().with_node("a", "A"))
        .with_target(Graph::new().with_node("b1", "B").with_node("b2", "B"))
        .with_corr("k1", "rel", "a", "b1")
        .with_corr("k2", "rel", "a", "b2");
    let b_two_a = TripleGraph::new()
        .with_source(Graph::new().with_node("a1", "A").with_node("a2", "A"))
        .with_target(Graph::new().with_node("b", "B"))
        .with_corr("k1", "rel", "a1", "b")
        .with_corr("k2", "rel", "a2", "b");
    Specification::new(mm)
        .with(Pattern::simple("A-B", node))
        .with(Pattern::simple("next", link))
        .with(Pattern::negative("oneB", a_two_b))
        .with(Pattern::negative("oneA", b_two_a))
}

/// Sample CLASS2REL source models.
pub fn class2rel_sources() -> Vec<(&'static str, Graph)> {
    vec![
        ("empty", Graph::new()),
        (
            "oneClassOneAttr",
            Graph::new()
                .with_node("c", "C")
                .with_node("a", "A")
                .with_edge("ca", "attrs", "c", "a"),
        ),
        (
            "subclass",
            Graph::new()
                .with_node("c1", "C")
                .with_node("c2", "C")
                .with_node("a", "A")
                .with_edge("p", "parent", "c2", "c1")
                .with_edge("ca", "attrs", "c1", "a"),
        ),
        (
            "twoClasses",
            Graph::new()
                .with_node("c1", "C")
                .with_node("c2", "C")
                .with_node("a1", "A")
                .with_node("a2", "A")
                .with_node("a3", "A")
                .with_edge("x1", "attrs", "c1", "a1")
                .with_edge("x2", "attrs", "c1", "a2")
                .with_edge("x3", "attrs", "c2", "a3"),
        ),
        (
            "reference",
            Graph::new()
                .with_node("c1", "C")
                .with_node("r", "R")
                .with_node("c2", "C")
                .with_node("a", "A")
                .with_edge("rs", "rsrc", "c1", "r")
                .with_edge("rd", "rdst", "r", "c2")
                .with_edge("ca", "attrs", "c2", "a"),
        ),
    ]
}
