//! Frequently used graphs and templates.

use crate::graph::{MixedGraph, Relation};
use crate::matrix::MixedAdjacencyMatrix;

/// A single directed edge `0 -> 1`.
pub fn directed_edge() -> MixedGraph {
    MixedGraph::from_edges(2, &[], &[(0, 1)]).unwrap()
}

/// Undirected complete graph on `n` vertices.
pub fn clique(n: usize) -> MixedGraph {
    let mut g = MixedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.set_relation(u, v, Relation::Undirected);
        }
    }
    g
}

/// `K_r` with exactly one directed edge, `0 -> 1`.
pub fn arrow_clique(r: usize) -> MixedGraph {
    assert!(r >= 2);
    let mut g = clique(r);
    g.set_relation(0, 1, Relation::Out);
    g
}

/// Directed complete bipartite graph: tails `0..t`, heads `t..2t`.
pub fn directed_biclique(t: usize) -> MixedGraph {
    let mut g = MixedGraph::new(2 * t);
    for a in 0..t {
        for b in t..2 * t {
            g.set_relation(a, b, Relation::Out);
        }
    }
    g
}

/// The directed path `0 -> 1 -> 2`.
pub fn directed_path2() -> MixedGraph {
    MixedGraph::from_edges(3, &[], &[(0, 1), (1, 2)]).unwrap()
}

/// Two parts joined by a directed edge.
pub fn g1() -> MixedAdjacencyMatrix {
    let mut m = MixedAdjacencyMatrix::zero(2);
    m.set_relation(0, 1, Relation::Out);
    m
}

/// `G_1` plus a third part joined undirectedly to both.
pub fn g2() -> MixedAdjacencyMatrix {
    let mut m = MixedAdjacencyMatrix::zero(3);
    m.set_relation(0, 1, Relation::Out);
    m.set_relation(0, 2, Relation::Undirected);
    m.set_relation(1, 2, Relation::Undirected);
    m
}

/// Directed path `0 -> 1 -> 2` closed by an undirected pair `{0, 2}`; its
/// ratio minimum is `1 + 1/sqrt(2)`.
pub fn g4() -> MixedAdjacencyMatrix {
    let mut m = MixedAdjacencyMatrix::zero(3);
    m.set_relation(0, 1, Relation::Out);
    m.set_relation(1, 2, Relation::Out);
    m.set_relation(0, 2, Relation::Undirected);
    m
}

/// Three parts: `0 -> 1` directed, `{1, 2}` undirected, part 2 a clique.
pub fn example_template() -> MixedAdjacencyMatrix {
    let mut m = MixedAdjacencyMatrix::zero(3);
    m.set_relation(0, 1, Relation::Out);
    m.set_relation(1, 2, Relation::Undirected);
    m.set_clique_part(2, true);
    m
}

/// Transitive tournament on `r` parts (`i -> j` for `i < j`).
pub fn transitive_tournament(r: usize) -> MixedAdjacencyMatrix {
    let mut m = MixedAdjacencyMatrix::zero(r);
    for i in 0..r {
        for j in i + 1..r {
            m.set_relation(i, j, Relation::Out);
        }
    }
    m
}

/// The template of `M(x, n)`: a clique part pointing at an independent part.
pub fn clique_to_independent() -> MixedAdjacencyMatrix {
    let mut m = g1();
    m.set_clique_part(0, true);
    m
}

/// The template of `M(x, n)` with every direction reversed.
pub fn independent_to_clique() -> MixedAdjacencyMatrix {
    let mut m = MixedAdjacencyMatrix::zero(2);
    m.set_relation(1, 0, Relation::Out);
    m.set_clique_part(0, true);
    m
}
