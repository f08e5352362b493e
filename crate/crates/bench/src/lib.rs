//! Fixed workloads shared by the benchmarks.

use mixed_turan::constructions::{bk_matrix, family_for_matrix};
use mixed_turan::named::{arrow_clique, g4};
use mixed_turan::{MixedAdjacencyMatrix, MixedGraph};

/// Templates whose ratio minimum is benchmarked, by name.
pub fn ratio_templates() -> Vec<(&'static str, MixedAdjacencyMatrix)> {
    vec![("g4", g4()), ("b1", bk_matrix(1)), ("b2", bk_matrix(2)), ("b3", bk_matrix(3))]
}

/// Families pushed through the whole theta pipeline.
pub fn families() -> Vec<(&'static str, Vec<MixedGraph>)> {
    vec![
        ("arrow_k3_blowup", vec![arrow_clique(3).blowup(2).expect("small blowup")]),
        ("b1_family", family_for_matrix(&bk_matrix(1), true).expect("B_1 is complete type")),
        ("arrow_k5_candidates", vec![arrow_clique(5)]),
    ]
}
