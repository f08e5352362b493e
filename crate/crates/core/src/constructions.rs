//! Explicit extremal constructions, the `B_k` templates with their forbidden
//! families, and an exhaustive small-`n` oracle.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{embeds_through_pair, is_subgraph, MixedGraph, Relation};
use crate::matrix::MixedAdjacencyMatrix;
use crate::numeric::{binomial2, fmt_rat};
use crate::simplex::{is_condensed, optimal_vector};

/// `M(x, n)`: a clique on `⌊nx⌋` vertices with every edge to the remaining
/// independent vertices directed away from the clique.
pub fn m_graph(x: &BigRational, n: usize) -> Result<MixedGraph> {
    if x <= &BigRational::zero() || x >= &BigRational::one() {
        return Err(Error::Degenerate(format!("x = {} must lie in (0, 1)", fmt_rat(x))));
    }
    if n < 2 {
        return Err(Error::Degenerate("M(x, n) needs n >= 2".into()));
    }
    let big_n = BigRational::from_integer(n.into());
    let k: usize = (x * big_n).floor().to_integer().try_into().unwrap();
    let mut g = MixedGraph::new(n);
    for u in 0..k {
        for v in u + 1..n {
            g.set_relation(u, v, if v < k { Relation::Undirected } else { Relation::Out });
        }
    }
    Ok(g)
}

fn balanced_parts(n: usize, r: usize) -> Vec<usize> {
    (0..n).map(|v| v % r).collect()
}

/// Turán graph `T(n, r)` and its edge count `t(n, r)`.
pub fn turan(n: usize, r: usize) -> Result<(MixedGraph, usize)> {
    if r == 0 || n < r {
        return Err(Error::Degenerate(format!("Turán graph needs n >= r >= 1, got n = {n}, r = {r}")));
    }
    let part = balanced_parts(n, r);
    let mut g = MixedGraph::new(n);
    for (u, v) in (0..n).tuple_combinations() {
        if part[u] != part[v] {
            g.set_relation(u, v, Relation::Undirected);
        }
    }
    let count = g.edge_count();
    Ok((g, count))
}

/// `T(n, r)` with every edge directed from the lower-indexed part to the higher.
pub fn directed_turan(n: usize, r: usize) -> Result<MixedGraph> {
    let (g, _) = turan(n, r)?;
    let part = balanced_parts(n, r);
    let mut d = MixedGraph::new(n);
    for (u, v, _) in g.edges() {
        let (a, b) = if part[u] < part[v] { (u, v) } else { (v, u) };
        d.set_relation(a, b, Relation::Out);
    }
    Ok(d)
}

/// Integer part sizes of a blowup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupVector {
    pub parts: Vec<usize>,
}

impl BlowupVector {
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// `w_ρ(A⟦x⟧)` computed from the part sizes alone.
pub fn blowup_weight(a: &MixedAdjacencyMatrix, rho: &BigRational, x: &[usize]) -> BigRational {
    let mut w = BigRational::zero();
    for i in 0..a.size() {
        if a.is_clique_part(i) {
            w += BigRational::from_integer(binomial2(x[i]).into());
        }
        for j in i + 1..a.size() {
            let pairs = BigRational::from_integer((x[i] * x[j]).into());
            match a.relation(i, j) {
                Relation::None => {}
                Relation::Undirected => w += pairs,
                Relation::Out | Relation::In => w += pairs * rho,
            }
        }
    }
    w
}

/// A heaviest blowup of the condensed `a` on `n` vertices: round `n` times
/// the optimal vector, then apply improving unit transfers between parts
/// until none is left.
pub fn maximal_matrix_graph(
    a: &MixedAdjacencyMatrix,
    rho: &BigRational,
    n: usize,
) -> Result<(MixedGraph, BlowupVector)> {
    if !is_condensed(a, rho) {
        return Err(Error::NotCondensed(fmt_rat(rho)));
    }
    let y = optimal_vector(a, rho)?;
    let y = y.as_rational().expect("rational rho gives a rational vector");
    let r = a.size();
    let big_n = BigRational::from_integer(n.into());
    let scaled: Vec<BigRational> = y.iter().map(|v| v * &big_n).collect();
    let mut x: Vec<usize> = scaled
        .iter()
        .map(|v| v.floor().to_integer().try_into().unwrap())
        .collect();
    let short = n - x.iter().sum::<usize>();
    let by_fraction: Vec<usize> = (0..r)
        .sorted_by(|&i, &j| {
            let fi = &scaled[i] - scaled[i].floor();
            let fj = &scaled[j] - scaled[j].floor();
            fj.cmp(&fi).then(i.cmp(&j))
        })
        .collect();
    for &i in by_fraction.iter().take(short) {
        x[i] += 1;
    }
    let mut w = blowup_weight(a, rho, &x);
    loop {
        let mut best: Option<(BigRational, usize, usize)> = None;
        for i in 0..r {
            if x[i] == 0 {
                continue;
            }
            for j in 0..r {
                if i == j {
                    continue;
                }
                x[i] -= 1;
                x[j] += 1;
                let cand = blowup_weight(a, rho, &x);
                x[i] += 1;
                x[j] -= 1;
                if cand > w && best.as_ref().is_none_or(|(bw, _, _)| &cand > bw) {
                    best = Some((cand, i, j));
                }
            }
        }
        match best {
            Some((cand, i, j)) => {
                x[i] -= 1;
                x[j] += 1;
                w = cand;
            }
            None => break,
        }
    }
    let g = a.matrix_graph(&x)?;
    Ok((g, BlowupVector { parts: x }))
}

/// `deg_ρ(v)`: undirected degree plus `ρ` times directed degree.
pub fn weighted_degrees(g: &MixedGraph, rho: &BigRational) -> Vec<BigRational> {
    (0..g.vertex_count())
        .map(|v| {
            g.neighbors(v)
                .into_iter()
                .map(|w| match g.relation(v, w) {
                    Relation::Undirected => BigRational::one(),
                    _ => rho.clone(),
                })
                .sum()
        })
        .collect()
}

/// Largest difference between two weighted degrees.
pub fn weighted_degree_spread(g: &MixedGraph, rho: &BigRational) -> BigRational {
    let d = weighted_degrees(g, rho);
    match (d.iter().min(), d.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => BigRational::zero(),
    }
}

/// Result of an exhaustive scan over labeled graphs.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub n: usize,
    pub rho: BigRational,
    /// Maximum of `α + ρβ` over family-free graphs on `n` vertices.
    pub best_value: BigRational,
    pub witness: MixedGraph,
    /// Search-tree nodes visited.
    pub graphs_scanned: u64,
}

pub const ORACLE_LIMIT: usize = 6;

/// Exact maximum of `α + ρβ` over all graphs on `n` labeled vertices that
/// contain no member of `family`.
///
/// Pairs are decided one at a time; a branch is cut as soon as the newest
/// edge completes a forbidden copy, or when even making every open pair
/// directed could not beat the incumbent. Swapping vertices 0 and 1 lets the
/// first pair skip the `1 -> 0` state.
pub fn brute_force_max(family: &[MixedGraph], rho: &BigRational, n: usize) -> Result<OracleReport> {
    if n > ORACLE_LIMIT {
        return Err(Error::CapExceeded {
            what: "oracle vertex count",
            size: n,
            limit: ORACLE_LIMIT,
        });
    }
    if n < 2 {
        return Err(Error::Degenerate("oracle needs at least 2 vertices".into()));
    }
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let empty = MixedGraph::new(n);
    if family.iter().any(|f| is_subgraph(f, &empty)) {
        return Err(Error::Degenerate(format!(
            "every graph on {n} vertices contains a forbidden member"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let step = if rho > &BigRational::one() { rho.clone() } else { BigRational::one() };

    struct Search<'a> {
        family: &'a [MixedGraph],
        pairs: &'a [(usize, usize)],
        rho: &'a BigRational,
        step: BigRational,
        best: BigRational,
        witness: MixedGraph,
        scanned: u64,
    }

    impl Search<'_> {
        fn go(&mut self, g: &mut MixedGraph, k: usize, weight: BigRational) {
            self.scanned += 1;
            if weight > self.best {
                self.best = weight.clone();
                self.witness = g.clone();
            }
            if k == self.pairs.len() {
                return;
            }
            let remaining = BigRational::from_integer((self.pairs.len() - k).into());
            if &weight + &self.step * remaining <= self.best {
                return;
            }
            let (a, b) = self.pairs[k];
            let states: &[Relation] = if k == 0 {
                &[Relation::Out, Relation::Undirected, Relation::None]
            } else {
                &[Relation::Out, Relation::In, Relation::Undirected, Relation::None]
            };
            for &st in states {
                if st == Relation::None {
                    self.go(g, k + 1, weight.clone());
                    continue;
                }
                g.set_relation(a, b, st);
                let free = !self.family.iter().any(|f| embeds_through_pair(f, g, a, b));
                if free {
                    let add = if st == Relation::Undirected {
                        BigRational::one()
                    } else {
                        self.rho.clone()
                    };
                    self.go(g, k + 1, &weight + add);
                }
                g.set_relation(a, b, Relation::None);
            }
        }
    }

    let mut s = Search {
        family,
        pairs: &pairs,
        rho,
        step,
        best: BigRational::zero(),
        witness: empty.clone(),
        scanned: 0,
    };
    let mut g = empty;
    s.go(&mut g, 0, BigRational::zero());
    let total = BigRational::from_integer(binomial2(n).into());
    Ok(OracleReport {
        n,
        rho: rho.clone(),
        best_value: s.best / total,
        witness: s.witness,
        graphs_scanned: s.scanned,
    })
}

/// `B_k`, of size `2k + 1`. Starting from `([0], [0])`, each step prepends
/// parts `s` and `m`. Part `s` points at everything after it, while `m` is
/// joined undirectedly to every old part.
pub fn bk_matrix(k: usize) -> MixedAdjacencyMatrix {
    let mut b = MixedAdjacencyMatrix::zero(1);
    for _ in 0..k {
        let old = b.size();
        let mut next = MixedAdjacencyMatrix::zero(old + 2);
        for i in 0..old {
            for j in i + 1..old {
                next.set_relation(i + 2, j + 2, b.relation(i, j));
            }
            next.set_relation(0, i + 2, Relation::Out);
            next.set_relation(1, i + 2, Relation::Undirected);
        }
        next.set_relation(0, 1, Relation::Out);
        b = next;
    }
    b
}

/// `B_k` with its first row and column deleted.
pub fn bk_matrix_odd(k: usize) -> Result<MixedAdjacencyMatrix> {
    if k == 0 {
        return Err(Error::Degenerate("B_0 has no row to delete".into()));
    }
    let keep: Vec<usize> = (1..2 * k + 1).collect();
    bk_matrix(k).principal_submatrix(&keep)
}

pub const FAMILY_LIMIT: usize = 4;

/// Every labeled mixed graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = MixedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let total = 4usize.pow(pairs.len() as u32);
    (0..total).map(move |mut code| {
        let mut g = MixedGraph::new(n);
        for &(a, b) in &pairs {
            let st = match code % 4 {
                0 => Relation::None,
                1 => Relation::Undirected,
                2 => Relation::Out,
                _ => Relation::In,
            };
            code /= 4;
            g.set_relation(a, b, st);
        }
        g
    })
}

/// Graphs one deletion or one forgotten direction away from `g`.
fn reductions(g: &MixedGraph) -> Vec<MixedGraph> {
    let mut out = vec![];
    for v in 0..g.vertex_count() {
        out.push(g.without_vertex(v));
    }
    for (u, v, _) in g.edges() {
        out.push(g.without_edge(u, v));
        if g.relation(u, v) != Relation::Undirected {
            let mut h = g.clone();
            h.set_relation(u, v, Relation::Undirected);
            out.push(h);
        }
    }
    out
}

/// The forbidden family of a template: all graphs on at most `size + 1`
/// vertices (up to isomorphism) that embed in no blowup of `b`. With
/// `minimal`, only members all of whose one-step reductions embed are kept.
pub fn family_for_matrix(b: &MixedAdjacencyMatrix, minimal: bool) -> Result<Vec<MixedGraph>> {
    if !b.is_complete_type() || !b.has_directed() {
        return Err(Error::InvalidMatrix(
            "family construction needs a complete-type template with a directed pair".into(),
        ));
    }
    let r = b.size();
    if r > FAMILY_LIMIT {
        return Err(Error::CapExceeded {
            what: "family template size",
            size: r,
            limit: FAMILY_LIMIT,
        });
    }
    let mut seen = BTreeSet::new();
    let mut family = vec![];
    for n in 1..=r + 1 {
        for g in all_graphs(n) {
            if b.is_free_of(&g) {
                let code = g.canonical_code()?;
                if seen.insert(code) {
                    family.push(g);
                }
            }
        }
    }
    if minimal {
        family.retain(|g| reductions(g).iter().all(|h| !b.is_free_of(h)));
    }
    Ok(family)
}

/// Whether `family` forbids exactly the graphs on at most `size + 1`
/// vertices that embed in no blowup of `b`.
pub fn family_is_equivalent(b: &MixedAdjacencyMatrix, family: &[MixedGraph]) -> bool {
    (1..=b.size() + 1).all(|n| {
        all_graphs(n).all(|g| {
            let forbidden = family.iter().any(|f| is_subgraph(f, &g));
            forbidden == b.is_free_of(&g)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::count_embeddings;
    use crate::named::*;
    use crate::numeric::{int, rat};
    use crate::simplex::g_rho;
    use proptest::prelude::*;

    #[test]
    fn m_graph_counts() {
        let g = m_graph(&rat(1, 2), 4).unwrap();
        assert_eq!(g.undirected_count(), 1);
        assert_eq!(g.directed_count(), 4);
        let d = g.densities().unwrap();
        assert_eq!((d.alpha.clone(), d.beta.clone()), (rat(1, 6), rat(2, 3)));
        assert_eq!(d.weighted(&int(2)), int(9));
        assert_eq!(count_embeddings(&directed_edge(), &g), 4);
        assert!(m_graph(&int(1), 4).is_err());
        let heads = m_graph(&rat(1, 3), 9).unwrap().heads();
        let big = m_graph(&rat(1, 3), 9).unwrap();
        assert!(heads.iter().tuple_combinations().all(|(&a, &b)| !big.relation(a, b).is_edge()));
        let big = m_graph(&rat(1, 2), 400).unwrap().densities().unwrap();
        assert!((crate::numeric::to_f64(&big.alpha) - 0.25).abs() < 0.01);
        assert!((crate::numeric::to_f64(&big.beta) - 0.5).abs() < 0.01);
    }

    #[test]
    fn turan_counts() {
        assert_eq!(turan(4, 2).unwrap().1, 4);
        assert_eq!(turan(5, 2).unwrap().1, 6);
        assert_eq!(turan(6, 3).unwrap().1, 12);
        assert!(turan(2, 3).is_err());
        let d = directed_turan(6, 3).unwrap();
        assert_eq!(d.directed_count(), 12);
        assert!(!is_subgraph(&arrow_clique(4), &d));
    }

    #[test]
    fn maximal_graph_small() {
        let (g, x) = maximal_matrix_graph(&g1(), &int(2), 5).unwrap();
        assert_eq!(x.total(), 5);
        assert_eq!(g.weighted_count(&int(2)), int(12));
        let k = MixedAdjacencyMatrix::clique_template();
        let (g, _) = maximal_matrix_graph(&k, &rat(3, 2), 6).unwrap();
        assert_eq!(g.undirected_count(), 15);
        assert!(maximal_matrix_graph(&g2(), &int(2), 5).is_err());
    }

    fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
        if r == 1 {
            return vec![vec![n]];
        }
        (0..=n)
            .flat_map(|first| {
                compositions(n - first, r - 1).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }

    #[test]
    fn maximal_graph_matches_exhaustive_compositions() {
        for (m, rho) in [(g4(), rat(3, 2)), (g1(), rat(7, 4)), (transitive_tournament(3), rat(5, 4))] {
            let c = crate::simplex::condense(&m, &rho);
            for n in 2..=12 {
                let (_, x) = maximal_matrix_graph(&c, &rho, n).unwrap();
                let best = compositions(n, c.size())
                    .iter()
                    .map(|x| blowup_weight(&c, &rho, x))
                    .max()
                    .unwrap();
                assert_eq!(blowup_weight(&c, &rho, &x.parts), best, "n = {n}");
            }
        }
    }

    #[test]
    fn oracle_spot_values() {
        let f = [arrow_clique(3)];
        let r4 = brute_force_max(&f, &int(2), 4).unwrap();
        assert_eq!(r4.best_value, rat(4, 3));
        assert!(!is_subgraph(&f[0], &r4.witness));
        assert_eq!(brute_force_max(&f, &int(2), 3).unwrap().best_value, rat(4, 3));
        assert_eq!(brute_force_max(&[clique(3)], &int(2), 4).unwrap().best_value, rat(4, 3));
        assert!(matches!(brute_force_max(&f, &int(2), 7), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn oracle_undirected_edge_family() {
        let edge = MixedGraph::from_edges(2, &[(0, 1)], &[]).unwrap();
        let r = brute_force_max(&[edge], &int(2), 3).unwrap();
        assert_eq!(r.best_value, int(0));
    }

    #[test]
    fn bk_construction() {
        assert_eq!(bk_matrix(0), MixedAdjacencyMatrix::zero(1));
        let b1 = bk_matrix(1);
        assert_eq!(b1.relation(0, 1), Relation::Out);
        assert_eq!(b1.relation(0, 2), Relation::Out);
        assert_eq!(b1.relation(1, 2), Relation::Undirected);
        for k in 0..=5 {
            let b = bk_matrix(k);
            assert_eq!(b.size(), 2 * k + 1);
            assert!(k == 0 || b.is_complete_type());
        }
        assert_eq!(bk_matrix_odd(2).unwrap().size(), 4);
    }

    #[test]
    fn odd_variant_is_one_cone_over_the_previous_level() {
        // An apex joined undirectedly to everything turns g into 1 / (2 - g)
        // while g <= 1 and leaves it alone above, so the odd matrix has the
        // ratio minimum of the level below.
        for k in 1..=3 {
            let odd = bk_matrix_odd(k).unwrap();
            let prev = bk_matrix(k - 1);
            for num in [1, 3, 7, 9] {
                let rho = int(1) + rat(num, 10);
                let g = g_rho(&prev, &rho).value;
                let want = if g <= int(1) { int(1) / (int(2) - &g) } else { g };
                assert_eq!(g_rho(&odd, &rho).value, want);
            }
            let a = crate::simplex::ratio_min(&odd).unwrap();
            let b = crate::simplex::ratio_min(&prev).unwrap();
            match (a.finite_value(), b.finite_value()) {
                (None, None) => assert_eq!(k, 1),
                (Some(x), Some(y)) => assert_eq!(x.cmp_algebraic(y), std::cmp::Ordering::Equal),
                _ => panic!("odd and previous level disagree on finiteness at k = {k}"),
            }
        }
    }

    #[test]
    fn family_for_g1() {
        let fam = family_for_matrix(&g1(), false).unwrap();
        let contains = |h: &MixedGraph| fam.iter().any(|f| is_subgraph(f, h) && is_subgraph(h, f));
        assert!(contains(&clique(3)));
        assert!(contains(&directed_path2()));
        assert!(contains(&arrow_clique(3)));
        let minimal = family_for_matrix(&g1(), true).unwrap();
        assert!(minimal.len() < fam.len());
        assert!(family_is_equivalent(&g1(), &minimal));
        assert!(family_is_equivalent(&g1(), &fam));
        assert!(family_for_matrix(&example_template(), true).is_err());
        assert!(family_for_matrix(&MixedAdjacencyMatrix::zero(2), true).is_err());
    }

    #[test]
    fn family_for_b1_equivalence() {
        let b1 = bk_matrix(1);
        let minimal = family_for_matrix(&b1, true).unwrap();
        assert!(family_is_equivalent(&b1, &minimal));
        assert!(minimal.iter().all(|f| b1.is_free_of(f)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn g_recursion_and_extension(k in 0usize..3, num in 1i64..=1000) {
            let b = bk_matrix(k);
            let next = bk_matrix(k + 1);
            // ρ ranges over (1, min ratio of B_k], or (1, 2] for k = 0.
            let top = match crate::simplex::ratio_min(&b).unwrap().finite_value() {
                Some(v) => v.interval().0.clone(),
                None => int(2),
            };
            let rho = int(1) + (top - int(1)) * rat(num, 1000);
            let g = g_rho(&b, &rho).value;
            let two = int(2);
            let expect = &rho * &rho * (&two - &g) / (&two * &rho * (&two - &g) - int(1));
            let gn = g_rho(&next, &rho);
            prop_assert_eq!(&gn.value, &expect);
            let den = int(4) * &rho - &two * &rho * &g - int(1);
            let u = (&rho * (&two - &g) - int(1)) / &den;
            let v = &rho * (int(1) - &g) / &den;
            let y = g_rho(&b, &rho).argmax;
            let scale = int(1) - &u - &v;
            let mut ext = vec![u, v];
            ext.extend(y.iter().map(|c| c * &scale));
            prop_assert_eq!(next.quadratic(&ext, &rho), gn.value.clone());
            prop_assert_eq!(ext, gn.argmax);
        }
    }
}
