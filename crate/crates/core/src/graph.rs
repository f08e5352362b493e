//! Mixed graphs: vertices joined by undirected or directed edges, at most one
//! edge per pair and no loops.
//!
//! Containment follows the direction-forgetting rule: an undirected edge of a
//! pattern may land on any edge of the host, while a directed pattern edge
//! must land on a host edge with the same orientation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::numeric::{binomial2, rat};

/// The kind of the edge on an unordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Undirected,
    /// Directed edge; `head` is one of the two endpoints of the pair.
    Directed { head: usize },
}

/// How the pair `(u, v)` looks from `u`'s side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    None,
    Undirected,
    /// `u -> v`.
    Out,
    /// `v -> u`.
    In,
}

impl Relation {
    pub fn is_edge(self) -> bool {
        self != Relation::None
    }

    pub fn reversed(self) -> Relation {
        match self {
            Relation::Out => Relation::In,
            Relation::In => Relation::Out,
            other => other,
        }
    }

    /// Whether a pattern pair with relation `self` may be realised by a host
    /// pair with relation `host`.
    pub fn realised_by(self, host: Relation) -> bool {
        match self {
            Relation::None => true,
            Relation::Undirected => host.is_edge(),
            Relation::Out | Relation::In => self == host,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), EdgeKind>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl MixedGraph {
    pub fn new(vertex_count: usize) -> Self {
        MixedGraph {
            n: vertex_count,
            edges: BTreeMap::new(),
        }
    }

    /// Builds a graph from undirected pairs and `(tail, head)` pairs.
    pub fn from_edges(
        vertex_count: usize,
        undirected: &[(usize, usize)],
        directed: &[(usize, usize)],
    ) -> Result<Self> {
        let mut g = MixedGraph::new(vertex_count);
        for &(u, v) in undirected {
            g.add_undirected(u, v)?;
        }
        for &(t, h) in directed {
            g.add_directed(t, h)?;
        }
        Ok(g)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop on vertex {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge {u}-{v} out of range for {} vertices",
                self.n
            )));
        }
        if self.edges.contains_key(&key(u, v)) {
            return Err(Error::InvalidGraph(format!(
                "more than one edge on pair {u}-{v}"
            )));
        }
        Ok(())
    }

    pub fn add_undirected(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.edges.insert(key(u, v), EdgeKind::Undirected);
        Ok(())
    }

    pub fn add_directed(&mut self, tail: usize, head: usize) -> Result<()> {
        self.check_pair(tail, head)?;
        self.edges
            .insert(key(tail, head), EdgeKind::Directed { head });
        Ok(())
    }

    /// Sets the relation of `(u, v)` seen from `u`, replacing whatever was there.
    pub fn set_relation(&mut self, u: usize, v: usize, rel: Relation) {
        assert!(u != v && u < self.n && v < self.n, "pair out of range");
        let k = key(u, v);
        match rel {
            Relation::None => {
                self.edges.remove(&k);
            }
            Relation::Undirected => {
                self.edges.insert(k, EdgeKind::Undirected);
            }
            Relation::Out => {
                self.edges.insert(k, EdgeKind::Directed { head: v });
            }
            Relation::In => {
                self.edges.insert(k, EdgeKind::Directed { head: u });
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn undirected_count(&self) -> usize {
        self.edges
            .values()
            .filter(|k| **k == EdgeKind::Undirected)
            .count()
    }

    pub fn directed_count(&self) -> usize {
        self.edge_count() - self.undirected_count()
    }

    /// Edges in sorted pair order as `(u, v, kind)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeKind)> + '_ {
        self.edges.iter().map(|(&(u, v), &k)| (u, v, k))
    }

    /// Directed edges as `(tail, head)`.
    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        self.edges()
            .filter_map(|(u, v, k)| match k {
                EdgeKind::Directed { head } => Some(if head == v { (u, v) } else { (v, u) }),
                EdgeKind::Undirected => None,
            })
            .collect()
    }

    pub fn relation(&self, u: usize, v: usize) -> Relation {
        match self.edges.get(&key(u, v)) {
            None => Relation::None,
            Some(EdgeKind::Undirected) => Relation::Undirected,
            Some(EdgeKind::Directed { head }) => {
                if *head == v {
                    Relation::Out
                } else {
                    Relation::In
                }
            }
        }
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&u| u != v && self.relation(v, u).is_edge())
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn underlying(&self) -> MixedGraph {
        MixedGraph {
            n: self.n,
            edges: self
                .edges
                .keys()
                .map(|&k| (k, EdgeKind::Undirected))
                .collect(),
        }
    }

    pub fn densities(&self) -> Result<Densities> {
        if self.n < 2 {
            return Err(Error::Degenerate(format!(
                "densities need at least 2 vertices, got {}",
                self.n
            )));
        }
        let pairs = binomial2(self.n);
        Ok(Densities {
            undirected_edges: self.undirected_count(),
            directed_edges: self.directed_count(),
            alpha: rat(self.undirected_count() as i64, pairs as i64),
            beta: rat(self.directed_count() as i64, pairs as i64),
        })
    }

    /// `e_u + rho * e_d`.
    pub fn weighted_count(&self, rho: &BigRational) -> BigRational {
        BigRational::from_integer(self.undirected_count().into())
            + rho * BigRational::from_integer(self.directed_count().into())
    }

    /// Balanced `t`-blowup: vertex `v` becomes `v*t .. v*t + t`.
    pub fn blowup(&self, t: usize) -> Result<MixedGraph> {
        if t == 0 {
            return Err(Error::Degenerate("blowup factor must be positive".into()));
        }
        let mut g = MixedGraph::new(self.n * t);
        for (u, v, k) in self.edges() {
            for (a, b) in (0..t).cartesian_product(0..t) {
                let (x, y) = (u * t + a, v * t + b);
                let kind = match k {
                    EdgeKind::Undirected => EdgeKind::Undirected,
                    EdgeKind::Directed { head } => EdgeKind::Directed {
                        head: if head == v { y } else { x },
                    },
                };
                g.edges.insert(key(x, y), kind);
            }
        }
        Ok(g)
    }

    pub fn induced(&self, keep: &[usize]) -> MixedGraph {
        let mut g = MixedGraph::new(keep.len());
        for (i, j) in (0..keep.len()).tuple_combinations() {
            g.set_relation(i, j, self.relation(keep[i], keep[j]));
        }
        g
    }

    pub fn without_vertex(&self, v: usize) -> MixedGraph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> MixedGraph {
        let mut g = self.clone();
        g.edges.remove(&key(u, v));
        g
    }

    pub fn heads(&self) -> BTreeSet<usize> {
        self.directed_edges().into_iter().map(|(_, h)| h).collect()
    }

    pub fn tails(&self) -> BTreeSet<usize> {
        self.directed_edges().into_iter().map(|(t, _)| t).collect()
    }

    pub fn role_partition(&self) -> RolePartition {
        let heads = self.heads();
        let tails = self.tails();
        let adjacent_within = |set: &BTreeSet<usize>| {
            set.iter()
                .tuple_combinations()
                .any(|(&a, &b)| self.relation(a, b).is_edge())
        };
        let collapsible = !adjacent_within(&heads) && !adjacent_within(&tails);
        let v0 = (0..self.n)
            .filter(|v| !heads.contains(v) && !tails.contains(v))
            .collect();
        RolePartition {
            v0,
            vh: heads,
            vt: tails,
            collapsible,
        }
    }

    /// Head-tail collapse. Returns `None` for the collapsed graph when two
    /// heads or two tails are adjacent.
    pub fn collapse(&self) -> Collapse {
        let partition = self.role_partition();
        let collapsed = if !partition.collapsible {
            None
        } else if self.directed_count() == 0 {
            Some(self.clone())
        } else {
            // V0 keeps its order, then the tail class, then the head class.
            let v0: Vec<usize> = partition.v0.iter().copied().collect();
            let t = v0.len();
            let h = t + 1;
            let class = |v: usize| -> usize {
                if partition.vh.contains(&v) {
                    h
                } else if partition.vt.contains(&v) {
                    t
                } else {
                    v0.binary_search(&v).expect("vertex in V0")
                }
            };
            let mut g = MixedGraph::new(v0.len() + 2);
            for (u, v, k) in self.edges() {
                let (a, b) = (class(u), class(v));
                debug_assert!(a != b, "role classes are independent");
                match k {
                    EdgeKind::Directed { .. } => {
                        g.edges.insert(key(t, h), EdgeKind::Directed { head: h });
                    }
                    EdgeKind::Undirected => {
                        // A directed t->h edge wins over a parallel undirected one.
                        g.edges.entry(key(a, b)).or_insert(EdgeKind::Undirected);
                    }
                }
            }
            Some(g)
        };
        Collapse {
            partition,
            collapsed,
        }
    }

    pub fn is_collapsible(&self) -> bool {
        self.role_partition().collapsible
    }

    /// Proper 2-colouring in which every head vertex receives the same
    /// colour; exactly the graphs contained in some directed `K_{t,t}`.
    pub fn admits_head_monochromatic_2_coloring(&self) -> bool {
        self.head_side_coloring().is_some()
    }

    /// Colouring witnessing [`Self::admits_head_monochromatic_2_coloring`];
    /// heads get colour 1.
    pub fn head_side_coloring(&self) -> Option<Vec<u8>> {
        let heads = self.heads();
        let mut color: Vec<Option<u8>> = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            let mut component = vec![start];
            color[start] = Some(0);
            let mut i = 0;
            while i < component.len() {
                let v = component[i];
                i += 1;
                for w in self.neighbors(v) {
                    let want = 1 - color[v].unwrap();
                    match color[w] {
                        None => {
                            color[w] = Some(want);
                            component.push(w);
                        }
                        Some(c) if c != want => return None,
                        Some(_) => {}
                    }
                }
            }
            let head_colors: BTreeSet<u8> = component
                .iter()
                .filter(|v| heads.contains(v))
                .map(|&v| color[v].unwrap())
                .collect();
            match head_colors.len() {
                0 => {}
                1 => {
                    if head_colors.contains(&0) {
                        for &v in &component {
                            color[v] = color[v].map(|c| 1 - c);
                        }
                    }
                }
                _ => return None,
            }
        }
        Some(color.into_iter().map(|c| c.unwrap_or(0)).collect())
    }

    /// Exact chromatic number of the underlying undirected graph.
    pub fn chromatic_number(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        if self.edges.is_empty() {
            return 1;
        }
        let adj: Vec<Vec<bool>> = (0..self.n)
            .map(|u| (0..self.n).map(|v| u != v && self.relation(u, v).is_edge()).collect())
            .collect();
        let lower = greedy_clique(&adj);
        let upper = greedy_coloring(&adj);
        (lower..upper)
            .find(|&k| k_colorable(&adj, k))
            .unwrap_or(upper)
    }

    /// Lexicographically least relation code over all vertex relabelings;
    /// equal codes mean isomorphic graphs. Brute force, so only for small `n`.
    pub fn canonical_code(&self) -> Result<Vec<u8>> {
        const LIMIT: usize = 9;
        if self.n > LIMIT {
            return Err(Error::CapExceeded {
                what: "graph canonical form",
                size: self.n,
                limit: LIMIT,
            });
        }
        let code = |perm: &[usize]| -> Vec<u8> {
            let mut c = Vec::with_capacity(1 + self.n * self.n / 2);
            c.push(self.n as u8);
            for (i, j) in (0..self.n).tuple_combinations() {
                c.push(match self.relation(perm[i], perm[j]) {
                    Relation::None => 0,
                    Relation::Undirected => 1,
                    Relation::Out => 2,
                    Relation::In => 3,
                });
            }
            c
        };
        Ok((0..self.n)
            .permutations(self.n)
            .map(|p| code(&p))
            .min()
            .unwrap_or_else(|| vec![0]))
    }
}

impl fmt::Display for MixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MixedGraph({} vertices;", self.n)?;
        for (u, v, k) in self.edges() {
            match k {
                EdgeKind::Undirected => write!(f, " {u}-{v}")?,
                EdgeKind::Directed { head } => {
                    let tail = if head == v { u } else { v };
                    write!(f, " {tail}->{head}")?
                }
            }
        }
        write!(f, ")")
    }
}

fn greedy_clique(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    let mut best = 1;
    for start in 0..n {
        let mut clique = vec![start];
        let mut order: Vec<usize> = (0..n).filter(|&v| v != start).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(adj[v].iter().filter(|&&b| b).count()));
        for v in order {
            if clique.iter().all(|&c| adj[c][v]) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

fn greedy_coloring(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    let mut color = vec![usize::MAX; n];
    for v in 0..n {
        let used: BTreeSet<usize> = (0..n).filter(|&u| adj[v][u]).map(|u| color[u]).collect();
        color[v] = (0..).find(|c| !used.contains(c)).unwrap();
    }
    color.iter().max().map_or(0, |m| m + 1)
}

fn k_colorable(adj: &[Vec<bool>], k: usize) -> bool {
    let n = adj.len();
    // Static order: highest degree first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].iter().filter(|&&b| b).count()), v));
    let mut color = vec![usize::MAX; n];

    fn go(adj: &[Vec<bool>], order: &[usize], color: &mut [usize], i: usize, k: usize, used: usize) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        // Symmetry break: a fresh colour is only ever the next unused one.
        for c in 0..k.min(used + 1) {
            if (0..adj.len()).all(|u| !adj[v][u] || color[u] != c) {
                color[v] = c;
                if go(adj, order, color, i + 1, k, used.max(c + 1)) {
                    return true;
                }
                color[v] = usize::MAX;
            }
        }
        false
    }
    go(adj, &order, &mut color, 0, k, 0)
}

/// Densities of a mixed graph together with the raw counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Densities {
    pub undirected_edges: usize,
    pub directed_edges: usize,
    pub alpha: BigRational,
    pub beta: BigRational,
}

impl Densities {
    /// Weighted edge count `e_u + rho * e_d`.
    pub fn weighted(&self, rho: &BigRational) -> BigRational {
        BigRational::from_integer(self.undirected_edges.into())
            + rho * BigRational::from_integer(self.directed_edges.into())
    }

    /// `alpha + rho * beta`.
    pub fn weighted_density(&self, rho: &BigRational) -> BigRational {
        &self.alpha + rho * &self.beta
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RolePartition {
    pub v0: BTreeSet<usize>,
    pub vh: BTreeSet<usize>,
    pub vt: BTreeSet<usize>,
    pub collapsible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collapse {
    pub partition: RolePartition,
    pub collapsed: Option<MixedGraph>,
}

/// Backtracking search for injective maps from `pattern` into `host`.
struct Matcher<'a> {
    pattern: &'a MixedGraph,
    host: &'a MixedGraph,
    prel: Vec<Vec<Relation>>,
    hrel: Vec<Vec<Relation>>,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

const UNMAPPED: usize = usize::MAX;

fn relation_table(g: &MixedGraph) -> Vec<Vec<Relation>> {
    let mut t = vec![vec![Relation::None; g.n]; g.n];
    for (u, v, _) in g.edges() {
        let r = g.relation(u, v);
        t[u][v] = r;
        t[v][u] = r.reversed();
    }
    t
}

#[derive(Clone, Copy, Default)]
struct DegreeProfile {
    total: usize,
    out: usize,
    inn: usize,
}

fn profiles(rel: &[Vec<Relation>]) -> Vec<DegreeProfile> {
    rel.iter()
        .map(|row| {
            let mut p = DegreeProfile::default();
            for r in row {
                match r {
                    Relation::None => {}
                    Relation::Undirected => p.total += 1,
                    Relation::Out => {
                        p.total += 1;
                        p.out += 1
                    }
                    Relation::In => {
                        p.total += 1;
                        p.inn += 1
                    }
                }
            }
            p
        })
        .collect()
}

impl<'a> Matcher<'a> {
    fn new(pattern: &'a MixedGraph, host: &'a MixedGraph, fixed: &[(usize, usize)]) -> Self {
        let prel = relation_table(pattern);
        let hrel = relation_table(host);
        let pdeg = profiles(&prel);
        // Fixed vertices first, then greedily the vertex with most placed
        // neighbours (ties: higher degree, lower index).
        let mut order: Vec<usize> = fixed.iter().map(|&(p, _)| p).collect();
        let mut placed = vec![false; pattern.n];
        for &p in &order {
            placed[p] = true;
        }
        while order.len() < pattern.n {
            let next = (0..pattern.n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let back = order.iter().filter(|&&w| prel[v][w].is_edge()).count();
                    (back, pdeg[v].total, std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let mut m = Matcher {
            pattern,
            host,
            prel,
            hrel,
            order,
            map: vec![UNMAPPED; pattern.n],
            used: vec![false; host.n],
        };
        for &(p, h) in fixed {
            m.map[p] = h;
            m.used[h] = true;
        }
        m
    }

    fn consistent(&self, p: usize, h: usize) -> bool {
        (0..self.pattern.n).all(|q| {
            let hq = self.map[q];
            hq == UNMAPPED || q == p || self.prel[p][q].realised_by(self.hrel[h][hq])
        })
    }

    /// Calls `visit` for every complete embedding; stops when it returns false.
    fn run(&mut self, start: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let pdeg = profiles(&self.prel);
        let hdeg = profiles(&self.hrel);
        // Fixed pairs must be consistent among themselves.
        for &p in &self.order[..start] {
            if !self.consistent(p, self.map[p]) {
                return;
            }
        }
        self.step(start, &pdeg, &hdeg, visit);
    }

    fn step(
        &mut self,
        depth: usize,
        pdeg: &[DegreeProfile],
        hdeg: &[DegreeProfile],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == self.order.len() {
            return visit(&self.map);
        }
        let p = self.order[depth];
        for h in 0..self.host.n {
            if self.used[h]
                || hdeg[h].total < pdeg[p].total
                || hdeg[h].out < pdeg[p].out
                || hdeg[h].inn < pdeg[p].inn
                || !self.consistent(p, h)
            {
                continue;
            }
            self.map[p] = h;
            self.used[h] = true;
            let go_on = self.step(depth + 1, pdeg, hdeg, visit);
            self.map[p] = UNMAPPED;
            self.used[h] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// An injective map witnessing `pattern ⊆ host`, if one exists.
pub fn find_embedding(pattern: &MixedGraph, host: &MixedGraph) -> Option<Vec<usize>> {
    if pattern.n > host.n {
        return None;
    }
    let mut found = None;
    Matcher::new(pattern, host, &[]).run(0, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

pub fn is_subgraph(pattern: &MixedGraph, host: &MixedGraph) -> bool {
    find_embedding(pattern, host).is_some()
}

/// Number of injective vertex maps realising `pattern` inside `host`.
pub fn count_embeddings(pattern: &MixedGraph, host: &MixedGraph) -> u64 {
    if pattern.n > host.n {
        return 0;
    }
    let mut count = 0u64;
    Matcher::new(pattern, host, &[]).run(0, &mut |_| {
        count += 1;
        true
    });
    count
}

/// Whether `pattern` embeds into `host` with some pattern edge landing on the
/// host pair `{a, b}`. Used for incremental freeness checks: if `host` minus
/// that pair was pattern-free, this is equivalent to containment.
pub fn embeds_through_pair(pattern: &MixedGraph, host: &MixedGraph, a: usize, b: usize) -> bool {
    if pattern.n > host.n || !host.relation(a, b).is_edge() {
        return false;
    }
    let host_rel = host.relation(a, b);
    for (u, v, _) in pattern.edges() {
        let prel = pattern.relation(u, v);
        for (x, y) in [(a, b), (b, a)] {
            let hr = if x == a { host_rel } else { host_rel.reversed() };
            if !prel.realised_by(hr) {
                continue;
            }
            let mut found = false;
            Matcher::new(pattern, host, &[(u, x), (v, y)]).run(2, &mut |_| {
                found = true;
                false
            });
            if found {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::*;
    use num_traits::Zero;

    #[test]
    fn underlying_forgets_directions() {
        let e = directed_edge();
        let u = e.underlying();
        assert_eq!(u.undirected_count(), 1);
        assert_eq!(u.directed_count(), 0);
        assert_eq!(clique(3).underlying(), clique(3));
        let k22 = directed_biclique(2);
        assert_eq!(k22.directed_count(), 4);
        assert_eq!(k22.underlying().undirected_count(), 4);
    }

    #[test]
    fn density_values() {
        let d = clique(4).densities().unwrap();
        assert_eq!(d.alpha, rat(1, 1));
        assert!(d.beta.is_zero());
        assert!(MixedGraph::new(1).densities().is_err());
    }

    #[test]
    fn subgraph_respects_direction_forgetting() {
        let und = MixedGraph::from_edges(2, &[(0, 1)], &[]).unwrap();
        assert!(is_subgraph(&und, &directed_edge()));
        assert!(!is_subgraph(&directed_edge(), &und));
        assert!(!is_subgraph(&arrow_clique(3), &directed_biclique(2)));
    }

    #[test]
    fn embedding_counts() {
        assert_eq!(count_embeddings(&clique(3), &clique(4)), 24);
        let k3 = arrow_clique(3);
        assert_eq!(count_embeddings(&k3, &k3), 1);
        assert_eq!(count_embeddings(&clique(5), &clique(4)), 0);
    }

    #[test]
    fn blowup_of_directed_edge_is_biclique() {
        let b = directed_edge().blowup(2).unwrap();
        assert_eq!(b.vertex_count(), 4);
        assert_eq!(b.directed_count(), 4);
        assert!(is_subgraph(&b, &directed_biclique(2)) && is_subgraph(&directed_biclique(2), &b));
        let k3 = clique(3).blowup(2).unwrap();
        assert_eq!((k3.vertex_count(), k3.undirected_count()), (6, 12));
        assert_eq!(arrow_clique(4).blowup(1).unwrap(), arrow_clique(4));
        assert!(clique(2).blowup(0).is_err());
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(clique(3).chromatic_number(), 3);
        assert_eq!(directed_biclique(2).chromatic_number(), 2);
        assert_eq!(arrow_clique(4).chromatic_number(), 4);
        assert_eq!(MixedGraph::new(0).chromatic_number(), 0);
        assert_eq!(MixedGraph::new(3).chromatic_number(), 1);
        // C5 needs three colours even though it is triangle-free.
        let c5 = MixedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], &[]).unwrap();
        assert_eq!(c5.chromatic_number(), 3);
    }

    #[test]
    fn collapse_cases() {
        let c = arrow_clique(3).collapse();
        assert!(c.partition.collapsible);
        let g = c.collapsed.unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert!(is_subgraph(&g, &arrow_clique(3)) && is_subgraph(&arrow_clique(3), &g));

        assert!(directed_path2().collapse().collapsed.is_none());

        let star = MixedGraph::from_edges(3, &[], &[(0, 1), (0, 2)]).unwrap();
        let c = star.collapse();
        assert!(c.partition.collapsible);
        let g = c.collapsed.unwrap();
        assert_eq!((g.vertex_count(), g.directed_count(), g.undirected_count()), (2, 1, 0));
    }

    #[test]
    fn collapse_keeps_directed_over_parallel_undirected() {
        // 0->1, 2->3 plus 0-3 undirected: contracting gives both kinds on (t, h).
        let f = MixedGraph::from_edges(4, &[(0, 3)], &[(0, 1), (2, 3)]).unwrap();
        let g = f.collapse().collapsed.unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.directed_count(), 1);
    }

    #[test]
    fn head_monochromatic_coloring() {
        assert!(directed_edge().admits_head_monochromatic_2_coloring());
        assert!(directed_biclique(2).admits_head_monochromatic_2_coloring());
        assert!(!directed_path2().admits_head_monochromatic_2_coloring());
        assert!(!clique(3).admits_head_monochromatic_2_coloring());
        // Two components whose head sides disagree until one is flipped.
        let g = MixedGraph::from_edges(4, &[], &[(0, 1), (3, 2)]).unwrap();
        assert!(g.admits_head_monochromatic_2_coloring());
    }

    #[test]
    fn through_pair_matches_full_search() {
        let host = arrow_clique(4);
        assert!(embeds_through_pair(&arrow_clique(3), &host, 0, 1));
        let without = host.without_edge(0, 1);
        assert!(!embeds_through_pair(&clique(4), &host, 0, 1) || is_subgraph(&clique(4), &host));
        assert!(!embeds_through_pair(&arrow_clique(3), &without, 0, 1));
    }

    #[test]
    fn canonical_codes_identify_relabelings() {
        let a = MixedGraph::from_edges(3, &[(0, 1)], &[(1, 2)]).unwrap();
        let b = MixedGraph::from_edges(3, &[(2, 0)], &[(0, 1)]).unwrap();
        assert_eq!(a.canonical_code().unwrap(), b.canonical_code().unwrap());
        let c = MixedGraph::from_edges(3, &[(0, 1)], &[(2, 1)]).unwrap();
        assert_ne!(a.canonical_code().unwrap(), c.canonical_code().unwrap());
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = MixedGraph::new(3);
        assert!(g.add_undirected(0, 0).is_err());
        assert!(g.add_directed(0, 3).is_err());
        g.add_directed(0, 1).unwrap();
        assert!(g.add_undirected(1, 0).is_err());
    }
}
