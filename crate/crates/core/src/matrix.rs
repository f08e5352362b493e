//! Mixed adjacency matrices `(U, D)`: templates whose blowups are mixed
//! graphs. `U` is symmetric 0/1 and `D` takes values in {0, 2}. A pair of
//! parts carries at most one relation.

use std::fmt;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{MixedGraph, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedAdjacencyMatrix {
    u: Vec<Vec<u8>>,
    d: Vec<Vec<u8>>,
}

/// Largest size accepted by [`MixedAdjacencyMatrix::canonical_code`].
pub const CANONICAL_LIMIT: usize = 10;

impl MixedAdjacencyMatrix {
    pub fn new(u: Vec<Vec<u8>>, d: Vec<Vec<u8>>) -> Result<Self> {
        let r = u.len();
        if r == 0 {
            return Err(Error::InvalidMatrix("size must be positive".into()));
        }
        if d.len() != r || u.iter().chain(d.iter()).any(|row| row.len() != r) {
            return Err(Error::InvalidMatrix("U and D must both be r x r".into()));
        }
        for i in 0..r {
            if d[i][i] != 0 {
                return Err(Error::InvalidMatrix(format!("D[{i}][{i}] must be 0")));
            }
            for j in 0..r {
                if u[i][j] > 1 {
                    return Err(Error::InvalidMatrix(format!("U[{i}][{j}] not in {{0,1}}")));
                }
                if u[i][j] != u[j][i] {
                    return Err(Error::InvalidMatrix(format!("U not symmetric at ({i},{j})")));
                }
                if d[i][j] != 0 && d[i][j] != 2 {
                    return Err(Error::InvalidMatrix(format!("D[{i}][{j}] not in {{0,2}}")));
                }
                if d[i][j] != 0 && d[j][i] != 0 {
                    return Err(Error::InvalidMatrix(format!(
                        "D has both ({i},{j}) and ({j},{i})"
                    )));
                }
                if i != j && u[i][j] != 0 && (d[i][j] != 0 || d[j][i] != 0) {
                    return Err(Error::InvalidMatrix(format!(
                        "pair ({i},{j}) is both undirected and directed"
                    )));
                }
            }
        }
        Ok(MixedAdjacencyMatrix { u, d })
    }

    /// All-zero template of size `r`.
    pub fn zero(r: usize) -> Self {
        assert!(r > 0, "size must be positive");
        MixedAdjacencyMatrix {
            u: vec![vec![0; r]; r],
            d: vec![vec![0; r]; r],
        }
    }

    /// `K = ([1], [0])`, whose blowups are cliques.
    pub fn clique_template() -> Self {
        MixedAdjacencyMatrix {
            u: vec![vec![1]],
            d: vec![vec![0]],
        }
    }

    pub fn size(&self) -> usize {
        self.u.len()
    }

    pub fn u(&self, i: usize, j: usize) -> u8 {
        self.u[i][j]
    }

    pub fn d(&self, i: usize, j: usize) -> u8 {
        self.d[i][j]
    }

    pub fn u_rows(&self) -> &[Vec<u8>] {
        &self.u
    }

    pub fn d_rows(&self) -> &[Vec<u8>] {
        &self.d
    }

    pub fn is_clique_part(&self, i: usize) -> bool {
        self.u[i][i] == 1
    }

    pub fn set_clique_part(&mut self, i: usize, on: bool) {
        self.u[i][i] = on as u8;
    }

    /// Relation between parts `i != j`, seen from `i`.
    pub fn relation(&self, i: usize, j: usize) -> Relation {
        if self.u[i][j] == 1 {
            Relation::Undirected
        } else if self.d[i][j] == 2 {
            Relation::Out
        } else if self.d[j][i] == 2 {
            Relation::In
        } else {
            Relation::None
        }
    }

    pub fn set_relation(&mut self, i: usize, j: usize, rel: Relation) {
        assert!(i != j, "diagonal is set with set_clique_part");
        self.u[i][j] = 0;
        self.u[j][i] = 0;
        self.d[i][j] = 0;
        self.d[j][i] = 0;
        match rel {
            Relation::None => {}
            Relation::Undirected => {
                self.u[i][j] = 1;
                self.u[j][i] = 1;
            }
            Relation::Out => self.d[i][j] = 2,
            Relation::In => self.d[j][i] = 2,
        }
    }

    pub fn has_directed(&self) -> bool {
        self.d.iter().flatten().any(|&x| x != 0)
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.size()).all(|i| self.u[i][i] == 0)
    }

    /// Zero diagonal and an edge of some kind between every two parts.
    pub fn is_complete_type(&self) -> bool {
        self.has_zero_diagonal()
            && (0..self.size())
                .tuple_combinations()
                .all(|(i, j)| self.relation(i, j).is_edge())
    }

    /// Entry `(i, j)` of `sym(A_rho) = (A_rho + A_rho^T) / 2`: the diagonal
    /// is `U_ii`; off the diagonal it is 1 (undirected), `rho` (directed) or 0.
    pub fn sym_entry(&self, i: usize, j: usize, rho: &BigRational) -> BigRational {
        if i == j {
            return BigRational::from_integer(self.u[i][i].into());
        }
        match self.relation(i, j) {
            Relation::None => BigRational::zero(),
            Relation::Undirected => BigRational::from_integer(1.into()),
            Relation::Out | Relation::In => rho.clone(),
        }
    }

    pub fn weighted(&self, rho: &BigRational) -> WeightedForm {
        let r = self.size();
        let a_rho = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        BigRational::from_integer(self.u[i][j].into())
                            + rho * BigRational::from_integer(self.d[i][j].into())
                    })
                    .collect()
            })
            .collect();
        let sym = (0..r)
            .map(|i| (0..r).map(|j| self.sym_entry(i, j, rho)).collect())
            .collect();
        WeightedForm {
            rho: rho.clone(),
            a_rho,
            sym,
        }
    }

    /// `y^T A_rho y`.
    pub fn quadratic(&self, y: &[BigRational], rho: &BigRational) -> BigRational {
        let r = self.size();
        let mut total = BigRational::zero();
        for i in 0..r {
            if y[i].is_zero() {
                continue;
            }
            for j in 0..r {
                let s = self.sym_entry(i, j, rho);
                if !s.is_zero() {
                    total += s * &y[i] * &y[j];
                }
            }
        }
        total
    }

    /// `(y^T U y, y^T D y)`.
    pub fn quadratic_parts(&self, y: &[BigRational]) -> (BigRational, BigRational) {
        let r = self.size();
        let mut uu = BigRational::zero();
        let mut dd = BigRational::zero();
        for i in 0..r {
            for j in 0..r {
                if self.u[i][j] != 0 {
                    uu += &y[i] * &y[j];
                }
                if self.d[i][j] != 0 {
                    dd += BigRational::from_integer(2.into()) * &y[i] * &y[j];
                }
            }
        }
        (uu, dd)
    }

    /// The mixed matrix graph `A[[x]]`: part `i` holds `x[i]` consecutive vertices.
    pub fn matrix_graph(&self, x: &[usize]) -> Result<MixedGraph> {
        let r = self.size();
        if x.len() != r {
            return Err(Error::Mismatch(format!(
                "part vector has length {}, matrix size is {r}",
                x.len()
            )));
        }
        let starts: Vec<usize> = x
            .iter()
            .scan(0, |acc, &xi| {
                let s = *acc;
                *acc += xi;
                Some(s)
            })
            .collect();
        let n: usize = x.iter().sum();
        let mut g = MixedGraph::new(n);
        let part = |i: usize| starts[i]..starts[i] + x[i];
        for i in 0..r {
            if self.is_clique_part(i) {
                for (a, b) in part(i).tuple_combinations() {
                    g.set_relation(a, b, Relation::Undirected);
                }
            }
            for j in i + 1..r {
                let rel = self.relation(i, j);
                if rel.is_edge() {
                    for a in part(i) {
                        for b in part(j) {
                            g.set_relation(a, b, rel);
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// Restriction of both `U` and `D` to the rows/columns in `keep`.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Result<MixedAdjacencyMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidMatrix("principal submatrix needs a nonempty index set".into()));
        }
        if keep.iter().any(|&i| i >= self.size()) || !keep.iter().tuple_windows().all(|(a, b)| a < b) {
            return Err(Error::InvalidMatrix(format!(
                "index set {keep:?} must be strictly increasing and below {}",
                self.size()
            )));
        }
        let pick = |m: &Vec<Vec<u8>>| -> Vec<Vec<u8>> {
            keep.iter()
                .map(|&i| keep.iter().map(|&j| m[i][j]).collect())
                .collect()
        };
        Ok(MixedAdjacencyMatrix {
            u: pick(&self.u),
            d: pick(&self.d),
        })
    }

    /// Whether no blowup `A[[t 1]]` contains `f`.
    ///
    /// Decided by searching for a part assignment `V(f) -> [r]`: an embedding
    /// into a large enough blowup exists exactly when such an assignment
    /// respects every edge of `f`.
    pub fn is_free_of(&self, f: &MixedGraph) -> bool {
        self.part_assignment(f).is_none()
    }

    pub fn is_free_of_all(&self, family: &[MixedGraph]) -> bool {
        family.iter().all(|f| self.is_free_of(f))
    }

    /// A part assignment realising `f` inside the blowups, if any.
    pub fn part_assignment(&self, f: &MixedGraph) -> Option<Vec<usize>> {
        let n = f.vertex_count();
        let rel: Vec<Vec<Relation>> = (0..n)
            .map(|a| (0..n).map(|b| if a == b { Relation::None } else { f.relation(a, b) }).collect())
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(f.degree(v)), v));
        let mut assign = vec![usize::MAX; n];

        fn fits(m: &MixedAdjacencyMatrix, rel: &[Vec<Relation>], assign: &[usize], v: usize, p: usize) -> bool {
            rel[v].iter().enumerate().all(|(w, &r)| {
                let q = assign[w];
                if r == Relation::None || q == usize::MAX {
                    return true;
                }
                if q == p {
                    r == Relation::Undirected && m.is_clique_part(p)
                } else {
                    r.realised_by(m.relation(p, q))
                }
            })
        }

        fn go(m: &MixedAdjacencyMatrix, rel: &[Vec<Relation>], order: &[usize], assign: &mut [usize], i: usize) -> bool {
            if i == order.len() {
                return true;
            }
            let v = order[i];
            for p in 0..m.size() {
                if fits(m, rel, assign, v, p) {
                    assign[v] = p;
                    if go(m, rel, order, assign, i + 1) {
                        return true;
                    }
                    assign[v] = usize::MAX;
                }
            }
            false
        }

        go(self, &rel, &order, &mut assign, 0).then_some(assign)
    }

    /// Lexicographically least encoding over all simultaneous row/column
    /// permutations; equal strings mean isomorphic templates.
    pub fn canonical_code(&self) -> Result<String> {
        let r = self.size();
        if r > CANONICAL_LIMIT {
            return Err(Error::CapExceeded {
                what: "matrix canonical form",
                size: r,
                limit: CANONICAL_LIMIT,
            });
        }
        let encode = |p: &[usize]| -> Vec<u8> {
            let mut c: Vec<u8> = p.iter().map(|&i| self.u[i][i]).collect();
            for (a, b) in (0..r).tuple_combinations() {
                c.push(match self.relation(p[a], p[b]) {
                    Relation::None => 0,
                    Relation::Undirected => 1,
                    Relation::Out => 2,
                    Relation::In => 3,
                });
            }
            c
        };
        let best = (0..r).permutations(r).map(|p| encode(&p)).min().unwrap();
        Ok(format!(
            "{r}:{}",
            best.iter().map(|d| char::from(b'0' + d)).collect::<String>()
        ))
    }
}

impl fmt::Display for MixedAdjacencyMatrix {
    /// The text format: `size r`, the rows of `U`, a blank line, the rows of `D`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "size {}", self.size())?;
        for row in &self.u {
            writeln!(f, "{}", row.iter().join(" "))?;
        }
        writeln!(f)?;
        for row in &self.d {
            writeln!(f, "{}", row.iter().join(" "))?;
        }
        Ok(())
    }
}

/// `A_rho = U + rho D` and its symmetric part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedForm {
    pub rho: BigRational,
    pub a_rho: Vec<Vec<BigRational>>,
    pub sym: Vec<Vec<BigRational>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_subgraph;
    use crate::named::*;
    use crate::numeric::rat;

    #[test]
    fn rejects_invalid_templates() {
        assert!(MixedAdjacencyMatrix::new(vec![vec![0, 1], vec![0, 0]], vec![vec![0; 2]; 2]).is_err());
        assert!(MixedAdjacencyMatrix::new(vec![vec![0; 2]; 2], vec![vec![0, 2], vec![2, 0]]).is_err());
        assert!(MixedAdjacencyMatrix::new(vec![vec![0, 1], vec![1, 0]], vec![vec![0, 2], vec![0, 0]]).is_err());
        assert!(MixedAdjacencyMatrix::new(vec![vec![0; 2]; 2], vec![vec![0, 1], vec![0, 0]]).is_err());
        assert!(MixedAdjacencyMatrix::new(vec![], vec![]).is_err());
    }

    #[test]
    fn matrix_graph_example() {
        let g = example_template().matrix_graph(&[2, 2, 3]).unwrap();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.undirected_count(), 9);
        assert_eq!(g.directed_count(), 4);
        let b = g1().matrix_graph(&[2, 2]).unwrap();
        assert!(is_subgraph(&b, &directed_biclique(2)) && is_subgraph(&directed_biclique(2), &b));
        assert_eq!(g4().matrix_graph(&[0, 0, 0]).unwrap().vertex_count(), 0);
    }

    #[test]
    fn principal_submatrices() {
        assert_eq!(example_template().principal_submatrix(&[0, 1]).unwrap(), g1());
        assert_eq!(g4().principal_submatrix(&[0, 1]).unwrap(), g1());
        assert_eq!(g4().principal_submatrix(&[0, 1, 2]).unwrap(), g4());
        assert!(g4().principal_submatrix(&[]).is_err());
        assert!(g4().principal_submatrix(&[1, 0]).is_err());
    }

    #[test]
    fn freeness() {
        assert!(g1().is_free_of(&arrow_clique(3)));
        assert!(!MixedAdjacencyMatrix::clique_template().is_free_of(&clique(3)));
        assert!(!g1().is_free_of(&directed_biclique(2)));
    }

    #[test]
    fn canonical_codes() {
        let mut flipped = MixedAdjacencyMatrix::zero(2);
        flipped.set_relation(1, 0, Relation::Out);
        assert_eq!(g1().canonical_code().unwrap(), flipped.canonical_code().unwrap());
        let mut und = MixedAdjacencyMatrix::zero(2);
        und.set_relation(0, 1, Relation::Undirected);
        assert_ne!(g1().canonical_code().unwrap(), und.canonical_code().unwrap());
        assert_ne!(g2().canonical_code().unwrap(), g4().canonical_code().unwrap());
        assert!(MixedAdjacencyMatrix::zero(11).canonical_code().is_err());
    }

    #[test]
    fn weighted_form_entries() {
        let w = g4().weighted(&rat(3, 2));
        assert_eq!(w.a_rho[0][1], rat(3, 1));
        assert_eq!(w.sym[0][1], rat(3, 2));
        assert_eq!(w.sym[1][0], rat(3, 2));
        assert_eq!(w.sym[0][2], rat(1, 1));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(w.sym[i][j], w.sym[j][i]);
            }
        }
    }
}
