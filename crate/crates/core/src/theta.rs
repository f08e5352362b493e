//! The θ pipeline, from classification down to the exact minimum over
//! candidate templates, plus an independent verifier. Every entry point
//! takes a family; a single graph is a family of one.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::algebraic::AlgebraicNumber;
use crate::constructions::{blowup_weight, maximal_matrix_graph};
use crate::error::{Error, Result};
use crate::graph::{MixedGraph, Relation};
use crate::matrix::MixedAdjacencyMatrix;
use crate::named::{clique_to_independent, independent_to_clique, transitive_tournament};
use crate::numeric::{binomial2, fmt_rat, int, simplest_between, to_f64};
use crate::poly::IntPolynomial;
use crate::simplex::{argmin_attains_one, condense, g_rho, ratio_min, RatioSolution, SimplexPoint};

/// Largest template size the candidate enumeration accepts.
pub const CANDIDATE_LIMIT: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Infinite,
    One,
    UndirectedFormula,
    OneDirectedEdge,
    General,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tag::Infinite => "infinite",
            Tag::One => "one",
            Tag::UndirectedFormula => "undirected-formula",
            Tag::OneDirectedEdge => "one-directed-edge",
            Tag::General => "general",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub tag: Tag,
    /// Least chromatic number over the members.
    pub chi: usize,
    /// Least `χ(F^▷)` over collapsible members with a directed edge.
    pub chi_collapse: Option<usize>,
}

fn require_nonempty(family: &[MixedGraph]) -> Result<()> {
    if family.is_empty() {
        Err(Error::EmptyFamily)
    } else {
        Ok(())
    }
}

fn collapsed_chi(f: &MixedGraph) -> Option<usize> {
    if f.directed_count() == 0 {
        return None;
    }
    f.collapse().collapsed.map(|g| g.chromatic_number())
}

/// Dispatcher order: infinite, one, undirected formula, one directed edge,
/// general.
///
/// A family is infinite as soon as one member sits inside a directed
/// complete bipartite graph, and has value one when the clique-to-independent
/// template (or its reverse) contains no member; for a single graph the
/// latter is exactly uncollapsibility.
pub fn classify(family: &[MixedGraph]) -> Result<Classification> {
    require_nonempty(family)?;
    let chi = family.iter().map(|f| f.chromatic_number()).min().unwrap();
    let chi_collapse = family.iter().filter_map(collapsed_chi).min();
    let tag = if family.iter().any(|f| f.admits_head_monochromatic_2_coloring()) {
        Tag::Infinite
    } else if clique_to_independent().is_free_of_all(family)
        || independent_to_clique().is_free_of_all(family)
    {
        Tag::One
    } else if family.iter().all(|f| f.directed_count() == 0) {
        Tag::UndirectedFormula
    } else if family.len() == 1 && family[0].directed_count() == 1 {
        Tag::OneDirectedEdge
    } else {
        Tag::General
    };
    Ok(Classification {
        tag,
        chi,
        chi_collapse,
    })
}

/// `1 + 1/(c − 2)`.
fn closed_form(c: usize) -> BigRational {
    int(1) + BigRational::new(BigInt::one(), BigInt::from(c - 2))
}

fn member_lower_bound(f: &MixedGraph) -> BigRational {
    let chi = f.chromatic_number();
    if f.directed_count() == 0 || f.directed_count() == 1 {
        return closed_form(chi);
    }
    match collapsed_chi(f) {
        None => int(1),
        Some(cc) => {
            let a = int(1) + BigRational::new(BigInt::one(), BigInt::from(chi));
            a.max(closed_form(cc))
        }
    }
}

/// Rational sandwich `lower <= θ <= upper`.
///
/// The upper bound comes from the directed Turán construction on `χ − 1`
/// parts; the lower bound is the largest per-member bound, since forbidding
/// more graphs can only raise θ.
pub fn ess_bounds(family: &[MixedGraph]) -> Result<(BigRational, BigRational)> {
    let c = classify(family)?;
    if matches!(c.tag, Tag::Infinite | Tag::One) {
        return Err(Error::WrongClassification(c.tag.to_string()));
    }
    let upper = if c.chi >= 3 { closed_form(c.chi).min(int(2)) } else { int(2) };
    let lower = family.iter().map(member_lower_bound).max().unwrap();
    Ok((lower, upper))
}

/// Largest candidate size: below `χ(F^▷)` for every collapsible member with a
/// directed edge and below `χ(F)` for every undirected member.
pub fn candidate_size_bound(family: &[MixedGraph]) -> Result<usize> {
    family
        .iter()
        .filter_map(|f| {
            if f.directed_count() == 0 {
                Some(f.chromatic_number() - 1)
            } else {
                collapsed_chi(f).map(|c| c - 1)
            }
        })
        .min()
        .ok_or_else(|| {
            Error::NoCandidates("no member is undirected or collapsible with a directed edge".into())
        })
}

/// Complete-type templates with a directed pair, of size `2..=bound`, that
/// contain no member; one per isomorphism class, ordered by size then
/// canonical string.
pub fn enumerate_candidates(family: &[MixedGraph]) -> Result<Vec<MixedAdjacencyMatrix>> {
    let c = classify(family)?;
    if !matches!(c.tag, Tag::General | Tag::OneDirectedEdge) {
        return Err(Error::WrongClassification(c.tag.to_string()));
    }
    let bound = candidate_size_bound(family)?;
    if bound > CANDIDATE_LIMIT {
        return Err(Error::CapExceeded {
            what: "candidate template size",
            size: bound,
            limit: CANDIDATE_LIMIT,
        });
    }
    let mut out = vec![];
    for r in 2..=bound {
        let found: BTreeMap<String, MixedAdjacencyMatrix> = complete_type_matrices(r)
            .par_bridge()
            .filter(|m| m.has_directed() && m.is_free_of_all(family))
            .map(|m| (m.canonical_code().expect("size within limit"), m))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(BTreeMap::new(), |mut acc, (code, m)| {
                // Keep the least matrix per class so the output is schedule independent.
                acc.entry(code)
                    .and_modify(|cur: &mut MixedAdjacencyMatrix| {
                        if raw_code(&m) < raw_code(cur) {
                            *cur = m.clone();
                        }
                    })
                    .or_insert(m);
                acc
            });
        out.extend(found.into_values());
    }
    Ok(out)
}

fn raw_code(m: &MixedAdjacencyMatrix) -> Vec<u8> {
    (0..m.size())
        .tuple_combinations()
        .map(|(i, j)| match m.relation(i, j) {
            Relation::Undirected => 1,
            Relation::Out => 2,
            Relation::In => 3,
            Relation::None => 0,
        })
        .collect()
}

/// All `3^(r choose 2)` zero-diagonal templates with an edge on every pair.
pub fn complete_type_matrices(r: usize) -> impl Iterator<Item = MixedAdjacencyMatrix> + Send {
    let pairs: Vec<(usize, usize)> = (0..r).tuple_combinations().collect();
    let total = 3usize.pow(pairs.len() as u32);
    (0..total).map(move |mut code| {
        let mut m = MixedAdjacencyMatrix::zero(r);
        for &(i, j) in &pairs {
            let rel = match code % 3 {
                0 => Relation::Undirected,
                1 => Relation::Out,
                _ => Relation::In,
            };
            code /= 3;
            m.set_relation(i, j, rel);
        }
        m
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaKind {
    One,
    Infinite,
    Finite,
}

impl fmt::Display for ThetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThetaKind::One => "one",
            ThetaKind::Infinite => "infinite",
            ThetaKind::Finite => "finite",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThetaResult {
    pub kind: ThetaKind,
    pub classification: Classification,
    /// `None` only for the infinite kind.
    pub value: Option<AlgebraicNumber>,
    pub witness: Option<MixedAdjacencyMatrix>,
    pub argmin: Option<SimplexPoint>,
    pub certificate: Option<IntPolynomial>,
    pub bounds: Option<(BigRational, BigRational)>,
    pub candidates: usize,
}

impl ThetaResult {
    fn closed(classification: Classification, value: BigRational, bounds: (BigRational, BigRational)) -> Self {
        let k = classification.chi - 1;
        let y = vec![BigRational::new(BigInt::one(), BigInt::from(k)); k];
        ThetaResult {
            kind: ThetaKind::Finite,
            certificate: Some(IntPolynomial::linear_for(&value)),
            value: Some(AlgebraicNumber::rational(value)),
            witness: Some(transitive_tournament(k)),
            argmin: Some(SimplexPoint::Rational(y)),
            bounds: Some(bounds),
            classification,
            candidates: 0,
        }
    }
}

/// θ of a graph or finite family.
pub fn theta(family: &[MixedGraph]) -> Result<ThetaResult> {
    let c = classify(family)?;
    match c.tag {
        Tag::Infinite => Ok(ThetaResult {
            kind: ThetaKind::Infinite,
            classification: c,
            value: None,
            witness: None,
            argmin: None,
            certificate: None,
            bounds: None,
            candidates: 0,
        }),
        Tag::One => Ok(ThetaResult {
            kind: ThetaKind::One,
            classification: c,
            value: Some(AlgebraicNumber::rational(int(1))),
            witness: None,
            argmin: None,
            certificate: Some(IntPolynomial::from_i64(&[-1, 1])),
            bounds: Some((int(1), int(1))),
            candidates: 0,
        }),
        Tag::UndirectedFormula | Tag::OneDirectedEdge => {
            let v = closed_form(c.chi);
            let bounds = ess_bounds(family)?;
            Ok(ThetaResult::closed(c, v, bounds))
        }
        Tag::General => theta_by_candidates(family),
    }
}

/// θ as the least ratio minimum over the candidate templates. Ties between
/// templates go to the least canonical string.
pub fn theta_by_candidates(family: &[MixedGraph]) -> Result<ThetaResult> {
    let c = classify(family)?;
    let candidates = enumerate_candidates(family)?;
    if candidates.is_empty() {
        return Err(Error::NoCandidates(
            "no family-free complete-type template with a directed pair".into(),
        ));
    }
    let solved: Vec<(MixedAdjacencyMatrix, RatioSolution)> = candidates
        .par_iter()
        .map(|m| ratio_min(m).map(|s| (m.clone(), s)))
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<(String, &MixedAdjacencyMatrix, &RatioSolution)> = None;
    for (m, s) in &solved {
        let v = s.finite_value().expect("candidates carry a directed pair");
        let code = m.canonical_code()?;
        let better = match &best {
            None => true,
            Some((bc, _, bs)) => match v.cmp_algebraic(bs.finite_value().unwrap()) {
                Ordering::Less => true,
                Ordering::Equal => code < *bc,
                Ordering::Greater => false,
            },
        };
        if better {
            best = Some((code, m, s));
        }
    }
    let (_, m, s) = best.unwrap();
    let bounds = ess_bounds(family)?;
    Ok(ThetaResult {
        kind: ThetaKind::Finite,
        classification: c,
        value: s.finite_value().cloned(),
        witness: Some(m.clone()),
        argmin: s.argmin.clone(),
        certificate: s.certificate.clone(),
        bounds: Some(bounds),
        candidates: candidates.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Vertex count of the construction check.
pub const CONSTRUCTION_N: usize = 80;
/// Allowed distance of the construction's weighted density from one.
pub const CONSTRUCTION_TOLERANCE: f64 = 0.05;

/// Independent checks of a finite result.
///
/// * `witness-free`: no member embeds in a blowup of the witness.
/// * `g-equals-one`: `g` of the witness at the value is exactly one.
/// * `within-bounds`: the value lies between the rational bounds.
/// * `construction`: a heaviest 80-vertex blowup has weighted density near one.
pub fn verify(family: &[MixedGraph], result: &ThetaResult) -> Result<VerifyReport> {
    if result.kind != ThetaKind::Finite {
        return Err(Error::WrongClassification(result.kind.to_string()));
    }
    let (Some(value), Some(witness)) = (&result.value, &result.witness) else {
        return Err(Error::Mismatch("finite result without value or witness".into()));
    };
    let mut checks = vec![];

    let free = witness.is_free_of_all(family);
    checks.push(CheckOutcome {
        name: "witness-free",
        passed: free,
        detail: if free {
            "no member embeds in any blowup of the witness".into()
        } else {
            "some member embeds in a blowup of the witness".into()
        },
    });

    let (g_ok, g_detail) = check_g_at_value(witness, value, result);
    checks.push(CheckOutcome {
        name: "g-equals-one",
        passed: g_ok,
        detail: g_detail,
    });

    let (lo, hi) = ess_bounds(family)?;
    let inside = value.cmp_rational(&lo) != Ordering::Less && value.cmp_rational(&hi) != Ordering::Greater;
    checks.push(CheckOutcome {
        name: "within-bounds",
        passed: inside,
        detail: format!("{} in [{}, {}]", value, fmt_rat(&lo), fmt_rat(&hi)),
    });

    let rho = rational_near(value);
    let c = condense(witness, &rho);
    let (g, x) = maximal_matrix_graph(&c, &rho, CONSTRUCTION_N)?;
    let density = to_f64(&(blowup_weight(&c, &rho, &x.parts) / BigRational::from_integer(binomial2(CONSTRUCTION_N).into())));
    debug_assert_eq!(g.weighted_count(&rho), blowup_weight(&c, &rho, &x.parts));
    let close = (density - 1.0).abs() <= CONSTRUCTION_TOLERANCE;
    checks.push(CheckOutcome {
        name: "construction",
        passed: close,
        detail: format!(
            "parts {:?}: w/C(n,2) = {density:.6} at n = {CONSTRUCTION_N}",
            x.parts
        ),
    });
    Ok(VerifyReport { checks })
}

/// The value itself if rational, else the simplest rational in its
/// isolating interval.
pub fn rational_near(value: &AlgebraicNumber) -> BigRational {
    match value.as_rational() {
        Some(q) => q.clone(),
        None => {
            let (lo, hi) = value.interval();
            simplest_between(lo, hi)
        }
    }
}

fn check_g_at_value(witness: &MixedAdjacencyMatrix, value: &AlgebraicNumber, result: &ThetaResult) -> (bool, String) {
    if let Some(q) = value.as_rational() {
        let g = g_rho(witness, q).value;
        return (g.is_one(), format!("g at {} is {}", fmt_rat(q), fmt_rat(&g)));
    }
    let Some(cert) = &result.certificate else {
        return (false, "irrational value without certificate".into());
    };
    if value.sign_of(cert) != Ordering::Equal {
        return (false, format!("certificate {cert} does not vanish at the value"));
    }
    let sol = RatioSolution {
        value: crate::simplex::RatioValue::Finite(value.clone()),
        argmin: result.argmin.clone(),
        support: vec![],
        certificate: result.certificate.clone(),
        support_polynomial: None,
        bracket: None,
    };
    if !argmin_attains_one(witness, &sol) {
        return (false, "argmin does not reach weighted density one at the value".into());
    }
    let (lo, hi) = value.interval();
    let g_lo = g_rho(witness, lo).value;
    let g_hi = g_rho(witness, hi).value;
    let ok = g_lo < int(1) && g_hi >= int(1);
    (
        ok,
        format!(
            "certificate vanishes, argmin attains one, g below/above one across [{:.12}, {:.12}]",
            to_f64(lo),
            to_f64(hi)
        ),
    )
}

/// Whether every finite value lies in `(1, 2]`.
pub fn in_unit_window(value: &AlgebraicNumber) -> bool {
    value.cmp_rational(&int(1)) == Ordering::Greater && value.cmp_rational(&int(2)) != Ordering::Greater
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_subgraph;
    use crate::named::*;
    use crate::numeric::rat;

    fn single(f: MixedGraph) -> Vec<MixedGraph> {
        vec![f]
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&single(directed_edge())).unwrap().tag, Tag::Infinite);
        assert_eq!(classify(&single(directed_path2())).unwrap().tag, Tag::One);
        assert_eq!(classify(&single(directed_biclique(2))).unwrap().tag, Tag::Infinite);
        let c = classify(&single(arrow_clique(4))).unwrap();
        assert_eq!((c.tag, c.chi), (Tag::OneDirectedEdge, 4));
        assert_eq!(classify(&single(clique(3))).unwrap().tag, Tag::UndirectedFormula);
        assert_eq!(classify(&[]), Err(Error::EmptyFamily));
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(ess_bounds(&single(arrow_clique(4))).unwrap(), (rat(3, 2), rat(3, 2)));
        assert_eq!(ess_bounds(&single(clique(3))).unwrap(), (int(2), int(2)));
        assert!(matches!(
            ess_bounds(&single(directed_edge())),
            Err(Error::WrongClassification(_))
        ));
    }

    #[test]
    fn candidates_for_arrow_cliques() {
        let c3 = enumerate_candidates(&single(arrow_clique(3))).unwrap();
        assert_eq!(c3, vec![g1()]);
        let c4 = enumerate_candidates(&single(arrow_clique(4))).unwrap();
        let codes: Vec<String> = c4.iter().map(|m| m.canonical_code().unwrap()).collect();
        for m in [g1(), g2(), g4()] {
            assert!(codes.contains(&m.canonical_code().unwrap()));
        }
        assert_eq!(complete_type_matrices(3).count(), 27);
    }

    #[test]
    fn closed_forms_and_candidates_agree() {
        for f in [arrow_clique(3), arrow_clique(4)] {
            let closed = theta(&single(f.clone())).unwrap();
            let general = theta_by_candidates(&single(f)).unwrap();
            assert_eq!(
                closed.value.unwrap().cmp_algebraic(general.value.as_ref().unwrap()),
                Ordering::Equal
            );
        }
    }

    #[test]
    fn theta_examples() {
        let t = theta(&single(arrow_clique(3))).unwrap();
        assert_eq!(t.value.as_ref().unwrap().as_rational(), Some(&int(2)));
        let t = theta(&single(clique(3))).unwrap();
        assert_eq!(t.value.as_ref().unwrap().as_rational(), Some(&int(2)));
        assert_eq!(theta(&single(directed_edge())).unwrap().kind, ThetaKind::Infinite);
        assert_eq!(theta(&single(directed_path2())).unwrap().kind, ThetaKind::One);
    }

    #[test]
    fn verify_accepts_and_rejects() {
        let fam = single(arrow_clique(4));
        let good = theta(&fam).unwrap();
        let report = verify(&fam, &good).unwrap();
        assert!(report.passed(), "{report}");
        let mut bad = good.clone();
        bad.value = Some(AlgebraicNumber::rational(rat(7, 5)));
        let report = verify(&fam, &bad).unwrap();
        assert!(report.failed().contains(&"g-equals-one"));
        let k3 = single(clique(3));
        assert!(verify(&k3, &theta(&k3).unwrap()).unwrap().passed());
    }

    #[test]
    fn witness_of_closed_form_is_free() {
        let t = theta(&single(arrow_clique(5))).unwrap();
        let w = t.witness.unwrap();
        assert!(w.is_free_of(&arrow_clique(5)));
        let g = w.matrix_graph(&[2, 2, 2, 2]).unwrap();
        assert!(!is_subgraph(&arrow_clique(5), &g));
    }
}
