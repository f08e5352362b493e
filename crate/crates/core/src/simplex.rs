//! Exact optimization over the probability simplex. The ρ-density
//! `g_ρ(A) = max yᵀA_ρy` comes with its maximizer and condensation helpers;
//! the ratio program `min (1 − yᵀUy)/(yᵀDy)` comes with a polynomial
//! certificate.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebraic::{isolate_roots, AlgebraicNumber};
use crate::error::{Error, Result};
use crate::matrix::MixedAdjacencyMatrix;
use crate::numeric::{fmt_rat, int, solve, to_f64};
use crate::poly::IntPolynomial;

/// Bisection stops once the bracket is this many bits narrow.
pub const BISECTION_BITS: u32 = 8;

/// A point of the simplex with exact coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum SimplexPoint {
    Rational(Vec<BigRational>),
    /// Coordinate `j` is `num[j](at) / den(at)`.
    Algebraic {
        at: AlgebraicNumber,
        num: Vec<IntPolynomial>,
        den: IntPolynomial,
    },
}

impl SimplexPoint {
    pub fn len(&self) -> usize {
        match self {
            SimplexPoint::Rational(v) => v.len(),
            SimplexPoint::Algebraic { num, .. } => num.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_rational(&self) -> Option<&[BigRational]> {
        match self {
            SimplexPoint::Rational(v) => Some(v),
            SimplexPoint::Algebraic { .. } => None,
        }
    }

    /// Sign of coordinate `j`.
    pub fn coord_sign(&self, j: usize) -> Ordering {
        match self {
            SimplexPoint::Rational(v) => v[j].cmp(&BigRational::zero()),
            SimplexPoint::Algebraic { at, num, den } => {
                let a = at.sign_of(&num[j]);
                let b = at.sign_of(den);
                if a == Ordering::Equal {
                    Ordering::Equal
                } else if a == b {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    /// Indices of the strictly positive coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| self.coord_sign(j) == Ordering::Greater)
            .collect()
    }

    /// True when every coordinate is nonnegative and they sum to exactly one.
    pub fn is_valid(&self) -> bool {
        if (0..self.len()).any(|j| self.coord_sign(j) == Ordering::Less) {
            return false;
        }
        match self {
            SimplexPoint::Rational(v) => v.iter().sum::<BigRational>().is_one(),
            SimplexPoint::Algebraic { at, num, den } => {
                let total = num.iter().fold(IntPolynomial::zero(), |acc, p| &acc + p);
                at.sign_of(&(&total - den)) == Ordering::Equal
            }
        }
    }

    /// Coordinates as floats, accurate to well below `1e-12`.
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            SimplexPoint::Rational(v) => v.iter().map(to_f64).collect(),
            SimplexPoint::Algebraic { at, num, den } => {
                let mut fine = at.clone();
                fine.refine(96);
                let (lo, hi) = fine.interval();
                let x = (lo + hi) / int(2);
                let d = den.eval(&x);
                num.iter().map(|p| to_f64(&(p.eval(&x) / &d))).collect()
            }
        }
    }
}

impl fmt::Display for SimplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplexPoint::Rational(v) => {
                write!(f, "({})", v.iter().map(fmt_rat).join(", "))
            }
            SimplexPoint::Algebraic { .. } => {
                let c = self.to_f64();
                write!(f, "≈ ({})", c.iter().map(|x| format!("{x:.12}")).join(", "))
            }
        }
    }
}

/// Stationarity data for the maximizer of `g_ρ` on its support.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportCertificate {
    pub support: Vec<usize>,
    /// The common value of `(sym A_ρ y)_i` over the support.
    pub multiplier: BigRational,
    pub point: SimplexPoint,
    pub kkt_checked: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GRho {
    pub value: BigRational,
    pub argmax: Vec<BigRational>,
    pub certificate: SupportCertificate,
}

/// Every nonempty subset of `0..r`, smallest first, lexicographic within a size.
pub fn supports(r: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..=r).flat_map(move |s| (0..r).combinations(s))
}

/// Solves the stationarity system on `support`; `None` if it is singular or
/// the solution leaves the open face.
fn stationary_point(
    a: &MixedAdjacencyMatrix,
    rho: &BigRational,
    support: &[usize],
) -> Option<(Vec<BigRational>, BigRational)> {
    let s = support.len();
    // [[sym_S, -1], [1^T, 0]] (y; λ) = (0; 1)
    let mut m = vec![vec![BigRational::zero(); s + 1]; s + 1];
    for (a_i, &i) in support.iter().enumerate() {
        for (b_j, &j) in support.iter().enumerate() {
            m[a_i][b_j] = a.sym_entry(i, j, rho);
        }
        m[a_i][s] = -BigRational::one();
        m[s][a_i] = BigRational::one();
    }
    let mut rhs = vec![BigRational::zero(); s + 1];
    rhs[s] = BigRational::one();
    let sol = solve(m, rhs)?;
    if sol[..s].iter().any(|y| !y.is_positive()) {
        return None;
    }
    let lambda = sol[s].clone();
    Some((sol[..s].to_vec(), lambda))
}

fn lift(r: usize, support: &[usize], ys: &[BigRational]) -> Vec<BigRational> {
    let mut y = vec![BigRational::zero(); r];
    for (k, &i) in support.iter().enumerate() {
        y[i] = ys[k].clone();
    }
    y
}

/// `g_ρ(a)` with a maximizer and its stationarity certificate. Ties between
/// supports go to the lexicographically least one.
pub fn g_rho(a: &MixedAdjacencyMatrix, rho: &BigRational) -> GRho {
    let r = a.size();
    let mut best: Option<(BigRational, Vec<usize>, Vec<BigRational>, BigRational)> = None;
    for support in supports(r) {
        let Some((ys, lambda)) = stationary_point(a, rho, &support) else {
            continue;
        };
        let y = lift(r, &support, &ys);
        let value = a.quadratic(&y, rho);
        let better = match &best {
            None => true,
            Some((bv, bs, _, _)) => match value.cmp(bv) {
                Ordering::Greater => true,
                Ordering::Equal => support < *bs,
                Ordering::Less => false,
            },
        };
        if better {
            best = Some((value, support, y, lambda));
        }
    }
    // Singletons always solve, so a maximum exists.
    let (value, support, y, lambda) = best.expect("singleton supports are always feasible");
    let kkt_checked = support.iter().all(|&i| {
        (0..r)
            .map(|j| a.sym_entry(i, j, rho) * &y[j])
            .sum::<BigRational>()
            == lambda
    });
    GRho {
        value,
        argmax: y.clone(),
        certificate: SupportCertificate {
            support,
            multiplier: lambda,
            point: SimplexPoint::Rational(y),
            kkt_checked,
        },
    }
}

/// Kept indices of the condensed principal submatrix: the smallest index
/// set (lexicographically least among those) whose submatrix has the same
/// ρ-density.
pub fn condense_indices(a: &MixedAdjacencyMatrix, rho: &BigRational) -> Vec<usize> {
    let target = g_rho(a, rho).value;
    supports(a.size())
        .find(|keep| {
            let sub = a.principal_submatrix(keep).expect("nonempty sorted index set");
            g_rho(&sub, rho).value == target
        })
        .expect("the full index set always qualifies")
}

pub fn condense(a: &MixedAdjacencyMatrix, rho: &BigRational) -> MixedAdjacencyMatrix {
    a.principal_submatrix(&condense_indices(a, rho))
        .expect("nonempty sorted index set")
}

pub fn is_condensed(a: &MixedAdjacencyMatrix, rho: &BigRational) -> bool {
    condense_indices(a, rho).len() == a.size()
}

/// The unique optimal vector of a condensed matrix at rational `rho`.
pub fn optimal_vector(a: &MixedAdjacencyMatrix, rho: &BigRational) -> Result<SimplexPoint> {
    if !is_condensed(a, rho) {
        return Err(Error::NotCondensed(fmt_rat(rho)));
    }
    let g = g_rho(a, rho);
    Ok(SimplexPoint::Rational(g.argmax))
}

/// The optimal vector at an algebraic `rho`, solved symbolically on the full
/// support. Fails with `NotCondensed` when the stationarity system is singular
/// at `rho` or its solution is not strictly positive.
pub fn optimal_vector_at(a: &MixedAdjacencyMatrix, rho: &AlgebraicNumber) -> Result<SimplexPoint> {
    if let Some(q) = rho.as_rational() {
        return optimal_vector(a, q);
    }
    let r = a.size();
    let support: Vec<usize> = (0..r).collect();
    // Rows: sym y - λ 1 = 0 and 1^T y = 1; unknowns (y, λ).
    let sym = sym_poly(a, &support);
    let one = IntPolynomial::from_i64(&[1]);
    let mut m: Vec<Vec<IntPolynomial>> = sym
        .into_iter()
        .map(|mut row| {
            row.push(-&one);
            row
        })
        .collect();
    let mut last = vec![one.clone(); r];
    last.push(IntPolynomial::zero());
    m.push(last);
    let mut rhs = vec![IntPolynomial::zero(); r];
    rhs.push(one);
    let den = IntPolynomial::determinant(&m);
    if rho.sign_of(&den) == Ordering::Equal {
        return Err(Error::NotCondensed(rho.to_string()));
    }
    let num: Vec<IntPolynomial> = (0..r).map(|j| cramer_numerator(&m, &rhs, j)).collect();
    let point = SimplexPoint::Algebraic {
        at: rho.clone(),
        num,
        den,
    };
    if (0..r).any(|j| point.coord_sign(j) != Ordering::Greater) {
        return Err(Error::NotCondensed(rho.to_string()));
    }
    Ok(point)
}

fn cramer_numerator(m: &[Vec<IntPolynomial>], rhs: &[IntPolynomial], col: usize) -> IntPolynomial {
    let replaced: Vec<Vec<IntPolynomial>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut row = row.clone();
            row[col] = b.clone();
            row
        })
        .collect();
    IntPolynomial::determinant(&replaced)
}

/// `sym(A_ρ)` restricted to `support`, with `ρ` as the polynomial variable.
pub fn sym_poly(a: &MixedAdjacencyMatrix, support: &[usize]) -> Vec<Vec<IntPolynomial>> {
    support
        .iter()
        .map(|&i| {
            support
                .iter()
                .map(|&j| {
                    if i == j {
                        IntPolynomial::from_i64(&[a.u(i, i) as i64])
                    } else {
                        match a.relation(i, j) {
                            crate::graph::Relation::None => IntPolynomial::zero(),
                            crate::graph::Relation::Undirected => IntPolynomial::from_i64(&[1]),
                            _ => IntPolynomial::x(),
                        }
                    }
                })
                .collect()
        })
        .collect()
}

/// Whether `b` arises from the condensed `a` by appending one independent
/// part whose weighted attachment to the optimal vector beats `g_ρ(a)`.
pub fn is_augmentation(a: &MixedAdjacencyMatrix, b: &MixedAdjacencyMatrix, rho: &BigRational) -> Result<bool> {
    let r = a.size();
    if b.size() != r + 1 {
        return Err(Error::Mismatch(format!(
            "augmented matrix has size {}, expected {}",
            b.size(),
            r + 1
        )));
    }
    if b.u(r, r) != 0 {
        return Err(Error::Mismatch("the new part must be independent".into()));
    }
    let lead: Vec<usize> = (0..r).collect();
    if &b.principal_submatrix(&lead)? != a {
        return Err(Error::Mismatch("leading principal submatrix differs".into()));
    }
    let y = optimal_vector(a, rho)?;
    let y = y.as_rational().expect("rational rho gives a rational vector");
    let dot: BigRational = (0..r).map(|j| b.sym_entry(r, j, rho) * &y[j]).sum();
    Ok(dot > g_rho(a, rho).value)
}

/// Value of the ratio program.
#[derive(Debug, Clone, PartialEq)]
pub enum RatioValue {
    Infinite,
    Finite(AlgebraicNumber),
}

impl fmt::Display for RatioValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioValue::Infinite => write!(f, "infinity"),
            RatioValue::Finite(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioSolution {
    pub value: RatioValue,
    /// `None` exactly when the value is infinite.
    pub argmin: Option<SimplexPoint>,
    pub support: Vec<usize>,
    /// Polynomial vanishing at the value (its minimal polynomial when that
    /// could be proven).
    pub certificate: Option<IntPolynomial>,
    /// Determinant condition on the support from which the value was read.
    pub support_polynomial: Option<IntPolynomial>,
    /// Rational bracket with `g_lo < 1 <= g_hi`.
    pub bracket: Option<(BigRational, BigRational)>,
}

impl RatioSolution {
    pub fn finite_value(&self) -> Option<&AlgebraicNumber> {
        match &self.value {
            RatioValue::Finite(x) => Some(x),
            RatioValue::Infinite => None,
        }
    }
}

/// `min over the simplex of (1 − yᵀUy) / (yᵀDy)`, the ratio being infinite
/// where `yᵀDy = 0`. Requires a zero diagonal in `U`.
///
/// The minimum `ρ*` is the least `ρ` with `g_ρ(b) ≥ 1`. After bracketing it
/// by bisection, every support `S` contributes the roots of
/// `det(sym_S(ρ) − J)` in the bracket, which is exactly the condition for
/// `sym_S(ρ) y = 1, 1ᵀy = 1` to be solvable. A root whose solution is
/// strictly positive gives `yᵀUy + ρ yᵀDy = 1`, hence a ratio equal to the
/// root; conversely the maximizer at `ρ*` is such a solution. So `ρ*` is the
/// least feasible root.
pub fn ratio_min(b: &MixedAdjacencyMatrix) -> Result<RatioSolution> {
    if !b.has_directed() {
        return Ok(RatioSolution {
            value: RatioValue::Infinite,
            argmin: None,
            support: vec![],
            certificate: None,
            support_polynomial: None,
            bracket: None,
        });
    }
    if !b.has_zero_diagonal() {
        return Err(Error::InvalidMatrix(
            "ratio minimization needs a zero diagonal in U".into(),
        ));
    }
    let one = BigRational::one();
    let (mut lo, mut hi) = (int(1), int(2));
    if g_rho(b, &lo).value >= one || g_rho(b, &hi).value < one {
        return Err(Error::Certificate("ratio minimum not bracketed by [1, 2]".into()));
    }
    let width = BigRational::new(BigInt::one(), BigInt::one() << BISECTION_BITS);
    while &hi - &lo > width {
        let mid = (&lo + &hi) / int(2);
        if g_rho(b, &mid).value < one {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut best: Option<(AlgebraicNumber, Vec<usize>, SimplexPoint, IntPolynomial)> = None;
    for support in supports(b.size()) {
        let s = support.len();
        let sym = sym_poly(b, &support);
        let one_p = IntPolynomial::from_i64(&[1]);
        let shifted: Vec<Vec<IntPolynomial>> = sym
            .iter()
            .map(|row| row.iter().map(|e| e - &one_p).collect())
            .collect();
        let cert = IntPolynomial::determinant(&shifted);
        if cert.is_zero() {
            continue;
        }
        for root in isolate_roots(&cert, &lo, &hi) {
            if let Some((incumbent, ..)) = &best {
                if root.cmp_algebraic(incumbent) != Ordering::Less {
                    continue;
                }
            }
            let Some(point) = feasible_point(b.size(), &support, &sym, &root) else {
                continue;
            };
            debug_assert_eq!(point.support().len(), s);
            best = Some((root, support.clone(), point, cert.normalized()));
        }
    }
    let (value, support, point, support_polynomial) = best.ok_or_else(|| {
        Error::Certificate(format!(
            "no support certifies a root in ({}, {}]",
            fmt_rat(&lo),
            fmt_rat(&hi)
        ))
    })?;
    let (value, certificate) = match value.minimal_polynomial() {
        Some(m) => {
            let v = crate::algebraic::isolate_root(&m, &lo, &hi)?;
            (v, m)
        }
        None => {
            let c = support_polynomial.squarefree_part();
            (value, c)
        }
    };
    let point = match point {
        SimplexPoint::Algebraic { num, den, .. } => SimplexPoint::Algebraic {
            at: value.clone(),
            num,
            den,
        },
        p => p,
    };
    Ok(RatioSolution {
        value: RatioValue::Finite(value),
        argmin: Some(point),
        support,
        certificate: Some(certificate),
        support_polynomial: Some(support_polynomial),
        bracket: Some((lo, hi)),
    })
}

/// Solves `[sym_S(ρ); 1ᵀ] y = 1` at `root` by Cramer's rule on a
/// nonsingular square subsystem; `Some` only when the solution is unique
/// and strictly positive.
fn feasible_point(
    r: usize,
    support: &[usize],
    sym: &[Vec<IntPolynomial>],
    root: &AlgebraicNumber,
) -> Option<SimplexPoint> {
    let s = support.len();
    let one = IntPolynomial::from_i64(&[1]);
    let mut rows: Vec<Vec<IntPolynomial>> = sym.to_vec();
    rows.push(vec![one.clone(); s]);
    // Keep the normalization row whenever possible, so the coordinates sum
    // to one identically.
    for drop in (0..s).chain(std::iter::once(s)) {
        let sub: Vec<Vec<IntPolynomial>> = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != drop)
            .map(|(_, row)| row.clone())
            .collect();
        let den = IntPolynomial::determinant(&sub);
        if root.sign_of(&den) == Ordering::Equal {
            continue;
        }
        let rhs = vec![one.clone(); s];
        let nums: Vec<IntPolynomial> = (0..s).map(|j| cramer_numerator(&sub, &rhs, j)).collect();
        let den_sign = root.sign_of(&den);
        if nums.iter().any(|n| root.sign_of(n) != den_sign) {
            return None;
        }
        if let Some(q) = root.as_rational() {
            let d = den.eval(q);
            let mut y = vec![BigRational::zero(); r];
            for (k, &i) in support.iter().enumerate() {
                y[i] = nums[k].eval(q) / &d;
            }
            return Some(SimplexPoint::Rational(y));
        }
        let mut num = vec![IntPolynomial::zero(); r];
        for (k, &i) in support.iter().enumerate() {
            num[i] = nums[k].clone();
        }
        return Some(SimplexPoint::Algebraic {
            at: root.clone(),
            num,
            den,
        });
    }
    None
}

/// Exact check that `yᵀUy + ρ yᵀDy = 1` at the ratio solution's argmin.
pub fn argmin_attains_one(b: &MixedAdjacencyMatrix, sol: &RatioSolution) -> bool {
    let (Some(value), Some(point)) = (sol.finite_value(), sol.argmin.as_ref()) else {
        return false;
    };
    match point {
        SimplexPoint::Rational(y) => {
            let rho = value.as_rational().cloned().unwrap_or_else(|| {
                // A rational point with an irrational value cannot attain one exactly
                // unless yᵀDy vanishes, which the zero diagonal rules out.
                BigRational::zero()
            });
            if rho.is_zero() {
                return false;
            }
            b.quadratic(y, &rho).is_one()
        }
        SimplexPoint::Algebraic { at, num, den } => {
            // numᵀ sym(ρ) num − den² vanishes at ρ.
            let r = b.size();
            let all: Vec<usize> = (0..r).collect();
            let sym = sym_poly(b, &all);
            let mut q = IntPolynomial::zero();
            for i in 0..r {
                for j in 0..r {
                    if sym[i][j].is_zero() || num[i].is_zero() || num[j].is_zero() {
                        continue;
                    }
                    q = &q + &(&sym[i][j] * &(&num[i] * &num[j]));
                }
            }
            let q = &q - &(den * den);
            at.sign_of(&q) == Ordering::Equal && at.cmp_algebraic(value) == Ordering::Equal
        }
    }
}
