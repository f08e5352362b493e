//! Real algebraic numbers given by an integer polynomial and an isolating
//! interval, plus the `P_k`/`Q_k` polynomial family and its irreducibility test.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{fmt_rat, simplest_between, to_f64};
use crate::poly::IntPolynomial;

/// Interval width reached by [`isolate_root`].
pub const ISOLATION_BITS: u32 = 40;

fn width_target(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// A real algebraic number.
///
/// Either an exact rational (then `lo == hi` and `poly` is linear) or the
/// unique root of the squarefree `poly` strictly inside `(lo, hi)`, with
/// `poly` nonzero at both endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicNumber {
    poly: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
    exact: Option<BigRational>,
    approx: f64,
}

impl AlgebraicNumber {
    pub fn rational(q: BigRational) -> Self {
        AlgebraicNumber {
            poly: IntPolynomial::linear_for(&q),
            lo: q.clone(),
            hi: q.clone(),
            approx: to_f64(&q),
            exact: Some(q),
        }
    }

    /// Builds the number from a squarefree polynomial with exactly one root
    /// in `(lo, hi]`, refining to width `2^-bits`.
    fn from_isolated(poly: IntPolynomial, mut lo: BigRational, mut hi: BigRational, bits: u32) -> Self {
        if poly.sign_at(&hi) == Ordering::Equal {
            return Self::rational(hi);
        }
        // Move `lo` off a root of `poly` that lies outside our half-open interval.
        while poly.sign_at(&lo) == Ordering::Equal {
            let mid = (&lo + &hi) / BigRational::from_integer(2.into());
            if poly.count_roots(&lo, &mid) == 0 {
                lo = mid;
            } else {
                if poly.sign_at(&mid) == Ordering::Equal {
                    return Self::rational(mid);
                }
                hi = mid;
            }
        }
        let mut x = AlgebraicNumber {
            approx: 0.0,
            poly,
            lo,
            hi,
            exact: None,
        };
        x.refine(bits);
        if x.exact.is_none() {
            let q = simplest_between(&x.lo, &x.hi);
            if x.poly.sign_at(&q) == Ordering::Equal {
                return Self::rational(q);
            }
        }
        x
    }

    /// Halves the isolating interval until its width is at most `2^-bits`.
    pub fn refine(&mut self, bits: u32) {
        if self.exact.is_some() {
            return;
        }
        let target = width_target(bits);
        let two = BigRational::from_integer(2.into());
        let s_lo = self.poly.sign_at(&self.lo);
        while &self.hi - &self.lo > target {
            let mid = (&self.lo + &self.hi) / &two;
            let s = self.poly.sign_at(&mid);
            if s == Ordering::Equal {
                *self = Self::rational(mid);
                return;
            }
            if s == s_lo {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        }
        self.approx = to_f64(&((&self.lo + &self.hi) / &two));
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    pub fn is_rational(&self) -> bool {
        self.exact.is_some()
    }

    pub fn to_f64(&self) -> f64 {
        self.approx
    }

    /// Sign of `q` evaluated at this number.
    pub fn sign_of(&self, q: &IntPolynomial) -> Ordering {
        if let Some(r) = &self.exact {
            return q.sign_at(r);
        }
        if q.is_zero() {
            return Ordering::Equal;
        }
        // Shared roots with `poly` inside the interval are exactly our root.
        let g = self.poly.gcd(q);
        if g.degree().unwrap_or(0) > 0 && g.count_roots(&self.lo, &self.hi) > 0 {
            return Ordering::Equal;
        }
        // Otherwise q has a constant sign once the interval excludes its roots.
        let mut x = self.clone();
        let mut bits = ISOLATION_BITS;
        loop {
            if q.count_roots(&x.lo, &x.hi) == 0 && q.sign_at(&x.lo) != Ordering::Equal {
                return q.sign_at(&x.hi);
            }
            bits += 16;
            x.refine(bits);
            if let Some(r) = &x.exact {
                return q.sign_at(r);
            }
        }
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        if let Some(r) = &self.exact {
            return r.cmp(q);
        }
        if q <= &self.lo {
            return Ordering::Greater;
        }
        if q >= &self.hi {
            return Ordering::Less;
        }
        // q is inside the interval: compare against the root via the sign change.
        let sq = self.poly.sign_at(q);
        if sq == Ordering::Equal {
            return Ordering::Equal;
        }
        if sq == self.poly.sign_at(&self.lo) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn cmp_algebraic(&self, other: &AlgebraicNumber) -> Ordering {
        if let Some(q) = &other.exact {
            return self.cmp_rational(q);
        }
        if let Some(q) = &self.exact {
            return other.cmp_rational(q).reverse();
        }
        if other.sign_of(&self.poly) == Ordering::Equal {
            // other is a root of our polynomial; equal iff it lies in our interval.
            if other.cmp_rational(&self.lo) == Ordering::Greater
                && other.cmp_rational(&self.hi) == Ordering::Less
            {
                return Ordering::Equal;
            }
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut bits = ISOLATION_BITS;
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            bits += 16;
            a.refine(bits);
            b.refine(bits);
            if a.exact.is_some() || b.exact.is_some() {
                return a.cmp_algebraic(&b);
            }
        }
    }

    /// Tries to prove a minimal polynomial: strips rational linear factors
    /// from the squarefree defining polynomial and checks irreducibility of
    /// the rest. `None` when irreducibility cannot be established.
    pub fn minimal_polynomial(&self) -> Option<IntPolynomial> {
        if let Some(q) = &self.exact {
            return Some(IntPolynomial::linear_for(q).normalized());
        }
        let mut p = self.poly.squarefree_part();
        for r in rational_roots(&p) {
            p = p
                .div_exact(&IntPolynomial::linear_for(&r).normalized())
                .expect("rational root gives an integral linear factor")
                .normalized();
        }
        if is_provably_irreducible(&p) {
            Some(p)
        } else {
            None
        }
    }

    /// Decimal endpoints rounded outward to `digits` places.
    pub fn decimal_interval(&self, digits: u32) -> (String, String) {
        let scale = num_traits::pow(BigInt::from(10), digits as usize);
        let lo = (&self.lo * BigRational::from_integer(scale.clone())).floor().to_integer();
        let hi = (&self.hi * BigRational::from_integer(scale.clone())).ceil().to_integer();
        (decimal(&lo, digits), decimal(&hi, digits))
    }
}

fn decimal(v: &BigInt, digits: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let (q, r) = v.abs().div_rem(&scale);
    let sign = if v.is_negative() { "-" } else { "" };
    format!("{sign}{q}.{:0>width$}", r.to_string(), width = digits as usize)
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(q) => write!(f, "{}", fmt_rat(q)),
            None => {
                let (lo, hi) = self.decimal_interval(7);
                write!(f, "root of {} in [{lo}, {hi}] ≈ {:.12}", self.poly, self.approx)
            }
        }
    }
}

/// Isolates the unique root of `p` in `(lo, hi]`.
pub fn isolate_root(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> Result<AlgebraicNumber> {
    if p.is_zero() {
        return Err(Error::Degenerate("zero polynomial has no isolated roots".into()));
    }
    let roots = isolate_roots(p, lo, hi);
    match roots.len() {
        0 => Err(Error::NoRoot {
            poly: p.to_string(),
            lo: fmt_rat(lo),
            hi: fmt_rat(hi),
        }),
        1 => Ok(roots.into_iter().next().unwrap()),
        count => Err(Error::MultipleRoots {
            poly: p.to_string(),
            lo: fmt_rat(lo),
            hi: fmt_rat(hi),
            count,
        }),
    }
}

/// All real roots of `p` in `(lo, hi]`, in increasing order.
pub fn isolate_roots(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> Vec<AlgebraicNumber> {
    if p.is_zero() || p.degree() == Some(0) || lo >= hi {
        return vec![];
    }
    let sf = p.squarefree_part();
    let mut out = vec![];
    let mut stack = vec![(lo.clone(), hi.clone())];
    let two = BigRational::from_integer(2.into());
    // Depth-first with the right half pushed first keeps the output sorted.
    while let Some((a, b)) = stack.pop() {
        match sf.count_roots(&a, &b) {
            0 => {}
            1 => out.push(AlgebraicNumber::from_isolated(sf.clone(), a, b, ISOLATION_BITS)),
            _ => {
                let mid = (&a + &b) / &two;
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
    out
}

/// All real roots of `p`.
pub fn real_roots(p: &IntPolynomial) -> Vec<AlgebraicNumber> {
    if p.is_zero() {
        return vec![];
    }
    let b = p.root_bound();
    isolate_roots(p, &-b.clone(), &b)
}

/// Rational roots of `p`, found among its real roots.
fn rational_roots(p: &IntPolynomial) -> Vec<BigRational> {
    real_roots(p)
        .into_iter()
        .filter_map(|r| r.as_rational().cloned())
        .chain(
            // Rational roots with large denominators escape the simplest-rational
            // probe; the rational root test on the leading and constant terms
            // catches the ones a small-coefficient polynomial can have.
            small_rational_candidates(p),
        )
        .filter(|q| p.sign_at(q) == Ordering::Equal)
        .fold(vec![], |mut acc, q| {
            if !acc.contains(&q) {
                acc.push(q);
            }
            acc
        })
}

fn small_rational_candidates(p: &IntPolynomial) -> Vec<BigRational> {
    let lead = p.leading().abs();
    let cons = p.coeff(0).abs();
    if cons.is_zero() {
        return vec![BigRational::zero()];
    }
    let limit = BigInt::from(100_000);
    if lead > limit || cons > limit {
        return vec![];
    }
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let mut d = vec![];
        let mut i = BigInt::one();
        while &i * &i <= *n {
            if (n % &i).is_zero() {
                d.push(i.clone());
                d.push(n / &i);
            }
            i += 1;
        }
        d
    };
    let mut out = vec![];
    for num in divisors(&cons) {
        for den in divisors(&lead) {
            let q = BigRational::new(num.clone(), den.clone());
            out.push(q.clone());
            out.push(-q);
        }
    }
    out
}

/// Irreducibility over the rationals, when it can be shown cheaply. Low
/// degree without rational roots suffices up to three; beyond that an
/// Eisenstein prime must exist for a small shift of the polynomial or of its
/// reciprocal.
pub fn is_provably_irreducible(p: &IntPolynomial) -> bool {
    let d = match p.degree() {
        None | Some(0) => return false,
        Some(d) => d,
    };
    if d == 1 {
        return true;
    }
    if d <= 3 {
        return rational_roots(p).is_empty();
    }
    let primes = [2u32, 3, 5, 7, 11, 13];
    for shift in [0i64, 1, -1, 2, -2, 3, -3] {
        let q = p.taylor_shift(&BigInt::from(shift));
        for cand in [q.clone(), q.reciprocal()] {
            if primes.iter().any(|&pr| eisenstein_at(&cand, &BigInt::from(pr))) {
                return true;
            }
        }
    }
    false
}

/// Eisenstein's criterion at prime `pr`: `pr` divides every coefficient but
/// the leading one, and `pr²` does not divide the constant term.
pub fn eisenstein_at(p: &IntPolynomial, pr: &BigInt) -> bool {
    let d = match p.degree() {
        None | Some(0) => return false,
        Some(d) => d,
    };
    let c = p.coeffs();
    !(&c[d] % pr).is_zero()
        && c[..d].iter().all(|a| (a % pr).is_zero())
        && !(&c[0] % (pr * pr)).is_zero()
}

/// Eisenstein at 2 applied to the coefficient-reversed polynomial.
pub fn eisenstein_reciprocal_irreducible(p: &IntPolynomial) -> bool {
    eisenstein_at(&p.reciprocal(), &BigInt::from(2))
}

/// `(P_k, Q_k)` from `P_0 = 0`, `Q_0 = 1`, `P_{k+1} = ρ²(2Q_k − P_k)` and
/// `Q_{k+1} = (4ρ − 1)Q_k − 2ρP_k`.
pub fn pq_polynomials(k: usize) -> (IntPolynomial, IntPolynomial) {
    let mut p = IntPolynomial::zero();
    let mut q = IntPolynomial::from_i64(&[1]);
    let rho2 = IntPolynomial::from_i64(&[0, 0, 1]);
    let four_rho_m1 = IntPolynomial::from_i64(&[-1, 4]);
    let two_rho = IntPolynomial::from_i64(&[0, 2]);
    let two = IntPolynomial::from_i64(&[2]);
    for _ in 0..k {
        let np = &rho2 * &(&(&two * &q) - &p);
        let nq = &(&four_rho_m1 * &q) - &(&two_rho * &p);
        p = np;
        q = nq;
    }
    (p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn isolates_one_plus_inverse_sqrt2() {
        let x = isolate_root(&p(&[1, -4, 2]), &int(1), &int(2)).unwrap();
        assert!(!x.is_rational());
        assert!((x.to_f64() - (1.0 + 0.5f64.sqrt())).abs() < 1e-10);
        let (lo, hi) = x.interval();
        assert!(hi - lo <= width_target(ISOLATION_BITS));
        assert_eq!(x.decimal_interval(7), ("1.7071067".into(), "1.7071068".into()));
        assert!(x.to_string().starts_with("root of 2ρ² - 4ρ + 1 in [1.7071067, 1.7071068]"));
    }

    #[test]
    fn rational_and_negative_roots() {
        let two = isolate_root(&p(&[-2, 1]), &int(1), &int(3)).unwrap();
        assert_eq!(two.as_rational(), Some(&int(2)));
        let m = isolate_root(&p(&[-2, 0, 1]), &int(-2), &int(0)).unwrap();
        assert!((m.to_f64() + 2f64.sqrt()).abs() < 1e-10);
        // A root at an excluded left endpoint is skipped.
        let r = isolate_root(&(&p(&[-1, 1]) * &p(&[-3, 1])), &int(1), &int(4)).unwrap();
        assert_eq!(r.as_rational(), Some(&int(3)));
        assert!(matches!(
            isolate_root(&p(&[-2, 0, 1]), &int(-2), &int(2)),
            Err(Error::MultipleRoots { count: 2, .. })
        ));
        assert!(matches!(isolate_root(&p(&[-5, 1]), &int(0), &int(1)), Err(Error::NoRoot { .. })));
        // Rational root with a large denominator.
        let q = isolate_root(&p(&[-1_000_003, 1_000_000]), &int(0), &int(2)).unwrap();
        assert_eq!(q.as_rational(), Some(&rat(1_000_003, 1_000_000)));
    }

    #[test]
    fn comparisons() {
        let x = isolate_root(&p(&[1, -4, 2]), &int(1), &int(2)).unwrap();
        assert_eq!(x.cmp_rational(&rat(17, 10)), Ordering::Greater);
        assert_eq!(x.cmp_rational(&rat(3, 2)), Ordering::Greater);
        assert_eq!(x.cmp_rational(&rat(1_707_107, 1_000_000)), Ordering::Less);
        let two = AlgebraicNumber::rational(int(2));
        assert_eq!(two.cmp_rational(&int(2)), Ordering::Equal);
        assert_eq!(x.cmp_algebraic(&two), Ordering::Less);
        // Same number, different defining polynomial.
        let y = isolate_root(&(&p(&[1, -4, 2]) * &p(&[-7, 1])), &int(1), &int(2)).unwrap();
        assert_eq!(x.cmp_algebraic(&y), Ordering::Equal);
        let s2 = isolate_root(&p(&[-2, 0, 1]), &int(1), &int(2)).unwrap();
        assert_eq!(x.cmp_algebraic(&s2), Ordering::Greater);
        assert_eq!(s2.cmp_algebraic(&x), Ordering::Less);
    }

    #[test]
    fn sign_of_polynomials_at_root() {
        let x = isolate_root(&p(&[1, -4, 2]), &int(1), &int(2)).unwrap();
        assert_eq!(x.sign_of(&p(&[1, -4, 2])), Ordering::Equal);
        assert_eq!(x.sign_of(&(&p(&[1, -4, 2]) * &p(&[0, 1]))), Ordering::Equal);
        // The other root 1 - 1/sqrt2 is not ours.
        assert_eq!(x.sign_of(&p(&[-1, 1])), Ordering::Greater);
        assert_eq!(x.sign_of(&p(&[-2, 0, 1])), Ordering::Greater);
        assert_eq!(x.sign_of(&p(&[-3, 0, 1])), Ordering::Less);
    }

    #[test]
    fn minimal_polynomials() {
        let x = isolate_root(&(&p(&[1, -4, 2]) * &p(&[-7, 1])), &int(1), &int(2)).unwrap();
        assert_eq!(x.minimal_polynomial(), Some(p(&[1, -4, 2])));
        assert!(!is_provably_irreducible(&p(&[-1, 0, 1])));
        assert!(is_provably_irreducible(&p(&[-2, 0, 0, 1])));
    }

    #[test]
    fn pq_small_cases() {
        assert_eq!(pq_polynomials(0), (IntPolynomial::zero(), p(&[1])));
        assert_eq!(pq_polynomials(1), (p(&[0, 0, 2]), p(&[-1, 4])));
        let (p2, q2) = pq_polynomials(2);
        assert_eq!(&p2 - &q2, p(&[-1, 8, -18, 12, -2]));
    }

    #[test]
    fn pq_structure_and_eisenstein() {
        for k in 1..=5 {
            let (pk, qk) = pq_polynomials(k);
            assert_eq!(pk.degree(), Some(2 * k));
            assert_eq!(qk.degree(), Some(2 * k - 1));
            assert!(qk.coeff(0).abs().is_one());
            assert!(pk.coeffs().iter().all(|c| c.is_even()));
            assert!(pk.coeff(0).is_zero() && pk.coeff(1).is_zero());
            let diff = &pk - &qk;
            assert_eq!(diff.degree(), Some(2 * k));
            assert!(eisenstein_reciprocal_irreducible(&diff));
        }
        assert!(eisenstein_reciprocal_irreducible(&p(&[1, -4, 2])));
        assert!(!eisenstein_reciprocal_irreducible(&p(&[-1, 0, 1])));
    }
}
