//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numeric::det_int;

/// Coefficients are stored constant term first; trailing zeros are trimmed so
/// the leading coefficient is nonzero unless the polynomial is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `den * x - num`, vanishing exactly at `num/den`.
    pub fn linear_for(q: &BigRational) -> Self {
        Self::new(vec![-q.numer().clone(), q.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        // Horner on numerator/denominator separately keeps this integral.
        let (p, q) = (x.numer(), x.denom());
        let d = self.coeffs.len();
        if d == 0 {
            return BigRational::zero();
        }
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        // acc = sum c_i p^i q^(d-1-i)
        BigRational::new(acc, num_traits::pow(q.clone(), d - 1))
    }

    /// Sign of the value at `x` without building the rational.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        acc.sign_cmp()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Divides out the positive content only, keeping the sign.
    fn primitive_keep_sign(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Pseudo-remainder scaled by a positive multiplier, so the sign of the
    /// true remainder is preserved.
    pub fn signed_pseudo_rem(&self, divisor: &IntPolynomial) -> IntPolynomial {
        let db = divisor.degree().expect("division by zero polynomial");
        let mut r = self.clone();
        let lb = divisor.leading();
        let lb_abs = lb.abs();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading();
            // r <- |lb| * r - sign(lb) * lr * x^(dr-db) * divisor
            let t = divisor.shift(dr - db).scale(&(if lb.is_negative() { -lr } else { lr }));
            r = &r.scale(&lb_abs) - &t;
        }
        r
    }

    /// Exact division; `None` if `divisor` does not divide `self` over the integers.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let db = divisor.degree()?;
        let lb = divisor.leading();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(db).max(1)];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let (c, rem) = r.leading().div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            q[dr - db] = c.clone();
            r = &r - &divisor.shift(dr - db).scale(&c);
        }
        Some(IntPolynomial::new(q))
    }

    /// Primitive gcd with positive leading coefficient (zero if both are zero).
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut a = self.normalized();
        let mut b = other.normalized();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.signed_pseudo_rem(&b).normalized();
            a = b;
            b = r;
        }
        a.normalized()
    }

    /// `self / gcd(self, self')`, normalized.
    pub fn squarefree_part(&self) -> IntPolynomial {
        if self.degree().unwrap_or(0) == 0 {
            return self.normalized();
        }
        let g = self.gcd(&self.derivative());
        self.normalized()
            .div_exact(&g)
            .expect("gcd divides the polynomial")
            .normalized()
    }

    /// Coefficients in reverse order.
    pub fn reciprocal(&self) -> IntPolynomial {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPolynomial::new(c)
    }

    /// `self(x + a)`.
    pub fn taylor_shift(&self, a: &BigInt) -> IntPolynomial {
        let xa = IntPolynomial::new(vec![a.clone(), BigInt::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(IntPolynomial::zero(), |acc, c| &(&acc * &xa) + &IntPolynomial::constant(c.clone()))
    }

    /// Sturm sequence of `self`; intended for squarefree input.
    pub fn sturm_sequence(&self) -> Vec<IntPolynomial> {
        let mut seq = vec![self.primitive_keep_sign()];
        let d = self.derivative().primitive_keep_sign();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let r = -&seq[n - 2].signed_pseudo_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.primitive_keep_sign());
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if self.is_zero() {
            panic!("zero polynomial has infinitely many roots");
        }
        let seq = self.squarefree_part().sturm_sequence();
        let lo_v = sign_variations(&seq, lo);
        let hi_v = sign_variations(&seq, hi);
        lo_v.saturating_sub(hi_v)
    }

    /// An upper bound on the absolute value of every real root.
    pub fn root_bound(&self) -> BigRational {
        let lead = self.leading().abs();
        let max = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigRational::new(max + &lead, lead) + BigRational::one()
    }

    /// Unique polynomial through the points, if its coefficients are integral.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Option<IntPolynomial> {
        let n = points.len();
        // Divided differences.
        let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &points[i].0 - &points[i - level].0;
                dd[i] = num / den;
            }
        }
        // Newton form to monomial basis.
        let mut acc: Vec<BigRational> = vec![BigRational::zero(); n.max(1)];
        for i in (0..n).rev() {
            // acc = acc * (x - x_i) + dd[i]
            let xi = &points[i].0;
            let mut next = vec![BigRational::zero(); n.max(1)];
            for (k, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                if k + 1 < next.len() {
                    next[k + 1] += a;
                }
                next[k] -= a * xi;
            }
            next[0] += &dd[i];
            acc = next;
        }
        if acc.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(IntPolynomial::new(acc.into_iter().map(|c| c.to_integer()).collect()))
    }

    /// Determinant of a matrix with polynomial entries, by evaluation at
    /// integer points and interpolation.
    pub fn determinant(m: &[Vec<IntPolynomial>]) -> IntPolynomial {
        let n = m.len();
        if n == 0 {
            return IntPolynomial::from_i64(&[1]);
        }
        let bound: usize = m
            .iter()
            .map(|row| row.iter().filter_map(|p| p.degree()).max().unwrap_or(0))
            .sum();
        let points: Vec<(BigRational, BigRational)> = (0..=bound)
            .map(|x| {
                let xr = BigRational::from_integer(BigInt::from(x));
                let vals: Vec<Vec<BigInt>> = m
                    .iter()
                    .map(|row| row.iter().map(|p| p.eval(&xr).to_integer()).collect())
                    .collect();
                (xr, BigRational::from_integer(det_int(vals)))
            })
            .collect();
        IntPolynomial::interpolate(&points).expect("integer determinant interpolates integrally")
    }

    /// Renders with the given variable name, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => {
                    out.push_str(var);
                    out.push_str(&superscript(i));
                }
            }
        }
        out
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn sign_variations(seq: &[IntPolynomial], x: &BigRational) -> usize {
    let signs: Vec<Ordering> = seq
        .iter()
        .map(|p| p.sign_at(x))
        .filter(|s| *s != Ordering::Equal)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("ρ"))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn arithmetic_and_display() {
        let a = p(&[1, -4, 2]);
        assert_eq!(a.degree(), Some(2));
        assert_eq!(a.to_string(), "2ρ² - 4ρ + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-ρ");
        assert_eq!((&a * &p(&[-1, 1])).to_string(), "2ρ³ - 6ρ² + 5ρ - 1");
        assert_eq!(a.derivative(), p(&[-4, 4]));
        assert_eq!(a.eval(&rat(1, 2)), rat(-1, 2));
        assert!(IntPolynomial::from_i64(&[0, 0]).is_zero());
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = &p(&[-1, 1]) * &p(&[-2, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let sq = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 0, 1]);
        assert_eq!(sq.squarefree_part(), &p(&[-1, 1]) * &p(&[2, 0, 1]));
        assert_eq!(p(&[6, 4]).normalized(), p(&[3, 2]));
        assert_eq!(p(&[1, -4, 2]).div_exact(&p(&[-1, 1])), None);
        assert_eq!(a.div_exact(&p(&[-2, 1])), Some(p(&[-1, 1])));
    }

    #[test]
    fn sturm_counts() {
        let x2m2 = p(&[-2, 0, 1]);
        assert_eq!(x2m2.count_roots(&int(-2), &int(2)), 2);
        assert_eq!(x2m2.count_roots(&int(0), &int(2)), 1);
        assert_eq!(x2m2.count_roots(&int(2), &int(3)), 0);
        // Half-open: the root 2 of (x-2) counts in (1, 2] but not (2, 3].
        let lin = p(&[-2, 1]);
        assert_eq!(lin.count_roots(&int(1), &int(2)), 1);
        assert_eq!(lin.count_roots(&int(2), &int(3)), 0);
        // Multiple roots are counted once.
        let dbl = &lin * &lin;
        assert_eq!(dbl.count_roots(&int(0), &int(5)), 1);
    }

    #[test]
    fn interpolation_and_determinant() {
        let pts: Vec<_> = (0..4).map(|x| (int(x), int(x * x * x - 2 * x + 5))).collect();
        assert_eq!(IntPolynomial::interpolate(&pts), Some(p(&[5, -2, 0, 1])));
        // det [[x-1, -1], [-1, x-1]] = x^2 - 2x
        let m = vec![vec![p(&[-1, 1]), p(&[-1])], vec![p(&[-1]), p(&[-1, 1])]];
        assert_eq!(IntPolynomial::determinant(&m), p(&[0, -2, 1]));
    }

    #[test]
    fn taylor_shift_and_reciprocal() {
        assert_eq!(p(&[0, 0, 1]).taylor_shift(&BigInt::from(1)), p(&[1, 2, 1]));
        assert_eq!(p(&[1, -4, 2]).reciprocal(), p(&[2, -4, 1]));
    }

    fn naive_count(poly: &IntPolynomial, lo: i64, hi: i64) -> usize {
        // Roots of a squarefree polynomial with small integer coefficients are
        // separated well beyond 1/4096; count sign changes on a fine grid and
        // exact zeros at grid points.
        let steps = (hi - lo) * 4096;
        let sf = poly.squarefree_part();
        let mut count = 0;
        let mut prev = sf.sign_at(&int(lo));
        for s in 1..=steps {
            let x = BigRational::new(BigInt::from(lo * 4096 + s), BigInt::from(4096));
            let cur = sf.sign_at(&x);
            if cur == Ordering::Equal || (prev != Ordering::Equal && cur != prev) {
                count += 1;
            }
            prev = cur;
        }
        count
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn sturm_matches_grid_count(roots in proptest::collection::vec(-6i64..6, 1..5), extra in 0i64..3) {
            // Products of distinct linear factors and an optional irreducible quadratic.
            let mut poly = p(&[1]);
            let mut distinct = roots.clone();
            distinct.sort();
            distinct.dedup();
            for r in &distinct {
                poly = &poly * &p(&[-r, 1]);
            }
            if extra > 0 {
                poly = &poly * &p(&[-(extra), 0, 1]);
            }
            let sturm = poly.count_roots(&int(-7), &int(7));
            prop_assert_eq!(sturm, naive_count(&poly, -7, 7));
        }
    }
}
