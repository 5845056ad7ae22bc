//! Euclidean domains with exact arithmetic.
//!
//! Three base rings are supported: the integers, univariate polynomials with
//! rational coefficients, and the rationals themselves (a field, so a trivial
//! Euclidean domain). Each carries division with remainder, gcd via the
//! Euclidean algorithm, and a unit normalization fixing canonical
//! representatives: nonnegative integers, monic polynomials, `0`/`1` for field
//! elements.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Tag identifying one of the supported base rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    /// Arbitrary precision integers.
    Integers,
    /// Univariate polynomials over the rationals, in the variable `t`.
    RationalPolynomials,
    /// The field of rationals.
    Rationals,
}

impl RingKind {
    /// Short symbol used in rendered module normal forms ("Z^2 + Z/6").
    pub fn symbol(self) -> &'static str {
        match self {
            RingKind::Integers => "Z",
            RingKind::RationalPolynomials => "Qt",
            RingKind::Rationals => "Q",
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A commutative domain with division with remainder.
///
/// The contract: for `b != 0`, `a.div_rem(&b) = (q, r)` satisfies
/// `a = q*b + r` with `r == 0` or `norm(r) < norm(b)`, where the Euclidean
/// norm is only ever consulted through [`EuclideanDomain::norm_cmp`].
/// `unit_normal` factors an element as `unit * normal` with the normal part
/// canonical; it is idempotent and multiplicative up to units.
pub trait EuclideanDomain: Clone + PartialEq + Eq + fmt::Debug + fmt::Display {
    const KIND: RingKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;

    fn is_zero(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Division with remainder; `d` must be nonzero.
    fn div_rem(&self, d: &Self) -> (Self, Self);

    /// Compare Euclidean norms of two nonzero elements.
    fn norm_cmp(&self, other: &Self) -> Ordering;

    /// Factor `self = unit * normal` with `normal` canonical.
    fn unit_normal(&self) -> (Self, Self);

    /// Inverse, if `self` is a unit.
    fn unit_inv(&self) -> Option<Self>;

    /// Rough size in bits of the representation, used for growth caps.
    fn bit_size(&self) -> usize;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn is_unit(&self) -> bool {
        !self.is_zero() && self.unit_normal().1.is_one()
    }

    /// `self / d` when the division is exact.
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return self.is_zero().then(Self::zero);
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Unit-normalized gcd.
    fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.unit_normal().1
    }

    /// Extended gcd: returns `(g, s, t)` with `g = s*self + t*other` and `g`
    /// unit-normalized.
    fn gcd_ext(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        let (u, g) = r0.unit_normal();
        let ui = u.unit_inv().expect("unit part is invertible");
        (g, ui.mul(&s0), ui.mul(&t0))
    }

    /// Canonical associate (the normal part of `unit_normal`).
    fn normalized(&self) -> Self {
        self.unit_normal().1
    }
}

/// Arbitrary precision integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Integer(pub BigInt);

impl Integer {
    pub fn new(n: impl Into<BigInt>) -> Self {
        Integer(n.into())
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl EuclideanDomain for Integer {
    const KIND: RingKind = RingKind::Integers;

    fn zero() -> Self {
        Integer(BigInt::zero())
    }

    fn one() -> Self {
        Integer(BigInt::one())
    }

    fn from_i64(n: i64) -> Self {
        Integer(BigInt::from(n))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Integer(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Integer(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Integer(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Integer(-&self.0)
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        use num_integer::Integer as _;
        // Symmetric remainder: |r| <= |d|/2 keeps Smith normal form pivots small.
        let (mut q, mut r) = self.0.div_rem(&d.0);
        if &r.abs() * 2 > d.0.abs() {
            if (r.sign() == Sign::Minus) == (d.0.sign() == Sign::Minus) {
                q += 1;
                r -= &d.0;
            } else {
                q -= 1;
                r += &d.0;
            }
        }
        (Integer(q), Integer(r))
    }

    fn norm_cmp(&self, other: &Self) -> Ordering {
        self.0.abs().cmp(&other.0.abs())
    }

    fn unit_normal(&self) -> (Self, Self) {
        if self.0.sign() == Sign::Minus {
            (Integer::from_i64(-1), Integer(-&self.0))
        } else {
            (Integer::one(), self.clone())
        }
    }

    fn unit_inv(&self) -> Option<Self> {
        if self.0.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn bit_size(&self) -> usize {
        self.0.bits() as usize
    }
}

/// Exact rational number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl EuclideanDomain for Rational {
    const KIND: RingKind = RingKind::Rationals;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        (Rational(&self.0 / &d.0), Rational::zero())
    }

    fn norm_cmp(&self, _other: &Self) -> Ordering {
        Ordering::Equal
    }

    fn unit_normal(&self) -> (Self, Self) {
        if self.is_zero() {
            (Rational::one(), Rational::zero())
        } else {
            (self.clone(), Rational::one())
        }
    }

    fn unit_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    fn bit_size(&self) -> usize {
        (self.0.numer().bits() + self.0.denom().bits()) as usize
    }
}

/// Univariate polynomial over the rationals, coefficients stored low degree
/// first with no trailing zeros (the zero polynomial is the empty list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    /// Polynomial from integer coefficients, low degree first.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// The variable `t`.
    pub fn var() -> Self {
        Self::from_int_coeffs(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let lead = out.is_empty();
            let mag = c.abs();
            if c.is_negative() {
                out.push_str(if lead { "-" } else { " - " });
            } else if !lead {
                out.push_str(" + ");
            }
            let coeff = if mag.is_one() && k > 0 {
                String::new()
            } else {
                format!("{}", mag)
            };
            let var = match k {
                0 => String::new(),
                1 => String::from("t"),
                _ => format!("t^{}", k),
            };
            out.push_str(&coeff);
            if !coeff.is_empty() && !var.is_empty() {
                out.push('*');
            }
            out.push_str(&var);
        }
        f.write_str(&out)
    }
}

impl EuclideanDomain for RatPoly {
    const KIND: RingKind = RingKind::RationalPolynomials;

    fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    fn one() -> Self {
        Self::from_int_coeffs(&[1])
    }

    fn from_i64(n: i64) -> Self {
        Self::from_int_coeffs(&[n])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                let b = rhs.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                a + b
            })
            .collect();
        Self::from_coeffs(c)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::from_coeffs(c)
    }

    fn neg(&self) -> Self {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dl = d.leading().expect("nonzero divisor").clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd || (rem.len() == dd + 1 && dd == 0 && !rem.is_empty()) {
            if rem.len() < dd + 1 {
                break;
            }
            let k = rem.len() - 1 - dd;
            let f = rem.last().expect("nonempty remainder") / &dl;
            if f.is_zero() {
                rem.pop();
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                let v = &f * c;
                rem[k + j] -= v;
            }
            quo[k] = f;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::from_coeffs(quo), Self::from_coeffs(rem))
    }

    fn norm_cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len())
    }

    fn unit_normal(&self) -> (Self, Self) {
        match self.leading() {
            None => (Self::one(), Self::zero()),
            Some(l) => {
                let linv = l.recip();
                let monic = RatPoly {
                    coeffs: self.coeffs.iter().map(|c| c * &linv).collect(),
                };
                (Self::from_coeffs(vec![l.clone()]), monic)
            }
        }
    }

    fn unit_inv(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            Some(RatPoly {
                coeffs: vec![self.coeffs[0].recip()],
            })
        } else {
            None
        }
    }

    fn bit_size(&self) -> usize {
        self.coeffs
            .iter()
            .map(|c| (c.numer().bits() + c.denom().bits()) as usize)
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> Integer {
        Integer::from_i64(n)
    }

    fn p(cs: &[i64]) -> RatPoly {
        RatPoly::from_int_coeffs(cs)
    }

    #[test]
    fn integer_div_rem_is_euclidean() {
        for a in -20i64..=20 {
            for b in [-7i64, -3, -1, 1, 2, 5, 9] {
                let (q, r) = z(a).div_rem(&z(b));
                assert_eq!(q.mul(&z(b)).add(&r), z(a));
                if !r.is_zero() {
                    assert_eq!(r.norm_cmp(&z(b)), Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn integer_unit_normal() {
        assert_eq!(z(-6).unit_normal(), (z(-1), z(6)));
        assert_eq!(z(6).normalized(), z(6));
        assert_eq!(z(0).normalized(), z(0));
        assert!(z(-1).is_unit());
        assert!(!z(2).is_unit());
    }

    #[test]
    fn integer_gcd_ext() {
        let (g, s, t) = z(14).gcd_ext(&z(-52));
        assert_eq!(g, z(2));
        assert_eq!(s.mul(&z(14)).add(&t.mul(&z(-52))), g);
    }

    #[test]
    fn poly_div_rem() {
        // t^2 + t = (t + 1) * t
        let (q, r) = p(&[0, 1, 1]).div_rem(&p(&[0, 1]));
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());

        // t^2 + 1 = (t - 1)(t + 1) + 2
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn poly_gcd_is_monic() {
        let g = p(&[0, 2]).gcd(&p(&[0, 0, 4]));
        assert_eq!(g, p(&[0, 1]));
        let g = p(&[-1, 0, 1]).gcd(&p(&[1, 1]));
        assert_eq!(g, p(&[1, 1]));
    }

    #[test]
    fn poly_unit_normal_monic() {
        let (u, n) = p(&[2, 4]).unit_normal();
        let expected = RatPoly::from_coeffs(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::one(),
        ]);
        assert_eq!(n, expected);
        assert_eq!(u.mul(&n), p(&[2, 4]));
        assert!(u.is_unit());
    }

    #[test]
    fn poly_display() {
        assert_eq!(format!("{}", p(&[1, 0, 1])), "t^2 + 1");
        assert_eq!(format!("{}", p(&[0, -2, 0, 1])), "t^3 - 2*t");
        assert_eq!(format!("{}", RatPoly::zero()), "0");
        assert_eq!(
            format!("{}", RatPoly::from_coeffs(vec![BigRational::new(3.into(), 2.into())])),
            "3/2"
        );
    }

    #[test]
    fn rational_field_ops() {
        let half = Rational::new(1, 2);
        assert!(half.is_unit());
        let (q, r) = Rational::from_i64(3).div_rem(&half);
        assert_eq!(q, Rational::from_i64(6));
        assert!(r.is_zero());
        assert_eq!(half.normalized(), Rational::one());
    }
}
