//! Coefficient fields for the Novikov field: the rationals, quadratic
//! extensions `Q(sqrt d)`, and a complex floating approximation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NovikovError;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Which field a computation is carried out in.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoefficientField {
    Rational,
    /// `Q(sqrt d)` for a square-free integer `d != 0, 1`.
    Quadratic(i64),
    /// Complex doubles; every equality test uses the tolerance `eps`.
    Float(f64),
}

impl CoefficientField {
    pub fn contains(&self, c: &Coeff) -> bool {
        match (self, c) {
            (_, Coeff::Rational(_)) => true,
            (CoefficientField::Quadratic(d), Coeff::Quadratic { d: e, .. }) => d == e,
            (CoefficientField::Float(_), _) => true,
            _ => false,
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rational => write!(f, "q"),
            CoefficientField::Quadratic(d) => write!(f, "q-sqrt:{d}"),
            CoefficientField::Float(eps) => write!(f, "float:{eps:e}"),
        }
    }
}

impl std::str::FromStr for CoefficientField {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "q" {
            return Ok(CoefficientField::Rational);
        }
        if let Some(d) = s.strip_prefix("q-sqrt:") {
            let d: i64 = d.parse().map_err(|_| format!("bad radicand in `{s}`"))?;
            if squarefree_part(d) != d || d == 1 || d == 0 {
                return Err(format!("radicand {d} is not a square-free integer other than 0, 1"));
            }
            return Ok(CoefficientField::Quadratic(d));
        }
        if let Some(e) = s.strip_prefix("float:") {
            let eps: f64 = e.parse().map_err(|_| format!("bad tolerance in `{s}`"))?;
            if !(eps > 0.0) {
                return Err("float tolerance must be positive".into());
            }
            return Ok(CoefficientField::Float(eps));
        }
        Err(format!("unknown coefficient field `{s}` (expected q, q-sqrt:d or float:eps)"))
    }
}

/// An element of one of the coefficient fields.
///
/// `Quadratic` always has `b != 0`; values with vanishing irrational part
/// are stored as `Rational`, so `Q` is literally a subfield of every other
/// variant and mixing is resolved by promotion.
#[derive(Clone, Debug)]
pub enum Coeff {
    Rational(Rational),
    /// `a + b sqrt(d)`.
    Quadratic { a: Rational, b: Rational, d: i64 },
    Float { re: f64, im: f64, eps: f64 },
}

impl Coeff {
    pub fn zero() -> Coeff {
        Coeff::Rational(Rational::zero())
    }

    pub fn one() -> Coeff {
        Coeff::Rational(Rational::one())
    }

    pub fn int(n: i64) -> Coeff {
        Coeff::Rational(rat_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Coeff {
        Coeff::Rational(rat(n, d))
    }

    /// `a + b sqrt(d)`, normalised.
    pub fn quadratic(a: Rational, b: Rational, d: i64) -> Coeff {
        if b.is_zero() {
            Coeff::Rational(a)
        } else {
            Coeff::Quadratic { a, b, d }
        }
    }

    pub fn float(re: f64, im: f64, eps: f64) -> Coeff {
        Coeff::Float { re, im, eps }
    }

    /// `sqrt(d)` for a square-free `d`.
    pub fn sqrt_of(d: i64) -> Coeff {
        Coeff::quadratic(Rational::zero(), Rational::one(), d)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_zero(),
            Coeff::Quadratic { .. } => false,
            Coeff::Float { re, im, eps } => re.hypot(*im) <= *eps,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_one(),
            Coeff::Quadratic { .. } => false,
            Coeff::Float { re, im, eps } => (re - 1.0).hypot(*im) <= *eps,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Coeff::Float { .. })
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Coeff::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn field(&self) -> CoefficientField {
        match self {
            Coeff::Rational(_) => CoefficientField::Rational,
            Coeff::Quadratic { d, .. } => CoefficientField::Quadratic(*d),
            Coeff::Float { eps, .. } => CoefficientField::Float(*eps),
        }
    }

    pub fn to_complex(&self) -> (f64, f64) {
        match self {
            Coeff::Rational(r) => (r.to_f64().unwrap_or(f64::NAN), 0.0),
            Coeff::Quadratic { a, b, d } => {
                let a = a.to_f64().unwrap_or(f64::NAN);
                let b = b.to_f64().unwrap_or(f64::NAN);
                let s = (d.abs() as f64).sqrt();
                if *d > 0 {
                    (a + b * s, 0.0)
                } else {
                    (a, b * s)
                }
            }
            Coeff::Float { re, im, .. } => (*re, *im),
        }
    }

    fn eps(&self) -> f64 {
        match self {
            Coeff::Float { eps, .. } => *eps,
            _ => 0.0,
        }
    }

    fn quad_parts(&self) -> (Rational, Rational) {
        match self {
            Coeff::Rational(r) => (r.clone(), Rational::zero()),
            Coeff::Quadratic { a, b, .. } => (a.clone(), b.clone()),
            Coeff::Float { .. } => unreachable!("float has no quadratic parts"),
        }
    }

    /// Common field of two coefficients, or the mismatch error.
    fn join(&self, other: &Coeff) -> Result<Join, NovikovError> {
        match (self, other) {
            (Coeff::Float { eps, .. }, _) | (_, Coeff::Float { eps, .. }) => {
                Ok(Join::Float(eps.max(self.eps()).max(other.eps())))
            }
            (Coeff::Quadratic { d: d1, .. }, Coeff::Quadratic { d: d2, .. }) if d1 != d2 => {
                Err(NovikovError::FieldMismatch(self.field(), other.field()))
            }
            (Coeff::Quadratic { d, .. }, _) | (_, Coeff::Quadratic { d, .. }) => Ok(Join::Quad(*d)),
            _ => Ok(Join::Rational),
        }
    }

    pub fn checked_add(&self, other: &Coeff) -> Result<Coeff, NovikovError> {
        Ok(match self.join(other)? {
            Join::Rational => Coeff::Rational(self.as_rational().unwrap() + other.as_rational().unwrap()),
            Join::Quad(d) => {
                let (a1, b1) = self.quad_parts();
                let (a2, b2) = other.quad_parts();
                Coeff::quadratic(a1 + a2, b1 + b2, d)
            }
            Join::Float(eps) => {
                let (r1, i1) = self.to_complex();
                let (r2, i2) = other.to_complex();
                Coeff::Float { re: r1 + r2, im: i1 + i2, eps }
            }
        })
    }

    pub fn checked_mul(&self, other: &Coeff) -> Result<Coeff, NovikovError> {
        Ok(match self.join(other)? {
            Join::Rational => Coeff::Rational(self.as_rational().unwrap() * other.as_rational().unwrap()),
            Join::Quad(d) => {
                let (a1, b1) = self.quad_parts();
                let (a2, b2) = other.quad_parts();
                let dd = rat_int(d);
                Coeff::quadratic(&a1 * &a2 + &b1 * &b2 * dd, a1 * b2 + b1 * a2, d)
            }
            Join::Float(eps) => {
                let (r1, i1) = self.to_complex();
                let (r2, i2) = other.to_complex();
                Coeff::Float { re: r1 * r2 - i1 * i2, im: r1 * i2 + i1 * r2, eps }
            }
        })
    }

    pub fn inv(&self) -> Result<Coeff, NovikovError> {
        if self.is_zero() {
            return Err(NovikovError::DivisionByZero);
        }
        Ok(match self {
            Coeff::Rational(r) => Coeff::Rational(r.recip()),
            Coeff::Quadratic { a, b, d } => {
                // (a + b s)^{-1} = (a - b s) / (a^2 - d b^2)
                let norm = a * a - b * b * rat_int(*d);
                Coeff::quadratic(a / &norm, -(b / &norm), *d)
            }
            Coeff::Float { re, im, eps } => {
                let n = re * re + im * im;
                Coeff::Float { re: re / n, im: -im / n, eps: *eps }
            }
        })
    }

    pub fn checked_div(&self, other: &Coeff) -> Result<Coeff, NovikovError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Coeff, NovikovError> {
        let mut base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Coeff::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            base = base.checked_mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Conjugate `a - b sqrt d` (identity on rationals, complex conjugate on floats).
    pub fn conj(&self) -> Coeff {
        match self {
            Coeff::Quadratic { a, b, d } => Coeff::quadratic(a.clone(), -b.clone(), *d),
            Coeff::Float { re, im, eps } => Coeff::Float { re: *re, im: -im, eps: *eps },
            c => c.clone(),
        }
    }

    /// A square root inside the smallest supported field, if one exists:
    /// rational squares stay rational, `q = s^2 d` with square-free `d`
    /// gives `s sqrt d`, floats take the principal branch.
    pub fn sqrt(&self) -> Option<Coeff> {
        match self {
            Coeff::Rational(r) => {
                if r.is_zero() {
                    return Some(Coeff::zero());
                }
                // r = n/m = n m / m^2
                let nm = r.numer() * r.denom();
                let (square, free) = split_square(&nm);
                let coeff = BigRational::new(square, r.denom().clone());
                if free.is_one() {
                    Some(Coeff::Rational(coeff))
                } else {
                    let d = free.to_i64()?;
                    Some(Coeff::quadratic(Rational::zero(), coeff, d))
                }
            }
            Coeff::Quadratic { a, b, d } => {
                // sqrt(a + b s) = x + y s with x^2 + d y^2 = a, 2xy = b.
                // x^2 is a root of X^2 - a X + d b^2 / 4.
                let disc = a * a - b * b * rat_int(*d);
                let root = Coeff::Rational(disc).sqrt()?;
                let root = root.as_rational()?.clone();
                for cand in [(a + &root) / rat_int(2), (a - &root) / rat_int(2)] {
                    if let Some(Coeff::Rational(x)) = Coeff::Rational(cand.clone()).sqrt() {
                        if !x.is_zero() {
                            let y = b / (rat_int(2) * &x);
                            return Some(Coeff::quadratic(x, y, *d));
                        }
                    }
                    // x = 0 branch: a = d y^2, b = 0 impossible for Quadratic.
                }
                None
            }
            Coeff::Float { re, im, eps } => {
                let r = re.hypot(*im).sqrt();
                let theta = im.atan2(*re) / 2.0;
                Some(Coeff::Float { re: r * theta.cos(), im: r * theta.sin(), eps: *eps })
            }
        }
    }

}

enum Join {
    Rational,
    Quad(i64),
    Float(f64),
}

impl PartialEq for Coeff {
    fn eq(&self, other: &Coeff) -> bool {
        match self.checked_add(&-other) {
            Ok(diff) => diff.is_zero(),
            Err(_) => false,
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Rational(r) => Coeff::Rational(-r),
            Coeff::Quadratic { a, b, d } => Coeff::Quadratic { a: -a, b: -b, d: *d },
            Coeff::Float { re, im, eps } => Coeff::Float { re: -re, im: -im, eps: *eps },
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

macro_rules! panicking_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Coeff> for &Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &Coeff) -> Coeff {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Coeff> for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: Coeff) -> Coeff {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_binop!(Add, add, checked_add);
panicking_binop!(Mul, mul, checked_mul);

impl Coeff {
    pub fn checked_sub(&self, other: &Coeff) -> Result<Coeff, NovikovError> {
        self.checked_add(&-other)
    }
}

panicking_binop!(Sub, sub, checked_sub);

/// Splits a nonzero integer `n = s^2 f` with `f` square-free (sign kept in `f`).
pub fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.abs();
    let mut square = BigInt::one();
    let mut free = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        for _ in 0..count / 2 {
            square *= &p;
        }
        if count % 2 == 1 {
            free *= &p;
        }
        p += 1;
    }
    free *= rest;
    (square, free)
}

pub fn squarefree_part(d: i64) -> i64 {
    if d == 0 {
        return 0;
    }
    split_square(&BigInt::from(d)).1.to_i64().unwrap_or(d)
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_radical(d: i64) -> String {
    if d > 0 {
        format!("s{d}")
    } else {
        format!("s({d})")
    }
}

impl fmt::Display for Coeff {
    /// Canonical literal: `3/2`, `5/2 + 5/2*s5`, `-1/2 - 1/2*s(-3)`, `f(re,im)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Coeff::Quadratic { a, b, d } => {
                let rad = fmt_radical(*d);
                let b_abs = b.abs();
                let b_str = if b_abs.is_one() { rad.clone() } else { format!("{}*{}", fmt_rational(&b_abs), rad) };
                if a.is_zero() {
                    if b.is_negative() {
                        write!(f, "-{b_str}")
                    } else {
                        write!(f, "{b_str}")
                    }
                } else {
                    let sign = if b.is_negative() { '-' } else { '+' };
                    write!(f, "{} {} {}", fmt_rational(a), sign, b_str)
                }
            }
            Coeff::Float { re, im, .. } => write!(f, "f({re:?},{im:?})"),
        }
    }
}

/// Total order used only to make output deterministic.
pub fn display_cmp(a: &Coeff, b: &Coeff) -> Ordering {
    let (ar, ai) = a.to_complex();
    let (br, bi) = b.to_complex();
    ar.partial_cmp(&br).unwrap_or(Ordering::Equal).then(ai.partial_cmp(&bi).unwrap_or(Ordering::Equal))
}

/// Recognises a double as a rational with denominator at most `max_den`
/// via continued fractions.
pub fn recognize_rational(x: f64, max_den: i64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if ((h1 as f64) / (k1 as f64) - x).abs() <= tol * (1.0 + x.abs()) {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Coeff {
        Coeff::int(n)
    }
}

impl From<Rational> for Coeff {
    fn from(r: Rational) -> Coeff {
        Coeff::Rational(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_inverse_is_exact() {
        let phi = Coeff::quadratic(rat(1, 2), rat(1, 2), 5);
        let inv = phi.inv().unwrap();
        assert_eq!(&phi * &inv, Coeff::one());
        // 1/phi = phi - 1
        assert_eq!(inv, &phi - &Coeff::one());
    }

    #[test]
    fn mismatched_radicands_are_rejected() {
        let a = Coeff::sqrt_of(5);
        let b = Coeff::sqrt_of(-3);
        assert!(matches!(a.checked_mul(&b), Err(NovikovError::FieldMismatch(..))));
        assert!(a.checked_mul(&Coeff::frac(3, 7)).is_ok());
    }

    #[test]
    fn square_roots() {
        assert_eq!(Coeff::frac(9, 4).sqrt().unwrap(), Coeff::frac(3, 2));
        let s = Coeff::int(20).sqrt().unwrap();
        assert_eq!(s, Coeff::quadratic(rat_int(0), rat_int(2), 5));
        let s = Coeff::int(-3).sqrt().unwrap();
        assert_eq!(&s * &s, Coeff::int(-3));
        // (1 + s5)^2 = 6 + 2 s5
        let sq = Coeff::quadratic(rat_int(6), rat_int(2), 5);
        let r = sq.sqrt().unwrap();
        assert_eq!(&r * &r, sq);
        assert!(Coeff::sqrt_of(5).sqrt().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Coeff::quadratic(rat(5, 2), rat(5, 2), 5).to_string(), "5/2 + 5/2*s5");
        assert_eq!(Coeff::quadratic(rat(-1, 2), rat(-1, 2), -3).to_string(), "-1/2 - 1/2*s(-3)");
        assert_eq!(Coeff::quadratic(rat_int(0), rat_int(-1), 2).to_string(), "-s2");
        assert_eq!(Coeff::frac(-7, 3).to_string(), "-7/3");
    }

    #[test]
    fn field_descriptor_parsing() {
        assert_eq!("q".parse::<CoefficientField>().unwrap(), CoefficientField::Rational);
        assert_eq!("q-sqrt:5".parse::<CoefficientField>().unwrap(), CoefficientField::Quadratic(5));
        assert!("q-sqrt:8".parse::<CoefficientField>().is_err());
        assert!(matches!("float:1e-9".parse::<CoefficientField>().unwrap(), CoefficientField::Float(_)));
    }

    #[test]
    fn rational_recognition() {
        assert_eq!(recognize_rational(-0.6180339887498949 + 1.6180339887498949, 1000, 1e-12), Some(rat_int(1)));
        assert_eq!(recognize_rational(2.0 / 7.0, 1000, 1e-12), Some(rat(2, 7)));
        assert_eq!(recognize_rational(std::f64::consts::PI, 50, 1e-12), None);
    }
}
