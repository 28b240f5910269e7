use num_complex::Complex64;
use num_traits::Zero;

use crate::novikov::{rat, rat_int, recognize_rational, split_square, Coeff, CoefficientField, Rational};

const MAX_DEN: i64 = 10_000;
const TOL: f64 = 1e-9;

fn real_rational(z: Complex64) -> Option<Rational> {
    if z.im.abs() > TOL * (1.0 + z.re.abs()) {
        return None;
    }
    recognize_rational(z.re, MAX_DEN, TOL)
}

/// `x = (s + ε √D) / 2` from `s = x + x'`, `p = x x'`.
fn from_conjugates(x: Complex64, s: &Rational, p: &Rational) -> Option<Coeff> {
    let disc = s * s - rat_int(4) * p;
    if disc.is_zero() {
        return None;
    }
    // disc = n/m = n m / m², √(n m) = k √d
    let nm = disc.numer() * disc.denom();
    let (k, d) = split_square(&nm);
    let d: i64 = i64::try_from(d).ok()?;
    if d == 1 {
        return None;
    }
    let b = Rational::new(k, disc.denom().clone()) * rat(1, 2);
    let a = s * rat(1, 2);
    for eps in [1, -1] {
        let c = Coeff::quadratic(a.clone(), &b * rat_int(eps), d);
        let (re, im) = c.to_complex();
        if (Complex64::new(re, im) - x).norm() < 1e-7 * (1.0 + x.norm()) {
            return Some(c);
        }
    }
    None
}

/// An element of `Q` or `Q(√d)` close to `x`, using the other values as
/// candidate Galois conjugates.
pub(crate) fn recognize(x: Complex64, others: &[Complex64]) -> Option<Coeff> {
    if let Some(r) = real_rational(x) {
        return Some(Coeff::Rational(r));
    }
    let mut candidates: Vec<Complex64> = vec![x.conj()];
    candidates.extend(others.iter().copied());
    for y in candidates {
        if (y - x).norm() < 1e-9 {
            continue;
        }
        let (Some(s), Some(p)) = (real_rational(x + y), real_rational(x * y)) else { continue };
        if let Some(c) = from_conjugates(x, &s, &p) {
            return Some(c);
        }
    }
    None
}

/// The common field of a list of exact coefficients, if there is one.
pub(crate) fn common_field(cs: &[Coeff]) -> Option<CoefficientField> {
    let mut field = CoefficientField::Rational;
    for c in cs {
        match (field, c.field()) {
            (_, CoefficientField::Rational) => {}
            (CoefficientField::Rational, f) => field = f,
            (a, b) if a == b => {}
            _ => return None,
        }
    }
    Some(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_and_cube_roots() {
        let phi = Complex64::new((1.0 + 5f64.sqrt()) / 2.0, 0.0);
        let psi = Complex64::new((1.0 - 5f64.sqrt()) / 2.0, 0.0);
        let c = recognize(phi, &[psi]).unwrap();
        assert_eq!(c, Coeff::quadratic(rat(1, 2), rat(1, 2), 5));
        let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let z = recognize(zeta, &[]).unwrap();
        assert_eq!(z, Coeff::quadratic(rat(-1, 2), rat(1, 2), -3));
        assert_eq!(recognize(Complex64::new(0.75, 0.0), &[]), Some(Coeff::frac(3, 4)));
        assert!(recognize(Complex64::new(2f64.cbrt(), 0.0), &[]).is_none());
    }

    #[test]
    fn fields_must_agree() {
        assert_eq!(common_field(&[Coeff::int(1), Coeff::sqrt_of(5)]), Some(CoefficientField::Quadratic(5)));
        assert_eq!(common_field(&[Coeff::sqrt_of(2), Coeff::sqrt_of(3)]), None);
    }
}
