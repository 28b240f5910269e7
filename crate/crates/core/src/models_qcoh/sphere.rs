use std::collections::BTreeMap;

use crate::ainfinity::{AInfCategory, CategoryBuilder};
use crate::error::{Error, Result};
use crate::graded::{Parity, Vector};
use crate::novikov::{Coeff, Exp, Novikov};

/// Sphere data: `p·p = β·1` (the `α` coefficient vanishes) and potential value `W`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereData {
    pub beta: Novikov,
    pub w: Novikov,
    pub label: String,
}

/// `{1, p}` with `p` of even degree `n`, `p·p = β·1`, `⟨1, p⟩ = ⟨p, 1⟩ = 1`.
pub fn sphere_model(d: &SphereData, n: i64, cutoff: Exp) -> Result<AInfCategory> {
    if n <= 0 || n % 2 != 0 {
        return Err(Error::invalid(format!("sphere dimension must be positive and even, got {n}")));
    }
    let mut b = CategoryBuilder::new(cutoff);
    let l = b.add_object(&d.label);
    let one = b.add_basis("1", l, l, Parity::Even)?;
    let p = b.add_basis("p", l, l, Parity::Even)?;
    b.set_degree(one, 0);
    b.set_degree(p, n);
    b.set_op(vec![one, one], Vector::basis(one, cutoff))?;
    b.set_op(vec![one, p], Vector::basis(p, cutoff))?;
    b.set_op(vec![p, one], Vector::basis(p, cutoff))?;
    if !d.beta.is_zero() {
        b.set_op(vec![p, p], Vector::single(one, d.beta.with_cutoff(cutoff)))?;
    }
    b.set_unit(l, Vector::basis(one, cutoff));
    let mut pairing = BTreeMap::new();
    pairing.insert((one, p), Novikov::one(cutoff));
    pairing.insert((p, one), Novikov::one(cutoff));
    b.set_pairing(n, pairing);
    b.set_arity_bound(Some(2));
    b.build()
}

/// `a·[L] + b·[L]²` in the ring generated by `[L]` with `[L]³ = 4β[L]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereClass {
    pub l: Novikov,
    pub l2: Novikov,
}

/// The ring spanned by `[L]`, `[L]²` for a sphere of dimension `n`, with
/// `∫[L] = 0` and `∫[L]² = (−1)^{n/2}·2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereRing {
    pub beta: Novikov,
    pub n: i64,
}

impl SphereRing {
    pub fn new(beta: Novikov, n: i64) -> Result<SphereRing> {
        if n <= 0 || n % 2 != 0 {
            return Err(Error::invalid(format!("sphere dimension must be positive and even, got {n}")));
        }
        Ok(SphereRing { beta, n })
    }

    pub fn class_l(&self) -> SphereClass {
        let c = self.beta.cutoff();
        SphereClass { l: Novikov::one(c), l2: Novikov::zero(c) }
    }

    /// `[L]·[L] = [L]²`, `[L]·[L]² = 4β[L]`, `[L]²·[L]² = 4β[L]²`.
    pub fn mul(&self, x: &SphereClass, y: &SphereClass) -> Result<SphereClass> {
        let four_beta = self.beta.scale(&Coeff::int(4))?;
        let cross = x.l.checked_mul(&y.l2)?.checked_add(&x.l2.checked_mul(&y.l)?)?;
        let l = four_beta.checked_mul(&cross)?;
        let l2 = x.l.checked_mul(&y.l)?.checked_add(&four_beta.checked_mul(&x.l2.checked_mul(&y.l2)?)?)?;
        Ok(SphereClass { l, l2 })
    }

    pub fn integral(&self, x: &SphereClass) -> Result<Novikov> {
        let sign = if (self.n / 2) % 2 == 0 { 2 } else { -2 };
        Ok(x.l2.scale(&Coeff::int(sign))?)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SphereIdempotents {
    pub ring: SphereRing,
    pub sqrt_beta: Novikov,
    pub plus: SphereClass,
    pub minus: SphereClass,
}

/// `e± = ±[L]/(4√β) + [L]²/(8β)`; `√β` may extend the coefficient field.
pub fn sphere_idempotents(d: &SphereData, n: i64) -> Result<SphereIdempotents> {
    let ring = SphereRing::new(d.beta.clone(), n)?;
    if d.beta.is_zero() {
        return Err(Error::Hypothesis(format!("β = 0 for {}: no field factors from this sphere", d.label)));
    }
    let sqrt_beta = d.beta.sqrt().map_err(|e| Error::Unsupported(format!("√β is not available: {e}")))?;
    let a = sqrt_beta.scale(&Coeff::int(4))?.inv()?;
    let b = d.beta.scale(&Coeff::int(8))?.inv()?;
    let plus = SphereClass { l: a.clone(), l2: b.clone() };
    let minus = SphereClass { l: a.neg_sign(true), l2: b };
    Ok(SphereIdempotents { ring, sqrt_beta, plus, minus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::exp;

    fn data(beta: Novikov) -> SphereData {
        let c = beta.cutoff();
        SphereData { beta, w: Novikov::zero(c), label: "S".into() }
    }

    fn sum(r: &SphereRing, x: &SphereClass, y: &SphereClass) -> SphereClass {
        let _ = r;
        SphereClass { l: x.l.checked_add(&y.l).unwrap(), l2: x.l2.checked_add(&y.l2).unwrap() }
    }

    #[test]
    fn idempotents_split_the_sphere_ring() {
        let c = exp(6, 1);
        for (beta, n) in [(Novikov::int(1, c), 2), (Novikov::monomial(Coeff::int(3), exp(1, 1), c), 4)] {
            let e = sphere_idempotents(&data(beta.clone()), n).unwrap();
            let r = &e.ring;
            assert_eq!(r.mul(&e.plus, &e.plus).unwrap(), e.plus);
            assert_eq!(r.mul(&e.minus, &e.minus).unwrap(), e.minus);
            let zero = r.mul(&e.plus, &e.minus).unwrap();
            assert!(zero.l.is_zero() && zero.l2.is_zero());
            // e⁺ + e⁻ = [L]²/(4β)
            let total = sum(r, &e.plus, &e.minus);
            let quarter = beta.scale(&Coeff::int(4)).unwrap().inv().unwrap();
            assert!(total.l.is_zero());
            assert_eq!(total.l2, quarter);
            let sign = if (n / 2) % 2 == 0 { 1 } else { -1 };
            assert_eq!(r.integral(&e.plus).unwrap(), quarter.scale(&Coeff::int(sign)).unwrap());
        }
    }

    #[test]
    fn unit_beta_in_dimension_two() {
        let c = exp(4, 1);
        let e = sphere_idempotents(&data(Novikov::one(c)), 2).unwrap();
        assert_eq!(e.plus.l, Novikov::constant(Coeff::frac(1, 4), c));
        assert_eq!(e.minus.l, Novikov::constant(Coeff::frac(-1, 4), c));
        assert_eq!(e.plus.l2, Novikov::constant(Coeff::frac(1, 8), c));
    }

    #[test]
    fn vanishing_beta_is_nilpotent() {
        let c = exp(4, 1);
        let r = SphereRing::new(Novikov::zero(c), 2).unwrap();
        let l = r.class_l();
        let l2 = r.mul(&l, &l).unwrap();
        let l3 = r.mul(&l2, &l).unwrap();
        assert!(l3.l.is_zero() && l3.l2.is_zero());
        assert!(matches!(sphere_idempotents(&data(Novikov::zero(c)), 2), Err(Error::Hypothesis(_))));
        assert!(SphereRing::new(Novikov::one(c), 3).is_err());
    }

    #[test]
    fn irrational_square_roots_extend_the_field() {
        let c = exp(4, 1);
        let e = sphere_idempotents(&data(Novikov::int(5, c)), 2).unwrap();
        assert_eq!(e.sqrt_beta, Novikov::constant(Coeff::sqrt_of(5), c));
        assert_eq!(e.ring.mul(&e.plus, &e.plus).unwrap(), e.plus);
    }
}
