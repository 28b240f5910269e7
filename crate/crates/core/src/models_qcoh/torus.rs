use crate::ainfinity::{product_sign, AInfCategory, CategoryBuilder};
use crate::error::{Error, Result};
use crate::graded::{Parity, Vector};
use crate::novikov::{rat, Coeff, Exp, Novikov};
use crate::potential::{hessian, residual_valuation, CriticalPoint, LaurentPolynomial};

use super::clifford_model;

/// `Cℓ_n` at a nondegenerate critical point `c` of `W`, with `Q = H/2` for the
/// logarithmic Hessian `H`, so that `m_2(e_i, e_j) + m_2(e_j, e_i) = H_ij·1`.
/// Higher products vanish.
pub fn torus_fiber_model(w: &LaurentPolynomial, c: &CriticalPoint) -> Result<AInfCategory> {
    let cutoff = w.cutoff().min(c.coords.first().map_or(w.cutoff(), |x| x.cutoff()));
    if let Some(r) = residual_valuation(w, &c.coords)? {
        return Err(Error::Hypothesis(format!("point is not critical: residual of valuation {r}")));
    }
    let h = hessian(w, &c.coords)?;
    if !h.nondegenerate {
        return Err(Error::Hypothesis("degenerate critical point has no Clifford model".into()));
    }
    let n = w.nvars();
    let half = Coeff::Rational(rat(1, 2));
    let q = (0..n)
        .map(|i| (0..n).map(|j| Ok(h.matrix.get(i, j).with_cutoff(cutoff).scale(&half)?)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    clifford_model(&q, cutoff)
}

/// Two torus fibers `L_1`, `L_2` of rank one with local systems `b_1`, `b_2`:
/// `End(L_i) = {1_i}` and the cross complex `Hom(L_1, L_2) = {u, v}` with
/// `m_1(u) = (b_2 − b_1) v`. Only the units compose.
pub fn cross_floer_model(b1: &Novikov, b2: &Novikov, cutoff: Exp) -> Result<AInfCategory> {
    let mut b = CategoryBuilder::new(cutoff);
    let l1 = b.add_object("L1");
    let l2 = b.add_object("L2");
    let one1 = b.add_basis("1_1", l1, l1, Parity::Even)?;
    let one2 = b.add_basis("1_2", l2, l2, Parity::Even)?;
    let u = b.add_basis("u", l1, l2, Parity::Even)?;
    let v = b.add_basis("v", l1, l2, Parity::Odd)?;
    let diff = b2.checked_sub(b1)?.with_cutoff(cutoff);
    if !diff.is_zero() {
        b.set_op(vec![u], Vector::single(v, diff))?;
    }
    for (one, x) in [(one1, one1), (one2, one2)] {
        b.set_op(vec![one, x], Vector::basis(x, cutoff))?;
    }
    for x in [u, v] {
        let p = if x == u { Parity::Even } else { Parity::Odd };
        // x ∈ Hom(L_1, L_2): the word (1_1, x) composes, as does (x, 1_2)
        let left = product_sign(Parity::Even, p);
        let right = product_sign(p, Parity::Even);
        b.set_op(vec![one1, x], Vector::single(x, left.apply(&Novikov::one(cutoff))))?;
        b.set_op(vec![x, one2], Vector::single(x, right.apply(&Novikov::one(cutoff))))?;
    }
    b.set_unit(l1, Vector::basis(one1, cutoff));
    b.set_unit(l2, Vector::basis(one2, cutoff));
    b.set_arity_bound(Some(2));
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfinity::{check_ainf, check_unital, cohomology_category};
    use crate::linalg::Certification;
    use crate::potential::{critical_points, parse_potential, CritOptions};

    fn e() -> Exp {
        Exp::from_integer(4)
    }

    #[test]
    fn circle_fiber_squares_to_half_the_hessian() {
        let w = parse_potential("y + T/y", e()).unwrap();
        let set = critical_points(&w, &CritOptions::new(e())).unwrap();
        for c in &set.points {
            let cat = torus_fiber_model(&w, c).unwrap();
            let p = cat.basis_id("e1").unwrap();
            let expected = c.hessian.get(0, 0).scale(&Coeff::Rational(rat(1, 2))).unwrap();
            assert_eq!(cat.m(&[p, p]), Vector::single(0, expected));
        }
    }

    #[test]
    fn degenerate_points_are_rejected() {
        let w = parse_potential("y1/y2 + y2/y1 + y1", e()).unwrap();
        let fake = CriticalPoint {
            coords: vec![Novikov::one(e()), Novikov::one(e())],
            value: Novikov::zero(e()),
            hessian: crate::linalg::Matrix::zero(2, 2, e()),
            hessian_det: Novikov::zero(e()),
            nondegenerate: false,
            valuation: vec![Exp::from_integer(0); 2],
            field: crate::novikov::CoefficientField::Rational,
        };
        assert!(torus_fiber_model(&w, &fake).is_err());
        let flat = parse_potential("y1/y2 + y2/y1", e()).unwrap();
        assert!(matches!(torus_fiber_model(&flat, &fake), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn cross_complex_is_acyclic_for_distinct_points() {
        let cert = Certification::new(e(), Exp::from_integer(0));
        let b1 = Novikov::int(1, e());
        let b2 = Novikov::int(-1, e());
        let cat = cross_floer_model(&b1, &b2, e()).unwrap();
        assert!(check_ainf(&cat, 3, &cert).unwrap().passed());
        assert!(check_unital(&cat, 3, &cert).unwrap().passed());
        let h = cohomology_category(&cat, &cert).unwrap();
        assert_eq!(h.hom_a(0, 1).dim(), 0);
        let same = cross_floer_model(&b1, &b1, e()).unwrap();
        let h = cohomology_category(&same, &cert).unwrap();
        assert_eq!(h.hom_a(0, 1).dims(), [1, 1]);
    }
}
