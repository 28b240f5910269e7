//! Energy-graded Floer-type algebras on one Lagrangian and their
//! deformation by weak bounding cochains.

use std::collections::BTreeMap;

use super::{AInfCategory, BasisId, CategoryBuilder};
use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Parity, Vector};
use crate::novikov::{Coeff, Exp, Novikov};

/// Structure maps `m_{s,β}` of one disk class.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassOps {
    /// Explicit basis-tuple table; the empty tuple holds `m_{0,β}`.
    Table(BTreeMap<Vec<BasisId>, Vector>),
    /// `m_{s,β}(x_1, .., x_s) = n_β Π⟨∂β, x_k⟩ / s! · 1` on degree-one inputs,
    /// zero whenever an input lies outside the degree-one part.
    Divisor { n_beta: Coeff },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiskClass {
    pub name: String,
    /// `ω(β)/2π`.
    pub energy: Exp,
    pub maslov: i64,
    /// `∂β` in the coordinates dual to [`EnergyGradedAlgebra::h1`].
    pub boundary: Vec<i64>,
    pub ops: ClassOps,
}

#[derive(Clone, Debug)]
pub struct EnergyGradedAlgebra {
    pub cutoff: Exp,
    pub space: GradedSpace,
    pub degrees: Vec<i64>,
    pub unit: BasisId,
    /// Degree-one basis elements, in the order of the boundary coordinates.
    pub h1: Vec<BasisId>,
    /// `m_{s,0}`.
    pub classical: BTreeMap<Vec<BasisId>, Vector>,
    pub classes: Vec<DiskClass>,
    pub pairing_degree: i64,
    pub pairing: BTreeMap<(BasisId, BasisId), Novikov>,
}

/// A local system together with `b₊`.
#[derive(Clone, Debug)]
pub struct BoundingCochain {
    /// `ρ` on the boundary coordinates.
    pub rho: Vec<Novikov>,
    pub b_plus: Vector,
}

#[derive(Clone, Debug)]
pub struct Deformed {
    pub category: AInfCategory,
    pub potential: Novikov,
}

impl EnergyGradedAlgebra {
    /// Torus `T^n` cohomology: basis `e_S` for subsets `S ⊆ {1..n}` with cup
    /// product model `m_{2,0}(x, y) = (-1)^{|x||y|+|x|} x ∪ y` and the
    /// Poincaré pairing `⟨x, y⟩ = (-1)^{|x||y|+|x|} ∫ x ∪ y`.
    pub fn torus(n: usize, cutoff: Exp) -> EnergyGradedAlgebra {
        let subsets: Vec<u32> = {
            let mut s: Vec<u32> = (0..1u32 << n).collect();
            s.sort_by_key(|m| (m.count_ones(), *m));
            s
        };
        let label = |m: u32| -> String {
            if m == 0 {
                "1".into()
            } else {
                let idx: Vec<String> = (0..n).filter(|i| m & (1 << i) != 0).map(|i| (i + 1).to_string()).collect();
                format!("e{}", idx.join(""))
            }
        };
        let index: BTreeMap<u32, usize> = subsets.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let basis: Vec<(String, Parity)> = subsets.iter().map(|&m| (label(m), Parity::of(m.count_ones() as i64))).collect();
        let degrees = subsets.iter().map(|m| m.count_ones() as i64).collect();
        let space = GradedSpace::new(basis).expect("distinct labels");
        let mut classical = BTreeMap::new();
        let mut pairing = BTreeMap::new();
        let top = (1u32 << n) - 1;
        for &a in &subsets {
            for &b in &subsets {
                let Some(sign) = wedge_sign(a, b) else { continue };
                let (pa, pb) = (Parity::of(a.count_ones() as i64), Parity::of(b.count_ones() as i64));
                let total = sign * super::product_sign(pa, pb);
                let value = Vector::single(index[&(a | b)], total.apply(&Novikov::one(cutoff)));
                classical.insert(vec![index[&a], index[&b]], value);
                if a | b == top {
                    pairing.insert((index[&a], index[&b]), total.apply(&Novikov::one(cutoff)));
                }
            }
        }
        EnergyGradedAlgebra {
            cutoff,
            space,
            degrees,
            unit: 0,
            h1: (0..n).map(|i| index[&(1 << i)]).collect(),
            classical,
            classes: Vec::new(),
            pairing_degree: n as i64,
            pairing,
        }
    }

    pub fn with_divisor_class(mut self, name: &str, energy: Exp, boundary: Vec<i64>, n_beta: Coeff) -> Self {
        self.classes.push(DiskClass { name: name.to_string(), energy, maslov: 2, boundary, ops: ClassOps::Divisor { n_beta } });
        self
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn class_value(&self, class: &DiskClass, word: &[BasisId]) -> Vector {
        match &class.ops {
            ClassOps::Table(t) => t.get(word).cloned().unwrap_or_default(),
            ClassOps::Divisor { n_beta } => {
                let mut c = n_beta.clone();
                for &x in word {
                    match self.h1.iter().position(|&h| h == x) {
                        Some(i) => c = c * Coeff::int(class.boundary.get(i).copied().unwrap_or(0)),
                        None => return Vector::zero(),
                    }
                }
                let fact: i64 = (1..=word.len() as i64).product();
                Vector::single(self.unit, Novikov::constant(c.checked_div(&Coeff::int(fact)).expect("nonzero factorial"), self.cutoff))
            }
        }
    }

    /// `ρ(∂β)`.
    pub fn holonomy(&self, rho: &[Novikov], class: &DiskClass) -> Result<Novikov> {
        let mut acc = Novikov::one(self.cutoff);
        for (i, &k) in class.boundary.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let r = rho.get(i).ok_or_else(|| Error::invalid("local system has too few coordinates"))?;
            acc = acc.checked_mul(&r.pow(k)?)?;
        }
        Ok(acc)
    }

    /// `Σ_l m_{s+Σl, β}(b^{l_0}, x_1, b^{l_1}, .., x_s, b^{l_s})` for one class
    /// (`None` is the classical part), with all terms below the cutoff.
    fn insertions(&self, class: Option<&DiskClass>, b: &Vector, word: &[BasisId], weight: &Novikov, out: &mut Vector) {
        let mut current = Vec::new();
        self.insert_rec(class, b, word, 0, &mut current, weight, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn insert_rec(
        &self,
        class: Option<&DiskClass>,
        b: &Vector,
        word: &[BasisId],
        next: usize,
        current: &mut Vec<BasisId>,
        weight: &Novikov,
        out: &mut Vector,
    ) {
        if weight.is_zero() {
            return;
        }
        // close the current slot: either emit or move past the next letter
        if next == word.len() {
            let v = match class {
                Some(c) => self.class_value(c, current),
                None if current.is_empty() => Vector::zero(),
                None => self.classical.get(current.as_slice()).cloned().unwrap_or_default(),
            };
            out.add_scaled(weight, &v);
        } else {
            current.push(word[next]);
            self.insert_rec(class, b, word, next + 1, current, weight, out);
            current.pop();
        }
        // or insert one more b into the current slot
        for (x, c) in b.iter() {
            let w = weight * c;
            if w.is_zero() {
                continue;
            }
            current.push(x);
            self.insert_rec(class, b, word, next, current, &w, out);
            current.pop();
        }
    }

    /// `m_{s,b}(word)` including the classical part.
    pub fn deformed_op(&self, bc: &BoundingCochain, word: &[BasisId]) -> Result<Vector> {
        let mut out = Vector::zero();
        let one = Novikov::one(self.cutoff);
        self.insertions(None, &bc.b_plus, word, &one, &mut out);
        for class in &self.classes {
            if class.energy >= self.cutoff {
                continue;
            }
            let weight = self.holonomy(&bc.rho, class)?.shift(class.energy);
            self.insertions(Some(class), &bc.b_plus, word, &weight, &mut out);
        }
        Ok(out)
    }

    fn validate(&self, bc: &BoundingCochain) -> Result<()> {
        for (x, c) in bc.b_plus.iter() {
            if self.space.parity(x).is_even() {
                return Err(Error::invalid(format!("b₊ has an even component `{}`", self.space.label(x))));
            }
            match c.valuation() {
                Some(v) if v > Exp::from_integer(0) => {}
                _ => return Err(Error::invalid("nonconvergent input: b₊ needs coefficients of positive valuation")),
            }
        }
        for class in &self.classes {
            if class.boundary.len() > bc.rho.len() && class.boundary[bc.rho.len()..].iter().any(|&k| k != 0) {
                return Err(Error::invalid("local system has too few coordinates"));
            }
        }
        Ok(())
    }

    /// Potential value from the curvature `m_{0,b}`; fails unless it is a
    /// multiple of the unit.
    pub fn potential(&self, bc: &BoundingCochain) -> Result<Novikov> {
        self.validate(bc)?;
        let m0 = self.deformed_op(bc, &[])?;
        let w = m0.coeff(self.unit, self.cutoff);
        if m0.support().any(|x| x != self.unit) {
            return Err(Error::Hypothesis("not weakly unobstructed at this b".into()));
        }
        Ok(w)
    }

    /// Builds the flat algebra `(H, m_{s,b})_{1 <= s <= max_arity}` and its potential.
    pub fn deform_by_mc(&self, bc: &BoundingCochain, max_arity: usize) -> Result<Deformed> {
        let potential = self.potential(bc)?;
        let mut builder = CategoryBuilder::new(self.cutoff);
        let l = builder.add_object("L");
        for i in 0..self.dim() {
            let id = builder.add_basis(self.space.label(i), l, l, self.space.parity(i))?;
            builder.set_degree(id, self.degrees[i]);
        }
        let words = AllWords::new(self.dim());
        for s in 1..=max_arity {
            for w in words.of_length(s) {
                let v = self.deformed_op(bc, &w)?;
                if !v.is_zero() {
                    builder.set_op(w, v)?;
                }
            }
        }
        builder.set_unit(l, Vector::basis(self.unit, self.cutoff));
        builder.set_pairing(self.pairing_degree, self.pairing.clone());
        builder.set_arity_bound(Some(max_arity));
        Ok(Deformed { category: builder.build()?, potential })
    }

    /// `i*_{L,b}(η) = Σ ⟨η, β⟩ ρ(∂β) T^{ω(β)} m_{s,β}(b, .., b)`, checked to be
    /// `m_{1,b}`-closed.
    pub fn divisor_element(&self, bc: &BoundingCochain, pairings: &[Coeff]) -> Result<Vector> {
        self.potential(bc)?;
        if pairings.len() != self.classes.len() {
            return Err(Error::invalid("one pairing per disk class expected"));
        }
        let mut out = Vector::zero();
        for (class, eta) in self.classes.iter().zip(pairings) {
            if eta.is_zero() || class.energy >= self.cutoff {
                continue;
            }
            let weight = self.holonomy(&bc.rho, class)?.shift(class.energy).scale(eta)?;
            self.insertions(Some(class), &bc.b_plus, &[], &weight, &mut out);
        }
        let mut closed = Vector::zero();
        for (x, c) in out.iter() {
            closed.add_scaled(c, &self.deformed_op(bc, &[x])?);
        }
        if !closed.is_zero() {
            return Err(Error::Hypothesis("divisor element is not m1-closed".into()));
        }
        Ok(out)
    }
}

/// Sign of `e_a ∧ e_b = ± e_{a ∪ b}`, or `None` if they overlap.
fn wedge_sign(a: u32, b: u32) -> Option<crate::graded::Sign> {
    if a & b != 0 {
        return None;
    }
    // number of pairs (i in a, j in b) with i > j
    let mut inversions = 0;
    for i in 0..32 {
        if a & (1 << i) != 0 {
            inversions += (b & ((1u32 << i) - 1)).count_ones();
        }
    }
    Some(crate::graded::Sign::pow(Parity::of(inversions as i64)))
}

struct AllWords {
    dim: usize,
}

impl AllWords {
    fn new(dim: usize) -> Self {
        AllWords { dim }
    }

    fn of_length(&self, s: usize) -> Vec<Vec<BasisId>> {
        let mut out = vec![Vec::new()];
        for _ in 0..s {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..self.dim).map(move |x| {
                        let mut v = w.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfinity::{check_ainf, check_cyclic, check_unital};
    use crate::linalg::Certification;
    use crate::novikov::exp;

    fn cert(e: Exp) -> Certification {
        Certification::new(e, Exp::from_integer(0))
    }

    #[test]
    fn undeformed_torus_is_flat_with_zero_potential() {
        let e = Exp::from_integer(3);
        let f = EnergyGradedAlgebra::torus(2, e);
        let bc = BoundingCochain { rho: vec![Novikov::one(e); 2], b_plus: Vector::zero() };
        let d = f.deform_by_mc(&bc, 3).unwrap();
        assert!(d.potential.is_zero());
        assert!(check_ainf(&d.category, 4, &cert(e)).unwrap().passed());
        assert!(check_unital(&d.category, 4, &cert(e)).unwrap().passed());
        assert!(check_cyclic(&d.category, 3, true, &cert(e)).unwrap().passed());
    }

    #[test]
    fn rejects_nonconvergent_b() {
        let e = Exp::from_integer(3);
        let f = EnergyGradedAlgebra::torus(1, e);
        let bc = BoundingCochain { rho: vec![Novikov::one(e)], b_plus: Vector::basis(1, e) };
        assert!(f.potential(&bc).is_err());
    }

    #[test]
    fn cp1_fiber_potential() {
        let e = Exp::from_integer(4);
        let lambda = exp(3, 2);
        let f = EnergyGradedAlgebra::torus(1, e)
            .with_divisor_class("b1", Exp::from_integer(0), vec![1], Coeff::one())
            .with_divisor_class("b2", lambda, vec![-1], Coeff::one());
        let y = Novikov::int(2, e);
        let bc = BoundingCochain { rho: vec![y.clone()], b_plus: Vector::zero() };
        let w = f.potential(&bc).unwrap();
        let expected = &y + &Novikov::monomial(Coeff::frac(1, 2), lambda, e);
        assert_eq!(w, expected);
    }
}
