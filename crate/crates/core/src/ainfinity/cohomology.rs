use std::collections::BTreeMap;

use super::{product_sign, AInfCategory, BasisId, ObjId};
use crate::error::{Error, Result};
use crate::graded::{Parity, Vector};
use crate::linalg::{Certification, Elimination};

/// `H(Hom_A(X, Y), m_1)` with chosen cycle representatives.
#[derive(Clone, Debug)]
pub struct HomCohomology {
    pub src: ObjId,
    pub tgt: ObjId,
    pub reps: Vec<Vector>,
    pub parities: Vec<Parity>,
    elim: Elimination,
    n_boundaries: usize,
}

impl HomCohomology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn dims(&self) -> [usize; 2] {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        [self.reps.len() - odd, odd]
    }

    /// Coordinates of the class of a cycle in the representative basis.
    pub fn class_of(&self, v: &Vector) -> Result<Vector> {
        let combo = self
            .elim
            .solve(v)?
            .ok_or_else(|| Error::invalid("vector is not an m1-cycle"))?;
        Ok(Vector::from_entries(
            combo
                .iter()
                .filter(|(i, _)| *i >= self.n_boundaries)
                .map(|(i, c)| (i - self.n_boundaries, c.clone())),
        ))
    }

    pub fn is_exact(&self, v: &Vector) -> Result<bool> {
        Ok(self.class_of(v)?.is_zero())
    }
}

/// Cohomology category with `Hom_H(X, Y) = H Hom_A(Y, X)` and composition
/// `f ∘ g = (-1)^{|f||g| + |f|} [m_2](f, g)`.
#[derive(Clone, Debug)]
pub struct CohomologyCategory {
    homs: BTreeMap<(ObjId, ObjId), HomCohomology>,
}

impl CohomologyCategory {
    /// `H Hom_A(x, y)`.
    pub fn hom_a(&self, x: ObjId, y: ObjId) -> &HomCohomology {
        &self.homs[&(x, y)]
    }

    /// Structure constants of the composition `Hom_H(Y,Z) ⊗ Hom_H(X,Y) → Hom_H(X,Z)`
    /// in the representative bases, as a map `(f, g) ↦ coordinates`.
    pub fn compose(&self, cat: &AInfCategory, x: ObjId, y: ObjId, z: ObjId, f: usize, g: usize) -> Result<Vector> {
        // g ∈ H Hom_A(Y, X), f ∈ H Hom_A(Z, Y): m2(f, g) ∈ Hom_A(Z, X)
        let hg = self.hom_a(y, x);
        let hf = self.hom_a(z, y);
        let (fv, gv) = (&hf.reps[f], &hg.reps[g]);
        let sign = product_sign(hf.parities[f], hg.parities[g]);
        let v = cat.m_vec(&[fv.clone(), gv.clone()]).signed(sign);
        self.hom_a(z, x).class_of(&v)
    }

    /// Coordinates of the unit of `End_H(X)`.
    pub fn unit(&self, cat: &AInfCategory, x: ObjId) -> Result<Vector> {
        let e = cat.unit(x).ok_or_else(|| Error::invalid(format!("object `{}` has no unit", cat.objects()[x])))?;
        self.hom_a(x, x).class_of(e)
    }
}

pub fn cohomology_category(cat: &AInfCategory, cert: &Certification) -> Result<CohomologyCategory> {
    let n = cat.objects().len();
    let mut homs = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            homs.insert((x, y), hom_cohomology(cat, x, y, cert)?);
        }
    }
    Ok(CohomologyCategory { homs })
}

fn m1_on(cat: &AInfCategory, v: &Vector) -> Vector {
    let mut out = Vector::zero();
    for (x, c) in v.iter() {
        out.add_scaled(c, &cat.m(&[x]));
    }
    out
}

fn hom_cohomology(cat: &AInfCategory, x: ObjId, y: ObjId, cert: &Certification) -> Result<HomCohomology> {
    let basis: &[BasisId] = cat.hom(x, y);
    for &b in basis {
        if !cert.is_zero_vector(&m1_on(cat, &cat.m(&[b])))? {
            return Err(Error::Hypothesis(format!("m1 does not square to zero on `{}`", cat.label(b))));
        }
    }
    let boundaries: Vec<Vector> = basis.iter().map(|&b| cat.m(&[b])).filter(|v| !v.is_zero()).collect();
    let mut elim = Elimination::new(*cert);
    for b in &boundaries {
        elim.push(b)?;
    }
    let mut reps = Vec::new();
    let mut parities = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let part: Vec<BasisId> = basis.iter().copied().filter(|&b| cat.parity(b) == parity).collect();
        let images: Vec<Vector> = part.iter().map(|&b| cat.m(&[b])).collect();
        let kernel = Elimination::run(&images, *cert)?;
        for z in kernel.kernel() {
            let cycle = Vector::from_entries(z.iter().map(|(k, c)| (part[k], c.clone())));
            if elim.push(&cycle)? {
                reps.push(cycle);
                parities.push(parity);
            }
        }
    }
    // rebuild so that the pushed columns are exactly boundaries followed by reps
    let mut fresh = Elimination::new(*cert);
    for v in boundaries.iter().chain(&reps) {
        fresh.push(v)?;
    }
    Ok(HomCohomology { src: x, tgt: y, reps, parities, elim: fresh, n_boundaries: boundaries.len() })
}
