use std::collections::HashMap;

use super::{Chain, Cochain};
use crate::ainfinity::{AInfCategory, BasisId, ObjId};
use crate::error::{Error, Result};
use crate::graded::Vector;

/// A full subcategory together with its embedding into the ambient category.
#[derive(Clone, Debug)]
pub struct Subcategory {
    pub cat: AInfCategory,
    /// Ambient id of each object of `cat`.
    pub objects: Vec<ObjId>,
    /// Ambient id of each basis element of `cat`.
    pub basis: Vec<BasisId>,
    back: HashMap<BasisId, BasisId>,
}

impl Subcategory {
    pub fn new(ambient: &AInfCategory, objects: &[ObjId]) -> Result<Subcategory> {
        let (cat, basis) = ambient.full_subcategory(objects)?;
        let back = basis.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        Ok(Subcategory { cat, objects: objects.to_vec(), basis, back })
    }

    pub fn by_names(ambient: &AInfCategory, names: &[&str]) -> Result<Subcategory> {
        let ids = names.iter().map(|n| ambient.object_id(n)).collect::<Result<Vec<_>>>()?;
        Subcategory::new(ambient, &ids)
    }

    pub fn to_ambient(&self, v: &Vector) -> Vector {
        Vector::from_entries(v.iter().map(|(i, c)| (self.basis[i], c.clone())))
    }

    /// Drops the components outside the subcategory.
    pub fn to_sub(&self, v: &Vector) -> Vector {
        Vector::from_entries(v.iter().filter_map(|(i, c)| self.back.get(&i).map(|&j| (j, c.clone()))))
    }

    fn word_to_ambient(&self, w: &[BasisId]) -> Vec<BasisId> {
        w.iter().map(|&x| self.basis[x]).collect()
    }
}

/// `r_B`: the restriction of a cochain to the words of `B`.
pub fn restrict_cochain(sub: &Subcategory, phi: &Cochain) -> Cochain {
    let mut out = Cochain::zero(phi.parity(), phi.length());
    for (k, &x) in sub.objects.iter().enumerate() {
        out.set_object(k, sub.to_sub(&phi.object_part(x)));
    }
    for (w, v) in phi.words() {
        if let Some(word) = w.iter().map(|x| sub.back.get(x).copied()).collect::<Option<Vec<_>>>() {
            out.set(word, sub.to_sub(v));
        }
    }
    out
}

/// `c_B`: the inclusion of chains of `B`.
pub fn include_chain(sub: &Subcategory, x: &Chain) -> Chain {
    let mut out = Chain::zero();
    for (w, c) in x.iter() {
        out.add_term(sub.word_to_ambient(w), c);
    }
    out
}

/// `r_X`: the length-zero component `φ_X`.
pub fn restrict_to_object(cat: &AInfCategory, phi: &Cochain, x: ObjId) -> Result<Vector> {
    if x >= cat.objects().len() {
        return Err(Error::UnknownObject(format!("#{x}")));
    }
    Ok(phi.object_part(x))
}

/// `c_X`: an endomorphism of `X` as a length-zero chain.
pub fn include_object(cat: &AInfCategory, x: ObjId, v: &Vector) -> Result<Chain> {
    if x >= cat.objects().len() {
        return Err(Error::UnknownObject(format!("#{x}")));
    }
    let mut out = Chain::zero();
    for (y, c) in v.iter() {
        if cat.src(y) != x || cat.tgt(y) != x {
            return Err(Error::invalid(format!("`{}` is not an endomorphism of `{}`", cat.label(y), cat.objects()[x])));
        }
        out.add_term(vec![y], c);
    }
    Ok(out)
}

/// Left inverse of [`include_chain`]: keeps the words inside `B`.
pub fn restrict_chain(sub: &Subcategory, x: &Chain) -> Chain {
    let mut out = Chain::zero();
    for (w, c) in x.iter() {
        if let Some(word) = w.iter().map(|y| sub.back.get(y).copied()).collect::<Option<Vec<_>>>() {
            out.add_term(word, c);
        }
    }
    out
}
