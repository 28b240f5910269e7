use std::fmt;

use super::{z_x, DualBasisTable};
use crate::ainfinity::{cohomology_category, AInfCategory, ObjId};
use crate::error::{Error, Result};
use crate::graded::Vector;
use crate::hochschild::{chain_homology, include_chain, Chain, Subcategory};
use crate::linalg::{Certification, Elimination};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Generated,
    NotGenerated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Generated => "generated",
            Verdict::NotGenerated => "not generated",
        })
    }
}

/// Outcome of solving `[1_K] ∈ im([Z_K] ∘ [c_B])` over the computed `HH_•(B)`.
#[derive(Clone, Debug)]
pub struct SplitGenCertificate {
    pub target: ObjId,
    pub subcategory: Vec<ObjId>,
    pub length: usize,
    /// Witness chain of `B`, included into the ambient category.
    pub witness: Chain,
    /// Coordinates of `[Z_K(c_B X_r)]` per homology representative `X_r`.
    pub images: Vec<Vector>,
    /// Class of `1_K` minus the best approximation from the images.
    pub residual: Vector,
    pub verdict: Verdict,
}

pub fn split_generation_check(
    cat: &AInfCategory,
    subcategory: &[ObjId],
    k: ObjId,
    length: usize,
    cert: &Certification,
) -> Result<SplitGenCertificate> {
    if k >= cat.objects().len() {
        return Err(Error::UnknownObject(format!("#{k}")));
    }
    if !cat.is_flat() || !cat.is_unital() {
        return Err(Error::Hypothesis("split generation needs a flat unital category".into()));
    }
    let sub = Subcategory::new(cat, subcategory)?;
    let hh = chain_homology(&sub.cat, length, cert)?;
    hh.homology.require_stabilized()?;
    let table = DualBasisTable::new(cat)?;
    let coh = cohomology_category(cat, cert)?;
    let end_k = coh.hom_a(k, k);
    let unit = cat.unit(k).ok_or_else(|| Error::invalid(format!("object `{}` has no unit", cat.objects()[k])))?;
    let target = end_k.class_of(unit)?;
    let mut images = Vec::with_capacity(hh.dim());
    for rep in &hh.reps {
        let z = z_x(cat, &include_chain(&sub, rep), k, &table)?;
        images.push(end_k.class_of(&z)?);
    }
    let elim = Elimination::run(&images, *cert)?;
    let (residual, combo) = elim.reduce(&target)?;
    let generated = cert.is_zero_vector(&residual)?;
    let witness = if generated { include_chain(&sub, &hh.chain(&combo)) } else { Chain::zero() };
    Ok(SplitGenCertificate {
        target: k,
        subcategory: subcategory.to_vec(),
        length,
        witness,
        images,
        residual,
        verdict: if generated { Verdict::Generated } else { Verdict::NotGenerated },
    })
}
