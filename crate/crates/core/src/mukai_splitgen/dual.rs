use std::collections::BTreeMap;

use crate::ainfinity::{AInfCategory, BasisId};
use crate::error::{Error, Result};
use crate::graded::Vector;

/// For every basis element `e_β ∈ Hom(X, Y)` the dual `e^β ∈ Hom(Y, X)` with
/// `⟨e^β, e_γ⟩ = δ`.
#[derive(Clone, Debug)]
pub struct DualBasisTable {
    duals: BTreeMap<BasisId, Vector>,
}

impl DualBasisTable {
    pub fn new(cat: &AInfCategory) -> Result<DualBasisTable> {
        if cat.pairing().is_none() {
            return Err(Error::invalid("no cyclic pairing declared"));
        }
        let n = cat.objects().len();
        let mut duals = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                let e = cat.hom(x, y);
                if e.is_empty() {
                    continue;
                }
                let f = cat.hom(y, x);
                if f.len() != e.len() {
                    return Err(Error::Hypothesis(format!(
                        "pairing between Hom({0},{1}) and Hom({1},{0}) cannot be perfect",
                        cat.objects()[x],
                        cat.objects()[y]
                    )));
                }
                // rows f_α, columns e_β
                let g = cat.gram(y, x);
                let inv = g.inverse().map_err(|_| {
                    Error::Hypothesis(format!("singular Gram matrix on Hom({}, {})", cat.objects()[x], cat.objects()[y]))
                })?;
                for (bi, &eb) in e.iter().enumerate() {
                    let v = Vector::from_entries(f.iter().enumerate().map(|(ai, &fa)| (fa, inv.get(bi, ai).clone())));
                    duals.insert(eb, v);
                }
            }
        }
        Ok(DualBasisTable { duals })
    }

    pub fn dual(&self, e: BasisId) -> &Vector {
        &self.duals[&e]
    }

    /// Largest deviation from `⟨e^β, e_γ⟩ = δ`, as a list of failing pairs.
    pub fn violations(&self, cat: &AInfCategory) -> Vec<(BasisId, BasisId)> {
        let mut out = Vec::new();
        for (&eb, d) in &self.duals {
            let (x, y) = (cat.src(eb), cat.tgt(eb));
            for &ec in cat.hom(x, y) {
                let p = cat.pair_vec(d, &Vector::basis(ec, cat.cutoff()));
                let ok = if ec == eb { p.is_one() } else { p.is_zero() };
                if !ok {
                    out.push((eb, ec));
                }
            }
        }
        out
    }
}
