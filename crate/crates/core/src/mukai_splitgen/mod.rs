//! Mukai pairing, traces, the `Z` maps, the bar complex `Y^r ⊗_B Y^l` and
//! the split-generation certificate.

mod bar;
mod dual;
mod splitgen;
mod zmap;

pub use bar::{bar_differential, delta_chain, m_k, BarElement};
pub use dual::DualBasisTable;
pub use splitgen::{split_generation_check, SplitGenCertificate, Verdict};
pub use zmap::{z_map, z_x};

use crate::ainfinity::{AInfCategory, BasisId};
use crate::error::{Error, Result};
use crate::graded::{Parity, Sign};
use crate::hochschild::{b11, chain_word_parity, Chain, Cochain};
use crate::novikov::Novikov;

fn reduced_range(cat: &AInfCategory, w: &[BasisId], from: usize, to_inclusive: usize) -> Parity {
    if from > to_inclusive {
        Parity::Even
    } else {
        cat.reduced(&w[from..=to_inclusive])
    }
}

/// `⟨x_0[x_1|..|x_s], x'_0[x'_1|..|x'_t]⟩` on single words.
pub fn mukai_words(cat: &AInfCategory, w: &[BasisId], v: &[BasisId]) -> Novikov {
    let (s, t) = (w.len() - 1, v.len() - 1);
    let pv = chain_word_parity(cat, v);
    let mut acc = cat.zero();
    let mut inner_word = Vec::new();
    let mut prefix = Vec::new();
    for i in 0..=s {
        let tail = reduced_range(cat, w, i + 1, s);
        let head = reduced_range(cat, w, 0, i);
        for j in 0..=i {
            let left = reduced_range(cat, w, 0, j);
            prefix.clear();
            prefix.extend_from_slice(&w[i + 1..]);
            prefix.extend_from_slice(&w[..=j]);
            for k in 0..=t {
                let rot = reduced_range(cat, v, 0, k) * reduced_range(cat, v, k + 1, t);
                for l in 0..=k {
                    for &xpp in cat.hom(cat.tgt(w[i]), cat.tgt(v[k])) {
                        inner_word.clear();
                        inner_word.extend_from_slice(&w[j + 1..=i]);
                        inner_word.push(xpp);
                        inner_word.extend_from_slice(&v[k + 1..]);
                        inner_word.extend_from_slice(&v[..=l]);
                        let inner = cat.m(&inner_word);
                        if inner.is_zero() {
                            continue;
                        }
                        let outer = cat.m_insert(&prefix, &inner, &v[l + 1..=k]);
                        let Some(c) = outer.get(xpp) else { continue };
                        let sign = Parity::Odd + tail + left + cat.parity(xpp) * pv + head * tail + rot;
                        acc = acc + Sign::pow(sign).apply(c);
                    }
                }
            }
        }
    }
    acc
}

/// Mukai pairing of two chains.
pub fn mukai(cat: &AInfCategory, x: &Chain, y: &Chain) -> Novikov {
    let mut acc = cat.zero();
    for (w, a) in x.iter() {
        for (v, b) in y.iter() {
            let m = mukai_words(cat, w, v);
            if !m.is_zero() {
                acc = acc + a * b * &m;
            }
        }
    }
    acc
}

/// `∫ x_0 = ⟨1_{X_0}, x_0⟩` on length-zero words, zero on the rest.
pub fn trace(cat: &AInfCategory, x: &Chain) -> Result<Novikov> {
    if cat.pairing().is_none() {
        return Err(Error::invalid("no cyclic pairing declared"));
    }
    let mut acc = cat.zero();
    for (w, c) in x.iter() {
        if w.len() != 1 {
            continue;
        }
        let obj = cat.src(w[0]);
        let unit = cat.unit(obj).ok_or_else(|| Error::invalid(format!("object `{}` has no unit", cat.objects()[obj])))?;
        let p = cat.pair_vec(unit, &crate::graded::Vector::basis(w[0], cat.cutoff()));
        acc = acc + c * &p;
    }
    Ok(acc)
}

/// `⟨φ, X⟩ = ∫ b^{1|1}(φ; X)`.
pub fn cyc_pair(cat: &AInfCategory, phi: &Cochain, x: &Chain) -> Result<Novikov> {
    trace(cat, &b11(cat, phi, x))
}

/// Gram matrix of the Mukai pairing on a list of chains.
pub fn mukai_gram(cat: &AInfCategory, chains: &[Chain]) -> Vec<Vec<Novikov>> {
    chains.iter().map(|x| chains.iter().map(|y| mukai(cat, x, y)).collect()).collect()
}
