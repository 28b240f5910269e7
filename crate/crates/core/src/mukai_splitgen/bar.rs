use std::collections::BTreeMap;
use std::fmt;

use super::{reduced_range, DualBasisTable};
use crate::ainfinity::{AInfCategory, BasisId, ObjId};
use crate::error::{Error, Result};
use crate::graded::{Parity, Sign, Vector};
use crate::hochschild::{chain_word_parity, include_chain, Chain, Subcategory};
use crate::novikov::Novikov;

/// Element of `Y^r_K ⊗_B Y^l_K`: combinations of `m ⊗ x_1 ⊗ .. ⊗ x_s ⊗ n`
/// with `m ∈ Hom(K, X_0)`, `x_i ∈ Hom(X_{i-1}, X_i)` in `B`, `n ∈ Hom(X_s, K)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BarElement {
    terms: BTreeMap<(BasisId, Vec<BasisId>, BasisId), Novikov>,
}

impl BarElement {
    pub fn zero() -> BarElement {
        BarElement::default()
    }

    pub fn add_term(&mut self, m: BasisId, xs: Vec<BasisId>, n: BasisId, c: &Novikov) {
        if c.is_zero() {
            return;
        }
        let key = (m, xs, n);
        let next = match self.terms.remove(&key) {
            Some(x) => &x + c,
            None => c.clone(),
        };
        if !next.is_zero() {
            self.terms.insert(key, next);
        }
    }

    /// Adds `sign · c · (u ⊗ xs ⊗ v)` for vectors `u`, `v`.
    fn add_vectors(&mut self, sign: Sign, c: &Novikov, u: &Vector, xs: &[BasisId], v: &Vector) {
        for (m, a) in u.iter() {
            for (n, b) in v.iter() {
                self.add_term(m, xs.to_vec(), n, &sign.apply(&(c * a * b)));
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(BasisId, Vec<BasisId>, BasisId), &Novikov)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus_signed(&self, sign: Sign, other: &BarElement) -> BarElement {
        let mut out = self.clone();
        for ((m, xs, n), c) in &other.terms {
            out.add_term(*m, xs.clone(), *n, &sign.apply(c));
        }
        out
    }
}

impl fmt::Display for BarElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((m, xs, n), c)| format!("[{c}] {m}⊗{xs:?}⊗{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The differential `d` of `Y^r_K ⊗_B Y^l_K`.
pub fn bar_differential(cat: &AInfCategory, x: &BarElement) -> BarElement {
    let mut out = BarElement::zero();
    let cutoff = cat.cutoff();
    for ((m, xs, n), c) in x.iter() {
        let s = xs.len();
        let (mv, nv) = (Vector::basis(*m, cutoff), Vector::basis(*n, cutoff));
        // -m(m, x_1, .., x_i) ⊗ x_{i+1} ⊗ .. ⊗ n
        for i in 0..=s {
            let head = cat.m_insert(&[], &mv, &xs[..i]);
            out.add_vectors(Sign::MINUS, c, &head, &xs[i..], &nv);
        }
        for i in 0..=s {
            let sign = Sign::pow(cat.parity(*m) + cat.reduced(&xs[..i]));
            // m ⊗ .. ⊗ m(x_{i+1}, .., x_j) ⊗ .. ⊗ n
            for j in (i + 1)..=s {
                let inner = cat.m(&xs[i..j]);
                for (y, a) in inner.iter() {
                    let mut word = xs[..i].to_vec();
                    word.push(y);
                    word.extend_from_slice(&xs[j..]);
                    out.add_term(*m, word, *n, &sign.apply(&(c * a)));
                }
            }
            // m ⊗ .. ⊗ m(x_{i+1}, .., x_s, n)
            let tail = cat.m_insert(&xs[i..], &nv, &[]);
            out.add_vectors(sign, c, &mv, &xs[..i], &tail);
        }
    }
    out
}

/// `m^K(m ⊗ x_1 ⊗ .. ⊗ n) = m_{s+2}(m, x_1, .., x_s, n)`.
pub fn m_k(cat: &AInfCategory, x: &BarElement) -> Vector {
    let mut out = Vector::zero();
    for ((m, xs, n), c) in x.iter() {
        let mut word = Vec::with_capacity(xs.len() + 2);
        word.push(*m);
        word.extend_from_slice(xs);
        word.push(*n);
        out.add_scaled(c, &cat.m(&word));
    }
    out
}

/// `CC_•(Δ)(X)` for a chain `X` of `B`.
pub fn delta_chain(cat: &AInfCategory, sub: &Subcategory, x: &Chain, k: ObjId, table: &DualBasisTable) -> Result<BarElement> {
    if k >= cat.objects().len() {
        return Err(Error::UnknownObject(format!("#{k}")));
    }
    let x = include_chain(sub, x);
    let mut out = BarElement::zero();
    for (w, c) in x.iter() {
        let s = w.len() - 1;
        let px: Parity = chain_word_parity(cat, w);
        for i in 0..=s {
            let y = cat.tgt(w[i]);
            let rot = reduced_range(cat, w, 0, i) * reduced_range(cat, w, i + 1, s);
            for &ea in cat.hom(y, k) {
                let sign = Sign::pow(cat.parity(ea) * px + rot);
                for j in 0..=i {
                    let mut suffix = w[i + 1..].to_vec();
                    suffix.extend_from_slice(&w[..=j]);
                    let head = cat.m_insert(&[], table.dual(ea), &suffix);
                    for (mm, a) in head.iter() {
                        out.add_term(mm, w[j + 1..=i].to_vec(), ea, &sign.apply(&(c * a)));
                    }
                }
            }
        }
    }
    Ok(out)
}
