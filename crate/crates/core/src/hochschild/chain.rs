use std::collections::HashMap;

use super::{chain_word_parity, Chain, Cochain};
use crate::ainfinity::{AInfCategory, BasisId};
use crate::graded::{Parity, Sign, Vector};

/// Adds `sign · Σ_y c_y · (prefix, y, suffix)` for `v = Σ c_y y`.
fn push_words(out: &mut Chain, sign: Sign, prefix: &[BasisId], v: &Vector, suffix: &[BasisId]) {
    for (y, c) in v.iter() {
        let mut w = Vec::with_capacity(prefix.len() + suffix.len() + 1);
        w.extend_from_slice(prefix);
        w.push(y);
        w.extend_from_slice(suffix);
        out.add_term(w, &sign.apply(c));
    }
}

/// `b` on one word `x_0[x_1|..|x_s]`.
fn b_word(cat: &AInfCategory, w: &[BasisId]) -> Chain {
    let s = w.len() - 1;
    let mut out = Chain::zero();
    // x0[x1|..|m(x_{i+1}..x_j)|..|xs]
    for i in 0..s {
        let sign = Sign::pow(cat.reduced(&w[..=i]));
        for j in (i + 1)..=s {
            let inner = cat.m(&w[i + 1..=j]);
            push_words(&mut out, sign, &w[..=i], &inner, &w[j + 1..]);
        }
    }
    // m(x_{i+1}, .., x_s, x_0, .., x_j)[x_{j+1}|..|x_i]
    let mut block = Vec::with_capacity(w.len());
    for i in 0..=s {
        let sign = Sign::pow(cat.reduced(&w[..=i]) * cat.reduced(&w[i + 1..]));
        for j in 0..=i {
            block.clear();
            block.extend_from_slice(&w[i + 1..]);
            block.extend_from_slice(&w[..=j]);
            let inner = cat.m(&block);
            push_words(&mut out, sign, &[], &inner, &w[j + 1..=i]);
        }
    }
    out
}

/// Hochschild chain differential.
pub fn b(cat: &AInfCategory, x: &Chain) -> Chain {
    let mut out = Chain::zero();
    for (w, c) in x.iter() {
        out.add_scaled(c, &b_word(cat, w));
    }
    out
}

fn b11_word(cat: &AInfCategory, phi: &Cochain, w: &[BasisId]) -> Chain {
    let s = w.len() - 1;
    let phi_r = phi.parity().reduced();
    let mut out = Chain::zero();
    for i in 0..=s {
        let rot = cat.reduced(&w[..=i]) * cat.reduced(&w[i + 1..]);
        // φ occupies x_{j+1}..x_{j+l} inside x_{i+1}..x_s
        for j in i..=s {
            let obj = cat.tgt(w[j]);
            let sign = Sign::pow(rot + phi_r * cat.reduced(&w[i + 1..=j]));
            for l in 0..=(s - j) {
                let value = phi.eval(obj, &w[j + 1..j + 1 + l]);
                if value.is_zero() {
                    continue;
                }
                for k in 0..=i {
                    let mut suffix = w[j + 1 + l..].to_vec();
                    suffix.extend_from_slice(&w[..=k]);
                    let inner = cat.m_insert(&w[i + 1..=j], &value, &suffix);
                    push_words(&mut out, sign, &[], &inner, &w[k + 1..=i]);
                }
            }
        }
    }
    out
}

/// `b^{1|1}(φ; X)`.
pub fn b11(cat: &AInfCategory, phi: &Cochain, x: &Chain) -> Chain {
    let mut out = Chain::zero();
    for (w, c) in x.iter() {
        out.add_scaled(c, &b11_word(cat, phi, w));
    }
    out
}

/// `φ ∩ X = (-1)^{|φ||X| + |φ|} b^{1|1}(φ; X)`, termwise in the parity of `X`.
pub fn cap(cat: &AInfCategory, phi: &Cochain, x: &Chain) -> Chain {
    let mut out = Chain::zero();
    for (w, c) in x.iter() {
        let p = chain_word_parity(cat, w);
        let sign = Sign::pow(phi.parity() * p + phi.parity());
        out.add_scaled(&sign.apply(c), &b11_word(cat, phi, w));
    }
    out
}

/// Basis of chains `x_0[x_1|..|x_s]` with `s <= length`.
#[derive(Clone, Debug)]
pub struct ChainSpace {
    pub length: usize,
    words: Vec<Vec<BasisId>>,
    parities: Vec<Parity>,
    index: HashMap<Vec<BasisId>, usize>,
}

impl ChainSpace {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, i: usize) -> &[BasisId] {
        &self.words[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    /// The `s` of `x_0[x_1|..|x_s]`.
    pub fn word_len(&self, i: usize) -> usize {
        self.words[i].len() - 1
    }

    pub fn index(&self, w: &[BasisId]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Coordinates of a chain; terms longer than the truncation are dropped.
    pub fn to_vector(&self, x: &Chain) -> Vector {
        Vector::from_entries(x.iter().filter_map(|(w, c)| self.index(w).map(|i| (i, c.clone()))))
    }

    pub fn to_chain(&self, v: &Vector) -> Chain {
        let mut out = Chain::zero();
        for (i, c) in v.iter() {
            out.add_term(self.words[i].clone(), c);
        }
        out
    }

    pub fn project(&self, v: &Vector, n: usize) -> Vector {
        Vector::from_entries(v.iter().filter(|(i, _)| self.word_len(*i) <= n).map(|(i, x)| (i, x.clone())))
    }
}

pub fn chain_space(cat: &AInfCategory, length: usize) -> ChainSpace {
    let mut words = Vec::new();
    for s in 0..=length {
        words.extend(cat.cyclic_words(s, None));
    }
    let parities = words.iter().map(|w| chain_word_parity(cat, w)).collect();
    let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    ChainSpace { length, words, parities, index }
}
