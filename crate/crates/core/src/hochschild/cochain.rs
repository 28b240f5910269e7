use std::collections::HashMap;

use super::{cochain_entry_parity, Cochain};
use crate::ainfinity::{AInfCategory, BasisId, ObjId};
use crate::graded::{Parity, Sign, Vector};

/// `1ᴴᴼᶜʰ`: the units in length zero.
pub fn unit_cochain(cat: &AInfCategory, length: usize) -> Cochain {
    let mut c = Cochain::zero(Parity::Even, length);
    for x in 0..cat.objects().len() {
        if let Some(u) = cat.unit(x) {
            c.set_object(x, u.clone());
        }
    }
    c
}

fn object_at(cat: &AInfCategory, start: ObjId, word: &[BasisId], i: usize) -> ObjId {
    if i == 0 {
        start
    } else {
        cat.tgt(word[i - 1])
    }
}

/// `φ` on `prefix, v, suffix`, linear in the middle slot.
fn eval_insert(phi: &Cochain, prefix: &[BasisId], v: &Vector, suffix: &[BasisId]) -> Vector {
    let mut out = Vector::zero();
    let mut word = Vec::with_capacity(prefix.len() + suffix.len() + 1);
    for (x, c) in v.iter() {
        word.clear();
        word.extend_from_slice(prefix);
        word.push(x);
        word.extend_from_slice(suffix);
        out.add_scaled(c, &phi.eval(0, &word));
    }
    out
}

fn m1_at(cat: &AInfCategory, phi: &Cochain, start: ObjId, w: &[BasisId]) -> Vector {
    let s = w.len();
    let mut out = Vector::zero();
    let phi_r = phi.parity().reduced();
    for i in 0..=s {
        let obj = object_at(cat, start, w, i);
        let pre = cat.reduced(&w[..i]);
        for j in 0..=(s - i) {
            let inner = phi.eval(obj, &w[i..i + j]);
            if !inner.is_zero() {
                let outer = cat.m_insert(&w[..i], &inner, &w[i + j..]);
                out.add_signed(Sign::pow(phi_r * pre), &outer);
            }
            if j >= 1 {
                let inner = cat.m(&w[i..i + j]);
                if !inner.is_zero() {
                    let outer = eval_insert(phi, &w[..i], &inner, &w[i + j..]);
                    out.add_signed(Sign::pow(phi.parity() + pre), &outer);
                }
            }
        }
    }
    out
}

/// Hochschild differential `M¹`, on all lengths up to the truncation.
pub fn m1(cat: &AInfCategory, phi: &Cochain) -> Cochain {
    let n = phi.length();
    let mut out = Cochain::zero(phi.parity() + Parity::Odd, n);
    for x in 0..cat.objects().len() {
        out.set_object(x, m1_at(cat, phi, x, &[]));
    }
    for s in 1..=n {
        for w in cat.composable_words(s, None) {
            let v = m1_at(cat, phi, cat.src(w[0]), &w);
            out.set(w, v);
        }
    }
    out
}

fn m2_at(cat: &AInfCategory, phi: &Cochain, psi: &Cochain, start: ObjId, w: &[BasisId]) -> Vector {
    let s = w.len();
    let mut out = Vector::zero();
    let (phi_r, psi_r) = (phi.parity().reduced(), psi.parity().reduced());
    for i in 0..=s {
        let obj_i = object_at(cat, start, w, i);
        for a in 0..=(s - i) {
            let u = phi.eval(obj_i, &w[i..i + a]);
            if u.is_zero() {
                continue;
            }
            for j in (i + a)..=s {
                let obj_j = object_at(cat, start, w, j);
                for bl in 0..=(s - j) {
                    let v = psi.eval(obj_j, &w[j..j + bl]);
                    if v.is_zero() {
                        continue;
                    }
                    let sign = Sign::pow(phi_r * cat.reduced(&w[..i]) + psi_r * cat.reduced(&w[..j]));
                    let mut acc = Vector::zero();
                    let mut prefix = w[..i].to_vec();
                    for (x, c) in u.iter() {
                        prefix.truncate(i);
                        prefix.push(x);
                        prefix.extend_from_slice(&w[i + a..j]);
                        acc.add_scaled(c, &cat.m_insert(&prefix, &v, &w[j + bl..]));
                    }
                    out.add_signed(sign, &acc);
                }
            }
        }
    }
    out
}

/// `M²(φ, ψ)`.
pub fn m2(cat: &AInfCategory, phi: &Cochain, psi: &Cochain) -> Cochain {
    let n = phi.length().min(psi.length());
    let mut out = Cochain::zero(phi.parity() + psi.parity(), n);
    for x in 0..cat.objects().len() {
        out.set_object(x, m2_at(cat, phi, psi, x, &[]));
    }
    for s in 1..=n {
        for w in cat.composable_words(s, None) {
            let v = m2_at(cat, phi, psi, cat.src(w[0]), &w);
            out.set(w, v);
        }
    }
    out
}

/// `φ ∪ ψ = (-1)^{|φ||ψ| + |φ|} M²(φ, ψ)`.
pub fn cup(cat: &AInfCategory, phi: &Cochain, psi: &Cochain) -> Cochain {
    let sign = Sign::pow(phi.parity() * psi.parity() + phi.parity());
    m2(cat, phi, psi).signed(sign)
}

/// Basis of truncated cochains: `(object, word, output)` with the output in
/// `Hom(src, tgt)` of the word (or `End(object)` at length zero).
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub length: usize,
    keys: Vec<(ObjId, Vec<BasisId>, BasisId)>,
    parities: Vec<Parity>,
    index: HashMap<(Vec<BasisId>, BasisId), usize>,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn key(&self, i: usize) -> (ObjId, &[BasisId], BasisId) {
        let (o, w, y) = &self.keys[i];
        (*o, w, *y)
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn word_len(&self, i: usize) -> usize {
        self.keys[i].1.len()
    }

    /// Index of a key; length-zero keys are identified through the output.
    pub fn index(&self, word: &[BasisId], output: BasisId) -> Option<usize> {
        self.index.get(&(word.to_vec(), output)).copied()
    }

    pub fn to_vector(&self, c: &Cochain) -> Vector {
        let mut out = Vector::zero();
        for (_, v) in c.objects() {
            for (y, x) in v.iter() {
                if let Some(i) = self.index(&[], y) {
                    out.add_term(i, x);
                }
            }
        }
        for (w, v) in c.words() {
            if w.len() > self.length {
                continue;
            }
            for (y, x) in v.iter() {
                if let Some(i) = self.index(w, y) {
                    out.add_term(i, x);
                }
            }
        }
        out
    }

    pub fn to_cochain(&self, v: &Vector, parity: Parity) -> Cochain {
        let mut c = Cochain::zero(parity, self.length);
        for (i, x) in v.iter() {
            let (o, w, y) = self.key(i);
            let e = Vector::single(y, x.clone());
            if w.is_empty() {
                c.add_object(o, &e);
            } else {
                c.add(w.to_vec(), &e);
            }
        }
        c
    }

    /// Drops all components of length greater than `n`.
    pub fn project(&self, v: &Vector, n: usize) -> Vector {
        Vector::from_entries(v.iter().filter(|(i, _)| self.word_len(*i) <= n).map(|(i, x)| (i, x.clone())))
    }
}

pub fn cochain_space(cat: &AInfCategory, length: usize) -> CochainSpace {
    let mut keys = Vec::new();
    for x in 0..cat.objects().len() {
        for &y in cat.hom(x, x) {
            keys.push((x, Vec::new(), y));
        }
    }
    for s in 1..=length {
        for w in cat.composable_words(s, None) {
            let (a, z) = (cat.src(w[0]), cat.tgt(*w.last().unwrap()));
            for &y in cat.hom(a, z) {
                keys.push((a, w.clone(), y));
            }
        }
    }
    let parities = keys.iter().map(|(_, w, y)| cochain_entry_parity(cat, w, *y)).collect();
    let index = keys.iter().enumerate().map(|(i, (_, w, y))| ((w.clone(), *y), i)).collect();
    CochainSpace { length, keys, parities, index }
}

/// Columns of `M¹` on the basis of `space`, computed target-word by target-word.
pub fn m1_columns(cat: &AInfCategory, space: &CochainSpace) -> Vec<Vector> {
    let mut cols = vec![Vector::zero(); space.dim()];
    let cutoff = cat.cutoff();
    let mut targets: Vec<(ObjId, Vec<BasisId>)> = (0..cat.objects().len()).map(|x| (x, Vec::new())).collect();
    for s in 1..=space.length {
        for w in cat.composable_words(s, None) {
            targets.push((cat.src(w[0]), w));
        }
    }
    for (start, v) in &targets {
        let s = v.len();
        let end = if s == 0 { *start } else { cat.tgt(v[s - 1]) };
        for i in 0..=s {
            let obj = object_at(cat, *start, v, i);
            let pre = cat.reduced(&v[..i]);
            for j in 0..=(s - i) {
                let u = &v[i..i + j];
                let (ua, ub) = if j == 0 { (obj, obj) } else { (cat.src(u[0]), cat.tgt(u[j - 1])) };
                for &y in cat.hom(ua, ub) {
                    let Some(col) = space.index(u, y) else { continue };
                    let outer = cat.m_insert(&v[..i], &Vector::basis(y, cutoff), &v[i + j..]);
                    let sign = Sign::pow(space.parity(col).reduced() * pre);
                    for (z, c) in outer.iter() {
                        if let Some(row) = space.index(v, z) {
                            cols[col].add_term(row, &sign.apply(c));
                        }
                    }
                }
                if j == 0 {
                    continue;
                }
                let inner = cat.m(u);
                for (x, c) in inner.iter() {
                    let mut word = v[..i].to_vec();
                    word.push(x);
                    word.extend_from_slice(&v[i + j..]);
                    for &y in cat.hom(*start, end) {
                        let (Some(col), Some(row)) = (space.index(&word, y), space.index(v, y)) else { continue };
                        let sign = Sign::pow(space.parity(col) + pre);
                        cols[col].add_term(row, &sign.apply(c));
                    }
                }
            }
        }
    }
    cols
}
