use super::{mukai_words, reduced_range, DualBasisTable};
use crate::ainfinity::{AInfCategory, ObjId};
use crate::error::{Error, Result};
use crate::graded::{Parity, Sign, Vector};
use crate::hochschild::{chain_word_parity, Chain, Cochain};

/// Parity of a chain all of whose words share one parity.
pub(crate) fn homogeneous_parity(cat: &AInfCategory, x: &Chain) -> Result<Parity> {
    let mut parities = x.iter().map(|(w, _)| chain_word_parity(cat, w));
    let Some(p) = parities.next() else { return Ok(Parity::Even) };
    if parities.any(|q| q != p) {
        return Err(Error::invalid("chain is not homogeneous"));
    }
    Ok(p)
}

fn pairing_parity(cat: &AInfCategory) -> Result<Parity> {
    cat.pairing().map(|p| Parity::of(p.degree)).ok_or_else(|| Error::invalid("no cyclic pairing declared"))
}

/// `Z(X)` through length `length`, from `⟨X, X'⟩ = ⟨Z(X), X'⟩` and
/// `⟨φ, x'_0[x'_1|..|x'_t]⟩ = (-1)^{|x'_0|' Σ|x'_i|'} ⟨φ(x'_1, .., x'_t), x'_0⟩`.
pub fn z_map(cat: &AInfCategory, x: &Chain, length: usize, table: &DualBasisTable) -> Result<Cochain> {
    let parity = homogeneous_parity(cat, x)? + pairing_parity(cat)?;
    let mut out = Cochain::zero(parity, length);
    let solve = |word: &[usize], start: ObjId, end: ObjId| -> Vector {
        let reduced = cat.reduced(word);
        let mut v = Vector::zero();
        for &e in cat.hom(end, start) {
            let mut full = Vec::with_capacity(word.len() + 1);
            full.push(e);
            full.extend_from_slice(word);
            let mut c = cat.zero();
            for (w, a) in x.iter() {
                c = c + a * &mukai_words(cat, w, &full);
            }
            if c.is_zero() {
                continue;
            }
            let sign = Sign::pow(cat.parity(e).reduced() * reduced);
            v.add_scaled(&sign.apply(&c), table.dual(e));
        }
        v
    };
    for y in 0..cat.objects().len() {
        out.set_object(y, solve(&[], y, y));
    }
    for s in 1..=length {
        for w in cat.composable_words(s, None) {
            let (a, z) = (cat.src(w[0]), cat.tgt(w[s - 1]));
            let v = solve(&w, a, z);
            out.set(w, v);
        }
    }
    Ok(out)
}

/// `Z_K(X) ∈ Hom(K, K)` by the closed dual-basis formula.
pub fn z_x(cat: &AInfCategory, x: &Chain, k: ObjId, table: &DualBasisTable) -> Result<Vector> {
    if k >= cat.objects().len() {
        return Err(Error::UnknownObject(format!("#{k}")));
    }
    let mut out = Vector::zero();
    for (w, c) in x.iter() {
        let s = w.len() - 1;
        let px = chain_word_parity(cat, w);
        for i in 0..=s {
            let y = cat.tgt(w[i]);
            let rot = reduced_range(cat, w, 0, i) * reduced_range(cat, w, i + 1, s);
            for &ea in cat.hom(y, k) {
                let sign = Sign::pow(cat.parity(ea) * px + rot);
                let dual = table.dual(ea);
                for j in 0..=i {
                    let mut suffix = w[i + 1..].to_vec();
                    suffix.extend_from_slice(&w[..=j]);
                    let inner = cat.m_insert(&[], dual, &suffix);
                    if inner.is_zero() {
                        continue;
                    }
                    let mut tail = w[j + 1..=i].to_vec();
                    tail.push(ea);
                    let outer = cat.m_insert(&[], &inner, &tail);
                    out.add_scaled(&sign.apply(c), &outer);
                }
            }
        }
    }
    Ok(out)
}
