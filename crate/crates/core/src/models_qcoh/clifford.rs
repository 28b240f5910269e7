use std::collections::BTreeMap;

use crate::ainfinity::{product_sign, AInfCategory, CategoryBuilder};
use crate::error::{Error, Result};
use crate::graded::{Parity, Sign, Vector};
use crate::novikov::{Exp, Novikov};

fn masks(n: usize) -> Vec<u32> {
    let mut s: Vec<u32> = (0..1u32 << n).collect();
    s.sort_by_key(|m| (m.count_ones(), *m));
    s
}

/// Labels `1, e1, .., e12, ..` in the basis order used by the models.
pub fn clifford_labels(n: usize) -> Vec<String> {
    masks(n)
        .into_iter()
        .map(|m| {
            if m == 0 {
                "1".to_string()
            } else {
                let idx: Vec<String> = (0..n).filter(|i| m & (1 << i) != 0).map(|i| (i + 1).to_string()).collect();
                format!("e{}", idx.join(""))
            }
        })
        .collect()
}

/// `e_S · e_j` in normal order, using `e_s e_j + e_j e_s = 2 Q_{sj}`.
fn right_mul_gen(s: u32, j: usize, q: &[Vec<Novikov>], cutoff: Exp) -> BTreeMap<u32, Novikov> {
    let mut out = BTreeMap::new();
    let Some(last) = (0..32).rev().find(|i| s & (1 << i) != 0) else {
        out.insert(1 << j, Novikov::one(cutoff));
        return out;
    };
    let rest = s & !(1 << last);
    if last < j {
        out.insert(s | (1 << j), Novikov::one(cutoff));
    } else if last == j {
        out.insert(rest, q[j][j].clone());
    } else {
        for (t, c) in right_mul_gen(rest, j, q, cutoff) {
            add(&mut out, t | (1 << last), &-c);
        }
        add(&mut out, rest, &(&q[last][j] + &q[last][j]));
    }
    out
}

fn add(map: &mut BTreeMap<u32, Novikov>, k: u32, c: &Novikov) {
    let cur = map.remove(&k).unwrap_or_else(|| Novikov::zero(c.cutoff()));
    let next = &cur + c;
    if !next.is_zero() {
        map.insert(k, next);
    }
}

/// Clifford product `e_a · e_b` of normal-ordered monomials.
pub fn clifford_product(a: u32, b: u32, q: &[Vec<Novikov>], cutoff: Exp) -> BTreeMap<u32, Novikov> {
    let mut acc = BTreeMap::new();
    acc.insert(a, Novikov::one(cutoff));
    for j in (0..32).filter(|j| b & (1 << j) != 0) {
        let mut next = BTreeMap::new();
        for (m, c) in &acc {
            for (t, d) in right_mul_gen(*m, j, q, cutoff) {
                add(&mut next, t, &(c * &d));
            }
        }
        acc = next;
    }
    acc
}

/// `Cℓ_n` for the symmetric form `Q`: `m_2(x, y) = (-1)^{|x||y|+|x|} x·y`,
/// unit `1`, and pairing `⟨x, y⟩` the top coefficient of `m_2(x, y)`.
pub fn clifford_model(q: &[Vec<Novikov>], cutoff: Exp) -> Result<AInfCategory> {
    let n = q.len();
    if q.iter().any(|row| row.len() != n) {
        return Err(Error::invalid("quadratic form must be square"));
    }
    for i in 0..n {
        for j in 0..n {
            if q[i][j] != q[j][i] {
                return Err(Error::invalid("quadratic form must be symmetric"));
            }
        }
    }
    let order = masks(n);
    let index: BTreeMap<u32, usize> = order.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut b = CategoryBuilder::new(cutoff);
    let l = b.add_object("L");
    for (m, label) in order.iter().zip(clifford_labels(n)) {
        b.add_basis(&label, l, l, Parity::of(m.count_ones() as i64))?;
    }
    let top = (1u32 << n) - 1;
    let mut pairing = BTreeMap::new();
    for &x in &order {
        for &y in &order {
            let sign: Sign = product_sign(Parity::of(x.count_ones() as i64), Parity::of(y.count_ones() as i64));
            let prod = clifford_product(x, y, q, cutoff);
            let v = Vector::from_entries(prod.iter().map(|(m, c)| (index[m], sign.apply(c))));
            if let Some(c) = v.get(index[&top]) {
                pairing.insert((index[&x], index[&y]), c.clone());
            }
            if !v.is_zero() {
                b.set_op(vec![index[&x], index[&y]], v)?;
            }
        }
    }
    b.set_unit(l, Vector::basis(0, cutoff));
    b.set_pairing(n as i64, pairing);
    b.set_arity_bound(Some(2));
    b.build()
}
