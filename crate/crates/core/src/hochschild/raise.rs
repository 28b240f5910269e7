use super::cochain::{cochain_space, cup, m1, m1_columns};
use super::Cochain;
use crate::ainfinity::AInfCategory;
use crate::error::{Error, Result};
use crate::graded::{Parity, Vector};
use crate::linalg::{Certification, Elimination};

/// Solves `M¹ψ = target` in cochains of the target's length; `None` if the
/// target is not exact there.
pub fn solve_exact(cat: &AInfCategory, target: &Cochain, cert: &Certification) -> Result<Option<Cochain>> {
    let space = cochain_space(cat, target.length());
    let cols = m1_columns(cat, &space);
    let parity = target.parity() + Parity::Odd;
    let idx: Vec<usize> = (0..space.dim()).filter(|&i| space.parity(i) == parity).collect();
    let chosen: Vec<Vector> = idx.iter().map(|&i| cols[i].clone()).collect();
    let elim = Elimination::run(&chosen, *cert)?;
    let Some(combo) = elim.solve(&space.to_vector(target))? else { return Ok(None) };
    let v = Vector::from_entries(combo.iter().map(|(k, c)| (idx[k], c.clone())));
    Ok(Some(space.to_cochain(&v, parity)))
}

pub fn is_cohomologous(cat: &AInfCategory, a: &Cochain, b: &Cochain, cert: &Certification) -> Result<bool> {
    Ok(solve_exact(cat, &a.minus(b), cert)?.is_some())
}

fn check_zero(cochain: &Cochain, cert: &Certification) -> Result<bool> {
    for (_, v) in cochain.objects() {
        cert.is_zero_vector(v)?;
    }
    for (_, v) in cochain.words() {
        cert.is_zero_vector(v)?;
    }
    Ok(cochain.is_zero())
}

/// Replaces an even cocycle with idempotent class and exact length-zero part
/// by a cohomologous cocycle vanishing in all lengths `<= n`. All cochains
/// are truncated at `budget`, which must exceed `n`.
pub fn raise_length(cat: &AInfCategory, phi: &Cochain, n: usize, budget: usize, cert: &Certification) -> Result<Cochain> {
    if n >= budget {
        return Err(Error::LengthBudget(format!("target length {n} needs a truncation above it, got {budget}")));
    }
    if phi.length() < budget {
        return Err(Error::LengthBudget(format!("cochain is truncated at {}, below the budget {budget}", phi.length())));
    }
    if phi.parity() != Parity::Even {
        return Err(Error::Hypothesis("length raising needs an even cocycle".into()));
    }
    if !cat.is_flat() {
        return Err(Error::Hypothesis("length raising needs a flat category".into()));
    }
    let phi = phi.with_length(budget);
    if !check_zero(&m1(cat, &phi), cert)? {
        return Err(Error::Hypothesis("input is not an M1-cocycle".into()));
    }
    // kill the length-zero part with a length-zero primitive
    let mut psi0 = Cochain::zero(Parity::Odd, budget);
    for x in 0..cat.objects().len() {
        let target = phi.object_part(x);
        if target.is_zero() {
            continue;
        }
        let basis = cat.hom(x, x);
        let images: Vec<Vector> = basis.iter().map(|&b| cat.m(&[b])).collect();
        let elim = Elimination::run(&images, *cert)?;
        let combo = elim
            .solve(&target)?
            .ok_or_else(|| Error::Hypothesis(format!("φ_X is not m1-exact on `{}`", cat.objects()[x])))?;
        psi0.set_object(x, Vector::from_entries(combo.iter().map(|(k, c)| (basis[k], c.clone()))));
    }
    let mut current = phi.minus(&m1(cat, &psi0));
    let mut order = 0;
    while !current.vanishes_through(n) {
        let square = cup(cat, &current, &current);
        let psi = solve_exact(cat, &current.minus(&square), cert)?
            .ok_or_else(|| Error::Hypothesis("class is not idempotent: φ - φ∪φ is not exact".into()))?;
        let next = current.minus(&m1(cat, &psi));
        let next_order = next.order().unwrap_or(budget + 1);
        if next_order <= order && !next.is_zero() {
            return Err(Error::Hypothesis(format!("correction did not raise the vanishing order past {order}")));
        }
        order = next_order;
        current = next;
    }
    Ok(current)
}
