use std::fmt;

use super::{AInfCategory, BasisId};
use crate::error::Result;
use crate::graded::{Parity, Sign, Vector};
use crate::linalg::Certification;

const KEPT_VIOLATIONS: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub kind: String,
    pub word: Vec<String>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    /// The first few failures.
    pub violations: Vec<Violation>,
}

impl CheckReport {
    fn new(name: &str) -> CheckReport {
        CheckReport { name: name.to_string(), checked: 0, failures: 0, violations: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, cat: &AInfCategory, kind: &str, word: &[BasisId], residual: String) {
        self.failures += 1;
        if self.violations.len() < KEPT_VIOLATIONS {
            self.violations.push(Violation {
                kind: kind.to_string(),
                word: word.iter().map(|&x| cat.label(x).to_string()).collect(),
                residual,
            });
        }
    }

    fn test_vector(&mut self, cat: &AInfCategory, cert: &Certification, kind: &str, word: &[BasisId], v: &Vector) -> Result<()> {
        self.checked += 1;
        if !cert.is_zero_vector(v)? {
            self.record(cat, kind, word, cat.show(v));
        }
        Ok(())
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures += other.failures;
        for v in other.violations {
            if self.violations.len() < KEPT_VIOLATIONS {
                self.violations.push(v);
            }
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{}: {} ({} checked, {} failed)", self.name, verdict, self.checked, self.failures)?;
        for v in &self.violations {
            write!(f, "\n  {} at ({}): {}", v.kind, v.word.join(","), v.residual)?;
        }
        Ok(())
    }
}

/// Left-hand side of the A∞ relation on a basis word.
pub(crate) fn ainf_relation(cat: &AInfCategory, start: usize, word: &[BasisId]) -> Vector {
    let s = word.len();
    let mut out = Vector::zero();
    let j_min = if cat.is_flat() { 1 } else { 0 };
    for i in 0..=s {
        let sign = Sign::pow(cat.reduced(&word[..i]));
        for j in j_min..=(s - i) {
            let object = if i == 0 { start } else { cat.tgt(word[i - 1]) };
            let inner = cat.m_at(object, &word[i..i + j]);
            if inner.is_zero() {
                continue;
            }
            let outer = cat.m_insert(&word[..i], &inner, &word[i + j..]);
            out.add_signed(sign, &outer);
        }
    }
    out
}

/// Verifies the A∞ relations on all composable words of length `<= max_len`.
pub fn check_ainf(cat: &AInfCategory, max_len: usize, cert: &Certification) -> Result<CheckReport> {
    let mut report = CheckReport::new("ainf");
    let curved = !cat.is_flat();
    let mut bound = max_len;
    if let Some(b) = cat.arity_bound() {
        bound = bound.min(if curved { b.saturating_sub(1) } else { b });
    }
    if curved {
        for x in 0..cat.objects().len() {
            let v = ainf_relation(cat, x, &[]);
            report.test_vector(cat, cert, "ainf", &[], &v)?;
        }
    }
    for s in 1..=bound {
        for w in cat.composable_words(s, None) {
            let v = ainf_relation(cat, cat.src(w[0]), &w);
            report.test_vector(cat, cert, "ainf", &w, &v)?;
        }
    }
    Ok(report)
}

/// Verifies strict unitality on words of length `<= max_len`.
pub fn check_unital(cat: &AInfCategory, max_len: usize, cert: &Certification) -> Result<CheckReport> {
    let mut report = CheckReport::new("unital");
    let n_obj = cat.objects().len();
    for x in 0..n_obj {
        if cat.unit(x).is_none() {
            report.checked += 1;
            report.record(cat, "missing unit", &[], cat.objects()[x].clone());
        }
    }
    let bound = cat.arity_bound().map_or(max_len, |b| b.min(max_len));
    for x in 0..n_obj {
        let Some(e) = cat.unit(x).cloned() else { continue };
        for &y in cat.starting_at(x) {
            let v = cat.m_insert(&[], &e, &[y]).minus(&Vector::basis(y, cat.cutoff()));
            report.test_vector(cat, cert, "left unit", &[y], &v)?;
        }
        for y in 0..cat.dim() {
            if cat.tgt(y) != x {
                continue;
            }
            let expected = Vector::basis(y, cat.cutoff()).signed(Sign::pow(cat.parity(y)));
            let v = cat.m_insert(&[y], &e, &[]).minus(&expected);
            report.test_vector(cat, cert, "right unit", &[y], &v)?;
        }
        for s in 1..=bound {
            if s == 2 {
                continue;
            }
            // words of length s - 1 with the unit inserted at each slot through object x
            if s == 1 {
                let v = cat.m_insert(&[], &e, &[]);
                report.test_vector(cat, cert, "m1(unit)", &[], &v)?;
                continue;
            }
            for w in cat.composable_words(s - 1, None) {
                for pos in 0..=w.len() {
                    let through = if pos == 0 { cat.src(w[0]) } else { cat.tgt(w[pos - 1]) };
                    if through != x {
                        continue;
                    }
                    let v = cat.m_insert(&w[..pos], &e, &w[pos..]);
                    report.test_vector(cat, cert, "unit insertion", &w, &v)?;
                }
            }
        }
    }
    Ok(report)
}

/// Verifies nondegeneracy, symmetry and cyclicity of the pairing on words of
/// arity `<= max_arity`; with `full` also the `⟨m(..), x⟩ = ±⟨x, m(..)⟩` form.
pub fn check_cyclic(cat: &AInfCategory, max_arity: usize, full: bool, cert: &Certification) -> Result<CheckReport> {
    let mut report = CheckReport::new("cyclic");
    if cat.pairing().is_none() {
        report.checked += 1;
        report.record(cat, "missing pairing", &[], String::new());
        return Ok(report);
    }
    let n_obj = cat.objects().len();
    for x in 0..n_obj {
        for y in x..n_obj {
            let g = cat.gram(x, y);
            report.checked += 1;
            let label = format!("{}, {}", cat.objects()[x], cat.objects()[y]);
            if g.nrows() != g.ncols() {
                report.record(cat, "nondegeneracy", &[], format!("Hom({label}) dimensions differ"));
                continue;
            }
            if g.nrows() == 0 {
                continue;
            }
            let det = g.det()?;
            cert.check(&det)?;
            if det.is_zero() {
                report.record(cat, "nondegeneracy", &[], format!("singular Gram matrix on Hom({label})"));
            }
        }
    }
    for a in 0..cat.dim() {
        for &b in cat.hom(cat.tgt(a), cat.src(a)) {
            let lhs = cat.pair(a, b);
            let rhs = Sign::pow(Parity::Odd + cat.parity(a).reduced() * cat.parity(b).reduced()).apply(&cat.pair(b, a));
            let d = lhs - rhs;
            report.checked += 1;
            cert.check(&d)?;
            if !d.is_zero() {
                report.record(cat, "symmetry", &[a, b], d.to_string());
            }
        }
    }
    let bound = cat.arity_bound().map_or(max_arity, |b| b.min(max_arity));
    for s in 2..=bound + 1 {
        for w in cat.cyclic_words(s - 1, None) {
            let last = w[s - 1];
            let lhs = cat.pair_vec(&cat.m(&w[..s - 1]), &Vector::basis(last, cat.cutoff()));
            let mut rotated = vec![last];
            rotated.extend_from_slice(&w[..s - 2]);
            let sign = Sign::pow(cat.parity(last).reduced() * cat.reduced(&w[..s - 1]));
            let rhs = sign.apply(&cat.pair_vec(&cat.m(&rotated), &Vector::basis(w[s - 2], cat.cutoff())));
            let d = lhs - rhs;
            report.checked += 1;
            cert.check(&d)?;
            if !d.is_zero() {
                report.record(cat, "cyclicity", &w, d.to_string());
            }
            if full {
                let lhs = cat.pair_vec(&cat.m(&w[..s - 1]), &Vector::basis(last, cat.cutoff()));
                let rhs = Sign::pow(cat.parity(w[0]))
                    .apply(&cat.pair_vec(&Vector::basis(w[0], cat.cutoff()), &cat.m(&w[1..])));
                let d = lhs - rhs;
                report.checked += 1;
                cert.check(&d)?;
                if !d.is_zero() {
                    report.record(cat, "pairing invariance", &w, d.to_string());
                }
            }
        }
    }
    Ok(report)
}
