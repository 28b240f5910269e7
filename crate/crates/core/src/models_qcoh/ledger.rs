use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::novikov::{CoefficientField, Novikov};

use super::sphere::{sphere_idempotents, SphereData, SphereIdempotents};

/// A field factor from a nondegenerate torus critical point.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusFactor {
    pub label: String,
    pub value: Novikov,
}

/// A Lagrangian rational homology sphere. `β` and `W` may be unknown; the
/// eigenvalue `W` is assumed to have rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereInput {
    pub label: String,
    pub beta: Option<Novikov>,
    pub value: Option<Novikov>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LedgerInput {
    pub tori: Vec<TorusFactor>,
    pub spheres: Vec<SphereInput>,
    /// Pairs with `[L_i] ∪ [L_j] ≠ 0`; all other pairs are cup-zero.
    pub cup_nonzero: Vec<(String, String)>,
    /// Real dimension of the spheres.
    pub sphere_dim: i64,
    /// `dim H^•(X)`.
    pub expected_dim: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BetaStatus {
    Given(Novikov),
    Zero,
    /// `β ≠ 0` forced: nilpotent sphere classes would overfill `H^•(X)`.
    ForcedNonzero,
    Unknown,
}

/// Spheres connected by cup-nonzero pairs; they share `β` and `W`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereBlock {
    pub spheres: Vec<String>,
    pub beta: BetaStatus,
    pub value: Option<Novikov>,
    /// Where a forced value came from.
    pub value_source: Option<String>,
    /// `[S_1], .., [S_k], [S_1]*[S_1]`.
    pub vectors: usize,
    pub idempotents: Vec<(String, SphereIdempotents)>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    Torus(String),
    Sphere { block: Vec<String>, index: usize },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Torus(l) => write!(f, "torus {l}"),
            Provenance::Sphere { block, index } => write!(f, "spheres {} #{}", block.join(","), index + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub provenance: Provenance,
    /// Eigenvalue of `c_1 *`.
    pub eigenvalue: Option<Novikov>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LedgerVerdict {
    Semisimple { factors: usize },
    NotClosed { deficit: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct QCohLedger {
    pub factors: Vec<Factor>,
    pub blocks: Vec<SphereBlock>,
    /// Torus factors whose idempotent lies in a sphere block.
    pub absorbed: Vec<(String, usize)>,
    pub cup_nonzero: BTreeSet<(String, String)>,
    pub expected_dim: usize,
    pub verdict: LedgerVerdict,
    pub notes: Vec<String>,
}

impl QCohLedger {
    pub fn is_semisimple(&self) -> bool {
        matches!(self.verdict, LedgerVerdict::Semisimple { .. })
    }

    pub fn eigenvalue_table(&self) -> Vec<(String, Option<Novikov>)> {
        self.factors.iter().map(|f| (f.provenance.to_string(), f.eigenvalue.clone())).collect()
    }
}

fn rational(x: &Novikov) -> bool {
    x.terms().iter().all(|(_, c)| c.field() == CoefficientField::Rational)
}

fn find(parent: &mut [usize], i: usize) -> usize {
    if parent[i] != i {
        let r = find(parent, parent[i]);
        parent[i] = r;
    }
    parent[i]
}

fn agree<'a>(what: &str, block: &[String], xs: impl Iterator<Item = &'a Novikov>) -> Result<Option<Novikov>> {
    let mut out: Option<Novikov> = None;
    for x in xs {
        match &out {
            Some(y) if y != x => {
                return Err(Error::Hypothesis(format!(
                    "inconsistent flags: spheres {} are cup-connected but have different {what} ({y} and {x})",
                    block.join(",")
                )))
            }
            _ => out = Some(x.clone()),
        }
    }
    Ok(out)
}

/// Assembles the field factors of `QH^•(X)` from torus critical points and
/// sphere blocks, propagating `β` and `W` along cup-nonzero chains.
pub fn assemble_ledger(input: &LedgerInput) -> Result<QCohLedger> {
    let mut labels: Vec<&str> = input.spheres.iter().map(|s| s.label.as_str()).collect();
    labels.sort_unstable();
    if labels.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("sphere labels must be distinct"));
    }
    let mut tori = input.tori.clone();
    tori.sort_by(|a, b| a.label.cmp(&b.label));
    if tori.windows(2).any(|w| w[0].label == w[1].label) {
        return Err(Error::invalid("torus labels must be distinct"));
    }
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let by_label: BTreeMap<&str, &SphereInput> = input.spheres.iter().map(|s| (s.label.as_str(), s)).collect();
    let mut cup = BTreeSet::new();
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    for (a, b) in &input.cup_nonzero {
        let (Some(&i), Some(&j)) = (index.get(a.as_str()), index.get(b.as_str())) else {
            return Err(Error::UnknownObject(format!("{a} or {b}")));
        };
        if i == j {
            continue;
        }
        cup.insert(if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) });
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        parent[ri.max(rj)] = ri.min(rj);
    }
    let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(l.to_string());
    }
    let t = tori.len();
    let mut notes = Vec::new();
    let mut blocks = Vec::new();
    for spheres in groups.into_values() {
        let members: Vec<&SphereInput> = spheres.iter().map(|l| by_label[l.as_str()]).collect();
        let beta = agree("β", &spheres, members.iter().filter_map(|s| s.beta.as_ref()))?;
        let value = agree("W", &spheres, members.iter().filter_map(|s| s.value.as_ref()))?;
        if let Some(w) = &value {
            if !rational(w) {
                return Err(Error::Hypothesis(format!("sphere value {w} is not rational")));
            }
        }
        let vectors = spheres.len() + 1;
        let status = match beta {
            Some(b) if b.is_zero() => BetaStatus::Zero,
            Some(b) => BetaStatus::Given(b),
            // nilpotent classes are independent of the torus idempotents
            None if t + vectors > input.expected_dim => BetaStatus::ForcedNonzero,
            None => BetaStatus::Unknown,
        };
        let mut idempotents = Vec::new();
        if let BetaStatus::Given(b) = &status {
            for l in &spheres {
                let d = SphereData { beta: b.clone(), w: value.clone().unwrap_or_else(|| Novikov::zero(b.cutoff())), label: l.clone() };
                match sphere_idempotents(&d, input.sphere_dim) {
                    Ok(e) => idempotents.push((l.clone(), e)),
                    Err(e) => notes.push(format!("idempotents of {l}: {e}")),
                }
            }
        }
        blocks.push(SphereBlock { spheres, beta: status, value, value_source: None, vectors, idempotents });
    }
    let s: usize = blocks.iter().map(|b| b.vectors).sum();
    let stuck: Vec<String> = blocks
        .iter()
        .filter_map(|b| match b.beta {
            BetaStatus::Zero => Some(format!("spheres {} have β = 0 and give nilpotent classes", b.spheres.join(","))),
            BetaStatus::Unknown => Some(format!("β of spheres {} is not determined", b.spheres.join(","))),
            _ => None,
        })
        .collect();
    let known: Vec<&Novikov> = blocks.iter().filter_map(|b| b.value.as_ref()).collect();
    let all_known = known.len() == blocks.len();
    // torus values that no sphere block can share
    let independent: Vec<&TorusFactor> =
        tori.iter().filter(|f| !rational(&f.value) || (all_known && !known.contains(&&f.value))).collect();
    let count = independent.len() + s;
    let expected = input.expected_dim;
    let mut absorbed = Vec::new();
    let verdict = if !stuck.is_empty() {
        LedgerVerdict::NotClosed { deficit: expected.saturating_sub(count), reason: stuck.join("; ") }
    } else if count > expected {
        return Err(Error::Hypothesis(format!("{count} independent classes exceed dim H•(X) = {expected}")));
    } else if count < expected {
        LedgerVerdict::NotClosed {
            deficit: expected - count,
            reason: format!("{count} independent classes, {expected} needed"),
        }
    } else {
        let rest: Vec<&TorusFactor> = tori.iter().filter(|f| !independent.iter().any(|g| g.label == f.label)).collect();
        for f in &rest {
            let hit = blocks.iter().position(|b| b.value.as_ref() == Some(&f.value));
            let k = match hit {
                Some(k) => k,
                None => {
                    let open: Vec<usize> = (0..blocks.len()).filter(|&k| blocks[k].value.is_none()).collect();
                    match open.as_slice() {
                        [k] => {
                            blocks[*k].value = Some(f.value.clone());
                            blocks[*k].value_source = Some(f.label.clone());
                            *k
                        }
                        [] => {
                            return Err(Error::Hypothesis(format!(
                                "torus {} has value {} matching no sphere block in a closed ledger",
                                f.label, f.value
                            )))
                        }
                        _ => {
                            notes.push(format!("torus {} lies in one of several sphere blocks", f.label));
                            continue;
                        }
                    }
                }
            };
            absorbed.push((f.label.clone(), k));
        }
        LedgerVerdict::Semisimple { factors: expected }
    };
    let mut factors: Vec<Factor> = independent
        .iter()
        .map(|f| Factor { provenance: Provenance::Torus(f.label.clone()), eigenvalue: Some(f.value.clone()) })
        .collect();
    for b in &blocks {
        for index in 0..b.vectors {
            factors.push(Factor { provenance: Provenance::Sphere { block: b.spheres.clone(), index }, eigenvalue: b.value.clone() });
        }
    }
    Ok(QCohLedger { factors, blocks, absorbed, cup_nonzero: cup, expected_dim: expected, verdict, notes })
}

impl fmt::Display for QCohLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            LedgerVerdict::Semisimple { factors } => writeln!(f, "semisimple with {factors} factors")?,
            LedgerVerdict::NotClosed { deficit, reason } => writeln!(f, "not closed (deficit {deficit}): {reason}")?,
        }
        for (i, factor) in self.factors.iter().enumerate() {
            let ev = factor.eigenvalue.as_ref().map_or("?".to_string(), |v| v.to_string());
            writeln!(f, "{:>3}  {:<24} {}", i + 1, factor.provenance.to_string(), ev)?;
        }
        for b in &self.blocks {
            let beta = match &b.beta {
                BetaStatus::Given(x) => format!("β = {x}"),
                BetaStatus::Zero => "β = 0".into(),
                BetaStatus::ForcedNonzero => "β ≠ 0 (forced by dimension)".into(),
                BetaStatus::Unknown => "β unknown".into(),
            };
            let src = b.value_source.as_ref().map_or(String::new(), |s| format!(", W forced by torus {s}"));
            writeln!(f, "block {}: {beta}{src}", b.spheres.join(","))?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}
