//! Z/2-graded based spaces, sparse vectors and multilinear maps, and the
//! Koszul sign calculus in reduced degrees `|x|' = |x| - 1`.
//!
//! Every sign used elsewhere in the crate is produced by the helpers here.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::novikov::{Coeff, Exp, Novikov, NovikovError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GradedError {
    #[error("permutation of length {perm} applied to {degrees} degrees")]
    LengthMismatch { degrees: usize, perm: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("entry {key:?} has parity inconsistent with the declared map parity")]
    ParityViolation { key: Vec<usize> },
    #[error(transparent)]
    Scalar(#[from] NovikovError),
}

/// Degree mod 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    #[serde(rename = "even")]
    Even,
    #[serde(rename = "odd")]
    Odd,
}

impl Parity {
    pub fn of(degree: i64) -> Parity {
        if degree.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn is_even(self) -> bool {
        self == Parity::Even
    }

    /// `|x|' = |x| - 1`.
    pub fn reduced(self) -> Parity {
        self + Parity::Odd
    }

    pub fn index(self) -> usize {
        self.is_odd() as usize
    }

    pub fn sum<I: IntoIterator<Item = Parity>>(it: I) -> Parity {
        it.into_iter().fold(Parity::Even, |a, b| a + b)
    }

    /// Sum of reduced degrees.
    pub fn reduced_sum<I: IntoIterator<Item = Parity>>(it: I) -> Parity {
        it.into_iter().fold(Parity::Even, |a, b| a + b.reduced())
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        if self == o {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Mul for Parity {
    type Output = Parity;
    fn mul(self, o: Parity) -> Parity {
        if self.is_odd() && o.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.is_odd() { "odd" } else { "even" })
    }
}

/// A sign `(-1)^p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sign(Parity);

impl Sign {
    pub const PLUS: Sign = Sign(Parity::Even);
    pub const MINUS: Sign = Sign(Parity::Odd);

    /// `(-1)^p`.
    pub fn pow(p: Parity) -> Sign {
        Sign(p)
    }

    pub fn is_negative(self) -> bool {
        self.0.is_odd()
    }

    pub fn to_int(self) -> i64 {
        if self.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn apply(self, x: &Novikov) -> Novikov {
        x.neg_sign(self.is_negative())
    }

    pub fn coeff(self) -> Coeff {
        Coeff::int(self.to_int())
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, o: Sign) -> Sign {
        Sign(self.0 + o.0)
    }
}

/// `(-1)^{n(n+1)/2}`.
pub fn triangular_sign(n: usize) -> Sign {
    Sign::pow(Parity::of(((n * (n + 1)) / 2) as i64))
}

/// `(-1)^n`.
pub fn power_sign(n: usize) -> Sign {
    Sign::pow(Parity::of(n as i64))
}

/// Sign of moving elements of the given degrees into the order
/// `perm` (output position `k` holds input `perm[k]`): the product of
/// `(-1)^{|x|'|y|'}` over inverted pairs.
pub fn koszul_sign(degrees: &[Parity], perm: &[usize]) -> Result<Sign, GradedError> {
    if degrees.len() != perm.len() {
        return Err(GradedError::LengthMismatch { degrees: degrees.len(), perm: perm.len() });
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(GradedError::NotAPermutation(perm.to_vec()));
        }
        seen[p] = true;
    }
    let mut acc = Parity::Even;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                acc = acc + degrees[perm[a]].reduced() * degrees[perm[b]].reduced();
            }
        }
    }
    Ok(Sign::pow(acc))
}

/// Finite based space with a parity per basis vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradedSpace {
    labels: Vec<String>,
    parities: Vec<Parity>,
}

impl GradedSpace {
    pub fn new(basis: Vec<(String, Parity)>) -> Result<GradedSpace, GradedError> {
        let mut seen = std::collections::BTreeSet::new();
        for (l, _) in &basis {
            if !seen.insert(l.clone()) {
                return Err(GradedError::SpaceMismatch(format!("duplicate basis label `{l}`")));
            }
        }
        let (labels, parities) = basis.into_iter().unzip();
        Ok(GradedSpace { labels, parities })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }
}

/// Sparse vector over `Λ` in a fixed basis; never stores zeros.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Vector {
    entries: BTreeMap<usize, Novikov>,
}

impl Vector {
    pub fn zero() -> Vector {
        Vector::default()
    }

    pub fn basis(i: usize, cutoff: Exp) -> Vector {
        Vector::single(i, Novikov::one(cutoff))
    }

    pub fn single(i: usize, c: Novikov) -> Vector {
        let mut v = Vector::zero();
        v.add_term(i, &c);
        v
    }

    pub fn from_entries<I: IntoIterator<Item = (usize, Novikov)>>(it: I) -> Vector {
        let mut v = Vector::zero();
        for (i, c) in it {
            v.add_term(i, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Novikov> {
        self.entries.get(&i)
    }

    pub fn coeff(&self, i: usize, cutoff: Exp) -> Novikov {
        self.entries.get(&i).cloned().unwrap_or_else(|| Novikov::zero(cutoff))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Novikov)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn add_term(&mut self, i: usize, c: &Novikov) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(x) => {
                *x = &*x + c;
                if x.is_zero() {
                    self.entries.remove(&i);
                }
            }
            None => {
                self.entries.insert(i, c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Novikov, other: &Vector) {
        if c.is_zero() {
            return;
        }
        for (i, x) in &other.entries {
            self.add_term(*i, &(c * x));
        }
    }

    pub fn add_signed(&mut self, sign: Sign, other: &Vector) {
        for (i, x) in &other.entries {
            self.add_term(*i, &sign.apply(x));
        }
    }

    pub fn scaled(&self, c: &Novikov) -> Vector {
        let mut out = Vector::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn signed(&self, sign: Sign) -> Vector {
        if sign.is_negative() {
            Vector { entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect() }
        } else {
            self.clone()
        }
    }

    pub fn plus(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_signed(Sign::PLUS, other);
        out
    }

    pub fn minus(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_signed(Sign::MINUS, other);
        out
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    /// Least valuation among the entries.
    pub fn valuation(&self) -> Option<Exp> {
        self.entries.values().filter_map(|c| c.valuation()).min()
    }
}

/// Sparse multilinear map `V^{⊗s} → W` over basis tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct MultilinearMap {
    arity: usize,
    parity: Parity,
    table: BTreeMap<Vec<usize>, Vector>,
}

impl MultilinearMap {
    pub fn zero(arity: usize, parity: Parity) -> MultilinearMap {
        MultilinearMap { arity, parity, table: BTreeMap::new() }
    }

    pub fn identity(space: &GradedSpace, cutoff: Exp) -> MultilinearMap {
        let mut f = MultilinearMap::zero(1, Parity::Even);
        for i in 0..space.dim() {
            f.set(vec![i], Vector::basis(i, cutoff));
        }
        f
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn set(&mut self, key: Vec<usize>, value: Vector) {
        assert_eq!(key.len(), self.arity, "key arity");
        if value.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
    }

    pub fn add_at(&mut self, key: Vec<usize>, value: &Vector) {
        let mut cur = self.table.remove(&key).unwrap_or_default();
        cur.add_signed(Sign::PLUS, value);
        self.set(key, cur);
    }

    pub fn get(&self, key: &[usize]) -> Option<&Vector> {
        self.table.get(key)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.table.iter()
    }

    pub fn nnz(&self) -> usize {
        self.table.len()
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Value on a basis tuple.
    pub fn apply(&self, key: &[usize]) -> Vector {
        self.table.get(key).cloned().unwrap_or_default()
    }

    /// Checks that each entry lands in parity `Σ sources + declared`.
    pub fn check_parity(&self, source: &GradedSpace, target: &GradedSpace) -> Result<(), GradedError> {
        for (key, v) in &self.table {
            let expected = Parity::sum(key.iter().map(|&i| source.parity(i))) + self.parity;
            if v.support().any(|j| target.parity(j) != expected) {
                return Err(GradedError::ParityViolation { key: key.clone() });
            }
        }
        Ok(())
    }

    /// `f(x_1, .., x_i, g(x_{i+1}, ..), ..)` with the sign
    /// `(-1)^{|x_1|' + .. + |x_i|'}`, degrees taken from `space`.
    pub fn contract(&self, position: usize, g: &MultilinearMap, space: &GradedSpace) -> Result<MultilinearMap, GradedError> {
        if position >= self.arity {
            return Err(GradedError::SpaceMismatch(format!(
                "position {position} out of range for arity {}",
                self.arity
            )));
        }
        let arity = self.arity + g.arity - 1;
        let mut out = MultilinearMap::zero(arity, self.parity + g.parity);
        for (gk, gv) in &g.table {
            for (fk, fv) in &self.table {
                let Some(c) = gv.get(fk[position]) else { continue };
                let sign = Sign::pow(Parity::reduced_sum(fk[..position].iter().map(|&i| space.parity(i))));
                let mut key = fk[..position].to_vec();
                key.extend_from_slice(gk);
                key.extend_from_slice(&fk[position + 1..]);
                out.add_at(key, &fv.scaled(&sign.apply(c)));
            }
        }
        Ok(out)
    }

    pub fn plus(&self, other: &MultilinearMap) -> Result<MultilinearMap, GradedError> {
        if self.arity != other.arity {
            return Err(GradedError::SpaceMismatch("arity".into()));
        }
        let mut out = self.clone();
        for (k, v) in &other.table {
            out.add_at(k.clone(), v);
        }
        Ok(out)
    }
}
