//! Hochschild cochains and chains of a finite flat A∞ category, truncated at
//! word length `N`.

mod chain;
mod cochain;
mod homology;
mod raise;
mod transport;

pub use chain::{b, b11, cap, chain_space, ChainSpace};
pub use cochain::{cochain_space, cup, m1, m1_columns, m2, unit_cochain, CochainSpace};
pub use homology::{chain_homology, cochain_homology, ChainHomology, CochainHomology, Homology};
pub use raise::{is_cohomologous, raise_length, solve_exact};
pub use transport::{include_chain, include_object, restrict_chain, restrict_cochain, restrict_to_object, Subcategory};

use std::collections::BTreeMap;
use std::fmt;

use crate::ainfinity::{AInfCategory, BasisId, ObjId};
use crate::graded::{Parity, Sign, Vector};
use crate::novikov::Novikov;

/// Cochain `φ = (φ_X, φ_1, .., φ_N)` of declared parity; values on
/// composable words, the length-zero part per object.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    parity: Parity,
    length: usize,
    zero: BTreeMap<ObjId, Vector>,
    values: BTreeMap<Vec<BasisId>, Vector>,
}

impl Cochain {
    pub fn zero(parity: Parity, length: usize) -> Cochain {
        Cochain { parity, length, zero: BTreeMap::new(), values: BTreeMap::new() }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Truncation length `N`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn with_length(&self, length: usize) -> Cochain {
        let mut c = self.clone();
        c.length = length;
        c.values.retain(|w, _| w.len() <= length);
        c
    }

    pub fn set_object(&mut self, x: ObjId, v: Vector) {
        if v.is_zero() {
            self.zero.remove(&x);
        } else {
            self.zero.insert(x, v);
        }
    }

    pub fn set(&mut self, word: Vec<BasisId>, v: Vector) {
        assert!(!word.is_empty() && word.len() <= self.length, "cochain word length");
        if v.is_zero() {
            self.values.remove(&word);
        } else {
            self.values.insert(word, v);
        }
    }

    pub fn add_object(&mut self, x: ObjId, v: &Vector) {
        let cur = self.zero.remove(&x).unwrap_or_default().plus(v);
        self.set_object(x, cur);
    }

    pub fn add(&mut self, word: Vec<BasisId>, v: &Vector) {
        let cur = self.values.remove(&word).unwrap_or_default().plus(v);
        self.set(word, cur);
    }

    /// `φ_s(word)`, or `φ_X` when the word is empty.
    pub fn eval(&self, object: ObjId, word: &[BasisId]) -> Vector {
        if word.is_empty() {
            self.zero.get(&object).cloned().unwrap_or_default()
        } else {
            self.values.get(word).cloned().unwrap_or_default()
        }
    }

    pub fn object_part(&self, x: ObjId) -> Vector {
        self.eval(x, &[])
    }

    pub fn objects(&self) -> impl Iterator<Item = (ObjId, &Vector)> {
        self.zero.iter().map(|(x, v)| (*x, v))
    }

    pub fn words(&self) -> impl Iterator<Item = (&Vec<BasisId>, &Vector)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.zero.is_empty() && self.values.is_empty()
    }

    /// Whether all components of length `<= n` vanish.
    pub fn vanishes_through(&self, n: usize) -> bool {
        self.zero.is_empty() && self.values.keys().all(|w| w.len() > n)
    }

    /// Least length carrying a nonzero component.
    pub fn order(&self) -> Option<usize> {
        if !self.zero.is_empty() {
            return Some(0);
        }
        self.values.keys().map(|w| w.len()).min()
    }

    pub fn scaled(&self, c: &Novikov) -> Cochain {
        let mut out = Cochain::zero(self.parity, self.length);
        for (x, v) in &self.zero {
            out.set_object(*x, v.scaled(c));
        }
        for (w, v) in &self.values {
            out.set(w.clone(), v.scaled(c));
        }
        out
    }

    pub fn signed(&self, s: Sign) -> Cochain {
        let mut out = self.clone();
        for v in out.zero.values_mut() {
            *v = v.signed(s);
        }
        for v in out.values.values_mut() {
            *v = v.signed(s);
        }
        out
    }

    pub fn plus(&self, other: &Cochain) -> Cochain {
        let mut out = self.with_length(self.length.min(other.length));
        for (x, v) in &other.zero {
            out.add_object(*x, v);
        }
        for (w, v) in &other.values {
            if w.len() <= out.length {
                out.add(w.clone(), v);
            }
        }
        out
    }

    pub fn minus(&self, other: &Cochain) -> Cochain {
        self.plus(&other.signed(Sign::MINUS))
    }

    pub fn show(&self, cat: &AInfCategory) -> String {
        let mut parts = Vec::new();
        for (x, v) in &self.zero {
            parts.push(format!("{} ↦ {}", cat.objects()[*x], cat.show(v)));
        }
        for (w, v) in &self.values {
            parts.push(format!("({}) ↦ {}", cat.show_word(w), cat.show(v)));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("; ")
        }
    }
}

/// Chain `Σ c · x_0[x_1|..|x_s]`, keyed by the cyclic word `x_0 .. x_s`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Chain {
    terms: BTreeMap<Vec<BasisId>, Novikov>,
}

impl Chain {
    pub fn zero() -> Chain {
        Chain::default()
    }

    pub fn word(word: Vec<BasisId>, c: Novikov) -> Chain {
        let mut out = Chain::zero();
        out.add_term(word, &c);
        out
    }

    pub fn add_term(&mut self, word: Vec<BasisId>, c: &Novikov) {
        assert!(!word.is_empty(), "chain words have at least the letter x0");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(x) => {
                *x = &*x + c;
                if x.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Novikov, other: &Chain) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &(c * x));
        }
    }

    pub fn add_signed(&mut self, s: Sign, other: &Chain) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &s.apply(x));
        }
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        out.add_signed(Sign::PLUS, other);
        out
    }

    pub fn minus(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        out.add_signed(Sign::MINUS, other);
        out
    }

    pub fn scaled(&self, c: &Novikov) -> Chain {
        let mut out = Chain::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn signed(&self, s: Sign) -> Chain {
        let mut out = Chain::zero();
        out.add_signed(s, self);
        out
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

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<BasisId>, &Novikov)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[BasisId]) -> Option<&Novikov> {
        self.terms.get(word)
    }

    /// Largest `s` among the words `x_0[x_1|..|x_s]`.
    pub fn max_length(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len() - 1).max()
    }

    pub fn show(&self, cat: &AInfCategory) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| {
                let tail: Vec<&str> = w[1..].iter().map(|&x| cat.label(x)).collect();
                format!("[{}] {}[{}]", c, cat.label(w[0]), tail.join("|"))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `|x_0| + Σ_{i>0} |x_i|'`.
pub fn chain_word_parity(cat: &AInfCategory, word: &[BasisId]) -> Parity {
    cat.parity(word[0]) + cat.reduced(&word[1..])
}

/// Parity of a cochain basis element sending `word` to `output`.
pub fn cochain_entry_parity(cat: &AInfCategory, word: &[BasisId], output: BasisId) -> Parity {
    cat.parity(output) + cat.reduced(word)
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("[{c}] {w:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
