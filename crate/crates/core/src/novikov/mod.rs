//! Truncated universal Novikov field `Λ` with rational exponents.
//!
//! An element is a finite sum `Σ c_k T^{e_k}` with strictly increasing
//! exponents below the energy cutoff `E`. Each value also carries the
//! exponent up to which it is known: exact values have no bound, and any
//! operation that drops terms at or above `E` records that.

mod coeff;
mod literal;

pub use coeff::{
    display_cmp, fmt_rational, rat, rat_int, recognize_rational, split_square, squarefree_part, Coeff,
    CoefficientField, Rational,
};
pub use literal::{parse_coeff, parse_novikov};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exponents of `T`.
pub type Exp = Ratio<i64>;

pub fn exp(n: i64, d: i64) -> Exp {
    Ratio::new(n, d)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NovikovError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("insufficient cutoff: need precision {needed}, only {available} available")]
    InsufficientCutoff { needed: Exp, available: Exp },
    #[error("coefficient fields {0} and {1} cannot be combined")]
    FieldMismatch(CoefficientField, CoefficientField),
    #[error("no square root in a supported field: {0}")]
    NoSquareRoot(String),
    #[error("series requires positive valuation")]
    NotTopologicallyNilpotent,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, Debug)]
pub struct Novikov {
    terms: Vec<(Exp, Coeff)>,
    cutoff: Exp,
    /// Exponent below which every coefficient is correct; `None` if exact.
    precision: Option<Exp>,
}

fn min_opt(a: Option<Exp>, b: Option<Exp>) -> Option<Exp> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Novikov {
    pub fn zero(cutoff: Exp) -> Novikov {
        Novikov { terms: Vec::new(), cutoff, precision: None }
    }

    pub fn one(cutoff: Exp) -> Novikov {
        Novikov::constant(Coeff::one(), cutoff)
    }

    pub fn constant(c: Coeff, cutoff: Exp) -> Novikov {
        Novikov::monomial(c, Exp::zero(), cutoff)
    }

    pub fn int(n: i64, cutoff: Exp) -> Novikov {
        Novikov::constant(Coeff::int(n), cutoff)
    }

    /// `c T^e`.
    pub fn monomial(c: Coeff, e: Exp, cutoff: Exp) -> Novikov {
        Novikov::from_terms(vec![(e, c)], cutoff)
    }

    /// Builds from arbitrary terms: sorts, merges, drops zeros, truncates.
    pub fn from_terms(mut terms: Vec<(Exp, Coeff)>, cutoff: Exp) -> Novikov {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Exp, Coeff)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((le, lc)) if *le == e => *lc = &*lc + &c,
                _ => merged.push((e, c)),
            }
        }
        Novikov::truncated(merged, cutoff, None)
    }

    pub fn with_precision(self, p: Option<Exp>) -> Novikov {
        Novikov::truncated(self.terms, self.cutoff, min_opt(self.precision, p))
    }

    /// Drops terms at or above `cutoff`; records lost information.
    fn truncated(mut terms: Vec<(Exp, Coeff)>, cutoff: Exp, precision: Option<Exp>) -> Novikov {
        let mut prec = precision;
        if terms.iter().any(|(e, c)| *e >= cutoff && !c.is_zero()) {
            prec = min_opt(prec, Some(cutoff));
        }
        let bound = prec.unwrap_or(cutoff).min(cutoff);
        terms.retain(|(e, c)| *e < bound && !c.is_zero());
        Novikov { terms, cutoff, precision: prec }
    }

    pub fn cutoff(&self) -> Exp {
        self.cutoff
    }

    pub fn precision(&self) -> Option<Exp> {
        self.precision
    }

    /// Exponent below which terms are stored and meaningful.
    pub fn known_below(&self) -> Exp {
        match self.precision {
            Some(p) => p.min(self.cutoff),
            None => self.cutoff,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none() && self.terms.iter().all(|(_, c)| c.is_exact())
    }

    pub fn terms(&self) -> &[(Exp, Coeff)] {
        &self.terms
    }

    /// Zero up to the known precision.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1.is_one()
    }

    pub fn valuation(&self) -> Option<Exp> {
        self.terms.first().map(|(e, _)| *e)
    }

    /// Valuation, or the precision bound for a value indistinguishable from zero.
    fn effective_valuation(&self) -> Option<Exp> {
        self.valuation().or(self.precision)
    }

    pub fn leading(&self) -> Option<(Exp, &Coeff)> {
        self.terms.first().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `T^0`.
    pub fn constant_term(&self) -> Coeff {
        self.coeff_of(Exp::zero())
    }

    pub fn coeff_of(&self, e: Exp) -> Coeff {
        self.terms.iter().find(|(x, _)| *x == e).map(|(_, c)| c.clone()).unwrap_or_else(Coeff::zero)
    }

    /// Smallest field containing every coefficient.
    pub fn field(&self) -> Result<CoefficientField, NovikovError> {
        let mut field = CoefficientField::Rational;
        for (_, c) in &self.terms {
            field = join_fields(field, c.field())?;
        }
        Ok(field)
    }

    pub fn with_cutoff(&self, cutoff: Exp) -> Novikov {
        Novikov::truncated(self.terms.clone(), cutoff, self.precision)
    }

    pub fn checked_add(&self, other: &Novikov) -> Result<Novikov, NovikovError> {
        let cutoff = self.cutoff.min(other.cutoff);
        let prec = min_opt(self.precision, other.precision);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = j >= other.terms.len() || (i < self.terms.len() && self.terms[i].0 < other.terms[j].0);
            let take_right = i >= self.terms.len() || (j < other.terms.len() && other.terms[j].0 < self.terms[i].0);
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else if take_right {
                out.push(other.terms[j].clone());
                j += 1;
            } else {
                let c = self.terms[i].1.checked_add(&other.terms[j].1)?;
                out.push((self.terms[i].0, c));
                i += 1;
                j += 1;
            }
        }
        Ok(Novikov::truncated(out, cutoff, prec))
    }

    pub fn checked_sub(&self, other: &Novikov) -> Result<Novikov, NovikovError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Novikov) -> Result<Novikov, NovikovError> {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut prec = None;
        if let Some(pa) = self.precision {
            prec = min_opt(prec, Some(pa + other.effective_valuation().unwrap_or(pa.max(cutoff))));
        }
        if let Some(pb) = other.precision {
            prec = min_opt(prec, Some(pb + self.effective_valuation().unwrap_or(pb.max(cutoff))));
        }
        if self.precision.is_none() && self.terms.is_empty() || other.precision.is_none() && other.terms.is_empty() {
            return Ok(Novikov::zero(cutoff));
        }
        let bound = prec.unwrap_or(cutoff).min(cutoff);
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        let mut lost = false;
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if e >= bound {
                    if e >= cutoff {
                        lost = true;
                    }
                    continue;
                }
                out.push((e, ca.checked_mul(cb)?));
            }
        }
        if lost {
            prec = min_opt(prec, Some(cutoff));
        }
        let mut n = Novikov::from_terms_checked(out, cutoff)?;
        n.precision = prec;
        n.terms.retain(|(e, _)| *e < bound);
        Ok(n)
    }

    fn from_terms_checked(mut terms: Vec<(Exp, Coeff)>, cutoff: Exp) -> Result<Novikov, NovikovError> {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Exp, Coeff)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.checked_add(&c)?,
                _ => merged.push((e, c)),
            }
        }
        Ok(Novikov::truncated(merged, cutoff, None))
    }

    pub fn scale(&self, c: &Coeff) -> Result<Novikov, NovikovError> {
        if c.is_zero() {
            return Ok(Novikov { terms: Vec::new(), cutoff: self.cutoff, precision: self.precision });
        }
        let terms = self.terms.iter().map(|(e, x)| Ok((*e, x.checked_mul(c)?))).collect::<Result<Vec<_>, NovikovError>>()?;
        Ok(Novikov::truncated(terms, self.cutoff, self.precision))
    }

    /// Multiplies by `T^e`.
    pub fn shift(&self, e: Exp) -> Novikov {
        let terms = self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect();
        Novikov::truncated(terms, self.cutoff, self.precision.map(|p| p + e))
    }

    pub fn neg_sign(&self, negate: bool) -> Novikov {
        if negate {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. With leading term `c T^v` and input known
    /// modulo `T^p`, the series for `(1 + x)^{-1}` is summed in the window
    /// `min(E + v, p - v)`, so the result is known modulo `T^{min(E, p - 2v)}`.
    pub fn inv(&self) -> Result<Novikov, NovikovError> {
        let (v, c) = match self.leading() {
            Some((v, c)) => (v, c.clone()),
            None => {
                return Err(match self.precision {
                    Some(p) => NovikovError::InsufficientCutoff { needed: p, available: p },
                    None => NovikovError::DivisionByZero,
                })
            }
        };
        let cinv = c.inv()?;
        let cutoff = self.cutoff;
        let window = match self.precision {
            Some(p) => (cutoff + v).min(p - v),
            None => cutoff + v,
        };
        let x_terms = self.terms[1..]
            .iter()
            .map(|(e, x)| Ok((e - v, x.checked_mul(&cinv)?)))
            .collect::<Result<Vec<_>, NovikovError>>()?;
        let x = Novikov::truncated(x_terms, window, None);
        let mut acc = Novikov::one(window);
        if !x.is_zero() {
            let minus_x = -&x;
            let mut power = Novikov::one(window);
            loop {
                power = power.checked_mul(&minus_x)?;
                if power.is_zero() {
                    break;
                }
                acc = acc.checked_add(&power)?;
            }
        }
        let terms = acc
            .terms
            .iter()
            .map(|(e, y)| Ok((e - v, y.checked_mul(&cinv)?)))
            .collect::<Result<Vec<_>, NovikovError>>()?;
        let precision = match self.precision {
            Some(p) => Some(cutoff.min(p - v - v)),
            None if x.is_zero() => None,
            None => Some(cutoff),
        };
        Ok(Novikov::truncated(terms, cutoff, precision))
    }

    /// Inverse guaranteed correct up to `needed`, or an insufficient-cutoff error.
    pub fn inv_to(&self, needed: Exp) -> Result<Novikov, NovikovError> {
        let out = self.inv()?;
        let available = out.known_below();
        if available < needed {
            return Err(NovikovError::InsufficientCutoff { needed, available });
        }
        Ok(out)
    }

    pub fn checked_div(&self, other: &Novikov) -> Result<Novikov, NovikovError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Novikov, NovikovError> {
        let mut base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Novikov::one(self.cutoff);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `exp(x)` for `x` of positive valuation.
    pub fn exp(&self) -> Result<Novikov, NovikovError> {
        let v = match self.valuation() {
            None => return Ok(Novikov::one(self.cutoff).with_precision(self.precision)),
            Some(v) => v,
        };
        if v <= Exp::zero() {
            return Err(NovikovError::NotTopologicallyNilpotent);
        }
        let mut acc = Novikov::one(self.cutoff);
        let mut term = Novikov::one(self.cutoff);
        let mut k = 1i64;
        loop {
            term = term.checked_mul(self)?.scale(&Coeff::frac(1, k))?;
            if term.is_zero() {
                break;
            }
            acc = acc.checked_add(&term)?;
            k += 1;
        }
        Ok(acc.with_precision(self.precision))
    }

    /// A square root `c^{1/2} T^{v/2} (1 + x)^{1/2}` via the binomial series.
    /// The coefficient field may be promoted to contain `sqrt(c)`.
    pub fn sqrt(&self) -> Result<Novikov, NovikovError> {
        let (v, c) = match self.leading() {
            None => return Ok(self.clone()),
            Some((v, c)) => (v, c.clone()),
        };
        let sc = c.sqrt().ok_or_else(|| NovikovError::NoSquareRoot(c.to_string()))?;
        let cinv = c.inv()?;
        let x = self.shift(-v).scale(&cinv)?.checked_sub(&Novikov::one(self.cutoff))?;
        let mut acc = Novikov::one(self.cutoff);
        if !x.is_zero() {
            let mut power = Novikov::one(self.cutoff);
            // binomial(1/2, k)
            let mut binom = Rational::one();
            let half = rat(1, 2);
            let mut k = 0i64;
            loop {
                binom = binom * (&half - rat_int(k)) / rat_int(k + 1);
                power = power.checked_mul(&x)?;
                if power.is_zero() {
                    break;
                }
                acc = acc.checked_add(&power.scale(&Coeff::Rational(binom.clone()))?)?;
                k += 1;
            }
        }
        let out = acc.scale(&sc)?.shift(v / 2);
        Ok(out)
    }

    /// Evaluates the coefficients numerically (used for plotting and floats).
    pub fn to_float_terms(&self) -> Vec<(f64, (f64, f64))> {
        self.terms.iter().map(|(e, c)| (*e.numer() as f64 / *e.denom() as f64, c.to_complex())).collect()
    }

    /// Applies a map to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> Novikov {
        let terms = self.terms.iter().map(|(e, c)| (*e, f(c))).collect();
        Novikov::truncated(terms, self.cutoff, self.precision)
    }
}

pub fn join_fields(a: CoefficientField, b: CoefficientField) -> Result<CoefficientField, NovikovError> {
    use CoefficientField::*;
    match (a, b) {
        (Float(x), Float(y)) => Ok(Float(x.max(y))),
        (Float(x), _) | (_, Float(x)) => Ok(Float(x)),
        (Quadratic(x), Quadratic(y)) if x != y => Err(NovikovError::FieldMismatch(a, b)),
        (Quadratic(x), _) | (_, Quadratic(x)) => Ok(Quadratic(x)),
        _ => Ok(Rational),
    }
}

impl PartialEq for Novikov {
    fn eq(&self, other: &Novikov) -> bool {
        let bound = self.known_below().min(other.known_below());
        let a: Vec<_> = self.terms.iter().filter(|(e, _)| *e < bound).collect();
        let b: Vec<_> = other.terms.iter().filter(|(e, _)| *e < bound).collect();
        let mut i = 0;
        let mut j = 0;
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) if x.0 == y.0 => {
                    if x.1 != y.1 {
                        return false;
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x.0 < y.0 => {
                    if !x.1.is_zero() {
                        return false;
                    }
                    i += 1;
                }
                (Some(x), None) => {
                    if !x.1.is_zero() {
                        return false;
                    }
                    i += 1;
                }
                (_, Some(y)) => {
                    if !y.1.is_zero() {
                        return false;
                    }
                    j += 1;
                }
                (None, None) => break,
            }
        }
        true
    }
}

impl Neg for &Novikov {
    type Output = Novikov;
    fn neg(self) -> Novikov {
        Novikov {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            cutoff: self.cutoff,
            precision: self.precision,
        }
    }
}

impl Neg for Novikov {
    type Output = Novikov;
    fn neg(self) -> Novikov {
        -&self
    }
}

macro_rules! novikov_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Novikov> for &Novikov {
            type Output = Novikov;
            fn $method(self, rhs: &Novikov) -> Novikov {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Novikov> for Novikov {
            type Output = Novikov;
            fn $method(self, rhs: Novikov) -> Novikov {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Novikov> for Novikov {
            type Output = Novikov;
            fn $method(self, rhs: &Novikov) -> Novikov {
                (&self).$method(rhs)
            }
        }
    };
}

novikov_binop!(Add, add, checked_add);
novikov_binop!(Sub, sub, checked_sub);
novikov_binop!(Mul, mul, checked_mul);

fn fmt_exp(e: &Exp) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

impl fmt::Display for Novikov {
    /// Canonical literal: `(c0)*T^e0 + (c1)*T^e1 [+ O(T^p)]`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.terms.iter().map(|(e, c)| format!("({})*T^{}", c, fmt_exp(e))).collect();
        if let Some(p) = self.precision {
            if p < self.cutoff {
                parts.push(format!("O(T^{})", fmt_exp(&p)));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Formats an exponent as `n` or `n/d`.
pub fn format_exp(e: &Exp) -> String {
    fmt_exp(e)
}

pub fn parse_exp(s: &str) -> Result<Exp, NovikovError> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    let bad = || NovikovError::Parse(format!("bad exponent `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Ratio::new(n, d))
    } else if s.contains('.') {
        let x: f64 = s.parse().map_err(|_| bad())?;
        let r = recognize_rational(x, 1_000_000, 1e-12).ok_or_else(bad)?;
        use num_traits::ToPrimitive;
        Ok(Ratio::new(r.numer().to_i64().ok_or_else(bad)?, r.denom().to_i64().ok_or_else(bad)?))
    } else {
        Ok(Ratio::from_integer(s.parse().map_err(|_| bad())?))
    }
}

pub fn exp_abs(e: Exp) -> Exp {
    e.abs()
}
