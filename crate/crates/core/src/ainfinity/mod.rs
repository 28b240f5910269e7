//! Finite curved or flat cyclic A-infinity categories with sparse
//! structure tensors, their axiom checkers, the cohomology category, and
//! Maurer–Cartan deformation of energy-graded algebras.

mod checks;
mod cohomology;
pub mod fixture;
pub mod floer;

pub use checks::{check_ainf, check_cyclic, check_unital, CheckReport, Violation};
pub use cohomology::{cohomology_category, CohomologyCategory, HomCohomology};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graded::{GradedSpace, MultilinearMap, Parity, Sign, Vector};
use crate::linalg::Matrix;
use crate::novikov::{Exp, Novikov};

pub type ObjId = usize;
pub type BasisId = usize;

#[derive(Clone, Debug, PartialEq)]
pub struct BasisElem {
    pub label: String,
    pub src: ObjId,
    pub tgt: ObjId,
    pub parity: Parity,
    /// Optional integer degree carried as metadata.
    pub degree: Option<i64>,
}

/// Cyclic pairing `Hom(X,Y) ⊗ Hom(Y,X) → Λ` of degree `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicPairing {
    pub degree: i64,
    pub entries: BTreeMap<(BasisId, BasisId), Novikov>,
}

#[derive(Clone, Debug)]
pub struct AInfCategory {
    cutoff: Exp,
    objects: Vec<String>,
    basis: Vec<BasisElem>,
    space: GradedSpace,
    homs: BTreeMap<(ObjId, ObjId), Vec<BasisId>>,
    by_src: Vec<Vec<BasisId>>,
    ops: BTreeMap<usize, MultilinearMap>,
    curvature: BTreeMap<ObjId, Vector>,
    units: BTreeMap<ObjId, Vector>,
    pairing: Option<CyclicPairing>,
    arity_bound: Option<usize>,
}

impl AInfCategory {
    pub fn builder(cutoff: Exp) -> CategoryBuilder {
        CategoryBuilder::new(cutoff)
    }

    pub fn cutoff(&self) -> Exp {
        self.cutoff
    }

    pub fn zero(&self) -> Novikov {
        Novikov::zero(self.cutoff)
    }

    pub fn one(&self) -> Novikov {
        Novikov::one(self.cutoff)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_id(&self, name: &str) -> Result<ObjId> {
        self.objects.iter().position(|o| o == name).ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn elem(&self, x: BasisId) -> &BasisElem {
        &self.basis[x]
    }

    pub fn label(&self, x: BasisId) -> &str {
        &self.basis[x].label
    }

    pub fn basis_id(&self, label: &str) -> Result<BasisId> {
        self.space.index_of(label).ok_or_else(|| Error::invalid(format!("unknown basis element `{label}`")))
    }

    pub fn parity(&self, x: BasisId) -> Parity {
        self.basis[x].parity
    }

    pub fn src(&self, x: BasisId) -> ObjId {
        self.basis[x].src
    }

    pub fn tgt(&self, x: BasisId) -> ObjId {
        self.basis[x].tgt
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    /// Basis of `Hom(X, Y)`.
    pub fn hom(&self, x: ObjId, y: ObjId) -> &[BasisId] {
        self.homs.get(&(x, y)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Basis elements with source `x`.
    pub fn starting_at(&self, x: ObjId) -> &[BasisId] {
        &self.by_src[x]
    }

    pub fn ops(&self) -> &BTreeMap<usize, MultilinearMap> {
        &self.ops
    }

    /// Largest arity with a nonzero structure map.
    pub fn max_arity(&self) -> usize {
        self.ops.iter().filter(|(_, f)| !f.is_zero()).map(|(s, _)| *s).max().unwrap_or(0)
    }

    /// Arities beyond this bound are not known (truncated deformations).
    pub fn arity_bound(&self) -> Option<usize> {
        self.arity_bound
    }

    pub fn is_flat(&self) -> bool {
        self.curvature.values().all(|v| v.is_zero())
    }

    pub fn curvature(&self, x: ObjId) -> Vector {
        self.curvature.get(&x).cloned().unwrap_or_default()
    }

    pub fn unit(&self, x: ObjId) -> Option<&Vector> {
        self.units.get(&x)
    }

    pub fn is_unital(&self) -> bool {
        (0..self.objects.len()).all(|x| self.units.contains_key(&x))
    }

    pub fn pairing(&self) -> Option<&CyclicPairing> {
        self.pairing.as_ref()
    }

    pub fn word_parity(&self, word: &[BasisId]) -> Parity {
        Parity::sum(word.iter().map(|&x| self.parity(x)))
    }

    /// `Σ |x|'` over a word.
    pub fn reduced(&self, word: &[BasisId]) -> Parity {
        Parity::reduced_sum(word.iter().map(|&x| self.parity(x)))
    }

    pub fn vector_parity(&self, v: &Vector) -> Option<Parity> {
        let mut it = v.support().map(|i| self.parity(i));
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_composable(&self, word: &[BasisId]) -> bool {
        word.windows(2).all(|w| self.tgt(w[0]) == self.src(w[1]))
    }

    pub fn is_cyclic(&self, word: &[BasisId]) -> bool {
        !word.is_empty() && self.is_composable(word) && self.tgt(*word.last().unwrap()) == self.src(word[0])
    }

    /// `m_s` on a nonempty basis word.
    pub fn m(&self, word: &[BasisId]) -> Vector {
        debug_assert!(!word.is_empty());
        match self.ops.get(&word.len()) {
            Some(f) => f.apply(word),
            None => Vector::zero(),
        }
    }

    /// `m_s` on a word whose empty case is the curvature of `object`.
    pub fn m_at(&self, object: ObjId, word: &[BasisId]) -> Vector {
        if word.is_empty() {
            self.curvature(object)
        } else {
            self.m(word)
        }
    }

    /// `m_s(prefix, v, suffix)` extended linearly in the middle slot.
    pub fn m_insert(&self, prefix: &[BasisId], v: &Vector, suffix: &[BasisId]) -> Vector {
        let mut out = Vector::zero();
        let mut word = Vec::with_capacity(prefix.len() + suffix.len() + 1);
        for (x, c) in v.iter() {
            word.clear();
            word.extend_from_slice(prefix);
            word.push(x);
            word.extend_from_slice(suffix);
            out.add_scaled(c, &self.m(&word));
        }
        out
    }

    /// `m_s` on vector inputs, multilinearly.
    pub fn m_vec(&self, inputs: &[Vector]) -> Vector {
        let mut out = Vector::zero();
        let mut word = Vec::with_capacity(inputs.len());
        self.m_vec_rec(inputs, &mut word, &self.one(), &mut out);
        out
    }

    fn m_vec_rec(&self, inputs: &[Vector], word: &mut Vec<BasisId>, coeff: &Novikov, out: &mut Vector) {
        if word.len() == inputs.len() {
            if self.is_composable(word) {
                out.add_scaled(coeff, &self.m(word));
            }
            return;
        }
        for (x, c) in inputs[word.len()].iter() {
            word.push(x);
            self.m_vec_rec(inputs, word, &(coeff * c), out);
            word.pop();
        }
    }

    pub fn pair(&self, x: BasisId, y: BasisId) -> Novikov {
        self.pairing
            .as_ref()
            .and_then(|p| p.entries.get(&(x, y)).cloned())
            .unwrap_or_else(|| self.zero())
    }

    pub fn pair_vec(&self, u: &Vector, v: &Vector) -> Novikov {
        let mut acc = self.zero();
        for (x, a) in u.iter() {
            for (y, b) in v.iter() {
                let p = self.pair(x, y);
                if !p.is_zero() {
                    acc = acc + a * b * p;
                }
            }
        }
        acc
    }

    /// Gram matrix of the pairing between `Hom(X,Y)` (rows) and `Hom(Y,X)` (columns).
    pub fn gram(&self, x: ObjId, y: ObjId) -> Matrix {
        let rows = self.hom(x, y);
        let cols = self.hom(y, x);
        Matrix::new(rows.iter().map(|&a| cols.iter().map(|&b| self.pair(a, b)).collect()).collect())
    }

    /// All composable words of the given length (objects restricted to `objs` if given).
    pub fn composable_words(&self, len: usize, objs: Option<&[ObjId]>) -> Vec<Vec<BasisId>> {
        let allowed = |o: ObjId| objs.map_or(true, |s| s.contains(&o));
        let mut out = Vec::new();
        if len == 0 {
            return out;
        }
        let mut stack: Vec<Vec<BasisId>> = (0..self.dim())
            .filter(|&x| allowed(self.src(x)) && allowed(self.tgt(x)))
            .map(|x| vec![x])
            .collect();
        stack.reverse();
        while let Some(w) = stack.pop() {
            if w.len() == len {
                out.push(w);
                continue;
            }
            let last = *w.last().unwrap();
            for &y in self.by_src[self.tgt(last)].iter().rev() {
                if allowed(self.tgt(y)) {
                    let mut v = w.clone();
                    v.push(y);
                    stack.push(v);
                }
            }
        }
        out
    }

    /// Cyclic words `x_0 .. x_s` (total `s + 1` letters).
    pub fn cyclic_words(&self, s: usize, objs: Option<&[ObjId]>) -> Vec<Vec<BasisId>> {
        self.composable_words(s + 1, objs)
            .into_iter()
            .filter(|w| self.tgt(*w.last().unwrap()) == self.src(w[0]))
            .collect()
    }

    /// Full subcategory on the given objects, with basis renumbered.
    /// Returns the subcategory and the map from its basis ids to ours.
    pub fn full_subcategory(&self, objs: &[ObjId]) -> Result<(AInfCategory, Vec<BasisId>)> {
        let mut b = CategoryBuilder::new(self.cutoff);
        let mut obj_map = BTreeMap::new();
        for &o in objs {
            if o >= self.objects.len() {
                return Err(Error::UnknownObject(format!("#{o}")));
            }
            obj_map.insert(o, b.add_object(&self.objects[o]));
        }
        let mut embed = Vec::new();
        let mut back = BTreeMap::new();
        for (i, e) in self.basis.iter().enumerate() {
            if let (Some(&s), Some(&t)) = (obj_map.get(&e.src), obj_map.get(&e.tgt)) {
                let id = b.add_basis(&e.label, s, t, e.parity)?;
                b.basis[id].degree = e.degree;
                back.insert(i, id);
                embed.push(i);
            }
        }
        let map_vec = |v: &Vector| Vector::from_entries(v.iter().filter_map(|(i, c)| back.get(&i).map(|&j| (j, c.clone()))));
        for (s, f) in &self.ops {
            for (key, val) in f.entries() {
                if key.iter().all(|x| back.contains_key(x)) {
                    let k: Vec<BasisId> = key.iter().map(|x| back[x]).collect();
                    b.set_op(k, map_vec(val))?;
                }
            }
            let _ = s;
        }
        for (o, v) in &self.curvature {
            if let Some(&n) = obj_map.get(o) {
                b.set_curvature(n, map_vec(v));
            }
        }
        for (o, v) in &self.units {
            if let Some(&n) = obj_map.get(o) {
                b.set_unit(n, map_vec(v));
            }
        }
        if let Some(p) = &self.pairing {
            let entries = p
                .entries
                .iter()
                .filter_map(|((x, y), c)| Some(((*back.get(x)?, *back.get(y)?), c.clone())))
                .collect();
            b.set_pairing(p.degree, entries);
        }
        b.arity_bound = self.arity_bound;
        Ok((b.build()?, embed))
    }

    /// Same data with the curvature removed.
    pub fn flat_part(&self) -> AInfCategory {
        let mut c = self.clone();
        c.curvature.clear();
        c
    }

    /// Returns a copy with a replaced structure map value (for mutation tests).
    pub fn with_op(&self, word: Vec<BasisId>, value: Vector) -> Result<AInfCategory> {
        let mut b = self.to_builder();
        b.set_op(word, value)?;
        b.build()
    }

    pub fn with_unit(&self, object: ObjId, unit: Vector) -> Result<AInfCategory> {
        let mut b = self.to_builder();
        b.set_unit(object, unit);
        b.build()
    }

    pub fn with_pairing(&self, degree: i64, entries: BTreeMap<(BasisId, BasisId), Novikov>) -> Result<AInfCategory> {
        let mut b = self.to_builder();
        b.set_pairing(degree, entries);
        b.build()
    }

    pub fn to_builder(&self) -> CategoryBuilder {
        CategoryBuilder {
            cutoff: self.cutoff,
            objects: self.objects.clone(),
            basis: self.basis.clone(),
            ops: self.ops.clone(),
            curvature: self.curvature.clone(),
            units: self.units.clone(),
            pairing: self.pairing.clone(),
            arity_bound: self.arity_bound,
        }
    }

    /// Formats a vector with basis labels.
    pub fn show(&self, v: &Vector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter().map(|(i, c)| format!("[{}] {}", c, self.label(i))).collect::<Vec<_>>().join(" + ")
    }

    pub fn show_word(&self, w: &[BasisId]) -> String {
        w.iter().map(|&x| self.label(x).to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Incremental construction with validation in [`CategoryBuilder::build`].
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    cutoff: Exp,
    objects: Vec<String>,
    basis: Vec<BasisElem>,
    ops: BTreeMap<usize, MultilinearMap>,
    curvature: BTreeMap<ObjId, Vector>,
    units: BTreeMap<ObjId, Vector>,
    pairing: Option<CyclicPairing>,
    arity_bound: Option<usize>,
}

impl CategoryBuilder {
    pub fn new(cutoff: Exp) -> CategoryBuilder {
        CategoryBuilder {
            cutoff,
            objects: Vec::new(),
            basis: Vec::new(),
            ops: BTreeMap::new(),
            curvature: BTreeMap::new(),
            units: BTreeMap::new(),
            pairing: None,
            arity_bound: None,
        }
    }

    pub fn cutoff(&self) -> Exp {
        self.cutoff
    }

    pub fn add_object(&mut self, name: &str) -> ObjId {
        self.objects.push(name.to_string());
        self.objects.len() - 1
    }

    pub fn add_basis(&mut self, label: &str, src: ObjId, tgt: ObjId, parity: Parity) -> Result<BasisId> {
        if self.basis.iter().any(|b| b.label == label) {
            return Err(Error::invalid(format!("duplicate basis label `{label}`")));
        }
        if src >= self.objects.len() || tgt >= self.objects.len() {
            return Err(Error::UnknownObject(format!("#{src} or #{tgt}")));
        }
        self.basis.push(BasisElem { label: label.to_string(), src, tgt, parity, degree: None });
        Ok(self.basis.len() - 1)
    }

    pub fn set_degree(&mut self, x: BasisId, degree: i64) {
        self.basis[x].degree = Some(degree);
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    pub fn parity(&self, x: BasisId) -> Parity {
        self.basis[x].parity
    }

    /// Sets `m_s(word)`; `s = word.len() >= 1`.
    pub fn set_op(&mut self, word: Vec<BasisId>, value: Vector) -> Result<()> {
        if word.is_empty() {
            return Err(Error::invalid("use set_curvature for m_0"));
        }
        let s = word.len();
        let f = self.ops.entry(s).or_insert_with(|| MultilinearMap::zero(s, Parity::of(s as i64)));
        f.set(word, value);
        Ok(())
    }

    pub fn add_op(&mut self, word: Vec<BasisId>, value: &Vector) -> Result<()> {
        let s = word.len();
        if s == 0 {
            return Err(Error::invalid("use set_curvature for m_0"));
        }
        let f = self.ops.entry(s).or_insert_with(|| MultilinearMap::zero(s, Parity::of(s as i64)));
        f.add_at(word, value);
        Ok(())
    }

    pub fn set_curvature(&mut self, object: ObjId, value: Vector) {
        self.curvature.insert(object, value);
    }

    pub fn set_unit(&mut self, object: ObjId, value: Vector) {
        self.units.insert(object, value);
    }

    pub fn set_pairing(&mut self, degree: i64, entries: BTreeMap<(BasisId, BasisId), Novikov>) {
        let entries = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.pairing = Some(CyclicPairing { degree, entries });
    }

    pub fn set_arity_bound(&mut self, bound: Option<usize>) {
        self.arity_bound = bound;
    }

    /// Validates composability, degrees, hom placement, units and pairing degree.
    pub fn build(self) -> Result<AInfCategory> {
        let space = GradedSpace::new(self.basis.iter().map(|b| (b.label.clone(), b.parity)).collect())?;
        let mut homs: BTreeMap<(ObjId, ObjId), Vec<BasisId>> = BTreeMap::new();
        let mut by_src = vec![Vec::new(); self.objects.len()];
        for (i, b) in self.basis.iter().enumerate() {
            homs.entry((b.src, b.tgt)).or_default().push(i);
            by_src[b.src].push(i);
        }
        let n = self.basis.len();
        let valid = |v: &Vector| v.support().all(|i| i < n);
        for (s, f) in &self.ops {
            for (key, val) in f.entries() {
                if key.iter().any(|&x| x >= n) || !valid(val) {
                    return Err(Error::invalid(format!("m_{s} entry refers to an unknown basis element")));
                }
                let composable = key.windows(2).all(|w| self.basis[w[0]].tgt == self.basis[w[1]].src);
                if !composable {
                    return Err(Error::invalid(format!("m_{s} entry on a non-composable word {key:?}")));
                }
                let (src, tgt) = (self.basis[key[0]].src, self.basis[*key.last().unwrap()].tgt);
                let expected = Parity::sum(key.iter().map(|&x| self.basis[x].parity)) + Parity::of(*s as i64);
                for j in val.support() {
                    if self.basis[j].src != src || self.basis[j].tgt != tgt {
                        return Err(Error::invalid(format!(
                            "m_{s}({}) has a term `{}` outside Hom({}, {})",
                            labels(&self.basis, key),
                            self.basis[j].label,
                            self.objects[src],
                            self.objects[tgt]
                        )));
                    }
                    if self.basis[j].parity != expected {
                        return Err(Error::invalid(format!(
                            "m_{s}({}) has a term `{}` of the wrong parity",
                            labels(&self.basis, key),
                            self.basis[j].label
                        )));
                    }
                }
            }
        }
        for (kind, table) in [("curvature", &self.curvature), ("unit", &self.units)] {
            for (o, v) in table {
                if *o >= self.objects.len() || !valid(v) {
                    return Err(Error::invalid(format!("{kind} refers to an unknown object or basis element")));
                }
                let parity = if kind == "unit" { Parity::Even } else { Parity::Even };
                for j in v.support() {
                    let b = &self.basis[j];
                    if b.src != *o || b.tgt != *o {
                        return Err(Error::invalid(format!("{kind} of `{}` has a term outside its endomorphisms", self.objects[*o])));
                    }
                    if b.parity != parity {
                        return Err(Error::invalid(format!("{kind} of `{}` must be even", self.objects[*o])));
                    }
                }
            }
        }
        if let Some(p) = &self.pairing {
            for ((x, y), _) in &p.entries {
                if *x >= n || *y >= n {
                    return Err(Error::invalid("pairing refers to an unknown basis element"));
                }
                let (a, b) = (&self.basis[*x], &self.basis[*y]);
                if a.src != b.tgt || a.tgt != b.src {
                    return Err(Error::invalid(format!("pairing entry <{}, {}> is not between opposite homs", a.label, b.label)));
                }
                if a.parity + b.parity != Parity::of(p.degree) {
                    return Err(Error::invalid(format!("pairing entry <{}, {}> has the wrong degree", a.label, b.label)));
                }
            }
        }
        Ok(AInfCategory {
            cutoff: self.cutoff,
            objects: self.objects,
            basis: self.basis,
            space,
            homs,
            by_src,
            ops: self.ops,
            curvature: self.curvature.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
            units: self.units,
            pairing: self.pairing,
            arity_bound: self.arity_bound,
        })
    }
}

fn labels(basis: &[BasisElem], word: &[BasisId]) -> String {
    word.iter().map(|&x| basis[x].label.as_str()).collect::<Vec<_>>().join(",")
}

/// The product model: `m_2(x, y) = (-1)^{|x||y| + |x|} x·y` for an
/// associative superalgebra product `x·y`, so that composition in the
/// cohomology category recovers `x·y`.
pub fn product_sign(x: Parity, y: Parity) -> Sign {
    Sign::pow(x * y + x)
}

/// Disjoint union of categories. Objects are grouped by the potential
/// value supplied per component; homs between different components are zero,
/// which in particular enforces `Hom = 0` across distinct values.
/// Labels already taken are qualified as `label@object`.
pub fn decompose_by_potential(components: &[(AInfCategory, Novikov)]) -> Result<(AInfCategory, Vec<(Novikov, Vec<ObjId>)>)> {
    let cutoff = components.iter().map(|(c, _)| c.cutoff).min().ok_or_else(|| Error::invalid("no components"))?;
    let mut b = CategoryBuilder::new(cutoff);
    let mut groups: Vec<(Novikov, Vec<ObjId>)> = Vec::new();
    for (cat, w) in components {
        let obj_offset = b.objects.len();
        let basis_offset = b.basis.len();
        for o in &cat.objects {
            b.add_object(o);
        }
        for e in &cat.basis {
            // clashing labels are qualified by their source object
            let label = if b.basis.iter().any(|x| x.label == e.label) {
                format!("{}@{}", e.label, cat.objects[e.src])
            } else {
                e.label.clone()
            };
            let id = b.add_basis(&label, e.src + obj_offset, e.tgt + obj_offset, e.parity)?;
            b.basis[id].degree = e.degree;
        }
        let shift = |v: &Vector| Vector::from_entries(v.iter().map(|(i, c)| (i + basis_offset, c.with_cutoff(cutoff))));
        for f in cat.ops.values() {
            for (key, val) in f.entries() {
                b.set_op(key.iter().map(|x| x + basis_offset).collect(), shift(val))?;
            }
        }
        for (o, v) in &cat.curvature {
            b.set_curvature(o + obj_offset, shift(v));
        }
        for (o, v) in &cat.units {
            b.set_unit(o + obj_offset, shift(v));
        }
        if let Some(p) = &cat.pairing {
            let degree = p.degree;
            let mut entries = b.pairing.take().map(|q| q.entries).unwrap_or_default();
            for ((x, y), c) in &p.entries {
                entries.insert((x + basis_offset, y + basis_offset), c.with_cutoff(cutoff));
            }
            b.set_pairing(degree, entries);
        }
        let ids: Vec<ObjId> = (obj_offset..obj_offset + cat.objects.len()).collect();
        match groups.iter_mut().find(|(v, _)| v == w) {
            Some((_, objs)) => objs.extend(ids),
            None => groups.push((w.with_cutoff(cutoff), ids)),
        }
    }
    Ok((b.build()?, groups))
}
