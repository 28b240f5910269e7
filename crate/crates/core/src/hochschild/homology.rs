use std::collections::HashMap;

use super::chain::{b, chain_space, ChainSpace};
use super::cochain::{cochain_space, m1_columns, CochainSpace};
use super::{Chain, Cochain};
use crate::ainfinity::AInfCategory;
use crate::error::{Error, Result};
use crate::graded::{Parity, Vector};
use crate::linalg::{Certification, Elimination};

/// Dimensions of a truncated homology computation with its length metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub length: usize,
    /// `[even, odd]`.
    pub dims: [usize; 2],
    /// Dimensions at `length - 2`, when that truncation is meaningful.
    pub previous: Option<[usize; 2]>,
    pub stabilized: bool,
}

impl Homology {
    fn new(length: usize, dims: [usize; 2], previous: Option<[usize; 2]>) -> Homology {
        let stabilized = previous == Some(dims);
        Homology { length, dims, previous, stabilized }
    }

    pub fn total(&self) -> usize {
        self.dims[0] + self.dims[1]
    }

    pub fn require_stabilized(&self) -> Result<()> {
        if self.stabilized {
            Ok(())
        } else {
            Err(Error::NotStabilized {
                length: self.length,
                current: self.dims,
                previous: self.previous.unwrap_or([0, 0]),
            })
        }
    }
}

/// Class bookkeeping shared by both complexes: boundaries first, then representatives.
#[derive(Clone, Debug)]
struct Classes {
    elim: Elimination,
    /// Pushed column index of each representative.
    rep_columns: HashMap<usize, usize>,
}

impl Classes {
    fn new(cert: &Certification) -> Classes {
        Classes { elim: Elimination::new(*cert), rep_columns: HashMap::new() }
    }

    fn push_boundary(&mut self, v: &Vector) -> Result<()> {
        self.elim.push(v)?;
        Ok(())
    }

    /// Returns whether `v` is a new class.
    fn push_cycle(&mut self, v: &Vector) -> Result<bool> {
        let column = self.elim.pivot_columns().len() + self.elim.kernel().len();
        let fresh = self.elim.push(v)?;
        if fresh {
            let r = self.rep_columns.len();
            self.rep_columns.insert(column, r);
        }
        Ok(fresh)
    }

    fn coordinates(&self, v: &Vector) -> Result<Option<Vector>> {
        let Some(combo) = self.elim.solve(v)? else { return Ok(None) };
        Ok(Some(Vector::from_entries(
            combo.iter().filter_map(|(i, c)| self.rep_columns.get(&i).map(|&r| (r, c.clone()))),
        )))
    }
}

fn split_by_parity(parities: impl Iterator<Item = Parity>) -> [Vec<usize>; 2] {
    let mut out = [Vec::new(), Vec::new()];
    for (i, p) in parities.enumerate() {
        out[p.index()].push(i);
    }
    out
}

fn combine(columns: &[Vector], indices: &[usize], coeffs: &Vector) -> Vector {
    let mut out = Vector::zero();
    for (k, c) in coeffs.iter() {
        out.add_scaled(c, &columns[indices[k]]);
    }
    out
}

fn lift(indices: &[usize], coeffs: &Vector) -> Vector {
    Vector::from_entries(coeffs.iter().map(|(k, c)| (indices[k], c.clone())))
}

/// `H_•` of chains of length `<= N`: cycles of length `<= N - 1` modulo
/// boundaries of chains of length `<= N` that land there.
#[derive(Clone, Debug)]
pub struct ChainHomology {
    pub homology: Homology,
    pub space: ChainSpace,
    pub reps: Vec<Chain>,
    pub parities: Vec<Parity>,
    classes: Classes,
}

impl ChainHomology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of a cycle in the representative basis.
    pub fn class_of(&self, x: &Chain) -> Result<Vector> {
        if x.max_length().is_some_and(|s| s + 1 > self.homology.length) {
            return Err(Error::LengthBudget(format!(
                "chain of length {} exceeds the homology window {}",
                x.max_length().unwrap_or(0),
                self.homology.length - 1
            )));
        }
        self.classes
            .coordinates(&self.space.to_vector(x))?
            .ok_or_else(|| Error::invalid("chain is not a b-cycle"))
    }

    /// The chain with the given coordinates.
    pub fn chain(&self, coords: &Vector) -> Chain {
        let mut out = Chain::zero();
        for (i, c) in coords.iter() {
            out.add_scaled(c, &self.reps[i]);
        }
        out
    }
}

struct ChainData {
    dims: [usize; 2],
    reps: Vec<(Chain, Parity)>,
    classes: Classes,
}

fn chain_data(cat: &AInfCategory, space: &ChainSpace, n: usize, cert: &Certification) -> Result<ChainData> {
    let cols: Vec<Vector> = (0..space.dim())
        .map(|i| space.to_vector(&b(cat, &space.to_chain(&Vector::basis(i, cat.cutoff())))))
        .collect();
    let by_parity = split_by_parity((0..space.dim()).map(|i| space.parity(i)));
    let mut classes = Classes::new(cert);
    // boundaries of parity p come from parity p + 1
    let mut cycles = [Vec::new(), Vec::new()];
    for p in [Parity::Even, Parity::Odd] {
        let src = &by_parity[(p + Parity::Odd).index()];
        let top: Vec<Vector> = src
            .iter()
            .filter(|&&i| space.word_len(i) <= n)
            .map(|&i| {
                Vector::from_entries(cols[i].iter().filter(|(r, _)| space.word_len(*r) == n).map(|(r, c)| (r, c.clone())))
            })
            .collect();
        let kept: Vec<usize> = src.iter().copied().filter(|&i| space.word_len(i) <= n).collect();
        let k = Elimination::run(&top, *cert)?;
        for z in k.kernel() {
            classes.push_boundary(&combine(&cols, &kept, z))?;
        }
        let low: Vec<usize> = by_parity[p.index()].iter().copied().filter(|&i| space.word_len(i) < n).collect();
        let images: Vec<Vector> = low.iter().map(|&i| cols[i].clone()).collect();
        let z = Elimination::run(&images, *cert)?;
        cycles[p.index()] = z.kernel().iter().map(|c| lift(&low, c)).collect();
    }
    let mut reps = Vec::new();
    let mut dims = [0, 0];
    for p in [Parity::Even, Parity::Odd] {
        for z in &cycles[p.index()] {
            if classes.push_cycle(z)? {
                reps.push((space.to_chain(z), p));
                dims[p.index()] += 1;
            }
        }
    }
    Ok(ChainData { dims, reps, classes })
}

pub fn chain_homology(cat: &AInfCategory, length: usize, cert: &Certification) -> Result<ChainHomology> {
    if length == 0 {
        return Err(Error::invalid("chain homology needs length at least 1"));
    }
    if !cat.is_flat() {
        return Err(Error::Hypothesis("Hochschild chain complex needs a flat category".into()));
    }
    let space = chain_space(cat, length);
    let data = chain_data(cat, &space, length, cert)?;
    let previous = if length >= 3 {
        let small = chain_space(cat, length - 2);
        Some(chain_data(cat, &small, length - 2, cert)?.dims)
    } else {
        None
    };
    let (reps, parities) = data.reps.into_iter().unzip();
    Ok(ChainHomology { homology: Homology::new(length, data.dims, previous), space, reps, parities, classes: data.classes })
}

/// `HH^•` at truncation `N`: the image of the cohomology of cochains of
/// length `<= N` in that of cochains of length `<= N - 1`.
#[derive(Clone, Debug)]
pub struct CochainHomology {
    pub homology: Homology,
    pub space: CochainSpace,
    /// Cocycles of length `<= N`.
    pub reps: Vec<Cochain>,
    pub parities: Vec<Parity>,
    classes: Classes,
}

impl CochainHomology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of a cocycle, read off through length `N - 1`.
    pub fn class_of(&self, phi: &Cochain) -> Result<Vector> {
        let window = self.homology.length - 1;
        if phi.length() < window {
            return Err(Error::LengthBudget(format!(
                "cochain truncated at {} is shorter than the homology window {window}",
                phi.length()
            )));
        }
        let v = self.space.project(&self.space.to_vector(phi), window);
        self.classes.coordinates(&v)?.ok_or_else(|| Error::invalid("cochain is not an M1-cocycle"))
    }

    pub fn cochain(&self, coords: &Vector, parity: Parity) -> Cochain {
        let mut out = Cochain::zero(parity, self.homology.length);
        for (i, c) in coords.iter() {
            out = out.plus(&self.reps[i].scaled(c));
        }
        out
    }

    /// Whether a cocycle is exact through length `N - 1`.
    pub fn is_exact(&self, phi: &Cochain) -> Result<bool> {
        Ok(self.class_of(phi)?.is_zero())
    }
}

struct CochainData {
    dims: [usize; 2],
    reps: Vec<(Cochain, Parity)>,
    classes: Classes,
}

fn cochain_data(cat: &AInfCategory, space: &CochainSpace, cert: &Certification) -> Result<CochainData> {
    let n = space.length;
    let cols = m1_columns(cat, space);
    let by_parity = split_by_parity((0..space.dim()).map(|i| space.parity(i)));
    let mut classes = Classes::new(cert);
    let mut cocycles = [Vec::new(), Vec::new()];
    for p in [Parity::Even, Parity::Odd] {
        for &i in &by_parity[(p + Parity::Odd).index()] {
            if space.word_len(i) < n {
                classes.push_boundary(&space.project(&cols[i], n - 1))?;
            }
        }
        let own = &by_parity[p.index()];
        let images: Vec<Vector> = own.iter().map(|&i| cols[i].clone()).collect();
        let z = Elimination::run(&images, *cert)?;
        cocycles[p.index()] = z.kernel().iter().map(|c| lift(own, c)).collect::<Vec<_>>();
    }
    let mut reps = Vec::new();
    let mut dims = [0, 0];
    for p in [Parity::Even, Parity::Odd] {
        for z in &cocycles[p.index()] {
            if classes.push_cycle(&space.project(z, n - 1))? {
                reps.push((space.to_cochain(z, p), p));
                dims[p.index()] += 1;
            }
        }
    }
    Ok(CochainData { dims, reps, classes })
}

pub fn cochain_homology(cat: &AInfCategory, length: usize, cert: &Certification) -> Result<CochainHomology> {
    if length == 0 {
        return Err(Error::invalid("cochain homology needs length at least 1"));
    }
    if !cat.is_flat() {
        return Err(Error::Hypothesis("Hochschild cochain complex needs a flat category".into()));
    }
    let space = cochain_space(cat, length);
    let data = cochain_data(cat, &space, cert)?;
    let previous = if length >= 3 {
        Some(cochain_data(cat, &cochain_space(cat, length - 2), cert)?.dims)
    } else {
        None
    };
    let (reps, parities) = data.reps.into_iter().unzip();
    Ok(CochainHomology { homology: Homology::new(length, data.dims, previous), space, reps, parities, classes: data.classes })
}
