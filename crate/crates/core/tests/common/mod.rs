#![allow(dead_code)]

use std::collections::BTreeMap;

use qcoh::ainfinity::floer::{BoundingCochain, EnergyGradedAlgebra};
use qcoh::ainfinity::{AInfCategory, CategoryBuilder, ObjId};
use qcoh::graded::{Parity, Sign, Vector};
use qcoh::hochschild::{chain_space, Chain, ChainSpace, Cochain, CochainSpace};
use qcoh::mukai_splitgen::BarElement;
use qcoh::linalg::Certification;
use qcoh::models_qcoh::{clifford_model, sphere_model, SphereData};
use qcoh::novikov::{Coeff, Exp, Novikov};
use rand::Rng;

pub fn e() -> Exp {
    Exp::from_integer(4)
}

pub fn cert() -> Certification {
    Certification::new(e(), Exp::from_integer(0))
}

pub fn int(n: i64) -> Novikov {
    Novikov::int(n, e())
}

pub fn diag(values: &[i64]) -> Vec<Vec<Novikov>> {
    let n = values.len();
    (0..n).map(|i| (0..n).map(|j| int(if i == j { values[i] } else { 0 })).collect()).collect()
}

pub fn clifford(values: &[i64]) -> AInfCategory {
    clifford_model(&diag(values), e()).unwrap()
}

/// `k` isomorphic copies of a one-object algebra, every hom space a copy of it.
pub fn copies(a: &AInfCategory, k: usize) -> AInfCategory {
    let d = a.dim();
    let mut b = CategoryBuilder::new(a.cutoff());
    let objs: Vec<_> = (0..k).map(|i| b.add_object(&format!("X{i}"))).collect();
    let mut id = BTreeMap::new();
    for i in 0..k {
        for j in 0..k {
            for x in 0..d {
                let n = b.add_basis(&format!("{}@{i}{j}", a.label(x)), objs[i], objs[j], a.parity(x)).unwrap();
                id.insert((i, j, x), n);
            }
        }
    }
    for (arity, f) in a.ops() {
        for (word, v) in f.entries() {
            for path in paths(k, *arity) {
                let key: Vec<_> = word.iter().enumerate().map(|(t, &x)| id[&(path[t], path[t + 1], x)]).collect();
                let (s, t) = (path[0], path[*arity]);
                let out = Vector::from_entries(v.iter().map(|(y, c)| (id[&(s, t, y)], c.clone())));
                b.set_op(key, out).unwrap();
            }
        }
    }
    for i in 0..k {
        let u = a.unit(0).unwrap();
        b.set_unit(objs[i], Vector::from_entries(u.iter().map(|(y, c)| (id[&(i, i, y)], c.clone()))));
    }
    if let Some(p) = a.pairing() {
        let mut entries = BTreeMap::new();
        for ((x, y), c) in &p.entries {
            for i in 0..k {
                for j in 0..k {
                    entries.insert((id[&(i, j, *x)], id[&(j, i, *y)]), c.clone());
                }
            }
        }
        b.set_pairing(p.degree, entries);
    }
    b.set_arity_bound(a.arity_bound());
    b.build().unwrap()
}

fn paths(k: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..=arity {
        out = out.into_iter().flat_map(|p| (0..k).map(move |i| [p.clone(), vec![i]].concat())).collect();
    }
    out
}

/// `Λ × Λ`: two objects with one-dimensional endomorphisms and no cross homs.
pub fn lambda_lambda() -> AInfCategory {
    let mut b = CategoryBuilder::new(e());
    let mut pairing = BTreeMap::new();
    for name in ["X", "Y"] {
        let x = b.add_object(name);
        let one = b.add_basis(&format!("1{name}"), x, x, Parity::Even).unwrap();
        b.set_op(vec![one, one], Vector::basis(one, e())).unwrap();
        b.set_unit(x, Vector::basis(one, e()));
        pairing.insert((one, one), int(1));
    }
    b.set_pairing(0, pairing);
    b.build().unwrap()
}

/// One odd basis element and all operations zero.
pub fn zero_odd() -> AInfCategory {
    let mut b = CategoryBuilder::new(e());
    let x = b.add_object("X");
    b.add_basis("u", x, x, Parity::Odd).unwrap();
    b.build().unwrap()
}

/// `{1, u}` with `u` odd and `m_1(u) = 1`: unital with vanishing cohomology.
pub fn acyclic() -> AInfCategory {
    let mut b = CategoryBuilder::new(e());
    let x = b.add_object("Z");
    let one = b.add_basis("1", x, x, Parity::Even).unwrap();
    let u = b.add_basis("u", x, x, Parity::Odd).unwrap();
    b.set_op(vec![u], Vector::basis(one, e())).unwrap();
    b.set_op(vec![one, one], Vector::basis(one, e())).unwrap();
    b.set_op(vec![one, u], Vector::basis(u, e())).unwrap();
    b.set_op(vec![u, one], Vector::basis(u, e()).signed(Sign::MINUS)).unwrap();
    b.set_unit(x, Vector::basis(one, e()));
    b.build().unwrap()
}

/// Disjoint union of two categories with zero cross homs.
pub fn direct_sum(a: &AInfCategory, c: &AInfCategory) -> AInfCategory {
    qcoh::ainfinity::decompose_by_potential(&[(a.clone(), int(0)), (c.clone(), int(1))]).unwrap().0
}

/// One-dimensional torus fiber with disks `y` and `T y⁻¹`, deformed at `y = ρ e^{b₊}`
/// and truncated at the given arity; flat part.
pub fn floer_circle(rho: i64, b_plus: Novikov, max_arity: usize) -> AInfCategory {
    let alg = EnergyGradedAlgebra::torus(1, e())
        .with_divisor_class("b1", Exp::from_integer(0), vec![1], Coeff::one())
        .with_divisor_class("b2", Exp::from_integer(1), vec![-1], Coeff::one());
    let bc = BoundingCochain { rho: vec![int(rho)], b_plus: Vector::single(1, b_plus) };
    alg.deform_by_mc(&bc, max_arity).unwrap().category.flat_part()
}

pub fn small_coeff<R: Rng>(rng: &mut R) -> Novikov {
    let c = rng.gen_range(-3..=3);
    let c = if c == 0 { 1 } else { c };
    if rng.gen_bool(0.25) {
        Novikov::monomial(Coeff::int(c), Exp::new(rng.gen_range(1..=3), 2), e())
    } else {
        int(c)
    }
}

pub fn random_cochain<R: Rng>(rng: &mut R, space: &CochainSpace, parity: Parity, density: f64) -> Cochain {
    let mut v = Vector::zero();
    for i in 0..space.dim() {
        if space.parity(i) == parity && rng.gen_bool(density) {
            v.add_term(i, &small_coeff(rng));
        }
    }
    space.to_cochain(&v, parity)
}

pub fn random_chain<R: Rng>(rng: &mut R, space: &ChainSpace, density: f64) -> Chain {
    let mut v = Vector::zero();
    for i in 0..space.dim() {
        if rng.gen_bool(density) {
            v.add_term(i, &small_coeff(rng));
        }
    }
    space.to_chain(&v)
}

/// Random homogeneous chain.
pub fn random_chain_of<R: Rng>(rng: &mut R, space: &ChainSpace, parity: Parity, density: f64) -> Chain {
    let mut v = Vector::zero();
    for i in 0..space.dim() {
        if space.parity(i) == parity && rng.gen_bool(density) {
            v.add_term(i, &small_coeff(rng));
        }
    }
    space.to_chain(&v)
}

pub fn sphere(beta: i64, n: i64) -> AInfCategory {
    let d = SphereData { beta: int(beta), w: int(0), label: "S".into() };
    sphere_model(&d, n, e()).unwrap()
}

/// `X` with two orthogonal idempotents `e1 + e2 = 1_X`, and `K` the image of `e1`,
/// via `a: X → K`, `c: K → X`, `a·c = e1`, `c·a = 1_K`; trace pairing.
pub fn retract() -> AInfCategory {
    let mut b = CategoryBuilder::new(e());
    let x = b.add_object("X");
    let k = b.add_object("K");
    let e1 = b.add_basis("e1", x, x, Parity::Even).unwrap();
    let e2 = b.add_basis("e2", x, x, Parity::Even).unwrap();
    let one_k = b.add_basis("1K", k, k, Parity::Even).unwrap();
    let a = b.add_basis("a", x, k, Parity::Even).unwrap();
    let c = b.add_basis("c", k, x, Parity::Even).unwrap();
    let one = |y| Vector::basis(y, e());
    for (w, y) in [
        ([e1, e1], e1),
        ([e2, e2], e2),
        ([one_k, one_k], one_k),
        ([a, c], e1),
        ([c, a], one_k),
        ([e1, a], a),
        ([a, one_k], a),
        ([one_k, c], c),
        ([c, e1], c),
    ] {
        b.set_op(w.to_vec(), one(y)).unwrap();
    }
    b.set_unit(x, one(e1).plus(&one(e2)));
    b.set_unit(k, one(one_k));
    let pairing = [(e1, e1), (e2, e2), (one_k, one_k), (a, c), (c, a)].into_iter().map(|p| (p, int(1))).collect();
    b.set_pairing(0, pairing);
    b.build().unwrap()
}

pub fn hochschild_fixtures() -> Vec<(&'static str, AInfCategory)> {
    let half = Novikov::monomial(1.into(), Exp::new(1, 2), e());
    vec![
        ("cl1", clifford(&[3])),
        ("cl2", clifford(&[1, -2])),
        ("lambda2", lambda_lambda()),
        ("cl1x2", copies(&clifford(&[2]), 2)),
        ("circle", floer_circle(2, half, 5)),
        ("acyclic", acyclic()),
    ]
}

/// `(name, category, B, K)` with a cyclic pairing.
pub fn cyclic_fixtures() -> Vec<(&'static str, AInfCategory, Vec<ObjId>, ObjId)> {
    vec![
        ("cl1", clifford(&[3]), vec![0], 0),
        ("cl2", clifford(&[1, -2]), vec![0], 0),
        ("sphere", sphere(3, 2), vec![0], 0),
        ("retract", retract(), vec![0], 1),
        ("cl1x2", copies(&clifford(&[2]), 2), vec![0], 1),
        ("lambda2", lambda_lambda(), vec![0, 1], 1),
    ]
}

pub fn homogeneous<R: Rng>(rng: &mut R, cat: &AInfCategory, len: usize) -> Chain {
    let p = if rng.gen_bool(0.5) { Parity::Odd } else { Parity::Even };
    random_chain_of(rng, &chain_space(cat, len), p, 0.3)
}

/// Random bar element `K ← B .. B ← K` with at most `max` inner letters.
pub fn random_bar<R: Rng>(rng: &mut R, cat: &AInfCategory, b_objs: &[ObjId], k: ObjId, max: usize) -> BarElement {
    let mut out = BarElement::zero();
    for s in 0..=max {
        for w in cat.composable_words(s + 2, None) {
            let inner_ok = w[..=s].iter().all(|&x| b_objs.contains(&cat.tgt(x)));
            if cat.src(w[0]) == k && cat.tgt(w[s + 1]) == k && inner_ok && rng.gen_bool(0.3) {
                out.add_term(w[0], w[1..=s].to_vec(), w[s + 1], &small_coeff(rng));
            }
        }
    }
    out
}
