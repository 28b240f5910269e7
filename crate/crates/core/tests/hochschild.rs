mod common;

use common::*;
use proptest::prelude::*;
use qcoh::ainfinity::{cohomology_category, AInfCategory};
use qcoh::graded::{Parity, Sign, Vector};
use qcoh::hochschild::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

thread_local!(static FIXTURES: Vec<(&'static str, AInfCategory)> = hochschild_fixtures());

fn parity_of(bit: bool) -> Parity {
    if bit {
        Parity::Odd
    } else {
        Parity::Even
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn differential_squares_to_zero(seed in any::<u64>(), which in 0usize..6, odd in any::<bool>()) {
        let (_, cat) = &FIXTURES.with(|f| f[which].clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = cochain_space(cat, 3);
        let phi = random_cochain(&mut rng, &space, parity_of(odd), 0.2);
        prop_assert!(m1(cat, &m1(cat, &phi)).is_zero());
    }

    #[test]
    fn chain_differential_squares_to_zero(seed in any::<u64>(), which in 0usize..6) {
        let (_, cat) = &FIXTURES.with(|f| f[which].clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_chain(&mut rng, &chain_space(cat, 3), 0.2);
        prop_assert!(b(cat, &b(cat, &x)).is_zero());
    }

    #[test]
    fn module_relation_holds(seed in any::<u64>(), which in 0usize..6, odd in any::<bool>()) {
        let (_, cat) = &FIXTURES.with(|f| f[which].clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_cochain(&mut rng, &cochain_space(cat, 3), parity_of(odd), 0.2);
        let x = random_chain(&mut rng, &chain_space(cat, 3), 0.1);
        let mut r = b(cat, &b11(cat, &phi, &x));
        r.add_signed(Sign::pow(phi.parity().reduced()), &b11(cat, &phi, &b(cat, &x)));
        r.add_signed(Sign::PLUS, &b11(cat, &m1(cat, &phi), &x));
        prop_assert!(r.is_zero(), "residual {}", r);
    }

    #[test]
    fn cap_is_compatible_with_inclusion(seed in any::<u64>(), odd in any::<bool>()) {
        let cat = copies(&clifford(&[1]), 2);
        let sub = Subcategory::by_names(&cat, &["X1"]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_cochain(&mut rng, &cochain_space(&cat, 2), parity_of(odd), 0.3);
        let x = random_chain(&mut rng, &chain_space(&sub.cat, 2), 0.4);
        let lhs = b11(&cat, &phi, &include_chain(&sub, &x));
        let rhs = include_chain(&sub, &b11(&sub.cat, &restrict_cochain(&sub, &phi), &x));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn b_of_p_p_in_clifford() {
    let cat = clifford(&[3]);
    let p = cat.basis_id("e1").unwrap();
    // both wrap terms contribute m2(p, p) = 3·1
    let x = Chain::word(vec![p, p], int(1));
    assert_eq!(b(&cat, &x), Chain::word(vec![0], int(6)));
}

#[test]
fn unit_is_closed_and_acts_trivially() {
    for (name, cat) in hochschild_fixtures() {
        let one = unit_cochain(&cat, 3);
        assert!(m1(&cat, &one).is_zero(), "{name}");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = random_chain(&mut rng, &chain_space(&cat, 2), 0.3);
        assert_eq!(cap(&cat, &one, &x), x, "{name}");
        let phi = random_cochain(&mut rng, &cochain_space(&cat, 3), Parity::Odd, 0.3);
        assert_eq!(cup(&cat, &one, &phi), phi, "{name}");
    }
}

#[test]
fn length_zero_even_cocycles_multiply_pointwise() {
    let cat = clifford(&[3]);
    let mut a = Cochain::zero(Parity::Even, 2);
    a.set_object(0, Vector::single(0, int(2)));
    let mut c = Cochain::zero(Parity::Even, 2);
    c.set_object(0, Vector::single(0, int(-5)));
    assert!(m1(&cat, &a).is_zero());
    let prod = cup(&cat, &a, &c);
    let mut expected = Cochain::zero(Parity::Even, 2);
    expected.set_object(0, Vector::single(0, int(-10)));
    assert_eq!(prod, expected);
}

#[test]
fn central_length_zero_cochain_acts_by_scalar() {
    let cat = clifford(&[3]);
    let mut phi = Cochain::zero(Parity::Even, 2);
    phi.set_object(0, Vector::single(0, int(4)));
    for w in [vec![0], vec![1], vec![1, 1]] {
        let x = Chain::word(w, int(1));
        assert_eq!(cap(&cat, &phi, &x), x.scaled(&int(4)));
    }
}

#[test]
fn clifford_hochschild_homology_is_one_dimensional() {
    for q in [vec![3], vec![1, -2]] {
        let cat = clifford(&q);
        let h = chain_homology(&cat, 4, &cert()).unwrap();
        assert_eq!(h.homology.total(), 1, "{q:?}");
        assert!(h.homology.stabilized);
        let hc = cochain_homology(&cat, 3, &cert()).unwrap();
        assert_eq!(hc.homology.dims, [1, 0]);
        assert!(hc.homology.stabilized);
    }
}

#[test]
fn clifford_parity_of_the_class_follows_n() {
    assert_eq!(chain_homology(&clifford(&[1]), 3, &cert()).unwrap().homology.dims, [0, 1]);
    assert_eq!(chain_homology(&clifford(&[1, 1]), 3, &cert()).unwrap().homology.dims, [1, 0]);
}

#[test]
fn semisimple_pair_has_two_classes() {
    let cat = lambda_lambda();
    let h = chain_homology(&cat, 4, &cert()).unwrap();
    assert_eq!(h.homology.dims, [2, 0]);
    assert!(h.homology.stabilized);
    assert_eq!(cochain_homology(&cat, 4, &cert()).unwrap().homology.dims, [2, 0]);
}

#[test]
fn zero_multiplication_homology_grows() {
    let cat = zero_odd();
    let dims: Vec<usize> = (3..=6).map(|n| chain_homology(&cat, n, &cert()).unwrap().homology.total()).collect();
    assert_eq!(dims, vec![3, 4, 5, 6]);
    let h = chain_homology(&cat, 5, &cert()).unwrap();
    assert!(!h.homology.stabilized);
    assert!(h.homology.require_stabilized().unwrap_err().to_string().contains("not stabilized"));
}

#[test]
fn short_truncations_are_never_stabilized() {
    let h = chain_homology(&clifford(&[1]), 2, &cert()).unwrap();
    assert_eq!(h.homology.previous, None);
    assert!(!h.homology.stabilized);
}

/// Structure constants of the cup product on the computed basis.
fn cup_table(cat: &AInfCategory, h: &CochainHomology) -> Vec<Vec<Vector>> {
    (0..h.dim())
        .map(|i| (0..h.dim()).map(|j| h.class_of(&cup(cat, &h.reps[i], &h.reps[j])).unwrap()).collect())
        .collect()
}

#[test]
fn cup_is_associative_and_graded_commutative_on_classes() {
    for cat in [clifford(&[3]), clifford(&[1, 2]), lambda_lambda()] {
        let h = cochain_homology(&cat, 3, &cert()).unwrap();
        let t = cup_table(&cat, &h);
        let n = h.dim();
        for i in 0..n {
            for j in 0..n {
                let s = Sign::pow(h.parities[i] * h.parities[j]);
                assert_eq!(t[i][j], t[j][i].signed(s));
                for k in 0..n {
                    // (ij)k against i(jk) through the structure constants
                    let mut left = Vector::zero();
                    for (a, c) in t[i][j].iter() {
                        left.add_scaled(c, &t[a][k]);
                    }
                    let mut right = Vector::zero();
                    for (a, c) in t[j][k].iter() {
                        right.add_scaled(c, &t[i][a]);
                    }
                    assert_eq!(left, right);
                }
            }
        }
        let unit = h.class_of(&unit_cochain(&cat, 3)).unwrap();
        for i in 0..n {
            let mut prod = Vector::zero();
            for (a, c) in unit.iter() {
                prod.add_scaled(c, &t[a][i]);
            }
            assert_eq!(prod, Vector::basis(i, e()));
        }
    }
}

#[test]
fn cap_is_a_module_action_on_classes() {
    // the HH^• classes of these fixtures are even, so the law holds without sign
    for cat in [clifford(&[3]), lambda_lambda(), clifford(&[1, 2])] {
        let hc = cochain_homology(&cat, 3, &cert()).unwrap();
        let hh = chain_homology(&cat, 3, &cert()).unwrap();
        for i in 0..hc.dim() {
            for j in 0..hc.dim() {
                for k in 0..hh.dim() {
                    let x = &hh.reps[k];
                    let prod = cup(&cat, &hc.reps[i], &hc.reps[j]);
                    let left = hh.class_of(&cap(&cat, &prod, x)).unwrap();
                    let inner = cap(&cat, &hc.reps[j], x);
                    let right = hh.class_of(&cap(&cat, &hc.reps[i], &inner)).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}

#[test]
fn length_zero_cocycles_are_central_in_cohomology() {
    let cat = copies(&clifford(&[2]), 2);
    let hc = cochain_homology(&cat, 3, &cert()).unwrap();
    let coh = cohomology_category(&cat, &cert()).unwrap();
    for (r, rep) in hc.reps.iter().enumerate() {
        let fp = hc.parities[r];
        for x in 0..2 {
            for y in 0..2 {
                // [m2(φ_X, f)] = -(-1)^{|φ|'|f|'} [m2(f, φ_Y)], which is the
                // graded commutation φ∘f = (-1)^{|φ||f|} f∘φ in the cohomology category
                for &f in cat.hom(x, y) {
                    let fx = Vector::basis(f, e());
                    let a = cat.m_vec(&[rep.object_part(x), fx.clone()]);
                    let c = cat.m_vec(&[fx, rep.object_part(y)]);
                    let hom = coh.hom_a(x, y);
                    let (ca, cc) = (hom.class_of(&a).unwrap(), hom.class_of(&c).unwrap());
                    let s = Sign::MINUS * Sign::pow(fp.reduced() * cat.parity(f).reduced());
                    assert_eq!(ca, cc.signed(s), "rep {r}");
                }
            }
        }
    }
}

#[test]
fn transport_round_trips() {
    let cat = copies(&clifford(&[1]), 2);
    let sub = Subcategory::by_names(&cat, &["X0"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = random_chain(&mut rng, &chain_space(&sub.cat, 2), 0.5);
    let back = restrict_chain(&sub, &include_chain(&sub, &x));
    assert_eq!(back, x);
    let one = unit_cochain(&cat, 2);
    for obj in 0..2 {
        assert_eq!(restrict_to_object(&cat, &one, obj).unwrap(), cat.unit(obj).unwrap().clone());
    }
    assert_eq!(restrict_cochain(&sub, &one), unit_cochain(&sub.cat, 2));
    assert!(restrict_to_object(&cat, &one, 5).is_err());
    let c = include_object(&cat, 1, cat.unit(1).unwrap()).unwrap();
    assert_eq!(c.len(), 1);
}

#[test]
fn raise_length_of_zero_is_zero() {
    let cat = clifford(&[1]);
    let out = raise_length(&cat, &Cochain::zero(Parity::Even, 4), 2, 4, &cert()).unwrap();
    assert!(out.is_zero());
}

#[test]
fn raise_length_kills_low_lengths_on_acyclic_object() {
    let cat = acyclic();
    let one = unit_cochain(&cat, 4);
    let out = raise_length(&cat, &one, 1, 4, &cert()).unwrap();
    assert!(out.vanishes_through(1));
    assert!(m1(&cat, &out).is_zero());
    assert!(is_cohomologous(&cat, &out, &one, &cert()).unwrap());
}

#[test]
fn raise_length_on_a_direct_summand() {
    let cat = direct_sum(&clifford(&[1]), &acyclic());
    let z = cat.object_id("Z").unwrap();
    let mut phi = Cochain::zero(Parity::Even, 5);
    phi.set_object(z, cat.unit(z).unwrap().clone());
    assert!(m1(&cat, &phi).is_zero());
    let out = raise_length(&cat, &phi, 2, 5, &cert()).unwrap();
    assert!(out.vanishes_through(2));
    assert!(m1(&cat, &out).is_zero());
    assert!(is_cohomologous(&cat, &out, &phi, &cert()).unwrap());
}

#[test]
fn raise_length_needs_budget_and_exact_objects() {
    let cat = clifford(&[1]);
    let one = unit_cochain(&cat, 3);
    assert!(matches!(raise_length(&cat, &one, 3, 3, &cert()), Err(qcoh::error::Error::LengthBudget(_))));
    assert!(matches!(raise_length(&cat, &one, 1, 3, &cert()), Err(qcoh::error::Error::Hypothesis(_))));
}
