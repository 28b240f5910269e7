mod common;

use common::*;
use proptest::prelude::*;
use qcoh::ainfinity::{check_cyclic, AInfCategory, ObjId};
use qcoh::graded::{Parity, Sign, Vector};
use qcoh::hochschild::*;
use qcoh::linalg::Matrix;
use qcoh::mukai_splitgen::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn degree(cat: &AInfCategory) -> i64 {
    cat.pairing().unwrap().degree
}

fn point(cat: &AInfCategory, label: &str) -> Chain {
    Chain::word(vec![cat.basis_id(label).unwrap()], cat.one())
}

#[test]
fn fixtures_are_cyclic() {
    for (name, cat, _, _) in cyclic_fixtures() {
        assert!(check_cyclic(&cat, 3, true, &cert()).unwrap().passed(), "{name}");
    }
}

#[test]
fn sphere_mukai_table() {
    for (beta, n) in [(3, 2), (0, 2), (-5, 4)] {
        let cat = sphere(beta, n);
        let (one, p) = (point(&cat, "1"), point(&cat, "p"));
        assert_eq!(mukai(&cat, &one, &one), int(2));
        assert_eq!(mukai(&cat, &one, &p), int(0));
        assert_eq!(mukai(&cat, &p, &one), int(0));
        assert_eq!(mukai(&cat, &p, &p), int(2 * beta));
    }
}

#[test]
fn sphere_z_map() {
    let cat = sphere(3, 2);
    let table = DualBasisTable::new(&cat).unwrap();
    let (one, p) = (point(&cat, "1"), point(&cat, "p"));
    let (i1, ip) = (cat.basis_id("1").unwrap(), cat.basis_id("p").unwrap());
    let z1 = z_map(&cat, &one, 2, &table).unwrap();
    let zp = z_map(&cat, &p, 2, &table).unwrap();
    assert_eq!(z1.object_part(0), Vector::single(ip, int(2)));
    assert_eq!(zp.object_part(0), Vector::single(i1, int(6)));
    assert_eq!(z_x(&cat, &one, 0, &table).unwrap(), Vector::single(ip, int(2)));
    assert_eq!(z_x(&cat, &p, 0, &table).unwrap(), Vector::single(i1, int(6)));
}

#[test]
fn clifford_mukai_of_the_top_class() {
    // the top class pairs with itself to (-1)^{n(n+1)/2} · 2^n det Q
    let c1 = clifford(&[3]);
    assert_eq!(mukai(&c1, &point(&c1, "e1"), &point(&c1, "e1")), int(-6));
    let c2 = clifford(&[1, 2]);
    assert_eq!(mukai(&c2, &point(&c2, "e12"), &point(&c2, "e12")), int(-8));
}

#[test]
fn trace_examples() {
    let cat = sphere(3, 2);
    assert_eq!(trace(&cat, &point(&cat, "p")).unwrap(), int(1));
    assert_eq!(trace(&cat, &point(&cat, "1")).unwrap(), int(0));
    let one = unit_cochain(&cat, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let x = random_chain(&mut rng, &chain_space(&cat, 2), 0.3);
        assert_eq!(cyc_pair(&cat, &one, &x).unwrap(), trace(&cat, &x).unwrap());
    }
    assert!(trace(&acyclic(), &point(&acyclic(), "1")).is_err());
}

#[test]
fn dual_basis_is_dual() {
    for (name, cat, _, _) in cyclic_fixtures() {
        let table = DualBasisTable::new(&cat).unwrap();
        assert!(table.violations(&cat).is_empty(), "{name}");
    }
}

#[test]
fn mukai_form_is_perfect_on_homology() {
    for (name, cat) in [
        ("cl1", clifford(&[3])),
        ("cl2", clifford(&[1, -2])),
        ("lambda2", lambda_lambda()),
        ("sphere", sphere(3, 2)),
    ] {
        let hh = chain_homology(&cat, 4, &cert()).unwrap();
        assert!(hh.homology.stabilized, "{name}");
        let g = Matrix::new(mukai_gram(&cat, &hh.reps));
        assert!(!g.det().unwrap().is_zero(), "{name}");
    }
}

#[test]
fn mukai_vanishes_across_orthogonal_factors() {
    let cat = direct_sum(&clifford(&[2]), &clifford(&[5]));
    let hh = chain_homology(&cat, 3, &cert()).unwrap();
    assert_eq!(hh.dim(), 2);
    let split: Vec<_> = hh.reps.iter().map(|r| r.iter().map(|(w, _)| cat.src(w[0])).max().unwrap()).collect();
    assert_ne!(split[0], split[1]);
    assert!(mukai(&cat, &hh.reps[0], &hh.reps[1]).is_zero());
    assert!(mukai(&cat, &hh.reps[1], &hh.reps[0]).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclic_pairing_of_z_is_mukai(seed in any::<u64>(), which in 0usize..6) {
        let (_, cat, _, _) = &cyclic_fixtures()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = DualBasisTable::new(cat).unwrap();
        let x = homogeneous(&mut rng, cat, 2);
        let y = random_chain(&mut rng, &chain_space(cat, 2), 0.3);
        let z = z_map(cat, &x, 2, &table).unwrap();
        prop_assert_eq!(cyc_pair(cat, &z, &y).unwrap(), mukai(cat, &x, &y));
    }

    #[test]
    fn z_at_an_object_is_the_length_zero_part(seed in any::<u64>(), which in 0usize..6) {
        let (_, cat, _, _) = &cyclic_fixtures()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = DualBasisTable::new(cat).unwrap();
        let x = homogeneous(&mut rng, cat, 2);
        let z = z_map(cat, &x, 1, &table).unwrap();
        for k in 0..cat.objects().len() {
            prop_assert_eq!(z_x(cat, &x, k, &table).unwrap(), z.object_part(k));
        }
    }

    #[test]
    fn mukai_is_skew_invariant(seed in any::<u64>(), which in 0usize..6) {
        let (_, cat, _, _) = &cyclic_fixtures()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = homogeneous(&mut rng, cat, 2);
        let y = random_chain(&mut rng, &chain_space(cat, 2), 0.3);
        let Some((w, _)) = x.iter().next() else { return Ok(()) };
        let p = chain_word_parity(cat, w);
        let lhs = mukai(cat, &b(cat, &x), &y);
        let rhs = Sign::pow(p).apply(&mukai(cat, &x, &b(cat, &y)));
        prop_assert_eq!(&lhs + &rhs, cat.zero());
    }

    #[test]
    fn m_k_intertwines_the_bar_differential(seed in any::<u64>(), which in 0usize..6) {
        let (_, cat, bs, k) = &cyclic_fixtures()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_bar(&mut rng, cat, bs, *k, 2);
        let lhs = m_k(cat, &bar_differential(cat, &x));
        let rhs = cat.m_insert(&[], &m_k(cat, &x), &[]);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn delta_is_a_chain_map(seed in any::<u64>(), which in 0usize..6) {
        let (_, cat, bs, k) = &cyclic_fixtures()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sub = Subcategory::new(cat, bs).unwrap();
        let table = DualBasisTable::new(cat).unwrap();
        let x = random_chain(&mut rng, &chain_space(&sub.cat, 2), 0.3);
        let lhs = bar_differential(cat, &delta_chain(cat, &sub, &x, *k, &table).unwrap());
        let rhs = delta_chain(cat, &sub, &b(&sub.cat, &x), *k, &table).unwrap();
        let r = lhs.plus_signed(Sign::pow(Parity::of(degree(cat))), &rhs);
        prop_assert!(r.is_zero(), "residual {}", r);
    }

    #[test]
    fn m_k_of_delta_is_z(seed in any::<u64>(), which in 0usize..6) {
        let (_, cat, bs, k) = &cyclic_fixtures()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sub = Subcategory::new(cat, bs).unwrap();
        let table = DualBasisTable::new(cat).unwrap();
        let x = random_chain(&mut rng, &chain_space(&sub.cat, 2), 0.3);
        let lhs = m_k(cat, &delta_chain(cat, &sub, &x, *k, &table).unwrap());
        prop_assert_eq!(lhs, z_x(cat, &include_chain(&sub, &x), *k, &table).unwrap());
    }

    #[test]
    fn inclusion_preserves_mukai(seed in any::<u64>()) {
        let cat = copies(&clifford(&[2]), 2);
        let sub = Subcategory::new(&cat, &[1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = chain_space(&sub.cat, 2);
        let x = random_chain(&mut rng, &space, 0.3);
        let y = random_chain(&mut rng, &space, 0.3);
        prop_assert_eq!(
            mukai(&cat, &include_chain(&sub, &x), &include_chain(&sub, &y)),
            mukai(&sub.cat, &x, &y)
        );
    }
}

fn assert_generated(cat: &AInfCategory, b_objs: &[ObjId], k: ObjId) {
    let c = split_generation_check(cat, b_objs, k, 3, &cert()).unwrap();
    assert_eq!(c.verdict, Verdict::Generated);
    let table = DualBasisTable::new(cat).unwrap();
    let z = z_x(cat, &c.witness, k, &table).unwrap();
    let coh = qcoh::ainfinity::cohomology_category(cat, &cert()).unwrap();
    let end_k = coh.hom_a(k, k);
    assert_eq!(end_k.class_of(&z).unwrap(), end_k.class_of(cat.unit(k).unwrap()).unwrap());
}

#[test]
fn split_generation_of_self() {
    assert_generated(&clifford(&[3]), &[0], 0);
    assert_generated(&clifford(&[1, -2]), &[0], 0);
    assert_generated(&sphere(3, 2), &[0], 0);
    assert_generated(&lambda_lambda(), &[0, 1], 1);
}

#[test]
fn split_generation_of_a_retract() {
    assert_generated(&retract(), &[0], 1);
    assert_generated(&copies(&clifford(&[2]), 2), &[0], 1);
}

#[test]
fn nilpotent_sphere_never_stabilizes() {
    // HH_• of k[p]/p² grows with the window, so no certificate is issued
    let cat = sphere(0, 2);
    for n in [3, 4] {
        let err = split_generation_check(&cat, &[0], 0, n, &cert()).unwrap_err();
        assert!(matches!(err, qcoh::error::Error::NotStabilized { .. }), "{err}");
    }
}

#[test]
fn orthogonal_factor_does_not_generate() {
    let cat = direct_sum(&clifford(&[2]), &clifford(&[5]));
    let c = split_generation_check(&cat, &[0], 1, 3, &cert()).unwrap();
    assert_eq!(c.verdict, Verdict::NotGenerated);
    assert!(c.images.iter().all(|v| v.is_zero()));
    let other = split_generation_check(&lambda_lambda(), &[0], 1, 3, &cert()).unwrap();
    assert_eq!(other.verdict, Verdict::NotGenerated);
}

#[test]
fn split_generation_requires_a_stabilized_window() {
    let err = split_generation_check(&clifford(&[3]), &[0], 0, 2, &cert()).unwrap_err();
    assert!(matches!(err, qcoh::error::Error::NotStabilized { .. }));
}

#[test]
fn z_of_homology_class_is_closed() {
    for (name, cat, _, _) in cyclic_fixtures() {
        let table = DualBasisTable::new(&cat).unwrap();
        let hh = chain_homology(&cat, 3, &cert()).unwrap();
        for r in &hh.reps {
            let z = z_map(&cat, r, 3, &table).unwrap();
            assert!(m1(&cat, &z).vanishes_through(2), "{name}: {}", z.show(&cat));
        }
    }
}
