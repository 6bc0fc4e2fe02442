use hochschild_core::algebra::Algebra;
use hochschild_core::cochains::{hat_matrix, Cochain, CochainKind, CochainName, CochainSpace};
use hochschild_core::linalg::FieldSpec;
use hochschild_core::resolution::GeneratorIndex;
use hochschild_core::yoneda::{
    cohomologous, generator_cocycle, generic_lift, is_coboundary, product_table, theta_chain, verify_nilpotence_samples,
    verify_presentation, yoneda_product, yoneda_product_with, LiftMethod, RingPresentation,
};

fn alg(s: usize, p: u64) -> Algebra {
    Algebra::new(s, FieldSpec::new(p).unwrap()).unwrap()
}

#[test]
fn theta_products_are_column_sums() {
    let a = alg(3, 0);
    for u1 in [0, 3, 6] {
        let chain = theta_chain(u1, 6, &a);
        for u2 in 0..=6 {
            let p = yoneda_product_with(&generator_cocycle(u2, &a), &chain, &a).unwrap();
            let mut want = Cochain::zero(12, &a);
            for i in 0..3 {
                want = want.add(&CochainName::new(CochainKind::Alpha, 12, i, u1 + u2).cochain(&a).unwrap());
            }
            assert_eq!(p, want);
        }
    }
}

#[test]
fn generic_lifts_satisfy_the_squares() {
    for (s, p) in [(3, 0), (3, 2), (4, 3)] {
        let a = alg(s, p);
        let z = generator_cocycle(1, &a);
        let chain = generic_lift(&z, s + 2, &a).unwrap();
        assert_eq!(chain.verify(&a), Ok(()));
    }
}

#[test]
fn generic_and_theta_agree_in_cohomology() {
    let a = alg(4, 0);
    let theta = product_table(&a, LiftMethod::Theta).unwrap();
    let generic = product_table(&a, LiftMethod::Generic).unwrap();
    assert_eq!(theta, generic);
}

#[test]
fn coboundary_times_anything_is_a_coboundary() {
    let a = alg(3, 0);
    // ∂̂ of α_{0,1} in degree 6 is a coboundary in degree 7
    let space6 = CochainSpace::new(6, &a);
    let space7 = CochainSpace::new(7, &a);
    let src = space6.coordinates(&CochainName::new(CochainKind::Alpha, 6, 0, 1).cochain(&a).unwrap());
    let b = space7.cochain(&a, &hat_matrix(6, &a).mul_vec(&src));
    assert!(!b.is_zero());
    assert!(is_coboundary(&b, &a));
    let z = generator_cocycle(2, &a);
    assert!(is_coboundary(&yoneda_product(&z, &b, &a).unwrap(), &a));
    assert!(is_coboundary(&yoneda_product(&b, &z, &a).unwrap(), &a));
}

#[test]
fn distinct_index_sums_are_distinct_classes() {
    let a = alg(3, 0);
    let p = |k, l| yoneda_product(&generator_cocycle(k, &a), &generator_cocycle(l, &a), &a).unwrap();
    assert!(cohomologous(&p(1, 4), &p(2, 3), &a));
    assert!(!cohomologous(&p(1, 4), &p(2, 4), &a));
}

#[test]
fn presentation_cubes() {
    for (s, p) in [(3, 2), (4, 0)] {
        let rep = verify_presentation(s, FieldSpec::new(p).unwrap(), 3, LiftMethod::Generic).unwrap();
        assert!(rep.passed(), "s={s} p={p}: {rep:?}");
        let dims: Vec<usize> = rep.powers.iter().map(|c| c.span_dim).collect();
        let pres = RingPresentation::new(s, FieldSpec::new(p).unwrap());
        assert_eq!(dims, (1..=3).map(|t| pres.graded_dimension(t)).collect::<Vec<_>>());
    }
}

#[test]
fn presentation_relation_count() {
    // pairs (k ≤ l) grouped by k + l, counted as unordered pairs of pairs
    let pres = RingPresentation::new(4, FieldSpec::RATIONALS);
    assert_eq!(pres.generator_count, 5);
    let mut per_sum = [0usize; 9];
    for k in 0..=4 {
        for l in k..=4 {
            per_sum[k + l] += 1;
        }
    }
    let expected: usize = per_sum.iter().map(|c| c * c.saturating_sub(1) / 2).sum();
    assert_eq!(pres.relations.len(), expected);
}

#[test]
fn nilpotence_samples() {
    let rep = verify_nilpotence_samples(3, FieldSpec::RATIONALS, &[1, 2]).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.samples.iter().filter(|x| x.degree == 1).count(), 4);
    // squares of degree-2 classes land in HH⁴ = 0
    assert!(rep.samples.iter().filter(|x| x.degree == 2).all(|x| x.vanishing_power == Some(2)));
    let rep = verify_nilpotence_samples(4, FieldSpec::RATIONALS, &[1]).unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn product_table_serializes() {
    let a = alg(3, 2);
    let table = product_table(&a, LiftMethod::Theta).unwrap();
    assert_eq!(table.len(), 16);
    let json = serde_json::to_value(&table[5]).unwrap();
    let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["class_coordinates", "degree", "k", "l"]);
    assert_eq!(json["degree"], 6);
}

#[test]
fn unit_cocycle_product() {
    let a = alg(4, 2);
    let mut unit = Cochain::zero(0, &a);
    for i in 0..4 {
        unit.set_value(GeneratorIndex::new(0, i, 0), a.idempotent(i)).unwrap();
    }
    let z = generator_cocycle(3, &a);
    assert_eq!(yoneda_product(&unit, &z, &a).unwrap(), z);
}
