use hochschild_core::algebra::Algebra;
use hochschild_core::cochains::{
    build_dimension_table, hat_matrix, hh_dimension_computed, hh_dimension_formula, im_ker_dimension_formula,
    verify_stated_bases, CochainSpace, FamilyRole, PrintedStatus,
};
use hochschild_core::linalg::FieldSpec;
use hochschild_core::Error;

fn alg(s: usize, p: u64) -> Algebra {
    Algebra::new(s, FieldSpec::new(p).unwrap()).unwrap()
}

#[test]
fn s3_rationals_first_ten_degrees() {
    let a = alg(3, 0);
    let dims: Vec<usize> = (0..10).map(|n| hh_dimension_computed(n, &a).unwrap().dim_hh).collect();
    assert_eq!(dims, [1, 4, 3, 0, 0, 0, 7, 16, 9, 0]);
}

#[test]
fn s3_char_two_first_four_degrees() {
    let a = alg(3, 2);
    let dims: Vec<usize> = (0..4).map(|n| hh_dimension_computed(n, &a).unwrap().dim_hh).collect();
    assert_eq!(dims, [1, 4, 3, 4]);
}

#[test]
fn table_agrees_beyond_acceptance_grid() {
    for (s, p) in [(7, 0), (8, 0), (7, 2), (7, 5)] {
        let t = build_dimension_table(&alg(s, p), 2 * s + 3).unwrap();
        assert!(t.all_agree(), "s={s} p={p}: {:?}", t.first_disagreement());
    }
}

#[test]
fn small_s_has_no_formula() {
    let t = build_dimension_table(&alg(2, 0), 6).unwrap();
    assert!(t.rows.iter().all(|r| r.agree.is_none() && r.dim_hh_formula.is_none()));
    assert!(matches!(hh_dimension_formula(3, 1, FieldSpec::RATIONALS), Err(Error::FormulaOutOfRange(1))));
    assert!(matches!(im_ker_dimension_formula(3, 2, FieldSpec::RATIONALS), Err(Error::FormulaOutOfRange(2))));
}

#[test]
fn coboundaries_compose_to_zero() {
    for (s, p) in [(1, 0), (2, 2), (3, 3), (4, 0), (5, 2)] {
        let a = alg(s, p);
        for n in 1..=2 * s + 2 {
            let m = hat_matrix(n, &a).mul(&hat_matrix(n - 1, &a));
            assert!(m.is_zero(), "s={s} p={p} n={n}");
        }
    }
}

#[test]
fn hom_dimension_pattern() {
    let a = alg(4, 0);
    let dims: Vec<usize> = (0..8).map(|n| CochainSpace::new(n, &a).dim()).collect();
    // α in n ≡ 0, (β, γ) in n ≡ 1, δ in n ≡ 2, nothing in n ≡ 3
    assert_eq!(dims, [4, 16, 12, 0, 20, 48, 28, 0]);
}

fn printed_status(n: usize, a: &Algebra) -> Option<PrintedStatus> {
    let rep = verify_stated_bases(n, a).unwrap();
    let image = rep.checks.iter().find(|c| c.role == FamilyRole::Image).unwrap();
    assert!(image.passed());
    image.printed
}

#[test]
fn printed_image_signs() {
    let q3 = alg(3, 0);
    // n = ms + r; the printed sign is right when it equals (-1)^(ms+1)
    assert_eq!(printed_status(0, &q3), Some(PrintedStatus::Exact));
    assert_eq!(printed_status(4, &q3), Some(PrintedStatus::Exact));
    assert_eq!(printed_status(3, &q3), Some(PrintedStatus::Differs));
    assert_eq!(printed_status(1, &q3), Some(PrintedStatus::Differs));
    assert_eq!(printed_status(4, &alg(4, 0)), Some(PrintedStatus::Exact));
    assert_eq!(printed_status(5, &alg(4, 0)), Some(PrintedStatus::Differs));
    // characteristic 2: signs are irrelevant
    for n in 0..8 {
        assert_eq!(printed_status(n, &alg(3, 2)).filter(|_| n % 3 < 2), (n % 3 < 2).then_some(PrintedStatus::Exact));
    }
}

#[test]
fn families_verify_for_s6() {
    for p in [0, 2] {
        let a = alg(6, p);
        for n in 0..=14 {
            let rep = verify_stated_bases(n, &a).unwrap();
            assert!(rep.passed(), "p={p} n={n}: {:?}", rep.checks);
        }
    }
}
