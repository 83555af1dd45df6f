use hankel_core::classes::{derive_coefficients, grouped_forms, hankel3_determinant, hankel3_polynomial, GroupedForm, GroupedTerm, HankelEvaluator};
use hankel_core::poly::{c, CoeffPolynomial};
use hankel_core::scalar::q;
use hankel_core::{ClassId, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `scale · Σ (n/d) c^m`.
fn p(scale: (i64, i64), terms: &[(i64, i64, [u8; 4])]) -> CoeffPolynomial {
    terms
        .iter()
        .fold(CoeffPolynomial::default(), |acc, &(n, d, m)| &acc + &CoeffPolynomial::monomial(q(n, d), m))
        .scale(&q(scale.0, scale.1))
}

const C1: [u8; 4] = [1, 0, 0, 0];
const C2: [u8; 4] = [0, 1, 0, 0];
const C3: [u8; 4] = [0, 0, 1, 0];
const C4: [u8; 4] = [0, 0, 0, 1];
const C1_2: [u8; 4] = [2, 0, 0, 0];
const C1_3: [u8; 4] = [3, 0, 0, 0];
const C1_4: [u8; 4] = [4, 0, 0, 0];
const C1C2: [u8; 4] = [1, 1, 0, 0];
const C1C3: [u8; 4] = [1, 0, 1, 0];
const C1_2C2: [u8; 4] = [2, 1, 0, 0];
const C2_2: [u8; 4] = [0, 2, 0, 0];

fn frozen(id: ClassId) -> [CoeffPolynomial; 4] {
    match id {
        ClassId::Starlike => [
            p((2, 1), &[(1, 1, C1)]),
            p((1, 1), &[(1, 1, C2), (3, 1, C1_2)]),
            p((2, 3), &[(1, 1, C3), (5, 1, C1C2), (6, 1, C1_3)]),
            p((1, 2), &[(1, 1, C4), (14, 3, C1C3), (43, 3, C1_2C2), (2, 1, C2_2), (10, 1, C1_4)]),
        ],
        ClassId::SymmetricPoints => [
            p((1, 1), &[(1, 1, C1)]),
            p((1, 1), &[(1, 1, C2), (1, 1, C1_2)]),
            p((1, 2), &[(1, 1, C3), (3, 1, C1C2), (2, 1, C1_3)]),
            p((1, 2), &[(1, 1, C4), (2, 1, C1C3), (5, 1, C1_2C2), (2, 1, C2_2), (2, 1, C1_4)]),
        ],
        ClassId::Exponential => [
            p((1, 1), &[(1, 1, C1)]),
            p((1, 1), &[(1, 2, C2), (3, 4, C1_2)]),
            p((1, 3), &[(1, 1, C3), (5, 2, C1C2), (17, 12, C1_3)]),
            p((1, 4), &[(1, 1, C4), (7, 3, C1C3), (10, 3, C1_2C2), (1, 1, C2_2), (19, 18, C1_4)]),
        ],
        ClassId::Lune => [
            p((1, 1), &[(1, 1, C1)]),
            p((1, 1), &[(1, 2, C2), (3, 4, C1_2)]),
            p((1, 3), &[(1, 1, C3), (5, 2, C1C2), (5, 4, C1_3)]),
            p((1, 4), &[(1, 1, C4), (7, 3, C1C3), (17, 6, C1_2C2), (1, 1, C2_2), (2, 3, C1_4)]),
        ],
    }
}

#[test]
fn coefficients_match_frozen_formulas() {
    for id in ClassId::ALL {
        let a = derive_coefficients(id.into(), 5).unwrap();
        assert_eq!(a.as_slice(), frozen(id).as_slice(), "{id}");
    }
}

#[test]
fn expanded_determinants() {
    let star = p(
        (1, 18),
        &[(3, 1, [4, 1, 0, 0]), (6, 1, [3, 0, 1, 0]), (-11, 1, [2, 2, 0, 0]), (-9, 1, [2, 0, 0, 1]), (10, 1, [1, 1, 1, 0]), (9, 1, [0, 1, 0, 1]), (-8, 1, [0, 0, 2, 0])],
    );
    let lune = p(
        (1, 1),
        &[(-7, 576, [6, 0, 0, 0]), (5, 144, [4, 1, 0, 0]), (11, 144, [3, 0, 1, 0]), (-19, 144, [2, 2, 0, 0]), (-1, 16, [2, 0, 0, 1]), (5, 72, [1, 1, 1, 0]), (1, 8, [0, 1, 0, 1]), (-1, 9, [0, 0, 2, 0])],
    );
    assert_eq!(hankel3_polynomial(ClassId::Starlike.into()).unwrap().polynomial, star);
    assert_eq!(hankel3_polynomial(ClassId::Lune.into()).unwrap().polynomial, lune);
}

#[test]
fn every_grouped_form_is_an_identity() {
    for id in ClassId::ALL {
        let expr = hankel3_polynomial(id.into()).unwrap();
        for f in grouped_forms(id) {
            assert_eq!(f.expand(), expr.polynomial, "{id}:{}", f.name);
        }
    }
    // The exponential raw form carries the sextic term.
    let raw = &grouped_forms(ClassId::Exponential)[0];
    assert_eq!(raw.expand().coeff(&[6, 0, 0, 0]), q(-13, 5184));
}

fn lin(parts: &[(i64, i64, [u8; 4])]) -> CoeffPolynomial {
    p((1, 1), parts)
}

#[test]
fn unsquared_starlike_grouping_is_not_an_identity() {
    let target = hankel3_polynomial(ClassId::Starlike.into()).unwrap().polynomial;
    for e in [1, 2] {
        let form = GroupedForm {
            name: "alt",
            scale: q(1, 18),
            terms: vec![
                GroupedTerm::new(q(-8, 1), vec![(lin(&[(1, 1, C3), (-5, 4, C1C2)]), e)]),
                GroupedTerm::new(q(-63, 8), vec![(c(1), 2), (c(2), 2)]),
                GroupedTerm::new(q(6, 1), vec![(c(1), 3), (lin(&[(1, 1, C3), (1, 2, C1C2)]), 1)]),
                GroupedTerm::new(q(9, 1), vec![(lin(&[(1, 1, C2), (-1, 1, C1_2)]), 1), (c(4), 1)]),
            ],
        };
        assert_ne!(form.expand(), target, "exponent {e}");
    }
}

#[test]
fn exponential_square_needs_five_sixteenths() {
    let target = hankel3_polynomial(ClassId::Exponential.into()).unwrap().polynomial;
    let mut form = grouped_forms(ClassId::Exponential)[1].clone();
    form.terms[0] = GroupedTerm::new(q(-1, 9), vec![(lin(&[(1, 1, C3), (-15, 16, C1C2)]), 2)]);
    assert_ne!(form.expand(), target);
}

#[test]
fn swapped_exponential_a5_contradicts_the_raw_form() {
    let a = derive_coefficients(ClassId::Exponential.into(), 5).unwrap();
    let swapped = p((1, 4), &[(1, 1, C4), (7, 3, C1C3), (10, 3, C1_2C2), (19, 18, C2_2), (1, 1, C1_4)]);
    let h = hankel3_determinant(a[0].clone(), a[1].clone(), a[2].clone(), swapped);
    assert_ne!(h, grouped_forms(ClassId::Exponential)[0].expand());
}

#[test]
fn numeric_paths_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for id in ClassId::ALL {
        let e = HankelEvaluator::new(id).unwrap();
        for _ in 0..10_000 {
            let c: [Complex64; 4] = std::array::from_fn(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let a = e.eval(&c);
            let b = e.eval_via_coefficients(&c);
            let g = e.eval_via_grouped(&c);
            let tol = 1e-12 * (1.0 + a.norm());
            assert!((a - b).norm() <= tol && (a - g).norm() <= tol, "{id} at {c:?}: {a} {b} {g}");
        }
    }
}
