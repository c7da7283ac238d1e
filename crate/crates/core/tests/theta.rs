mod common;

use num_bigint::{BigInt, BigUint};

use z4sec::binary::BinaryCode;
use z4sec::catalog;
use z4sec::constructions::nested_sum;
use z4sec::enumerators::{jwe, swe, Poly, SwePoly, WePoly};
use z4sec::theta::{
    half_theta2, jacobi_identity_check, jacobi_theta, quarter_exponent, theta_a4, theta_binary_a,
    theta_construction_c, theta_value, LatticeSpec, QSeries, ThetaKind,
};
use z4sec::z4::Z4Code;
use z4sec::{Budget, Error};

use common::*;

fn ints(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

fn at(s: &QSeries, es: &[usize]) -> Vec<BigInt> {
    es.iter().map(|&e| s.coefficient(e)).collect()
}

/// Points of `scale * Z^n` (scale^2 in quarter units) counted by exponent.
fn scaled_integer_points(n: usize, quarter_norm: usize, max_e: usize) -> Vec<i64> {
    let mut counts = vec![0i64; max_e + 1];
    counts[0] = 1;
    for _ in 0..n {
        let mut next = vec![0i64; max_e + 1];
        for (e, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for m in -20i64..=20 {
                let add = quarter_norm * (m * m) as usize;
                if e + add <= max_e {
                    next[e + add] += c;
                }
            }
        }
        counts = next;
    }
    counts
}

#[test]
fn theta3_leading_coefficients() {
    let t3 = jacobi_theta(ThetaKind::Three, 1, 64);
    assert_eq!(at(&t3, &[0, 4, 16, 36]), ints(&[1, 2, 2, 2]));
    assert_eq!(t3.terms().count(), 5);
}

#[test]
fn theta2_starts_at_a_quarter() {
    let t2 = jacobi_theta(ThetaKind::Two, 1, 64);
    let first = t2.terms().next().unwrap();
    assert_eq!((first.0, first.1.clone()), (1, BigInt::from(2)));
    assert!(half_theta2(1, 64).coefficients().iter().all(|c| c == &BigInt::from(0) || c == &BigInt::from(1)));
}

#[test]
fn jacobi_identities_hold_as_series() {
    let t = 400;
    let t3 = jacobi_theta(ThetaKind::Three, 1, t);
    let t4 = jacobi_theta(ThetaKind::Four, 1, t);
    let t2 = jacobi_theta(ThetaKind::Two, 1, t);
    let twice = jacobi_theta(ThetaKind::Three, 4, t).scale(&BigInt::from(2));
    assert_eq!(t3.add(&t4), twice);
    assert_eq!(t2.pow(4).add(&t4.pow(4)), t3.pow(4));
    assert_eq!(t3.mul(&QSeries::one(t)), t3);
}

#[test]
fn octacode_theta_series() {
    let s = theta_a4(&swe(&catalog::octacode(), Budget::default()).unwrap(), 64);
    assert_eq!(at(&s, &[0, 8, 16, 24]), ints(&[1, 240, 2160, 6720]));
    assert!(s.terms().all(|(e, _)| e % 8 == 0));
}

#[test]
fn zero_code_gives_theta3_of_4z_power() {
    let p: SwePoly = Poly::from_terms(3, [([3, 0, 0], BigUint::from(1u32))]).unwrap();
    assert_eq!(theta_a4(&p, 200), jacobi_theta(ThetaKind::Three, 4, 200).pow(3));
}

#[test]
fn full_code_of_length_one_is_half_integers() {
    let p: SwePoly = Poly::from_terms(1, [([1, 0, 0], 1u32), ([0, 1, 0], 2), ([0, 0, 1], 1)].map(|(e, c)| (e, BigUint::from(c)))).unwrap();
    let s = theta_a4(&p, 200);
    let points = scaled_integer_points(1, 1, 200);
    assert_eq!(s.coefficients().to_vec(), ints(&points));
}

#[test]
fn construction_c_of_zero_and_full_is_integer_lattice() {
    let j = jwe(&BinaryCode::zero(2), &BinaryCode::full(2), Budget::default()).unwrap();
    let s = theta_construction_c(&j, 200);
    let points = scaled_integer_points(2, 4, 200);
    assert_eq!(s.coefficients().to_vec(), ints(&points));
    let zero = jwe(&BinaryCode::zero(2), &BinaryCode::zero(2), Budget::default()).unwrap();
    assert_eq!(theta_construction_c(&zero, 200), jacobi_theta(ThetaKind::Three, 4, 200).pow(2));
}

#[test]
fn construction_c_agrees_with_a4_for_closed_chains() {
    let (a1, a2) = catalog::codes_dim12();
    let j = jwe(&a1, &a2, Budget::default()).unwrap();
    let p = swe(&nested_sum(&a1, &a2).unwrap(), Budget::default()).unwrap();
    assert_eq!(theta_construction_c(&j, 120), theta_a4(&p, 120));
}

#[test]
fn binary_construction_a_series() {
    let full: WePoly = Poly::from_terms(1, [([1, 0], BigUint::from(1u32)), ([0, 1], BigUint::from(1u32))]).unwrap();
    let points = scaled_integer_points(1, 2, 200);
    assert_eq!(theta_binary_a(&full, 200).coefficients().to_vec(), ints(&points));
    let zero: WePoly = Poly::from_terms(2, [([2, 0], BigUint::from(1u32))]).unwrap();
    assert_eq!(theta_binary_a(&zero, 200), jacobi_theta(ThetaKind::Three, 2, 200).pow(2));
}

#[test]
fn theta_vs_point_count_on_the_bdcc_example() {
    let words = span(&rows_of(&catalog::bdcc_n4_generator()), 4);
    let s = theta_a4(&catalog::bdcc_n4_swe(), 48);
    let counts = brute_theta_a4(&words, 4, 48);
    assert_eq!(s.coefficients().to_vec(), counts.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
}

#[test]
fn numeric_evaluation() {
    assert_eq!(QSeries::one(10).eval(0.3), 1.0);
    let direct: f64 = 1.0 + 2.0 * (1..40).map(|m| (-std::f64::consts::PI * (m * m) as f64).exp()).sum::<f64>();
    assert!((theta_value(ThetaKind::Three, 1.0) - direct).abs() < 1e-15);
    assert!((theta_value(ThetaKind::Three, 1.0) - 1.086_434_811_213_308).abs() < 1e-14);
    let series = jacobi_theta(ThetaKind::Three, 1, 400);
    for tau in [0.3, 0.7, 1.0, 2.5] {
        assert!((series.eval(tau) - theta_value(ThetaKind::Three, tau)).abs() < 1e-12, "{tau}");
        let t2 = jacobi_theta(ThetaKind::Two, 1, 400).eval(tau);
        assert!((t2 - theta_value(ThetaKind::Two, tau)).abs() < 1e-12, "{tau}");
    }
}

#[test]
fn octacode_lattice_at_one_gives_four_thirds() {
    let l = LatticeSpec::a4_from_swe(&swe(&catalog::octacode(), Budget::default()).unwrap(), 200);
    let ratio = theta_value(ThetaKind::Three, 1.0).powi(8) / l.theta_at(1.0, 1e-13).unwrap();
    assert!((ratio - 4.0 / 3.0).abs() < 1e-12, "{ratio}");
}

#[test]
fn jacobi_formula_for_integer_lattices() {
    for n in [1, 3, 8] {
        let z = LatticeSpec::integer(n, 800);
        for tau in [0.5, 1.0, 2.0] {
            assert!(jacobi_identity_check(&z, &z, tau).unwrap() < 1e-9);
        }
    }
}

#[test]
fn jacobi_formula_for_code_lattices() {
    let code = Z4Code::from_generator(&catalog::bdcc_n4_generator());
    let l = LatticeSpec::a4_from_swe(&swe(&code, Budget::default()).unwrap(), 400);
    let ld = LatticeSpec::a4_from_swe(&swe(&code.dual(), Budget::default()).unwrap(), 400);
    let octa = LatticeSpec::a4_from_swe(&catalog::octacode_swe(), 400);
    for tau in [0.5, 0.8, 1.0, 1.7] {
        assert!(jacobi_identity_check(&l, &ld, tau).unwrap() < 1e-9);
        assert!(jacobi_identity_check(&octa, &octa, tau).unwrap() < 1e-9);
    }
}

#[test]
fn tail_certification_refuses_short_series() {
    let short = LatticeSpec::a4_from_swe(&catalog::octacode_swe(), 16);
    assert!(matches!(short.theta_at(0.2, 1e-12), Err(Error::TailBound { .. })));
    assert!(LatticeSpec::new(2, 0.0, QSeries::one(4)).is_err());
}

#[test]
fn csv_and_exponents() {
    assert_eq!(quarter_exponent(9), "9/4");
    assert_eq!(quarter_exponent(2), "1/2");
    assert_eq!(quarter_exponent(8), "2");
    let csv = jacobi_theta(ThetaKind::Two, 1, 10).to_csv();
    assert_eq!(csv, "exponent,coefficient\n1/4,2\n9/4,2\n");
}
