//! Brute-force oracles and property checks shared by the integration tests.
//! Nothing here goes through the library's standard form, census or series
//! code: spans are closed by exhaustive combination, duals by scanning all of
//! Z4^n, and theta series by counting lattice points.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use z4sec::binary::BinaryCode;
use z4sec::constructions::{odd_extension, pdcc, CirculantSeed, OddExtensionParams};
use z4sec::enumerators::{
    jwe, jwe_swap, macwilliams_jwe, macwilliams_swe, macwilliams_swe_rational, swe, swe_from_jwe, we, JwePoly,
    Poly, SwePoly,
};
use z4sec::secrecy::{flatness_factor, secrecy_function, secrecy_function_h};
use z4sec::theta::{jacobi_identity_check, theta_a4, LatticeSpec};
use z4sec::z4::{Z4Code, Z4Matrix};
use z4sec::Budget;

pub type Word = Vec<u8>;

pub fn rows_of(m: &Z4Matrix) -> Vec<Word> {
    m.to_rows()
}

/// Every Z4 combination of the rows.
pub fn span(rows: &[Word], n: usize) -> BTreeSet<Word> {
    let mut set = BTreeSet::new();
    set.insert(vec![0u8; n]);
    for r in rows {
        let current: Vec<Word> = set.iter().cloned().collect();
        for w in current {
            let mut acc = w.clone();
            for _ in 0..3 {
                acc = acc.iter().zip(r).map(|(a, b)| (a + b) % 4).collect();
                set.insert(acc.clone());
            }
        }
    }
    set
}

pub fn dot(a: &[u8], b: &[u8]) -> u32 {
    a.iter().zip(b).map(|(&x, &y)| x as u32 * y as u32).sum::<u32>() % 4
}

/// All of Z4^n orthogonal to every row.
pub fn brute_dual(rows: &[Word], n: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for idx in 0..(1u64 << (2 * n)) {
        let v: Word = (0..n).map(|i| ((idx >> (2 * i)) & 3) as u8).collect();
        if rows.iter().all(|r| dot(r, &v) == 0) {
            out.insert(v);
        }
    }
    out
}

pub fn brute_swe(words: &BTreeSet<Word>, n: usize) -> SwePoly {
    let mut counts = std::collections::BTreeMap::<[u32; 3], u64>::new();
    for w in words {
        let n0 = w.iter().filter(|&&x| x == 0).count() as u32;
        let n2 = w.iter().filter(|&&x| x == 2).count() as u32;
        *counts.entry([n0, n as u32 - n0 - n2, n2]).or_default() += 1;
    }
    Poly::from_terms(n as u32, counts.into_iter().map(|(e, c)| (e, BigUint::from(c)))).unwrap()
}

/// Number of points of `(1/2)(C + 4Z^n)` at each quarter-unit exponent
/// `sum (c_i + 4 z_i)^2 <= max_e`.
pub fn brute_theta_a4(words: &BTreeSet<Word>, n: usize, max_e: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max_e + 1];
    let reach = ((max_e as f64).sqrt() as i64) / 4 + 2;
    for w in words {
        let choices: Vec<Vec<i64>> = w
            .iter()
            .map(|&c| {
                (-reach..=reach)
                    .map(|z| c as i64 + 4 * z)
                    .filter(|v| (v * v) as usize <= max_e)
                    .collect()
            })
            .collect();
        let mut stack = vec![(0usize, 0usize)];
        while let Some((i, e)) = stack.pop() {
            if i == n {
                counts[e] += 1;
                continue;
            }
            for v in &choices[i] {
                let e2 = e + (v * v) as usize;
                if e2 <= max_e {
                    stack.push((i + 1, e2));
                }
            }
        }
    }
    counts
}

pub fn binary_span(code: &BinaryCode) -> Vec<u64> {
    let mut words = vec![0u64];
    for &r in code.rows() {
        let more: Vec<u64> = words.iter().map(|w| w ^ r).collect();
        words.extend(more);
    }
    words
}

pub fn brute_jwe(a1: &BinaryCode, a2: &BinaryCode) -> JwePoly {
    let n = a1.n() as u32;
    let mut counts = std::collections::BTreeMap::<[u32; 4], u64>::new();
    for x in binary_span(a1) {
        for y in binary_span(a2) {
            let d01 = (y & !x).count_ones();
            let d10 = (x & !y).count_ones();
            let d11 = (x & y).count_ones();
            *counts.entry([n - d01 - d10 - d11, d01, d10, d11]).or_default() += 1;
        }
    }
    Poly::from_terms(n, counts.into_iter().map(|(e, c)| (e, BigUint::from(c)))).unwrap()
}

/// The Z4 lift of the binary Golay code: cyclic of length 23 with generator
/// `3 + 2x + x^2 + x^4 + x^5 + x^6 + 2x^7 + 3x^10 + x^11`, extended by a
/// zero-sum column.
pub fn lifted_golay() -> Z4Matrix {
    let g = [3u8, 2, 1, 0, 1, 1, 1, 2, 0, 0, 3, 1];
    let mut rows = Vec::new();
    for s in 0..12 {
        let mut r = vec![0i64; 24];
        for (i, &c) in g.iter().enumerate() {
            r[s + i] = c as i64;
        }
        let sum: i64 = r[..23].iter().sum();
        r[23] = (4 - sum % 4) % 4;
        rows.push(r);
    }
    Z4Matrix::from_rows(24, &rows).unwrap()
}

// ---------------------------------------------------------------------------
// Strategies

pub fn z4_matrix(max_rows: usize, min_n: usize, max_n: usize) -> impl Strategy<Value = Z4Matrix> {
    (1..=max_rows, min_n..=max_n).prop_flat_map(|(k, n)| {
        prop::collection::vec(0u8..4, k * n).prop_map(move |d| Z4Matrix::new(k, n, d).unwrap())
    })
}

pub fn binary_code(n: usize, max_rows: usize) -> impl Strategy<Value = BinaryCode> {
    prop::collection::vec(0u64..(1u64 << n), 0..=max_rows).prop_map(move |rows| BinaryCode::new(n, rows).unwrap())
}

pub fn binary_pair(max_n: usize) -> impl Strategy<Value = (BinaryCode, BinaryCode)> {
    (1..=max_n).prop_flat_map(|n| (binary_code(n, 3), binary_code(n, 3)))
}

/// Random homogeneous swe-shaped polynomial with a unit `a^n` term.
pub fn swe_poly(max_n: u32) -> impl Strategy<Value = SwePoly> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..=n, 0..=n, 1u64..50), 0..6).prop_map(move |terms| {
            let mut all = vec![([n, 0, 0], BigUint::one())];
            for (i, j, c) in terms {
                if i + j <= n && !(i == n) {
                    all.push(([i, j, n - i - j], BigUint::from(c)));
                }
            }
            Poly::from_terms(n, all).unwrap()
        })
    })
}

pub fn seed(min_eta: usize, max_eta: usize) -> impl Strategy<Value = CirculantSeed> {
    (min_eta..=max_eta).prop_flat_map(|e| prop::collection::vec(0u8..4, e).prop_map(|r| CirculantSeed::new(r).unwrap()))
}

pub fn tau() -> impl Strategy<Value = f64> {
    (-1.2f64..1.2).prop_map(f64::exp)
}

// ---------------------------------------------------------------------------
// Properties

pub fn check<T: std::fmt::Debug>(
    cases: u32,
    strategy: impl Strategy<Value = T>,
    test: impl Fn(T) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn prop_double_macwilliams(p: SwePoly) -> Result<(), TestCaseError> {
    let once = macwilliams_swe(&p).unwrap();
    let twice = macwilliams_swe_rational(&once).unwrap();
    prop_assert_eq!(twice, p.to_rational());
    Ok(())
}

pub fn prop_macwilliams_is_dual_swe(m: Z4Matrix) -> Result<(), TestCaseError> {
    let n = m.cols();
    let rows = rows_of(&m);
    let words = span(&rows, n);
    let dual = brute_dual(&rows, n);
    prop_assert_eq!(words.len() * dual.len(), 1usize << (2 * n));
    let code = Z4Code::from_generator(&m);
    let transformed = macwilliams_swe(&swe(&code, Budget::default()).unwrap()).unwrap();
    prop_assert_eq!(transformed.to_integer().unwrap(), brute_swe(&dual, n));
    let d = code.dual();
    prop_assert_eq!(swe(&d, Budget::default()).unwrap(), brute_swe(&dual, n));
    for r in rows_of(&d.original_generator()) {
        for g in &rows {
            prop_assert_eq!(dot(&r, g), 0);
        }
    }
    Ok(())
}

/// `W_A1(x, y) W_A2(z, t) = jwe(xz, xt, yz, yt)`, the swap law, the
/// MacWilliams law for the dual pair and `swe(A1 + 2A2) = jwe(a, c, b, b)`
/// whenever the chain is closed.
pub fn prop_jwe_identities(pair: (BinaryCode, BinaryCode)) -> Result<(), TestCaseError> {
    let (a1, a2) = pair;
    let b = Budget::default();
    let j = jwe(&a1, &a2, b).unwrap();
    prop_assert_eq!(&j, &brute_jwe(&a1, &a2));

    let w1 = we(&a1, b).unwrap();
    let w2 = we(&a2, b).unwrap();
    let mut lhs = std::collections::BTreeMap::<[u32; 4], BigUint>::new();
    for (e1, c1) in w1.terms() {
        for (e2, c2) in w2.terms() {
            *lhs.entry([e1[0], e1[1], e2[0], e2[1]]).or_default() += c1 * c2;
        }
    }
    let mut rhs = std::collections::BTreeMap::<[u32; 4], BigUint>::new();
    for (e, c) in j.terms() {
        // xz^d00 xt^d01 yz^d10 yt^d11
        *rhs.entry([e[0] + e[1], e[2] + e[3], e[0] + e[2], e[1] + e[3]]).or_default() += c;
    }
    let degree = 2 * a1.n() as u32;
    prop_assert_eq!(Poly::<BigUint, 4>::from_terms(degree, lhs).unwrap(), Poly::from_terms(degree, rhs).unwrap());

    prop_assert_eq!(jwe_swap(&j), jwe(&a2, &a1, b).unwrap());

    let dual = macwilliams_jwe(&j).unwrap();
    prop_assert_eq!(dual.to_integer().unwrap(), jwe(&a1.dual(), &a2.dual(), b).unwrap());

    if z4sec::constructions::closure_check(&a1, &a2).unwrap() {
        let c = z4sec::constructions::nested_sum(&a1, &a2).unwrap();
        prop_assert_eq!(swe(&c, b).unwrap(), swe_from_jwe(&j));
    }
    Ok(())
}

pub fn prop_theta_matches_points(m: Z4Matrix) -> Result<(), TestCaseError> {
    let n = m.cols();
    let words = span(&rows_of(&m), n);
    let max_e = 32;
    let series = theta_a4(&brute_swe(&words, n), max_e);
    let counts = brute_theta_a4(&words, n, max_e);
    for (e, c) in counts.iter().enumerate() {
        prop_assert_eq!(series.coefficient(e), BigInt::from(*c), "exponent {}/4", e);
    }
    Ok(())
}

pub fn prop_jacobi_formula((m, tau): (Z4Matrix, f64)) -> Result<(), TestCaseError> {
    let code = Z4Code::from_generator(&m);
    let b = Budget::default();
    let l = LatticeSpec::a4_from_swe(&swe(&code, b).unwrap(), 400);
    let ld = LatticeSpec::a4_from_swe(&swe(&code.dual(), b).unwrap(), 400);
    let residual = jacobi_identity_check(&l, &ld, tau).unwrap();
    let scale = l.theta_at(tau, 1e-12).unwrap().abs().max(1.0);
    prop_assert!(residual < 1e-9 * scale, "residual {} at tau {}", residual, tau);
    Ok(())
}

pub fn prop_secrecy_symmetry((s, tau): (CirculantSeed, f64)) -> Result<(), TestCaseError> {
    let p = swe(&pdcc(&s), Budget::default()).unwrap();
    let l = LatticeSpec::a4_from_swe(&p, 600);
    let a = secrecy_function(&l, tau).unwrap();
    let b = secrecy_function(&l, 1.0 / tau).unwrap();
    prop_assert!((a - b).abs() < 1e-8 * a.max(1.0), "{} vs {} at tau {}", a, b, tau);
    Ok(())
}

pub fn prop_h_matches_theta((s, tau): (CirculantSeed, f64)) -> Result<(), TestCaseError> {
    let p = swe(&pdcc(&s), Budget::default()).unwrap();
    let l = LatticeSpec::a4_from_swe(&p, 600);
    let via_theta = secrecy_function(&l, tau).unwrap();
    let via_h = secrecy_function_h(&p, tau).unwrap();
    prop_assert!((via_theta - via_h).abs() < 1e-8 * via_h.max(1.0), "{} vs {}", via_theta, via_h);
    Ok(())
}

/// With `a = c = 0` the odd extension multiplies the swe by `(a + c)`.
pub fn prop_oext_product_law(m: Z4Matrix) -> Result<(), TestCaseError> {
    let eta = m.rows();
    let base = Z4Matrix::identity(eta).hstack(&m).unwrap();
    let base_swe = swe(&Z4Code::from_generator(&base), Budget::default()).unwrap();
    let params = OddExtensionParams::new(m, vec![0; eta], vec![0; eta]).unwrap();
    let ext = swe(&odd_extension(&params), Budget::default()).unwrap();
    let a_plus_c = Poly::from_terms(1, [([1, 0, 0], BigUint::one()), ([0, 0, 1], BigUint::one())]).unwrap();
    prop_assert_eq!(ext, base_swe.mul(&a_plus_c));
    Ok(())
}

/// Larger gain means smaller flatness factor at the same `tau`.
pub fn prop_flatness_ordering((s1, s2, tau): (CirculantSeed, CirculantSeed, f64)) -> Result<(), TestCaseError> {
    let b = Budget::default();
    let l1 = LatticeSpec::a4_from_swe(&swe(&pdcc(&s1), b).unwrap(), 600);
    let l2 = LatticeSpec::a4_from_swe(&swe(&pdcc(&s2), b).unwrap(), 600);
    let dx = secrecy_function(&l1, tau).unwrap() - secrecy_function(&l2, tau).unwrap();
    let de = flatness_factor(&l1, tau).unwrap() - flatness_factor(&l2, tau).unwrap();
    if dx.abs() > 1e-9 && de.abs() > 1e-9 {
        prop_assert!(dx.signum() == -de.signum(), "xi diff {} vs eps diff {}", dx, de);
    } else {
        prop_assert!(dx.abs() <= 1e-6 && de.abs() <= 1e-6);
    }
    Ok(())
}

pub fn equal_length_seeds(max_eta: usize) -> impl Strategy<Value = (CirculantSeed, CirculantSeed, f64)> {
    (1..=max_eta).prop_flat_map(|e| (seed(e, e), seed(e, e), (-0.7f64..0.7).prop_map(f64::exp)))
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap()
}

pub fn is_zero_poly<const V: usize>(p: &Poly<BigRational, V>) -> bool {
    p.terms().values().all(|c| c.is_zero())
}

pub fn square_z4(max_eta: usize) -> impl Strategy<Value = Z4Matrix> {
    (1..=max_eta).prop_flat_map(|e| prop::collection::vec(0u8..4, e * e).prop_map(move |d| Z4Matrix::new(e, e, d).unwrap()))
}
