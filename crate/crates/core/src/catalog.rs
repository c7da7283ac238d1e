//! Bundled codes and enumerators, plus the reference values that the
//! `table` report compares against.

use num_bigint::BigInt;

use crate::binary::BinaryCode;
use crate::constructions::{BorderParams, CirculantSeed, OddExtensionParams};
use crate::enumerators::{SwePoly, WePoly};
use crate::io::{parse_binary_code, parse_poly, parse_t_poly, parse_z4_code};
use crate::z4::{Z4Code, Z4Matrix};

pub const OCTACODE: &str = include_str!("../../../fixtures/octacode.json");
pub const OCTACODE_SWE: &str = include_str!("../../../fixtures/octacode_swe.json");
pub const CODES_DIM12_A1: &str = include_str!("../../../fixtures/codes_dim12_a1.json");
pub const CODES_DIM12_A2: &str = include_str!("../../../fixtures/codes_dim12_a2.json");
pub const CODES_DIM12_SWE: &str = include_str!("../../../fixtures/codes_dim12_swe.json");
pub const N12_PDCC: &str = include_str!("../../../fixtures/n12_pdcc.json");
pub const N13K6_OEXT: &str = include_str!("../../../fixtures/n13k6_oext.json");
pub const N9K14K21_OEXT: &str = include_str!("../../../fixtures/n9k14k21_oext.json");
pub const BDCC_N4: &str = include_str!("../../../fixtures/bdcc_n4.json");
pub const BDCC_N4_SWE: &str = include_str!("../../../fixtures/bdcc_n4_swe.json");
pub const C8_SWE: &str = include_str!("../../../fixtures/c8_swe.json");
pub const C26_H: &str = include_str!("../../../fixtures/c26_h.json");
pub const GRAY_N44_WE: &str = include_str!("../../../fixtures/gray_n44_we.json");
pub const GRAY_N48_WE: &str = include_str!("../../../fixtures/gray_n48_we.json");

fn z4(text: &str) -> Z4Matrix {
    parse_z4_code(text).expect("bundled fixture parses")
}

pub fn octacode_generator() -> Z4Matrix {
    z4(OCTACODE)
}

pub fn octacode() -> Z4Code {
    Z4Code::from_generator(&octacode_generator())
}

pub fn octacode_swe() -> SwePoly {
    parse_poly(OCTACODE_SWE).expect("bundled fixture parses")
}

/// The nested pair `(A1, A2)` of the length-12 example.
pub fn codes_dim12() -> (BinaryCode, BinaryCode) {
    (
        parse_binary_code(CODES_DIM12_A1).expect("bundled fixture parses"),
        parse_binary_code(CODES_DIM12_A2).expect("bundled fixture parses"),
    )
}

pub fn codes_dim12_swe() -> SwePoly {
    parse_poly(CODES_DIM12_SWE).expect("bundled fixture parses")
}

/// Seed of the length-12 pure double circulant code.
pub fn n12_seed() -> CirculantSeed {
    CirculantSeed::new(vec![0, 2, 1, 2, 2, 2]).expect("valid residues")
}

pub fn n12_pdcc_generator() -> Z4Matrix {
    z4(N12_PDCC)
}

pub fn n13k6_generator() -> Z4Matrix {
    z4(N13K6_OEXT)
}

pub fn n13k6_params() -> OddExtensionParams {
    OddExtensionParams::new(n12_seed().matrix(), vec![0, 0, 1, 1, 0, 0], vec![0, 0, 0, 0, 1, 1])
        .expect("valid parameters")
}

pub fn n9k14k21_generator() -> Z4Matrix {
    z4(N9K14K21_OEXT)
}

pub fn n9k14k21_params() -> OddExtensionParams {
    OddExtensionParams::from_generator(&n9k14k21_generator()).expect("odd-extension shape")
}

pub fn bdcc_n4_params() -> BorderParams {
    BorderParams::new(0, 2, 2, CirculantSeed::new(vec![1]).expect("valid residue")).expect("eta = 2")
}

pub fn bdcc_n4_generator() -> Z4Matrix {
    z4(BDCC_N4)
}

pub fn bdcc_n4_swe() -> SwePoly {
    parse_poly(BDCC_N4_SWE).expect("bundled fixture parses")
}

pub fn c8_swe() -> SwePoly {
    parse_poly(C8_SWE).expect("bundled fixture parses")
}

/// `(n, [(t-exponent, coefficient)])` of the length-26 code's `h`.
pub fn c26_h() -> (u32, Vec<(u32, BigInt)>) {
    parse_t_poly(C26_H).expect("bundled fixture parses")
}

pub fn gray_n44_we() -> WePoly {
    parse_poly(GRAY_N44_WE).expect("bundled fixture parses")
}

pub fn gray_n48_we() -> WePoly {
    parse_poly(GRAY_N48_WE).expect("bundled fixture parses")
}

/// A published row: secrecy gain, optional Type I bound and flatness
/// threshold, each to be matched within `TOLERANCE`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceRow {
    pub label: &'static str,
    pub n: u32,
    pub xi: f64,
    pub bound: Option<f64>,
    pub tau: Option<f64>,
}

pub const TOLERANCE: f64 = 5e-3;

pub const TABLE_ROWS: &[ReferenceRow] = &[
    ReferenceRow { label: "[4,2^4,2] bdcc", n: 4, xi: 1.052, bound: Some(1.0), tau: Some(0.939) },
    ReferenceRow { label: "[6,2^6,4] bdcc search", n: 6, xi: 1.172, bound: Some(1.0), tau: None },
    ReferenceRow { label: "[8,2^8,6] octacode", n: 8, xi: 1.333, bound: Some(1.333), tau: Some(0.831) },
    ReferenceRow { label: "[8,2^8,6] C8", n: 8, xi: 1.282, bound: None, tau: Some(0.801) },
    ReferenceRow { label: "[12,2^12,6] pdcc", n: 12, xi: 1.657, bound: Some(1.6), tau: Some(0.787) },
    ReferenceRow { label: "[12,2^12,4] A1+2A2", n: 12, xi: 1.6, bound: None, tau: Some(0.767) },
    ReferenceRow { label: "[13,2^13,4] oext", n: 13, xi: 1.704, bound: Some(1.684), tau: Some(0.764) },
    ReferenceRow { label: "[16,2^16,8] RM", n: 16, xi: 1.778, bound: Some(2.246), tau: Some(0.701) },
];
