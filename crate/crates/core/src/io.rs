//! JSON formats for codes and enumerator polynomials.
//!
//! Code files: `{"ring": 2|4, "n": int, "generator": [[int, ...], ...]}`.
//!
//! Polynomial files:
//! `{"degree": n, "vars": ["a","b","c"], "terms": [{"exp": [i,j,k], "coef": "123"}]}`,
//! with coefficients as decimal strings (`"p/q"` for rational polynomials).

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::binary::BinaryCode;
use crate::enumerators::Poly;
use crate::z4::Z4Matrix;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeFile {
    pub ring: u8,
    pub n: usize,
    pub generator: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CodeInput {
    Z4(Z4Matrix),
    Binary(BinaryCode),
}

impl CodeFile {
    pub fn from_z4(m: &Z4Matrix) -> CodeFile {
        CodeFile {
            ring: 4,
            n: m.cols(),
            generator: m
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(i64::from).collect())
                .collect(),
        }
    }

    pub fn from_binary(c: &BinaryCode) -> CodeFile {
        CodeFile {
            ring: 2,
            n: c.n(),
            generator: (0..c.k())
                .map(|i| c.row_bits(i).into_iter().map(i64::from).collect())
                .collect(),
        }
    }

    pub fn into_input(self) -> Result<CodeInput> {
        if let Some(r) = self.generator.iter().find(|r| r.len() != self.n) {
            return Err(Error::Shape(format!(
                "generator row of length {} in a length-{} code",
                r.len(),
                self.n
            )));
        }
        match self.ring {
            4 => Ok(CodeInput::Z4(Z4Matrix::from_rows(self.n, &self.generator)?)),
            2 => Ok(CodeInput::Binary(BinaryCode::from_rows(self.n, &self.generator)?)),
            r => Err(Error::Parse(format!("ring must be 2 or 4, got {r}"))),
        }
    }
}

pub fn parse_code(text: &str) -> Result<CodeInput> {
    let f: CodeFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    f.into_input()
}

pub fn parse_z4_code(text: &str) -> Result<Z4Matrix> {
    match parse_code(text)? {
        CodeInput::Z4(m) => Ok(m),
        CodeInput::Binary(_) => Err(Error::Parse("expected a ring-4 code".into())),
    }
}

pub fn parse_binary_code(text: &str) -> Result<BinaryCode> {
    match parse_code(text)? {
        CodeInput::Binary(c) => Ok(c),
        CodeInput::Z4(_) => Err(Error::Parse("expected a ring-2 code".into())),
    }
}

pub fn code_to_json(file: &CodeFile) -> String {
    serde_json::to_string_pretty(file).expect("code file serializes")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermFile {
    pub exp: Vec<u32>,
    pub coef: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyFile {
    pub degree: u32,
    pub vars: Vec<String>,
    pub terms: Vec<TermFile>,
}

/// Coefficient types that round-trip through decimal strings.
pub trait Coefficient: Sized {
    fn parse(s: &str) -> Result<Self>;
    fn render(&self) -> String;
}

impl Coefficient for BigUint {
    fn parse(s: &str) -> Result<Self> {
        BigUint::from_str(s.trim()).map_err(|e| Error::Parse(format!("coefficient {s:?}: {e}")))
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coefficient for BigInt {
    fn parse(s: &str) -> Result<Self> {
        BigInt::from_str(s.trim()).map_err(|e| Error::Parse(format!("coefficient {s:?}: {e}")))
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coefficient for BigRational {
    fn parse(s: &str) -> Result<Self> {
        BigRational::from_str(s.trim()).map_err(|e| Error::Parse(format!("coefficient {s:?}: {e}")))
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl PolyFile {
    pub fn from_poly<C, const V: usize>(p: &Poly<C, V>, vars: &[&str]) -> PolyFile
    where
        C: Coefficient + Clone + num_traits::Zero + PartialEq,
    {
        PolyFile {
            degree: p.degree(),
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: p
                .terms()
                .iter()
                .rev()
                .map(|(e, c)| TermFile {
                    exp: e.to_vec(),
                    coef: c.render(),
                })
                .collect(),
        }
    }

    pub fn into_poly<C, const V: usize>(self) -> Result<Poly<C, V>>
    where
        C: Coefficient + Clone + num_traits::Zero + PartialEq,
    {
        if self.vars.len() != V {
            return Err(Error::Parse(format!(
                "expected {V} variables, found {}",
                self.vars.len()
            )));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            let exp: [u32; V] = t
                .exp
                .as_slice()
                .try_into()
                .map_err(|_| Error::Parse(format!("exponent {:?} has the wrong arity", t.exp)))?;
            terms.push((exp, C::parse(&t.coef)?));
        }
        Poly::from_terms(self.degree, terms)
    }
}

pub fn parse_poly<C, const V: usize>(text: &str) -> Result<Poly<C, V>>
where
    C: Coefficient + Clone + num_traits::Zero + PartialEq,
{
    let f: PolyFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    f.into_poly()
}

pub fn poly_to_json<C, const V: usize>(p: &Poly<C, V>, vars: &[&str]) -> String
where
    C: Coefficient + Clone + num_traits::Zero + PartialEq,
{
    serde_json::to_string_pretty(&PolyFile::from_poly(p, vars)).expect("poly file serializes")
}

/// A univariate polynomial in `t` given as `{"n": .., "vars": ["t"],
/// "terms": [{"exp": [k], "coef": ".."}]}`; coefficients may be negative.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TPolyFile {
    pub n: u32,
    pub vars: Vec<String>,
    pub terms: Vec<TermFile>,
}

pub fn parse_t_poly(text: &str) -> Result<(u32, Vec<(u32, BigInt)>)> {
    let f: TPolyFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if f.vars.len() != 1 {
        return Err(Error::Parse("h polynomial must have exactly one variable".into()));
    }
    let mut out = Vec::new();
    for t in f.terms {
        if t.exp.len() != 1 {
            return Err(Error::Parse("h polynomial exponents have one entry".into()));
        }
        out.push((t.exp[0], BigInt::parse(&t.coef)?));
    }
    Ok((f.n, out))
}
