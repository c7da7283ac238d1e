//! Binary linear codes of length at most 64, with codewords packed in a
//! `u64` (bit `i` is coordinate `i`).

use crate::{Budget, Error, Result};

pub const MAX_LEN: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    n: usize,
    rows: Vec<u64>,
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn word_from_bits(bits: &[u8]) -> u64 {
    bits.iter()
        .enumerate()
        .fold(0, |w, (i, &b)| w | (((b & 1) as u64) << i))
}

pub fn bits_of(word: u64, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((word >> i) & 1) as u8).collect()
}

/// Element-wise (Schur) product.
pub fn schur(a: u64, b: u64) -> u64 {
    a & b
}

/// Incremental row-echelon basis keyed by the lowest set bit of each row.
#[derive(Clone, Debug, Default)]
struct XorBasis {
    rows: Vec<(u32, u64)>,
}

impl XorBasis {
    fn reduce(&self, mut w: u64) -> u64 {
        for &(p, r) in &self.rows {
            if (w >> p) & 1 == 1 {
                w ^= r;
            }
        }
        w
    }

    fn insert(&mut self, w: u64) -> bool {
        let w = self.reduce(w);
        if w == 0 {
            return false;
        }
        self.rows.push((w.trailing_zeros(), w));
        true
    }
}

impl BinaryCode {
    /// Keeps the rows in the given order, dropping any that are dependent on
    /// earlier ones.
    pub fn new(n: usize, rows: Vec<u64>) -> Result<Self> {
        if n > MAX_LEN {
            return Err(Error::OutOfRange(format!(
                "binary codes are limited to length {MAX_LEN}, got {n}"
            )));
        }
        let mut basis = XorBasis::default();
        let mut kept = Vec::new();
        for r in rows {
            if r & !mask(n) != 0 {
                return Err(Error::Shape(format!("row {r:#x} has bits beyond length {n}")));
            }
            if basis.insert(r) {
                kept.push(r);
            }
        }
        Ok(BinaryCode { n, rows: kept })
    }

    /// Entries are reduced modulo 2.
    pub fn from_rows<R: AsRef<[i64]>>(n: usize, rows: &[R]) -> Result<Self> {
        let mut words = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::Shape(format!("row {i} has length {}, expected {n}", r.len())));
            }
            let bits: Vec<u8> = r.iter().map(|v| v.rem_euclid(2) as u8).collect();
            words.push(word_from_bits(&bits));
        }
        Self::new(n, words)
    }

    /// Rows written as strings of `0`/`1`, leftmost character first.
    pub fn from_bitstrings(rows: &[&str]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        let mut words = Vec::new();
        for r in rows {
            if r.len() != n {
                return Err(Error::Shape("bit strings of unequal length".into()));
            }
            let mut bits = Vec::with_capacity(n);
            for ch in r.chars() {
                match ch {
                    '0' => bits.push(0),
                    '1' => bits.push(1),
                    _ => return Err(Error::Parse(format!("not a bit: {ch:?}"))),
                }
            }
            words.push(word_from_bits(&bits));
        }
        Self::new(n, words)
    }

    pub fn zero(n: usize) -> Self {
        BinaryCode { n, rows: vec![] }
    }

    pub fn full(n: usize) -> Self {
        BinaryCode {
            n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row_bits(&self, i: usize) -> Vec<u8> {
        bits_of(self.rows[i], self.n)
    }

    fn basis(&self) -> XorBasis {
        let mut b = XorBasis::default();
        for &r in &self.rows {
            b.insert(r);
        }
        b
    }

    pub fn contains(&self, word: u64) -> bool {
        word & !mask(self.n) == 0 && self.basis().reduce(word) == 0
    }

    pub fn is_subcode_of(&self, other: &BinaryCode) -> bool {
        if self.n != other.n {
            return false;
        }
        let b = other.basis();
        self.rows.iter().all(|&r| b.reduce(r) == 0)
    }

    pub fn dual(&self) -> BinaryCode {
        let mut rref = self.basis().rows;
        for i in 0..rref.len() {
            let (p, r) = rref[i];
            for (j, row) in rref.iter_mut().enumerate() {
                if j != i && (row.1 >> p) & 1 == 1 {
                    row.1 ^= r;
                }
            }
        }
        let pivots: u64 = rref.iter().fold(0, |m, &(p, _)| m | (1 << p));
        let mut out = Vec::new();
        for f in 0..self.n {
            if (pivots >> f) & 1 == 1 {
                continue;
            }
            let mut v = 1u64 << f;
            for &(p, r) in &rref {
                if (r >> f) & 1 == 1 {
                    v |= 1 << p;
                }
            }
            out.push(v);
        }
        BinaryCode {
            n: self.n,
            rows: out,
        }
    }

    /// Codewords in Gray-code order starting from zero.
    pub fn codewords(&self, budget: Budget) -> Result<impl Iterator<Item = u64> + '_> {
        budget.check(self.k() as u32)?;
        let total = 1u64 << self.k();
        let mut w = 0u64;
        Ok((0..total).map(move |i| {
            if i > 0 {
                w ^= self.rows[i.trailing_zeros() as usize];
            }
            w
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dependent_rows_are_dropped() {
        let c = BinaryCode::from_bitstrings(&["110", "011", "101"]).unwrap();
        assert_eq!(c.k(), 2);
        assert!(c.contains(0b101));
        assert!(!c.contains(0b001));
    }

    #[test]
    fn dual_of_repetition() {
        let c = BinaryCode::from_bitstrings(&["111"]).unwrap();
        let d = c.dual();
        assert_eq!(d.k(), 2);
        for &r in d.rows() {
            assert_eq!((r & 0b111).count_ones() % 2, 0);
        }
    }

    #[test]
    fn gray_enumeration_hits_every_word() {
        let c = BinaryCode::full(5);
        let mut seen: Vec<u64> = c.codewords(Budget::default()).unwrap().collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..32).collect::<Vec<_>>());
    }

    #[test]
    fn rejects_long_codes() {
        assert!(BinaryCode::new(65, vec![]).is_err());
    }
}
