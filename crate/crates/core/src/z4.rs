//! Vectors, matrices and linear codes over Z4.
//!
//! A [`Z4Code`] is always held in standard form
//!
//! ```text
//! ( I_k1  A      B  )
//! ( 0     2I_k2  2C )
//! ```
//!
//! together with the column permutation that maps the standard-form
//! coordinates back to the coordinates of the matrix it was built from.
//! Codewords handed out by the enumeration routines are in the original
//! coordinates.

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::{Budget, Error, Result};

#[inline]
pub(crate) fn lee(x: u8) -> usize {
    [0, 1, 2, 1][x as usize]
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z4Vector {
    entries: Vec<u8>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeightTriple {
    pub hamming: usize,
    pub lee: usize,
    pub euclidean: usize,
}

impl Z4Vector {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&e| e > 3) {
            return Err(Error::InvalidResidue {
                value: bad as i64,
                modulus: 4,
            });
        }
        Ok(Z4Vector { entries })
    }

    /// Reduces arbitrary integers modulo 4.
    pub fn from_ints(values: &[i64]) -> Self {
        Z4Vector {
            entries: values.iter().map(|v| v.rem_euclid(4) as u8).collect(),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Z4Vector {
            entries: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u8 {
        self.entries[i]
    }

    /// Panics if the lengths differ.
    pub fn add(&self, other: &Z4Vector) -> Z4Vector {
        assert_eq!(self.len(), other.len(), "length mismatch");
        Z4Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| (a + b) & 3)
                .collect(),
        }
    }

    pub fn neg(&self) -> Z4Vector {
        self.scale(3)
    }

    pub fn scale(&self, k: u8) -> Z4Vector {
        Z4Vector {
            entries: self.entries.iter().map(|a| (a * (k & 3)) & 3).collect(),
        }
    }

    /// Inner product modulo 4. Panics if the lengths differ.
    pub fn dot(&self, other: &Z4Vector) -> u8 {
        assert_eq!(self.len(), other.len(), "length mismatch");
        dot(&self.entries, &other.entries)
    }

    pub fn weights(&self) -> WeightTriple {
        let mut w = WeightTriple::default();
        for &x in &self.entries {
            let l = lee(x);
            w.hamming += (x != 0) as usize;
            w.lee += l;
            w.euclidean += l * l;
        }
        w
    }

    /// Counts `(n0, n1 + n3, n2)`, the exponents this vector contributes to
    /// the symmetrized weight enumerator.
    pub fn symbol_profile(&self) -> (usize, usize, usize) {
        let mut p = (0, 0, 0);
        for &x in &self.entries {
            match x {
                0 => p.0 += 1,
                2 => p.2 += 1,
                _ => p.1 += 1,
            }
        }
        p
    }
}

pub fn weights(x: &Z4Vector) -> WeightTriple {
    x.weights()
}

fn dot(a: &[u8], b: &[u8]) -> u8 {
    let s: u32 = a.iter().zip(b).map(|(&x, &y)| x as u32 * y as u32).sum();
    (s & 3) as u8
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Z4Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Z4Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&e| e > 3) {
            return Err(Error::InvalidResidue {
                value: bad as i64,
                modulus: 4,
            });
        }
        Ok(Z4Matrix { rows, cols, data })
    }

    /// Builds a matrix from integer rows, reducing every entry modulo 4.
    /// `cols` is only consulted when `rows` is empty.
    pub fn from_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(cols, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().map(|v| v.rem_euclid(4) as u8));
        }
        Ok(Z4Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Z4Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v & 3;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> Z4Vector {
        Z4Vector {
            entries: self.row(i).to_vec(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Z4Matrix {
        let mut t = Z4Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Z4Matrix) -> Result<Z4Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Z4Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = 0u32;
                for k in 0..self.cols {
                    s += self.get(i, k) as u32 * other.get(k, j) as u32;
                }
                out.set(i, j, (s & 3) as u8);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Z4Matrix) -> Result<Z4Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("cannot add matrices of different shapes".into()));
        }
        Ok(Z4Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a + b) & 3)
                .collect(),
        })
    }

    pub fn scale(&self, k: u8) -> Z4Matrix {
        Z4Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| (a * (k & 3)) & 3).collect(),
        }
    }

    pub fn hstack(&self, other: &Z4Matrix) -> Result<Z4Matrix> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack needs equal row counts".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Z4Matrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn vstack(&self, other: &Z4Matrix) -> Result<Z4Matrix> {
        if self.cols != other.cols {
            return Err(Error::Shape("vstack needs equal column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Z4Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn select_columns(&self, perm: &[usize]) -> Z4Matrix {
        let mut out = Z4Matrix::zeros(self.rows, perm.len());
        for i in 0..self.rows {
            for (j, &p) in perm.iter().enumerate() {
                out.set(i, j, self.get(i, p));
            }
        }
        out
    }
}

impl fmt::Display for Z4Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A Z4-linear code held in standard form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z4Code {
    n: usize,
    k1: usize,
    k2: usize,
    generator: Z4Matrix,
    permutation: Vec<usize>,
}

/// Reduces any generator matrix to standard form.
///
/// Pivoting scans for the leftmost column holding a unit among the rows not
/// yet pivoted, taking the topmost such row; rows are scaled by 3 when the
/// pivot is 3. Once no unit is left, the remaining rows are all even and are
/// reduced as a binary matrix. Zero rows are dropped.
pub fn standard_form(m: &Z4Matrix) -> Z4Code {
    let n = m.cols();
    let mut w: Vec<Vec<u8>> = m.to_rows();
    let mut perm: Vec<usize> = (0..n).collect();

    let swap_cols = |w: &mut Vec<Vec<u8>>, perm: &mut Vec<usize>, a: usize, b: usize| {
        if a != b {
            for row in w.iter_mut() {
                row.swap(a, b);
            }
            perm.swap(a, b);
        }
    };

    let mut k1 = 0;
    loop {
        let mut pivot = None;
        'search: for j in k1..n {
            for (i, row) in w.iter().enumerate().skip(k1) {
                if row[j] & 1 == 1 {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = pivot else { break };
        w.swap(k1, i);
        swap_cols(&mut w, &mut perm, k1, j);
        if w[k1][k1] == 3 {
            for x in w[k1].iter_mut() {
                *x = (*x * 3) & 3;
            }
        }
        let prow = w[k1].clone();
        for (r, row) in w.iter_mut().enumerate() {
            if r == k1 || row[k1] == 0 {
                continue;
            }
            let c = row[k1];
            for (x, &p) in row.iter_mut().zip(&prow) {
                *x = (*x + 4 - ((c * p) & 3)) & 3;
            }
        }
        k1 += 1;
    }

    let mut k2 = 0;
    loop {
        let top = k1 + k2;
        let mut pivot = None;
        'search2: for j in top..n {
            for (i, row) in w.iter().enumerate().skip(top) {
                if row[j] == 2 {
                    pivot = Some((i, j));
                    break 'search2;
                }
            }
        }
        let Some((i, j)) = pivot else { break };
        w.swap(top, i);
        swap_cols(&mut w, &mut perm, top, j);
        let prow = w[top].clone();
        for (r, row) in w.iter_mut().enumerate() {
            if r == top {
                continue;
            }
            if row[top] >= 2 {
                for (x, &p) in row.iter_mut().zip(&prow) {
                    *x = (*x + 4 - p) & 3;
                }
            }
        }
        k2 += 1;
    }

    w.truncate(k1 + k2);
    let data: Vec<u8> = w.into_iter().flatten().collect();
    Z4Code {
        n,
        k1,
        k2,
        generator: Z4Matrix {
            rows: k1 + k2,
            cols: n,
            data,
        },
        permutation: perm,
    }
}

/// Generator of the dual code, per the standard-form dual formula.
pub fn dual_generator(code: &Z4Code) -> Z4Code {
    code.dual()
}

/// Streams every codeword once, in original coordinates.
pub fn enumerate_codewords(code: &Z4Code, budget: Budget) -> Result<Codewords> {
    code.codewords(budget)
}

impl Z4Code {
    pub fn from_generator(m: &Z4Matrix) -> Z4Code {
        standard_form(m)
    }

    /// Accepts a generator that is already in standard form in the given
    /// column order, failing if it is not.
    pub fn from_standard_parts(
        generator: Z4Matrix,
        k1: usize,
        k2: usize,
        permutation: Vec<usize>,
    ) -> Result<Z4Code> {
        let n = generator.cols();
        let mut sorted = permutation.clone();
        sorted.sort_unstable();
        if generator.rows() != k1 + k2 || sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::NotStandardForm);
        }
        for i in 0..k1 + k2 {
            for j in 0..k1 + k2 {
                let want = match (i < k1, i == j) {
                    (true, true) => 1,
                    (false, true) => 2,
                    _ => 0,
                };
                let got = generator.get(i, j);
                let ok = if i < k1 && j >= k1 {
                    got <= 1
                } else {
                    got == want
                };
                if !ok {
                    return Err(Error::NotStandardForm);
                }
            }
            if i >= k1 && generator.row(i).iter().any(|&x| x & 1 == 1) {
                return Err(Error::NotStandardForm);
            }
        }
        Ok(Z4Code {
            n,
            k1,
            k2,
            generator,
            permutation,
        })
    }

    pub fn zero(n: usize) -> Z4Code {
        standard_form(&Z4Matrix::zeros(0, n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    /// Standard-form generator, in standard-form coordinates.
    pub fn generator(&self) -> &Z4Matrix {
        &self.generator
    }

    /// Standard-form coordinate `j` is original coordinate `perm[j]`.
    pub fn column_permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// log2 |C| = 2 k1 + k2.
    pub fn cardinality_log2(&self) -> u32 {
        (2 * self.k1 + self.k2) as u32
    }

    pub fn cardinality(&self) -> BigUint {
        BigUint::from(1u8) << self.cardinality_log2()
    }

    /// The standard-form generator with its columns put back in the
    /// original order.
    pub fn original_generator(&self) -> Z4Matrix {
        self.to_original(&self.generator)
    }

    fn to_original(&self, m: &Z4Matrix) -> Z4Matrix {
        let mut out = Z4Matrix::zeros(m.rows(), self.n);
        for i in 0..m.rows() {
            for (j, &p) in self.permutation.iter().enumerate() {
                out.set(i, p, m.get(i, j));
            }
        }
        out
    }

    /// `(-B^T - C^T A^T, C^T, I / 2A^T, 2I, 0)` in original coordinates,
    /// before any further reduction.
    pub fn dual_generator_matrix(&self) -> Z4Matrix {
        let (k1, k2, n) = (self.k1, self.k2, self.n);
        let k3 = n - k1 - k2;
        let g = &self.generator;
        let a = |i: usize, j: usize| g.get(i, k1 + j) as u32;
        let b = |i: usize, l: usize| g.get(i, k1 + k2 + l) as u32;
        let c = |j: usize, l: usize| (g.get(k1 + j, k1 + k2 + l) / 2) as u32;
        let mut d = Z4Matrix::zeros(k3 + k2, n);
        for l in 0..k3 {
            for i in 0..k1 {
                let mut s = 4 - (b(i, l) & 3);
                for j in 0..k2 {
                    s += 4 - ((c(j, l) * a(i, j)) & 3);
                }
                d.set(l, i, (s & 3) as u8);
            }
            for j in 0..k2 {
                d.set(l, k1 + j, c(j, l) as u8);
            }
            d.set(l, k1 + k2 + l, 1);
        }
        for j in 0..k2 {
            for i in 0..k1 {
                d.set(k3 + j, i, (2 * a(i, j)) as u8);
            }
            d.set(k3 + j, k1 + j, 2);
        }
        self.to_original(&d)
    }

    pub fn dual(&self) -> Z4Code {
        standard_form(&self.dual_generator_matrix())
    }

    /// Membership test for a vector given in original coordinates.
    pub fn contains(&self, v: &Z4Vector) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut w: Vec<u8> = self.permutation.iter().map(|&p| v.get(p)).collect();
        for i in 0..self.k1 + self.k2 {
            let coef = if i < self.k1 {
                w[i]
            } else {
                if w[i] & 1 == 1 {
                    return false;
                }
                w[i] / 2
            };
            if coef == 0 {
                continue;
            }
            for (x, &g) in w.iter_mut().zip(self.generator.row(i)) {
                *x = (*x + 4 - ((coef * g) & 3)) & 3;
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// True when both codes are the same set of vectors.
    pub fn same_code(&self, other: &Z4Code) -> bool {
        if self.n != other.n || self.cardinality_log2() != other.cardinality_log2() {
            return false;
        }
        let g = other.original_generator();
        (0..g.rows()).all(|i| self.contains(&g.row_vector(i)))
    }

    /// |C|^2 = 4^n and every pair of generator rows is orthogonal mod 4.
    pub fn is_self_dual(&self) -> bool {
        if self.cardinality_log2() as usize != self.n {
            return false;
        }
        let g = &self.generator;
        (0..g.rows()).all(|i| (i..g.rows()).all(|j| dot(g.row(i), g.row(j)) == 0))
    }

    fn message_rows(&self) -> (Vec<Vec<u8>>, Vec<u8>) {
        let g = self.original_generator();
        let orders = (0..g.rows())
            .map(|i| if i < self.k1 { 4 } else { 2 })
            .collect();
        (g.to_rows(), orders)
    }

    pub fn codewords(&self, budget: Budget) -> Result<Codewords> {
        budget.check(self.cardinality_log2())?;
        let (rows, orders) = self.message_rows();
        Ok(Codewords {
            digits: vec![0; rows.len()],
            current: vec![0; self.n],
            rows,
            orders,
            remaining: 1u64 << self.cardinality_log2(),
        })
    }

    /// Codeword with mixed-radix message index `index` (Z4 digits first,
    /// most significant digit first).
    pub fn codeword_at(&self, mut index: u64) -> Z4Vector {
        let (rows, orders) = self.message_rows();
        let mut w = vec![0u8; self.n];
        for (row, &o) in rows.iter().zip(&orders).rev() {
            let d = (index % o as u64) as u8;
            index /= o as u64;
            for (x, &g) in w.iter_mut().zip(row) {
                *x = (*x + d * g) & 3;
            }
        }
        Z4Vector { entries: w }
    }

    /// Histogram of `(n1 + n3, n2)` over all codewords, flattened as
    /// `counts[j * (n + 1) + k]`. Runs on the current rayon pool.
    pub fn symbol_census(&self, budget: Budget) -> Result<SymbolCensus> {
        budget.check(self.cardinality_log2())?;
        let n = self.n;
        let (rows, orders) = self.message_rows();
        let counts = if n <= 64 {
            let packed: Vec<Packed> = rows.iter().map(|r| Packed::from_slice(r)).collect();
            packed_census(&packed, &orders, n)
        } else {
            let mut counts = vec![0u64; (n + 1) * (n + 1)];
            for w in self.codewords(budget)? {
                let (_, j, k) = w.symbol_profile();
                counts[j * (n + 1) + k] += 1;
            }
            counts
        };
        Ok(SymbolCensus { n, counts })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolCensus {
    pub n: usize,
    pub counts: Vec<u64>,
}

impl SymbolCensus {
    /// Iterates `((n0, n1 + n3, n2), count)` over nonzero cells.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, usize), u64)> + '_ {
        let m = self.n + 1;
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(move |(idx, &c)| {
                let (j, k) = (idx / m, idx % m);
                ((self.n - j - k, j, k), c)
            })
    }
}

/// Iterator over the codewords of a [`Z4Code`].
pub struct Codewords {
    rows: Vec<Vec<u8>>,
    orders: Vec<u8>,
    digits: Vec<u8>,
    current: Vec<u8>,
    remaining: u64,
}

impl Iterator for Codewords {
    type Item = Z4Vector;

    fn next(&mut self) -> Option<Z4Vector> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = Z4Vector {
            entries: self.current.clone(),
        };
        if self.remaining > 0 {
            let mut p = self.rows.len();
            while p > 0 {
                p -= 1;
                for (x, &g) in self.current.iter_mut().zip(&self.rows[p]) {
                    *x = (*x + g) & 3;
                }
                self.digits[p] += 1;
                if self.digits[p] < self.orders[p] {
                    break;
                }
                self.digits[p] = 0;
            }
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

/// Bit-sliced Z4 vector of length at most 64: bit `i` of `lo`/`hi` is the
/// low/high bit of coordinate `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Packed {
    pub lo: u64,
    pub hi: u64,
}

impl Packed {
    pub fn from_slice(v: &[u8]) -> Packed {
        let mut p = Packed::default();
        for (i, &x) in v.iter().enumerate() {
            p.lo |= ((x & 1) as u64) << i;
            p.hi |= (((x >> 1) & 1) as u64) << i;
        }
        p
    }

    #[inline]
    pub fn add(self, o: Packed) -> Packed {
        Packed {
            lo: self.lo ^ o.lo,
            hi: self.hi ^ o.hi ^ (self.lo & o.lo),
        }
    }

    #[inline]
    pub fn odd(self) -> u32 {
        self.lo.count_ones()
    }

    #[inline]
    pub fn twos(self) -> u32 {
        (self.hi & !self.lo).count_ones()
    }
}

fn census_dfs(rows: &[Packed], orders: &[u8], word: Packed, m: usize, counts: &mut [u64]) {
    match rows.split_first() {
        None => counts[word.odd() as usize * m + word.twos() as usize] += 1,
        Some((&row, rest)) => {
            let mut w = word;
            for _ in 0..orders[0] {
                census_dfs(rest, &orders[1..], w, m, counts);
                w = w.add(row);
            }
        }
    }
}

pub(crate) fn packed_census(rows: &[Packed], orders: &[u8], n: usize) -> Vec<u64> {
    let m = n + 1;
    let mut split = 0;
    let mut prefixes: u64 = 1;
    while split < rows.len() && prefixes < 1024 && rows.len() - split > 6 {
        prefixes *= orders[split] as u64;
        split += 1;
    }
    if split == 0 {
        let mut counts = vec![0u64; m * m];
        census_dfs(rows, orders, Packed::default(), m, &mut counts);
        return counts;
    }
    (0..prefixes)
        .into_par_iter()
        .fold(
            || vec![0u64; m * m],
            |mut counts, mut idx| {
                let mut w = Packed::default();
                for p in (0..split).rev() {
                    let d = idx % orders[p] as u64;
                    idx /= orders[p] as u64;
                    for _ in 0..d {
                        w = w.add(rows[p]);
                    }
                }
                census_dfs(&rows[split..], &orders[split..], w, m, &mut counts);
                counts
            },
        )
        .reduce(
            || vec![0u64; m * m],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_of_small_vectors() {
        let w = Z4Vector::from_ints(&[1, 2, 3, 0]).weights();
        assert_eq!((w.hamming, w.lee, w.euclidean), (3, 4, 6));
        let w = Z4Vector::zeros(4).weights();
        assert_eq!((w.hamming, w.lee, w.euclidean), (0, 0, 0));
        let w = Z4Vector::from_ints(&[2; 5]).weights();
        assert_eq!((w.lee, w.euclidean), (10, 20));
    }

    #[test]
    fn rejects_bad_residues() {
        assert!(Z4Vector::new(vec![0, 4]).is_err());
        assert!(Z4Matrix::new(1, 2, vec![1, 7]).is_err());
        assert!(Z4Matrix::new(2, 2, vec![1]).is_err());
    }

    #[test]
    fn identity_is_already_standard() {
        let c = standard_form(&Z4Matrix::identity(2));
        assert_eq!((c.k1(), c.k2()), (2, 0));
        assert_eq!(c.column_permutation(), &[0, 1]);
    }

    #[test]
    fn even_rows_go_to_k2() {
        let c = standard_form(&Z4Matrix::from_rows(2, &[[2, 0], [0, 2]]).unwrap());
        assert_eq!((c.k1(), c.k2()), (0, 2));
        assert_eq!(c.codewords(Budget::default()).unwrap().count(), 4);
    }

    #[test]
    fn zero_matrix_is_zero_code() {
        let c = standard_form(&Z4Matrix::zeros(3, 3));
        assert_eq!((c.k1(), c.k2()), (0, 0));
        let words: Vec<_> = c.codewords(Budget::default()).unwrap().collect();
        assert_eq!(words, vec![Z4Vector::zeros(3)]);
    }

    #[test]
    fn budget_is_enforced() {
        let c = standard_form(&Z4Matrix::identity(5));
        let err = c.codewords(Budget::new(9)).err().unwrap();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                required_log2: 10,
                budget_log2: 9
            }
        );
    }

    #[test]
    fn full_code_has_zero_dual() {
        let c = standard_form(&Z4Matrix::identity(3));
        let d = c.dual();
        assert_eq!(d.cardinality_log2(), 0);
    }

    #[test]
    fn packed_addition_matches_mod4() {
        for a in 0..4u8 {
            for b in 0..4u8 {
                let s = Packed::from_slice(&[a]).add(Packed::from_slice(&[b]));
                assert_eq!(s, Packed::from_slice(&[(a + b) & 3]));
            }
        }
    }

    #[test]
    fn from_standard_parts_rejects_nonstandard() {
        let g = Z4Matrix::from_rows(2, &[[1, 1], [1, 0]]).unwrap();
        assert_eq!(
            Z4Code::from_standard_parts(g, 2, 0, vec![0, 1]),
            Err(Error::NotStandardForm)
        );
        let g = Z4Matrix::from_rows(2, &[[1, 3]]).unwrap();
        assert!(Z4Code::from_standard_parts(g, 1, 0, vec![0, 1]).is_ok());
    }
}
