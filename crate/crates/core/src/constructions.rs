//! Code families: nested binary sums `A1 + 2A2`, Reed-Muller chains, pure
//! and bordered double circulant codes, and odd extensions.

use crate::binary::{schur, BinaryCode};
use crate::enumerators::we;
use crate::z4::{Z4Code, Z4Matrix};
use crate::{Budget, Error, Result};

fn check_lengths(a1: &BinaryCode, a2: &BinaryCode) -> Result<()> {
    if a1.n() != a2.n() {
        return Err(Error::Shape(format!(
            "codes of lengths {} and {} cannot be nested",
            a1.n(),
            a2.n()
        )));
    }
    Ok(())
}

/// First witness against `A1 ⊆ A2` being closed under the Schur product.
fn closure_violation(a1: &BinaryCode, a2: &BinaryCode) -> Option<String> {
    if !a1.is_subcode_of(a2) {
        return Some("A1 is not contained in A2".into());
    }
    let rows = a1.rows();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if !a2.contains(schur(rows[i], rows[j])) {
                return Some(format!("product of A1 rows {i} and {j} is not in A2"));
            }
        }
    }
    None
}

/// `A1 ⊆ A2` and `g ∘ g' ∈ A2` for every pair of rows of `A1`.
pub fn closure_check(a1: &BinaryCode, a2: &BinaryCode) -> Result<bool> {
    check_lengths(a1, a2)?;
    Ok(closure_violation(a1, a2).is_none())
}

/// The Z4-linear code `A1 + 2A2`.
pub fn nested_sum(a1: &BinaryCode, a2: &BinaryCode) -> Result<Z4Code> {
    check_lengths(a1, a2)?;
    if let Some(why) = closure_violation(a1, a2) {
        return Err(Error::ClosureViolation(why));
    }
    let n = a1.n();
    let mut all = a1.rows().to_vec();
    all.extend_from_slice(a2.rows());
    let span = BinaryCode::new(n, all)?;
    let mut data = Vec::with_capacity(span.k() * n);
    for (i, &w) in span.rows().iter().enumerate() {
        let scale = if i < a1.k() { 1 } else { 2 };
        data.extend((0..n).map(|j| (((w >> j) & 1) as u8) * scale));
    }
    Ok(Z4Code::from_generator(&Z4Matrix::new(span.k(), n, data)?))
}

/// `W_A1 = W_A2⊥` and `W_A2 = W_A1⊥`, which make `A1 + 2A2` formally
/// self-dual.
pub fn fsd_precondition_check(a1: &BinaryCode, a2: &BinaryCode, budget: Budget) -> Result<bool> {
    check_lengths(a1, a2)?;
    if a1.n() % 2 == 1 {
        return Err(Error::OddLength(a1.n()));
    }
    Ok(we(a1, budget)? == we(&a2.dual(), budget)? && we(a2, budget)? == we(&a1.dual(), budget)?)
}

/// Monomials of degree at most `r` in `v` variables, graded then
/// lexicographic; each is a bitmask over the variables (bit 0 = `x1`).
fn monomials(r: usize, v: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for d in 0..=r {
        let mut level: Vec<Vec<usize>> = Vec::new();
        subsets(v, d, 0, &mut Vec::new(), &mut level);
        out.extend(level.into_iter().map(|s| s.iter().fold(0u32, |m, &i| m | (1 << i))));
    }
    out
}

fn subsets(v: usize, d: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == d {
        out.push(cur.clone());
        return;
    }
    for i in start..v {
        cur.push(i);
        subsets(v, d, i + 1, cur, out);
        cur.pop();
    }
}

/// `R(r, v)`: evaluation vectors of Boolean monomials of degree `<= r`.
/// Coordinate `p` is the point whose binary expansion, most significant bit
/// first, is `(x1, ..., xv)`.
pub fn reed_muller(r: usize, v: usize) -> Result<BinaryCode> {
    if r > v {
        return Err(Error::OutOfRange(format!("order {r} exceeds {v} variables")));
    }
    if v > 6 {
        return Err(Error::OutOfRange(format!("length 2^{v} exceeds 64")));
    }
    let n = 1usize << v;
    let rows = monomials(r, v)
        .into_iter()
        .map(|m| {
            (0..n).fold(0u64, |w, p| {
                let on = (0..v).all(|i| (m >> i) & 1 == 0 || (p >> (v - 1 - i)) & 1 == 1);
                if on {
                    w | (1 << p)
                } else {
                    w
                }
            })
        })
        .collect();
    BinaryCode::new(n, rows)
}

/// `R(1, m) + 2R(m - 2, m)`.
pub fn rm_z4(m: usize) -> Result<Z4Code> {
    if m < 3 {
        return Err(Error::OutOfRange(format!("m must be at least 3, got {m}")));
    }
    nested_sum(&reed_muller(1, m)?, &reed_muller(m - 2, m)?)
}

/// First row of a circulant matrix; row `i` is its `i`-fold right shift.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirculantSeed {
    r: Vec<u8>,
}

fn parse_residues(s: &str) -> Result<Vec<u8>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|x| {
            let v: i64 = x
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer: {x:?}")))?;
            Ok(v.rem_euclid(4) as u8)
        })
        .collect()
}

fn join(v: &[u8]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl CirculantSeed {
    pub fn new(r: Vec<u8>) -> Result<CirculantSeed> {
        if let Some(&x) = r.iter().find(|&&x| x > 3) {
            return Err(Error::InvalidResidue {
                value: x as i64,
                modulus: 4,
            });
        }
        Ok(CirculantSeed { r })
    }

    /// Comma-separated residues; integers are reduced modulo 4.
    pub fn parse(s: &str) -> Result<CirculantSeed> {
        CirculantSeed::new(parse_residues(s)?)
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.r
    }

    pub fn matrix(&self) -> Z4Matrix {
        let e = self.r.len();
        let data = (0..e)
            .flat_map(|i| (0..e).map(move |j| (i, j)))
            .map(|(i, j)| self.r[(j + e - i) % e])
            .collect();
        Z4Matrix::new(e, e, data).expect("residues are valid")
    }
}

impl std::fmt::Display for CirculantSeed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&join(&self.r))
    }
}

/// Code generated by `(I | B)` with `B` square.
fn double_circulant(b: &Z4Matrix) -> Z4Code {
    let eta = b.rows();
    let g = Z4Matrix::identity(eta).hstack(b).expect("square block");
    Z4Code::from_standard_parts(g, eta, 0, (0..2 * eta).collect()).expect("(I | B) is in standard form")
}

/// Pure double circulant code `(I | R)`.
pub fn pdcc(seed: &CirculantSeed) -> Z4Code {
    double_circulant(&seed.matrix())
}

/// Border `alpha, beta, gamma` around a circulant of size `eta - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BorderParams {
    pub alpha: u8,
    pub beta: u8,
    pub gamma: u8,
    pub r: CirculantSeed,
}

impl BorderParams {
    pub fn new(alpha: u8, beta: u8, gamma: u8, r: CirculantSeed) -> Result<BorderParams> {
        for v in [alpha, beta, gamma] {
            if v > 3 {
                return Err(Error::InvalidResidue {
                    value: v as i64,
                    modulus: 4,
                });
            }
        }
        if r.is_empty() {
            return Err(Error::OutOfRange("bordered codes need eta >= 2".into()));
        }
        Ok(BorderParams { alpha, beta, gamma, r })
    }

    /// `"alpha,beta,gamma;r1,...,r_{eta-1}"`.
    pub fn parse(s: &str) -> Result<BorderParams> {
        let (head, tail) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected \"alpha,beta,gamma;r...\", got {s:?}")))?;
        let h = parse_residues(head)?;
        if h.len() != 3 {
            return Err(Error::Parse(format!("expected three border values, got {}", h.len())));
        }
        BorderParams::new(h[0], h[1], h[2], CirculantSeed::parse(tail)?)
    }

    pub fn eta(&self) -> usize {
        self.r.len() + 1
    }

    /// `((alpha, beta...beta), (gamma...gamma)^T | R)`.
    pub fn matrix(&self) -> Z4Matrix {
        let eta = self.eta();
        let inner = self.r.matrix();
        let mut m = Z4Matrix::zeros(eta, eta);
        m.set(0, 0, self.alpha);
        for j in 1..eta {
            m.set(0, j, self.beta);
            m.set(j, 0, self.gamma);
            for k in 1..eta {
                m.set(j, k, inner.get(j - 1, k - 1));
            }
        }
        m
    }
}

impl std::fmt::Display for BorderParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{},{};{}", self.alpha, self.beta, self.gamma, self.r)
    }
}

/// Bordered double circulant code.
pub fn bdcc(p: &BorderParams) -> Z4Code {
    double_circulant(&p.matrix())
}

/// The four congruences a self-dual bordered double circulant code must
/// satisfy, in order.
pub fn bdcc_self_dual_conditions(p: &BorderParams) -> [bool; 4] {
    let eta = p.eta() as u32;
    let (a, b, g) = (p.alpha as u32, p.beta as u32, p.gamma as u32);
    let r: Vec<u32> = p.r.entries().iter().map(|&x| x as u32).collect();
    let sum: u32 = r.iter().sum();
    let sq: u32 = r.iter().map(|x| x * x).sum();
    let mut cross = 0u32;
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            cross += r[i] * r[j];
        }
    }
    [
        (a * a + (eta - 1) * b * b) % 4 == 3,
        (a * g + b * sum).is_multiple_of(4),
        (g * g + sq) % 4 == 3,
        ((eta - 2) * g * g + 2 * cross).is_multiple_of(4),
    ]
}

/// Isoduality criterion for bordered codes: `beta = gamma = 0`, or both
/// nonzero.
pub fn bdcc_isodual_predicate(p: &BorderParams) -> bool {
    (p.beta == 0) == (p.gamma == 0)
}

/// `G G^T = 0 (mod 4)`.
pub fn generator_is_self_orthogonal(g: &Z4Matrix) -> bool {
    g.mul(&g.transpose()).is_ok_and(|m| m.is_zero())
}

/// Exhaustively confirms that no seed of length `eta` gives a self-dual
/// pure double circulant code.
pub fn no_self_dual_pdcc_check(eta: usize, budget: Budget) -> Result<bool> {
    budget.check(2 * eta as u32)?;
    let total = 1u64 << (2 * eta);
    for idx in 0..total {
        let r: Vec<u8> = (0..eta).map(|i| ((idx >> (2 * i)) & 3) as u8).collect();
        let code = pdcc(&CirculantSeed::new(r)?);
        if generator_is_self_orthogonal(code.generator()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parameters of the odd extension `(I a^T B / 0 2 2c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OddExtensionParams {
    pub b: Z4Matrix,
    pub a: Vec<u8>,
    pub c: Vec<u8>,
}

impl OddExtensionParams {
    pub fn new(b: Z4Matrix, a: Vec<u8>, c: Vec<u8>) -> Result<OddExtensionParams> {
        let eta = b.rows();
        if b.cols() != eta || a.len() != eta || c.len() != eta {
            return Err(Error::Shape(format!(
                "odd extension needs a square B and vectors of length {eta}"
            )));
        }
        if let Some(&x) = a.iter().chain(&c).find(|&&x| x > 1) {
            return Err(Error::InvalidResidue {
                value: x as i64,
                modulus: 2,
            });
        }
        Ok(OddExtensionParams { b, a, c })
    }

    /// Reads the parameters back from a generator of the odd-extension
    /// shape.
    pub fn from_generator(g: &Z4Matrix) -> Result<OddExtensionParams> {
        let eta = g.rows().saturating_sub(1);
        if g.rows() < 2 || g.cols() != 2 * eta + 1 {
            return Err(Error::Shape("not an odd-extension generator".into()));
        }
        let code = Z4Code::from_standard_parts(g.clone(), eta, 1, (0..g.cols()).collect())?;
        let gen = code.generator();
        let a = (0..eta).map(|i| gen.get(i, eta)).collect();
        let c = (0..eta).map(|j| gen.get(eta, eta + 1 + j) / 2).collect();
        let data = (0..eta)
            .flat_map(|i| (0..eta).map(move |j| (i, j)))
            .map(|(i, j)| gen.get(i, eta + 1 + j))
            .collect();
        OddExtensionParams::new(Z4Matrix::new(eta, eta, data)?, a, c)
    }

    pub fn eta(&self) -> usize {
        self.b.rows()
    }

    pub fn generator(&self) -> Z4Matrix {
        let eta = self.eta();
        let n = 2 * eta + 1;
        let mut g = Z4Matrix::zeros(eta + 1, n);
        for i in 0..eta {
            g.set(i, i, 1);
            g.set(i, eta, self.a[i]);
            for j in 0..eta {
                g.set(i, eta + 1 + j, self.b.get(i, j));
            }
        }
        g.set(eta, eta, 2);
        for j in 0..eta {
            g.set(eta, eta + 1 + j, 2 * self.c[j]);
        }
        g
    }
}

pub fn odd_extension(p: &OddExtensionParams) -> Z4Code {
    let eta = p.eta();
    Z4Code::from_standard_parts(p.generator(), eta, 1, (0..2 * eta + 1).collect())
        .expect("odd extension generators are in standard form")
}

/// `a^T a + B B^T`, reduced modulo 4.
pub fn oext_gram(p: &OddExtensionParams) -> Z4Matrix {
    let eta = p.eta();
    let col = Z4Matrix::new(eta, 1, p.a.clone()).expect("binary entries");
    let outer = col.mul(&col.transpose()).expect("shapes agree");
    outer
        .add(&p.b.mul(&p.b.transpose()).expect("square"))
        .expect("shapes agree")
}

/// `a^T a + B B^T = 3I` and `2a + 2c B^T = 0`, both modulo 4.
pub fn oext_self_dual_check(p: &OddExtensionParams) -> bool {
    let eta = p.eta();
    let gram = oext_gram(p);
    let first = (0..eta).all(|i| (0..eta).all(|j| gram.get(i, j) == if i == j { 3 } else { 0 }));
    let second = (0..eta).all(|i| {
        let dot: u32 = (0..eta).map(|j| p.c[j] as u32 * p.b.get(i, j) as u32).sum();
        (2 * p.a[i] as u32 + 2 * dot).is_multiple_of(4)
    });
    first && second
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rm_dimensions() {
        assert_eq!(reed_muller(0, 3).unwrap().k(), 1);
        assert_eq!(reed_muller(1, 4).unwrap().k(), 5);
        assert_eq!(reed_muller(2, 4).unwrap().k(), 11);
        assert!(reed_muller(4, 3).is_err());
    }

    #[test]
    fn rm_first_rows() {
        let c = reed_muller(1, 3).unwrap();
        assert_eq!(c.rows()[0], 0xff);
        // x1 is the most significant bit of the point index.
        assert_eq!(c.rows()[1], 0xf0);
        assert_eq!(c.rows()[3], 0b1010_1010);
    }

    #[test]
    fn circulant_shifts_right() {
        let m = CirculantSeed::parse("0,2,1").unwrap().matrix();
        assert_eq!(m.row(1), &[1, 0, 2]);
    }

    #[test]
    fn border_parsing() {
        let p = BorderParams::parse("0,2,2;1").unwrap();
        assert_eq!(p.eta(), 2);
        assert_eq!(p.to_string(), "0,2,2;1");
        assert!(BorderParams::parse("0,2;1").is_err());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(closure_check(&BinaryCode::full(2), &BinaryCode::full(3)).is_err());
    }
}
