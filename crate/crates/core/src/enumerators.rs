//! Exact homogeneous enumerator polynomials and their MacWilliams
//! transforms.
//!
//! * [`WePoly`]: `W(x, y)`, Hamming weight enumerator of a binary code.
//! * [`SwePoly`]: `swe(a, b, c)`, exponents `(n0, n1 + n3, n2)`.
//! * [`JwePoly`]: `jwe(a, b, c, d)` of a pair of binary codes, exponents
//!   `(d00, d01, d10, d11)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::binary::BinaryCode;
use crate::z4::Z4Code;
use crate::{Budget, Error, Result};

/// Sparse homogeneous polynomial in `V` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<C, const V: usize> {
    degree: u32,
    terms: BTreeMap<[u32; V], C>,
}

pub type WePoly = Poly<BigUint, 2>;
pub type SwePoly = Poly<BigUint, 3>;
pub type JwePoly = Poly<BigUint, 4>;
pub type RationalPoly<const V: usize> = Poly<BigRational, V>;

pub const WE_VARS: [&str; 2] = ["x", "y"];
pub const SWE_VARS: [&str; 3] = ["a", "b", "c"];
pub const JWE_VARS: [&str; 4] = ["a", "b", "c", "d"];

fn default_vars(v: usize) -> &'static [&'static str] {
    match v {
        2 => &WE_VARS,
        3 => &SWE_VARS,
        _ => &JWE_VARS,
    }
}

impl<C, const V: usize> Poly<C, V>
where
    C: Clone + Zero + PartialEq,
{
    pub fn zero(degree: u32) -> Self {
        Poly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Merges repeated exponents and drops zero coefficients; fails if an
    /// exponent does not sum to `degree`.
    pub fn from_terms<I>(degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ([u32; V], C)>,
    {
        let mut p = Self::zero(degree);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::Shape(format!(
                    "exponent {e:?} does not sum to degree {degree}"
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, e: [u32; V], c: C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(C::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<[u32; V], C> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32; V]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn total(&self) -> C {
        self.terms.values().fold(C::zero(), |s, c| s + c.clone())
    }
}

impl<const V: usize> Poly<BigUint, V> {
    pub fn to_rational(&self) -> RationalPoly<V> {
        Poly {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, BigRational::from_integer(BigInt::from(c.clone()))))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = [0; V];
                for v in 0..V {
                    e[v] = e1[v] + e2[v];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn eval_f64(&self, x: [f64; V]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.to_f64().unwrap_or(f64::INFINITY);
                for v in 0..V {
                    t *= x[v].powi(e[v] as i32);
                }
                t
            })
            .sum()
    }
}

impl<const V: usize> RationalPoly<V> {
    /// Some when every coefficient is a non-negative integer.
    pub fn to_integer(&self) -> Option<Poly<BigUint, V>> {
        let mut out = Poly::zero(self.degree);
        for (e, c) in &self.terms {
            if !c.is_integer() || c.is_negative() {
                return None;
            }
            out.add_term(*e, c.to_integer().to_biguint()?);
        }
        Some(out)
    }
}

impl<C: fmt::Display + Clone + Zero + PartialEq + One, const V: usize> fmt::Display for Poly<C, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = default_vars(V);
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts = Vec::new();
            if !c.is_one() || e.iter().all(|&x| x == 0) {
                parts.push(c.to_string());
            }
            for v in 0..V {
                match e[v] {
                    0 => {}
                    1 => parts.push(vars[v].to_string()),
                    k => parts.push(format!("{}^{k}", vars[v])),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

type Sparse<const V: usize> = HashMap<[u32; V], BigInt>;

fn mul_sparse<const V: usize>(a: &Sparse<V>, b: &Sparse<V>) -> Sparse<V> {
    let mut out: Sparse<V> = HashMap::with_capacity(a.len() + b.len());
    for (e1, c1) in a {
        for (e2, c2) in b {
            let mut e = [0; V];
            for v in 0..V {
                e[v] = e1[v] + e2[v];
            }
            *out.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Expands monomials under the linear change of variables
/// `x_v -> sum_w forms[v][w] x_w`, memoising powers of each form and the
/// products of all but the last factor.
pub(crate) struct LinearSubstitution<const V: usize> {
    forms: [[i64; V]; V],
    powers: Vec<Vec<Sparse<V>>>,
    prefix: HashMap<Vec<u32>, Sparse<V>>,
}

impl<const V: usize> LinearSubstitution<V> {
    pub fn new(forms: [[i64; V]; V]) -> Self {
        let one: Sparse<V> = [([0; V], BigInt::one())].into_iter().collect();
        LinearSubstitution {
            forms,
            powers: vec![vec![one]; V],
            prefix: HashMap::new(),
        }
    }

    fn power(&mut self, v: usize, e: u32) -> &Sparse<V> {
        while self.powers[v].len() <= e as usize {
            let mut form: Sparse<V> = HashMap::new();
            for w in 0..V {
                if self.forms[v][w] != 0 {
                    let mut u = [0; V];
                    u[w] = 1;
                    form.insert(u, BigInt::from(self.forms[v][w]));
                }
            }
            let next = mul_sparse(self.powers[v].last().unwrap(), &form);
            self.powers[v].push(next);
        }
        &self.powers[v][e as usize]
    }

    pub fn expand(&mut self, e: [u32; V]) -> Sparse<V> {
        let key = e[..V - 1].to_vec();
        if !self.prefix.contains_key(&key) {
            let mut acc = self.power(0, e[0]).clone();
            for (v, &ev) in e.iter().enumerate().take(V - 1).skip(1) {
                let p = self.power(v, ev).clone();
                acc = mul_sparse(&acc, &p);
            }
            self.prefix.insert(key.clone(), acc);
        }
        let last = self.power(V - 1, e[V - 1]).clone();
        mul_sparse(&self.prefix[&key], &last)
    }
}

const SWE_FORMS: [[i64; 3]; 3] = [[1, 2, 1], [1, 0, -1], [1, -2, 1]];
const JWE_FORMS: [[i64; 4]; 4] = [
    [1, 1, 1, 1],
    [1, -1, 1, -1],
    [1, 1, -1, -1],
    [1, -1, -1, 1],
];
const WE_FORMS: [[i64; 2]; 2] = [[1, 1], [1, -1]];

fn transform<const V: usize>(
    p: &RationalPoly<V>,
    forms: [[i64; V]; V],
) -> Result<RationalPoly<V>> {
    let total = p.total();
    if total.is_zero() {
        return Err(Error::Domain("MacWilliams transform of a polynomial with zero mass".into()));
    }
    let mut sub = LinearSubstitution::new(forms);
    let mut acc: HashMap<[u32; V], BigRational> = HashMap::new();
    for (e, c) in &p.terms {
        for (f, k) in sub.expand(*e) {
            *acc.entry(f).or_insert_with(BigRational::zero) += c * BigRational::from_integer(k);
        }
    }
    let mut out = Poly::zero(p.degree);
    for (e, c) in acc {
        out.add_term(e, c / &total);
    }
    Ok(out)
}

/// Dense expansion matrix of the swe transform for one degree. Column `c`
/// lists the expansion of monomial `c` as `(row, coefficient)` pairs.
struct SweKernel {
    index: HashMap<[u32; 3], usize>,
    monomials: Vec<[u32; 3]>,
    columns: Vec<Vec<(usize, i128)>>,
}

impl SweKernel {
    fn build(n: u32) -> SweKernel {
        let mut monomials = Vec::new();
        for i in (0..=n).rev() {
            for j in (0..=n - i).rev() {
                monomials.push([i, j, n - i - j]);
            }
        }
        let index: HashMap<[u32; 3], usize> =
            monomials.iter().enumerate().map(|(k, e)| (*e, k)).collect();
        let mut sub = LinearSubstitution::new(SWE_FORMS);
        let columns = monomials
            .iter()
            .map(|e| {
                let mut col: Vec<(usize, i128)> = sub
                    .expand(*e)
                    .into_iter()
                    .map(|(f, k)| (index[&f], k.to_i128().expect("kernel entry fits i128")))
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        SweKernel {
            index,
            monomials,
            columns,
        }
    }

    fn get(n: u32) -> Arc<SweKernel> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<SweKernel>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(k) = cache.lock().unwrap().get(&n) {
            return k.clone();
        }
        let k = Arc::new(SweKernel::build(n));
        cache.lock().unwrap().entry(n).or_insert(k).clone()
    }

    fn apply_exact(&self, p: &SwePoly) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.monomials.len()];
        for (e, c) in &p.terms {
            let c = BigInt::from(c.clone());
            for &(r, k) in &self.columns[self.index[e]] {
                out[r] += &c * k;
            }
        }
        out
    }

    /// `None` on i128 overflow.
    fn apply_i128(&self, p: &SwePoly) -> Option<Vec<i128>> {
        let mut out = vec![0i128; self.monomials.len()];
        for (e, c) in &p.terms {
            let c = c.to_i128()?;
            for &(r, k) in &self.columns[self.index[e]] {
                out[r] = out[r].checked_add(c.checked_mul(k)?)?;
            }
        }
        Some(out)
    }
}

/// Largest degree whose swe kernel entries (bounded by 4^n) fit in i128.
const KERNEL_MAX_DEGREE: u32 = 62;

/// `(1/|C|) p(a+2b+c, a-c, a-2b+c)` where `|C|` is the total mass of `p`.
/// For the swe of a code this is the swe of its dual.
pub fn macwilliams_swe(p: &SwePoly) -> Result<RationalPoly<3>> {
    let total = p.total();
    if total.is_zero() {
        return Err(Error::Domain("MacWilliams transform of the zero polynomial".into()));
    }
    if p.degree > KERNEL_MAX_DEGREE {
        return transform(&p.to_rational(), SWE_FORMS);
    }
    let kernel = SweKernel::get(p.degree);
    let total = BigRational::from_integer(BigInt::from(total));
    let mut out = Poly::zero(p.degree);
    for (r, v) in kernel.apply_exact(p).into_iter().enumerate() {
        out.add_term(kernel.monomials[r], BigRational::from_integer(v) / &total);
    }
    Ok(out)
}

/// The swe transform on a rational input, dividing by its total mass.
/// Applying it twice returns the input.
pub fn macwilliams_swe_rational(p: &RationalPoly<3>) -> Result<RationalPoly<3>> {
    transform(p, SWE_FORMS)
}

/// `(1/(|A1||A2|)) jwe(a+b+c+d, a-b+c-d, a+b-c-d, a-b-c+d)`: the jwe of the
/// dual pair.
pub fn macwilliams_jwe(p: &JwePoly) -> Result<RationalPoly<4>> {
    transform(&p.to_rational(), JWE_FORMS)
}

pub fn macwilliams_jwe_rational(p: &RationalPoly<4>) -> Result<RationalPoly<4>> {
    transform(p, JWE_FORMS)
}

/// Binary MacWilliams transform `(1/|A|) W(x+y, x-y)`.
pub fn macwilliams_we(p: &WePoly) -> Result<RationalPoly<2>> {
    transform(&p.to_rational(), WE_FORMS)
}

pub fn we(code: &BinaryCode, budget: Budget) -> Result<WePoly> {
    let n = code.n() as u32;
    let mut counts = vec![0u64; code.n() + 1];
    for w in code.codewords(budget)? {
        counts[w.count_ones() as usize] += 1;
    }
    Poly::from_terms(
        n,
        counts
            .into_iter()
            .enumerate()
            .map(|(k, c)| ([n - k as u32, k as u32], BigUint::from(c))),
    )
}

pub fn swe(code: &Z4Code, budget: Budget) -> Result<SwePoly> {
    let census = code.symbol_census(budget)?;
    let n = code.n() as u32;
    Poly::from_terms(
        n,
        census
            .iter()
            .map(|((i, j, k), c)| ([i as u32, j as u32, k as u32], BigUint::from(c))),
    )
}

pub fn jwe(a1: &BinaryCode, a2: &BinaryCode, budget: Budget) -> Result<JwePoly> {
    if a1.n() != a2.n() {
        return Err(Error::Shape(format!(
            "jwe needs equal lengths, got {} and {}",
            a1.n(),
            a2.n()
        )));
    }
    budget.check((a1.k() + a2.k()) as u32)?;
    let n = a1.n();
    let xs: Vec<u64> = a1.codewords(budget)?.collect();
    let ys: Vec<u64> = a2.codewords(budget)?.collect();
    let m = n + 1;
    let counts = xs
        .par_iter()
        .fold(
            || vec![0u64; m * m * m],
            |mut counts, &x| {
                for &y in &ys {
                    let d01 = (y & !x).count_ones() as usize;
                    let d10 = (x & !y).count_ones() as usize;
                    let d11 = (x & y).count_ones() as usize;
                    counts[(d01 * m + d10) * m + d11] += 1;
                }
                counts
            },
        )
        .reduce(
            || vec![0u64; m * m * m],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let n = n as u32;
    let mut p = Poly::zero(n);
    for (idx, c) in counts.into_iter().enumerate() {
        if c == 0 {
            continue;
        }
        let d11 = (idx % m) as u32;
        let d10 = ((idx / m) % m) as u32;
        let d01 = (idx / (m * m)) as u32;
        p.add_term([n - d01 - d10 - d11, d01, d10, d11], BigUint::from(c));
    }
    Ok(p)
}

/// swe of `A1 + 2A2` read off the jwe: `swe(a, b, c) = jwe(a, c, b, b)`.
pub fn swe_from_jwe(p: &JwePoly) -> SwePoly {
    let mut out = Poly::zero(p.degree);
    for (e, c) in &p.terms {
        out.add_term([e[0], e[2] + e[3], e[1]], c.clone());
    }
    out
}

/// `jwe_{A2,A1}` from `jwe_{A1,A2}`: swaps the roles of `b` and `c`.
pub fn jwe_swap(p: &JwePoly) -> JwePoly {
    let mut out = Poly::zero(p.degree);
    for (e, c) in &p.terms {
        out.add_term([e[0], e[2], e[1], e[3]], c.clone());
    }
    out
}

/// `|C|^2 = 4^n` and the swe is a fixed point of its MacWilliams transform.
pub fn is_fsd_swe(p: &SwePoly) -> bool {
    let n = p.degree;
    let total = p.total();
    if &total * &total != BigUint::one() << (2 * n) {
        return false;
    }
    if n <= KERNEL_MAX_DEGREE {
        let kernel = SweKernel::get(n);
        if let (Some(out), Some(t)) = (kernel.apply_i128(p), total.to_i128()) {
            return kernel.monomials.iter().zip(out).all(|(e, v)| {
                p.coefficient(e)
                    .to_i128()
                    .and_then(|c| c.checked_mul(t))
                    .is_some_and(|rhs| rhs == v)
            });
        }
    }
    macwilliams_swe(p).is_ok_and(|q| q == p.to_rational())
}

pub fn is_formally_self_dual(code: &Z4Code, budget: Budget) -> Result<bool> {
    if code.cardinality_log2() as usize != code.n() {
        return Ok(false);
    }
    Ok(is_fsd_swe(&swe(code, budget)?))
}

/// `|A|^2 = 2^n` and `W` is fixed by the binary MacWilliams transform.
pub fn is_fsd_we(p: &WePoly) -> bool {
    let total = p.total();
    &total * &total == BigUint::one() << p.degree
        && macwilliams_we(p).is_ok_and(|q| q == p.to_rational())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeType {
    TypeI,
    TypeII,
    /// Formally self-dual, but some Euclidean weight is not divisible by 4.
    Neither,
    NotFsd,
}

impl fmt::Display for CodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeType::TypeI => "TypeI",
            CodeType::TypeII => "TypeII",
            CodeType::Neither => "Neither",
            CodeType::NotFsd => "NotFSD",
        })
    }
}

/// Classification from the swe alone; the Euclidean weight of a codeword
/// with profile `(n0, n1 + n3, n2)` is `(n1 + n3) + 4 n2`.
pub fn classify_swe(p: &SwePoly) -> CodeType {
    if !is_fsd_swe(p) {
        return CodeType::NotFsd;
    }
    let euclid = p.terms.keys().map(|e| e[1] + 4 * e[2]);
    let (mut all4, mut all8) = (true, true);
    for w in euclid {
        all4 &= w % 4 == 0;
        all8 &= w % 8 == 0;
    }
    match (all4, all8) {
        (_, true) => CodeType::TypeII,
        (true, false) => CodeType::TypeI,
        _ => CodeType::Neither,
    }
}

pub fn classify_type(code: &Z4Code, budget: Budget) -> Result<CodeType> {
    Ok(classify_swe(&swe(code, budget)?))
}

/// Gray image weight enumerator: `W(x, y) = swe(x^2, xy, y^2)`.
pub fn gray_we_from_swe(p: &SwePoly) -> WePoly {
    let mut out = Poly::zero(2 * p.degree);
    for (e, c) in &p.terms {
        out.add_term([2 * e[0] + e[1], e[1] + 2 * e[2]], c.clone());
    }
    out
}

/// `(d_lee, d_euclid)` over nonzero codewords.
pub fn min_distances_swe(p: &SwePoly) -> Result<(u32, u32)> {
    let nonzero = p.terms.keys().filter(|e| e[1] + e[2] > 0);
    let lee = nonzero.clone().map(|e| e[1] + 2 * e[2]).min();
    let euclid = nonzero.map(|e| e[1] + 4 * e[2]).min();
    match (lee, euclid) {
        (Some(l), Some(d)) => Ok((l, d)),
        _ => Err(Error::NoNonzeroCodeword),
    }
}

pub fn min_distances(code: &Z4Code, budget: Budget) -> Result<(u32, u32)> {
    if code.cardinality_log2() == 0 {
        return Err(Error::NoNonzeroCodeword);
    }
    min_distances_swe(&swe(code, budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swe_of(terms: &[([u32; 3], u64)]) -> SwePoly {
        let n = terms[0].0.iter().sum();
        Poly::from_terms(n, terms.iter().map(|(e, c)| (*e, BigUint::from(*c)))).unwrap()
    }

    #[test]
    fn transform_of_a_is_full_code() {
        let p = swe_of(&[([1, 0, 0], 1)]);
        let q = macwilliams_swe(&p).unwrap().to_integer().unwrap();
        assert_eq!(q, swe_of(&[([1, 0, 0], 1), ([0, 1, 0], 2), ([0, 0, 1], 1)]));
    }

    #[test]
    fn display_orders_by_descending_a() {
        let p = swe_of(&[([2, 0, 0], 1), ([0, 0, 2], 3)]);
        assert_eq!(p.to_string(), "a^2 + 3*c^2");
    }

    #[test]
    fn from_terms_rejects_inhomogeneous() {
        let r = SwePoly::from_terms(3, [([1, 1, 0], BigUint::one())]);
        assert!(r.is_err());
    }

    #[test]
    fn zero_code_is_not_fsd() {
        assert!(!is_fsd_swe(&swe_of(&[([4, 0, 0], 1)])));
    }

    #[test]
    fn min_distance_of_zero_code_is_an_error() {
        assert_eq!(
            min_distances_swe(&swe_of(&[([3, 0, 0], 1)])),
            Err(Error::NoNonzeroCodeword)
        );
    }

    #[test]
    fn gray_of_a_power() {
        let w = gray_we_from_swe(&swe_of(&[([3, 0, 0], 1)]));
        assert_eq!(w.degree(), 6);
        assert_eq!(w.coefficient(&[6, 0]), BigUint::one());
    }
}
