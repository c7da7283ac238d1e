//! Secrecy function and secrecy gain of Construction A4 lattices, the
//! Gleason-form coefficients of `h_C(t)`, the Type I upper bound and the
//! flatness factor.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::enumerators::{is_fsd_swe, is_fsd_we, SwePoly, WePoly};
use crate::linalg;
use crate::theta::{jacobi_theta, theta_value, LatticeSpec, ThetaKind};
use crate::{Error, Result};

/// `2^(-1/4)`, the image of `tau = 1` under `t(tau)`.
pub fn symmetry_t() -> f64 {
    2f64.powf(-0.25)
}

const SCAN_POINTS: usize = 1024;
const GOLDEN_TOL: f64 = 1e-10;
const SYMMETRY_TOL: f64 = 1e-6;

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("t must lie in (0, 1), got {t}")))
    }
}

/// `swe(1 + t, (1 - t^4)^(1/4), 1 - t)`.
pub fn h_of_t(p: &SwePoly, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(p.eval_f64([1.0 + t, (1.0 - t.powi(4)).powf(0.25), 1.0 - t]))
}

/// `theta_4(i tau) / theta_3(i tau)`.
pub fn t_of_tau(tau: f64) -> Result<f64> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::Domain(format!("tau must be positive, got {tau}")));
    }
    Ok(theta_value(ThetaKind::Four, tau) / theta_value(ThetaKind::Three, tau))
}

/// Inverse of [`t_of_tau`] by bisection on `ln tau`.
pub fn tau_of_t(t: f64) -> Result<f64> {
    check_t(t)?;
    let (mut lo, mut hi) = (-12.0f64, 12.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if t_of_tau(mid.exp())? < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}

/// Minimises `f` on `[a, b]` by golden-section search to width `tol`.
fn golden_min(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Grid scan over the open interval followed by golden-section refinement
/// around the best grid point.
fn scan_then_refine(f: impl Fn(f64) -> f64 + Sync, lo: f64, hi: f64, tol: f64) -> f64 {
    let step = (hi - lo) / SCAN_POINTS as f64;
    let values: Vec<f64> = (1..SCAN_POINTS)
        .into_par_iter()
        .map(|i| f(lo + step * i as f64))
        .collect();
    let best = values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc })
        .0
        + 1;
    let a = lo + step * (best - 1) as f64;
    let b = lo + step * (best + 1) as f64;
    golden_min(&f, a, b, tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SecrecyReport {
    pub t_star: f64,
    pub tau_star: f64,
    pub xi: f64,
    /// Exact value at the symmetry point, present when the optimum is
    /// known to sit there (certified or numerically located).
    pub exact_xi: Option<BigRational>,
    pub at_symmetry_point: bool,
    pub strong_condition_verified: bool,
    /// False flags an input whose gain is computed under a volume-1
    /// assumption that does not hold.
    pub fsd: bool,
    pub beta: Option<BetaVector>,
}

/// Secrecy gain of the Construction A4 lattice of a formally self-dual code
/// from its swe, by minimising `h(t)` on `(0, 1)`.
pub fn secrecy_gain(p: &SwePoly) -> Result<SecrecyReport> {
    let n = p.degree();
    let fsd = is_fsd_swe(p);
    let h = |t: f64| p.eval_f64([1.0 + t, (1.0 - t.powi(4)).powf(0.25), 1.0 - t]);
    let t_star = scan_then_refine(h, 0.0, 1.0, GOLDEN_TOL);
    let xi = 2f64.powi(n as i32) / h(t_star);
    let at_symmetry_point = (t_star - symmetry_t()).abs() < SYMMETRY_TOL;

    let hpoly = HPolynomial::from_swe(p).ok();
    let beta = hpoly.as_ref().and_then(|h| beta_from_h(h).ok());
    let strong = beta.as_ref().is_some_and(strong_condition_check);
    let exact_xi = match &hpoly {
        Some(h) if strong || at_symmetry_point => {
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let value = h.eval_exact(&half);
            (!value.is_zero()).then(|| BigRational::from_integer(BigInt::one() << n) / value)
        }
        _ => None,
    };
    Ok(SecrecyReport {
        t_star,
        tau_star: tau_of_t(t_star)?,
        xi,
        exact_xi,
        at_symmetry_point,
        strong_condition_verified: strong,
        fsd,
        beta,
    })
}

/// `h` written as an exact polynomial in `v = t^4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolynomial {
    n: u32,
    coeffs: Vec<BigInt>,
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn powers_of(base: &[BigInt], max: u32) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![BigInt::one()]];
    for _ in 0..max {
        let next = poly_mul(out.last().unwrap(), base);
        out.push(next);
    }
    out
}

impl HPolynomial {
    /// Expands `swe(1 + t, (1 - t^4)^(1/4), 1 - t)` exactly; needs every
    /// b-exponent divisible by 4 and the result to involve only powers of
    /// `t^4`.
    pub fn from_swe(p: &SwePoly) -> Result<HPolynomial> {
        if let Some(e) = p.terms().keys().find(|e| e[1] % 4 != 0) {
            return Err(Error::BExponent(e[1]));
        }
        let max = |v: usize| p.terms().keys().map(|e| e[v]).max().unwrap_or(0);
        let one = BigInt::one();
        let plus = powers_of(&[one.clone(), one.clone()], max(0));
        let minus = powers_of(&[one.clone(), -one.clone()], max(2));
        let quartic = powers_of(
            &[one.clone(), BigInt::zero(), BigInt::zero(), BigInt::zero(), -one],
            max(1) / 4,
        );
        let mut t_coeffs = vec![BigInt::zero(); p.degree() as usize + 1];
        for (e, c) in p.terms() {
            let term = poly_mul(
                &poly_mul(&plus[e[0] as usize], &minus[e[2] as usize]),
                &quartic[(e[1] / 4) as usize],
            );
            let c = BigInt::from(c.clone());
            for (k, x) in term.into_iter().enumerate() {
                t_coeffs[k] += &c * x;
            }
        }
        Self::from_t_coefficients(p.degree(), t_coeffs.into_iter().enumerate().map(|(k, c)| (k as u32, c)))
    }

    /// From `h` given directly as a polynomial in `t`.
    pub fn from_t_coefficients<I>(n: u32, terms: I) -> Result<HPolynomial>
    where
        I: IntoIterator<Item = (u32, BigInt)>,
    {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            if k % 4 != 0 {
                return Err(Error::NotGleason(format!("h has a nonzero t^{k} term")));
            }
            let i = (k / 4) as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, BigInt::zero());
            }
            coeffs[i] += c;
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(HPolynomial { n, coeffs })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Coefficients of `v^0, v^1, ...`.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, t: f64) -> f64 {
        let v = t.powi(4);
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * v + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact value at a rational `v`.
    pub fn eval_exact(&self, v: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * v + BigRational::from_integer(c.clone()))
    }
}

/// Coefficients `beta_0..beta_ell` with `h(t) = 2^n sum beta_s (t^4 - t^8)^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaVector {
    pub ell: usize,
    pub betas: Vec<BigRational>,
}

impl BetaVector {
    pub fn new(betas: Vec<BigRational>) -> BetaVector {
        BetaVector {
            ell: betas.len().saturating_sub(1),
            betas,
        }
    }

    pub fn from_ints(values: &[(i64, i64)]) -> BetaVector {
        BetaVector::new(
            values
                .iter()
                .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
                .collect(),
        )
    }
}

/// Signed coefficient of `v^m` in `(v - v^2)^s`.
fn gleason_entry(s: usize, m: usize) -> BigInt {
    if m < s || m > 2 * s {
        return BigInt::zero();
    }
    let b = BigInt::from(binomial(s as u64, (m - s) as u64));
    if (m - s) % 2 == 1 {
        -b
    } else {
        b
    }
}

pub fn beta_extract(p: &SwePoly) -> Result<BetaVector> {
    beta_from_h(&HPolynomial::from_swe(p)?)
}

/// Solves the triangular system for `beta` and checks that no residual
/// remains above degree `ell`.
pub fn beta_from_h(h: &HPolynomial) -> Result<BetaVector> {
    let ell = (h.n / 8) as usize;
    let scale = BigRational::from_integer(BigInt::one() << h.n);
    let target = |m: usize| {
        h.coeffs
            .get(m)
            .map_or_else(BigRational::zero, |c| BigRational::from_integer(c.clone()) / &scale)
    };
    let mut betas: Vec<BigRational> = Vec::with_capacity(ell + 1);
    for m in 0..=ell {
        let mut b = target(m);
        for (s, beta) in betas.iter().enumerate() {
            b -= beta * BigRational::from_integer(gleason_entry(s, m));
        }
        betas.push(b);
    }
    let top = h.coeffs.len().max(2 * ell + 1);
    for m in 0..top {
        let mut r = target(m);
        for (s, beta) in betas.iter().enumerate() {
            r -= beta * BigRational::from_integer(gleason_entry(s, m));
        }
        if !r.is_zero() {
            return Err(Error::NotGleason(format!("residual {r} at v^{m}")));
        }
    }
    Ok(BetaVector { ell, betas })
}

type RPoly = Vec<BigRational>;

fn trim(mut p: RPoly) -> RPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn eval_rational(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &[BigRational]) -> RPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect(),
    )
}

fn remainder(a: &[BigRational], b: &[BigRational]) -> RPoly {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn sign_changes(chain: &[RPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| eval_rational(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| if v.is_positive() { 1 } else { -1 })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in `(a, b]`, for `p(a) != 0`.
fn sturm_count(p: &[BigRational], a: &BigRational, b: &BigRational) -> usize {
    let mut chain = vec![p.to_vec(), derivative(p)];
    while chain.last().is_some_and(|q| !q.is_empty()) {
        let n = chain.len();
        let r: RPoly = remainder(&chain[n - 2], &chain[n - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    chain.retain(|q| !q.is_empty());
    sign_changes(&chain, a) - sign_changes(&chain, b)
}

/// Whether `g(u) = sum_{s >= 1} s beta_s u^(s-1)` is negative on all of
/// `(0, 1/4]`, decided exactly.
pub fn strong_condition_check(b: &BetaVector) -> bool {
    let g: RPoly = trim(
        b.betas
            .iter()
            .enumerate()
            .skip(1)
            .map(|(s, beta)| beta * BigRational::from_integer(BigInt::from(s)))
            .collect(),
    );
    if g.is_empty() {
        return false;
    }
    let low = g.iter().take_while(|c| c.is_zero()).count();
    let g = g[low..].to_vec();
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    if !eval_rational(&g, &quarter).is_negative() {
        return false;
    }
    sturm_count(&g, &BigRational::zero(), &quarter) == 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaGain {
    pub xi: BigRational,
    /// The strong condition holds, so `xi` is the secrecy gain and not only
    /// the value of the secrecy function at `tau = 1`.
    pub certified: bool,
}

/// `1 / sum beta_s 4^(-s)`.
pub fn gain_from_beta(b: &BetaVector) -> Result<BetaGain> {
    let mut denom = BigRational::zero();
    let mut w = BigRational::one();
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    for beta in &b.betas {
        denom += beta * &w;
        w *= &quarter;
    }
    if denom.is_zero() {
        return Err(Error::Domain("sum of beta_s 4^-s vanishes".into()));
    }
    Ok(BetaGain {
        xi: denom.recip(),
        certified: strong_condition_check(b),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperBound {
    pub n: u32,
    pub bound: BigRational,
    /// The coefficients multiplying `(3/4)^s` for `s >= 1` are positive.
    pub positivity_holds: bool,
}

/// Upper bound on the secrecy gain of Type I formally unimodular lattices
/// of dimension `n`, from the extremal theta series in the E8 basis.
pub fn type_i_upper_bound(n: u32) -> Result<UpperBound> {
    if !(2..=40).contains(&n) {
        return Err(Error::OutOfRange(format!("upper bound needs 2 <= n <= 40, got {n}")));
    }
    let ell = (n / 8) as usize;
    let truncation = 4 * ell;
    let t3 = jacobi_theta(ThetaKind::Three, 1, truncation);
    let t4 = jacobi_theta(ThetaKind::Four, 1, truncation);
    let t3_4 = t3.pow(4);
    let t4_4 = t4.pow(4);
    let e8 = t3_4.mul(&t3_4).sub(&t3_4.mul(&t4_4)).add(&t4_4.mul(&t4_4));
    let columns: Vec<Vec<BigRational>> = (0..=ell)
        .into_par_iter()
        .map(|s| {
            let series = t3.pow(n - 8 * s as u32).mul(&e8.pow(s as u32));
            (0..=ell)
                .map(|m| BigRational::from_integer(series.coefficient(4 * m)))
                .collect()
        })
        .collect();
    let s_matrix: linalg::Matrix = (0..=ell).map(|r| (0..=ell).map(|c| columns[c][r].clone()).collect()).collect();
    let inv = linalg::inverse(&s_matrix)?;
    let omega: Vec<BigRational> = (0..=ell)
        .map(|s| BigRational::new(BigInt::from(3).pow(s as u32), BigInt::from(4).pow(s as u32)))
        .collect();
    let weighted = |col: usize| -> BigRational { (0..=ell).map(|s| &omega[s] * &inv[s][col]).sum() };
    let denom = weighted(0);
    if denom.is_zero() {
        return Err(Error::Singular);
    }
    let positivity_holds = (1..=ell).all(|s| weighted(s).is_positive());
    Ok(UpperBound {
        n,
        bound: denom.recip(),
        positivity_holds,
    })
}

/// `vol * tau^(n/2) * Theta(i tau) - 1`.
pub fn flatness_factor(lattice: &LatticeSpec, tau: f64) -> Result<f64> {
    if tau.is_nan() || tau <= 0.0 {
        return Err(Error::Domain(format!("tau must be positive, got {tau}")));
    }
    let theta = lattice.theta_at(tau, 1e-12)?;
    Ok(lattice.volume * tau.powf(lattice.dim as f64 / 2.0) * theta - 1.0)
}

/// Largest `tau <= 1` with `flatness_factor <= 1/n`, to within `1e-6`.
pub fn tau_threshold(lattice: &LatticeSpec) -> Result<f64> {
    let target = 1.0 / lattice.dim as f64;
    if flatness_factor(lattice, 1.0)? <= target {
        return Ok(1.0);
    }
    let mut lo = 0.5;
    while flatness_factor(lattice, lo)? > target {
        lo /= 2.0;
        if lo < 1e-6 {
            return Err(Error::Domain("no tau in (0, 1) meets the flatness target".into()));
        }
    }
    let mut hi = (2.0 * lo).min(1.0);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if flatness_factor(lattice, mid)? <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `theta_3(i tau)^n / Theta(i tau)` for a volume-1 lattice.
pub fn secrecy_function(lattice: &LatticeSpec, tau: f64) -> Result<f64> {
    let theta = lattice.theta_at(tau, 1e-13)?;
    Ok(theta_value(ThetaKind::Three, tau).powi(lattice.dim as i32) / theta)
}

/// The same function through `h`: `2^n / h(t(tau))`.
pub fn secrecy_function_h(p: &SwePoly, tau: f64) -> Result<f64> {
    Ok(2f64.powi(p.degree() as i32) / h_of_t(p, t_of_tau(tau)?)?)
}

/// Secrecy function of the binary Construction A packing with distance
/// enumerator `w`: `theta_3(i tau)^n / w(theta_3(2 i tau), theta_2(2 i tau))`.
pub fn secrecy_function_binary(w: &WePoly, tau: f64) -> Result<f64> {
    if tau.is_nan() || tau <= 0.0 {
        return Err(Error::Domain(format!("tau must be positive, got {tau}")));
    }
    let n = w.degree() as i32;
    let denom = w.eval_f64([theta_value(ThetaKind::Three, 2.0 * tau), theta_value(ThetaKind::Two, 2.0 * tau)]);
    Ok(theta_value(ThetaKind::Three, tau).powi(n) / denom)
}

/// Maximises [`secrecy_function_binary`] over `ln tau` in `[-3, 3]`.
pub fn secrecy_gain_binary(w: &WePoly) -> Result<SecrecyReport> {
    let f = |x: f64| -secrecy_function_binary(w, x.exp()).unwrap_or(f64::NAN);
    let x = scan_then_refine(f, -3.0, 3.0, GOLDEN_TOL);
    let total: BigUint = w.total();
    let fsd = &total * &total == BigUint::one() << w.degree() && is_fsd_we(w);
    let tau_star = x.exp();
    Ok(SecrecyReport {
        t_star: t_of_tau(tau_star)?,
        tau_star,
        xi: secrecy_function_binary(w, tau_star)?,
        exact_xi: None,
        at_symmetry_point: x.abs() < SYMMETRY_TOL,
        strong_condition_verified: false,
        fsd,
        beta: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub t: f64,
    pub inv_h: f64,
    pub xi: f64,
}

/// `points` evenly spaced samples of `1/h(t)` and `2^n / h(t)` on `(0, 1)`.
pub fn curve(p: &SwePoly, points: usize) -> Result<Vec<CurvePoint>> {
    let scale = 2f64.powi(p.degree() as i32);
    (1..=points)
        .map(|i| {
            let t = i as f64 / (points + 1) as f64;
            let h = h_of_t(p, t)?;
            Ok(CurvePoint {
                t,
                inv_h: 1.0 / h,
                xi: scale / h,
            })
        })
        .collect()
}
