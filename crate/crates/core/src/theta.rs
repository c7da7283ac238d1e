//! Truncated q-series on a quarter-unit exponent grid and the theta series
//! built from them.
//!
//! A stored exponent `e` stands for `q^(e/4)` with `q = exp(i*pi*z)`; every
//! theta function and lattice theta series used here lives on that grid.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::enumerators::{JwePoly, Poly, SwePoly, WePoly};
use crate::{Error, Result};

pub const DEFAULT_TRUNCATION: usize = 200;

/// Exact series `sum_{e <= T} c_e q^(e/4)`; terms beyond `T` are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaKind {
    Two,
    Three,
    Four,
}

impl QSeries {
    pub fn zero(truncation: usize) -> QSeries {
        QSeries {
            coeffs: vec![BigInt::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> QSeries {
        let mut s = QSeries::zero(truncation);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Terms with exponent above `truncation` are dropped.
    pub fn from_terms<I: IntoIterator<Item = (usize, BigInt)>>(truncation: usize, terms: I) -> QSeries {
        let mut s = QSeries::zero(truncation);
        for (e, c) in terms {
            if e <= truncation {
                s.coeffs[e] += c;
            }
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn truncate(&self, truncation: usize) -> QSeries {
        let t = truncation.min(self.truncation());
        QSeries {
            coeffs: self.coeffs[..=t].to_vec(),
        }
    }

    pub fn add(&self, o: &QSeries) -> QSeries {
        let t = self.truncation().min(o.truncation());
        QSeries {
            coeffs: (0..=t).map(|e| &self.coeffs[e] + &o.coeffs[e]).collect(),
        }
    }

    pub fn sub(&self, o: &QSeries) -> QSeries {
        let t = self.truncation().min(o.truncation());
        QSeries {
            coeffs: (0..=t).map(|e| &self.coeffs[e] - &o.coeffs[e]).collect(),
        }
    }

    pub fn mul(&self, o: &QSeries) -> QSeries {
        let t = self.truncation().min(o.truncation());
        let mut out = QSeries::zero(t);
        let rhs: Vec<(usize, &BigInt)> = o.terms().collect();
        for (e1, c1) in self.terms() {
            if e1 > t {
                break;
            }
            for &(e2, c2) in &rhs {
                if e1 + e2 > t {
                    break;
                }
                out.coeffs[e1 + e2] += c1 * c2;
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> QSeries {
        let mut result = QSeries::one(self.truncation());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn scale(&self, k: &BigInt) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Fails unless every coefficient is divisible by `k`.
    pub fn div_exact(&self, k: &BigInt) -> Result<QSeries> {
        if k.is_zero() {
            return Err(Error::Domain("division of a series by zero".into()));
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (e, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(Error::Domain(format!(
                    "coefficient {c} at q^({e}/4) is not divisible by {k}"
                )));
            }
            coeffs.push(q);
        }
        Ok(QSeries { coeffs })
    }

    /// Plain truncated sum `sum c_e exp(-pi tau e / 4)`, with no tail bound.
    pub fn eval(&self, tau: f64) -> f64 {
        self.terms()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * (-std::f64::consts::PI * tau * e as f64 / 4.0).exp())
            .sum()
    }

    /// Evaluates at `z = i tau` with a bound on the omitted tail.
    ///
    /// The bound assumes the series counts the points of a packing contained
    /// in `(1/2) Z^dim` (true for every theta series built in this module),
    /// so at most `V_dim(sqrt(e) + sqrt(dim)/2)` points have exponent `<= e`.
    pub fn eval_certified(&self, tau: f64, dim: usize, tolerance: f64) -> Result<Evaluation> {
        if tau.is_nan() || tau <= 0.0 {
            return Err(Error::Domain(format!("tau must be positive, got {tau}")));
        }
        let tail_bound = tail_bound(self.truncation(), dim, tau);
        if tail_bound.is_nan() || tail_bound > tolerance {
            return Err(Error::TailBound {
                bound: tail_bound,
                tolerance,
                tau,
            });
        }
        Ok(Evaluation {
            value: self.eval(tau),
            tail_bound,
        })
    }

    /// `exponent,coefficient` lines with exponents as reduced fractions.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("exponent,coefficient\n");
        for (e, c) in self.terms() {
            let _ = writeln!(s, "{},{}", quarter_exponent(e), c);
        }
        s
    }
}

/// `e/4` in lowest terms: `"9/4"`, `"1/2"`, `"2"`.
pub fn quarter_exponent(e: usize) -> String {
    let g = e.gcd(&4).max(1);
    let (num, den) = (e / g, 4 / g);
    if e == 0 {
        "0".into()
    } else if den == 1 {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub tail_bound: f64,
}

fn ln_gamma_half_integer(twice: usize) -> f64 {
    // ln Gamma(twice / 2) for twice >= 1.
    if twice.is_multiple_of(2) {
        (1..twice / 2).map(|k| (k as f64).ln()).sum()
    } else {
        let mut acc = 0.5 * std::f64::consts::PI.ln();
        let mut x = 0.5;
        while x < twice as f64 / 2.0 - 0.25 {
            acc += f64::ln(x);
            x += 1.0;
        }
        acc
    }
}

fn ln_ball_volume(dim: usize, radius: f64) -> f64 {
    let n = dim as f64;
    0.5 * n * std::f64::consts::PI.ln() - ln_gamma_half_integer(dim + 2) + n * radius.ln()
}

/// Upper bound on `sum_{e > T} N(e) exp(-pi tau e / 4)`, obtained by
/// summation by parts against the cumulative count bound.
pub(crate) fn tail_bound(truncation: usize, dim: usize, tau: f64) -> f64 {
    let rate = std::f64::consts::PI * tau / 4.0;
    let drop = -(-rate).exp_m1();
    let half = (dim as f64).sqrt() / 2.0;
    let mut acc = 0.0f64;
    let mut prev = f64::INFINITY;
    let mut e = truncation + 1;
    let limit = truncation + 50_000_000;
    loop {
        let ln_term = ln_ball_volume(dim, (e as f64).sqrt() + half) - rate * e as f64;
        let term = ln_term.exp() * drop;
        acc += term;
        if term < prev && term <= acc * 1e-17 {
            break;
        }
        prev = term;
        e += 1;
        if e > limit || !acc.is_finite() {
            return f64::INFINITY;
        }
    }
    acc
}

/// `theta_kind(scale * z)` truncated at `truncation` quarter units.
pub fn jacobi_theta(kind: ThetaKind, scale: usize, truncation: usize) -> QSeries {
    assert!(scale >= 1, "argument scale must be positive");
    let mut s = QSeries::zero(truncation);
    match kind {
        ThetaKind::Three | ThetaKind::Four => {
            s.coeffs[0] = BigInt::one();
            for m in 1usize.. {
                let e = 4 * scale * m * m;
                if e > truncation {
                    break;
                }
                let sign = if kind == ThetaKind::Four && m % 2 == 1 { -2 } else { 2 };
                s.coeffs[e] = BigInt::from(sign);
            }
        }
        ThetaKind::Two => {
            for m in 0usize.. {
                let e = scale * (2 * m + 1) * (2 * m + 1);
                if e > truncation {
                    break;
                }
                s.coeffs[e] = BigInt::from(2);
            }
        }
    }
    s
}

/// `theta_2(scale * z) / 2`.
pub fn half_theta2(scale: usize, truncation: usize) -> QSeries {
    jacobi_theta(ThetaKind::Two, scale, truncation)
        .div_exact(&BigInt::from(2))
        .expect("theta_2 coefficients are even")
}

/// Evaluates `p(s_1, ..., s_V)` with memoised powers of each series.
pub fn substitute<const V: usize>(p: &Poly<BigUint, V>, series: [&QSeries; V]) -> QSeries {
    let truncation = series.iter().map(|s| s.truncation()).min().unwrap_or(0);
    let mut powers: Vec<Vec<QSeries>> = Vec::with_capacity(V);
    for v in 0..V {
        let max = p.terms().keys().map(|e| e[v]).max().unwrap_or(0);
        let mut pw = vec![QSeries::one(truncation)];
        for _ in 0..max {
            let next = pw.last().unwrap().mul(series[v]);
            pw.push(next);
        }
        powers.push(pw);
    }
    let terms: Vec<_> = p.terms().iter().collect();
    terms
        .par_iter()
        .map(|(e, c)| {
            let mut acc = powers[0][e[0] as usize].clone();
            for v in 1..V {
                acc = acc.mul(&powers[v][e[v] as usize]);
            }
            acc.scale(&BigInt::from((*c).clone()))
        })
        .reduce(|| QSeries::zero(truncation), |a, b| a.add(&b))
}

/// Theta series of `(1/2)(C + 4 Z^n)`:
/// `swe(theta_3(4z), theta_2(z)/2, theta_2(4z))`.
pub fn theta_a4(p: &SwePoly, truncation: usize) -> QSeries {
    let t3 = jacobi_theta(ThetaKind::Three, 4, truncation);
    let h2 = half_theta2(1, truncation);
    let t2 = jacobi_theta(ThetaKind::Two, 4, truncation);
    substitute(p, [&t3, &h2, &t2])
}

/// Theta series of the packing `(1/2)(A1 + 2A2 + 4Z^n)`:
/// `jwe(theta_3(4z), theta_2(4z), theta_2(z)/2, theta_2(z)/2)`.
pub fn theta_construction_c(p: &JwePoly, truncation: usize) -> QSeries {
    let t3 = jacobi_theta(ThetaKind::Three, 4, truncation);
    let t2 = jacobi_theta(ThetaKind::Two, 4, truncation);
    let h2 = half_theta2(1, truncation);
    substitute(p, [&t3, &t2, &h2, &h2])
}

/// Theta series of `(1/sqrt 2)(A + 2Z^n)`: `W(theta_3(2z), theta_2(2z))`.
pub fn theta_binary_a(w: &WePoly, truncation: usize) -> QSeries {
    let t3 = jacobi_theta(ThetaKind::Three, 2, truncation);
    let t2 = jacobi_theta(ThetaKind::Two, 2, truncation);
    substitute(w, [&t3, &t2])
}

fn sum_until_small(mut f: impl FnMut(u64) -> f64) -> f64 {
    let mut acc = 0.0;
    for m in 0.. {
        let t = f(m);
        acc += t;
        if t.abs() <= 1e-18 * acc.abs() && m > 0 {
            break;
        }
    }
    acc
}

fn theta_direct(kind: ThetaKind, tau: f64) -> f64 {
    let pi = std::f64::consts::PI;
    match kind {
        ThetaKind::Three => 1.0 + 2.0 * sum_until_small(|m| (-pi * tau * ((m + 1) * (m + 1)) as f64).exp()),
        ThetaKind::Four => {
            1.0 + 2.0
                * sum_until_small(|m| {
                    let s = if m % 2 == 0 { -1.0 } else { 1.0 };
                    s * (-pi * tau * ((m + 1) * (m + 1)) as f64).exp()
                })
        }
        ThetaKind::Two => 2.0 * sum_until_small(|m| (-pi * tau * (m as f64 + 0.5).powi(2)).exp()),
    }
}

/// `theta_kind(i tau)` to double precision; for `tau < 1` the modular
/// transformation is used so the sums converge quickly.
pub fn theta_value(kind: ThetaKind, tau: f64) -> f64 {
    if tau >= 1.0 {
        return theta_direct(kind, tau);
    }
    let scale = 1.0 / tau.sqrt();
    let dual = match kind {
        ThetaKind::Three => ThetaKind::Three,
        ThetaKind::Two => ThetaKind::Four,
        ThetaKind::Four => ThetaKind::Two,
    };
    scale * theta_direct(dual, 1.0 / tau)
}

/// A lattice (or packing) described by its dimension, volume and theta
/// series.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSpec {
    pub dim: usize,
    pub volume: f64,
    pub theta: QSeries,
}

impl LatticeSpec {
    pub fn new(dim: usize, volume: f64, theta: QSeries) -> Result<LatticeSpec> {
        if volume.is_nan() || volume <= 0.0 {
            return Err(Error::Domain(format!("volume must be positive, got {volume}")));
        }
        Ok(LatticeSpec { dim, volume, theta })
    }

    /// `(1/2)(C + 4Z^n)` from the swe of `C`; volume `2^n / |C|`.
    pub fn a4_from_swe(p: &SwePoly, truncation: usize) -> LatticeSpec {
        let n = p.degree() as i32;
        let size = p.total().to_f64().unwrap_or(f64::INFINITY);
        LatticeSpec {
            dim: n as usize,
            volume: 2f64.powi(n) / size,
            theta: theta_a4(p, truncation),
        }
    }

    /// `Z^n` with theta series `theta_3(z)^n`.
    pub fn integer(n: usize, truncation: usize) -> LatticeSpec {
        LatticeSpec {
            dim: n,
            volume: 1.0,
            theta: jacobi_theta(ThetaKind::Three, 1, truncation).pow(n as u32),
        }
    }

    /// Value of the theta series at `i tau`, with the truncation tail
    /// certified below `rel_tol` times the value.
    pub fn theta_at(&self, tau: f64, rel_tol: f64) -> Result<f64> {
        let rough = self.theta.eval(tau).abs().max(1.0);
        Ok(self.theta.eval_certified(tau, self.dim, rel_tol * rough)?.value)
    }
}

/// `|Theta_L(i tau) - vol(L*) tau^(-n/2) Theta_L*(i / tau)|`.
pub fn jacobi_identity_check(lattice: &LatticeSpec, dual: &LatticeSpec, tau: f64) -> Result<f64> {
    let lhs = lattice.theta_at(tau, 1e-13)?;
    let rhs = dual.volume * tau.powf(-(lattice.dim as f64) / 2.0) * dual.theta_at(1.0 / tau, 1e-13)?;
    Ok((lhs - rhs).abs())
}

impl Default for QSeries {
    fn default() -> Self {
        QSeries::one(DEFAULT_TRUNCATION)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta3_leading_terms() {
        let t = jacobi_theta(ThetaKind::Three, 1, 64);
        let got: Vec<(usize, i64)> = t.terms().map(|(e, c)| (e, c.to_i64().unwrap())).collect();
        assert_eq!(got, vec![(0, 1), (4, 2), (16, 2), (36, 2), (64, 2)]);
    }

    #[test]
    fn theta2_starts_at_quarter() {
        let t = jacobi_theta(ThetaKind::Two, 1, 20);
        assert_eq!(t.terms().next().map(|(e, c)| (e, c.clone())), Some((1, BigInt::from(2))));
    }

    #[test]
    fn exponent_formatting() {
        assert_eq!(quarter_exponent(0), "0");
        assert_eq!(quarter_exponent(9), "9/4");
        assert_eq!(quarter_exponent(2), "1/2");
        assert_eq!(quarter_exponent(8), "2");
    }

    #[test]
    fn div_exact_rejects_remainders() {
        let t = jacobi_theta(ThetaKind::Three, 1, 16);
        assert!(t.div_exact(&BigInt::from(2)).is_err());
    }

    #[test]
    fn ln_gamma_matches_factorials() {
        assert!((ln_gamma_half_integer(10) - 24f64.ln()).abs() < 1e-12);
        let g = ln_gamma_half_integer(5); // Gamma(5/2) = 3 sqrt(pi) / 4
        assert!((g - (0.75 * std::f64::consts::PI.sqrt()).ln()).abs() < 1e-12);
    }

    #[test]
    fn theta3_at_one() {
        assert!((theta_value(ThetaKind::Three, 1.0) - 1.086_434_811_213_308).abs() < 1e-14);
        let t = theta_value(ThetaKind::Four, 1.0) / theta_value(ThetaKind::Three, 1.0);
        assert!((t - 2f64.powf(-0.25)).abs() < 1e-14);
    }
}
