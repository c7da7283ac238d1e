//! Exhaustive search over double circulant codes and their odd extensions,
//! ranking the formally self-dual candidates by secrecy gain.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::constructions::{bdcc, odd_extension, pdcc, BorderParams, CirculantSeed, OddExtensionParams};
use crate::enumerators::{is_fsd_swe, min_distances_swe, swe, SwePoly};
use crate::secrecy::secrecy_gain;
use crate::z4::{Z4Code, Z4Matrix};
use crate::{Budget, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Pdcc,
    Bdcc,
    OextPdcc,
    OextBdcc,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "pdcc" => Ok(Family::Pdcc),
            "bdcc" => Ok(Family::Bdcc),
            "oext-pdcc" => Ok(Family::OextPdcc),
            "oext-bdcc" => Ok(Family::OextBdcc),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Pdcc => "pdcc",
            Family::Bdcc => "bdcc",
            Family::OextPdcc => "oext-pdcc",
            Family::OextBdcc => "oext-bdcc",
        })
    }
}

/// Fixed double circulant code extended by the odd-extension families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Circulant(CirculantSeed),
    Border(BorderParams),
}

impl Base {
    fn matrix(&self) -> Z4Matrix {
        match self {
            Base::Circulant(s) => s.matrix(),
            Base::Border(p) => p.matrix(),
        }
    }
}

/// A family of candidates, each identified by a vector of digits.
///
/// * `pdcc`: the seed `r`, base 4.
/// * `bdcc`: `(alpha, beta, gamma, r_1..r_{eta-1})`, base 4.
/// * odd extensions: `(a_1..a_eta, c_1..c_eta)`, base 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub family: Family,
    pub eta: usize,
    base: Option<Base>,
    base_matrix: Option<Z4Matrix>,
}

impl SearchSpace {
    pub fn new(family: Family, eta: usize, base: Option<Base>) -> Result<SearchSpace> {
        if eta == 0 || (family == Family::Bdcc && eta < 2) {
            return Err(Error::OutOfRange(format!("eta = {eta} is too small for {family}")));
        }
        match (family, &base) {
            (Family::Pdcc | Family::Bdcc, None) => {}
            (Family::OextPdcc, Some(Base::Circulant(s))) if s.len() == eta => {}
            (Family::OextBdcc, Some(Base::Border(p))) if p.eta() == eta => {}
            _ => {
                return Err(Error::Shape(format!(
                    "family {family} needs {} base of size {eta}",
                    match family {
                        Family::OextPdcc => "a circulant",
                        Family::OextBdcc => "a bordered",
                        _ => "no",
                    }
                )))
            }
        }
        let base_matrix = base.as_ref().map(Base::matrix);
        Ok(SearchSpace {
            family,
            eta,
            base,
            base_matrix,
        })
    }

    pub fn pdcc(eta: usize) -> Result<SearchSpace> {
        SearchSpace::new(Family::Pdcc, eta, None)
    }

    pub fn bdcc(eta: usize) -> Result<SearchSpace> {
        SearchSpace::new(Family::Bdcc, eta, None)
    }

    pub fn base(&self) -> Option<&Base> {
        self.base.as_ref()
    }

    fn radix(&self) -> u64 {
        match self.family {
            Family::Pdcc | Family::Bdcc => 4,
            _ => 2,
        }
    }

    pub fn digit_count(&self) -> usize {
        match self.family {
            Family::Pdcc => self.eta,
            Family::Bdcc => self.eta + 2,
            _ => 2 * self.eta,
        }
    }

    pub fn candidate_count(&self) -> u64 {
        self.radix().pow(self.digit_count() as u32)
    }

    /// Length of every candidate code.
    pub fn code_length(&self) -> usize {
        match self.family {
            Family::Pdcc | Family::Bdcc => 2 * self.eta,
            _ => 2 * self.eta + 1,
        }
    }

    /// Digits of the `index`-th candidate; index order is lexicographic
    /// order on digits.
    pub fn digits_at(&self, mut index: u64) -> Vec<u8> {
        let radix = self.radix();
        let mut d = vec![0u8; self.digit_count()];
        for slot in d.iter_mut().rev() {
            *slot = (index % radix) as u8;
            index /= radix;
        }
        d
    }

    pub fn build(&self, digits: &[u8]) -> Result<Z4Code> {
        if digits.len() != self.digit_count() || digits.iter().any(|&x| x as u64 >= self.radix()) {
            return Err(Error::Shape(format!("invalid parameter digits {digits:?}")));
        }
        let eta = self.eta;
        Ok(match self.family {
            Family::Pdcc => pdcc(&CirculantSeed::new(digits.to_vec())?),
            Family::Bdcc => bdcc(&BorderParams::new(
                digits[0],
                digits[1],
                digits[2],
                CirculantSeed::new(digits[3..].to_vec())?,
            )?),
            Family::OextPdcc | Family::OextBdcc => odd_extension(&OddExtensionParams::new(
                self.base_matrix.clone().expect("checked in new"),
                digits[..eta].to_vec(),
                digits[eta..].to_vec(),
            )?),
        })
    }

    /// Human-readable parameters: `r` for pdcc, `alpha,beta,gamma;r` for
    /// bdcc and `a;c` for odd extensions.
    pub fn describe(&self, digits: &[u8]) -> String {
        let join = |v: &[u8]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self.family {
            Family::Pdcc => join(digits),
            Family::Bdcc => format!("{};{}", join(&digits[..3]), join(&digits[3..])),
            _ => format!("{};{}", join(&digits[..self.eta]), join(&digits[self.eta..])),
        }
    }

    /// Images of `digits` under rotations and reversal of the circulant
    /// seed and global negation.
    pub fn orbit(&self, digits: &[u8]) -> Result<Vec<Vec<u8>>> {
        let (head, seed) = match self.family {
            Family::Pdcc => (0, digits),
            Family::Bdcc => (3, &digits[3..]),
            _ => return Err(Error::Domain("symmetry reduction applies to pdcc and bdcc only".into())),
        };
        let len = seed.len();
        let mut out = Vec::with_capacity(4 * len);
        for neg in [false, true] {
            for rev in [false, true] {
                for shift in 0..len {
                    let mut d = digits[..head].to_vec();
                    d.extend((0..len).map(|j| {
                        let src = if rev { (len - j) % len } else { j };
                        seed[(src + shift) % len]
                    }));
                    if neg {
                        for x in d.iter_mut() {
                            *x = (4 - *x) % 4;
                        }
                    }
                    out.push(d);
                }
            }
        }
        Ok(out)
    }

    /// Lexicographically smallest element of the orbit.
    pub fn canonical(&self, digits: &[u8]) -> Result<Vec<u8>> {
        Ok(self.orbit(digits)?.into_iter().min().expect("orbit is nonempty"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    /// Canonical representatives in increasing lexicographic order.
    pub canonical: Vec<Vec<u8>>,
    pub total: u64,
    pub factor: f64,
}

/// One representative per orbit of the swe-preserving symmetry group.
pub fn symmetry_reduce(space: &SearchSpace) -> Result<Reduction> {
    let total = space.candidate_count();
    space.orbit(&space.digits_at(0))?;
    let canonical: Vec<Vec<u8>> = (0..total)
        .into_par_iter()
        .filter_map(|i| {
            let d = space.digits_at(i);
            (space.canonical(&d).ok()? == d).then_some(d)
        })
        .collect();
    let factor = total as f64 / canonical.len() as f64;
    Ok(Reduction {
        canonical,
        total,
        factor,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Number of ranked results to keep.
    pub limit: Option<usize>,
    /// Stop after this many candidates and flag the result incomplete.
    pub max_candidates: Option<u64>,
    pub symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Budget::default(),
            threads: None,
            limit: None,
            max_candidates: None,
            symmetry: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub rank: usize,
    pub params: String,
    pub digits: Vec<u8>,
    pub swe: SwePoly,
    pub is_fsd: bool,
    pub xi: f64,
    pub d_lee: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub results: Vec<SearchResult>,
    /// Best gain found, never below the uncoded baseline 1.
    pub best_xi: f64,
    pub evaluated: u64,
    pub total: u64,
    pub fsd_count: u64,
    pub distinct_swe: usize,
    pub reduction_factor: f64,
    pub incomplete: bool,
}

pub fn run_search(space: &SearchSpace, options: &SearchOptions) -> Result<SearchOutcome> {
    match options.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::Domain(e.to_string()))?
            .install(|| search_inner(space, options)),
        None => search_inner(space, options),
    }
}

fn search_inner(space: &SearchSpace, options: &SearchOptions) -> Result<SearchOutcome> {
    options.budget.check(space.code_length() as u32)?;
    let total = space.candidate_count();
    let use_symmetry = options.symmetry && matches!(space.family, Family::Pdcc | Family::Bdcc);
    let (mut candidates, reduction_factor) = if use_symmetry {
        let r = symmetry_reduce(space)?;
        (r.canonical, r.factor)
    } else {
        ((0..total).map(|i| space.digits_at(i)).collect::<Vec<_>>(), 1.0)
    };
    let mut incomplete = false;
    if let Some(max) = options.max_candidates {
        if (candidates.len() as u64) > max {
            candidates.truncate(max as usize);
            incomplete = true;
        }
    }

    let scored: Vec<Option<(Vec<u8>, SwePoly)>> = candidates
        .par_iter()
        .map(|d| -> Result<Option<(Vec<u8>, SwePoly)>> {
            let code = space.build(d)?;
            if code.cardinality_log2() as usize != code.n() {
                return Ok(None);
            }
            let p = swe(&code, options.budget)?;
            Ok(is_fsd_swe(&p).then(|| (d.clone(), p)))
        })
        .collect::<Result<_>>()?;
    let fsd: Vec<(Vec<u8>, SwePoly)> = scored.into_iter().flatten().collect();

    let distinct: Vec<&SwePoly> = fsd.iter().map(|(_, p)| p).collect::<BTreeSet<_>>().into_iter().collect();
    let gains: Vec<f64> = distinct
        .par_iter()
        .map(|p| secrecy_gain(p).map(|r| r.xi))
        .collect::<Result<_>>()?;
    let xi_of: BTreeMap<&SwePoly, f64> = distinct.iter().copied().zip(gains).collect();

    let mut ranked: Vec<(f64, &Vec<u8>, &SwePoly)> = fsd.iter().map(|(d, p)| (xi_of[p], d, p)).collect();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(b.1)));
    let keep = options.limit.unwrap_or(ranked.len()).min(ranked.len());
    let results: Vec<SearchResult> = ranked[..keep]
        .iter()
        .enumerate()
        .map(|(i, (xi, d, p))| SearchResult {
            rank: i + 1,
            params: space.describe(d),
            digits: (*d).clone(),
            swe: (*p).clone(),
            is_fsd: true,
            xi: *xi,
            d_lee: min_distances_swe(p).map_or(0, |(l, _)| l),
        })
        .collect();
    let best_xi = ranked.first().map_or(1.0, |r| r.0.max(1.0));
    Ok(SearchOutcome {
        results,
        best_xi,
        evaluated: candidates.len() as u64,
        total,
        fsd_count: fsd.len() as u64,
        distinct_swe: distinct.len(),
        reduction_factor,
        incomplete,
    })
}

/// `rank,params,d_lee,xi,is_fsd,swe_file` rows; `swe_file` names the file
/// the caller stores each swe under.
pub fn results_csv(results: &[SearchResult], swe_file: impl Fn(&SearchResult) -> String) -> String {
    let mut s = String::from("rank,params,d_lee,xi,is_fsd,swe_file\n");
    for r in results {
        s.push_str(&format!(
            "{},\"{}\",{},{:.6},{},{}\n",
            r.rank,
            r.params,
            r.d_lee,
            r.xi,
            r.is_fsd,
            swe_file(r)
        ));
    }
    s
}
