//! Formally self-dual codes over Z4, the Construction A4 / Construction C
//! lattices they induce, and wiretap secrecy figures of merit for them.
//!
//! The crate is organised bottom-up:
//!
//! * [`z4`] and [`binary`]: exact linear algebra over Z4 and F2, standard
//!   form, duals and codeword enumeration.
//! * [`enumerators`]: weight enumerators (we, swe, jwe), MacWilliams
//!   transforms and formal self-duality.
//! * [`constructions`]: nested binary sums, Reed-Muller chains, double
//!   circulant codes and odd extensions.
//! * [`theta`]: truncated q-series on a quarter-unit grid and lattice theta
//!   series.
//! * [`secrecy`]: secrecy function and gain, Gleason coefficients, upper
//!   bounds and the flatness factor.
//! * [`search`]: exhaustive search over double circulant families.

pub mod binary;
pub mod catalog;
pub mod constructions;
pub mod enumerators;
mod error;
pub mod io;
mod linalg;
pub mod search;
pub mod secrecy;
pub mod theta;
pub mod z4;

pub use error::{Error, Result};

/// Cap on the number of codewords an enumeration may visit, stored as a
/// base-2 logarithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub log2: u32,
}

impl Budget {
    pub const DEFAULT_LOG2: u32 = 26;

    pub fn new(log2: u32) -> Self {
        Budget { log2 }
    }

    pub fn check(&self, required_log2: u32) -> Result<()> {
        if required_log2 > self.log2 {
            Err(Error::BudgetExceeded {
                required_log2,
                budget_log2: self.log2,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LOG2)
    }
}
