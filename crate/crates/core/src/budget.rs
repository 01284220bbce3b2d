//! Work budgets guarding the exhaustive searches.

use num_bigint::BigInt;

/// Rough work-unit budget for enumeration and search routines. The default is
/// sized so every desk-scale instance fits; `MCCLAB_BUDGET` overrides it.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_work: u64,
}

pub const DEFAULT_WORK: u64 = 50_000_000;

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_work: DEFAULT_WORK,
        }
    }
}

impl Budget {
    pub fn from_env() -> Self {
        match std::env::var("MCCLAB_BUDGET") {
            Ok(s) => match s.trim().parse::<u64>() {
                Ok(v) if v > 0 => Self { max_work: v },
                _ => Self::default(),
            },
            Err(_) => Self::default(),
        }
    }

    pub fn unlimited() -> Self {
        Self { max_work: u64::MAX }
    }

    pub fn admits(&self, estimate: &BigInt) -> bool {
        estimate <= &BigInt::from(self.max_work)
    }
}
