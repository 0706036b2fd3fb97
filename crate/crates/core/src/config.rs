//! Caps and evaluation budgets shared by every scan.

use crate::error::{Error, Result};

pub const ENV_CAP_ORDER: &str = "VARITAS_CAP_ORDER";
pub const ENV_CAP_BUDGET: &str = "VARITAS_CAP_BUDGET";

/// Resource limits. Every exhaustive scan charges its elementary products
/// against `budget` and fails with [`Error::Budget`] once it runs out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group that may be constructed.
    pub cap_order: usize,
    /// Largest group whose full subgroup lattice may be enumerated.
    pub cap_lattice: usize,
    /// Elementary products allowed per operation.
    pub budget: u64,
    /// Largest coordinate count `|A|^d` for the relatively free oracle.
    pub oracle_coordinates: usize,
    /// Largest relatively free object the oracle will close.
    pub oracle_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cap_order: 5040,
            cap_lattice: 60,
            budget: 100_000_000,
            oracle_coordinates: 4096,
            oracle_states: 200_000,
        }
    }
}

impl Limits {
    /// Defaults overridden by `VARITAS_CAP_ORDER` and `VARITAS_CAP_BUDGET`.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(v) = std::env::var(ENV_CAP_ORDER) {
            limits.cap_order = parse_positive(ENV_CAP_ORDER, &v)? as usize;
        }
        if let Ok(v) = std::env::var(ENV_CAP_BUDGET) {
            limits.budget = parse_positive(ENV_CAP_BUDGET, &v)?;
        }
        Ok(limits)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cap_order == 0
            || self.cap_lattice == 0
            || self.budget == 0
            || self.oracle_coordinates == 0
            || self.oracle_states == 0
        {
            return Err(Error::InvalidParam("all caps must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn meter(&self, required: u128) -> Meter {
        Meter { used: 0, budget: self.budget, required }
    }
}

fn parse_positive(name: &str, v: &str) -> Result<u64> {
    match v.trim().parse::<u64>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(Error::InvalidParam(format!("{name} must be a positive integer, got `{v}`"))),
    }
}

/// Running count of products spent by one scan.
#[derive(Debug)]
pub(crate) struct Meter {
    used: u64,
    budget: u64,
    required: u128,
}

impl Meter {
    #[inline]
    pub(crate) fn charge(&mut self, products: u64) -> Result<()> {
        self.used = self.used.saturating_add(products);
        if self.used > self.budget {
            return Err(Error::Budget { required: self.required.max(self.used as u128), budget: self.budget });
        }
        Ok(())
    }
}
