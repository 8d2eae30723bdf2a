//! Enumeration and search caps.
//!
//! Every exhaustive routine takes its bound from a [`Caps`] value so that the
//! limits are explicit and recorded in certificates. The only environment
//! dependence is `NAW_MAX_ORDER`, which overrides [`Caps::max_order`].

use serde::Serialize;

use crate::error::{NawError, Result};

pub const ENV_MAX_ORDER: &str = "NAW_MAX_ORDER";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest group that may be tabulated (multiplication table is order²).
    pub max_order: usize,
    /// Largest common order accepted by `iso_search`.
    pub iso_order: usize,
    /// Largest special group handed to the decomposition search.
    pub special_order: usize,
    /// Bound on |Z(G_1)|·|Z(G_2)| for maximality and poset enumeration.
    pub poset: usize,
    /// Word operations allowed per layer of the modular power-sum search.
    pub waring_work: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_order: 4096, iso_order: 1 << 12, special_order: 243, poset: 1 << 10, waring_work: 1 << 28 }
    }
}

impl Caps {
    /// Defaults, with `max_order` overridden by `NAW_MAX_ORDER` when set.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = std::env::var(ENV_MAX_ORDER).ok().and_then(|s| s.trim().parse().ok()) {
            caps.max_order = v;
        }
        caps
    }

    pub(crate) fn check(&self, what: &str, size: usize, cap: usize) -> Result<()> {
        if size > cap {
            return Err(NawError::CapExceeded { what: what.to_string(), size, cap });
        }
        Ok(())
    }

    pub(crate) fn check_order(&self, what: &str, size: usize) -> Result<()> {
        self.check(what, size, self.max_order)
    }
}
