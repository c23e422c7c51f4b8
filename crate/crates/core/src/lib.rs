//! Finite Clifford semigroups, their multiplier monoids, twisted partial group
//! actions, partial group cohomology and the extension problem for partial
//! abstract kernels, all by exhaustive computation at desk scale.

pub mod action;
pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod json;
pub mod kernel;
pub mod multiplier;
pub mod semigroup;
pub mod sigma;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

pub use error::{Error, Result};
pub use semigroup::{Carrier, Clifford, FiniteGroup, FiniteSemigroup, Ideal, NONE};

use multiplier::MultiplierMonoid;

/// Enumeration limits. Exceeding one is a hard error, never a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest carrier whose multiplier monoid may be enumerated.
    pub multiplier_order: usize,
    /// Search nodes allowed while enumerating cocycles or coboundaries.
    pub cochain_nodes: u64,
    /// Largest unit group used to materialize a full conjugacy orbit.
    pub orbit: usize,
    /// Candidate assignments examined by the kernel survey.
    pub kernels: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            multiplier_order: 12,
            cochain_nodes: 10_000_000,
            orbit: 5040,
            kernels: 1_000_000,
        }
    }
}

/// Largest values actually reached against each cap.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Usage {
    pub multiplier_order: usize,
    pub cochain_nodes: u64,
    pub orbit: usize,
    pub kernels: u64,
}

impl Usage {
    /// True when some count reached half of its cap, or a multiplier carrier
    /// came within two elements of the order cap (cost is exponential in it).
    pub fn approached(&self, caps: &Caps) -> bool {
        self.multiplier_order + 2 >= caps.multiplier_order
            || 2 * self.cochain_nodes >= caps.cochain_nodes
            || 2 * self.orbit >= caps.orbit
            || 2 * self.kernels >= caps.kernels
    }
}

type MonoidKey = (Vec<usize>, Vec<usize>);

/// Caps, usage accounting and a cache of multiplier monoids keyed by
/// (parent table, carrier members).
pub struct Session {
    caps: Caps,
    usage: Mutex<Usage>,
    monoids: Mutex<HashMap<MonoidKey, Arc<MultiplierMonoid>>>,
}

impl Default for Session {
    fn default() -> Self {
        Session::new(Caps::default())
    }
}

impl Session {
    pub fn new(caps: Caps) -> Self {
        Session {
            caps,
            usage: Mutex::new(Usage::default()),
            monoids: Mutex::new(HashMap::new()),
        }
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn usage(&self) -> Usage {
        *self.usage.lock().unwrap()
    }

    pub(crate) fn note(&self, f: impl FnOnce(&mut Usage)) {
        f(&mut self.usage.lock().unwrap());
    }

    /// The multiplier monoid of `c`, computed once per session.
    pub fn monoid(&self, c: &Carrier) -> Result<Arc<MultiplierMonoid>> {
        let key = (c.parent().table().to_vec(), c.members().to_vec());
        if let Some(m) = self.monoids.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let m = Arc::new(multiplier::enumerate_multipliers(c, self.caps.multiplier_order)?);
        self.note(|u| u.multiplier_order = u.multiplier_order.max(c.len()));
        self.monoids.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }
}
