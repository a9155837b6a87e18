//! Exact scalars: symbols, Gaussian rationals, polynomials and linear solving.

mod gauss;
mod poly;
mod solve;

use alloc::string::String;
use alloc::sync::Arc;
use core::cmp::Ordering;
use core::fmt;

pub use gauss::GaussRat;
pub(crate) use poly::write_term;
pub use poly::{Poly, PowerProduct};
pub use solve::{linear_solve, LinearSolution};

/// A named real-valued symbol.
///
/// Identity and ordering are given by the creation index alone; the name is
/// only used for printing.
#[derive(Clone)]
pub struct Symbol {
    index: u32,
    name: Arc<str>,
}

impl Symbol {
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
    }
}

impl Eq for Symbol {}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index.cmp(&other.index)
    }
}

impl core::hash::Hash for Symbol {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.index.hash(state)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.name, self.index)
    }
}

/// Symbol registry. Every object built from the symbols of one session
/// belongs to that session; symbols from different sessions must not be mixed.
#[derive(Debug, Default)]
pub struct Session {
    next: u32,
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    /// Creates a fresh symbol. Names need not be unique.
    pub fn symbol(&mut self, name: impl Into<String>) -> Symbol {
        let index = self.next;
        self.next += 1;
        let name: String = name.into();
        Symbol { index, name: Arc::from(name.as_str()) }
    }

    pub fn symbols_created(&self) -> u32 {
        self.next
    }
}
