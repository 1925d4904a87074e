//! Exhaustive and budgeted searches: regular sets, support feasibility,
//! exact covers and section packings.

pub mod clique;
pub mod cover;
pub mod engine;
pub mod regular;
pub mod span;

pub use clique::{disjoint_section_packing, max_clique, Packing};
pub use cover::{exact_cover, line_spread_search, CoverResult, SpreadSearch};
pub use span::{span_search, SpanModel};
pub use regular::{
    classify_o6plus_set, enumerate_ovoids, enumerate_regular_sets, feasibility_probe, regular_census, Catalog,
    CensusEntry, Decomposition, ProbeResult, ProbeVerdict, RegularSearch,
};

use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

/// Limits for a search. Hitting any of them makes the result incomplete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
    pub max_results: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 1_000_000_000, max_time: None, max_results: 1_000_000 }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes, ..Default::default() }
    }

    pub fn with_results(mut self, max_results: usize) -> Self {
        self.max_results = max_results;
        self
    }

    pub fn with_time(mut self, t: Duration) -> Self {
        self.max_time = Some(t);
        self
    }
}

/// Shared, thread-safe budget accounting.
pub(crate) struct Budget {
    limits: SearchBudget,
    start: Instant,
    nodes: AtomicU64,
    results: AtomicUsize,
    stop: AtomicBool,
    exhausted: AtomicBool,
}

impl Budget {
    pub(crate) fn new(limits: &SearchBudget) -> Self {
        Budget {
            limits: limits.clone(),
            start: Instant::now(),
            nodes: AtomicU64::new(0),
            results: AtomicUsize::new(0),
            stop: AtomicBool::new(false),
            exhausted: AtomicBool::new(false),
        }
    }

    fn halt(&self) {
        self.exhausted.store(true, Ordering::Relaxed);
        self.stop.store(true, Ordering::Relaxed);
    }

    /// Counts a node; false once the search must stop.
    pub(crate) fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if n >= self.limits.max_nodes {
            self.halt();
            return false;
        }
        if n % 4096 == 0 && self.limits.max_time.is_some_and(|t| self.start.elapsed() > t) {
            self.halt();
            return false;
        }
        true
    }

    /// Reserves a result slot; false if the cap is already reached.
    pub(crate) fn record(&self) -> bool {
        let r = self.results.fetch_add(1, Ordering::Relaxed);
        if r >= self.limits.max_results {
            self.halt();
            return false;
        }
        if r + 1 == self.limits.max_results {
            self.halt();
        }
        true
    }

    pub(crate) fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    /// Whether a limit cut the search short.
    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

#[cfg(test)]
mod tests;
