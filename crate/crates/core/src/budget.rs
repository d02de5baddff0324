//! Resource limits shared by every analysis.

use serde::{Deserialize, Serialize};

use crate::graph::DEFAULT_SUBGRAPH_CAP;
use crate::morphism::DEFAULT_SEARCH_BUDGET;

pub const SUBGRAPH_CAP_ENV: &str = "CONWAY_SUBGRAPH_CAP";
pub const SEARCH_BUDGET_ENV: &str = "CONWAY_SEARCH_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Most connected subgraphs enumerated for one graph.
    pub subgraph_cap: usize,
    /// Most nodes visited by one backtracking search.
    pub search_budget: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            subgraph_cap: DEFAULT_SUBGRAPH_CAP,
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

impl Budgets {
    /// Defaults, overridden by the environment where set and parseable.
    pub fn from_env() -> Budgets {
        let mut b = Budgets::default();
        if let Some(cap) = std::env::var(SUBGRAPH_CAP_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            b.subgraph_cap = cap;
        }
        if let Some(budget) = std::env::var(SEARCH_BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            b.search_budget = budget;
        }
        b
    }
}
