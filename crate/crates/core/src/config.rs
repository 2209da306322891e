use crate::error::{Result, TropError};
use crate::par::Exec;

/// Environment variable that overrides the search budgets.
pub const BUDGET_ENV: &str = "TROPRANK_BUDGET";

/// Search budgets, size guards and execution mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub exec: Exec,
    /// Nodes of the cover search behind the exact Barvinok rank.
    pub barvinok_budget: u64,
    /// Square minors examined by the tropical rank search.
    pub minor_budget: u64,
    /// Partial states explored while enumerating arrangement vertices.
    pub vertex_budget: usize,
    /// Largest `d` accepted by hull cell enumeration.
    pub hull_max_rows: usize,
    /// Largest `n` accepted by hull cell enumeration.
    pub hull_max_cols: usize,
    /// Largest column count for subset enumeration in strong independence.
    pub subset_max_cols: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            exec: Exec::default(),
            barvinok_budget: 5_000_000,
            minor_budget: 3_000_000,
            vertex_budget: 2_000_000,
            hull_max_rows: 5,
            hull_max_cols: 8,
            subset_max_cols: 16,
        }
    }
}

impl Config {
    pub fn sequential() -> Self {
        Config {
            exec: Exec::Sequential,
            ..Config::default()
        }
    }

    /// Raises the hull guards to at least `rows x cols`.
    pub fn with_hull_limits(mut self, rows: usize, cols: usize) -> Self {
        self.hull_max_rows = self.hull_max_rows.max(rows);
        self.hull_max_cols = self.hull_max_cols.max(cols);
        self
    }

    /// Defaults, with budgets taken from `TROPRANK_BUDGET` when it is set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Config::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            cfg.set_budget(&raw)?;
        }
        Ok(cfg)
    }

    /// Sets both search budgets from a positive integer literal.
    pub fn set_budget(&mut self, raw: &str) -> Result<()> {
        let budget: u64 = raw.trim().parse().ok().filter(|&b| b > 0).ok_or_else(|| {
            TropError::domain(format!(
                "{BUDGET_ENV} must be a positive integer, got {raw:?}"
            ))
        })?;
        self.barvinok_budget = budget;
        self.minor_budget = budget;
        Ok(())
    }
}
