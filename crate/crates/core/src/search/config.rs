use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactpoly::{fmt_rat, parse_rat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ansatz {
    /// Each `A'_ql − A'_ql(0)` is odd: only odd powers up to `max_degree`.
    Odd,
    /// Every power `1..=max_degree` is free.
    Raw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Invariance plus the weak equation.
    Weak,
    /// Skew-symmetric diagonal plus the strict equation.
    Strict,
    /// Invariance plus the strict equation, without skew-symmetry.
    StrictInvariant,
}

impl SearchMode {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "weak" => Some(SearchMode::Weak),
            "strict" => Some(SearchMode::Strict),
            "strict-invariant" => Some(SearchMode::StrictInvariant),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SearchMode::Weak => "weak",
            SearchMode::Strict => "strict",
            SearchMode::StrictInvariant => "strict-invariant",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_degree: usize,
    pub ansatz: Ansatz,
    pub coeff_grid: Vec<Rat>,
    pub constants_grid: Vec<Rat>,
    pub mode: SearchMode,
    pub workers: usize,
}

/// The part of a config that determines report content (no worker count).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub max_degree: usize,
    pub ansatz: Ansatz,
    pub coeff_grid: Vec<String>,
    pub constants_grid: Vec<String>,
    pub mode: SearchMode,
}

/// Parses a comma-separated list of rationals.
pub fn parse_grid(text: &str) -> Result<Vec<Rat>, Error> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(parse_rat(part).ok_or_else(|| Error::Config(format!("bad grid value '{part}'")))?);
    }
    if out.is_empty() {
        return Err(Error::Config("grid must be nonempty".into()));
    }
    Ok(out)
}

fn normalize(grid: &[Rat]) -> Vec<Rat> {
    let mut g = grid.to_vec();
    g.sort();
    g.dedup();
    g
}

impl SearchConfig {
    pub fn new(
        max_degree: usize,
        ansatz: Ansatz,
        coeff_grid: Vec<Rat>,
        constants_grid: Vec<Rat>,
        mode: SearchMode,
    ) -> Self {
        SearchConfig {
            max_degree,
            ansatz,
            coeff_grid,
            constants_grid,
            mode,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.coeff_grid.is_empty() || self.constants_grid.is_empty() {
            return Err(Error::Config("grids must be nonempty".into()));
        }
        if self.max_degree == 0 {
            return Err(Error::Config("max degree must be at least 1".into()));
        }
        if self.ansatz == Ansatz::Odd && self.max_degree.is_multiple_of(2) {
            return Err(Error::Config("odd ansatz needs an odd max degree".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("need at least one worker".into()));
        }
        Ok(())
    }

    /// Powers of `x` carrying a free coefficient.
    pub fn powers(&self) -> Vec<usize> {
        (1..=self.max_degree)
            .filter(|k| self.ansatz == Ansatz::Raw || k % 2 == 1)
            .collect()
    }

    pub fn coeff_grid(&self) -> Vec<Rat> {
        normalize(&self.coeff_grid)
    }

    pub fn constants_grid(&self) -> Vec<Rat> {
        normalize(&self.constants_grid)
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            max_degree: self.max_degree,
            ansatz: self.ansatz,
            coeff_grid: self.coeff_grid().iter().map(fmt_rat).collect(),
            constants_grid: self.constants_grid().iter().map(fmt_rat).collect(),
            mode: self.mode,
        }
    }

    /// Size of the full candidate product.
    pub fn candidate_count(&self) -> Result<u64, Error> {
        let nc = self.coeff_grid().len() as u64;
        let nk = self.constants_grid().len() as u64;
        let slots = 9 * self.powers().len() as u32;
        nc.checked_pow(slots)
            .and_then(|a| nk.checked_pow(4).and_then(|b| a.checked_mul(b)))
            .ok_or_else(|| Error::Config("candidate space too large to count".into()))
    }
}
