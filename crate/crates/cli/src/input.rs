use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use anyhow::{Context, Result};
use ppsz_lab::cnf::CnfFormula;
use ppsz_lab::dimacs::parse_dimacs;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seed {
    Fixed(u64),
    Random,
}

impl Seed {
    pub fn resolve(self) -> u64 {
        match self {
            Seed::Fixed(s) => s,
            Seed::Random => rand::random(),
        }
    }
}

impl FromStr for Seed {
    type Err = String;

    fn from_str(s: &str) -> Result<Seed, String> {
        if s.eq_ignore_ascii_case("random") {
            return Ok(Seed::Random);
        }
        s.parse().map(Seed::Fixed).map_err(|_| format!("`{s}` is neither an integer nor `random`"))
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seed::Fixed(s) => write!(f, "{s}"),
            Seed::Random => f.write_str("random"),
        }
    }
}

/// Reads DIMACS from `path`, or stdin for `-`.
pub fn read_formula(path: &Path) -> Result<CnfFormula> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_dimacs(&text).with_context(|| format!("parsing {}", path.display()))
}
