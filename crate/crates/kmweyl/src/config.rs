//! Run configuration: TOML file values overlaid by command-line flags.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use kmweyl_core::calogero::PartialSumFamily;
use kmweyl_core::Label;

use crate::error::{invalid, CliError, CliResult};
use crate::format::Format;

/// Integer lists come either as `"0,1,2"` or as a TOML array.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum IntList {
    List(Vec<i64>),
    Text(String),
}

impl IntList {
    pub fn values(&self, what: &str) -> CliResult<Vec<i64>> {
        match self {
            IntList::List(v) => Ok(v.clone()),
            IntList::Text(s) => parse_ints(s, what),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum FloatList {
    List(Vec<f64>),
    Text(String),
}

impl FloatList {
    pub fn values(&self, what: &str) -> CliResult<Vec<f64>> {
        match self {
            FloatList::List(v) => Ok(v.clone()),
            FloatList::Text(s) => parse_floats(s, what),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchMode {
    Affine,
    Hyperbolic,
    Lorentzian,
}

impl MatchMode {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s {
            "affine" => Ok(MatchMode::Affine),
            "hyperbolic" => Ok(MatchMode::Hyperbolic),
            "lorentzian" => Ok(MatchMode::Lorentzian),
            _ => invalid(format!("unknown mode {s:?} (affine, hyperbolic, lorentzian)")),
        }
    }
}

/// Evaluable closed forms of `potential eval`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalForm {
    AffineClosed,
    Partial(PartialSumFamily),
}

impl EvalForm {
    pub fn parse(s: &str) -> CliResult<Self> {
        if s == "affine-closed" {
            return Ok(EvalForm::AffineClosed);
        }
        PartialSumFamily::ALL
            .iter()
            .find(|f| f.name() == s)
            .map(|&f| EvalForm::Partial(f))
            .ok_or_else(|| {
                let names: Vec<&str> = PartialSumFamily::ALL.iter().map(|f| f.name()).collect();
                CliError::Validation(format!("unknown form {s:?} (affine-closed, {})", names.join(", ")))
            })
    }
}

/// Every setting a subcommand may read. All fields are optional; each
/// subcommand checks for the ones it needs.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub algebra: Option<String>,
    pub word: Option<IntList>,
    pub seed: Option<IntList>,
    pub range: Option<String>,
    pub bounds: Option<String>,
    pub kwindow: Option<i64>,
    pub level: Option<i64>,
    pub mode: Option<String>,
    pub degree: Option<u32>,
    pub minus: Option<IntList>,
    pub plus: Option<IntList>,
    pub h_max: Option<u64>,
    pub tolerance: Option<f64>,
    pub form: Option<String>,
    pub q: Option<FloatList>,
    pub coupling: Option<f64>,
    /// Per-term coupling overrides keyed by term id.
    #[serde(default)]
    pub couplings: BTreeMap<String, f64>,
    pub output: Option<Format>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Validation(format!("config: {}", e.message())))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Self::from_toml(&text)
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overlay(mut self, other: RunConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(algebra, word, seed, range, bounds, kwindow, level, mode, degree, minus, plus, h_max, tolerance, form, q, coupling, output);
        self.couplings.extend(other.couplings);
        self
    }

    pub fn algebra(&self) -> CliResult<(usize, usize)> {
        parse_algebra(self.algebra.as_deref().ok_or_else(|| missing("algebra"))?)
    }

    pub fn word(&self) -> CliResult<Vec<Label>> {
        self.word.as_ref().ok_or_else(|| missing("word"))?.values("word")
    }

    pub fn seed(&self) -> CliResult<Vec<i64>> {
        self.seed.as_ref().ok_or_else(|| missing("seed"))?.values("seed")
    }

    pub fn range(&self) -> CliResult<(i64, i64)> {
        parse_interval(self.range.as_deref().ok_or_else(|| missing("range"))?)
    }

    pub fn bounds(&self) -> CliResult<Vec<(i64, i64)>> {
        parse_bounds(self.bounds.as_deref().ok_or_else(|| missing("bounds"))?)
    }

    pub fn q(&self) -> CliResult<Vec<f64>> {
        self.q.as_ref().ok_or_else(|| missing("q"))?.values("q")
    }

    pub fn coupling(&self) -> CliResult<f64> {
        let g = self.coupling.unwrap_or(1.0);
        if !g.is_finite() {
            return invalid("coupling must be finite");
        }
        Ok(g)
    }

    /// Coupling of the term `id`, falling back to the global one.
    pub fn coupling_for(&self, id: &str) -> CliResult<f64> {
        match self.couplings.get(id) {
            Some(g) if g.is_finite() => Ok(*g),
            Some(_) => invalid(format!("coupling for {id} must be finite")),
            None => self.coupling(),
        }
    }

    pub fn tolerance(&self) -> CliResult<f64> {
        let t = self.tolerance.unwrap_or(1e-6);
        if !(t > 0.0 && t.is_finite()) {
            return invalid("tolerance must be positive");
        }
        Ok(t)
    }

    pub fn kwindow(&self) -> CliResult<i64> {
        let w = self.kwindow.unwrap_or(8);
        if w < 0 {
            return invalid("kwindow must be non-negative");
        }
        Ok(w)
    }

    pub fn level(&self) -> CliResult<i64> {
        let l = self.level.unwrap_or(5);
        if l < 0 {
            return invalid("level must be non-negative");
        }
        Ok(l)
    }
}

fn missing(what: &str) -> CliError {
    CliError::Validation(format!("missing --{what}"))
}

/// `aNmM` → `(N, M)`.
pub fn parse_algebra(s: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Validation(format!("algebra {s:?} is not of the form aNmM (e.g. a2m2)"));
    let rest = s.strip_prefix('a').ok_or_else(bad)?;
    let (n, m) = rest.split_once('m').ok_or_else(bad)?;
    let n = n.parse().map_err(|_| bad())?;
    let m = m.parse().map_err(|_| bad())?;
    Ok((n, m))
}

pub fn parse_ints(s: &str, what: &str) -> CliResult<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| CliError::Validation(format!("{what}: {t:?} is not an integer"))))
        .collect()
}

pub fn parse_floats(s: &str, what: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| match t.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => invalid(format!("{what}: {t:?} is not a finite number")),
        })
        .collect()
}

/// `lo:hi` with `lo ≤ hi`.
pub fn parse_interval(s: &str) -> CliResult<(i64, i64)> {
    let bad = || CliError::Validation(format!("{s:?} is not an interval lo:hi"));
    let (lo, hi) = s.trim().split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return invalid(format!("interval {s:?} has lo > hi"));
    }
    Ok((lo, hi))
}

pub fn parse_bounds(s: &str) -> CliResult<Vec<(i64, i64)>> {
    s.split(',').map(parse_interval).collect()
}
