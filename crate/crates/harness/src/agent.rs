//! Agent specifications as written on the command line.
//!
//! ```text
//! mcps                      MCPS, ref 50
//! mcps:ref=100,perm=off     MCPS without permutation statistics
//! grave:ref=50,bias=1e-5    GRAVE
//! mcps:code=abstract        per-agent code mode
//! random                    uniform random legal move
//! ```

use std::fmt;
use std::str::FromStr;

use mcps_core::{Algorithm, CodeMode, SearchConfig};

use crate::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AgentKind {
    Search(Algorithm),
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgentSpec {
    pub kind: AgentKind,
    pub ref_threshold: u32,
    pub bias: f64,
    /// Overrides the match-wide code mode.
    pub code_mode: Option<CodeMode>,
    pub permutation_stats: bool,
}

impl AgentSpec {
    pub fn mcps() -> Self {
        AgentSpec {
            kind: AgentKind::Search(Algorithm::Mcps),
            ref_threshold: SearchConfig::DEFAULT_REF,
            bias: SearchConfig::DEFAULT_BIAS,
            code_mode: None,
            permutation_stats: true,
        }
    }

    pub fn grave() -> Self {
        AgentSpec {
            kind: AgentKind::Search(Algorithm::Grave),
            permutation_stats: false,
            ..Self::mcps()
        }
    }

    pub fn random() -> Self {
        AgentSpec {
            kind: AgentKind::Random,
            ..Self::grave()
        }
    }

    pub fn with_ref(mut self, r: u32) -> Self {
        self.ref_threshold = r;
        self
    }

    pub fn with_bias(mut self, bias: f64) -> Self {
        self.bias = bias;
        self
    }

    pub fn with_permutation_stats(mut self, on: bool) -> Self {
        self.permutation_stats = on;
        self
    }

    /// Search configuration for one move, or `None` for non-searching agents.
    pub fn search_config(&self, playouts: u32, mode: CodeMode, seed: u64) -> Option<SearchConfig> {
        let AgentKind::Search(algorithm) = self.kind else {
            return None;
        };
        let base = match algorithm {
            Algorithm::Mcps => SearchConfig::mcps(playouts),
            Algorithm::Grave => SearchConfig::grave(playouts),
        };
        Some(SearchConfig {
            ref_threshold: self.ref_threshold,
            bias: self.bias,
            code_mode: self.code_mode.unwrap_or(mode),
            rng_seed: seed,
            permutation_stats: algorithm == Algorithm::Mcps && self.permutation_stats,
            ..base
        })
    }
}

impl fmt::Display for AgentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AgentKind::Random => return f.write_str("random"),
            AgentKind::Search(Algorithm::Mcps) => {
                write!(f, "mcps:ref={}", self.ref_threshold)?;
                if !self.permutation_stats {
                    f.write_str(",perm=off")?;
                }
            }
            AgentKind::Search(Algorithm::Grave) => {
                write!(f, "grave:ref={},bias={:e}", self.ref_threshold, self.bias)?;
            }
        }
        if let Some(mode) = self.code_mode {
            write!(f, ",code={mode}")?;
        }
        Ok(())
    }
}

impl FromStr for AgentSpec {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: String| HarnessError::Config(format!("agent `{s}`: {msg}"));
        let (name, opts) = s.split_once(':').unwrap_or((s, ""));
        let mut spec = match name.trim() {
            "mcps" => AgentSpec::mcps(),
            "grave" => AgentSpec::grave(),
            "random" => AgentSpec::random(),
            other => return Err(bad(format!("unknown algorithm `{other}`"))),
        };
        for opt in opts.split(',').map(str::trim).filter(|o| !o.is_empty()) {
            let (key, value) = opt
                .split_once('=')
                .ok_or_else(|| bad(format!("option `{opt}` is not key=value")))?;
            match (spec.kind, key.trim()) {
                (AgentKind::Random, _) => return Err(bad("random takes no options".into())),
                (_, "ref") => {
                    spec.ref_threshold = value
                        .parse()
                        .map_err(|_| bad(format!("bad ref `{value}`")))?;
                }
                (AgentKind::Search(Algorithm::Grave), "bias") => {
                    let bias: f64 = value
                        .parse()
                        .map_err(|_| bad(format!("bad bias `{value}`")))?;
                    if !(bias.is_finite() && bias >= 0.0) {
                        return Err(bad("bias must be finite and non-negative".into()));
                    }
                    spec.bias = bias;
                }
                (_, "code") => spec.code_mode = Some(value.parse().map_err(bad)?),
                (AgentKind::Search(Algorithm::Mcps), "perm") => {
                    spec.permutation_stats = match value {
                        "on" => true,
                        "off" => false,
                        _ => return Err(bad(format!("perm must be on or off, not `{value}`"))),
                    };
                }
                (_, other) => return Err(bad(format!("unknown option `{other}`"))),
            }
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_forms() {
        let m: AgentSpec = "mcps:ref=50".parse().unwrap();
        assert_eq!(m, AgentSpec::mcps());
        let g: AgentSpec = "grave:ref=50,bias=1e-5".parse().unwrap();
        assert_eq!(g, AgentSpec::grave());
        let off: AgentSpec = "mcps:perm=off,code=abstract".parse().unwrap();
        assert!(!off.permutation_stats);
        assert_eq!(off.code_mode, Some(CodeMode::Abstract));
        assert_eq!(
            "random".parse::<AgentSpec>().unwrap().kind,
            AgentKind::Random
        );
    }

    #[test]
    fn rejects_nonsense() {
        for bad in [
            "uct",
            "mcps:bias=1",
            "grave:perm=off",
            "mcps:ref=-1",
            "grave:bias=-2",
            "mcps:ref",
            "random:ref=3",
        ] {
            assert!(bad.parse::<AgentSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "mcps:ref=50",
            "mcps:ref=10,perm=off,code=abstract",
            "grave:ref=50,bias=1e-5",
            "random",
        ] {
            let spec: AgentSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(spec.to_string().parse::<AgentSpec>().unwrap(), spec);
        }
    }

    #[test]
    fn search_config_carries_the_options() {
        let c = AgentSpec::grave()
            .with_bias(0.0)
            .search_config(100, CodeMode::Exact, 7)
            .unwrap();
        assert_eq!(
            (c.playouts, c.bias, c.rng_seed, c.algorithm),
            (100, 0.0, 7, Algorithm::Grave)
        );
        assert!(AgentSpec::random()
            .search_config(100, CodeMode::Exact, 7)
            .is_none());
        let m = AgentSpec::mcps().with_permutation_stats(false);
        assert!(
            !m.search_config(10, CodeMode::Exact, 0)
                .unwrap()
                .permutation_stats
        );
    }
}
