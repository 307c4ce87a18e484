use crate::error::{Error, Result};
use crate::resources::{parse_universe, Universe};

pub const DEFAULT_SILENT_BUDGET: usize = 200_000;
pub const DEFAULT_STATE_BUDGET: usize = 100_000;

/// The finite universe and bounds every semantic computation runs under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemConfig {
    pub universe: Universe,
    /// Maximum number of observable actions per trace.
    pub depth: usize,
    /// Cap on configurations explored when collecting safety traces.
    pub silent_budget: usize,
    /// Cap on configurations explored when collecting liveness traces.
    pub state_budget: usize,
}

impl SemConfig {
    pub fn new(universe: Universe, depth: usize) -> Self {
        SemConfig { universe, depth, silent_budget: DEFAULT_SILENT_BUDGET, state_budget: DEFAULT_STATE_BUDGET }
    }

    pub fn with_depth(&self, depth: usize) -> Self {
        SemConfig { depth, ..self.clone() }
    }
}

pub const DEFAULT_DEPTH: usize = 3;
pub const DEFAULT_UNIVERSE: &str = "#c,#d";

/// Settings shared by every command-line subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub universe: Universe,
    pub depth: usize,
    pub silent_budget: usize,
    pub state_budget: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            universe: parse_universe(DEFAULT_UNIVERSE).expect("default universe"),
            depth: DEFAULT_DEPTH,
            silent_budget: DEFAULT_SILENT_BUDGET,
            state_budget: DEFAULT_STATE_BUDGET,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn sem(&self) -> SemConfig {
        SemConfig {
            universe: self.universe.clone(),
            depth: self.depth,
            silent_budget: self.silent_budget,
            state_budget: self.state_budget,
        }
    }

    /// Overwrites the fields named in `file`.
    pub fn apply(&mut self, file: &ConfigFile) {
        if let Some(u) = &file.universe {
            self.universe = u.clone();
        }
        if let Some(k) = file.depth {
            self.depth = k;
        }
        if let Some(b) = file.silent_budget {
            self.silent_budget = b;
        }
        if let Some(b) = file.state_budget {
            self.state_budget = b;
        }
        if let Some(s) = file.seed {
            self.seed = s;
        }
    }
}

/// The settings present in a `key = value` config file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigFile {
    pub universe: Option<Universe>,
    pub depth: Option<usize>,
    pub silent_budget: Option<usize>,
    pub state_budget: Option<usize>,
    pub seed: Option<u64>,
}

fn number<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Config(format!("line {line}: `{key}` expects a number, got `{value}`")))
}

/// Parses a config file: one `key = value` per line, blank lines and lines
/// starting with `--` ignored. Keys are `universe`, `depth`,
/// `silent_budget`, `state_budget` and `seed`; a repeated key is an error.
pub fn parse_config(text: &str) -> Result<ConfigFile> {
    let mut out = ConfigFile::default();
    let mut seen = std::collections::BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with("--") {
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {line}: expected `key = value`")))?;
        let (key, value) = (key.trim(), value.trim());
        if !seen.insert(key.to_string()) {
            return Err(Error::Config(format!("line {line}: `{key}` set twice")));
        }
        match key {
            "universe" => {
                let u = parse_universe(value).map_err(|e| Error::Config(format!("line {line}: {e}")))?;
                out.universe = Some(u);
            }
            "depth" => out.depth = Some(number(line, key, value)?),
            "silent_budget" => out.silent_budget = Some(number(line, key, value)?),
            "state_budget" => out.state_budget = Some(number(line, key, value)?),
            "seed" => out.seed = Some(number(line, key, value)?),
            _ => return Err(Error::Config(format!("line {line}: unknown key `{key}`"))),
        }
    }
    Ok(out)
}
