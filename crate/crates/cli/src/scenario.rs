//! Scenario files: parsing, validation and default filling.
//!
//! A loaded [`Scenario`] has every field its kind uses filled in, and every
//! field the kind does not use absent. Serializing it back yields a file that
//! loads to the same value.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::path::Path;

use qgame_core::classical::ClassicalGame;
use qgame_core::hilbert::gates;
use qgame_core::qgame::StrategyMode;
use qgame_core::quantize::MIN_GRID;
use qgame_core::search::SearchConfig;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Joint-space basis labels, `|ij⟩` at index `2i + j`.
pub const BASIS_LABELS: [&str; 4] = ["00", "01", "10", "11"];

pub const MAX_GRID: usize = 256;
pub const DEFAULT_GRID: usize = 64;
pub const DEFAULT_REFUTER_SAMPLES: usize = 100_000;
pub const MAX_REFUTER_SAMPLES: usize = 10_000_000;
pub const DEFAULT_PENNY_POINTS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    QuantumGameAnalysis,
    NashSearch,
    Quantization,
    PennyFlip,
    ClassicalSolve,
}

impl Kind {
    pub const ALL: [Kind; 5] = [
        Kind::QuantumGameAnalysis,
        Kind::NashSearch,
        Kind::Quantization,
        Kind::PennyFlip,
        Kind::ClassicalSolve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::QuantumGameAnalysis => "quantum_game_analysis",
            Kind::NashSearch => "nash_search",
            Kind::Quantization => "quantization",
            Kind::PennyFlip => "penny_flip",
            Kind::ClassicalSolve => "classical_solve",
        }
    }

    pub fn from_name(name: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Optional fields this kind reads, besides `kind` and `seed`.
    pub fn fields(self) -> &'static [&'static str] {
        match self {
            Kind::QuantumGameAnalysis => &["prefs", "mode", "search", "refuter_samples"],
            Kind::NashSearch => &["prefs", "mode", "search"],
            Kind::Quantization => &[
                "game",
                "gamma",
                "strategy_class",
                "grid",
                "mixture_support",
                "embedding",
            ],
            Kind::PennyFlip => &["penny"],
            Kind::ClassicalSolve => &["game"],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Joint,
    Local,
}

impl From<Mode> for StrategyMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Joint => StrategyMode::Joint,
            Mode::Local => StrategyMode::Local,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassSelection {
    TwoParameter,
    FullU2,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Labels {
    pub a: Vec<String>,
    pub b: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameInput {
    pub payoff_a: Vec<Vec<f64>>,
    pub payoff_b: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Labels>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Prefs {
    pub a: Vec<String>,
    pub b: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iters: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PennyInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_moves: Option<[String; 2]>,
    /// Number of evenly spaced flip probabilities in `[0, 1]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_grid: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub game: Option<GameInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prefs: Option<Prefs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy_class: Option<ClassSelection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mixture_support: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub penny: Option<PennyInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refuter_samples: Option<usize>,
    /// Gate names standing in for each player's first and second pure strategy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<[String; 2]>,
}

fn schema(field: impl Into<String>, constraint: impl Into<String>) -> CliError {
    CliError::Schema {
        field: field.into(),
        constraint: constraint.into(),
    }
}

/// Reads and validates a scenario file.
pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scenario(&text)
}

/// Parses and validates scenario text.
pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let raw: Scenario = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let message = e.inner().to_string();
        let field = if path == "." || path.is_empty() {
            quoted_name(&message).unwrap_or_else(|| "<root>".to_string())
        } else {
            path
        };
        schema(field, message)
    })?;
    raw.resolve()
}

/// First backtick-quoted word, which serde uses for unknown and missing fields.
fn quoted_name(message: &str) -> Option<String> {
    let start = message.find('`')? + 1;
    let len = message[start..].find('`')?;
    Some(message[start..start + len].to_string())
}

fn default_game() -> GameInput {
    let g = ClassicalGame::prisoners_dilemma();
    use qgame_core::Player;
    GameInput {
        payoff_a: g.payoff_matrix(Player::A),
        payoff_b: g.payoff_matrix(Player::B),
        labels: Some(Labels {
            a: g.labels(Player::A).to_vec(),
            b: g.labels(Player::B).to_vec(),
        }),
    }
}

fn check_gate(field: &str, name: &str) -> Result<(), CliError> {
    if gates::by_name(name).is_none() {
        return Err(schema(
            field,
            format!("unknown gate `{name}`; expected one of I, X, Y, Z, H, Q"),
        ));
    }
    Ok(())
}

fn resolve_game(mut g: GameInput, need_2x2: bool) -> Result<GameInput, CliError> {
    let rows = g.payoff_a.len();
    let cols = g.payoff_a.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(schema("game.payoff_a", "must be a nonempty matrix"));
    }
    if g.payoff_a.iter().any(|r| r.len() != cols) {
        return Err(schema("game.payoff_a", "rows must all have the same length"));
    }
    if g.payoff_b.len() != rows || g.payoff_b.iter().any(|r| r.len() != cols) {
        return Err(schema(
            "game.payoff_b",
            format!("must have the same {rows}x{cols} shape as payoff_a"),
        ));
    }
    if need_2x2 && (rows != 2 || cols != 2) {
        return Err(schema("game.payoff_a", "this kind needs a 2x2 game"));
    }
    let labels = g.labels.take().unwrap_or_else(|| Labels {
        a: (0..rows).map(|k| format!("s{k}")).collect(),
        b: (0..cols).map(|k| format!("s{k}")).collect(),
    });
    if labels.a.len() != rows {
        return Err(schema("game.labels.a", format!("needs {rows} labels")));
    }
    if labels.b.len() != cols {
        return Err(schema("game.labels.b", format!("needs {cols} labels")));
    }
    g.labels = Some(labels);
    Ok(g)
}

fn check_prefs(field: &str, ranking: &[String]) -> Result<(), CliError> {
    let mut sorted: Vec<&str> = ranking.iter().map(String::as_str).collect();
    sorted.sort_unstable();
    if sorted != BASIS_LABELS {
        return Err(schema(
            field,
            "must be a permutation of the basis labels 00, 01, 10, 11 (each exactly once)",
        ));
    }
    Ok(())
}

fn resolve_search(s: Option<SearchInput>) -> Result<SearchInput, CliError> {
    let d = SearchConfig::default();
    let s = s.unwrap_or(SearchInput {
        restarts: None,
        max_iters: None,
        step_tol: None,
        value_tol: None,
    });
    let out = SearchInput {
        restarts: Some(s.restarts.unwrap_or(d.restarts)),
        max_iters: Some(s.max_iters.unwrap_or(d.max_iters)),
        step_tol: Some(s.step_tol.unwrap_or(d.step_tol)),
        value_tol: Some(s.value_tol.unwrap_or(d.value_tol)),
    };
    if out.restarts == Some(0) {
        return Err(schema("search.restarts", "must be at least 1"));
    }
    if out.max_iters == Some(0) {
        return Err(schema("search.max_iters", "must be at least 1"));
    }
    let step = out.step_tol.unwrap_or_default();
    if !(step.is_finite() && step > 0.0) {
        return Err(schema("search.step_tol", "must be finite and positive"));
    }
    let value = out.value_tol.unwrap_or_default();
    if !(value > 0.0 && value < 1.0) {
        return Err(schema("search.value_tol", "must lie in (0, 1)"));
    }
    Ok(out)
}

impl Scenario {
    /// Validates fields and fills every default the kind uses.
    pub fn resolve(self) -> Result<Scenario, CliError> {
        let kind = self.kind;
        let used = kind.fields();
        let present = [
            ("game", self.game.is_some()),
            ("prefs", self.prefs.is_some()),
            ("mode", self.mode.is_some()),
            ("gamma", self.gamma.is_some()),
            ("strategy_class", self.strategy_class.is_some()),
            ("grid", self.grid.is_some()),
            ("search", self.search.is_some()),
            ("mixture_support", self.mixture_support.is_some()),
            ("penny", self.penny.is_some()),
            ("refuter_samples", self.refuter_samples.is_some()),
            ("embedding", self.embedding.is_some()),
        ];
        for (name, set) in present {
            if set && !used.contains(&name) {
                return Err(schema(name, format!("not used by kind {kind}")));
            }
        }

        let mut out = Scenario {
            kind,
            seed: Some(self.seed.unwrap_or(0)),
            game: None,
            prefs: None,
            mode: None,
            gamma: None,
            strategy_class: None,
            grid: None,
            search: None,
            mixture_support: None,
            penny: None,
            refuter_samples: None,
            embedding: None,
        };
        match kind {
            Kind::QuantumGameAnalysis | Kind::NashSearch => {
                let prefs = self.prefs.ok_or_else(|| schema("prefs", "required for this kind"))?;
                check_prefs("prefs.a", &prefs.a)?;
                check_prefs("prefs.b", &prefs.b)?;
                out.prefs = Some(prefs);
                out.mode = Some(self.mode.unwrap_or(Mode::Joint));
                out.search = Some(resolve_search(self.search)?);
                if kind == Kind::QuantumGameAnalysis {
                    let n = self.refuter_samples.unwrap_or(DEFAULT_REFUTER_SAMPLES);
                    if n == 0 || n > MAX_REFUTER_SAMPLES {
                        return Err(schema(
                            "refuter_samples",
                            format!("must lie in 1..={MAX_REFUTER_SAMPLES}"),
                        ));
                    }
                    out.refuter_samples = Some(n);
                }
            }
            Kind::Quantization => {
                out.game = Some(resolve_game(self.game.unwrap_or_else(default_game), true)?);
                let gamma = self.gamma.unwrap_or(FRAC_PI_2);
                if !(0.0..=FRAC_PI_2).contains(&gamma) {
                    return Err(schema("gamma", "must lie in [0, pi/2]"));
                }
                out.gamma = Some(gamma);
                out.strategy_class = Some(self.strategy_class.unwrap_or(ClassSelection::Both));
                let grid = self.grid.unwrap_or(DEFAULT_GRID);
                if !(MIN_GRID..=MAX_GRID).contains(&grid) {
                    return Err(schema("grid", format!("must lie in {MIN_GRID}..={MAX_GRID}")));
                }
                out.grid = Some(grid);
                let support = self.mixture_support.unwrap_or(2);
                if !(1..=2).contains(&support) {
                    return Err(schema("mixture_support", "must be 1 or 2"));
                }
                out.mixture_support = Some(support);
                let embedding = self.embedding.unwrap_or_else(|| ["I".to_string(), "X".to_string()]);
                check_gate("embedding[0]", &embedding[0])?;
                check_gate("embedding[1]", &embedding[1])?;
                out.embedding = Some(embedding);
            }
            Kind::PennyFlip => {
                let p = self.penny.unwrap_or(PennyInput {
                    q_moves: None,
                    p_grid: None,
                });
                let moves = p.q_moves.unwrap_or_else(|| ["H".to_string(), "H".to_string()]);
                check_gate("penny.q_moves[0]", &moves[0])?;
                check_gate("penny.q_moves[1]", &moves[1])?;
                let points = p.p_grid.unwrap_or(DEFAULT_PENNY_POINTS);
                if !(2..=100_001).contains(&points) {
                    return Err(schema("penny.p_grid", "must lie in 2..=100001"));
                }
                out.penny = Some(PennyInput {
                    q_moves: Some(moves),
                    p_grid: Some(points),
                });
            }
            Kind::ClassicalSolve => {
                out.game = Some(resolve_game(self.game.unwrap_or_else(default_game), false)?);
            }
        }
        Ok(out)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario serializes");
        s.push('\n');
        s
    }
}
