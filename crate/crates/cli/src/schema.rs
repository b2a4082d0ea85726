//! Human-readable schema descriptions printed by `qgame schema`.

use serde_json::{json, Map, Value};

use crate::scenario::{
    Kind, DEFAULT_GRID, DEFAULT_PENNY_POINTS, DEFAULT_REFUTER_SAMPLES, MAX_GRID, MAX_REFUTER_SAMPLES,
};
use qgame_core::quantize::MIN_GRID;
use qgame_core::search::SearchConfig;

fn field(name: &str) -> Value {
    let search = SearchConfig::default();
    match name {
        "game" => json!({
            "type": "object {payoff_a, payoff_b, labels?: {a, b}}",
            "default": "Prisoner's Dilemma with labels C, D",
            "constraint": "payoff_a and payoff_b are equal-shape numeric matrices; quantization needs 2x2",
        }),
        "prefs" => json!({
            "type": "object {a: [label], b: [label]}",
            "required": true,
            "constraint": "each list is a permutation of \"00\", \"01\", \"10\", \"11\", best first",
        }),
        "mode" => json!({ "type": "\"joint\" | \"local\"", "default": "joint" }),
        "gamma" => json!({ "type": "number", "default": std::f64::consts::FRAC_PI_2, "constraint": "in [0, pi/2]" }),
        "strategy_class" => json!({ "type": "\"two_parameter\" | \"full_u2\" | \"both\"", "default": "both" }),
        "grid" => json!({
            "type": "integer",
            "default": DEFAULT_GRID,
            "constraint": format!("{MIN_GRID}..={MAX_GRID} points per angle"),
        }),
        "search" => json!({
            "type": "object {restarts?, max_iters?, step_tol?, value_tol?}",
            "default": {
                "restarts": search.restarts,
                "max_iters": search.max_iters,
                "step_tol": search.step_tol,
                "value_tol": search.value_tol,
            },
            "constraint": "restarts, max_iters >= 1; step_tol > 0; value_tol in (0, 1)",
        }),
        "mixture_support" => json!({ "type": "integer", "default": 2, "constraint": "1 or 2" }),
        "penny" => json!({
            "type": "object {q_moves?: [gate, gate], p_grid?: integer}",
            "default": { "q_moves": ["H", "H"], "p_grid": DEFAULT_PENNY_POINTS },
            "constraint": "gates from I, X, Y, Z, H, Q; p_grid is the number of flip probabilities in [0, 1], 2..=100001",
        }),
        "refuter_samples" => json!({
            "type": "integer",
            "default": DEFAULT_REFUTER_SAMPLES,
            "constraint": format!("1..={MAX_REFUTER_SAMPLES}"),
        }),
        "embedding" => json!({
            "type": "[gate, gate]",
            "default": ["I", "X"],
            "constraint": "unitaries for the first and second pure strategy; gates from I, X, Y, Z, H, Q",
        }),
        _ => Value::Null,
    }
}

/// Schema of one scenario kind as a JSON object.
pub fn describe(kind: Kind) -> Value {
    let mut fields = Map::new();
    fields.insert(
        "kind".into(),
        json!({ "type": "string", "required": true, "value": kind.name() }),
    );
    fields.insert("seed".into(), json!({ "type": "integer", "default": 0 }));
    for &name in kind.fields() {
        fields.insert(name.into(), field(name));
    }
    json!({ "kind": kind.name(), "fields": fields, "unknown_fields": "rejected" })
}
