//! Dispatch from a validated scenario to the core modules.

use qgame_core::classical::{ClassicalGame, MixedProfile, NashComponent};
use qgame_core::hilbert::gates::{self, q_type};
use qgame_core::preference::PreferenceOrder;
use qgame_core::qgame::{
    equilibrium_states, is_equilibrium_state, is_nash_profile, outcome_report, sampled_max_min_overlap,
    EquilibriumCertificate, QuantumGame, Strategy, StrategyProfile,
};
use qgame_core::quantize::{
    check_complete, check_proper, ewl_best_response_scan, ewl_payoff, mixed_best_response_dynamics, payoff_landscape,
    pennyflip_sweep, rotation_mixer, DynamicsConfig, Embedding, MixedQuantumStrategy, QuantizationScheme, ScanResult,
    StrategyClass,
};
use qgame_core::search::{
    deviation_nash_check, find_nash_profile, su2_params_of, DeviationVerdict, NashSearch, SearchConfig,
};
use qgame_core::{tol, MeasurementBasis, Player, UnitaryOperator};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::report::{self, Diagnostics, PlotTable, Provenance, ResultItem, RunReport, TOOL};
use crate::scenario::{ClassSelection, Kind, Scenario};

/// Properness tolerance for embedded pure profiles.
pub const PROPER_TOL: f64 = 1e-12;
/// Completeness tolerance for sampled mixed profiles.
pub const COMPLETE_TOL: f64 = 1e-9;
pub const COMPLETE_SAMPLES: usize = 200;
/// Payoff gain that counts as a clear unilateral improvement.
pub const DEVIATION_MARGIN: f64 = 0.1;
/// Tolerance of the classical best-response checks.
pub const CLASSICAL_TOL: f64 = 1e-10;
/// Tolerance for exact-probability claims such as the penny-flip win.
pub const EXACT_TOL: f64 = 1e-12;
/// Slack for comparing grid-scan payoffs against a reference payoff.
pub const SCAN_TOL: f64 = 1e-9;

const EQUAL_TOPS: &str = "Both players rank the same basis state first. That state is the only equilibrium up to \
     phase: it gives each player its top outcome with certainty, and any other state gives less.";
const DISTINCT_TOPS: &str = "NoEquilibriumExists: an equilibrium state would have to give each player its top \
     outcome with certainty, so it would equal both top states up to phase. The tops are distinct basis states, \
     so no state satisfies both conditions.";

/// Runs a validated scenario. `seed` overrides the scenario's seed.
pub fn run(scenario: &Scenario, seed: Option<u64>) -> Result<RunReport, CliError> {
    let mut scenario = scenario.clone();
    if let Some(s) = seed {
        scenario.seed = Some(s);
    }
    let mut ctx = Context {
        seed: scenario.seed(),
        results: Vec::new(),
        diag: Diagnostics {
            seed: scenario.seed(),
            ..Diagnostics::default()
        },
        plots: Vec::new(),
    };
    match scenario.kind {
        Kind::QuantumGameAnalysis => run_analysis(&scenario, &mut ctx)?,
        Kind::NashSearch => run_nash_search(&scenario, &mut ctx)?,
        Kind::Quantization => run_quantization(&scenario, &mut ctx)?,
        Kind::PennyFlip => run_penny(&scenario, &mut ctx)?,
        Kind::ClassicalSolve => run_classical(&scenario, &mut ctx)?,
    }
    Ok(RunReport {
        tool: TOOL.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        scenario,
        results: ctx.results,
        diagnostics: ctx.diag,
        plots: ctx.plots,
    })
}

struct Context {
    seed: u64,
    results: Vec<ResultItem>,
    diag: Diagnostics,
    plots: Vec<PlotTable>,
}

impl Context {
    fn push(&mut self, name: &str, provenance: Provenance, tolerance: f64, value: Value) {
        self.results.push(ResultItem::new(name, provenance, tolerance, value));
    }

    fn tolerance(&mut self, name: &str, value: f64) {
        self.diag.tolerances.insert(name.to_string(), json!(value));
    }

    fn count(&mut self, name: &str, value: usize) {
        self.diag.counters.insert(name.to_string(), json!(value));
    }
}

fn quantum_game(s: &Scenario) -> Result<QuantumGame, CliError> {
    let prefs = s.prefs.as_ref().expect("resolved scenario has prefs");
    let basis = MeasurementBasis::computational(4);
    let order = |field: &str, labels: &[String]| {
        PreferenceOrder::from_labels(&basis, labels).map_err(CliError::compute(field.to_string()))
    };
    let a = order("prefs.a", &prefs.a)?;
    let b = order("prefs.b", &prefs.b)?;
    let mode = s.mode.expect("resolved scenario has mode").into();
    QuantumGame::new(basis.clone(), a, b, mode).map_err(CliError::compute("quantum game"))
}

fn search_config(s: &Scenario, seed: u64) -> SearchConfig {
    let input = s.search.as_ref().expect("resolved scenario has search");
    let d = SearchConfig::default();
    SearchConfig {
        restarts: input.restarts.unwrap_or(d.restarts),
        max_iters: input.max_iters.unwrap_or(d.max_iters),
        step_tol: input.step_tol.unwrap_or(d.step_tol),
        value_tol: input.value_tol.unwrap_or(d.value_tol),
        seed,
    }
}

fn top_label(game: &QuantumGame, player: Player) -> String {
    game.basis().labels()[game.preference(player).top_index()].clone()
}

fn certificate(c: &EquilibriumCertificate) -> Value {
    match c {
        EquilibriumCertificate::Certified { samples } => json!({ "certified": true, "samples": samples }),
        EquilibriumCertificate::Refuted {
            witness,
            player,
            witness_overlap,
            state_overlap,
        } => json!({
            "certified": false,
            "refuting_player": player.to_string(),
            "witness": report::state(witness),
            "witness_overlap": witness_overlap,
            "state_overlap": state_overlap,
        }),
    }
}

/// Runs the profile search and records its result item and counters.
fn nash_item(game: &QuantumGame, cfg: &SearchConfig, ctx: &mut Context) -> Result<Option<StrategyProfile>, CliError> {
    let found = find_nash_profile(game, cfg).map_err(CliError::compute("nash profile search"))?;
    let (status, profile, overlap, restart, trace) = match found {
        NashSearch::Found {
            profile,
            overlap,
            restart,
            trace,
        } => ("found", Some(profile), overlap, Some(restart), Some(trace)),
        NashSearch::NotFound {
            profile,
            overlap,
            trace,
        } => ("not_found", Some(profile), overlap, None, Some(trace)),
        NashSearch::NoEquilibriumExists => ("no_equilibrium_exists", None, 0.0, None, None),
    };
    let mut value = Map::new();
    value.insert("status".into(), json!(status));
    if let Some(p) = &profile {
        let verdict = is_nash_profile(game, p, cfg.value_tol).map_err(CliError::compute("nash profile check"))?;
        let outcome = outcome_report(game, p).map_err(CliError::compute("outcome report"))?;
        value.insert("overlap".into(), json!(overlap));
        value.insert("restart".into(), json!(restart));
        value.insert("verified".into(), json!(verdict.is_nash()));
        value.insert("profile".into(), report::profile(p));
        value.insert("outcome".into(), report::state(&outcome.outcome));
        value.insert("ranked_a".into(), report::ranked(&outcome.ranked_a));
        value.insert("ranked_b".into(), report::ranked(&outcome.ranked_b));
    }
    ctx.push(
        "nash_profile",
        Provenance::Extension,
        cfg.value_tol,
        Value::Object(value),
    );
    if let Some(t) = trace {
        ctx.count("search_iterations", t.iterations);
        ctx.count("search_evaluations", t.evaluations);
        ctx.count("search_restarts_run", t.best_after_restart.len());
    }
    ctx.count("search_restarts", cfg.restarts);
    ctx.count("search_max_iters", cfg.max_iters);
    ctx.tolerance("search_step_tol", cfg.step_tol);
    ctx.tolerance("search_value_tol", cfg.value_tol);
    Ok(profile)
}

fn identity_profile(game: &QuantumGame) -> StrategyProfile {
    let d = game.mode().unitary_dim();
    StrategyProfile::new(Strategy::identity(d), Strategy::identity(d))
}

fn run_analysis(s: &Scenario, ctx: &mut Context) -> Result<(), CliError> {
    let game = quantum_game(s)?;
    let samples = s.refuter_samples.expect("resolved scenario has refuter_samples");
    let states = equilibrium_states(&game);
    let coincide = game.tops_coincide();
    ctx.push(
        "equilibrium_states",
        Provenance::PaperLiteral,
        tol::PHASE_MATCH,
        json!({
            "count": states.len(),
            "states": states.iter().map(report::state).collect::<Vec<_>>(),
            "top_a": top_label(&game, Player::A),
            "top_b": top_label(&game, Player::B),
            "explanation": if coincide { EQUAL_TOPS } else { DISTINCT_TOPS },
        }),
    );

    let mut refuter = Map::new();
    refuter.insert("samples".into(), json!(samples));
    if let Some(e) = states.first() {
        let c = is_equilibrium_state(&game, e, samples, ctx.seed).map_err(CliError::compute("equilibrium refuter"))?;
        refuter.insert("equilibrium".into(), certificate(&c));
    } else {
        for (key, player) in [("top_a", Player::A), ("top_b", Player::B)] {
            let c = is_equilibrium_state(&game, game.top(player), samples, ctx.seed)
                .map_err(CliError::compute("equilibrium refuter"))?;
            refuter.insert(key.into(), certificate(&c));
        }
    }
    let best = sampled_max_min_overlap(&game, samples, ctx.seed).map_err(CliError::compute("sampled overlaps"))?;
    refuter.insert("max_min_overlap".into(), json!(best));
    ctx.push("refuter", Provenance::Extension, tol::REFUTE, Value::Object(refuter));
    ctx.count("refuter_samples", samples);
    ctx.tolerance("phase_match", tol::PHASE_MATCH);
    ctx.tolerance("refute", tol::REFUTE);

    let cfg = search_config(s, ctx.seed);
    nash_item(&game, &cfg, ctx)?;
    Ok(())
}

fn run_nash_search(s: &Scenario, ctx: &mut Context) -> Result<(), CliError> {
    let game = quantum_game(s)?;
    let cfg = search_config(s, ctx.seed);
    let profile = nash_item(&game, &cfg, ctx)?.unwrap_or_else(|| identity_profile(&game));
    let verdict = deviation_nash_check(&game, &profile, &cfg).map_err(CliError::compute("deviation check"))?;
    let value = match verdict {
        DeviationVerdict::NoImprovingDeviation { overlap_a, overlap_b } => json!({
            "improving_deviation": false,
            "overlap_a": overlap_a,
            "overlap_b": overlap_b,
        }),
        DeviationVerdict::ImprovingDeviation { player, strategy, gain } => json!({
            "improving_deviation": true,
            "player": player.to_string(),
            "gain": gain,
            "strategy": report::strategy(&strategy),
        }),
    };
    ctx.push("deviation_check", Provenance::Extension, cfg.value_tol, value);
    Ok(())
}

fn gate(field: &str, name: &str) -> Result<UnitaryOperator, CliError> {
    gates::by_name(name).ok_or_else(|| CliError::Schema {
        field: field.to_string(),
        constraint: format!("unknown gate `{name}`"),
    })
}

fn classical_game(s: &Scenario) -> Result<ClassicalGame, CliError> {
    let g = s.game.as_ref().expect("resolved scenario has game");
    let labels = g.labels.as_ref().expect("resolved game has labels");
    ClassicalGame::new(
        g.payoff_a.clone(),
        g.payoff_b.clone(),
        labels.a.clone(),
        labels.b.clone(),
    )
    .map_err(CliError::compute("classical game"))
}

fn mixed_profile(game: &ClassicalGame, m: &MixedProfile) -> Result<Value, CliError> {
    let (pa, pb) = game.mixed_payoff(m).map_err(CliError::compute("mixed payoff"))?;
    let gain = game
        .max_deviation_gain(m)
        .map_err(CliError::compute("deviation gain"))?;
    Ok(json!({
        "p": m.p,
        "q": m.q,
        "payoffs": [pa, pb],
        "max_deviation_gain": gain,
        "verified": gain <= CLASSICAL_TOL,
    }))
}

fn classical_equilibria(game: &ClassicalGame) -> Result<Value, CliError> {
    let set = game.mixed_nash_2x2().map_err(CliError::compute("mixed equilibria"))?;
    let mut components = Vec::new();
    for c in &set.components {
        components.push(match c {
            NashComponent::Point(m) => json!({ "point": mixed_profile(game, m)? }),
            NashComponent::Family(v) => json!({
                "family": v.iter().map(|m| mixed_profile(game, m)).collect::<Result<Vec<_>, _>>()?,
            }),
        });
    }
    Ok(json!({ "degenerate": set.degenerate(), "components": components }))
}

fn mixed_atoms(m: &MixedQuantumStrategy) -> Result<Value, CliError> {
    let mut atoms = Vec::new();
    for (w, u) in m.atoms() {
        let p = su2_params_of(u).map_err(CliError::compute("strategy angles"))?;
        atoms.push(json!({
            "weight": w,
            "theta": p.theta(),
            "phi": p.phi(),
            "lambda": p.lam(),
            "unitary": report::unitary(u),
        }));
    }
    Ok(Value::Array(atoms))
}

fn scan_value(r: &ScanResult) -> Value {
    json!({
        "payoff": r.payoff,
        "payoffs": [r.payoffs.0, r.payoffs.1],
        "theta": r.params.theta(),
        "phi": r.params.phi(),
        "lambda": r.params.lam(),
        "grid_index": [r.grid_index.0, r.grid_index.1, r.grid_index.2],
    })
}

fn scan_pair(
    scheme: &QuantizationScheme,
    q: &UnitaryOperator,
    class: StrategyClass,
    grid: usize,
) -> Result<(ScanResult, ScanResult), CliError> {
    let scan =
        |mover| ewl_best_response_scan(scheme, mover, q, class, grid).map_err(CliError::compute("best-response scan"));
    Ok((scan(Player::A)?, scan(Player::B)?))
}

fn run_quantization(s: &Scenario, ctx: &mut Context) -> Result<(), CliError> {
    let base = classical_game(s)?;
    let gamma = s.gamma.expect("resolved scenario has gamma");
    let grid = s.grid.expect("resolved scenario has grid");
    let class = s.strategy_class.expect("resolved scenario has strategy_class");
    let emb = s.embedding.as_ref().expect("resolved scenario has embedding");
    let embedding = Embedding::symmetric(gate("embedding[0]", &emb[0])?, gate("embedding[1]", &emb[1])?);
    let scheme = QuantizationScheme::standard(base.clone(), gamma).map_err(CliError::compute("quantization scheme"))?;

    ctx.push(
        "classical_equilibria",
        Provenance::PaperLiteral,
        CLASSICAL_TOL,
        classical_equilibria(&base)?,
    );

    let proper = check_proper(&scheme, &embedding, PROPER_TOL).map_err(CliError::compute("properness check"))?;
    ctx.push(
        "proper",
        Provenance::PerCitedConstruction,
        PROPER_TOL,
        json!({ "proper": proper.proper, "max_error": proper.max_error }),
    );
    let complete = check_complete(
        &scheme,
        &embedding,
        rotation_mixer,
        COMPLETE_SAMPLES,
        COMPLETE_TOL,
        ctx.seed,
    )
    .map_err(CliError::compute("completeness check"))?;
    ctx.push(
        "complete",
        Provenance::PerCitedConstruction,
        COMPLETE_TOL,
        json!({
            "complete": complete.complete,
            "max_error": complete.max_error,
            "corner_max_error": complete.corners.max_error,
            "samples": complete.samples,
        }),
    );

    let q = q_type();
    let (qa, qb) = ewl_payoff(&scheme, &q, &q).map_err(CliError::compute("Q-profile payoff"))?;
    ctx.push(
        "q_profile_payoff",
        Provenance::PerCitedConstruction,
        EXACT_TOL,
        json!({ "payoffs": [qa, qb] }),
    );

    let mut scan_points = 0;
    if matches!(class, ClassSelection::TwoParameter | ClassSelection::Both) {
        let (a, b) = scan_pair(&scheme, &q, StrategyClass::TwoParameter, grid)?;
        let mutual = a.payoff <= qa + SCAN_TOL && b.payoff <= qb + SCAN_TOL;
        ctx.push(
            "two_parameter_best_reply",
            Provenance::PerCitedConstruction,
            SCAN_TOL,
            json!({ "a": scan_value(&a), "b": scan_value(&b), "q_mutual_best_response": mutual }),
        );
        scan_points += 2 * grid * grid;
    }
    if matches!(class, ClassSelection::FullU2 | ClassSelection::Both) {
        let (a, b) = scan_pair(&scheme, &q, StrategyClass::FullU2, grid)?;
        let (gain_a, gain_b) = (a.payoff - qa, b.payoff - qb);
        ctx.push(
            "full_u2_deviation",
            Provenance::PerCitedConstruction,
            DEVIATION_MARGIN,
            json!({
                "a": scan_value(&a),
                "b": scan_value(&b),
                "gain_a": gain_a,
                "gain_b": gain_b,
                "deviation_found": gain_a.max(gain_b) > DEVIATION_MARGIN,
            }),
        );
        scan_points += 2 * grid * grid * grid;

        let cfg = DynamicsConfig {
            grid,
            support: s.mixture_support.expect("resolved scenario has mixture_support"),
            ..DynamicsConfig::default()
        };
        let d = mixed_best_response_dynamics(&scheme, q.clone(), q.clone(), &cfg)
            .map_err(CliError::compute("mixed best-response dynamics"))?;
        let low = base.pure_payoff(1, 1).map_err(CliError::compute("classical payoff"))?;
        let high = base.pure_payoff(0, 0).map_err(CliError::compute("classical payoff"))?;
        let inside = |v: f64, lo: f64, hi: f64| lo.min(hi) < v && v < lo.max(hi);
        ctx.push(
            "mixed_dynamics",
            Provenance::Extension,
            cfg.tol,
            json!({
                "start": "Q",
                "converged": d.converged,
                "rounds": d.rounds,
                "payoffs": [d.payoffs.0, d.payoffs.1],
                "gains": [d.gains.0, d.gains.1],
                "a": mixed_atoms(&d.a)?,
                "b": mixed_atoms(&d.b)?,
                "history": d.history.iter().map(|h| json!([h.0, h.1])).collect::<Vec<_>>(),
                "pool_sizes": [d.pool_sizes.0, d.pool_sizes.1],
                "bounds": { "second_second": [low.0, low.1], "first_first": [high.0, high.1] },
                "strictly_between": inside(d.payoffs.0, low.0, high.0) && inside(d.payoffs.1, low.1, high.1),
            }),
        );
        ctx.count("dynamics_rounds", d.rounds);
        ctx.count("dynamics_max_rounds", cfg.max_rounds);
        ctx.tolerance("dynamics_tol", cfg.tol);
    }

    let land = payoff_landscape(&scheme, &q, grid).map_err(CliError::compute("payoff landscape"))?;
    ctx.push(
        "landscape",
        Provenance::PerCitedConstruction,
        0.0,
        json!({ "file": "landscape.csv", "opponent": "Q", "rows": land.len() }),
    );
    ctx.plots.push(PlotTable {
        file: "landscape.csv",
        header: vec!["theta_a", "phi_a", "payoff_a", "payoff_b"],
        rows: land
            .iter()
            .map(|p| vec![p.theta_a, p.phi_a, p.payoff_a, p.payoff_b])
            .collect(),
    });
    ctx.count("grid", grid);
    ctx.count("scan_points", scan_points);
    ctx.count("complete_samples", COMPLETE_SAMPLES);
    ctx.tolerance("proper", PROPER_TOL);
    ctx.tolerance("complete", COMPLETE_TOL);
    ctx.tolerance("scan", SCAN_TOL);
    ctx.tolerance("deviation_margin", DEVIATION_MARGIN);
    ctx.tolerance("classical", CLASSICAL_TOL);
    Ok(())
}

fn run_penny(s: &Scenario, ctx: &mut Context) -> Result<(), CliError> {
    let penny = s.penny.as_ref().expect("resolved scenario has penny");
    let moves = penny.q_moves.as_ref().expect("resolved penny has q_moves");
    let points = penny.p_grid.expect("resolved penny has p_grid");
    let first = gate("penny.q_moves[0]", &moves[0])?;
    let second = gate("penny.q_moves[1]", &moves[1])?;
    let sweep = pennyflip_sweep(&first, &second, points).map_err(CliError::compute("penny flip"))?;
    let min = sweep.iter().map(|&(_, w)| w).fold(f64::INFINITY, f64::min);
    let max = sweep.iter().map(|&(_, w)| w).fold(f64::NEG_INFINITY, f64::max);
    ctx.push(
        "penny_flip",
        Provenance::PaperLiteral,
        EXACT_TOL,
        json!({
            "q_moves": moves,
            "points": points,
            "win_probability": min,
            "max_win_probability": max,
            "always_wins": min >= 1.0 - EXACT_TOL,
            "file": "penny_flip.csv",
        }),
    );
    ctx.plots.push(PlotTable {
        file: "penny_flip.csv",
        header: vec!["p", "win_prob"],
        rows: sweep.iter().map(|&(p, w)| vec![p, w]).collect(),
    });
    ctx.count("points", points);
    ctx.tolerance("exact", EXACT_TOL);
    Ok(())
}

fn run_classical(s: &Scenario, ctx: &mut Context) -> Result<(), CliError> {
    let game = classical_game(s)?;
    let labels = |player| game.labels(player).to_vec();
    let (la, lb) = (labels(Player::A), labels(Player::B));
    let mut pure = Vec::new();
    for (i, j) in game.pure_nash() {
        let (pa, pb) = game.pure_payoff(i, j).map_err(CliError::compute("pure payoff"))?;
        pure.push(json!({ "a": la[i], "b": lb[j], "payoffs": [pa, pb] }));
    }
    ctx.push("pure_nash", Provenance::PaperLiteral, 0.0, Value::Array(pure));
    if game.rows() == 2 && game.cols() == 2 {
        ctx.push(
            "mixed_nash",
            Provenance::PaperLiteral,
            CLASSICAL_TOL,
            classical_equilibria(&game)?,
        );
    }
    ctx.tolerance("classical", CLASSICAL_TOL);
    Ok(())
}
