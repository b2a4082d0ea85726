//! Acceptance suite. Runs as a plain binary so each criterion prints exactly
//! one PASS/FAIL line in order, with its own wall-clock budget.

use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qgame_core::classical::{ClassicalGame, MixedProfile};
use qgame_core::hilbert::gates::{hadamard, identity2, q_type};
use qgame_core::hilbert::random::{random_state, random_unitary};
use qgame_core::preference::PreferenceOrder;
use qgame_core::qgame::{
    equilibrium_states, is_equilibrium_state, is_nash_profile, payoff_map, sampled_max_min_overlap,
    EquilibriumCertificate, QuantumGame, Strategy, StrategyMode, StrategyProfile,
};
use qgame_core::quantize::{
    check_complete, check_proper, ewl_best_response_scan, ewl_payoff, mixed_best_response_dynamics, pennyflip_play,
    rotation_mixer, DynamicsConfig, Embedding, QuantizationScheme, StrategyClass,
};
use qgame_core::search::{find_nash_profile, NashSearch, SearchConfig};
use qgame_core::{Player, QuantumState, UnitaryOperator, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome, Duration);

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn game(top_a: usize, top_b: usize, mode: StrategyMode) -> QuantumGame {
    QuantumGame::computational(
        PreferenceOrder::with_top(4, top_a).unwrap(),
        PreferenceOrder::with_top(4, top_b).unwrap(),
        mode,
    )
    .unwrap()
}

fn criterion_1() -> Outcome {
    const SAMPLES: usize = 100_000;
    const SEED: u64 = 20_240_601;
    for a in 0..4 {
        for b in 0..4 {
            let g = game(a, b, StrategyMode::Joint);
            let eq = equilibrium_states(&g);
            if a != b {
                check(eq.is_empty(), || format!("tops {a},{b}: expected no equilibrium"))?;
                // Every candidate state loses to one of the two tops, and no
                // sampled state serves both players beyond the bound 1/2.
                for player in [Player::A, Player::B] {
                    let c = is_equilibrium_state(&g, g.top(player), 0, SEED).map_err(|e| e.to_string())?;
                    check(!c.is_certified(), || format!("tops {a},{b}: top state certified"))?;
                }
                let best = sampled_max_min_overlap(&g, SAMPLES, SEED).map_err(|e| e.to_string())?;
                check(best <= 0.5 + 1e-12, || {
                    format!("tops {a},{b}: sampled min-overlap {best}")
                })?;
            } else {
                check(eq.len() == 1, || format!("tops {a},{a}: {} equilibria", eq.len()))?;
                let basis = QuantumState::basis(4, a).unwrap();
                check(eq[0].overlap(&basis).unwrap() >= 1.0 - 1e-12, || {
                    format!("tops {a},{a}: wrong equilibrium state")
                })?;
                let c = is_equilibrium_state(&g, &eq[0], SAMPLES, SEED).map_err(|e| e.to_string())?;
                check(c == EquilibriumCertificate::Certified { samples: SAMPLES }, || {
                    format!("tops {a},{a}: refuter found {c:?}")
                })?;
                // Independent sweep: no sampled state's min-overlap exceeds the equilibrium's.
                let claimed = eq[0].amplitudes()[a].norm_sqr();
                let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5eed);
                let mut best: f64 = 0.0;
                for _ in 0..SAMPLES {
                    best = best.max(random_state(&mut rng, 4).amplitudes()[a].norm_sqr());
                }
                check(best <= claimed + 1e-12, || {
                    format!("tops {a},{a}: sample {best} beats {claimed}")
                })?;
            }
        }
    }
    Ok(format!(
        "12 distinct-top games empty, 4 equal-top games certified over {SAMPLES} samples"
    ))
}

fn criterion_2() -> Outcome {
    let cfg = SearchConfig::default();
    let mut worst: f64 = 1.0;
    for mode in [StrategyMode::Joint, StrategyMode::Local] {
        for m in 0..4 {
            let g = game(m, m, mode);
            match find_nash_profile(&g, &cfg).map_err(|e| e.to_string())? {
                NashSearch::Found { profile, overlap, .. } => {
                    check(overlap >= 1.0 - 1e-6, || format!("{mode:?} top {m}: overlap {overlap}"))?;
                    let v = is_nash_profile(&g, &profile, 1e-6).map_err(|e| e.to_string())?;
                    check(v.is_nash(), || format!("{mode:?} top {m}: re-verification gave {v:?}"))?;
                    worst = worst.min(overlap);
                }
                other => return Err(format!("{mode:?} top {m}: {other:?}")),
            }
        }
    }
    Ok(format!("8 games found, smallest overlap {worst:.9}"))
}

/// Plain-loop reference for the payoff map.
fn oracle(mode: StrategyMode, p: &StrategyProfile) -> Vec<C64> {
    let a = p.a.init.amplitudes();
    let b = p.b.init.amplitudes();
    let mut v = vec![C64::new(0.0, 0.0); 4];
    for i in 0..2 {
        for j in 0..2 {
            v[2 * i + j] = a[i] * b[j];
        }
    }
    let mul = |u: &UnitaryOperator, v: &[C64]| -> Vec<C64> {
        let n = v.len();
        (0..n)
            .map(|r| (0..n).fold(C64::new(0.0, 0.0), |acc, c| acc + u.matrix().get(r, c) * v[c]))
            .collect()
    };
    match mode {
        StrategyMode::Joint => mul(&p.a.unitary, &mul(&p.b.unitary, &v)),
        StrategyMode::Local => {
            let (ua, ub) = (p.a.unitary.matrix(), p.b.unitary.matrix());
            let mut w = vec![C64::new(0.0, 0.0); 4];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        for l in 0..2 {
                            w[2 * i + j] += ua.get(i, k) * ub.get(j, l) * v[2 * k + l];
                        }
                    }
                }
            }
            w
        }
    }
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for mode in [StrategyMode::Joint, StrategyMode::Local] {
        let g = game(3, 3, mode);
        let d = mode.unitary_dim();
        for k in 0..1000 {
            let mut strategy = || Strategy::new(random_state(&mut rng, 2), random_unitary(&mut rng, d)).unwrap();
            let p = StrategyProfile::new(strategy(), strategy());
            let out = payoff_map(&g, &p).map_err(|e| e.to_string())?;
            let want = oracle(mode, &p);
            let err = out
                .amplitudes()
                .iter()
                .zip(&want)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            let norm = out.amplitudes().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            check(err <= 1e-12, || format!("{mode:?} profile {k}: error {err:e}"))?;
            check((norm - 1.0).abs() <= 1e-12, || {
                format!("{mode:?} profile {k}: norm {norm}")
            })?;
            worst = worst.max(err);
        }
    }
    Ok(format!("2000 profiles, max deviation from oracle {worst:.2e}"))
}

fn random_game(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ClassicalGame {
    let mut m = || -> Vec<Vec<f64>> {
        (0..rows)
            .map(|_| (0..cols).map(|_| rng.random_range(-10.0..10.0)).collect())
            .collect()
    };
    let (a, b) = (m(), m());
    ClassicalGame::unlabeled(a, b).unwrap()
}

/// Independent best-response check for a 2×2 profile.
fn best_response_gap(g: &ClassicalGame, m: &MixedProfile) -> f64 {
    let a = g.payoff_matrix(Player::A);
    let b = g.payoff_matrix(Player::B);
    let row = |i: usize| m.q[0] * a[i][0] + m.q[1] * a[i][1];
    let col = |j: usize| m.p[0] * b[0][j] + m.p[1] * b[1][j];
    let ua = m.p[0] * row(0) + m.p[1] * row(1);
    let ub = m.q[0] * col(0) + m.q[1] * col(1);
    (row(0).max(row(1)) - ua).max(col(0).max(col(1)) - ub)
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..100 {
        let (r, c) = (rng.random_range(1..5), rng.random_range(1..5));
        let g = random_game(&mut rng, r, c);
        for i in 0..r {
            for j in 0..c {
                let mixed = g
                    .mixed_payoff(&MixedProfile::pure(r, c, i, j))
                    .map_err(|e| e.to_string())?;
                let pure = g.pure_payoff(i, j).map_err(|e| e.to_string())?;
                check(mixed == pure, || {
                    format!("game {k} cell ({i},{j}): {mixed:?} vs {pure:?}")
                })?;
            }
        }
    }
    let mut profiles = 0;
    for k in 0..100 {
        let g = random_game(&mut rng, 2, 2);
        let set = g.mixed_nash_2x2().map_err(|e| e.to_string())?;
        check(!set.is_empty(), || {
            format!("random 2x2 game {k}: empty equilibrium set")
        })?;
        for m in set.profiles() {
            let gap = best_response_gap(&g, m);
            check(gap <= 1e-10, || {
                format!("random 2x2 game {k}: best-response gap {gap:e}")
            })?;
            profiles += 1;
        }
    }
    let mp = ClassicalGame::matching_pennies()
        .mixed_nash_2x2()
        .map_err(|e| e.to_string())?;
    let all: Vec<&MixedProfile> = mp.profiles().collect();
    check(all.len() == 1, || format!("matching pennies: {} equilibria", all.len()))?;
    let half = MixedProfile::binary(0.5, 0.5);
    check(all[0].approx_eq(&half, 1e-12), || {
        format!("matching pennies: {:?}", all[0])
    })?;
    Ok(format!(
        "100 degenerate-profile games exact, {profiles} equilibria verified, matching pennies at (1/2, 1/2)"
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let emb = Embedding::symmetric(identity2(), qgame_core::hilbert::gates::pauli_x());
    let (mut worst_proper, mut worst_complete): (f64, f64) = (0.0, 0.0);
    for k in 0..100 {
        let scheme = QuantizationScheme::standard(random_game(&mut rng, 2, 2), 0.0).map_err(|e| e.to_string())?;
        let p = check_proper(&scheme, &emb, 1e-12).map_err(|e| e.to_string())?;
        check(p.proper, || format!("game {k}: properness error {:e}", p.max_error))?;
        let c = check_complete(&scheme, &emb, rotation_mixer, 200, 1e-9, k).map_err(|e| e.to_string())?;
        check(c.complete && c.samples == 200, || {
            format!("game {k}: completeness error {:e}", c.max_error)
        })?;
        worst_proper = worst_proper.max(p.max_error);
        worst_complete = worst_complete.max(c.max_error);
    }
    Ok(format!(
        "100 games at gamma=0: proper (max error {worst_proper:.1e}), complete over 200 samples (max error {worst_complete:.1e})"
    ))
}

fn criterion_6() -> Outcome {
    const GRID: usize = 64;
    let pd = ClassicalGame::prisoners_dilemma();
    let scheme = QuantizationScheme::standard(pd.clone(), FRAC_PI_2).map_err(|e| e.to_string())?;
    let q = q_type();
    let (qa, qb) = ewl_payoff(&scheme, &q, &q).map_err(|e| e.to_string())?;
    let cc = pd.pure_payoff(0, 0).unwrap();
    let dd = pd.pure_payoff(1, 1).unwrap();
    check((qa - cc.0).abs() <= 1e-12 && (qb - cc.1).abs() <= 1e-12, || {
        format!("(Q,Q) pays ({qa}, {qb})")
    })?;

    for mover in [Player::A, Player::B] {
        let r =
            ewl_best_response_scan(&scheme, mover, &q, StrategyClass::TwoParameter, GRID).map_err(|e| e.to_string())?;
        let own = if mover == Player::A { qa } else { qb };
        check(r.payoff <= own + 1e-9, || {
            format!("(a) two-parameter reply for {mover} pays {} > {own}", r.payoff)
        })?;
    }

    let mut gain: f64 = f64::NEG_INFINITY;
    for mover in [Player::A, Player::B] {
        let r = ewl_best_response_scan(&scheme, mover, &q, StrategyClass::FullU2, GRID).map_err(|e| e.to_string())?;
        let own = if mover == Player::A { qa } else { qb };
        gain = gain.max(r.payoff - own);
    }
    check(gain > 0.1, || format!("(b) best full-U(2) deviation gains only {gain}"))?;

    let cfg = DynamicsConfig {
        grid: GRID,
        ..DynamicsConfig::default()
    };
    let d = mixed_best_response_dynamics(&scheme, q.clone(), q, &cfg).map_err(|e| e.to_string())?;
    check(d.converged, || {
        format!("(c) dynamics did not converge in {} rounds", d.rounds)
    })?;
    check(d.a.atoms().len() <= 2 && d.b.atoms().len() <= 2, || {
        "(c) more than two atoms".to_string()
    })?;
    for (v, lo, hi) in [(d.payoffs.0, dd.0, cc.0), (d.payoffs.1, dd.1, cc.1)] {
        check(lo < v && v < hi, || format!("(c) payoff {v} outside ({lo}, {hi})"))?;
    }
    Ok(format!(
        "(a) Q mutual best reply at grid {GRID}, (b) deviation gain {gain:.3}, (c) dynamics payoffs ({:.4}, {:.4}) in ({}, {}) after {} rounds",
        d.payoffs.0, d.payoffs.1, dd.0, cc.0, d.rounds
    ))
}

fn criterion_7() -> Outcome {
    let h = hadamard();
    let mut worst: f64 = 0.0;
    for k in 0..=100 {
        let p = k as f64 / 100.0;
        let w = pennyflip_play(&h, &h, p).map_err(|e| e.to_string())?;
        check((w - 1.0).abs() <= 1e-12, || format!("(H,H) at p={p}: {w}"))?;
        worst = worst.max((w - 1.0).abs());
    }
    let i = identity2();
    let w0 = pennyflip_play(&i, &i, 0.0).map_err(|e| e.to_string())?;
    let w1 = pennyflip_play(&i, &i, 1.0).map_err(|e| e.to_string())?;
    check(w0 == 1.0 && w1 == 0.0, || {
        format!("(I,I): p=0 gives {w0}, p=1 gives {w1}")
    })?;
    Ok(format!(
        "(H,H) wins on all 101 grid points (max error {worst:.1e}); (I,I) exact at p=0,1"
    ))
}

fn scenario_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn json_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    v
}

fn run_binary(scenario: &Path, out: &Path, format: &str) -> Result<(), String> {
    let o = Command::new(env!("CARGO_BIN_EXE_qgame"))
        .args(["run", "--format", format, "--scenario"])
        .arg(scenario)
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    check(o.status.success(), || {
        format!("{} failed: {}", scenario.display(), String::from_utf8_lossy(&o.stderr))
    })
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect();
    v.sort();
    v
}

/// Field each invalid scenario must name.
const INVALID: [(&str, &str); 11] = [
    ("bad_gate.json", "penny.q_moves[1]"),
    ("bad_mode.json", "mode"),
    ("gamma_out_of_range.json", "gamma"),
    ("grid_too_small.json", "grid"),
    ("irrelevant_field.json", "gamma"),
    ("missing_prefs.json", "prefs"),
    ("quantization_not_2x2.json", "game.payoff_a"),
    ("repeated_pref_label.json", "prefs.a"),
    ("unknown_field.json", "colour"),
    ("unknown_kind.json", "kind"),
    ("unknown_nested_field.json", "penny.flips"),
];

fn criterion_8() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bundled = json_files(&scenario_dir());
    check(!bundled.is_empty(), || "no bundled scenarios".to_string())?;
    let mut files = 0;
    for s in &bundled {
        for format in ["json", "csv"] {
            let name = s.file_stem().unwrap().to_string_lossy();
            let dirs = [1, 2].map(|k| tmp.path().join(format!("{name}-{format}-{k}")));
            for d in &dirs {
                run_binary(s, d, format)?;
            }
            let (first, second) = (dir_bytes(&dirs[0]), dir_bytes(&dirs[1]));
            check(first == second, || {
                format!("{name} ({format}): reports differ between runs")
            })?;
            files += first.len();
        }
    }

    let invalid = json_files(&scenario_dir().join("invalid"));
    check(invalid.len() == INVALID.len(), || {
        format!("{} invalid scenarios but {} expectations", invalid.len(), INVALID.len())
    })?;
    for (file, field) in INVALID {
        let path = scenario_dir().join("invalid").join(file);
        for sub in ["validate", "run"] {
            let mut cmd = Command::new(env!("CARGO_BIN_EXE_qgame"));
            cmd.args([sub, "--scenario"]).arg(&path);
            if sub == "run" {
                cmd.arg("--out").arg(tmp.path().join("invalid"));
            }
            let o = cmd.output().map_err(|e| e.to_string())?;
            let stderr = String::from_utf8_lossy(&o.stderr);
            check(o.status.code() == Some(2), || {
                format!("{file}: {sub} exit code {:?}", o.status.code())
            })?;
            check(stderr.contains(&format!("`{field}`")), || {
                format!("{file}: {sub} error does not name `{field}`: {stderr}")
            })?;
        }
    }
    check(!tmp.path().join("invalid").exists(), || {
        "invalid run wrote output".to_string()
    })?;
    Ok(format!(
        "{} scenarios x 2 formats byte-identical ({files} files), {} invalid scenarios exit 2 naming the field",
        bundled.len(),
        INVALID.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "equilibrium dichotomy", criterion_1, Duration::from_secs(5)),
        (2, "Nash-profile search", criterion_2, Duration::from_secs(30)),
        (3, "payoff-map fidelity", criterion_3, Duration::MAX),
        (4, "classical proper extension", criterion_4, Duration::MAX),
        (5, "classical-limit quantization", criterion_5, Duration::MAX),
        (6, "quantized Prisoner's Dilemma", criterion_6, Duration::from_secs(120)),
        (7, "penny flip", criterion_7, Duration::MAX),
        (8, "determinism and interface", criterion_8, Duration::MAX),
    ];
    let mut failed = 0;
    for (n, name, f, budget) in criteria {
        let start = Instant::now();
        let mut outcome = f();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > budget {
            outcome = Err(format!(
                "took {:.2} s, budget {} s",
                elapsed.as_secs_f64(),
                budget.as_secs()
            ));
        }
        match outcome {
            Ok(msg) => println!("criterion {n} ({name}): PASS [{:.2} s] {msg}", elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL [{:.2} s] {msg}", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
