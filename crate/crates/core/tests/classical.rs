use proptest::prelude::*;
use qgame_core::classical::{ClassicalGame, MixedProfile, NashComponent};
use qgame_core::{Error, Player};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn game2(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> ClassicalGame {
    ClassicalGame::unlabeled(
        a.iter().map(|r| r.to_vec()).collect(),
        b.iter().map(|r| r.to_vec()).collect(),
    )
    .unwrap()
}

/// Support-aware best-response test written against raw matrices.
fn independent_check(g: &ClassicalGame, m: &MixedProfile, tol: f64) -> bool {
    let a = g.payoff_matrix(Player::A);
    let b = g.payoff_matrix(Player::B);
    let row_vals: Vec<f64> = (0..g.rows())
        .map(|i| (0..g.cols()).map(|j| a[i][j] * m.q[j]).sum())
        .collect();
    let col_vals: Vec<f64> = (0..g.cols())
        .map(|j| (0..g.rows()).map(|i| b[i][j] * m.p[i]).sum())
        .collect();
    let ok = |vals: &[f64], w: &[f64]| {
        let best = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        w.iter().zip(vals).all(|(&x, &v)| x <= 0.0 || (best - v) <= tol)
    };
    ok(&row_vals, &m.p) && ok(&col_vals, &m.q)
}

fn random_game(rng: &mut ChaCha8Rng) -> ClassicalGame {
    let mut cell = || rng.random::<f64>() * 10.0 - 5.0;
    game2(
        [[cell(), cell()], [cell(), cell()]],
        [[cell(), cell()], [cell(), cell()]],
    )
}

#[test]
fn pure_payoff_examples() {
    let pd = ClassicalGame::prisoners_dilemma();
    assert_eq!(pd.pure_payoff(1, 1).unwrap(), (1.0, 1.0));
    assert_eq!(pd.pure_payoff(0, 0).unwrap(), (3.0, 3.0));
    assert_eq!(pd.pure_payoff(0, 1).unwrap(), (0.0, 5.0));
    assert_eq!(pd.pure_payoff(1, 0).unwrap(), (5.0, 0.0));
    let zero = game2([[0.0; 2]; 2], [[0.0; 2]; 2]);
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(zero.pure_payoff(i, j).unwrap(), (0.0, 0.0));
        }
    }
    assert!(matches!(pd.pure_payoff(2, 0), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn mixed_payoff_examples() {
    let pd = ClassicalGame::prisoners_dilemma();
    assert_eq!(pd.mixed_payoff(&MixedProfile::pure(2, 2, 1, 0)).unwrap(), (5.0, 0.0));
    let u = pd.mixed_payoff(&MixedProfile::binary(0.5, 0.5)).unwrap();
    let brute: f64 = [3.0, 0.0, 5.0, 1.0].iter().sum::<f64>() / 4.0;
    assert_eq!(u, (brute, brute));
    assert_eq!(u, (2.25, 2.25));
    let zero = game2([[0.0; 2]; 2], [[0.0; 2]; 2]);
    assert_eq!(zero.mixed_payoff(&MixedProfile::binary(0.3, 0.9)).unwrap(), (0.0, 0.0));
    let wrong = MixedProfile::new(vec![1.0], vec![0.5, 0.5]).unwrap();
    assert!(pd.mixed_payoff(&wrong).is_err());
}

#[test]
fn invalid_games_and_profiles_are_rejected() {
    assert!(ClassicalGame::unlabeled(vec![vec![1.0, 2.0], vec![3.0]], vec![vec![1.0, 2.0], vec![3.0, 4.0]]).is_err());
    assert!(ClassicalGame::unlabeled(vec![vec![f64::NAN]], vec![vec![0.0]]).is_err());
    assert!(MixedProfile::new(vec![0.5, 0.6], vec![1.0]).is_err());
    assert!(MixedProfile::new(vec![-0.5, 1.5], vec![1.0]).is_err());
}

#[test]
fn pure_nash_examples() {
    assert_eq!(ClassicalGame::prisoners_dilemma().pure_nash(), vec![(1, 1)]);
    assert!(ClassicalGame::matching_pennies().pure_nash().is_empty());
    assert_eq!(ClassicalGame::coordination().pure_nash(), vec![(0, 0), (1, 1)]);
    let three = ClassicalGame::unlabeled(
        vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
        vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
    )
    .unwrap();
    assert_eq!(three.pure_nash(), vec![(0, 0), (1, 1), (2, 2)]);
}

#[test]
fn mixed_nash_examples() {
    let mp = ClassicalGame::matching_pennies().mixed_nash_2x2().unwrap();
    assert_eq!(mp.components.len(), 1);
    let only = mp.profiles().next().unwrap();
    assert!(only.approx_eq(&MixedProfile::binary(0.5, 0.5), 1e-12));

    let pd = ClassicalGame::prisoners_dilemma().mixed_nash_2x2().unwrap();
    assert_eq!(
        pd.components,
        vec![NashComponent::Point(MixedProfile::pure(2, 2, 1, 1))]
    );
    assert!(!pd.degenerate());

    let bos = ClassicalGame::battle_of_the_sexes();
    let set = bos.mixed_nash_2x2().unwrap();
    let ps: Vec<&MixedProfile> = set.profiles().collect();
    assert_eq!(ps.len(), 3);
    // Indifference: q·2 = (1−q)·1 → q = 1/3; p·1 = (1−p)·2 → p = 2/3.
    let interior = MixedProfile::binary(2.0 / 3.0, 1.0 / 3.0);
    assert!(ps.iter().any(|m| m.approx_eq(&interior, 1e-12)));
    assert!(ps.iter().any(|m| m.approx_eq(&MixedProfile::pure(2, 2, 0, 0), 0.0)));
    assert!(ps.iter().any(|m| m.approx_eq(&MixedProfile::pure(2, 2, 1, 1), 0.0)));

    let three = ClassicalGame::unlabeled(vec![vec![0.0; 3]; 2], vec![vec![0.0; 3]; 2]).unwrap();
    assert!(three.mixed_nash_2x2().is_err());
}

#[test]
fn continua_are_reported_as_families() {
    // B is indifferent everywhere; A strictly prefers row 0.
    let g = game2([[1.0, 1.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]);
    let set = g.mixed_nash_2x2().unwrap();
    assert!(set.degenerate());
    for m in set.profiles() {
        assert!(independent_check(&g, m, 1e-10));
        assert_eq!(m.p, vec![1.0, 0.0]);
    }
    let zero = game2([[0.0; 2]; 2], [[0.0; 2]; 2]).mixed_nash_2x2().unwrap();
    assert!(zero.degenerate());
    assert_eq!(zero.components.len(), 1);
}

#[test]
fn random_games_have_verified_equilibria() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let g = random_game(&mut rng);
        let set = g.mixed_nash_2x2().unwrap();
        assert!(!set.is_empty());
        for m in set.profiles() {
            assert!(independent_check(&g, m, 1e-10), "{g:?} {m:?}");
            assert!(g.is_mixed_nash(m, 1e-10).unwrap());
        }
    }
}

fn arb_game() -> impl Strategy<Value = ClassicalGame> {
    any::<u64>().prop_map(|seed| random_game(&mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #[test]
    fn degenerate_profiles_reproduce_pure_payoffs(g in arb_game(), i in 0usize..2, j in 0usize..2) {
        prop_assert_eq!(g.mixed_payoff(&MixedProfile::pure(2, 2, i, j)).unwrap(), g.pure_payoff(i, j).unwrap());
    }

    #[test]
    fn mixed_payoff_is_bilinear(g in arb_game(), p1 in 0.0f64..1.0, p2 in 0.0f64..1.0, t in 0.0f64..1.0, q in 0.0f64..1.0) {
        let mix = t * p1 + (1.0 - t) * p2;
        let lhs = g.mixed_payoff(&MixedProfile::binary(mix, q)).unwrap();
        let x = g.mixed_payoff(&MixedProfile::binary(p1, q)).unwrap();
        let y = g.mixed_payoff(&MixedProfile::binary(p2, q)).unwrap();
        prop_assert!((lhs.0 - (t * x.0 + (1.0 - t) * y.0)).abs() <= 1e-12);
        prop_assert!((lhs.1 - (t * x.1 + (1.0 - t) * y.1)).abs() <= 1e-12);
        let lhs = g.mixed_payoff(&MixedProfile::binary(q, mix)).unwrap();
        let x = g.mixed_payoff(&MixedProfile::binary(q, p1)).unwrap();
        let y = g.mixed_payoff(&MixedProfile::binary(q, p2)).unwrap();
        prop_assert!((lhs.0 - (t * x.0 + (1.0 - t) * y.0)).abs() <= 1e-12);
        prop_assert!((lhs.1 - (t * x.1 + (1.0 - t) * y.1)).abs() <= 1e-12);
    }

    #[test]
    fn equilibria_always_exist_even_with_ties(cells in proptest::collection::vec(-2i32..3, 8)) {
        // Small integer payoffs hit many degenerate ties.
        let c: Vec<f64> = cells.iter().map(|&x| x as f64).collect();
        let g = game2([[c[0], c[1]], [c[2], c[3]]], [[c[4], c[5]], [c[6], c[7]]]);
        let set = g.mixed_nash_2x2().unwrap();
        prop_assert!(!set.is_empty());
        for m in set.profiles() {
            prop_assert!(independent_check(&g, m, 1e-10));
        }
    }
}
