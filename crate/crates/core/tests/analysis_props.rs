use interlearn::bounds::{
    diameter_bound, entropy, lower_bound_main_term, model_bound, star_bound, star_exact,
    unified_bound, BoundModel, ModelParams,
};
use interlearn::chain::{
    clique_chain, expected_mistakes, hitting_time, quasi_star_chain, stationary, star_chain,
    walk_chain, walk_hitting_closed_form, walk_hitting_recurrence, walk_off_target_fraction,
    MarkovChain,
};
use proptest::prelude::*;

const PS: [f64; 9] = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45];

fn assert_stochastic(c: &MarkovChain) {
    for i in 0..c.size() {
        let s: f64 = c.row(i).iter().sum();
        assert!((s - 1.0).abs() <= 1e-12, "row {i} sums to {s}");
    }
}

#[test]
fn chains_are_row_stochastic() {
    for p in [0.0, 0.01, 0.2, 0.45, 0.5, 0.9] {
        for b in [0.0, 0.001, 0.05, 0.3, 1.0] {
            assert_stochastic(&clique_chain(p, b).unwrap());
            assert_stochastic(&star_chain(p, b).unwrap());
            for d in [4, 6, 10, 20] {
                assert_stochastic(&quasi_star_chain(d, p, b).unwrap());
            }
        }
        for d in [1, 2, 7, 50] {
            assert_stochastic(&walk_chain(d, p).unwrap());
        }
    }
}

#[test]
fn walk_recurrence_matches_linear_solve() {
    for d in 1..=50 {
        for p in PS {
            let c = walk_chain(d, p).unwrap();
            let h = hitting_time(&c, 0, d).unwrap();
            assert!((walk_hitting_recurrence(d, p) - h).abs() <= 1e-9 * h.max(1.0), "d={d} p={p}");
            assert!((walk_hitting_closed_form(d, p).unwrap() - h).abs() <= 1e-9 * h.max(1.0));
        }
    }
}

/// The exact hitting time equals the stated expression plus `p r^d / (1-2p)^2`.
#[test]
fn walk_hitting_gap_is_explicit() {
    for d in 2..=50 {
        for p in PS {
            let h = hitting_time(&walk_chain(d, p).unwrap(), 0, d).unwrap();
            let s = 1.0 - 2.0 * p;
            let stated = d as f64 / s - p / (s * s);
            let r = p / (1.0 - p);
            let gap = p * r.powi(d as i32) / (s * s);
            assert!((h - stated - gap).abs() <= 1e-8 * h, "d={d} p={p}");
        }
    }
}

#[test]
fn off_target_fraction() {
    for d in 2..=50 {
        for p in PS {
            let r = p / (1.0 - p);
            let f = walk_off_target_fraction(d, p).unwrap();
            assert!(f <= r + 1e-15, "d={d} p={p}: {f} > {r}");
            let pi = stationary(&walk_chain(d, p).unwrap()).unwrap();
            assert!((1.0 - pi[d] - f).abs() <= 1e-9, "d={d} p={p}");
        }
    }
}

#[test]
fn clique_chain_reproduces_closed_form() {
    for (rounds, budget) in [(100usize, 10usize), (10_000, 100), (500, 0), (64, 64)] {
        for p in [0.0, 0.1, 0.3, 0.49] {
            let b = budget as f64 / rounds as f64;
            let m = expected_mistakes(&clique_chain(p, b).unwrap(), rounds, 0).unwrap();
            let closed = budget as f64 + p * (rounds - budget) as f64;
            assert!((m - closed).abs() <= 1e-9 * closed.max(1.0));
        }
    }
}

#[test]
fn star_exact_below_star_bound() {
    for i in 1..=45 {
        let p = i as f64 / 100.0;
        for rounds in [10usize, 100, 1000, 10_000] {
            for budget in 0..=rounds / 2 {
                if rounds > 100 && budget % (rounds / 100) != 0 {
                    continue;
                }
                let e = star_exact(rounds, budget, p).unwrap();
                let s = star_bound(rounds, budget, p).unwrap();
                assert!(e <= s + 1e-9, "p={p} R={rounds} B={budget}");
            }
        }
    }
}

#[test]
fn diameter_two_above_star_on_grid() {
    for i in 5..=30 {
        let p = i as f64 / 100.0;
        for rounds in [100usize, 1000, 10_000] {
            for k in 0..=20 {
                let budget = rounds * k / 100;
                let d2 = diameter_bound(2, rounds, budget, p).unwrap();
                let s = star_bound(rounds, budget, p).unwrap();
                assert!(d2 >= s - 1e-9, "p={p} R={rounds} B={budget}");
            }
        }
    }
}

/// Ordering of the model bounds with `k = B`, on the part of the grid where
/// the shifting bound dominates the m-neighborhood bound term by term, which
/// happens exactly when `Δ^m <= n^((B-1)/B)`.
#[test]
fn model_hierarchy() {
    let mut checked = 0;
    for n in [8usize, 16, 64, 256, 1024] {
        for delta in [2usize, 3, 4] {
            for m in 1..=3usize {
                for budget in 1..=8usize {
                    let lhs = (m as f64) * (delta as f64).log2();
                    let rhs = (budget - 1) as f64 / budget as f64 * (n as f64).log2();
                    if lhs > rhs {
                        continue;
                    }
                    for p in [0.0, 0.1, 0.3] {
                        let params = ModelParams {
                            n: Some(n),
                            max_degree: Some(delta),
                            k: Some(budget),
                            m: Some(m),
                            budget,
                            rounds: 200,
                            p,
                        };
                        let v = |model| model_bound(model, &params).unwrap().value;
                        let sp = v(BoundModel::ShortestPath);
                        let sh = v(BoundModel::Shifting);
                        let mn = v(BoundModel::MNeighborhood);
                        let dr = v(BoundModel::Drifting);
                        assert!(sp >= sh - 1e-9 && sh >= mn - 1e-9 && mn >= dr - 1e-9,
                                "n={n} Δ={delta} m={m} B={budget} p={p}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

proptest! {
    #[test]
    fn unified_is_monotone(n in 1usize..5000, delta in 1usize..50, rounds in 2usize..2000,
                           frac in 0.0f64..0.5, p in 0.0f64..0.49) {
        let budget = ((rounds as f64 * frac) as usize).min(rounds / 2);
        let v = |n, d, b| unified_bound(n, d, b, rounds, p).unwrap().value;
        let base = v(n, delta, budget);
        prop_assert!(v(n + 1, delta, budget) >= base);
        prop_assert!(v(n, delta + 1, budget) >= base);
        if budget < rounds / 2 {
            prop_assert!(v(n, delta, budget + 1) >= base);
        }
    }

    #[test]
    fn reports_add_up(n in 1usize..5000, delta in 1usize..50, rounds in 0usize..2000,
                      frac in 0.0f64..=1.0, p in 0.0f64..0.49) {
        let budget = (rounds as f64 * frac) as usize;
        let r = unified_bound(n, delta, budget, rounds, p).unwrap();
        let sum: f64 = r.components.iter().map(|c| c.1).sum();
        prop_assert!((r.value - r.scale * sum).abs() <= 1e-9 * r.value.max(1.0));
        prop_assert!(r.value >= 0.0);
        prop_assert!((r.scale - 1.0 / (1.0 - entropy(p))).abs() < 1e-12);
    }

    #[test]
    fn lower_bound_main_term_matches(n in 1usize..5000, delta in 1usize..50, rounds in 0usize..2000,
                                     frac in 0.0f64..=1.0, p in 0.0f64..0.49) {
        let budget = (rounds as f64 * frac) as usize;
        let lb = lower_bound_main_term(n, delta, budget, rounds, p).unwrap();
        let ub = unified_bound(n, delta, budget, rounds, p).unwrap().value;
        prop_assert!((lb - ub).abs() <= 1e-12 * ub.max(1.0));
    }
}
