use ibex::baselines::{algorithm_b, astar, ida_star};
use ibex::domain::{Chain, Coconut, Mero};
use ibex::graph::astar_with_bgs_fallback;
use ibex::rng::rng;
use ibex::*;
use rand::Rng;

#[test]
fn algorithm_b_is_quadratic_on_mero() {
    for d in [50, 100, 200, 400] {
        let small = algorithm_b(&Mero::new(d)).expansions as f64;
        let large = algorithm_b(&Mero::new(2 * d)).expansions as f64;
        let ratio = large / small;
        assert!((3.5..=4.5).contains(&ratio), "d={d}: ratio {ratio}");
    }
}

#[test]
fn astar_matches_closed_form_on_mero() {
    for d in [10u32, 30, 100] {
        let d2 = f64::from(d);
        let want = 0.75 * d2 * d2 + 1.5 * d2 + 2.0;
        let got = astar(&Mero::new(d)).expansions as f64;
        assert!((got - want).abs() <= 0.02 * want, "d={d}: {got} vs {want}");
    }
}

#[test]
fn dovbgs_on_mero() {
    let r = bgs(Mero::new(100), Driver::DovEnhanced(DovParams::default()));
    assert_eq!(r.cost(), Some(Mero::new(100).optimal_cost()));
    assert!(r.expansions <= 2 * 449, "{}", r.expansions);
}

#[test]
fn astar_falls_back_to_bgs_on_mero() {
    let m = Mero::new(1000);
    let (report, switched) = astar_with_bgs_fallback(&m, Driver::default());
    assert!(switched);
    assert_eq!(report.cost(), Some(m.optimal_cost()));
    assert!(report.expansions < 751_502, "{}", report.expansions);
}

#[test]
fn astar_keeps_going_without_reexpansions() {
    let (report, switched) = astar_with_bgs_fallback(Chain::new(3000), Driver::default());
    assert!(!switched);
    assert_eq!(report.expansions, 3001);
}

// depths up to 10^5 match the scale of the published chain results
#[test]
fn dovbts_on_random_chains() {
    let mut r = rng(0);
    let driver = Driver::DovEnhanced(DovParams::default());
    let mut total = 0u64;
    for _ in 0..100 {
        let n = r.random_range(1..=100_000u32);
        let report = bts(Chain::new(n), driver, TreeOptions::default());
        assert_eq!(report.cost(), Some(Cost::from(n)));
        total += report.expansions;
    }
    let mean = total as f64 / 100.0;
    assert!((24.9e4 / 2.0..=24.9e4 * 2.0).contains(&mean), "mean {mean}");
}

#[test]
fn bts_on_a_long_chain_is_near_linear() {
    let r = bts(Chain::new(10_000), Driver::default(), TreeOptions::default());
    assert_eq!(r.cost(), Some(Cost::new(10_000.0)));
    assert!(r.expansions < 1_000_000);
    assert_eq!(ida_star(Chain::new(100), TreeOptions::default()).expansions, (2..=101).sum::<u64>());
}

#[test]
fn incumbent_never_costs_expansions_on_coconut() {
    let mut r = rng(4);
    let mut saved = 0;
    for _ in 0..20 {
        let depth = r.random_range(1..=300);
        let suffix: Vec<u8> = (0..r.random_range(0..=6)).map(|_| r.random_range(0..3)).collect();
        let c = Coconut::new(depth, r.random_range(0..3), suffix);
        let run = |incumbent| bts(&c, Driver::default(), TreeOptions { cycle_check: CycleCheck::None, incumbent });
        let (with, without) = (run(true), run(false));
        for report in [&with, &without] {
            let cost = report.cost().expect("solved").get();
            assert!((cost - c.optimal_cost().get()).abs() < 1e-9, "{c:?}: {cost}");
        }
        assert!(with.expansions <= without.expansions, "{c:?}: {} > {}", with.expansions, without.expansions);
        saved += without.expansions - with.expansions;
    }
    eprintln!("incumbent saved {saved} expansions");
}
