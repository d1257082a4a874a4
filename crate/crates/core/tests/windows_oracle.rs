mod common;

use common::*;
use delaycalc::windows::all_ones_half_open;
use delaycalc::{dilate, erode, erode_via_derivative, Signal, StepFunction, WindowSpec};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const SCALE: i64 = 4;

fn window(rng: &mut ChaCha8Rng) -> (i64, i64, WindowSpec) {
    let d = rng.random_range(0..=24);
    let m = rng.random_range(0..=d);
    (d, m, WindowSpec::new(frac(d, SCALE), frac(m, SCALE)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn operators_match_brute_force(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let u = random_step(&mut rng, SCALE, -4, 10, 10);
        let (d, m, w) = window(&mut rng);
        let table = Table::new(&Ticks::of(&u, SCALE), -30 * SCALE, 30 * SCALE);
        let (lo, hi) = (Ticks::of(&erode(&u, &w), SCALE), Ticks::of(&dilate(&u, &w), SCALE));
        for t in -10 * SCALE..=20 * SCALE {
            prop_assert_eq!(lo.at(t), oracle_erode(&table, t, d, m), "erode at {}", from_tick(t, SCALE));
            prop_assert_eq!(hi.at(t), oracle_dilate(&table, t, d, m), "dilate at {}", from_tick(t, SCALE));
        }
    }

    #[test]
    fn left_limits_match_brute_force(seed in any::<u64>()) {
        // sampling half a tick early on the doubled grid gives the left limit
        let mut rng = rng(seed);
        let u = random_step(&mut rng, SCALE, -4, 10, 10);
        let (d, m, w) = window(&mut rng);
        let fine = 2 * SCALE;
        let table = Table::new(&Ticks::of(&u, fine), -30 * fine, 30 * fine);
        let lo = erode(&u, &w);
        let hi = dilate(&u, &w);
        for k in -8 * SCALE..=18 * SCALE {
            let t = from_tick(k, SCALE);
            let before = 2 * k - 1;
            prop_assert_eq!(lo.left_limit_at(&t), oracle_erode(&table, before, 2 * d, 2 * m));
            prop_assert_eq!(hi.left_limit_at(&t), oracle_dilate(&table, before, 2 * d, 2 * m));
            let start = &t - w.offset();
            let identity = u.left_limit_at(&start) && all_ones_half_open(&u, &start, w.width());
            prop_assert_eq!(lo.left_limit_at(&t), identity, "at {}", t);
        }
    }

    #[test]
    fn derivative_form_agrees(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let u = random_step(&mut rng, 3, -4, 10, 12);
        let d = frac(rng.random_range(0..=30), 6);
        let m = frac(rng.random_range(0..=30), 6).min(d.clone());
        let w = WindowSpec::new(d, m).unwrap();
        prop_assert_eq!(erode_via_derivative(&u, &w), erode(&u, &w));
    }

    #[test]
    fn duality(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let u = random_step(&mut rng, 3, -4, 10, 12);
        let (_, _, w) = window(&mut rng);
        prop_assert_eq!(dilate(&u, &w), erode(&u.not(), &w).not());
        prop_assert_eq!(erode(&u, &w), dilate(&u.not(), &w).not());
    }

    #[test]
    fn translations_lie_between(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let u = random_step(&mut rng, SCALE, -4, 10, 10);
        let (d, m, w) = window(&mut rng);
        let lo = erode(&u, &w);
        let hi = dilate(&u, &w);
        for k in d - m..=d {
            let shifted = u.translate(&frac(k, SCALE));
            prop_assert!(lo.leq(&shifted) && shifted.leq(&hi));
        }
        let zero = WindowSpec::new(frac(d, SCALE), 0).unwrap();
        prop_assert_eq!(erode(&u, &zero), u.translate(&frac(d, SCALE)));
        prop_assert_eq!(dilate(&u, &zero), u.translate(&frac(d, SCALE)));
    }

    #[test]
    fn monotone(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let u = random_step(&mut rng, SCALE, -4, 10, 10);
        let v = u.or(&random_step(&mut rng, SCALE, -4, 10, 6));
        let (_, _, w) = window(&mut rng);
        prop_assert!(erode(&u, &w).leq(&erode(&v, &w)));
        prop_assert!(dilate(&u, &w).leq(&dilate(&v, &w)));
    }

    #[test]
    fn short_pulses_are_swallowed(a in 0i64..40, len in 1i64..20, d in 0i64..20, m in 0i64..20) {
        let m = m.min(d);
        let u = Signal::from_pairs([(frac(a, SCALE), frac(a + len, SCALE))]).unwrap();
        let w = WindowSpec::new(frac(d, SCALE), frac(m, SCALE)).unwrap();
        let out = erode(&u, &w);
        if len <= m {
            prop_assert!(out.is_constant() && !out.final_value());
        } else {
            let expected = Signal::from_pairs([(frac(a + d, SCALE), frac(a + len + d - m, SCALE))]).unwrap();
            prop_assert_eq!(&out, expected.as_step());
        }
        let grown = Signal::from_pairs([(frac(a + d - m, SCALE), frac(a + len + d, SCALE))]).unwrap();
        prop_assert_eq!(&dilate(&u, &w), grown.as_step());
    }

    #[test]
    fn constants_are_fixed(value: bool, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (_, _, w) = window(&mut rng);
        let c = StepFunction::constant(value);
        prop_assert_eq!(erode(&c, &w), c.clone());
        prop_assert_eq!(dilate(&c, &w), c);
    }
}
