mod common;

use common::*;
use delaycalc::conditions::{check_bdc, BdcParams};
use delaycalc::elements::{
    apply_deterministic, chain_apply, compose_chain, compose_params, membership,
    ride_composition_counterexample, sample, DelayElement, ElementKind,
};
use delaycalc::{Error, Signal};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn fixed(rng: &mut ChaCha8Rng) -> DelayElement {
    DelayElement::fixed(frac(rng.random_range(0..=20), 4)).unwrap()
}

fn element(rng: &mut ChaCha8Rng) -> DelayElement {
    match rng.random_range(0..4) {
        0 => DelayElement::wire(),
        1 => fixed(rng),
        2 => DelayElement::full_bde(random_bdc_cc(rng, 4, 4)).unwrap(),
        _ => DelayElement::dride(random_bdc_cc(rng, 4, 4)).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn composed_parameters_contain_chain_outputs(seed in any::<u64>(), sample_seed in any::<u64>()) {
        let mut rng = rng(seed);
        let first = element(&mut rng);
        let second = element(&mut rng);
        let u = random_signal(&mut rng, 4, 10, 8);
        let report = chain_apply(&[first.clone(), second.clone()], &u, sample_seed).unwrap();
        prop_assert!(report.all_members());
        match compose_params(&first, &second) {
            Ok(joint) => {
                let m = membership(&joint, &u, &report.output);
                prop_assert!(m.verdict, "{} ; {} = {}: {}", first, second, joint, m);
            }
            Err(Error::NotClosed { envelope }) => {
                prop_assert!(matches!(first.kind(), ElementKind::Dride(_) | ElementKind::FullBde(_)));
                let env = envelope.unwrap();
                prop_assert!(check_bdc(&u, &env, &report.output).verdict);
            }
            Err(Error::NotComposable(..)) => {
                // no exact element, but bounded envelopes still add up
                let env = first.bde_envelope().unwrap().plus(&second.bde_envelope().unwrap());
                prop_assert!(check_bdc(&u, &env, &report.output).verdict);
            }
            Err(e) => prop_assert!(false, "unexpected {}", e),
        }
    }

    #[test]
    fn fixed_delays_commute_with_everything(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let f = fixed(&mut rng);
        let e = DelayElement::dride(random_bdc_cc(&mut rng, 4, 4)).unwrap();
        let u = random_signal(&mut rng, 4, 10, 8);
        let a = chain_apply(&[f.clone(), e.clone()], &u, 0).unwrap().output;
        let b = chain_apply(&[e.clone(), f.clone()], &u, 0).unwrap().output;
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(compose_params(&f, &e).unwrap(), compose_params(&e, &f).unwrap());
        prop_assert_eq!(apply_deterministic(&compose_params(&f, &e).unwrap(), &u).unwrap(), a);
    }

    #[test]
    fn wire_is_neutral(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let e = element(&mut rng);
        let w = DelayElement::wire();
        prop_assert_eq!(compose_params(&w, &e).unwrap(), e.clone());
        prop_assert_eq!(compose_params(&e, &w).unwrap(), e.clone());
        let u = random_signal(&mut rng, 4, 10, 8);
        prop_assert_eq!(sample(&w, &u, seed).unwrap(), u);
    }

    #[test]
    fn bounded_elements_close_associatively(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let ps: Vec<BdcParams> = (0..3).map(|_| random_bdc_cc(&mut rng, 4, 4)).collect();
        let es: Vec<DelayElement> = ps.iter().map(|p| DelayElement::full_bde(p.clone()).unwrap()).collect();
        let left = compose_params(&compose_params(&es[0], &es[1]).unwrap(), &es[2]).unwrap();
        let right = compose_params(&es[0], &compose_params(&es[1], &es[2]).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(compose_chain(&es).unwrap(), left.clone());
        prop_assert_eq!(left, DelayElement::full_bde(ps[0].plus(&ps[1]).plus(&ps[2])).unwrap());
    }

    #[test]
    fn sampled_outputs_are_members(seed in any::<u64>(), sample_seed in any::<u64>()) {
        let mut rng = rng(seed);
        let p = random_bdc_cc(&mut rng, 4, 4);
        let e = DelayElement::full_bde(p.clone()).unwrap();
        let u = random_signal(&mut rng, 4, 10, 8);
        let x = sample(&e, &u, sample_seed).unwrap();
        prop_assert!(membership(&e, &u, &x).verdict);
        prop_assert_eq!(sample(&e, &u, sample_seed).unwrap(), x);
    }

    #[test]
    fn elements_are_time_invariant(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let e = element(&mut rng);
        let u = random_signal(&mut rng, 4, 10, 8);
        let x = sample(&e, &u, seed).unwrap();
        let shift = frac(rng.random_range(1..30), 3);
        let (us, xs) = (u.delayed(&shift).unwrap(), x.delayed(&shift).unwrap());
        prop_assert!(membership(&e, &us, &xs).verdict);
        if e.is_deterministic() {
            prop_assert_eq!(apply_deterministic(&e, &us).unwrap(), xs);
        }
    }

    #[test]
    fn zero_seed_gives_the_least_output(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let p = random_bdc_cc(&mut rng, 4, 4);
        let e = DelayElement::full_bde(p.clone()).unwrap();
        let u = random_signal(&mut rng, 4, 10, 8);
        let least = sample(&e, &u, 0).unwrap();
        let other = sample(&e, &u, seed | 1).unwrap();
        prop_assert!(least.leq(&other));
    }
}

#[test]
fn inertial_pairs_are_not_closed() {
    let a = DelayElement::dride(BdcParams::new(1, 2, 1, 2).unwrap()).unwrap();
    let b = DelayElement::dride(BdcParams::new(2, 3, 2, 3).unwrap()).unwrap();
    match compose_params(&a, &b) {
        Err(Error::NotClosed { envelope }) => {
            assert_eq!(envelope.as_deref(), Some(&BdcParams::new(3, 5, 3, 5).unwrap()));
        }
        other => panic!("expected NotClosed, got {other:?}"),
    }
}

#[test]
fn counterexample_is_confirmed() {
    let r = ride_composition_counterexample();
    let u = Signal::from_pairs([(0, 2), (3, 4), (7, 9)]).unwrap();
    assert_eq!(r.input, u);
    assert!(r.first_stage_member);
    assert!(r.edges.iter().all(|e| e.holds));
    assert!(r.contradiction && r.confirmed);
    assert!(r.sweep.iter().all(|s| !s.reproduces));
    let chain = [r.first.clone(), r.second.clone()];
    let report = chain_apply(&chain, &u, 0).unwrap();
    assert_eq!(report.output, r.output);
    assert_eq!(report.intermediates().next(), Some(&r.intermediate));
}
