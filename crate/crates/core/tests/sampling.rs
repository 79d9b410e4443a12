use cirsa_core::frame::{frame_rng, sample_frame, sample_frame_with, Censoring};
use cirsa_core::{random_censoring_prob, DegreeDistribution, SystemConfig};

#[test]
fn gains_are_unit_mean_exponential() {
    let cfg = SystemConfig {
        slots: 10,
        censor_threshold: 0.0,
        ..SystemConfig::default()
    };
    let n = 200_000;
    let frame = sample_frame(
        &cfg,
        &DegreeDistribution::soliton4(),
        n,
        &mut frame_rng(1, 0),
    )
    .unwrap();
    let mean = frame.gains().iter().sum::<f64>() / n as f64;
    assert!((mean - 1.0).abs() < 4.0 / (n as f64).sqrt(), "{mean}");
    assert!(frame.gains().iter().all(|&g| g >= 0.0));
}

#[test]
fn active_fraction_follows_exponential_tail() {
    let cfg = SystemConfig {
        slots: 10,
        censor_threshold: 1.0,
        ..SystemConfig::default()
    };
    let n = 100_000;
    let frame = sample_frame(
        &cfg,
        &DegreeDistribution::soliton4(),
        n,
        &mut frame_rng(2, 0),
    )
    .unwrap();
    let p = (-1f64).exp();
    let se = (p * (1.0 - p) / n as f64).sqrt();
    let frac = frame.active_count() as f64 / n as f64;
    assert!((frac - p).abs() <= 3.0 * se, "{frac}");
}

#[test]
fn degree_histogram_matches_distribution() {
    let dist = DegreeDistribution::soliton4();
    let cfg = SystemConfig {
        slots: 20,
        ..SystemConfig::default()
    };
    let n = 100_000;
    let frame = sample_frame(&cfg, &dist, n, &mut frame_rng(3, 0)).unwrap();
    for &(d, p) in dist.probs() {
        let count = frame.degrees().iter().filter(|&&x| x == d).count() as f64;
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!((count / n as f64 - p).abs() <= 4.0 * se, "degree {d}");
    }
}

#[test]
fn slot_choice_is_uniform() {
    let dist = DegreeDistribution::new([(2, 1.0)]).unwrap();
    let slots = 8;
    let n = 80_000;
    let frame = sample_frame_with(
        slots,
        &dist,
        n,
        Censoring::Threshold(0.0),
        &mut frame_rng(4, 0),
    )
    .unwrap();
    let mut hits = vec![0usize; slots];
    for m in 0..n {
        for &t in frame.user_slots(m) {
            hits[t] += 1;
        }
    }
    let p = 2.0 / slots as f64;
    let se = (p * (1.0 - p) / n as f64).sqrt();
    for (t, &h) in hits.iter().enumerate() {
        assert!((h as f64 / n as f64 - p).abs() <= 4.0 * se, "slot {t}");
    }
}

#[test]
fn random_censoring_is_binomial() {
    let dist = DegreeDistribution::soliton4();
    let n = 100_000;
    for load in [0.3, 1.5, 3.0, 6.0] {
        let p_a = random_censoring_prob(load, 0.6);
        let frame = sample_frame_with(
            250,
            &dist,
            n,
            Censoring::Random(p_a),
            &mut frame_rng(5, (load * 10.0) as u64),
        )
        .unwrap();
        let frac = frame.active_count() as f64 / n as f64;
        let se = (p_a * (1.0 - p_a) / n as f64).sqrt();
        assert!(
            (frac - p_a).abs() <= 4.0 * se,
            "load {load}: {frac} vs {p_a}"
        );
    }
}
