use cirsa_core::frame::{frame_rng, sample_frame, FrameRealization};
use cirsa_core::{decode_frame, sinr, DegreeDistribution, SystemConfig};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// Repeat full SINR sweeps in the given user order, cancelling every user
/// that clears the threshold, until a sweep changes nothing.
fn exhaustive_peeling(cfg: &SystemConfig, frame: &FrameRealization, order: &[usize]) -> Vec<usize> {
    let mut remaining = vec![true; frame.users()];
    loop {
        let mut changed = false;
        for &m in order {
            if !remaining[m] {
                continue;
            }
            if frame
                .user_slots(m)
                .iter()
                .any(|&t| sinr(frame, &remaining, t, m, cfg.snr) >= cfg.gamma_th)
            {
                remaining[m] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (0..frame.users()).filter(|&m| !remaining[m]).collect()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

#[test]
fn hand_built_two_stage_chain() {
    // Slot 0: users 0 and 1 collide, user 0 strong enough to capture.
    // Slot 1: users 1 and 2, equal power, stuck until user 1 is cancelled.
    // Slot 2: users 1 and 2 again. Slot 3: user 2 with a censored user 3.
    let access = [vec![0, 3], vec![0, 1, 2], vec![1, 2, 3], vec![2, 3]];
    let gains = vec![30.0, 1.5, 1.5, 0.5];
    let cfg = SystemConfig {
        slots: 4,
        ..SystemConfig::default()
    };
    let frame = FrameRealization::with_threshold(4, gains, &access, cfg.censor_threshold).unwrap();
    let out = decode_frame(&cfg, &frame);
    let oracle = exhaustive_peeling(&cfg, &frame, &[3, 2, 1, 0]);
    assert_eq!(sorted(out.decoded.clone()), oracle);
    assert_eq!(oracle, vec![0, 1, 2]);
    assert_eq!(out.undecoded, vec![3]);
    assert_eq!(out.active_count, 3);
    assert_eq!(out.plr_a, 0.0);
    assert_eq!(out.plr, 0.25);
}

#[test]
fn order_invariance_against_exhaustive_peeling() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    let dists = [
        DegreeDistribution::soliton4(),
        DegreeDistribution::new([(2, 1.0)]).unwrap(),
        DegreeDistribution::new([(2, 0.5), (3, 0.5)]).unwrap(),
    ];
    let mut nontrivial = 0;
    for case in 0..400u64 {
        let dist = &dists[case as usize % dists.len()];
        let slots = rng.gen_range(dist.max_degree() as usize..=10);
        let users = rng.gen_range(0..=12);
        let cfg = SystemConfig {
            slots,
            snr: rng.gen_range(1.0..30.0),
            gamma_th: rng.gen_range(1.0..4.0),
            censor_threshold: rng.gen_range(0.0..1.0),
            ..SystemConfig::default()
        };
        let frame = sample_frame(&cfg, dist, users, &mut frame_rng(5, case)).unwrap();
        let out = decode_frame(&cfg, &frame);

        let mut order: Vec<usize> = (0..users).collect();
        order.shuffle(&mut rng);
        let oracle = exhaustive_peeling(&cfg, &frame, &order);
        assert_eq!(sorted(out.decoded.clone()), oracle, "case {case}");
        if !oracle.is_empty() && oracle.len() < frame.active_count() {
            nontrivial += 1;
        }

        // Decoded and undecoded partition the users; censored users are never decoded.
        let mut all = out.decoded.clone();
        all.extend(&out.undecoded);
        assert_eq!(sorted(all), (0..users).collect::<Vec<_>>());
        for &m in &out.decoded {
            assert!(frame.active()[m]);
        }

        // Monotone progress and iteration bound.
        assert!(out.iterations_used <= cfg.max_iterations.min(users + 1));
        assert_eq!(
            out.per_iteration_decodes.iter().sum::<usize>(),
            out.decoded.len()
        );
    }
    assert!(
        nontrivial > 20,
        "too few frames with partial decoding: {nontrivial}"
    );
}

#[test]
fn per_frame_identities() {
    let dist = DegreeDistribution::soliton4();
    for (i, &(load, nu)) in [
        (0.5, 0.0),
        (1.0, 0.5),
        (2.0, 1.0),
        (3.0, 0.0),
        (5.0, 2.0),
        (0.02, 3.0),
    ]
    .iter()
    .enumerate()
    {
        let cfg = SystemConfig {
            load,
            censor_threshold: nu,
            slots: 100,
            ..SystemConfig::default()
        };
        for f in 0..20 {
            let users = cirsa_core::users_from_load(load, cfg.slots);
            let frame = sample_frame(&cfg, &dist, users, &mut frame_rng(i as u64, f)).unwrap();
            let out = decode_frame(&cfg, &frame);
            let m = users as f64;
            let ma = out.active_count as f64;
            assert_eq!(out.plr, out.undecoded.len() as f64 / m);
            let censored = (m - ma) / m;
            assert!((out.plr - (censored + (ma / m) * out.plr_a)).abs() < 1e-15);
            assert!((out.throughput - (m / cfg.slots as f64) * (1.0 - out.plr)).abs() < 1e-15);
            assert_eq!(out.throughput, out.decoded.len() as f64 / cfg.slots as f64);
        }
    }
}

#[test]
fn clean_singletons_always_decode() {
    let dist = DegreeDistribution::soliton4();
    let cfg = SystemConfig {
        slots: 50,
        censor_threshold: 0.3,
        ..SystemConfig::default()
    };
    for f in 0..200 {
        let frame = sample_frame(&cfg, &dist, 60, &mut frame_rng(11, f)).unwrap();
        let out = decode_frame(&cfg, &frame);
        let members = frame.slot_members();
        for m in 0..frame.users() {
            let alone = frame
                .user_slots(m)
                .iter()
                .any(|&t| members[t].iter().filter(|&&u| frame.active()[u]).count() == 1);
            if frame.active()[m] && alone && frame.gains()[m] >= cfg.decodability_boundary() {
                assert!(out.decoded.contains(&m), "frame {f} user {m}");
            }
        }
    }
}
