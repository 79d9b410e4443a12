use cirsa::{emit, simulate, sweep, Axis, Format, Mode, PolicySpec, SweepMode};
use cirsa_core::frame::Censoring;
use cirsa_core::{load_grid, DEControls, DegreeDistribution, Error as ModelError, SystemConfig};

fn soliton() -> DegreeDistribution {
    DegreeDistribution::soliton4()
}

fn csv_with_threads(threads: usize) -> Vec<u8> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap();
    pool.install(|| {
        let base = SystemConfig {
            slots: 100,
            seed: 42,
            ..SystemConfig::default()
        };
        let points = sweep(
            Axis::Load,
            &[0.5, 1.5, 2.5],
            &base,
            &soliton(),
            PolicySpec::G { target_load: 1.8 },
            SweepMode::Empirical,
            64,
            &DEControls::default(),
        )
        .unwrap();
        let records: Vec<_> = points.into_iter().map(|p| p.record).collect();
        let mut buf = Vec::new();
        emit(&records, Format::Csv, &mut buf).unwrap();
        buf
    })
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let one = csv_with_threads(1);
    assert_eq!(one, csv_with_threads(4));
    assert_eq!(one, csv_with_threads(3));
}

#[test]
fn seed_changes_results() {
    let dist = soliton();
    let cfg = SystemConfig {
        slots: 100,
        load: 1.5,
        ..SystemConfig::default()
    };
    let a = simulate(&cfg, &dist, 50, Censoring::Threshold(1.0)).unwrap();
    let b = simulate(
        &SystemConfig { seed: 1, ..cfg },
        &dist,
        50,
        Censoring::Threshold(1.0),
    )
    .unwrap();
    assert_ne!(a.throughput, b.throughput);
}

#[test]
fn empty_grid_is_rejected() {
    let err = sweep(
        Axis::Load,
        &[],
        &SystemConfig::default(),
        &soliton(),
        PolicySpec::Fixed,
        SweepMode::De,
        10,
        &DEControls::default(),
    )
    .unwrap_err();
    assert_eq!(err.kind(), "Usage");
    assert!(load_grid(1.0, 0.0, 0.5).is_empty());
}

#[test]
fn out_of_range_de_points_are_flagged() {
    let points = sweep(
        Axis::Nu,
        &[0.5, 1.0, 1.5],
        &SystemConfig::default(),
        &soliton(),
        PolicySpec::Fixed,
        SweepMode::De,
        0,
        &DEControls::default(),
    )
    .unwrap();
    assert!(points[0].flag.is_none() && points[1].flag.is_none());
    assert!(matches!(
        points[2].flag,
        Some(ModelError::ThresholdOutOfRange { .. })
    ));
    assert!(points[2].record.throughput.is_nan());
    assert!(points[0].record.throughput.is_finite());
}

#[test]
fn unsupported_axis_policy_pairs_are_usage_errors() {
    let err = sweep(
        Axis::Nu,
        &[0.5],
        &SystemConfig::default(),
        &soliton(),
        PolicySpec::G { target_load: 1.8 },
        SweepMode::De,
        0,
        &DEControls::default(),
    )
    .unwrap_err();
    assert_eq!(err.kind(), "Usage");
}

#[test]
fn degree_larger_than_frame_is_rejected() {
    let cfg = SystemConfig {
        slots: 3,
        ..SystemConfig::default()
    };
    let err = simulate(&cfg, &soliton(), 10, Censoring::Threshold(1.0)).unwrap_err();
    assert_eq!(err.kind(), "DegreeExceedsSlots");
}

#[test]
fn random_censoring_keeps_the_capped_active_load() {
    let base = SystemConfig {
        slots: 250,
        censor_threshold: 0.0,
        ..SystemConfig::default()
    };
    let points = sweep(
        Axis::Load,
        &[0.4, 3.0],
        &base,
        &soliton(),
        PolicySpec::Random { la_star: 0.6 },
        SweepMode::Empirical,
        200,
        &DEControls::default(),
    )
    .unwrap();
    for p in &points {
        assert_eq!(p.record.mode, Mode::Random);
        assert_eq!(p.record.nu, 0.0);
    }
    assert_eq!(points[0].record.active_load, 0.4);
    assert!((points[1].record.active_load - 0.6).abs() < 1e-15);
    // Fraction of users transmitting is 0.2 at L = 3.
    let kept = 1.0 - (points[1].record.plr - 0.8) / 0.2;
    assert!(kept > 0.0 && kept <= 1.0);
}

#[test]
fn simulation_tracks_density_evolution_below_the_inflection() {
    let base = SystemConfig {
        slots: 250,
        censor_threshold: 1.0,
        seed: 3,
        ..SystemConfig::default()
    };
    let grid = load_grid(0.1, 0.55, 0.05);
    let run = |mode| {
        sweep(
            Axis::ActiveLoad,
            &grid,
            &base,
            &soliton(),
            PolicySpec::Fixed,
            mode,
            1000,
            &DEControls::default(),
        )
        .unwrap()
    };
    let empirical = run(SweepMode::Empirical);
    let de = run(SweepMode::De);
    for (e, d) in empirical.iter().zip(&de) {
        assert_eq!(d.record.plr_a, 0.0);
        assert_eq!(d.record.throughput, d.record.active_load);
        assert!(
            (e.record.throughput - d.record.throughput).abs() <= 0.05,
            "L_a={}: empirical {} vs {}",
            d.record.active_load,
            e.record.throughput,
            d.record.throughput
        );
    }
}
