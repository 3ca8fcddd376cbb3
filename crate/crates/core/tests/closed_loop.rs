use rollsim_core::maneuver::{jturn_target_steer, MAX_STEER, STEER_RATE_LIMIT};
use rollsim_core::metrics::peak_roll;
use rollsim_core::{
    jturn_profile, kph_to_mps, response_delay, mechanical_energy, mph_to_mps, run, run_pair, ControllerConfig, ManeuverProfile,
    MeasurementMode, RoadInput, RollState, ScenarioSpec, SimConfig, Steering, Termination, VehicleParams,
};

fn slalom(kph: f64) -> ManeuverProfile {
    ScenarioSpec::slalom(kph, 0.6).build(&VehicleParams::default()).unwrap()
}

#[test]
fn passive_free_decay_loses_energy_every_step() {
    let p = VehicleParams::default();
    let profile = ManeuverProfile::straight(kph_to_mps(30.0), 10.0);
    let sim = SimConfig {
        initial_state: RollState { phi: 0.05, z_u: [0.004, -0.004, 0.0, 0.0], ..Default::default() },
        ..SimConfig::for_profile(&profile)
    };
    let res = run(&p, &sim, &ControllerConfig::passive(), &profile).unwrap();
    let road = RoadInput::default();
    let energy: Vec<f64> = res.samples.iter().map(|s| mechanical_energy(&p, &s.state, &road)).collect();
    let e0 = energy[0];
    for w in energy.windows(2) {
        assert!(w[1] <= w[0] + 1e-9 * e0, "energy rose from {} to {}", w[0], w[1]);
    }
    assert!(energy.last().unwrap() < &(1e-3 * e0));
}

#[test]
fn profiles_are_deterministic() {
    assert_eq!(slalom(35.0), slalom(35.0));
    let p = VehicleParams::default();
    assert_eq!(jturn_profile(&p, mph_to_mps(50.0)), jturn_profile(&p, mph_to_mps(50.0)));
}

#[test]
fn slalom_steering_is_bounded_and_rate_limited() {
    for kph in [30.0, 35.0, 40.0] {
        let profile = slalom(kph);
        let Steering::Table { dt, samples } = &profile.steering else {
            panic!("slalom steering is tabulated");
        };
        assert!(samples.iter().all(|d| d.abs() <= MAX_STEER));
        for w in samples.windows(2) {
            assert!((w[1] - w[0]).abs() <= STEER_RATE_LIMIT * dt * (1.0 + 1e-12));
        }
    }
}

#[test]
fn slalom_period_matches_gate_spacing() {
    let profile = slalom(30.0);
    let want = 2.0 * 15.24 / kph_to_mps(30.0);
    assert!((want - 3.6576).abs() < 1e-9);
    // Upward zero crossings once the driver has settled onto the course.
    let mut crossings = Vec::new();
    let dt = 1e-3;
    let mut prev = profile.delta(4.0);
    let mut t = 4.0;
    while t < profile.duration {
        t += dt;
        let d = profile.delta(t);
        if prev < 0.0 && d >= 0.0 {
            crossings.push(t);
        }
        prev = d;
    }
    assert!(crossings.len() >= 2, "crossings {crossings:?}");
    let periods: Vec<f64> = crossings.windows(2).map(|w| w[1] - w[0]).collect();
    let mean = periods.iter().sum::<f64>() / periods.len() as f64;
    assert!((mean - want).abs() <= 0.05 * want, "period {mean} vs {want}");
}

#[test]
fn jturn_steering_is_monotone_and_reaches_target() {
    let p = VehicleParams::default();
    let profile = jturn_profile(&p, mph_to_mps(50.0)).unwrap();
    let target = jturn_target_steer(&p);
    let mut prev = profile.delta(0.0);
    for k in 1..=14_000 {
        let d = profile.delta(k as f64 * 1e-3);
        assert!(d >= prev);
        prev = d;
    }
    assert!((prev - target).abs() < 1e-15);
    let a_y = profile.lateral_accel(&p, 5.0);
    assert!((a_y - 0.3 * p.g).abs() < 1e-9);
}

#[test]
fn default_scenarios_complete_without_saturation() {
    let p = VehicleParams::default();
    let cfg = ControllerConfig::default();
    let mut profiles = vec![slalom(30.0), slalom(35.0), slalom(40.0)];
    profiles.push(jturn_profile(&p, mph_to_mps(50.0)).unwrap());
    for profile in profiles {
        let (passive, active) = run_pair(&p, &SimConfig::for_profile(&profile), &cfg, &profile).unwrap();
        assert_eq!(passive.termination, Termination::Completed);
        assert_eq!(active.termination, Termination::Completed);
        assert_eq!(active.saturation_steps, 0);
        assert!(active.max_force < cfg.force_limit);
    }
}

#[test]
fn decimated_recording_preserves_peaks() {
    let p = VehicleParams::default();
    let profile = slalom(35.0);
    let full = SimConfig::for_profile(&profile);
    let coarse = SimConfig { record_decimation: 10, ..full };
    let a = run(&p, &full, &ControllerConfig::default(), &profile).unwrap();
    let b = run(&p, &coarse, &ControllerConfig::default(), &profile).unwrap();
    assert_eq!(b.samples.len(), (a.samples.len() - 1) / 10 + 1);
    assert_eq!(a.last(), b.last());
    let (pa, pb) = (peak_roll(&a.samples), peak_roll(&b.samples));
    assert!((pa - pb).abs() <= 0.005 * pa);
}

#[test]
fn filtered_measurement_tracks_perfect_measurement() {
    let p = VehicleParams::default();
    let profile = slalom(30.0);
    let perfect = SimConfig::for_profile(&profile);
    let filtered = SimConfig { measurement: MeasurementMode::Filtered { gyro_bias: 0.0 }, ..perfect };
    let cfg = ControllerConfig::default();
    let a = peak_roll(&run(&p, &perfect, &cfg, &profile).unwrap().samples);
    let b = peak_roll(&run(&p, &filtered, &cfg, &profile).unwrap().samples);
    assert!((a - b).abs() <= 0.02 * a, "{a} vs {b}");
}

#[test]
fn invalid_configuration_is_rejected_before_running() {
    let p = VehicleParams::default();
    let profile = slalom(30.0);
    let bad = SimConfig { dt: 0.0, ..SimConfig::for_profile(&profile) };
    let err = run(&p, &bad, &ControllerConfig::default(), &profile).unwrap_err();
    assert_eq!(err.key, "dt");
    let bad_params = VehicleParams { m_s: -1.0, ..p };
    let err = run(&bad_params, &SimConfig::for_profile(&profile), &ControllerConfig::default(), &profile).unwrap_err();
    assert_eq!(err.key, "m_s");
}

/// Regression fixture: first verified run of the 60 kph J-turn, and the
/// response delay at 80 kph, which is negative for this controller.
#[test]
fn jturn_regression_fixture() {
    let p = VehicleParams::default();
    let profile = ScenarioSpec::jturn(60.0).build(&p).unwrap();
    let (passive, active) =
        run_pair(&p, &SimConfig::for_profile(&profile), &ControllerConfig::default(), &profile).unwrap();
    let (pp, pa) = (peak_roll(&passive.samples), peak_roll(&active.samples));
    assert!((pp - 0.035529456189709326).abs() <= 1e-12 * pp, "{pp}");
    assert!((pa - 0.010890577858543436).abs() <= 1e-12 * pa, "{pa}");

    let profile = ScenarioSpec::jturn(80.0).build(&p).unwrap();
    let (passive, active) =
        run_pair(&p, &SimConfig::for_profile(&profile), &ControllerConfig::default(), &profile).unwrap();
    let delay = response_delay(&passive.samples, &active.samples, 0.5).unwrap();
    assert!((delay + 0.319).abs() < 1e-9, "{delay}");
}
