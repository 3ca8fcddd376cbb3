//! The acceptance suite. Each criterion runs its scenarios at the stated
//! tolerance and returns an [`Outcome`] carrying the achieved numbers.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rollsim_core::allocation::AllocationMatrix;
use rollsim_core::reference::{dropped_terms_bound, sliding_residual, CouplingCompensatedLaw};
use rollsim_core::{
    control_law_banked, control_law_implemented, kph_to_mps, reduction_metrics, response_delay, run, run_pair,
    run_with, state_derivative, ControllerConfig, ControllerInputs, CornerForces, ManeuverKind, ManeuverProfile,
    RoadInput, RollState, Sample, ScenarioSpec, SimConfig, SimResult, Steering, Termination, VehicleParams,
};

use rollsim_core::metrics::{peak_roll_rate, RESPONSE_THRESHOLD};

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {:>2} {}: {}", self.id, self.title, self.detail)
    }
}

/// Every criterion, in order.
pub const CRITERIA: [fn() -> Outcome; 10] = [
    slalom_roll_reduction,
    slalom_rollrate_reduction,
    jturn_reductions,
    sliding_gain_ordering,
    preview_ordering,
    sliding_identity,
    lyapunov_decrease,
    allocation_accuracy,
    integrator_order,
    equilibrium_suite,
];

/// Runs the whole suite, criteria in parallel, outcomes in order.
pub fn run_all() -> Vec<Outcome> {
    CRITERIA.par_iter().map(|c| c()).collect()
}

const SLALOM_SPEEDS: [f64; 3] = [30.0, 35.0, 40.0];
const JTURN_SPEEDS: [f64; 3] = [60.0, 72.0, 80.0];
const PAIR_BUDGET: Duration = Duration::from_secs(5);

fn pct(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_owned(), |v| format!("{:.1}%", 100.0 * v))
}

struct Pair {
    passive: SimResult,
    active: SimResult,
    elapsed: Duration,
}

impl Pair {
    fn completed(&self) -> bool {
        self.passive.termination == Termination::Completed
            && self.active.termination == Termination::Completed
            && self.active.saturation_steps == 0
    }
}

fn pair(spec: &ScenarioSpec, ctrl: &ControllerConfig) -> Pair {
    let p = VehicleParams::default();
    let start = Instant::now();
    let profile = spec.build(&p).expect("built-in scenario is valid");
    let (passive, active) =
        run_pair(&p, &SimConfig::for_profile(&profile), ctrl, &profile).expect("built-in scenario is valid");
    Pair { passive, active, elapsed: start.elapsed() }
}

fn slalom_pairs() -> Vec<(f64, Pair)> {
    SLALOM_SPEEDS
        .par_iter()
        .map(|&kph| (kph, pair(&ScenarioSpec::slalom(kph, 0.6), &ControllerConfig::default())))
        .collect()
}

/// Criterion 1: peak |φ| reduction of at least 60% on the slalom at every
/// speed, each pair within the runtime budget.
pub fn slalom_roll_reduction() -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for (kph, run) in slalom_pairs() {
        let r = reduction_metrics(&run.passive.samples, &run.active.samples);
        passed &= r.reduction_roll.is_some_and(|v| v >= 0.6) && run.completed() && run.elapsed < PAIR_BUDGET;
        parts.push(format!(
            "{kph} kph {} ({:.3} -> {:.3} deg, {:.2} s)",
            pct(r.reduction_roll),
            r.peak_roll_passive.to_degrees(),
            r.peak_roll_active.to_degrees(),
            run.elapsed.as_secs_f64()
        ));
    }
    Outcome { id: 1, title: "slalom roll-angle reduction >= 60%", passed, detail: parts.join(", ") }
}

/// Criterion 2: peak |φ̇| reduction of at least 80% on the same runs.
pub fn slalom_rollrate_reduction() -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for (kph, run) in slalom_pairs() {
        let r = reduction_metrics(&run.passive.samples, &run.active.samples);
        passed &= r.reduction_rollrate.is_some_and(|v| v >= 0.8) && run.completed();
        parts.push(format!("{kph} kph {}", pct(r.reduction_rollrate)));
    }
    Outcome { id: 2, title: "slalom roll-rate reduction >= 80%", passed, detail: parts.join(", ") }
}

/// Criterion 3: J-turn roll reduction of at least 50%, post-transient
/// peak-to-peak roll-rate reduction of at least 45%, and a positive
/// response delay at 80 kph.
pub fn jturn_reductions() -> Outcome {
    let runs: Vec<(f64, Pair)> = JTURN_SPEEDS
        .par_iter()
        .map(|&kph| (kph, pair(&ScenarioSpec::jturn(kph), &ControllerConfig::default())))
        .collect();
    let mut passed = true;
    let mut parts = Vec::new();
    for (kph, run) in &runs {
        let r = reduction_metrics(&run.passive.samples, &run.active.samples);
        passed &= r.reduction_roll.is_some_and(|v| v >= 0.5)
            && r.reduction_pk2pk.is_some_and(|v| v >= 0.45)
            && run.completed();
        parts.push(format!("{kph} kph roll {} pk2pk {}", pct(r.reduction_roll), pct(r.reduction_pk2pk)));
    }
    let (_, fastest) = &runs[2];
    let delay = response_delay(&fastest.passive.samples, &fastest.active.samples, RESPONSE_THRESHOLD);
    passed &= delay.is_some_and(|d| d > 0.0);
    parts.push(match delay {
        Some(d) => format!("response delay at 80 kph {d:+.3} s"),
        None => "response delay at 80 kph NA".to_owned(),
    });
    Outcome { id: 3, title: "J-turn reductions and faster response", passed, detail: parts.join(", ") }
}

/// Criterion 4: oscillation index strictly increasing with the sliding gain
/// on the 60 kph J-turn.
pub fn sliding_gain_ordering() -> Outcome {
    let p = VehicleParams::default();
    let profile = ScenarioSpec::jturn(60.0).build(&p).expect("built-in scenario is valid");
    let index: Vec<f64> = [15.0, 25.0, 30.0]
        .par_iter()
        .map(|&eta| {
            let ctrl = ControllerConfig { eta, ..ControllerConfig::default() };
            let res = run(&p, &SimConfig::for_profile(&profile), &ctrl, &profile).expect("valid");
            rollsim_core::oscillation_index(&res.samples)
        })
        .collect();
    let passed = index[2] > index[1] && index[1] > index[0];
    Outcome {
        id: 4,
        title: "oscillation index eta=30 > eta=25 > eta=15",
        passed,
        detail: format!("15: {:.3e}, 25: {:.3e}, 30: {:.3e} rad/s", index[0], index[1], index[2]),
    }
}

/// Criterion 5: longer preview does not raise the peak roll rate at 40 kph,
/// and makes less than a 20% difference at 30 kph.
pub fn preview_ordering() -> Outcome {
    let peak = |kph: f64, tp: f64| {
        let run = pair(&ScenarioSpec::slalom(kph, tp), &ControllerConfig::default());
        peak_roll_rate(&run.active.samples)
    };
    let (a40, b40) = (peak(40.0, 0.6), peak(40.0, 0.4));
    let (a30, b30) = (peak(30.0, 0.6), peak(30.0, 0.4));
    let diff30 = (a30 - b30).abs() / a30.max(b30);
    let passed = a40 <= b40 && diff30 < 0.2;
    Outcome {
        id: 5,
        title: "preview 0.6 s vs 0.4 s",
        passed,
        detail: format!(
            "40 kph peak rate {a40:.4} vs {b40:.4} rad/s, 30 kph {a30:.4} vs {b30:.4} rad/s ({:.1}% apart)",
            100.0 * diff30
        ),
    }
}

fn jturn_60() -> ManeuverProfile {
    ScenarioSpec::jturn(60.0).build(&VehicleParams::default()).expect("built-in scenario is valid")
}

fn compensated_run(profile: &ManeuverProfile) -> SimResult {
    let p = VehicleParams::default();
    let mut law = CouplingCompensatedLaw::new(p, ControllerConfig::default()).expect("defaults are valid");
    run_with(&p, &SimConfig::for_profile(profile), &mut law, profile).expect("built-in scenario is valid")
}

/// `ṡ + η·s` at the start of every recorded step, with the roll moment the
/// plant actually received over that step.
fn residuals<'a>(
    profile: &'a ManeuverProfile,
    samples: &'a [Sample],
) -> impl Iterator<Item = (&'a Sample, f64)> + 'a {
    let p = VehicleParams::default();
    let cfg = ControllerConfig::default();
    samples.iter().map(move |s| {
        let road = profile.road_input(&p, s.t);
        let u = s.forces.roll_moment(p.l_s);
        (s, sliding_residual(&p, &cfg, &s.state, &road, u).expect("finite trajectory"))
    })
}

/// Criterion 6: the coupling-compensated law realizes `ṡ = −η·s` to
/// roundoff, and the shipped law stays within the dropped-terms bound.
pub fn sliding_identity() -> Outcome {
    let p = VehicleParams::default();
    let cfg = ControllerConfig::default();
    let profile = jturn_60();

    let exact = compensated_run(&profile);
    let max_res = residuals(&profile, &exact.samples).fold(0.0_f64, |m, (_, r)| m.max(r.abs()));
    let max_es = exact.samples.iter().fold(0.0_f64, |m, s| m.max((cfg.eta * s.surface).abs()));
    let identity_ok = max_res < 1e-9 * max_es && exact.saturation_steps == 0;

    let shipped = run(&p, &SimConfig::for_profile(&profile), &cfg, &profile).expect("valid");
    let mut worst = 0.0_f64;
    let mut bound_ok = shipped.saturation_steps == 0;
    for (s, r) in residuals(&profile, &shipped.samples) {
        let bound = dropped_terms_bound(&p, cfg.psi, &s.state);
        bound_ok &= r.abs() <= bound * (1.0 + 1e-9) + 1e-12;
        if bound > 0.0 {
            worst = worst.max(r.abs() / bound);
        }
    }
    Outcome {
        id: 6,
        title: "sliding identity and dropped-terms bound",
        passed: identity_ok && bound_ok,
        detail: format!(
            "max|s'+eta s| = {max_res:.2e} vs max|eta s| = {max_es:.2e}; shipped residual/bound <= {worst:.4}"
        ),
    }
}

/// Criterion 7: `V = s²/2` decreases along the compensated closed loop.
pub fn lyapunov_decrease() -> Outcome {
    let eta = ControllerConfig::default().eta;
    let profile = jturn_60();
    let exact = compensated_run(&profile);
    let mut passed = true;
    let mut worst = f64::NEG_INFINITY;
    for (s, r) in residuals(&profile, &exact.samples) {
        let sd = r - eta * s.surface;
        let v_dot = s.surface * sd;
        let margin = v_dot + 0.99 * eta * s.surface * s.surface;
        passed &= margin <= 1e-8;
        worst = worst.max(margin);
    }
    let mut rises = 0;
    for w in exact.samples.windows(2) {
        let (v0, v1) = (0.5 * w[0].surface.powi(2), 0.5 * w[1].surface.powi(2));
        if v1 > v0 + 1e-8 {
            rises += 1;
        }
    }
    passed &= rises == 0;
    Outcome {
        id: 7,
        title: "Lyapunov V = s^2/2 non-increasing",
        passed,
        detail: format!("max(V' + 0.99 eta s^2) = {worst:.2e}, steps with V rising = {rises}"),
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Criterion 8: reconstruction and minimum-norm dominance of the allocation
/// on random commands.
pub fn allocation_accuracy() -> Outcome {
    let p = VehicleParams::default();
    let a = AllocationMatrix::new(&p).expect("default geometry is valid");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst_rel = 0.0_f64;
    let mut dominated = 0;
    for _ in 0..1000 {
        let u: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-5000.0..5000.0));
        let f = a.solve_min_norm(u);
        let back = a.apply(&f);
        let err = norm(&[back[0] - u[0], back[1] - u[1], back[2] - u[2]]);
        worst_rel = worst_rel.max(err / norm(&u));
        let base = norm(&f.0);
        for _ in 0..100 {
            let v = CornerForces(std::array::from_fn(|_| rng.gen_range(-2000.0..2000.0)));
            let proj = a.solve_min_norm(a.apply(&v));
            let shifted: [f64; 4] = std::array::from_fn(|i| f.0[i] + v.0[i] - proj.0[i]);
            if norm(&shifted) < base * (1.0 - 1e-12) {
                dominated += 1;
            }
        }
    }
    Outcome {
        id: 8,
        title: "allocation reconstruction and minimum norm",
        passed: worst_rel <= 1e-12 && dominated == 0,
        detail: format!("max ||A F - u||/||u|| = {worst_rel:.2e}, shorter null-space alternatives = {dominated}"),
    }
}

fn final_state(profile: &ManeuverProfile, dt: f64) -> [f64; 12] {
    let p = VehicleParams::default();
    let sim = SimConfig { dt, ..SimConfig::for_profile(profile) };
    let res = run(&p, &sim, &ControllerConfig::passive(), profile).expect("valid");
    res.last().state.to_array()
}

/// Criterion 9: halving-step error ratio of RK4 on a smooth 2 s segment.
///
/// The passive vehicle is driven by a sinusoidal steer at the 30 kph slalom
/// period. The controller's zero-order hold would reduce any scheme to first
/// order, so the closed loop is not used here.
pub fn integrator_order() -> Outcome {
    let x_dot = kph_to_mps(30.0);
    let profile = ManeuverProfile {
        kind: ManeuverKind::Custom,
        steering: Steering::Sine { amplitude: 0.05, period: 2.0 * 15.24 / x_dot, start: 0.0 },
        ..ManeuverProfile::straight(x_dot, 2.0)
    };
    let xs: Vec<[f64; 12]> = [0.004, 0.002, 0.001].par_iter().map(|&dt| final_state(&profile, dt)).collect();
    let diff = |a: &[f64; 12], b: &[f64; 12]| a.iter().zip(b).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
    let (e1, e2) = (diff(&xs[0], &xs[1]), diff(&xs[1], &xs[2]));
    let ratio = e1 / e2;
    Outcome {
        id: 9,
        title: "RK4 halving-step error ratio in [12, 20]",
        passed: (12.0..=20.0).contains(&ratio),
        detail: format!("ratio {ratio:.2} (differences {e1:.2e}, {e2:.2e})"),
    }
}

/// Criterion 10: fixed point, passive zero forces, banked reduction and
/// mirror antisymmetry, all to 1e-12.
pub fn equilibrium_suite() -> Outcome {
    let p = VehicleParams::default();
    let cfg = ControllerConfig::default();
    let mut failures = Vec::new();

    let still = ManeuverProfile::straight(kph_to_mps(60.0), 5.0);
    for ctrl in [cfg, ControllerConfig::passive()] {
        let res = run(&p, &SimConfig::for_profile(&still), &ctrl, &still).expect("valid");
        if res.samples.iter().any(|s| s.state != RollState::default() || s.forces != CornerForces::ZERO) {
            failures.push("zero-input fixed point");
        }
    }

    let slalom = ScenarioSpec::slalom(35.0, 0.6).build(&p).expect("valid");
    let passive = run(&p, &SimConfig::for_profile(&slalom), &ControllerConfig::passive(), &slalom).expect("valid");
    if passive.samples.iter().any(|s| s.forces != CornerForces::ZERO) {
        failures.push("passive forces");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst_bank = 0.0_f64;
    let mut worst_mirror = 0.0_f64;
    for _ in 0..1000 {
        let inputs = ControllerInputs {
            phi: rng.gen_range(-0.3..0.3),
            phi_dot: rng.gen_range(-1.0..1.0),
            delta_front: rng.gen_range(-0.1..0.1),
            x_dot: rng.gen_range(0.0..30.0),
            ..Default::default()
        };
        let a = control_law_banked(&p, &cfg, &inputs).expect("finite inputs");
        let b = control_law_implemented(&p, &cfg, &inputs).expect("finite inputs");
        worst_bank = worst_bank.max((a - b).abs() / (1.0 + b.abs()));

        let state = RollState {
            phi: inputs.phi,
            phi_dot: inputs.phi_dot,
            z_s: rng.gen_range(-0.05..0.05),
            z_s_dot: rng.gen_range(-0.5..0.5),
            z_u: std::array::from_fn(|_| rng.gen_range(-0.02..0.02)),
            z_u_dot: std::array::from_fn(|_| rng.gen_range(-0.5..0.5)),
        };
        let forces = CornerForces(std::array::from_fn(|_| rng.gen_range(-3000.0..3000.0)));
        let road = RoadInput::flat(rng.gen_range(-8.0..8.0));
        let d = state_derivative(&p, &state, &road, &forces).expect("finite state");
        let m = state_derivative(&p, &state.mirrored(), &road.mirrored(), &forces.mirrored()).expect("finite");
        worst_mirror = worst_mirror.max((d.phi_dot + m.phi_dot).abs() / (1.0 + d.phi_dot.abs()));
    }
    if worst_bank > 1e-12 {
        failures.push("banked reduction");
    }
    if worst_mirror > 1e-12 {
        failures.push("mirror antisymmetry");
    }
    Outcome {
        id: 10,
        title: "equilibrium and symmetry suite",
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("all exact (banked {worst_bank:.1e}, mirror {worst_mirror:.1e})")
        } else {
            format!("failed: {}", failures.join(", "))
        },
    }
}
