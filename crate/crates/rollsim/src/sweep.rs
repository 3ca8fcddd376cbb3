//! Cartesian parameter sweeps, run in parallel and returned in grid order.

use std::io::Write;

use rayon::prelude::*;
use rollsim_core::{run_pair, ControllerConfig, ScenarioSpec, Termination, VehicleParams};

use crate::config::{GridFile, Scenario};
use crate::error::Result;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub eta: f64,
    pub psi: f64,
    pub speed_kph: f64,
    pub preview_time: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub point: GridPoint,
    pub passive: Termination,
    pub active: Termination,
    pub saturation_steps: usize,
    pub report: Report,
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub params: VehicleParams,
    pub controller: ControllerConfig,
    pub scenario: Scenario,
    pub points: Vec<GridPoint>,
}

fn axis(values: &[f64], base: f64) -> Vec<f64> {
    if values.is_empty() {
        vec![base]
    } else {
        values.to_vec()
    }
}

impl Sweep {
    pub fn from_grid(grid: &GridFile) -> Result<Self> {
        let params = grid.vehicle.resolve()?;
        let controller = grid.controller.resolve()?;
        let scenario = grid.scenario.resolve()?;
        let g = &grid.grid;
        let mut points = Vec::new();
        for &eta in &axis(&g.eta, controller.eta) {
            for &psi in &axis(&g.psi, controller.psi) {
                for &speed_kph in &axis(&g.speed_kph, scenario.spec.speed_kph) {
                    for &preview_time in &axis(&g.preview_time, scenario.spec.driver.preview_time) {
                        points.push(GridPoint { eta, psi, speed_kph, preview_time });
                    }
                }
            }
        }
        let sweep = Self { params, controller, scenario, points };
        for p in &sweep.points {
            sweep.configure(p)?;
        }
        Ok(sweep)
    }

    fn configure(&self, point: &GridPoint) -> Result<(ControllerConfig, ScenarioSpec)> {
        let ctrl = ControllerConfig { eta: point.eta, psi: point.psi, ..self.controller };
        ctrl.validate()?;
        let mut spec = self.scenario.spec.clone();
        spec.speed_kph = point.speed_kph;
        spec.driver.preview_time = point.preview_time;
        spec.driver.validate()?;
        Ok((ctrl, spec))
    }

    pub fn run_point(&self, point: &GridPoint) -> Result<SweepRow> {
        let (ctrl, spec) = self.configure(point)?;
        let profile = spec.build(&self.params)?;
        let sim = self.scenario.sim_config()?;
        let (passive, active) = run_pair(&self.params, &sim, &ctrl, &profile)?;
        Ok(SweepRow {
            point: *point,
            passive: passive.termination,
            active: active.termination,
            saturation_steps: active.saturation_steps,
            report: Report::from_runs(&passive.samples, &active.samples),
        })
    }

    /// Runs every grid point; rows come back in grid order whatever the
    /// thread schedule.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        self.points.par_iter().map(|p| self.run_point(p)).collect()
    }
}

fn na(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_owned(), |x| x.to_string())
}

pub fn write_rows<W: Write>(out: W, rows: &[SweepRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "eta",
        "psi",
        "speed_kph",
        "preview_time",
        "termination_passive",
        "termination_active",
        "saturation_steps",
        "peak_roll_passive",
        "peak_roll_active",
        "reduction_roll",
        "reduction_rollrate",
        "reduction_pk2pk",
        "oscillation_index_active",
        "response_delay",
    ])?;
    for r in rows {
        let m = &r.report.metrics;
        w.write_record([
            r.point.eta.to_string(),
            r.point.psi.to_string(),
            r.point.speed_kph.to_string(),
            r.point.preview_time.to_string(),
            r.passive.name().to_owned(),
            r.active.name().to_owned(),
            r.saturation_steps.to_string(),
            m.peak_roll_passive.to_string(),
            m.peak_roll_active.to_string(),
            na(m.reduction_roll),
            na(m.reduction_rollrate),
            na(m.reduction_pk2pk),
            m.oscillation_index_active.to_string(),
            na(r.report.response_delay),
        ])?;
    }
    w.flush()?;
    Ok(())
}
