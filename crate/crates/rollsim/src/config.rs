//! TOML configuration files.
//!
//! Every file is a flat table whose keys mirror the model's parameter names.
//! Missing keys take the defaults of the core types; unknown keys are
//! rejected so that a typo never silently falls back to a default.

use std::fs;
use std::path::Path;

use rollsim_core::{
    ConfigError, ControlVariant, ControllerConfig, Integrator, ManeuverKind, MeasurementMode, PreviewDriver,
    RoadProfile, ScenarioSpec, SimConfig, Steering, VehicleParams,
};
use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VehicleFile {
    pub m_s: f64,
    pub m_u: f64,
    #[serde(rename = "I_xx")]
    pub i_xx: f64,
    pub h_phi: f64,
    pub l_s: f64,
    pub l_w: f64,
    pub a: f64,
    pub l: f64,
    pub k_f: f64,
    pub k_r: f64,
    pub b_f: f64,
    pub b_r: f64,
    pub k_t: f64,
    #[serde(rename = "K_u")]
    pub k_u: f64,
    pub g: f64,
}

impl Default for VehicleFile {
    fn default() -> Self {
        let p = VehicleParams::default();
        Self {
            m_s: p.m_s,
            m_u: p.m_u,
            i_xx: p.i_xx,
            h_phi: p.h_phi,
            l_s: p.l_s,
            l_w: p.l_w,
            a: p.a,
            l: p.l,
            k_f: p.k_f,
            k_r: p.k_r,
            b_f: p.b_f,
            b_r: p.b_r,
            k_t: p.k_t,
            k_u: p.k_u,
            g: p.g,
        }
    }
}

impl VehicleFile {
    pub fn resolve(&self) -> Result<VehicleParams> {
        let p = VehicleParams {
            m_s: self.m_s,
            m_u: self.m_u,
            i_xx: self.i_xx,
            h_phi: self.h_phi,
            l_s: self.l_s,
            l_w: self.l_w,
            a: self.a,
            l: self.l,
            k_f: self.k_f,
            k_r: self.k_r,
            b_f: self.b_f,
            b_r: self.b_r,
            k_t: self.k_t,
            k_u: self.k_u,
            g: self.g,
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ControllerFile {
    pub eta: f64,
    pub psi: f64,
    pub variant: String,
    pub force_limit: f64,
    pub enabled: bool,
}

impl Default for ControllerFile {
    fn default() -> Self {
        let c = ControllerConfig::default();
        Self {
            eta: c.eta,
            psi: c.psi,
            variant: c.variant.name().to_owned(),
            force_limit: c.force_limit,
            enabled: c.enabled,
        }
    }
}

impl ControllerFile {
    pub fn resolve(&self) -> Result<ControllerConfig> {
        let variant = ControlVariant::from_name(&self.variant).ok_or(ConfigError::new(
            "variant",
            "expected measured-accel, steering-estimate, banked or small-angle",
        ))?;
        let c = ControllerConfig {
            eta: self.eta,
            psi: self.psi,
            variant,
            force_limit: self.force_limit,
            enabled: self.enabled,
        };
        c.validate()?;
        Ok(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SteeringFile {
    Zero,
    Ramp { start: f64, duration: f64, target: f64 },
    Sine { amplitude: f64, period: f64, #[serde(default)] start: f64 },
}

impl From<SteeringFile> for Steering {
    fn from(s: SteeringFile) -> Self {
        match s {
            SteeringFile::Zero => Steering::Zero,
            SteeringFile::Ramp { start, duration, target } => Steering::Ramp { start, duration, target },
            SteeringFile::Sine { amplitude, period, start } => Steering::Sine { amplitude, period, start },
        }
    }
}

/// Road heights (m) under fl, fr, rl, rr from time `at` onwards.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoadStepFile {
    pub at: f64,
    pub heights: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimFile {
    pub dt: f64,
    pub integrator: String,
    /// `perfect` or `filtered`.
    pub measurement: String,
    /// rad/s, only used with the filtered measurement.
    pub gyro_bias: f64,
    pub record_decimation: usize,
}

impl Default for SimFile {
    fn default() -> Self {
        let s = SimConfig::new(1.0);
        Self {
            dt: s.dt,
            integrator: s.integrator.name().to_owned(),
            measurement: "perfect".to_owned(),
            gyro_bias: 0.0,
            record_decimation: s.record_decimation,
        }
    }
}

impl SimFile {
    pub fn resolve(&self, t_end: f64) -> Result<SimConfig> {
        let integrator = Integrator::from_name(&self.integrator)
            .ok_or(ConfigError::new("integrator", "expected rk4 or euler"))?;
        let measurement = match self.measurement.as_str() {
            "perfect" => MeasurementMode::Perfect,
            "filtered" => MeasurementMode::Filtered { gyro_bias: self.gyro_bias },
            _ => return Err(ConfigError::new("measurement", "expected perfect or filtered").into()),
        };
        if !self.gyro_bias.is_finite() {
            return Err(ConfigError::new("gyro_bias", "must be finite").into());
        }
        let sim = SimConfig {
            dt: self.dt,
            integrator,
            measurement,
            record_decimation: self.record_decimation,
            ..SimConfig::new(t_end)
        };
        sim.validate()?;
        Ok(sim)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioFile {
    pub kind: String,
    pub speed_kph: f64,
    pub duration: Option<f64>,
    pub preview_time: f64,
    pub cone_spacing: f64,
    pub gate_offset: f64,
    pub driver_gain: f64,
    pub lead_in: f64,
    pub driver_dt: f64,
    pub ramp_start: f64,
    pub ramp_s: f64,
    pub bank_deg: f64,
    pub bank_ramp_s: f64,
    pub steering: Option<SteeringFile>,
    pub road_step: Option<RoadStepFile>,
    pub sim: SimFile,
}

impl Default for ScenarioFile {
    fn default() -> Self {
        let s = ScenarioSpec::default();
        Self {
            kind: s.kind.name().to_owned(),
            speed_kph: s.speed_kph,
            duration: s.duration,
            preview_time: s.driver.preview_time,
            cone_spacing: s.driver.cone_spacing,
            gate_offset: s.driver.lateral_offset,
            driver_gain: s.driver.gain,
            lead_in: s.driver.lead_in,
            driver_dt: s.driver.table_dt,
            ramp_start: s.ramp_start,
            ramp_s: s.ramp_s,
            bank_deg: s.bank_deg,
            bank_ramp_s: s.bank_ramp_s,
            steering: None,
            road_step: None,
            sim: SimFile::default(),
        }
    }
}

/// A scenario file resolved into core types.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub spec: ScenarioSpec,
    pub sim: SimFile,
}

impl Scenario {
    pub fn sim_config(&self) -> Result<SimConfig> {
        self.sim.resolve(self.spec.duration_or_default())
    }
}

impl ScenarioFile {
    pub fn resolve(&self) -> Result<Scenario> {
        let kind = ManeuverKind::from_name(&self.kind)
            .ok_or(ConfigError::new("kind", "expected slalom, j-turn or custom"))?;
        if kind != ManeuverKind::Custom && self.steering.is_some() {
            return Err(ConfigError::new("steering", "only a custom maneuver takes a steering table").into());
        }
        let driver = PreviewDriver {
            preview_time: self.preview_time,
            cone_spacing: self.cone_spacing,
            lateral_offset: self.gate_offset,
            gain: self.driver_gain,
            lead_in: self.lead_in,
            table_dt: self.driver_dt,
        };
        driver.validate()?;
        let road = match self.road_step {
            None => RoadProfile::Flat,
            Some(RoadStepFile { at, heights }) => {
                if !(at.is_finite() && heights.iter().all(|h| h.is_finite())) {
                    return Err(ConfigError::new("road_step", "must be finite").into());
                }
                RoadProfile::Step { at, heights }
            }
        };
        let spec = ScenarioSpec {
            kind,
            speed_kph: self.speed_kph,
            duration: self.duration,
            driver,
            ramp_start: self.ramp_start,
            ramp_s: self.ramp_s,
            steering: self.steering.map(Steering::from).unwrap_or(Steering::Zero),
            bank_deg: self.bank_deg,
            bank_ramp_s: self.bank_ramp_s,
            road,
        };
        let scenario = Scenario { spec, sim: self.sim.clone() };
        scenario.sim_config()?;
        Ok(scenario)
    }
}

/// Cartesian sweep axes. An absent axis holds the base value.
#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridAxes {
    pub eta: Vec<f64>,
    pub psi: Vec<f64>,
    pub speed_kph: Vec<f64>,
    pub preview_time: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridFile {
    pub vehicle: VehicleFile,
    pub controller: ControllerFile,
    pub scenario: ScenarioFile,
    pub grid: GridAxes,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Parses TOML text; `origin` names the source in diagnostics, which also
/// carry the line and, for bad values, the key.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str, origin: &Path) -> Result<T> {
    toml::from_str(text).map_err(|e| {
        let mut message = e.message().to_owned();
        if let Some(span) = e.span() {
            let before = &text[..span.start];
            let line_start = before.rfind('\n').map_or(0, |i| i + 1);
            if let Some((key, _)) = before[line_start..].split_once('=') {
                message = format!("`{}`: {message}", key.trim());
            }
            message = format!("line {}: {message}", before.matches('\n').count() + 1);
        }
        Error::parse(origin, message)
    })
}

fn load<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    parse(&read(path)?, path)
}

pub fn load_vehicle(path: &Path) -> Result<VehicleParams> {
    load::<VehicleFile>(path)?.resolve()
}

pub fn load_controller(path: &Path) -> Result<ControllerConfig> {
    load::<ControllerFile>(path)?.resolve()
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    load::<ScenarioFile>(path)?.resolve()
}

pub fn load_grid(path: &Path) -> Result<GridFile> {
    load(path)
}
