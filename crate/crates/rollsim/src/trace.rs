//! CSV telemetry: one row per recorded sample, fixed column order, units in
//! the header.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use rollsim_core::{CornerForces, RollState, Sample};

use crate::error::{Error, Result};

pub const WIDTH: usize = 22;

pub const COLUMNS: [&str; WIDTH] = [
    "t [s]",
    "phi [rad]",
    "phi_dot [rad/s]",
    "z_s [m]",
    "z_s_dot [m/s]",
    "z_u_fl [m]",
    "z_u_fr [m]",
    "z_u_rl [m]",
    "z_u_rr [m]",
    "z_u_dot_fl [m/s]",
    "z_u_dot_fr [m/s]",
    "z_u_dot_rl [m/s]",
    "z_u_dot_rr [m/s]",
    "u_phi [N*m]",
    "s [rad]",
    "F_fl [N]",
    "F_fr [N]",
    "F_rl [N]",
    "F_rr [N]",
    "a_y [m/s^2]",
    "delta [rad]",
    "flags [-]",
];

fn row(s: &Sample) -> [String; WIDTH] {
    let x = &s.state;
    let f = &s.forces.0;
    let values = [
        s.t, x.phi, x.phi_dot, x.z_s, x.z_s_dot, x.z_u[0], x.z_u[1], x.z_u[2], x.z_u[3], x.z_u_dot[0],
        x.z_u_dot[1], x.z_u_dot[2], x.z_u_dot[3], s.u_phi, s.surface, f[0], f[1], f[2], f[3], s.a_y, s.delta,
    ];
    let mut out: [String; WIDTH] = Default::default();
    for (slot, v) in out.iter_mut().zip(values) {
        // `Display` for f64 prints the shortest string that parses back to
        // the same value.
        *slot = v.to_string();
    }
    out[WIDTH - 1] = s.flags.to_string();
    out
}

pub fn write_samples<W: Write>(out: W, samples: &[Sample]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for s in samples {
        w.write_record(row(s))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_samples<R: Read>(input: R) -> std::result::Result<Vec<Sample>, String> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(|e| e.to_string())?;
    if header.len() != WIDTH || header.iter().zip(&COLUMNS).any(|(a, b)| a != *b) {
        return Err("unexpected header".to_owned());
    }
    let mut samples = Vec::new();
    for (line, record) in r.records().enumerate() {
        let record = record.map_err(|e| e.to_string())?;
        let mut v = [0.0; WIDTH - 1];
        for (i, slot) in v.iter_mut().enumerate() {
            *slot = record[i]
                .parse()
                .map_err(|_| format!("row {}: bad value in column `{}`", line + 2, COLUMNS[i]))?;
        }
        let flags = record[WIDTH - 1]
            .parse()
            .map_err(|_| format!("row {}: bad value in column `flags`", line + 2))?;
        samples.push(Sample {
            t: v[0],
            state: RollState {
                phi: v[1],
                phi_dot: v[2],
                z_s: v[3],
                z_s_dot: v[4],
                z_u: [v[5], v[6], v[7], v[8]],
                z_u_dot: [v[9], v[10], v[11], v[12]],
            },
            u_phi: v[13],
            surface: v[14],
            forces: CornerForces([v[15], v[16], v[17], v[18]]),
            a_y: v[19],
            delta: v[20],
            flags,
        });
    }
    Ok(samples)
}

pub fn save(path: &Path, samples: &[Sample]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_samples(file, samples).map_err(|e| Error::Trace { path: path.into(), message: e.to_string() })
}

pub fn load(path: &Path) -> Result<Vec<Sample>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_samples(file).map_err(|message| Error::Trace { path: path.into(), message })
}
