//! CSV rendering. Numbers use Rust's `{:e}` formatting with 13 significant
//! digits, which is locale independent and always uses '.' as separator.
//! Files are rendered to a string first and written in one go.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::analysis::SweepResult;
use crate::error::{Error, Result};
use crate::integrator::{IntegratorConfig, TimeGrid};
use crate::params::{ModelKind, SystemParams};
use crate::pulses::{hop_rate, CouplingSnapshot};
use crate::state::Trajectory;

fn num(out: &mut String, x: f64) {
    write!(out, "{x:.12e}").expect("writing to a String cannot fail");
}

pub fn trajectory_header(model: ModelKind) -> &'static str {
    match model {
        ModelKind::Effective => {
            "t,re_a1,im_a1,re_a2,im_a2,re_b1,im_b1,re_b2,im_b2,n_a1,n_a2,n_b1,n_b2"
        }
        ModelKind::Full => {
            "t,re_a1,im_a1,re_a2,im_a2,re_b1,im_b1,re_b2,im_b2,re_c,im_c,n_a1,n_a2,n_b1,n_b2,n_c"
        }
    }
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let model = traj.kind.model();
    let mut out = String::with_capacity(traj.len() * 16 * (4 * model.dim() + 1));
    out.push_str(trajectory_header(model));
    out.push('\n');
    for (t, state) in traj.times.iter().zip(&traj.states) {
        num(&mut out, *t);
        for z in state.as_slice() {
            out.push(',');
            num(&mut out, z.re);
            out.push(',');
            num(&mut out, z.im);
        }
        for n in state.occupations() {
            out.push(',');
            num(&mut out, n);
        }
        out.push('\n');
    }
    out
}

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = format!("{},eta\n", result.param.name());
    for (x, eta) in result.grid.iter().zip(&result.eta) {
        num(&mut out, *x);
        out.push(',');
        num(&mut out, *eta);
        out.push('\n');
    }
    out
}

/// Coupling schedule `(t, G1, G2, g, J)` on the sampling grid of `cfg`.
/// The fiber value follows the same snapped switch the integrator uses.
pub fn pulses_csv(params: &SystemParams, cfg: &IntegratorConfig) -> String {
    let grid = TimeGrid::new(cfg.dt, params.t_final, params.t_off);
    let mut out = String::from("t,G1,G2,g,J\n");
    for k in grid.sample_indices(cfg.sample_stride) {
        let t = grid.time(k);
        let snap = CouplingSnapshot::with_fiber(t, params, grid.fiber_on(k), hop_rate);
        for (i, x) in [t, snap.g1, snap.g2, snap.g, snap.hop]
            .into_iter()
            .enumerate()
        {
            if i > 0 {
                out.push(',');
            }
            num(&mut out, x);
        }
        out.push('\n');
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents)?;
    Ok(())
}

/// Recomputes η = n_b2(last row) / n_b1(first row) from the complex
/// columns of a trajectory CSV.
pub fn efficiency_from_csv(text: &str) -> Result<f64> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty csv".into()))?;
    let cols: Vec<&str> = header.split(',').collect();
    let col = |name: &str| {
        cols.iter()
            .position(|c| *c == name)
            .ok_or_else(|| Error::Parse(format!("missing column {name}")))
    };
    let (rb1, ib1, rb2, ib2) = (col("re_b1")?, col("im_b1")?, col("re_b2")?, col("im_b2")?);

    let parse_row = |line: &str| -> Result<Vec<f64>> {
        line.split(',')
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("{f}: {e}")))
            })
            .collect()
    };
    let rows: Vec<&str> = lines.filter(|l| !l.is_empty()).collect();
    let (Some(first), Some(last)) = (rows.first(), rows.last()) else {
        return Err(Error::Parse("csv has no data rows".into()));
    };
    let first = parse_row(first)?;
    let last = parse_row(last)?;
    let seed = first[rb1].powi(2) + first[ib1].powi(2);
    if seed == 0.0 {
        return Err(Error::ZeroInitialExcitation);
    }
    Ok((last[rb2].powi(2) + last[ib2].powi(2)) / seed)
}
