// SPDX-License-Identifier: Apache-2.0

//! Single runs, parameter grids and decay scans, with their file output.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::config::{set_param, RunConfig, SweepAxis};
use crate::dynamics::{simulate, OutputStride, TARGET_DRIFT};
use crate::model::{Dissipation, ModelKind, SimulationParams};
use crate::observables::{fidelity, trajectory_summary, ObservableSeries, TrajectorySummary};
use crate::{plot, Error, Result};

pub const TIMESERIES_HEADER: &str =
    "t_over_T,omega01,omega02,P1,P2,P3,P4,P5,P6,P7,P8,P9,fidelity,leakage,norm";
pub const SWEEP_HEADER: &str = "axis1,axis2,fidelity";
pub const FLAGS_HEADER: &str = "axis1,axis2,status,max_drift,message";

/// Points on the default decay-rate axis.
pub const GAMMA_POINTS: usize = 25;
pub const GAMMA_MAX: f64 = 0.012;

/// Written into every manifest so outputs can be traced to a build.
pub fn build_id() -> String {
    format!(
        "{} {} ({})",
        env!("CARGO_PKG_NAME"),
        env!("CARGO_PKG_VERSION"),
        if cfg!(debug_assertions) { "debug" } else { "release" }
    )
}

/// Shortest text that parses back to the same f64.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e6).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn write_manifest(cfg: &RunConfig, dir: &Path, kind: &str) -> Result<PathBuf> {
    let path = dir.join("manifest.txt");
    let text = format!("# {kind}\n# build: {}\n{}", build_id(), cfg.to_text());
    fs::write(&path, text)?;
    Ok(path)
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

fn csv_bytes(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header.split(',')).map_err(csv_error)?;
    for row in rows {
        w.write_record(&row).map_err(csv_error)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub series: ObservableSeries,
    pub summary: TrajectorySummary,
    pub files: Vec<PathBuf>,
}

pub fn timeseries_csv(series: &ObservableSeries) -> Result<Vec<u8>> {
    let rows = (0..series.len()).map(|i| {
        let mut row = vec![
            format_number(series.times[i]),
            format_number(series.omega01[i]),
            format_number(series.omega02[i]),
        ];
        row.extend(series.populations[i].iter().map(|&p| format_number(p)));
        row.push(format_number(series.fidelity[i]));
        row.push(format_number(series.leakage[i]));
        row.push(format_number(series.norm_or_trace[i]));
        row
    });
    csv_bytes(TIMESERIES_HEADER, rows)
}

fn stride(cfg: &RunConfig) -> OutputStride {
    if cfg.full_dump {
        OutputStride::EveryStep
    } else {
        OutputStride::Samples(cfg.output_samples)
    }
}

/// One protocol run: timeseries.csv, manifest.txt and optionally populations.svg in `out`.
pub fn run_single(cfg: &RunConfig, out: &Path) -> Result<RunOutput> {
    let traj = simulate(&cfg.params, stride(cfg))?;
    let series = ObservableSeries::from_trajectory(&traj)?;
    let summary = trajectory_summary(&traj)?;

    fs::create_dir_all(out)?;
    let mut files = Vec::new();
    let csv_path = out.join("timeseries.csv");
    fs::write(&csv_path, timeseries_csv(&series)?)?;
    files.push(csv_path);
    files.push(write_manifest(cfg, out, "run")?);
    if cfg.plots {
        let column = |k: usize| series.populations.iter().map(|p| p[k]).collect::<Vec<f64>>();
        let (p1, p3, p7) = (column(0), column(2), column(6));
        let svg = plot::line_plot(
            "populations and fidelity",
            "t / T",
            &series.times,
            &[("P1", &p1), ("P3", &p3), ("P7", &p7), ("F", &series.fidelity)],
        );
        let path = out.join("populations.svg");
        fs::write(&path, svg)?;
        files.push(path);
    }
    Ok(RunOutput {
        series,
        summary,
        files,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum PointStatus {
    Converged,
    /// finished, but the norm or trace drifted past the target tolerance
    Drifted,
    Aborted(String),
}

impl PointStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            PointStatus::Converged => "ok",
            PointStatus::Drifted => "drift",
            PointStatus::Aborted(_) => "aborted",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    /// one value per axis
    pub coords: Vec<f64>,
    /// final fidelity against the singlet; None if the run aborted
    pub fidelity: Option<f64>,
    pub max_drift: f64,
    pub status: PointStatus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub axes: Vec<SweepAxis>,
    /// row-major over the axes, the last axis varying fastest
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.points).collect()
    }

    pub fn fidelities(&self) -> Vec<Option<f64>> {
        self.points.iter().map(|p| p.fidelity).collect()
    }

    fn coord_cells(p: &SweepPoint) -> [String; 2] {
        [
            format_number(p.coords[0]),
            p.coords.get(1).map(|&v| format_number(v)).unwrap_or_default(),
        ]
    }

    pub fn csv(&self) -> Result<Vec<u8>> {
        csv_bytes(
            SWEEP_HEADER,
            self.points.iter().map(|p| {
                let [a, b] = Self::coord_cells(p);
                vec![a, b, p.fidelity.map(format_number).unwrap_or_default()]
            }),
        )
    }

    pub fn flags_csv(&self) -> Result<Vec<u8>> {
        csv_bytes(
            FLAGS_HEADER,
            self.points.iter().map(|p| {
                let [a, b] = Self::coord_cells(p);
                let message = match &p.status {
                    PointStatus::Aborted(m) => m.clone(),
                    _ => String::new(),
                };
                vec![a, b, p.status.as_str().to_string(), format_number(p.max_drift), message]
            }),
        )
    }

    fn svg(&self) -> String {
        let x = self.axes[0].values();
        match self.axes.get(1) {
            None => {
                let f: Vec<f64> = self.points.iter().map(|p| p.fidelity.unwrap_or(f64::NAN)).collect();
                plot::line_plot("fidelity", &self.axes[0].name, &x, &[("F", &f)])
            }
            Some(second) => plot::heatmap(
                "fidelity",
                &self.axes[0].name,
                &second.name,
                &x,
                &second.values(),
                &self.fidelities(),
            ),
        }
    }
}

/// Every grid point's parameter set, in output order.
pub fn grid_params(base: &SimulationParams, axes: &[SweepAxis]) -> Result<Vec<(Vec<f64>, SimulationParams)>> {
    if axes.is_empty() || axes.len() > 2 {
        return Err(Error::param("axis1", format!("a sweep needs 1 or 2 axes, got {}", axes.len())));
    }
    let mut out = vec![(Vec::new(), base.clone())];
    for axis in axes {
        let values = axis.values();
        out = out
            .into_iter()
            .flat_map(|(coords, params)| {
                values.iter().map(move |&v| {
                    let mut c = coords.clone();
                    c.push(v);
                    let mut p = params.clone();
                    set_param(&mut p, &axis.name, v).map(|_| (c, p))
                })
            })
            .collect::<Result<Vec<_>>>()?;
    }
    for (_, p) in &out {
        p.validate()?;
    }
    Ok(out)
}

fn evaluate_point(coords: Vec<f64>, params: &SimulationParams) -> SweepPoint {
    let outcome = simulate(params, OutputStride::Samples(2)).and_then(|traj| {
        let target = crate::model::singlet_target(params.basis())?;
        let state = traj.final_state().ok_or(Error::EmptyTrajectory)?;
        Ok((fidelity(state, &target)?, traj.diagnostics.max_drift))
    });
    match outcome {
        Ok((f, drift)) => SweepPoint {
            coords,
            fidelity: Some(f),
            max_drift: drift,
            status: if drift <= TARGET_DRIFT {
                PointStatus::Converged
            } else {
                PointStatus::Drifted
            },
        },
        Err(e) => SweepPoint {
            coords,
            fidelity: None,
            max_drift: f64::NAN,
            status: PointStatus::Aborted(e.to_string()),
        },
    }
}

/// Final fidelity at every grid point, computed on `parallelism` threads.
///
/// Points are independent and collected in grid order, so the result does not
/// depend on the thread count.
pub fn evaluate_grid(
    base: &SimulationParams,
    axes: &[SweepAxis],
    parallelism: Option<usize>,
) -> Result<SweepResult> {
    let grid = grid_params(base, axes)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = parallelism {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::param("parallelism", e.to_string()))?;
    let points = pool.install(|| {
        grid.into_par_iter()
            .map(|(coords, p)| evaluate_point(coords, &p))
            .collect()
    });
    Ok(SweepResult {
        axes: axes.to_vec(),
        points,
    })
}

fn write_sweep(cfg: &RunConfig, result: &SweepResult, out: &Path, kind: &str) -> Result<()> {
    fs::create_dir_all(out)?;
    fs::write(out.join("sweep.csv"), result.csv()?)?;
    fs::write(out.join("sweep_flags.csv"), result.flags_csv()?)?;
    write_manifest(cfg, out, kind)?;
    if cfg.plots {
        fs::write(out.join("sweep.svg"), result.svg())?;
    }
    Ok(())
}

/// Evaluate the config's one or two axes and write sweep.csv, sweep_flags.csv,
/// manifest.txt and optionally sweep.svg into `out`.
pub fn sweep_grid(cfg: &RunConfig, out: &Path) -> Result<SweepResult> {
    let result = evaluate_grid(&cfg.params, &cfg.axes, cfg.parallelism)?;
    write_sweep(cfg, &result, out, "sweep")?;
    Ok(result)
}

/// Fill in the decay-scan setup for whatever the config leaves unset: full
/// space, master equation, U = 5Ω₀, window end 3T and a 25-point γ_e axis on
/// [0, 0.012]Ω₀.
pub fn gamma_scan_config(cfg: &RunConfig) -> Result<RunConfig> {
    let mut cfg = cfg.clone();
    let p = &mut cfg.params;
    if cfg.explicit.contains("model") && p.model != ModelKind::Full27 {
        return Err(Error::param("model", "gamma-scan requires model = full27"));
    }
    if cfg.explicit.contains("dissipation") && p.dissipation != Dissipation::Lindblad {
        return Err(Error::param("dissipation", "gamma-scan requires dissipation = lindblad"));
    }
    p.model = ModelKind::Full27;
    p.dissipation = Dissipation::Lindblad;
    if !cfg.explicit.contains("U_over_omega0") {
        p.u_over_omega0 = 5.0;
    }
    if !cfg.explicit.contains("t_end_over_T") {
        p.t_end_over_t = 3.0;
    }
    match cfg.axes.as_slice() {
        [] => cfg.axes = vec![SweepAxis::new("gamma_e_over_omega0", 0.0, GAMMA_MAX, GAMMA_POINTS)?],
        [a] if a.name == "gamma_e_over_omega0" => {}
        _ => {
            return Err(Error::param(
                "axis1",
                "gamma-scan takes a single gamma_e_over_omega0 axis",
            ))
        }
    }
    cfg.params.validate()?;
    Ok(cfg)
}

pub fn gamma_scan(cfg: &RunConfig, out: &Path) -> Result<SweepResult> {
    let cfg = gamma_scan_config(cfg)?;
    let result = evaluate_grid(&cfg.params, &cfg.axes, cfg.parallelism)?;
    write_sweep(&cfg, &result, out, "gamma-scan")?;
    Ok(result)
}

/// Linear interpolation of where `f` crosses `level` between samples i and i+1.
fn crossing(x: &[f64], f: &[f64], i: usize, level: f64) -> f64 {
    let t = (level - f[i]) / (f[i + 1] - f[i]);
    x[i] + t * (x[i + 1] - x[i])
}

/// Smallest x at which a sampled curve first reaches `level`, interpolated.
pub fn first_crossing(x: &[f64], f: &[f64], level: f64) -> Option<f64> {
    let k = f.iter().position(|&v| v >= level)?;
    Some(if k == 0 { x[0] } else { crossing(x, f, k - 1, level) })
}

/// The interval around the best sample where the curve stays at or above
/// `level`, with interpolated edges. An edge that reaches the end of the
/// sampled range is reported as that end.
pub fn threshold_window(x: &[f64], f: &[f64], level: f64) -> Option<(f64, f64)> {
    let best = (0..f.len()).max_by(|&a, &b| f[a].total_cmp(&f[b]))?;
    if f[best] < level {
        return None;
    }
    let mut lo = best;
    while lo > 0 && f[lo - 1] >= level {
        lo -= 1;
    }
    let mut hi = best;
    while hi + 1 < f.len() && f[hi + 1] >= level {
        hi += 1;
    }
    let left = if lo == 0 { x[0] } else { crossing(x, f, lo - 1, level) };
    let right = if hi + 1 == f.len() { x[hi] } else { crossing(x, f, hi, level) };
    Some((left, right))
}
