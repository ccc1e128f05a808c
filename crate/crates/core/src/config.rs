// SPDX-License-Identifier: Apache-2.0

//! Plain-text run configuration: one `key = value` per line, `#` comments.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::model::{Dissipation, ModelKind, SimulationParams};
use crate::{Error, Result};

/// Every key a config file may contain.
pub const KEYS: [&str; 17] = [
    "omega0_T",
    "tau_over_T",
    "U_over_omega0",
    "delta_over_omega0",
    "gamma_e_over_omega0",
    "t_start_over_T",
    "t_end_over_T",
    "dt_over_T",
    "model",
    "dissipation",
    "axis1",
    "axis2",
    "output_dir",
    "parallelism",
    "output_samples",
    "full_dump",
    "plots",
];

/// Parameters a sweep axis may vary.
pub const SWEEPABLE: [&str; 8] = [
    "omega0_T",
    "tau_over_T",
    "U_over_omega0",
    "delta_over_omega0",
    "gamma_e_over_omega0",
    "t_start_over_T",
    "t_end_over_T",
    "dt_over_T",
];

pub const DEFAULT_AXIS_POINTS: usize = 61;
pub const DEFAULT_SAMPLES: usize = 200;

/// Linearly spaced values of one parameter, endpoints included.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepAxis {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl SweepAxis {
    pub fn new(name: &str, min: f64, max: f64, points: usize) -> Result<Self> {
        if !SWEEPABLE.contains(&name) {
            return Err(Error::param(name, "not a sweepable parameter"));
        }
        if points == 0 {
            return Err(Error::param(name, "sweep axis needs at least one point"));
        }
        if !(min.is_finite() && max.is_finite()) || (points > 1 && min > max) {
            return Err(Error::param(name, format!("bad sweep range {min}..{max}")));
        }
        Ok(Self {
            name: name.to_string(),
            min,
            max,
            points,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min];
        }
        let n = self.points - 1;
        (0..=n)
            .map(|k| {
                if k == n {
                    self.max
                } else {
                    self.min + (self.max - self.min) * (k as f64 / n as f64)
                }
            })
            .collect()
    }

    fn to_text(&self) -> String {
        format!("{} {:?} {:?} {}", self.name, self.min, self.max, self.points)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub params: SimulationParams,
    pub axes: Vec<SweepAxis>,
    pub output_dir: Option<PathBuf>,
    /// worker threads for sweeps; None lets the pool decide
    pub parallelism: Option<usize>,
    pub output_samples: usize,
    /// keep every integrator step instead of `output_samples`
    pub full_dump: bool,
    pub plots: bool,
    /// keys that were set in the file rather than defaulted
    pub explicit: BTreeSet<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: SimulationParams::default(),
            axes: Vec::new(),
            output_dir: None,
            parallelism: None,
            output_samples: DEFAULT_SAMPLES,
            full_dump: false,
            plots: true,
            explicit: BTreeSet::new(),
        }
    }
}

/// Write one parameter by its config name.
pub fn set_param(params: &mut SimulationParams, key: &str, value: f64) -> Result<()> {
    let slot = match key {
        "omega0_T" => &mut params.omega0_t,
        "tau_over_T" => &mut params.tau_over_t,
        "U_over_omega0" => &mut params.u_over_omega0,
        "delta_over_omega0" => &mut params.delta_over_omega0,
        "gamma_e_over_omega0" => &mut params.gamma_e_over_omega0,
        "t_start_over_T" => &mut params.t_start_over_t,
        "t_end_over_T" => &mut params.t_end_over_t,
        "dt_over_T" => &mut params.dt_over_t,
        _ => return Err(Error::param(key, "not a numeric simulation parameter")),
    };
    *slot = value;
    Ok(())
}

fn parse_number(key: &str, value: &str) -> std::result::Result<f64, String> {
    value
        .parse::<f64>()
        .map_err(|_| format!("`{key}`: cannot parse `{value}` as a number"))
}

fn parse_flag(key: &str, value: &str) -> std::result::Result<bool, String> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("`{key}`: expected true or false, got `{value}`")),
    }
}

fn parse_count(key: &str, value: &str) -> std::result::Result<usize, String> {
    match value.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("`{key}`: expected a positive integer, got `{value}`")),
    }
}

fn parse_axis(key: &str, value: &str) -> std::result::Result<SweepAxis, String> {
    let fields: Vec<&str> = value.split_whitespace().collect();
    let (name, min, max, points) = match fields.as_slice() {
        [name, min, max] => (*name, *min, *max, None),
        [name, min, max, points] => (*name, *min, *max, Some(*points)),
        _ => {
            return Err(format!(
                "`{key}`: expected `<parameter> <min> <max> [points]`, got `{value}`"
            ))
        }
    };
    let points = points.map(|p| parse_count(key, p)).transpose()?;
    SweepAxis::new(
        name,
        parse_number(key, min)?,
        parse_number(key, max)?,
        points.unwrap_or(DEFAULT_AXIS_POINTS),
    )
    .map_err(|e| format!("`{key}`: {e}"))
}

impl RunConfig {
    /// Parse config text. `origin` only labels error messages.
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut lines = std::collections::BTreeMap::new();
        let err = |line: usize, message: String| Error::Config {
            path: origin.to_path_buf(),
            line,
            message,
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(err(line, format!("expected `key = value`, got `{content}`")));
            };
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(err(line, format!("unknown key `{key}`")));
            }
            if lines.insert(key.to_string(), line).is_some() {
                return Err(err(line, format!("duplicate key `{key}`")));
            }
            cfg.apply(key, value).map_err(|m| err(line, m))?;
            cfg.explicit.insert(key.to_string());
        }
        if cfg.axes.len() == 1 && cfg.explicit.contains("axis2") {
            return Err(err(lines["axis2"], "`axis2` given without `axis1`".into()));
        }
        cfg.params.validate().map_err(|e| {
            let line = match &e {
                Error::InvalidParameter { name, .. } => lines.get(name.as_str()).copied().unwrap_or(0),
                _ => 0,
            };
            err(line, e.to_string())
        })?;
        Ok(cfg)
    }

    fn apply(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        match key {
            "model" => self.params.model = value.parse::<ModelKind>().map_err(|e| e.to_string())?,
            "dissipation" => {
                self.params.dissipation = value.parse::<Dissipation>().map_err(|e| e.to_string())?
            }
            "axis1" => self.axes.insert(0, parse_axis(key, value)?),
            "axis2" => self.axes.push(parse_axis(key, value)?),
            "output_dir" => self.output_dir = Some(PathBuf::from(value)),
            "parallelism" => self.parallelism = Some(parse_count(key, value)?),
            "output_samples" => self.output_samples = parse_count(key, value)?,
            "full_dump" => self.full_dump = parse_flag(key, value)?,
            "plots" => self.plots = parse_flag(key, value)?,
            _ => {
                let v = parse_number(key, value)?;
                set_param(&mut self.params, key, v).map_err(|e| e.to_string())?;
            }
        }
        Ok(())
    }

    pub fn is_explicit(&self, key: &str) -> bool {
        self.explicit.contains(key)
    }

    /// Every effective setting in config syntax; parsing it back gives an
    /// identical run.
    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut out = String::new();
        let numbers = [
            ("omega0_T", p.omega0_t),
            ("tau_over_T", p.tau_over_t),
            ("U_over_omega0", p.u_over_omega0),
            ("delta_over_omega0", p.delta_over_omega0),
            ("gamma_e_over_omega0", p.gamma_e_over_omega0),
            ("t_start_over_T", p.t_start_over_t),
            ("t_end_over_T", p.t_end_over_t),
            ("dt_over_T", p.dt_over_t),
        ];
        for (k, v) in numbers {
            // {:?} keeps the shortest round-tripping representation
            let _ = writeln!(out, "{k} = {v:?}");
        }
        let _ = writeln!(out, "model = {}", p.model);
        let _ = writeln!(out, "dissipation = {}", p.dissipation);
        for (k, axis) in ["axis1", "axis2"].iter().zip(&self.axes) {
            let _ = writeln!(out, "{k} = {}", axis.to_text());
        }
        if let Some(dir) = &self.output_dir {
            let _ = writeln!(out, "output_dir = {}", dir.display());
        }
        if let Some(n) = self.parallelism {
            let _ = writeln!(out, "parallelism = {n}");
        }
        let _ = writeln!(out, "output_samples = {}", self.output_samples);
        let _ = writeln!(out, "full_dump = {}", self.full_dump);
        let _ = writeln!(out, "plots = {}", self.plots);
        out
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)?;
    RunConfig::parse(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<RunConfig> {
        RunConfig::parse(text, Path::new("test.cfg"))
    }

    #[test]
    fn empty_file_gives_defaults() {
        let cfg = parse("").unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.params, SimulationParams::default());
    }

    #[test]
    fn single_key_overrides_only_itself() {
        let cfg = parse("delta_over_omega0 = 1.0\n").unwrap();
        assert_eq!(cfg.params, SimulationParams::default());
        assert!(cfg.is_explicit("delta_over_omega0"));
        let cfg = parse("  U_over_omega0=5   # weaker blockade\n").unwrap();
        assert_eq!(cfg.params.u_over_omega0, 5.0);
        assert_eq!(cfg.params.tau_over_t, 0.7);
    }

    #[test]
    fn negative_step_names_the_key() {
        let err = parse("# header\n\ndt_over_T = -1\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("dt_over_T"), "{msg}");
        assert!(matches!(err, Error::Config { line: 3, .. }));
    }

    #[test]
    fn unknown_and_malformed_lines_are_rejected() {
        let e = parse("omega0_T = 10\nOmega0_T = 10\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 2, .. }), "{e}");
        assert!(e.to_string().contains("Omega0_T"));
        assert!(parse("tau_over_T 0.7").is_err());
        assert!(parse("tau_over_T = fast").unwrap_err().to_string().contains("tau_over_T"));
        assert!(parse("model = logic10").is_err());
        assert!(parse("tau_over_T = 1\ntau_over_T = 2").is_err());
        assert!(parse("parallelism = 0").is_err());
        assert!(parse("axis1 = model 0 1 3").is_err());
        assert!(parse("axis2 = tau_over_T 0 1 3").is_err());
    }

    #[test]
    fn lindblad_needs_full_space() {
        let e = parse("dissipation = lindblad\n").unwrap_err();
        assert!(e.to_string().contains("full27"));
        assert!(parse("dissipation = lindblad\nmodel = full27\n").is_ok());
    }

    #[test]
    fn axes_parse_in_order() {
        let cfg = parse("axis2 = tau_over_T 0.1 1.5 5\naxis1 = omega0_T 4 30\n").unwrap();
        assert_eq!(cfg.axes[0].name, "omega0_T");
        assert_eq!(cfg.axes[0].points, DEFAULT_AXIS_POINTS);
        let values = cfg.axes[1].values();
        for (v, want) in values.iter().zip([0.1, 0.45, 0.8, 1.15, 1.5]) {
            assert!((v - want).abs() < 1e-15);
        }
        assert_eq!((values[0], values[4]), (0.1, 1.5));
        let single = SweepAxis::new("tau_over_T", 0.3, 0.3, 1).unwrap();
        assert_eq!(single.values(), vec![0.3]);
    }

    #[test]
    fn text_round_trips() {
        let text = "omega0_T = 12.5\ntau_over_T = 0.1\nmodel = full27\ndissipation = lindblad\n\
                    gamma_e_over_omega0 = 0.003\naxis1 = delta_over_omega0 0.2 2 7\n\
                    output_dir = out/run\nparallelism = 3\nfull_dump = true\nplots = false\n";
        let cfg = parse(text).unwrap();
        let again = parse(&cfg.to_text()).unwrap();
        assert_eq!(cfg.params, again.params);
        assert_eq!(cfg.axes, again.axes);
        assert_eq!(cfg.output_dir, again.output_dir);
        assert_eq!(cfg.parallelism, again.parallelism);
        assert_eq!((cfg.full_dump, cfg.plots), (again.full_dump, again.plots));
        assert_eq!(again.to_text(), cfg.to_text());
    }
}
