//! Sweep configuration: command defaults, a JSON file and `--set` overrides,
//! applied in that order.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use jchm_core::{Execution, SolverConfig};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Single-cavity polariton levels and hopping elements.
    Onsite,
    /// Mott-lobe boundaries μ(J) of the slave-boson theory.
    Boundary,
    /// Bogoliubov spectrum along (k, 0, 0).
    Spectrum,
    /// Mean-field energy with the zero-point correction.
    Fluct,
    /// T = 0 phase boundaries of the Dicke model.
    DickeBoundary,
    /// Dicke-model excitation spectrum.
    DickeSpectrum,
    /// Critical temperatures of both theories.
    Tc,
    /// Large-hopping comparison of both theories.
    Compare,
    /// Two-site exact diagonalization against the variational energy.
    EdCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Onsite => "onsite",
            Command::Boundary => "boundary",
            Command::Spectrum => "spectrum",
            Command::Fluct => "fluct",
            Command::DickeBoundary => "dicke-boundary",
            Command::DickeSpectrum => "dicke-spectrum",
            Command::Tc => "tc",
            Command::Compare => "compare",
            Command::EdCheck => "ed-check",
        }
    }

    /// Swept symbols and their default ranges.
    pub fn default_ranges(self) -> BTreeMap<String, Range> {
        let lin = |start: f64, stop: f64, count: usize| Range::Linear { start, stop, count };
        let vals = |v: &[f64]| Range::Values { values: v.to_vec() };
        let pi = std::f64::consts::PI;
        let entries: Vec<(&str, Range)> = match self {
            Command::Onsite => vec![("n", vals(&[1.0, 2.0, 3.0])), ("delta", lin(-2.0, 2.0, 9))],
            Command::Boundary => vec![
                ("n", vals(&[1.0, 2.0, 3.0])),
                ("delta", vals(&[-1.0, -0.5, 0.0, 0.5, 1.0])),
                ("J", lin(0.0, 0.05, 51)),
            ],
            Command::Spectrum => vec![("J", vals(&[0.5, 1.0, 1.5])), ("k", lin(0.0, pi, 101))],
            Command::Fluct => vec![("mu", lin(-1.0, -0.3, 15)), ("J", vals(&[0.02]))],
            Command::DickeBoundary => vec![("delta_d", lin(-6.0, 2.0, 81))],
            Command::DickeSpectrum => vec![("mu_d", vals(&[-1.0])), ("k", lin(0.0, 3.0, 61))],
            Command::Tc => vec![
                ("delta_d", vals(&[-1.0, -3.0])),
                ("mu_d", lin(-4.5, -0.2, 44)),
                ("J", vals(&[10.0, 30.0, 100.0])),
            ],
            Command::Compare => vec![
                ("J", vals(&jchm_core::bridge::LIMIT_HOPPINGS)),
                ("mu_d", lin(-4.0, -0.25, 61)),
            ],
            Command::EdCheck => vec![
                ("delta", vals(&[-0.5, 0.0, 0.5])),
                ("mu", lin(-0.8, -0.4, 3)),
                ("J", vals(&[0.0, 0.01, 0.03])),
            ],
        };
        entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }
}

/// Sampled values of one swept symbol.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum Range {
    Linear { start: f64, stop: f64, count: usize },
    Values { values: Vec<f64> },
}

impl Range {
    pub fn points(&self) -> Vec<f64> {
        match self {
            Range::Linear { start, stop, count } => match count {
                0 => Vec::new(),
                1 => vec![*start],
                n => (0..*n)
                    .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
                    .collect(),
            },
            Range::Values { values } => values.clone(),
        }
    }

    fn validate(&self, name: &str) -> Result<(), CliError> {
        let pts = self.points();
        if pts.is_empty() {
            return Err(CliError::Config(format!("range `{name}` is empty")));
        }
        if pts.iter().any(|x| !x.is_finite()) {
            return Err(CliError::Config(format!("range `{name}` has non-finite values")));
        }
        Ok(())
    }
}

/// Parameters held fixed during a sweep, in units of `g` with `ω_c = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FixedParams {
    /// Detuning `δ = ω_x − ω_c`.
    pub delta: f64,
    /// Chemical potential `μ − ω_c`.
    pub mu: f64,
    pub hopping: f64,
    pub dim: u8,
    /// Lobe filling of the slave-boson commands.
    pub n: u32,
    /// `spectrum` only: take `μ` at the lobe tip and `J` in units of `J_c0`.
    pub relative_to_tip: bool,
    pub delta_d: f64,
    pub mu_d: f64,
    /// Photon cutoff of `ed-check`.
    pub ed_photon_cutoff: usize,
}

impl Default for FixedParams {
    fn default() -> Self {
        Self {
            delta: 0.0,
            mu: -0.5,
            hopping: 0.02,
            dim: 2,
            n: 1,
            relative_to_tip: true,
            delta_d: -3.0,
            mu_d: -1.0,
            ed_photon_cutoff: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub command: Command,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV.
    #[serde(default)]
    pub gnuplot: bool,
    #[serde(default)]
    pub execution: Execution,
    #[serde(default)]
    pub params: FixedParams,
    #[serde(default)]
    pub ranges: BTreeMap<String, Range>,
    #[serde(default)]
    pub solver: SolverConfig,
}

impl SweepConfig {
    pub fn defaults(command: Command) -> Self {
        Self {
            command,
            out: None,
            gnuplot: false,
            execution: Execution::default(),
            params: FixedParams::default(),
            ranges: command.default_ranges(),
            solver: SolverConfig::default(),
        }
    }

    /// Resolves defaults < file < overrides and validates the result.
    pub fn resolve(command: Command, file: Option<&Path>, sets: &[String]) -> Result<Self, CliError> {
        let mut value = serde_json::to_value(Self::defaults(command)).expect("defaults serialize");
        if let Some(path) = file {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            let file_value: Value =
                serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            if !file_value.is_object() {
                return Err(CliError::Config(format!("{}: expected a JSON object", path.display())));
            }
            merge(&mut value, file_value, &[]);
        }
        for s in sets {
            apply_set(&mut value, s)?;
        }
        // The positional command wins over the file.
        value["command"] = serde_json::to_value(command).expect("command serializes");
        let cfg: SweepConfig = serde_json::from_value(value).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let allowed = self.command.default_ranges();
        for (name, r) in &self.ranges {
            if !allowed.contains_key(name) {
                let names: Vec<&str> = allowed.keys().map(String::as_str).collect();
                return Err(CliError::Config(format!(
                    "`{}` does not sweep `{name}`; expected one of {names:?}",
                    self.command.name()
                )));
            }
            r.validate(name)?;
        }
        if let Some(n) = self.ranges.get("n") {
            if n.points().iter().any(|&x| x < 0.0 || x.fract() != 0.0 || x > 1e6) {
                return Err(CliError::Config("range `n` must hold non-negative integers".into()));
            }
        }
        if !(1..=3).contains(&self.params.dim) {
            return Err(CliError::Config(format!("dim {} not in 1..=3", self.params.dim)));
        }
        let s = &self.solver;
        if s.grid_points < 3 || s.kgrid_points < 1 || s.n_max < 1 || s.max_newton_iter < 1 {
            return Err(CliError::Config("solver grid sizes must be positive".into()));
        }
        Ok(())
    }

    /// Points of a swept symbol; every symbol of the command has a default.
    pub fn points(&self, name: &str) -> Vec<f64> {
        self.ranges
            .get(name)
            .cloned()
            .unwrap_or_else(|| self.command.default_ranges()[name].clone())
            .points()
    }
}

/// Deep merge of JSON objects. Entries of `ranges` are replaced as a whole
/// so that a linear range can be swapped for a list of values.
fn merge(base: &mut Value, over: Value, path: &[&str]) {
    match (base, over) {
        (Value::Object(b), Value::Object(o)) if path != ["ranges", "*"] => {
            for (k, v) in o {
                let child = if path == ["ranges"] {
                    vec!["ranges", "*"]
                } else {
                    vec![k.as_str()]
                };
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v, &child),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (b, o) => *b = o,
    }
}

/// Applies one `dotted.key=value` override. Values are parsed as JSON and
/// fall back to a plain string.
fn apply_set(root: &mut Value, spec: &str) -> Result<(), CliError> {
    let (key, raw) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("--set `{spec}`: expected key=value")))?;
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::Config(format!("--set `{spec}`: empty key segment")));
    }
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut node = root;
    for (i, part) in parts.iter().enumerate() {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| CliError::Config(format!("--set `{spec}`: `{}` is not an object", parts[..i].join("."))))?;
        if i + 1 == parts.len() {
            // A range switches form when a key of the other form is set.
            if parts.len() == 3 && parts[0] == "ranges" {
                if *part == "values" {
                    obj.retain(|k, _| k == "values");
                } else {
                    obj.remove("values");
                }
            }
            obj.insert(part.to_string(), value);
            return Ok(());
        }
        node = obj.entry(part.to_string()).or_insert_with(|| Value::Object(Map::new()));
    }
    unreachable!("split yields at least one segment")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_overrides_nested_keys() {
        let mut v = serde_json::to_value(SweepConfig::defaults(Command::Fluct)).unwrap();
        apply_set(&mut v, "solver.kgrid_points=16").unwrap();
        apply_set(&mut v, "ranges.J.values=[0.1,0.2]").unwrap();
        apply_set(&mut v, "out=a/b.csv").unwrap();
        let c: SweepConfig = serde_json::from_value(v).unwrap();
        assert_eq!(c.solver.kgrid_points, 16);
        assert_eq!(c.points("J"), vec![0.1, 0.2]);
        assert_eq!(c.out.unwrap(), PathBuf::from("a/b.csv"));
    }

    #[test]
    fn range_form_switches() {
        let mut v = serde_json::to_value(SweepConfig::defaults(Command::Fluct)).unwrap();
        apply_set(&mut v, "ranges.J.count=3").unwrap();
        assert!(serde_json::from_value::<SweepConfig>(v.clone()).is_err());
        apply_set(&mut v, "ranges.J.start=0").unwrap();
        apply_set(&mut v, "ranges.J.stop=1").unwrap();
        let c: SweepConfig = serde_json::from_value(v).unwrap();
        assert_eq!(c.points("J"), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn file_replaces_whole_ranges() {
        let mut base = serde_json::to_value(SweepConfig::defaults(Command::Fluct)).unwrap();
        let over = serde_json::json!({"ranges": {"mu": {"values": [-0.3]}}, "params": {"delta": 0.5}});
        merge(&mut base, over, &[]);
        let c: SweepConfig = serde_json::from_value(base).unwrap();
        assert_eq!(c.points("mu"), vec![-0.3]);
        assert_eq!(c.params.delta, 0.5);
        assert_eq!(c.params.dim, 2);
        assert_eq!(c.points("J"), vec![0.02]);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let mut v = serde_json::to_value(SweepConfig::defaults(Command::Tc)).unwrap();
        apply_set(&mut v, "params.detuning=1").unwrap();
        assert!(serde_json::from_value::<SweepConfig>(v).is_err());
        let mut c = SweepConfig::defaults(Command::Tc);
        c.ranges.insert("k".into(), Range::Values { values: vec![0.0] });
        assert!(matches!(c.validate(), Err(CliError::Config(_))));
    }
}
