//! Strict JSON experiment configuration.

use std::fmt;
use std::path::{Path, PathBuf};

use kinemalab_core::dc::{aura_polytope, DCFunction, DcJson};
use kinemalab_core::geom::io::{parse_body, BodyJson};
use kinemalab_core::{AxisBox, HPolytope, Matrix, Polyconvex, RigidMotion, Vector};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Pkf,
    Decomposition,
    Steiner,
    Content,
    Weakreg,
    Constants,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Experiment::Pkf => "pkf",
            Experiment::Decomposition => "decomposition",
            Experiment::Steiner => "steiner",
            Experiment::Content => "content",
            Experiment::Weakreg => "weakreg",
            Experiment::Constants => "constants",
        };
        f.write_str(s)
    }
}

/// A body given as a path to a JSON file or inline.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BodyInput {
    Path(PathBuf),
    Inline(BodyJson),
}

/// A DC function: the aura of a body, a path to a DC JSON file, or inline.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionInput {
    Aura {
        aura: BodyInput,
    },
    Path(PathBuf),
    Inline(DcJson),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

/// `x ↦ Rx + t`; a planar motion may give `angle` instead of `rotation`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
    pub translation: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContentSet {
    NorEps,
    Sigma,
    Tk,
    Graph,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Largest accepted `|z|` of a Monte-Carlo comparison.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_max: Option<f64>,
    /// Largest accepted residual of an exact identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    /// Accepted distance between fitted and expected dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<f64>,
    /// Largest accepted max/min ratio of the content proxy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proxy_ratio: Option<f64>,
    /// Accepted distance between certified and expected `ε₀`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps0: Option<f64>,
}

impl Tolerances {
    pub fn z_max(&self) -> f64 {
        self.z_max.unwrap_or(4.0)
    }

    pub fn residual(&self) -> f64 {
        self.residual.unwrap_or(1e-8)
    }

    pub fn dimension(&self) -> f64 {
        self.dimension.unwrap_or(0.15)
    }

    pub fn proxy_ratio(&self) -> f64 {
        self.proxy_ratio.unwrap_or(4.0)
    }

    pub fn eps0(&self) -> f64 {
        self.eps0.unwrap_or(1e-9)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<BodyInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<BodyInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<FunctionInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<BoxSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<BoxSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub motion: Option<MotionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<Vec<BoxSpec>>,
    /// Steiner radii, or the single `ε` of a `nor_ε` content run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<BoxSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<ContentSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scales: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_dimension: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_content: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_eps0: Option<f64>,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Output directory for `report.json` and the CSV table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl ExperimentConfig {
    /// Defaults for an inline run: the seed is still required.
    pub fn inline(experiment: Experiment, seed: u64) -> ExperimentConfig {
        ExperimentConfig {
            experiment,
            seed,
            samples: None,
            a: None,
            b: None,
            function: None,
            d: None,
            j: None,
            phi: None,
            psi: None,
            motion: None,
            region: None,
            eps: None,
            window: None,
            set: None,
            scales: None,
            level: None,
            delta: None,
            expect_dimension: None,
            expect_content: None,
            expect_eps0: None,
            tolerances: Tolerances::default(),
            out: None,
        }
    }

    pub fn parse(text: &str) -> Result<ExperimentConfig, CliError> {
        let c: ExperimentConfig = serde_json::from_str(text).map_err(|e| config_error(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let t = &self.tolerances;
        for (name, v) in [("z_max", t.z_max), ("residual", t.residual), ("dimension", t.dimension), ("proxy_ratio", t.proxy_ratio), ("eps0", t.eps0)]
        {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(config_error(format!("tolerance {name} must be positive, got {v}")));
                }
            }
        }
        if self.samples == Some(0) {
            return Err(config_error("samples must be positive"));
        }
        if let Some(eps) = &self.eps {
            if eps.is_empty() || eps.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
                return Err(config_error("eps values must be positive"));
            }
        }
        if let Some(d) = self.delta {
            if !(d > 0.0 && d.is_finite()) {
                return Err(config_error("delta must be positive"));
            }
        }
        if self.scales.is_some_and(|s| s < 2) {
            return Err(config_error("at least two scales are needed"));
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON of the configuration without its
    /// output directory.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.out = None;
        let text = serde_json::to_string(&c).expect("serializable");
        Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Resolves relative input paths against the configuration's directory.
pub struct Inputs<'a> {
    pub base: &'a Path,
}

impl Inputs<'_> {
    fn read(&self, p: &Path) -> Result<String, CliError> {
        let path = if p.is_absolute() { p.to_path_buf() } else { self.base.join(p) };
        std::fs::read_to_string(&path).map_err(|e| config_error(format!("{}: {e}", path.display())))
    }

    pub fn body(&self, b: &BodyInput) -> Result<Polyconvex, CliError> {
        match b {
            BodyInput::Path(p) => parse_body(&self.read(p)?).map_err(|e| config_error(format!("{}: {e}", p.display()))),
            BodyInput::Inline(j) => j.to_polyconvex().map_err(|e| config_error(e.to_string())),
        }
    }

    pub fn polytope(&self, b: &BodyInput) -> Result<HPolytope, CliError> {
        let mut u = self.body(b)?;
        if u.pieces.len() != 1 {
            return Err(config_error("a single convex polytope is required"));
        }
        Ok(u.pieces.remove(0))
    }

    pub fn function(&self, f: &FunctionInput) -> Result<DCFunction, CliError> {
        match f {
            FunctionInput::Aura { aura } => aura_polytope(&self.polytope(aura)?).map_err(|e| config_error(e.to_string())),
            FunctionInput::Path(p) => DCFunction::parse(&self.read(p)?).map_err(|e| config_error(format!("{}: {e}", p.display()))),
            FunctionInput::Inline(j) => DCFunction::from_json(j).map_err(|e| config_error(e.to_string())),
        }
    }
}

pub fn axis_box(b: &BoxSpec) -> Result<AxisBox, CliError> {
    AxisBox::new(b.lo.clone(), b.hi.clone()).map_err(|e| config_error(e.to_string()))
}

pub fn boxes(bs: &Option<Vec<BoxSpec>>) -> Result<Option<Vec<AxisBox>>, CliError> {
    bs.as_ref().map(|v| v.iter().map(axis_box).collect()).transpose()
}

pub fn motion(m: &MotionSpec, d: usize) -> Result<RigidMotion, CliError> {
    if m.translation.len() != d {
        return Err(config_error(format!("translation needs {d} coordinates")));
    }
    let t = Vector::from_vec(m.translation.clone());
    let rot = match (&m.rotation, m.angle) {
        (Some(_), Some(_)) => return Err(config_error("give either rotation or angle, not both")),
        (Some(rows), None) => {
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(config_error(format!("rotation must be {d}×{d}")));
            }
            Matrix::from_row_iterator(d, d, rows.iter().flatten().copied())
        }
        (None, Some(theta)) => {
            if d != 2 {
                return Err(config_error("an angle describes a planar rotation only"));
            }
            let (s, c) = theta.sin_cos();
            Matrix::from_row_slice(2, 2, &[c, -s, s, c])
        }
        (None, None) => Matrix::identity(d, d),
    };
    RigidMotion::new(rot, t).map_err(|e| config_error(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_is_mandatory() {
        assert!(matches!(ExperimentConfig::parse(r#"{"experiment": "pkf"}"#), Err(CliError::Config(_))));
        assert!(ExperimentConfig::parse(r#"{"experiment": "pkf", "seed": 3}"#).is_ok());
    }

    #[test]
    fn unknown_keys_and_bad_tolerances_are_rejected() {
        assert!(ExperimentConfig::parse(r#"{"experiment": "pkf", "seed": 1, "sample": 5}"#).is_err());
        assert!(ExperimentConfig::parse(r#"{"experiment": "pkf", "seed": 1, "tolerances": {"z_max": -1}}"#).is_err());
        assert!(ExperimentConfig::parse(r#"{"experiment": "pkf", "seed": 1, "tolerances": {"zmax": 1}}"#).is_err());
    }

    #[test]
    fn hash_ignores_output_directory() {
        let a = ExperimentConfig::parse(r#"{"experiment": "steiner", "seed": 1}"#).unwrap();
        let mut b = a.clone();
        b.out = Some("elsewhere".into());
        assert_eq!(a.hash(), b.hash());
        b.seed = 2;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }

    #[test]
    fn inputs_inline_and_planar_motion() {
        let c = ExperimentConfig::parse(
            r#"{"experiment": "decomposition", "seed": 1,
                "a": {"vertices": [[0,0],[1,0],[0,1]]},
                "motion": {"angle": 0.5, "translation": [0.1, 0.2]}}"#,
        )
        .unwrap();
        let inputs = Inputs { base: Path::new(".") };
        assert_eq!(inputs.polytope(c.a.as_ref().unwrap()).unwrap().vertices().len(), 3);
        let g = motion(c.motion.as_ref().unwrap(), 2).unwrap();
        assert!((g.rotation[(0, 0)] - 0.5f64.cos()).abs() < 1e-15);
    }
}
