//! Run configuration: a small TOML schema with strict validation.
//!
//! Only `[model]` is mandatory; everything else has defaults chosen so a
//! two-line file already produces a sensible run. Validation is strict in
//! both directions: unknown sections or keys are rejected (a typo must not
//! silently fall back to a default), and every problem in the file is
//! collected with its dotted key path before parsing gives up, so one round
//! trip fixes them all.

use std::path::{Path, PathBuf};

use toml::value::Table;
use toml::Value;

use crate::error::{ConfigIssue, Error, Result};
use crate::grid::QuadratureRule;

/// Which wave function to decompose.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelConfig {
    Gaussian {
        sigma_rel: f64,
        sigma_cm: f64,
    },
    Tabulated {
        rel_path: PathBuf,
        cm_path: PathBuf,
        interpolation_order: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub n: usize,
    pub rho_max: f64,
    pub rule: QuadratureRule,
}

/// Angular sample count: fixed, or derived from m_max at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NPhi {
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncationConfig {
    pub m_max: u32,
    pub s_max: usize,
    pub n_phi: NPhi,
}

impl TruncationConfig {
    /// Concrete angular sample count. Auto keeps a wide margin above the
    /// m_max alias limit and never goes below 256.
    pub fn resolved_n_phi(&self) -> usize {
        match self.n_phi {
            NPhi::Fixed(n) => n,
            NPhi::Auto => 256usize.max(4 * self.m_max as usize + 16),
        }
    }
}

/// Where results go. Everything is optional; an empty section means the
/// caller only wants the in-process report.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputConfig {
    pub report: Option<PathBuf>,
    pub spectrum: Option<PathBuf>,
    pub orbitals_dir: Option<PathBuf>,
    pub kernels_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// |1 - sum lambda| above this is reported as a truncation warning.
    pub norm_deficit: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub model: ModelConfig,
    pub grid: GridConfig,
    pub truncation: TruncationConfig,
    pub output: OutputConfig,
    pub tolerances: Tolerances,
}

impl Config {
    /// An unreadable path is a configuration problem, not a runtime one,
    /// so it maps to the same exit code as a malformed file.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::config("<config>", format!("cannot read {}: {e}", path.display()))
        })?;
        Self::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let value: Value = text
            .parse()
            .map_err(|e: toml::de::Error| Error::config("<toml>", e.message().to_string()))?;
        let table = value.as_table().expect("toml documents parse to a table");
        let mut p = Parser::default();
        let config = p.walk(table);
        if p.issues.is_empty() {
            Ok(config.expect("no issues implies a complete config"))
        } else {
            Err(Error::Config(p.issues))
        }
    }
}

/// Collects every issue found while walking the raw TOML tree. Getter
/// methods return None after recording an issue, so the walk always reaches
/// the end of the file instead of stopping at the first problem.
#[derive(Default)]
struct Parser {
    issues: Vec<ConfigIssue>,
}

impl Parser {
    fn issue(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.issues.push(ConfigIssue {
            path: path.into(),
            message: message.into(),
        });
    }

    fn walk(&mut self, root: &Table) -> Option<Config> {
        for key in root.keys() {
            if !["model", "grid", "truncation", "output", "tolerances"].contains(&key.as_str()) {
                self.issue(key.clone(), "unknown section");
            }
        }

        let model = match root.get("model") {
            Some(v) => self.model(v),
            None => {
                self.issue("model", "section is required");
                None
            }
        };
        let grid = self.grid(root.get("grid"));
        let truncation = self.truncation(root.get("truncation"), grid.as_ref());
        let output = self.output(root.get("output"));
        let tolerances = self.tolerances(root.get("tolerances"));

        Some(Config {
            model: model?,
            grid: grid?,
            truncation: truncation?,
            output: output?,
            tolerances: tolerances?,
        })
    }

    fn model(&mut self, v: &Value) -> Option<ModelConfig> {
        let t = self.table(v, "model")?;
        let kind = self.string(t, "model", "kind")?;
        match kind.as_str() {
            "gaussian" => {
                self.reject_unknown(t, "model", &["kind", "sigma_rel", "sigma_cm"]);
                let sigma_rel = self.positive_f64(t, "model", "sigma_rel", None);
                let sigma_cm = self.positive_f64(t, "model", "sigma_cm", None);
                Some(ModelConfig::Gaussian {
                    sigma_rel: sigma_rel?,
                    sigma_cm: sigma_cm?,
                })
            }
            "tabulated" => {
                self.reject_unknown(
                    t,
                    "model",
                    &["kind", "rel_path", "cm_path", "interpolation_order"],
                );
                let rel = self.string(t, "model", "rel_path");
                let cm = self.string(t, "model", "cm_path");
                let order = self.integer_in(t, "model", "interpolation_order", 1, 5, Some(3));
                Some(ModelConfig::Tabulated {
                    rel_path: PathBuf::from(rel?),
                    cm_path: PathBuf::from(cm?),
                    interpolation_order: order? as usize,
                })
            }
            other => {
                self.issue(
                    "model.kind",
                    format!("expected \"gaussian\" or \"tabulated\", got \"{other}\""),
                );
                None
            }
        }
    }

    fn grid(&mut self, v: Option<&Value>) -> Option<GridConfig> {
        let Some(v) = v else {
            return Some(GridConfig {
                n: 96,
                rho_max: 8.0,
                rule: QuadratureRule::GaussLegendre,
            });
        };
        let t = self.table(v, "grid")?;
        self.reject_unknown(t, "grid", &["n", "rho_max", "rule"]);
        let n = self.integer_in(t, "grid", "n", 8, 1024, Some(96));
        let rho_max = self.positive_f64(t, "grid", "rho_max", Some(8.0));
        let rule = match t.get("rule") {
            None => Some(QuadratureRule::GaussLegendre),
            Some(Value::String(s)) if s == "gauss-legendre" => Some(QuadratureRule::GaussLegendre),
            Some(Value::String(s)) if s == "midpoint" => Some(QuadratureRule::UniformMidpoint),
            Some(Value::String(s)) => {
                self.issue(
                    "grid.rule",
                    format!("expected \"gauss-legendre\" or \"midpoint\", got \"{s}\""),
                );
                None
            }
            Some(other) => {
                self.issue(
                    "grid.rule",
                    format!("expected a string, got {}", other.type_str()),
                );
                None
            }
        };
        Some(GridConfig {
            n: n? as usize,
            rho_max: rho_max?,
            rule: rule?,
        })
    }

    fn truncation(
        &mut self,
        v: Option<&Value>,
        grid: Option<&GridConfig>,
    ) -> Option<TruncationConfig> {
        let parsed = match v {
            None => Some(TruncationConfig {
                m_max: 8,
                s_max: 8,
                n_phi: NPhi::Auto,
            }),
            Some(v) => {
                let t = self.table(v, "truncation")?;
                self.reject_unknown(t, "truncation", &["m_max", "s_max", "n_phi"]);
                let m_max = self.integer_in(t, "truncation", "m_max", 0, 64, Some(8));
                let s_max = self.integer_in(t, "truncation", "s_max", 1, 1024, Some(8));
                let n_phi = match t.get("n_phi") {
                    None => Some(NPhi::Auto),
                    Some(Value::String(s)) if s == "auto" => Some(NPhi::Auto),
                    Some(Value::Integer(n)) if *n > 0 => Some(NPhi::Fixed(*n as usize)),
                    Some(other) => {
                        self.issue(
                            "truncation.n_phi",
                            format!("expected \"auto\" or a positive integer, got {other}"),
                        );
                        None
                    }
                };
                Some(TruncationConfig {
                    m_max: m_max? as u32,
                    s_max: s_max? as usize,
                    n_phi: n_phi?,
                })
            }
        }?;
        // Cross-field checks need the neighboring sections to have parsed.
        if let Some(g) = grid {
            if parsed.s_max > g.n {
                self.issue(
                    "truncation.s_max",
                    format!(
                        "at most grid.n = {} eigenpairs exist per channel, got {}",
                        g.n, parsed.s_max
                    ),
                );
                return None;
            }
        }
        if let NPhi::Fixed(n) = parsed.n_phi {
            let floor = 64.max(4 * parsed.m_max as usize + 16);
            if n % 2 != 0 || n < floor {
                self.issue(
                    "truncation.n_phi",
                    format!(
                        "must be even and at least {floor} for m_max = {}, got {n}",
                        parsed.m_max
                    ),
                );
                return None;
            }
        }
        Some(parsed)
    }

    fn output(&mut self, v: Option<&Value>) -> Option<OutputConfig> {
        let Some(v) = v else {
            return Some(OutputConfig::default());
        };
        let t = self.table(v, "output")?;
        self.reject_unknown(
            t,
            "output",
            &["report", "spectrum", "orbitals_dir", "kernels_dir"],
        );
        let get = |p: &mut Parser, key: &str| -> Option<PathBuf> {
            t.get(key).and_then(|v| match v {
                Value::String(s) => Some(PathBuf::from(s)),
                other => {
                    p.issue(
                        format!("output.{key}"),
                        format!("expected a path string, got {}", other.type_str()),
                    );
                    None
                }
            })
        };
        Some(OutputConfig {
            report: get(self, "report"),
            spectrum: get(self, "spectrum"),
            orbitals_dir: get(self, "orbitals_dir"),
            kernels_dir: get(self, "kernels_dir"),
        })
    }

    fn tolerances(&mut self, v: Option<&Value>) -> Option<Tolerances> {
        let Some(v) = v else {
            return Some(Tolerances { norm_deficit: 1e-4 });
        };
        let t = self.table(v, "tolerances")?;
        self.reject_unknown(t, "tolerances", &["norm_deficit"]);
        let norm_deficit = self.positive_f64(t, "tolerances", "norm_deficit", Some(1e-4))?;
        if norm_deficit >= 1.0 {
            self.issue(
                "tolerances.norm_deficit",
                format!("must be below 1, got {norm_deficit}"),
            );
            return None;
        }
        Some(Tolerances { norm_deficit })
    }

    fn table<'a>(&mut self, v: &'a Value, path: &str) -> Option<&'a Table> {
        match v.as_table() {
            Some(t) => Some(t),
            None => {
                self.issue(path, format!("expected a table, got {}", v.type_str()));
                None
            }
        }
    }

    fn reject_unknown(&mut self, t: &Table, section: &str, allowed: &[&str]) {
        for key in t.keys() {
            if !allowed.contains(&key.as_str()) {
                self.issue(format!("{section}.{key}"), "unknown key");
            }
        }
    }

    fn string(&mut self, t: &Table, section: &str, key: &str) -> Option<String> {
        match t.get(key) {
            Some(Value::String(s)) => Some(s.clone()),
            Some(other) => {
                self.issue(
                    format!("{section}.{key}"),
                    format!("expected a string, got {}", other.type_str()),
                );
                None
            }
            None => {
                self.issue(format!("{section}.{key}"), "key is required");
                None
            }
        }
    }

    fn positive_f64(
        &mut self,
        t: &Table,
        section: &str,
        key: &str,
        default: Option<f64>,
    ) -> Option<f64> {
        let x = match t.get(key) {
            Some(Value::Float(x)) => *x,
            Some(Value::Integer(n)) => *n as f64,
            Some(other) => {
                self.issue(
                    format!("{section}.{key}"),
                    format!("expected a number, got {}", other.type_str()),
                );
                return None;
            }
            None => match default {
                Some(d) => return Some(d),
                None => {
                    self.issue(format!("{section}.{key}"), "key is required");
                    return None;
                }
            },
        };
        if !x.is_finite() || x <= 0.0 {
            self.issue(
                format!("{section}.{key}"),
                format!("must be a positive finite number, got {x}"),
            );
            return None;
        }
        Some(x)
    }

    fn integer_in(
        &mut self,
        t: &Table,
        section: &str,
        key: &str,
        lo: i64,
        hi: i64,
        default: Option<i64>,
    ) -> Option<i64> {
        let n = match t.get(key) {
            Some(Value::Integer(n)) => *n,
            Some(other) => {
                self.issue(
                    format!("{section}.{key}"),
                    format!("expected an integer, got {}", other.type_str()),
                );
                return None;
            }
            None => match default {
                Some(d) => return Some(d),
                None => {
                    self.issue(format!("{section}.{key}"), "key is required");
                    return None;
                }
            },
        };
        if n < lo || n > hi {
            self.issue(
                format!("{section}.{key}"),
                format!("must be in {lo}..={hi}, got {n}"),
            );
            return None;
        }
        Some(n)
    }
}
