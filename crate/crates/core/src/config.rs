//! Run configuration: a flat `key = value` document whose keys match the
//! fields of [`RunConfig`]; later assignments override earlier ones.

use std::fmt;

use serde::Serialize;

use crate::check::Settings;
use crate::error::Error;
use crate::field::{Field, Rat, DEFAULT_PRIME, MERSENNE_61};
use crate::params::{ModelParams, Perturbation};
use crate::phys::Guard;
use crate::sampling::SampleBox;
use crate::spin::antidiagonal;

/// Environment variable naming the default configuration file.
pub const CONFIG_ENV: &str = "IBENCH_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hecke,
    Yangian,
    Reflection,
    Hamiltonian,
    Models,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Hecke, Suite::Yangian, Suite::Reflection, Suite::Hamiltonian, Suite::Models];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Hecke => "hecke",
            Suite::Yangian => "yangian",
            Suite::Reflection => "reflection",
            Suite::Hamiltonian => "hamiltonian",
            Suite::Models => "models",
        }
    }
}

/// `None` selects every suite.
pub fn parse_suite(s: &str) -> Option<Option<Suite>> {
    if s == "all" {
        return Some(None);
    }
    Suite::ALL.into_iter().find(|x| x.name() == s).map(Some)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldMode {
    Rational,
    ModP(u64),
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Rational => write!(f, "rational"),
            FieldMode::ModP(p) => write!(f, "mod-p:{p}"),
        }
    }
}

/// Negative-control perturbations selectable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perturb {
    Dunkl(Perturbation),
    /// `b = -2 tau'' b' + 1`; implies `allow_inconsistent`.
    BInconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub field: String,
    pub reason: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.reason)
    }
}

fn err(field: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError {
        field: field.to_string(),
        reason: reason.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub particles: usize,
    pub lambda: Rat,
    /// Defaults to `tau1 * lambda`.
    pub beta: Option<Rat>,
    /// Defaults to `-2 tau2 b'`.
    pub b: Option<Rat>,
    pub b_prime: Rat,
    pub c: Rat,
    pub gamma: Rat,
    pub tau1: i8,
    pub tau2: i8,
    /// Defaults to the antidiagonal involution.
    pub involution: Option<Vec<Vec<Rat>>>,
    /// Model couplings.
    pub g: Rat,
    pub b1: Rat,
    pub b2: Rat,
    /// `None` runs every suite.
    pub suite: Option<Suite>,
    pub states: usize,
    pub points: usize,
    pub series_order: usize,
    pub charges_kmax: usize,
    pub field: FieldMode,
    pub strict: bool,
    pub guard: usize,
    pub seed: u64,
    pub allow_inconsistent: bool,
    pub allow_large: bool,
    pub perturb: Option<Perturb>,
    pub box_lo: i64,
    pub box_hi: i64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = ModelParams::sample(2, 2);
        RunConfig {
            n: 2,
            particles: 2,
            lambda: p.lambda,
            beta: None,
            b: None,
            b_prime: p.b_prime,
            c: p.c,
            gamma: p.gamma,
            tau1: p.tau1,
            tau2: p.tau2,
            involution: None,
            g: Rat::new(3, 2),
            b1: Rat::new(2, 3),
            b2: Rat::new(-5, 4),
            suite: None,
            states: 5,
            points: 8,
            series_order: 6,
            charges_kmax: 4,
            field: FieldMode::Rational,
            strict: false,
            guard: 1_000_000,
            seed: 0,
            allow_inconsistent: false,
            allow_large: false,
            perturb: None,
            box_lo: SampleBox::default().lo,
            box_hi: SampleBox::default().hi,
        }
    }
}

fn rat(field: &str, v: &str) -> Result<Rat, ConfigError> {
    Rat::parse(v).ok_or_else(|| err(field, format!("'{v}' is not a rational number")))
}

fn int<T: std::str::FromStr>(field: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| err(field, format!("'{v}' is not a valid integer")))
}

fn flag(field: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(err(field, format!("'{v}' is not a boolean"))),
    }
}

fn sign(field: &str, v: &str) -> Result<i8, ConfigError> {
    match v {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(err(field, format!("'{v}' must be +1 or -1"))),
    }
}

/// Rows separated by `;`, entries by whitespace or `,`.
fn matrix(field: &str, v: &str) -> Result<Vec<Vec<Rat>>, ConfigError> {
    v.split(';')
        .map(|row| {
            row.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|x| rat(field, x))
                .collect()
        })
        .collect()
}

pub const KEYS: &[&str] = &[
    "n", "N", "lambda", "beta", "b", "b_prime", "c", "gamma", "tau1", "tau2", "involution", "g", "b1", "b2", "suite",
    "states", "points", "series_order", "charges_kmax", "field", "strict", "guard", "seed", "allow_inconsistent",
    "allow_large", "perturb", "box_lo", "box_hi",
];

impl RunConfig {
    /// Assigns one key. Keys are case-sensitive only for `n` and `N`; `-`
    /// and `_` are interchangeable.
    pub fn set(&mut self, key: &str, v: &str) -> Result<(), ConfigError> {
        let key = if key == "N" || key == "n" { key.to_string() } else { key.replace('-', "_").to_lowercase() };
        let k = key.as_str();
        let v = v.trim();
        match k {
            "n" => self.n = int(k, v)?,
            "N" | "particles" => self.particles = int("N", v)?,
            "lambda" => self.lambda = rat(k, v)?,
            "beta" => self.beta = Some(rat(k, v)?),
            "b" => self.b = Some(rat(k, v)?),
            "b_prime" => self.b_prime = rat(k, v)?,
            "c" => self.c = rat(k, v)?,
            "gamma" => self.gamma = rat(k, v)?,
            "tau1" => self.tau1 = sign(k, v)?,
            "tau2" => self.tau2 = sign(k, v)?,
            "involution" => self.involution = Some(matrix(k, v)?),
            "g" => self.g = rat(k, v)?,
            "b1" => self.b1 = rat(k, v)?,
            "b2" => self.b2 = rat(k, v)?,
            "suite" => self.suite = parse_suite(v).ok_or_else(|| err(k, format!("unknown suite '{v}'")))?,
            "states" => self.states = int(k, v)?,
            "points" => self.points = int(k, v)?,
            "series_order" => self.series_order = int(k, v)?,
            "charges_kmax" => self.charges_kmax = int(k, v)?,
            "field" => {
                self.field = match v {
                    "rational" => FieldMode::Rational,
                    "mod-p" => FieldMode::ModP(DEFAULT_PRIME),
                    _ => match v.strip_prefix("mod-p:").map(|p| p.parse::<u64>()) {
                        Some(Ok(p)) if p == DEFAULT_PRIME || p == MERSENNE_61 => FieldMode::ModP(p),
                        Some(Ok(p)) => {
                            return Err(err(
                                k,
                                format!("prime {p} is not built in; use {DEFAULT_PRIME} or {MERSENNE_61}"),
                            ))
                        }
                        _ => return Err(err(k, format!("'{v}' is not rational, mod-p or mod-p:<prime>"))),
                    },
                }
            }
            "strict" => self.strict = flag(k, v)?,
            "guard" => self.guard = int(k, v)?,
            "seed" => self.seed = int(k, v)?,
            "allow_inconsistent" => self.allow_inconsistent = flag(k, v)?,
            "allow_large" => self.allow_large = flag(k, v)?,
            "perturb" => {
                self.perturb = match v {
                    "none" => None,
                    "b-inconsistent" => Some(Perturb::BInconsistent),
                    _ => Some(Perturb::Dunkl(Perturbation::parse(v).map_err(|_| {
                        err(k, format!("unknown perturbation '{v}' (none, v-numerator+1, g-denominator-flip, b-inconsistent)"))
                    })?)),
                }
            }
            "box_lo" => self.box_lo = int(k, v)?,
            "box_hi" => self.box_hi = int(k, v)?,
            _ => return Err(err(k, "unknown key")),
        }
        Ok(())
    }

    /// Applies a `key = value` document; `#` starts a comment. Every bad line
    /// is reported.
    pub fn apply_document(&mut self, text: &str) -> Result<(), Vec<ConfigError>> {
        let mut errors = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line.split_once('=') {
                Some((k, v)) => {
                    if let Err(e) = self.set(k.trim(), v) {
                        errors.push(ConfigError {
                            field: format!("line {}: {}", i + 1, e.field),
                            reason: e.reason,
                        });
                    }
                }
                None => errors.push(err(&format!("line {}", i + 1), "expected key = value")),
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    pub fn parse(text: &str) -> Result<Self, Vec<ConfigError>> {
        let mut c = RunConfig::default();
        c.apply_document(text)?;
        Ok(c)
    }

    /// Resolves defaults and validates; returns the model parameters of the run.
    pub fn resolve(&self) -> Result<ModelParams, Vec<ConfigError>> {
        let mut errors = Vec::new();
        let mut p = ModelParams::consistent(
            self.n,
            self.particles,
            self.lambda.clone(),
            self.b_prime.clone(),
            self.c.clone(),
            self.gamma.clone(),
            self.tau1,
            self.tau2,
        );
        if let Some(beta) = &self.beta {
            p.beta = beta.clone();
        }
        if let Some(b) = &self.b {
            p.b = b.clone();
        }
        p.involution = match &self.involution {
            Some(m) => m.clone(),
            None => antidiagonal(self.n.max(1)),
        };
        let mut allow = self.allow_inconsistent;
        if self.perturb == Some(Perturb::BInconsistent) {
            p.b = Field::add(&Field::mul(&p.b_prime, &Rat::from(-2 * self.tau2 as i64)), &Rat::from(1));
            allow = true;
        }
        if !self.allow_large {
            if self.particles > 4 {
                errors.push(err("N", "at most 4 particles unless allow_large is set"));
            }
            if self.n > 3 {
                errors.push(err("n", "spin dimension at most 3 unless allow_large is set"));
            }
        }
        if let Err(Error::InvalidParams { field, reason }) = p.validate() {
            errors.push(err(&field, reason));
        }
        if !allow {
            if let Err(Error::InvalidParams { field, reason }) = p.require_constraints(true) {
                errors.push(err(&field, format!("{reason} (set allow_inconsistent to bypass)")));
            }
        }
        if self.states == 0 {
            errors.push(err("states", "must be positive"));
        }
        if self.points == 0 {
            errors.push(err("points", "must be positive"));
        }
        if self.series_order < 3 {
            errors.push(err("series_order", "must be at least 3"));
        }
        if self.guard == 0 {
            errors.push(err("guard", "must be positive"));
        }
        if let Err(Error::InvalidParams { reason, .. }) = self.sample_box().validate() {
            errors.push(err("box_lo", reason));
        }
        if errors.is_empty() {
            Ok(p)
        } else {
            Err(errors)
        }
    }

    pub fn sample_box(&self) -> SampleBox {
        SampleBox {
            lo: self.box_lo,
            hi: self.box_hi,
        }
    }

    pub fn settings(&self) -> Settings {
        Settings {
            states: self.states,
            points: self.points,
            strict: self.strict,
            sample_box: self.sample_box(),
            guard: Guard {
                max_terms: self.guard,
                ..Guard::default()
            },
            parallel: true,
        }
    }

    /// Realization-level perturbation, if any.
    pub fn dunkl_perturbation(&self) -> Perturbation {
        match self.perturb {
            Some(Perturb::Dunkl(p)) => p,
            _ => Perturbation::None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_consistent() {
        let c = RunConfig::default();
        let p = c.resolve().unwrap();
        assert!(p.beta_constraint_holds() && p.b_constraint_holds());
    }

    #[test]
    fn document_overrides_and_errors() {
        let c = RunConfig::parse("n = 3\nN=1 # one particle\nlambda = 5/2\nfield = mod-p\n").unwrap();
        assert_eq!((c.n, c.particles), (3, 1));
        assert_eq!(c.lambda, Rat::new(5, 2));
        assert_eq!(c.field, FieldMode::ModP(DEFAULT_PRIME));
        let e = RunConfig::parse("n = x\nbogus = 1\nnoequals\n").unwrap_err();
        assert_eq!(e.len(), 3);
        assert_eq!(e[0].field, "line 1: n");
        assert_eq!(e[1].field, "line 2: bogus");
    }

    #[test]
    fn inconsistent_b_needs_bypass() {
        let mut c = RunConfig::default();
        c.set("b-prime", "3").unwrap();
        c.set("tau2", "1").unwrap();
        c.set("b", "5").unwrap();
        let e = c.resolve().unwrap_err();
        assert_eq!(e[0].field, "b");
        c.set("allow-inconsistent", "true").unwrap();
        assert!(c.resolve().is_ok());
    }

    #[test]
    fn size_limits() {
        let mut c = RunConfig::default();
        c.set("N", "5").unwrap();
        assert!(c.resolve().is_err());
        c.set("allow_large", "yes").unwrap();
        assert!(c.resolve().is_ok());
    }

    #[test]
    fn b_perturbation_breaks_the_constraint() {
        let mut c = RunConfig::default();
        c.set("perturb", "b-inconsistent").unwrap();
        let p = c.resolve().unwrap();
        assert!(!p.b_constraint_holds());
    }
}
