//! Residual testing: both sides of an identity are applied to test states and
//! their difference is evaluated exactly at random coordinate points.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::phys::Guard;
use crate::sampling::{self, SampleBox};
use crate::spin::SpaceLayout;
use crate::wave::WaveFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// The first nonzero residual found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Test state (before any projection).
    pub state: String,
    /// Sampled spectral parameters, if any.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub spectral: Vec<String>,
    /// Coordinate point `t_1..t_N`.
    pub point: Vec<i64>,
    /// Spin basis vector of the offending component.
    pub component: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub reference: String,
    pub status: Status,
    pub n: usize,
    #[serde(rename = "N")]
    pub particles: usize,
    pub seed: u64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// The record without timing, for reproducibility comparisons.
    pub fn untimed(&self) -> CheckReport {
        CheckReport { ms: 0, ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub states: usize,
    pub points: usize,
    /// Also require the symbolic difference to vanish.
    pub strict: bool,
    pub sample_box: SampleBox,
    pub guard: Guard,
    pub parallel: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            states: 5,
            points: 8,
            strict: false,
            sample_box: SampleBox::default(),
            guard: Guard::default(),
            parallel: true,
        }
    }
}

/// One instance of an identity: both sides applied to a test state.
pub struct Sample<F: Field> {
    pub state: String,
    pub spectral: Vec<(String, F)>,
    pub lhs: WaveFunction<F>,
    pub rhs: WaveFunction<F>,
}

impl<F: Field> Sample<F> {
    pub fn new(state: impl Into<String>, lhs: WaveFunction<F>, rhs: WaveFunction<F>) -> Self {
        Sample {
            state: state.into(),
            spectral: Vec::new(),
            lhs,
            rhs,
        }
    }

    pub fn with_spectral(mut self, name: &str, v: F) -> Self {
        self.spectral.push((name.to_string(), v));
        self
    }
}

/// What a check expects of its residuals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    /// Every residual vanishes.
    Zero,
    /// Some residual is nonzero (negative controls).
    Witness,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub samples: usize,
    pub witness: Option<Witness>,
}

/// Evaluates `lhs - rhs` at `points` random admissible points; returns the
/// first nonzero residual. In strict mode a symbolic nonzero difference is
/// reported even if every sampled value vanished.
pub fn residual<F: Field, R: Rng>(
    s: &Sample<F>,
    rng: &mut R,
    settings: &Settings,
) -> Result<(usize, Option<Witness>)> {
    let diff = s.lhs.sub(&s.rhs)?;
    let layout = diff.layout().clone();
    let nv = diff.nvars();
    let spectral: Vec<String> = s.spectral.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut used = 0;
    for _ in 0..settings.points {
        let (point, values) = sampling::eval_with_resampling(rng, nv, settings.sample_box, |p| {
            diff.eval(&sampling::to_field::<F>(p))
        })?;
        used += 1;
        if let Some((idx, v)) = values.into_iter().next() {
            return Ok((
                used,
                Some(Witness {
                    state: s.state.clone(),
                    spectral,
                    point,
                    component: layout.basis_name(idx),
                    residual: v.to_string(),
                }),
            ));
        }
    }
    if settings.strict {
        if let Some((idx, f)) = diff.components().iter().find(|(_, f)| !f.canonical().is_zero()) {
            let names: Vec<String> = (1..=nv).map(|i| format!("t{i}")).collect();
            return Ok((
                used,
                Some(Witness {
                    state: s.state.clone(),
                    spectral,
                    point: Vec::new(),
                    component: layout.basis_name(*idx),
                    residual: f.display_with(&names),
                }),
            ));
        }
    }
    Ok((used, None))
}

/// Runs `make` for `settings.states` independent state seeds (in parallel
/// when enabled) and tests every produced sample. Results do not depend on
/// scheduling: each state draws from its own generator.
pub fn run_states<F, M>(rng: &mut ChaCha8Rng, settings: &Settings, make: M) -> Result<Outcome>
where
    F: Field,
    M: Fn(usize, &mut ChaCha8Rng) -> Result<Vec<Sample<F>>> + Sync,
{
    let seeds: Vec<u64> = (0..settings.states).map(|_| rng.gen()).collect();
    let one = |(i, seed): (usize, u64)| -> Result<(usize, Option<Witness>)> {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let samples = make(i, &mut r)?;
        let mut used = 0;
        for s in &samples {
            let (k, w) = residual(s, &mut r, settings)?;
            used += k;
            if w.is_some() {
                return Ok((used, w));
            }
        }
        Ok((used, None))
    };
    let results: Vec<Result<(usize, Option<Witness>)>> = if settings.parallel {
        seeds.into_par_iter().enumerate().map(one).collect()
    } else {
        seeds.into_iter().enumerate().map(one).collect()
    };
    let mut out = Outcome {
        samples: 0,
        witness: None,
    };
    for r in results {
        let (k, w) = r?;
        out.samples += k;
        if out.witness.is_none() {
            out.witness = w;
        }
    }
    Ok(out)
}

/// A random test state `t^mu ⊗ e_s` on the quantum spaces.
pub fn random_state<F: Field, R: Rng>(rng: &mut R, n: usize, particles: usize) -> (String, WaveFunction<F>) {
    let layout = SpaceLayout::particles(n, &[], particles);
    let mu = sampling::exponents(rng, particles);
    let digits: Vec<usize> = (0..particles).map(|_| rng.gen_range(0..n)).collect();
    let label = format!(
        "t^{:?} {}",
        mu,
        layout.basis_name(layout.index(&digits))
    );
    (label, WaveFunction::monomial(layout, &mu, &digits))
}

/// Metadata shared by the reports of one run.
#[derive(Clone, Debug)]
pub struct Context {
    pub n: usize,
    pub particles: usize,
    pub seed: u64,
}

/// Turns an outcome into a report.
pub fn report(
    id: &str,
    reference: &str,
    ctx: &Context,
    expect: Expect,
    started: Instant,
    outcome: Result<Outcome>,
) -> CheckReport {
    let ms = started.elapsed().as_millis() as u64;
    let base = CheckReport {
        id: id.to_string(),
        reference: reference.to_string(),
        status: Status::Pass,
        n: ctx.n,
        particles: ctx.particles,
        seed: ctx.seed,
        samples: 0,
        witness: None,
        note: None,
        ms,
    };
    match outcome {
        Err(e) => CheckReport {
            status: Status::Fail,
            note: Some(format!("error: {e}")),
            ..base
        },
        Ok(o) => {
            let found = o.witness.is_some();
            let status = match (expect, found) {
                (Expect::Zero, false) | (Expect::Witness, true) => Status::Pass,
                _ => Status::Fail,
            };
            let note = match (expect, found) {
                (Expect::Witness, true) => Some("negative control: nonzero residual found as required".into()),
                (Expect::Witness, false) => Some("negative control: no nonzero residual found".into()),
                _ => None,
            };
            CheckReport {
                status,
                samples: o.samples,
                witness: o.witness,
                note,
                ..base
            }
        }
    }
}

/// A skipped check with a reason.
pub fn skipped(id: &str, reference: &str, ctx: &Context, reason: &str) -> CheckReport {
    CheckReport {
        id: id.to_string(),
        reference: reference.to_string(),
        status: Status::Skipped,
        n: ctx.n,
        particles: ctx.particles,
        seed: ctx.seed,
        samples: 0,
        witness: None,
        note: Some(reason.to_string()),
        ms: 0,
    }
}

/// Maps a constraint error to the configuration-error path.
pub fn is_config_error(e: &Error) -> bool {
    matches!(e, Error::InvalidParams { .. } | Error::Unknown { .. })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::sampling::rng_for;

    #[test]
    fn identical_sides_pass() {
        let mut rng = rng_for(1, "x");
        let out = run_states::<Rat, _>(&mut rng, &Settings::default(), |_, r| {
            let (s, psi) = random_state(r, 2, 2);
            Ok(vec![Sample::new(s, psi.clone(), psi)])
        })
        .unwrap();
        assert!(out.witness.is_none());
        assert_eq!(out.samples, 40);
    }

    #[test]
    fn different_sides_give_witness() {
        let mut rng = rng_for(1, "y");
        let out = run_states::<Rat, _>(&mut rng, &Settings::default(), |_, r| {
            let (s, psi) = random_state(r, 2, 2);
            Ok(vec![Sample::new(s, psi.scale(&Rat::from(2)), psi)])
        })
        .unwrap();
        assert!(out.witness.is_some());
    }

    #[test]
    fn parallel_and_serial_agree() {
        let go = |parallel| {
            let mut rng = rng_for(7, "z");
            let settings = Settings {
                parallel,
                ..Settings::default()
            };
            run_states::<Rat, _>(&mut rng, &settings, |i, r| {
                let (s, psi) = random_state(r, 2, 2);
                let k = if i == 3 { 2 } else { 1 };
                Ok(vec![Sample::new(s, psi.scale(&Rat::from(k)), psi)])
            })
            .unwrap()
            .witness
        };
        assert_eq!(go(true), go(false));
    }

    #[test]
    fn report_json_keys() {
        let ctx = Context { n: 2, particles: 2, seed: 3 };
        let r = skipped("a", "b", &ctx, "why");
        let j = serde_json::to_string(&r).unwrap();
        assert!(j.starts_with(r#"{"id":"a","reference":"b","status":"skipped","n":2,"N":2,"seed":3"#));
    }
}
