//! Catalog of physical models, their parameter bindings, and the gauge layer
//! relating the `t` chart to the `z` coordinates of the physical Hamiltonians.
//!
//! With constant `a` the change of variables is `q = A^{-1}(i z)`, so
//! `t = exp(2 i gamma z)`; at `gamma = 1` the trigonometric pole factors read
//!
//! | physical            | chart                        |
//! |---------------------|------------------------------|
//! | `-d^2/dz^2`         | `(2 t d/dt)^2`               |
//! | `1/sin^2(z_i - z_j)`| `-4 t_i t_j / (t_i - t_j)^2` |
//! | `1/sin^2(z_i + z_j)`| `-4 t_i t_j / (t_i t_j - 1)^2`|
//! | `1/sin^2(z)`        | `-4 t / (t - 1)^2`           |
//! | `1/cos^2(z)`        | `4 t / (t + 1)^2`            |
//!
//! The hyperbolic models use `gamma = i`, so `t = exp(-2 z)` is real and the
//! Hamiltonian scales as `H(gamma, lambda, b', c') = gamma^2 H(1, lambda/gamma,
//! b'/gamma, c'/gamma)`: they are `-1` times a rational operator at `gamma = 1`.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::check::{self, CheckReport, Context, Expect, Outcome, Sample, Settings, Status};
use crate::dunkl::Realization;
use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::hamiltonian::{hamiltonian_effective, inv_cosh2, inv_sinh2, inv_sinh2_diff, inv_sinh2_sum};
use crate::params::{Coeffs, ModelParams, Perturbation, Sector};
use crate::phys::{apply, PhysOp};
use crate::ratfunc::RatFunc;
use crate::spin::{antidiagonal, SpaceLayout};
use crate::wave::WaveFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelName {
    BnTrigSutherland,
    BnHypSutherland,
    AnTrigSutherland,
    AnHypSutherland,
    BnNls,
    AnNls,
}

impl ModelName {
    pub const ALL: [ModelName; 6] = [
        ModelName::BnTrigSutherland,
        ModelName::BnHypSutherland,
        ModelName::AnTrigSutherland,
        ModelName::AnHypSutherland,
        ModelName::BnNls,
        ModelName::AnNls,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ModelName::BnTrigSutherland => "bn-trig-sutherland",
            ModelName::BnHypSutherland => "bn-hyp-sutherland",
            ModelName::AnTrigSutherland => "an-trig-sutherland",
            ModelName::AnHypSutherland => "an-hyp-sutherland",
            ModelName::BnNls => "bn-nls",
            ModelName::AnNls => "an-nls",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "model",
                name: s.to_string(),
            })
    }

    pub fn sector(&self) -> Sector {
        match self {
            ModelName::BnTrigSutherland | ModelName::BnHypSutherland | ModelName::BnNls => Sector::Reflection,
            _ => Sector::Yangian,
        }
    }

    fn hyperbolic(&self) -> bool {
        matches!(self, ModelName::BnHypSutherland | ModelName::AnHypSutherland)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verification {
    Verifiable,
    MetadataOnly,
}

/// Physical couplings: pair coupling `g`, impurity couplings `b_1`, `b_2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub g: Rat,
    pub b1: Rat,
    pub b2: Rat,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        PhysicalParams {
            g: Rat::new(3, 2),
            b1: Rat::new(2, 3),
            b2: Rat::new(-5, 4),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    pub name: ModelName,
    pub sector: Sector,
    pub status: Verification,
    pub physical: PhysicalParams,
    /// Substitutions into the general Hamiltonian, as written.
    pub bindings: Vec<String>,
    /// How the real form relates to the rational operator.
    pub chart: Vec<String>,
    /// The physical Hamiltonian in `z` coordinates.
    pub formula: String,
    /// Physical operator = `scale` times the effective Hamiltonian at `params`.
    pub scale: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<ModelParams>,
}

/// Binds a catalog model to general parameters. `tau1`, `tau2` select the
/// symmetry class; the reflection-sector `b` and `c` follow from `b'`, `c'`.
pub fn model(name: ModelName, phys: &PhysicalParams, n: usize, particles: usize, tau1: i8, tau2: i8) -> Result<ModelDescriptor> {
    let two = Rat::from(2);
    let lambda = two.mul(&phys.g);
    let build = |b_prime: Rat, c_prime: Rat| -> Result<ModelParams> {
        // c' = c tau''/2
        let c = c_prime.mul(&Rat::from(2 * tau2 as i64));
        let mut p = ModelParams::consistent(n, particles, lambda.clone(), b_prime, c, Rat::one(), tau1, tau2);
        p.involution = antidiagonal(n);
        p.validate()?;
        Ok(p)
    };
    let d = |status, bindings: &[&str], chart: &[&str], formula: &str, scale, params| ModelDescriptor {
        name,
        sector: name.sector(),
        status,
        physical: phys.clone(),
        bindings: bindings.iter().map(|s| s.to_string()).collect(),
        chart: chart.iter().map(|s| s.to_string()).collect(),
        formula: formula.to_string(),
        scale,
        params,
    };
    Ok(match name {
        ModelName::BnTrigSutherland => {
            // b' + c' = -2 b1, b' - c' = -2 b2
            let bp = phys.b1.add(&phys.b2).neg();
            let cp = phys.b2.sub(&phys.b1);
            d(
                Verification::Verifiable,
                &["gamma = 1", "lambda = 2g", "b' + c' = -2 b1", "b' - c' = -2 b2", "a constant (U = 0)"],
                &["t = exp(2 i z)"],
                "H = -sum_i d^2/dz_i^2 - 2g sum_{i<j} [(P_ij - g)/sin^2(z_i - z_j) + (Pbar_ij - g)/sin^2(z_i + z_j)] \
                 - sum_i [b1 (Q_i - b1)/sin^2(z_i) + b2 (Q_i - b2)/cos^2(z_i)]",
                1,
                Some(build(bp, cp)?),
            )
        }
        ModelName::BnHypSutherland => {
            // gamma = i, lambda = 2ig, b' + c' = -2i b1, b' - c' = 2i b2, divided by gamma
            let bp = phys.b2.sub(&phys.b1);
            let cp = phys.b1.add(&phys.b2).neg();
            d(
                Verification::Verifiable,
                &["gamma = i", "lambda = 2ig", "b' + c' = -2i b1", "b' - c' = 2i b2", "a constant (U = 0)"],
                &[
                    "t = exp(-2 z)",
                    "rational operator at gamma = 1, lambda = 2g, b' + c' = -2 b1, b' - c' = 2 b2, times gamma^2 = -1",
                    "the binding gives the cosh impurity term -b2 (Q_i + b2)/cosh^2(z_i)",
                ],
                "H = -sum_i d^2/dz_i^2 - 2g sum_{i<j} [(P_ij - g)/sinh^2(z_i - z_j) + (Pbar_ij - g)/sinh^2(z_i + z_j)] \
                 - sum_i [b1 (Q_i - b1)/sinh^2(z_i) + b2 (Q_i + b2)/cosh^2(z_i)]",
                -1,
                Some(build(bp, cp)?),
            )
        }
        ModelName::AnTrigSutherland => d(
            Verification::Verifiable,
            &["gamma = 1", "lambda = 2g", "a constant (U = 0)"],
            &["t = exp(2 i z)"],
            "H = -sum_i d^2/dz_i^2 - 2g sum_{i<j} (P_ij - g)/sin^2(z_i - z_j)",
            1,
            Some(build(Rat::zero(), Rat::zero())?),
        ),
        ModelName::AnHypSutherland => d(
            Verification::Verifiable,
            &["gamma = i", "lambda = 2ig", "a constant (U = 0)"],
            &["t = exp(-2 z)", "rational operator at gamma = 1, lambda = 2g, times gamma^2 = -1"],
            "H = -sum_i d^2/dz_i^2 - 2g sum_{i<j} (P_ij - g)/sinh^2(z_i - z_j)",
            -1,
            Some(build(Rat::zero(), Rat::zero())?),
        ),
        ModelName::BnNls => d(
            Verification::MetadataOnly,
            &["gamma = i gamma'", "lambda = i g", "b' = -i b1", "gamma' -> +infinity"],
            &["delta potentials lie outside the rational function field"],
            "H = -sum_k d^2/dz_k^2 + 2g sum_{k<l} [delta(z_k - z_l) P_kl + delta(z_k + z_l) Pbar_kl] + 2 b1 sum_k delta(z_k) Q_k",
            1,
            None,
        ),
        ModelName::AnNls => d(
            Verification::MetadataOnly,
            &["gamma = i gamma'", "lambda = i g", "gamma' -> +infinity"],
            &["delta potentials lie outside the rational function field"],
            "H = -sum_k d^2/dz_k^2 + 2g tau' sum_{k<l} delta(z_k - z_l)",
            1,
            None,
        ),
    })
}

impl ModelDescriptor {
    pub fn realization<F: Field>(&self) -> Result<Option<Realization<F>>> {
        self.params
            .as_ref()
            .map(|p| Ok(Realization::new(Coeffs::new(p)?, self.sector, Perturbation::None)))
            .transpose()
    }

    /// The effective Hamiltonian of the bound parameters, times `scale`.
    pub fn operator<F: Field>(&self) -> Result<Option<PhysOp<F>>> {
        Ok(self
            .realization::<F>()?
            .map(|r| hamiltonian_effective(&r).scaled(F::from_i64(self.scale))))
    }
}

fn shifted<F: Field>(f: RatFunc<F>, c: F, x: PhysOp<F>, s: F) -> PhysOp<F> {
    PhysOp::compose(vec![
        PhysOp::Mul(f.scale(&c)),
        PhysOp::sum(vec![x, PhysOp::Scalar(s.neg())]),
    ])
}

/// The physical Hamiltonian of a verifiable model transcribed into the `t`
/// chart directly from its couplings `g`, `b1`, `b2`.
pub fn physical_form<F: Field>(d: &ModelDescriptor, r: &Realization<F>) -> Result<PhysOp<F>> {
    if d.status == Verification::MetadataOnly {
        return Err(Error::InvalidParams {
            field: "model".into(),
            reason: format!("{} is metadata-only", d.name.name()),
        });
    }
    let img = |q: &Rat| {
        F::from_rational(&q.to_big()).ok_or_else(|| Error::InvalidParams {
            field: "model".into(),
            reason: format!("{q} has no image in the {} field", F::NAME),
        })
    };
    let (g, b1, b2) = (img(&d.physical.g)?, img(&d.physical.b1)?, img(&d.physical.b2)?);
    let nv = r.particles();
    let hyp = d.name.hyperbolic();
    // sin^2 poles carry a sign relative to the sinh^2 chart factors
    let pole_sign = if hyp { F::one() } else { F::one().neg() };
    let kin_sign = if hyp { F::one().neg() } else { F::one() };
    let mut terms = Vec::new();
    for i in 0..nv {
        let e = PhysOp::Euler { var: i, scale: F::from_i64(2) };
        terms.push(PhysOp::compose(vec![e.clone(), e]).scaled(kin_sign.clone()));
    }
    let m2g = g.mul(&F::from_i64(-2)).mul(&pole_sign);
    for i in 0..nv {
        for j in i + 1..nv {
            terms.push(shifted(inv_sinh2_diff(nv, i, j), m2g.clone(), r.p_spin(i, j), g.clone()));
            if d.sector == Sector::Reflection {
                terms.push(shifted(inv_sinh2_sum(nv, i, j), m2g.clone(), r.pbar_spin(i, j), g.clone()));
            }
        }
    }
    if d.sector == Sector::Reflection {
        // -b1 (Q - b1)/sin^2 and -b2 (Q -+ b2)/cos^2 (the hyperbolic binding gives +b2)
        let b2_shift = if hyp { b2.neg() } else { b2.clone() };
        for i in 0..nv {
            terms.push(shifted(inv_sinh2(nv, i), b1.neg().mul(&pole_sign), r.q_spin(i), b1.clone()));
            terms.push(shifted(inv_cosh2(nv, i), b2.neg(), r.q_spin(i), b2_shift.clone()));
        }
    }
    Ok(PhysOp::sum(terms))
}

/// The bound effective Hamiltonian equals the physical form on random states.
pub fn check_model<F: Field>(d: &ModelDescriptor, ctx: &Context, settings: &Settings, rng: &mut ChaCha8Rng) -> CheckReport {
    let id = format!("model-{}", d.name.name());
    let reference = "catalog model: parameter binding reproduces the physical Hamiltonian";
    let started = Instant::now();
    if d.status == Verification::MetadataOnly {
        return check::skipped(&id, reference, ctx, "metadata-only model");
    }
    let out = (|| {
        let r = d.realization::<F>()?.expect("verifiable model has parameters");
        let op = d.operator::<F>()?.expect("verifiable model has an operator");
        let phys = physical_form(d, &r)?;
        let g = settings.guard;
        check::run_states(rng, settings, |_, rr| {
            let (label, psi) = check::random_state::<F, _>(rr, r.n(), r.particles());
            Ok(vec![Sample::new(label, apply(&op, &psi, &g)?, apply(&phys, &psi, &g)?)])
        })
    })();
    check::report(&id, reference, ctx, Expect::Zero, started, out)
}

/// `an-trig-sutherland` at `g = 0` is the free Hamiltonian `sum (2 t d/dt)^2`.
pub fn check_free_model<F: Field>(ctx: &Context, settings: &Settings, rng: &mut ChaCha8Rng) -> CheckReport {
    let started = Instant::now();
    let phys = PhysicalParams { g: Rat::zero(), b1: Rat::zero(), b2: Rat::zero() };
    let out = (|| {
        let d = model(ModelName::AnTrigSutherland, &phys, ctx.n, ctx.particles, 1, 1)?;
        let op = d.operator::<F>()?.expect("verifiable");
        let g = settings.guard;
        check::run_states(rng, settings, |_, rr| {
            let (label, psi) = check::random_state::<F, _>(rr, ctx.n, ctx.particles);
            let exps: Vec<i32> = psi
                .components()
                .values()
                .next()
                .map(|f| f.numerator().terms()[0].0.exps(ctx.particles))
                .unwrap_or_default();
            let eig: i64 = exps.iter().map(|&m| 4 * (m as i64) * (m as i64)).sum();
            Ok(vec![Sample::new(label, apply(&op, &psi, &g)?, psi.scale(&F::from_i64(eig)))])
        })
    })();
    check::report(
        "model-free-limit",
        "A_N trigonometric model at zero coupling is the free Hamiltonian",
        ctx,
        Expect::Zero,
        started,
        out,
    )
}

/// Change-of-variables charts for the gauge layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chart {
    /// `a(q) = 1`, `A(q) = q`.
    ConstantA,
    /// `a(q) = q`, `A(q) = ln q`.
    LinearA,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartCatalogEntry {
    pub chart: Chart,
    pub name: &'static str,
    pub a: &'static str,
    pub u: &'static str,
    pub u_value: Rat,
}

impl Chart {
    pub const ALL: [Chart; 2] = [Chart::ConstantA, Chart::LinearA];

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "constant-a" => Ok(Chart::ConstantA),
            "linear-a" => Ok(Chart::LinearA),
            _ => Err(Error::Unknown {
                kind: "chart",
                name: s.to_string(),
            }),
        }
    }

    pub fn entry(&self) -> ChartCatalogEntry {
        match self {
            Chart::ConstantA => ChartCatalogEntry {
                chart: *self,
                name: "constant-a",
                a: "a(q) = 1",
                u: "U(x) = 0",
                u_value: Rat::zero(),
            },
            Chart::LinearA => ChartCatalogEntry {
                chart: *self,
                name: "linear-a",
                a: "a(q) = q",
                u: "U(x) = 1/4",
                u_value: Rat::new(1, 4),
            },
        }
    }

    fn a(&self, q: Complex64) -> Complex64 {
        match self {
            Chart::ConstantA => Complex64::new(1.0, 0.0),
            Chart::LinearA => q,
        }
    }

    fn a_inverse(&self, w: Complex64) -> Complex64 {
        match self {
            Chart::ConstantA => w,
            Chart::LinearA => w.exp(),
        }
    }
}

/// `U(x) = a'(q)^2/4 - a(q) a''(q)/2` at `q = A^{-1}(i x)`, with the
/// derivatives of `a` taken by central differences.
pub fn gauge_potential(chart: Chart, x: f64) -> Complex64 {
    let q = chart.a_inverse(Complex64::new(0.0, x));
    let h = 1e-4;
    let a = |z| chart.a(z);
    let d1 = (a(q + h) - a(q - h)) / (2.0 * h);
    let d2 = (a(q + h) - 2.0 * a(q) + a(q - h)) / (h * h);
    d1 * d1 / 4.0 - a(q) * d2 / 2.0
}

/// The gauge potential of each catalog chart against its closed form.
pub fn check_gauge(ctx: &Context, rng: &mut ChaCha8Rng, samples: usize) -> CheckReport {
    let started = Instant::now();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let x: f64 = rng.gen_range(-1.5..1.5);
        for chart in Chart::ALL {
            let want = chart.entry().u_value.to_f64();
            worst = worst.max((gauge_potential(chart, x) - want).norm());
        }
    }
    let mut rep = check::report(
        "gauge-potential",
        "external potential of the gauge transformation for each chart",
        ctx,
        Expect::Zero,
        started,
        Ok(Outcome { samples, witness: None }),
    );
    rep.note = Some(format!("max deviation {worst:.2e} (tolerance 1e-6)"));
    if !(worst < 1e-6) {
        rep.status = Status::Fail;
    }
    rep
}

fn eval_complex(f: &RatFunc<Rat>, t: &[Complex64]) -> Complex64 {
    let nv = f.nvars();
    let poly = |p: &crate::poly::LaurentPoly<Rat>| -> Complex64 {
        p.terms()
            .iter()
            .map(|(m, c)| {
                m.exps(nv)
                    .iter()
                    .zip(t)
                    .fold(Complex64::new(c.to_f64(), 0.0), |acc, (&e, &ti)| acc * ti.powi(e))
            })
            .sum()
    };
    let den: Complex64 = f
        .denominator_factors()
        .iter()
        .map(|(p, k)| poly(p).powi(*k as i32))
        .product();
    poly(f.numerator()) / den
}

/// The potential `V_spin(z) + sum_k U(z_k)` written with `sin` and `cos` in
/// `z`, applied to the spin basis vector `digits`.
pub fn vspin_z(p: &ModelParams, sector: Sector, z: &[f64], digits: &[usize]) -> BTreeMap<Vec<usize>, Complex64> {
    let gamma = p.gamma.to_f64();
    let lambda = p.lambda.to_f64();
    let bp = p.b_prime.to_f64();
    let cp = p.c_prime().to_f64();
    let q: Vec<Vec<f64>> = p.involution.iter().map(|r| r.iter().map(Rat::to_f64).collect()).collect();
    let mut out: BTreeMap<Vec<usize>, Complex64> = BTreeMap::new();
    let mut add = |v: Vec<usize>, c: f64| *out.entry(v).or_insert(Complex64::new(0.0, 0.0)) += c;
    // Q_i on a basis vector
    let reflect = |v: &[usize], i: usize| -> Vec<(Vec<usize>, f64)> {
        (0..q.len())
            .filter(|&a| q[a][v[i]] != 0.0)
            .map(|a| {
                let mut w = v.to_vec();
                w[i] = a;
                (w, q[a][v[i]])
            })
            .collect()
    };
    let s2 = |x: f64| x.sin().powi(2);
    let c2 = |x: f64| x.cos().powi(2);
    let nv = z.len();
    for i in 0..nv {
        for j in i + 1..nv {
            let mut swapped = digits.to_vec();
            swapped.swap(i, j);
            let f = -gamma * lambda / s2(gamma * (z[i] - z[j]));
            add(swapped.clone(), f);
            add(digits.to_vec(), -f * lambda / (2.0 * gamma));
            if sector == Sector::Reflection {
                let f = -gamma * lambda / s2(gamma * (z[i] + z[j]));
                for (w1, x1) in reflect(&swapped, j) {
                    for (w2, x2) in reflect(&w1, i) {
                        add(w2, f * x1 * x2);
                    }
                }
                add(digits.to_vec(), -f * lambda / (2.0 * gamma));
            }
        }
    }
    if sector == Sector::Reflection {
        for i in 0..nv {
            for (s, den) in [(bp + cp, s2(gamma * z[i])), (bp - cp, c2(gamma * z[i]))] {
                let f = gamma * s / (2.0 * den);
                for (w, x) in reflect(digits, i) {
                    add(w, f * x);
                }
                add(digits.to_vec(), f * s / (2.0 * gamma));
            }
        }
    }
    let u: f64 = z.iter().map(|&x| gauge_potential(Chart::ConstantA, x).re).sum();
    add(digits.to_vec(), u);
    out
}

/// With constant `a`, the potential of the effective Hamiltonian at
/// `t = exp(2 i gamma z)` equals `V_spin(z) + sum U(z_k)` (complex floating
/// point, relative tolerance `1e-9`).
pub fn check_vspin(p: &ModelParams, sector: Sector, ctx: &Context, rng: &mut ChaCha8Rng, samples: usize) -> CheckReport {
    let started = Instant::now();
    let id = match sector {
        Sector::Reflection => "vspin-reflection",
        Sector::Yangian => "vspin-yangian",
    };
    let out = (|| -> Result<f64> {
        let r = Realization::<Rat>::new(Coeffs::new(p)?, sector, Perturbation::None);
        let h = hamiltonian_effective(&r);
        let nv = r.particles();
        let layout = SpaceLayout::particles(r.n(), &[], nv);
        let gamma = p.gamma.to_f64();
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let digits: Vec<usize> = (0..nv).map(|_| rng.gen_range(0..r.n())).collect();
            let z: Vec<f64> = (0..nv).map(|_| rng.gen_range(0.1..1.4)).collect();
            let t: Vec<Complex64> = z.iter().map(|&x| Complex64::from_polar(1.0, 2.0 * gamma * x)).collect();
            let psi = WaveFunction::basis(layout.clone(), nv, &digits, RatFunc::one(nv));
            let v = apply(&h, &psi, &Default::default())?;
            let want = vspin_z(p, sector, &z, &digits);
            let scale = want.values().map(|c| c.norm()).fold(1.0, f64::max);
            let mut keys: Vec<Vec<usize>> = want.keys().cloned().collect();
            keys.extend(v.components().keys().map(|&k| layout.digits(k)));
            for k in keys {
                let got = v
                    .component(layout.index(&k))
                    .map(|f| eval_complex(f, &t))
                    .unwrap_or_default();
                let w = want.get(&k).copied().unwrap_or_default();
                worst = worst.max((got - w).norm() / scale);
            }
        }
        Ok(worst)
    })();
    let reference = "potential splits into the spin potential and the external potential";
    match out {
        Err(e) => check::report(id, reference, ctx, Expect::Zero, started, Err(e)),
        Ok(worst) => {
            let mut rep = check::report(
                id,
                reference,
                ctx,
                Expect::Zero,
                started,
                Ok(Outcome { samples, witness: None }),
            );
            rep.note = Some(format!("max relative deviation {worst:.2e} (tolerance 1e-9)"));
            if !(worst < 1e-9) {
                rep.status = Status::Fail;
            }
            rep
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for m in ModelName::ALL {
            assert_eq!(ModelName::parse(m.name()).unwrap(), m);
        }
        assert!(ModelName::parse("xyz").is_err());
    }

    #[test]
    fn bn_trig_bindings() {
        let phys = PhysicalParams { g: Rat::from(1), b1: Rat::from(2), b2: Rat::from(3) };
        let d = model(ModelName::BnTrigSutherland, &phys, 2, 2, 1, 1).unwrap();
        let p = d.params.unwrap();
        assert_eq!(p.lambda, Rat::from(2));
        assert_eq!(p.gamma, Rat::from(1));
        assert_eq!(p.b_prime.add(&p.c_prime()), Rat::from(-4));
        assert_eq!(p.b_prime.sub(&p.c_prime()), Rat::from(-6));
        assert!(p.beta_constraint_holds() && p.b_constraint_holds());
    }

    #[test]
    fn nls_is_metadata_only() {
        let d = model(ModelName::BnNls, &PhysicalParams::default(), 2, 2, 1, 1).unwrap();
        assert_eq!(d.status, Verification::MetadataOnly);
        assert!(d.params.is_none());
        assert!(d.formula.contains("delta(z_k)"));
    }

    #[test]
    fn gauge_closed_forms() {
        assert!(gauge_potential(Chart::ConstantA, 0.3).norm() < 1e-12);
        assert!((gauge_potential(Chart::LinearA, 0.7) - 0.25).norm() < 1e-6);
    }
}
