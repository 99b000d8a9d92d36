//! The check catalog and the runner behind `verify`.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::check::{CheckReport, Context, Settings};
use crate::config::{ConfigError, FieldMode, RunConfig, Suite};
use crate::dunkl::Realization;
use crate::field::{Field, Fp61, Fp62, Rat, DEFAULT_PRIME, MERSENNE_61};
use crate::hecke::Relation;
use crate::models::{ModelName, PhysicalParams};
use crate::params::{Coeffs, ModelParams, Perturbation, Sector};
use crate::sampling::rng_for;
use crate::{hamiltonian, hecke, models, reflection, yangian};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckInfo {
    pub id: String,
    pub suite: Suite,
    pub reference: String,
}

fn info(suite: Suite, id: &str, reference: &str) -> CheckInfo {
    CheckInfo {
        id: id.to_string(),
        suite,
        reference: reference.to_string(),
    }
}

/// Every check, in execution order.
pub fn catalog() -> Vec<CheckInfo> {
    use Suite::*;
    let mut out: Vec<CheckInfo> = Relation::ALL.iter().map(|r| info(Hecke, r.id(), r.reference())).collect();
    out.extend([
        info(Hecke, "dunkl-linearity", "Dunkl operators act linearly on wave functions"),
        info(Hecke, "dunkl-spin-free", "Dunkl operators commute with spin operators"),
        info(
            Hecke,
            "chart-substitution",
            "coordinate chart reproduces the exponential closed forms of v, vbar, g and the pair potentials",
        ),
        info(Hecke, "negative-v-perturbed", "negative control: v -> v + 1 breaks the Hecke relations"),
        info(
            Hecke,
            "negative-g-perturbed",
            "negative control: flipping the denominator of g breaks the reflection exchange",
        ),
        info(Yangian, "rtt", "RTT relation for the Dunkl monodromy"),
        info(
            Yangian,
            "rtt-projected",
            "projected RTT relation for T Lambda1 (Yangian realization on symmetrized states)",
        ),
        info(Yangian, "rtt-projected-beta-control", "projected RTT requires beta = tau' lambda"),
        info(Yangian, "com-at-m2", "antisymmetrizer intertwines ordered monodromy products"),
        info(Yangian, "qdet-closed-form", "quantum determinant of the Dunkl monodromy in closed product form"),
        info(Yangian, "qdet-central", "quantum determinant commutes with every monodromy entry"),
        info(Yangian, "qdet-projected", "quantum determinant of the projected monodromy"),
        info(Reflection, "reflection", "reflection equation for the boundary monodromy"),
        info(Reflection, "reflection-projected", "projected reflection equation for S Lambda"),
        info(
            Reflection,
            "negative-b-inconsistent",
            "projected reflection equation requires b = -2 tau'' b'",
        ),
        info(Reflection, "boundary-reflection", "boundary matrix 1 + b'Q/u solves the reflection equation"),
        info(
            Reflection,
            "projector-lemma",
            "projector eigen-relations (1 - tau' P P) Lambda1 = 0, (1 - tau'' Q Q) Lambda2 = 0, idempotence",
        ),
        info(
            Reflection,
            "nu-central",
            "normalization of the boundary monodromy commutes with swaps and reflections",
        ),
        info(Reflection, "sdet-closed-form", "Sklyanin determinant in closed product form"),
        info(Reflection, "sdet-center-identity", "Sklyanin determinant in terms of the quantum determinant"),
        info(Reflection, "sdet-projected", "Sklyanin determinant of the projected boundary monodromy"),
        info(Reflection, "sdet-central", "Sklyanin determinant commutes with every boundary monodromy entry"),
        info(Reflection, "sdet-series", "expansion of the Sklyanin determinant at infinity to order u^-3"),
        info(
            Reflection,
            "sdet-hamiltonian",
            "Hamiltonian sum_i d_i^2 from the u^-3 coefficient of the Sklyanin determinant",
        ),
        info(
            Reflection,
            "charges-series",
            "charge polynomials reproduce the ordered-product expansion of the Sklyanin determinant",
        ),
        info(Reflection, "charge-i0", "lowest charge I_0 = 2 lambda (n-1) N"),
        info(Reflection, "charges-commute", "charges I_k Lambda commute with each other and with H_Lambda"),
    ]);
    for sector in ["reflection", "yangian"] {
        out.extend([
            info(
                Hamiltonian,
                &format!("hamiltonian-explicit-{sector}"),
                "sum of squared Dunkl operators in explicit Sutherland form",
            ),
            info(
                Hamiltonian,
                &format!("hamiltonian-effective-{sector}"),
                "effective Hamiltonian with spin exchange operators on projected states",
            ),
            info(
                Hamiltonian,
                &format!("hamiltonian-conservation-{sector}"),
                "Hamiltonian commutes with every Dunkl operator",
            ),
        ]);
    }
    out.extend([
        info(Hamiltonian, "symmetry-reflection", "boundary monodromy entries commute with the effective Hamiltonian"),
        info(Hamiltonian, "symmetry-yangian", "monodromy entries commute with the effective Hamiltonian"),
        info(Hamiltonian, "symmetry-b-control", "boundary monodromy symmetry requires b = -2 tau'' b'"),
        info(Hamiltonian, "momentum-yangian", "total momentum is conserved with Yangian symmetry"),
        info(Hamiltonian, "momentum-reflection", "total momentum is not conserved with a boundary"),
    ]);
    for m in ModelName::ALL {
        out.push(info(
            Models,
            &format!("model-{}", m.name()),
            "catalog model: parameter binding reproduces the physical Hamiltonian",
        ));
    }
    out.extend([
        info(Models, "model-free-limit", "A_N trigonometric model at zero coupling is the free Hamiltonian"),
        info(Models, "gauge-potential", "external potential of the gauge transformation for each chart"),
        info(Models, "vspin-reflection", "spin potential in z coordinates matches the t-chart operator (boundary)"),
        info(Models, "vspin-yangian", "spin potential in z coordinates matches the t-chart operator (periodic)"),
    ]);
    out
}

pub fn selected(suite: Option<Suite>) -> Vec<CheckInfo> {
    catalog().into_iter().filter(|c| suite.map_or(true, |s| c.suite == s)).collect()
}

type Job<'a> = Box<dyn Fn(&mut ChaCha8Rng) -> CheckReport + Send + Sync + 'a>;

fn realization<F: Field>(p: &ModelParams, sector: Sector, pert: Perturbation) -> Result<Realization<F>, ConfigError> {
    Coeffs::new(p).map(|c| Realization::new(c, sector, pert)).map_err(|e| ConfigError {
        field: "field".into(),
        reason: format!("parameters do not map into the working field: {e}"),
    })
}

/// Everything a run needs, built once per field.
struct Bench<F: Field> {
    p: ModelParams,
    cfg: RunConfig,
    ctx: Context,
    settings: Settings,
    refl: Realization<F>,
    yang: Realization<F>,
    v_pert: Realization<F>,
    g_pert: Realization<F>,
    beta_pert: Realization<F>,
    b_pert: Realization<F>,
}

impl<F: Field> Bench<F> {
    fn new(cfg: &RunConfig, p: ModelParams) -> Result<Self, ConfigError> {
        let pert = cfg.dunkl_perturbation();
        let mut beta = p.clone();
        beta.beta = Field::add(&beta.beta, &Rat::from(1));
        let mut b = p.clone();
        b.b = Field::add(&b.b, &Rat::from(1));
        Ok(Bench {
            ctx: Context {
                n: p.n,
                particles: p.particles,
                seed: cfg.seed,
            },
            settings: cfg.settings(),
            refl: realization(&p, Sector::Reflection, pert)?,
            yang: realization(&p, Sector::Yangian, pert)?,
            v_pert: realization(&p, Sector::Reflection, Perturbation::VNumeratorPlusOne)?,
            g_pert: realization(&p, Sector::Reflection, Perturbation::GDenominatorFlip)?,
            beta_pert: realization(&beta, Sector::Yangian, pert)?,
            b_pert: realization(&b, Sector::Reflection, pert)?,
            cfg: cfg.clone(),
            p,
        })
    }

    fn job<'a>(&'a self, id: &str) -> Job<'a> {
        let (ctx, s) = (&self.ctx, &self.settings);
        let (refl, yang) = (&self.refl, &self.yang);
        let kmax = self.cfg.charges_kmax.min(self.cfg.series_order - 1);
        if let Some(rel) = Relation::parse(id) {
            return Box::new(move |rng| hecke::check_relation(rel, refl, ctx, s, rng));
        }
        if let Some(name) = id.strip_prefix("model-").and_then(|m| ModelName::parse(m).ok()) {
            let phys = PhysicalParams {
                g: self.cfg.g.clone(),
                b1: self.cfg.b1.clone(),
                b2: self.cfg.b2.clone(),
            };
            let d = models::model(name, &phys, ctx.n, ctx.particles, self.p.tau1, self.p.tau2);
            return Box::new(move |rng| match &d {
                Ok(d) => models::check_model::<F>(d, ctx, s, rng),
                Err(e) => crate::check::report(
                    name.name(),
                    "",
                    ctx,
                    crate::check::Expect::Zero,
                    std::time::Instant::now(),
                    Err(e.clone()),
                ),
            });
        }
        match id {
            "dunkl-linearity" => Box::new(move |rng| hecke::check_linearity(refl, ctx, s, rng)),
            "dunkl-spin-free" => Box::new(move |_| hecke::check_spin_free(refl, ctx)),
            "chart-substitution" => Box::new(move |rng| hecke::check_chart(ctx, rng, s.states * s.points)),
            "negative-v-perturbed" => Box::new(move |rng| {
                hecke::negative_control(
                    "negative-v-perturbed",
                    "",
                    &[Relation::DCommute, Relation::PdExchange],
                    &self.v_pert,
                    ctx,
                    s,
                    rng,
                )
            }),
            "negative-g-perturbed" => Box::new(move |rng| {
                hecke::negative_control("negative-g-perturbed", "", &[Relation::QdExchange], &self.g_pert, ctx, s, rng)
            }),
            "rtt" => Box::new(move |rng| yangian::check_rtt(yang, false, ctx, s, rng)),
            "rtt-projected" => Box::new(move |rng| yangian::check_rtt(yang, true, ctx, s, rng)),
            "rtt-projected-beta-control" => {
                Box::new(move |rng| yangian::check_rtt_beta_control(&self.beta_pert, ctx, s, rng))
            }
            "com-at-m2" => Box::new(move |rng| yangian::check_com_at(yang, 2, ctx, s, rng)),
            "qdet-closed-form" => Box::new(move |rng| yangian::check_qdet_closed(yang, ctx, s, rng)),
            "qdet-central" => Box::new(move |rng| yangian::check_qdet_central(yang, ctx, s, rng)),
            "qdet-projected" => Box::new(move |rng| yangian::check_qdet_projected(yang, ctx, s, rng)),
            "reflection" => Box::new(move |rng| reflection::check_reflection(refl, false, ctx, s, rng)),
            "reflection-projected" => Box::new(move |rng| reflection::check_reflection(refl, true, ctx, s, rng)),
            "negative-b-inconsistent" => {
                Box::new(move |rng| reflection::check_reflection_b_control(&self.b_pert, ctx, s, rng))
            }
            "boundary-reflection" => Box::new(move |rng| reflection::check_boundary(refl, ctx, s, rng)),
            "projector-lemma" => Box::new(move |rng| reflection::check_projectors(refl, ctx, s, rng)),
            "nu-central" => Box::new(move |rng| reflection::check_nu_central(refl, ctx, s, rng)),
            "sdet-closed-form" => Box::new(move |rng| reflection::check_sdet_closed(refl, ctx, s, rng)),
            "sdet-center-identity" => Box::new(move |rng| reflection::check_sdet_center(refl, ctx, s, rng)),
            "sdet-projected" => Box::new(move |rng| reflection::check_sdet_projected(refl, ctx, s, rng)),
            "sdet-central" => Box::new(move |rng| reflection::check_sdet_central(refl, ctx, s, rng)),
            "sdet-series" => Box::new(move |rng| reflection::check_sdet_series(refl, ctx, s, rng)),
            "sdet-hamiltonian" => Box::new(move |rng| reflection::check_hamiltonian_extraction(refl, ctx, s, rng)),
            "charges-series" => Box::new(move |rng| reflection::check_charges_match_series(refl, kmax, ctx, s, rng)),
            "charge-i0" => Box::new(move |_| reflection::check_i0(refl, ctx)),
            "charges-commute" => Box::new(move |rng| {
                let h = hamiltonian::hamiltonian_effective(refl);
                reflection::check_charges_commute(refl, &h, kmax, ctx, s, rng)
            }),
            "hamiltonian-explicit-reflection" => Box::new(move |rng| hamiltonian::check_explicit(refl, ctx, s, rng)),
            "hamiltonian-explicit-yangian" => Box::new(move |rng| hamiltonian::check_explicit(yang, ctx, s, rng)),
            "hamiltonian-effective-reflection" => Box::new(move |rng| hamiltonian::check_effective(refl, ctx, s, rng)),
            "hamiltonian-effective-yangian" => Box::new(move |rng| hamiltonian::check_effective(yang, ctx, s, rng)),
            "hamiltonian-conservation-reflection" => {
                Box::new(move |rng| hamiltonian::check_conservation(refl, ctx, s, rng))
            }
            "hamiltonian-conservation-yangian" => Box::new(move |rng| hamiltonian::check_conservation(yang, ctx, s, rng)),
            "symmetry-reflection" => Box::new(move |rng| hamiltonian::check_symmetry(refl, ctx, s, rng)),
            "symmetry-yangian" => Box::new(move |rng| hamiltonian::check_symmetry(yang, ctx, s, rng)),
            "symmetry-b-control" => Box::new(move |rng| hamiltonian::check_symmetry_b_control(&self.b_pert, ctx, s, rng)),
            "momentum-yangian" => Box::new(move |rng| hamiltonian::check_momentum(yang, ctx, s, rng)),
            "momentum-reflection" => Box::new(move |rng| hamiltonian::check_momentum(refl, ctx, s, rng)),
            "model-free-limit" => Box::new(move |rng| models::check_free_model::<F>(ctx, s, rng)),
            "gauge-potential" => Box::new(move |rng| models::check_gauge(ctx, rng, s.states * s.points)),
            "vspin-reflection" => {
                Box::new(move |rng| models::check_vspin(&self.p, Sector::Reflection, ctx, rng, s.points))
            }
            "vspin-yangian" => Box::new(move |rng| models::check_vspin(&self.p, Sector::Yangian, ctx, rng, s.points)),
            other => panic!("check '{other}' is in the catalog but has no runner"),
        }
    }

    fn run(&self, checks: &[CheckInfo]) -> Vec<CheckReport> {
        let jobs: Vec<(&CheckInfo, Job)> = checks.iter().map(|c| (c, self.job(&c.id))).collect();
        jobs.par_iter()
            .map(|(info, job)| {
                let mut rep = job(&mut rng_for(self.cfg.seed, &info.id));
                debug_assert_eq!(rep.id, info.id, "runner reports under a different id");
                rep.reference = info.reference.clone();
                rep
            })
            .collect()
    }
}

/// Runs the configured suite(s). Reports come back in catalog order.
pub fn run(cfg: &RunConfig) -> Result<Vec<CheckReport>, Vec<ConfigError>> {
    run_checks(cfg, &selected(cfg.suite))
}

/// Runs an explicit list of checks (ids must come from the catalog).
pub fn run_checks(cfg: &RunConfig, checks: &[CheckInfo]) -> Result<Vec<CheckReport>, Vec<ConfigError>> {
    let p = cfg.resolve()?;
    let go = |e: ConfigError| vec![e];
    Ok(match cfg.field {
        FieldMode::Rational => Bench::<Rat>::new(cfg, p).map_err(go)?.run(checks),
        FieldMode::ModP(DEFAULT_PRIME) => Bench::<Fp62>::new(cfg, p).map_err(go)?.run(checks),
        FieldMode::ModP(MERSENNE_61) => Bench::<Fp61>::new(cfg, p).map_err(go)?.run(checks),
        FieldMode::ModP(q) => {
            return Err(vec![ConfigError {
                field: "field".into(),
                reason: format!("prime {q} is not built in"),
            }])
        }
    })
}

/// Catalog entries whose id is in `ids`, in catalog order; unknown ids are errors.
pub fn lookup(ids: &[&str]) -> Result<Vec<CheckInfo>, ConfigError> {
    let cat = catalog();
    for id in ids {
        if !cat.iter().any(|c| c.id == *id) {
            return Err(ConfigError {
                field: "check".into(),
                reason: format!("unknown check '{id}'"),
            });
        }
    }
    Ok(cat.into_iter().filter(|c| ids.contains(&c.id.as_str())).collect())
}
