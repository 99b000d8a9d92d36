//! Defining relations of the extended degenerate affine Hecke algebra in the
//! Dunkl representation, with negative controls.

use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::check::{self, CheckReport, Context, Expect, Outcome, Sample, Settings};
use crate::dunkl::Realization;
use crate::error::Result;
use crate::field::Field;
use crate::params::Sector;
use crate::phys::{apply, PhysOp};

/// The eight relation families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `P_{i,i+1} P_{i+1,i+2} P_{i,i+1} = P_{i+1,i+2} P_{i,i+1} P_{i+1,i+2}`.
    Braid,
    /// `P_{i,i+1}^2 = 1`.
    PSquare,
    /// `P_{i,i+1} d_k` exchange.
    PdExchange,
    /// `[d_i, d_j] = 0`.
    DCommute,
    /// `Q_i^2 = 1`.
    QSquare,
    /// `Q_i Q_j = Q_j Q_i`.
    QCommute,
    /// `Q_i P_{k,k+1}` exchange.
    QpExchange,
    /// `Q_i d_k` exchange.
    QdExchange,
}

impl Relation {
    pub const ALL: [Relation; 8] = [
        Relation::Braid,
        Relation::PSquare,
        Relation::PdExchange,
        Relation::DCommute,
        Relation::QSquare,
        Relation::QCommute,
        Relation::QpExchange,
        Relation::QdExchange,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Relation::Braid => "hecke-braid",
            Relation::PSquare => "hecke-p-square",
            Relation::PdExchange => "hecke-pd-exchange",
            Relation::DCommute => "hecke-d-commute",
            Relation::QSquare => "hecke-q-square",
            Relation::QCommute => "hecke-qq-commute",
            Relation::QpExchange => "hecke-qp-exchange",
            Relation::QdExchange => "hecke-qd-exchange",
        }
    }

    pub fn reference(&self) -> &'static str {
        match self {
            Relation::Braid => "Hecke relations: braid relation of position exchanges",
            Relation::PSquare => "Hecke relations: position exchanges are involutions",
            Relation::PdExchange => "Hecke relations: exchange of position swaps and Dunkl operators",
            Relation::DCommute => "Hecke relations: Dunkl operators commute",
            Relation::QSquare => "Hecke relations: position reflections are involutions",
            Relation::QCommute => "Hecke relations: position reflections commute",
            Relation::QpExchange => "Hecke relations: exchange of reflections and swaps",
            Relation::QdExchange => "Hecke relations: exchange of reflections and Dunkl operators",
        }
    }

    /// Whether the relation belongs to the swap-only subalgebra.
    pub fn in_yangian_sector(&self) -> bool {
        matches!(
            self,
            Relation::Braid | Relation::PSquare | Relation::PdExchange | Relation::DCommute
        )
    }

    pub fn parse(s: &str) -> Option<Relation> {
        Relation::ALL.into_iter().find(|r| r.id() == s)
    }
}

fn c<F: Field>(x: F) -> PhysOp<F> {
    PhysOp::Scalar(x)
}

fn prod<F: Field>(ops: Vec<PhysOp<F>>) -> PhysOp<F> {
    PhysOp::compose(ops)
}

/// `(name, lhs, rhs)` for every index instance of a relation.
pub fn instances<F: Field>(rel: Relation, r: &Realization<F>) -> Vec<(String, PhysOp<F>, PhysOp<F>)> {
    let nv = r.particles();
    let k = &r.coeffs;
    let p = |i: usize, j: usize| r.p_pos(i, j);
    let q = |i: usize| r.q_pos(i);
    let d = |i: usize| r.dunkl(i).expect("index in range").clone();
    let mut out = Vec::new();
    match rel {
        Relation::Braid => {
            for i in 0..nv.saturating_sub(2) {
                out.push((
                    format!("i={}", i + 1),
                    prod(vec![p(i, i + 1), p(i + 1, i + 2), p(i, i + 1)]),
                    prod(vec![p(i + 1, i + 2), p(i, i + 1), p(i + 1, i + 2)]),
                ));
            }
        }
        Relation::PSquare => {
            for i in 0..nv - 1 {
                out.push((format!("i={}", i + 1), prod(vec![p(i, i + 1), p(i, i + 1)]), PhysOp::Identity));
            }
        }
        Relation::PdExchange => {
            for i in 0..nv - 1 {
                for kk in 0..nv {
                    let lhs = prod(vec![p(i, i + 1), d(kk)]);
                    let rhs = if kk == i {
                        PhysOp::sum(vec![prod(vec![d(i + 1), p(i, i + 1)]), c(k.beta.clone())])
                    } else if kk == i + 1 {
                        PhysOp::sum(vec![prod(vec![d(i), p(i, i + 1)]), c(k.beta.neg())])
                    } else {
                        prod(vec![d(kk), p(i, i + 1)])
                    };
                    out.push((format!("i={} k={}", i + 1, kk + 1), lhs, rhs));
                }
            }
        }
        Relation::DCommute => {
            for i in 0..nv {
                for j in i + 1..nv {
                    out.push((
                        format!("i={} j={}", i + 1, j + 1),
                        prod(vec![d(i), d(j)]),
                        prod(vec![d(j), d(i)]),
                    ));
                }
            }
        }
        Relation::QSquare => {
            for i in 0..nv {
                out.push((format!("i={}", i + 1), prod(vec![q(i), q(i)]), PhysOp::Identity));
            }
        }
        Relation::QCommute => {
            for i in 0..nv {
                for j in i + 1..nv {
                    out.push((
                        format!("i={} j={}", i + 1, j + 1),
                        prod(vec![q(i), q(j)]),
                        prod(vec![q(j), q(i)]),
                    ));
                }
            }
        }
        Relation::QpExchange => {
            for i in 0..nv {
                for kk in 0..nv - 1 {
                    let target = if i == kk {
                        kk + 1
                    } else if i == kk + 1 {
                        kk
                    } else {
                        i
                    };
                    out.push((
                        format!("i={} k={}", i + 1, kk + 1),
                        prod(vec![q(i), p(kk, kk + 1)]),
                        prod(vec![p(kk, kk + 1), q(target)]),
                    ));
                }
            }
        }
        Relation::QdExchange => {
            for i in 0..nv {
                for kk in 0..nv {
                    let lhs = prod(vec![q(i), d(kk)]);
                    let rhs = if kk < i {
                        prod(vec![d(kk), q(i)])
                    } else if kk == i {
                        let mut terms = vec![prod(vec![d(i), q(i)]).scaled(F::one().neg())];
                        for j in i + 1..nv {
                            terms.push(
                                prod(vec![p(i, j), PhysOp::sum(vec![q(i), q(j)])]).scaled(k.beta.clone()),
                            );
                        }
                        terms.push(c(k.b.clone()));
                        PhysOp::sum(terms)
                    } else {
                        PhysOp::sum(vec![
                            prod(vec![d(kk), q(i)]),
                            prod(vec![p(i, kk), q(i).minus(q(kk))]).scaled(k.beta.clone()),
                        ])
                    };
                    out.push((format!("i={} k={}", i + 1, kk + 1), lhs, rhs));
                }
            }
        }
    }
    out
}

fn relation_outcome<F: Field>(
    rel: Relation,
    r: &Realization<F>,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Outcome>> {
    let inst = instances(rel, r);
    if inst.is_empty() {
        return Ok(None);
    }
    let g = settings.guard;
    check::run_states(rng, settings, |_, rr| {
        let (label, psi) = check::random_state::<F, _>(rr, r.n(), r.particles());
        inst.iter()
            .map(|(name, l, rh)| {
                Ok(Sample::new(
                    format!("{label} [{name}]"),
                    apply(l, &psi, &g)?,
                    apply(rh, &psi, &g)?,
                ))
            })
            .collect()
    })
    .map(Some)
}

/// Verifies one relation family on random monomial states.
pub fn check_relation<F: Field>(
    rel: Relation,
    r: &Realization<F>,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    if r.sector == Sector::Yangian && !rel.in_yangian_sector() {
        return check::skipped(rel.id(), rel.reference(), ctx, "reflections are absent in the Yangian sector");
    }
    match relation_outcome(rel, r, settings, rng) {
        Ok(None) => {
            let mut rep = check::report(
                rel.id(),
                rel.reference(),
                ctx,
                Expect::Zero,
                started,
                Ok(Outcome { samples: 0, witness: None }),
            );
            rep.note = Some(format!("no index instances for N={}", r.particles()));
            rep
        }
        Ok(Some(o)) => check::report(rel.id(), rel.reference(), ctx, Expect::Zero, started, Ok(o)),
        Err(e) => check::report(rel.id(), rel.reference(), ctx, Expect::Zero, started, Err(e)),
    }
}

/// Runs relation families on a deliberately corrupted realization, in order,
/// and requires a nonzero residual in one of them.
pub fn negative_control<F: Field>(
    id: &str,
    reference: &str,
    relations: &[Relation],
    r: &Realization<F>,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    let mut total = Outcome { samples: 0, witness: None };
    let mut hit = None;
    for &rel in relations {
        match relation_outcome(rel, r, settings, rng) {
            Ok(Some(o)) => {
                total.samples += o.samples;
                if o.witness.is_some() {
                    total.witness = o.witness;
                    hit = Some(rel);
                    break;
                }
            }
            Ok(None) => {}
            Err(e) => return check::report(id, reference, ctx, Expect::Witness, started, Err(e)),
        }
    }
    let mut rep = check::report(id, reference, ctx, Expect::Witness, started, Ok(total));
    if let Some(rel) = hit {
        rep.note = Some(format!("witness in {}", rel.id()));
    }
    rep
}

/// Linearity of Dunkl operators: `d(a psi + b phi) = a d psi + b d phi`.
pub fn check_linearity<F: Field>(
    r: &Realization<F>,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    let g = settings.guard;
    let out = check::run_states(rng, settings, |_, rr| {
        let (l1, psi) = check::random_state::<F, _>(rr, r.n(), r.particles());
        let (l2, phi) = check::random_state::<F, _>(rr, r.n(), r.particles());
        let a = F::from_i64(rr.gen_range(-50..=50));
        let b = F::from_i64(rr.gen_range(-50..=50));
        let mix = psi.scale(&a).add(&phi.scale(&b))?;
        r.dunkl_all()
            .iter()
            .enumerate()
            .map(|(l, d)| {
                let lhs = apply(d, &mix, &g)?;
                let rhs = apply(d, &psi, &g)?.scale(&a).add(&apply(d, &phi, &g)?.scale(&b))?;
                Ok(Sample::new(format!("{a}*({l1}) + {b}*({l2}) [d{}]", l + 1), lhs, rhs))
            })
            .collect()
    });
    check::report(
        "dunkl-linearity",
        "Dunkl operators act linearly on wave functions",
        ctx,
        Expect::Zero,
        started,
        out,
    )
}

/// Structural check that the Dunkl operators contain no spin operators, so
/// they commute with every spin matrix.
pub fn check_spin_free<F: Field>(r: &Realization<F>, ctx: &Context) -> CheckReport {
    let started = Instant::now();
    let ok = r.dunkl_free_of_spin();
    let mut rep = check::report(
        "dunkl-spin-free",
        "Dunkl operators commute with spin operators",
        ctx,
        Expect::Zero,
        started,
        Ok(Outcome { samples: r.particles(), witness: None }),
    );
    if !ok {
        rep.status = check::Status::Fail;
        rep.note = Some("a Dunkl operator tree contains a spin operator".into());
    }
    rep
}

/// Floating-point comparison of the chart substitution table with the
/// exponential closed forms (`A(x) = x`). Returns the largest relative error
/// over `samples` random real points.
pub fn chart_max_relative_error<R: Rng>(rng: &mut R, samples: usize) -> f64 {
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1e-300);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let gamma: f64 = rng.gen_range(0.05..0.95);
        let beta: f64 = rng.gen_range(-3.0..3.0);
        let bb: f64 = rng.gen_range(-3.0..3.0);
        let cc: f64 = rng.gen_range(-3.0..3.0);
        let x: f64 = rng.gen_range(-2.0..2.0);
        let mut y: f64 = rng.gen_range(-2.0..2.0);
        while (x - y).abs() < 0.05 || (x + y).abs() < 0.05 {
            y = rng.gen_range(-2.0..2.0);
        }
        let tx = (2.0 * gamma * x).exp();
        let ty = (2.0 * gamma * y).exp();
        // v(x, y) = beta / (exp(-2 gamma (x - y)) - 1)
        let v_exact = beta / ((-2.0 * gamma * (x - y)).exp() - 1.0);
        worst = worst.max(rel(v_exact, beta * tx / (ty - tx)));
        // vbar(x, y) = beta / (1 - exp(2 gamma (x + y)))
        let vb_exact = beta / (1.0 - (2.0 * gamma * (x + y)).exp());
        worst = worst.max(rel(vb_exact, beta / (1.0 - tx * ty)));
        // g(x) = (c - b exp(-2 gamma x)) / (2 sinh(2 gamma x))
        let g_exact = (cc - bb * (-2.0 * gamma * x).exp()) / (2.0 * (2.0 * gamma * x).sinh());
        worst = worst.max(rel(g_exact, (cc * tx - bb) / (tx * tx - 1.0)));
        // d/dx f(exp(2 gamma x)) = 2 gamma t f'(t) on f(t) = t^3 + 1/t, with
        // the left side by complex-step differentiation.
        let h = 1e-20;
        let (re, im) = (tx * (2.0 * gamma * h).cos(), tx * (2.0 * gamma * h).sin());
        let cube_im = 3.0 * re * re * im - im * im * im;
        let inv_im = -im / (re * re + im * im);
        let numeric = (cube_im + inv_im) / h;
        let chart = 2.0 * gamma * (3.0 * tx.powi(3) - 1.0 / tx);
        worst = worst.max(rel(numeric, chart));
        let sh2 = |z: f64| z.sinh().powi(2);
        worst = worst.max(rel(1.0 / sh2(gamma * (x - y)), 4.0 * tx * ty / (tx - ty).powi(2)));
        worst = worst.max(rel(1.0 / sh2(gamma * (x + y)), 4.0 * tx * ty / (tx * ty - 1.0).powi(2)));
        worst = worst.max(rel(1.0 / sh2(gamma * x), 4.0 * tx / (tx - 1.0).powi(2)));
        worst = worst.max(rel(1.0 / (gamma * x).cosh().powi(2), 4.0 * tx / (tx + 1.0).powi(2)));
        // alpha = A^{-1}(-A(x)) maps t to 1/t
        worst = worst.max(rel((2.0 * gamma * (-x)).exp(), 1.0 / tx));
    }
    worst
}

/// Registered form of [`chart_max_relative_error`].
pub fn check_chart(ctx: &Context, rng: &mut ChaCha8Rng, samples: usize) -> CheckReport {
    let started = Instant::now();
    let err = chart_max_relative_error(rng, samples);
    let mut rep = check::report(
        "chart-substitution",
        "coordinate chart reproduces the exponential closed forms of v, vbar, g and the pair potentials",
        ctx,
        Expect::Zero,
        started,
        Ok(Outcome { samples, witness: None }),
    );
    rep.note = Some(format!("max relative error {err:.2e} (tolerance 1e-10)"));
    if !(err < 1e-10) {
        rep.status = check::Status::Fail;
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::params::{Coeffs, ModelParams, Perturbation};
    use crate::sampling::rng_for;

    fn ctx() -> Context {
        Context { n: 2, particles: 2, seed: 1 }
    }

    #[test]
    fn all_relations_hold_n2_n2() {
        let p = ModelParams::sample(2, 2);
        let r = Realization::<Rat>::new(Coeffs::new(&p).unwrap(), Sector::Reflection, Perturbation::None);
        let s = Settings { states: 2, points: 2, ..Settings::default() };
        for rel in Relation::ALL {
            let rep = check_relation(rel, &r, &ctx(), &s, &mut rng_for(1, rel.id()));
            assert_eq!(rep.status, check::Status::Pass, "{rel:?}: {rep:?}");
        }
    }

    #[test]
    fn chart_table_matches_closed_forms() {
        assert!(chart_max_relative_error(&mut rng_for(3, "chart"), 10) < 1e-10);
    }

    #[test]
    fn parse_round_trip() {
        for rel in Relation::ALL {
            assert_eq!(Relation::parse(rel.id()), Some(rel));
        }
    }
}
