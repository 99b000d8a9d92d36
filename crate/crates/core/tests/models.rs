use ibench_core::check::{Context, Settings, Status};
use ibench_core::models::*;
use ibench_core::params::{ModelParams, Sector};
use ibench_core::phys::{apply, Guard};
use ibench_core::sampling::rng_for;
use ibench_core::spin::SpaceLayout;
use ibench_core::wave::WaveFunction;
use ibench_core::{Field, Fp62, Rat, RatFunc};

fn ctx(n: usize, particles: usize) -> Context {
    Context { n, particles, seed: 11 }
}

fn quick() -> Settings {
    Settings { states: 3, points: 3, ..Settings::default() }
}

#[test]
fn every_verifiable_model_round_trips() {
    let phys = PhysicalParams::default();
    for name in ModelName::ALL {
        for (tau1, tau2) in [(1, 1), (-1, -1)] {
            let d = model(name, &phys, 2, 2, tau1, tau2).unwrap();
            let rep = check_model::<Rat>(&d, &ctx(2, 2), &quick(), &mut rng_for(1, "m"));
            match d.status {
                Verification::Verifiable => assert_eq!(rep.status, Status::Pass, "{}: {rep:?}", name.name()),
                Verification::MetadataOnly => assert_eq!(rep.status, Status::Skipped),
            }
        }
    }
}

#[test]
fn round_trip_mod_p() {
    let d = model(ModelName::BnTrigSutherland, &PhysicalParams::default(), 2, 3, 1, -1).unwrap();
    let rep = check_model::<Fp62>(&d, &ctx(2, 3), &quick(), &mut rng_for(1, "m"));
    assert_eq!(rep.status, Status::Pass, "{rep:?}");
}

/// Sum of the spin matrix element of the `H_BtS` potential, computed in `z`
/// with floating point, for the diagonal entry of `e1 ⊗ e1` with the
/// antidiagonal involution (so `Q` and `Pbar` have no diagonal part there).
fn bts_diagonal(g: f64, b1: f64, b2: f64, z: [f64; 2]) -> f64 {
    let s2 = |x: f64| x.sin().powi(2);
    let c2 = |x: f64| x.cos().powi(2);
    // -2g [(P - g)/sin^2(-) + (Pbar - g)/sin^2(+)]: P e1e1 = e1e1, Pbar e1e1 = e2e2
    let mut v = -2.0 * g * ((1.0 - g) / s2(z[0] - z[1]) + (-g) / s2(z[0] + z[1]));
    for &x in &z {
        v -= b1 * (-b1) / s2(x) + b2 * (-b2) / c2(x);
    }
    v
}

#[test]
fn bn_trig_coefficients_at_a_point() {
    let (g, b1, b2) = (Rat::new(3, 2), Rat::new(2, 3), Rat::new(-5, 4));
    let phys = PhysicalParams { g: g.clone(), b1: b1.clone(), b2: b2.clone() };
    let d = model(ModelName::BnTrigSutherland, &phys, 2, 2, 1, 1).unwrap();
    let op = d.operator::<Rat>().unwrap().unwrap();
    let layout = SpaceLayout::particles(2, &[], 2);
    let psi = WaveFunction::basis(layout.clone(), 2, &[0, 0], RatFunc::one(2));
    let out = apply(&op, &psi, &Guard::default()).unwrap();
    let f = out.component(layout.index(&[0, 0])).unwrap();
    // t = exp(2 i z) on the unit circle
    let z = [0.37f64, 1.02f64];
    let want = bts_diagonal(g.to_f64(), b1.to_f64(), b2.to_f64(), z);
    let t: Vec<(f64, f64)> = z.iter().map(|&x| ((2.0 * x).cos(), (2.0 * x).sin())).collect();
    let got = eval_c(f, &t);
    assert!((got.0 - want).abs() < 1e-9 * want.abs().max(1.0), "{got:?} vs {want}");
    assert!(got.1.abs() < 1e-9 * want.abs().max(1.0));
}

type C = (f64, f64);

fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cdiv(a: C, b: C) -> C {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

fn eval_poly(p: &ibench_core::LaurentPoly<Rat>, t: &[C]) -> C {
    let nv = p.nvars();
    let mut acc = (0.0, 0.0);
    for (m, c) in p.terms() {
        let mut term = (c.to_f64(), 0.0);
        for (e, &ti) in m.exps(nv).into_iter().zip(t) {
            let base = if e < 0 { cdiv((1.0, 0.0), ti) } else { ti };
            for _ in 0..e.abs() {
                term = cmul(term, base);
            }
        }
        acc = (acc.0 + term.0, acc.1 + term.1);
    }
    acc
}

fn eval_c(f: &RatFunc<Rat>, t: &[C]) -> C {
    let mut den = (1.0, 0.0);
    for (p, k) in f.denominator_factors() {
        for _ in 0..*k {
            den = cmul(den, eval_poly(p, t));
        }
    }
    cdiv(eval_poly(f.numerator(), t), den)
}

#[test]
fn an_trig_free_limit() {
    let rep = check_free_model::<Rat>(&ctx(2, 3), &quick(), &mut rng_for(1, "free"));
    assert_eq!(rep.status, Status::Pass, "{rep:?}");
}

#[test]
fn gauge_potentials_match_catalog() {
    let rep = check_gauge(&ctx(2, 2), &mut rng_for(1, "u"), 20);
    assert_eq!(rep.status, Status::Pass, "{rep:?}");
    assert_eq!(Chart::LinearA.entry().u_value, Rat::new(1, 4));
    assert!(Chart::parse("quadratic-a").is_err());
}

#[test]
fn spin_potential_in_z_coordinates() {
    for sector in [Sector::Reflection, Sector::Yangian] {
        for nn in [2, 3] {
            let p = ModelParams::sample(2, nn);
            let rep = check_vspin(&p, sector, &ctx(2, nn), &mut rng_for(1, "v"), 6);
            assert_eq!(rep.status, Status::Pass, "{sector:?} N={nn}: {rep:?}");
        }
    }
}

#[test]
fn spin_potential_detects_a_wrong_coupling() {
    // the z-space formula evaluated with b' shifted disagrees
    let p = ModelParams::sample(2, 2);
    let mut q = p.clone();
    q.b_prime = Field::add(&q.b_prime, &Rat::from(1));
    let z = [0.4, 0.9];
    let a = vspin_z(&p, Sector::Reflection, &z, &[0, 1]);
    let b = vspin_z(&q, Sector::Reflection, &z, &[0, 1]);
    assert!(a.iter().any(|(k, v)| (b.get(k).copied().unwrap_or_default() - v).norm() > 1e-6));
}
