use ibench_core::check::{Context, Settings, Status};
use ibench_core::dunkl::Realization;
use ibench_core::params::{Coeffs, ModelParams, Perturbation, Sector};
use ibench_core::phys::Guard;
use ibench_core::sampling::rng_for;
use ibench_core::spin::SpaceLayout;
use ibench_core::wave::WaveFunction;
use ibench_core::yangian::*;
use ibench_core::{Field, Rat};

fn yangian(n: usize, particles: usize) -> Realization<Rat> {
    let p = ModelParams::sample(n, particles);
    Realization::new(Coeffs::new(&p).unwrap(), Sector::Yangian, Perturbation::None)
}

fn ctx(n: usize, particles: usize) -> Context {
    Context { n, particles, seed: 4 }
}

fn quick() -> Settings {
    Settings { states: 2, points: 3, ..Settings::default() }
}

type Dense = Vec<Vec<Rat>>;

fn identity(d: usize) -> Dense {
    (0..d).map(|i| (0..d).map(|j| Rat::from((i == j) as i64)).collect()).collect()
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).fold(Rat::from(0), |s, k| s.add(&a[i][k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

fn lin(a: &Dense, x: Rat, b: &Dense, y: Rat) -> Dense {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(p, q)| p.mul(&x).add(&q.mul(&y))).collect())
        .collect()
}

/// Swap of tensor factors `p` and `q` in a three-factor C^2 space (factor 0 most significant).
fn swap3(p: usize, q: usize) -> Dense {
    let mut m = vec![vec![Rat::from(0); 8]; 8];
    for x in 0..8usize {
        let mut d = [(x >> 2) & 1, (x >> 1) & 1, x & 1];
        d.swap(p, q);
        let y = (d[0] << 2) | (d[1] << 1) | d[2];
        m[y][x] = Rat::from(1);
    }
    m
}

#[test]
fn qdet_matches_dense_oracle_single_particle() {
    // N = 1, Yangian sector: d = 2 gamma t d/dt acts as 2 gamma mu on t^mu.
    let r = yangian(2, 1);
    let lam = r.coeffs.lambda.clone();
    let u = Rat::from(17);
    for mu in [-2, 0, 3] {
        for s in 0..2 {
            let delta = r.coeffs.gamma.mul(&Rat::from(2 * mu as i64));
            let id = identity(8);
            let a = lin(&id, Rat::from(1), &swap3(0, 1), Rat::from(-1));
            let l1 = lin(&id, u.add(&delta), &swap3(0, 2), lam.neg());
            let l2 = lin(&id, u.sub(&lam).add(&delta), &swap3(1, 2), lam.neg());
            let m = matmul(&a, &matmul(&l1, &l2));
            // alt ⊗ e_s = (e1 e2 - e2 e1) ⊗ e_s
            let mut v = vec![Rat::from(0); 8];
            v[(0 << 2) | (1 << 1) | s] = Rat::from(1);
            v[(1 << 2) | (0 << 1) | s] = Rat::from(-1);
            let out: Vec<Rat> = (0..8).map(|i| (0..8).fold(Rat::from(0), |acc, k| acc.add(&m[i][k].mul(&v[k])))).collect();
            let want = out[(0 << 2) | (1 << 1) | s].mul(&Rat::new(1, 2));
            let psi = WaveFunction::monomial(SpaceLayout::particles(2, &[], 1), &[mu], &[s]);
            let got = qdet_antisym_apply(&r, &u, &psi, false, &Guard::default()).unwrap();
            assert_eq!(got, psi.scale(&want), "mu={mu} s={s}");
            // closed form (u + d)(u + d - 2 lambda)
            let closed = u.add(&delta).mul(&u.add(&delta).sub(&lam.mul(&Rat::from(2))));
            assert_eq!(want, closed);
        }
    }
}

#[test]
fn rtt_and_projected_rtt() {
    for nn in [1, 2] {
        let r = yangian(2, nn);
        for projected in [false, true] {
            let rep = check_rtt(&r, projected, &ctx(2, nn), &quick(), &mut rng_for(1, "rtt"));
            assert_eq!(rep.status, Status::Pass, "N={nn} projected={projected}: {rep:?}");
        }
    }
}

#[test]
fn projected_rtt_needs_the_beta_constraint() {
    let mut p = ModelParams::sample(2, 2);
    p.beta = Field::add(&p.beta, &Rat::from(1));
    let r = Realization::<Rat>::new(Coeffs::new(&p).unwrap(), Sector::Yangian, Perturbation::None);
    let rep = check_rtt_beta_control(&r, &ctx(2, 2), &quick(), &mut rng_for(1, "rtt"));
    assert_eq!(rep.status, Status::Pass);
    assert!(rep.witness.is_some());
}

#[test]
fn antisymmetrizer_identity() {
    for nn in [1, 2] {
        let r = yangian(2, nn);
        let rep = check_com_at(&r, 2, &ctx(2, nn), &quick(), &mut rng_for(2, "comat"));
        assert_eq!(rep.status, Status::Pass, "{rep:?}");
    }
}

#[test]
fn qdet_closed_form_agreement() {
    for (n, nn) in [(2, 1), (2, 2), (3, 1)] {
        let r = yangian(n, nn);
        let rep = check_qdet_closed(&r, &ctx(n, nn), &quick(), &mut rng_for(3, "qdet"));
        assert_eq!(rep.status, Status::Pass, "({n},{nn}): {rep:?}");
    }
}

#[test]
fn qdet_is_central_and_commutes_with_projection() {
    let r = yangian(2, 2);
    let rep = check_qdet_central(&r, &ctx(2, 2), &quick(), &mut rng_for(3, "c"));
    assert_eq!(rep.status, Status::Pass, "{rep:?}");
    let rep = check_qdet_projected(&r, &ctx(2, 2), &quick(), &mut rng_for(3, "p"));
    assert_eq!(rep.status, Status::Pass, "{rep:?}");
}

#[test]
fn free_monodromy_is_diagonal() {
    // lambda = 0: T^(u) = prod (u + d_i), so qdet is prod (u + d_i)^n
    let mut p = ModelParams::sample(2, 2);
    p.lambda = Rat::from(0);
    p.beta = Rat::from(0);
    let r = Realization::<Rat>::new(Coeffs::new(&p).unwrap(), Sector::Yangian, Perturbation::None);
    let psi = WaveFunction::monomial(SpaceLayout::particles(2, &[], 2), &[1, -2], &[1, 0]);
    let u = Rat::from(5);
    let got = qdet_antisym_apply(&r, &u, &psi, false, &Guard::default()).unwrap();
    let g2 = r.coeffs.gamma.mul(&Rat::from(2));
    let e1 = u.add(&g2);
    let e2 = u.sub(&g2.mul(&Rat::from(2)));
    assert_eq!(got, psi.scale(&e1.mul(&e1).mul(&e2).mul(&e2)));
}
