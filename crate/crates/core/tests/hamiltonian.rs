use ibench_core::check::{Context, Settings, Status};
use ibench_core::dunkl::Realization;
use ibench_core::hamiltonian::*;
use ibench_core::params::{Coeffs, ModelParams, Perturbation, Sector};
use ibench_core::phys::{apply, Guard};
use ibench_core::sampling::rng_for;
use ibench_core::wave::WaveFunction;
use ibench_core::{Field, Rat};

fn real(n: usize, particles: usize, sector: Sector) -> Realization<Rat> {
    let p = ModelParams::sample(n, particles);
    Realization::new(Coeffs::new(&p).unwrap(), sector, Perturbation::None)
}

fn ctx(n: usize, particles: usize) -> Context {
    Context { n, particles, seed: 8 }
}

fn quick() -> Settings {
    Settings { states: 3, points: 3, ..Settings::default() }
}

#[test]
fn explicit_forms_equal_sum_of_squares() {
    for (n, nn) in [(2, 2), (2, 3)] {
        for sector in [Sector::Reflection, Sector::Yangian] {
            let r = real(n, nn, sector);
            let rep = check_explicit(&r, &ctx(n, nn), &quick(), &mut rng_for(1, "he"));
            assert_eq!(rep.status, Status::Pass, "{sector:?} ({n},{nn}): {rep:?}");
        }
    }
}

#[test]
fn effective_hamiltonians_on_projected_states() {
    for sector in [Sector::Reflection, Sector::Yangian] {
        let r = real(2, 2, sector);
        let rep = check_effective(&r, &ctx(2, 2), &quick(), &mut rng_for(1, "eff"));
        assert_eq!(rep.status, Status::Pass, "{sector:?}: {rep:?}");
    }
}

#[test]
fn conservation_of_dunkl_operators() {
    for sector in [Sector::Reflection, Sector::Yangian] {
        let r = real(2, 2, sector);
        let rep = check_conservation(&r, &ctx(2, 2), &quick(), &mut rng_for(1, "cons"));
        assert_eq!(rep.status, Status::Pass, "{sector:?}: {rep:?}");
    }
}

#[test]
fn symmetry_of_effective_hamiltonians() {
    for sector in [Sector::Yangian, Sector::Reflection] {
        let r = real(2, 2, sector);
        let s = Settings { states: 1, points: 3, ..Settings::default() };
        let rep = check_symmetry(&r, &ctx(2, 2), &s, &mut rng_for(1, "sym"));
        assert_eq!(rep.status, Status::Pass, "{sector:?}: {rep:?}");
    }
}

#[test]
fn momentum_conserved_only_without_boundary() {
    let r = real(2, 2, Sector::Yangian);
    let rep = check_momentum(&r, &ctx(2, 2), &quick(), &mut rng_for(1, "mom"));
    assert_eq!(rep.status, Status::Pass, "{rep:?}");
    assert!(rep.witness.is_none());
    let r = real(2, 2, Sector::Reflection);
    let rep = check_momentum(&r, &ctx(2, 2), &quick(), &mut rng_for(1, "mom"));
    assert_eq!(rep.status, Status::Pass, "{rep:?}");
    assert!(rep.witness.is_some());
}

#[test]
fn two_body_coefficient_at_a_point() {
    // Yangian sector, spin part of the pair term: gamma lambda 4 t1 t2/(t1 - t2)^2 P_12
    let r = real(2, 2, Sector::Yangian);
    let layout = quantum_layout(&r);
    let psi = WaveFunction::monomial(layout, &[0, 0], &[0, 1]);
    let out = apply(&hamiltonian_effective(&r), &psi, &Guard::default()).unwrap();
    let at = [Rat::from(2), Rat::from(3)];
    let vals = out.eval(&at).unwrap();
    let k = &r.coeffs;
    let pole = Rat::from(24);
    let gl = k.gamma.mul(&k.lambda);
    // e1 ⊗ e2 -> swapped component e2 ⊗ e1 carries gamma lambda * pole
    let swapped = out.layout().index(&[1, 0]);
    assert_eq!(vals.get(&swapped), Some(&gl.mul(&pole)));
    // diagonal: -lambda^2/2 * pole
    let diag = out.layout().index(&[0, 1]);
    assert_eq!(vals.get(&diag), Some(&k.lambda.mul(&k.lambda).mul(&Rat::new(-1, 2)).mul(&pole)));
}

#[test]
fn symmetry_needs_the_boundary_constraint() {
    let mut p = ModelParams::sample(2, 2);
    p.b = Field::add(&p.b, &Rat::from(1));
    let r = Realization::<ibench_core::Fp62>::new(Coeffs::new(&p).unwrap(), Sector::Reflection, Perturbation::None);
    let s = Settings { states: 2, points: 3, ..Settings::default() };
    let rep = check_symmetry_b_control(&r, &ctx(2, 2), &s, &mut rng_for(1, "symb"));
    assert_eq!(rep.status, Status::Pass, "{rep:?}");
    assert!(rep.witness.is_some());
}
