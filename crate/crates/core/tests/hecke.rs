use ibench_core::check::{Context, Settings, Status};
use ibench_core::dunkl::Realization;
use ibench_core::hecke::{check_linearity, check_relation, negative_control, Relation};
use ibench_core::params::{Coeffs, ModelParams, Perturbation, Sector};
use ibench_core::phys::{apply, Guard, PhysOp};
use ibench_core::sampling::rng_for;
use ibench_core::spin::SpaceLayout;
use ibench_core::wave::WaveFunction;
use ibench_core::{Fp62, Rat};

fn realization(n: usize, particles: usize, sector: Sector, pert: Perturbation) -> Realization<Rat> {
    let p = ModelParams::sample(n, particles);
    Realization::new(Coeffs::new(&p).unwrap(), sector, pert)
}

fn ctx(n: usize, particles: usize) -> Context {
    Context { n, particles, seed: 11 }
}

#[test]
fn relations_hold_for_all_sizes() {
    let s = Settings { states: 3, points: 3, ..Settings::default() };
    for (n, nn) in [(2, 3), (3, 2)] {
        let r = realization(n, nn, Sector::Reflection, Perturbation::None);
        for rel in Relation::ALL {
            let rep = check_relation(rel, &r, &ctx(n, nn), &s, &mut rng_for(5, rel.id()));
            assert_eq!(rep.status, Status::Pass, "{rel:?} at ({n},{nn}): {rep:?}");
        }
    }
}

#[test]
fn yangian_sector_satisfies_the_subalgebra() {
    let s = Settings { states: 3, points: 3, ..Settings::default() };
    let r = realization(2, 3, Sector::Yangian, Perturbation::None);
    for rel in Relation::ALL {
        let rep = check_relation(rel, &r, &ctx(2, 3), &s, &mut rng_for(5, rel.id()));
        let want = if rel.in_yangian_sector() { Status::Pass } else { Status::Skipped };
        assert_eq!(rep.status, want, "{rel:?}");
    }
}

#[test]
fn shifted_v_breaks_commutativity_from_three_particles() {
    let r = realization(2, 3, Sector::Reflection, Perturbation::VNumeratorPlusOne);
    let rep = negative_control("nc", "", &[Relation::DCommute], &r, &ctx(2, 3), &Settings::default(), &mut rng_for(1, "nc"));
    assert_eq!(rep.status, Status::Pass);
    assert!(rep.witness.is_some());
}

#[test]
fn shifted_v_keeps_two_particle_commutativity() {
    // d_1 + d_2 is swap symmetric, so a constant shift of v cancels in [d_1, d_2]
    let r = realization(2, 2, Sector::Reflection, Perturbation::VNumeratorPlusOne);
    let s = Settings::default();
    let rep = check_relation(Relation::DCommute, &r, &ctx(2, 2), &s, &mut rng_for(1, "nc"));
    assert_eq!(rep.status, Status::Pass);
    let rep = negative_control("nc", "", &[Relation::DCommute, Relation::PdExchange], &r, &ctx(2, 2), &s, &mut rng_for(1, "nc"));
    assert!(rep.witness.is_some());
    assert_eq!(rep.note.as_deref(), Some("witness in hecke-pd-exchange"));
}

#[test]
fn flipped_g_breaks_reflection_exchange() {
    let r = realization(2, 2, Sector::Reflection, Perturbation::GDenominatorFlip);
    let rep = negative_control("nc", "", &[Relation::QdExchange], &r, &ctx(2, 2), &Settings::default(), &mut rng_for(1, "nc"));
    assert!(rep.witness.is_some());
}

#[test]
fn unperturbed_control_finds_nothing() {
    let r = realization(2, 2, Sector::Reflection, Perturbation::None);
    let rep = negative_control("nc", "", &[Relation::DCommute], &r, &ctx(2, 2), &Settings::default(), &mut rng_for(1, "nc"));
    assert_eq!(rep.status, Status::Fail);
    assert!(rep.witness.is_none());
}

#[test]
fn linearity() {
    let r = realization(2, 2, Sector::Reflection, Perturbation::None);
    let rep = check_linearity(&r, &ctx(2, 2), &Settings::default(), &mut rng_for(2, "lin"));
    assert_eq!(rep.status, Status::Pass);
}

#[test]
fn coefficient_of_swap_term_at_a_point() {
    // d_2 on t_1 ⊗ e: the k<l term is beta t_2/(t_1 - t_2) * t_2
    let mut p = ModelParams::sample(2, 2);
    p.beta = Rat::from(7);
    let r = Realization::<Rat>::new(Coeffs::new(&p).unwrap(), Sector::Yangian, Perturbation::None);
    let psi = WaveFunction::monomial(SpaceLayout::particles(2, &[], 2), &[1, 0], &[0, 0]);
    let only_swap = PhysOp::compose(vec![
        PhysOp::Mul(ibench_core::dunkl::v_coeff(2, &p.beta, 1, 0)),
        PhysOp::Swap(0, 1),
    ]);
    let out = apply(&only_swap, &psi, &Guard::default()).unwrap();
    let v = out.eval(&[Rat::from(2), Rat::from(3)]).unwrap();
    // beta * 3/(2-3) * t_2 = -21 * 3
    assert_eq!(v.values().next().unwrap(), &Rat::from(-63));
    // the full operator is consistent with it
    let full = apply(r.dunkl(1).unwrap(), &psi, &Guard::default()).unwrap();
    assert!(!full.is_zero());
}

#[test]
fn mod_p_agrees_with_rationals() {
    let p = ModelParams::sample(2, 2);
    let rq = Realization::<Rat>::new(Coeffs::new(&p).unwrap(), Sector::Reflection, Perturbation::None);
    let rp = Realization::<Fp62>::new(Coeffs::new(&p).unwrap(), Sector::Reflection, Perturbation::None);
    let s = Settings { states: 2, points: 2, ..Settings::default() };
    for rel in Relation::ALL {
        let a = check_relation(rel, &rq, &ctx(2, 2), &s, &mut rng_for(9, rel.id()));
        let b = check_relation(rel, &rp, &ctx(2, 2), &s, &mut rng_for(9, rel.id()));
        assert_eq!(a.status, b.status);
    }
}
