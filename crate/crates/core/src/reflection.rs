//! Boundary monodromy, reflection equation, Sklyanin determinant and the
//! charges of its expansion at `u = infinity`.
//!
//! With `B(u) = 1 + b' Q / u` and `L(-u)^{-1} = (u - d - lambda P)/(u - d - lambda)`
//! the boundary monodromy `S(u) = T(u) B(u) Q T(-u)^{-1} Q` is polynomialized as
//!
//! `S^(u) = prod_i (u + d_i - lambda P_0i) (u + b' Q_0) Q_0 prod_{i desc} (u - d_i - lambda P_0i) Q_0`,
//!
//! `S^(u) = nu_S(u) S(u)`, `nu_S(u) = u prod_i (u + d_i - lambda)(u - d_i - lambda)`.

use std::time::Instant;

use rand_chacha::ChaCha8Rng;

use crate::check::{self, CheckReport, Context, Expect, Outcome, Sample, Settings};
use crate::dunkl::{quantum, Realization};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::phys::{apply, apply_polynomial, Guard, PhysOp};
use crate::poly::{LaurentPoly, Mono};
use crate::ratfunc::RatFunc;
use crate::sampling;
use crate::series::{expand_at_infinity, InfinitySeries};
use crate::spin::{antisymmetrizer, local_matrix, permutation, Label, SpaceLayout, SpinOperator, SpinVector};
use crate::wave::WaveFunction;
use crate::yangian::{qdet_antisym_apply, random_aux_front, symmetric_product};

fn q_aux<F: Field>(r: &Realization<F>, aux: Label) -> SpinOperator<F> {
    local_matrix(&r.coeffs.involution, aux).expect("valid involution")
}

fn p_aux<F: Field>(r: &Realization<F>, aux: Label, i: usize) -> SpinOperator<F> {
    permutation(r.n(), aux, quantum(i)).expect("distinct")
}

/// `w + b' Q` on one auxiliary space.
pub fn b_hat<F: Field>(r: &Realization<F>, aux: Label, w: &F) -> SpinOperator<F> {
    let layout = SpaceLayout::new(r.n(), vec![aux]).expect("layout");
    SpinOperator::identity(layout, w.clone())
        .add(&q_aux(r, aux).scale(&r.coeffs.b_prime))
        .expect("same layout")
}

/// `S^_aux(w)`.
pub fn s_hat<F: Field>(r: &Realization<F>, aux: Label, w: &F) -> PhysOp<F> {
    let lam = r.coeffs.lambda.neg();
    let mut ops = Vec::new();
    for i in 0..r.particles() {
        ops.push(PhysOp::sum(vec![
            PhysOp::Scalar(w.clone()),
            r.dunkl(i).expect("index").clone(),
            PhysOp::spin(p_aux(r, aux, i)).scaled(lam.clone()),
        ]));
    }
    ops.push(PhysOp::spin(b_hat(r, aux, w)));
    ops.push(PhysOp::spin(q_aux(r, aux)));
    for i in (0..r.particles()).rev() {
        ops.push(PhysOp::sum(vec![
            PhysOp::Scalar(w.clone()),
            r.dunkl(i).expect("index").clone().scaled(F::one().neg()),
            PhysOp::spin(p_aux(r, aux, i)).scaled(lam.clone()),
        ]));
    }
    ops.push(PhysOp::spin(q_aux(r, aux)));
    PhysOp::compose(ops)
}

/// `S^_aux(w) Lambda`.
pub fn s_hat_projected<F: Field>(r: &Realization<F>, aux: Label, w: &F) -> PhysOp<F> {
    PhysOp::compose(vec![s_hat(r, aux, w), r.lambda()])
}

/// `nu_S(w)` as a polynomial in the Dunkl operators.
pub fn nu_s<F: Field>(r: &Realization<F>, w: &F) -> LaurentPoly<F> {
    let lam = &r.coeffs.lambda;
    let nv = r.particles();
    let mut p = symmetric_product(nv, &[w.sub(lam)]);
    // (w - d - lambda) = -(d + (lambda - w))
    let minus = symmetric_product(nv, &[lam.sub(w)]);
    let sign = if nv % 2 == 0 { F::one() } else { F::one().neg() };
    p = p.mul(&minus).scale(&sign).scale(w);
    p
}

/// `w - lambda P_ab`.
fn r_hat<F: Field>(r: &Realization<F>, a: Label, b: Label, w: &F) -> SpinOperator<F> {
    let p = permutation::<F>(r.n(), a, b).expect("distinct");
    SpinOperator::identity(p.layout().clone(), w.clone())
        .add(&p.scale(&r.coeffs.lambda.neg()))
        .expect("same layout")
}

/// `Q_a (w - lambda P_ab) Q_a` on the layout `(a, b)`.
fn r_hat_conj<F: Field>(r: &Realization<F>, a: Label, b: Label, w: &F) -> SpinOperator<F> {
    let rr = r_hat(r, a, b, w);
    let q = q_aux(r, a).extend_to(rr.layout()).expect("extend");
    q.compose(&rr).and_then(|x| x.compose(&q)).expect("compose")
}

/// Reflection equation, polynomialized by `(u - v)(u + v)`:
/// `R(u-v) S_0(u) Q_0 R(u+v) Q_0 S_0'(v) = S_0'(v) Q_0 R(u+v) Q_0 S_0(u) R(u-v)`.
pub fn reflection_sides<F: Field>(
    r: &Realization<F>,
    projected: bool,
    u: &F,
    v: &F,
    psi: &WaveFunction<F>,
    guard: &Guard,
) -> Result<(WaveFunction<F>, WaveFunction<F>)> {
    let (a0, a1) = (Label::Aux(0), Label::Aux(1));
    let s = |l, x: &F| if projected { s_hat_projected(r, l, x) } else { s_hat(r, l, x) };
    let rm = PhysOp::spin(r_hat(r, a0, a1, &u.sub(v)));
    let mid = PhysOp::spin(r_hat_conj(r, a0, a1, &u.add(v)));
    let lhs = PhysOp::compose(vec![rm.clone(), s(a0, u), mid.clone(), s(a1, v)]);
    let rhs = PhysOp::compose(vec![s(a1, v), mid, s(a0, u), rm]);
    Ok((apply(&lhs, psi, guard)?, apply(&rhs, psi, guard)?))
}

pub fn check_reflection<F: Field>(
    r: &Realization<F>,
    projected: bool,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let (id, reference) = if projected {
        ("reflection-projected", "projected reflection equation for S Lambda")
    } else {
        ("reflection", "reflection equation for the Dunkl boundary monodromy")
    };
    let started = Instant::now();
    let out = reflection_outcome(r, projected, settings, rng);
    let mut rep = check::report(id, reference, ctx, Expect::Zero, started, out);
    rep.note = Some("normalization nu_S(u) nu_S(v) cancels (central); cleared factors (u-v)(u+v)".into());
    rep
}

fn reflection_outcome<F: Field>(
    r: &Realization<F>,
    projected: bool,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> Result<Outcome> {
    let g = settings.guard;
    check::run_states(rng, settings, |_, rr| {
        let (label, psi) = check::random_state::<F, _>(rr, r.n(), r.particles());
        let ui = sampling::spectral(rr, settings.sample_box);
        let vi = sampling::spectral(rr, settings.sample_box);
        let big = random_aux_front(rr, &[Label::Aux(0), Label::Aux(1)], &psi)?;
        let (l, rh) = reflection_sides(r, projected, &F::from_i64(ui), &F::from_i64(vi), &big, &g)?;
        Ok(vec![Sample::new(label, l, rh)
            .with_spectral("u", F::from_i64(ui))
            .with_spectral("v", F::from_i64(vi))])
    })
}

/// Projected reflection equation with parameters violating `b = -2 tau'' b'`
/// must fail.
pub fn check_reflection_b_control<F: Field>(
    r: &Realization<F>,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    let out = reflection_outcome(r, true, settings, rng);
    check::report(
        "negative-b-inconsistent",
        "projected reflection equation requires b = -2 tau'' b'",
        ctx,
        Expect::Witness,
        started,
        out,
    )
}

/// `B^(u) = u + b' Q` solves the reflection equation without quantum spaces.
pub fn check_boundary<F: Field>(
    r: &Realization<F>,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    let (a0, a1) = (Label::Aux(0), Label::Aux(1));
    let layout = SpaceLayout::new(r.n(), vec![a0, a1]).expect("layout");
    let mut witness = None;
    let mut samples = 0;
    for _ in 0..settings.states {
        let u = F::from_i64(sampling::spectral(rng, settings.sample_box));
        let v = F::from_i64(sampling::spectral(rng, settings.sample_box));
        let ext = |s: SpinOperator<F>| s.extend_to(&layout).expect("extend");
        let rm = r_hat(r, a0, a1, &u.sub(&v));
        let mid = r_hat_conj(r, a0, a1, &u.add(&v));
        let b0 = ext(b_hat(r, a0, &u));
        let b1 = ext(b_hat(r, a1, &v));
        let c = |x: &SpinOperator<F>, y: &SpinOperator<F>| x.compose(y).expect("compose");
        let lhs = c(&c(&c(&rm, &b0), &mid), &b1);
        let rhs = c(&c(&c(&b1, &mid), &b0), &rm);
        samples += 1;
        if lhs != rhs && witness.is_none() {
            witness = Some(check::Witness {
                state: "boundary matrix".into(),
                spectral: vec![format!("u={u}"), format!("v={v}")],
                point: Vec::new(),
                component: "matrix".into(),
                residual: "nonzero".into(),
            });
        }
    }
    check::report(
        "boundary-reflection",
        "boundary matrix 1 + b'Q/u solves the reflection equation",
        ctx,
        Expect::Zero,
        started,
        Ok(Outcome { samples, witness }),
    )
}

/// Eigen-relations of the projectors and their idempotence.
pub fn check_projectors<F: Field>(
    r: &Realization<F>,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    let g = settings.guard;
    let nv = r.particles();
    let t1 = r.coeffs.tau1.clone();
    let t2 = r.coeffs.tau2.clone();
    let out = check::run_states(rng, settings, |_, rr| {
        let (label, psi) = check::random_state::<F, _>(rr, r.n(), nv);
        let l1 = apply(&r.lambda1(), &psi, &g)?;
        let l2 = apply(&r.lambda2(), &psi, &g)?;
        let l = apply(&r.lambda(), &psi, &g)?;
        let mut out = Vec::new();
        for i in 0..nv {
            for j in i + 1..nv {
                let pp = PhysOp::compose(vec![r.p_spin(i, j), r.p_pos(i, j)]).scaled(t1.clone());
                out.push(Sample::new(format!("{label} [tau' P P, i={} j={}]", i + 1, j + 1), apply(&pp, &l1, &g)?, l1.clone()));
            }
        }
        for i in 0..nv {
            let qq = PhysOp::compose(vec![r.q_spin(i), r.q_pos(i)]).scaled(t2.clone());
            out.push(Sample::new(format!("{label} [tau'' Q Q, l={}]", i + 1), apply(&qq, &l2, &g)?, l2.clone()));
        }
        out.push(Sample::new(format!("{label} [Lambda1^2]"), apply(&r.lambda1(), &l1, &g)?, l1.clone()));
        out.push(Sample::new(format!("{label} [Lambda2^2]"), apply(&r.lambda2(), &l2, &g)?, l2.clone()));
        out.push(Sample::new(format!("{label} [Lambda^2]"), apply(&r.lambda(), &l, &g)?, l.clone()));
        out.push(Sample::new(format!("{label} [Lambda2 Lambda1]"), apply(&r.lambda2(), &l1, &g)?, l));
        Ok(out)
    });
    check::report(
        "projector-lemma",
        "projector eigen-relations (1 - tau' P P) Lambda1 = 0, (1 - tau'' Q Q) Lambda2 = 0, idempotence",
        ctx,
        Expect::Zero,
        started,
        out,
    )
}

/// `nu_S(w)` commutes with position swaps and reflections, so it is central
/// on wave functions.
pub fn check_nu_central<F: Field>(
    r: &Realization<F>,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    let g = settings.guard;
    let nv = r.particles();
    let out = check::run_states(rng, settings, |_, rr| {
        let (label, psi) = check::random_state::<F, _>(rr, r.n(), nv);
        let wi = sampling::spectral(rr, settings.sample_box);
        let w = F::from_i64(wi);
        let p = nu_s(r, &w);
        let mut gens: Vec<(String, PhysOp<F>)> = (0..nv.saturating_sub(1))
            .map(|i| (format!("P{}{}", i + 1, i + 2), r.p_pos(i, i + 1)))
            .collect();
        gens.extend((0..nv).map(|i| (format!("Q{}", i + 1), r.q_pos(i))));
        gens.into_iter()
            .map(|(name, op)| {
                let lhs = apply_polynomial(&p, r.dunkl_all(), &apply(&op, &psi, &g)?, &g)?;
                let rhs = apply(&op, &apply_polynomial(&p, r.dunkl_all(), &psi, &g)?, &g)?;
                Ok(Sample::new(format!("{label} [{name}]"), lhs, rhs).with_spectral("w", w.clone()))
            })
            .collect()
    });
    check::report(
        "nu-central",
        "normalization of the boundary monodromy commutes with swaps and reflections",
        ctx,
        Expect::Zero,
        started,
        out,
    )
}

fn copies(n: usize) -> Vec<Label> {
    (1..=n as u8).map(Label::Aux).collect()
}

/// `2u + lambda (2 - k - j)` for 1-based `k < j`.
fn r_arg<F: Field>(lam: &F, u: &F, k: usize, j: usize) -> F {
    u.mul(&F::from_i64(2)).add(&lam.mul(&F::from_i64(2 - k as i64 - j as i64)))
}

/// `u - (k - 1) lambda` for 1-based `k`.
fn s_arg<F: Field>(lam: &F, u: &F, k: usize) -> F {
    u.sub(&lam.mul(&F::from_i64(k as i64 - 1)))
}

fn factorial<F: Field>(n: usize) -> F {
    (2..=n).fold(F::one(), |a, k| a.mul(&F::from_i64(k as i64)))
}

/// Polynomialized Sklyanin determinant applied to `psi`: the coefficient of
/// `e_1 ⊗ ... ⊗ e_n` in
/// `A_n prod_k ( S^_k(u-(k-1)lambda) prod_{j>k} Q_k R^_kj(2u+lambda(2-k-j)) Q_k ) S^_n(u-(n-1)lambda)`
/// applied to `A_n(e_1 ⊗ ... ⊗ e_n) ⊗ psi`, divided by `n!`.
pub fn sdet_poly_apply<F: Field>(
    r: &Realization<F>,
    u: &F,
    psi: &WaveFunction<F>,
    projected: bool,
    guard: &Guard,
) -> Result<WaveFunction<F>> {
    let n = r.n();
    let lam = &r.coeffs.lambda;
    let labels = copies(n);
    let mut ops = vec![PhysOp::spin(antisymmetrizer::<F>(n, &labels)?)];
    for k in 1..=n {
        let w = s_arg(lam, u, k);
        ops.push(if projected {
            s_hat_projected(r, labels[k - 1], &w)
        } else {
            s_hat(r, labels[k - 1], &w)
        });
        for j in k + 1..=n {
            ops.push(PhysOp::spin(r_hat_conj(r, labels[k - 1], labels[j - 1], &r_arg(lam, u, k, j))));
        }
    }
    let digits: Vec<usize> = (0..n).collect();
    let a = antisymmetrizer::<F>(n, &labels)?;
    let start = psi.tensor_front(&labels, &digits)?.apply_spin(&a)?;
    let out = apply(&PhysOp::compose(ops), &start, guard)?;
    Ok(out
        .front_component(n, &digits)?
        .scale(&factorial::<F>(n).inv().expect("n! invertible")))
}

/// The same ordered product with `T = 1`: `S^ -> B^(w) = w + b'Q`.
pub fn theta_poly<F: Field>(r: &Realization<F>, u: &F) -> F {
    let n = r.n();
    let lam = &r.coeffs.lambda;
    let labels = copies(n);
    let layout = SpaceLayout::new(n, labels.clone()).expect("layout");
    let digits: Vec<usize> = (0..n).collect();
    let a = antisymmetrizer::<F>(n, &labels).expect("antisymmetrizer");
    let mut ops: Vec<SpinOperator<F>> = vec![a.clone()];
    for k in 1..=n {
        ops.push(b_hat(r, labels[k - 1], &s_arg(lam, u, k)));
        for j in k + 1..=n {
            ops.push(r_hat_conj(r, labels[k - 1], labels[j - 1], &r_arg(lam, u, k, j)));
        }
    }
    let mut v = a
        .apply(&SpinVector::basis(layout.clone(), &digits, F::one()))
        .expect("apply");
    for op in ops.iter().rev() {
        v = op.apply(&v).expect("apply");
    }
    v.get(layout.index(&digits))
        .cloned()
        .unwrap_or_else(F::zero)
        .mul(&factorial::<F>(n).inv().expect("n! invertible"))
}

/// `u`-degree of the polynomialized determinant.
pub fn sdet_degree(n: usize, particles: usize) -> usize {
    n * (2 * particles + 1) + n * (n - 1) / 2
}

/// `u`-degree of `theta_poly`.
pub fn theta_degree(n: usize) -> usize {
    n + n * (n - 1) / 2
}

/// Closed form: `sdet^ = theta^ prod_j (u + d_j)(u - d_j) prod_{k in 1..=n, k != n-1} (u + d_j - k lambda)(u - d_j - k lambda)`.
pub fn sdet_closed_poly<F: Field>(r: &Realization<F>, u: &F) -> LaurentPoly<F> {
    let n = r.n();
    let lam = &r.coeffs.lambda;
    let nv = r.particles();
    let mut plus = vec![u.clone()];
    let mut minus = vec![u.neg()];
    for k in (1..=n).filter(|&k| k != n - 1) {
        let kl = lam.mul(&F::from_i64(k as i64));
        plus.push(u.sub(&kl));
        minus.push(kl.sub(u));
    }
    // (u - d - k lambda) = -(d + (k lambda - u)); an even number of sign flips per particle
    let sign = if (minus.len() * nv) % 2 == 0 { F::one() } else { F::one().neg() };
    symmetric_product(nv, &plus)
        .mul(&symmetric_product(nv, &minus))
        .scale(&sign)
        .scale(&theta_poly(r, u))
}

pub fn check_sdet_closed<F: Field>(
    r: &Realization<F>,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    let g = settings.guard;
    let out = check::run_states(rng, settings, |_, rr| {
        let (label, psi) = check::random_state::<F, _>(rr, r.n(), r.particles());
        let ui = sampling::spectral(rr, settings.sample_box);
        let u = F::from_i64(ui);
        Ok(vec![Sample::new(
            label,
            sdet_poly_apply(r, &u, &psi, false, &g)?,
            apply_polynomial(&sdet_closed_poly(r, &u), r.dunkl_all(), &psi, &g)?,
        )
        .with_spectral("u", u)])
    });
    let mut rep = check::report(
        "sdet-closed-form",
        "Sklyanin determinant in closed product form",
        ctx,
        Expect::Zero,
        started,
        out,
    );
    rep.note = Some("compared after multiplying by prod_k nu_S(u-(k-1)lambda) and the R-matrix denominators".into());
    rep
}

/// `prod_{m<n} prod_j (w - m lambda + d_j - lambda)`.
fn mq<F: Field>(r: &Realization<F>, w: &F) -> LaurentPoly<F> {
    let lam = &r.coeffs.lambda;
    let shifts: Vec<F> = (0..r.n())
        .map(|m| w.sub(&lam.mul(&F::from_i64(m as i64 + 1))))
        .collect();
    symmetric_product(r.particles(), &shifts)
}

/// `prod_j prod_{k=1..n} (u + d_j - k lambda)(u - d_j - k lambda)`.
fn e_poly<F: Field>(r: &Realization<F>, u: &F) -> LaurentPoly<F> {
    let lam = &r.coeffs.lambda;
    let n = r.n();
    let nv = r.particles();
    let plus: Vec<F> = (1..=n).map(|k| u.sub(&lam.mul(&F::from_i64(k as i64)))).collect();
    let minus: Vec<F> = (1..=n).map(|k| lam.mul(&F::from_i64(k as i64)).sub(u)).collect();
    let sign = if (n * nv) % 2 == 0 { F::one() } else { F::one().neg() };
    symmetric_product(nv, &plus).mul(&symmetric_product(nv, &minus)).scale(&sign)
}

/// Sklyanin determinant through the quantum determinant,
/// `sdet S(u) = theta(u) qdet T(u) / qdet T(-u + (n-1) lambda)`, cleared of
/// every denominator:
/// `sdet^(u) qdet T^(w) Mq(u) = theta^(u) E(u) Mq(w) qdet T^(u)`, `w = -u + (n-1) lambda`.
pub fn check_sdet_center<F: Field>(
    r: &Realization<F>,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    let g = settings.guard;
    let lam = r.coeffs.lambda.clone();
    let n = r.n();
    let out = check::run_states(rng, settings, |_, rr| {
        let (label, psi) = check::random_state::<F, _>(rr, n, r.particles());
        let ui = sampling::spectral(rr, settings.sample_box);
        let u = F::from_i64(ui);
        let w = lam.mul(&F::from_i64(n as i64 - 1)).sub(&u);
        let d = r.dunkl_all();
        let lhs = {
            let x = apply_polynomial(&mq(r, &u), d, &psi, &g)?;
            let x = qdet_antisym_apply(r, &w, &x, false, &g)?;
            sdet_poly_apply(r, &u, &x, false, &g)?
        };
        let rhs = {
            let x = qdet_antisym_apply(r, &u, &psi, false, &g)?;
            let x = apply_polynomial(&mq(r, &w), d, &x, &g)?;
            apply_polynomial(&e_poly(r, &u), d, &x, &g)?.scale(&theta_poly(r, &u))
        };
        Ok(vec![Sample::new(label, lhs, rhs).with_spectral("u", u)])
    });
    let mut rep = check::report(
        "sdet-center-identity",
        "Sklyanin determinant in terms of the quantum determinant",
        ctx,
        Expect::Zero,
        started,
        out,
    );
    rep.note = Some("all normalizations cleared; every factor is a polynomial in the commuting Dunkl operators".into());
    rep
}

/// `sdet(S^ Lambda) = sdet(S^) Lambda`.
pub fn check_sdet_projected<F: Field>(
    r: &Realization<F>,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    let g = settings.guard;
    let out = check::run_states(rng, settings, |_, rr| {
        let (label, psi) = check::random_state::<F, _>(rr, r.n(), r.particles());
        let ui = sampling::spectral(rr, settings.sample_box);
        let u = F::from_i64(ui);
        let lhs = sdet_poly_apply(r, &u, &psi, true, &g)?;
        let rhs = sdet_poly_apply(r, &u, &apply(&r.lambda(), &psi, &g)?, false, &g)?;
        Ok(vec![Sample::new(label, lhs, rhs).with_spectral("u", u)])
    });
    check::report(
        "sdet-projected",
        "Sklyanin determinant of the projected boundary monodromy",
        ctx,
        Expect::Zero,
        started,
        out,
    )
}

/// `[sdet^(u), S^_0(v)] = 0` on states with one auxiliary space.
pub fn check_sdet_central<F: Field>(
    r: &Realization<F>,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    let g = settings.guard;
    let a0 = Label::Aux(0);
    let out = check::run_states(rng, settings, |_, rr| {
        let (label, psi) = check::random_state::<F, _>(rr, r.n(), r.particles());
        let u = F::from_i64(sampling::spectral(rr, settings.sample_box));
        let v = F::from_i64(sampling::spectral(rr, settings.sample_box));
        let big = random_aux_front(rr, &[a0], &psi)?;
        let s = s_hat(r, a0, &v);
        let lhs = sdet_poly_apply(r, &u, &apply(&s, &big, &g)?, false, &g)?;
        let rhs = apply(&s, &sdet_poly_apply(r, &u, &big, false, &g)?, &g)?;
        Ok(vec![Sample::new(label, lhs, rhs).with_spectral("u", u).with_spectral("v", v)])
    });
    check::report(
        "sdet-central",
        "Sklyanin determinant commutes with every boundary monodromy entry",
        ctx,
        Expect::Zero,
        started,
        out,
    )
}

/// Solves the Vandermonde system: coefficients `c_m` with `sum_m c_m x_i^m = y_i`,
/// as weights `w[m][i]` so that `c_m = sum_i w[m][i] y_i`.
pub fn interpolation_weights<F: Field>(xs: &[F]) -> Vec<Vec<F>> {
    let k = xs.len();
    // augmented [V | I]
    let mut a: Vec<Vec<F>> = xs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let mut row: Vec<F> = (0..k).map(|m| x.pow(m as u32)).collect();
            row.extend((0..k).map(|j| if i == j { F::one() } else { F::zero() }));
            row
        })
        .collect();
    for col in 0..k {
        let p = (col..k).find(|&r| !a[r][col].is_zero()).expect("distinct nodes");
        a.swap(col, p);
        let inv = a[col][col].inv().expect("pivot");
        for c in 0..2 * k {
            a[col][c] = a[col][c].mul(&inv);
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * k {
                    let x = a[col][c].mul(&f);
                    a[r][c] = a[r][c].sub(&x);
                }
            }
        }
    }
    // V^{-1}: row m gives the weights of c_m
    a.into_iter().map(|row| row[k..].to_vec()).collect()
}

/// The full normalization `prod_k nu_S(u - (k-1) lambda) prod_{k<j} (2u + lambda(2-k-j))`
/// as a rational function of `(x_1..x_N, u)`, inverted.
fn inverse_normalization<F: Field>(r: &Realization<F>) -> Result<RatFunc<F>> {
    let nv = r.particles();
    let total = nv + 1;
    let lam = &r.coeffs.lambda;
    let n = r.n();
    let uvar = LaurentPoly::var(total, nv);
    let konst = |c: F| LaurentPoly::constant(total, c);
    let x = |j: usize| LaurentPoly::var(total, j);
    let mut factors: Vec<(LaurentPoly<F>, u32)> = Vec::new();
    for k in 1..=n {
        let w = uvar.sub(&konst(lam.mul(&F::from_i64(k as i64 - 1))));
        factors.push((w.clone(), 1));
        for j in 0..nv {
            let base = w.sub(&konst(lam.clone()));
            factors.push((base.add(&x(j)), 1));
            factors.push((base.sub(&x(j)), 1));
        }
        for j in k + 1..=n {
            let arg = uvar
                .scale(&F::from_i64(2))
                .add(&konst(lam.mul(&F::from_i64(2 - k as i64 - j as i64))));
            factors.push((arg, 1));
        }
    }
    RatFunc::from_factors(LaurentPoly::one(total), &factors)
}

/// `theta(u) = theta^(u) / (prod_k (u - (k-1) lambda) prod_{k<j} (2u + lambda(2-k-j)))`
/// expanded at infinity to order `order`.
pub fn theta_series<F: Field>(r: &Realization<F>, order: usize) -> Result<Vec<F>> {
    let n = r.n();
    let lam = &r.coeffs.lambda;
    let deg = theta_degree(n);
    let xs: Vec<F> = (1..=deg + 1).map(|i| F::from_i64(i as i64)).collect();
    let ys: Vec<F> = xs.iter().map(|u| theta_poly(r, u)).collect();
    let w = interpolation_weights(&xs);
    let coeffs: Vec<(Mono, F)> = (0..=deg)
        .map(|m| {
            let c = w[m].iter().zip(&ys).fold(F::zero(), |a, (wi, y)| a.add(&wi.mul(y)));
            (Mono::var(0).pow(m as i32), c)
        })
        .collect();
    let num = LaurentPoly::from_terms(1, coeffs);
    let u = LaurentPoly::var(1, 0);
    let mut den = Vec::new();
    for k in 1..=n {
        den.push((u.sub(&LaurentPoly::constant(1, lam.mul(&F::from_i64(k as i64 - 1)))), 1));
        for j in k + 1..=n {
            den.push((
                u.scale(&F::from_i64(2))
                    .add(&LaurentPoly::constant(1, lam.mul(&F::from_i64(2 - k as i64 - j as i64)))),
                1,
            ));
        }
    }
    let f = RatFunc::from_factors(num, &den)?;
    let s = expand_at_infinity(&f, 0, order)?;
    s.coeffs()
        .iter()
        .map(|c| {
            c.constant_value().ok_or(Error::InvalidParams {
                field: "theta".into(),
                reason: "non-constant series coefficient".into(),
            })
        })
        .collect()
}

/// Coefficients `u^0 .. u^{-order}` of the normalized Sklyanin determinant
/// applied to `psi`, from the ordered product: the polynomial `sdet^(u) psi`
/// is interpolated in `u` and multiplied by the expansion of the inverse
/// normalization, whose coefficients are polynomials in the Dunkl operators.
pub fn sdet_series_apply<F: Field>(
    r: &Realization<F>,
    psi: &WaveFunction<F>,
    order: usize,
    guard: &Guard,
) -> Result<Vec<WaveFunction<F>>> {
    let nv = r.particles();
    let deg = sdet_degree(r.n(), nv);
    let xs: Vec<F> = (1..=deg + 1).map(|i| F::from_i64(i as i64)).collect();
    let values = xs
        .iter()
        .map(|u| sdet_poly_apply(r, u, psi, false, guard))
        .collect::<Result<Vec<_>>>()?;
    let w = interpolation_weights(&xs);
    let coeff_states = (0..=deg)
        .map(|m| {
            let parts: Vec<WaveFunction<F>> = w[m].iter().zip(&values).map(|(c, y)| y.scale(c)).collect();
            WaveFunction::sum(psi.layout().clone(), psi.nvars(), parts)
        })
        .collect::<Result<Vec<_>>>()?;
    let inv = inverse_normalization(r)?;
    let series: InfinitySeries<F> = expand_at_infinity(&inv, nv, deg + order)?;
    let mut ops: Vec<PhysOp<F>> = r.dunkl_all().to_vec();
    ops.push(PhysOp::Identity);
    (0..=order)
        .map(|k| {
            let mut parts = Vec::new();
            for (m, cm) in coeff_states.iter().enumerate() {
                let b = series.coeff(k + m).expect("order covers degree");
                if b.is_zero() {
                    continue;
                }
                if !b.is_polynomial() {
                    return Err(Error::InvalidParams {
                        field: "normalization".into(),
                        reason: "series coefficient is not polynomial".into(),
                    });
                }
                parts.push(apply_polynomial(b.numerator(), &ops, cm, guard)?);
            }
            WaveFunction::sum(psi.layout().clone(), psi.nvars(), parts)
        })
        .collect()
}

/// Expected series coefficients (orders 0..=3) given `theta_0..3` and `H psi`.
fn dev_sdet_expected<F: Field>(
    r: &Realization<F>,
    theta: &[F],
    psi: &WaveFunction<F>,
    h_psi: &WaveFunction<F>,
) -> Result<Vec<WaveFunction<F>>> {
    let n = F::from_i64(r.n() as i64);
    let big_n = F::from_i64(r.particles() as i64);
    let c = n.sub(&F::one()).mul(&r.coeffs.lambda);
    let two = F::from_i64(2);
    let a1 = two.mul(&c).mul(&big_n);
    let a2 = c.mul(&c).mul(&big_n).mul(&two.mul(&big_n).add(&F::one()));
    let a3 = c
        .pow(3)
        .mul(&two)
        .mul(&big_n)
        .mul(&big_n.add(&F::one()))
        .mul(&two.mul(&big_n).add(&F::one()))
        .mul(&F::from_i64(3).inv().expect("3 invertible"));
    let s0 = theta[0].clone();
    let s1 = theta[1].add(&a1.mul(&theta[0]));
    let s2 = theta[2].add(&a1.mul(&theta[1])).add(&a2.mul(&theta[0]));
    let s3 = theta[3]
        .add(&a1.mul(&theta[2]))
        .add(&a2.mul(&theta[1]))
        .add(&a3.mul(&theta[0]));
    let hc = two.mul(&c).mul(&theta[0]);
    Ok(vec![
        psi.scale(&s0),
        psi.scale(&s1),
        psi.scale(&s2),
        psi.scale(&s3).add(&h_psi.scale(&hc))?,
    ])
}

/// Series coefficients of orders 0..3 against the expansion formula; also
/// `theta_0 = 1`.
pub fn check_sdet_series<F: Field>(
    r: &Realization<F>,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    let g = settings.guard;
    let out = (|| {
        let theta = theta_series(r, 3)?;
        if !theta[0].is_one() {
            return Ok(Outcome {
                samples: 0,
                witness: Some(check::Witness {
                    state: "theta".into(),
                    spectral: Vec::new(),
                    point: Vec::new(),
                    component: "theta_0".into(),
                    residual: theta[0].to_string(),
                }),
            });
        }
        let h = r.hamiltonian();
        check::run_states(rng, settings, |_, rr| {
            let (label, psi) = check::random_state::<F, _>(rr, r.n(), r.particles());
            let got = sdet_series_apply(r, &psi, 3, &g)?;
            let want = dev_sdet_expected(r, &theta, &psi, &apply(&h, &psi, &g)?)?;
            Ok(got
                .into_iter()
                .zip(want)
                .enumerate()
                .map(|(k, (a, b))| Sample::new(format!("{label} [u^-{k}]"), a, b))
                .collect())
        })
    })();
    let mut rep = check::report(
        "sdet-series",
        "expansion of the Sklyanin determinant at infinity to order u^-3",
        ctx,
        Expect::Zero,
        started,
        out,
    );
    rep.note = Some("theta_j from the T = 1 product; Hamiltonian term enters as 2 (n-1) lambda theta_0 H".into());
    rep
}

/// `H` extracted from the `u^-3` coefficient equals `sum_i d_i^2`.
pub fn check_hamiltonian_extraction<F: Field>(
    r: &Realization<F>,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    let g = settings.guard;
    let out = (|| {
        let theta = theta_series(r, 3)?;
        let c = F::from_i64(r.n() as i64 - 1).mul(&r.coeffs.lambda);
        let scale = F::from_i64(2)
            .mul(&c)
            .mul(&theta[0])
            .inv()
            .ok_or(Error::InvalidParams {
                field: "lambda".into(),
                reason: "Hamiltonian extraction needs (n-1) lambda != 0".into(),
            })?;
        let h = r.hamiltonian();
        check::run_states(rng, settings, |_, rr| {
            let (label, psi) = check::random_state::<F, _>(rr, r.n(), r.particles());
            let got = sdet_series_apply(r, &psi, 3, &g)?;
            let zero_h = psi.scale(&F::zero());
            let want = dev_sdet_expected(r, &theta, &psi, &zero_h)?;
            let extracted = got[3].sub(&want[3])?.scale(&scale);
            Ok(vec![Sample::new(label, extracted, apply(&h, &psi, &g)?)])
        })
    })();
    check::report(
        "sdet-hamiltonian",
        "Hamiltonian sum_i d_i^2 from the u^-3 coefficient of the Sklyanin determinant",
        ctx,
        Expect::Zero,
        started,
        out,
    )
}

/// Charges `I_k`: coefficient of `u^{-(k+1)}` in `prod_j f(d_j)` with
/// `f(x) = (u+x)(-u+x) / ((u+x-(n-1)lambda)(-u+x+(n-1)lambda))`, i.e. the
/// normalized determinant with `theta` divided out, as polynomials in the
/// Dunkl operators.
pub fn charges<F: Field>(r: &Realization<F>, kmax: usize) -> Result<Vec<LaurentPoly<F>>> {
    let nv = r.particles();
    let total = nv + 1;
    let c = F::from_i64(r.n() as i64 - 1).mul(&r.coeffs.lambda);
    let u = LaurentPoly::var(total, nv);
    let konst = |x: F| LaurentPoly::constant(total, x);
    let mut num = LaurentPoly::one(total);
    let mut den = Vec::new();
    for j in 0..nv {
        let x = LaurentPoly::var(total, j);
        // (u^2 - x^2) / ((u - c)^2 - x^2)
        num = num.mul(&u.mul(&u).sub(&x.mul(&x)));
        let uc = u.sub(&konst(c.clone()));
        den.push((uc.add(&x), 1));
        den.push((uc.sub(&x), 1));
    }
    let f = RatFunc::from_factors(num, &den)?;
    let s = expand_at_infinity(&f, nv, kmax + 1)?;
    (0..=kmax)
        .map(|k| {
            let cf = s.coeff(k + 1).expect("order");
            if !cf.is_polynomial() {
                return Err(Error::InvalidParams {
                    field: "charges".into(),
                    reason: "non-polynomial coefficient".into(),
                });
            }
            Ok(cf.numerator().clone())
        })
        .collect()
}

/// Applies a polynomial in `(d_1..d_N, u)` (no `u` dependence) to a state.
pub fn apply_d_poly<F: Field>(
    r: &Realization<F>,
    p: &LaurentPoly<F>,
    psi: &WaveFunction<F>,
    guard: &Guard,
) -> Result<WaveFunction<F>> {
    let mut ops: Vec<PhysOp<F>> = r.dunkl_all().to_vec();
    while ops.len() < p.nvars() {
        ops.push(PhysOp::Identity);
    }
    apply_polynomial(p, &ops, psi, guard)
}

/// The charge polynomials reproduce the ordered-product series on states:
/// with `theta` removed, coefficient `k+1` of the series equals `I_k psi`.
pub fn check_charges_match_series<F: Field>(
    r: &Realization<F>,
    kmax: usize,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    let g = settings.guard;
    let out = (|| {
        let theta = theta_series(r, kmax + 1)?;
        let cs = charges(r, kmax)?;
        check::run_states(rng, settings, |_, rr| {
            let (label, psi) = check::random_state::<F, _>(rr, r.n(), r.particles());
            let got = sdet_series_apply(r, &psi, kmax + 1, &g)?;
            // series = theta(u) * (1 + sum_k I_k u^{-k-1})
            let charge_states: Vec<WaveFunction<F>> = std::iter::once(Ok(psi.clone()))
                .chain(cs.iter().map(|p| apply_d_poly(r, p, &psi, &g)))
                .collect::<Result<_>>()?;
            (0..=kmax + 1)
                .map(|m| {
                    let parts: Vec<WaveFunction<F>> =
                        (0..=m).map(|i| charge_states[i].scale(&theta[m - i])).collect();
                    let want = WaveFunction::sum(psi.layout().clone(), psi.nvars(), parts)?;
                    Ok(Sample::new(format!("{label} [u^-{m}]"), got[m].clone(), want))
                })
                .collect()
        })
    })();
    check::report(
        "charges-series",
        "charge polynomials reproduce the ordered-product expansion of the Sklyanin determinant",
        ctx,
        Expect::Zero,
        started,
        out,
    )
}

/// `I_0 = 2 lambda (n-1) N`.
pub fn check_i0<F: Field>(r: &Realization<F>, ctx: &Context) -> CheckReport {
    let started = Instant::now();
    let out = charges(r, 0).map(|cs| {
        let want = F::from_i64(2 * (r.n() as i64 - 1) * r.particles() as i64).mul(&r.coeffs.lambda);
        let ok = cs[0].constant_value() == Some(want.clone()) || (want.is_zero() && cs[0].is_zero());
        Outcome {
            samples: 1,
            witness: (!ok).then(|| check::Witness {
                state: "charge I_0".into(),
                spectral: Vec::new(),
                point: Vec::new(),
                component: "scalar".into(),
                residual: format!("{:?} != {}", cs[0].constant_value(), want),
            }),
        }
    });
    check::report("charge-i0", "lowest charge I_0 = 2 lambda (n-1) N", ctx, Expect::Zero, started, out)
}

/// `[I_k Lambda, I_l Lambda] psi = 0` and `[I_k Lambda, H_Lambda] psi = 0`.
pub fn check_charges_commute<F: Field>(
    r: &Realization<F>,
    h_lambda: &PhysOp<F>,
    kmax: usize,
    ctx: &Context,
    settings: &Settings,
    rng: &mut ChaCha8Rng,
) -> CheckReport {
    let started = Instant::now();
    let g = settings.guard;
    let lam = r.lambda();
    let out = (|| {
        let cs = charges(r, kmax)?;
        check::run_states(rng, settings, |_, rr| {
            let (label, psi) = check::random_state::<F, _>(rr, r.n(), r.particles());
            let il = |k: usize, x: &WaveFunction<F>| -> Result<WaveFunction<F>> {
                apply_d_poly(r, &cs[k], &apply(&lam, x, &g)?, &g)
            };
            let hl = |x: &WaveFunction<F>| apply(h_lambda, x, &g);
            // I_k Lambda psi, cached
            let first: Vec<WaveFunction<F>> = (0..=kmax).map(|k| il(k, &psi)).collect::<Result<_>>()?;
            let mut out = Vec::new();
            for k in 0..=kmax {
                for l in k + 1..=kmax {
                    out.push(Sample::new(
                        format!("{label} [I{k}, I{l}]"),
                        il(k, &first[l])?,
                        il(l, &first[k])?,
                    ));
                }
                out.push(Sample::new(
                    format!("{label} [I{k}, H]"),
                    il(k, &hl(&psi)?)?,
                    hl(&first[k])?,
                ));
            }
            Ok(out)
        })
    })();
    check::report(
        "charges-commute",
        "charges I_k Lambda commute with each other and with H_Lambda",
        ctx,
        Expect::Zero,
        started,
        out,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::params::{Coeffs, ModelParams, Perturbation, Sector};

    fn real(n: usize, nn: usize) -> Realization<Rat> {
        let p = ModelParams::sample(n, nn);
        Realization::new(Coeffs::new(&p).unwrap(), Sector::Reflection, Perturbation::None)
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let xs: Vec<Rat> = (1..=4).map(Rat::from).collect();
        let w = interpolation_weights(&xs);
        // y = 2 - x + 3 x^3
        let ys: Vec<Rat> = xs
            .iter()
            .map(|x| Rat::from(2).sub(x).add(&x.pow(3).mul(&Rat::from(3))))
            .collect();
        let c: Vec<Rat> = (0..4)
            .map(|m| w[m].iter().zip(&ys).fold(Rat::from(0), |a, (p, q)| a.add(&p.mul(q))))
            .collect();
        assert_eq!(c, vec![Rat::from(2), Rat::from(-1), Rat::from(0), Rat::from(3)]);
    }

    #[test]
    fn theta_leading_coefficient_is_one() {
        let t = theta_series(&real(2, 1), 3).unwrap();
        assert!(t[0].is_one());
    }

    #[test]
    fn charge_i0_and_low_orders() {
        let r = real(2, 2);
        let cs = charges(&r, 2).unwrap();
        let c = r.coeffs.lambda.clone();
        assert_eq!(cs[0].constant_value(), Some(c.mul(&Rat::from(4))));
        // I_1 = c^2 N (2N+1) = 10 c^2, no d dependence
        assert_eq!(cs[1].constant_value(), Some(c.mul(&c).mul(&Rat::from(10))));
        // I_2 contains 2 c (d_1^2 + d_2^2)
        let m = Mono::var(0).pow(2);
        let coeff = cs[2].terms().iter().find(|(x, _)| *x == m).map(|(_, v)| v.clone());
        assert_eq!(coeff, Some(c.mul(&Rat::from(2))));
    }
}
