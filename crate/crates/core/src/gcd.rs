//! Multivariate polynomial GCD by recursive primitive remainder sequences.
//!
//! Only used on demand (strict canonical forms, series expansion); the hot
//! paths never call it.

use crate::field::Field;
use crate::poly::{LaurentPoly, Mono};

type Poly<F> = LaurentPoly<F>;

/// Scales so the lexicographically leading coefficient is one.
pub fn make_monic<F: Field>(p: &Poly<F>) -> Poly<F> {
    match p.leading() {
        None => p.clone(),
        Some((_, c)) => p.scale(&c.inv().expect("nonzero leading coefficient")),
    }
}

fn first_var_used<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Option<usize> {
    (0..a.nvars()).find(|&i| a.uses_var(i) || b.uses_var(i))
}

fn deg_in<F: Field>(p: &Poly<F>, x: usize) -> i32 {
    p.degree_range(x).map(|(_, hi)| hi).unwrap_or(-1)
}

fn lead_coeff_in<F: Field>(p: &Poly<F>, x: usize) -> Poly<F> {
    p.coefficients_in(x)
        .pop()
        .map(|(_, c)| c)
        .unwrap_or_else(|| Poly::zero(p.nvars()))
}

/// GCD of the coefficients of `p` viewed as a polynomial in `x`.
fn content_in<F: Field>(p: &Poly<F>, x: usize) -> Poly<F> {
    let mut g = Poly::zero(p.nvars());
    for (_, c) in p.coefficients_in(x) {
        g = gcd(&g, &c);
        if g.constant_value().is_some() && !g.is_zero() {
            break;
        }
    }
    g
}

fn primitive_in<F: Field>(p: &Poly<F>, x: usize) -> Poly<F> {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, x);
    p.div_exact(&c).expect("content divides polynomial")
}

/// Pseudo-remainder of `a` by `b` in variable `x`.
fn pseudo_rem<F: Field>(a: &Poly<F>, b: &Poly<F>, x: usize) -> Poly<F> {
    let m = deg_in(b, x);
    let lb = lead_coeff_in(b, x);
    let mut r = a.clone();
    loop {
        let dr = deg_in(&r, x);
        if r.is_zero() || dr < m {
            return r;
        }
        let lr = lead_coeff_in(&r, x);
        let shift = Mono::one().with_exp(x, dr - m);
        r = r.mul(&lb).sub(&lr.mul(b).mul_mono(shift));
    }
}

/// Greatest common divisor of two polynomials (non-negative exponents), monic.
pub fn gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    if a.is_zero() {
        return make_monic(b);
    }
    if b.is_zero() {
        return make_monic(a);
    }
    let x = match first_var_used(a, b) {
        None => return Poly::one(a.nvars()),
        Some(x) => x,
    };
    if !a.uses_var(x) {
        return gcd(a, &content_in(b, x));
    }
    if !b.uses_var(x) {
        return gcd(&content_in(a, x), b);
    }
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if deg_in(&p, x) < deg_in(&q, x) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_rem(&p, &q, x);
        if r.is_zero() {
            break;
        }
        if deg_in(&r, x) == 0 {
            q = Poly::one(a.nvars());
            break;
        }
        p = q;
        q = primitive_in(&r, x);
    }
    make_monic(&c.mul(&primitive_in(&q, x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp62, Rat};

    fn p(nv: usize, terms: &[(&[i32], i64)]) -> Poly<Rat> {
        Poly::from_terms(
            nv,
            terms
                .iter()
                .map(|(e, c)| (Mono::from_exps(e), Rat::from(*c)))
                .collect(),
        )
    }

    #[test]
    fn univariate_gcd() {
        // gcd(t^2 - 1, t^2 - 2t + 1) = t - 1
        let a = p(1, &[(&[2], 1), (&[0], -1)]);
        let b = p(1, &[(&[2], 1), (&[1], -2), (&[0], 1)]);
        assert_eq!(gcd(&a, &b), p(1, &[(&[1], 1), (&[0], -1)]));
    }

    #[test]
    fn bivariate_common_factor() {
        // a = (x - y)(x + 2), b = (x - y)(y^2 + 1)
        let xy = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let a = xy.mul(&p(2, &[(&[1, 0], 1), (&[0, 0], 2)]));
        let b = xy.mul(&p(2, &[(&[0, 2], 1), (&[0, 0], 1)]));
        assert_eq!(gcd(&a, &b), xy);
        let c = p(2, &[(&[1, 1], 1), (&[0, 0], -1)]);
        assert!(gcd(&a, &c).is_one());
    }

    #[test]
    fn trivariate_with_content() {
        // a = z (x y - 1)(x + z), b = z^2 (x y - 1)
        let f = p(3, &[(&[1, 1, 0], 1), (&[0, 0, 0], -1)]);
        let a = f.mul(&p(3, &[(&[1, 0, 1], 1), (&[0, 0, 2], 1)]));
        let b = f.mul(&p(3, &[(&[0, 0, 2], 1)]));
        assert_eq!(gcd(&a, &b), f.mul(&p(3, &[(&[0, 0, 1], 1)])));
    }

    #[test]
    fn prime_field_gcd() {
        let to_fp = |q: &Poly<Rat>| {
            Poly::<Fp62>::from_terms(
                q.nvars(),
                q.terms()
                    .iter()
                    .map(|(m, c)| (*m, Fp62::from_rational(&c.to_big()).unwrap()))
                    .collect(),
            )
        };
        let xy = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let a = xy.mul(&p(2, &[(&[1, 0], 3), (&[0, 0], 2)]));
        let b = xy.mul(&xy).mul(&p(2, &[(&[0, 1], 1), (&[0, 0], 5)]));
        assert_eq!(gcd(&to_fp(&a), &to_fp(&b)), to_fp(&xy));
    }
}
