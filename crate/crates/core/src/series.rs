//! Truncated Laurent expansions at infinity in one variable.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{LaurentPoly, Mono};
use crate::ratfunc::RatFunc;

/// `c_0 + c_1/u + ... + c_K/u^K` with coefficients free of `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct InfinitySeries<F: Field> {
    var: usize,
    coeffs: Vec<RatFunc<F>>,
}

impl<F: Field> InfinitySeries<F> {
    pub fn from_coeffs(var: usize, coeffs: Vec<RatFunc<F>>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        InfinitySeries { var, coeffs }
    }

    pub fn var(&self) -> usize {
        self.var
    }

    /// Truncation order `K`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `u^{-k}`; `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&RatFunc<F>> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[RatFunc<F>] {
        &self.coeffs
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.var, o.var, "series in different variables");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let k = self.order().min(o.order());
        InfinitySeries {
            var: self.var,
            coeffs: (0..=k).map(|i| self.coeffs[i].add(&o.coeffs[i])).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let k = self.order().min(o.order());
        let nv = self.coeffs[0].nvars();
        let coeffs = (0..=k)
            .map(|i| {
                let parts: Vec<RatFunc<F>> = (0..=i)
                    .map(|j| self.coeffs[j].mul(&o.coeffs[i - j]))
                    .collect();
                RatFunc::sum(nv, &parts)
            })
            .collect();
        InfinitySeries {
            var: self.var,
            coeffs,
        }
    }

    /// Value of the truncated sum at `u = at` and the other variables at `point`
    /// (the entry of `point` for `u` itself is ignored).
    pub fn eval_truncated(&self, at: &F, point: &[F]) -> Result<F> {
        let inv = at.inv().ok_or(Error::Pole)?;
        let mut acc = F::zero();
        let mut p = F::one();
        for c in &self.coeffs {
            acc.add_assign(&c.eval(point)?.mul(&p));
            p.mul_assign(&inv);
        }
        Ok(acc)
    }
}

/// Splits a Laurent polynomial into `(exponent of var, coefficient)` pairs.
fn split<F: Field>(p: &LaurentPoly<F>, var: usize) -> Vec<(i32, RatFunc<F>)> {
    p.coefficients_in(var)
        .into_iter()
        .map(|(e, c)| (e, RatFunc::from_poly(c)))
        .collect()
}

/// Expansion of `f` at `var = infinity` to order `k` (coefficients up to `var^{-k}`).
///
/// Fails when `f` grows at infinity. Coefficients are returned canonicalized.
pub fn expand_at_infinity<F: Field>(
    f: &RatFunc<F>,
    var: usize,
    k: usize,
) -> Result<InfinitySeries<F>> {
    let nv = f.nvars();
    if f.is_zero() {
        return Ok(InfinitySeries::from_coeffs(var, vec![RatFunc::zero(nv); k + 1]));
    }
    let g = f.canonical();
    let num = split(g.numerator(), var);
    let den = split(&g.denominator(), var);
    let a = num.last().map(|(e, _)| *e).unwrap();
    let b = den.last().map(|(e, _)| *e).unwrap();
    if a > b {
        return Err(Error::UnboundedAtInfinity { var });
    }
    // In s = 1/u: f = s^{b-a} * (sum_i n_{a-i} s^i) / (sum_j d_{b-j} s^j).
    let lookup = |parts: &[(i32, RatFunc<F>)], e: i32| {
        parts
            .iter()
            .find(|(x, _)| *x == e)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| RatFunc::zero(nv))
    };
    let shift = (b - a) as usize;
    let d0_inv = lookup(&den, b).inv()?;
    let mut q: Vec<RatFunc<F>> = Vec::with_capacity(k + 1);
    for i in 0..=k {
        if i < shift {
            q.push(RatFunc::zero(nv));
            continue;
        }
        let j = i - shift;
        let mut acc = lookup(&num, a - j as i32);
        for l in 1..=j {
            let dl = lookup(&den, b - l as i32);
            if !dl.is_zero() {
                acc = acc.sub(&dl.mul(&q[i - l]));
            }
        }
        q.push(acc.mul(&d0_inv).canonical());
    }
    Ok(InfinitySeries::from_coeffs(var, q))
}

/// The series of a function free of `var` (a constant series).
pub fn constant_series<F: Field>(c: RatFunc<F>, var: usize, k: usize) -> InfinitySeries<F> {
    let nv = c.nvars();
    let mut coeffs = vec![RatFunc::zero(nv); k + 1];
    coeffs[0] = c;
    InfinitySeries::from_coeffs(var, coeffs)
}

/// `u^{-1}` as a series, handy for building test cases.
pub fn inverse_var_series<F: Field>(nv: usize, var: usize, k: usize) -> InfinitySeries<F> {
    let mut coeffs = vec![RatFunc::zero(nv); k + 1];
    if k >= 1 {
        coeffs[1] = RatFunc::monomial(nv, Mono::one(), F::one());
    }
    InfinitySeries::from_coeffs(var, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn v(nv: usize, i: usize) -> RatFunc<Rat> {
        RatFunc::var(nv, i)
    }
    fn c(nv: usize, x: i64) -> RatFunc<Rat> {
        RatFunc::constant(nv, Rat::from(x))
    }

    #[test]
    fn geometric_series() {
        // u/(u - lam), vars (u, lam)
        let f = v(2, 0).div(&v(2, 0).sub(&v(2, 1))).unwrap();
        let s = expand_at_infinity(&f, 0, 2).unwrap();
        assert_eq!(s.coeff(0).unwrap(), &c(2, 1));
        assert_eq!(s.coeff(1).unwrap(), &v(2, 1));
        assert_eq!(s.coeff(2).unwrap(), &v(2, 1).mul(&v(2, 1)));
        assert!(s.coeff(3).is_none());
    }

    #[test]
    fn leading_zeros() {
        // 1/(u^2 - 1)
        let u = v(1, 0);
        let f = c(1, 1).div(&u.mul(&u).sub(&c(1, 1))).unwrap();
        let s = expand_at_infinity(&f, 0, 3).unwrap();
        let got: Vec<_> = s.coeffs().iter().map(|x| x.constant_value().unwrap()).collect();
        assert_eq!(got, vec![Rat::from(0), Rat::from(0), Rat::from(1), Rat::from(0)]);
    }

    #[test]
    fn unbounded_is_rejected() {
        let u = v(1, 0);
        let f = u.mul(&u).sub(&c(1, 1)).div(&u.sub(&c(1, 1))).unwrap();
        assert_eq!(
            expand_at_infinity(&f, 0, 2).unwrap_err(),
            Error::UnboundedAtInfinity { var: 0 }
        );
    }

    #[test]
    fn single_particle_sklyanin_factor() {
        // ((u+d)(-u+d))/((u+d-lam)(-u+d+lam)) = 1 + 2 lam/u + 3 lam^2/u^2 + ...
        // checked against direct polynomial long division in s = 1/u.
        let (u, d, lam) = (v(3, 0), v(3, 1), v(3, 2));
        let f = u
            .add(&d)
            .mul(&u.neg().add(&d))
            .div(&u.add(&d).sub(&lam).mul(&u.neg().add(&d).add(&lam)))
            .unwrap();
        let s = expand_at_infinity(&f, 0, 3).unwrap();
        assert_eq!(s.coeff(0).unwrap(), &c(3, 1));
        assert_eq!(s.coeff(1).unwrap(), &lam.scale(&Rat::from(2)));
        assert_eq!(s.coeff(2).unwrap(), &lam.mul(&lam).scale(&Rat::from(3)));
        let third = lam
            .mul(&lam)
            .mul(&lam)
            .scale(&Rat::from(4))
            .add(&lam.mul(&d).mul(&d).scale(&Rat::from(2)));
        assert_eq!(s.coeff(3).unwrap(), &third);
    }

    #[test]
    fn product_of_series_truncates() {
        let a = constant_series(c(1, 2), 0, 3);
        let b = inverse_var_series::<Rat>(1, 0, 2);
        let p = a.mul(&b);
        assert_eq!(p.order(), 2);
        assert_eq!(p.coeff(1).unwrap(), &c(1, 2));
    }
}
