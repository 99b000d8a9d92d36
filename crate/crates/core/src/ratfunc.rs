//! Rational functions with a factored denominator.
//!
//! A value is `num / prod(f_k^{e_k})` where `num` is a Laurent polynomial and
//! every `f_k` is a polynomial with no monomial content and leading
//! coefficient one. Sums take the least common multiple of the factor lists,
//! so the pole family of the Dunkl coefficients (`t_i - t_j`, `1 - t_i t_j`,
//! `t_i -+ 1`), which is closed under coordinate swaps and inversions, never
//! needs a GCD. [`RatFunc::canonical`] performs the full reduction.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gcd::gcd;
use crate::poly::{LaurentPoly, Mono, VarMap};

type Poly<F> = LaurentPoly<F>;

#[derive(Clone)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Vec<(Poly<F>, u32)>,
}

/// Splits `p = c * m * q` with `q` a polynomial without monomial content and
/// with leading coefficient one. `q` is `None` when it is the constant one.
fn split_factor<F: Field>(p: &Poly<F>) -> (F, Mono, Option<Poly<F>>) {
    let m = p.min_mono();
    let shifted = p.mul_mono(m.inv());
    let (_, lc) = shifted.leading().expect("nonzero factor").clone();
    let q = shifted.scale(&lc.inv().expect("nonzero"));
    if q.is_one() {
        (lc, m, None)
    } else {
        (lc, m, Some(q))
    }
}

fn merge_factor_lists<F: Field>(
    a: &[(Poly<F>, u32)],
    b: &[(Poly<F>, u32)],
    combine: impl Fn(u32, u32) -> u32,
) -> Vec<(Poly<F>, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, _) => std::cmp::Ordering::Greater,
        };
        match ord {
            std::cmp::Ordering::Less => {
                out.push((a[i].0.clone(), combine(a[i].1, 0)));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0.clone(), combine(0, b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0.clone(), combine(a[i].1, b[j].1)));
                i += 1;
                j += 1;
            }
        }
    }
    out.retain(|(_, e)| *e > 0);
    out
}

impl<F: Field> RatFunc<F> {
    pub fn zero(nvars: usize) -> Self {
        RatFunc {
            num: Poly::zero(nvars),
            den: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(Poly::var(nvars, i))
    }

    pub fn monomial(nvars: usize, m: Mono, c: F) -> Self {
        Self::from_poly(Poly::monomial(nvars, m, c))
    }

    pub fn from_poly(num: Poly<F>) -> Self {
        RatFunc {
            num,
            den: Vec::new(),
        }
    }

    /// `num / prod(factor^e)`; factors are normalized and merged.
    pub fn from_factors(num: Poly<F>, factors: &[(Poly<F>, u32)]) -> Result<Self> {
        let mut f = Self::from_poly(num);
        for (p, e) in factors {
            if p.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let inv = Self::inverse_of_poly(p);
            for _ in 0..*e {
                f = f.mul(&inv);
            }
        }
        Ok(f)
    }

    /// `1/p` for a nonzero polynomial.
    fn inverse_of_poly(p: &Poly<F>) -> Self {
        let (c, m, q) = split_factor(p);
        let num = Poly::monomial(p.nvars(), m.inv(), c.inv().expect("nonzero"));
        RatFunc {
            num,
            den: q.map(|q| vec![(q, 1)]).unwrap_or_default(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(Poly<F>, u32)] {
        &self.den
    }

    /// The expanded denominator polynomial.
    pub fn denominator(&self) -> Poly<F> {
        self.den
            .iter()
            .fold(Poly::one(self.nvars()), |acc, (f, e)| acc.mul(&f.pow(*e)))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn constant_value(&self) -> Option<F> {
        if self.den.is_empty() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Number of numerator terms, the size measure used by the degree guard.
    pub fn size(&self) -> usize {
        self.num.len()
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
        }
        self
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .normalized()
    }

    pub fn mul_mono(&self, m: Mono, c: &F) -> Self {
        RatFunc {
            num: self.num.mul_term(m, c),
            den: self.den.clone(),
        }
        .normalized()
    }

    /// Numerator rewritten over the denominator `lcm`.
    fn lift_num(&self, lcm: &[(Poly<F>, u32)]) -> Poly<F> {
        let mut num = self.num.clone();
        let mut k = 0;
        for (f, e) in lcm {
            let have = if k < self.den.len() && &self.den[k].0 == f {
                k += 1;
                self.den[k - 1].1
            } else {
                0
            };
            if *e > have {
                num = num.mul(&f.pow(e - have));
            }
        }
        num
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc {
                num: self.num.add(&o.num),
                den: self.den.clone(),
            }
            .normalized();
        }
        let lcm = merge_factor_lists(&self.den, &o.den, u32::max);
        let num = self.lift_num(&lcm).add(&o.lift_num(&lcm));
        RatFunc { num, den: lcm }.normalized()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Sum of many functions over one common denominator.
    pub fn sum(nvars: usize, parts: &[Self]) -> Self {
        let parts: Vec<&Self> = parts.iter().filter(|p| !p.is_zero()).collect();
        match parts.len() {
            0 => return Self::zero(nvars),
            1 => return parts[0].clone(),
            _ => {}
        }
        let mut lcm: Vec<(Poly<F>, u32)> = Vec::new();
        for p in &parts {
            lcm = merge_factor_lists(&lcm, &p.den, u32::max);
        }
        let nums = parts.iter().map(|p| p.lift_num(&lcm)).collect();
        RatFunc {
            num: Poly::sum(nvars, nums),
            den: lcm,
        }
        .normalized()
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFunc {
            num: self.num.mul(&o.num),
            den: merge_factor_lists(&self.den, &o.den, |a, b| a + b),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = Self::inverse_of_poly(&self.num);
        out.num = out.num.mul(&self.denominator());
        Ok(out)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Composition with a monomial substitution (swaps, inversions).
    pub fn substitute(&self, map: &VarMap) -> Self {
        let mut num = self.num.substitute(map);
        let mut den: Vec<(Poly<F>, u32)> = Vec::with_capacity(self.den.len());
        for (f, e) in &self.den {
            let g = f.substitute(map);
            let (c, m, q) = split_factor(&g);
            let scale = c.inv().expect("nonzero").pow(*e);
            num = num.mul_term(m.inv().pow(*e as i32), &scale);
            if let Some(q) = q {
                den.push((q, *e));
            }
        }
        den.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Poly<F>, u32)> = Vec::with_capacity(den.len());
        for (q, e) in den {
            match merged.last_mut() {
                Some((lq, le)) if *lq == q => *le += e,
                _ => merged.push((q, e)),
            }
        }
        RatFunc { num, den: merged }.normalized()
    }

    /// `x_i * d/dx_i` by the quotient rule on the factored denominator.
    pub fn euler_deriv(&self, i: usize) -> Self {
        let nv = self.nvars();
        let involved: Vec<usize> = (0..self.den.len())
            .filter(|&k| self.den[k].0.uses_var(i))
            .collect();
        if involved.is_empty() {
            return RatFunc {
                num: self.num.euler(i),
                den: self.den.clone(),
            }
            .normalized();
        }
        // d(N/prod f^e) = [E(N) prod_S f - N sum_k e_k E(f_k) prod_{S\k} f] / (D prod_S f)
        let prod_except = |skip: Option<usize>| {
            involved
                .iter()
                .filter(|&&k| Some(k) != skip)
                .fold(Poly::one(nv), |acc, &k| acc.mul(&self.den[k].0))
        };
        let mut terms = vec![self.num.euler(i).mul(&prod_except(None))];
        for &k in &involved {
            let (f, e) = &self.den[k];
            let ef = f.euler(i).scale(&F::from_i64(*e as i64));
            terms.push(self.num.mul(&ef).mul(&prod_except(Some(k))).neg());
        }
        let num = Poly::sum(nv, terms);
        let mut den = self.den.clone();
        for &k in &involved {
            den[k].1 += 1;
        }
        RatFunc { num, den }.normalized()
    }

    /// Exact value at a point.
    pub fn eval(&self, point: &[F]) -> Result<F> {
        let mut d = F::one();
        for (f, e) in &self.den {
            let v = f.eval(point).ok_or(Error::Pole)?;
            if v.is_zero() {
                return Err(Error::Pole);
            }
            d.mul_assign(&v.pow(*e));
        }
        let n = self.num.eval(point).ok_or(Error::Pole)?;
        Ok(n.mul(&d.inv().expect("nonzero")))
    }

    /// Cancels denominator factors that divide the numerator. Cheap relative
    /// to [`canonical`](Self::canonical) since it never computes a GCD.
    pub fn reduce_factors(&self) -> Self {
        if self.den.is_empty() || self.num.is_zero() {
            return self.clone();
        }
        let m = self.num.min_mono();
        let mut n0 = self.num.mul_mono(m.inv());
        let mut den = Vec::with_capacity(self.den.len());
        for (f, e) in &self.den {
            let mut e = *e;
            while e > 0 {
                match n0.div_exact(f) {
                    Some(q) => {
                        n0 = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                den.push((f.clone(), e));
            }
        }
        RatFunc {
            num: n0.mul_mono(m),
            den,
        }
    }

    /// Fully reduced form: numerator and (expanded, monic) denominator coprime.
    /// Equal functions have identical canonical forms.
    pub fn canonical(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero(self.nvars());
        }
        if self.den.is_empty() {
            return self.clone();
        }
        let m = self.num.min_mono();
        let n0 = self.num.mul_mono(m.inv());
        let d = self.denominator();
        let g = gcd(&n0, &d);
        let n1 = n0.div_exact(&g).expect("gcd divides numerator");
        let d1 = d.div_exact(&g).expect("gcd divides denominator");
        let (lc, dm, q) = split_factor(&d1);
        debug_assert!(dm.is_one());
        let num = n1.mul_term(m, &lc.inv().expect("nonzero"));
        RatFunc {
            num,
            den: q.map(|q| vec![(q, 1)]).unwrap_or_default(),
        }
    }

    /// Structural identity (after [`canonical`](Self::canonical) this is value identity).
    pub fn same_representation(&self, o: &Self) -> bool {
        self.num == o.num && self.den == o.den
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.den.is_empty() {
            return self.num.display_with(names);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(f, e)| {
                if *e == 1 {
                    format!("({})", f.display_with(names))
                } else {
                    format!("({})^{}", f.display_with(names), e)
                }
            })
            .collect();
        format!("({}) / {}", self.num.display_with(names), den.join("*"))
    }
}

impl<F: Field> PartialEq for RatFunc<F> {
    /// Exact value equality by cross multiplication.
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.sub(o).is_zero()
    }
}

impl<F: Field> Eq for RatFunc<F> {}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}
