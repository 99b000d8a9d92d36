//! Sparse multivariate Laurent polynomials.
//!
//! Exponent vectors are packed into a single `u128` (eight signed 16-bit
//! fields, variable 0 in the most significant field) so monomial products
//! are one wrapping add and the lexicographic order is integer order.

use std::cmp::Ordering;
use std::fmt;

use crate::field::Field;

/// Maximum number of variables a polynomial may carry.
pub const MAX_VARS: usize = 8;

const FIELD_BITS: u32 = 16;
const FIELD_MASK: u128 = 0xFFFF;
const FIELD_BIAS: u128 = 0x8000;
const ALL_BIAS: u128 = {
    let mut acc = 0u128;
    let mut i = 0;
    while i < MAX_VARS {
        acc |= FIELD_BIAS << (FIELD_BITS * i as u32);
        i += 1;
    }
    acc
};

/// A Laurent monomial `x_0^{e_0} ... x_7^{e_7}` with `|e_i| < 2^15`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(u128);

impl Mono {
    #[inline]
    fn shift(i: usize) -> u32 {
        FIELD_BITS * (MAX_VARS - 1 - i) as u32
    }

    pub const fn one() -> Mono {
        Mono(ALL_BIAS)
    }

    pub fn var(i: usize) -> Mono {
        Mono::one().with_exp(i, 1)
    }

    pub fn from_exps(exps: &[i32]) -> Mono {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        exps.iter()
            .enumerate()
            .fold(Mono::one(), |m, (i, &e)| m.with_exp(i, e))
    }

    #[inline]
    pub fn exp(self, i: usize) -> i32 {
        (((self.0 >> Self::shift(i)) & FIELD_MASK) as i64 - FIELD_BIAS as i64) as i32
    }

    #[inline]
    pub fn with_exp(self, i: usize, e: i32) -> Mono {
        assert!((-0x7FFF..=0x7FFF).contains(&e), "exponent out of range");
        let s = Self::shift(i);
        let cleared = self.0 & !(FIELD_MASK << s);
        Mono(cleared | (((e as i64 + FIELD_BIAS as i64) as u128) << s))
    }

    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        Mono(self.0.wrapping_add(o.0).wrapping_sub(ALL_BIAS))
    }

    #[inline]
    pub fn div(self, o: Mono) -> Mono {
        Mono(self.0.wrapping_sub(o.0).wrapping_add(ALL_BIAS))
    }

    pub fn inv(self) -> Mono {
        Mono::one().div(self)
    }

    pub fn pow(self, k: i32) -> Mono {
        let mut m = Mono::one();
        for i in 0..MAX_VARS {
            let e = self.exp(i);
            if e != 0 {
                m = m.with_exp(i, e * k);
            }
        }
        m
    }

    pub fn is_one(self) -> bool {
        self.0 == ALL_BIAS
    }

    pub fn exps(self, nvars: usize) -> Vec<i32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(self, o: Mono) -> Mono {
        let mut m = Mono::one();
        for i in 0..MAX_VARS {
            let e = self.exp(i).min(o.exp(i));
            if e != 0 {
                m = m.with_exp(i, e);
            }
        }
        m
    }

    pub fn total_degree(self, nvars: usize) -> i32 {
        (0..nvars).map(|i| self.exp(i)).sum()
    }

    /// Exponents all non-negative.
    pub fn is_polynomial(self, nvars: usize) -> bool {
        (0..nvars).all(|i| self.exp(i) >= 0)
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps(MAX_VARS))
    }
}

/// Image of one variable under a monomial substitution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarImage {
    /// `x_i -> x_j`
    Var(usize),
    /// `x_i -> 1/x_j`
    Inv(usize),
}

/// A substitution sending every variable to a variable or its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarMap {
    images: Vec<VarImage>,
}

impl VarMap {
    pub fn identity(nvars: usize) -> Self {
        VarMap {
            images: (0..nvars).map(VarImage::Var).collect(),
        }
    }

    pub fn swap(nvars: usize, i: usize, j: usize) -> Self {
        let mut m = Self::identity(nvars);
        m.images.swap(i, j);
        m
    }

    pub fn invert(nvars: usize, i: usize) -> Self {
        let mut m = Self::identity(nvars);
        m.images[i] = VarImage::Inv(i);
        m
    }

    pub fn from_images(images: Vec<VarImage>) -> Self {
        VarMap { images }
    }

    pub fn images(&self) -> &[VarImage] {
        &self.images
    }

    pub fn apply_mono(&self, m: Mono) -> Mono {
        let mut out = Mono::one();
        for (i, img) in self.images.iter().enumerate() {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let (j, s) = match *img {
                VarImage::Var(j) => (j, e),
                VarImage::Inv(j) => (j, -e),
            };
            out = out.with_exp(j, out.exp(j) + s);
        }
        out
    }
}

/// Sparse Laurent polynomial; terms sorted by descending monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<F: Field> {
    nvars: usize,
    terms: Vec<(Mono, F)>,
}

impl<F: Field> LaurentPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        LaurentPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(nvars, Mono::one(), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::monomial(nvars, Mono::var(i), F::one())
    }

    pub fn monomial(nvars: usize, m: Mono, c: F) -> Self {
        assert!(nvars <= MAX_VARS);
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            LaurentPoly {
                nvars,
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Mono, F)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => lc.add_assign(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        LaurentPoly { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, F)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value if this is a constant (including zero).
    pub fn constant_value(&self) -> Option<F> {
        match self.terms.as_slice() {
            [] => Some(F::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Leading (lexicographically largest) term.
    pub fn leading(&self) -> Option<&(Mono, F)> {
        self.terms.first()
    }

    /// Extends to more variables (new variables absent).
    pub fn with_nvars(mut self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars && nvars <= MAX_VARS);
        self.nvars = nvars;
        self
    }

    fn check(&self, o: &Self) {
        debug_assert_eq!(self.nvars, o.nvars, "variable count mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect(),
        }
    }

    /// Multiplication by `c * m`; monomial shifts preserve the term order.
    pub fn mul_term(&self, m: Mono, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, x)| (a.mul(m), x.mul(c)))
                .collect(),
        }
    }

    pub fn mul_mono(&self, m: Mono) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, x)| (a.mul(m), x.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars);
        }
        let (small, big) = if self.terms.len() <= o.terms.len() {
            (self, o)
        } else {
            (o, self)
        };
        if small.terms.len() <= 4 {
            let mut acc = big.mul_term(small.terms[0].0, &small.terms[0].1);
            for (m, c) in &small.terms[1..] {
                acc = acc.add(&big.mul_term(*m, c));
            }
            return acc;
        }
        let mut prods = Vec::with_capacity(small.terms.len() * big.terms.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                prods.push((ma.mul(*mb), ca.mul(cb)));
            }
        }
        Self::from_terms(self.nvars, prods)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Sum of many polynomials by pairwise merging.
    pub fn sum(nvars: usize, mut parts: Vec<Self>) -> Self {
        if parts.is_empty() {
            return Self::zero(nvars);
        }
        while parts.len() > 1 {
            let mut next = Vec::with_capacity(parts.len().div_ceil(2));
            let mut it = parts.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(a.add(&b)),
                    None => next.push(a),
                }
            }
            parts = next;
        }
        parts.pop().unwrap()
    }

    /// Evaluation at a point; `None` if a negative power of a zero coordinate occurs.
    pub fn eval(&self, point: &[F]) -> Option<F> {
        assert!(point.len() >= self.nvars, "point has too few coordinates");
        let mut acc = F::zero();
        let mut inv_cache: Vec<Option<Option<F>>> = vec![None; self.nvars];
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, slot) in inv_cache.iter_mut().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t.mul_assign(&point[i].pow(e as u32));
                } else if e < 0 {
                    let inv = slot.get_or_insert_with(|| point[i].inv()).clone()?;
                    t.mul_assign(&inv.pow(e.unsigned_abs()));
                }
            }
            acc.add_assign(&t);
        }
        Some(acc)
    }

    /// Applies a monomial substitution (variable permutations and inversions).
    pub fn substitute(&self, map: &VarMap) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (map.apply_mono(*m), c.clone()))
            .collect();
        Self::from_terms(self.nvars, terms)
    }

    /// `x_i * d/dx_i`, diagonal on monomials.
    pub fn euler(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exp(i);
                if e == 0 {
                    None
                } else {
                    Some((*m, c.mul(&F::from_i64(e as i64))))
                }
            })
            .collect();
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    pub fn min_mono(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::one(),
            Some((m0, _)) => it.fold(*m0, |acc, (m, _)| acc.gcd(*m)),
        }
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(i) != 0)
    }

    /// (min, max) exponent of variable `i`; `None` for the zero polynomial.
    pub fn degree_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.iter().map(|(m, _)| m.exp(i));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Splits by powers of variable `i`: returns `(e, coefficient)` pairs, `e` ascending.
    pub fn coefficients_in(&self, i: usize) -> Vec<(i32, Self)> {
        let mut buckets: std::collections::BTreeMap<i32, Vec<(Mono, F)>> = Default::default();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            buckets
                .entry(e)
                .or_default()
                .push((m.with_exp(i, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|(e, ts)| (e, Self::from_terms(self.nvars, ts)))
            .collect()
    }

    /// Exact division of polynomials (no negative exponents on either side).
    /// Returns `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.check(d);
        let (lm, lc) = d.leading()?.clone();
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            let qm = rm.div(lm);
            if !qm.is_polynomial(self.nvars) {
                return None;
            }
            let qc = rc.mul(&lc_inv);
            rem = rem.sub(&d.mul_term(qm, &qc));
            quot.push((qm, qc));
        }
        Some(Self::from_terms(self.nvars, quot))
    }

    /// Writes the polynomial with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for i in 0..self.nvars {
                let e = m.exp(i);
                let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{}^{}", name, e)),
                }
            }
            if factors.is_empty() {
                s.push_str(&mag);
            } else {
                if mag != "1" {
                    s.push_str(&mag);
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl<F: Field> fmt::Debug for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl<F: Field> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl<F: Field> PartialOrd for LaurentPoly<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> Ord for LaurentPoly<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars
            .cmp(&other.nvars)
            .then_with(|| self.terms.len().cmp(&other.terms.len()))
            .then_with(|| self.terms.cmp(&other.terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn p(nv: usize, terms: &[(&[i32], i64)]) -> LaurentPoly<Rat> {
        LaurentPoly::from_terms(
            nv,
            terms
                .iter()
                .map(|(e, c)| (Mono::from_exps(e), Rat::from(*c)))
                .collect(),
        )
    }

    #[test]
    fn mono_packing_roundtrip() {
        let m = Mono::from_exps(&[3, -2, 0, 7]);
        assert_eq!(m.exps(4), vec![3, -2, 0, 7]);
        let n = Mono::from_exps(&[-3, 5, 1, 0]);
        assert_eq!(m.mul(n).exps(4), vec![0, 3, 1, 7]);
        assert_eq!(m.div(n).exps(4), vec![6, -7, -1, 7]);
        assert!(m.mul(m.inv()).is_one());
        // lex order: variable 0 dominates
        assert!(Mono::from_exps(&[1, 0]) > Mono::from_exps(&[0, 9]));
        assert!(Mono::from_exps(&[0, -1]) < Mono::one());
    }

    #[test]
    fn product_and_cancellation() {
        // (t1 - t2)(t1 + t2) = t1^2 - t2^2
        let a = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let b = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(a.mul(&b), p(2, &[(&[2, 0], 1), (&[0, 2], -1)]));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn big_product_matches_small_path() {
        let a = p(2, &[(&[1, 0], 1), (&[0, 1], -1), (&[2, 1], 3), (&[0, 0], 2), (&[-1, 2], 5)]);
        let b = a.add(&p(2, &[(&[3, 3], 1)]));
        let direct = a.mul(&b);
        let mut acc = LaurentPoly::zero(2);
        for (m, c) in b.terms() {
            acc = acc.add(&a.mul_term(*m, c));
        }
        assert_eq!(direct, acc);
    }

    #[test]
    fn exact_division() {
        let a = p(2, &[(&[2, 0], 1), (&[0, 2], -1)]);
        let d = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(a.div_exact(&d), Some(p(2, &[(&[1, 0], 1), (&[0, 1], 1)])));
        let e = p(2, &[(&[1, 0], 1), (&[0, 0], 1)]);
        assert_eq!(a.div_exact(&e), None);
    }

    #[test]
    fn substitution_and_euler() {
        let f = p(2, &[(&[1, 2], 1)]);
        assert_eq!(f.substitute(&VarMap::swap(2, 0, 1)), p(2, &[(&[2, 1], 1)]));
        assert_eq!(f.substitute(&VarMap::invert(2, 0)), p(2, &[(&[-1, 2], 1)]));
        assert_eq!(p(1, &[(&[3], 1)]).euler(0), p(1, &[(&[3], 3)]));
        assert_eq!(p(1, &[(&[-1], 1)]).euler(0), p(1, &[(&[-1], -1)]));
    }

    #[test]
    fn evaluation_with_negative_powers() {
        let f = p(2, &[(&[1, -1], 2), (&[0, 0], 1)]);
        let v = f.eval(&[Rat::from(3), Rat::from(2)]).unwrap();
        assert_eq!(v, Rat::from(4));
        assert!(f.eval(&[Rat::from(3), Rat::from(0)]).is_none());
    }
}
