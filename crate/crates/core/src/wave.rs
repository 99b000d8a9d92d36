//! Wavefunctions: rational coordinate parts attached to spin basis vectors.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Mono, VarMap};
use crate::ratfunc::RatFunc;
use crate::spin::{Embedding, Label, SpaceLayout, SpinOperator};

/// `sum_s f_s(t_1..t_N) e_s`, one coordinate function per spin basis vector.
#[derive(Clone, PartialEq)]
pub struct WaveFunction<F: Field> {
    layout: SpaceLayout,
    nvars: usize,
    comps: BTreeMap<u32, RatFunc<F>>,
}

impl<F: Field> WaveFunction<F> {
    pub fn zero(layout: SpaceLayout, nvars: usize) -> Self {
        WaveFunction {
            layout,
            nvars,
            comps: BTreeMap::new(),
        }
    }

    /// `f ⊗ e_{digits}` (digits 0-based).
    pub fn basis(layout: SpaceLayout, nvars: usize, digits: &[usize], f: RatFunc<F>) -> Self {
        let mut w = Self::zero(layout, nvars);
        let i = w.layout.index(digits);
        w.insert(i, f);
        w
    }

    /// Laurent monomial `t^exps` times a spin basis vector.
    pub fn monomial(layout: SpaceLayout, exps: &[i32], digits: &[usize]) -> Self {
        let nv = exps.len();
        let f = RatFunc::monomial(nv, Mono::from_exps(exps), F::one());
        Self::basis(layout, nv, digits, f)
    }

    pub fn from_components(
        layout: SpaceLayout,
        nvars: usize,
        comps: impl IntoIterator<Item = (u32, RatFunc<F>)>,
    ) -> Self {
        let mut w = Self::zero(layout, nvars);
        for (i, f) in comps {
            w.add_component(i, f);
        }
        w
    }

    fn insert(&mut self, i: u32, f: RatFunc<F>) {
        if !f.is_zero() {
            self.comps.insert(i, f);
        }
    }

    fn add_component(&mut self, i: u32, f: RatFunc<F>) {
        if f.is_zero() {
            return;
        }
        match self.comps.remove(&i) {
            Some(g) => self.insert(i, g.add(&f)),
            None => self.insert(i, f),
        }
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &BTreeMap<u32, RatFunc<F>> {
        &self.comps
    }

    pub fn component(&self, i: u32) -> Option<&RatFunc<F>> {
        self.comps.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Total numerator term count, the measure the degree guard watches.
    pub fn size(&self) -> usize {
        self.comps.values().map(|f| f.size()).sum()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.layout != o.layout || self.nvars != o.nvars {
            return Err(Error::LayoutMismatch(format!(
                "wavefunction layouts {:?} and {:?}",
                self.layout.labels(),
                o.layout.labels()
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (i, f) in &o.comps {
            out.add_component(*i, f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&F::one().neg()))
    }

    /// Sum of many wavefunctions, one common-denominator sum per component.
    pub fn sum(layout: SpaceLayout, nvars: usize, parts: Vec<Self>) -> Result<Self> {
        let mut buckets: BTreeMap<u32, Vec<RatFunc<F>>> = BTreeMap::new();
        for p in parts {
            if p.layout != layout || p.nvars != nvars {
                return Err(Error::LayoutMismatch("summands have different layouts".into()));
            }
            for (i, f) in p.comps {
                buckets.entry(i).or_default().push(f);
            }
        }
        let mut out = Self::zero(layout, nvars);
        for (i, fs) in buckets {
            let f = if fs.len() == 1 {
                fs.into_iter().next().unwrap()
            } else {
                RatFunc::sum(nvars, &fs)
            };
            out.insert(i, f);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.layout.clone(), self.nvars);
        }
        self.map_coords(|f| f.scale(c))
    }

    pub fn map_coords(&self, g: impl Fn(&RatFunc<F>) -> RatFunc<F>) -> Self {
        let mut out = Self::zero(self.layout.clone(), self.nvars);
        for (i, f) in &self.comps {
            out.insert(*i, g(f));
        }
        out
    }

    /// Multiplication by a coordinate function.
    pub fn mul_coord(&self, h: &RatFunc<F>) -> Self {
        self.map_coords(|f| f.mul(h))
    }

    /// Position swap `t_i <-> t_j` (0-based variables).
    pub fn swap(&self, i: usize, j: usize) -> Self {
        let m = VarMap::swap(self.nvars, i, j);
        self.map_coords(|f| f.substitute(&m))
    }

    /// Reflection `t_i -> 1/t_i`.
    pub fn invert(&self, i: usize) -> Self {
        let m = VarMap::invert(self.nvars, i);
        self.map_coords(|f| f.substitute(&m))
    }

    /// `t_i d/dt_i`.
    pub fn euler(&self, i: usize) -> Self {
        self.map_coords(|f| f.euler_deriv(i))
    }

    /// Applies a spin operator acting on a subset of this layout's spaces.
    pub fn apply_spin(&self, op: &SpinOperator<F>) -> Result<Self> {
        let emb = Embedding::new(op.layout(), &self.layout)?;
        let mut buckets: BTreeMap<u32, Vec<RatFunc<F>>> = BTreeMap::new();
        for (&x, f) in &self.comps {
            for (r, c) in op.column(emb.local_index(x)) {
                buckets.entry(emb.replace(x, r)).or_default().push(f.scale(c));
            }
        }
        let mut out = Self::zero(self.layout.clone(), self.nvars);
        for (i, fs) in buckets {
            out.insert(i, RatFunc::sum(self.nvars, &fs));
        }
        Ok(out)
    }

    /// `v ⊗ self` with `v` a basis vector of new leading spaces.
    pub fn tensor_front(&self, labels: &[Label], digits: &[usize]) -> Result<Self> {
        let layout = self.layout.prepend(labels)?;
        let shift = self.layout.dim();
        let front = SpaceLayout::new(self.layout.n(), labels.to_vec())?.index(digits);
        let mut out = Self::zero(layout, self.nvars);
        for (i, f) in &self.comps {
            out.insert(front * shift + i, f.clone());
        }
        Ok(out)
    }

    /// The coefficient of `e_{digits}` on the leading `k` spaces, as a
    /// wavefunction on the remaining spaces.
    pub fn front_component(&self, k: usize, digits: &[usize]) -> Result<Self> {
        if digits.len() != k || k > self.layout.len() {
            return Err(Error::LayoutMismatch("front component arity".into()));
        }
        let rest = SpaceLayout::new(self.layout.n(), self.layout.labels()[k..].to_vec())?;
        let front = SpaceLayout::new(self.layout.n(), self.layout.labels()[..k].to_vec())?
            .index(digits);
        let shift = rest.dim();
        let mut out = Self::zero(rest, self.nvars);
        for (i, f) in self.comps.range(front * shift..(front + 1) * shift) {
            out.insert(i - front * shift, f.clone());
        }
        Ok(out)
    }

    /// Values of all components at a point.
    pub fn eval(&self, point: &[F]) -> Result<BTreeMap<u32, F>> {
        let mut out = BTreeMap::new();
        for (i, f) in &self.comps {
            let v = f.eval(point)?;
            if !v.is_zero() {
                out.insert(*i, v);
            }
        }
        Ok(out)
    }

    /// Cancels denominator factors dividing the numerators.
    pub fn reduce(&self) -> Self {
        self.map_coords(|f| f.reduce_factors())
    }
}

impl<F: Field> fmt::Debug for WaveFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("t{i}")).collect();
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(i, c)| format!("[{}] {}", self.layout.basis_name(*i), c.display_with(&names)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::spin::permutation;

    fn layout() -> SpaceLayout {
        SpaceLayout::particles(2, &[], 2)
    }

    #[test]
    fn swap_and_inversion() {
        let w = WaveFunction::<Rat>::monomial(layout(), &[1, 2], &[0, 1]);
        let s = w.swap(0, 1);
        assert_eq!(s, WaveFunction::monomial(layout(), &[2, 1], &[0, 1]));
        assert_eq!(w.invert(0).invert(0), w);
    }

    #[test]
    fn spin_flip_moves_component() {
        let w = WaveFunction::<Rat>::monomial(layout(), &[1, 0], &[0, 1]);
        let p = permutation::<Rat>(2, Label::Quantum(1), Label::Quantum(2)).unwrap();
        let pw = w.apply_spin(&p).unwrap();
        assert_eq!(pw, WaveFunction::monomial(layout(), &[1, 0], &[1, 0]));
    }

    #[test]
    fn tensor_and_extract_front() {
        let w = WaveFunction::<Rat>::monomial(layout(), &[1, -1], &[1, 0]);
        let big = w.tensor_front(&[Label::Aux(0)], &[1]).unwrap();
        assert_eq!(big.layout().len(), 3);
        assert_eq!(big.front_component(1, &[1]).unwrap(), w);
        assert!(big.front_component(1, &[0]).unwrap().is_zero());
    }

    #[test]
    fn sums_cancel() {
        let w = WaveFunction::<Rat>::monomial(layout(), &[1, 0], &[0, 0]);
        assert!(w.sub(&w).unwrap().is_zero());
        let s = WaveFunction::sum(layout(), 2, vec![w.clone(), w.clone()]).unwrap();
        assert_eq!(s, w.scale(&Rat::from(2)));
    }
}
