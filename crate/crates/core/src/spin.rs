//! Sparse operators on ordered tensor products of `C^n`.
//!
//! Basis vectors are mixed-radix integers over the layout's labels, first
//! label most significant. An operator carries the layout of the spaces it
//! acts on and may be applied to any vector whose layout contains those
//! labels (identity on the remaining factors).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ratfunc::RatFunc;

/// A tensor factor: an auxiliary copy or the spin of a particle.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Label {
    Aux(u8),
    Quantum(u8),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Aux(k) => write!(f, "a{k}"),
            Label::Quantum(k) => write!(f, "q{k}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SpaceLayout {
    n: usize,
    labels: Vec<Label>,
}

impl SpaceLayout {
    pub fn new(n: usize, labels: Vec<Label>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParams {
                field: "n".into(),
                reason: "spin dimension must be positive".into(),
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::LayoutMismatch(format!("duplicate label {l}")));
            }
        }
        let total = (n as u128).checked_pow(labels.len() as u32);
        if total.map_or(true, |t| t > u32::MAX as u128) {
            return Err(Error::LayoutMismatch("tensor product too large".into()));
        }
        Ok(SpaceLayout { n, labels })
    }

    /// Quantum spaces `1..=particles`, optionally preceded by auxiliary copies.
    pub fn particles(n: usize, aux: &[u8], particles: usize) -> Self {
        let mut labels: Vec<Label> = aux.iter().map(|&a| Label::Aux(a)).collect();
        labels.extend((1..=particles as u8).map(Label::Quantum));
        Self::new(n, labels).expect("valid layout")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> u32 {
        (self.n as u32).pow(self.labels.len() as u32)
    }

    pub fn position(&self, l: Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|&x| x == l)
            .ok_or_else(|| Error::UnknownLabel(l.to_string()))
    }

    pub fn contains(&self, l: Label) -> bool {
        self.labels.contains(&l)
    }

    fn weight(&self, pos: usize) -> u32 {
        (self.n as u32).pow((self.labels.len() - 1 - pos) as u32)
    }

    pub fn digit(&self, index: u32, pos: usize) -> usize {
        ((index / self.weight(pos)) % self.n as u32) as usize
    }

    pub fn digits(&self, index: u32) -> Vec<usize> {
        (0..self.len()).map(|p| self.digit(index, p)).collect()
    }

    pub fn index(&self, digits: &[usize]) -> u32 {
        assert_eq!(digits.len(), self.len());
        digits
            .iter()
            .fold(0u32, |acc, &d| acc * self.n as u32 + d as u32)
    }

    /// Same spaces with extra labels in front.
    pub fn prepend(&self, front: &[Label]) -> Result<Self> {
        let mut labels = front.to_vec();
        labels.extend_from_slice(&self.labels);
        Self::new(self.n, labels)
    }

    /// Human readable basis vector, e.g. `e1⊗e2` (1-based).
    pub fn basis_name(&self, index: u32) -> String {
        self.digits(index)
            .iter()
            .map(|d| format!("e{}", d + 1))
            .collect::<Vec<_>>()
            .join("⊗")
    }
}

/// Scalars the tensor code is generic over.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl<F: Field> Scalar for F {
    fn is_zero(&self) -> bool {
        Field::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Field::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Field::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Field::mul(self, o)
    }
    fn neg(&self) -> Self {
        Field::neg(self)
    }
}

impl<F: Field> Scalar for RatFunc<F> {
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
}

/// Where an operator's factors sit inside a larger layout.
#[derive(Clone, Debug)]
pub struct Embedding {
    n: u32,
    local_len: usize,
    weights: Vec<u32>,
}

impl Embedding {
    pub fn new(local: &SpaceLayout, target: &SpaceLayout) -> Result<Self> {
        if local.n != target.n {
            return Err(Error::LayoutMismatch(format!(
                "spin dimension {} vs {}",
                local.n, target.n
            )));
        }
        let weights = local
            .labels
            .iter()
            .map(|&l| target.position(l).map(|p| target.weight(p)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Embedding {
            n: local.n as u32,
            local_len: local.len(),
            weights,
        })
    }

    /// Local index of the factors this embedding covers.
    pub fn local_index(&self, x: u32) -> u32 {
        self.weights
            .iter()
            .fold(0, |acc, &w| acc * self.n + (x / w) % self.n)
    }

    /// `x` with its covered digits replaced by those of `local`.
    pub fn replace(&self, x: u32, local: u32) -> u32 {
        let mut out = x;
        let mut rest = local;
        for k in (0..self.local_len).rev() {
            let w = self.weights[k];
            let old = (x / w) % self.n;
            let new = rest % self.n;
            rest /= self.n;
            out = out - old * w + new * w;
        }
        out
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SpinVector<S: Scalar> {
    layout: SpaceLayout,
    entries: BTreeMap<u32, S>,
}

impl<S: Scalar> SpinVector<S> {
    pub fn zero(layout: SpaceLayout) -> Self {
        SpinVector {
            layout,
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(layout: SpaceLayout, digits: &[usize], one: S) -> Self {
        let mut v = Self::zero(layout);
        let i = v.layout.index(digits);
        v.entries.insert(i, one);
        v
    }

    pub fn from_entries(layout: SpaceLayout, entries: impl IntoIterator<Item = (u32, S)>) -> Self {
        let mut v = Self::zero(layout);
        for (i, c) in entries {
            v.add_at(i, c);
        }
        v
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn entries(&self) -> &BTreeMap<u32, S> {
        &self.entries
    }

    pub fn get(&self, i: u32) -> Option<&S> {
        self.entries.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn add_at(&mut self, i: u32, c: S) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(x) => {
                let s = x.add(&c);
                if s.is_zero() {
                    self.entries.remove(&i);
                } else {
                    *x = s;
                }
            }
            None => {
                self.entries.insert(i, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.layout != o.layout {
            return Err(Error::LayoutMismatch("vector layouts differ".into()));
        }
        let mut out = self.clone();
        for (i, c) in &o.entries {
            out.add_at(*i, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.layout.clone());
        for (i, x) in &self.entries {
            out.add_at(*i, c.mul(x));
        }
        out
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SpinOperator<S: Scalar> {
    layout: SpaceLayout,
    /// Keyed by (column, row) so a column is a contiguous range.
    entries: BTreeMap<(u32, u32), S>,
}

impl<S: Scalar> SpinOperator<S> {
    pub fn zero(layout: SpaceLayout) -> Self {
        SpinOperator {
            layout,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(layout: SpaceLayout, one: S) -> Self {
        let mut op = Self::zero(layout);
        for i in 0..op.layout.dim() {
            op.entries.insert((i, i), one.clone());
        }
        op
    }

    pub fn from_entries(
        layout: SpaceLayout,
        entries: impl IntoIterator<Item = ((u32, u32), S)>,
    ) -> Self {
        let mut op = Self::zero(layout);
        for ((r, c), x) in entries {
            op.add_at(r, c, x);
        }
        op
    }

    /// `A_k`: the `n x n` matrix `a` (row-major) on factor `label`.
    pub fn embed(a: &[Vec<S>], label: Label, layout: SpaceLayout) -> Result<Self> {
        let n = layout.n;
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::LayoutMismatch(format!("matrix is not {n}x{n}")));
        }
        let local = SpaceLayout::new(n, vec![label])?;
        let mut small = Self::zero(local);
        for (i, row) in a.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                small.add_at(i as u32, j as u32, x.clone());
            }
        }
        small.extend_to(&layout)
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, &S)> {
        self.entries.iter().map(|(&(c, r), x)| (r, c, x))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: u32, col: u32) -> Option<&S> {
        self.entries.get(&(col, row))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries `(row, value)` of one column.
    pub fn column(&self, col: u32) -> impl Iterator<Item = (u32, &S)> {
        self.entries
            .range((col, 0)..=(col, u32::MAX))
            .map(|(&(_, r), x)| (r, x))
    }

    fn add_at(&mut self, r: u32, c: u32, x: S) {
        if x.is_zero() {
            return;
        }
        match self.entries.get_mut(&(c, r)) {
            Some(y) => {
                let s = y.add(&x);
                if s.is_zero() {
                    self.entries.remove(&(c, r));
                } else {
                    *y = s;
                }
            }
            None => {
                self.entries.insert((c, r), x);
            }
        }
    }

    /// The same operator on a larger layout (identity on the new factors).
    pub fn extend_to(&self, target: &SpaceLayout) -> Result<Self> {
        if *target == self.layout {
            return Ok(self.clone());
        }
        let emb = Embedding::new(&self.layout, target)?;
        let mut out = Self::zero(target.clone());
        for x in 0..target.dim() {
            let local = emb.local_index(x);
            for (r, c) in self.column(local) {
                out.add_at(emb.replace(x, r), x, c.clone());
            }
        }
        Ok(out)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.layout != o.layout {
            return Err(Error::LayoutMismatch(format!(
                "{:?} vs {:?}",
                self.layout.labels, o.layout.labels
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (&(c, r), x) in &o.entries {
            out.add_at(r, c, x.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        SpinOperator {
            layout: self.layout.clone(),
            entries: self.entries.iter().map(|(k, x)| (*k, x.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.layout.clone());
        for (&(col, r), x) in &self.entries {
            out.add_at(r, col, c.mul(x));
        }
        out
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = Self::zero(self.layout.clone());
        for (&(c, k), y) in &o.entries {
            for (r, x) in self.column(k) {
                out.add_at(r, c, x.mul(y));
            }
        }
        Ok(out)
    }

    /// Applies to a vector whose layout contains this operator's labels.
    pub fn apply(&self, v: &SpinVector<S>) -> Result<SpinVector<S>> {
        let emb = Embedding::new(&self.layout, &v.layout)?;
        let mut out = SpinVector::zero(v.layout.clone());
        for (&x, y) in &v.entries {
            for (r, c) in self.column(emb.local_index(x)) {
                out.add_at(emb.replace(x, r), c.mul(y));
            }
        }
        Ok(out)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SpinOperator<T> {
        let mut out = SpinOperator::zero(self.layout.clone());
        for (&(c, r), x) in &self.entries {
            out.add_at(r, c, f(x));
        }
        out
    }
}

/// Elementary matrix `E_ij` (0-based) in row-major form.
pub fn elementary<F: Field>(n: usize, i: usize, j: usize) -> Vec<Vec<F>> {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == i && c == j { F::one() } else { F::zero() })
                .collect()
        })
        .collect()
}

/// Basis reversal, the default spin involution.
pub fn antidiagonal<F: Field>(n: usize) -> Vec<Vec<F>> {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r + c == n - 1 { F::one() } else { F::zero() })
                .collect()
        })
        .collect()
}

/// Checks `q` is `n x n` and squares to the identity.
pub fn validate_involution<F: Field>(q: &[Vec<F>]) -> Result<()> {
    let n = q.len();
    if q.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidParams {
            field: "involution".into(),
            reason: "matrix is not square".into(),
        });
    }
    for i in 0..n {
        for j in 0..n {
            let mut s = F::zero();
            for (k, qk) in q.iter().enumerate() {
                s.add_assign(&q[i][k].mul(&qk[j]));
            }
            let want = if i == j { F::one() } else { F::zero() };
            if s != want {
                return Err(Error::InvalidParams {
                    field: "involution".into(),
                    reason: format!("Q^2 differs from the identity at ({}, {})", i + 1, j + 1),
                });
            }
        }
    }
    Ok(())
}

/// The flip `P_ab` on the two-space layout `(a, b)`.
pub fn permutation<F: Field>(n: usize, a: Label, b: Label) -> Result<SpinOperator<F>> {
    if a == b {
        return Err(Error::LayoutMismatch("permutation needs two distinct spaces".into()));
    }
    let layout = SpaceLayout::new(n, vec![a, b])?;
    let mut op = SpinOperator::zero(layout);
    for i in 0..n as u32 {
        for j in 0..n as u32 {
            op.add_at(j * n as u32 + i, i * n as u32 + j, F::one());
        }
    }
    Ok(op)
}

/// Single-factor operator from an `n x n` matrix.
pub fn local_matrix<F: Field>(m: &[Vec<F>], label: Label) -> Result<SpinOperator<F>> {
    let layout = SpaceLayout::new(m.len(), vec![label])?;
    SpinOperator::embed(m, label, layout)
}

/// `A_m` on the given spaces: `sum_sigma sgn(sigma)` times the factor permutation.
pub fn antisymmetrizer<F: Field>(n: usize, labels: &[Label]) -> Result<SpinOperator<F>> {
    let layout = SpaceLayout::new(n, labels.to_vec())?;
    let m = labels.len();
    let mut op = SpinOperator::zero(layout.clone());
    let perms = permutations(m);
    for x in 0..layout.dim() {
        let d = layout.digits(x);
        for (perm, sign) in &perms {
            let image: Vec<usize> = perm.iter().map(|&k| d[k]).collect();
            let c = if *sign > 0 { F::one() } else { F::one().neg() };
            op.add_at(layout.index(&image), x, c);
        }
    }
    Ok(op)
}

/// All permutations of `0..m` with their signs.
pub fn permutations(m: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i32)>) {
        let m = used.len();
        if cur.len() == m {
            let mut inv = 0;
            for i in 0..m {
                for j in i + 1..m {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..m {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Yang matrix `R_ab(u) = 1 - lambda P_ab / u` with `u` a rational function.
pub fn yang_r<F: Field>(
    n: usize,
    u: &RatFunc<F>,
    a: Label,
    b: Label,
    lambda: &F,
) -> Result<SpinOperator<RatFunc<F>>> {
    let nv = u.nvars();
    let p = permutation::<F>(n, a, b)?.map(|c| RatFunc::constant(nv, c.clone()));
    let coeff = RatFunc::constant(nv, lambda.clone()).div(u)?;
    let id = SpinOperator::identity(p.layout().clone(), RatFunc::one(nv));
    id.sub(&p.scale(&coeff))
}

/// Rank of an operator over a field (dense elimination; small layouts only).
pub fn rank<F: Field>(op: &SpinOperator<F>) -> usize {
    let dim = op.layout().dim() as usize;
    let mut rows: Vec<Vec<F>> = vec![vec![F::zero(); dim]; dim];
    for (r, c, x) in op.entries() {
        rows[r as usize][c as usize] = x.clone();
    }
    let mut rank = 0;
    for col in 0..dim {
        let Some(p) = (rank..dim).find(|&r| !Field::is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for r in 0..dim {
            if r != rank && !Field::is_zero(&rows[r][col]) {
                let f = rows[r][col].mul(&inv);
                for c in col..dim {
                    let v = rows[rank][c].mul(&f);
                    rows[r][c] = Field::sub(&rows[r][c], &v);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn r(x: i64) -> Rat {
        Rat::from(x)
    }

    #[test]
    fn embed_elementary_matrix() {
        let l = SpaceLayout::particles(2, &[], 2);
        let e12 = SpinOperator::embed(&elementary::<Rat>(2, 0, 1), Label::Quantum(1), l.clone())
            .unwrap();
        let v = SpinVector::basis(l.clone(), &[1, 0], r(1));
        let w = e12.apply(&v).unwrap();
        assert_eq!(w, SpinVector::basis(l, &[0, 0], r(1)));
    }

    #[test]
    fn identity_embeds_to_identity() {
        let l = SpaceLayout::particles(3, &[0], 2);
        let id: Vec<Vec<Rat>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { r(1) } else { r(0) }).collect())
            .collect();
        let op = SpinOperator::embed(&id, Label::Quantum(2), l.clone()).unwrap();
        assert_eq!(op, SpinOperator::identity(l, r(1)));
    }

    #[test]
    fn involution_on_auxiliary_space() {
        let l = SpaceLayout::particles(2, &[0], 1);
        let q = SpinOperator::embed(&antidiagonal::<Rat>(2), Label::Aux(0), l.clone()).unwrap();
        let v = SpinVector::basis(l.clone(), &[0, 0], r(1));
        assert_eq!(q.apply(&v).unwrap(), SpinVector::basis(l, &[1, 0], r(1)));
        assert!(validate_involution(&antidiagonal::<Rat>(3)).is_ok());
        let bad = vec![vec![r(1), r(1)], vec![r(0), r(1)]];
        assert!(validate_involution(&bad).is_err());
    }

    #[test]
    fn permutation_swaps_and_squares_to_one() {
        let (a, b) = (Label::Quantum(1), Label::Quantum(2));
        let p = permutation::<Rat>(2, a, b).unwrap();
        let l = p.layout().clone();
        let v = SpinVector::basis(l.clone(), &[0, 1], r(1));
        assert_eq!(p.apply(&v).unwrap(), SpinVector::basis(l.clone(), &[1, 0], r(1)));
        assert_eq!(p.compose(&p).unwrap(), SpinOperator::identity(l.clone(), r(1)));
        // P = sum E_ij (x) E_ji
        let mut sum = SpinOperator::zero(l.clone());
        for i in 0..2 {
            for j in 0..2 {
                let eij = SpinOperator::embed(&elementary::<Rat>(2, i, j), a, l.clone()).unwrap();
                let eji = SpinOperator::embed(&elementary::<Rat>(2, j, i), b, l.clone()).unwrap();
                sum = sum.add(&eij.compose(&eji).unwrap()).unwrap();
            }
        }
        assert_eq!(sum, p);
    }

    #[test]
    fn antisymmetrizer_small_cases() {
        let (a, b) = (Label::Aux(1), Label::Aux(2));
        let a2 = antisymmetrizer::<Rat>(2, &[a, b]).unwrap();
        let l = a2.layout().clone();
        let p = permutation::<Rat>(2, a, b).unwrap();
        assert_eq!(a2, SpinOperator::identity(l.clone(), r(1)).sub(&p).unwrap());
        assert!(a2.apply(&SpinVector::basis(l, &[0, 0], r(1))).unwrap().is_zero());
        assert_eq!(rank(&a2), 1);
    }

    #[test]
    fn zero_operator_and_resolution_of_identity() {
        let l = SpaceLayout::particles(2, &[], 1);
        let v = SpinVector::basis(l.clone(), &[1], r(3));
        assert!(SpinOperator::<Rat>::zero(l.clone()).apply(&v).unwrap().is_zero());
        let e11 = SpinOperator::embed(&elementary::<Rat>(2, 0, 0), Label::Quantum(1), l.clone());
        let e22 = SpinOperator::embed(&elementary::<Rat>(2, 1, 1), Label::Quantum(1), l.clone());
        let s = e11.unwrap().add(&e22.unwrap()).unwrap();
        assert_eq!(s, SpinOperator::identity(l, r(1)));
    }

    #[test]
    fn layout_mismatch_is_reported() {
        let p = permutation::<Rat>(2, Label::Quantum(1), Label::Quantum(2)).unwrap();
        let q = permutation::<Rat>(2, Label::Aux(0), Label::Quantum(1)).unwrap();
        assert!(matches!(p.compose(&q), Err(Error::LayoutMismatch(_))));
        let l = SpaceLayout::particles(2, &[], 1);
        let v = SpinVector::basis(l, &[0], r(1));
        assert!(matches!(p.apply(&v), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn yang_unitarity_at_two() {
        // n = 2, lambda = 1: R(2) R(-2) = 3/4
        let (a, b) = (Label::Aux(0), Label::Aux(1));
        let lam = r(1);
        let r2 = yang_r(2, &RatFunc::constant(1, r(2)), a, b, &lam).unwrap();
        let rm2 = yang_r(2, &RatFunc::constant(1, r(-2)), a, b, &lam).unwrap();
        let prod = r2.compose(&rm2).unwrap();
        let want = SpinOperator::identity(prod.layout().clone(), RatFunc::constant(1, Rat::new(3, 4)));
        assert_eq!(prod, want);
    }

    #[test]
    fn yang_at_zero_coupling_is_identity() {
        let u = RatFunc::<Rat>::var(1, 0);
        let rr = yang_r(2, &u, Label::Aux(0), Label::Aux(1), &r(0)).unwrap();
        assert_eq!(rr, SpinOperator::identity(rr.layout().clone(), RatFunc::one(1)));
    }
}
