//! Operators on wavefunctions as unexpanded expression trees.
//!
//! Products are evaluated by applying factors one after another to a state;
//! nothing is ever normal-ordered.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::LaurentPoly;
use crate::ratfunc::RatFunc;
use crate::spin::SpinOperator;
use crate::wave::WaveFunction;

#[derive(Clone, Debug)]
pub enum PhysOp<F: Field> {
    Identity,
    Scalar(F),
    /// Multiplication by a coordinate function.
    Mul(RatFunc<F>),
    /// `scale * t_i d/dt_i` (0-based variable).
    Euler { var: usize, scale: F },
    /// Position swap of two particles (0-based).
    Swap(usize, usize),
    /// Position reflection `t_i -> 1/t_i` (0-based).
    Invert(usize),
    Spin(Arc<SpinOperator<F>>),
    /// Product `ops[0] * ops[1] * ...`; the last factor acts first.
    Compose(Vec<PhysOp<F>>),
    Sum(Vec<PhysOp<F>>),
    Scale(F, Box<PhysOp<F>>),
}

impl<F: Field> PhysOp<F> {
    pub fn spin(op: SpinOperator<F>) -> Self {
        PhysOp::Spin(Arc::new(op))
    }

    pub fn compose(ops: Vec<PhysOp<F>>) -> Self {
        PhysOp::Compose(ops)
    }

    pub fn sum(ops: Vec<PhysOp<F>>) -> Self {
        PhysOp::Sum(ops)
    }

    pub fn scaled(self, c: F) -> Self {
        PhysOp::Scale(c, Box::new(self))
    }

    /// `self - o`.
    pub fn minus(self, o: PhysOp<F>) -> Self {
        PhysOp::Sum(vec![self, o.scaled(F::one().neg())])
    }

    /// `[self, o] = self o - o self`.
    pub fn commutator(&self, o: &PhysOp<F>) -> Self {
        PhysOp::compose(vec![self.clone(), o.clone()])
            .minus(PhysOp::compose(vec![o.clone(), self.clone()]))
    }

    /// `true` if any spin operator occurs in the tree.
    pub fn contains_spin(&self) -> bool {
        match self {
            PhysOp::Spin(_) => true,
            PhysOp::Compose(v) | PhysOp::Sum(v) => v.iter().any(|o| o.contains_spin()),
            PhysOp::Scale(_, o) => o.contains_spin(),
            _ => false,
        }
    }

    /// Number of nodes, a rough size measure.
    pub fn node_count(&self) -> usize {
        match self {
            PhysOp::Compose(v) | PhysOp::Sum(v) => 1 + v.iter().map(|o| o.node_count()).sum::<usize>(),
            PhysOp::Scale(_, o) => 1 + o.node_count(),
            _ => 1,
        }
    }
}

/// Limits enforced while applying operators.
#[derive(Clone, Copy, Debug)]
pub struct Guard {
    /// Abort when a state carries more numerator terms than this.
    pub max_terms: usize,
    /// Cancel denominator factors after each composite step.
    pub reduce: bool,
}

impl Default for Guard {
    fn default() -> Self {
        Guard {
            max_terms: 1_000_000,
            reduce: false,
        }
    }
}

impl Guard {
    pub fn check<F: Field>(&self, w: WaveFunction<F>) -> Result<WaveFunction<F>> {
        let size = w.size();
        if size > self.max_terms {
            return Err(Error::DegreeGuard {
                terms: size,
                limit: self.max_terms,
            });
        }
        Ok(if self.reduce { w.reduce() } else { w })
    }
}

/// Applies `op` to `psi`.
pub fn apply<F: Field>(op: &PhysOp<F>, psi: &WaveFunction<F>, guard: &Guard) -> Result<WaveFunction<F>> {
    match op {
        PhysOp::Identity => Ok(psi.clone()),
        PhysOp::Scalar(c) => Ok(psi.scale(c)),
        PhysOp::Mul(h) => Ok(psi.mul_coord(h)),
        PhysOp::Euler { var, scale } => {
            check_var(*var, psi)?;
            Ok(psi.euler(*var).scale(scale))
        }
        PhysOp::Swap(i, j) => {
            check_var(*i, psi)?;
            check_var(*j, psi)?;
            Ok(psi.swap(*i, *j))
        }
        PhysOp::Invert(i) => {
            check_var(*i, psi)?;
            Ok(psi.invert(*i))
        }
        PhysOp::Spin(s) => psi.apply_spin(s),
        PhysOp::Compose(ops) => {
            let mut cur = psi.clone();
            for o in ops.iter().rev() {
                cur = guard.check(apply(o, &cur, guard)?)?;
            }
            Ok(cur)
        }
        PhysOp::Sum(ops) => {
            let parts = ops
                .iter()
                .map(|o| apply(o, psi, guard))
                .collect::<Result<Vec<_>>>()?;
            guard.check(WaveFunction::sum(psi.layout().clone(), psi.nvars(), parts)?)
        }
        PhysOp::Scale(c, o) => Ok(apply(o, psi, guard)?.scale(c)),
    }
}

fn check_var<F: Field>(i: usize, psi: &WaveFunction<F>) -> Result<()> {
    if i >= psi.nvars() {
        return Err(Error::IndexOutOfRange {
            index: i + 1,
            max: psi.nvars(),
        });
    }
    Ok(())
}

/// Applies a polynomial in commuting operators `x_1..x_k` (the variables of
/// `p`, non-negative exponents) to a state. Monomials share prefixes through
/// a cache, so `x^a y^b psi` is built from `x^{a-1} y^b psi`.
pub fn apply_polynomial<F: Field>(
    p: &LaurentPoly<F>,
    ops: &[PhysOp<F>],
    psi: &WaveFunction<F>,
    guard: &Guard,
) -> Result<WaveFunction<F>> {
    let k = ops.len();
    assert!(p.nvars() <= k, "polynomial has more variables than operators");
    let mut cache: HashMap<Vec<i32>, WaveFunction<F>> = HashMap::new();
    cache.insert(vec![0; k], psi.clone());
    let mut parts = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let mut e: Vec<i32> = (0..k).map(|i| if i < p.nvars() { m.exp(i) } else { 0 }).collect();
        if e.iter().any(|&x| x < 0) {
            return Err(Error::InvalidParams {
                field: "polynomial".into(),
                reason: "negative exponent in an operator polynomial".into(),
            });
        }
        let w = monomial_state(&mut e, ops, &mut cache, guard)?;
        parts.push(w.scale(c));
    }
    WaveFunction::sum(psi.layout().clone(), psi.nvars(), parts)
}

fn monomial_state<F: Field>(
    e: &mut Vec<i32>,
    ops: &[PhysOp<F>],
    cache: &mut HashMap<Vec<i32>, WaveFunction<F>>,
    guard: &Guard,
) -> Result<WaveFunction<F>> {
    if let Some(w) = cache.get(e) {
        return Ok(w.clone());
    }
    let i = e.iter().position(|&x| x > 0).expect("nonzero exponent");
    e[i] -= 1;
    let prev = monomial_state(e, ops, cache, guard)?;
    e[i] += 1;
    let w = guard.check(apply(&ops[i], &prev, guard)?)?;
    cache.insert(e.clone(), w.clone());
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::poly::Mono;
    use crate::spin::SpaceLayout;

    fn psi(exps: &[i32]) -> WaveFunction<Rat> {
        WaveFunction::monomial(SpaceLayout::particles(2, &[], 2), exps, &[0, 1])
    }

    #[test]
    fn swap_acts_on_positions() {
        let g = Guard::default();
        let out = apply(&PhysOp::Swap(0, 1), &psi(&[1, 2]), &g).unwrap();
        assert_eq!(out, psi(&[2, 1]));
    }

    #[test]
    fn reflection_is_an_involution() {
        let g = Guard::default();
        let q = PhysOp::compose(vec![PhysOp::Invert(0), PhysOp::Invert(0)]);
        assert_eq!(apply(&q, &psi(&[3, -1]), &g).unwrap(), psi(&[3, -1]));
    }

    #[test]
    fn compose_applies_last_factor_first() {
        // (t_1 * K_12) t_1^2 = t_1 * t_2^2
        let g = Guard::default();
        let op = PhysOp::compose(vec![PhysOp::Mul(RatFunc::var(2, 0)), PhysOp::Swap(0, 1)]);
        let out = apply(&op, &psi(&[2, 0]), &g).unwrap();
        assert_eq!(out, psi(&[1, 2]));
    }

    #[test]
    fn polynomial_of_euler_operators() {
        // (E_1^2 + 3 E_1 E_2) t^(2,1) = (4 + 6) t^(2,1)
        let g = Guard::default();
        let ops = vec![
            PhysOp::Euler { var: 0, scale: Rat::from(1) },
            PhysOp::Euler { var: 1, scale: Rat::from(1) },
        ];
        let p = LaurentPoly::from_terms(
            2,
            vec![
                (Mono::from_exps(&[2, 0]), Rat::from(1)),
                (Mono::from_exps(&[1, 1]), Rat::from(3)),
            ],
        );
        let out = apply_polynomial(&p, &ops, &psi(&[2, 1]), &g).unwrap();
        assert_eq!(out, psi(&[2, 1]).scale(&Rat::from(10)));
    }

    #[test]
    fn guard_trips() {
        let g = Guard { max_terms: 0, reduce: false };
        let op = PhysOp::compose(vec![PhysOp::Identity, PhysOp::Identity]);
        assert!(matches!(apply(&op, &psi(&[1, 1]), &g), Err(Error::DegreeGuard { .. })));
    }

    #[test]
    fn out_of_range_particle() {
        let g = Guard::default();
        assert!(matches!(
            apply(&PhysOp::Swap(0, 4), &psi(&[1, 1]), &g),
            Err(Error::IndexOutOfRange { .. })
        ));
    }
}
