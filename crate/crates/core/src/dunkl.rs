//! Dunkl operators in the `t_i = exp(2 gamma A(q_i))` chart, the position and
//! spin generators they act with, and the symmetrization projectors.
//!
//! Substitution table used throughout:
//!
//! | continuum                      | chart                      |
//! |--------------------------------|----------------------------|
//! | `a(q) d/dq`                    | `2 gamma t d/dt`           |
//! | `v(q_l, q_k)`                  | `beta t_l / (t_k - t_l)`   |
//! | `vbar(q_l, q_k)`               | `beta / (1 - t_l t_k)`     |
//! | `g(q)`                         | `(c t - b) / (t^2 - 1)`    |
//! | `alpha(q)`                     | `t -> 1/t`                 |

use crate::error::{Error, Result};
use crate::field::Field;
use crate::params::{Coeffs, Perturbation, Sector};
use crate::phys::PhysOp;
use crate::poly::{LaurentPoly, Mono};
use crate::ratfunc::RatFunc;
use crate::spin::{local_matrix, permutation, Label};

/// Quantum spin label of particle `i` (0-based).
pub fn quantum(i: usize) -> Label {
    Label::Quantum((i + 1) as u8)
}

fn lin<F: Field>(nv: usize, terms: &[(&[i32], F)]) -> LaurentPoly<F> {
    LaurentPoly::from_terms(
        nv,
        terms
            .iter()
            .map(|(e, c)| {
                let mut full = vec![0; nv];
                full[..e.len()].copy_from_slice(e);
                (Mono::from_exps(&full), c.clone())
            })
            .collect(),
    )
}

fn unit(nv: usize, i: usize) -> Vec<i32> {
    let mut e = vec![0; nv];
    e[i] = 1;
    e
}

fn pair(nv: usize, i: usize, j: usize) -> Vec<i32> {
    let mut e = vec![0; nv];
    e[i] += 1;
    e[j] += 1;
    e
}

fn ratio<F: Field>(num: LaurentPoly<F>, den: LaurentPoly<F>) -> RatFunc<F> {
    RatFunc::from_factors(num, &[(den, 1)]).expect("nonzero denominator")
}

/// `beta t_l / (t_k - t_l)`.
pub fn v_coeff<F: Field>(nv: usize, beta: &F, l: usize, k: usize) -> RatFunc<F> {
    let one = F::one();
    ratio(
        lin(nv, &[(&unit(nv, l), beta.clone())]),
        lin(nv, &[(&unit(nv, k), one.clone()), (&unit(nv, l), one.neg())]),
    )
}

/// `beta / (1 - t_l t_k)`.
pub fn vbar_coeff<F: Field>(nv: usize, beta: &F, l: usize, k: usize) -> RatFunc<F> {
    ratio(
        lin(nv, &[(&vec![0; nv], beta.clone())]),
        lin(nv, &[(&vec![0; nv], F::one()), (&pair(nv, l, k), F::one().neg())]),
    )
}

/// `(c t_l - b) / (t_l^2 + sign)`; `sign = -1` is the genuine coefficient.
pub fn g_coeff<F: Field>(nv: usize, b: &F, c: &F, l: usize, sign: i64) -> RatFunc<F> {
    let mut sq = vec![0; nv];
    sq[l] = 2;
    ratio(
        lin(nv, &[(&unit(nv, l), c.clone()), (&vec![0; nv], b.neg())]),
        lin(nv, &[(&sq, F::one()), (&vec![0; nv], F::from_i64(sign))]),
    )
}

/// Generators of the position/spin algebra together with the Dunkl
/// operators of one parameter set.
#[derive(Clone, Debug)]
pub struct Realization<F: Field> {
    pub coeffs: Coeffs<F>,
    pub sector: Sector,
    pub perturbation: Perturbation,
    d: Vec<PhysOp<F>>,
}

impl<F: Field> Realization<F> {
    pub fn new(coeffs: Coeffs<F>, sector: Sector, perturbation: Perturbation) -> Self {
        let mut r = Realization {
            coeffs,
            sector,
            perturbation,
            d: Vec::new(),
        };
        r.d = (0..r.particles()).map(|l| r.build_dunkl(l)).collect();
        r
    }

    pub fn particles(&self) -> usize {
        self.coeffs.particles
    }

    pub fn n(&self) -> usize {
        self.coeffs.n
    }

    fn build_dunkl(&self, l: usize) -> PhysOp<F> {
        let nv = self.particles();
        let k = &self.coeffs;
        let mut terms = vec![PhysOp::Euler {
            var: l,
            scale: k.gamma.mul(&F::from_i64(2)),
        }];
        let plus_one = self.perturbation == Perturbation::VNumeratorPlusOne;
        let shift = |f: RatFunc<F>| {
            if plus_one {
                f.add(&RatFunc::one(nv))
            } else {
                f
            }
        };
        for j in 0..l {
            // v(q_l, q_j) P_jl
            let f = shift(v_coeff(nv, &k.beta, l, j));
            terms.push(PhysOp::compose(vec![PhysOp::Mul(f), PhysOp::Swap(j, l)]));
        }
        for j in l + 1..nv {
            // -v(q_j, q_l) P_lj
            let f = shift(v_coeff(nv, &k.beta, j, l)).neg();
            terms.push(PhysOp::compose(vec![PhysOp::Mul(f), PhysOp::Swap(l, j)]));
        }
        if self.sector == Sector::Reflection {
            for j in (0..nv).filter(|&j| j != l) {
                terms.push(PhysOp::compose(vec![
                    PhysOp::Mul(vbar_coeff(nv, &k.beta, l, j)),
                    self.pbar_pos(l, j),
                ]));
            }
            let sign = if self.perturbation == Perturbation::GDenominatorFlip { 1 } else { -1 };
            terms.push(PhysOp::compose(vec![
                PhysOp::Mul(g_coeff(nv, &k.b, &k.c, l, sign)),
                PhysOp::Invert(l),
            ]));
        }
        PhysOp::sum(terms)
    }

    /// `d_l` (0-based).
    pub fn dunkl(&self, l: usize) -> Result<&PhysOp<F>> {
        self.d.get(l).ok_or(Error::IndexOutOfRange {
            index: l + 1,
            max: self.particles(),
        })
    }

    pub fn dunkl_all(&self) -> &[PhysOp<F>] {
        &self.d
    }

    /// Position exchange of particles `i` and `j`.
    pub fn p_pos(&self, i: usize, j: usize) -> PhysOp<F> {
        PhysOp::Swap(i, j)
    }

    /// Position reflection of particle `i`.
    pub fn q_pos(&self, i: usize) -> PhysOp<F> {
        PhysOp::Invert(i)
    }

    /// `Q_i Q_j P_ij` on positions.
    pub fn pbar_pos(&self, i: usize, j: usize) -> PhysOp<F> {
        PhysOp::compose(vec![PhysOp::Invert(i), PhysOp::Invert(j), PhysOp::Swap(i, j)])
    }

    /// Spin exchange of particles `i` and `j`.
    pub fn p_spin(&self, i: usize, j: usize) -> PhysOp<F> {
        PhysOp::spin(permutation(self.n(), quantum(i), quantum(j)).expect("distinct particles"))
    }

    /// Spin involution on particle `i`.
    pub fn q_spin(&self, i: usize) -> PhysOp<F> {
        PhysOp::spin(local_matrix(&self.coeffs.involution, quantum(i)).expect("valid involution"))
    }

    /// `Q_i Q_j P_ij` on spins.
    pub fn pbar_spin(&self, i: usize, j: usize) -> PhysOp<F> {
        PhysOp::compose(vec![self.q_spin(i), self.q_spin(j), self.p_spin(i, j)])
    }

    /// `1/N! prod_{j} (1 + tau' sum_{i<j} P_ij P_ij)`.
    pub fn lambda1(&self) -> PhysOp<F> {
        let nv = self.particles();
        let mut factors = Vec::new();
        for j in 1..nv {
            let mut t = vec![PhysOp::Identity];
            for i in 0..j {
                t.push(
                    PhysOp::compose(vec![self.p_spin(i, j), self.p_pos(i, j)])
                        .scaled(self.coeffs.tau1.clone()),
                );
            }
            factors.push(PhysOp::sum(t));
        }
        let mut fact = F::one();
        for k in 2..=nv {
            fact = fact.mul(&F::from_i64(k as i64));
        }
        PhysOp::compose(factors).scaled(fact.inv().expect("N! invertible"))
    }

    /// `1/2^N prod_j (1 + tau'' Q_j Q_j)`.
    pub fn lambda2(&self) -> PhysOp<F> {
        let nv = self.particles();
        let factors: Vec<PhysOp<F>> = (0..nv)
            .map(|j| {
                PhysOp::sum(vec![
                    PhysOp::Identity,
                    PhysOp::compose(vec![self.q_spin(j), self.q_pos(j)]).scaled(self.coeffs.tau2.clone()),
                ])
            })
            .collect();
        let scale = F::from_i64(1i64 << nv).inv().expect("2^N invertible");
        PhysOp::compose(factors).scaled(scale)
    }

    /// `Lambda = Lambda1 Lambda2`.
    pub fn lambda(&self) -> PhysOp<F> {
        PhysOp::compose(vec![self.lambda1(), self.lambda2()])
    }

    /// The projector matching the sector: `Lambda` or `Lambda1`.
    pub fn projector(&self) -> PhysOp<F> {
        match self.sector {
            Sector::Reflection => self.lambda(),
            Sector::Yangian => self.lambda1(),
        }
    }

    /// Dunkl operators must commute with every spin operator; this holds
    /// because they contain none.
    pub fn dunkl_free_of_spin(&self) -> bool {
        self.d.iter().all(|d| !d.contains_spin())
    }

    /// `sum_i d_i^2`.
    pub fn hamiltonian(&self) -> PhysOp<F> {
        PhysOp::sum(
            self.d
                .iter()
                .map(|d| PhysOp::compose(vec![d.clone(), d.clone()]))
                .collect(),
        )
    }
}
