//! Model parameters and their image in a coefficient field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::spin::{antidiagonal, validate_involution};

/// Which realization of the Dunkl operators to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sector {
    /// Swaps, reflections and the boundary terms.
    Reflection,
    /// Swaps only.
    Yangian,
}

/// Deliberate corruption of the Dunkl coefficients, for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Perturbation {
    #[default]
    None,
    /// `v -> v + 1`.
    VNumeratorPlusOne,
    /// `(c t - b)/(t^2 - 1) -> (c t - b)/(t^2 + 1)`.
    GDenominatorFlip,
}

impl Perturbation {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Perturbation::None),
            "v-numerator+1" => Ok(Perturbation::VNumeratorPlusOne),
            "g-denominator-flip" => Ok(Perturbation::GDenominatorFlip),
            _ => Err(Error::Unknown {
                kind: "perturbation",
                name: s.to_string(),
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Perturbation::None => "none",
            Perturbation::VNumeratorPlusOne => "v-numerator+1",
            Perturbation::GDenominatorFlip => "g-denominator-flip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Spin dimension.
    pub n: usize,
    /// Particle count.
    pub particles: usize,
    pub lambda: Rat,
    pub beta: Rat,
    pub b: Rat,
    pub b_prime: Rat,
    pub c: Rat,
    pub gamma: Rat,
    pub tau1: i8,
    pub tau2: i8,
    /// Spin involution, row-major.
    pub involution: Vec<Vec<Rat>>,
}

impl ModelParams {
    /// Parameters satisfying both projector constraints:
    /// `beta = tau1 * lambda` and `b = -2 tau2 b'`.
    #[allow(clippy::too_many_arguments)]
    pub fn consistent(
        n: usize,
        particles: usize,
        lambda: Rat,
        b_prime: Rat,
        c: Rat,
        gamma: Rat,
        tau1: i8,
        tau2: i8,
    ) -> Self {
        let beta = if tau1 > 0 { lambda.clone() } else { Field::neg(&lambda) };
        let b = Field::mul(&b_prime, &Rat::from(-2 * tau2 as i64));
        ModelParams {
            n,
            particles,
            lambda,
            beta,
            b,
            b_prime,
            c,
            gamma,
            tau1,
            tau2,
            involution: antidiagonal(n),
        }
    }

    /// A fixed, generic, consistent parameter set.
    pub fn sample(n: usize, particles: usize) -> Self {
        Self::consistent(
            n,
            particles,
            Rat::new(3, 2),
            Rat::new(2, 3),
            Rat::new(-5, 4),
            Rat::new(3, 7),
            1,
            -1,
        )
    }

    /// Structural validation; the projector constraints are checked separately.
    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, reason: &str| {
            Err(Error::InvalidParams {
                field: field.into(),
                reason: reason.into(),
            })
        };
        if self.n < 2 {
            return bad("n", "spin dimension must be at least 2");
        }
        if self.particles < 1 {
            return bad("N", "need at least one particle");
        }
        if self.particles > crate::poly::MAX_VARS {
            return bad("N", "too many particles for the coordinate ring");
        }
        if !matches!(self.tau1, 1 | -1) {
            return bad("tau1", "must be +1 or -1");
        }
        if !matches!(self.tau2, 1 | -1) {
            return bad("tau2", "must be +1 or -1");
        }
        if Field::is_zero(&self.gamma) {
            return bad("gamma", "must be nonzero");
        }
        if self.involution.len() != self.n {
            return bad("involution", "dimension differs from n");
        }
        validate_involution(&self.involution)
    }

    pub fn beta_constraint_holds(&self) -> bool {
        let want = if self.tau1 > 0 { self.lambda.clone() } else { Field::neg(&self.lambda) };
        self.beta == want
    }

    pub fn b_constraint_holds(&self) -> bool {
        self.b == Field::mul(&self.b_prime, &Rat::from(-2 * self.tau2 as i64))
    }

    /// Errors unless `beta = tau1 lambda` (and `b = -2 tau2 b'` when `with_b`).
    pub fn require_constraints(&self, with_b: bool) -> Result<()> {
        if !self.beta_constraint_holds() {
            return Err(Error::InvalidParams {
                field: "beta".into(),
                reason: format!(
                    "projected identities need beta = tau1*lambda = {}",
                    Field::mul(&self.lambda, &Rat::from(self.tau1 as i64))
                ),
            });
        }
        if with_b && !self.b_constraint_holds() {
            return Err(Error::InvalidParams {
                field: "b".into(),
                reason: format!(
                    "projected identities need b = -2*tau2*b' = {}",
                    Field::mul(&self.b_prime, &Rat::from(-2 * self.tau2 as i64))
                ),
            });
        }
        Ok(())
    }

    /// `c' = c tau2 / 2`, the sign fixed by the reflection term of the Dunkl operator.
    pub fn c_prime(&self) -> Rat {
        Field::mul(&self.c, &Rat::new(self.tau2 as i64, 2))
    }
}

/// Parameters mapped into the working field.
#[derive(Clone, Debug)]
pub struct Coeffs<F: Field> {
    pub n: usize,
    pub particles: usize,
    pub lambda: F,
    pub beta: F,
    pub b: F,
    pub b_prime: F,
    pub c: F,
    pub gamma: F,
    pub tau1: F,
    pub tau2: F,
    pub involution: Vec<Vec<F>>,
}

fn image<F: Field>(name: &str, q: &Rat) -> Result<F> {
    F::from_rational(&q.to_big()).ok_or_else(|| Error::InvalidParams {
        field: name.into(),
        reason: format!("{} has no image in the {} field", q, F::NAME),
    })
}

impl<F: Field> Coeffs<F> {
    pub fn new(p: &ModelParams) -> Result<Self> {
        p.validate()?;
        let involution = p
            .involution
            .iter()
            .map(|row| row.iter().map(|x| image("involution", x)).collect())
            .collect::<Result<Vec<Vec<F>>>>()?;
        validate_involution(&involution)?;
        Ok(Coeffs {
            n: p.n,
            particles: p.particles,
            lambda: image("lambda", &p.lambda)?,
            beta: image("beta", &p.beta)?,
            b: image("b", &p.b)?,
            b_prime: image("b_prime", &p.b_prime)?,
            c: image("c", &p.c)?,
            gamma: image("gamma", &p.gamma)?,
            tau1: F::from_i64(p.tau1 as i64),
            tau2: F::from_i64(p.tau2 as i64),
            involution,
        })
    }

    /// `c' = c tau2 / 2`.
    pub fn c_prime(&self) -> F {
        self.c
            .mul(&self.tau2)
            .mul(&F::from_i64(2).inv().expect("2 invertible"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp62;

    #[test]
    fn consistent_parameters_satisfy_constraints() {
        let p = ModelParams::sample(2, 2);
        assert!(p.validate().is_ok());
        assert!(p.require_constraints(true).is_ok());
        let mut q = p.clone();
        q.b = Field::add(&q.b, &Rat::from(1));
        assert!(q.require_constraints(false).is_ok());
        assert!(matches!(q.require_constraints(true), Err(Error::InvalidParams { .. })));
    }

    #[test]
    fn c_prime_convention() {
        let p = ModelParams::consistent(2, 2, Rat::from(1), Rat::from(1), Rat::from(4), Rat::from(1), 1, 1);
        assert_eq!(p.c_prime(), Rat::from(2));
        let k = Coeffs::<Fp62>::new(&p).unwrap();
        assert_eq!(k.c_prime(), Fp62::from_i64(2));
    }

    #[test]
    fn invalid_fields_are_named() {
        let mut p = ModelParams::sample(2, 2);
        p.tau1 = 0;
        match p.validate() {
            Err(Error::InvalidParams { field, .. }) => assert_eq!(field, "tau1"),
            other => panic!("unexpected {other:?}"),
        }
        let mut p = ModelParams::sample(2, 2);
        p.involution = vec![vec![Rat::from(1), Rat::from(1)], vec![Rat::from(0), Rat::from(1)]];
        assert!(p.validate().is_err());
    }
}
