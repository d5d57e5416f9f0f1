//! Physical parameters of the chiral oscillator.

use crate::error::{Error, Result};
use crate::math;

/// Chirality coefficient and mass. Both must be nonzero: `lambda`
/// divides every bracket and Hamiltonian, `mass` divides the
/// reconstruction formulas. Validation happens here once so downstream
/// code can assume regularity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub lambda: f64,
    pub mass: f64,
}

impl Params {
    pub fn new(lambda: f64, mass: f64) -> Result<Self> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::InvalidParams("lambda must be finite and nonzero"));
        }
        if mass == 0.0 || !mass.is_finite() {
            return Err(Error::InvalidParams("mass must be finite and nonzero"));
        }
        Ok(Self { lambda, mass })
    }

    /// `sqrt(lambda)`, defined only on the Darboux chart where the
    /// chirality coefficient must be positive.
    pub fn sqrt_lambda(&self) -> Result<f64> {
        if self.lambda <= 0.0 {
            return Err(Error::NegativeLambda {
                lambda: self.lambda,
            });
        }
        Ok(math::sqrt(self.lambda))
    }
}

impl Default for Params {
    /// The reference configuration: unit chirality and unit mass, with
    /// oscillation period 2*pi.
    fn default() -> Self {
        Self {
            lambda: 1.0,
            mass: 1.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_lambda() {
        assert!(Params::new(0.0, 1.0).is_err());
        assert!(Params::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn rejects_zero_mass() {
        assert!(Params::new(1.0, 0.0).is_err());
    }

    #[test]
    fn negative_lambda_blocks_darboux_chart_only() {
        let p = Params::new(-1.0, 1.0).unwrap();
        assert_eq!(
            p.sqrt_lambda(),
            Err(Error::NegativeLambda { lambda: -1.0 })
        );
        let q = Params::new(4.0, 1.0).unwrap();
        assert_eq!(q.sqrt_lambda().unwrap(), 2.0);
    }
}
