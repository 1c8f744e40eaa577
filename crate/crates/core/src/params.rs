use std::fmt;

use crate::error::{Error, Result};
use crate::hyperdist::{Family, MixtureSpec};
use crate::special::{as_integer, ComplexValue};

/// |c| below this counts as the excluded case c = 0.
pub const C_ZERO_TOL: f64 = 1e-6;

/// Parameters (family, α, a, b) of one zeta function.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaParams {
    pub family: Family,
    pub alpha: Vec<f64>,
    pub a: Vec<f64>,
    pub b: f64,
}

impl ZetaParams {
    pub fn new(family: Family, alpha: Vec<f64>, a: Vec<f64>, b: f64) -> Result<Self> {
        let p = Self { family, alpha, a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha.is_empty() || self.alpha.len() != self.a.len() {
            return Err(Error::Parameter(format!(
                "alpha and a must be non-empty and of equal length (got {} and {})",
                self.alpha.len(),
                self.a.len()
            )));
        }
        if !(self.b > 0.0 && self.b.is_finite()) {
            return Err(Error::Parameter(format!("b must be positive, got {}", self.b)));
        }
        for (&al, &a) in self.alpha.iter().zip(&self.a) {
            if !(al > 0.0 && al.is_finite() && a > 0.0 && a.is_finite()) {
                return Err(Error::Parameter(format!("alpha and a must be positive (alpha = {al}, a = {a})")));
            }
            if self.family == Family::Tanh && as_integer(al).is_none() {
                return Err(Error::Parameter(format!("tanh family needs integer alpha, got {al}")));
            }
        }
        Ok(())
    }

    /// The integral representations of S and C need c ≠ 0.
    pub fn require_nonzero_c(&self) -> Result<()> {
        if self.family != Family::Tanh && self.c().abs() < C_ZERO_TOL {
            return Err(Error::Parameter(format!("c = b - lambda = {} must be nonzero", self.c())));
        }
        Ok(())
    }

    pub fn r(&self) -> usize {
        self.alpha.len()
    }

    pub fn beta(&self) -> f64 {
        self.alpha.iter().sum()
    }

    pub fn lambda(&self) -> f64 {
        0.5 * self.alpha.iter().zip(&self.a).map(|(al, a)| al * a).sum::<f64>()
    }

    pub fn c(&self) -> f64 {
        self.b - self.lambda()
    }

    /// ∏ a_j^{−α_j}.
    pub fn c_r(&self) -> f64 {
        self.alpha.iter().zip(&self.a).map(|(al, a)| a.powf(-al)).product()
    }

    /// Law of Y_r, Z_r or W_r.
    pub fn mixture(&self) -> MixtureSpec {
        MixtureSpec { family: self.family, components: self.a.iter().copied().zip(self.alpha.iter().copied()).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    Integral,
    Mellin,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Series => "series",
            Method::Integral => "integral",
            Method::Mellin => "mellin",
        })
    }
}

/// A zeta value with its error estimate and the path that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub value: ComplexValue,
    pub err_estimate: f64,
    pub method: Method,
    pub warnings: Vec<String>,
}
