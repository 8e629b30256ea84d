use num_bigint::BigInt;

use super::uni::UniPoly;
use crate::error::{Error, Result};

/// Power series in `u`, truncated after `u^order`, whose coefficients are
/// integer polynomials in a second variable.
///
/// Coefficients past the truncation order are unknown, not zero: `coeff`
/// returns `None` for them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    order: usize,
    coeffs: Vec<UniPoly>,
}

impl FormalSeries {
    pub fn zero(order: usize) -> Self {
        FormalSeries { order, coeffs: vec![UniPoly::zero(); order + 1] }
    }

    pub fn constant(order: usize, c: UniPoly) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds from the first `order + 1` coefficients; missing entries are zero.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<UniPoly>) -> Result<Self> {
        if coeffs.len() > order + 1 {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients exceed truncation order {order}",
                coeffs.len()
            )));
        }
        coeffs.resize(order + 1, UniPoly::zero());
        Ok(FormalSeries { order, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, m: usize) -> Option<&UniPoly> {
        self.coeffs.get(m)
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    fn same_order(&self, other: &FormalSeries) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn add(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.same_order(other)?;
        Ok(FormalSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.same_order(other)?;
        let coeffs = (0..=self.order)
            .map(|m| (0..=m).map(|i| &self.coeffs[i] * &other.coeffs[m - i]).sum())
            .collect();
        Ok(FormalSeries { order: self.order, coeffs })
    }

    pub fn scale(&self, c: &BigInt) -> FormalSeries {
        FormalSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn scale_poly(&self, c: &UniPoly) -> FormalSeries {
        FormalSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|p| p * c).collect(),
        }
    }

    pub fn div_exact_scalar(&self, d: &BigInt) -> Result<FormalSeries> {
        Ok(FormalSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|p| p.div_exact_scalar(d))
                .collect::<Result<_>>()?,
        })
    }

    /// Term-by-term antiderivative with the given constant term: the
    /// coefficient at `u^(m+1)` is the `u^m` coefficient divided by `m + 1`,
    /// which must be exact. The top coefficient falls off the truncation.
    pub fn integrate(&self, constant: UniPoly) -> Result<FormalSeries> {
        let mut coeffs = Vec::with_capacity(self.order + 1);
        coeffs.push(constant);
        for m in 0..self.order {
            let q = self.coeffs[m]
                .div_exact_scalar(&BigInt::from(m + 1))
                .map_err(|e| Error::InexactDivision(format!("integrating u^{m}: {e}")))?;
            coeffs.push(q);
        }
        Ok(FormalSeries { order: self.order, coeffs })
    }
}
