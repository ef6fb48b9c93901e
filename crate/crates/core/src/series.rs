//! Truncated formal power series in one variable `x` whose coefficients are
//! [`MultiPoly`] values, plus the two solvers for `g = x * prod(g + d_i)`:
//! fixed-point iteration on series and Lagrange inversion.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::{format_scalar, ExactScalar};

/// Power series `c_0 + c_1 x + ... + c_K x^K`; anything of higher `x`-degree
/// is discarded by every operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    num_vars: usize,
    coeffs: Vec<MultiPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize, num_vars: usize) -> Self {
        Self {
            num_vars,
            coeffs: vec![MultiPoly::zero(num_vars); order + 1],
        }
    }

    pub fn one(order: usize, num_vars: usize) -> Self {
        Self::constant(order, MultiPoly::one(num_vars))
    }

    pub fn constant(order: usize, c: MultiPoly) -> Self {
        let mut s = Self::zero(order, c.num_vars());
        s.coeffs[0] = c;
        s
    }

    /// The series `x` (zero when `order == 0`).
    pub fn x(order: usize, num_vars: usize) -> Self {
        let mut s = Self::zero(order, num_vars);
        if order >= 1 {
            s.coeffs[1] = MultiPoly::one(num_vars);
        }
        s
    }

    /// Builds a series from coefficient polynomials; missing high coefficients
    /// are zero and extra ones are truncated.
    pub fn from_coeffs(order: usize, num_vars: usize, coeffs: Vec<MultiPoly>) -> Result<Self> {
        let mut s = Self::zero(order, num_vars);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            if c.num_vars() != num_vars {
                return Err(Error::ArityMismatch {
                    left: num_vars,
                    right: c.num_vars(),
                });
            }
            s.coeffs[k] = c;
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn coeff(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() || self.num_vars != other.num_vars {
            return Err(Error::ShapeMismatch {
                left_order: self.order(),
                left_vars: self.num_vars,
                right_order: other.order(),
                right_vars: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Self {
            num_vars: self.num_vars,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Self {
            num_vars: self.num_vars,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let order = self.order();
        let mut out = Self::zero(order, self.num_vars);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by the polynomial `c`.
    pub fn mul_poly(&self, c: &MultiPoly) -> Result<Self> {
        if c.num_vars() != self.num_vars {
            return Err(Error::ArityMismatch {
                left: self.num_vars,
                right: c.num_vars(),
            });
        }
        Ok(Self {
            num_vars: self.num_vars,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        })
    }

    /// Multiplies by `x`, dropping the coefficient that falls off the end.
    pub fn mul_x(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(MultiPoly::zero(self.num_vars));
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        Self {
            num_vars: self.num_vars,
            coeffs,
        }
    }

    /// Multiplicative inverse; the constant term must be a nonzero scalar.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or(Error::NotInvertible)?;
        let inv0 = ExactScalar::one() / c0;
        let order = self.order();
        let mut out = Self::zero(order, self.num_vars);
        out.coeffs[0] = MultiPoly::constant(self.num_vars, inv0.clone());
        for n in 1..=order {
            let mut acc = MultiPoly::zero(self.num_vars);
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[k] * &out.coeffs[n - k]);
            }
            out.coeffs[n] = acc.scale(&-inv0.clone());
        }
        Ok(out)
    }

    /// Composition `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_shape(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::InvalidParameter(
                "inner series of a composition must vanish at 0".into(),
            ));
        }
        // Horner: c_K, then acc * inner + c_{k}.
        let order = self.order();
        let mut acc = Self::constant(order, self.coeffs[order].clone());
        for k in (0..order).rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] = &acc.coeffs[0] + &self.coeffs[k];
        }
        Ok(acc)
    }

    pub fn display_with(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("x^{k}: {}", c.display_with(vars)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("; ")
        }
    }
}

/// Solves `g = x * prod_i (g + shifts[i])` with `g(0) = 0` modulo
/// `x^(order+1)` by fixed-point iteration. Pass `n` fixes the coefficient of
/// `x^n`, so `order` passes suffice.
pub fn solve_fixed_point(shifts: &[MultiPoly], order: usize) -> Result<TruncatedSeries> {
    let num_vars = shifts
        .first()
        .map(MultiPoly::num_vars)
        .ok_or_else(|| Error::InvalidParameter("need at least one factor".into()))?;
    let mut g = TruncatedSeries::zero(order, num_vars);
    for _ in 0..order {
        g = x_times_product(&g, shifts)?;
    }
    Ok(g)
}

fn x_times_product(g: &TruncatedSeries, shifts: &[MultiPoly]) -> Result<TruncatedSeries> {
    let order = g.order();
    let mut prod = TruncatedSeries::one(order, g.num_vars());
    for d in shifts {
        let factor = g.add(&TruncatedSeries::constant(order, d.clone()))?;
        prod = prod.mul(&factor)?;
    }
    Ok(prod.mul_x())
}

/// `g - x * prod(g + shifts[i])`; the zero series when `g` solves the
/// functional equation to its order.
pub fn fixed_point_residual(g: &TruncatedSeries, shifts: &[MultiPoly]) -> Result<TruncatedSeries> {
    g.sub(&x_times_product(g, shifts)?)
}

/// Symbolic solution with `d0..dp` as the `p + 1` variables. The coefficient
/// of `x^k` is `R_k(d) = sum N(k, j) d^j` over `|j| = pk + 1`.
pub fn solve_functional_equation(p: usize, order: usize) -> Result<TruncatedSeries> {
    if p == 0 || order == 0 {
        return Err(Error::InvalidParameter(format!(
            "need p >= 1 and order >= 1, got p = {p}, order = {order}"
        )));
    }
    let vars: Vec<MultiPoly> = (0..=p).map(|i| MultiPoly::var(p + 1, i)).collect();
    solve_fixed_point(&vars, order)
}

/// `[z^n] f = (1/n) [lambda^(n-1)] H(lambda)^n` for `f = z H(f)`, where `H` is
/// given by its coefficient list in `lambda`. Every coefficient of the result
/// must be integral when `H` has integer coefficients; this is asserted.
pub fn lagrange_inversion_coefficient(h: &[MultiPoly], n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let num_vars = h
        .first()
        .map(MultiPoly::num_vars)
        .ok_or_else(|| Error::InvalidParameter("H must be nonempty".into()))?;
    let target = n - 1;
    // Univariate polynomial in lambda, kept only up to lambda^(n-1).
    let mut power = vec![MultiPoly::one(num_vars)];
    for _ in 0..n {
        let mut next = vec![MultiPoly::zero(num_vars); (power.len() + h.len() - 1).min(target + 1)];
        for (i, a) in power.iter().enumerate() {
            for (j, b) in h.iter().enumerate() {
                if i + j <= target && !a.is_zero() && !b.is_zero() {
                    next[i + j] = &next[i + j] + &(a * b);
                }
            }
        }
        power = next;
    }
    let coeff = power
        .get(target)
        .cloned()
        .unwrap_or_else(|| MultiPoly::zero(num_vars));
    let result = coeff.scale(&(ExactScalar::one() / ExactScalar::from_integer(n.into())));
    if let Some((_, c)) = result.terms().find(|(_, c)| !c.is_integer()) {
        return Err(Error::NonIntegral(format_scalar(c)));
    }
    Ok(result)
}

/// Lagrange coefficient for `H(lambda) = prod_{i=0}^{p} (lambda + d_i)`.
pub fn lagrange_coefficient(p: usize, n: usize) -> Result<MultiPoly> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be >= 1".into()));
    }
    let nv = p + 1;
    // Expand H by repeated multiplication with (lambda + d_i).
    let mut h = vec![MultiPoly::one(nv)];
    for i in 0..=p {
        let mut next = vec![MultiPoly::zero(nv); h.len() + 1];
        let d = MultiPoly::var(nv, i);
        for (k, c) in h.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            next[k] = &next[k] + &(c * &d);
        }
        h = next;
    }
    lagrange_inversion_coefficient(&h, n)
}
