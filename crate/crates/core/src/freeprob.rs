//! Marchenko-Pastur laws and the moments of their free multiplicative
//! convolutions.
//!
//! The moment series `psi(z) = sum_{k>=1} m_k z^k` of
//! `rho_{t_1} ⊠ ... ⊠ rho_{t_p}` satisfies
//! `psi = z (psi + 1)(psi + t_1)...(psi + t_p)`, which is the functional
//! equation of [`crate::series::solve_fixed_point`] with shifts `(1, t_1, ..., t_p)`.
//! Its coefficients are therefore the multivariate Fuss-Narayana polynomials
//! evaluated at the shape parameters, and both routes are exposed here.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::fuss_narayana_poly;
use crate::poly::MultiPoly;
use crate::quad::integrate;
use crate::report::VerificationReport;
use crate::scalar::{format_scalar, int, ratio, round_significant, to_f64, ExactScalar};
use crate::series::{solve_fixed_point, TruncatedSeries};

/// Relative accuracy demanded of every quadrature in this module.
pub const QUAD_REL_TOL: f64 = 1e-12;
const QUAD_MAX_SEGMENTS: usize = 400;

/// Shape parameters `(t_1, ..., t_p)`, all strictly positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeVector(Vec<ExactScalar>);

impl ShapeVector {
    pub fn new(entries: Vec<ExactScalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter(
                "need at least one shape parameter".into(),
            ));
        }
        if let Some(bad) = entries.iter().find(|t| *t <= &ExactScalar::zero()) {
            return Err(Error::InvalidParameter(format!(
                "shape parameters must be positive, got {}",
                format_scalar(bad)
            )));
        }
        Ok(Self(entries))
    }

    pub fn from_integers(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&t| int(t)).collect())
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.0
    }

    pub fn p(&self) -> usize {
        self.0.len()
    }
}

/// Exact moments `m_1..m_K` of a convolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTable {
    pub params: ShapeVector,
    pub values: Vec<ExactScalar>,
}

impl MomentTable {
    pub fn max_order(&self) -> usize {
        self.values.len()
    }

    /// `m_k` for `1 <= k <= max_order`.
    pub fn moment(&self, k: usize) -> &ExactScalar {
        &self.values[k - 1]
    }

    /// CSV with columns `k,moment`, plus `numeric,abs_diff` when numeric
    /// estimates are supplied. Floats carry 12 significant digits.
    pub fn to_csv(&self, numeric: Option<&[f64]>) -> String {
        let mut out = String::new();
        match numeric {
            None => out.push_str("k,moment\n"),
            Some(_) => out.push_str("k,moment,numeric,abs_diff\n"),
        }
        for (i, m) in self.values.iter().enumerate() {
            let _ = write!(out, "{},{}", i + 1, format_scalar(m));
            if let Some(est) = numeric.and_then(|n| n.get(i)) {
                let diff = (est - to_f64(m)).abs();
                let _ = write!(
                    out,
                    ",{},{}",
                    round_significant(*est, 12),
                    round_significant(diff, 12)
                );
            }
            out.push('\n');
        }
        out
    }
}

/// `rho_t = max(1 - t, 0) delta_0 + sqrt((x - a)(b - x)) / (2 pi x) dx on [a, b]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MpLaw {
    pub t: f64,
    pub atom_mass: f64,
    pub a: f64,
    pub b: f64,
}

impl MpLaw {
    pub fn new(t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "Marchenko-Pastur shape must be positive, got {t}"
            )));
        }
        let s = t.sqrt();
        Ok(Self {
            t,
            atom_mass: (1.0 - t).max(0.0),
            a: (1.0 - s).powi(2),
            b: (1.0 + s).powi(2),
        })
    }

    pub fn density(&self, x: f64) -> f64 {
        if x <= self.a || x >= self.b || x <= 0.0 {
            return 0.0;
        }
        ((x - self.a) * (self.b - x)).sqrt() / (2.0 * PI * x)
    }

    /// `int x^k rho_t(dx)` over the continuous part.
    ///
    /// With `x = c + r sin(theta)`, `c = (a + b) / 2`, `r = (b - a) / 2`, the
    /// square-root edges become the smooth factor `r^2 cos^2(theta)`.
    pub fn continuous_moment(&self, k: u32) -> Result<f64> {
        let c = 0.5 * (self.a + self.b);
        let r = 0.5 * (self.b - self.a);
        let scale = r * r / (2.0 * PI);
        let integrand = |theta: f64| {
            let x = c + r * theta.sin();
            let cos2 = theta.cos().powi(2);
            let xpow = if k == 0 {
                1.0 / x
            } else {
                x.powi(k as i32 - 1)
            };
            scale * cos2 * xpow
        };
        integrate(
            integrand,
            -PI / 2.0,
            PI / 2.0,
            QUAD_REL_TOL,
            1e-300,
            QUAD_MAX_SEGMENTS,
        )
        .map(|i| i.value)
    }

    pub fn continuous_mass(&self) -> Result<f64> {
        self.continuous_moment(0)
    }
}

/// Continuous Marchenko-Pastur density; the atom at 0 is reported by [`MpLaw`].
pub fn mp_density(t: f64, x: f64) -> Result<f64> {
    Ok(MpLaw::new(t)?.density(x))
}

fn constant_shifts(ts: &ShapeVector) -> Vec<MultiPoly> {
    std::iter::once(ExactScalar::one())
        .chain(ts.entries().iter().cloned())
        .map(|c| MultiPoly::constant(0, c))
        .collect()
}

fn psi_series(ts: &ShapeVector, order: usize) -> Result<TruncatedSeries> {
    solve_fixed_point(&constant_shifts(ts), order)
}

fn check_order(order: usize, min: usize) -> Result<()> {
    if order < min {
        return Err(Error::InvalidParameter(format!(
            "moment order must be >= {min}, got {order}"
        )));
    }
    Ok(())
}

fn scalar_coeff(s: &TruncatedSeries, k: usize) -> ExactScalar {
    s.coeff(k)
        .as_constant()
        .expect("series over zero variables has scalar coefficients")
}

/// Moments from the `psi` functional equation.
pub fn psi_moments(ts: &ShapeVector, order: usize) -> Result<MomentTable> {
    check_order(order, 1)?;
    let psi = psi_series(ts, order)?;
    Ok(MomentTable {
        params: ts.clone(),
        values: (1..=order).map(|k| scalar_coeff(&psi, k)).collect(),
    })
}

/// Moments as `F_k(t_1, ..., t_p)`.
pub fn convolution_moments_closed(ts: &ShapeVector, order: usize) -> Result<MomentTable> {
    check_order(order, 1)?;
    let values = (1..=order)
        .map(|k| fuss_narayana_poly(ts.p(), k).eval(ts.entries()))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentTable {
        params: ts.clone(),
        values,
    })
}

/// Series checks of the S-transform relations for `rho_{t_1} ⊠ ... ⊠ rho_{t_p}`:
///
/// * `psi(psi^{-1}(z)) = z` and `psi^{-1}(psi(z)) = z` with
///   `psi^{-1}(z) = z / ((1 + z)(z + t_1)...(z + t_p))`;
/// * `S(z) = (1 + z)/z psi^{-1}(z)` equals the product of the individual
///   transforms `1/(z + t_i)`;
/// * the same product identity evaluated exactly at a few rational points.
pub fn s_transform_check(ts: &ShapeVector, order: usize) -> Result<VerificationReport> {
    check_order(order, 2)?;
    let mut report = VerificationReport::new("s-transform");
    let z = TruncatedSeries::x(order, 0);
    let konst = |c: ExactScalar| TruncatedSeries::constant(order, MultiPoly::constant(0, c));
    let one = konst(ExactScalar::one());

    let mut denom = one.add(&z)?;
    let mut product_of_s = one.clone();
    for t in ts.entries() {
        let factor = z.add(&konst(t.clone()))?;
        denom = denom.mul(&factor)?;
        product_of_s = product_of_s.mul(&factor.reciprocal()?)?;
    }
    let recip = denom.reciprocal()?;
    let psi_inv = recip.mul_x();
    let psi = psi_series(ts, order)?;

    report.check(psi.compose(&psi_inv)? == z, || {
        format!("psi(psi^-1(z)) != z through z^{order}")
    });
    report.check(psi_inv.compose(&psi)? == z, || {
        format!("psi^-1(psi(z)) != z through z^{order}")
    });

    // (1 + z)/z * psi^{-1}(z) = (1 + z) * recip
    let s_series = one.add(&z)?.mul(&recip)?;
    report.check(s_series == product_of_s, || {
        "S(z) != prod 1/(z + t_i) as series".to_owned()
    });
    let mut check_unit = s_series.clone();
    for t in ts.entries() {
        check_unit = check_unit.mul(&z.add(&konst(t.clone()))?)?;
    }
    report.check(check_unit == one, || "S(z) prod (z + t_i) != 1".to_owned());

    for point in [ratio(1, 2), int(1), int(3)] {
        let mut closed_denom = &ExactScalar::one() + &point;
        let mut product = ExactScalar::one();
        for t in ts.entries() {
            closed_denom *= &point + t;
            product /= &point + t;
        }
        let psi_inv_at = &point / &closed_denom;
        let s_at = (&ExactScalar::one() + &point) / &point * psi_inv_at;
        report.check(s_at == product, || {
            format!("S({}) != prod 1/(z + t_i)", format_scalar(&point))
        });
    }

    // The inverse printed without its leading z is 1 at z = 0, so it cannot be
    // a compositional inverse of psi; record that the z-restored form is used.
    report.check(!recip.coeff(0).is_zero(), || {
        "1/((1+z)prod(z+t_i)) unexpectedly vanishes at 0".to_owned()
    });
    Ok(report)
}

/// `m_k = int x^k d rho_t` for `k = 1..=order` by quadrature (the atom at 0
/// contributes nothing for `k >= 1`).
pub fn quadrature_moments(t: f64, order: usize) -> Result<Vec<f64>> {
    check_order(order, 1)?;
    if order > 8 {
        return Err(Error::InvalidParameter(format!(
            "quadrature moments are limited to order 8, got {order}"
        )));
    }
    let law = MpLaw::new(t)?;
    (1..=order as u32)
        .map(|k| law.continuous_moment(k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::fuss_catalan;

    #[test]
    fn density_vanishes_at_edges_and_outside() {
        let law = MpLaw::new(1.0).unwrap();
        assert_eq!(law.a, 0.0);
        assert_eq!(law.b, 4.0);
        assert_eq!(law.density(4.0), 0.0);
        assert_eq!(law.density(5.0), 0.0);
        assert!(law.density(1e-12) > 0.0);
        assert!(law.density(4.0 - 1e-9) < 1e-4);
        assert!(mp_density(0.0, 1.0).is_err());
        assert!(mp_density(-1.0, 1.0).is_err());
    }

    #[test]
    fn masses() {
        let full = MpLaw::new(1.0).unwrap();
        assert!((full.continuous_mass().unwrap() - 1.0).abs() < 1e-9);
        let half = MpLaw::new(0.5).unwrap();
        assert_eq!(half.atom_mass, 0.5);
        assert!((half.continuous_mass().unwrap() - 0.5).abs() < 1e-9);
        let big = MpLaw::new(2.0).unwrap();
        assert_eq!(big.atom_mass, 0.0);
        assert!((big.continuous_mass().unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn quadrature_small_moments() {
        let m = quadrature_moments(1.0, 3).unwrap();
        assert!((m[1] - 2.0).abs() < 1e-8);
        assert!((m[2] - 5.0).abs() < 1e-8);
        let m = quadrature_moments(0.5, 1).unwrap();
        assert!((m[0] - 0.5).abs() < 1e-8);
        assert!(quadrature_moments(1.0, 9).is_err());
    }

    #[test]
    fn narayana_moments_for_one_factor() {
        let t = ratio(2, 3);
        let ts = ShapeVector::new(vec![t.clone()]).unwrap();
        let m = psi_moments(&ts, 3).unwrap();
        let t2 = &t * &t;
        let t3 = &t2 * &t;
        assert_eq!(*m.moment(1), t);
        assert_eq!(*m.moment(2), &t + &t2);
        assert_eq!(*m.moment(3), &t + &(&t2 * int(3)) + t3);
    }

    #[test]
    fn closed_form_at_two_three() {
        let ts = ShapeVector::from_integers(&[2, 3]).unwrap();
        let m = convolution_moments_closed(&ts, 2).unwrap();
        assert_eq!(*m.moment(2), int(66));
    }

    #[test]
    fn all_ones_gives_fuss_catalan() {
        for p in 1..=4 {
            let ts = ShapeVector::from_integers(&vec![1; p]).unwrap();
            let m = psi_moments(&ts, 6).unwrap();
            for k in 1..=6 {
                assert_eq!(
                    *m.moment(k),
                    fuss_catalan(p as u64, k as u64).unwrap(),
                    "p={p} k={k}"
                );
            }
        }
    }

    #[test]
    fn s_transform_identities() {
        for ts in [vec![1], vec![1, 2], vec![3, 1, 2]] {
            let r = s_transform_check(&ShapeVector::from_integers(&ts).unwrap(), 4).unwrap();
            assert!(r.passed(), "{ts:?}: {:?}", r.mismatches);
        }
        let ts = ShapeVector::from_integers(&[1]).unwrap();
        assert!(s_transform_check(&ts, 1).is_err());
    }

    #[test]
    fn rejects_nonpositive_shapes() {
        assert!(ShapeVector::from_integers(&[1, 0]).is_err());
        assert!(ShapeVector::new(vec![]).is_err());
    }

    #[test]
    fn csv_layout() {
        let ts = ShapeVector::new(vec![ratio(1, 2)]).unwrap();
        let m = psi_moments(&ts, 2).unwrap();
        assert_eq!(m.to_csv(None), "k,moment\n1,1/2\n2,3/4\n");
        let csv = m.to_csv(Some(&[0.5, 0.75]));
        assert_eq!(
            csv,
            "k,moment,numeric,abs_diff\n1,1/2,0.5,0\n2,3/4,0.75,0\n"
        );
    }
}
