//! Complex matrices stored as a pair of real matrices, so that every product
//! goes through the real GEMM kernel. A missing imaginary part means zero.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::Ensemble;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub re: DMatrix<f64>,
    pub im: Option<DMatrix<f64>>,
}

impl CMatrix {
    pub fn real(re: DMatrix<f64>) -> Self {
        Self { re, im: None }
    }

    /// Entries with `E|x|^2 = sd^2`; complex entries split the variance evenly.
    pub fn gaussian<R: Rng>(
        rows: usize,
        cols: usize,
        sd: f64,
        ensemble: Ensemble,
        rng: &mut R,
    ) -> Self {
        match ensemble {
            Ensemble::Real => Self::real(DMatrix::from_fn(rows, cols, |_, _| {
                sd * rng.sample::<f64, _>(StandardNormal)
            })),
            Ensemble::Complex => {
                let s = sd * std::f64::consts::FRAC_1_SQRT_2;
                let re =
                    DMatrix::from_fn(rows, cols, |_, _| s * rng.sample::<f64, _>(StandardNormal));
                let im =
                    DMatrix::from_fn(rows, cols, |_, _| s * rng.sample::<f64, _>(StandardNormal));
                Self { re, im: Some(im) }
            }
        }
    }

    pub fn nrows(&self) -> usize {
        self.re.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.re.ncols()
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        let re_re = &self.re * &other.re;
        match (&self.im, &other.im) {
            (None, None) => CMatrix::real(re_re),
            (Some(a), None) => CMatrix {
                re: re_re,
                im: Some(a * &other.re),
            },
            (None, Some(b)) => CMatrix {
                re: re_re,
                im: Some(&self.re * b),
            },
            (Some(a), Some(b)) => CMatrix {
                re: re_re - a * b,
                im: Some(&self.re * b + a * &other.re),
            },
        }
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix {
            re: self.re.transpose(),
            im: self.im.as_ref().map(|m| -m.transpose()),
        }
    }

    pub fn trace_re(&self) -> f64 {
        self.re.trace()
    }

    /// `Re Tr(self * other)` without forming the product.
    pub fn trace_of_product(&self, other: &CMatrix) -> f64 {
        let rr = self.re.dot(&other.re.transpose());
        match (&self.im, &other.im) {
            (Some(a), Some(b)) => rr - a.dot(&b.transpose()),
            _ => rr,
        }
    }
}

/// `Tr(G^k)` for `k = 1..=k_max`, from powers up to `ceil(k_max / 2)`.
fn power_traces(g: &CMatrix, k_max: usize) -> Vec<f64> {
    let half = k_max.div_ceil(2);
    let mut powers = vec![g.clone()];
    while powers.len() < half {
        let next = powers.last().expect("nonempty").mul(g);
        powers.push(next);
    }
    (1..=k_max)
        .map(|k| {
            if k == 1 {
                g.trace_re()
            } else {
                let a = k / 2;
                powers[a - 1].trace_of_product(&powers[k - a - 1])
            }
        })
        .collect()
}

/// `(1 / N_0) Tr((B B*)^k)` for `k = 1..=k_max`, using whichever Gram matrix is smaller.
pub fn trace_moments(b: &CMatrix, k_max: usize) -> Vec<f64> {
    let bs = b.adjoint();
    let gram = if b.nrows() <= b.ncols() {
        b.mul(&bs)
    } else {
        bs.mul(b)
    };
    let n0 = b.nrows() as f64;
    power_traces(&gram, k_max)
        .into_iter()
        .map(|t| t / n0)
        .collect()
}

/// Unnormalized `Tr((B B*)^k)` and `Tr((B* B)^k)`, each from its own Gram matrix.
/// The first route is the smaller Gram product.
pub fn trace_moments_both(b: &CMatrix, k_max: usize) -> (Vec<f64>, Vec<f64>) {
    let bs = b.adjoint();
    let outer = power_traces(&b.mul(&bs), k_max);
    let inner = power_traces(&bs.mul(b), k_max);
    if b.nrows() <= b.ncols() {
        (outer, inner)
    } else {
        (inner, outer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trial_rng;

    fn naive_moments(b: &CMatrix, k_max: usize) -> Vec<f64> {
        let g = b.mul(&b.adjoint());
        let mut acc = g.clone();
        let mut out = vec![acc.trace_re() / b.nrows() as f64];
        for _ in 1..k_max {
            acc = acc.mul(&g);
            out.push(acc.trace_re() / b.nrows() as f64);
        }
        out
    }

    #[test]
    fn scalar_matrix_moments() {
        let b = CMatrix::real(DMatrix::from_element(1, 1, 1.5));
        let m = trace_moments(&b, 4);
        for (k, v) in m.iter().enumerate() {
            assert!((v - 1.5f64.powi(2 * (k as i32 + 1))).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_scalar_modulus() {
        let b = CMatrix {
            re: DMatrix::from_element(1, 1, 0.6),
            im: Some(DMatrix::from_element(1, 1, 0.8)),
        };
        let m = trace_moments(&b, 3);
        assert!(m.iter().all(|v| (v - 1.0).abs() < 1e-12), "{m:?}");
    }

    #[test]
    fn first_moment_is_frobenius_norm() {
        let mut rng = trial_rng(9, 0);
        let b = CMatrix::gaussian(5, 7, 1.0, Ensemble::Complex, &mut rng);
        let fro = b.re.norm_squared() + b.im.as_ref().unwrap().norm_squared();
        assert!((trace_moments(&b, 1)[0] - fro / 5.0).abs() < 1e-12);
    }

    #[test]
    fn split_powers_match_repeated_multiplication() {
        for (rows, cols, ens) in [
            (4, 6, Ensemble::Real),
            (6, 3, Ensemble::Complex),
            (5, 5, Ensemble::Complex),
        ] {
            let b = CMatrix::gaussian(rows, cols, 0.7, ens, &mut trial_rng(2, 1));
            let fast = trace_moments(&b, 5);
            let slow = naive_moments(&b, 5);
            for (f, s) in fast.iter().zip(&slow) {
                assert!((f - s).abs() <= 1e-12 * s.abs(), "{fast:?} vs {slow:?}");
            }
        }
    }

    #[test]
    fn both_routes_agree() {
        let b = CMatrix::gaussian(8, 3, 1.0, Ensemble::Complex, &mut trial_rng(4, 4));
        let (x, y) = trace_moments_both(&b, 4);
        for (a, c) in x.iter().zip(&y) {
            assert!((a - c).abs() <= 1e-9 * a.abs());
        }
    }

    #[test]
    fn complex_product_matches_definition() {
        let a = CMatrix {
            re: DMatrix::from_row_slice(1, 2, &[1.0, 2.0]),
            im: Some(DMatrix::from_row_slice(1, 2, &[0.0, 1.0])),
        };
        let b = CMatrix {
            re: DMatrix::from_row_slice(2, 1, &[3.0, 0.0]),
            im: Some(DMatrix::from_row_slice(2, 1, &[1.0, -1.0])),
        };
        // (1)(3+i) + (2+i)(-i) = 3 + i - 2i + 1 = 4 - i
        let c = a.mul(&b);
        assert_eq!(c.re[(0, 0)], 4.0);
        assert_eq!(c.im.unwrap()[(0, 0)], -1.0);
    }
}
