//! Named verification sweeps shared by the command line and the test suites.

use crate::error::Result;
use crate::exact::{closed_form_pk, fuss_catalan, fuss_narayana_poly};
use crate::freeprob::{
    convolution_moments_closed, psi_moments, quadrature_moments, s_transform_check, ShapeVector,
};
use crate::partitions::{
    brute_force_pk, count_adapted, verify_product_lemma, verify_shift_lemma, WordSpec,
};
use crate::poly::MultiPoly;
use crate::report::VerificationReport;
use crate::scalar::{format_scalar, int, ratio, to_f64, ExactScalar};
use crate::series::{lagrange_coefficient, solve_functional_equation};

/// Largest `p` covered by the oracle sweep.
pub const ORACLE_MAX_P: usize = 3;

/// Relative tolerance for quadrature moments against exact values.
pub const QUADRATURE_CHECK_TOL: f64 = 1e-8;

/// Largest `k` with `2pk <= budget`.
pub fn max_k_within(p: usize, budget: usize) -> usize {
    budget / (2 * p)
}

/// Enumeration, closed form, fixed-point series and Lagrange inversion agree
/// for every `p <= 3` and `2pk <= budget`; adapted counts equal Fuss-Catalan
/// numbers for every shift.
pub fn oracle_suite(budget: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("oracle");
    for p in 1..=ORACLE_MAX_P {
        let k_max = max_k_within(p, budget);
        if k_max == 0 {
            continue;
        }
        let series = solve_functional_equation(p, k_max)?;
        for k in 0..=k_max {
            let closed = closed_form_pk(p, k);
            report.check(closed.is_homogeneous_of((p * k) as u32), || {
                format!(
                    "p={p} k={k}: closed form is not homogeneous of degree {}",
                    p * k
                )
            });
            report.check(closed.all_integral(), || {
                format!("p={p} k={k}: non-integral coefficient")
            });
            let brute = brute_force_pk(p, k, budget)?;
            report.check(brute == closed, || {
                format!("p={p} k={k}: enumeration differs from closed form")
            });
            if k == 0 {
                continue;
            }
            let from_series = series.coeff(k).divide_by_var(0);
            report.check(from_series.as_ref() == Some(&closed), || {
                format!("p={p} k={k}: series coefficient / d0 differs from closed form")
            });
            let from_lagrange = lagrange_coefficient(p, k).map(|c| c.divide_by_var(0));
            report.check(
                matches!(&from_lagrange, Ok(Some(c)) if *c == closed),
                || format!("p={p} k={k}: Lagrange coefficient / d0 differs from closed form"),
            );
            let catalan = fuss_catalan(p as u64, k as u64)?;
            report.check(closed.coefficient_sum() == catalan, || {
                format!("p={p} k={k}: P_k(1,...,1) != C_k")
            });
            for shift in 0..=p {
                let count = count_adapted(&WordSpec::new(p, shift, k)?, budget)?;
                report.check(int(count) == catalan, || {
                    format!(
                        "p={p} k={k} shift={shift}: {count} adapted partitions, C_k = {}",
                        format_scalar(&catalan)
                    )
                });
            }
        }
    }
    Ok(report)
}

/// Both generating-function lemmas for `p <= p_max`, `k <= k_max`, plus
/// `p = 1` up to the largest `k` the budget allows (capped at 4).
pub fn lemma_suite(p_max: usize, k_max: usize, budget: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("lemmas");
    let mut cases: Vec<(usize, usize)> = (1..=p_max).map(|p| (p, k_max)).collect();
    let k1 = max_k_within(1, budget).min(4);
    if k1 > k_max {
        cases.push((1, k1));
    }
    for (p, k) in cases {
        report.absorb(verify_shift_lemma(p, k, budget)?);
        report.absorb(verify_product_lemma(p, k, budget)?);
    }
    Ok(report)
}

/// Shape vectors used by [`freeprob_suite`].
pub fn sample_shapes() -> Vec<ShapeVector> {
    let sets: Vec<Vec<ExactScalar>> = vec![
        vec![int(1)],
        vec![int(2)],
        vec![ratio(1, 2)],
        vec![int(1), int(1)],
        vec![int(2), ratio(1, 3)],
        vec![int(1), int(1), int(1)],
        vec![ratio(3, 2), ratio(1, 2), int(2)],
        vec![int(1), int(2), int(3), ratio(1, 4)],
    ];
    sets.into_iter()
        .map(|s| ShapeVector::new(s).expect("positive"))
        .collect()
}

/// Moments from the `psi` equation against `F_k`, the S-transform relations,
/// and for single Marchenko-Pastur laws the quadrature moments.
pub fn freeprob_suite(k_max: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("freeprob");
    let order = k_max.max(2);
    for ts in sample_shapes() {
        let label = ts
            .entries()
            .iter()
            .map(format_scalar)
            .collect::<Vec<_>>()
            .join(",");
        let psi = psi_moments(&ts, order)?;
        let closed = convolution_moments_closed(&ts, order)?;
        report.check(psi == closed, || {
            format!("t=({label}): psi moments differ from F_k")
        });
        report.absorb(s_transform_check(&ts, order)?);
    }
    for t in [ratio(1, 2), int(1), int(2)] {
        let tf = to_f64(&t);
        let q_order = k_max.min(8);
        let numeric = quadrature_moments(tf, q_order)?;
        for (i, q) in numeric.iter().enumerate() {
            let exact = to_f64(&fuss_narayana_poly(1, i + 1).eval(std::slice::from_ref(&t))?);
            let rel = (q - exact).abs() / exact.abs();
            report.check(rel <= QUADRATURE_CHECK_TOL, || {
                format!(
                    "t={tf} k={}: quadrature {q} vs {exact} (rel {rel:e})",
                    i + 1
                )
            });
        }
    }
    Ok(report)
}

/// `P_k` by the method named in `method`: `closed`, `enumerate`, or `series`.
pub fn pk_by_method(method: &str, p: usize, k: usize, budget: usize) -> Result<MultiPoly> {
    match method {
        "enumerate" => brute_force_pk(p, k, budget),
        "series" => {
            if k == 0 {
                return Ok(MultiPoly::one(p + 1));
            }
            let s = solve_functional_equation(p, k)?;
            s.coeff(k).divide_by_var(0).ok_or_else(|| {
                crate::Error::NonIntegral(format!("x^{k} coefficient is not divisible by d0"))
            })
        }
        _ => Ok(closed_form_pk(p, k)),
    }
}
