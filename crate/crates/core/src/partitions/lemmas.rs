//! Exhaustive checks of the two generating-function lemmas that lead to the
//! closed form of `P_k`:
//!
//! * shift lemma: `d_i (N_i(x, d) - 1) = d_0 (N_0(x, d) - 1)` for `1 <= i <= p`,
//!   together with its coefficient form
//!   `N_i(k, j_0 + 1, j_1, ..., j_p) = N_0(k, j_0, ..., j_i + 1, ..., j_p)`
//!   and the rotation bijection behind it;
//! * product lemma: `N_0(x, d) - 1 = x d_1 ... d_p prod_{i=0}^{p} N_i(x, d)`,
//!   together with the recurrence for `N_0(k, j)` it encodes.
//!
//! Both sides are always computed from enumerated partitions.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exact::compositions;
use crate::poly::MultiPoly;
use crate::report::VerificationReport;
use crate::series::TruncatedSeries;

use super::{
    build_word, enumerate_adapted, leg_profile, phi_pow, profile_histogram, shifted_moment_poly,
    PairPartition, WordSpec,
};

type Histogram = BTreeMap<Vec<u32>, u64>;

fn check_bounds(p: usize, k_max: usize, budget: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be >= 1".into()));
    }
    let points = 2 * p * k_max;
    if points > budget {
        return Err(Error::BudgetExceeded { points, budget });
    }
    Ok(())
}

/// `N_shift(x, d)` truncated at `x^k_max`, built from enumeration.
fn enumerated_series(
    p: usize,
    shift: usize,
    k_max: usize,
    budget: usize,
) -> Result<TruncatedSeries> {
    let coeffs = (0..=k_max)
        .map(|k| shifted_moment_poly(&WordSpec::new(p, shift, k)?, budget))
        .collect::<Result<Vec<_>>>()?;
    TruncatedSeries::from_coeffs(k_max, p + 1, coeffs)
}

/// `(j_0 - 1, ..., j_i + 1, ...)`, the profile change under `phi^i`.
fn shifted_profile(j: &[u32], i: usize) -> Option<Vec<u32>> {
    let mut out = j.to_vec();
    out[0] = out[0].checked_sub(1)?;
    out[i] += 1;
    Some(out)
}

pub fn verify_shift_lemma(p: usize, k_max: usize, budget: usize) -> Result<VerificationReport> {
    check_bounds(p, k_max, budget)?;
    let mut report = VerificationReport::new("shift-lemma");

    for k in 1..=k_max {
        let spec0 = WordSpec::new(p, 0, k)?;
        let word0 = build_word(&spec0);
        let hist0 = profile_histogram(&spec0, budget)?;
        let targets: BTreeSet<PairPartition> = enumerate_adapted(&spec0).into_iter().collect();

        for i in 1..=p {
            let spec = WordSpec::new(p, i, k)?;
            let word = build_word(&spec);
            let hist = profile_histogram(&spec, budget)?;

            // Coefficient identity, read as equality of the two profile maps.
            let lhs: Histogram = hist
                .iter()
                .filter_map(|(j, &c)| shifted_profile(j, i).map(|s| (s, c)))
                .collect();
            let rhs: Histogram = hist0
                .iter()
                .filter(|(j, _)| j[i] >= 1)
                .map(|(j, &c)| (j.clone(), c))
                .collect();
            for key in lhs.keys().chain(rhs.keys()).collect::<BTreeSet<_>>() {
                let (l, r) = (
                    lhs.get(key).copied().unwrap_or(0),
                    rhs.get(key).copied().unwrap_or(0),
                );
                report.check(l == r, || {
                    format!("p={p} k={k} i={i} profile {key:?}: N_i side {l}, N_0 side {r}")
                });
            }

            // phi^i is a bijection onto the W_0-adapted set with the stated shift.
            let sources = enumerate_adapted(&spec);
            let mut images = BTreeSet::new();
            for pi in &sources {
                let image = phi_pow(pi, i)?;
                let before = leg_profile(pi, &word)?;
                report.check(
                    image.is_noncrossing() && image.is_adapted_to(&word0),
                    || format!("p={p} k={k} i={i}: phi^i({pi}) = {image} is not adapted to W_0"),
                );
                if let Ok(after) = leg_profile(&image, &word0) {
                    let expected = shifted_profile(&before.0, i);
                    report.check(expected.as_ref() == Some(&after.0), || {
                        format!(
                            "p={p} k={k} i={i}: phi^i({pi}) has profile {after}, expected shift of {before}"
                        )
                    });
                }
                let back = phi_pow(&image, image.size() - i % image.size())?;
                report.check(&back == pi, || {
                    format!("p={p} k={k} i={i}: inverse does not return {pi}")
                });
                images.insert(image);
            }
            report.check(images == targets, || {
                format!(
                    "p={p} k={k} i={i}: phi^i image has {} partitions, W_0 set has {}",
                    images.len(),
                    targets.len()
                )
            });
        }
    }

    // Series form of the lemma.
    let n0 = enumerated_series(p, 0, k_max, budget)?;
    let one = TruncatedSeries::one(k_max, p + 1);
    let d0 = MultiPoly::var(p + 1, 0);
    let rhs = n0.sub(&one)?.mul_poly(&d0)?;
    for i in 1..=p {
        let ni = enumerated_series(p, i, k_max, budget)?;
        let lhs = ni.sub(&one)?.mul_poly(&MultiPoly::var(p + 1, i))?;
        report.check(lhs == rhs, || {
            format!("p={p} i={i}: d_i (N_i - 1) != d_0 (N_0 - 1) through x^{k_max}")
        });
    }
    Ok(report)
}

pub fn verify_product_lemma(p: usize, k_max: usize, budget: usize) -> Result<VerificationReport> {
    check_bounds(p, k_max, budget)?;
    let mut report = VerificationReport::new("product-lemma");
    let nv = p + 1;

    // Series identity.
    let series: Vec<TruncatedSeries> = (0..=p)
        .map(|i| enumerated_series(p, i, k_max, budget))
        .collect::<Result<_>>()?;
    let mut prod = TruncatedSeries::one(k_max, nv);
    for s in &series {
        prod = prod.mul(s)?;
    }
    let mut d1p = vec![1u32; nv];
    d1p[0] = 0;
    let rhs = prod
        .mul_x()
        .mul_poly(&MultiPoly::monomial(d1p.clone(), crate::scalar::int(1)))?;
    let lhs = series[0].sub(&TruncatedSeries::one(k_max, nv))?;
    report.check(lhs == rhs, || {
        format!("p={p}: N_0 - 1 != x d_1...d_p prod N_i through x^{k_max}")
    });

    // Recurrence on profile counts: glue sub-partitions sigma_i adapted to
    // W_i^{k_i} with k_0 + ... + k_p = k - 1, then add the p outer blocks.
    let hists: Vec<Vec<Histogram>> = (0..=p)
        .map(|i| {
            (0..k_max)
                .map(|k| profile_histogram(&WordSpec::new(p, i, k)?, budget))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for k in 1..=k_max {
        let mut glued: Histogram = BTreeMap::new();
        for ks in compositions(nv, (k - 1) as u32, 0, (k - 1) as u32) {
            let mut acc: Histogram = BTreeMap::from([(d1p.clone(), 1u64)]);
            for (i, &ki) in ks.iter().enumerate() {
                let mut next = BTreeMap::new();
                for (a, &ca) in &acc {
                    for (b, &cb) in &hists[i][ki as usize] {
                        let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        *next.entry(sum).or_insert(0) += ca * cb;
                    }
                }
                acc = next;
            }
            for (j, c) in acc {
                *glued.entry(j).or_insert(0) += c;
            }
        }
        let direct = profile_histogram(&WordSpec::new(p, 0, k)?, budget)?;
        for key in glued.keys().chain(direct.keys()).collect::<BTreeSet<_>>() {
            let (g, d) = (
                glued.get(key).copied().unwrap_or(0),
                direct.get(key).copied().unwrap_or(0),
            );
            report.check(g == d, || {
                format!("p={p} k={k} profile {key:?}: recurrence gives {g}, enumeration {d}")
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::DEFAULT_BUDGET;

    #[test]
    fn shift_lemma_small_cases() {
        for (p, k_max) in [(2, 2), (1, 4), (3, 1)] {
            let r = verify_shift_lemma(p, k_max, DEFAULT_BUDGET).unwrap();
            assert!(r.passed(), "{:?}", r.mismatches);
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn product_lemma_small_cases() {
        for (p, k_max) in [(2, 2), (1, 3)] {
            let r = verify_product_lemma(p, k_max, DEFAULT_BUDGET).unwrap();
            assert!(r.passed(), "{:?}", r.mismatches);
        }
    }

    #[test]
    fn first_coefficient_is_d1_to_dp() {
        let s = enumerated_series(3, 0, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            *s.coeff(1),
            MultiPoly::monomial(vec![0, 1, 1, 1], crate::scalar::int(1))
        );
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(
            verify_shift_lemma(3, 3, 16),
            Err(Error::BudgetExceeded {
                points: 18,
                budget: 16
            })
        );
    }

    #[test]
    fn shifted_profile_needs_positive_j0() {
        assert_eq!(shifted_profile(&[0, 1, 1], 1), None);
        assert_eq!(shifted_profile(&[2, 1, 1], 2), Some(vec![1, 1, 2]));
    }
}
