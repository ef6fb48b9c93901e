//! Exact combinatorial kernel: binomials, Fuss-Catalan numbers, generalized
//! Fuss-Narayana numbers and the closed-form moment polynomials.
//!
//! Everything here is exact. Quantities that are integers by theory are
//! computed as rationals and then checked for a unit denominator, so a wrong
//! formula shows up as a failed integrality check rather than as a silently
//! truncated value.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::{format_scalar, ExactScalar};

/// `C(n, k)`, zero when `k < 0` or `k > n`.
///
/// Multiplicative formula; each partial product `C(n-k'+i, i)` is an integer,
/// so every division is exact.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `C_k = (1/k) C((p+1)k, pk+1)`.
pub fn fuss_catalan(p: u64, k: u64) -> Result<ExactScalar> {
    if p == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "Fuss-Catalan numbers need p >= 1 and k >= 1, got p = {p}, k = {k}"
        )));
    }
    let value = ExactScalar::new(binomial((p + 1) * k, (p * k + 1) as i64), k.into());
    assert!(
        value.is_integer(),
        "C_{k} for p = {p} is not integral: {}",
        format_scalar(&value)
    );
    Ok(value)
}

/// `N(k, j) = (1/k) prod_i C(k, j_i)` on its support (`|j| = pk + 1` with
/// every `j_i` in `1..=k`, where `p = j.len() - 1`), zero elsewhere.
pub fn gfn_number(k: u64, j: &[u32]) -> ExactScalar {
    if k == 0 || j.len() < 2 {
        return ExactScalar::zero();
    }
    let p = (j.len() - 1) as u64;
    let sum: u64 = j.iter().map(|&x| x as u64).sum();
    if sum != p * k + 1 || j.iter().any(|&x| x == 0 || x as u64 > k) {
        return ExactScalar::zero();
    }
    let numer: BigInt = j.iter().map(|&x| binomial(k, x as i64)).product();
    ExactScalar::new(numer, k.into())
}

/// Both sides of the decomposition `sum_j N(k, j) = C_k`, the left computed
/// by explicit summation over compositions.
pub fn vandermonde_check(p: u64, k: u64) -> Result<(ExactScalar, ExactScalar)> {
    let rhs = fuss_catalan(p, k)?;
    let lhs = compositions(p as usize + 1, (p * k + 1) as u32, 1, k as u32)
        .iter()
        .map(|j| gfn_number(k, j))
        .sum();
    Ok((lhs, rhs))
}

/// All vectors of length `parts` with entries in `lo..=hi` summing to `total`,
/// in lexicographic order.
pub fn compositions(parts: usize, total: u32, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    fn go(parts: usize, total: u32, lo: u32, hi: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest = (parts - 1) as u32;
        // Remaining parts must be able to absorb what is left.
        let min_v = lo.max(total.saturating_sub(rest * hi));
        let max_v = hi.min(total.saturating_sub(rest * lo));
        if total < rest * lo || min_v > max_v {
            return;
        }
        for v in min_v..=max_v {
            cur.push(v);
            go(parts - 1, total - v, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lo <= hi {
        go(
            parts,
            total,
            lo,
            hi,
            &mut Vec::with_capacity(parts),
            &mut out,
        );
    }
    out
}

/// `N_0(k, j)`: the coefficient of `d^j` in `P_k`, i.e. `N(k, j0+1, j1, ..., jp)`.
pub fn pk_coefficient(k: u64, j: &[u32]) -> ExactScalar {
    if k == 0 {
        return if j.iter().all(|&x| x == 0) {
            ExactScalar::one()
        } else {
            ExactScalar::zero()
        };
    }
    let mut shifted = j.to_vec();
    shifted[0] += 1;
    gfn_number(k, &shifted)
}

/// Closed form of `P_k(d_0, ..., d_p)`: homogeneous of degree `pk`, with the
/// coefficient of `d^j` equal to `N(k, j0+1, j1, ..., jp)`.
pub fn closed_form_pk(p: usize, k: usize) -> MultiPoly {
    assert!(p >= 1, "p must be >= 1");
    let nv = p + 1;
    if k == 0 {
        return MultiPoly::one(nv);
    }
    let mut poly = MultiPoly::zero(nv);
    for j in compositions(nv, (p * k) as u32, 0, k as u32) {
        let c = pk_coefficient(k as u64, &j);
        assert!(
            c.is_integer(),
            "N_0({k}, {j:?}) = {} is not integral",
            format_scalar(&c)
        );
        poly.add_term(j, c);
    }
    poly
}

/// `F_k(t_1, ..., t_p) = P_k(1, t_1, ..., t_p)`.
pub fn fuss_narayana_poly(p: usize, k: usize) -> MultiPoly {
    closed_form_pk(p, k).fix_var(0, &ExactScalar::one())
}
