//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are keyed by dense exponent vectors of length `num_vars`. Zero
//! coefficients are never stored, so structural equality is polynomial
//! equality. Iteration and serialization use descending lexicographic order
//! on exponent vectors, which makes every textual form byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, parse_scalar, to_f64, ExactScalar};

pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Exponents, ExactScalar>,
}

/// Variable names `d0..dp`.
pub fn d_vars(p: usize) -> Vec<String> {
    (0..=p).map(|i| format!("d{i}")).collect()
}

/// Variable names `t1..tp`.
pub fn t_vars(p: usize) -> Vec<String> {
    (1..=p).map(|i| format!("t{i}")).collect()
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: ExactScalar) -> Self {
        let mut poly = Self::zero(num_vars);
        poly.add_term(vec![0; num_vars], c);
        poly
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, ExactScalar::one())
    }

    /// The polynomial consisting of the single variable `index`.
    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable {index} out of range");
        let mut exps = vec![0; num_vars];
        exps[index] = 1;
        Self::monomial(exps, ExactScalar::one())
    }

    pub fn monomial(exponents: Exponents, coeff: ExactScalar) -> Self {
        let mut poly = Self::zero(exponents.len());
        poly.add_term(exponents, coeff);
        poly
    }

    /// Builds a polynomial from `(exponents, coeff)` pairs; repeated exponent
    /// vectors accumulate.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, ExactScalar)>,
    {
        let mut poly = Self::zero(num_vars);
        for (exps, c) in terms {
            if exps.len() != num_vars {
                return Err(Error::ArityMismatch {
                    left: num_vars,
                    right: exps.len(),
                });
            }
            poly.add_term(exps, c);
        }
        Ok(poly)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &ExactScalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exponents: &[u32]) -> ExactScalar {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    /// Returns the value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<ExactScalar> {
        match self.terms.len() {
            0 => Some(ExactScalar::zero()),
            1 => {
                let (exps, c) = self.terms.iter().next().unwrap();
                exps.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, exponents: Exponents, coeff: ExactScalar) {
        debug_assert_eq!(exponents.len(), self.num_vars);
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exponents) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::ArityMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (exps, c) in &other.terms {
            out.add_term(exps.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (exps, c) in &other.terms {
            out.add_term(exps.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Self {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Substitutes exact values for all variables.
    pub fn eval(&self, point: &[ExactScalar]) -> Result<ExactScalar> {
        if point.len() != self.num_vars {
            return Err(Error::ArityMismatch {
                left: self.num_vars,
                right: point.len(),
            });
        }
        let mut total = ExactScalar::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exps) {
                term *= num_traits::pow(x.clone(), e as usize);
            }
            total += term;
        }
        Ok(total)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.num_vars {
            return Err(Error::ArityMismatch {
                left: self.num_vars,
                right: point.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(exps, c)| {
                point
                    .iter()
                    .zip(exps)
                    .fold(to_f64(c), |acc, (x, &e)| acc * x.powi(e as i32))
            })
            .sum())
    }

    /// Fixes variable `index` to `value`, removing it from the variable list.
    pub fn fix_var(&self, index: usize, value: &ExactScalar) -> Self {
        assert!(index < self.num_vars, "variable {index} out of range");
        let mut out = Self::zero(self.num_vars - 1);
        for (exps, c) in &self.terms {
            let factor = num_traits::pow(value.clone(), exps[index] as usize);
            let mut reduced = exps.clone();
            reduced.remove(index);
            out.add_term(reduced, c * factor);
        }
        out
    }

    /// Renames variables: variable `i` of `self` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.num_vars {
            return Err(Error::ArityMismatch {
                left: self.num_vars,
                right: perm.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &target in perm {
            if target >= perm.len() || std::mem::replace(&mut seen[target], true) {
                return Err(Error::InvalidParameter(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        let mut out = Self::zero(self.num_vars);
        for (exps, c) in &self.terms {
            let mut moved = vec![0; self.num_vars];
            for (i, &e) in exps.iter().enumerate() {
                moved[perm[i]] = e;
            }
            out.add_term(moved, c.clone());
        }
        Ok(out)
    }

    /// Multiplies by the monomial with the given exponents.
    pub fn shift_exponents(&self, by: &[u32]) -> Self {
        assert_eq!(by.len(), self.num_vars);
        Self {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Divides every term by the variable `index`; fails if some term is
    /// not divisible.
    pub fn divide_by_var(&self, index: usize) -> Option<Self> {
        let mut out = Self::zero(self.num_vars);
        for (exps, c) in &self.terms {
            if exps[index] == 0 {
                return None;
            }
            let mut reduced = exps.clone();
            reduced[index] -= 1;
            out.add_term(reduced, c.clone());
        }
        Some(out)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True if every monomial has total degree `degree`.
    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == degree)
    }

    pub fn all_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn coefficient_sum(&self) -> ExactScalar {
        self.terms.values().sum()
    }

    /// Human-readable form, e.g. `d1^2*d2^2 + d0*d1*d2^2`.
    pub fn display_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_owned();
        }
        let mut out = String::new();
        for (n, (exps, c)) in self.terms().enumerate() {
            let negative = c < &ExactScalar::zero();
            if n == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = if negative { -c.clone() } else { c.clone() };
            let factors: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| match e {
                    1 => vars[i].clone(),
                    _ => format!("{}^{}", vars[i], e),
                })
                .collect();
            let coeff_is_one = mag.is_one();
            if factors.is_empty() {
                out.push_str(&format_scalar(&mag));
            } else {
                if !coeff_is_one {
                    let _ = write!(out, "{}*", format_scalar(&mag));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    pub fn to_json(&self, vars: &[String]) -> PolyJson {
        assert_eq!(vars.len(), self.num_vars, "variable names must match arity");
        PolyJson {
            vars: vars.to_vec(),
            terms: self
                .terms()
                .map(|(e, c)| TermJson {
                    exponents: e.clone(),
                    coeff: format_scalar(c),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let terms = json
            .terms
            .iter()
            .map(|t| Ok((t.exponents.clone(), parse_scalar(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(json.vars.len(), terms)
    }
}

/// Wire form: `{"vars": [...], "terms": [{"exponents": [...], "coeff": "..."}]}`
/// with terms in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

impl PolyJson {
    pub fn to_canonical_string(&self) -> String {
        serde_json::to_string(self).expect("polynomial JSON serializes")
    }
}

// Operator forms panic on arity mismatch; use the `checked_*` methods when
// operands come from untrusted input.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs)
            .expect("arity mismatch in polynomial add")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs)
            .expect("arity mismatch in polynomial sub")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs)
            .expect("arity mismatch in polynomial mul")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-ExactScalar::one())
    }
}
