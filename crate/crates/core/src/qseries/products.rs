//! Finite and infinite products of binomials (1 ± q^e).

use serde::{Deserialize, Serialize};

use super::Series;
use crate::error::{Error, Result};

/// The binomial `1 − q^exponent`, or `1 + q^exponent` when `plus` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub exponent: i64,
    pub plus: bool,
}

impl Factor {
    pub fn minus(exponent: i64) -> Self {
        Self { exponent, plus: false }
    }

    pub fn plus(exponent: i64) -> Self {
        Self { exponent, plus: true }
    }
}

/// Factors of (±q^first; q^step)_count, i.e. exponents first + i·step for
/// i in 0..count. A negative `step` gives a descending base.
pub fn pochhammer_factors(first: i64, step: i64, count: usize, plus: bool) -> Vec<Factor> {
    (0..count as i64)
        .map(|i| Factor {
            exponent: first + i * step,
            plus,
        })
        .collect()
}

/// Σ_{i≥0} q^{i·e}, the inverse of 1 − q^e.
pub fn geometric_inverse_factor(e: i64, order: usize) -> Result<Series> {
    if e <= 0 {
        return Err(Error::InvalidArgument(format!("geometric factor needs e >= 1, got {e}")));
    }
    let e = e as usize;
    Ok(Series::from_terms((0..=order / e).map(|i| (1, i * e)), order))
}

/// Π (1 − q^{e_i}).
pub fn finite_product(exponents: &[i64], order: usize) -> Result<Series> {
    let factors: Vec<Factor> = exponents.iter().map(|&e| Factor::minus(e)).collect();
    product_of(&factors, order)
}

/// Π (1 ± q^{e_i}); every exponent must be positive.
pub fn product_of(factors: &[Factor], order: usize) -> Result<Series> {
    let mut acc = Series::one(order);
    for f in factors {
        if f.exponent <= 0 {
            return Err(Error::InvalidArgument(format!(
                "product factor exponent must be >= 1, got {}",
                f.exponent
            )));
        }
        let shifted = acc.shift(f.exponent as usize);
        acc = if f.plus { &acc + &shifted } else { &acc - &shifted };
    }
    Ok(acc)
}

/// Divides by Π (1 − q^{e_i}) and checks the product re-multiplies to `numerator`.
pub fn divide_by_product(numerator: &Series, exponents: &[i64]) -> Result<Series> {
    let mut acc = numerator.clone();
    for &e in exponents {
        if e <= 0 {
            return Err(Error::InvalidArgument(format!("divisor exponent must be >= 1, got {e}")));
        }
        acc = acc.div_one_minus_q_pow(e as usize)?;
    }
    let back = &acc * &finite_product(exponents, numerator.order())?;
    if &back != numerator {
        return Err(Error::Divisibility("quotient does not re-multiply to numerator".into()));
    }
    Ok(acc)
}

/// Π_{k≥0} Π_{r ∈ residues} (1 − q^{r + k·modulus}), keeping factors with
/// exponent `<= order`.
pub fn infinite_product(residues: &[i64], modulus: i64, order: usize) -> Result<Series> {
    if modulus < 1 {
        return Err(Error::InvalidArgument(format!("modulus must be >= 1, got {modulus}")));
    }
    if let Some(r) = residues.iter().find(|&&r| r < 1) {
        return Err(Error::InvalidArgument(format!("residue must be >= 1, got {r}")));
    }
    let mut exponents = Vec::new();
    for &r in residues {
        let mut e = r;
        while e as usize <= order {
            exponents.push(e);
            e += modulus;
        }
    }
    exponents.sort_unstable();
    finite_product(&exponents, order)
}

/// (q;q)_k.
pub fn q_pochhammer(k: usize, order: usize) -> Series {
    let exponents: Vec<i64> = (1..=k as i64).collect();
    finite_product(&exponents, order).expect("positive exponents")
}
