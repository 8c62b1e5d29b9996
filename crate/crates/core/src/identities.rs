//! Closed forms for every generating function checked by the harness.
//!
//! Each identity has (at least) two independently computed sides: products
//! against sums, recurrences against explicit expansions, bivariate forms
//! against their specializations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::{
    divide_by_product, infinite_product, pochhammer_factors, product_of, BivariateSeries, Factor,
    Series,
};

fn sign_of(k: i64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Π_{k≥0} (1−q^{5k+2})(1−q^{5k+3})(1−q^{5k+5}).
pub fn rr1_product(order: usize) -> Series {
    infinite_product(&[2, 3, 5], 5, order).expect("valid residues")
}

/// Σ_{k∈Z} (−1)^k q^{k(5k+1)/2}.
pub fn rr1_bilateral(order: usize) -> Series {
    let mut s = Series::zero(order);
    let mut k: i64 = 0;
    loop {
        let mut added = false;
        let ks: &[i64] = if k == 0 { &[0] } else { &[k, -k] };
        for &kk in ks {
            let e = kk * (5 * kk + 1) / 2;
            if e as usize <= order {
                s.add_term(sign_of(kk), e as usize);
                added = true;
            }
        }
        if !added {
            return s;
        }
        k += 1;
    }
}

/// 1 + Σ_{k≥1} (−1)^k q^{(5k²−k)/2} (1 + q^k).
pub fn rr1_one_sided(order: usize) -> Series {
    let mut s = Series::one(order);
    let mut k: i64 = 1;
    while ((5 * k * k - k) / 2) as usize <= order {
        let e = ((5 * k * k - k) / 2) as usize;
        s.add_term(sign_of(k), e);
        s.add_term(sign_of(k), e + k as usize);
        k += 1;
    }
    s
}

/// Π_{k≥0} (1−q^{5k+4})(1−q^{5k+5})(1−q^{5k+6}).
pub fn rr2_product(order: usize) -> Series {
    infinite_product(&[4, 5, 6], 5, order).expect("valid residues")
}

/// Σ_{k≥0} (−1)^k q^{k(5k+3)/2} (1 + q + ⋯ + q^{2k}).
pub fn rr2_sum(order: usize) -> Series {
    let mut s = Series::zero(order);
    let mut k: usize = 0;
    while k * (5 * k + 3) / 2 <= order {
        let e = k * (5 * k + 3) / 2;
        for i in 0..=2 * k {
            s.add_term(sign_of(k as i64), e + i);
        }
        k += 1;
    }
    s
}

fn shifted(a: &Series, shift: i64) -> Series {
    a.shift(usize::try_from(shift).expect("recurrence shifts are non-negative"))
}

fn at(seq: &[Series], n: i64, order: usize) -> Series {
    if n < 0 {
        Series::zero(order)
    } else {
        seq[n as usize].clone()
    }
}

/// GF_0..=GF_nmax from
/// (1−qⁿ)GFₙ = −(q^{2n−2}+q^{3n−3})GF_{n−2} + (q^{2n−2}+q^{3n−4}+q^{3n−3})GF_{n−3} − q^{3n−4}GF_{n−4},
/// with GF_0 = 1 and GF_n = 0 for n < 0.
pub fn gf_sequence(nmax: usize, order: usize) -> Result<Vec<Series>> {
    let mut seq = vec![Series::one(order)];
    for n in 1..=nmax as i64 {
        let g2 = at(&seq, n - 2, order);
        let g3 = at(&seq, n - 3, order);
        let g4 = at(&seq, n - 4, order);
        let mut rhs = Series::zero(order);
        if n >= 2 {
            rhs = &rhs - &(&shifted(&g2, 2 * n - 2) + &shifted(&g2, 3 * n - 3));
        }
        if n >= 3 {
            rhs = &rhs + &shifted(&g3, 2 * n - 2);
            rhs = &rhs + &shifted(&g3, 3 * n - 4);
            rhs = &rhs + &shifted(&g3, 3 * n - 3);
        }
        if n >= 4 {
            rhs = &rhs - &shifted(&g4, 3 * n - 4);
        }
        seq.push(divide_by_product(&rhs, &[n])?);
    }
    Ok(seq)
}

/// H_0..=H_nmax from
/// (1−qⁿ)Hₙ = −qⁿ(1−q^{n−1})H_{n−1} − (q^{2n−2}+q^{2n−1})H_{n−2} + q^{2n−2}H_{n−3},
/// with H_0 = 1 and H_n = 0 for n < 0.
pub fn h_recurrence_sequence(nmax: usize, order: usize) -> Result<Vec<Series>> {
    let mut seq = vec![Series::one(order)];
    for n in 1..=nmax as i64 {
        let h1 = at(&seq, n - 1, order);
        let h2 = at(&seq, n - 2, order);
        let h3 = at(&seq, n - 3, order);
        let first = &shifted(&h1, n) - &shifted(&h1, 2 * n - 1);
        let mut rhs = -&first;
        if n >= 2 {
            rhs = &rhs - &(&shifted(&h2, 2 * n - 2) + &shifted(&h2, 2 * n - 1));
        }
        if n >= 3 {
            rhs = &rhs + &shifted(&h3, 2 * n - 2);
        }
        seq.push(divide_by_product(&rhs, &[n])?);
    }
    Ok(seq)
}

/// 1 + Σ_{k≥1} (−1)^k x^{2k} q^{(5k²−k)/2} (xq;q)_{k−1} (1 − x q^{2k}) / (q;q)_k.
pub fn main_theorem_rhs(x_order: usize, q_order: usize) -> BivariateSeries {
    let mut total = BivariateSeries::one(x_order, q_order);
    let mut k: usize = 1;
    while 2 * k <= x_order && (5 * k * k - k) / 2 <= q_order {
        let lead = Series::monomial(sign_of(k as i64), (5 * k * k - k) / 2, q_order);
        let exps: Vec<i64> = (1..=k as i64).collect();
        let lead = divide_by_product(&lead, &exps).expect("(q;q)_k is invertible");
        let mut factor = BivariateSeries::x_pochhammer(1, k - 1, x_order, q_order);
        let closing = &BivariateSeries::one(x_order, q_order)
            - &BivariateSeries::monomial(1, 1, 2 * k, x_order, q_order);
        factor = &factor * &closing;
        let term = &BivariateSeries::lift(&lead, 2 * k, x_order) * &factor;
        total = &total + &term;
        k += 1;
    }
    total
}

/// Smallest x-window that holds every term of [`main_theorem_rhs`] with
/// q-degree `<= q_order`: the k-th term spans x^{2k}..x^{3k}.
pub fn main_theorem_x_window(q_order: usize) -> usize {
    let mut k = 0;
    while (5 * (k + 1) * (k + 1) - (k + 1)) / 2 <= q_order {
        k += 1;
    }
    3 * k
}

/// [`main_theorem_rhs`] at x = 1, through q^q_order.
pub fn main_theorem_at_x_one(q_order: usize) -> Series {
    main_theorem_rhs(main_theorem_x_window(q_order), q_order).at_x_one()
}

/// Terms of the functional-equation residual; dropping one is the negative
/// control for the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionalTerms {
    pub include_qx_term: bool,
}

impl Default for FunctionalTerms {
    fn default() -> Self {
        Self {
            include_qx_term: true,
        }
    }
}

/// H(x)/(xq;q)_∞ − H(xq)/(xq²;q)_∞ − qx·H(xq²)/(xq³;q)_∞.
pub fn functional_equation_residual(x_order: usize, q_order: usize) -> BivariateSeries {
    functional_equation_residual_with(x_order, q_order, FunctionalTerms::default())
}

pub fn functional_equation_residual_with(
    x_order: usize,
    q_order: usize,
    terms: FunctionalTerms,
) -> BivariateSeries {
    let h = main_theorem_rhs(x_order, q_order);
    let inv = |a| BivariateSeries::x_pochhammer_inf_inverse(a, x_order, q_order).expect("a >= 1");
    let first = &h * &inv(1);
    let second = &h.subst_x_scale(1) * &inv(2);
    let mut residual = &first - &second;
    if terms.include_qx_term {
        let third = (&h.subst_x_scale(2) * &inv(3))
            .shift_x(1)
            .scale_q(&Series::monomial(1, 1, q_order));
        residual = &residual - &third;
    }
    residual
}

/// (xq;q)_∞ Σ_{k≥0} q^{k²} x^k / (q;q)_k.
pub fn classical_lhs(x_order: usize, q_order: usize) -> BivariateSeries {
    let mut sum = BivariateSeries::zero(x_order, q_order);
    let mut k = 0usize;
    while k <= x_order && k * k <= q_order {
        let exps: Vec<i64> = (1..=k as i64).collect();
        let term = divide_by_product(&Series::monomial(1, k * k, q_order), &exps)
            .expect("(q;q)_k is invertible");
        sum = &sum + &BivariateSeries::lift(&term, k, x_order);
        k += 1;
    }
    &BivariateSeries::x_pochhammer_inf(1, x_order, q_order) * &sum
}

/// Sign prefactor used for the odd-vertex refinement.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OddSignConvention {
    /// (−1)^{n+j}, as the formula is usually printed.
    Printed,
    /// (−1)^{n+j+1}, which agrees with enumeration.
    #[default]
    Empirical,
}

impl OddSignConvention {
    pub fn label(self) -> &'static str {
        match self {
            Self::Printed => "(-1)^(n+j)",
            Self::Empirical => "(-1)^(n+j+1)",
        }
    }
}

fn refined_numerator(n: usize, j: usize, order: usize) -> Result<Series> {
    let mut factors: Vec<Factor> = pochhammer_factors(1, 2, n - j, true);
    factors.extend(pochhammer_factors((2 * n - 2 * j) as i64 - 1, -2, j, false));
    product_of(&factors, order)
}

fn even_q_pochhammer_exps(count: usize) -> Vec<i64> {
    (1..=count as i64).map(|i| 2 * i).collect()
}

/// Signed generating function of admissible λ whose pruned graph has 2n
/// vertices and n+j edges.
pub fn edgevertex_even(n: usize, j: usize, order: usize) -> Result<Series> {
    if n < 2 * j {
        return Err(Error::InvalidArgument(format!("even refinement needs n >= 2j, got n={n}, j={j}")));
    }
    let num = refined_numerator(n, j, order)?;
    let mut den = even_q_pochhammer_exps(2 * j);
    den.extend(even_q_pochhammer_exps(n - 2 * j));
    let e = 2 * (n - j) * (n - j) + 4 * j * j + 2 * j;
    let sign = sign_of((n + j) as i64);
    Ok(divide_by_product(&num, &den)?.shift(e).scale(sign))
}

/// Signed generating function of admissible λ whose pruned graph has 2n+1
/// vertices and n+j+1 edges.
pub fn edgevertex_odd(n: usize, j: usize, order: usize, convention: OddSignConvention) -> Result<Series> {
    if n < 2 * j + 1 {
        return Err(Error::InvalidArgument(format!("odd refinement needs n >= 2j+1, got n={n}, j={j}")));
    }
    let num = refined_numerator(n, j, order)?;
    let mut den = even_q_pochhammer_exps(2 * j + 1);
    den.extend(even_q_pochhammer_exps(n - 2 * j - 1));
    let e = 2 * (n - j) * (n - j) + 4 * j * j + 6 * j + 2;
    let sign = match convention {
        OddSignConvention::Printed => sign_of((n + j) as i64),
        OddSignConvention::Empirical => -sign_of((n + j) as i64),
    };
    Ok(divide_by_product(&num, &den)?.shift(e).scale(sign))
}

/// Either kind of series carried by an [`IdentityCheck`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeriesValue {
    Univariate(Series),
    Bivariate(BivariateSeries),
}

/// First differing coefficient: exponents are `[q]` or `[x, q]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstMismatch {
    pub exponents: Vec<usize>,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: SeriesValue,
    pub rhs: SeriesValue,
    pub valid_order: usize,
    #[serde(rename = "match")]
    pub matches: bool,
    pub first_mismatch: Option<FirstMismatch>,
}

impl IdentityCheck {
    pub fn univariate(name: &str, lhs: Series, rhs: Series) -> Self {
        let valid_order = lhs.order().min(rhs.order());
        let first_mismatch = lhs.mismatches(&rhs).first().map(|&(q, a, b)| FirstMismatch {
            exponents: vec![q],
            lhs: a,
            rhs: b,
        });
        Self {
            name: name.to_string(),
            matches: first_mismatch.is_none(),
            first_mismatch,
            valid_order,
            lhs: SeriesValue::Univariate(lhs),
            rhs: SeriesValue::Univariate(rhs),
        }
    }

    /// `valid_order` is the common q-order.
    pub fn bivariate(name: &str, lhs: BivariateSeries, rhs: BivariateSeries) -> Self {
        let valid_order = lhs.q_order().min(rhs.q_order());
        let first_mismatch = lhs.mismatches(&rhs).first().map(|&(x, q, a, b)| FirstMismatch {
            exponents: vec![x, q],
            lhs: a,
            rhs: b,
        });
        Self {
            name: name.to_string(),
            matches: first_mismatch.is_none(),
            first_mismatch,
            valid_order,
            lhs: SeriesValue::Bivariate(lhs),
            rhs: SeriesValue::Bivariate(rhs),
        }
    }
}
