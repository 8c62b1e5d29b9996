use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Series;
use crate::error::{Error, Result};

/// Truncated series in x and q: slice `n` is the q-series coefficient of x^n.
///
/// Coefficients with x-degree `<= x_order` and q-degree `<= q_order` are
/// known; access beyond that window is an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivariateSeries {
    x_order: usize,
    q_order: usize,
    slices: Vec<Series>,
}

impl BivariateSeries {
    pub fn zero(x_order: usize, q_order: usize) -> Self {
        Self {
            x_order,
            q_order,
            slices: vec![Series::zero(q_order); x_order + 1],
        }
    }

    pub fn one(x_order: usize, q_order: usize) -> Self {
        Self::monomial(1, 0, 0, x_order, q_order)
    }

    /// `c · x^xe · q^qe`, dropped if outside the window.
    pub fn monomial(c: i64, xe: usize, qe: usize, x_order: usize, q_order: usize) -> Self {
        let mut b = Self::zero(x_order, q_order);
        b.add_term(c, xe, qe);
        b
    }

    /// `a(q) · x^x_power`.
    pub fn lift(a: &Series, x_power: usize, x_order: usize) -> Self {
        let mut b = Self::zero(x_order, a.order());
        if x_power <= x_order {
            b.slices[x_power] = a.clone();
        }
        b
    }

    /// Slices beyond `x_order` are dropped; missing ones are zero.
    /// The q-order drops to the smallest slice order if one is shorter.
    pub fn from_slices(slices: Vec<Series>, x_order: usize, q_order: usize) -> Self {
        let q_order = slices.iter().map(Series::order).fold(q_order, usize::min);
        let mut b = Self::zero(x_order, q_order);
        for (n, s) in slices.into_iter().enumerate().take(x_order + 1) {
            b.slices[n] = s.truncate(q_order);
        }
        b
    }

    pub fn x_order(&self) -> usize {
        self.x_order
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    pub fn add_term(&mut self, c: i64, xe: usize, qe: usize) {
        if xe <= self.x_order {
            self.slices[xe].add_term(c, qe);
        }
    }

    pub fn coeff(&self, xe: usize, qe: usize) -> Result<i64> {
        if xe > self.x_order || qe > self.q_order {
            return Err(Error::OutOfWindow {
                x: xe,
                q: qe,
                max_x: self.x_order,
                max_q: self.q_order,
            });
        }
        Ok(self.slices[xe].coeffs()[qe])
    }

    /// Coefficient of x^n as a q-series.
    pub fn coeff_x(&self, n: usize) -> Result<&Series> {
        self.slices.get(n).ok_or(Error::OutOfWindow {
            x: n,
            q: 0,
            max_x: self.x_order,
            max_q: self.q_order,
        })
    }

    pub fn slices(&self) -> &[Series] {
        &self.slices
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(Series::is_zero)
    }

    pub fn truncate(&self, x_order: usize, q_order: usize) -> Self {
        let x_order = x_order.min(self.x_order);
        let q_order = q_order.min(self.q_order);
        Self {
            x_order,
            q_order,
            slices: self.slices[..=x_order].iter().map(|s| s.truncate(q_order)).collect(),
        }
    }

    /// Substitutes x → x·q^m, shifting slice n up by n·m.
    pub fn subst_x_scale(&self, m: usize) -> Self {
        Self {
            x_order: self.x_order,
            q_order: self.q_order,
            slices: self.slices.iter().enumerate().map(|(n, s)| s.shift(n * m)).collect(),
        }
    }

    /// Multiplies by x^p.
    pub fn shift_x(&self, p: usize) -> Self {
        let mut out = Self::zero(self.x_order, self.q_order);
        for n in 0..=self.x_order {
            if n + p <= self.x_order {
                out.slices[n + p] = self.slices[n].clone();
            }
        }
        out
    }

    pub fn scale_q(&self, s: &Series) -> Self {
        let q_order = self.q_order.min(s.order());
        Self {
            x_order: self.x_order,
            q_order,
            slices: self.slices.iter().map(|sl| sl * s).collect(),
        }
    }

    /// Sum of all slices, i.e. the specialization x = 1. Only meaningful when
    /// every slice above `x_order` vanishes through `q_order`.
    pub fn at_x_one(&self) -> Series {
        self.slices
            .iter()
            .fold(Series::zero(self.q_order), |acc, s| &acc + s)
    }

    /// (x, q, lhs, rhs) where the two series differ inside the common window.
    pub fn mismatches(&self, other: &Self) -> Vec<(usize, usize, i64, i64)> {
        let xo = self.x_order.min(other.x_order);
        let mut out = Vec::new();
        for n in 0..=xo {
            for (q, a, b) in self.slices[n].mismatches(&other.slices[n]) {
                out.push((n, q, a, b));
            }
        }
        out
    }

    /// Π_{i=first}^{last} (1 − x·q^i).
    pub fn x_pochhammer(first: usize, last: usize, x_order: usize, q_order: usize) -> Self {
        let mut acc = Self::one(x_order, q_order);
        for i in first..=last {
            if i > q_order {
                break;
            }
            let shifted = acc.shift_x(1).scale_q(&Series::monomial(1, i, q_order));
            acc = &acc - &shifted;
        }
        acc
    }

    /// (x q^first; q)_∞ truncated to the window.
    pub fn x_pochhammer_inf(first: usize, x_order: usize, q_order: usize) -> Self {
        Self::x_pochhammer(first, q_order.max(first), x_order, q_order)
    }

    /// 1 / (x q^first; q)_∞ = Π_{i≥first} Σ_j x^j q^{ij}, for `first >= 1`.
    pub fn x_pochhammer_inf_inverse(first: usize, x_order: usize, q_order: usize) -> Result<Self> {
        if first == 0 {
            return Err(Error::InvalidArgument("1/(x;q) needs first exponent >= 1".into()));
        }
        let mut acc = Self::one(x_order, q_order);
        for i in first..=q_order {
            let mut geometric = Self::zero(x_order, q_order);
            for j in 0..=x_order {
                geometric.add_term(1, j, i * j);
            }
            acc = &acc * &geometric;
        }
        Ok(acc)
    }
}

impl Add for &BivariateSeries {
    type Output = BivariateSeries;

    fn add(self, rhs: &BivariateSeries) -> BivariateSeries {
        let x_order = self.x_order.min(rhs.x_order);
        let q_order = self.q_order.min(rhs.q_order);
        BivariateSeries {
            x_order,
            q_order,
            slices: (0..=x_order).map(|n| &self.slices[n] + &rhs.slices[n]).collect(),
        }
    }
}

impl Neg for &BivariateSeries {
    type Output = BivariateSeries;

    fn neg(self) -> BivariateSeries {
        BivariateSeries {
            x_order: self.x_order,
            q_order: self.q_order,
            slices: self.slices.iter().map(|s| -s).collect(),
        }
    }
}

impl Sub for &BivariateSeries {
    type Output = BivariateSeries;

    fn sub(self, rhs: &BivariateSeries) -> BivariateSeries {
        self + &(-rhs)
    }
}

impl Mul for &BivariateSeries {
    type Output = BivariateSeries;

    fn mul(self, rhs: &BivariateSeries) -> BivariateSeries {
        let x_order = self.x_order.min(rhs.x_order);
        let q_order = self.q_order.min(rhs.q_order);
        let mut out = BivariateSeries::zero(x_order, q_order);
        for i in 0..=x_order {
            if self.slices[i].is_zero() {
                continue;
            }
            for j in 0..=(x_order - i) {
                let prod = &self.slices[i] * &rhs.slices[j];
                let acc = &out.slices[i + j] + &prod;
                out.slices[i + j] = acc.truncate(q_order);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_conjugates() {
        let a = &BivariateSeries::one(4, 6) - &BivariateSeries::monomial(1, 1, 1, 4, 6);
        let b = &BivariateSeries::one(4, 6) + &BivariateSeries::monomial(1, 1, 1, 4, 6);
        let expect = &BivariateSeries::one(4, 6) - &BivariateSeries::monomial(1, 2, 2, 4, 6);
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn subst_shifts_grading() {
        let mut h = BivariateSeries::zero(3, 10);
        h.add_term(5, 2, 3);
        h.add_term(7, 0, 1);
        let s = h.subst_x_scale(1);
        assert_eq!(s.coeff(2, 5).unwrap(), 5);
        assert_eq!(s.coeff(2, 3).unwrap(), 0);
        assert_eq!(s.coeff(0, 1).unwrap(), 7);
    }

    #[test]
    fn window_is_enforced() {
        let b = BivariateSeries::one(2, 3);
        assert_eq!(b.coeff(0, 0).unwrap(), 1);
        assert!(matches!(b.coeff(3, 0), Err(Error::OutOfWindow { .. })));
        assert!(matches!(b.coeff(0, 4), Err(Error::OutOfWindow { .. })));
        assert!(b.coeff_x(3).is_err());
    }

    #[test]
    fn lift_places_slice() {
        let a = Series::from_coeffs(vec![1, 2], 4);
        let b = BivariateSeries::lift(&a, 2, 3);
        assert_eq!(b.coeff_x(2).unwrap(), &a);
        assert!(b.coeff_x(1).unwrap().is_zero());
    }

    #[test]
    fn pochhammer_and_inverse_cancel() {
        let p = BivariateSeries::x_pochhammer_inf(2, 6, 20);
        let inv = BivariateSeries::x_pochhammer_inf_inverse(2, 6, 20).unwrap();
        assert_eq!(&p * &inv, BivariateSeries::one(6, 20));
        assert!(BivariateSeries::x_pochhammer_inf_inverse(0, 2, 2).is_err());
    }

    #[test]
    fn x_one_of_pochhammer_is_euler_product() {
        // (xq;q)_∞ at x = 1 is (q;q)_∞; the x-window must cover every term.
        let p = BivariateSeries::x_pochhammer_inf(1, 12, 12);
        let euler = super::super::q_pochhammer(12, 12);
        assert_eq!(p.at_x_one(), euler);
    }
}
