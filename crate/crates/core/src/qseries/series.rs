use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn add_c(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("q-series coefficient overflow")
}

pub(crate) fn mul_c(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("q-series coefficient overflow")
}

/// Truncated power series in q with exact integer coefficients.
///
/// Coefficients of q^0..=q^order are known; anything above `order` is
/// unknown rather than zero. Binary operations truncate to the smaller
/// order. Coefficient overflow panics instead of wrapping.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr")]
pub struct Series {
    order: usize,
    coeffs: Vec<i64>,
}

#[derive(Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<i64>,
}

impl TryFrom<SeriesRepr> for Series {
    type Error = Error;

    fn try_from(r: SeriesRepr) -> Result<Self> {
        if r.coeffs.len() != r.order + 1 {
            return Err(Error::InvalidArgument(format!(
                "series of order {} needs {} coefficients, got {}",
                r.order,
                r.order + 1,
                r.coeffs.len()
            )));
        }
        Ok(Series {
            order: r.order,
            coeffs: r.coeffs,
        })
    }
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![0; order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(1, 0, order)
    }

    /// `c · q^exponent`; empty when the exponent exceeds the order.
    pub fn monomial(c: i64, exponent: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exponent <= order {
            s.coeffs[exponent] = c;
        }
        s
    }

    /// Pads with zeros or drops terms above `order`.
    pub fn from_coeffs(mut coeffs: Vec<i64>, order: usize) -> Self {
        coeffs.resize(order + 1, 0);
        Self { order, coeffs }
    }

    /// Sum of `c · q^e` terms; terms above `order` are dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, usize)>, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (c, e) in terms {
            s.add_term(c, e);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `None` beyond the truncation order.
    pub fn coeff(&self, exponent: usize) -> Option<i64> {
        self.coeffs.get(exponent).copied()
    }

    pub fn add_term(&mut self, c: i64, exponent: usize) {
        if exponent <= self.order {
            self.coeffs[exponent] = add_c(self.coeffs[exponent], c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Multiplies by q^e.
    pub fn shift(&self, e: usize) -> Self {
        let mut out = Self::zero(self.order);
        for (i, &c) in self.coeffs.iter().enumerate() {
            out.add_term(c, i + e);
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|&a| mul_c(a, c)).collect(),
        }
    }

    /// Multiplies by (1 − q^e).
    pub fn mul_one_minus_q_pow(&self, e: usize) -> Self {
        self - &self.shift(e)
    }

    /// Divides by (1 − q^e) through c_i = a_i + c_{i−e}, then checks that
    /// multiplying back reproduces the input.
    pub fn div_one_minus_q_pow(&self, e: usize) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidArgument("cannot divide by 1 - q^0".into()));
        }
        let mut out = self.clone();
        for i in e..=self.order {
            out.coeffs[i] = add_c(out.coeffs[i], out.coeffs[i - e]);
        }
        if &out.mul_one_minus_q_pow(e) != self {
            return Err(Error::Divisibility(format!("(1 - q^{e}) does not divide series")));
        }
        Ok(out)
    }

    /// Evaluation at q = 1 of the known coefficients.
    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs.iter().fold(0, |a, &c| add_c(a, c))
    }

    /// Exponents where the two series differ, within the common order.
    pub fn mismatches(&self, other: &Series) -> Vec<(usize, i64, i64)> {
        let order = self.order.min(other.order);
        (0..=order)
            .filter(|&i| self.coeffs[i] != other.coeffs[i])
            .map(|i| (i, self.coeffs[i], other.coeffs[i]))
            .collect()
    }

    /// One `exponent,coefficient` row per known coefficient, with header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("exponent,coefficient\n");
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{i},{c}\n"));
        }
        out
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let order = self.order.min(rhs.order);
        Series {
            order,
            coeffs: (0..=order).map(|i| add_c(self.coeffs[i], rhs.coeffs[i])).collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        self.scale(-1)
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![0i64; order + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] = add_c(coeffs[i + j], mul_c(a, b));
            }
        }
        Series { order, coeffs }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Series {
    type Output = Series;

    fn neg(self) -> Series {
        -&self
    }
}
