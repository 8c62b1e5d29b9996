//! Chains: paths with `n` edges and their vertex-spanning edge subsets.

use crate::error::{Error, Result};

/// Generating polynomial B_n(x) of vertex-covering edge subsets of an
/// `n`-edge path, by number of edges. Index `i` holds the coefficient of `x^i`.
///
/// B_n(x) = Σ_k C(n−k−1, k) x^{n−k}.
pub fn chain_poly(n: usize) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("chain needs at least one edge".into()));
    }
    let mut coeffs = vec![0u64; n + 1];
    for k in 0..=(n - 1) / 2 {
        coeffs[n - k] = binomial(n - k - 1, k)?;
    }
    Ok(coeffs)
}

fn binomial(n: usize, k: usize) -> Result<u64> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::InvalidArgument(format!("C({n},{k}) overflows u64")));
        }
    }
    Ok(acc as u64)
}

/// B_n(−1), computed from the polynomial.
pub fn chain_poly_at_minus_one(n: usize) -> Result<i64> {
    let coeffs = chain_poly(n)?;
    let mut total: i128 = 0;
    for (power, &c) in coeffs.iter().enumerate() {
        let c = c as i128;
        total += if power % 2 == 0 { c } else { -c };
    }
    i64::try_from(total).map_err(|_| Error::InvalidArgument("B_n(-1) overflow".into()))
}

/// Signature of a chain with `n` edges: −1, +1, 0 for n ≡ 1, 2, 0 (mod 3).
pub fn chain_sign(n: usize) -> Result<i64> {
    match n % 3 {
        _ if n == 0 => Err(Error::InvalidArgument("chain needs at least one edge".into())),
        1 => Ok(-1),
        2 => Ok(1),
        _ => Ok(0),
    }
}

pub(crate) fn chain_sign_unchecked(n: u32) -> i64 {
    match n % 3 {
        1 => -1,
        2 => 1,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: subsets of the path's edges covering every vertex.
    fn brute_chain_poly(n: usize) -> Vec<u64> {
        let mut coeffs = vec![0u64; n + 1];
        for mask in 0u32..(1 << n) {
            let covered = (0..=n).all(|v| {
                (v > 0 && mask & (1 << (v - 1)) != 0) || (v < n && mask & (1 << v) != 0)
            });
            if covered {
                coeffs[mask.count_ones() as usize] += 1;
            }
        }
        coeffs
    }

    #[test]
    fn chain_poly_examples() {
        assert_eq!(chain_poly(1).unwrap(), vec![0, 1]);
        assert_eq!(chain_poly(3).unwrap(), vec![0, 0, 1, 1]);
        assert_eq!(chain_poly(5).unwrap(), vec![0, 0, 0, 1, 3, 1]);
        assert!(chain_poly(0).is_err());
    }

    #[test]
    fn chain_poly_matches_brute_force() {
        for n in 1..=15 {
            assert_eq!(chain_poly(n).unwrap(), brute_chain_poly(n), "n = {n}");
        }
    }

    #[test]
    fn chain_sign_examples() {
        assert_eq!(chain_sign(5).unwrap(), 1);
        assert_eq!(chain_sign(3).unwrap(), 0);
        assert_eq!(chain_sign(1).unwrap(), -1);
        assert!(chain_sign(0).is_err());
    }

    #[test]
    fn chain_sign_is_polynomial_at_minus_one() {
        for n in 1..=60 {
            assert_eq!(chain_poly_at_minus_one(n).unwrap(), chain_sign(n).unwrap(), "n = {n}");
        }
    }
}
