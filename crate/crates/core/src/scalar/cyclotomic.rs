//! Integer cyclotomic polynomials and reduction modulo them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use super::Rational;

fn cache() -> &'static Mutex<HashMap<u32, Arc<[i64]>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the `N`-th cyclotomic polynomial, constant term first.
///
/// Computed by dividing `x^N - 1` by `Φ_d` for every proper divisor `d`.
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    phi_poly(n).to_vec()
}

pub(crate) fn phi_poly(n: u32) -> Arc<[i64]> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in proper_divisors(n) {
        num = exact_div_monic(&num, &phi_poly(d));
    }
    let poly: Arc<[i64]> = num.into();
    cache().lock().unwrap().insert(n, poly.clone());
    poly
}

/// Euler's totient, i.e. `deg Φ_n`.
pub fn totient(n: u32) -> usize {
    assert!(n >= 1);
    let mut result = n as u64;
    let mut rest = n as u64;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result as usize
}

pub(crate) fn proper_divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..n).filter(move |d| n.is_multiple_of(*d))
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        if c == 0 {
            continue;
        }
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] =
                rem[i + j].checked_sub(c.checked_mul(dj).expect("cyclotomic coefficient overflow")).expect("cyclotomic coefficient overflow");
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Reduces a rational polynomial modulo `Φ_order`, returning exactly
/// `totient(order)` coefficients.
pub(crate) fn reduce(mut poly: Vec<Rational>, order: u32) -> Vec<Rational> {
    let phi = phi_poly(order);
    let deg = phi.len() - 1;
    if poly.len() < deg {
        poly.resize(deg, Rational::from_integer(0.into()));
        return poly;
    }
    for i in (deg..poly.len()).rev() {
        let c = std::mem::replace(&mut poly[i], Rational::from_integer(0.into()));
        if num_traits::Zero::is_zero(&c) {
            continue;
        }
        for (j, &pj) in phi[..deg].iter().enumerate() {
            if pj != 0 {
                poly[i - deg + j] -= &c * Rational::from_integer(pj.into());
            }
        }
    }
    poly.truncate(deg);
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Schoolbook polynomial product, used as an independent check.
    fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn small_orders() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_one() {
        for n in 1..=30u32 {
            let mut prod = vec![1i64];
            for d in (1..=n).filter(|d| n % d == 0) {
                prod = poly_mul(&prod, &cyclotomic_polynomial(d));
            }
            let mut expected = vec![0i64; n as usize + 1];
            expected[0] = -1;
            expected[n as usize] = 1;
            assert_eq!(prod, expected, "n = {n}");
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n));
        }
    }

    #[test]
    fn order_105_has_a_coefficient_two() {
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }
}
