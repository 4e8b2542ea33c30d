//! Order (period) of a polynomial: the least `k >= 1` with `l | x^k - 1`.

use std::collections::BTreeMap;

use super::{distinct_degree_degrees, squarefree_decomposition, Poly};
use crate::error::{Error, Result};

/// Default ceiling on each `p^m - 1` before refusing to factor it.
pub const DEFAULT_ORDER_BOUND: u128 = 1 << 40;

/// Trial-division factorization into `(prime, exponent)` pairs.
pub fn factor_u128(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn polynomial_order(l: &Poly) -> Result<u64> {
    polynomial_order_with_bound(l, DEFAULT_ORDER_BOUND)
}

/// Order of `l` with a configurable bound on the group orders `p^m - 1`
/// that have to be factored.
pub fn polynomial_order_with_bound(l: &Poly, bound: u128) -> Result<u64> {
    if l.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if l.coeff(0) == 0 {
        return Err(Error::ZeroConstantTerm);
    }
    if l.is_constant() {
        return Ok(1);
    }
    let p = l.p() as u128;
    let parts = squarefree_decomposition(&l.monic())?;
    let max_mult = parts.iter().map(|(_, m)| *m).max().unwrap_or(1);
    let radical = parts.iter().fold(Poly::one(l.field()), |acc, (f, _)| acc.mul_poly(f));

    // x generates a subgroup of prod GF(p^m)^*, so its order divides lcm(p^m - 1)
    let mut lambda: BTreeMap<u128, u32> = BTreeMap::new();
    for m in distinct_degree_degrees(&radical)? {
        let group = p
            .checked_pow(m as u32)
            .map(|q| q - 1)
            .filter(|&g| g <= bound)
            .ok_or_else(|| Error::OrderTooLarge {
                detail: format!("p^{m} - 1 exceeds the factoring bound {bound}"),
            })?;
        for (q, e) in factor_u128(group) {
            let slot = lambda.entry(q).or_insert(0);
            *slot = (*slot).max(e);
        }
    }
    let too_large = || Error::OrderTooLarge { detail: "order does not fit in 64 bits".into() };
    let mut e: u128 = 1;
    for (&q, &exp) in &lambda {
        e = q.checked_pow(exp).and_then(|v| e.checked_mul(v)).ok_or_else(too_large)?;
    }

    let x = Poly::x(l.field());
    let one = Poly::one(l.field()).rem(&radical)?;
    for (&q, &exp) in &lambda {
        for _ in 0..exp {
            if x.pow_mod(e / q, &radical)? == one {
                e /= q;
            } else {
                break;
            }
        }
    }

    // repeated factors multiply the order by the least p^t >= max multiplicity
    let mut pt: u128 = 1;
    while pt < max_mult as u128 {
        pt *= p;
    }
    let k = e.checked_mul(pt).ok_or_else(too_large)?;
    u64::try_from(k).map_err(|_| too_large())
}
