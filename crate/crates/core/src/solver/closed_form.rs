//! Known closed forms of `w` and `u` for the `T_l^k` and `S_l^k` families,
//! compared against the generic decomposition.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ProblemSpec, SolverContext};
use crate::error::{Error, Result};
use crate::linearized::{gcd, LinearizedPoly};
use crate::poly::Poly;
use crate::prime::PrimeField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `T_l^k = sum X^{p^{l i}}`
    T,
    /// `S_l^k = sum (-1)^i X^{p^{l i}}`
    S,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::T => "T",
            Family::S => "S",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub family: Family,
    pub p: u64,
    pub l: usize,
    pub k: usize,
    pub n: usize,
    /// The `k` handed to the solver (doubled for `S` with `k/l` odd).
    pub effective_k: u64,
    pub branch: &'static str,
    pub expected_w: Poly,
    pub expected_u: Poly,
    pub actual_w: Poly,
    pub actual_u: Poly,
    pub matches: bool,
}

/// Builds the generic context for `T_l^k` or `S_l^k` over GF(p^n) and checks
/// its `w`, `u` against the case tables. Table entries are normalised the way
/// the solver normalises: `w` monic, `u = l'/w`.
pub fn closed_form_check(family: Family, p: u64, l: usize, k: usize, n: usize) -> Result<ClosedFormReport> {
    let pf = PrimeField::new(p)?;
    if l == 0 || n == 0 || k % l != 0 {
        return Err(Error::NotADivisor { s: l, m: k });
    }
    let (poly, effective_k) = match family {
        Family::T => (LinearizedPoly::trace_like(pf, l, k)?, k),
        Family::S if (k / l) % 2 == 0 => (LinearizedPoly::alternating(pf, l, k)?, k),
        Family::S => (LinearizedPoly::alternating(pf, l, k)?, 2 * k),
    };
    let alphas = poly.alphas().iter().map(|&a| a as u64).collect();
    let ctx = SolverContext::build(ProblemSpec::new(p, alphas, n).with_k(effective_k as u64))?;

    let d = gcd(n, k);
    let e = gcd(n, l);
    let lcm_dl = d / gcd(d, l) * l;
    let p_divides = (k / lcm_dl) % p as usize == 0;
    let minus = |j| Poly::one_minus_x_pow(pf, j);
    let plus = |j| Poly::one_plus_x_pow(pf, j);

    let (branch, w_table, u_table) = match family {
        Family::T if p_divides => ("p | k/[d,l]", minus(l), Poly::one(pf)),
        Family::T => ("p ∤ k/[d,l]", minus(l).exact_div(&minus(e))?, minus(e)),
        Family::S if (k / l) % 2 == 0 => {
            if (d / e) % 2 == 1 || p_divides {
                ("k/l even; d/e odd or p | k/[d,l]", plus(l), Poly::one(pf))
            } else {
                ("k/l even; d/e even and p ∤ k/[d,l]", plus(l).exact_div(&plus(e))?, plus(e))
            }
        }
        Family::S => {
            let top = &plus(l) * &minus(k);
            if (n / d) % 2 == 1 || p_divides {
                ("k/l odd; n/d odd or p | k/[d,l]", top.exact_div(&minus(d))?, minus(d))
            } else {
                let bottom = &plus(e) * &minus(d);
                ("k/l odd; n/d even and p ∤ k/[d,l]", top.exact_div(&bottom)?, bottom)
            }
        }
    };
    // w_table = c * monic(w_table) means u = l'/monic(w) = c * u_table
    let c = w_table.leading();
    let expected_w = w_table.monic();
    let expected_u = u_table.scale(c);
    let actual_w = ctx.decomposition.w.clone();
    let actual_u = ctx.decomposition.u.clone();
    let matches = expected_w == actual_w && expected_u == actual_u;
    Ok(ClosedFormReport {
        family,
        p,
        l,
        k,
        n,
        effective_k: effective_k as u64,
        branch,
        expected_w,
        expected_u,
        actual_w,
        actual_u,
        matches,
    })
}
