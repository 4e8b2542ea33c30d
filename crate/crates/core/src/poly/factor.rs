use std::collections::BTreeSet;

use super::Poly;
use crate::error::Result;
use crate::prime::PrimeField;

/// `x^{p} mod modulus` applied to `h`, i.e. one Frobenius step in GF(p)[x]/(modulus).
fn frobenius_step(h: &Poly, modulus: &Poly) -> Result<Poly> {
    h.pow_mod(h.p() as u128, modulus)
}

/// Inverse of `f(x) -> f(x)^p` for a polynomial whose exponents are all multiples of p.
fn pth_root(a: &Poly) -> Poly {
    let p = a.p() as usize;
    let coeffs = a.coeffs().iter().step_by(p).copied().collect();
    Poly::from_reduced(a.field(), coeffs)
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime squarefree
/// factors with their multiplicities, sorted by multiplicity.
pub fn squarefree_decomposition(a: &Poly) -> Result<Vec<(Poly, usize)>> {
    let mut out: Vec<(Poly, usize)> = Vec::new();
    if a.is_constant() {
        return Ok(out);
    }
    let a = a.monic();
    collect_squarefree(&a, 1, &mut out)?;
    out.sort_by_key(|(_, m)| *m);
    // merge equal multiplicities coming from different recursion levels
    let mut merged: Vec<(Poly, usize)> = Vec::with_capacity(out.len());
    for (fac, m) in out {
        match merged.last_mut() {
            Some((prev, pm)) if *pm == m => *prev = prev.mul_poly(&fac),
            _ => merged.push((fac, m)),
        }
    }
    Ok(merged)
}

fn collect_squarefree(a: &Poly, scale: usize, out: &mut Vec<(Poly, usize)>) -> Result<()> {
    let p = a.p() as usize;
    let da = a.derivative();
    if da.is_zero() {
        return collect_squarefree(&pth_root(a), scale * p, out);
    }
    let mut c = a.gcd(&da)?;
    let mut w = a.exact_div(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let fac = w.exact_div(&y)?;
        if !fac.is_one() {
            out.push((fac.monic(), i * scale));
        }
        w = y;
        c = c.exact_div(&w)?;
        i += 1;
    }
    if !c.is_constant() {
        collect_squarefree(&pth_root(&c.monic()), scale * p, out)?;
    }
    Ok(())
}

/// Degrees of the irreducible factors of a squarefree polynomial, by
/// successive `gcd(a, x^{p^m} - x)` sweeps.
pub fn distinct_degree_degrees(a: &Poly) -> Result<BTreeSet<usize>> {
    let mut degrees = BTreeSet::new();
    let mut rest = a.monic();
    let x = Poly::x(a.field());
    let mut h = x.rem(&rest)?;
    let mut m = 0;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        m += 1;
        if deg < 2 * m {
            degrees.insert(deg);
            break;
        }
        h = frobenius_step(&h, &rest)?;
        let g = rest.gcd(&h.sub_poly(&x))?;
        if !g.is_one() {
            degrees.insert(m);
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
        }
    }
    Ok(degrees)
}

/// Rabin-style test: no factor of degree at most `deg/2`, and `x^{p^deg} = x`.
pub fn is_irreducible(a: &Poly) -> Result<bool> {
    let Some(deg) = a.degree() else {
        return Ok(false);
    };
    match deg {
        0 => return Ok(false),
        1 => return Ok(true),
        _ => {}
    }
    if a.coeff(0) == 0 {
        return Ok(false);
    }
    let x = Poly::x(a.field());
    let mut h = x.clone();
    for m in 1..=deg {
        h = frobenius_step(&h, a)?;
        if m <= deg / 2 && !a.gcd(&h.sub_poly(&x))?.is_one() {
            return Ok(false);
        }
    }
    Ok(h == x)
}

/// First monic irreducible of the given degree when candidates are ordered by
/// the integer `sum c_i p^i` of their lower coefficients.
pub fn irreducible_search(field: PrimeField, degree: usize) -> Result<Poly> {
    assert!(degree >= 1, "degree must be positive");
    let p = field.p();
    let mut lower = vec![0u32; degree];
    loop {
        if degree == 1 || lower[0] != 0 {
            let mut coeffs = lower.clone();
            coeffs.push(1);
            let cand = Poly::from_reduced(field, coeffs);
            if is_irreducible(&cand)? {
                return Ok(cand);
            }
        }
        // increment base-p counter, least significant digit first
        let mut i = 0;
        loop {
            assert!(i < degree, "no irreducible found; impossible over a finite field");
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
            i += 1;
        }
    }
}
