//! Exhaustive kernel identities over small fields.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::FieldDescription;
use crate::linearized::LinearizedPoly;
use crate::poly::Poly;

const EXHAUSTIVE_LIMIT: u128 = 1 << 16;

fn all_elements(field: &FieldDescription) -> Result<Vec<crate::field::FieldElement>> {
    let size = (field.p() as u128).checked_pow(field.degree() as u32).unwrap_or(u128::MAX);
    if size > EXHAUSTIVE_LIMIT {
        return Err(Error::TooMany { count: size, cap: EXHAUSTIVE_LIMIT });
    }
    Ok(field.subfield_basis(field.degree())?.all_elements().collect())
}

/// With `l0 = gcd(l1, l2)`: `ker(L0) = ker(L1) ∩ ker(L2)` on all of GF(p^m).
pub fn kernel_intersection_check(l1: &Poly, l2: &Poly, m: usize) -> Result<bool> {
    let field = FieldDescription::default_for(l1.p() as u64, m)?;
    let l0 = LinearizedPoly::from_conventional(l1.gcd(l2)?);
    let (a, b) = (LinearizedPoly::from_conventional(l1.clone()), LinearizedPoly::from_conventional(l2.clone()));
    for x in all_elements(&field)? {
        let lhs = l0.evaluate(&x)?.is_zero();
        let rhs = a.evaluate(&x)?.is_zero() && b.evaluate(&x)?.is_zero();
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// With `l * l' = 1 - x^k`: `ker(L) = L'(GF(p^k))`, and all `p^{deg l}` roots
/// of `L` lie in GF(p^k).
pub fn kernel_image_check(l: &Poly, k: usize) -> Result<bool> {
    let pf = l.field();
    let lprime = Poly::one_minus_x_pow(pf, k).exact_div(l).map_err(|_| Error::InvalidK { k: k as u64 })?;
    let field = FieldDescription::default_for(pf.p() as u64, k)?;
    let (big, small) = (LinearizedPoly::from_conventional(l.clone()), LinearizedPoly::from_conventional(lprime));
    let mut image = HashSet::new();
    let mut kernel = HashSet::new();
    for x in all_elements(&field)? {
        image.insert(small.evaluate(&x)?.coeffs().to_vec());
        if big.evaluate(&x)?.is_zero() {
            kernel.insert(x.coeffs().to_vec());
        }
    }
    let expected = (pf.p() as usize).pow(l.degree().unwrap_or(0) as u32);
    Ok(image == kernel && kernel.len() == expected)
}
