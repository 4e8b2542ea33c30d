//! p-linearized polynomials `L(X) = sum a_i X^{p^i}` with GF(p) coefficients.
//!
//! A linearized polynomial shares its coefficient vector with its conventional
//! associate `l(x) = sum a_i x^i`; composition of linearized polynomials is
//! multiplication of associates, and symbolic divisibility is ordinary
//! divisibility of associates. All the algebra therefore happens on [`Poly`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::Poly;
use crate::prime::{PrimeField, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearizedPoly {
    assoc: Poly,
}

impl LinearizedPoly {
    pub fn new(field: PrimeField, alphas: Vec<u64>) -> Self {
        Self { assoc: Poly::new(field, alphas) }
    }

    pub fn from_conventional(l: Poly) -> Self {
        Self { assoc: l }
    }

    pub fn to_conventional(&self) -> Poly {
        self.assoc.clone()
    }

    pub fn conventional(&self) -> &Poly {
        &self.assoc
    }

    /// The identity map `X`.
    pub fn identity(field: PrimeField) -> Self {
        Self::from_conventional(Poly::one(field))
    }

    pub fn zero(field: PrimeField) -> Self {
        Self::from_conventional(Poly::zero(field))
    }

    pub fn field(&self) -> PrimeField {
        self.assoc.field()
    }

    pub fn alphas(&self) -> &[Scalar] {
        self.assoc.coeffs()
    }

    pub fn is_zero(&self) -> bool {
        self.assoc.is_zero()
    }

    /// Largest `i` with `a_i != 0`.
    pub fn p_degree(&self) -> Option<usize> {
        self.assoc.degree()
    }

    /// `T_l^k = sum_{i < k/l} X^{p^{l i}}`
    pub fn trace_like(field: PrimeField, l: usize, k: usize) -> Result<Self> {
        Self::family(field, l, k, false)
    }

    /// `S_l^k = sum_{i < k/l} (-1)^i X^{p^{l i}}`
    pub fn alternating(field: PrimeField, l: usize, k: usize) -> Result<Self> {
        Self::family(field, l, k, true)
    }

    fn family(field: PrimeField, l: usize, k: usize, alternate: bool) -> Result<Self> {
        if l == 0 || k == 0 || k % l != 0 {
            return Err(Error::NotADivisor { s: l, m: k });
        }
        let mut coeffs = vec![0; k - l + 1];
        for i in 0..k / l {
            coeffs[l * i] = if alternate && i % 2 == 1 { field.neg(1) } else { 1 };
        }
        Ok(Self::from_conventional(Poly::from_reduced(field, coeffs)))
    }

    /// `L1 o L2`, i.e. the associate of `l1 * l2`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_conventional(self.assoc.mul_poly(&other.assoc))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_conventional(self.assoc.add_poly(&other.assoc))
    }

    pub fn scale(&self, c: Scalar) -> Self {
        Self::from_conventional(self.assoc.scale(c))
    }

    /// Whether `self` symbolically divides `other`.
    pub fn symbolically_divides(&self, other: &Self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        self.assoc.divides(&other.assoc)
    }

    /// Polynomial with exponents reduced mod `period`; agrees with `self` on
    /// GF(p^period), where `X^{p^period} = X`.
    pub fn fold(&self, period: usize) -> Self {
        assert!(period > 0);
        let a = self.alphas();
        if a.len() <= period {
            return self.clone();
        }
        let f = self.field();
        let mut out = vec![0; period];
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                out[i % period] = f.add(out[i % period], c);
            }
        }
        Self::from_conventional(Poly::from_reduced(f, out))
    }

    /// `sum a_i x^{p^i}` via one running Frobenius ladder; exponents are first
    /// folded mod the ambient degree.
    pub fn evaluate(&self, x: &FieldElement) -> Result<FieldElement> {
        let field = x.field();
        if field.prime() != self.field() {
            return Err(Error::FieldMismatch);
        }
        let folded = self.fold(field.degree());
        Ok(ladder(&folded, x))
    }

    /// Evaluation for an `x` known to lie in GF(p^period); exponents are folded
    /// mod `period` instead of M. The caller guarantees the membership.
    pub fn evaluate_in(&self, x: &FieldElement, period: usize) -> FieldElement {
        ladder(&self.fold(period), x)
    }

    /// Reference evaluation by repeated p-th powering, without any folding or
    /// precomputed tables; used to cross-check the ladder.
    pub fn evaluate_by_powering(&self, x: &FieldElement) -> FieldElement {
        let p = x.field().p() as u128;
        let mut acc = x.field().zero();
        let mut cur = x.clone();
        for (i, &a) in self.alphas().iter().enumerate() {
            if i > 0 {
                cur = cur.pow(p);
            }
            acc = &acc + &cur.scale(a);
        }
        acc
    }

    pub fn to_digits(&self) -> String {
        self.assoc.to_digits()
    }

    pub fn parse(field: PrimeField, s: &str) -> Result<Self> {
        Ok(Self::from_conventional(Poly::parse(field, s)?))
    }
}

fn ladder(poly: &LinearizedPoly, x: &FieldElement) -> FieldElement {
    let mut acc = x.field().zero();
    let mut cur = x.clone();
    let mut at = 0;
    for (i, &a) in poly.alphas().iter().enumerate() {
        if a == 0 {
            continue;
        }
        cur = cur.frobenius(i - at);
        at = i;
        acc = &acc + &cur.scale(a);
    }
    acc
}

impl fmt::Display for LinearizedPoly {
    /// `X + X^2 + X^8`; exponents beyond `u64` print as `X^(p^i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let p = self.field().p() as u64;
        let mut first = true;
        for (i, &c) in self.alphas().iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}*")?;
            }
            match (i, p.checked_pow(i as u32)) {
                (0, _) => write!(f, "X")?,
                (_, Some(e)) => write!(f, "X^{e}")?,
                (i, None) => write!(f, "X^({p}^{i})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lin[GF({})]({})", self.field().p(), self)
    }
}

/// Outcome of one identity in [`identity_suite`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
}

/// Verifies the composition identities among the `T`/`S` families for a
/// divisibility chain `m | l | k`, both as identities of conventional
/// associates and pointwise on sampled elements, plus the restriction
/// identities on GF(p^n) (`T_k^{[n,k]} = T_d^n`, and the `S` variant when
/// `[n,k]/k` is even).
pub fn identity_suite(
    field: &crate::field::FieldDescription,
    m: usize,
    l: usize,
    k: usize,
    n: usize,
    samples: &[FieldElement],
) -> Result<Vec<IdentityCheck>> {
    let pf = field.prime();
    if m == 0 || l % m != 0 || k % l != 0 {
        return Err(Error::NotADivisor { s: m, m: k });
    }
    let t = |a, b| LinearizedPoly::trace_like(pf, a, b);
    let s = |a, b| LinearizedPoly::alternating(pf, a, b);
    let mut out = Vec::new();
    let mut check = |name: String, lhs: LinearizedPoly, rhs: LinearizedPoly, inner: Option<(LinearizedPoly, LinearizedPoly)>| -> Result<()> {
        let mut passed = lhs == rhs;
        if let Some((outer, inner)) = inner {
            for x in samples {
                let composed = outer.evaluate(&inner.evaluate(x)?)?;
                passed &= composed == rhs.evaluate(x)?;
            }
        }
        out.push(IdentityCheck { name, passed });
        Ok(())
    };

    let (tlk, tml) = (t(l, k)?, t(m, l)?);
    check(format!("T_{l}^{k} o T_{m}^{l} = T_{m}^{k}"), tlk.compose(&tml), t(m, k)?, Some((tlk.clone(), tml)))?;
    if (l / m) % 2 == 0 {
        let sml = s(m, l)?;
        check(format!("T_{l}^{k} o S_{m}^{l} = S_{m}^{k}"), tlk.compose(&sml), s(m, k)?, Some((tlk.clone(), sml)))?;
    } else {
        let (slk, sml) = (s(l, k)?, s(m, l)?);
        check(format!("S_{l}^{k} o S_{m}^{l} = S_{m}^{k}"), slk.compose(&sml), s(m, k)?, Some((slk, sml)))?;
    }

    let (slk, tl2l) = (s(l, k)?, t(l, 2 * l)?);
    let rhs = if (k / l) % 2 == 0 { s(k, 2 * k)? } else { t(k, 2 * k)? };
    let label = if (k / l) % 2 == 0 { "S" } else { "T" };
    check(format!("S_{l}^{k} o T_{l}^{{2l}} = {label}_{k}^{{2k}}"), slk.compose(&tl2l), rhs, Some((slk, tl2l)))?;

    let sl2l = s(l, 2 * l)?;
    check(format!("T_{l}^{k} o S_{l}^{{2l}} = S_{k}^{{2k}}"), tlk.compose(&sl2l), s(k, 2 * k)?, Some((tlk, sl2l)))?;

    // restriction identities: pointwise on GF(p^n)
    let d = gcd(n, k);
    let lcm = n / d * k;
    let basis = field.subfield_basis(n)?;
    let members: Vec<FieldElement> = if samples.is_empty() {
        basis.elements().to_vec()
    } else {
        samples.iter().map(|x| field.relative_trace(x, n, field.degree())).collect()
    };
    let (tk, td) = (t(k, lcm)?, t(d, n)?);
    let ok = members.iter().all(|x| tk.evaluate(x).ok() == td.evaluate(x).ok());
    out.push(IdentityCheck { name: format!("T_{k}^{lcm} = T_{d}^{n} on GF(p^{n})"), passed: ok });
    if (lcm / k) % 2 == 0 {
        let (sk, sd) = (s(k, lcm)?, s(d, n)?);
        let ok = members.iter().all(|x| sk.evaluate(x).ok() == sd.evaluate(x).ok());
        out.push(IdentityCheck { name: format!("S_{k}^{lcm} = S_{d}^{n} on GF(p^{n})"), passed: ok });
    }
    Ok(out)
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{build_field, FieldDescription};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn lin(p: u64, s: &str) -> LinearizedPoly {
        LinearizedPoly::parse(gf(p), s).unwrap()
    }

    #[test]
    fn associates() {
        let l = lin(2, "1,1,0,1");
        assert_eq!(l.to_string(), "X + X^2 + X^8");
        assert_eq!(l.to_conventional().to_string(), "x^3+x+1");
        let lp = lin(2, "1,1,1,0,1");
        assert_eq!(lp.to_string(), "X + X^2 + X^4 + X^16");
        assert_eq!(LinearizedPoly::from_conventional(lp.to_conventional()), lp);
        assert!(LinearizedPoly::zero(gf(2)).to_conventional().is_zero());
    }

    #[test]
    fn worked_composition() {
        let l = lin(2, "1,1,0,1");
        let lp = lin(2, "1,1,1,0,1");
        let prod = l.compose(&lp);
        assert_eq!(prod.to_string(), "X + X^128");
        assert_eq!(l.compose(&LinearizedPoly::identity(gf(2))), l);
        assert!(l.symbolically_divides(&prod).unwrap());
        assert!(!l.symbolically_divides(&lin(2, "1,0,0,1")).unwrap());
        assert_eq!(LinearizedPoly::zero(gf(2)).symbolically_divides(&l), Err(Error::ZeroDivisor));
    }

    #[test]
    fn families() {
        for p in [2u64, 3, 5] {
            let f = gf(p);
            for k in 1..5 {
                let s = LinearizedPoly::alternating(f, k, 2 * k).unwrap();
                let mut expect = vec![0u32; k + 1];
                expect[0] = 1;
                expect[k] = p as u32 - 1;
                assert_eq!(s.alphas(), &expect[..]);
                assert_eq!(LinearizedPoly::trace_like(f, k, k).unwrap(), LinearizedPoly::identity(f));
            }
        }
        let t17 = LinearizedPoly::trace_like(gf(2), 1, 7).unwrap();
        assert_eq!(t17.to_conventional(), Poly::parse(gf(2), "1,1,1,1,1,1,1").unwrap());
        assert!(LinearizedPoly::trace_like(gf(2), 2, 7).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let f4 = build_field(2, 2, None).unwrap();
        let w = f4.solve_artin_schreier(1).unwrap();
        assert_eq!(lin(2, "1,1").evaluate(&w).unwrap(), f4.one());
        let f8 = build_field(2, 3, None).unwrap();
        let g = f8.generator();
        let l = lin(2, "1,1,0,1");
        assert_eq!(l.evaluate(&g).unwrap(), l.evaluate_by_powering(&g));
        assert_eq!(lin(2, "1").evaluate(&g).unwrap(), g);
        let f9 = build_field(3, 2, None).unwrap();
        assert_eq!(l.evaluate(&f9.one()), Err(Error::FieldMismatch));
    }

    #[test]
    fn identity_suite_small_chains() {
        for (p, m, l, k, n) in [(2u64, 1, 2, 4, 4), (3, 1, 1, 2, 2), (2, 2, 2, 4, 3), (5, 1, 3, 6, 4)] {
            let field = FieldDescription::default_for(p, n * p as usize).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let samples: Vec<_> = (0..4).map(|_| field.random(&mut rng)).collect();
            let report = identity_suite(&field, m, l, k, n, &samples).unwrap();
            assert!(report.iter().all(|c| c.passed), "{report:?}");
        }
    }

    fn arb_lin(p: u64) -> impl Strategy<Value = LinearizedPoly> {
        prop::collection::vec(0..p, 1..6).prop_map(move |c| LinearizedPoly::new(gf(p), c))
    }

    proptest! {
        #[test]
        fn additive_and_homogeneous(
            (p, l1, l2) in prop::sample::select(vec![2u64, 3, 5]).prop_flat_map(|p| (Just(p), arb_lin(p), arb_lin(p))),
            m in 1usize..7,
            seed in any::<u64>(),
            c in 0u32..5,
        ) {
            let field = FieldDescription::default_for(p, m).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, y) = (field.random(&mut rng), field.random(&mut rng));
            let c = c % p as u32;
            let e = |v: &FieldElement| l1.evaluate(v).unwrap();
            prop_assert_eq!(e(&(&x + &y)), &e(&x) + &e(&y));
            prop_assert_eq!(e(&x.scale(c)), e(&x).scale(c));
            prop_assert_eq!(e(&x), l1.evaluate_by_powering(&x));
            let composed = l1.compose(&l2);
            prop_assert_eq!(composed.evaluate(&x).unwrap(), l1.evaluate(&l2.evaluate(&x).unwrap()).unwrap());
            prop_assert_eq!(composed, l2.compose(&l1));
        }
    }

    #[test]
    fn exhaustive_additivity_gf64() {
        let field = FieldDescription::default_for(2, 6).unwrap();
        let l = lin(2, "1,1,0,1,1");
        let all: Vec<_> = field.subfield_basis(6).unwrap().all_elements().collect();
        for x in all.iter().step_by(5) {
            let lx = l.evaluate(x).unwrap();
            for y in &all {
                assert_eq!(l.evaluate(&(x + y)).unwrap(), &lx + &l.evaluate(y).unwrap());
            }
        }
    }
}
