//! Dense univariate polynomials over GF(p).
//!
//! These are the conventional p-associates of the linearized world: every
//! gcd, Bézout pair and exact quotient the solver needs is computed here and
//! only then lifted to a [`LinearizedPoly`](crate::linearized::LinearizedPoly).

mod factor;
mod order;

pub use factor::{distinct_degree_degrees, irreducible_search, is_irreducible, squarefree_decomposition};
pub use order::{factor_u128, polynomial_order, polynomial_order_with_bound, DEFAULT_ORDER_BOUND};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::prime::{PrimeField, Scalar};

/// Polynomial over GF(p), coefficients little-endian with no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<Scalar>,
}

impl Poly {
    /// Builds a polynomial, reducing every coefficient mod p.
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        Self::from_reduced(field, coeffs)
    }

    /// Builds from residues already in `[0, p)`.
    pub fn from_reduced(field: PrimeField, mut coeffs: Vec<Scalar>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < field.p()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn from_i64s(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::from_reduced(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: PrimeField, c: Scalar) -> Self {
        Self::from_reduced(field, vec![field.reduce(c as u64)])
    }

    pub fn x(field: PrimeField) -> Self {
        Self::monomial(field, 1, 1)
    }

    /// `c * x^e`
    pub fn monomial(field: PrimeField, c: Scalar, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = field.reduce(c as u64);
        Self::from_reduced(field, coeffs)
    }

    /// `1 - x^k`
    pub fn one_minus_x_pow(field: PrimeField, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[0] = 1;
        coeffs[k] = field.sub(coeffs[k], 1);
        Self::from_reduced(field, coeffs)
    }

    /// `1 + x^k`
    pub fn one_plus_x_pow(field: PrimeField, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[0] = 1;
        coeffs[k] = field.add(coeffs[k], 1);
        Self::from_reduced(field, coeffs)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.field, other.field, "polynomials over different prime fields");
    }

    pub fn scale(&self, c: Scalar) -> Self {
        let f = self.field;
        Self::from_reduced(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn eval(&self, x: Scalar) -> Scalar {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.reduce(i as u64)))
            .collect();
        Self::from_reduced(f, coeffs)
    }

    pub fn add_poly(&self, other: &Self) -> Self {
        self.check(other);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::from_reduced(f, coeffs)
    }

    pub fn sub_poly(&self, other: &Self) -> Self {
        self.check(other);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Self::from_reduced(f, coeffs)
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let p = self.p() as u64;
        let (short, long) = if self.coeffs.len() <= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        // each product is < p^2 < 2^62, so two of them fit before reducing
        let mut acc = vec![0u64; short.len() + long.len() - 1];
        for (i, &a) in short.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let a = a as u64;
            for (j, &b) in long.iter().enumerate() {
                let slot = &mut acc[i + j];
                *slot = (*slot + a * b as u64) % p;
            }
        }
        Self::from_reduced(self.field, acc.into_iter().map(|c| c as Scalar).collect())
    }

    /// Quotient and remainder with `deg(r) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check(divisor);
        let Some(db) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let f = self.field;
        let Some(da) = self.degree() else {
            return Ok((Self::zero(f), Self::zero(f)));
        };
        if da < db {
            return Ok((Self::zero(f), self.clone()));
        }
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; da - db + 1];
        for shift in (0..=da - db).rev() {
            let c = rem[shift + db];
            if c == 0 {
                continue;
            }
            let q = f.mul(c, lead_inv);
            quot[shift] = q;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                if b != 0 {
                    rem[shift + j] = f.sub(rem[shift + j], f.mul(q, b));
                }
            }
        }
        rem.truncate(db);
        Ok((Self::from_reduced(f, quot), Self::from_reduced(f, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Quotient `self / divisor`, failing unless the remainder vanishes.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g`
    /// monic, and `s`, `t` the minimal-degree Bézout pair produced by the
    /// remainder sequence.
    pub fn xgcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        self.check(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = s0.sub_poly(&q.mul_poly(&s1));
            let t = t0.sub_poly(&q.mul_poly(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = f.inv(r0.leading())?;
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let g = self.gcd(other)?;
        Ok(self.exact_div(&g)?.mul_poly(other).monic())
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Result<Self> {
        self.mul_poly(other).rem(modulus)
    }

    /// `self^exp mod modulus` by square and multiply.
    pub fn pow_mod(&self, mut exp: u128, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one(self.field).rem(modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_mod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_poly(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_poly(&base);
            }
        }
        acc
    }

    /// Comma-separated little-endian digits, e.g. `1,1,0,1` for `x^3+x+1`.
    pub fn to_digits(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        digits_to_string(&self.coeffs)
    }

    /// Parses either the digit form (`1,1,0,1`) or the pretty form (`x^3+x+1`).
    pub fn parse(field: PrimeField, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('x') || s.contains('X') {
            parse_pretty(field, s)
        } else {
            Ok(Self::from_reduced(field, parse_digits(field, s)?))
        }
    }
}

pub(crate) fn digits_to_string(digits: &[Scalar]) -> String {
    let parts: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
    parts.join(",")
}

/// Parses `c0,c1,...` into residues, rejecting digits outside `[0, p)`.
pub fn parse_digits(field: PrimeField, s: &str) -> Result<Vec<Scalar>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty digit string".into()));
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let v: u64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("invalid digit {tok:?}")))?;
            if v >= field.p() as u64 {
                return Err(Error::Parse(format!("digit {v} out of range for p = {}", field.p())));
            }
            Ok(v as Scalar)
        })
        .collect()
}

fn parse_pretty(field: PrimeField, s: &str) -> Result<Poly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);

    let mut coeffs: Vec<Scalar> = Vec::new();
    for term in terms {
        let (negative, body) = match term.as_bytes().first() {
            Some(b'+') => (false, &term[1..]),
            Some(b'-') => (true, &term[1..]),
            _ => (false, term),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {s:?}")));
        }
        let bad = || Error::Parse(format!("invalid term {term:?}"));
        let (coef, exp) = match body.find(['x', 'X']) {
            None => (body.parse::<u64>().map_err(|_| bad())?, 0usize),
            Some(pos) => {
                let head = body[..pos].trim_end_matches('*');
                let coef = if head.is_empty() { 1 } else { head.parse::<u64>().map_err(|_| bad())? };
                let tail = &body[pos + 1..];
                let exp = if tail.is_empty() {
                    1
                } else if let Some(e) = tail.strip_prefix('^') {
                    e.parse::<usize>().map_err(|_| bad())?
                } else {
                    return Err(bad());
                };
                (coef, exp)
            }
        };
        let mut c = field.reduce(coef);
        if negative {
            c = field.neg(c);
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] = field.add(coeffs[exp], c);
    }
    Ok(Poly::from_reduced(field, coeffs))
}

impl fmt::Display for Poly {
    /// Pretty form, highest degree first: `x^3+x+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[GF({})]({})", self.p(), self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.add_poly(rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.sub_poly(rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_poly(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::zero(self.field).sub_poly(self)
    }
}
