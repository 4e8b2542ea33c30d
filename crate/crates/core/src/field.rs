//! The ambient extension GF(p^M) = GF(p)[x]/(modulus), its Frobenius powers
//! and subfield lattice, plus the two special-element equations the solver
//! needs (relative trace one, and `x - x^{p^d} = 1`).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Matrix};
use crate::poly::{irreducible_search, is_irreducible, parse_digits, Poly};
use crate::prime::{PrimeField, Scalar};

/// Sum of products reduced only when the next addition could overflow.
struct LazyAcc {
    p: u64,
    budget: u64,
}

impl LazyAcc {
    fn new(p: u32) -> Self {
        let max = (p as u64 - 1).max(1);
        let budget = (u64::MAX / (max * max)).saturating_sub(1).max(1);
        Self { p: p as u64, budget }
    }

    /// `out += c * v` over many calls, with `count` tracking pending additions.
    #[inline]
    fn axpy(&self, out: &mut [u64], count: &mut u64, c: Scalar, v: &[Scalar]) {
        if *count >= self.budget {
            out.iter_mut().for_each(|o| *o %= self.p);
            *count = 1;
        }
        let c = c as u64;
        for (o, &x) in out.iter_mut().zip(v) {
            *o += c * x as u64;
        }
        *count += 1;
    }
}

pub(crate) struct FieldInner {
    prime: PrimeField,
    degree: usize,
    modulus: Poly,
    /// `reduction[i]` = coordinates of `g^{M+i}`
    reduction: Vec<Vec<Scalar>>,
    /// `frobenius[t]` = flattened images of the power basis under `x -> x^{p^t}`
    frobenius: Vec<OnceLock<Vec<Scalar>>>,
    subfields: Mutex<HashMap<usize, Arc<SubfieldBasis>>>,
}

/// Description of GF(p^M): prime, degree and a verified irreducible modulus.
/// Cheap to clone; clones share precomputed tables.
#[derive(Clone)]
pub struct FieldDescription {
    inner: Arc<FieldInner>,
}

/// Builds GF(p^M), searching for the default modulus when none is given.
pub fn build_field(p: u64, degree: usize, modulus: Option<Poly>) -> Result<FieldDescription> {
    FieldDescription::new(p, degree, modulus)
}

static DEFAULT_FIELDS: OnceLock<Mutex<HashMap<(u32, usize), FieldDescription>>> = OnceLock::new();

impl FieldDescription {
    pub fn new(p: u64, degree: usize, modulus: Option<Poly>) -> Result<Self> {
        let prime = PrimeField::new(p)?;
        if degree == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        let modulus = match modulus {
            Some(m) => {
                if m.field() != prime {
                    return Err(Error::FieldMismatch);
                }
                if m.degree() != Some(degree) {
                    return Err(Error::DegreeMismatch { expected: degree, found: m.degree().unwrap_or(0) });
                }
                if !m.is_monic() || !is_irreducible(&m)? {
                    return Err(Error::NotIrreducible(m.to_string()));
                }
                m
            }
            None => irreducible_search(prime, degree)?,
        };
        Ok(Self::from_verified(prime, modulus))
    }

    /// Shared instance with the default modulus for `(p, M)`.
    pub fn default_for(p: u64, degree: usize) -> Result<Self> {
        let prime = PrimeField::new(p)?;
        let cache = DEFAULT_FIELDS.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&(prime.p(), degree)) {
            return Ok(f.clone());
        }
        let f = Self::new(p, degree, None)?;
        Ok(cache.lock().unwrap().entry((prime.p(), degree)).or_insert(f).clone())
    }

    fn from_verified(prime: PrimeField, modulus: Poly) -> Self {
        let m = modulus.degree().expect("nonzero modulus");
        // g^M = -(c_0 + ... + c_{M-1} g^{M-1})
        let mut reduction = Vec::with_capacity(m.saturating_sub(1));
        let mut cur: Vec<Scalar> = modulus.coeffs()[..m].iter().map(|&c| prime.neg(c)).collect();
        for _ in 0..m.saturating_sub(1) {
            reduction.push(cur.clone());
            // multiply by g
            let top = cur[m - 1];
            for i in (1..m).rev() {
                cur[i] = prime.add(cur[i - 1], prime.mul(top, prime.neg(modulus.coeff(i))));
            }
            cur[0] = prime.mul(top, prime.neg(modulus.coeff(0)));
        }
        let frobenius = (0..m).map(|_| OnceLock::new()).collect();
        Self {
            inner: Arc::new(FieldInner {
                prime,
                degree: m,
                modulus,
                reduction,
                frobenius,
                subfields: Mutex::new(HashMap::new()),
            }),
        }
    }

    #[inline]
    pub fn prime(&self) -> PrimeField {
        self.inner.prime
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.prime.p()
    }

    /// Extension degree M.
    #[inline]
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn modulus(&self) -> &Poly {
        &self.inner.modulus
    }

    pub fn same_as(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.prime == other.inner.prime && self.inner.modulus == other.inner.modulus)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coeffs: vec![0; self.degree()] }
    }

    pub fn one(&self) -> FieldElement {
        self.scalar(1)
    }

    pub fn scalar(&self, c: Scalar) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = self.prime().reduce(c as u64);
        e
    }

    /// Residue class of `x`.
    pub fn generator(&self) -> FieldElement {
        let mut e = self.zero();
        if self.degree() == 1 {
            e.coeffs[0] = self.prime().neg(self.modulus().coeff(0));
        } else {
            e.coeffs[1] = 1;
        }
        e
    }

    /// Element from power-basis coordinates; shorter vectors are zero-padded.
    pub fn element(&self, coeffs: &[Scalar]) -> Result<FieldElement> {
        if coeffs.len() > self.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: coeffs.len() });
        }
        if coeffs.iter().any(|&c| c >= self.p()) {
            return Err(Error::Parse(format!("coefficient out of range for p = {}", self.p())));
        }
        let mut v = coeffs.to_vec();
        v.resize(self.degree(), 0);
        Ok(FieldElement { field: self.clone(), coeffs: v })
    }

    /// Parses the comma-separated little-endian digit encoding.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        self.element(&parse_digits(self.prime(), s)?)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let p = self.p();
        FieldElement { field: self.clone(), coeffs: (0..self.degree()).map(|_| rng.gen_range(0..p)).collect() }
    }

    fn frobenius_table(&self, t: usize) -> &[Scalar] {
        let inner = &self.inner;
        if let Some(tab) = inner.frobenius[t].get() {
            return tab;
        }
        let m = inner.degree;
        let table = if t == 0 {
            let mut id = vec![0; m * m];
            (0..m).for_each(|i| id[i * m + i] = 1);
            id
        } else if t == 1 {
            let gp = self.generator().pow(inner.prime.p() as u128);
            let mut cur = self.one();
            let mut tab = Vec::with_capacity(m * m);
            for _ in 0..m {
                tab.extend_from_slice(&cur.coeffs);
                cur = cur.mul_unchecked(&gp);
            }
            tab
        } else {
            let prev = self.frobenius_table(t - 1).to_vec();
            let mut tab = Vec::with_capacity(m * m);
            for i in 0..m {
                tab.extend(self.apply_table(1, &prev[i * m..(i + 1) * m]));
            }
            tab
        };
        let _ = inner.frobenius[t].set(table);
        inner.frobenius[t].get().expect("just set")
    }

    fn apply_table(&self, t: usize, x: &[Scalar]) -> Vec<Scalar> {
        let m = self.degree();
        let table = self.frobenius_table(t);
        let lazy = LazyAcc::new(self.p());
        let mut acc = vec![0u64; m];
        let mut count = 0;
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                lazy.axpy(&mut acc, &mut count, c, &table[i * m..(i + 1) * m]);
            }
        }
        let p = self.p() as u64;
        acc.into_iter().map(|v| (v % p) as Scalar).collect()
    }

    /// Cached echelon basis of GF(p^s) inside this field.
    pub fn subfield_basis(&self, s: usize) -> Result<Arc<SubfieldBasis>> {
        let m = self.degree();
        if s == 0 || m % s != 0 {
            return Err(Error::NotADivisor { s, m });
        }
        if let Some(b) = self.inner.subfields.lock().unwrap().get(&s) {
            return Ok(b.clone());
        }
        let basis = Arc::new(SubfieldBasis::compute(self, s));
        Ok(self.inner.subfields.lock().unwrap().entry(s).or_insert(basis).clone())
    }

    pub fn is_in_subfield(&self, x: &FieldElement, s: usize) -> Result<bool> {
        let m = self.degree();
        if s == 0 || m % s != 0 {
            return Err(Error::NotADivisor { s, m });
        }
        Ok(x.frobenius(s) == *x)
    }

    /// Relative trace `sum_{i < n/d} x^{p^{d i}}`.
    pub fn relative_trace(&self, x: &FieldElement, d: usize, n: usize) -> FieldElement {
        let mut acc = self.zero();
        let mut cur = x.clone();
        for i in 0..n / d {
            if i > 0 {
                cur = cur.frobenius(d);
            }
            acc = &acc + &cur;
        }
        acc
    }

    /// Some `delta` in GF(p^n) with relative trace to GF(p^d) equal to one.
    pub fn solve_trace_one(&self, d: usize, n: usize) -> Result<FieldElement> {
        let m = self.degree();
        if d == 0 || n == 0 || n % d != 0 || m % n != 0 {
            return Err(Error::InvalidTower { d, n, m });
        }
        if d == n {
            return Ok(self.one());
        }
        let basis = self.subfield_basis(n)?;
        for b in basis.elements() {
            let c = self.relative_trace(b, d, n);
            if !c.is_zero() {
                let delta = &c.inv()? * b;
                debug_assert_eq!(self.relative_trace(&delta, d, n), self.one());
                return Ok(delta);
            }
        }
        Err(Error::InternalInvariantViolation(format!("relative trace GF(p^{n}) -> GF(p^{d}) vanished on a basis")))
    }

    /// Some `x` in GF(p^{p d}) with `x - x^{p^d} = 1`.
    pub fn solve_artin_schreier(&self, d: usize) -> Result<FieldElement> {
        let m = self.degree();
        let pd = d * self.p() as usize;
        if d == 0 || m % pd != 0 {
            return Err(Error::InvalidTower { d, n: pd, m });
        }
        let basis = self.subfield_basis(pd)?;
        let columns: Vec<Vec<Scalar>> = basis.elements().iter().map(|b| (b - &b.frobenius(d)).coeffs).collect();
        let system = Matrix::from_columns(self.prime(), m, &columns);
        let (sol, _) = system.solve(&self.one().coeffs).ok_or_else(|| {
            Error::InternalInvariantViolation(format!("x - x^(p^{d}) = 1 has no solution in GF(p^{pd})"))
        })?;
        let x = basis.combine(&sol);
        if &x - &x.frobenius(d) != self.one() {
            return Err(Error::InternalInvariantViolation("Artin-Schreier solution failed substitution".into()));
        }
        Ok(x)
    }
}

impl fmt::Debug for FieldDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {}", self.p(), self.degree(), self.modulus())
    }
}

/// Element of GF(p^M) as power-basis coordinates of the modulus root.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldDescription,
    coeffs: Vec<Scalar>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field.same_as(&other.field)
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldDescription {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn to_digits(&self) -> String {
        crate::poly::digits_to_string(&self.coeffs)
    }

    fn ensure_same(&self, other: &Self) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ensure_same(other)?;
        let f = self.field.prime();
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Self { field: self.field.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.ensure_same(other)?;
        let f = self.field.prime();
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Self { field: self.field.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ensure_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let field = &self.field;
        let m = field.degree();
        let p = field.p() as u64;
        let lazy = LazyAcc::new(field.p());
        let mut prod = vec![0u64; 2 * m - 1];
        let mut count = 0;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != 0 {
                lazy.axpy(&mut prod[i..i + m], &mut count, a, &other.coeffs);
            }
        }
        let high: Vec<Scalar> = prod[m..].iter().map(|&v| (v % p) as Scalar).collect();
        let mut low: Vec<u64> = prod[..m].iter().map(|&v| v % p).collect();
        let mut count = 1;
        for (i, &h) in high.iter().enumerate() {
            if h != 0 {
                lazy.axpy(&mut low, &mut count, h, &field.inner.reduction[i]);
            }
        }
        Self { field: field.clone(), coeffs: low.into_iter().map(|v| (v % p) as Scalar).collect() }
    }

    pub fn neg(&self) -> Self {
        let f = self.field.prime();
        Self { field: self.field.clone(), coeffs: self.coeffs.iter().map(|&a| f.neg(a)).collect() }
    }

    /// Multiplication by a GF(p) scalar.
    pub fn scale(&self, c: Scalar) -> Self {
        let f = self.field.prime();
        Self { field: self.field.clone(), coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn pow(&self, mut exp: u128) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field.prime();
        let a = Poly::from_reduced(f, self.coeffs.clone());
        let (g, s, _) = a.xgcd(self.field.modulus())?;
        debug_assert!(g.is_one());
        let mut coeffs = s.into_coeffs();
        coeffs.resize(self.field.degree(), 0);
        Ok(Self { field: self.field.clone(), coeffs })
    }

    /// `x^{p^t}`, with `t` reduced mod M.
    pub fn frobenius(&self, t: usize) -> Self {
        let t = t % self.field.degree();
        if t == 0 {
            return self.clone();
        }
        Self { field: self.field.clone(), coeffs: self.field.apply_table(t, &self.coeffs) }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digits())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_digits())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("field mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

/// Echelon GF(p)-basis of the subfield GF(p^s) inside GF(p^M).
#[derive(Debug, Clone)]
pub struct SubfieldBasis {
    s: usize,
    basis: Vec<FieldElement>,
    echelon: EchelonBasis,
}

impl SubfieldBasis {
    fn compute(field: &FieldDescription, s: usize) -> Self {
        let m = field.degree();
        let prime = field.prime();
        // kernel of Frobenius^s - id on coordinate vectors
        let columns: Vec<Vec<Scalar>> = (0..m)
            .map(|i| {
                let mut e = vec![0; m];
                e[i] = 1;
                let img = field.apply_table(s % m, &e);
                img.iter().zip(&e).map(|(&a, &b)| prime.sub(a, b)).collect()
            })
            .collect();
        let map = Matrix::from_columns(prime, m, &columns);
        let echelon = EchelonBasis::new(prime, m, &map.nullspace());
        let basis = echelon
            .rows
            .iter()
            .map(|r| FieldElement { field: field.clone(), coeffs: r.clone() })
            .collect();
        Self { s, basis, echelon }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn echelon(&self) -> &EchelonBasis {
        &self.echelon
    }

    /// `sum coords[i] * basis[i]`
    pub fn combine(&self, coords: &[Scalar]) -> FieldElement {
        assert_eq!(coords.len(), self.basis.len());
        let field = self.basis[0].field();
        let prime = field.prime();
        let m = field.degree();
        let mut out = vec![0; m];
        for (&c, b) in coords.iter().zip(&self.basis) {
            if c != 0 {
                for (o, &v) in out.iter_mut().zip(&b.coeffs) {
                    *o = prime.add(*o, prime.mul(c, v));
                }
            }
        }
        FieldElement { field: field.clone(), coeffs: out }
    }

    /// Coordinates of `x` over this basis; fails if `x` is outside the subfield.
    pub fn coordinates(&self, x: &FieldElement) -> Result<Vec<Scalar>> {
        let prime = x.field().prime();
        if !self.echelon.contains(prime, &x.coeffs) {
            return Err(Error::NotInSubfield { n: self.s });
        }
        Ok(self.echelon.pivots.iter().map(|&pc| x.coeffs[pc]).collect())
    }

    /// Every element of the subfield, in base-p counter order of coordinates.
    pub fn all_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let p = self.basis[0].field().p();
        let dim = self.basis.len();
        let total = (p as u128).pow(dim as u32);
        (0..total).map(move |mut code| {
            let coords: Vec<Scalar> = (0..dim)
                .map(|_| {
                    let c = (code % p as u128) as Scalar;
                    code /= p as u128;
                    c
                })
                .collect();
            self.combine(&coords)
        })
    }
}
