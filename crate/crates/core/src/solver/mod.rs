//! Complete solution sets of `L(X) = a` over GF(p^n).
//!
//! [`SolverContext::build`] derives everything that depends only on
//! `(p, L, n)`: the shift that makes `a_0 != 0`, a valid `k` with
//! `l | x^k - 1`, the cofactor `l'`, the split `w`, `u`, `v`, the Bézout pair
//! `f`, `g`, and the special elements `delta`, `delta_1`. Per right-hand side
//! work is then a handful of linearized evaluations.

mod checks;
mod closed_form;
mod formula;
mod oracle;
mod timing;

pub use checks::{kernel_intersection_check, kernel_image_check};
pub use closed_form::{closed_form_check, ClosedFormReport, Family};
pub use formula::Thm1Trace;
pub use timing::{bench_rows, BenchRow};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldDescription, FieldElement, SubfieldBasis};
use crate::linalg::{EchelonBasis, Matrix};
use crate::linearized::{gcd, LinearizedPoly};
use crate::poly::{polynomial_order_with_bound, Poly, DEFAULT_ORDER_BOUND};
use crate::prime::PrimeField;

/// Which route produces the particular solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// `Thm2` when `p` does not divide `k/d`, otherwise `Thm1`.
    #[default]
    Auto,
    /// Double-sum construction through `W`, `U`, `G` and `delta_1`.
    Thm1,
    /// Single composed evaluation `(d/k) L' T_k^{[n,k]}(delta a)`; needs `p` not dividing `k/d`.
    Thm2,
    /// Gaussian elimination on the matrix of `L` over GF(p^n).
    Matrix,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Auto => "auto",
            Method::Thm1 => "thm1",
            Method::Thm2 => "thm2",
            Method::Matrix => "matrix",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "thm1" => Ok(Method::Thm1),
            "thm2" => Ok(Method::Thm2),
            "matrix" => Ok(Method::Matrix),
            other => Err(Error::Parse(format!("unknown method {other:?}"))),
        }
    }
}

/// One problem family: the equation `L(X) = a` for `a` in GF(p^n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub p: u64,
    /// Coefficients `a_0..a_t` of `L = sum a_i X^{p^i}`.
    pub alphas: Vec<u64>,
    pub n: usize,
    /// Any `k` with `l | x^k - 1`; the order of `l` when absent.
    pub k: Option<u64>,
    pub method: Method,
}

impl ProblemSpec {
    pub fn new(p: u64, alphas: Vec<u64>, n: usize) -> Self {
        Self { p, alphas, n, k: None, method: Method::Auto }
    }

    pub fn with_k(mut self, k: u64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }
}

/// Resource limits for context construction and enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// Bound on each `p^m - 1` factored while computing the order.
    pub order_bound: u128,
    /// Largest `k` accepted; `l'` and `w` have degree close to `k`.
    pub max_k: u64,
    /// Largest solution count [`enumerate_solutions`] will expand.
    pub enumeration_cap: u128,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { order_bound: DEFAULT_ORDER_BOUND, max_k: 1 << 22, enumeration_cap: 1 << 16 }
    }
}

/// Removes leading zero coefficients: `L = (sum a_{i+s} X^{p^i})^{p^s}`.
pub fn preprocess(field: PrimeField, alphas: &[u64]) -> Result<(usize, LinearizedPoly)> {
    let reduced: Vec<u64> = alphas.iter().map(|&a| field.reduce(a) as u64).collect();
    let s = reduced.iter().position(|&a| a != 0).ok_or(Error::ZeroPolynomial)?;
    Ok((s, LinearizedPoly::new(field, reduced[s..].to_vec())))
}

/// Conventional associates of the decomposition, kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub l: Poly,
    pub lprime: Poly,
    pub t_dk: Poly,
    pub w: Poly,
    pub u: Poly,
    pub v: Poly,
    pub f: Poly,
    pub g: Poly,
}

/// Linearized polynomials with exponents folded for the subfield their
/// arguments are known to lie in.
#[derive(Debug, Clone)]
struct Folded {
    l_n: LinearizedPoly,
    original_n: LinearizedPoly,
    u_n: LinearizedPoly,
    w_n: LinearizedPoly,
    trace_dn: LinearizedPoly,
    lprime_n: LinearizedPoly,
    lprime_m: LinearizedPoly,
    /// `T_k^{[n,k]}` on the ambient field
    trace_k_lcm_m: LinearizedPoly,
    g_pd: LinearizedPoly,
    u_pd: LinearizedPoly,
}

/// Everything derived from `(p, L, n)`; immutable and shareable across threads.
#[derive(Debug, Clone)]
pub struct SolverContext {
    pub spec: ProblemSpec,
    pub options: SolverOptions,
    /// Frobenius shift removed by preprocessing.
    pub shift: usize,
    pub original: LinearizedPoly,
    /// `L` after preprocessing, with `a_0 != 0`.
    pub l: LinearizedPoly,
    pub k: u64,
    pub d: usize,
    pub lcm_nk: u64,
    pub field: FieldDescription,
    pub lprime: LinearizedPoly,
    pub w: LinearizedPoly,
    pub u: LinearizedPoly,
    pub v: LinearizedPoly,
    pub f: LinearizedPoly,
    pub g: LinearizedPoly,
    /// `T_d^n(delta) = 1`, `delta` in GF(p^n).
    pub delta: FieldElement,
    /// `delta_1 - delta_1^{p^d} = 1`, `delta_1` in GF(p^{p d}).
    pub delta1: FieldElement,
    /// `delta - delta^{p^n} = 1` in GF(p^{p n}), used by the single-evaluation formula.
    pub delta_n: FieldElement,
    pub basis_n: Arc<SubfieldBasis>,
    pub basis_d: Arc<SubfieldBasis>,
    pub decomposition: Decomposition,
    folded: Folded,
    /// `sum_{j > i} delta^{p^{k j}}` for `i < n/d`.
    delta_suffix: Vec<FieldElement>,
    kernel: EchelonBasis,
    kernel_elements: Vec<FieldElement>,
    oracle_matrix: Matrix,
}

fn invariant(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InternalInvariantViolation(what.to_string()))
    }
}

impl SolverContext {
    pub fn build(spec: ProblemSpec) -> Result<Self> {
        Self::build_with(spec, SolverOptions::default())
    }

    pub fn build_with(spec: ProblemSpec, options: SolverOptions) -> Result<Self> {
        let pf = PrimeField::new(spec.p)?;
        let n = spec.n;
        if n == 0 {
            return Err(Error::InvalidTower { d: 0, n: 0, m: 0 });
        }
        let (shift, l) = preprocess(pf, &spec.alphas)?;
        let original = LinearizedPoly::new(pf, spec.alphas.clone());
        let l_conv = l.to_conventional();

        let k = match spec.k {
            Some(0) => return Err(Error::InvalidK { k: 0 }),
            Some(k) => k,
            None => polynomial_order_with_bound(&l_conv, options.order_bound)?,
        };
        if k > options.max_k {
            return Err(Error::OrderTooLarge { detail: format!("k = {k} exceeds the limit {}", options.max_k) });
        }
        let ku = k as usize;
        let one_minus_xk = Poly::one_minus_x_pow(pf, ku);
        let lprime = one_minus_xk.exact_div(&l_conv).map_err(|e| match e {
            Error::NotDivisible => Error::InvalidK { k },
            other => other,
        })?;

        let d = gcd(n, ku);
        let lcm_nk = (n / d) as u64 * k;
        let one_minus_xd = Poly::one_minus_x_pow(pf, d);
        let t_dk = one_minus_xk.exact_div(&one_minus_xd)?;

        // gcd(l', t_d^k) = (1 - x^k) / lcm(l, 1 - x^d), since l' and t_d^k are the
        // cofactors of l and 1 - x^d in 1 - x^k; the identities checked below
        // certify the result without a degree-k Euclid run.
        let w = one_minus_xk.exact_div(&l_conv.lcm(&one_minus_xd)?)?.monic();
        let u = lprime.exact_div(&w)?;
        let v = t_dk.exact_div(&w)?;
        let (one, f, g) = u.xgcd(&v)?;
        invariant(one.is_one(), "u and v are not coprime")?;

        invariant(&l_conv * &lprime == one_minus_xk, "l * l' = 1 - x^k")?;
        invariant(&(&u * &f) + &(&v * &g) == Poly::one(pf), "u f + v g = 1")?;
        invariant(&v * &w == t_dk, "t_d^k = v w")?;
        invariant(&u * &w == lprime, "u w = l'")?;
        invariant(&u * &l_conv == &one_minus_xd * &v, "U o L = S_d^{2d} o V")?;

        let p = pf.p() as usize;
        let field = FieldDescription::default_for(spec.p, p * n)?;
        let m = field.degree();
        let basis_n = field.subfield_basis(n)?;
        let basis_d = field.subfield_basis(d)?;
        let delta = field.solve_trace_one(d, n)?;
        let delta1 = field.solve_artin_schreier(d)?;
        let delta_n = field.solve_artin_schreier(n)?;
        invariant(field.relative_trace(&delta, d, n) == field.one(), "T_d^n(delta) = 1")?;
        invariant(&delta1 - &delta1.frobenius(d) == field.one(), "S_d^{2d}(delta_1) = 1")?;

        let lin = LinearizedPoly::from_conventional;
        let (lprime_l, w_l, u_l, v_l, f_l, g_l) =
            (lin(lprime.clone()), lin(w.clone()), lin(u.clone()), lin(v.clone()), lin(f.clone()), lin(g.clone()));
        let folded = Folded {
            l_n: l.fold(n),
            original_n: original.fold(n),
            u_n: u_l.fold(n),
            w_n: w_l.fold(n),
            trace_dn: LinearizedPoly::trace_like(pf, d, n)?,
            lprime_n: lprime_l.fold(n),
            lprime_m: lprime_l.fold(m),
            trace_k_lcm_m: trace_positions(pf, ku, n / d, m),
            g_pd: g_l.fold(p * d),
            u_pd: u_l.fold(p * d),
        };

        let blocks = n / d;
        let delta_powers: Vec<FieldElement> = (0..blocks).map(|j| delta.frobenius((ku * j) % m)).collect();
        let mut delta_suffix = vec![field.zero(); blocks];
        for i in (0..blocks.saturating_sub(1)).rev() {
            delta_suffix[i] = &delta_suffix[i + 1] + &delta_powers[i + 1];
        }

        // ker(L) in GF(p^n) is the image of GF(p^d) under U
        let images: Vec<Vec<u32>> =
            basis_d.elements().iter().map(|b| u_l.evaluate_in(b, d).coeffs().to_vec()).collect();
        let kernel = EchelonBasis::new(pf, m, &images);
        let kernel_elements: Vec<FieldElement> =
            kernel.rows.iter().map(|r| field.element(r)).collect::<Result<_>>()?;
        for x in &kernel_elements {
            invariant(folded.original_n.evaluate_in(x, n).is_zero(), "kernel element not annihilated")?;
            invariant(field.is_in_subfield(x, n)?, "kernel element outside GF(p^n)")?;
        }

        let columns: Vec<Vec<u32>> = basis_n
            .elements()
            .iter()
            .map(|b| basis_n.coordinates(&folded.original_n.evaluate_in(b, n)))
            .collect::<Result<_>>()?;
        let oracle_matrix = Matrix::from_columns(pf, n, &columns);

        let decomposition = Decomposition { l: l_conv, lprime, t_dk, w, u, v, f, g };
        Ok(Self {
            spec,
            options,
            shift,
            original,
            l,
            k,
            d,
            lcm_nk,
            field,
            lprime: lprime_l,
            w: w_l,
            u: u_l,
            v: v_l,
            f: f_l,
            g: g_l,
            delta,
            delta1,
            delta_n,
            basis_n,
            basis_d,
            decomposition,
            folded,
            delta_suffix,
            kernel,
            kernel_elements,
            oracle_matrix,
        })
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// Whether the single-evaluation formula applies (`p` does not divide `k/d`).
    pub fn thm2_applicable(&self) -> bool {
        (self.k / self.d as u64) % self.p() as u64 != 0
    }

    /// Method `Auto` resolves to.
    pub fn resolve_method(&self, method: Method) -> Method {
        match method {
            Method::Auto if self.thm2_applicable() => Method::Thm2,
            Method::Auto => Method::Thm1,
            m => m,
        }
    }

    pub(crate) fn check_input(&self, a: &FieldElement) -> Result<()> {
        if !a.field().same_as(&self.field) {
            return Err(Error::FieldMismatch);
        }
        if !self.field.is_in_subfield(a, self.n())? {
            return Err(Error::NotInSubfield { n: self.n() });
        }
        Ok(())
    }

    /// Right-hand side of the reduced equation: the `p^s`-th root of `a` in GF(p^n).
    pub(crate) fn reduced_rhs(&self, a: &FieldElement) -> FieldElement {
        let n = self.n();
        a.frobenius((n - self.shift % n) % n)
    }

    /// Element of GF(p^n) from coordinates over the echelon basis.
    pub fn element_from_coords(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() != self.n() {
            return Err(Error::DegreeMismatch { expected: self.n(), found: coords.len() });
        }
        if coords.iter().any(|&c| c >= self.p()) {
            return Err(Error::Parse(format!("coordinate out of range for p = {}", self.p())));
        }
        Ok(self.basis_n.combine(coords))
    }

    pub fn coords(&self, x: &FieldElement) -> Result<Vec<u32>> {
        self.basis_n.coordinates(x)
    }

    /// Echelon basis of `ker(L)` in GF(p^n).
    pub fn kernel_basis(&self) -> &[FieldElement] {
        &self.kernel_elements
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.dim()
    }

    /// Matrix of `x -> L(x)` in coordinates over the echelon basis of GF(p^n).
    pub fn oracle_matrix(&self) -> &Matrix {
        &self.oracle_matrix
    }

    /// Solves one right-hand side with the requested method.
    pub fn solve(&self, a: &FieldElement, method: Method) -> Result<SolutionSet> {
        self.check_input(a)?;
        let used = self.resolve_method(method);
        let particular = match used {
            Method::Matrix => return self.matrix_oracle_solve(a),
            Method::Thm2 if !self.thm2_applicable() => {
                return Err(Error::NotApplicable { p: self.p(), ratio: self.k / self.d as u64 })
            }
            Method::Thm2 if self.thm2_criterion(a)? => Some(self.particular_solution_thm2(a)?),
            Method::Thm1 if self.is_solvable(a)? => Some(self.particular_solution_thm1(a)?.0),
            _ => None,
        };
        Ok(SolutionSet::new(self, particular, self.kernel_elements.clone(), used))
    }

    /// Solves every right-hand side, in parallel when the feature is on.
    pub fn solve_batch(&self, rhs: &[FieldElement], method: Method) -> Vec<Result<SolutionSet>> {
        crate::parallel::map(rhs, |a| self.solve(a, method))
    }

    pub fn solve_batch_sequential(&self, rhs: &[FieldElement], method: Method) -> Vec<Result<SolutionSet>> {
        crate::parallel::map_sequential(rhs, |a| self.solve(a, method))
    }
}

/// `T_k^{k * blocks}` with exponents reduced mod `m`.
fn trace_positions(pf: PrimeField, k: usize, blocks: usize, m: usize) -> LinearizedPoly {
    let mut coeffs = vec![0u32; m];
    for i in 0..blocks {
        let pos = (k % m) * i % m;
        coeffs[pos] = pf.add(coeffs[pos], 1);
    }
    LinearizedPoly::from_conventional(Poly::from_reduced(pf, coeffs))
}

/// Full solution set of one equation: a particular solution plus the kernel.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub solvable: bool,
    pub particular: Option<FieldElement>,
    /// Echelon basis of `ker(L)` in GF(p^n), in ambient coordinates.
    pub kernel_basis: Vec<FieldElement>,
    /// `p^{dim ker}` when solvable, else zero; saturates at `u128::MAX`.
    pub count: u128,
    pub method_used: Method,
}

impl SolutionSet {
    fn new(ctx: &SolverContext, particular: Option<FieldElement>, kernel_basis: Vec<FieldElement>, method: Method) -> Self {
        let solvable = particular.is_some();
        let count = if solvable {
            (ctx.p() as u128).checked_pow(kernel_basis.len() as u32).unwrap_or(u128::MAX)
        } else {
            0
        };
        Self { solvable, particular, kernel_basis, count, method_used: method }
    }

    fn echelon(&self) -> Option<(EchelonBasis, crate::prime::PrimeField, usize)> {
        let any = self.particular.as_ref().or(self.kernel_basis.first())?;
        let field = any.field();
        let rows: Vec<Vec<u32>> = self.kernel_basis.iter().map(|x| x.coeffs().to_vec()).collect();
        Some((EchelonBasis::new(field.prime(), field.degree(), &rows), field.prime(), field.degree()))
    }

    /// Canonical representative of the solution coset (particular solution
    /// reduced modulo the kernel).
    pub fn canonical_particular(&self) -> Option<Vec<u32>> {
        let x = self.particular.as_ref()?;
        let (ech, pf, _) = self.echelon()?;
        Some(ech.reduce(pf, x.coeffs()))
    }

    /// Set equality of the two solution sets.
    pub fn same_set_as(&self, other: &Self) -> bool {
        if self.solvable != other.solvable || self.kernel_basis.len() != other.kernel_basis.len() {
            return false;
        }
        let kernels_equal = match (self.echelon(), other.echelon()) {
            (Some((a, _, _)), Some((b, _, _))) => a == b,
            (None, None) => true,
            _ => self.kernel_basis.is_empty() && other.kernel_basis.is_empty(),
        };
        kernels_equal && self.canonical_particular() == other.canonical_particular()
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        let Some(x0) = &self.particular else { return false };
        let Some((ech, pf, _)) = self.echelon() else { return false };
        ech.contains(pf, (x - x0).coeffs())
    }
}

/// Every solution: `x_0` plus each GF(p)-combination of the kernel basis.
pub fn enumerate_solutions(sol: &SolutionSet, cap: u128) -> Result<Vec<FieldElement>> {
    let Some(x0) = &sol.particular else {
        return Ok(Vec::new());
    };
    if sol.count > cap {
        return Err(Error::TooMany { count: sol.count, cap });
    }
    let p = x0.field().p();
    let dim = sol.kernel_basis.len();
    let mut out = Vec::with_capacity(sol.count as usize);
    let mut digits = vec![0u32; dim];
    loop {
        let mut x = x0.clone();
        for (c, b) in digits.iter().zip(&sol.kernel_basis) {
            if *c != 0 {
                x = &x + &b.scale(*c);
            }
        }
        out.push(x);
        let mut i = 0;
        loop {
            if i == dim {
                return Ok(out);
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests;
