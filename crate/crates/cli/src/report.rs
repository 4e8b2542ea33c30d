//! Serializable command outputs and their text renderings.

use std::fmt::Write as _;

use linsolve::audit::{self, CheckTally, GridConfig};
use linsolve::poly::{factor_u128, polynomial_order};
use linsolve::solver::preprocess;
use linsolve::{FieldElement, LinearizedPoly, Poly, PrimeField, SolutionSet, SolverContext};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::Failure;

pub(crate) trait Render: Serialize {
    fn text(&self) -> String;
}

/// The field all elements live in; element strings under `ambient_coords`
/// are power-basis digits modulo `modulus`.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Ambient {
    pub p: u32,
    pub degree: usize,
    pub modulus: String,
}

impl Ambient {
    fn of(ctx: &SolverContext) -> Self {
        Ambient { p: ctx.p(), degree: ctx.field.degree(), modulus: ctx.field.modulus().to_string() }
    }
}

fn coords(ctx: &SolverContext, x: &FieldElement) -> Result<String, Failure> {
    Ok(ctx.coords(x)?.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

fn coords_all(ctx: &SolverContext, xs: &[FieldElement]) -> Result<Vec<String>, Failure> {
    xs.iter().map(|x| coords(ctx, x)).collect()
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AmbientCoords {
    pub a: Option<String>,
    pub particular_solution: Option<String>,
    pub kernel_basis: Vec<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SolveReport {
    pub p: u32,
    pub n: usize,
    pub coeffs: String,
    pub a: String,
    pub solvable: bool,
    pub particular_solution: Option<String>,
    pub kernel_basis: Vec<String>,
    pub count: u128,
    pub k: u64,
    pub d: usize,
    pub shift: usize,
    pub method_used: String,
    pub verified: bool,
    pub ambient: Ambient,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient_coords: Option<AmbientCoords>,
}

impl SolveReport {
    /// Checks the answer against elimination and direct evaluation before
    /// reporting it; a mismatch is an internal error, never `verified: false`.
    pub fn new(ctx: &SolverContext, a: &FieldElement, sol: &SolutionSet, show_ambient: bool) -> Result<Self, Failure> {
        let oracle = ctx.matrix_oracle_solve(a)?;
        let mut verified = sol.same_set_as(&oracle);
        if let Some(x0) = &sol.particular {
            verified &= &ctx.original.evaluate(x0)? == a;
        }
        for b in &sol.kernel_basis {
            verified &= ctx.original.evaluate(b)?.is_zero();
        }
        if !verified {
            return Err(Failure::Internal(format!("solution for a = {} failed verification", coords(ctx, a)?)));
        }
        let ambient_coords = show_ambient.then(|| AmbientCoords {
            a: Some(a.to_digits()),
            particular_solution: sol.particular.as_ref().map(FieldElement::to_digits),
            kernel_basis: sol.kernel_basis.iter().map(FieldElement::to_digits).collect(),
        });
        Ok(SolveReport {
            p: ctx.p(),
            n: ctx.n(),
            coeffs: ctx.original.to_digits(),
            a: coords(ctx, a)?,
            solvable: sol.solvable,
            particular_solution: sol.particular.as_ref().map(|x| coords(ctx, x)).transpose()?,
            kernel_basis: coords_all(ctx, &sol.kernel_basis)?,
            count: sol.count,
            k: ctx.k,
            d: ctx.d,
            shift: ctx.shift,
            method_used: sol.method_used.to_string(),
            verified,
            ambient: Ambient::of(ctx),
            ambient_coords,
        })
    }
}

impl Render for SolveReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "equation: L(X) = a, L coeffs {} over GF({}), a = [{}] in GF({}^{})", self.coeffs, self.p, self.a, self.p, self.n);
        let _ = writeln!(s, "k = {}, d = {}, shift = {}, method = {}", self.k, self.d, self.shift, self.method_used);
        match &self.particular_solution {
            Some(x) => {
                let _ = writeln!(s, "solvable: yes, {} solutions", self.count);
                let _ = writeln!(s, "particular solution: [{x}]");
            }
            None => {
                let _ = writeln!(s, "solvable: no");
            }
        }
        for b in &self.kernel_basis {
            let _ = writeln!(s, "kernel basis: [{b}]");
        }
        let _ = writeln!(s, "verified: {}", self.verified);
        let _ = writeln!(s, "ambient: GF({}^{}) mod {}", self.ambient.p, self.ambient.degree, self.ambient.modulus);
        s
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct KernelReport {
    pub p: u32,
    pub n: usize,
    pub coeffs: String,
    pub k: u64,
    pub d: usize,
    pub dim: usize,
    pub kernel_basis: Vec<String>,
    pub ambient: Ambient,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient_coords: Option<AmbientCoords>,
}

impl KernelReport {
    pub fn new(ctx: &SolverContext, show_ambient: bool) -> Result<Self, Failure> {
        let basis = ctx.kernel_basis();
        if basis.len() != ctx.oracle_matrix().nullspace().len() {
            return Err(Failure::Internal("kernel dimension disagrees with elimination".into()));
        }
        Ok(KernelReport {
            p: ctx.p(),
            n: ctx.n(),
            coeffs: ctx.original.to_digits(),
            k: ctx.k,
            d: ctx.d,
            dim: basis.len(),
            kernel_basis: coords_all(ctx, basis)?,
            ambient: Ambient::of(ctx),
            ambient_coords: show_ambient.then(|| AmbientCoords {
                a: None,
                particular_solution: None,
                kernel_basis: basis.iter().map(FieldElement::to_digits).collect(),
            }),
        })
    }
}

impl Render for KernelReport {
    fn text(&self) -> String {
        let mut s = format!("ker(L) in GF({}^{}): dimension {}, k = {}, d = {}\n", self.p, self.n, self.dim, self.k, self.d);
        for b in &self.kernel_basis {
            let _ = writeln!(s, "  [{b}]");
        }
        s
    }
}

/// `x^e mod l` compared with 1, for one exponent of the certificate.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PowerCheck {
    pub exponent: u64,
    pub divides: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct OrderReport {
    pub p: u32,
    pub coeffs: String,
    /// Leading vanishing coefficients removed before taking the associate.
    pub shift: usize,
    pub l: String,
    pub k: u64,
    /// `l | x^k - 1`.
    pub certificate: PowerCheck,
    /// `l ∤ x^{k/r} - 1` for every prime `r | k`, which makes `k` minimal.
    pub minimality: Vec<PowerCheck>,
}

fn divides_x_pow_minus_one(l: &Poly, e: u64) -> Result<bool, Failure> {
    let pf = l.field();
    let lhs = Poly::x(pf).pow_mod(e as u128, l)?;
    Ok(lhs == Poly::one(pf).rem(l)?)
}

impl OrderReport {
    pub fn new(p: u64, alphas: &[u64]) -> Result<Self, Failure> {
        let pf = PrimeField::new(p)?;
        let (shift, reduced) = preprocess(pf, alphas)?;
        let l = reduced.conventional().clone();
        let k = polynomial_order(&l)?;
        let certificate = PowerCheck { exponent: k, divides: divides_x_pow_minus_one(&l, k)? };
        let minimality = factor_u128(k as u128)
            .into_iter()
            .map(|(r, _)| {
                let e = k / r as u64;
                Ok(PowerCheck { exponent: e, divides: divides_x_pow_minus_one(&l, e)? })
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        if !certificate.divides || minimality.iter().any(|c| c.divides) {
            return Err(Failure::Internal(format!("order certificate failed for {l}")));
        }
        Ok(OrderReport { p: pf.p(), coeffs: LinearizedPoly::new(pf, alphas.to_vec()).to_digits(), shift, l: l.to_string(), k, certificate, minimality })
    }
}

impl Render for OrderReport {
    fn text(&self) -> String {
        let mut s = format!("order of l = {} over GF({}): k = {}\n", self.l, self.p, self.k);
        let _ = writeln!(s, "  l | x^{} - 1: {}", self.certificate.exponent, self.certificate.divides);
        for c in &self.minimality {
            let _ = writeln!(s, "  l | x^{} - 1: {}", c.exponent, c.divides);
        }
        s
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct IdentityResult {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DecomposeReport {
    pub p: u32,
    pub n: usize,
    pub coeffs: String,
    pub shift: usize,
    pub k: u64,
    pub d: usize,
    pub l: String,
    pub lprime: String,
    pub t_dk: String,
    pub w: String,
    pub u: String,
    pub v: String,
    pub f: String,
    pub g: String,
    pub checks: Vec<IdentityResult>,
}

impl DecomposeReport {
    pub fn new(ctx: &SolverContext) -> Result<Self, Failure> {
        let dec = &ctx.decomposition;
        let pf = ctx.field.prime();
        let s = LinearizedPoly::alternating(pf, ctx.d, 2 * ctx.d)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let samples: Vec<FieldElement> = (0..8).map(|_| ctx.field.random(&mut rng)).collect();
        let mut pointwise = true;
        for x in &samples {
            pointwise &= ctx.u.evaluate(&ctx.l.evaluate(x)?)? == s.evaluate(&ctx.v.evaluate(x)?)?;
        }
        let check = |name: &str, passed| IdentityResult { name: name.to_string(), passed };
        let checks = vec![
            check("l * l' = 1 - x^k", &dec.l * &dec.lprime == Poly::one_minus_x_pow(pf, ctx.k as usize)),
            check("t_d^k = v * w", dec.t_dk == &dec.v * &dec.w),
            check("l' = u * w", dec.lprime == &dec.u * &dec.w),
            check("u * f + v * g = 1", (&(&dec.u * &dec.f) + &(&dec.v * &dec.g)).is_one()),
            check("U o L = S_d^{2d} o V", &dec.u * &dec.l == s.conventional() * &dec.v),
            check("U o L = S_d^{2d} o V at sampled points", pointwise),
        ];
        Ok(DecomposeReport {
            p: ctx.p(),
            n: ctx.n(),
            coeffs: ctx.original.to_digits(),
            shift: ctx.shift,
            k: ctx.k,
            d: ctx.d,
            l: dec.l.to_string(),
            lprime: dec.lprime.to_string(),
            t_dk: dec.t_dk.to_string(),
            w: dec.w.to_string(),
            u: dec.u.to_string(),
            v: dec.v.to_string(),
            f: dec.f.to_string(),
            g: dec.g.to_string(),
            checks,
        })
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl Render for DecomposeReport {
    fn text(&self) -> String {
        let mut s = format!("GF({}^{}), k = {}, d = {}, shift = {}\n", self.p, self.n, self.k, self.d, self.shift);
        for (name, value) in [
            ("l", &self.l),
            ("l'", &self.lprime),
            ("t_d^k", &self.t_dk),
            ("w", &self.w),
            ("u", &self.u),
            ("v", &self.v),
            ("f", &self.f),
            ("g", &self.g),
        ] {
            let _ = writeln!(s, "{name:>6} = {value}");
        }
        for c in &self.checks {
            let _ = writeln!(s, "[{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfcheckReport {
    pub seed: u64,
    pub full: bool,
    pub checks: Vec<CheckTally>,
    pub passed: bool,
}

impl SelfcheckReport {
    pub fn run(full: bool, seed: u64) -> Result<Self, Failure> {
        let primes = [2, 3, 5];
        let grid = GridConfig { seed, ..if full { GridConfig::default() } else { GridConfig::quick() } };
        let (step, max_n, limit, per_prime) = if full { (3, 6, 4096, 12) } else { (2, 4, 729, 4) };
        let mut checks = vec![audit::identity_grid(&primes, step, max_n, seed)?];
        checks.extend(audit::proposition_checks(&primes, limit, per_prime, seed)?);

        let reports = audit::run_grid(&grid);
        let bad: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
        checks.push(CheckTally {
            name: "solution sets match elimination, criteria agree, kernel law".into(),
            checked: reports.len() as u64,
            failed: bad.len() as u64,
            failures: bad.iter().take(8).map(|r| format!("p={} n={} coeffs={:?}", r.p, r.n, r.alphas)).collect(),
        });
        let passed = checks.iter().all(CheckTally::passed);
        Ok(SelfcheckReport { seed, full, checks, passed })
    }
}

impl Render for SelfcheckReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(s, "[{}] {}: {}/{}", if c.passed() { "ok" } else { "FAIL" }, c.name, c.checked - c.failed, c.checked);
            for f in &c.failures {
                let _ = writeln!(s, "    {f}");
            }
        }
        let _ = writeln!(s, "selfcheck: {}", if self.passed { "pass" } else { "FAIL" });
        s
    }
}
