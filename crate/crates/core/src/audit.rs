//! Self-check runners shared by the acceptance suite and `linsolve selfcheck`.
//!
//! Every routine here compares the formula path against something computed a
//! different way: Gaussian elimination, exhaustive evaluation, or exact
//! polynomial identities on conventional associates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::field::{FieldDescription, FieldElement};
use crate::linearized::{identity_suite, LinearizedPoly};
use crate::parallel;
use crate::poly::{polynomial_order, Poly};
use crate::prime::PrimeField;
use crate::solver::{kernel_image_check, kernel_intersection_check, Method, ProblemSpec, SolverContext};

/// Shape of the oracle-equivalence grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridConfig {
    pub primes: Vec<u64>,
    pub max_n: usize,
    /// Largest `p^n` included.
    pub max_field: u64,
    /// Random `L` per `(p, n)`.
    pub instances: usize,
    /// Extra instances per `(p, n)` whose leading `α_i` vanish.
    pub shifted: usize,
    pub max_deg: usize,
    pub seed: u64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { primes: vec![2, 3, 5], max_n: 10, max_field: 4096, instances: 30, shifted: 5, max_deg: 6, seed: 0x5eed }
    }
}

impl GridConfig {
    /// A grid small enough for an interactive self-check.
    pub fn quick() -> Self {
        GridConfig { max_n: 6, max_field: 729, instances: 4, shifted: 2, ..Default::default() }
    }

    pub fn specs(&self) -> Vec<ProblemSpec> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::new();
        for &p in &self.primes {
            for n in 1..=self.max_n {
                match p.checked_pow(n as u32) {
                    Some(size) if size <= self.max_field => {}
                    _ => break,
                }
                for i in 0..self.instances + self.shifted {
                    let mut alphas = random_alphas(p, self.max_deg, &mut rng);
                    if i >= self.instances {
                        let zeros = rng.gen_range(1..=2);
                        alphas.splice(0..0, std::iter::repeat(0).take(zeros));
                    }
                    out.push(ProblemSpec::new(p, alphas, n));
                }
            }
        }
        out
    }
}

/// Coefficients of a random `L` with nonzero `α_0` and p-degree at most `max_deg`.
pub fn random_alphas<R: Rng + ?Sized>(p: u64, max_deg: usize, rng: &mut R) -> Vec<u64> {
    let deg = rng.gen_range(0..=max_deg);
    let mut alphas: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
    alphas[0] = rng.gen_range(1..p);
    alphas[deg] = rng.gen_range(1..p);
    alphas
}

/// Outcome of the exhaustive comparison on one `(p, L, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub p: u64,
    pub n: usize,
    pub alphas: Vec<u64>,
    pub k: u64,
    pub d: usize,
    pub shift: usize,
    pub kernel_dim: usize,
    pub checked: u64,
    pub solvable: u64,
    /// Right-hand sides whose solution set differs from elimination.
    pub oracle_mismatches: u64,
    pub thm2_applicable: bool,
    /// Right-hand sides on which the two solvability criteria disagree.
    pub criterion_disagreements: u64,
    /// Particular solutions that fail `L(x0) = a`, fall outside GF(p^n), or error.
    pub particular_failures: u64,
    /// `#solvable * p^dim ker == p^n`.
    pub kernel_law: bool,
    pub error: Option<String>,
}

impl InstanceReport {
    pub fn oracle_ok(&self) -> bool {
        self.error.is_none() && self.oracle_mismatches == 0
    }

    pub fn agreement_ok(&self) -> bool {
        self.error.is_none() && self.criterion_disagreements == 0 && self.particular_failures == 0
    }

    pub fn passed(&self) -> bool {
        self.oracle_ok() && self.agreement_ok() && self.kernel_law
    }
}

fn verifies(ctx: &SolverContext, x: &FieldElement, a: &FieldElement) -> bool {
    ctx.field.is_in_subfield(x, ctx.n()).unwrap_or(false) && &ctx.original.evaluate_by_powering(x) == a
}

/// Exhaustive over every `a` in GF(p^n): solution sets against elimination,
/// the two criteria against each other, particular solutions against direct
/// evaluation, and the kernel counting law.
pub fn check_instance(spec: &ProblemSpec) -> InstanceReport {
    let mut report = InstanceReport {
        p: spec.p,
        n: spec.n,
        alphas: spec.alphas.clone(),
        k: 0,
        d: 0,
        shift: 0,
        kernel_dim: 0,
        checked: 0,
        solvable: 0,
        oracle_mismatches: 0,
        thm2_applicable: false,
        criterion_disagreements: 0,
        particular_failures: 0,
        kernel_law: false,
        error: None,
    };
    let ctx = match SolverContext::build(spec.clone()) {
        Ok(ctx) => ctx,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    report.k = ctx.k;
    report.d = ctx.d;
    report.shift = ctx.shift;
    report.kernel_dim = ctx.kernel_dim();
    report.thm2_applicable = ctx.thm2_applicable();

    for a in ctx.basis_n.all_elements() {
        report.checked += 1;
        let (auto, oracle) = match (ctx.solve(&a, Method::Auto), ctx.matrix_oracle_solve(&a)) {
            (Ok(x), Ok(y)) => (x, y),
            (Err(e), _) | (_, Err(e)) => {
                report.error = Some(e.to_string());
                return report;
            }
        };
        if !auto.same_set_as(&oracle) {
            report.oracle_mismatches += 1;
        }
        if oracle.solvable {
            report.solvable += 1;
        }
        match &auto.particular {
            Some(x0) if !verifies(&ctx, x0, &a) => report.particular_failures += 1,
            _ => {}
        }
        if !report.thm2_applicable {
            continue;
        }
        let (c1, c2) = (ctx.is_solvable(&a), ctx.thm2_criterion(&a));
        if c1.is_err() || c2.is_err() || c1 != c2 {
            report.criterion_disagreements += 1;
        }
        if oracle.solvable {
            let ok1 = ctx.particular_solution_thm1(&a).map(|(x, _)| verifies(&ctx, &x, &a)).unwrap_or(false);
            let ok2 = ctx.particular_solution_thm2(&a).map(|x| verifies(&ctx, &x, &a)).unwrap_or(false);
            report.particular_failures += u64::from(!ok1) + u64::from(!ok2);
        }
    }
    let p = spec.p as u128;
    report.kernel_law = report.solvable as u128 * p.pow(report.kernel_dim as u32) == p.pow(spec.n as u32);
    report
}

pub fn run_grid(config: &GridConfig) -> Vec<InstanceReport> {
    parallel::map(&config.specs(), check_instance)
}

/// Pass count of one family of checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub name: String,
    pub checked: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

impl CheckTally {
    fn new(name: &str) -> Self {
        CheckTally { name: name.to_string(), checked: 0, failed: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 8 {
                self.failures.push(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failed == 0
    }
}

/// Composition identities of the `T`/`S` families over every chain
/// `m | l | k` with `m, l/m, k/l` in the given ranges, for each `n` up to
/// `max_n`; items are checked as associate identities and on random samples.
pub fn identity_grid(primes: &[u64], max_step: usize, max_n: usize, seed: u64) -> Result<CheckTally> {
    let mut tally = CheckTally::new("composition identities");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &p in primes {
        for n in 1..=max_n {
            let field = FieldDescription::default_for(p, n)?;
            let samples: Vec<FieldElement> = (0..4).map(|_| field.random(&mut rng)).collect();
            for m in 1..=max_step {
                for a in 1..=max_step {
                    for b in 1..=max_step + 1 {
                        let (l, k) = (m * a, m * a * b);
                        for check in identity_suite(&field, m, l, k, n, &samples)? {
                            tally.record(check.passed, || format!("p={p} n={n} m={m} l={l} k={k}: {}", check.name));
                        }
                    }
                }
            }
        }
    }
    Ok(tally)
}

fn random_poly<R: Rng + ?Sized>(pf: PrimeField, max_deg: usize, rng: &mut R) -> Poly {
    let p = pf.p() as u64;
    Poly::new(pf, random_alphas(p, max_deg, rng))
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd_u64(b, a % b) }
}

fn fits(p: u64, k: u64, limit: u64) -> bool {
    k < 64 && p.checked_pow(k as u32).is_some_and(|s| s <= limit)
}

/// Kernel statements checked exhaustively on fields of size at most `limit`:
/// intersection of kernels equals the kernel of the gcd; the kernel of `L` is
/// the image of GF(p^k) under the cofactor of `1 - x^k`; and the
/// decomposition identity `U o L = S_d^{2d} o V`, both as associates and at
/// every point of GF(p^k).
pub fn proposition_checks(primes: &[u64], limit: u64, per_prime: usize, seed: u64) -> Result<Vec<CheckTally>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gcd_kernels = CheckTally::new("kernel of gcd is intersection of kernels");
    let mut image = CheckTally::new("kernel equals image of cofactor on GF(p^k)");
    let mut decomposition = CheckTally::new("U o L = S_d^{2d} o V");
    for &p in primes {
        let pf = PrimeField::new(p)?;
        let (mut done, mut attempts) = (0, 0);
        while done < per_prime && attempts < 50 * per_prime {
            attempts += 1;
            let (l1, l2) = (random_poly(pf, 4, &mut rng), random_poly(pf, 4, &mut rng));
            let (o1, o2) = (polynomial_order(&l1)?, polynomial_order(&l2)?);
            let m = o1 / gcd_u64(o1, o2) * o2;
            if fits(p, m, limit) {
                let ok = kernel_intersection_check(&l1, &l2, m as usize)?;
                done += 1;
                gcd_kernels.record(ok, || format!("p={p} l1={l1} l2={l2} m={m}"));
            }
        }

        let mut done = 0;
        attempts = 0;
        while done < per_prime && attempts < 50 * per_prime {
            attempts += 1;
            let l = random_poly(pf, 6, &mut rng);
            let order = polynomial_order(&l)?;
            for k in [order, 2 * order] {
                if fits(p, k, limit) {
                    let ok = kernel_image_check(&l, k as usize)?;
                    image.record(ok, || format!("p={p} l={l} k={k}"));
                    done += 1;
                }
            }
        }

        done = 0;
        attempts = 0;
        while done < per_prime && attempts < 50 * per_prime {
            attempts += 1;
            let alphas = random_alphas(p, 4, &mut rng);
            let n = rng.gen_range(1..=6);
            let ctx = SolverContext::build(ProblemSpec::new(p, alphas, n))?;
            if !fits(p, ctx.k, limit) {
                continue;
            }
            done += 1;
            let s = LinearizedPoly::alternating(pf, ctx.d, 2 * ctx.d)?;
            let dec = &ctx.decomposition;
            let exact = &dec.u * &dec.l == s.conventional() * &dec.v;
            let field = FieldDescription::default_for(p, ctx.k as usize)?;
            let pointwise = field.subfield_basis(field.degree())?.all_elements().all(|x| {
                let lhs = ctx.u.evaluate(&ctx.l.evaluate(&x).unwrap()).unwrap();
                lhs == s.evaluate(&ctx.v.evaluate(&x).unwrap()).unwrap()
            });
            decomposition.record(exact && pointwise, || format!("p={p} L={} n={n}", ctx.original));
        }
    }
    Ok(vec![gcd_kernels, image, decomposition])
}
