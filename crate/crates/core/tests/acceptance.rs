//! Acceptance run: one `[PASS]`/`[FAIL]` line per criterion.
//!
//! `cargo test -p linsolve-core --test acceptance`

use std::time::{Duration, Instant};

use linsolve::audit::{self, CheckTally, GridConfig};
use linsolve::poly::polynomial_order;
use linsolve::solver::{bench_rows, closed_form_check, BenchRow, Family};
use linsolve::{FieldElement, LinearizedPoly, Method, Poly, PrimeField, ProblemSpec, SolverContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn lin(p: u64, digits: &str) -> LinearizedPoly {
    LinearizedPoly::parse(PrimeField::new(p).unwrap(), digits).unwrap()
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let f2 = PrimeField::new(2).unwrap();
    let lprime = lin(2, "1,1,1,0,1");
    let mut problems = Vec::new();
    for n in 1..=14 {
        let ctx = SolverContext::build(ProblemSpec::new(2, vec![1, 1, 0, 1], n)).unwrap();
        if ctx.k != 7 {
            problems.push(format!("n={n}: k={}", ctx.k));
        }
        if ctx.lprime != lprime {
            problems.push(format!("n={n}: L'={}", ctx.lprime));
        }
        let (w, u) = if n % 7 == 0 {
            (Poly::one(f2), lprime.clone())
        } else {
            (Poly::parse(f2, "1+x^2+x^3").unwrap(), lin(2, "1,1"))
        };
        if ctx.decomposition.w != w || ctx.u != u {
            problems.push(format!("n={n}: w={} U={}", ctx.decomposition.w, ctx.u));
        }
        if n > 6 {
            continue;
        }
        let all: Vec<FieldElement> = ctx.basis_n.all_elements().collect();
        let mut images: Vec<Vec<u32>> = all.iter().map(|x| ctx.original.evaluate_by_powering(x).coeffs().to_vec()).collect();
        images.sort();
        images.dedup();
        if images.len() != all.len() {
            problems.push(format!("n={n}: L is not injective on GF(2^{n})"));
        }
        for a in &all {
            let sol = ctx.solve(a, Method::Auto).unwrap();
            let ok = sol.count == 1
                && sol.particular.as_ref().is_some_and(|x| &ctx.original.evaluate_by_powering(x) == a);
            if !ok {
                problems.push(format!("n={n}: a={} has {} solutions", a.to_digits(), sol.count));
            }
        }
    }
    let elapsed = start.elapsed();
    let passed = problems.is_empty() && elapsed < Duration::from_secs(1);
    let detail = if problems.is_empty() {
        format!("k=7, L'=X+X^2+X^4+X^16, w/U match for n=1..14, unique solutions for every a in GF(2^n), n=1..6 ({elapsed:.2?})")
    } else {
        format!("{} problems, first: {}", problems.len(), problems[0])
    };
    outcome(passed, detail)
}

fn grid_outcomes() -> (Outcome, Outcome, Outcome) {
    let config = GridConfig::default();
    let start = Instant::now();
    let reports = audit::run_grid(&config);
    let elapsed = start.elapsed();
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    let pairs = {
        let mut keys: Vec<(u64, usize)> = reports.iter().map(|r| (r.p, r.n)).collect();
        keys.dedup();
        keys.len()
    };
    let shifted = reports.iter().filter(|r| r.shift > 0).count();
    let first_bad = |pred: &dyn Fn(&audit::InstanceReport) -> bool| {
        reports.iter().find(|r| !pred(r)).map(|r| format!("; first failure p={} n={} alphas={:?}: {:?}", r.p, r.n, r.alphas, r))
    };

    let bad = reports.iter().filter(|r| !r.oracle_ok()).count();
    let per_pair = config.instances + config.shifted;
    let c2 = outcome(
        bad == 0 && elapsed < Duration::from_secs(300),
        format!(
            "{} instances over {pairs} (p,n) pairs ({per_pair} each, {shifted} with vanishing leading α), {checked} right-hand sides, {bad} mismatching instances ({elapsed:.2?}){}",
            reports.len(),
            first_bad(&|r| r.oracle_ok()).unwrap_or_default()
        ),
    );

    let applicable: Vec<_> = reports.iter().filter(|r| r.thm2_applicable).collect();
    let rhs: u64 = applicable.iter().map(|r| r.checked).sum();
    let bad = reports.iter().filter(|r| !r.agreement_ok()).count();
    let c3 = outcome(
        bad == 0 && !applicable.is_empty(),
        format!(
            "{} instances with p∤k/d, {rhs} right-hand sides: criteria agree and both particular solutions verify in GF(p^n); {bad} failing instances{}",
            applicable.len(),
            first_bad(&|r| r.agreement_ok()).unwrap_or_default()
        ),
    );

    let bad = reports.iter().filter(|r| !r.kernel_law).count();
    let nontrivial = reports.iter().filter(|r| r.kernel_dim > 0).count();
    let c6 = outcome(
        bad == 0,
        format!(
            "#solvable · p^dim ker = p^n on {} instances ({nontrivial} with nontrivial kernel); {bad} violations{}",
            reports.len(),
            first_bad(&|r| r.kernel_law).unwrap_or_default()
        ),
    );
    (c2, c3, c6)
}

fn closed_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let primes = [2u64, 3, 5];
    let mut lines = Vec::new();
    for family in [Family::T, Family::S] {
        let (mut total, mut even, mut odd, mut bad) = (0, 0, 0, Vec::new());
        let mut branches = std::collections::BTreeSet::new();
        while total < 60 {
            let p = primes[rng.gen_range(0..primes.len())];
            let l = rng.gen_range(1..=4);
            // alternate parities of k/l
            let ratio = 2 * rng.gen_range(1..=3) - (total % 2);
            let n = rng.gen_range(1..=8);
            let k = l * ratio;
            match closed_form_check(family, p, l, k, n) {
                Ok(report) => {
                    branches.insert(report.branch);
                    if !report.matches {
                        bad.push(format!("{report:?}"));
                    }
                }
                Err(e) => bad.push(format!("p={p} l={l} k={k} n={n}: {e}")),
            }
            total += 1;
            if ratio % 2 == 0 { even += 1 } else { odd += 1 }
        }
        lines.push((family, total, even, odd, branches.len(), bad));
    }
    let passed = lines.iter().all(|(_, total, even, odd, _, bad)| bad.is_empty() && *total >= 50 && *even > 0 && *odd > 0);
    let detail = lines
        .iter()
        .map(|(fam, total, even, odd, branches, bad)| {
            let first = bad.first().map(|b| format!(", first mismatch {b}")).unwrap_or_default();
            format!("{fam}: {total} tuples ({even} even, {odd} odd k/l, {branches} table branches), {} mismatches{first}", bad.len())
        })
        .collect::<Vec<_>>()
        .join("; ");
    outcome(passed, detail)
}

fn identities() -> Outcome {
    let mut tallies: Vec<CheckTally> = vec![audit::identity_grid(&[2, 3, 5], 3, 6, 5).unwrap()];
    tallies.extend(audit::proposition_checks(&[2, 3, 5], 4096, 12, 6).unwrap());
    let passed = tallies.iter().all(CheckTally::passed);
    let detail = tallies
        .iter()
        .map(|t| {
            let first = t.failures.first().map(|f| format!(" [{f}]")).unwrap_or_default();
            format!("{}: {}/{}{first}", t.name, t.checked - t.failed, t.checked)
        })
        .collect::<Vec<_>>()
        .join("; ");
    outcome(passed, detail)
}

/// Least `k <= cap` with `l | x^k - 1`, by stepping `x^k mod l`.
fn brute_order(l: &Poly, cap: u64) -> Option<u64> {
    let pf = l.field();
    let x = Poly::x(pf).rem(l).unwrap();
    let one = Poly::one(pf).rem(l).unwrap();
    let mut power = x.clone();
    for k in 1..=cap {
        if power == one {
            return Some(k);
        }
        power = power.mul_mod(&x, l).unwrap();
    }
    None
}

fn orders() -> Outcome {
    let f2 = PrimeField::new(2).unwrap();
    let example = Poly::parse(f2, "1+x+x^3").unwrap();
    let k = polynomial_order(&example).unwrap();
    let minimal = (1..7).all(|j| !example.divides(&Poly::one_minus_x_pow(f2, j)).unwrap());
    let certified = example.divides(&Poly::one_minus_x_pow(f2, 7)).unwrap();
    let mut problems = Vec::new();
    if k != 7 || !minimal || !certified {
        problems.push(format!("order(1+x+x^3) = {k}"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let primes = [2u64, 3, 5];
    let (mut sampled, mut beyond) = (0, 0);
    while sampled < 100 {
        let pf = PrimeField::new(primes[sampled % 3]).unwrap();
        let deg = rng.gen_range(1..=10);
        let mut coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..pf.p() as u64)).collect();
        coeffs[0] = rng.gen_range(1..pf.p() as u64);
        coeffs[deg] = 1;
        let l = Poly::new(pf, coeffs);
        if !l.gcd(&l.derivative()).unwrap().is_one() {
            continue;
        }
        sampled += 1;
        let order = polynomial_order(&l).unwrap();
        match brute_order(&l, 1023) {
            Some(b) if b == order => {}
            Some(b) => problems.push(format!("{l}: brute {b}, computed {order}")),
            None => {
                beyond += 1;
                let certified = l.divides(&Poly::one_minus_x_pow(pf, order as usize)).unwrap();
                if order <= 1023 || !certified {
                    problems.push(format!("{l}: no k <= 1023, computed {order}"));
                }
            }
        }
    }
    let detail = format!(
        "order(1+x+x^3)=7 (no k<7 works); {sampled} random squarefree l of degree <= 10 match brute scan ({beyond} beyond cap 1023, certified l | x^k-1); {} problems{}",
        problems.len(),
        problems.first().map(|p| format!(", first: {p}")).unwrap_or_default()
    );
    outcome(problems.is_empty(), detail)
}

fn bench() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut rows: Vec<BenchRow> = Vec::new();
    for n in [8, 16, 24] {
        let ctx = SolverContext::build(ProblemSpec::new(2, vec![1, 1, 0, 1], n)).unwrap();
        let rhs: Vec<FieldElement> = (0..15)
            .map(|_| {
                let coords: Vec<u32> = (0..n).map(|_| rng.gen_range(0..2)).collect();
                ctx.element_from_coords(&coords).unwrap()
            })
            .collect();
        rows.extend(bench_rows(&ctx, &rhs));
    }
    println!("{}", BenchRow::csv_header());
    for row in &rows {
        println!("{}", row.to_csv());
    }
    let median = |method: Method, n: usize| rows.iter().find(|r| r.method == method && r.n == n).map(|r| r.median_ns as f64);
    let mut growth = Vec::new();
    for method in [Method::Thm1, Method::Matrix] {
        if let (Some(a), Some(b)) = (median(method, 8), median(method, 24)) {
            growth.push(format!("{method} x{:.1}", b / a.max(1.0)));
        }
    }
    let populated = [8, 16, 24].iter().all(|&n| median(Method::Thm1, n).is_some() && median(Method::Matrix, n).is_some());
    outcome(
        populated,
        format!("informational; CSV above has formula and matrix rows for n=8,16,24; growth n=8→24: {}", growth.join(", ")),
    )
}

fn main() {
    let start = Instant::now();
    let mut results = vec![(1, worked_example())];
    let (c2, c3, c6) = grid_outcomes();
    results.push((2, c2));
    results.push((3, c3));
    results.push((4, closed_forms()));
    results.push((5, identities()));
    results.push((6, c6));
    results.push((7, orders()));
    results.push((8, bench()));

    for (id, o) in &results {
        println!("[{}] criterion {id}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed = results.iter().filter(|(_, o)| !o.passed).count();
    println!("acceptance: {} of {} criteria pass ({:.1?})", results.len() - failed, results.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
