use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;

fn ctx(p: u64, alphas: &[u64], n: usize) -> SolverContext {
    SolverContext::build(ProblemSpec::new(p, alphas.to_vec(), n)).unwrap()
}

fn lin(p: u64, s: &str) -> LinearizedPoly {
    LinearizedPoly::parse(PrimeField::new(p).unwrap(), s).unwrap()
}

fn poly(p: u64, s: &str) -> Poly {
    Poly::parse(PrimeField::new(p).unwrap(), s).unwrap()
}

fn all_in_n(c: &SolverContext) -> Vec<FieldElement> {
    c.basis_n.all_elements().collect()
}

/// Preimages by scanning GF(p^n) with plain repeated p-th powering.
fn brute_preimages(c: &SolverContext, a: &FieldElement) -> BTreeSet<Vec<u32>> {
    all_in_n(c)
        .into_iter()
        .filter(|x| &c.original.evaluate_by_powering(x) == a)
        .map(|x| x.coeffs().to_vec())
        .collect()
}

fn as_set(xs: &[FieldElement]) -> BTreeSet<Vec<u32>> {
    xs.iter().map(|x| x.coeffs().to_vec()).collect()
}

#[test]
fn preprocessing_shift() {
    let f2 = PrimeField::new(2).unwrap();
    let (s, red) = preprocess(f2, &[0, 1, 1]).unwrap();
    assert_eq!((s, red), (1, lin(2, "1,1")));
    let (s, red) = preprocess(f2, &[1, 0, 1]).unwrap();
    assert_eq!((s, red), (0, lin(2, "1,0,1")));
    let (s, red) = preprocess(f2, &[0, 0, 1]).unwrap();
    assert_eq!((s, red), (2, lin(2, "1")));
    assert_eq!(preprocess(f2, &[0, 2, 4]), Err(Error::ZeroPolynomial));
}

#[test]
fn worked_example_decomposition() {
    let c = ctx(2, &[1, 1, 0, 1], 3);
    assert_eq!((c.k, c.d, c.lcm_nk), (7, 1, 21));
    assert_eq!(c.lprime, lin(2, "1,1,1,0,1"));
    assert_eq!(c.decomposition.w, poly(2, "1+x^2+x^3"));
    assert_eq!(c.u, lin(2, "1,1"));

    let c = ctx(2, &[1, 1, 0, 1], 7);
    assert_eq!((c.k, c.d), (7, 7));
    assert!(c.decomposition.w.is_one());
    assert_eq!(c.u, lin(2, "1,1,1,0,1"));
}

#[test]
fn identity_map_context() {
    let c = ctx(2, &[1], 4);
    assert_eq!(c.k, 1);
    assert_eq!(c.decomposition.lprime, poly(2, "1+x"));
    for a in all_in_n(&c) {
        let sol = c.solve(&a, Method::Auto).unwrap();
        assert_eq!(sol.count, 1);
        assert_eq!(sol.particular.as_ref(), Some(&a));
    }
    assert!(c.kernel_basis().is_empty());
}

#[test]
fn solvability_counts() {
    let c = ctx(2, &[1, 1, 0, 1], 3);
    assert!(all_in_n(&c).iter().all(|a| c.is_solvable(a).unwrap()));
    assert!(c.is_solvable(&c.field.zero()).unwrap());

    let c = ctx(2, &[1, 1, 0, 1], 7);
    let all = all_in_n(&c);
    let solvable = all.iter().filter(|a| c.is_solvable(a).unwrap()).count();
    assert_eq!(solvable, 16);
    let rank = c.oracle_matrix().rank();
    assert_eq!(solvable, 1 << rank);
}

#[test]
fn kernel_examples() {
    assert!(ctx(2, &[1, 1, 0, 1], 3).kernel_basis().is_empty());
    assert!(ctx(2, &[1], 5).kernel_basis().is_empty());
    let c = ctx(2, &[1, 1, 0, 1], 7);
    assert_eq!(c.kernel_dim(), 3);
    assert_eq!(c.kernel_dim(), c.oracle_matrix().nullspace().len());
    for x in c.kernel_basis() {
        assert!(c.original.evaluate(x).unwrap().is_zero());
        assert!(c.field.is_in_subfield(x, 7).unwrap());
    }
}

#[test]
fn thm1_matches_unique_preimage_over_gf8() {
    let c = ctx(2, &[1, 1, 0, 1], 3);
    for a in all_in_n(&c) {
        let (x0, trace) = c.particular_solution_thm1(&a).unwrap();
        let oracle = c.matrix_oracle_solve(&a).unwrap();
        assert_eq!(oracle.particular.as_ref(), Some(&x0));
        assert_eq!(brute_preimages(&c, &a), as_set(&[x0]));
        assert!(c.u.evaluate(&trace.c).unwrap().is_zero());
    }
    let (x0, trace) = c.particular_solution_thm1(&c.field.zero()).unwrap();
    assert!(x0.is_zero() && trace.y.is_zero() && trace.c.is_zero());
}

#[test]
fn thm1_over_gf9() {
    let c = ctx(3, &[1, 1], 2);
    for a in all_in_n(&c) {
        let brute = brute_preimages(&c, &a);
        match c.particular_solution_thm1(&a) {
            Ok((x0, _)) => {
                assert!(brute.contains(x0.coeffs()));
                let sol = c.solve(&a, Method::Thm1).unwrap();
                assert_eq!(as_set(&enumerate_solutions(&sol, 1 << 16).unwrap()), brute);
            }
            Err(Error::NotSolvable) => assert!(brute.is_empty()),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn thm2_examples() {
    let c = ctx(2, &[1, 1, 0, 1], 3);
    assert!(c.thm2_applicable());
    for a in all_in_n(&c) {
        let x2 = c.particular_solution_thm2(&a).unwrap();
        let (x1, _) = c.particular_solution_thm1(&a).unwrap();
        assert_eq!(x1, x2);
    }
    assert!(c.particular_solution_thm2(&c.field.zero()).unwrap().is_zero());

    // L = T_2^4 = X + X^4; l = (1+x)^2 has order 2, so k = 4 is valid with k/d = 1
    let spec = ProblemSpec::new(2, vec![1, 0, 1], 4).with_k(4);
    let c = SolverContext::build(spec).unwrap();
    assert!(c.thm2_applicable());
    for a in all_in_n(&c) {
        let brute = brute_preimages(&c, &a);
        match c.particular_solution_thm2(&a) {
            Ok(x0) => assert!(brute.contains(x0.coeffs())),
            Err(Error::NotSolvable) => assert!(brute.is_empty()),
            Err(e) => panic!("{e}"),
        }
    }
    let c = SolverContext::build(ProblemSpec::new(2, vec![1, 0, 1], 4).with_k(8)).unwrap();
    assert!(!c.thm2_applicable());
    let a = c.field.zero();
    assert_eq!(c.particular_solution_thm2(&a), Err(Error::NotApplicable { p: 2, ratio: 2 }));
    assert!(matches!(c.solve(&a, Method::Thm2), Err(Error::NotApplicable { .. })));
    assert_eq!(c.solve(&a, Method::Auto).unwrap().method_used, Method::Thm1);
}

#[test]
fn solve_counts() {
    let c = ctx(2, &[1, 1, 0, 1], 3);
    for a in all_in_n(&c) {
        assert_eq!(c.solve(&a, Method::Auto).unwrap().count, 1);
    }
    let c = ctx(2, &[1, 1, 0, 1], 7);
    let zero = c.solve(&c.field.zero(), Method::Auto).unwrap();
    assert_eq!(zero.count, 8);
    assert!(zero.particular.as_ref().unwrap().is_zero());
    let bad = all_in_n(&c).into_iter().find(|a| !c.u.evaluate(a).unwrap().is_zero()).unwrap();
    let sol = c.solve(&bad, Method::Auto).unwrap();
    assert!(!sol.solvable);
    assert_eq!(sol.count, 0);
    // U(a) != 0 alone does not decide; the criterion is U(T_7^7(a)) = U(a) here
    assert!(!c.is_solvable(&bad).unwrap());
}

#[test]
fn oracle_examples() {
    let c = ctx(2, &[1], 3);
    let id: Vec<Vec<u32>> = (0..3).map(|i| (0..3).map(|j| (i == j) as u32).collect()).collect();
    assert_eq!(c.oracle_matrix(), &Matrix::from_rows(c.field.prime(), 3, &id));

    let c = ctx(2, &[1, 1], 2);
    for a in all_in_n(&c) {
        let sol = c.matrix_oracle_solve(&a).unwrap();
        let in_prime = c.field.is_in_subfield(&a, 1).unwrap();
        assert_eq!(sol.solvable, in_prime);
        if in_prime {
            assert_eq!(sol.count, 2);
        }
        assert_eq!(as_set(&enumerate_solutions(&sol, 16).unwrap()), brute_preimages(&c, &a));
    }
}

#[test]
fn enumeration() {
    let c = ctx(2, &[1, 1, 0, 1], 7);
    let a = c.original.evaluate(&c.basis_n.elements()[2]).unwrap();
    let sol = c.solve(&a, Method::Auto).unwrap();
    let xs = enumerate_solutions(&sol, 1 << 16).unwrap();
    assert_eq!(xs.len(), 8);
    assert_eq!(as_set(&xs).len(), 8);
    assert!(xs.iter().all(|x| c.original.evaluate(x).unwrap() == a));
    assert_eq!(enumerate_solutions(&sol, 4).unwrap_err(), Error::TooMany { count: 8, cap: 4 });

    let c = ctx(2, &[1, 1, 0, 1], 3);
    let sol = c.solve(&c.field.one(), Method::Auto).unwrap();
    assert_eq!(enumerate_solutions(&sol, 1).unwrap().len(), 1);

    let c = ctx(2, &[1, 1, 0, 1], 7);
    let bad = all_in_n(&c).into_iter().find(|a| !c.is_solvable(a).unwrap()).unwrap();
    let sol = c.solve(&bad, Method::Auto).unwrap();
    assert!(enumerate_solutions(&sol, 1).unwrap().is_empty());
}

#[test]
fn shifted_equations_match_oracle() {
    // L = X^2 + X^4 and L = X^9 + X^27 + 2 X^81
    for (p, alphas, n) in [(2u64, vec![0, 1, 1], 4usize), (3, vec![0, 0, 1, 1, 2], 3), (2, vec![0, 0, 0, 1, 1, 0, 1], 5)] {
        let c = ctx(p, &alphas, n);
        assert!(c.shift > 0);
        for a in all_in_n(&c) {
            let oracle = c.matrix_oracle_solve(&a).unwrap();
            let auto = c.solve(&a, Method::Auto).unwrap();
            assert!(auto.same_set_as(&oracle), "p={p} {alphas:?} a={a:?}");
            assert_eq!(as_set(&enumerate_solutions(&auto, 1 << 12).unwrap()), brute_preimages(&c, &a));
        }
    }
}

#[test]
fn error_paths() {
    let spec = ProblemSpec::new(2, vec![1, 1, 0, 1], 3).with_k(5);
    assert_eq!(SolverContext::build(spec).unwrap_err(), Error::InvalidK { k: 5 });
    let opts = SolverOptions { order_bound: 4, ..Default::default() };
    let spec = ProblemSpec::new(2, vec![1, 1, 0, 1], 3);
    assert!(matches!(SolverContext::build_with(spec, opts), Err(Error::OrderTooLarge { .. })));
    let spec = ProblemSpec::new(2, vec![0, 0], 3);
    assert_eq!(SolverContext::build(spec).unwrap_err(), Error::ZeroPolynomial);

    let c = ctx(2, &[1, 1, 0, 1], 3);
    let outside = c.field.generator();
    assert!(!c.field.is_in_subfield(&outside, 3).unwrap());
    assert_eq!(c.solve(&outside, Method::Auto).unwrap_err(), Error::NotInSubfield { n: 3 });
    assert_eq!(c.is_solvable(&outside).unwrap_err(), Error::NotInSubfield { n: 3 });
}

#[test]
fn gcd_shortcut_matches_euclid() {
    for (p, alphas, n) in [(2u64, vec![1, 1, 0, 1], 3usize), (3, vec![1, 2, 1], 4), (5, vec![2, 1, 3], 2), (2, vec![1, 0, 1], 6)] {
        let c = ctx(p, &alphas, n);
        let dec = &c.decomposition;
        assert_eq!(dec.w, dec.lprime.gcd(&dec.t_dk).unwrap());
        let (_, f, g) = dec.u.xgcd(&dec.v).unwrap();
        assert_eq!((f, g), (dec.f.clone(), dec.g.clone()));
    }
}

#[test]
fn batch_is_order_preserving() {
    let c = ctx(3, &[1, 2, 0, 1], 4);
    let all = all_in_n(&c);
    let par = c.solve_batch(&all, Method::Auto);
    let seq = c.solve_batch_sequential(&all, Method::Auto);
    for (a, b) in par.iter().zip(&seq) {
        let (a, b) = (a.as_ref().unwrap(), b.as_ref().unwrap());
        assert_eq!(a.particular, b.particular);
        assert!(a.same_set_as(b));
    }
}

#[test]
fn closed_form_examples() {
    let r = closed_form_check(Family::T, 2, 1, 2, 4).unwrap();
    assert!(r.matches, "{r:?}");
    let r = closed_form_check(Family::T, 3, 3, 3, 2).unwrap();
    assert!(r.matches, "{r:?}");
    assert_eq!(r.actual_u, Poly::one_minus_x_pow(PrimeField::new(3).unwrap(), 1));
    let r = closed_form_check(Family::S, 3, 1, 2, 2).unwrap();
    assert!(r.matches, "{r:?}");
    assert!(r.branch.starts_with("k/l even"));
}

#[test]
fn kernel_identity_checks() {
    assert!(kernel_intersection_check(&poly(2, "x^2+1"), &poly(2, "x^3+x^2+x+1"), 6).unwrap());
    assert!(kernel_intersection_check(&poly(3, "x^2+x+2"), &poly(3, "x^3+2"), 4).unwrap());
    assert!(kernel_image_check(&poly(2, "x^3+x+1"), 7).unwrap());
    assert!(kernel_image_check(&poly(3, "x^2+1"), 4).unwrap());
    assert!(matches!(kernel_image_check(&poly(2, "x^3+x+1"), 5), Err(Error::InvalidK { .. })));
}

fn random_spec(p: u64, n: usize, rng: &mut ChaCha8Rng) -> ProblemSpec {
    use rand::Rng;
    let deg = rng.gen_range(0..=4);
    let mut alphas: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
    alphas[0] = rng.gen_range(1..p);
    alphas[deg] = rng.gen_range(1..p);
    ProblemSpec::new(p, alphas, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn context_identities_and_oracle_agreement(
        p in prop::sample::select(vec![2u64, 3, 5]),
        n in 1usize..5,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = SolverContext::build(random_spec(p, n, &mut rng)).unwrap();
        // U o L = S_d^{2d} o V pointwise on the ambient field
        let s = LinearizedPoly::alternating(c.field.prime(), c.d, 2 * c.d).unwrap();
        for _ in 0..4 {
            let x = c.field.random(&mut rng);
            let lhs = c.u.evaluate(&c.l.evaluate(&x).unwrap()).unwrap();
            let rhs = s.evaluate(&c.v.evaluate(&x).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        let mut solvable = 0u128;
        for a in all_in_n(&c).iter().take(128) {
            let oracle = c.matrix_oracle_solve(a).unwrap();
            let auto = c.solve(a, Method::Auto).unwrap();
            prop_assert!(auto.same_set_as(&oracle));
            let thm1 = c.solve(a, Method::Thm1).unwrap();
            prop_assert!(thm1.same_set_as(&oracle));
            if c.thm2_applicable() {
                prop_assert_eq!(c.is_solvable(a).unwrap(), c.thm2_criterion(a).unwrap());
            }
            if let Ok((_, trace)) = c.particular_solution_thm1(a) {
                prop_assert!(c.u.evaluate(&trace.c).unwrap().is_zero());
                prop_assert!(c.field.is_in_subfield(&trace.c, c.d).unwrap());
                prop_assert!(c.field.is_in_subfield(&trace.z, c.d).unwrap());
            }
            solvable += oracle.solvable as u128;
        }
        let _ = solvable;
    }

    #[test]
    fn solution_sets_do_not_depend_on_k(
        p in prop::sample::select(vec![2u64, 3]),
        n in 1usize..5,
        mult in 2u64..4,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_spec(p, n, &mut rng);
        let c1 = SolverContext::build(spec.clone()).unwrap();
        let c2 = SolverContext::build(spec.with_k(c1.k * mult)).unwrap();
        for a in all_in_n(&c1).iter().take(64) {
            let s1 = c1.solve(a, Method::Auto).unwrap();
            let s2 = c2.solve(a, Method::Auto).unwrap();
            prop_assert!(s1.same_set_as(&s2));
        }
    }
}
