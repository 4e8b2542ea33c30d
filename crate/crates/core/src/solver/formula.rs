//! Solvability criteria and the two closed-form particular solutions.

use super::{invariant, SolverContext};
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Intermediate values of the double-sum construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm1Trace {
    pub y: FieldElement,
    /// `a - L(W(y))`; lies in GF(p^d) and is annihilated by `U`.
    pub c: FieldElement,
    /// `U(G(delta_1 c))`, in GF(p^d).
    pub z: FieldElement,
}

impl SolverContext {
    /// `U(T_d^n(a)) = 0`.
    pub fn is_solvable(&self, a: &FieldElement) -> Result<bool> {
        self.check_input(a)?;
        let n = self.n();
        let a = self.reduced_rhs(a);
        let t = self.folded.trace_dn.evaluate_in(&a, n);
        Ok(self.folded.u_n.evaluate_in(&t, n).is_zero())
    }

    /// `L'(T_d^n(a)) = 0`; equivalent to [`is_solvable`](Self::is_solvable)
    /// whenever `p` does not divide `k/d`.
    pub fn thm2_criterion(&self, a: &FieldElement) -> Result<bool> {
        self.check_input(a)?;
        let n = self.n();
        let a = self.reduced_rhs(a);
        let t = self.folded.trace_dn.evaluate_in(&a, n);
        Ok(self.folded.lprime_n.evaluate_in(&t, n).is_zero())
    }

    /// `x_0 = W(y) + U(G(delta_1 (a - L(W(y)))))` with
    /// `y = sum_{i < j < n/d} delta^{p^{kj}} U(a)^{p^{ki}}`.
    pub fn particular_solution_thm1(&self, a: &FieldElement) -> Result<(FieldElement, Thm1Trace)> {
        if !self.is_solvable(a)? {
            return Err(Error::NotSolvable);
        }
        let (n, d, p) = (self.n(), self.d, self.p() as usize);
        let m = self.field.degree();
        let k = self.k as usize % m;
        let fo = &self.folded;
        let rhs = self.reduced_rhs(a);

        let ua = fo.u_n.evaluate_in(&rhs, n);
        let mut y = self.field.zero();
        let mut ua_pow = ua;
        for (i, suffix) in self.delta_suffix.iter().enumerate() {
            if i > 0 {
                ua_pow = ua_pow.frobenius(k);
            }
            if !suffix.is_zero() {
                y = &y + &(suffix * &ua_pow);
            }
        }

        let wy = fo.w_n.evaluate_in(&y, n);
        let c = &rhs - &fo.l_n.evaluate_in(&wy, n);
        invariant(fo.u_n.evaluate_in(&c, n).is_zero(), "U(a - L(W(y))) = 0")?;
        invariant(self.field.is_in_subfield(&c, d)?, "a - L(W(y)) lies in GF(p^d)")?;

        let z = fo.u_pd.evaluate_in(&fo.g_pd.evaluate_in(&(&self.delta1 * &c), p * d), p * d);
        invariant(self.field.is_in_subfield(&z, d)?, "z lies in GF(p^d)")?;

        let x0 = &wy + &z;
        self.verify(&x0, a)?;
        Ok((x0, Thm1Trace { y, c, z }))
    }

    /// `x_0 = (d/k) L'(T_k^{[n,k]}(delta a))` with `delta - delta^{p^n} = 1`.
    pub fn particular_solution_thm2(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check_input(a)?;
        let ratio = self.k / self.d as u64;
        if !self.thm2_applicable() {
            return Err(Error::NotApplicable { p: self.p(), ratio });
        }
        if !self.thm2_criterion(a)? {
            return Err(Error::NotSolvable);
        }
        let pf = self.field.prime();
        let scale = pf.inv(pf.reduce(ratio))?;
        let rhs = self.reduced_rhs(a);
        let m = self.field.degree();
        let inner = self.folded.trace_k_lcm_m.evaluate_in(&(&self.delta_n * &rhs), m);
        let x0 = self.folded.lprime_m.evaluate_in(&inner, m).scale(scale);
        self.verify(&x0, a)?;
        Ok(x0)
    }

    /// Direct substitution into the original equation plus membership in GF(p^n).
    fn verify(&self, x0: &FieldElement, a: &FieldElement) -> Result<()> {
        let n = self.n();
        invariant(self.field.is_in_subfield(x0, n)?, "particular solution lies in GF(p^n)")?;
        invariant(&self.folded.original_n.evaluate_in(x0, n) == a, "L(x_0) = a")
    }
}
