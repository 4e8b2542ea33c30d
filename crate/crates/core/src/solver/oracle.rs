//! Independent route: Gaussian elimination on the matrix of `L` over GF(p^n).

use super::{Method, SolutionSet, SolverContext};
use crate::error::Result;
use crate::field::FieldElement;
use crate::linalg::EchelonBasis;

impl SolverContext {
    /// Eliminates `[A | a]` afresh, where `A` is the matrix of the original
    /// `L` in coordinates over the echelon basis of GF(p^n).
    pub fn matrix_oracle_solve(&self, a: &FieldElement) -> Result<SolutionSet> {
        self.check_input(a)?;
        let rhs = self.basis_n.coordinates(a)?;
        let pf = self.field.prime();
        let (particular, nullspace) = match self.oracle_matrix.solve(&rhs) {
            Some((x, ns)) => (Some(self.basis_n.combine(&x)), ns),
            None => (None, self.oracle_matrix.nullspace()),
        };
        let rows: Vec<Vec<u32>> = nullspace.iter().map(|v| self.basis_n.combine(v).coeffs().to_vec()).collect();
        let ech = EchelonBasis::new(pf, self.field.degree(), &rows);
        let kernel = ech.rows.iter().map(|r| self.field.element(r)).collect::<Result<Vec<_>>>()?;
        Ok(SolutionSet::new(self, particular, kernel, Method::Matrix))
    }
}
