use num::Zero;

use crate::ansatz::Ansatz;
use crate::error::{Error, Result};
use crate::expr::{Expr, Rat};
use crate::field::{decompose_in_span, structure_constants, StructureConstants, VectorField};
use crate::linalg::QMatrix;

/// Extension problem for a closed realisation: find coefficient functions
/// `a_m` so that the operators `Q_m + a_m R d/dR` close with the same
/// structure constants. That holds exactly when every pair satisfies
/// `Q_m(a_n) - Q_n(a_m) = sum_k c[m][n][k] a_k`.
#[derive(Debug, Clone)]
pub struct ExtensionProblem {
    fields: Vec<VectorField>,
    constants: StructureConstants,
}

/// Solution set of an extension problem inside an ansatz: a rational vector
/// space of coefficient tuples, one expression per operator.
#[derive(Debug, Clone)]
pub struct ExtensionFamily {
    pub members: Vec<Vec<Expr>>,
}

impl ExtensionFamily {
    pub fn dim(&self) -> usize {
        self.members.len()
    }
}

impl ExtensionProblem {
    pub fn new(fields: Vec<VectorField>) -> Result<ExtensionProblem> {
        let constants = structure_constants(&fields)?;
        Ok(ExtensionProblem { fields, constants })
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    /// Left hand side minus right hand side of the pair (m, n) determining
    /// equation, for arbitrary coefficient expressions (opaque function
    /// symbols included).
    pub fn residual(&self, a: &[Expr], m: usize, n: usize) -> Expr {
        let mut r = self.fields[m]
            .apply(&a[n])
            .sub(&self.fields[n].apply(&a[m]));
        for (k, ak) in a.iter().enumerate() {
            let c = &self.constants[m][n][k];
            if !c.is_zero() {
                r = r.sub(&ak.scale_rat(c));
            }
        }
        r
    }

    /// All nonzero pair residuals; an empty list means the tuple extends the
    /// realisation.
    pub fn verify(&self, a: &[Expr]) -> Vec<(usize, usize, Expr)> {
        assert_eq!(a.len(), self.fields.len(), "one coefficient per operator");
        let mut out = Vec::new();
        for m in 0..self.fields.len() {
            for n in (m + 1)..self.fields.len() {
                let r = self.residual(a, m, n);
                if !r.is_zero() {
                    out.push((m, n, r));
                }
            }
        }
        out
    }

    /// Solve the determining equations inside the ansatz span. The span must
    /// be carried into itself by every operator; every nullspace member is
    /// re-verified symbolically before being returned.
    pub fn solve(&self, ansatz: &Ansatz) -> Result<ExtensionFamily> {
        let n = self.fields.len();
        let b = ansatz.dim();
        let basis_vectors: Vec<Vec<Expr>> =
            ansatz.basis().iter().map(|e| vec![e.clone()]).collect();
        // action[m][j] = coordinates of Q_m(b_j) in the ansatz basis.
        let mut action: Vec<Vec<Vec<Rat>>> = Vec::with_capacity(n);
        for (m, f) in self.fields.iter().enumerate() {
            let mut rows = Vec::with_capacity(b);
            for (j, gen) in ansatz.basis().iter().enumerate() {
                let img = f.apply(gen);
                let coords =
                    decompose_in_span(&basis_vectors, &[img.clone()]).ok_or_else(|| {
                        Error::AnsatzNotInvariant(format!(
                            "operator {m} maps generator {j} ({gen}) to {img}, outside the ansatz span"
                        ))
                    })?;
                rows.push(coords);
            }
            action.push(rows);
        }
        // Unknowns alpha[m][j], flattened as m * b + j.
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for m in 0..n {
            for nn in (m + 1)..n {
                for i in 0..b {
                    let mut row = vec![Rat::zero(); n * b];
                    for j in 0..b {
                        row[nn * b + j] += action[m][j][i].clone();
                        row[m * b + j] -= action[nn][j][i].clone();
                    }
                    for k in 0..n {
                        row[k * b + i] -= self.constants[m][nn][k].clone();
                    }
                    rows.push(row);
                }
            }
        }
        let members: Vec<Vec<Expr>> = if rows.is_empty() {
            // A single operator: every ansatz choice of its coefficient works.
            let mut out = Vec::new();
            for m in 0..n {
                for gen in ansatz.basis() {
                    let mut member = vec![Expr::zero(); n];
                    member[m] = gen.clone();
                    out.push(member);
                }
            }
            out
        } else {
            QMatrix::from_rows(rows)
                .nullspace()
                .into_iter()
                .map(|alpha| {
                    (0..n)
                        .map(|m| {
                            let mut e = Expr::zero();
                            for (j, gen) in ansatz.basis().iter().enumerate() {
                                let c = &alpha[m * b + j];
                                if !c.is_zero() {
                                    e = e.add(&gen.scale_rat(c));
                                }
                            }
                            e
                        })
                        .collect()
                })
                .collect()
        };
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for member in &members {
            let bad = self.verify(member);
            assert!(
                bad.is_empty(),
                "solver produced a tuple that fails its own determining equations"
            );
        }
        Ok(ExtensionFamily { members })
    }
}
