use std::collections::BTreeSet;

use num::{One, Zero};

use crate::ansatz::Ansatz;
use crate::error::{Error, Result};
use crate::expr::{Expr, Rat};
use crate::field::{decompose_in_span, VectorField};
use crate::linalg::QMatrix;
use crate::sample::{Sampler, MAX_SAMPLE_RETRIES};

/// How a nonzero candidate sits relative to a family of operators.
///
/// `Relative` records one multiplier per operator: `Q_m(theta) =
/// lambda_m * theta` with every `lambda_m` free of poles along `theta = 0`.
/// All multipliers zero is the absolute case. When some `Q_m(theta)/theta`
/// has an irremovable `theta` factor in its denominator, the candidate is not
/// an invariant of either kind and the uncancelled factor is reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Absolute,
    Relative { multipliers: Vec<Expr> },
    NotInvariant { op: usize, obstruction: String },
}

impl Classification {
    pub fn is_absolute(&self) -> bool {
        matches!(self, Classification::Absolute)
    }

    /// Multipliers for both invariant kinds; `None` for a failed candidate.
    pub fn multipliers(&self, n_ops: usize) -> Option<Vec<Expr>> {
        match self {
            Classification::Absolute => Some(vec![Expr::zero(); n_ops]),
            Classification::Relative { multipliers } => Some(multipliers.clone()),
            Classification::NotInvariant { .. } => None,
        }
    }
}

/// Classify a candidate against the (already prolonged, possibly extended)
/// operators.
pub fn classify(ops: &[VectorField], theta: &Expr) -> Result<Classification> {
    if theta.is_zero() {
        return Err(Error::Script("candidate invariant is identically zero".into()));
    }
    let mut multipliers = Vec::with_capacity(ops.len());
    let mut all_zero = true;
    for (idx, op) in ops.iter().enumerate() {
        let q = op.apply(theta);
        if q.is_zero() {
            multipliers.push(Expr::zero());
            continue;
        }
        // lambda = q / theta is a legal multiplier only when the numerator of
        // theta divides q's numerator times theta's denominator, i.e. when
        // the quotient picks up no pole along theta = 0.
        let ratio = Expr::reduce(
            q.numerator().mul(theta.denominator()),
            theta.numerator().clone(),
        )?;
        let clean = ratio.denominator().as_constant().map_or(false, |c| c.is_one());
        if !clean {
            return Ok(Classification::NotInvariant {
                op: idx,
                obstruction: format!("{}", ratio.denominator()),
            });
        }
        let lambda = q.checked_div(theta)?;
        all_zero = false;
        multipliers.push(lambda);
    }
    if all_zero {
        Ok(Classification::Absolute)
    } else {
        Ok(Classification::Relative { multipliers })
    }
}

/// The rate `a` in an operator term `a * anc * d/d<anc>`; zero when the
/// operator does not touch the ancillary direction. The coefficient must be
/// linear in the ancillary with an ancillary-free rate.
pub fn ancillary_rate(op: &VectorField, anc: &str) -> Result<Expr> {
    let c = op.coeff(anc);
    if c.is_zero() {
        return Ok(Expr::zero());
    }
    let a = c.checked_div(&Expr::var(anc))?;
    if a.mentions(anc) {
        return Err(Error::NotLinearInAncillary(op.to_string()));
    }
    Ok(a)
}

/// One power of the ancillary together with the coefficient functions that
/// make `F * anc^k` an absolute invariant.
#[derive(Debug, Clone)]
pub struct ScaledSolution {
    pub k: i64,
    pub members: Vec<Expr>,
}

/// Search for absolute invariants of the form `F * anc^k` with `F` in the
/// ansatz span and `k` in the given range. For each operator the condition
/// is `Q_m(F) + k a_m F = 0`, which is linear in `F`; each power's solution
/// space is solved exactly and every member is re-verified. Powers with no
/// solutions are omitted; no solutions at all is an error.
pub fn solve_scaled(
    ops: &[VectorField],
    anc: &str,
    ansatz: &Ansatz,
    kmin: i64,
    kmax: i64,
) -> Result<Vec<ScaledSolution>> {
    if kmin > kmax {
        return Err(Error::Script(format!("empty power range {kmin}..{kmax}")));
    }
    for gen in ansatz.basis() {
        if gen.mentions(anc) {
            return Err(Error::Script(format!(
                "ansatz generator {gen} mentions the ancillary variable; the ancillary enters only through its power"
            )));
        }
    }
    let rates: Vec<Expr> = ops
        .iter()
        .map(|op| ancillary_rate(op, anc))
        .collect::<Result<_>>()?;
    let basis_vectors: Vec<Vec<Expr>> = ansatz.basis().iter().map(|e| vec![e.clone()]).collect();
    let b = ansatz.dim();
    let mut out = Vec::new();
    for k in kmin..=kmax {
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut escaped = None;
        'ops: for (m, op) in ops.iter().enumerate() {
            // Coordinates of (Q_m + k a_m)(b_j) in the ansatz basis.
            let mut cols = Vec::with_capacity(b);
            for gen in ansatz.basis() {
                let img = op
                    .apply(gen)
                    .add(&rates[m].mul(gen).scale_rat(&Rat::from_integer(k.into())));
                match decompose_in_span(&basis_vectors, &[img.clone()]) {
                    Some(c) => cols.push(c),
                    None => {
                        escaped = Some(format!(
                            "operator {m} at power {k} maps {gen} to {img}, outside the ansatz span"
                        ));
                        break 'ops;
                    }
                }
            }
            for i in 0..b {
                rows.push((0..b).map(|j| cols[j][i].clone()).collect());
            }
        }
        if let Some(detail) = escaped {
            return Err(Error::AnsatzNotInvariant(detail));
        }
        let members: Vec<Expr> = QMatrix::from_rows(rows)
            .nullspace()
            .into_iter()
            .map(|alpha| {
                let mut e = Expr::zero();
                for (j, gen) in ansatz.basis().iter().enumerate() {
                    if !alpha[j].is_zero() {
                        e = e.add(&gen.scale_rat(&alpha[j]));
                    }
                }
                e
            })
            .collect();
        if members.is_empty() {
            continue;
        }
        for f in &members {
            let theta = f.mul(&Expr::var(anc).pow_i(k));
            let class = classify(ops, &theta)?;
            assert!(
                class.is_absolute(),
                "solver produced a candidate that fails its own condition"
            );
        }
        out.push(ScaledSolution { k, members });
    }
    if out.is_empty() {
        return Err(Error::EmptyFamily);
    }
    Ok(out)
}

/// Generic rank of the Jacobian of `exprs` with respect to `coords`:
/// the maximum exact rank over three deterministic generic points.
pub fn jacobian_rank(exprs: &[Expr], coords: &[String], seed: u64) -> Result<usize> {
    if exprs.is_empty() {
        return Ok(0);
    }
    let jac: Vec<Vec<Expr>> = exprs
        .iter()
        .map(|e| coords.iter().map(|v| e.diff(v)).collect())
        .collect();
    let mut atoms = BTreeSet::new();
    for row in &jac {
        for e in row {
            atoms.extend(e.atoms());
        }
    }
    let mut sampler = Sampler::new(seed);
    let mut best = 0;
    let mut successes = 0;
    for _ in 0..MAX_SAMPLE_RETRIES {
        if successes == 3 {
            break;
        }
        let pt = sampler.point(&atoms);
        let mut rows = Vec::with_capacity(jac.len());
        let mut singular = false;
        'rows: for row in &jac {
            let mut vals = Vec::with_capacity(coords.len());
            for e in row {
                match e.eval_at(&pt) {
                    Ok(v) => vals.push(v),
                    Err(Error::SingularPoint) => {
                        singular = true;
                        break 'rows;
                    }
                    Err(err) => return Err(err),
                }
            }
            rows.push(vals);
        }
        if singular {
            continue;
        }
        successes += 1;
        best = best.max(QMatrix::from_rows(rows).rank());
        if best == exprs.len().min(coords.len()) {
            break;
        }
    }
    if successes == 0 {
        return Err(Error::AllSamplesSingular);
    }
    Ok(best)
}

/// Are the expressions functionally independent as functions of `coords`?
pub fn functionally_independent(exprs: &[Expr], coords: &[String], seed: u64) -> Result<bool> {
    Ok(jacobian_rank(exprs, coords, seed)? == exprs.len())
}
