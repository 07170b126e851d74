//! Re-derivation of stated results with explicit verdicts.
//!
//! A claim packages one stated result together with everything needed to
//! recompute it from scratch. Evaluation never trusts the statement: it
//! recomputes, compares, and reports one of four verdicts. `Confirmed` means
//! the statement holds as written. `Corrected` means a nearby variant holds
//! (a different power of the ancillary, a different extension, a sign) and
//! the data lines say which. `Flagged` means the recomputation produced a
//! well-defined result that disagrees with the statement in a way that needs
//! a human decision. `Failed` means the claim could not be validated at all.

use num::Zero;

use crate::ansatz::Ansatz;
use crate::expr::{rat, ratio, Expr};
use crate::extension::ExtensionProblem;
use crate::field::{decompose_in_span, structure_constants, StructureConstants, VectorField};
use crate::invariant::{classify, jacobian_rank, solve_scaled, Classification};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// The run fails unless the claim is confirmed exactly as stated.
    Confirm,
    /// The claim is recomputed and reported; corrections do not fail the run.
    Audit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Confirmed,
    Corrected,
    Flagged,
    Failed,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Confirmed => "CONFIRMED",
            Verdict::Corrected => "CORRECTED",
            Verdict::Flagged => "FLAGGED",
            Verdict::Failed => "FAILED",
        }
    }
}

/// A named assignment of extension rates, one per operator.
#[derive(Debug, Clone)]
pub struct ExtContext {
    pub label: String,
    pub rates: Vec<Expr>,
}

impl ExtContext {
    pub fn new(label: &str, rates: Vec<Expr>) -> ExtContext {
        ExtContext { label: label.to_string(), rates }
    }
}

#[derive(Debug, Clone)]
pub enum Claim {
    /// The operators close with exactly these structure constants.
    Brackets {
        names: Vec<String>,
        ops: Vec<VectorField>,
        expected: StructureConstants,
    },
    /// The rate functions satisfy the extension determining equations of the
    /// operators; on failure the fallback rates are tried and reported.
    RatesClose {
        ops: Vec<VectorField>,
        rates: Vec<Expr>,
        fallback: Option<(String, Vec<Expr>)>,
    },
    /// A stated operator agrees with its independent recomputation.
    OperatorForm {
        label: String,
        stated: VectorField,
        recomputed: VectorField,
    },
    /// A stated expression agrees with its independent recomputation.
    Equation {
        label: String,
        stated: Expr,
        recomputed: Expr,
    },
    /// `f * anc^k` is an absolute invariant of the operators extended by the
    /// first context; alternate contexts and nearby powers are searched when
    /// the statement fails as written.
    ScaledInvariant {
        ops: Vec<VectorField>,
        anc: String,
        f: Expr,
        k: i64,
        contexts: Vec<ExtContext>,
    },
    /// The candidate is an invariant of the operators of the expected kind.
    Invariant {
        ops: Vec<VectorField>,
        theta: Expr,
        expect_proper: bool,
        fallback: Option<Expr>,
    },
    /// A product of powers of proper relative invariants whose multipliers
    /// cancel, reproducing the stated absolute invariant.
    Pairing {
        ops: Vec<VectorField>,
        factors: Vec<(Expr, i64)>,
        product: Expr,
    },
    /// The expressions are functionally independent with this exact rank.
    Independence {
        exprs: Vec<Expr>,
        coords: Vec<String>,
        expected_rank: usize,
    },
    /// The extension family solved inside the ansatz has this dimension.
    FamilyDim {
        ops: Vec<VectorField>,
        ansatz: Vec<Expr>,
        expected: usize,
    },
    /// The scaled-invariant search returns families of these dimensions and
    /// the listed members lie in the corresponding spans.
    ScaledFamily {
        ops: Vec<VectorField>,
        anc: String,
        ansatz: Vec<Expr>,
        kmin: i64,
        kmax: i64,
        expected_dims: Vec<(i64, usize)>,
        must_contain: Vec<(i64, Expr)>,
    },
    /// The change of variables carries the field to the expected form.
    Transport {
        field: VectorField,
        fwd: Vec<(String, Expr)>,
        inv: Vec<(String, Expr)>,
        expected: VectorField,
    },
    /// Dropping the ancillary power from a verified scaled invariant yields
    /// a relative invariant with multipliers `-k * a_m`; when a different
    /// expression is stated as the result, both are classified and compared.
    Elimination {
        ops: Vec<VectorField>,
        anc: String,
        f: Expr,
        k: i64,
        rates: Vec<Expr>,
        stated: Option<Expr>,
    },
}

/// Result of evaluating one claim.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub verdict: Verdict,
    pub summary: String,
    pub data: Vec<(String, String)>,
}

impl Outcome {
    fn new(verdict: Verdict, summary: impl Into<String>) -> Outcome {
        Outcome { verdict, summary: summary.into(), data: Vec::new() }
    }

    fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.data.push((key.into(), value.to_string()));
    }
}

/// One corpus expectation: a claim with an identifier and a strictness class.
#[derive(Debug, Clone)]
pub struct Entry {
    pub id: String,
    pub class: Expectation,
    pub claim: Claim,
}

impl Entry {
    pub fn confirm(id: &str, claim: Claim) -> Entry {
        Entry { id: id.to_string(), class: Expectation::Confirm, claim }
    }

    pub fn audit(id: &str, claim: Claim) -> Entry {
        Entry { id: id.to_string(), class: Expectation::Audit, claim }
    }
}

/// A finished verdict for one entry.
#[derive(Debug, Clone)]
pub struct Finding {
    pub id: String,
    pub class: Expectation,
    pub verdict: Verdict,
    pub summary: String,
    pub data: Vec<(String, String)>,
}

impl Finding {
    /// Does this finding sink the run? Confirm-class entries must confirm;
    /// audit-class entries may correct or flag but must not fail outright.
    pub fn is_violation(&self) -> bool {
        match self.class {
            Expectation::Confirm => self.verdict != Verdict::Confirmed,
            Expectation::Audit => self.verdict == Verdict::Failed,
        }
    }
}

pub fn run_entry(entry: &Entry, seed: u64) -> Finding {
    let outcome = evaluate(&entry.claim, seed);
    Finding {
        id: entry.id.clone(),
        class: entry.class,
        verdict: outcome.verdict,
        summary: outcome.summary,
        data: outcome.data,
    }
}

const POWER_SEARCH: std::ops::RangeInclusive<i64> = -4..=4;

pub fn evaluate(claim: &Claim, seed: u64) -> Outcome {
    match claim {
        Claim::Brackets { names, ops, expected } => brackets(names, ops, expected),
        Claim::RatesClose { ops, rates, fallback } => rates_close(ops, rates, fallback.as_ref()),
        Claim::OperatorForm { label, stated, recomputed } => {
            operator_form(label, stated, recomputed)
        }
        Claim::Equation { label, stated, recomputed } => equation(label, stated, recomputed),
        Claim::ScaledInvariant { ops, anc, f, k, contexts } => {
            scaled_invariant(ops, anc, f, *k, contexts)
        }
        Claim::Invariant { ops, theta, expect_proper, fallback } => {
            invariant(ops, theta, *expect_proper, fallback.as_ref())
        }
        Claim::Pairing { ops, factors, product } => pairing(ops, factors, product),
        Claim::Independence { exprs, coords, expected_rank } => {
            independence(exprs, coords, *expected_rank, seed)
        }
        Claim::FamilyDim { ops, ansatz, expected } => family_dim(ops, ansatz, *expected),
        Claim::ScaledFamily { ops, anc, ansatz, kmin, kmax, expected_dims, must_contain } => {
            scaled_family(ops, anc, ansatz, *kmin, *kmax, expected_dims, must_contain)
        }
        Claim::Transport { field, fwd, inv, expected } => transport(field, fwd, inv, expected),
        Claim::Elimination { ops, anc, f, k, rates, stated } => {
            elimination(ops, anc, f, *k, rates, stated.as_ref())
        }
    }
}

fn fmt_exprs(list: &[Expr]) -> String {
    list.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
}

fn extend_ops(ops: &[VectorField], anc: &str, rates: &[Expr]) -> Vec<VectorField> {
    ops.iter()
        .zip(rates)
        .map(|(op, a)| {
            op.add(&VectorField::new([(
                anc.to_string(),
                a.mul(&Expr::var(anc)),
            )]))
        })
        .collect()
}

fn brackets(names: &[String], ops: &[VectorField], expected: &StructureConstants) -> Outcome {
    let got = match structure_constants(ops) {
        Ok(c) => c,
        Err(e) => return Outcome::new(Verdict::Failed, format!("algebra does not close: {e}")),
    };
    let mut out = if &got == expected {
        Outcome::new(Verdict::Confirmed, "bracket table matches")
    } else {
        Outcome::new(Verdict::Failed, "bracket table differs from the stated one")
    };
    for m in 0..ops.len() {
        for n in (m + 1)..ops.len() {
            let terms: Vec<String> = got[m][n]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(kk, c)| {
                    if c == &rat(1) {
                        names[kk].clone()
                    } else {
                        format!("{c}*{}", names[kk])
                    }
                })
                .collect();
            let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            out.push(format!("[{}, {}]", names[m], names[n]), rhs);
        }
    }
    out
}

fn rates_close(
    ops: &[VectorField],
    rates: &[Expr],
    fallback: Option<&(String, Vec<Expr>)>,
) -> Outcome {
    let problem = match ExtensionProblem::new(ops.to_vec()) {
        Ok(p) => p,
        Err(e) => return Outcome::new(Verdict::Failed, format!("base algebra rejected: {e}")),
    };
    let residuals = problem.verify(rates);
    if residuals.is_empty() {
        let mut out = Outcome::new(Verdict::Confirmed, "rates satisfy the determining equations");
        out.push("rates", fmt_exprs(rates));
        return out;
    }
    let mut out;
    if let Some((label, alt)) = fallback {
        if problem.verify(alt).is_empty() {
            out = Outcome::new(
                Verdict::Corrected,
                format!("stated rates fail; {label} satisfies the determining equations"),
            );
            out.push("corrected_rates", fmt_exprs(alt));
        } else {
            out = Outcome::new(Verdict::Failed, "stated rates and fallback both fail");
        }
    } else {
        out = Outcome::new(Verdict::Failed, "stated rates fail the determining equations");
    }
    out.push("stated_rates", fmt_exprs(rates));
    for (m, n, r) in &residuals {
        out.push(format!("residual[{m},{n}]"), r);
    }
    out
}

fn operator_form(label: &str, stated: &VectorField, recomputed: &VectorField) -> Outcome {
    let diff = stated.sub(recomputed);
    if diff.is_zero() {
        return Outcome::new(Verdict::Confirmed, format!("{label} matches the recomputation"));
    }
    let mut out = Outcome::new(
        Verdict::Corrected,
        format!("{label} differs from the recomputation in {} coefficient(s)", diff.slots().len()),
    );
    for slot in diff.slots() {
        out.push(format!("stated[{slot}]"), stated.coeff(&slot));
        out.push(format!("recomputed[{slot}]"), recomputed.coeff(&slot));
    }
    out.push("recomputed", recomputed);
    out
}

fn equation(label: &str, stated: &Expr, recomputed: &Expr) -> Outcome {
    if stated.sub(recomputed).is_zero() {
        let mut out = Outcome::new(Verdict::Confirmed, format!("{label} matches the recomputation"));
        out.push("value", recomputed);
        return out;
    }
    let mut out = Outcome::new(Verdict::Corrected, format!("{label} differs from the recomputation"));
    out.push("stated", stated);
    out.push("recomputed", recomputed);
    out
}

fn scaled_invariant(
    base: &[VectorField],
    anc: &str,
    f: &Expr,
    k: i64,
    contexts: &[ExtContext],
) -> Outcome {
    let mut admissible: Vec<(String, Vec<i64>)> = Vec::new();
    for ctx in contexts {
        let ext = extend_ops(base, anc, &ctx.rates);
        let mut powers = Vec::new();
        for kk in POWER_SEARCH {
            let theta = f.mul(&Expr::var(anc).pow_i(kk));
            match classify(&ext, &theta) {
                Ok(Classification::Absolute) => powers.push(kk),
                Ok(_) => {}
                Err(e) => {
                    return Outcome::new(Verdict::Failed, format!("classification error: {e}"))
                }
            }
        }
        admissible.push((ctx.label.clone(), powers));
    }
    let stated_holds = admissible
        .first()
        .map(|(_, p)| p.contains(&k))
        .unwrap_or(false);
    let mut out = if stated_holds {
        Outcome::new(
            Verdict::Confirmed,
            format!("absolute under {} with the stated power", contexts[0].label),
        )
    } else if let Some((label, kk)) = admissible
        .iter()
        .find_map(|(l, p)| p.first().map(|kk| (l.clone(), *kk)))
    {
        Outcome::new(
            Verdict::Corrected,
            format!("fails as stated; absolute under {label} with power {kk}"),
        )
    } else {
        Outcome::new(Verdict::Flagged, "no listed extension admits any power in the search range")
    };
    out.push("candidate", format!("({f}) * {anc}^{k}"));
    for (label, powers) in &admissible {
        let shown = if powers.is_empty() {
            "none".to_string()
        } else {
            powers.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
        };
        out.push(format!("powers[{label}]"), shown);
    }
    // Rates the statement would need, read off the base multipliers.
    if !stated_holds && k != 0 {
        match classify(base, f) {
            Ok(Classification::Absolute) => {
                out.push("required_rates", fmt_exprs(&vec![Expr::zero(); base.len()]));
            }
            Ok(Classification::Relative { multipliers }) => {
                let req: Vec<Expr> =
                    multipliers.iter().map(|l| l.scale_rat(&ratio(-1, k))).collect();
                let closes = ExtensionProblem::new(base.to_vec())
                    .map(|p| p.verify(&req).is_empty())
                    .unwrap_or(false);
                out.push("required_rates", fmt_exprs(&req));
                out.push("required_rates_close", closes);
            }
            Ok(Classification::NotInvariant { .. }) | Err(_) => {}
        }
    }
    out
}

fn classification_data(out: &mut Outcome, class: &Classification) {
    match class {
        Classification::Absolute => {
            out.push("kind", "absolute");
        }
        Classification::Relative { multipliers } => {
            out.push("kind", "proper");
            out.push("multipliers", fmt_exprs(multipliers));
        }
        Classification::NotInvariant { op, obstruction } => {
            out.push("kind", "not invariant");
            out.push("failing_op", op);
            out.push("obstruction", obstruction);
        }
    }
}

fn invariant(
    ops: &[VectorField],
    theta: &Expr,
    expect_proper: bool,
    fallback: Option<&Expr>,
) -> Outcome {
    let class = match classify(ops, theta) {
        Ok(c) => c,
        Err(e) => return Outcome::new(Verdict::Failed, format!("classification error: {e}")),
    };
    let expected_kind = if expect_proper { "proper" } else { "absolute" };
    let mut out = match &class {
        Classification::Absolute if !expect_proper => {
            Outcome::new(Verdict::Confirmed, "absolute invariant as stated")
        }
        Classification::Relative { .. } if expect_proper => {
            Outcome::new(Verdict::Confirmed, "proper relative invariant as stated")
        }
        Classification::Absolute | Classification::Relative { .. } => Outcome::new(
            Verdict::Corrected,
            format!("invariant, but not of the stated kind (expected {expected_kind})"),
        ),
        Classification::NotInvariant { op, .. } => {
            let mut out = match fallback {
                Some(fixed) => match classify(ops, fixed) {
                    Ok(Classification::NotInvariant { .. }) | Err(_) => Outcome::new(
                        Verdict::Failed,
                        "neither the stated candidate nor the correction is an invariant",
                    ),
                    Ok(fixed_class) => {
                        let mut out = Outcome::new(
                            Verdict::Corrected,
                            format!("not an invariant as stated; {fixed} verifies"),
                        );
                        out.push("corrected", fixed);
                        match &fixed_class {
                            Classification::Absolute => out.push("corrected_kind", "absolute"),
                            Classification::Relative { multipliers } => {
                                out.push("corrected_kind", "proper");
                                out.push("corrected_multipliers", fmt_exprs(multipliers));
                            }
                            Classification::NotInvariant { .. } => unreachable!(),
                        }
                        out
                    }
                },
                None => Outcome::new(Verdict::Failed, "not an invariant"),
            };
            out.push("image", ops[*op].apply(theta));
            out
        }
    };
    out.push("candidate", theta);
    classification_data(&mut out, &class);
    out
}

fn pairing(ops: &[VectorField], factors: &[(Expr, i64)], product: &Expr) -> Outcome {
    let mut recomposed = Expr::one();
    for (f, p) in factors {
        recomposed = recomposed.mul(&f.pow_i(*p));
    }
    if !recomposed.sub(product).is_zero() {
        let mut out = Outcome::new(Verdict::Failed, "factors do not multiply to the stated product");
        out.push("recomposed", recomposed);
        return out;
    }
    let mut summed = vec![Expr::zero(); ops.len()];
    let mut out = Outcome::new(Verdict::Confirmed, "multipliers cancel and the product is absolute");
    for (i, (f, p)) in factors.iter().enumerate() {
        let class = match classify(ops, f) {
            Ok(c) => c,
            Err(e) => return Outcome::new(Verdict::Failed, format!("classification error: {e}")),
        };
        let Some(lams) = class.multipliers(ops.len()) else {
            return Outcome::new(Verdict::Failed, format!("factor {f} is not an invariant"));
        };
        out.push(format!("factor[{i}]"), format!("({f})^{p}"));
        out.push(format!("multipliers[{i}]"), fmt_exprs(&lams));
        for (s, l) in summed.iter_mut().zip(&lams) {
            *s = s.add(&l.scale_rat(&rat(*p)));
        }
    }
    if summed.iter().any(|s| !s.is_zero()) {
        return Outcome::new(Verdict::Failed, "weighted multipliers do not cancel");
    }
    match classify(ops, product) {
        Ok(Classification::Absolute) => {}
        _ => return Outcome::new(Verdict::Failed, "product is not absolute"),
    }
    out.push("product", product);
    out
}

fn independence(exprs: &[Expr], coords: &[String], expected: usize, seed: u64) -> Outcome {
    let rank = match jacobian_rank(exprs, coords, seed) {
        Ok(r) => r,
        Err(e) => return Outcome::new(Verdict::Failed, format!("rank evaluation error: {e}")),
    };
    let mut out = if rank == expected {
        Outcome::new(Verdict::Confirmed, format!("rank {rank} of {} candidates", exprs.len()))
    } else {
        Outcome::new(Verdict::Failed, format!("rank {rank}, expected {expected}"))
    };
    out.push("rank", rank);
    out.push("count", exprs.len());
    out
}

fn family_dim(ops: &[VectorField], ansatz: &[Expr], expected: usize) -> Outcome {
    let ansatz = match Ansatz::new(ansatz.to_vec()) {
        Ok(a) => a,
        Err(e) => return Outcome::new(Verdict::Failed, format!("bad ansatz: {e}")),
    };
    let problem = match ExtensionProblem::new(ops.to_vec()) {
        Ok(p) => p,
        Err(e) => return Outcome::new(Verdict::Failed, format!("base algebra rejected: {e}")),
    };
    let family = match problem.solve(&ansatz) {
        Ok(f) => f,
        Err(e) => return Outcome::new(Verdict::Failed, format!("solver error: {e}")),
    };
    let mut out = if family.dim() == expected {
        Outcome::new(Verdict::Confirmed, format!("family dimension {}", family.dim()))
    } else {
        Outcome::new(
            Verdict::Failed,
            format!("family dimension {}, expected {expected}", family.dim()),
        )
    };
    out.push("dim", family.dim());
    out
}

fn scaled_family(
    ops: &[VectorField],
    anc: &str,
    ansatz: &[Expr],
    kmin: i64,
    kmax: i64,
    expected_dims: &[(i64, usize)],
    must_contain: &[(i64, Expr)],
) -> Outcome {
    let ansatz = match Ansatz::new(ansatz.to_vec()) {
        Ok(a) => a,
        Err(e) => return Outcome::new(Verdict::Failed, format!("bad ansatz: {e}")),
    };
    let sols = match solve_scaled(ops, anc, &ansatz, kmin, kmax) {
        Ok(s) => s,
        Err(e) => return Outcome::new(Verdict::Failed, format!("solver error: {e}")),
    };
    let dims: Vec<(i64, usize)> = sols.iter().map(|s| (s.k, s.members.len())).collect();
    let mut out = if dims == expected_dims {
        Outcome::new(Verdict::Confirmed, "family dimensions match at every power")
    } else {
        Outcome::new(Verdict::Failed, "family dimensions differ from the expected ones")
    };
    for (k, d) in &dims {
        out.push(format!("dim[{k}]"), d);
    }
    for (k, member) in must_contain {
        let Some(sol) = sols.iter().find(|s| s.k == *k) else {
            return Outcome::new(Verdict::Failed, format!("no solutions at power {k}"));
        };
        let span: Vec<Vec<Expr>> = sol.members.iter().map(|m| vec![m.clone()]).collect();
        if decompose_in_span(&span, &[member.clone()]).is_none() {
            let mut bad = Outcome::new(
                Verdict::Failed,
                format!("{member} is not in the solution span at power {k}"),
            );
            bad.push("members", fmt_exprs(&sol.members));
            return bad;
        }
        out.push(format!("contains[{k}]"), member);
    }
    out
}

fn transport(
    field: &VectorField,
    fwd: &[(String, Expr)],
    inv: &[(String, Expr)],
    expected: &VectorField,
) -> Outcome {
    let fwd_map = fwd.iter().cloned().collect();
    let inv_map = inv.iter().cloned().collect();
    let pushed = match field.pushforward(&fwd_map, &inv_map) {
        Ok(p) => p,
        Err(e) => return Outcome::new(Verdict::Failed, format!("transport error: {e}")),
    };
    let mut out = if pushed.sub(expected).is_zero() {
        Outcome::new(Verdict::Confirmed, "field transports to the stated form")
    } else {
        Outcome::new(Verdict::Failed, "transported field differs from the stated form")
    };
    out.push("transported", &pushed);
    out
}

fn elimination(
    ops: &[VectorField],
    anc: &str,
    f: &Expr,
    k: i64,
    rates: &[Expr],
    stated: Option<&Expr>,
) -> Outcome {
    let ext = extend_ops(ops, anc, rates);
    let theta = f.mul(&Expr::var(anc).pow_i(k));
    match classify(&ext, &theta) {
        Ok(Classification::Absolute) => {}
        Ok(_) => {
            return Outcome::new(
                Verdict::Failed,
                format!("{theta} is not absolute under the extension"),
            )
        }
        Err(e) => return Outcome::new(Verdict::Failed, format!("classification error: {e}")),
    }
    let predicted: Vec<Expr> = rates.iter().map(|a| a.scale_rat(&rat(-k))).collect();
    let class = match classify(ops, f) {
        Ok(c) => c,
        Err(e) => return Outcome::new(Verdict::Failed, format!("classification error: {e}")),
    };
    let Some(lams) = class.multipliers(ops.len()) else {
        return Outcome::new(Verdict::Failed, format!("{f} is not an invariant of the base operators"));
    };
    if lams
        .iter()
        .zip(&predicted)
        .any(|(l, p)| !l.sub(p).is_zero())
    {
        let mut out =
            Outcome::new(Verdict::Failed, "multipliers disagree with the elimination rule");
        out.push("computed", fmt_exprs(&lams));
        out.push("predicted", fmt_exprs(&predicted));
        return out;
    }
    let mut out = match stated {
        Some(s) if s.sub(f).is_zero() => {
            Outcome::new(Verdict::Confirmed, "elimination reproduces the stated invariant")
        }
        Some(s) => {
            let mut out = Outcome::new(
                Verdict::Flagged,
                format!("elimination yields {f}, but {s} is stated; both classified below"),
            );
            match classify(ops, s) {
                Ok(sc) => match sc {
                    Classification::Absolute => out.push("stated_kind", "absolute"),
                    Classification::Relative { multipliers } => {
                        out.push("stated_kind", "proper");
                        out.push("stated_multipliers", fmt_exprs(&multipliers));
                    }
                    Classification::NotInvariant { .. } => {
                        out.push("stated_kind", "not invariant")
                    }
                },
                Err(e) => out.push("stated_kind", format!("error: {e}")),
            }
            out
        }
        None => Outcome::new(Verdict::Confirmed, "elimination verified"),
    };
    out.push("extracted", f);
    out.push("extracted_multipliers", fmt_exprs(&lams));
    out
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
