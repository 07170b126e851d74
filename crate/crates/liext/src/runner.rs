//! Task execution: turn a parsed problem into a report, one section per
//! task, executed in script order. A task whose claim does not hold, or
//! whose computation errors out, yields a failed section; the run itself
//! keeps going and the report's exit code remembers.

use num::{One, Signed, Zero};

use crate::audit::{self, Verdict};
use crate::corpus::{self, CorpusCase};
use crate::dsl::{Problem, Task};
use crate::error::Result;
use crate::expr::{Expr, Rat};
use crate::extension::ExtensionProblem;
use crate::field::structure_constants;
use crate::invariant::{classify, jacobian_rank, solve_scaled, Classification};
use crate::jet::JetSpace;
use crate::report::{Report, Section};

/// Jet order used to sniff derivative coordinates out of task expressions
/// before the working jet space exists.
const PROBE_ORDER: u32 = 6;

pub fn run_problem(problem: &Problem, source: &str, seed: u64) -> Report {
    let label = problem.name.clone().unwrap_or_else(|| "unnamed".to_string());
    let mut report = Report::new(label, source, seed);

    let fields = problem.fields();
    let names = problem.op_names();

    let probe = JetSpace::new(&problem.chart, PROBE_ORDER);
    let mut order = 0;
    for t in &problem.tasks {
        match t {
            Task::Prolong { order: n } => order = order.max(*n),
            Task::VerifyAdi { expr } | Task::VerifyRdi { expr } => {
                order = order.max(probe.order_of(expr));
            }
            Task::SolveAdi { ansatz, .. } => {
                for v in &ansatz.vars {
                    order = order.max(probe.order_of(&Expr::var(v)));
                }
                for m in &ansatz.multipliers {
                    order = order.max(probe.order_of(m));
                }
            }
            Task::Independence { exprs } => {
                for e in exprs {
                    order = order.max(probe.order_of(e));
                }
            }
            _ => {}
        }
    }
    let jet = JetSpace::new(&problem.chart, order);
    let needs_prolonged = problem.tasks.iter().any(|t| {
        matches!(t, Task::VerifyAdi { .. } | Task::VerifyRdi { .. } | Task::SolveAdi { .. })
    });
    let prolonged: Result<Vec<_>> = if needs_prolonged {
        fields.iter().map(|f| jet.prolong(f)).collect()
    } else {
        Ok(Vec::new())
    };

    for t in &problem.tasks {
        let section = match t {
            Task::CheckAlgebra => check_algebra(&fields, &names),
            Task::Prolong { order } => prolong_section(problem, &names, *order),
            Task::Extend { ansatz } => extend_section(problem, &names, ansatz),
            Task::VerifyExtension { rates } => verify_extension(problem, &names, rates),
            Task::VerifyAdi { expr } => {
                let mut s = Section::new(format!("verify_adi {expr}"));
                match &prolonged {
                    Ok(ops) => classify_into(&mut s, ops, &names, expr, true),
                    Err(e) => fail(&mut s, e),
                }
                s
            }
            Task::VerifyRdi { expr } => {
                let mut s = Section::new(format!("verify_rdi {expr}"));
                match &prolonged {
                    Ok(ops) => classify_into(&mut s, ops, &names, expr, false),
                    Err(e) => fail(&mut s, e),
                }
                s
            }
            Task::SolveAdi { ansatz, kmin, kmax } => {
                let mut s = Section::new(format!("solve_adi K in [{kmin}, {kmax}]"));
                let anc = problem.chart.ancillary().expect("validated at parse time");
                match (&prolonged, ansatz.build()) {
                    (Ok(ops), Ok(anz)) => match solve_scaled(ops, anc, &anz, *kmin, *kmax) {
                        Ok(sols) => {
                            s.datum("powers", sols.len());
                            for sol in &sols {
                                s.line(format!(
                                    "K = {}: {}",
                                    sol.k,
                                    join(sol.members.iter(), ", ")
                                ));
                                s.datum(format!("K[{}].dim", sol.k), sol.members.len());
                                for (j, m) in sol.members.iter().enumerate() {
                                    s.datum(format!("K[{}].member[{j}]", sol.k), m);
                                }
                            }
                        }
                        Err(e) => fail(&mut s, &e),
                    },
                    (Err(e), _) => fail(&mut s, e),
                    (_, Err(e)) => fail(&mut s, &e),
                }
                s
            }
            Task::Independence { exprs } => {
                let mut s = Section::new("independence");
                let mut coords = jet.coords();
                if let Some(r) = problem.chart.ancillary() {
                    coords.push(r.to_string());
                }
                match jacobian_rank(exprs, &coords, seed) {
                    Ok(rank) => {
                        s.line(format!("jacobian rank {rank} of {} candidates", exprs.len()));
                        s.datum("count", exprs.len());
                        s.datum("rank", rank);
                        if rank == exprs.len() {
                            s.line("functionally independent");
                            s.datum("independent", "yes");
                        } else {
                            s.fail("failed");
                            s.datum("independent", "no");
                        }
                    }
                    Err(e) => fail(&mut s, &e),
                }
                s
            }
            Task::Audit { case } => match corpus::find(case) {
                Ok(c) => case_section(&c, seed),
                Err(e) => {
                    let mut s = Section::new(format!("audit {case}"));
                    fail(&mut s, &e);
                    s
                }
            },
        };
        report.push(section);
    }
    report
}

/// Replay every audit entry of one corpus case into a section. Corrections
/// soften the status label; only violated expectations fail the section.
pub fn case_section(case: &CorpusCase, seed: u64) -> Section {
    let mut s = Section::new(format!("audit {}", case.id));
    s.line(case.title.to_string());
    let mut tally = Tally::default();
    for entry in case.entries() {
        let f = audit::run_entry(&entry, seed);
        tally.add(f.verdict, f.is_violation());
        s.line(format!("[{}] {}: {}", f.verdict.as_str(), f.id, f.summary));
        s.datum(format!("{}.verdict", f.id), f.verdict.as_str());
        for (k, v) in &f.data {
            s.datum(format!("{}.{k}", f.id), v);
        }
    }
    s.datum("entries", tally.total());
    s.datum("violations", tally.violations);
    if tally.violations > 0 {
        s.fail("failed");
    } else if tally.corrected + tally.flagged > 0 {
        s.note_status("corrected");
    }
    s
}

/// Report over a selection of corpus cases (all of them by default), with a
/// closing tally of verdicts.
pub fn corpus_report(ids: &[String], seed: u64) -> Result<Report> {
    let selected: Vec<CorpusCase> = if ids.is_empty() {
        corpus::cases()
    } else {
        ids.iter().map(|id| corpus::find(id)).collect::<Result<_>>()?
    };
    let listing = join(selected.iter().map(|c| c.id), ",");
    let mut report = Report::new("corpus", &listing, seed);
    let mut tally = Tally::default();
    for case in &selected {
        for entry in case.entries() {
            let f = audit::run_entry(&entry, seed);
            tally.add(f.verdict, f.is_violation());
        }
        report.push(case_section(case, seed));
    }
    let mut s = Section::new("summary");
    s.line(format!(
        "{} entries over {} cases: {} confirmed, {} corrected, {} flagged, {} failed",
        tally.total(),
        selected.len(),
        tally.confirmed,
        tally.corrected,
        tally.flagged,
        tally.failed
    ));
    s.datum("cases", selected.len());
    s.datum("entries", tally.total());
    s.datum("confirmed", tally.confirmed);
    s.datum("corrected", tally.corrected);
    s.datum("flagged", tally.flagged);
    s.datum("failed", tally.failed);
    report.push(s);
    Ok(report)
}

#[derive(Default)]
struct Tally {
    confirmed: usize,
    corrected: usize,
    flagged: usize,
    failed: usize,
    violations: usize,
}

impl Tally {
    fn add(&mut self, v: Verdict, violation: bool) {
        match v {
            Verdict::Confirmed => self.confirmed += 1,
            Verdict::Corrected => self.corrected += 1,
            Verdict::Flagged => self.flagged += 1,
            Verdict::Failed => self.failed += 1,
        }
        if violation {
            self.violations += 1;
        }
    }

    fn total(&self) -> usize {
        self.confirmed + self.corrected + self.flagged + self.failed
    }
}

fn fail(s: &mut Section, e: &impl std::fmt::Display) {
    s.fail("failed");
    let msg = e.to_string().replace('\n', " ");
    s.line(msg.clone());
    s.datum("error", msg);
}

fn check_algebra(fields: &[crate::field::VectorField], names: &[&str]) -> Section {
    let mut s = Section::new("check_algebra");
    match structure_constants(fields) {
        Ok(c) => {
            s.datum("ops", names.len());
            for m in 0..names.len() {
                for n in m + 1..names.len() {
                    s.line(format!(
                        "[{}, {}] = {}",
                        names[m],
                        names[n],
                        combo(&c[m][n], names)
                    ));
                    for (k, coeff) in c[m][n].iter().enumerate() {
                        if !coeff.is_zero() {
                            s.datum(format!("c[{m}][{n}][{k}]"), coeff);
                        }
                    }
                }
            }
            s.line("algebra closes");
        }
        Err(e) => fail(&mut s, &e),
    }
    s
}

fn prolong_section(problem: &Problem, names: &[&str], order: u32) -> Section {
    let mut s = Section::new(format!("prolong order={order}"));
    let js = JetSpace::new(&problem.chart, order);
    for (name, f) in &problem.ops {
        match js.prolong(f) {
            Ok(p) => {
                s.line(format!("pr({name}) = {p}"));
                for slot in p.slots() {
                    s.datum(format!("{name}.{slot}"), p.coeff(&slot));
                }
            }
            Err(e) => {
                s.fail("failed");
                s.line(format!("{name}: {e}"));
                s.datum(format!("{name}.error"), e.to_string().replace('\n', " "));
            }
        }
    }
    let _ = names;
    s
}

fn extend_section(problem: &Problem, names: &[&str], spec: &crate::dsl::AnsatzSpec) -> Section {
    let mut title = format!("extend poly({}; deg<={})", spec.vars.join(", "), spec.max_deg);
    if !spec.multipliers.is_empty() {
        title.push_str(&format!(" * {{{}}}", join(spec.multipliers.iter(), ", ")));
    }
    let mut s = Section::new(title);
    match (ExtensionProblem::new(problem.fields()), spec.build()) {
        (Ok(prob), Ok(anz)) => match prob.solve(&anz) {
            Ok(fam) => {
                s.line(format!("family dimension {}", fam.dim()));
                s.datum("dim", fam.dim());
                for (j, member) in fam.members.iter().enumerate() {
                    s.line(format!("a[{j}] = ({})", join(member.iter(), ", ")));
                    for (i, r) in member.iter().enumerate() {
                        s.datum(format!("a[{j}].{}", names[i]), r);
                    }
                }
            }
            Err(e) => fail(&mut s, &e),
        },
        (Err(e), _) => fail(&mut s, &e),
        (_, Err(e)) => fail(&mut s, &e),
    }
    s
}

fn verify_extension(problem: &Problem, names: &[&str], rates: &[(String, Expr)]) -> Section {
    let mut s = Section::new("verify_extension");
    let ordered: Vec<Expr> = names
        .iter()
        .map(|n| {
            rates
                .iter()
                .find(|(rn, _)| rn == n)
                .expect("validated at parse time")
                .1
                .clone()
        })
        .collect();
    for (i, name) in names.iter().enumerate() {
        s.datum(format!("rate.{name}"), &ordered[i]);
    }
    match ExtensionProblem::new(problem.fields()) {
        Ok(prob) => {
            let bad = prob.verify(&ordered);
            if bad.is_empty() {
                s.line("closure conditions hold");
                s.datum("residuals", "none");
            } else {
                s.fail("failed");
                for (m, n, r) in bad {
                    s.line(format!("residual[{}, {}] = {r}", names[m], names[n]));
                    s.datum(format!("residual[{m}][{n}]"), r);
                }
            }
        }
        Err(e) => fail(&mut s, &e),
    }
    s
}

fn classify_into(
    s: &mut Section,
    ops: &[crate::field::VectorField],
    names: &[&str],
    theta: &Expr,
    want_absolute: bool,
) {
    match classify(ops, theta) {
        Ok(c) => {
            if let Some(lams) = c.multipliers(names.len()) {
                for (name, l) in names.iter().zip(&lams) {
                    s.datum(format!("lambda.{name}"), l);
                }
            }
            match c {
                Classification::Absolute => {
                    s.datum("kind", "absolute");
                    if want_absolute {
                        s.line("absolute invariant");
                    } else {
                        s.line("absolute invariant (all multipliers vanish)");
                    }
                }
                Classification::Relative { multipliers } => {
                    s.datum("kind", "relative");
                    let shown: Vec<String> = names
                        .iter()
                        .zip(&multipliers)
                        .map(|(n, l)| format!("lambda_{n} = {l}"))
                        .collect();
                    if want_absolute {
                        s.fail("failed");
                        s.line(format!("relative, not absolute: {}", shown.join(", ")));
                    } else {
                        s.line(format!("proper relative invariant: {}", shown.join(", ")));
                    }
                }
                Classification::NotInvariant { op, obstruction } => {
                    s.fail("failed");
                    s.datum("kind", "none");
                    s.datum("op", names[op]);
                    s.datum("obstruction", &obstruction);
                    s.line(format!(
                        "image under {} is not a multiple of the candidate: {obstruction}",
                        names[op]
                    ));
                }
            }
        }
        Err(e) => fail(s, &e),
    }
}

fn combo(coeffs: &[Rat], names: &[&str]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(names[k]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn join<T: std::fmt::Display>(items: impl Iterator<Item = T>, sep: &str) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_problem;
    use crate::report::Format;
    use crate::sample::DEFAULT_SEED;

    fn run(src: &str) -> Report {
        run_problem(&parse_problem(src).unwrap(), src, DEFAULT_SEED)
    }

    #[test]
    fn translation_script_end_to_end() {
        let src = r#"
            problem "translation on the line";
            vars x;
            deps u(x);
            aux R;
            op Q = d/dx + R*d/dR;
            task check_algebra;
            task prolong order = 1;
            task verify_extension { Q = "1" };
            task extend ansatz = poly(x; deg <= 1);
            task verify_adi "exp(x)/R";
            task verify_rdi "exp(x)";
            task solve_adi ansatz = poly(x; deg <= 0) * { exp(x), exp(-x) } kmin = -1 kmax = 1;
            task independence { "x", "u_x" };
        "#;
        let report = run(src);
        assert!(!report.failed(), "{}", report.render(Format::Text));
        let text = report.render(Format::Text);
        assert!(text.contains("[Q, Q] = 0") || text.contains("algebra closes"));
        assert!(text.contains("closure conditions hold"));
        assert!(text.contains("absolute invariant"));
        assert!(text.contains("proper relative invariant: lambda_Q = 1"));
        assert!(text.contains("K = -1: exp(x)"));
        assert!(text.contains("K = 1: exp(-x)"));
        assert!(text.contains("functionally independent"));
        assert_eq!(text, run(src).render(Format::Text), "byte stable");
    }

    #[test]
    fn failed_checks_fail_the_report_but_not_the_run() {
        let src = r#"
            vars x;
            deps u(x);
            aux R;
            op Q1 = d/dx;
            op Q2 = x*d/dx;
            task verify_extension { Q1 = "1", Q2 = "1" };
            task verify_adi "u_x";
            task check_algebra;
        "#;
        let report = run(src);
        assert!(report.failed());
        assert_eq!(report.exit_code(), 1);
        assert_eq!(report.sections.len(), 3);
        assert!(report.sections[0].failed, "stated rates do not close");
        assert!(report.sections[1].failed, "u_x is not invariant under the scaling");
        assert!(!report.sections[2].failed, "the algebra itself closes");
        let text = report.render(Format::Text);
        assert!(text.contains("residual[Q1, Q2] = "));
    }

    #[test]
    fn scaling_algebra_sections_carry_structure_constants() {
        let src = r#"
            vars x, y;
            deps u(x, y);
            op Q1 = d/dx;
            op Q2 = x*d/dx;
            task check_algebra;
            task prolong order = 2;
        "#;
        let report = run(src);
        assert!(!report.failed());
        let text = report.render(Format::Text);
        assert!(text.contains("[Q1, Q2] = Q1"));
        assert!(text.contains("c[0][1][0] = 1"));
        assert!(text.contains("-2*u_xx"), "second order scaling coefficient");
    }

    #[test]
    fn module_errors_become_failed_sections() {
        let src = r#"
            vars x;
            deps u(x);
            op Q1 = d/dx;
            op Q2 = x^2*d/dx;
            task check_algebra;
        "#;
        let report = run(src);
        assert!(report.failed());
        let text = report.render(Format::Text);
        assert!(text.contains("[failed]"));
        assert!(text.contains("error = "));
    }
}
