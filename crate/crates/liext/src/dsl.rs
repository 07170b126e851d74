//! Problem scripts: a small declarative format naming a chart, an operator
//! basis, and a list of tasks to run against them.
//!
//! ```text
//! problem "translation on the line";   # header is optional
//! vars x;
//! deps u(x);
//! aux R;
//! op Q = d/dx;
//! task check_algebra;
//! task extend ansatz = poly(x; deg <= 1);
//! task verify_adi "exp(x)/R";
//! ```
//!
//! Declarations come before tasks, every statement ends with `;`, and `#`
//! starts a comment running to end of line. Candidate expressions are given
//! as quoted strings; ansatz multiplier sets are written inline.

use std::collections::BTreeSet;

use crate::ansatz::{poly_span, Ansatz};
use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::expr::{parse_expr, parse_expr_tokens, parse_expr_with_derivations, Expr, Lexer, Token};
use crate::field::{field_from_operator_expr, VectorField};

/// Search space description: monomials in `vars` up to total degree
/// `max_deg`, times each of the `multipliers`. An empty multiplier set means
/// the plain monomial span.
#[derive(Debug, Clone)]
pub struct AnsatzSpec {
    pub vars: Vec<String>,
    pub max_deg: u32,
    pub multipliers: Vec<Expr>,
}

impl AnsatzSpec {
    pub fn build(&self) -> Result<Ansatz> {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let span = poly_span(&vars, self.max_deg);
        if self.multipliers.is_empty() {
            Ansatz::new(span)
        } else {
            Ansatz::product(&span, &self.multipliers)
        }
    }
}

/// One unit of work from a problem script.
#[derive(Debug, Clone)]
pub enum Task {
    /// Check that the operators close under commutators and report the
    /// structure constants.
    CheckAlgebra,
    /// Prolong every operator to the jet space of the given order.
    Prolong { order: u32 },
    /// Solve for every extension by the ancillary direction with rates drawn
    /// from the ansatz.
    Extend { ansatz: AnsatzSpec },
    /// Check one stated rate per operator against the closure conditions.
    VerifyExtension { rates: Vec<(String, Expr)> },
    /// Classify a candidate expression; passes when it is absolutely
    /// invariant.
    VerifyAdi { expr: Expr },
    /// Classify a candidate expression; passes when it is invariant up to
    /// multipliers, and reports them.
    VerifyRdi { expr: Expr },
    /// Search the ansatz for combinations `F` with `F*R^K` absolutely
    /// invariant, for each power in `kmin..=kmax`.
    SolveAdi { ansatz: AnsatzSpec, kmin: i64, kmax: i64 },
    /// Jacobian rank of the listed expressions versus their count.
    Independence { exprs: Vec<Expr> },
    /// Replay one case from the built in audit corpus.
    Audit { case: String },
}

/// A parsed problem script.
#[derive(Debug, Clone)]
pub struct Problem {
    pub name: Option<String>,
    pub chart: Chart,
    pub ops: Vec<(String, VectorField)>,
    pub tasks: Vec<Task>,
}

impl Problem {
    /// Operator fields in declaration order.
    pub fn fields(&self) -> Vec<VectorField> {
        self.ops.iter().map(|(_, f)| f.clone()).collect()
    }

    pub fn op_names(&self) -> Vec<&str> {
        self.ops.iter().map(|(n, _)| n.as_str()).collect()
    }
}

pub fn parse_problem(src: &str) -> Result<Problem> {
    let mut lx = Lexer::new(src)?;
    let mut name = None;
    let mut independents: Vec<String> = Vec::new();
    let mut dependents: Vec<(String, Vec<String>)> = Vec::new();
    let mut ancillary: Option<String> = None;
    let mut ops: Vec<(String, VectorField)> = Vec::new();
    let mut tasks: Vec<Task> = Vec::new();

    if peek_keyword(&lx, "problem") {
        lx.bump();
        name = Some(expect_str(&mut lx)?);
        lx.expect_sym(';')?;
    }

    while !lx.at_end() {
        let at = lx.pos();
        let kw = lx.expect_ident()?;
        let is_decl = matches!(kw.as_str(), "vars" | "deps" | "aux" | "op");
        if is_decl && !tasks.is_empty() {
            return Err(Error::Parse {
                pos: at,
                msg: "declarations must come before tasks".to_string(),
            });
        }
        match kw.as_str() {
            "vars" => {
                independents.extend(ident_list(&mut lx)?);
                lx.expect_sym(';')?;
            }
            "deps" => {
                let dep = lx.expect_ident()?;
                lx.expect_sym('(')?;
                let args = ident_list(&mut lx)?;
                lx.expect_sym(')')?;
                lx.expect_sym(';')?;
                dependents.push((dep, args));
            }
            "aux" => {
                if ancillary.is_some() {
                    return Err(Error::Parse {
                        pos: at,
                        msg: "at most one ancillary variable".to_string(),
                    });
                }
                ancillary = Some(lx.expect_ident()?);
                lx.expect_sym(';')?;
            }
            "op" => {
                let op_name = lx.expect_ident()?;
                if ops.iter().any(|(n, _)| *n == op_name) {
                    return Err(Error::Parse {
                        pos: at,
                        msg: format!("operator '{op_name}' is declared twice"),
                    });
                }
                lx.expect_sym('=')?;
                let e = parse_expr_with_derivations(&mut lx)?;
                let field = field_from_operator_expr(&e)?;
                lx.expect_sym(';')?;
                ops.push((op_name, field));
            }
            "task" => {
                tasks.push(parse_task(&mut lx)?);
                lx.expect_sym(';')?;
            }
            other => {
                return Err(Error::Parse {
                    pos: at,
                    msg: format!(
                        "unknown directive '{other}'; expected vars, deps, aux, op, or task"
                    ),
                });
            }
        }
    }

    if independents.is_empty() {
        return Err(Error::Script("a script needs at least a 'vars' declaration".to_string()));
    }
    let ind: Vec<&str> = independents.iter().map(String::as_str).collect();
    let dep_args: Vec<(&str, Vec<&str>)> = dependents
        .iter()
        .map(|(d, a)| (d.as_str(), a.iter().map(String::as_str).collect()))
        .collect();
    let deps: Vec<(&str, &[&str])> = dep_args.iter().map(|(d, a)| (*d, a.as_slice())).collect();
    let chart = Chart::new(&ind, &deps, ancillary.as_deref())?;

    let mut allowed: BTreeSet<String> = chart.base_names().into_iter().collect();
    if let Some(r) = chart.ancillary() {
        allowed.insert(r.to_string());
    }
    for (op_name, field) in &ops {
        for slot in field.slots() {
            if !allowed.contains(&slot) {
                return Err(Error::Script(format!(
                    "operator '{op_name}' differentiates along undeclared coordinate '{slot}'"
                )));
            }
            for v in field.coeff(&slot).collect_vars() {
                if !allowed.contains(&v) {
                    return Err(Error::Script(format!(
                        "operator '{op_name}' mentions undeclared variable '{v}'"
                    )));
                }
            }
        }
    }

    for t in &tasks {
        let needs_ops = !matches!(t, Task::Audit { .. } | Task::Independence { .. });
        if needs_ops && ops.is_empty() {
            return Err(Error::Script(
                "the script runs operator tasks but declares no operators".to_string(),
            ));
        }
        let needs_aux = matches!(
            t,
            Task::Extend { .. } | Task::SolveAdi { .. } | Task::VerifyExtension { .. }
        );
        if needs_aux && ancillary.is_none() {
            return Err(Error::Script(
                "extension tasks need an 'aux' declaration".to_string(),
            ));
        }
        if let Task::VerifyExtension { rates } = t {
            let mut seen = BTreeSet::new();
            for (op_name, _) in rates {
                if !ops.iter().any(|(n, _)| n == op_name) {
                    return Err(Error::Script(format!(
                        "verify_extension names unknown operator '{op_name}'"
                    )));
                }
                if !seen.insert(op_name.clone()) {
                    return Err(Error::Script(format!(
                        "verify_extension repeats operator '{op_name}'"
                    )));
                }
            }
            if rates.len() != ops.len() {
                return Err(Error::Script(
                    "verify_extension needs exactly one rate per declared operator".to_string(),
                ));
            }
        }
    }

    Ok(Problem { name, chart, ops, tasks })
}

fn parse_task(lx: &mut Lexer) -> Result<Task> {
    let at = lx.pos();
    let kw = lx.expect_ident()?;
    match kw.as_str() {
        "check_algebra" => Ok(Task::CheckAlgebra),
        "prolong" => {
            expect_keyword(lx, "order")?;
            lx.expect_sym('=')?;
            let n = expect_int(lx)?;
            if n < 1 {
                return Err(lx.err("prolongation order must be at least 1"));
            }
            Ok(Task::Prolong { order: n as u32 })
        }
        "extend" => {
            expect_keyword(lx, "ansatz")?;
            lx.expect_sym('=')?;
            Ok(Task::Extend { ansatz: parse_ansatz(lx)? })
        }
        "verify_extension" => {
            lx.expect_sym('{')?;
            let mut rates = Vec::new();
            if !lx.eat_sym('}') {
                loop {
                    let op_name = lx.expect_ident()?;
                    lx.expect_sym('=')?;
                    rates.push((op_name, expect_expr_str(lx)?));
                    if lx.eat_sym(',') {
                        continue;
                    }
                    lx.expect_sym('}')?;
                    break;
                }
            }
            Ok(Task::VerifyExtension { rates })
        }
        "verify_adi" => Ok(Task::VerifyAdi { expr: expect_expr_str(lx)? }),
        "verify_rdi" => Ok(Task::VerifyRdi { expr: expect_expr_str(lx)? }),
        "solve_adi" => {
            expect_keyword(lx, "ansatz")?;
            lx.expect_sym('=')?;
            let ansatz = parse_ansatz(lx)?;
            expect_keyword(lx, "kmin")?;
            lx.expect_sym('=')?;
            let kmin = expect_int(lx)?;
            expect_keyword(lx, "kmax")?;
            lx.expect_sym('=')?;
            let kmax = expect_int(lx)?;
            if kmin > kmax {
                return Err(lx.err("kmin exceeds kmax"));
            }
            Ok(Task::SolveAdi { ansatz, kmin, kmax })
        }
        "independence" => {
            lx.expect_sym('{')?;
            let mut exprs = vec![expect_expr_str(lx)?];
            while lx.eat_sym(',') {
                exprs.push(expect_expr_str(lx)?);
            }
            lx.expect_sym('}')?;
            Ok(Task::Independence { exprs })
        }
        "audit" => {
            expect_keyword(lx, "corpus")?;
            lx.expect_sym('=')?;
            Ok(Task::Audit { case: lx.expect_ident()? })
        }
        other => Err(Error::Parse { pos: at, msg: format!("unknown task '{other}'") }),
    }
}

fn parse_ansatz(lx: &mut Lexer) -> Result<AnsatzSpec> {
    expect_keyword(lx, "poly")?;
    lx.expect_sym('(')?;
    let vars = ident_list(lx)?;
    lx.expect_sym(';')?;
    expect_keyword(lx, "deg")?;
    lx.expect_sym('<')?;
    lx.expect_sym('=')?;
    let deg = expect_int(lx)?;
    if deg < 0 {
        return Err(lx.err("degree bound must be nonnegative"));
    }
    lx.expect_sym(')')?;
    let mut multipliers = Vec::new();
    if lx.eat_sym('*') {
        lx.expect_sym('{')?;
        multipliers.push(parse_expr_tokens(lx)?);
        while lx.eat_sym(',') {
            multipliers.push(parse_expr_tokens(lx)?);
        }
        lx.expect_sym('}')?;
    }
    Ok(AnsatzSpec { vars, max_deg: deg as u32, multipliers })
}

fn ident_list(lx: &mut Lexer) -> Result<Vec<String>> {
    let mut out = vec![lx.expect_ident()?];
    while lx.eat_sym(',') {
        out.push(lx.expect_ident()?);
    }
    Ok(out)
}

fn peek_keyword(lx: &Lexer, kw: &str) -> bool {
    matches!(lx.peek(), Some(Token::Ident(s)) if s == kw)
}

fn expect_keyword(lx: &mut Lexer, kw: &str) -> Result<()> {
    if peek_keyword(lx, kw) {
        lx.bump();
        Ok(())
    } else {
        Err(lx.err(format!("expected '{kw}'")))
    }
}

fn expect_str(lx: &mut Lexer) -> Result<String> {
    match lx.peek() {
        Some(Token::Str(_)) => match lx.bump() {
            Some(Token::Str(s)) => Ok(s),
            _ => unreachable!(),
        },
        _ => Err(lx.err("expected a quoted string")),
    }
}

fn expect_int(lx: &mut Lexer) -> Result<i64> {
    let neg = lx.eat_sym('-');
    match lx.peek() {
        Some(Token::Int(_)) => match lx.bump() {
            Some(Token::Int(n)) => Ok(if neg { -n } else { n }),
            _ => unreachable!(),
        },
        _ => Err(lx.err("expected an integer")),
    }
}

/// Quoted expression: the string body is parsed as closed form expression
/// text, with errors relocated to the string's position in the script.
fn expect_expr_str(lx: &mut Lexer) -> Result<Expr> {
    let at = lx.pos();
    let body = expect_str(lx)?;
    parse_expr(&body)
        .map_err(|e| Error::Parse { pos: at, msg: format!("inside quoted expression: {e}") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_script_parses() {
        let p = parse_problem("vars x; deps u(x); op Q = d/dx; task check_algebra;").unwrap();
        assert_eq!(p.name, None);
        assert_eq!(p.chart.independents(), ["x".to_string()]);
        assert_eq!(p.chart.dependents().len(), 1);
        assert_eq!(p.chart.ancillary(), None);
        assert_eq!(p.op_names(), ["Q"]);
        assert_eq!(p.tasks.len(), 1);
        assert!(matches!(p.tasks[0], Task::CheckAlgebra));
    }

    #[test]
    fn full_script_parses_every_task_kind() {
        let src = r#"
            problem "scaling with a shift";  # title
            vars x, y;
            deps u(x, y);
            aux R;
            op Q1 = d/dx;
            op Q2 = x*d/dx + d/dy;
            task check_algebra;
            task prolong order = 2;
            task extend ansatz = poly(x, y; deg <= 1);
            task verify_extension { Q1 = "0", Q2 = "1" };
            task verify_adi "u_x * R";
            task verify_rdi "u_xx";
            task solve_adi ansatz = poly(u_xx; deg <= 1) * { exp(y), exp(-y) }
                kmin = -2 kmax = 2;
            task independence { "u", "u_y", "u_x * R" };
            task audit corpus = shift;
        "#;
        let p = parse_problem(src).unwrap();
        assert_eq!(p.name.as_deref(), Some("scaling with a shift"));
        assert_eq!(p.chart.ancillary(), Some("R"));
        assert_eq!(p.op_names(), ["Q1", "Q2"]);
        assert_eq!(p.tasks.len(), 9);
        match &p.tasks[2] {
            Task::Extend { ansatz } => {
                assert_eq!(ansatz.vars, ["x", "y"]);
                assert_eq!(ansatz.max_deg, 1);
                assert!(ansatz.multipliers.is_empty());
                assert_eq!(ansatz.build().unwrap().dim(), 3);
            }
            other => panic!("expected extend, got {other:?}"),
        }
        match &p.tasks[6] {
            Task::SolveAdi { ansatz, kmin, kmax } => {
                assert_eq!((*kmin, *kmax), (-2, 2));
                assert_eq!(ansatz.multipliers.len(), 2);
                assert_eq!(ansatz.build().unwrap().dim(), 4);
            }
            other => panic!("expected solve_adi, got {other:?}"),
        }
        match &p.tasks[8] {
            Task::Audit { case } => assert_eq!(case, "shift"),
            other => panic!("expected audit, got {other:?}"),
        }
    }

    #[test]
    fn declarations_after_tasks_are_rejected() {
        let err = parse_problem("vars x; deps u(x); op Q = d/dx; task check_algebra; aux R;")
            .unwrap_err();
        assert!(err.to_string().contains("declarations must come before tasks"));
    }

    #[test]
    fn second_ancillary_is_rejected() {
        let err =
            parse_problem("vars x; deps u(x); aux R; aux S; op Q = d/dx; task check_algebra;")
                .unwrap_err();
        assert!(err.to_string().contains("at most one ancillary"));
    }

    #[test]
    fn duplicate_operator_name_is_rejected() {
        let err = parse_problem("vars x; deps u(x); op Q = d/dx; op Q = x*d/dx; task check_algebra;")
            .unwrap_err();
        assert!(err.to_string().contains("declared twice"));
    }

    #[test]
    fn undeclared_coordinates_in_operators_are_rejected() {
        let err =
            parse_problem("vars x; deps u(x); op Q = d/dy; task check_algebra;").unwrap_err();
        assert!(err.to_string().contains("undeclared coordinate 'y'"));
        let err = parse_problem("vars x; deps u(x); op Q = y*d/dx; task check_algebra;")
            .unwrap_err();
        assert!(err.to_string().contains("undeclared variable 'y'"));
    }

    #[test]
    fn extension_tasks_demand_an_ancillary() {
        let err = parse_problem(
            "vars x; deps u(x); op Q = d/dx; task extend ansatz = poly(x; deg <= 1);",
        )
        .unwrap_err();
        assert!(err.to_string().contains("'aux'"));
    }

    #[test]
    fn rate_lists_must_cover_the_operator_basis() {
        let base = "vars x; deps u(x); aux R; op Q1 = d/dx; op Q2 = x*d/dx; ";
        let err = parse_problem(&format!("{base}task verify_extension {{ Q1 = \"0\" }};"))
            .unwrap_err();
        assert!(err.to_string().contains("one rate per declared operator"));
        let err = parse_problem(&format!(
            "{base}task verify_extension {{ Q1 = \"0\", Q9 = \"1\" }};"
        ))
        .unwrap_err();
        assert!(err.to_string().contains("unknown operator 'Q9'"));
    }

    #[test]
    fn bad_quoted_expression_reports_the_inner_error() {
        let err = parse_problem("vars x; deps u(x); op Q = d/dx; task verify_adi \"u_x +\";")
            .unwrap_err();
        assert!(err.to_string().contains("inside quoted expression"));
    }

    #[test]
    fn unknown_directives_and_tasks_are_rejected() {
        let err = parse_problem("vars x; deps u(x); op Q = d/dx; frobnicate;").unwrap_err();
        assert!(err.to_string().contains("unknown directive 'frobnicate'"));
        let err = parse_problem("vars x; deps u(x); op Q = d/dx; task frobnicate;").unwrap_err();
        assert!(err.to_string().contains("unknown task 'frobnicate'"));
    }
}
