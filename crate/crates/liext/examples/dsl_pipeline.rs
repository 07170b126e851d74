//! Drive the whole pipeline from an inline script and print the report.

use liext::{parse_problem, run_problem, Format};
use liext::sample::DEFAULT_SEED;

const SCRIPT: &str = r#"
problem "scaling pair on the line";
vars x;
deps u(x);
aux R;
op Q1 = d/dx;
op Q2 = x*d/dx + R*d/dR;
task check_algebra;
task prolong order = 2;
task verify_extension { Q1 = "0", Q2 = "1" };
task extend ansatz = poly(x; deg <= 1);
task verify_adi "u_x * R";
task verify_rdi "u_xx";
task solve_adi ansatz = poly(u_x, u_xx; deg <= 1) kmin = 0 kmax = 2;
task independence { "x", "u", "u_x * R" };
task audit corpus = t1;
"#;

fn main() {
    let problem = parse_problem(SCRIPT).expect("script parses");
    let report = run_problem(&problem, SCRIPT, DEFAULT_SEED);
    print!("{}", report.render(Format::Text));
    println!();
    println!("exit code would be {}", report.exit_code());
}
