//! Solve the determining equations for ancillary extension rates, both with
//! opaque coefficient functions and inside a polynomial ansatz.

use liext::{parse_field, poly_span, Ansatz, Expr, ExtensionProblem};

fn main() {
    let ops = vec![
        parse_field("d/dt").unwrap(),
        parse_field("d/dx").unwrap(),
        parse_field("t*d/dx + x*d/dt").unwrap(),
    ];
    let problem = ExtensionProblem::new(ops).unwrap();

    // General solution: a = Phi_t, b = Phi_x, c = t Phi_x + x Phi_t + C for
    // an arbitrary Phi(t, x). The residuals vanish identically.
    let phi = Expr::func("Phi", &["t", "x"]);
    let t = Expr::var("t");
    let x = Expr::var("x");
    let rates = vec![
        phi.diff("t"),
        phi.diff("x"),
        t.mul(&phi.diff("x")).add(&x.mul(&phi.diff("t"))).add(&Expr::var("C")),
    ];
    println!("opaque general rates close: {}", problem.verify(&rates).is_empty());

    // Restricting the rates to polynomials of bounded degree turns the
    // determining equations into a finite linear system.
    for deg in 1..=2 {
        let family = problem.solve(&Ansatz::new(poly_span(&["t", "x"], deg)).unwrap()).unwrap();
        println!("degree <= {deg}: family of dimension {}", family.dim());
        for member in &family.members {
            let shown: Vec<String> = member.iter().map(|m| m.to_string()).collect();
            println!("  ({})", shown.join(", "));
        }
    }
}
