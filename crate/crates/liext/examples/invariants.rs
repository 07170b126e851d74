//! Classify differential invariants of the prolonged boost algebra and
//! search for scaled invariants of an extended translation operator.

use liext::{
    classify, parse_expr, parse_field, poly_span, solve_scaled, Ansatz, Chart, Classification,
    JetSpace,
};

fn main() {
    let chart = Chart::new(&["t", "x"], &[("u", &["t", "x"])], None).unwrap();
    let js = JetSpace::new(&chart, 2);
    let ops: Vec<_> = ["d/dt", "d/dx", "t*d/dx + x*d/dt"]
        .iter()
        .map(|s| js.prolong(&parse_field(s).unwrap()).unwrap())
        .collect();

    for src in [
        "u",
        "u_t^2 - u_x^2",
        "u_t - u_x",
        "u_tt + 2*u_tx + u_xx",
        "u_t + u_tt",
    ] {
        let theta = parse_expr(src).unwrap();
        match classify(&ops, &theta).unwrap() {
            Classification::Absolute => println!("{src}: absolute invariant"),
            Classification::Relative { multipliers } => {
                let shown: Vec<String> = multipliers.iter().map(|m| m.to_string()).collect();
                println!("{src}: relative invariant, multipliers ({})", shown.join(", "));
            }
            Classification::NotInvariant { op, obstruction } => {
                println!("{src}: not invariant, operator {op} maps it to {obstruction}");
            }
        }
    }

    // F R^K is absolute for the extended operator d/dx + R d/dR exactly
    // when F solves F' + K F = 0; the exponential ansatz catches K = -1..1.
    let q = parse_field("d/dx + R*d/dR").unwrap();
    let span = vec![
        parse_expr("1").unwrap(),
        parse_expr("exp(x)").unwrap(),
        parse_expr("exp(-x)").unwrap(),
    ];
    for sol in solve_scaled(&[q], "R", &Ansatz::new(span).unwrap(), -2, 2).unwrap() {
        let shown: Vec<String> = sol.members.iter().map(|m| m.to_string()).collect();
        println!("K = {}: {}", sol.k, shown.join(", "));
    }

    // Polynomial ansatz on the second derivatives under the shifted boost.
    let shifted: Vec<_> = {
        let mut v = ops.clone();
        let shift = parse_field("R*d/dR").unwrap();
        let last = v.pop().unwrap();
        v.push(last.add(&shift));
        v
    };
    let ansatz = Ansatz::new(poly_span(&["u_tt", "u_tx", "u_xx"], 1)).unwrap();
    for sol in solve_scaled(&shifted, "R", &ansatz, -2, 2).unwrap() {
        let shown: Vec<String> = sol.members.iter().map(|m| m.to_string()).collect();
        println!("degree 1, K = {}: {}", sol.k, shown.join(", "));
    }
}
