//! Transport vector fields along invertible changes of coordinates.

use std::collections::BTreeMap;

use liext::{parse_expr, parse_field, Expr};

fn map(pairs: &[(&str, &str)]) -> BTreeMap<String, Expr> {
    pairs
        .iter()
        .map(|(v, src)| (v.to_string(), parse_expr(src).unwrap()))
        .collect()
}

fn main() {
    // Straightening: rescaling R by exp(-x) removes the extension term.
    let q = parse_field("d/dx + R*d/dR").unwrap();
    let fwd = map(&[("x", "x"), ("R", "R*exp(-x)")]);
    let inv = map(&[("x", "x"), ("R", "R*exp(x)")]);
    println!("{q}  ->  {}", q.pushforward(&fwd, &inv).unwrap());

    // Coordinate inversion y = 1/x reverses the scaling operator and turns
    // the translation into a quadratic field.
    let fwd = map(&[("y", "1/x")]);
    let inv = map(&[("x", "1/y")]);
    for src in ["x*d/dx", "d/dx"] {
        let v = parse_field(src).unwrap();
        println!("{v}  ->  {}", v.pushforward(&fwd, &inv).unwrap());
    }

    // A pair that does not compose to the identity is rejected up front.
    let fwd = map(&[("y", "x^2")]);
    let inv = map(&[("x", "y")]);
    match parse_field("d/dx").unwrap().pushforward(&fwd, &inv) {
        Ok(out) => println!("unexpected: {out}"),
        Err(e) => println!("rejected: {e}"),
    }
}
