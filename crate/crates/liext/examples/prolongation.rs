//! Prolong vector fields to second-order jet space and expand a total
//! derivative.

use liext::{parse_expr, parse_field, Chart, JetSpace};

fn main() {
    let chart = Chart::new(&["t", "x"], &[("u", &["t", "x"])], None).unwrap();
    let js = JetSpace::new(&chart, 2);

    println!("jet coordinates: {}", js.coords().join(", "));

    for src in ["d/dt", "t*d/dx + x*d/dt", "t*d/dx + x*d/dt + u*d/du"] {
        let q = parse_field(src).unwrap();
        println!("pr({src}) = {}", js.prolong(&q).unwrap());
    }

    // The total derivative sees u and its derivatives as functions of t, x.
    let g = parse_expr("u*u_x").unwrap();
    println!("D_t({g}) = {}", js.total_derivative(&g, "t").unwrap());
    println!("D_x({g}) = {}", js.total_derivative(&g, "x").unwrap());
}
