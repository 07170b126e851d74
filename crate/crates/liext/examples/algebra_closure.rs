//! Check whether operator sets close under the commutator and print their
//! bracket tables.

use liext::{parse_field, structure_constants, VectorField};
use num::{One, Zero};

fn table(names: &[&str], ops: &[VectorField]) {
    match structure_constants(ops) {
        Ok(c) => {
            for m in 0..ops.len() {
                for n in (m + 1)..ops.len() {
                    let terms: Vec<String> = c[m][n]
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(k, v)| {
                            if v.is_one() {
                                names[k].to_string()
                            } else {
                                format!("{v}*{}", names[k])
                            }
                        })
                        .collect();
                    let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                    println!("  [{}, {}] = {rhs}", names[m], names[n]);
                }
            }
        }
        Err(e) => println!("  does not close: {e}"),
    }
}

fn main() {
    let f = |s: &str| parse_field(s).unwrap();

    println!("translations and a boost:");
    table(
        &["Pt", "Px", "J"],
        &[f("d/dt"), f("d/dx"), f("t*d/dx + x*d/dt")],
    );

    println!("translation and scaling:");
    table(&["Q1", "Q2"], &[f("d/dx"), f("x*d/dx")]);

    // [d/dx, x^2 d/dx] = 2x d/dx is outside the span, so this pair is not
    // a basis of a two-dimensional algebra.
    println!("translation and a quadratic coefficient:");
    table(&["Q1", "Q2"], &[f("d/dx"), f("x^2*d/dx")]);
}
