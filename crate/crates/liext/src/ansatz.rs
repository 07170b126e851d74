use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::field::span_rank;

/// Finite dimensional search space for unknown coefficient functions: a list
/// of generators whose rational span is scanned by the solvers. Generators
/// must be linearly independent so that solution dimensions mean what they
/// say.
#[derive(Debug, Clone)]
pub struct Ansatz {
    basis: Vec<Expr>,
}

impl Ansatz {
    pub fn new(basis: Vec<Expr>) -> Result<Ansatz> {
        let nonzero: Vec<Expr> = basis.into_iter().filter(|e| !e.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let vectors: Vec<Vec<Expr>> = nonzero.iter().map(|e| vec![e.clone()]).collect();
        if span_rank(&vectors) != nonzero.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Ansatz { basis: nonzero })
    }

    /// Product ansatz: every generator of `span` times every multiplier.
    pub fn product(span: &[Expr], multipliers: &[Expr]) -> Result<Ansatz> {
        let mut basis = Vec::with_capacity(span.len() * multipliers.len());
        for m in multipliers {
            for s in span {
                basis.push(s.mul(m));
            }
        }
        Ansatz::new(basis)
    }

    pub fn basis(&self) -> &[Expr] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Monomials in the given variables up to the given total degree, graded
/// lexicographic, starting with 1.
pub fn poly_span(vars: &[&str], max_deg: u32) -> Vec<Expr> {
    let mut out = vec![Expr::one()];
    // Each level element remembers the index of the last variable used, and
    // extends only by that variable or later ones, so every monomial appears
    // exactly once.
    let mut level: Vec<(Expr, usize)> = vec![(Expr::one(), 0)];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for (e, floor) in &level {
            for (i, v) in vars.iter().enumerate().skip(*floor) {
                next.push((e.mul(&Expr::var(v)), i));
            }
        }
        out.extend(next.iter().map(|(e, _)| e.clone()));
        level = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    #[test]
    fn poly_span_enumerates_graded_monomials() {
        let span = poly_span(&["t", "x"], 2);
        let expect: Vec<Expr> = ["1", "t", "x", "t^2", "t*x", "x^2"]
            .iter()
            .map(|s| parse_expr(s).unwrap())
            .collect();
        assert_eq!(span, expect);
        assert_eq!(poly_span(&["x"], 0), vec![Expr::one()]);
    }

    #[test]
    fn ansatz_rejects_dependent_generators() {
        let a = parse_expr("x + 1").unwrap();
        let b = parse_expr("2*x + 2").unwrap();
        assert!(matches!(
            Ansatz::new(vec![a.clone(), b]),
            Err(Error::DependentBasis)
        ));
        let ok = Ansatz::new(vec![a, parse_expr("x - 1").unwrap()]).unwrap();
        assert_eq!(ok.dim(), 2);
    }

    #[test]
    fn product_ansatz_spans_products() {
        let span = poly_span(&["x"], 1);
        let mult = vec![Expr::one(), parse_expr("exp(x)").unwrap()];
        let a = Ansatz::product(&span, &mult).unwrap();
        assert_eq!(a.dim(), 4);
        let expect: Vec<Expr> = ["1", "x", "exp(x)", "x*exp(x)"]
            .iter()
            .map(|s| parse_expr(s).unwrap())
            .collect();
        assert_eq!(a.basis(), &expect[..]);
    }
}
