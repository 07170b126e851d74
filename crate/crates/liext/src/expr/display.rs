use std::fmt;

use num::{One, Signed};

use super::atom::Atom;
use super::monomial::Monomial;
use super::poly::{Poly, Rat};
use super::Expr;

// Printing is part of the canonical-form contract: terms appear leading
// monomial first, and the printed text parses back to the identical
// expression.

pub(crate) fn format_expr(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if e.denominator().as_constant().map_or(false, |c| c.is_one()) {
        return format_poly(e.numerator(), f);
    }
    write!(f, "(")?;
    format_poly(e.numerator(), f)?;
    write!(f, ")/(")?;
    format_poly(e.denominator(), f)?;
    write!(f, ")")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_poly(self, f)
    }
}

pub(crate) fn format_poly(p: &Poly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (m, c)) in p.terms.iter().rev().enumerate() {
        if i == 0 {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        format_term(&c.abs(), m, f)?;
    }
    Ok(())
}

fn format_term(mag: &Rat, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if m.is_one() {
        return write!(f, "{mag}");
    }
    if !mag.is_one() {
        write!(f, "{mag}*")?;
    }
    for (i, (a, k)) in m.0.iter().enumerate() {
        if i > 0 {
            write!(f, "*")?;
        }
        format_atom(a, f)?;
        if *k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

fn format_atom(a: &Atom, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match a {
        Atom::Var(v) => write!(f, "{v}"),
        Atom::Exp(arg) => {
            write!(f, "exp(")?;
            format_expr(arg, f)?;
            write!(f, ")")
        }
        Atom::Func(func) => {
            write!(f, "{}(", func.label())?;
            for (i, arg) in func.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{arg}")?;
            }
            write!(f, ")")
        }
    }
}
