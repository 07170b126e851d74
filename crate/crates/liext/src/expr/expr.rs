use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::atom::{Atom, FuncAtom};
use super::gcd::poly_gcd;
use super::monomial::Monomial;
use super::poly::{Poly, Rat};

/// Rational expression in canonical form: a reduced fraction of polynomials
/// over the atoms (variables, exponentials, opaque functions).
///
/// Canonical means: gcd(num, den) = 1 in the frozen atom ring, the
/// denominator has coprime integer coefficients with positive leading
/// coefficient, every monomial carries at most one exponential atom (merged,
/// power one), and the denominator's dominant monomial is exponential-free.
/// Structural equality on `Expr` therefore decides mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Expr {
    num: Poly,
    den: Poly,
}

impl Expr {
    pub fn zero() -> Expr {
        Expr { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Expr {
        Expr { num: Poly::one(), den: Poly::one() }
    }

    pub fn integer(n: i64) -> Expr {
        Expr { num: Poly::constant(Rat::from_integer(n.into())), den: Poly::one() }
    }

    /// Panics if `den == 0`; use `checked_div` for fallible division.
    pub fn rational(num: i64, den: i64) -> Expr {
        assert!(den != 0, "rational constant with zero denominator");
        Expr::from_rat(Rat::new(num.into(), den.into()))
    }

    pub fn from_rat(r: Rat) -> Expr {
        Expr { num: Poly::constant(r), den: Poly::one() }
    }

    pub fn var(name: &str) -> Expr {
        Expr { num: Poly::var(name), den: Poly::one() }
    }

    pub fn from_atom(a: Atom) -> Expr {
        Expr { num: Poly::atom(a), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Expr {
        Expr::reduce(p, Poly::one()).expect("unit denominator")
    }

    /// Exponential of a rational expression. The argument may mention plain
    /// variables only; `exp(0)` collapses to `1`.
    pub fn exp(arg: Expr) -> Result<Expr> {
        if arg.is_zero() {
            return Ok(Expr::one());
        }
        for a in arg.atoms() {
            if !matches!(a, Atom::Var(_)) {
                return Err(Error::DomainEscape(format!(
                    "exponential argument mentions non-variable atom {a}"
                )));
            }
        }
        Ok(Expr::from_atom(Atom::Exp(Box::new(arg))))
    }

    /// Opaque function symbol applied to the named variables.
    pub fn func(name: &str, args: &[&str]) -> Expr {
        Expr::from_atom(Atom::Func(FuncAtom::new(name, args)))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.as_constant().map_or(false, |c| c.is_one())
            && self.num.as_constant().map_or(false, |c| c.is_one())
    }

    /// Rational constant value, if the expression is one.
    pub fn as_rational(&self) -> Option<Rat> {
        let d = self.den.as_constant()?;
        let n = self.num.as_constant()?;
        Some(n / d)
    }

    /// Reduced canonical fraction. The only failing input is a zero
    /// denominator.
    pub fn reduce(num: Poly, den: Poly) -> Result<Expr> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Expr::zero());
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.as_constant().map_or(false, |c| c.is_one()) {
            (num, den)
        } else {
            (
                num.div_exact_raw(&g).expect("gcd divides numerator"),
                den.div_exact_raw(&g).expect("gcd divides denominator"),
            )
        };
        let (dnorm, unit) = den.normalized_primitive();
        den = dnorm;
        num = num.scale(&(Rat::one() / unit));
        let (num, den) = shift_exponentials(num, den);
        Ok(Expr { num, den })
    }

    pub fn checked_div(&self, other: &Expr) -> Result<Expr> {
        let (na, nb) = cancel(&self.num, &other.num);
        let (da, db) = cancel(&self.den, &other.den);
        Expr::reduce(na.mul(&db), da.mul(&nb))
    }

    /// Integer power; panics when inverting zero.
    pub fn pow_i(&self, k: i64) -> Expr {
        if k == 0 {
            return Expr::one();
        }
        let base = if k < 0 {
            assert!(!self.is_zero(), "zero raised to a negative power");
            Expr::reduce(self.den.clone(), self.num.clone()).expect("nonzero numerator")
        } else {
            self.clone()
        };
        let mut out = Expr::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Partial derivative with respect to the named variable. Exponentials
    /// follow the chain rule; opaque function symbols accumulate formal
    /// partials and differentiate to zero in variables they do not depend on.
    pub fn diff(&self, var: &str) -> Expr {
        let dn = diff_poly(&self.num, var);
        let dd = diff_poly(&self.den, var);
        if dd.is_zero() {
            // Common fast path: constant denominator in `var`.
            return dn
                .checked_div(&Expr::from_poly(self.den.clone()))
                .expect("denominator nonzero");
        }
        // Quotient rule assembled as (n' - n * (d'/d)) / d. Reducing d'/d
        // first cancels the repeated part of d, so no gcd in the chain ever
        // faces the squared denominator.
        let den_e = Expr { num: self.den.clone(), den: Poly::one() };
        let num_e = Expr { num: self.num.clone(), den: Poly::one() };
        let log_term = dd.checked_div(&den_e).expect("denominator nonzero");
        dn.sub(&num_e.mul(&log_term))
            .checked_div(&den_e)
            .expect("denominator nonzero")
    }

    /// Simultaneous substitution of expressions for variables. Substituting
    /// into the argument list of an opaque function symbol is rejected, as is
    /// a substitution that would nest exponentials or zero out a denominator.
    pub fn substitute(&self, map: &BTreeMap<String, Expr>) -> Result<Expr> {
        let num = substitute_poly(&self.num, map)?;
        let den = substitute_poly(&self.den, map)?;
        num.checked_div(&den)
    }

    /// Rename variables throughout, including inside exponential arguments
    /// and opaque function symbols (both their argument lists and the
    /// variables their partials were taken in).
    pub fn rename_vars(&self, map: &BTreeMap<String, String>) -> Expr {
        let num = rename_poly(&self.num, map);
        let den = rename_poly(&self.den, map);
        Expr::reduce(num, den).expect("renaming preserves nonzero denominators")
    }

    /// Exact evaluation at a rational point keyed by atom. Every atom of the
    /// expression must be bound; a vanishing denominator reports a singular
    /// point.
    pub fn eval_at(&self, point: &BTreeMap<Atom, Rat>) -> Result<Rat> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::SingularPoint);
        }
        let n = self.num.eval(point)?;
        Ok(n / d)
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = self.num.atoms();
        out.extend(self.den.atoms());
        out
    }

    /// All variable names in sight, including those inside exponential
    /// arguments and opaque function argument lists.
    pub fn collect_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.num.collect_vars(&mut out);
        self.den.collect_vars(&mut out);
        out
    }

    pub fn mentions(&self, var: &str) -> bool {
        self.collect_vars().contains(var)
    }

    pub fn add(&self, other: &Expr) -> Expr {
        // Combine over the least common denominator so the reduction never
        // sees the full product of both denominators.
        let (da, db) = cancel(&self.den, &other.den);
        let num = self.num.mul(&db).add(&other.num.mul(&da));
        let den = self.den.mul(&db);
        Expr::reduce(num, den).expect("product of nonzero denominators")
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        // Cross-cancel so products of reduced fractions stay near-reduced.
        let (na, db) = cancel(&self.num, &other.den);
        let (nb, da) = cancel(&other.num, &self.den);
        Expr::reduce(na.mul(&nb), da.mul(&db)).expect("product of nonzero denominators")
    }

    /// Panics on division by zero; `checked_div` is the fallible form.
    pub fn div(&self, other: &Expr) -> Expr {
        self.checked_div(other).expect("division by zero")
    }

    pub fn neg(&self) -> Expr {
        if self.is_zero() {
            return Expr::zero();
        }
        Expr { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale_rat(&self, r: &Rat) -> Expr {
        if r.is_zero() {
            return Expr::zero();
        }
        Expr { num: self.num.scale(r), den: self.den.clone() }
    }
}

/// Move a common exponential out of the denominator so that its dominant
/// monomial is exponential-free: `1/exp(x)` becomes `exp(-x)/1`, and
/// `1/(1 + exp(x))` becomes `exp(-x)/(1 + exp(-x))`. The dominant monomial is
/// the one with the largest exponential-free part, ties broken by the
/// shift-invariant order on exponential arguments, which makes the result
/// independent of the representative the arithmetic happened to produce.
fn shift_exponentials(num: Poly, den: Poly) -> (Poly, Poly) {
    let mut best: Option<(Monomial, Option<Expr>)> = None;
    let mut any_exp = false;
    for m in den.terms.keys() {
        let (free, arg) = m.split_exp();
        if arg.is_some() {
            any_exp = true;
        }
        match &best {
            None => best = Some((free, arg)),
            Some((bfree, barg)) => match free.cmp(bfree) {
                std::cmp::Ordering::Greater => best = Some((free, arg)),
                std::cmp::Ordering::Equal => {
                    if cmp_shift(arg.as_ref(), barg.as_ref()) == std::cmp::Ordering::Greater {
                        best = Some((free, arg));
                    }
                }
                std::cmp::Ordering::Less => {}
            },
        }
    }
    if !any_exp {
        return (num, den);
    }
    let q = match best {
        Some((_, Some(q))) => q,
        _ => return (num, den),
    };
    let shift = Poly::atom(Atom::Exp(Box::new(q.neg())));
    (num.mul(&shift), den.mul(&shift))
}

/// Order on exponential arguments that commutes with a common shift:
/// compare by the sign of the leading numerator coefficient of `a - b`.
/// Absent arguments count as zero.
fn cmp_shift(a: Option<&Expr>, b: Option<&Expr>) -> std::cmp::Ordering {
    let zero = Expr::zero();
    let a = a.unwrap_or(&zero);
    let b = b.unwrap_or(&zero);
    let d = a.sub(b);
    match d.num.leading() {
        None => std::cmp::Ordering::Equal,
        Some((_, c)) => {
            if c.is_positive() {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Less
            }
        }
    }
}

/// Cofactors after dividing out the gcd of two polynomials.
fn cancel(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let g = poly_gcd(a, b);
    if g.as_constant().map_or(false, |c| c.is_one()) {
        (a.clone(), b.clone())
    } else {
        (
            a.div_exact_raw(&g).expect("gcd divides both operands"),
            b.div_exact_raw(&g).expect("gcd divides both operands"),
        )
    }
}

fn diff_atom(a: &Atom, var: &str) -> Expr {
    match a {
        Atom::Var(v) => {
            if v == var {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Atom::Exp(arg) => Expr::from_atom(a.clone()).mul(&arg.diff(var)),
        Atom::Func(f) => {
            if f.args.iter().any(|x| x == var) {
                Expr::from_atom(Atom::Func(f.derived(var)))
            } else {
                Expr::zero()
            }
        }
    }
}

fn diff_poly(p: &Poly, var: &str) -> Expr {
    let mut out = Expr::zero();
    for (m, c) in &p.terms {
        for (i, (a, k)) in m.0.iter().enumerate() {
            let da = diff_atom(a, var);
            if da.is_zero() {
                continue;
            }
            let mut rest = Monomial(m.0.clone());
            if *k == 1 {
                rest.0.remove(i);
            } else {
                rest.0[i].1 = k - 1;
            }
            let mut term = Poly::zero();
            term.add_term(rest.merged(), c * Rat::from_integer((*k).into()));
            out = out.add(&Expr::from_poly(term).mul(&da));
        }
    }
    out
}

fn substitute_atom(a: &Atom, map: &BTreeMap<String, Expr>) -> Result<Expr> {
    match a {
        Atom::Var(v) => Ok(map.get(v).cloned().unwrap_or_else(|| Expr::var(v))),
        Atom::Exp(arg) => Expr::exp(arg.substitute(map)?),
        Atom::Func(f) => {
            if let Some(hit) = f.args.iter().find(|x| map.contains_key(*x)) {
                Err(Error::SubstituteOpaque(format!(
                    "cannot substitute for {hit} inside {}",
                    f.label()
                )))
            } else {
                Ok(Expr::from_atom(a.clone()))
            }
        }
    }
}

fn substitute_poly(p: &Poly, map: &BTreeMap<String, Expr>) -> Result<Expr> {
    let mut out = Expr::zero();
    for (m, c) in &p.terms {
        let mut term = Expr::from_rat(c.clone());
        for (a, k) in &m.0 {
            let repl = substitute_atom(a, map)?;
            if repl.is_zero() {
                term = Expr::zero();
                break;
            }
            term = term.mul(&repl.pow_i(*k as i64));
        }
        out = out.add(&term);
    }
    Ok(out)
}

fn rename_atom(a: &Atom, map: &BTreeMap<String, String>) -> Atom {
    let rn = |s: &String| map.get(s).cloned().unwrap_or_else(|| s.clone());
    match a {
        Atom::Var(v) => Atom::Var(rn(v)),
        Atom::Exp(arg) => Atom::Exp(Box::new(arg.rename_vars(map))),
        Atom::Func(f) => {
            let mut nf = FuncAtom {
                name: f.name.clone(),
                args: f.args.iter().map(rn).collect(),
                partials: f.partials.iter().map(rn).collect(),
            };
            nf.partials.sort();
            Atom::Func(nf)
        }
    }
}

fn rename_poly(p: &Poly, map: &BTreeMap<String, String>) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in &p.terms {
        let mono = Monomial(m.0.iter().map(|(a, k)| (rename_atom(a, map), *k)).collect());
        let mut sorted = mono;
        sorted.0.sort_by(|x, y| x.0.cmp(&y.0));
        out.add_term(sorted.merged(), c.clone());
    }
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::display::format_expr(self, f)
    }
}

macro_rules! expr_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                Expr::$method(self, rhs)
            }
        }
        impl $trait<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$method(&self, &rhs)
            }
        }
        impl $trait<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                Expr::$method(&self, rhs)
            }
        }
        impl $trait<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$method(self, &rhs)
            }
        }
    };
}

expr_binop!(Add, add);
expr_binop!(Sub, sub);
expr_binop!(Mul, mul);
expr_binop!(Div, div);

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}
