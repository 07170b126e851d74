use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::expr::{parse_expr_with_derivations, Expr, Lexer, Poly, Rat};
use crate::linalg::QMatrix;
use crate::sample::{Sampler, MAX_SAMPLE_RETRIES};

/// First order differential operator `sum_v coeff_v * d/dv`, stored
/// chart-free: any variable may carry a coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    coeffs: BTreeMap<String, Expr>,
}

impl VectorField {
    pub fn new(pairs: impl IntoIterator<Item = (String, Expr)>) -> VectorField {
        VectorField {
            coeffs: pairs.into_iter().filter(|(_, e)| !e.is_zero()).collect(),
        }
    }

    pub fn from_pairs(pairs: &[(&str, Expr)]) -> VectorField {
        VectorField::new(pairs.iter().map(|(v, e)| (v.to_string(), e.clone())))
    }

    pub fn zero() -> VectorField {
        VectorField { coeffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, var: &str) -> Expr {
        self.coeffs.get(var).cloned().unwrap_or_else(Expr::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&String, &Expr)> {
        self.coeffs.iter()
    }

    /// Variables that carry a nonzero coefficient.
    pub fn slots(&self) -> BTreeSet<String> {
        self.coeffs.keys().cloned().collect()
    }

    /// Apply the operator to an expression as a derivation.
    pub fn apply(&self, e: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (v, c) in &self.coeffs {
            let d = e.diff(v);
            if !d.is_zero() {
                out = out.add(&c.mul(&d));
            }
        }
        out
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        let mut out = self.coeffs.clone();
        for (v, c) in &other.coeffs {
            let cur = out.remove(v).unwrap_or_else(Expr::zero).add(c);
            if !cur.is_zero() {
                out.insert(v.clone(), cur);
            }
        }
        VectorField { coeffs: out }
    }

    pub fn scale(&self, e: &Expr) -> VectorField {
        VectorField::new(self.coeffs.iter().map(|(v, c)| (v.clone(), c.mul(e))))
    }

    pub fn scale_rat(&self, r: &Rat) -> VectorField {
        VectorField::new(self.coeffs.iter().map(|(v, c)| (v.clone(), c.scale_rat(r))))
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        self.add(&other.scale_rat(&-Rat::from_integer(1.into())))
    }

    /// Lie bracket `[self, other]`.
    pub fn commutator(&self, other: &VectorField) -> VectorField {
        let mut slots = self.slots();
        slots.extend(other.slots());
        VectorField::new(slots.into_iter().map(|v| {
            let c = self.apply(&other.coeff(&v)).sub(&other.apply(&self.coeff(&v)));
            (v, c)
        }))
    }

    /// Substitute expressions for variables in every coefficient.
    pub fn substitute(&self, map: &BTreeMap<String, Expr>) -> Result<VectorField> {
        let mut out = BTreeMap::new();
        for (v, c) in &self.coeffs {
            let c = c.substitute(map)?;
            if !c.is_zero() {
                out.insert(v.clone(), c);
            }
        }
        Ok(VectorField { coeffs: out })
    }

    /// Transport the field along a change of coordinates. `fwd` gives each
    /// new coordinate as an expression in the old ones, `inv` each old
    /// coordinate in the new ones. The pair is verified symbolically to
    /// compose to the identity both ways before any coefficient is computed.
    pub fn pushforward(
        &self,
        fwd: &BTreeMap<String, Expr>,
        inv: &BTreeMap<String, Expr>,
    ) -> Result<VectorField> {
        for (newv, f) in fwd {
            let back = f.substitute(inv)?;
            if !back.sub(&Expr::var(newv)).is_zero() {
                return Err(Error::NotInverse(format!(
                    "coordinate {newv} composes to {back}, not to itself"
                )));
            }
        }
        for (oldv, g) in inv {
            let back = g.substitute(fwd)?;
            if !back.sub(&Expr::var(oldv)).is_zero() {
                return Err(Error::NotInverse(format!(
                    "coordinate {oldv} composes to {back}, not to itself"
                )));
            }
        }
        let mut out = BTreeMap::new();
        for (newv, f) in fwd {
            let coeff = self.apply(f).substitute(inv)?;
            if !coeff.is_zero() {
                out.insert(newv.clone(), coeff);
            }
        }
        Ok(VectorField { coeffs: out })
    }
}

/// Flatten a list of expression vectors (all over the same slots) into exact
/// rational coordinate columns: one row per (slot, canonical monomial), one
/// column per vector. Each slot equation is cleared of denominators by
/// multiplying through with every denominator in that slot, so the columns
/// represent the vectors as functions, not as representatives.
pub(crate) fn flatten_columns(vectors: &[Vec<Expr>]) -> Vec<Vec<Rat>> {
    let n = vectors.len();
    if n == 0 {
        return Vec::new();
    }
    let slots = vectors[0].len();
    debug_assert!(vectors.iter().all(|v| v.len() == slots));
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for s in 0..slots {
        let mut cleared: Vec<Poly> = Vec::with_capacity(n);
        for k in 0..n {
            let mut p = vectors[k][s].numerator().clone();
            for (j, other) in vectors.iter().enumerate() {
                if j != k {
                    p = p.mul(other[s].denominator());
                }
            }
            cleared.push(p);
        }
        let mut monos: BTreeSet<_> = BTreeSet::new();
        for p in &cleared {
            monos.extend(p.terms.keys().cloned());
        }
        for m in monos {
            rows.push(
                cleared
                    .iter()
                    .map(|p| p.terms.get(&m).cloned().unwrap_or_else(Rat::zero))
                    .collect(),
            );
        }
    }
    rows
}

/// Write each slot of `target` as one rational linear combination of the
/// basis vectors, matching coefficients of canonical monomials exactly.
pub(crate) fn decompose_in_span(basis: &[Vec<Expr>], target: &[Expr]) -> Option<Vec<Rat>> {
    if basis.is_empty() {
        return if target.iter().all(|e| e.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let mut vectors: Vec<Vec<Expr>> = Vec::with_capacity(basis.len() + 1);
    vectors.push(target.to_vec());
    vectors.extend(basis.iter().cloned());
    let flat = flatten_columns(&vectors);
    if flat.is_empty() {
        return Some(vec![Rat::zero(); basis.len()]);
    }
    let mut rows = Vec::with_capacity(flat.len());
    let mut rhs = Vec::with_capacity(flat.len());
    for row in flat {
        rhs.push(row[0].clone());
        rows.push(row[1..].to_vec());
    }
    QMatrix::from_rows(rows).solve(&rhs)
}

/// Rank of a list of expression vectors over the rational constants.
pub(crate) fn span_rank(vectors: &[Vec<Expr>]) -> usize {
    let flat = flatten_columns(vectors);
    if flat.is_empty() {
        return 0;
    }
    QMatrix::from_rows(flat).rank()
}

pub type StructureConstants = Vec<Vec<Vec<Rat>>>;

/// Structure constants of a closed family: `[Q_m, Q_n] = sum_k c[m][n][k] Q_k`.
/// Each bracket is decomposed exactly and the combination re-verified
/// symbolically; a bracket outside the span reports the offending pair.
pub fn structure_constants(fields: &[VectorField]) -> Result<StructureConstants> {
    let n = fields.len();
    let mut slots: BTreeSet<String> = BTreeSet::new();
    for f in fields {
        slots.extend(f.slots());
    }
    let slots: Vec<String> = slots.into_iter().collect();
    let basis: Vec<Vec<Expr>> = fields
        .iter()
        .map(|f| slots.iter().map(|s| f.coeff(s)).collect())
        .collect();
    let mut c = vec![vec![vec![Rat::zero(); n]; n]; n];
    for m in 0..n {
        for nn in (m + 1)..n {
            let com = fields[m].commutator(&fields[nn]);
            let target: Vec<Expr> = slots.iter().map(|s| com.coeff(s)).collect();
            let sol = decompose_in_span(&basis, &target).ok_or_else(|| Error::NotClosed {
                m,
                n: nn,
                residual: com.to_string(),
            })?;
            let mut check = com.clone();
            for (k, ck) in sol.iter().enumerate() {
                check = check.sub(&fields[k].scale_rat(ck));
            }
            debug_assert!(check.is_zero(), "span decomposition must reproduce the bracket");
            for k in 0..n {
                c[m][nn][k] = sol[k].clone();
                c[nn][m][k] = -sol[k].clone();
            }
        }
    }
    Ok(c)
}

/// Check linear independence over the constants by stacking evaluations at
/// deterministic generic points until the coefficient matrix reaches full
/// rank. Failure to reach it within the retry budget reports a dependent
/// family.
pub fn check_independent(fields: &[VectorField], seed: u64) -> Result<()> {
    let n = fields.len();
    if n == 0 {
        return Ok(());
    }
    let mut slots: BTreeSet<String> = BTreeSet::new();
    let mut atoms = BTreeSet::new();
    for f in fields {
        slots.extend(f.slots());
        for (_, e) in f.coeffs() {
            atoms.extend(e.atoms());
        }
    }
    let slots: Vec<String> = slots.into_iter().collect();
    if slots.is_empty() {
        // Every field is zero; a single zero field is dependent already.
        return Err(Error::DependentBasis);
    }
    let mut sampler = Sampler::new(seed);
    let mut stacked: Vec<Vec<Rat>> = vec![Vec::new(); n];
    for _ in 0..MAX_SAMPLE_RETRIES {
        let pt = sampler.point(&atoms);
        let mut block: Vec<Vec<Rat>> = Vec::with_capacity(n);
        let mut singular = false;
        'fields: for f in fields {
            let mut row = Vec::with_capacity(slots.len());
            for s in &slots {
                match f.coeff(s).eval_at(&pt) {
                    Ok(v) => row.push(v),
                    Err(Error::SingularPoint) => {
                        singular = true;
                        break 'fields;
                    }
                    Err(e) => return Err(e),
                }
            }
            block.push(row);
        }
        if singular {
            continue;
        }
        for (m, row) in block.into_iter().enumerate() {
            stacked[m].extend(row);
        }
        if QMatrix::from_rows(stacked.clone()).rank() == n {
            return Ok(());
        }
    }
    Err(Error::DependentBasis)
}

/// Parse an operator like `t*d/dx + x*d/dt`. The expression must be linear
/// in the derivation symbols with no derivation-free remainder.
pub fn parse_field(src: &str) -> Result<VectorField> {
    let mut lx = Lexer::new(src)?;
    let e = parse_expr_with_derivations(&mut lx)?;
    if !lx.at_end() {
        return Err(lx.err("trailing input after operator"));
    }
    field_from_operator_expr(&e)
}

pub(crate) fn field_from_operator_expr(e: &Expr) -> Result<VectorField> {
    let dvars: Vec<String> = e
        .collect_vars()
        .into_iter()
        .filter(|v| v.starts_with("d/d"))
        .collect();
    if dvars.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "operator mentions no derivation symbol d/d<var>".to_string(),
        });
    }
    let mut remainder = e.clone();
    let mut pairs = Vec::new();
    for dv in &dvars {
        let coeff = e.diff(dv);
        if coeff.collect_vars().iter().any(|v| v.starts_with("d/d")) {
            return Err(Error::Parse {
                pos: 0,
                msg: "operator is not linear in its derivation symbols".to_string(),
            });
        }
        remainder = remainder.sub(&coeff.mul(&Expr::var(dv)));
        pairs.push((dv["d/d".len()..].to_string(), coeff));
    }
    if !remainder.is_zero() {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("operator has a derivation-free part: {remainder}"),
        });
    }
    Ok(VectorField::new(pairs))
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (v, c)) in self.coeffs.iter().enumerate() {
            let mut piece = if c.is_one() {
                format!("d/d{v}")
            } else if c.neg().is_one() {
                format!("-d/d{v}")
            } else {
                let printed = format!("{c}");
                let simple = c.numerator().terms.len() == 1
                    && c.denominator().as_constant().is_some();
                if simple {
                    format!("{printed}*d/d{v}")
                } else {
                    format!("({printed})*d/d{v}")
                }
            };
            if i > 0 {
                if let Some(rest) = piece.strip_prefix('-') {
                    write!(f, " - ")?;
                    piece = rest.to_string();
                } else {
                    write!(f, " + ")?;
                }
            }
            write!(f, "{piece}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::sample::DEFAULT_SEED;

    fn fld(src: &str) -> VectorField {
        parse_field(src).unwrap()
    }

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn apply_is_a_derivation() {
        let q = fld("t*d/dx + x*d/dt");
        let e = parse_expr("t*x").unwrap();
        assert_eq!(q.apply(&e), parse_expr("t^2 + x^2").unwrap());
        let product = parse_expr("t^2*x").unwrap();
        let lhs = q.apply(&product);
        let rhs = q.apply(&parse_expr("t^2").unwrap()).mul(&parse_expr("x").unwrap())
            .add(&parse_expr("t^2").unwrap().mul(&q.apply(&parse_expr("x").unwrap())));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn hyperbolic_rotation_family_closes() {
        let fields = vec![fld("d/dt"), fld("d/dx"), fld("t*d/dx + x*d/dt")];
        let c = structure_constants(&fields).unwrap();
        // [P_t, P_x] = 0, [P_t, J] = P_x, [P_x, J] = P_t
        for k in 0..3 {
            assert!(c[0][1][k].is_zero());
        }
        assert_eq!(c[0][2], vec![rat(0), rat(1), rat(0)]);
        assert_eq!(c[1][2], vec![rat(1), rat(0), rat(0)]);
        for m in 0..3 {
            for n in 0..3 {
                for k in 0..3 {
                    assert_eq!(c[m][n][k], -c[n][m][k].clone());
                }
            }
        }
    }

    #[test]
    fn open_family_is_rejected() {
        let fields = vec![fld("d/dx"), fld("x^2*d/dx")];
        match structure_constants(&fields) {
            Err(Error::NotClosed { m: 0, n: 1, .. }) => {}
            other => panic!("expected a closure failure, got {other:?}"),
        }
    }

    #[test]
    fn independence_needs_stacked_points() {
        // On a single sample these two are always proportional pointwise.
        let fields = vec![fld("d/dx"), fld("x*d/dx")];
        check_independent(&fields, DEFAULT_SEED).unwrap();
        let dep = vec![fld("d/dx"), fld("2*d/dx")];
        assert!(matches!(
            check_independent(&dep, DEFAULT_SEED),
            Err(Error::DependentBasis)
        ));
        let three = vec![fld("d/dx"), fld("x*d/dx"), fld("x^2*d/dx")];
        check_independent(&three, DEFAULT_SEED).unwrap();
    }

    #[test]
    fn pushforward_inversion() {
        // y = 1/x carries x*d/dx to -y*d/dy.
        let q = fld("x*d/dx");
        let mut fwd = BTreeMap::new();
        fwd.insert("y".to_string(), parse_expr("1/x").unwrap());
        let mut inv = BTreeMap::new();
        inv.insert("x".to_string(), parse_expr("1/y").unwrap());
        let p = q.pushforward(&fwd, &inv).unwrap();
        assert_eq!(p, fld("-y*d/dy"));
    }

    #[test]
    fn pushforward_accepts_exponential_witnesses() {
        // v = u*exp(x) with inverse u = v*exp(-x); a numeric check that
        // sampled exp(x) and exp(-x) independently would reject this.
        let q = fld("u*d/du");
        let mut fwd = BTreeMap::new();
        fwd.insert("x".to_string(), parse_expr("x").unwrap());
        fwd.insert("v".to_string(), parse_expr("u*exp(x)").unwrap());
        let mut inv = BTreeMap::new();
        inv.insert("x".to_string(), parse_expr("x").unwrap());
        inv.insert("u".to_string(), parse_expr("v*exp(-x)").unwrap());
        let p = q.pushforward(&fwd, &inv).unwrap();
        assert_eq!(p, fld("v*d/dv"));
    }

    #[test]
    fn pushforward_rejects_wrong_witness() {
        let q = fld("x*d/dx");
        let mut fwd = BTreeMap::new();
        fwd.insert("y".to_string(), parse_expr("x^2").unwrap());
        let mut inv = BTreeMap::new();
        inv.insert("x".to_string(), parse_expr("y").unwrap());
        assert!(matches!(q.pushforward(&fwd, &inv), Err(Error::NotInverse(_))));
    }

    #[test]
    fn operator_parsing_is_strict() {
        assert!(matches!(parse_field("t*x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_field("d/dx + 1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_field("d/dx * d/dt"), Err(Error::Parse { .. })));
        let q = fld("(t + x)*d/dx - d/dt");
        assert_eq!(q.coeff("x"), parse_expr("t + x").unwrap());
        assert_eq!(q.coeff("t"), parse_expr("-1").unwrap());
    }

    #[test]
    fn display_round_trips_through_the_parser() {
        for src in [
            "d/dt",
            "t*d/dx + x*d/dt",
            "-d/dx",
            "(t + x)*d/dx - d/dt",
            "u*d/du + exp(x)*d/dx",
            "3/2*x*d/dx",
            "(1/x)*d/dx",
        ] {
            let q = fld(src);
            let printed = format!("{q}");
            assert_eq!(fld(&printed), q, "round trip failed: {src} printed as {printed}");
        }
    }
}
