use std::collections::{BTreeMap, BTreeSet};

use num::bigint::BigInt;
use num::integer::Integer;
use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

use super::atom::Atom;
use super::monomial::Monomial;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse multivariate polynomial over the rationals in atom indeterminates.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn atom(a: Atom) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::atom(a), Rat::one());
        Poly { terms }
    }

    pub fn var(name: &str) -> Self {
        Poly::atom(Atom::var(name))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    fn mul_with(&self, other: &Poly, merge: bool) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = if merge { m1.mul(m2) } else { m1.mul_raw(m2) };
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    /// Ring product with the exp merge rule applied (public arithmetic).
    pub fn mul(&self, other: &Poly) -> Poly {
        self.mul_with(other, true)
    }

    /// Product treating every atom as an independent symbol. Only the gcd and
    /// exact-division internals may use this.
    pub fn mul_raw(&self, other: &Poly) -> Poly {
        self.mul_with(other, false)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            out.add_term(m1.mul(m), c1 * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Positive rational c such that self/c has coprime integer coefficients;
    /// zero for the zero polynomial.
    pub fn content(&self) -> Rat {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            Rat::zero()
        } else {
            Rat::new(num_gcd, den_lcm)
        }
    }

    /// Divide out the content and flip signs so the leading coefficient is
    /// positive. Returns the unit applied, i.e. self == unit * normalized.
    pub fn normalized_primitive(&self) -> (Poly, Rat) {
        if self.is_zero() {
            return (Poly::zero(), Rat::one());
        }
        let mut unit = self.content();
        if self.leading().unwrap().1.is_negative() {
            unit = -unit;
        }
        let inv = unit.recip();
        (self.scale(&inv), unit)
    }

    /// Exact long division by the leading-term algorithm, atoms treated as
    /// independent symbols. None when the division is not exact.
    pub fn div_exact_raw(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (dm, dc) = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div_raw(dm)?;
            let qc = rc / dc;
            let mut piece = Poly::zero();
            piece.add_term(qm.clone(), qc.clone());
            quot.add_term(qm.clone(), qc.clone());
            rem = rem.sub(&piece.mul_raw(divisor));
        }
        Some(quot)
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for (a, _) in &m.0 {
                out.insert(a.clone());
            }
        }
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        for m in self.terms.keys() {
            for (a, _) in &m.0 {
                a.collect_vars(out);
            }
        }
    }

    /// Evaluate with every atom bound independently to a rational.
    pub fn eval(&self, point: &BTreeMap<Atom, Rat>) -> Result<Rat> {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (a, e) in &m.0 {
                let x = point
                    .get(a)
                    .ok_or_else(|| Error::UnboundAtom(a.to_string()))?;
                for _ in 0..*e {
                    v *= x;
                }
            }
            total += v;
        }
        Ok(total)
    }
}
