use std::cmp::Ordering;

use super::atom::Atom;
use super::Expr;

/// Power product of atoms with positive integer exponents, kept sorted by the
/// atom order. The empty product is the constant monomial.
///
/// Construction merges exponential atoms: exp(p)^i * exp(q)^j collapses to the
/// single atom exp(i*p + j*q), so each canonical monomial carries at most one
/// exp atom, always to the first power.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<(Atom, u32)>);

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn atom(a: Atom) -> Self {
        Monomial(vec![(a, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| u64::from(*e)).sum()
    }

    pub fn exponent(&self, a: &Atom) -> u32 {
        self.0
            .iter()
            .find(|(b, _)| b == a)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Raw product: exponent vectors added, no exp merging. Used by the
    /// polynomial division and gcd internals, which treat every atom as an
    /// independent symbol.
    pub fn mul_raw(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(Atom, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Canonical product: raw product followed by the exp merge rule.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.mul_raw(other).merged()
    }

    /// Collapse all exp atoms into at most one with a combined argument.
    pub fn merged(self) -> Monomial {
        let needs_merge = {
            let exps = self.0.iter().filter(|(a, _)| matches!(a, Atom::Exp(_)));
            let mut count = 0usize;
            let mut high_power = false;
            for (_, e) in exps {
                count += 1;
                high_power |= *e > 1;
            }
            count > 1 || high_power
        };
        if !needs_merge {
            return self;
        }
        let mut rest: Vec<(Atom, u32)> = Vec::with_capacity(self.0.len());
        let mut combined = Expr::zero();
        for (a, e) in self.0 {
            match a {
                Atom::Exp(arg) => {
                    combined = combined + (*arg) * Expr::integer(i64::from(e));
                }
                other => rest.push((other, e)),
            }
        }
        if !combined.is_zero() {
            let atom = Atom::Exp(Box::new(combined));
            let pos = rest.binary_search_by(|(a, _)| a.cmp(&atom)).unwrap_err();
            rest.insert(pos, (atom, 1));
        }
        Monomial(rest)
    }

    /// Exact quotient when every exponent of `other` fits under `self`.
    pub fn div_raw(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: Vec<(Atom, u32)> = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (a, e) in &self.0 {
            let mut keep = *e;
            if j < other.0.len() && other.0[j].0 == *a {
                if other.0[j].1 > *e {
                    return None;
                }
                keep = e - other.0[j].1;
                j += 1;
            }
            if keep > 0 {
                out.push((a.clone(), keep));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for (a, e) in &self.0 {
            let f = other.exponent(a);
            if f > 0 {
                out.push((a.clone(), (*e).min(f)));
            }
        }
        Monomial(out)
    }

    pub fn pow_raw(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|(a, e)| (a.clone(), e * k)).collect())
    }

    /// Split into the exp-free part and the argument of the exp atom, if any.
    pub fn split_exp(&self) -> (Monomial, Option<Expr>) {
        let mut rest = Vec::new();
        let mut arg = None;
        for (a, e) in &self.0 {
            match a {
                Atom::Exp(q) if *e == 1 => arg = Some((**q).clone()),
                _ => rest.push((a.clone(), *e)),
            }
        }
        (Monomial(rest), arg)
    }
}

// Graded lexicographic order: total degree first; ties broken by the first
// exponent difference along the ascending atom walk, higher exponent winning.
// Compatible with multiplication, which exact division relies on.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, e) = &self.0[i];
            let (b, f) = &other.0[j];
            match a.cmp(b) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    match e.cmp(f) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        // Equal degree with one side exhausted on the shared prefix means the
        // exponent vectors were identical.
        debug_assert!(i == self.0.len() && j == other.0.len());
        Ordering::Equal
    }
}
