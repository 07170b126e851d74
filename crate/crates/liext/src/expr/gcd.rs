use std::collections::{BTreeMap, BTreeSet};

use num::{One, Zero};

use super::atom::Atom;
use super::monomial::Monomial;
use super::poly::{Poly, Rat};

// Multivariate gcd by a primitive polynomial remainder sequence, recursing on
// the highest atom. Atoms are opaque symbols here: no exp merging happens in
// any product below, which keeps the ring an honest UFD for the argument that
// reduced fractions are unique up to units.

fn degree_in(p: &Poly, v: &Atom) -> u32 {
    p.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
}

fn uni_view(p: &Poly, v: &Atom) -> BTreeMap<u32, Poly> {
    let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
    for (m, c) in &p.terms {
        let e = m.exponent(v);
        let rest = Monomial(
            m.0.iter()
                .filter(|(a, _)| a != v)
                .cloned()
                .collect(),
        );
        out.entry(e).or_default().add_term(rest, c.clone());
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn lead_coeff(p: &Poly, v: &Atom) -> Poly {
    let d = degree_in(p, v);
    uni_view(p, v).remove(&d).unwrap_or_else(Poly::zero)
}

fn shift_pow(v: &Atom, k: u32) -> Poly {
    if k == 0 {
        Poly::one()
    } else {
        let mut p = Poly::zero();
        p.add_term(Monomial(vec![(v.clone(), k)]), Rat::one());
        p
    }
}

/// Pseudo-remainder scaled to exactly `lead(b)^(deg a - deg b + 1) * a mod b`,
/// the normalization the subresultant cascade divides against.
fn pseudo_rem(a: &Poly, b: &Poly, v: &Atom) -> Poly {
    let db = degree_in(b, v);
    let lb = lead_coeff(b, v);
    let delta = degree_in(a, v).saturating_sub(db);
    let mut r = a.clone();
    let mut steps = 0u32;
    loop {
        if r.is_zero() {
            break;
        }
        let dr = degree_in(&r, v);
        if dr < db {
            break;
        }
        let lr = lead_coeff(&r, v);
        let step = lb
            .mul_raw(&r)
            .sub(&lr.mul_raw(&shift_pow(v, dr - db)).mul_raw(b));
        debug_assert!(degree_in(&step, v) < dr || step.is_zero());
        r = step;
        steps += 1;
    }
    for _ in steps..=delta {
        r = lb.mul_raw(&r);
    }
    r
}

const PROBE_PRIMES: &[i64] = &[
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113,
];

fn probe_point(atoms: &BTreeSet<Atom>, offset: i64) -> BTreeMap<Atom, Rat> {
    atoms
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let p = PROBE_PRIMES[i % PROBE_PRIMES.len()] + offset;
            (a.clone(), Rat::from_integer(p.into()))
        })
        .collect()
}

fn rat_pow(x: &Rat, k: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..k {
        out *= x;
    }
    out
}

/// Coefficient list of `p` as a univariate polynomial in `w` with every other
/// atom evaluated at the probe point.
fn univariate_image(p: &Poly, w: &Atom, pt: &BTreeMap<Atom, Rat>) -> Vec<Rat> {
    let d = degree_in(p, w) as usize;
    let mut out = vec![Rat::zero(); d + 1];
    for (m, c) in &p.terms {
        let mut val = c.clone();
        let mut e = 0usize;
        for (a, k) in &m.0 {
            if a == w {
                e = *k as usize;
            } else {
                val *= rat_pow(pt.get(a).expect("probe point binds every atom"), *k);
            }
        }
        out[e] += val;
    }
    out
}

fn uni_deg(v: &[Rat]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

/// Degree of the gcd of two univariate rational polynomials.
fn uni_gcd_degree(a: Vec<Rat>, b: Vec<Rat>) -> usize {
    let (mut p, mut q) = (a, b);
    loop {
        let dq = match uni_deg(&q) {
            None => return uni_deg(&p).unwrap_or(0),
            Some(d) => d,
        };
        if dq == 0 {
            return 0;
        }
        let dp = match uni_deg(&p) {
            None => return dq,
            Some(d) => d,
        };
        if dp < dq {
            std::mem::swap(&mut p, &mut q);
            continue;
        }
        let factor = &p[dp] / &q[dq];
        let shift = dp - dq;
        for i in 0..=dq {
            let t = &q[i] * &factor;
            p[i + shift] -= t;
        }
        debug_assert!(p[dp].is_zero());
    }
}

/// Sound coprimality certificate. For each atom, both operands are reduced to
/// univariate images at an integer point; when at least one operand keeps its
/// full degree there, any common factor also keeps its full degree, so a
/// constant image gcd forces the true gcd to degree zero in that atom.
/// Degree zero in every atom means the gcd is a unit. A nonconstant image
/// gcd proves nothing and fails the certificate, handing over to the exact
/// remainder cascade.
fn certified_coprime(a: &Poly, b: &Poly) -> bool {
    let atoms: BTreeSet<Atom> = a.atoms().into_iter().chain(b.atoms()).collect();
    'atom: for w in &atoms {
        let da = degree_in(a, w);
        let db = degree_in(b, w);
        if da == 0 || db == 0 {
            continue;
        }
        for offset in 0..3 {
            let pt = probe_point(&atoms, offset);
            let ia = univariate_image(a, w, &pt);
            let ib = univariate_image(b, w, &pt);
            let full_a = uni_deg(&ia) == Some(da as usize);
            let full_b = uni_deg(&ib) == Some(db as usize);
            if !(full_a || full_b) {
                continue;
            }
            if uni_gcd_degree(ia, ib) == 0 {
                continue 'atom;
            }
            return false;
        }
        return false;
    }
    true
}

/// Content of `p` viewed as univariate in `v`: gcd of its coefficient polys.
fn content_in(p: &Poly, v: &Atom) -> Poly {
    let mut acc = Poly::zero();
    for coeff in uni_view(p, v).values() {
        acc = poly_gcd(&acc, coeff);
        if let Some(c) = acc.as_constant() {
            if c.is_one() {
                return acc;
            }
        }
    }
    acc
}

/// Common monomial factor of all terms.
fn monomial_content(p: &Poly) -> Monomial {
    let mut it = p.terms.keys();
    let mut acc = match it.next() {
        Some(m) => m.clone(),
        None => return Monomial::one(),
    };
    for m in it {
        if acc.is_one() {
            break;
        }
        acc = acc.gcd(m);
    }
    acc
}

fn divide_monomial(p: &Poly, m: &Monomial) -> Poly {
    if m.is_one() {
        return p.clone();
    }
    let mut out = Poly::zero();
    for (mm, c) in &p.terms {
        out.add_term(mm.div_raw(m).expect("monomial content divides"), c.clone());
    }
    out
}

/// Normalized gcd: primitive integer coefficients, positive leading term.
/// Nonzero constants count as units, so gcd with a constant is 1.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.normalized_primitive().0;
    }
    if b.is_zero() {
        return a.normalized_primitive().0;
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Poly::one();
    }

    // Pull out common monomial factors cheaply first.
    let ma = monomial_content(a);
    let mb = monomial_content(b);
    let mg = ma.gcd(&mb);
    let a1 = divide_monomial(a, &ma);
    let b1 = divide_monomial(b, &mb);

    // A nontrivial gcd from the arithmetic in this crate is usually one
    // operand dividing the other (a cancelled denominator power), so exact
    // division is worth trying before any remainder sequence.
    let core = if a1.as_constant().is_some() || b1.as_constant().is_some() {
        Poly::one()
    } else if a1.div_exact_raw(&b1).is_some() {
        b1.clone()
    } else if b1.div_exact_raw(&a1).is_some() {
        a1.clone()
    } else if certified_coprime(&a1, &b1) {
        Poly::one()
    } else {
        let v = a1
            .atoms()
            .into_iter()
            .chain(b1.atoms())
            .max()
            .expect("nonconstant polynomial has atoms");
        gcd_univariate_step(&a1, &b1, &v)
    };

    let mut g = Poly::zero();
    for (m, c) in &core.terms {
        g.add_term(m.mul_raw(&mg), c.clone());
    }
    g.normalized_primitive().0
}

fn gcd_univariate_step(a: &Poly, b: &Poly, v: &Atom) -> Poly {
    let da = degree_in(a, v);
    let db = degree_in(b, v);
    if da == 0 || db == 0 {
        // v does not actually divide the structure of both; gcd lives in the
        // coefficient ring.
        let ca = if da == 0 { a.clone() } else { content_in(a, v) };
        let cb = if db == 0 { b.clone() } else { content_in(b, v) };
        return poly_gcd(&ca, &cb);
    }

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let cg = poly_gcd(&ca, &cb);
    let mut p = a.div_exact_raw(&ca).expect("content divides");
    let mut q = b.div_exact_raw(&cb).expect("content divides");
    if degree_in(&p, v) < degree_in(&q, v) {
        std::mem::swap(&mut p, &mut q);
    }
    // Subresultant cascade: dividing each pseudo-remainder by g * h^d is
    // exact and keeps the coefficients polynomially sized, where a bare
    // primitive sequence lets them compound multiplicatively.
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let d = degree_in(&p, v) - degree_in(&q, v);
        let r = pseudo_rem(&p, &q, v);
        if r.is_zero() {
            break;
        }
        if degree_in(&r, v) == 0 {
            // Coprime in v; the gcd is the content part only.
            return cg;
        }
        let divisor = g.mul_raw(&h.pow(d));
        let next = match r.div_exact_raw(&divisor) {
            Some(exact) => exact,
            None => {
                // Defensive: fall back to stripping the full content.
                let rc = content_in(&r, v);
                r.div_exact_raw(&rc).expect("content divides")
            }
        };
        p = q;
        q = next;
        g = lead_coeff(&p, v);
        h = if d == 0 {
            h
        } else if d == 1 {
            g.clone()
        } else {
            let gd = g.pow(d);
            match gd.div_exact_raw(&h.pow(d - 1)) {
                Some(exact) => exact,
                None => gd,
            }
        };
    }
    let qc = content_in(&q, v);
    let qp = q.div_exact_raw(&qc).expect("content divides").normalized_primitive().0;
    let mut out = Poly::zero();
    for (m, c) in qp.terms {
        // Reattach the coefficient-ring gcd.
        let scaled = cg.mul_raw(&Poly { terms: [(m, c)].into_iter().collect() });
        out = out.add(&scaled);
    }
    out
}
