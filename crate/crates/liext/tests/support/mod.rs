//! Shared helpers for the integration suites: an independent prolongation
//! assembled from the characteristic closed form, a brute-force determining
//! system over an explicit monomial grid, and deterministic random inputs.

#![allow(dead_code)]

use std::collections::BTreeMap;

use liext::expr::rat;
use liext::{Expr, JetSpace, MultiIndex, Rat, VectorField};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Prolongation via the characteristic: with phi = eta - sum_i xi_i u_i the
/// coefficient on u_J is D_J(phi) + sum_i xi_i u_{J i}, every total
/// derivative taken one order above the target space so the top-order terms
/// can cancel. The library's slot-by-slot recursion is checked against this.
pub fn prolong_characteristic(js: &JetSpace, field: &VectorField) -> VectorField {
    let chart = js.chart();
    let scratch = JetSpace::new(chart, js.order() + 1);
    let mut pairs: Vec<(String, Expr)> =
        field.coeffs().map(|(v, c)| (v.clone(), c.clone())).collect();
    for (dep, args) in chart.dependents() {
        let mut phi = field.coeff(dep);
        for a in args {
            let first = JetSpace::coord_name(dep, &MultiIndex::from_parts(&[a]));
            phi = phi.sub(&field.coeff(a).mul(&Expr::var(&first)));
        }
        for (d, idx) in js.jet_coords() {
            if &d != dep {
                continue;
            }
            let mut coeff = scratch
                .total_derivative_multi(&phi, &idx)
                .expect("scratch space has one spare order");
            for a in args {
                let xi = field.coeff(a);
                if xi.is_zero() {
                    continue;
                }
                let lifted = JetSpace::coord_name(dep, &idx.push(a));
                coeff = coeff.add(&xi.mul(&Expr::var(&lifted)));
            }
            if !coeff.is_zero() {
                pairs.push((JetSpace::coord_name(dep, &idx), coeff));
            }
        }
    }
    VectorField::new(pairs)
}

/// Dense polynomial in t and x on a fixed degree grid, used to spell out the
/// determining system for the boost triple without any symbolic machinery.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub deg: u32,
    pub c: BTreeMap<(u32, u32), Rat>,
}

impl Grid {
    pub fn zero(deg: u32) -> Grid {
        Grid { deg, c: BTreeMap::new() }
    }

    pub fn unit(deg: u32, i: u32, j: u32) -> Grid {
        let mut g = Grid::zero(deg);
        g.c.insert((i, j), rat(1));
        g
    }

    fn set(&mut self, key: (u32, u32), v: Rat) {
        assert!(key.0 + key.1 <= self.deg, "monomial escapes the grid");
        if v.is_zero() {
            self.c.remove(&key);
        } else {
            self.c.insert(key, v);
        }
    }

    pub fn add_scaled(&self, other: &Grid, s: &Rat) -> Grid {
        let mut out = self.clone();
        for (&k, v) in &other.c {
            let cur = out.c.get(&k).cloned().unwrap_or_else(Rat::zero);
            out.set(k, cur + v * s);
        }
        out
    }

    pub fn sub(&self, other: &Grid) -> Grid {
        self.add_scaled(other, &rat(-1))
    }

    /// d/dt: t^i x^j -> i t^(i-1) x^j.
    pub fn diff_t(&self) -> Grid {
        let mut out = Grid::zero(self.deg);
        for (&(i, j), v) in &self.c {
            if i > 0 {
                out.set((i - 1, j), v * rat(i64::from(i)));
            }
        }
        out
    }

    pub fn diff_x(&self) -> Grid {
        let mut out = Grid::zero(self.deg);
        for (&(i, j), v) in &self.c {
            if j > 0 {
                out.set((i, j - 1), v * rat(i64::from(j)));
            }
        }
        out
    }

    pub fn mul_t(&self) -> Grid {
        let mut out = Grid::zero(self.deg);
        for (&(i, j), v) in &self.c {
            out.set((i + 1, j), v.clone());
        }
        out
    }

    pub fn mul_x(&self) -> Grid {
        let mut out = Grid::zero(self.deg);
        for (&(i, j), v) in &self.c {
            out.set((i, j + 1), v.clone());
        }
        out
    }
}

/// Monomial exponents (i, j) with i + j <= deg, in a fixed scan order.
pub fn grid_monomials(deg: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for total in 0..=deg {
        for i in (0..=total).rev() {
            out.push((i, total - i));
        }
    }
    out
}

fn boost_apply(op: usize, g: &Grid) -> Grid {
    match op {
        0 => g.diff_t(),
        1 => g.diff_x(),
        2 => g.diff_x().mul_t().add_scaled(&g.diff_t().mul_x(), &rat(1)),
        _ => unreachable!(),
    }
}

/// The determining system for rates (a_0, a_1, a_2) of the triple
/// (d/dt, d/dx, t d/dx + x d/dt) on the degree grid: for each pair (m, n)
/// the residual Q_m(a_n) - Q_n(a_m) - c^k_{mn} a_k must vanish monomial by
/// monomial. Unknown columns scan operators outer, monomials inner.
pub fn boost_determining_matrix(deg: u32) -> Vec<Vec<Rat>> {
    let monos = grid_monomials(deg);
    let cols = 3 * monos.len();
    // [P_t, J] = P_x and [P_x, J] = P_t; the translation pair commutes.
    let pairs: [(usize, usize, Option<usize>); 3] =
        [(0, 1, None), (0, 2, Some(1)), (1, 2, Some(0))];
    let mut rows = Vec::new();
    for &(m, n, bracket) in &pairs {
        let mut residuals: Vec<Grid> = vec![Grid::zero(deg); cols];
        for o in 0..3 {
            for (w, &(i, j)) in monos.iter().enumerate() {
                let basis = Grid::unit(deg, i, j);
                let mut r = Grid::zero(deg);
                if o == n {
                    r = r.add_scaled(&boost_apply(m, &basis), &rat(1));
                }
                if o == m {
                    r = r.sub(&boost_apply(n, &basis));
                }
                if bracket == Some(o) {
                    r = r.sub(&basis);
                }
                let col = o * monos.len() + w;
                residuals[col] = residuals[col].add_scaled(&r, &rat(1));
            }
        }
        for &key in &monos {
            let row: Vec<Rat> = residuals
                .iter()
                .map(|g| g.c.get(&key).cloned().unwrap_or_else(Rat::zero))
                .collect();
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    rows
}

/// Rank by plain Gaussian elimination over exact rationals.
pub fn rank_rows(mut rows: Vec<Vec<Rat>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &pivot;
                for c in col..cols {
                    let delta = &rows[rank][c] * &factor;
                    rows[r][c] = &rows[r][c] - &delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Nullity of the brute-force determining system at the given degree cap.
pub fn boost_determining_nullity(deg: u32) -> usize {
    let unknowns = 3 * grid_monomials(deg).len();
    unknowns - rank_rows(boost_determining_matrix(deg))
}

/// Deterministic polynomial of degree <= deg (1 or 2) in the given
/// variables, integer coefficients in -3..=3.
pub fn random_poly(rng: &mut ChaCha8Rng, vars: &[&str], deg: u32) -> Expr {
    let mut out = Expr::integer(rng.gen_range(-3..=3));
    let mut monos: Vec<Expr> = Vec::new();
    for (i, v) in vars.iter().enumerate() {
        monos.push(Expr::var(v));
        if deg >= 2 {
            for w in &vars[i..] {
                monos.push(Expr::var(v).mul(&Expr::var(w)));
            }
        }
    }
    for m in monos {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            out = out.add(&m.scale_rat(&rat(c)));
        }
    }
    out
}

/// Deterministic vector fields with polynomial coefficients on the given
/// slots. Every field is nonzero.
pub fn random_fields(
    seed: u64,
    count: usize,
    slots: &[&str],
    vars: &[&str],
    deg: u32,
) -> Vec<VectorField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let field = VectorField::new(
            slots
                .iter()
                .map(|s| (s.to_string(), random_poly(&mut rng, vars, deg))),
        );
        if !field.is_zero() {
            out.push(field);
        }
    }
    out
}

/// Deterministic rational function: polynomial numerator over a denominator
/// of the form 1 + q^2, which never vanishes identically. The denominator
/// root q is kept linear so repeated total derivatives stay tractable.
pub fn random_rational(rng: &mut ChaCha8Rng, vars: &[&str]) -> Expr {
    let num = random_poly(rng, vars, 2);
    let head = &vars[..vars.len().min(2)];
    let q = random_poly(rng, head, 1);
    num.div(&Expr::one().add(&q.mul(&q)))
}
