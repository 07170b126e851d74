use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::field::VectorField;

/// Multiset of independent variables naming a mixed partial, kept sorted:
/// the index of `u_txx` is `[t, x, x]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(Vec<String>);

impl MultiIndex {
    pub fn empty() -> MultiIndex {
        MultiIndex(Vec::new())
    }

    pub fn from_parts(parts: &[&str]) -> MultiIndex {
        let mut v: Vec<String> = parts.iter().map(|s| s.to_string()).collect();
        v.sort();
        MultiIndex(v)
    }

    pub fn push(&self, var: &str) -> MultiIndex {
        let mut v = self.0.clone();
        v.push(var.to_string());
        v.sort();
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parts(&self) -> &[String] {
        &self.0
    }

    /// Split off the largest entry; `None` on the empty index.
    pub fn split_last(&self) -> Option<(MultiIndex, &str)> {
        let (last, rest) = self.0.split_last()?;
        Some((MultiIndex(rest.to_vec()), last))
    }

    pub fn label(&self) -> String {
        self.0.concat()
    }
}

// Graded order: shorter indexes first, ties lexicographic.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Jet space of fixed order over a chart. Derivative coordinates are plain
/// variables named `dep_index`, so the order two jet of `u(t, x)` carries
/// `u_t, u_x, u_tt, u_tx, u_xx`.
#[derive(Debug, Clone)]
pub struct JetSpace {
    chart: Chart,
    order: u32,
}

impl JetSpace {
    pub fn new(chart: &Chart, order: u32) -> JetSpace {
        JetSpace { chart: chart.clone(), order }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coord_name(dep: &str, idx: &MultiIndex) -> String {
        if idx.is_empty() {
            dep.to_string()
        } else {
            format!("{dep}_{}", idx.label())
        }
    }

    /// Derivative coordinates of orders 1 through `order`, dependent
    /// variables in declaration order, indexes graded lexicographic.
    pub fn jet_coords(&self) -> Vec<(String, MultiIndex)> {
        let mut out = Vec::new();
        for (dep, args) in self.chart.dependents() {
            let mut level: Vec<MultiIndex> = vec![MultiIndex::empty()];
            for _ in 0..self.order {
                let mut next = Vec::new();
                for idx in &level {
                    // Extend only by variables >= the last entry so each
                    // multiset appears exactly once.
                    let floor = idx.0.last().cloned();
                    for a in args {
                        if floor.as_ref().map_or(true, |f| a >= f) {
                            next.push(idx.push(a));
                        }
                    }
                }
                out.extend(next.iter().map(|i| (dep.clone(), i.clone())));
                level = next;
            }
        }
        out.sort_by(|(d1, i1), (d2, i2)| {
            let p1 = self.chart.dependents().iter().position(|(d, _)| d == d1);
            let p2 = self.chart.dependents().iter().position(|(d, _)| d == d2);
            p1.cmp(&p2).then_with(|| i1.cmp(i2))
        });
        out
    }

    /// Every coordinate of the jet space: base chart then derivatives.
    pub fn coords(&self) -> Vec<String> {
        let mut out = self.chart.base_names();
        out.extend(
            self.jet_coords()
                .iter()
                .map(|(d, i)| JetSpace::coord_name(d, i)),
        );
        out
    }

    /// Read a variable name as a derivative coordinate of this space,
    /// without an order bound: `u_tx` gives back (`u`, `[t, x]`).
    pub fn decode(&self, name: &str) -> Option<(String, MultiIndex)> {
        let (dep, suffix) = name.split_once('_')?;
        let args = self.chart.dependent_args(dep)?;
        let mut by_len: Vec<&String> = args.iter().collect();
        by_len.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        let mut rest = suffix;
        let mut parts = Vec::new();
        while !rest.is_empty() {
            let hit = by_len.iter().find(|a| rest.starts_with(a.as_str()))?;
            parts.push(hit.as_str());
            rest = &rest[hit.len()..];
        }
        if parts.is_empty() {
            return None;
        }
        Some((dep.to_string(), MultiIndex::from_parts(&parts)))
    }

    /// Highest derivative order `e` mentions, reading jet-style names.
    pub fn order_of(&self, e: &Expr) -> u32 {
        e.collect_vars()
            .iter()
            .filter_map(|v| self.decode(v))
            .map(|(_, i)| i.len() as u32)
            .max()
            .unwrap_or(0)
    }

    /// Total derivative along the named independent variable. The input may
    /// mention derivatives up to `order - 1`; mentioning a top order
    /// coordinate leaves this space and is an error.
    pub fn total_derivative(&self, e: &Expr, xi: &str) -> Result<Expr> {
        if !self.chart.is_independent(xi) {
            return Err(Error::Chart(format!(
                "total derivative along '{xi}', which is not an independent variable"
            )));
        }
        let vars = e.collect_vars();
        for (dep, idx) in self.jet_coords() {
            if idx.len() as u32 == self.order {
                let name = JetSpace::coord_name(&dep, &idx);
                if vars.contains(&name) {
                    return Err(Error::OrderOverflow(name));
                }
            }
        }
        let mut out = e.diff(xi);
        for (dep, args) in self.chart.dependents() {
            if !args.contains(&xi.to_string()) {
                continue;
            }
            let mut indexes = vec![MultiIndex::empty()];
            for (d, i) in self.jet_coords() {
                if &d == dep && (i.len() as u32) < self.order {
                    indexes.push(i);
                }
            }
            for idx in indexes {
                let coord = JetSpace::coord_name(dep, &idx);
                let d = e.diff(&coord);
                if d.is_zero() {
                    continue;
                }
                let lifted = JetSpace::coord_name(dep, &idx.push(xi));
                out = out.add(&d.mul(&Expr::var(&lifted)));
            }
        }
        Ok(out)
    }

    /// Iterated total derivative over a multi-index.
    pub fn total_derivative_multi(&self, e: &Expr, idx: &MultiIndex) -> Result<Expr> {
        let mut out = e.clone();
        for xi in idx.parts() {
            out = self.total_derivative(&out, xi)?;
        }
        Ok(out)
    }

    /// Prolong a point-level field to this jet space. Coefficients on the
    /// base chart pass through; each derivative coordinate gains the
    /// coefficient given by the recursion
    /// `eta^{J, i} = D_i eta^J - sum_j (D_i xi_j) u^{J + j}`.
    pub fn prolong(&self, field: &VectorField) -> Result<VectorField> {
        let mut eta: BTreeMap<(String, MultiIndex), Expr> = BTreeMap::new();
        for (dep, _) in self.chart.dependents() {
            eta.insert((dep.clone(), MultiIndex::empty()), field.coeff(dep));
        }
        let mut pairs: Vec<(String, Expr)> =
            field.coeffs().map(|(v, c)| (v.clone(), c.clone())).collect();
        for (dep, idx) in self.jet_coords() {
            let (prefix, xi) = idx.split_last().expect("jet index is nonempty");
            let prev = eta
                .get(&(dep.clone(), prefix.clone()))
                .expect("graded enumeration visits prefixes first")
                .clone();
            let mut v = self.total_derivative(&prev, xi)?;
            let args = self.chart.dependent_args(&dep).expect("dep is in chart");
            for xj in args {
                let dxi = self.total_derivative(&field.coeff(xj), xi)?;
                if dxi.is_zero() {
                    continue;
                }
                let coord = JetSpace::coord_name(&dep, &prefix.push(xj));
                v = v.sub(&dxi.mul(&Expr::var(&coord)));
            }
            if !v.is_zero() {
                pairs.push((JetSpace::coord_name(&dep, &idx), v.clone()));
            }
            eta.insert((dep.clone(), idx), v);
        }
        Ok(VectorField::new(pairs))
    }
}
