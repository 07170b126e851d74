use std::cmp::Ordering;
use std::fmt;

use super::Expr;

/// Formal partial derivative of an opaque function symbol, e.g. `Phi_xy(x,y)`.
///
/// The multi-index is kept sorted, so mixed partials written in either order
/// compare equal. Arguments are plain variable names; composing an opaque
/// symbol with expressions is outside the closed form domain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuncAtom {
    pub name: String,
    pub args: Vec<String>,
    pub partials: Vec<String>,
}

impl FuncAtom {
    pub fn new(name: &str, args: &[&str]) -> Self {
        FuncAtom {
            name: name.to_string(),
            args: args.iter().map(|s| s.to_string()).collect(),
            partials: Vec::new(),
        }
    }

    /// Same symbol with one more formal derivative applied.
    pub fn derived(&self, var: &str) -> FuncAtom {
        let mut partials = self.partials.clone();
        partials.push(var.to_string());
        partials.sort();
        FuncAtom { name: self.name.clone(), args: self.args.clone(), partials }
    }

    pub fn label(&self) -> String {
        if self.partials.is_empty() {
            self.name.clone()
        } else {
            format!("{}_{}", self.name, self.partials.concat())
        }
    }
}

impl fmt::Display for FuncAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.label(), self.args.join(","))
    }
}

/// Indeterminate of the polynomial layer: a named coordinate, the exponential
/// of an argument built from coordinates, or a formal derivative of an opaque
/// function symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    Var(String),
    Exp(Box<Expr>),
    Func(FuncAtom),
}

impl Atom {
    pub fn var(name: &str) -> Self {
        Atom::Var(name.to_string())
    }

    fn rank(&self) -> u8 {
        match self {
            Atom::Var(_) => 0,
            Atom::Exp(_) => 1,
            Atom::Func(_) => 2,
        }
    }

    /// Variable names this atom involves, including names inside exp
    /// arguments and opaque function argument lists.
    pub fn collect_vars(&self, out: &mut std::collections::BTreeSet<String>) {
        match self {
            Atom::Var(v) => {
                out.insert(v.clone());
            }
            Atom::Exp(arg) => {
                out.extend(arg.collect_vars());
            }
            Atom::Func(f) => {
                out.extend(f.args.iter().cloned());
            }
        }
    }
}

// Total order: variables first (lexicographic), then exponentials by argument,
// then opaque symbols by name, arguments and multi-index. Canonical forms rely
// on this order being fixed.
impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Atom::Var(a), Atom::Var(b)) => a.cmp(b),
            (Atom::Exp(a), Atom::Exp(b)) => a.cmp(b),
            (Atom::Func(a), Atom::Func(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Var(v) => write!(f, "{v}"),
            Atom::Exp(arg) => write!(f, "exp({arg})"),
            Atom::Func(fa) => write!(f, "{fa}"),
        }
    }
}
