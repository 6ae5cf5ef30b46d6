use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::poly::{integer, interpolate_on, InterpVar, MultiPoly};
use crate::spectrum::SpectrumTree;

use super::{count_semistar, count_smstar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    Omega,
    Epsilon,
}

/// A label turned into a polynomial variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symbol {
    pub node: String,
    pub name: String,
    pub kind: SymbolKind,
}

impl Symbol {
    /// `ω(node)`, as a variable named after the node.
    pub fn omega(node: &str) -> Self {
        Symbol {
            node: node.to_string(),
            name: node.to_string(),
            kind: SymbolKind::Omega,
        }
    }

    /// `ε(node)`, as a variable named `eps_<node>`.
    pub fn epsilon(node: &str) -> Self {
        Symbol {
            node: node.to_string(),
            name: format!("eps_{node}"),
            kind: SymbolKind::Epsilon,
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

struct Resolved {
    node: usize,
    kind: SymbolKind,
    var: InterpVar,
}

fn resolve(
    tree: &SpectrumTree,
    symbols: &[Symbol],
    omega_degree: u32,
) -> Result<Vec<Resolved>> {
    let mut out: Vec<Resolved> = Vec::with_capacity(symbols.len());
    for sym in symbols {
        let node = tree.node_index(&sym.node)?;
        if out.iter().any(|r| r.node == node && r.kind == sym.kind) {
            return Err(Error::Precondition(format!(
                "label of `{}` made symbolic twice",
                sym.node
            )));
        }
        if out.iter().any(|r| r.var.name == sym.name) {
            return Err(Error::Precondition(format!("variable `{}` used twice", sym.name)));
        }
        let var = match sym.kind {
            SymbolKind::Omega => {
                if tree.parent(node) != Some(0) {
                    return Err(Error::Precondition(format!(
                        "symbolic omega at `{}`, which is not a child of the root",
                        sym.node
                    )));
                }
                InterpVar::new(sym.name.clone(), omega_degree)
            }
            SymbolKind::Epsilon => {
                if node == 0 || !tree.is_leaf(node) {
                    return Err(Error::Precondition(format!(
                        "symbolic epsilon at `{}`, which is not a maximal ideal",
                        sym.node
                    )));
                }
                InterpVar::new(sym.name.clone(), 1).grid_only()
            }
        };
        out.push(Resolved {
            node,
            kind: sym.kind,
            var,
        });
    }
    // an ω grid at a leaf starts at the largest ε it will be paired with
    let starts: Vec<i64> = out
        .iter()
        .map(|r| match (r.kind, tree.epsilon(r.node)) {
            (SymbolKind::Omega, Some(e)) => {
                let eps_symbolic = out
                    .iter()
                    .any(|o| o.node == r.node && o.kind == SymbolKind::Epsilon);
                if eps_symbolic {
                    2
                } else {
                    e as i64
                }
            }
            _ => 1,
        })
        .collect();
    for (r, s) in out.iter_mut().zip(starts) {
        r.var = r.var.clone().starting_at(s);
    }
    Ok(out)
}

fn assign(tree: &SpectrumTree, vars: &[Resolved], point: &[i64]) -> Result<SpectrumTree> {
    let mut raw = tree.to_raw();
    for (r, &x) in vars.iter().zip(point) {
        match r.kind {
            SymbolKind::Omega => raw.nodes[r.node].omega = x,
            SymbolKind::Epsilon => raw.nodes[r.node].epsilon = Some(x),
        }
    }
    raw.validate()
}

fn recover(
    tree: &SpectrumTree,
    symbols: &[Symbol],
    omega_degree: u32,
    count: impl Fn(&SpectrumTree) -> Result<u128>,
) -> Result<MultiPoly> {
    let vars = resolve(tree, symbols, omega_degree)?;
    let interp: Vec<InterpVar> = vars.iter().map(|r| r.var.clone()).collect();
    interpolate_on(&interp, |point| {
        let t = assign(tree, &vars, point)?;
        Ok(integer(count(&t)?))
    })
}

/// `|Semistar|` as a polynomial in the `ω` labels of the given root
/// children; other labels stay fixed.
///
/// Each variable has degree at most `2^(m-1)` for `m` branches.
pub fn semistar_polynomial(
    tree: &SpectrumTree,
    symbols: &[Symbol],
    bounds: &Bounds,
) -> Result<MultiPoly> {
    if let Some(s) = symbols.iter().find(|s| s.kind != SymbolKind::Omega) {
        return Err(Error::Precondition(format!(
            "the semistar count does not depend on epsilon (`{}`)",
            s.node
        )));
    }
    let m = tree.branch_count() as u32;
    let degree = if m == 0 { 0 } else { 1 << (m - 1) };
    recover(tree, symbols, degree, |t| count_semistar(t, bounds))
}

/// `|SmStar|` as a polynomial in `ω` labels of root children and `ε`
/// labels of maximal ideals.
///
/// Each `ω` variable has degree at most `2^(m-1) - 1`; each `ε` variable is
/// interpolated through its two admissible values, so has degree at most 1.
pub fn smstar_polynomial(
    tree: &SpectrumTree,
    symbols: &[Symbol],
    bounds: &Bounds,
) -> Result<MultiPoly> {
    let m = tree.branch_count() as u32;
    let degree = if m == 0 { 0 } else { (1 << (m - 1)) - 1 };
    recover(tree, symbols, degree, |t| count_smstar(t, bounds))
}
