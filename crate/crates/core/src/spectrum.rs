//! The labeled spectral tree, its skeleton and the supports.
//!
//! A tree node stands for a branching prime (or a maximal ideal); the root
//! is the zero ideal. `omega` counts the fractional star operations on the
//! valuation slice ending at the node, `epsilon` (leaves only) counts the
//! star operations on the localization at the maximal ideal.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bounds::{Bounds, HARD_MAX_BRANCHES};
use crate::error::{Error, Result, ValidationReport};
use crate::poset::Poset;

/// One node of the JSON tree description, as written by the user.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNode {
    pub id: String,
    pub parent: Option<String>,
    pub omega: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<i64>,
}

/// `{"nodes": [...]}`; nothing is checked until [`validate`](RawTree::validate).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTree {
    pub nodes: Vec<RawNode>,
}

impl RawTree {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a node; handy for building trees in code.
    pub fn node(mut self, id: &str, parent: Option<&str>, omega: i64, epsilon: Option<i64>) -> Self {
        self.nodes.push(RawNode {
            id: id.to_string(),
            parent: parent.map(str::to_string),
            omega,
            epsilon,
        });
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn validate(&self) -> Result<SpectrumTree> {
        SpectrumTree::from_raw(self)
    }
}

/// A violated tree invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    DuplicateId(String),
    NoRoot,
    SeveralRoots(Vec<String>),
    UnknownParent { id: String, parent: String },
    Unreachable(Vec<String>),
    RootOmega { id: String, omega: i64 },
    RootEpsilon(String),
    NonPositiveOmega { id: String, omega: i64 },
    NotBranching(String),
    MissingEpsilon(String),
    EpsilonOnInternal(String),
    BadEpsilon { id: String, epsilon: i64 },
    OmegaBelowEpsilon { id: String, omega: i64, epsilon: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "the tree has no nodes"),
            Violation::DuplicateId(id) => write!(f, "node id `{id}` is used more than once"),
            Violation::NoRoot => write!(f, "no node has a null parent"),
            Violation::SeveralRoots(ids) => {
                write!(f, "several nodes have a null parent: {}", ids.join(", "))
            }
            Violation::UnknownParent { id, parent } => {
                write!(f, "node `{id}` has unknown parent `{parent}`")
            }
            Violation::Unreachable(ids) => write!(
                f,
                "nodes not connected to the root (cycle): {}",
                ids.join(", ")
            ),
            Violation::RootOmega { id, omega } => {
                write!(f, "root `{id}` has omega {omega}, but the root omega is always 1")
            }
            Violation::RootEpsilon(id) => write!(f, "root `{id}` must not carry epsilon"),
            Violation::NonPositiveOmega { id, omega } => {
                write!(f, "node `{id}` has omega {omega}; omega must be at least 1")
            }
            Violation::NotBranching(id) => write!(
                f,
                "node `{id}` has exactly one child; every non-root internal node must be a branching point"
            ),
            Violation::MissingEpsilon(id) => write!(f, "leaf `{id}` has no epsilon"),
            Violation::EpsilonOnInternal(id) => {
                write!(f, "internal node `{id}` must not carry epsilon")
            }
            Violation::BadEpsilon { id, epsilon } => {
                write!(f, "leaf `{id}` has epsilon {epsilon}; epsilon must be 1 or 2")
            }
            Violation::OmegaBelowEpsilon { id, omega, epsilon } => write!(
                f,
                "leaf `{id}` has omega {omega} < epsilon {epsilon}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    id: String,
    parent: Option<usize>,
    children: Vec<usize>,
    omega: u64,
    epsilon: Option<u8>,
}

/// A validated spectral tree. Nodes are stored in preorder with the root
/// at index 0; children keep their input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTree {
    nodes: Vec<Node>,
}

impl SpectrumTree {
    pub fn from_json(text: &str) -> Result<Self> {
        RawTree::from_json(text)?.validate()
    }

    /// Checks every invariant and reports all violations at once.
    pub fn from_raw(raw: &RawTree) -> Result<Self> {
        let mut bad = Vec::new();
        if raw.nodes.is_empty() {
            return Err(Error::InvalidTree(ValidationReport {
                violations: vec![Violation::Empty],
            }));
        }

        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, n) in raw.nodes.iter().enumerate() {
            if index.insert(n.id.as_str(), i).is_some() {
                bad.push(Violation::DuplicateId(n.id.clone()));
            }
        }
        let roots: Vec<usize> = (0..raw.nodes.len())
            .filter(|&i| raw.nodes[i].parent.is_none())
            .collect();
        match roots.len() {
            0 => bad.push(Violation::NoRoot),
            1 => {}
            _ => bad.push(Violation::SeveralRoots(
                roots.iter().map(|&i| raw.nodes[i].id.clone()).collect(),
            )),
        }

        let mut children: Vec<Vec<usize>> = vec![Vec::new(); raw.nodes.len()];
        for (i, n) in raw.nodes.iter().enumerate() {
            if let Some(p) = &n.parent {
                match index.get(p.as_str()) {
                    Some(&j) => children[j].push(i),
                    None => bad.push(Violation::UnknownParent {
                        id: n.id.clone(),
                        parent: p.clone(),
                    }),
                }
            }
        }

        // reachability from the root(s)
        let mut seen = vec![false; raw.nodes.len()];
        let mut stack = roots.clone();
        while let Some(x) = stack.pop() {
            if std::mem::replace(&mut seen[x], true) {
                continue;
            }
            stack.extend(children[x].iter().copied());
        }
        let lost: Vec<String> = (0..raw.nodes.len())
            .filter(|&i| !seen[i] && raw.nodes[i].parent.as_deref().is_some_and(|p| index.contains_key(p)))
            .map(|i| raw.nodes[i].id.clone())
            .collect();
        if !lost.is_empty() {
            bad.push(Violation::Unreachable(lost));
        }

        for (i, n) in raw.nodes.iter().enumerate() {
            let is_root = n.parent.is_none();
            let is_leaf = children[i].is_empty();
            if is_root {
                if n.omega != 1 {
                    bad.push(Violation::RootOmega {
                        id: n.id.clone(),
                        omega: n.omega,
                    });
                }
                if n.epsilon.is_some() {
                    bad.push(Violation::RootEpsilon(n.id.clone()));
                }
                continue;
            }
            if n.omega < 1 {
                bad.push(Violation::NonPositiveOmega {
                    id: n.id.clone(),
                    omega: n.omega,
                });
            }
            if is_leaf {
                match n.epsilon {
                    None => bad.push(Violation::MissingEpsilon(n.id.clone())),
                    Some(e) if e != 1 && e != 2 => bad.push(Violation::BadEpsilon {
                        id: n.id.clone(),
                        epsilon: e,
                    }),
                    Some(e) if n.omega >= 1 && n.omega < e => {
                        bad.push(Violation::OmegaBelowEpsilon {
                            id: n.id.clone(),
                            omega: n.omega,
                            epsilon: e,
                        })
                    }
                    Some(_) => {}
                }
            } else {
                if children[i].len() == 1 {
                    bad.push(Violation::NotBranching(n.id.clone()));
                }
                if n.epsilon.is_some() {
                    bad.push(Violation::EpsilonOnInternal(n.id.clone()));
                }
            }
        }

        if !bad.is_empty() {
            return Err(Error::InvalidTree(ValidationReport { violations: bad }));
        }

        let mut nodes = Vec::with_capacity(raw.nodes.len());
        let mut stack = vec![(roots[0], None)];
        while let Some((x, parent)) = stack.pop() {
            let me = nodes.len();
            if let Some(p) = parent {
                let parent_node: &mut Node = &mut nodes[p];
                parent_node.children.push(me);
            }
            let n = &raw.nodes[x];
            nodes.push(Node {
                id: n.id.clone(),
                parent,
                children: Vec::new(),
                omega: n.omega as u64,
                epsilon: n.epsilon.map(|e| e as u8),
            });
            for &c in children[x].iter().rev() {
                stack.push((c, Some(me)));
            }
        }
        Ok(SpectrumTree { nodes })
    }

    pub fn to_raw(&self) -> RawTree {
        RawTree {
            nodes: self
                .nodes
                .iter()
                .map(|n| RawNode {
                    id: n.id.clone(),
                    parent: n.parent.map(|p| self.nodes[p].id.clone()),
                    omega: n.omega as i64,
                    epsilon: n.epsilon.map(i64::from),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("tree serializes")
    }

    /// The field: a lone root.
    pub fn field() -> Self {
        RawTree::new().node("0", None, 1, None).validate().expect("valid")
    }

    /// Root with a single leaf: a valuation domain.
    pub fn valuation(omega: u64, epsilon: u8) -> Result<Self> {
        Self::h_local(&[(omega, epsilon)])
    }

    /// Root with one leaf per `(omega, epsilon)` pair, named `M1`, `M2`, ….
    pub fn h_local(leaves: &[(u64, u8)]) -> Result<Self> {
        let mut raw = RawTree::new().node("0", None, 1, None);
        for (i, &(w, e)) in leaves.iter().enumerate() {
            raw = raw.node(&format!("M{}", i + 1), Some("0"), w as i64, Some(e as i64));
        }
        raw.validate()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn id(&self, node: usize) -> &str {
        &self.nodes[node].id
    }

    pub fn node_index(&self, id: &str) -> Result<usize> {
        self.nodes
            .iter()
            .position(|n| n.id == id)
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.nodes[node].parent
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.nodes[node].children
    }

    pub fn omega(&self, node: usize) -> u64 {
        self.nodes[node].omega
    }

    pub fn epsilon(&self, node: usize) -> Option<u8> {
        self.nodes[node].epsilon
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        self.nodes[node].children.is_empty()
    }

    /// The maximal ideals, in preorder. A lone root has none.
    pub fn leaves(&self) -> Vec<usize> {
        (1..self.len()).filter(|&i| self.is_leaf(i)).collect()
    }

    /// One branch per child of the root.
    pub fn standard_decomposition(&self) -> Vec<usize> {
        self.children(0).to_vec()
    }

    pub fn branch_count(&self) -> usize {
        self.children(0).len()
    }

    pub fn skeleton(&self) -> Skeleton {
        Skeleton::new(self.branch_count())
    }

    /// The same tree with `omega` changed at `node`; revalidated.
    pub fn with_omega(&self, node: usize, omega: u64) -> Result<Self> {
        let mut raw = self.to_raw();
        raw.nodes[node].omega = omega as i64;
        raw.validate()
    }

    /// The same tree with `epsilon` changed at leaf `node`; revalidated.
    pub fn with_epsilon(&self, node: usize, epsilon: u8) -> Result<Self> {
        let mut raw = self.to_raw();
        raw.nodes[node].epsilon = Some(epsilon as i64);
        raw.validate()
    }

    fn subtree_raw(&self, top: usize, raw: &mut RawTree, parent: &str) {
        let n = &self.nodes[top];
        raw.nodes.push(RawNode {
            id: n.id.clone(),
            parent: Some(parent.to_string()),
            omega: n.omega as i64,
            epsilon: n.epsilon.map(i64::from),
        });
        for &c in &n.children {
            self.subtree_raw(c, raw, &n.id);
        }
    }

    /// The tree of the overring cut out by the branch at root child `c`:
    /// the root followed by the subtree at `c`.
    pub fn branch_subtree(&self, c: usize) -> Result<Self> {
        if self.parent(c) != Some(0) {
            return Err(Error::Precondition(format!(
                "`{}` is not a child of the root",
                self.id(c)
            )));
        }
        let root = &self.nodes[0].id;
        let mut raw = RawTree::new().node(root, None, 1, None);
        self.subtree_raw(c, &mut raw, root);
        raw.validate()
    }

    /// The tree of the quotient by the prime at `p`: the subtree at `p`,
    /// re-rooted, with `omega(p)` reset to 1.
    pub fn quotient_subtree(&self, p: usize) -> Result<Self> {
        if p == 0 || p >= self.len() {
            return Err(Error::Precondition("quotient needs a non-root node".into()));
        }
        let n = &self.nodes[p];
        let mut raw = RawTree::new().node(&n.id, None, 1, None);
        for &c in &n.children {
            self.subtree_raw(c, &mut raw, &n.id);
        }
        raw.validate()
    }

    /// DOT rendering with `ω` (and `ε` at leaves) on every node.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph spectrum {\n  rankdir=BT;\n  node [shape=circle];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label = match n.epsilon {
                Some(e) => format!("{}\\nω={} ε={}", n.id, n.omega, e),
                None => format!("{}\\nω={}", n.id, n.omega),
            };
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(p) = n.parent {
                let _ = writeln!(out, "  n{p} -> n{i};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The skeleton: subsets of the branch set, ordered so that more branches
/// means a smaller ring. The full set is `D`, the empty set the quotient
/// field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Skeleton {
    m: usize,
}

impl Skeleton {
    pub fn new(m: usize) -> Self {
        assert!(m <= HARD_MAX_BRANCHES, "at most {HARD_MAX_BRANCHES} branches");
        Skeleton { m }
    }

    pub fn branch_count(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        1 << self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The ring `D`.
    pub fn full(&self) -> u32 {
        (1u32 << self.m) - 1
    }

    /// Ring inclusion: `a ≤ b` iff `a ⊇ b` as branch sets.
    pub fn leq(&self, a: u32, b: u32) -> bool {
        a & b == b
    }

    /// The skeleton as a poset; element `i` is the subset with mask `i`.
    pub fn poset(&self) -> Poset {
        Poset::from_fn(self.len(), |a, b| self.leq(a as u32, b as u32)).expect("boolean lattice")
    }
}

/// A union-closed family of branch subsets containing the empty set,
/// stored as a bit mask over subset masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Support {
    m: usize,
    family: u64,
}

impl Support {
    /// Checks the support invariants.
    pub fn new(m: usize, members: &[u32]) -> Result<Self> {
        if m > HARD_MAX_BRANCHES {
            return Err(Error::limit("branches in a support", HARD_MAX_BRANCHES as u64));
        }
        let mut family = 0u64;
        for &s in members {
            if s >= 1 << m {
                return Err(Error::Precondition(format!("subset {s:#b} outside {m} branches")));
            }
            family |= 1 << s;
        }
        let sup = Support { m, family };
        if !sup.contains(0) {
            return Err(Error::Precondition("a support contains the empty set".into()));
        }
        if !sup.is_union_closed() {
            return Err(Error::Precondition("a support is closed under unions".into()));
        }
        Ok(sup)
    }

    /// `{∅}`: the support of the trivial operation.
    pub fn trivial(m: usize) -> Self {
        Support { m, family: 1 }
    }

    pub fn branch_count(&self) -> usize {
        self.m
    }

    pub fn family_mask(&self) -> u64 {
        self.family
    }

    pub fn contains(&self, s: u32) -> bool {
        s < 64 && self.family >> s & 1 == 1
    }

    pub fn contains_full(&self) -> bool {
        self.contains((1 << self.m) - 1)
    }

    pub fn len(&self) -> usize {
        self.family.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.family == 0
    }

    pub fn members(&self) -> Vec<u32> {
        (0..1u32 << self.m).filter(|&s| self.contains(s)).collect()
    }

    /// Whether `self ⊇ other` as families.
    pub fn includes(&self, other: &Support) -> bool {
        self.family & other.family == other.family
    }

    fn is_union_closed(&self) -> bool {
        let ms = self.members();
        ms.iter().all(|&a| ms.iter().all(|&b| self.contains(a | b)))
    }

    /// The members containing branch `t`, ascending; `D` comes last.
    pub fn component(&self, t: usize) -> Vec<u32> {
        self.members().into_iter().filter(|s| s >> t & 1 == 1).collect()
    }

    /// [`component`](Self::component) as a poset under the skeleton order;
    /// element `i` is `component(t)[i]`.
    pub fn component_poset(&self, t: usize) -> Poset {
        let comp = self.component(t);
        Poset::from_fn(comp.len(), |i, j| comp[i] & comp[j] == comp[j]).expect("sub-order")
    }

    /// Members rendered as branch-index sets, e.g. `{∅, {0}, {0,1}}`.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .members()
            .into_iter()
            .map(|s| {
                if s == 0 {
                    "∅".to_string()
                } else {
                    let idx: Vec<String> = (0..self.m)
                        .filter(|t| s >> t & 1 == 1)
                        .map(|t| t.to_string())
                        .collect();
                    format!("{{{}}}", idx.join(","))
                }
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Every support on `m` branches, ordered by family mask.
///
/// Subsets are decided in increasing numeric order; a subset that is the
/// union of already chosen ones is forced in.
pub fn enumerate_supports(m: usize, bounds: &Bounds) -> Result<Vec<Support>> {
    if m > bounds.max_branches.min(HARD_MAX_BRANCHES) {
        return Err(Error::limit(
            "branches in the standard decomposition",
            bounds.max_branches.min(HARD_MAX_BRANCHES) as u64,
        ));
    }
    let n = 1u32 << m;
    let mut out = Vec::new();
    let mut stack: Vec<(u32, u64)> = vec![(1, 1)];
    while let Some((s, family)) = stack.pop() {
        if s == n {
            if out.len() as u64 >= bounds.max_maps {
                return Err(Error::limit("supports", bounds.max_maps));
            }
            out.push(Support { m, family });
            continue;
        }
        let mut union = 0u32;
        for a in 1..s {
            if family >> a & 1 == 1 && a & s == a {
                union |= a;
            }
        }
        if union == s {
            stack.push((s + 1, family | 1 << s));
        } else {
            stack.push((s + 1, family | 1 << s));
            stack.push((s + 1, family));
        }
    }
    out.sort();
    Ok(out)
}

/// Idempotency of a prime in a valuation segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeFlag {
    Idempotent,
    NonIdempotent,
}

/// `ω` of a segment: one per non-idempotent prime, two per idempotent one.
pub fn derive_omega(segment: &[PrimeFlag]) -> Result<u64> {
    if segment.is_empty() {
        return Err(Error::EmptySegment);
    }
    Ok(segment
        .iter()
        .map(|f| match f {
            PrimeFlag::Idempotent => 2,
            PrimeFlag::NonIdempotent => 1,
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn y_tree() -> RawTree {
        RawTree::new()
            .node("0", None, 1, None)
            .node("P", Some("0"), 3, None)
            .node("M1", Some("P"), 2, Some(2))
            .node("M2", Some("P"), 1, Some(1))
    }

    fn final_tree() -> RawTree {
        RawTree::new()
            .node("0", None, 1, None)
            .node("P", Some("0"), 2, None)
            .node("M1", Some("P"), 1, Some(1))
            .node("M2", Some("P"), 1, Some(1))
            .node("N", Some("0"), 3, Some(1))
    }

    fn violations(raw: &RawTree) -> Vec<Violation> {
        match raw.validate() {
            Err(Error::InvalidTree(r)) => r.violations,
            other => panic!("expected invalid tree, got {other:?}"),
        }
    }

    #[test]
    fn accepts_basic_shapes() {
        let y = y_tree().validate().unwrap();
        assert_eq!(y.branch_count(), 1);
        assert_eq!(y.leaves().len(), 2);
        let v = SpectrumTree::valuation(3, 2).unwrap();
        assert_eq!(v.branch_count(), 1);
        let f = final_tree().validate().unwrap();
        assert_eq!(f.branch_count(), 2);
        assert_eq!(SpectrumTree::h_local(&[(1, 1); 4]).unwrap().branch_count(), 4);
    }

    #[test]
    fn rejects_path() {
        let raw = RawTree::new()
            .node("0", None, 1, None)
            .node("P", Some("0"), 1, None)
            .node("M", Some("P"), 1, Some(1));
        assert_eq!(violations(&raw), vec![Violation::NotBranching("P".into())]);
    }

    #[test]
    fn collects_all_violations() {
        let raw = RawTree::new()
            .node("r", None, 2, Some(1))
            .node("a", Some("r"), 0, None)
            .node("b", Some("r"), 1, Some(2))
            .node("b", Some("zz"), 1, Some(3));
        let v = violations(&raw);
        assert!(v.contains(&Violation::RootOmega { id: "r".into(), omega: 2 }));
        assert!(v.contains(&Violation::RootEpsilon("r".into())));
        assert!(v.contains(&Violation::DuplicateId("b".into())));
        assert!(v.contains(&Violation::MissingEpsilon("a".into())));
        assert!(v.contains(&Violation::NonPositiveOmega { id: "a".into(), omega: 0 }));
        assert!(v.contains(&Violation::OmegaBelowEpsilon {
            id: "b".into(),
            omega: 1,
            epsilon: 2
        }));
        assert!(v.contains(&Violation::UnknownParent {
            id: "b".into(),
            parent: "zz".into()
        }));
    }

    #[test]
    fn rejects_cycles_and_extra_roots() {
        let raw = RawTree::new()
            .node("0", None, 1, None)
            .node("x", Some("y"), 1, None)
            .node("y", Some("x"), 1, None);
        assert!(violations(&raw)
            .iter()
            .any(|v| matches!(v, Violation::Unreachable(ids) if ids.len() == 2)));
        let two = RawTree::new().node("a", None, 1, None).node("b", None, 1, None);
        assert!(matches!(violations(&two)[0], Violation::SeveralRoots(_)));
    }

    #[test]
    fn json_contract() {
        let text = r#"{"nodes":[{"id":"0","parent":null,"omega":1},
            {"id":"M","parent":"0","omega":3,"epsilon":2}]}"#;
        let t = SpectrumTree::from_json(text).unwrap();
        assert_eq!(t.omega(1), 3);
        assert_eq!(t.epsilon(1), Some(2));
        assert!(RawTree::from_json(r#"{"nodes":[],"extra":1}"#).is_err());
        let back = SpectrumTree::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn surgery() {
        let f = final_tree().validate().unwrap();
        let p = f.node_index("P").unwrap();
        let n = f.node_index("N").unwrap();
        let bp = f.branch_subtree(p).unwrap();
        assert_eq!(bp.len(), 4);
        assert_eq!(bp.omega(bp.node_index("P").unwrap()), 2);
        let bn = f.branch_subtree(n).unwrap();
        assert_eq!(bn.len(), 2);
        assert_eq!(bn.omega(1), 3);
        let q = f.quotient_subtree(p).unwrap();
        assert_eq!(q.branch_count(), 2);
        assert_eq!(q.omega(0), 1);
        assert!(f.quotient_subtree(n).unwrap().len() == 1);
        assert!(f.branch_subtree(f.node_index("M1").unwrap()).is_err());
    }

    #[test]
    fn preorder_layout() {
        let f = final_tree().validate().unwrap();
        let ids: Vec<&str> = (0..f.len()).map(|i| f.id(i)).collect();
        assert_eq!(ids, ["0", "P", "M1", "M2", "N"]);
    }

    #[test]
    fn support_counts() {
        let b = Bounds::default();
        let counts: Vec<usize> = (0..=3).map(|m| enumerate_supports(m, &b).unwrap().len()).collect();
        assert_eq!(counts, [1, 2, 7, 61]);
        assert!(enumerate_supports(5, &b).is_err());
    }

    #[test]
    fn supports_are_valid_and_distinct() {
        let all = enumerate_supports(3, &Bounds::default()).unwrap();
        for s in &all {
            Support::new(3, &s.members()).unwrap();
        }
        let set: BTreeSet<u64> = all.iter().map(Support::family_mask).collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn components() {
        let d = Support::new(2, &[0, 0b11, 0b01]).unwrap();
        assert!(d.component_poset(0).is_chain());
        assert_eq!(d.component(0), vec![0b01, 0b11]);
        assert_eq!(d.component(1), vec![0b11]);
        let k = Support::trivial(2);
        assert!(k.component(0).is_empty() && k.component(1).is_empty());
        let full = Support::new(3, &(0..8).collect::<Vec<_>>()).unwrap();
        for t in 0..3 {
            let c = full.component_poset(t);
            assert_eq!(c.size(), 4);
            assert_eq!(c.covers().len(), 4);
        }
        assert!(Support::new(2, &[0, 1, 2]).is_err());
    }

    #[test]
    fn skeleton_order() {
        let s = Skeleton::new(2);
        assert_eq!(s.len(), 4);
        let p = s.poset();
        assert_eq!(p.minimum(), Some(3));
        assert_eq!(p.maximum(), Some(0));
    }

    #[test]
    fn omega_from_segments() {
        use PrimeFlag::*;
        assert_eq!(derive_omega(&[NonIdempotent]).unwrap(), 1);
        assert_eq!(derive_omega(&[Idempotent]).unwrap(), 2);
        assert_eq!(derive_omega(&[Idempotent, Idempotent, NonIdempotent]).unwrap(), 5);
        assert!(matches!(derive_omega(&[]), Err(Error::EmptySegment)));
    }

    #[test]
    fn dot_mentions_labels() {
        let dot = y_tree().validate().unwrap().to_dot();
        assert!(dot.contains("ω=3") && dot.contains("ε=2") && dot.contains("n1 -> n2"));
    }
}
