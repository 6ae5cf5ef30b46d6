//! Slow reference enumerations.
//!
//! Nothing here calls the counting, map enumeration, support enumeration
//! or tree surgery code of the other modules: orders are dense boolean
//! matrices, maps are found by plain backtracking, supports by filtering
//! every family of subsets, and the recursion walks the input tree directly.

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::spectrum::SpectrumTree;

/// Largest branch count accepted by the brute-force support filter.
pub const BRUTE_MAX_BRANCHES: usize = 3;
/// Largest `ω` accepted by [`brute_semistar_count`].
pub const BRUTE_MAX_OMEGA: u64 = 4;

#[derive(Debug, Clone)]
struct Dense {
    leq: Vec<Vec<bool>>,
}

impl Dense {
    fn of(p: &Poset) -> Self {
        let n = p.size();
        Dense {
            leq: (0..n).map(|x| (0..n).map(|y| p.leq(x, y)).collect()).collect(),
        }
    }

    fn chain(n: usize) -> Self {
        Dense {
            leq: (0..n).map(|x| (0..n).map(|y| x <= y).collect()).collect(),
        }
    }

    fn len(&self) -> usize {
        self.leq.len()
    }
}

/// Every map `p → q` with `x ≤ y ⇒ f(x) ≤ f(y)`, assigning elements in
/// index order and checking each new image against all earlier ones.
fn all_maps(p: &Dense, q: &Dense, limit: u64) -> Result<Vec<Vec<usize>>> {
    let n = p.len();
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    fn go(
        x: usize,
        p: &Dense,
        q: &Dense,
        f: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: u64,
    ) -> Result<()> {
        if x == p.len() {
            if out.len() as u64 >= limit {
                return Err(Error::limit("brute-force maps", limit));
            }
            out.push(f.clone());
            return Ok(());
        }
        for v in 0..q.len() {
            let ok = (0..x).all(|y| {
                (!p.leq[y][x] || q.leq[f[y]][v]) && (!p.leq[x][y] || q.leq[v][f[y]])
            });
            if ok {
                f[x] = v;
                go(x + 1, p, q, f, out, limit)?;
            }
        }
        Ok(())
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    go(0, p, q, &mut f, &mut out, limit)?;
    Ok(out)
}

/// `|hom(p, q)|` by exhaustive backtracking; refuses when `|q|^|p|`
/// exceeds `bounds.max_maps`.
pub fn brute_count_hom(p: &Poset, q: &Poset, bounds: &Bounds) -> Result<u128> {
    let space = (q.size() as u128).checked_pow(p.size() as u32);
    if space.is_none_or(|s| s > bounds.max_maps as u128) {
        return Err(Error::limit("brute-force map space", bounds.max_maps));
    }
    Ok(all_maps(&Dense::of(p), &Dense::of(q), u64::MAX)?.len() as u128)
}

/// Union-closed families of subsets of `m` branches that contain `∅`, as
/// ascending member lists, found by testing every family.
fn support_families(m: usize) -> Result<Vec<Vec<u32>>> {
    if m > BRUTE_MAX_BRANCHES {
        return Err(Error::limit("brute-force branches", BRUTE_MAX_BRANCHES as u64));
    }
    let nonempty = (1u32 << m) - 1;
    let mut out = Vec::new();
    for choice in 0u64..1 << nonempty {
        let mut members = vec![0u32];
        members.extend((1..=nonempty).filter(|s| choice >> (s - 1) & 1 == 1));
        let closed = members
            .iter()
            .all(|a| members.iter().all(|b| members.contains(&(a | b))));
        if closed {
            out.push(members);
        }
    }
    Ok(out)
}

/// Number of union-closed families on `m ≤ 3` branches containing `∅`.
pub fn brute_supports(m: usize) -> Result<u64> {
    Ok(support_families(m)?.len() as u64)
}

struct Flagged {
    order: Dense,
    flags: Vec<bool>,
}

/// One semistar operation at a node: support members and, per branch,
/// `(member, image)` pairs.
struct Op {
    members: Vec<u32>,
    images: Vec<Vec<(u32, usize)>>,
}

fn image_of(op: &Op, t: usize, s: u32) -> usize {
    op.images[t].iter().find(|(x, _)| *x == s).expect("member of the component").1
}

fn component(members: &[u32], t: usize) -> Vec<u32> {
    members.iter().copied().filter(|s| s >> t & 1 == 1).collect()
}

fn component_order(comp: &[u32]) -> Dense {
    Dense {
        leq: comp
            .iter()
            .map(|&a| comp.iter().map(|&b| a & b == b).collect())
            .collect(),
    }
}

fn check_labels(tree: &SpectrumTree) -> Result<()> {
    for x in 0..tree.len() {
        if tree.children(x).len() > BRUTE_MAX_BRANCHES {
            return Err(Error::limit("brute-force branches", BRUTE_MAX_BRANCHES as u64));
        }
        if x > 0 && tree.omega(x) > BRUTE_MAX_OMEGA {
            return Err(Error::limit("brute-force omega", BRUTE_MAX_OMEGA));
        }
    }
    Ok(())
}

/// `FStar` of the branch below `c`.
fn fstar_at(tree: &SpectrumTree, c: usize, bounds: &Bounds) -> Result<Flagged> {
    let w = tree.omega(c) as usize;
    if let Some(e) = tree.epsilon(c) {
        return Ok(Flagged {
            order: Dense::chain(w),
            flags: (0..w).map(|i| i < e as usize).collect(),
        });
    }
    let ops = semistar_ops(tree, c, bounds)?;
    let branches = branch_posets(tree, c, bounds)?;
    let keep: Vec<usize> = (0..ops.len()).filter(|&i| ops[i].members != [0]).collect();
    let lower = keep.len();
    let n = lower + w;
    let mut leq = vec![vec![false; n]; n];
    for (i, &a) in keep.iter().enumerate() {
        for (j, &b) in keep.iter().enumerate() {
            leq[i][j] = op_leq(&ops[a], &ops[b], &branches);
        }
        for cell in leq[i].iter_mut().skip(lower) {
            *cell = true;
        }
    }
    for i in 0..w {
        for j in i..w {
            leq[lower + i][lower + j] = true;
        }
    }
    let mut flags: Vec<bool> = keep
        .iter()
        .map(|&a| op_flagged(&ops[a], &branches, tree.children(c).len()))
        .collect();
    flags.resize(n, false);
    Ok(Flagged {
        order: Dense { leq },
        flags,
    })
}

fn branch_posets(tree: &SpectrumTree, node: usize, bounds: &Bounds) -> Result<Vec<Flagged>> {
    tree.children(node)
        .iter()
        .map(|&c| fstar_at(tree, c, bounds))
        .collect()
}

fn op_leq(a: &Op, b: &Op, branches: &[Flagged]) -> bool {
    if !b.members.iter().all(|s| a.members.contains(s)) {
        return false;
    }
    for &s in &b.members {
        for (t, f) in branches.iter().enumerate() {
            if s >> t & 1 == 1 && !f.order.leq[image_of(a, t, s)][image_of(b, t, s)] {
                return false;
            }
        }
    }
    true
}

fn op_flagged(op: &Op, branches: &[Flagged], m: usize) -> bool {
    let full = (1u32 << m) - 1;
    op.members.contains(&full)
        && branches
            .iter()
            .enumerate()
            .all(|(t, f)| f.flags[image_of(op, t, full)])
}

/// Every semistar operation of the quotient at `node`, explicitly.
fn semistar_ops(tree: &SpectrumTree, node: usize, bounds: &Bounds) -> Result<Vec<Op>> {
    let m = tree.children(node).len();
    let branches = branch_posets(tree, node, bounds)?;
    let mut ops = Vec::new();
    for members in support_families(m)? {
        let mut partial: Vec<Vec<Vec<(u32, usize)>>> = vec![Vec::new()];
        for (t, f) in branches.iter().enumerate() {
            let comp = component(&members, t);
            let maps = all_maps(&component_order(&comp), &f.order, bounds.max_maps)?;
            let mut next = Vec::with_capacity(partial.len() * maps.len());
            for prefix in &partial {
                for map in &maps {
                    let mut v = prefix.clone();
                    v.push(comp.iter().copied().zip(map.iter().copied()).collect());
                    next.push(v);
                }
            }
            if next.len() as u64 > bounds.max_maps {
                return Err(Error::limit("brute-force operations", bounds.max_maps));
            }
            partial = next;
        }
        for images in partial {
            ops.push(Op {
                members: members.clone(),
                images,
            });
        }
    }
    Ok(ops)
}

/// `(|Semistar|, |SmStar|)` by direct enumeration. Requires at most three
/// children at every node and every `ω ≤ 4`.
pub fn brute_semistar_count(tree: &SpectrumTree, bounds: &Bounds) -> Result<(u128, u128)> {
    check_labels(tree)?;
    let m = tree.branch_count();
    let branches = branch_posets(tree, 0, bounds)?;
    let full = (1u32 << m) - 1;
    let mut semistar = 0u128;
    let mut smstar = 0u128;
    for members in support_families(m)? {
        let mut tuples = 1u128;
        let mut flagged = 1u128;
        for (t, f) in branches.iter().enumerate() {
            let comp = component(&members, t);
            let maps = all_maps(&component_order(&comp), &f.order, bounds.max_maps)?;
            tuples *= maps.len() as u128;
            if let Some(d) = comp.iter().position(|&s| s == full) {
                flagged *= maps.iter().filter(|map| f.flags[map[d]]).count() as u128;
            }
        }
        semistar += tuples;
        if members.contains(&full) {
            smstar += flagged;
        }
    }
    Ok((semistar, smstar))
}

/// Named trees covering every shape the oracle supports: valuations,
/// h-local with two and three maximal ideals, the Y shape, and a Y branch
/// next to a valuation branch; `ω ∈ {1..4}`, `ε ∈ {1, 2}`, `ε ≤ ω`.
pub fn test_lattice() -> Vec<(String, SpectrumTree)> {
    let labels: Vec<(u64, u8)> = (1..=4u64)
        .flat_map(|w| (1..=2u8).filter(move |&e| e as u64 <= w).map(move |e| (w, e)))
        .collect();
    let mut out = Vec::new();
    for &l in &labels {
        out.push((format!("valuation {l:?}"), SpectrumTree::h_local(&[l]).expect("valid")));
    }
    for &a in &labels {
        for &b in &labels {
            out.push((format!("h-local {a:?} {b:?}"), SpectrumTree::h_local(&[a, b]).expect("valid")));
        }
    }
    for &a in &labels {
        for &b in &labels {
            for &c in &labels {
                out.push((
                    format!("h-local {a:?} {b:?} {c:?}"),
                    SpectrumTree::h_local(&[a, b, c]).expect("valid"),
                ));
            }
        }
    }
    for p in 1..=4 {
        for &a in &labels {
            for &b in &labels {
                out.push((format!("Y {p} {a:?} {b:?}"), y_shape(p, a, b, None)));
            }
        }
    }
    for p in 1..=4 {
        for &a in &labels {
            for &b in &labels {
                for &n in &labels {
                    out.push((
                        format!("Y+valuation {p} {a:?} {b:?} {n:?}"),
                        y_shape(p, a, b, Some(n)),
                    ));
                }
            }
        }
    }
    out
}

fn y_shape(p: u64, a: (u64, u8), b: (u64, u8), n: Option<(u64, u8)>) -> SpectrumTree {
    let mut raw = crate::spectrum::RawTree::new()
        .node("0", None, 1, None)
        .node("P", Some("0"), p as i64, None)
        .node("M1", Some("P"), a.0 as i64, Some(a.1 as i64))
        .node("M2", Some("P"), b.0 as i64, Some(b.1 as i64));
    if let Some((w, e)) = n {
        raw = raw.node("N", Some("0"), w as i64, Some(e as i64));
    }
    raw.validate().expect("valid")
}
