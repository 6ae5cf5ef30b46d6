//! Order-preserving maps: enumeration, counting and the order polynomial
//! `n ↦ |hom(P, Q ⊕ chain(n))|`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::Poset;
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::poly::{interpolate, MultiPoly, Rational};

/// An order-preserving map, stored as the image of each source element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderMap {
    images: Vec<usize>,
}

impl OrderMap {
    /// Checks that `images` is an order-preserving map `source → target`.
    pub fn new(source: &Poset, target: &Poset, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.size() {
            return Err(Error::Precondition(format!(
                "map has {} images for a {}-element source",
                images.len(),
                source.size()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= target.size()) {
            return Err(Error::Precondition(format!(
                "image {bad} outside a {}-element target",
                target.size()
            )));
        }
        for x in 0..source.size() {
            for y in source.up_set(x).ones() {
                if !target.leq(images[x], images[y]) {
                    return Err(Error::Precondition(format!(
                        "{x} <= {y} but {} !<= {}",
                        images[x], images[y]
                    )));
                }
            }
        }
        Ok(OrderMap { images })
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Pointwise order on `hom(source, target)`.
    pub fn leq(&self, other: &OrderMap, target: &Poset) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| target.leq(a, b))
    }
}

/// All order-preserving maps `p → q`, sorted lexicographically by images.
pub fn enum_hom(p: &Poset, q: &Poset, bounds: &Bounds) -> Result<Vec<OrderMap>> {
    let k = p.size();
    if k == 0 {
        return Ok(vec![OrderMap { images: Vec::new() }]);
    }
    let order = p.linear_extension();
    let lower: Vec<Vec<usize>> = order
        .iter()
        .map(|&x| p.down_set(x).ones().filter(|&y| y != x).collect())
        .collect();
    let mut full = FixedBitSet::with_capacity(q.size());
    full.insert_range(..);

    let mut out = Vec::new();
    let mut images = vec![usize::MAX; k];
    let mut cands: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut cursor = vec![0usize; k];
    let candidates = |i: usize, images: &[usize]| {
        let mut c = full.clone();
        for &y in &lower[i] {
            c.intersect_with(q.up_set(images[y]));
        }
        c.ones().collect::<Vec<_>>()
    };
    cands[0] = candidates(0, &images);
    let mut depth = 0usize;
    loop {
        if cursor[depth] == cands[depth].len() {
            if depth == 0 {
                break;
            }
            cursor[depth] = 0;
            depth -= 1;
            cursor[depth] += 1;
            continue;
        }
        images[order[depth]] = cands[depth][cursor[depth]];
        if depth + 1 == k {
            out.push(OrderMap {
                images: images.clone(),
            });
            if out.len() as u64 > bounds.max_maps {
                return Err(Error::limit("order-preserving map enumeration", bounds.max_maps));
            }
            cursor[depth] += 1;
        } else {
            depth += 1;
            cands[depth] = candidates(depth, &images);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `|hom(p, q)|`.
///
/// Chain targets use the down-set recursion (a map into a chain is a chain of
/// down-sets); other targets use a dynamic program that places the elements
/// of `p` one at a time, keyed by the images of placed elements that still
/// have an unplaced cover neighbour.
pub fn count_hom(p: &Poset, q: &Poset) -> Result<u128> {
    if p.is_empty() {
        return Ok(1);
    }
    if q.is_empty() {
        return Ok(0);
    }
    if q.is_chain() {
        if let Some(count) = count_into_chain(p, q.size())? {
            return Ok(count);
        }
    }
    count_frontier(p, q, &vec![None; p.size()])
}

/// Number of order-preserving maps `ψ: p → q` with `ψ(x) ∈ allowed[x]`
/// whenever `allowed[x]` is set.
pub fn count_hom_restricted(
    p: &Poset,
    q: &Poset,
    allowed: &[Option<FixedBitSet>],
) -> Result<u128> {
    if allowed.len() != p.size() {
        return Err(Error::Precondition(
            "one restriction slot per source element".into(),
        ));
    }
    let allowed: Vec<Option<&FixedBitSet>> = allowed.iter().map(Option::as_ref).collect();
    count_frontier(p, q, &allowed)
}

const CHAIN_DP_MAX_DOWN_SETS: usize = 4096;

/// `|hom(p, chain(n))|` through chains of down-sets, or `None` when `p` has
/// too many down-sets for the quadratic table.
fn count_into_chain(p: &Poset, n: usize) -> Result<Option<u128>> {
    let bounds = Bounds {
        max_maps: CHAIN_DP_MAX_DOWN_SETS as u64,
        ..Bounds::default()
    };
    let masks = match p.down_set_masks(&bounds) {
        Ok(m) => m,
        Err(Error::EnumerationLimit { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let subsets: Vec<Vec<usize>> = masks
        .iter()
        .map(|&big| {
            masks
                .iter()
                .enumerate()
                .filter(|&(_, &small)| small & !big == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let full = masks.len() - 1;
    let degree = p.size();

    // values[j] = |hom(p, chain(j))| for j = 0..=min(n, degree)
    let steps = n.min(degree);
    let mut values = vec![0u128; steps + 1];
    let mut g = vec![1u128; masks.len()];
    if steps >= 1 {
        values[1] = g[full];
    }
    for j in 2..=steps {
        let next: Vec<u128> = subsets
            .iter()
            .map(|subs| {
                subs.iter()
                    .try_fold(0u128, |acc, &i| acc.checked_add(g[i]))
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<_>>()?;
        g = next;
        values[j] = g[full];
    }
    if n <= degree {
        return Ok(Some(values[n]));
    }
    // Degree-|p| polynomial in n through the nodes 0..=degree.
    let x = BigInt::from(n);
    let mut acc = BigRational::zero();
    for i in 0..=degree {
        let mut term = BigRational::from_integer(BigInt::from(values[i]));
        for j in 0..=degree {
            if i != j {
                term *= BigRational::new(&x - j, BigInt::from(i as i64 - j as i64));
            }
        }
        acc += term;
    }
    debug_assert!(acc.is_integer());
    acc.to_integer().to_u128().map(Some).ok_or(Error::Overflow)
}

/// Largest number of partial-assignment states kept by the frontier DP.
const FRONTIER_STATE_LIMIT: usize = 1 << 20;

/// Elements of `p` in the order the frontier DP places them: each step picks
/// the element leaving the fewest placed elements with an unplaced cover
/// neighbour.
fn elimination_order(p: &Poset, neighbours: &[Vec<usize>]) -> Vec<usize> {
    let k = p.size();
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best: Option<(usize, usize, usize)> = None;
        for x in 0..k {
            if placed[x] {
                continue;
            }
            placed[x] = true;
            let mut frontier = 0;
            for y in 0..k {
                if placed[y] && neighbours[y].iter().any(|&z| !placed[z]) {
                    frontier += 1;
                }
            }
            placed[x] = false;
            let unplaced_nbrs = neighbours[x].iter().filter(|&&z| !placed[z]).count();
            let score = (frontier, unplaced_nbrs, x);
            if best.is_none_or(|b| score < b) {
                best = Some(score);
            }
        }
        let x = best.expect("an unplaced element remains").2;
        placed[x] = true;
        order.push(x);
    }
    order
}

fn count_frontier(p: &Poset, q: &Poset, allowed: &[Option<&FixedBitSet>]) -> Result<u128> {
    let k = p.size();
    if k == 0 {
        return Ok(1);
    }
    // a map preserves order iff it preserves covers
    let covers = p.covers();
    let mut lower_covers = vec![Vec::new(); k];
    let mut upper_covers = vec![Vec::new(); k];
    let mut neighbours = vec![Vec::new(); k];
    for &(lo, hi) in &covers {
        upper_covers[lo].push(hi);
        lower_covers[hi].push(lo);
        neighbours[lo].push(hi);
        neighbours[hi].push(lo);
    }
    let order = elimination_order(p, &neighbours);
    let mut pos = vec![0usize; k];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    // frontier[i]: placed by step i with a cover neighbour placed later
    let frontier: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            order[..=i]
                .iter()
                .copied()
                .filter(|&x| neighbours[x].iter().any(|&z| pos[z] > i))
                .collect()
        })
        .collect();

    let plan = Plan {
        q,
        allowed,
        order: &order,
        pos: &pos,
        lower_covers: &lower_covers,
        upper_covers: &upper_covers,
        frontier: &frontier,
    };

    let mut layer: HashMap<Vec<u32>, u128> = HashMap::from([(Vec::new(), 1)]);
    for (i, &x) in order.iter().enumerate() {
        let prev: &[usize] = if i == 0 { &[] } else { &frontier[i - 1] };
        let slot_of = |y: usize| prev.iter().position(|&z| z == y);
        let below: Vec<usize> = lower_covers[x].iter().filter_map(|&y| slot_of(y)).collect();
        let above: Vec<usize> = upper_covers[x].iter().filter_map(|&y| slot_of(y)).collect();
        let source: Vec<Option<usize>> = frontier[i]
            .iter()
            .map(|&y| if y == x { None } else { Some(slot_of(y).expect("frontier only shrinks")) })
            .collect();
        let keeps_x = source.iter().any(Option::is_none);

        let mut next: HashMap<Vec<u32>, u128> = HashMap::with_capacity(layer.len());
        let mut overflowed = false;
        for (key, &count) in &layer {
            let mut cand = plan.everything(x);
            for &j in &below {
                cand.intersect_with(q.up_set(key[j] as usize));
            }
            for &j in &above {
                cand.intersect_with(q.down_set(key[j] as usize));
            }
            if keeps_x {
                for v in cand.ones() {
                    let new_key: Vec<u32> = source
                        .iter()
                        .map(|s| s.map_or(v as u32, |j| key[j]))
                        .collect();
                    let slot = next.entry(new_key).or_insert(0);
                    *slot = slot.checked_add(count).ok_or(Error::Overflow)?;
                }
            } else {
                let c = cand.count_ones(..) as u128;
                if c == 0 {
                    continue;
                }
                let new_key: Vec<u32> = source.iter().map(|s| key[s.unwrap()]).collect();
                let add = count.checked_mul(c).ok_or(Error::Overflow)?;
                let slot = next.entry(new_key).or_insert(0);
                *slot = slot.checked_add(add).ok_or(Error::Overflow)?;
            }
            if next.len() > FRONTIER_STATE_LIMIT {
                overflowed = true;
                break;
            }
        }
        if overflowed {
            // too many states to store: finish each one depth-first
            drop(next);
            let mut total = 0u128;
            let mut images = vec![u32::MAX; k];
            for (key, count) in layer {
                for (&y, &v) in prev.iter().zip(&key) {
                    images[y] = v;
                }
                let rest = plan.depth_first(i, &mut images)?;
                total = total
                    .checked_add(count.checked_mul(rest).ok_or(Error::Overflow)?)
                    .ok_or(Error::Overflow)?;
            }
            return Ok(total);
        }
        layer = next;
    }
    layer
        .into_values()
        .try_fold(0u128, |acc, c| acc.checked_add(c))
        .ok_or(Error::Overflow)
}

struct Plan<'a> {
    q: &'a Poset,
    allowed: &'a [Option<&'a FixedBitSet>],
    order: &'a [usize],
    pos: &'a [usize],
    lower_covers: &'a [Vec<usize>],
    upper_covers: &'a [Vec<usize>],
    frontier: &'a [Vec<usize>],
}

impl Plan<'_> {
    fn everything(&self, x: usize) -> FixedBitSet {
        match self.allowed[x] {
            Some(a) => a.clone(),
            None => {
                let mut all = FixedBitSet::with_capacity(self.q.size());
                all.insert_range(..);
                all
            }
        }
    }

    /// Maps extending `images` on the elements placed before `step`.
    fn depth_first(&self, step: usize, images: &mut [u32]) -> Result<u128> {
        if step == self.order.len() {
            return Ok(1);
        }
        let x = self.order[step];
        let mut cand = self.everything(x);
        for &y in &self.lower_covers[x] {
            if self.pos[y] < step {
                cand.intersect_with(self.q.up_set(images[y] as usize));
            }
        }
        for &y in &self.upper_covers[x] {
            if self.pos[y] < step {
                cand.intersect_with(self.q.down_set(images[y] as usize));
            }
        }
        if !self.frontier[step].contains(&x) {
            // nothing placed later looks at x
            let c = cand.count_ones(..) as u128;
            if c == 0 {
                return Ok(0);
            }
            return c.checked_mul(self.depth_first(step + 1, images)?).ok_or(Error::Overflow);
        }
        let mut total = 0u128;
        for v in cand.ones() {
            images[x] = v as u32;
            total = total
                .checked_add(self.depth_first(step + 1, images)?)
                .ok_or(Error::Overflow)?;
        }
        Ok(total)
    }
}

/// Stanley's order polynomial `n ↦ |hom(p, chain(n))|`, in the variable `n`.
pub fn order_polynomial(p: &Poset) -> Result<MultiPoly> {
    if p.is_empty() {
        return Ok(MultiPoly::constant_in(&["n"], Rational::from_integer(1.into())));
    }
    interpolate(&[("n".to_string(), p.size() as u32)], |pt| {
        let n = pt[0] as usize;
        Ok(Rational::from_integer(count_hom(p, &Poset::chain(n))?.into()))
    })
}

/// `H_{P,Q}(n) = |hom(P, Q ⊕ chain(n))|` as a polynomial in `n`.
///
/// Summed over the down-sets `Δ` of `p`: maps sending exactly `Δ` into `q`
/// number `|hom(Δ, q)| · |hom(p ∖ Δ, chain(n))|`.
pub fn hom_polynomial(p: &Poset, q: &Poset, bounds: &Bounds) -> Result<MultiPoly> {
    let mut total = MultiPoly::zero_in(&["n"]);
    for mask in p.down_set_masks(bounds)? {
        let (inside, outside): (Vec<usize>, Vec<usize>) =
            (0..p.size()).partition(|&x| mask >> x & 1 == 1);
        let lower = count_hom(&p.induced(&inside), q)?;
        if lower == 0 {
            continue;
        }
        let upper = order_polynomial(&p.induced(&outside))?;
        total = &total + &upper.scale(&Rational::from_integer(lower.into()));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        Poset::chain(2).product(&Poset::chain(2))
    }

    #[test]
    fn small_hom_sets() {
        let b = Bounds::default();
        let q = Poset::antichain(3).ordinal_sum(&Poset::chain(1));
        assert_eq!(enum_hom(&Poset::chain(1), &q, &b).unwrap().len(), 4);
        assert_eq!(enum_hom(&diamond(), &Poset::chain(1), &b).unwrap().len(), 1);
        let maps = enum_hom(&Poset::chain(2), &Poset::chain(2), &b).unwrap();
        let images: Vec<&[usize]> = maps.iter().map(|m| m.images()).collect();
        assert_eq!(images, vec![&[0, 0][..], &[0, 1], &[1, 1]]);
    }

    #[test]
    fn counts_match_known_values() {
        assert_eq!(count_hom(&Poset::chain(2), &Poset::chain(3)).unwrap(), 6);
        for n in 0..6 {
            assert_eq!(
                count_hom(&Poset::antichain(2), &Poset::chain(n)).unwrap(),
                (n * n) as u128
            );
        }
        assert_eq!(count_hom(&diamond(), &Poset::chain(2)).unwrap(), 6);
        assert_eq!(count_hom(&Poset::empty(), &Poset::empty()).unwrap(), 1);
        assert_eq!(count_hom(&Poset::chain(1), &Poset::empty()).unwrap(), 0);
    }

    #[test]
    fn chain_path_extrapolates_exactly() {
        // 2x2 grid into chain(n): n(n+1)^2(n+2)/12
        for n in [4usize, 7, 30, 200] {
            let expected = (n * (n + 1) * (n + 1) * (n + 2) / 12) as u128;
            assert_eq!(count_hom(&diamond(), &Poset::chain(n)).unwrap(), expected);
        }
    }

    #[test]
    fn general_path_agrees_with_enumeration() {
        let b = Bounds::default();
        let q = diamond().ordinal_sum(&Poset::antichain(2));
        for p in [diamond(), Poset::antichain(3), Poset::chain(3), q.clone()] {
            let enumerated = enum_hom(&p, &q, &b).unwrap().len() as u128;
            assert_eq!(count_hom(&p, &q).unwrap(), enumerated);
        }
    }

    #[test]
    fn restricted_count() {
        // maps chain(2) -> chain(3) whose bottom lands on 0 or 1: 3 + 2
        let mut allowed = FixedBitSet::with_capacity(3);
        allowed.insert_range(0..2);
        let n = count_hom_restricted(&Poset::chain(2), &Poset::chain(3), &[Some(allowed), None])
            .unwrap();
        assert_eq!(n, 5);
    }

    #[test]
    fn order_map_validation() {
        let c2 = Poset::chain(2);
        assert!(OrderMap::new(&c2, &c2, vec![1, 0]).is_err());
        assert!(OrderMap::new(&c2, &c2, vec![0, 2]).is_err());
        let m = OrderMap::new(&c2, &c2, vec![0, 1]).unwrap();
        assert_eq!(m.image(1), 1);
    }
}
