use super::Poset;

/// Order-isomorphism test by backtracking.
///
/// Candidates are pruned by a per-element signature (sizes of the down- and
/// up-set); intended for the small posets that show up in structural checks.
pub fn is_isomorphic(a: &Poset, b: &Poset) -> bool {
    let n = a.size();
    if n != b.size() || a.comparable_pairs() != b.comparable_pairs() {
        return false;
    }
    let signature = |p: &Poset, x: usize| {
        (
            p.down_set(x).count_ones(..),
            p.up_set(x).count_ones(..),
        )
    };
    let sig_a: Vec<_> = (0..n).map(|x| signature(a, x)).collect();
    let sig_b: Vec<_> = (0..n).map(|x| signature(b, x)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return false;
    }

    let order = a.linear_extension();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(a, b, &order, &sig_a, &sig_b, 0, &mut image, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Poset,
    b: &Poset,
    order: &[usize],
    sig_a: &[(usize, usize)],
    sig_b: &[(usize, usize)],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..b.size() {
        if used[y] || sig_a[x] != sig_b[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&z| {
            let w = image[z];
            a.leq(z, x) == b.leq(w, y) && a.leq(x, z) == b.leq(y, w)
        });
        if !consistent {
            continue;
        }
        image[x] = y;
        used[y] = true;
        if extend(a, b, order, sig_a, sig_b, depth + 1, image, used) {
            return true;
        }
        used[y] = false;
    }
    image[x] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_and_sums() {
        let c5 = Poset::chain(5);
        assert!(is_isomorphic(&Poset::chain(2).ordinal_sum(&Poset::chain(3)), &c5));
        assert!(!is_isomorphic(&Poset::antichain(5), &c5));
        let n = Poset::from_relations(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        assert!(is_isomorphic(&n, &n.dual().dual()));
        assert!(!is_isomorphic(&n, &Poset::chain(2).product(&Poset::chain(2))));
    }
}
