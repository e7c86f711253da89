//! Homomorphism checks between finite inverse semigroups and a backtracking
//! isomorphism search.

use crate::semigroup::{InverseSemigroup, ZERO};

/// Checks that `map` is a zero-preserving semigroup homomorphism; returns
/// the first failing pair.
pub fn check_homomorphism(s: &InverseSemigroup, t: &InverseSemigroup, map: &[usize]) -> Result<(), (usize, usize)> {
    assert_eq!(map.len(), s.size(), "map must cover every element");
    if map[ZERO] != ZERO {
        return Err((ZERO, ZERO));
    }
    for a in s.elements() {
        for b in s.elements() {
            if map[s.mul(a, b)] != t.mul(map[a], map[b]) {
                return Err((a, b));
            }
        }
    }
    Ok(())
}

pub fn is_bijection(map: &[usize], target_size: usize) -> bool {
    if map.len() != target_size {
        return false;
    }
    let mut seen = vec![false; target_size];
    map.iter()
        .all(|&y| y < target_size && !std::mem::replace(&mut seen[y], true))
}

pub fn is_isomorphism(s: &InverseSemigroup, t: &InverseSemigroup, map: &[usize]) -> bool {
    is_bijection(map, t.size()) && check_homomorphism(s, t, map).is_ok()
}

/// A greedy semigroup generating set, preferring elements high in the
/// natural order.
pub fn generating_set(s: &InverseSemigroup) -> Vec<usize> {
    let mut order: Vec<usize> = s.elements().collect();
    let down: Vec<usize> = order.iter().map(|&a| s.down_set(a).len()).collect();
    order.sort_by_key(|&a| (std::cmp::Reverse(down[a]), a));
    let mut gens = Vec::new();
    let mut span = vec![false; s.size()];
    for a in order {
        if !span[a] {
            gens.push(a);
            span = closure(s, &gens);
        }
    }
    gens
}

fn closure(s: &InverseSemigroup, gens: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; s.size()];
    let mut queue: Vec<usize> = Vec::new();
    for &g in gens {
        if !std::mem::replace(&mut seen[g], true) {
            queue.push(g);
        }
    }
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for &g in gens {
            let y = s.mul(x, g);
            if !std::mem::replace(&mut seen[y], true) {
                queue.push(y);
            }
        }
        i += 1;
    }
    seen
}

fn signature(s: &InverseSemigroup, green: &crate::semigroup::GreenData, a: usize) -> [usize; 5] {
    [
        s.is_idempotent(a) as usize,
        s.down_set(a).len(),
        s.up_set(a).len(),
        green.classes[green.class_of_element(a)].len(),
        (s.dom(a) == s.ran(a)) as usize,
    ]
}

/// Searches for an isomorphism `s → t`. Images of a generating set are
/// chosen by backtracking among elements with matching order-theoretic
/// signatures; the rest of the map is forced.
pub fn find_isomorphism(s: &InverseSemigroup, t: &InverseSemigroup) -> Option<Vec<usize>> {
    if s.size() != t.size() || s.idempotents().len() != t.idempotents().len() {
        return None;
    }
    let (gs, gt) = (s.green_data(), t.green_data());
    let mut sizes_s = gs.class_sizes();
    let mut sizes_t = gt.class_sizes();
    sizes_s.sort_unstable();
    sizes_t.sort_unstable();
    if sizes_s != sizes_t {
        return None;
    }
    let sig_s: Vec<_> = s.elements().map(|a| signature(s, &gs, a)).collect();
    let sig_t: Vec<_> = t.elements().map(|a| signature(t, &gt, a)).collect();
    let gens = generating_set(s);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| t.elements().filter(|&x| sig_t[x] == sig_s[g]).collect())
        .collect();
    let mut images = Vec::new();
    search(s, t, &gens, &candidates, &mut images)
}

fn search(
    s: &InverseSemigroup,
    t: &InverseSemigroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let partial = propagate(s, t, &gens[..images.len()], images)?;
    if images.len() == gens.len() {
        return (partial.iter().all(|&y| y != usize::MAX) && is_isomorphism(s, t, &partial)).then_some(partial);
    }
    for &c in &candidates[images.len()] {
        if images.contains(&c) {
            continue;
        }
        images.push(c);
        if let Some(m) = search(s, t, gens, candidates, images) {
            return Some(m);
        }
        images.pop();
    }
    None
}

/// Extends generator images to the subsemigroup they generate; `None` on a
/// conflict or a non-injective assignment.
fn propagate(s: &InverseSemigroup, t: &InverseSemigroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; s.size()];
    let mut used = vec![usize::MAX; t.size()];
    let mut queue = Vec::new();
    let mut assign = |x: usize, y: usize, map: &mut Vec<usize>, queue: &mut Vec<usize>| -> bool {
        if map[x] == usize::MAX {
            if used[y] != usize::MAX {
                return false;
            }
            map[x] = y;
            used[y] = x;
            queue.push(x);
            true
        } else {
            map[x] == y
        }
    };
    if !assign(ZERO, ZERO, &mut map, &mut queue) {
        return None;
    }
    for (&g, &h) in gens.iter().zip(images) {
        if !assign(g, h, &mut map, &mut queue) {
            return None;
        }
    }
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&g, &h) in gens.iter().zip(images) {
            let (y, fy) = (s.mul(x, g), t.mul(map[x], h));
            if !assign(y, fy, &mut map, &mut queue) {
                return None;
            }
            let (y, fy) = (s.mul(g, x), t.mul(h, map[x]));
            if !assign(y, fy, &mut map, &mut queue) {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boolean_algebra, group_with_zero, zero_direct_union};
    use crate::group::FiniteGroup;
    use crate::pperm::{generate, symmetric_inverse_semigroup, PartialPerm};

    #[test]
    fn finds_isomorphism_between_presentations_of_i2() {
        let a = symmetric_inverse_semigroup(2);
        let swap = PartialPerm::new(2, &[(0, 1), (1, 0)]).unwrap();
        let id1 = PartialPerm::new(2, &[(0, 0)]).unwrap();
        let (b, _) = generate(&[id1, swap], 100).unwrap();
        let iso = find_isomorphism(&a, &b).expect("isomorphic");
        assert!(is_isomorphism(&a, &b, &iso));
    }

    #[test]
    fn rejects_non_isomorphic() {
        let ba = boolean_algebra(2);
        let z3 = group_with_zero(&FiniteGroup::cyclic(3));
        assert!(find_isomorphism(&ba, &z3).is_none());
        let i2 = symmetric_inverse_semigroup(2);
        let z2 = group_with_zero(&FiniteGroup::cyclic(2));
        let sum = zero_direct_union(&[&i2, &z2]);
        let sum2 = zero_direct_union(&[&z2, &i2]);
        assert!(find_isomorphism(&sum, &sum2).is_some());
        assert!(find_isomorphism(
            &sum,
            &zero_direct_union(&[&i2, &boolean_algebra(1), &boolean_algebra(1)])
        )
        .is_none());
    }

    #[test]
    fn i3_generating_set_is_small() {
        let s = symmetric_inverse_semigroup(3);
        assert!(generating_set(&s).len() <= 4);
    }
}
