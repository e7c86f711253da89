//! Standard small inverse semigroups used throughout the test corpus.

use crate::group::FiniteGroup;
use crate::semigroup::{InverseSemigroup, ZERO};

/// The Boolean algebra `2^k` of subsets of a `k`-element set under
/// intersection. Element `i` is the subset with bitmask `i`; labels list the
/// points (`"0"` for the empty set).
pub fn boolean_algebra(k: usize) -> InverseSemigroup {
    let n = 1usize << k;
    let labels = (0..n)
        .map(|m| {
            if m == 0 {
                "0".to_string()
            } else {
                (0..k)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| (i + 1).to_string())
                    .collect()
            }
        })
        .collect();
    InverseSemigroup::from_fn(n, |a, b| a & b, |a| a, Some(labels)).expect("boolean algebra table")
}

/// The chain `0 < 1 < ... < k-1` as a semilattice under `min`.
pub fn chain_semilattice(k: usize) -> InverseSemigroup {
    InverseSemigroup::from_fn(k, |a, b| a.min(b), |a| a, None).expect("chain table")
}

/// `G⁰`: the group `G` with a zero adjoined at index 0.
pub fn group_with_zero(g: &FiniteGroup) -> InverseSemigroup {
    let n = g.order() + 1;
    let labels = std::iter::once("0".to_string())
        .chain((0..g.order()).map(|x| g.label(x).to_string()))
        .collect();
    InverseSemigroup::from_fn(
        n,
        |a, b| if a == 0 || b == 0 { 0 } else { g.mul(a - 1, b - 1) + 1 },
        |a| if a == 0 { 0 } else { g.inv(a - 1) + 1 },
        Some(labels),
    )
    .expect("group with zero table")
}

/// The five-element semigroup `{0, a, b, 1, u}`: a four-element Boolean
/// algebra with atoms `a`, `b` and top `1`, plus `u` with `u² = 1` acting as
/// `1` on the other idempotents. `a` and `b` have the two incomparable upper
/// bounds `1` and `u`, so their join does not exist.
pub fn example_non_join() -> InverseSemigroup {
    // 0 = 0, 1 = a, 2 = b, 3 = 1, 4 = u
    let as_idempotent = |x: usize| if x == 4 { 3 } else { x };
    let meet = |x: usize, y: usize| -> usize {
        match (x, y) {
            (0, _) | (_, 0) => 0,
            (3, y) => y,
            (x, 3) => x,
            (x, y) if x == y => x,
            _ => 0,
        }
    };
    InverseSemigroup::from_fn(
        5,
        |x, y| match (x, y) {
            (4, 4) => 3,
            (4, 3) | (3, 4) => 4,
            _ => meet(as_idempotent(x), as_idempotent(y)),
        },
        |x| x,
        Some(vec!["0".into(), "a".into(), "b".into(), "1".into(), "u".into()]),
    )
    .expect("example table")
}

/// The 0-direct union of the given semigroups: disjoint non-zero parts, a
/// shared zero, and zero products across summands. Labels of the `i`-th
/// summand get the suffix `@i` (1-based).
pub fn zero_direct_union(parts: &[&InverseSemigroup]) -> InverseSemigroup {
    zero_direct_union_with_offsets(parts).0
}

/// As [`zero_direct_union`], also returning for each summand the map from its
/// element indices to indices of the sum.
pub fn zero_direct_union_with_offsets(parts: &[&InverseSemigroup]) -> (InverseSemigroup, Vec<Vec<usize>>) {
    let mut owner = vec![(usize::MAX, ZERO)];
    let mut embeddings = Vec::new();
    let mut labels = vec!["0".to_string()];
    for (i, p) in parts.iter().enumerate() {
        let mut emb = vec![ZERO; p.size()];
        for (a, slot) in emb.iter_mut().enumerate().skip(1) {
            *slot = owner.len();
            owner.push((i, a));
            labels.push(format!("{}@{}", p.label(a), i + 1));
        }
        embeddings.push(emb);
    }
    let n = owner.len();
    let s = InverseSemigroup::from_fn(
        n,
        |x, y| {
            let ((i, a), (j, b)) = (owner[x], owner[y]);
            if x == ZERO || y == ZERO || i != j {
                ZERO
            } else {
                embeddings[i][parts[i].mul(a, b)]
            }
        },
        |x| {
            let (i, a) = owner[x];
            if x == ZERO {
                ZERO
            } else {
                embeddings[i][parts[i].inv(a)]
            }
        },
        Some(labels),
    )
    .expect("direct sum table");
    (s, embeddings)
}

/// The direct sum `S₁ ⊕ ... ⊕ S_k` of Boolean inverse semigroups: tuples
/// multiplied componentwise, each element the orthogonal join of its
/// components. Labels read `a@1+b@2`, omitting zero components.
pub fn direct_sum(parts: &[&InverseSemigroup]) -> InverseSemigroup {
    direct_sum_with_embeddings(parts).0
}

/// As [`direct_sum`], also returning the embedding of each summand.
pub fn direct_sum_with_embeddings(parts: &[&InverseSemigroup]) -> (InverseSemigroup, Vec<Vec<usize>>) {
    // mixed radix with the zero tuple at index 0
    let sizes: Vec<usize> = parts.iter().map(|p| p.size()).collect();
    let n: usize = sizes.iter().product();
    let decode = |mut x: usize| -> Vec<usize> {
        sizes
            .iter()
            .map(|&m| {
                let c = x % m;
                x /= m;
                c
            })
            .collect()
    };
    let encode = |cs: &[usize]| direct_sum_index(&sizes, cs);
    let tuples: Vec<Vec<usize>> = (0..n).map(decode).collect();
    let labels = tuples
        .iter()
        .map(|cs| {
            let nz: Vec<String> = cs
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != ZERO)
                .map(|(i, &c)| format!("{}@{}", parts[i].label(c), i + 1))
                .collect();
            if nz.is_empty() {
                "0".to_string()
            } else {
                nz.join("+")
            }
        })
        .collect();
    let s = InverseSemigroup::from_fn(
        n,
        |x, y| {
            let cs: Vec<usize> = (0..parts.len())
                .map(|i| parts[i].mul(tuples[x][i], tuples[y][i]))
                .collect();
            encode(&cs)
        },
        |x| {
            let cs: Vec<usize> = (0..parts.len()).map(|i| parts[i].inv(tuples[x][i])).collect();
            encode(&cs)
        },
        Some(labels),
    )
    .expect("direct sum table");
    let embeddings = (0..parts.len())
        .map(|i| {
            (0..sizes[i])
                .map(|a| {
                    let mut cs = vec![ZERO; parts.len()];
                    cs[i] = a;
                    encode(&cs)
                })
                .collect()
        })
        .collect();
    (s, embeddings)
}

/// Index in [`direct_sum`] of the tuple with components `cs`, where
/// `sizes` are the sizes of the summands.
pub fn direct_sum_index(sizes: &[usize], cs: &[usize]) -> usize {
    cs.iter().zip(sizes).rev().fold(0, |acc, (&c, &m)| acc * m + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pperm::symmetric_inverse_semigroup;

    #[test]
    fn constructions_are_inverse_semigroups() {
        for s in [
            boolean_algebra(3),
            chain_semilattice(3),
            group_with_zero(&FiniteGroup::cyclic(2)),
            group_with_zero(&FiniteGroup::cyclic(3)),
            example_non_join(),
        ] {
            assert!(s.verify().is_valid(), "{:?}", s.verify());
        }
    }

    #[test]
    fn zero_direct_union_sizes() {
        let i2 = symmetric_inverse_semigroup(2);
        let z2 = group_with_zero(&FiniteGroup::cyclic(2));
        let s = zero_direct_union(&[&i2, &z2]);
        assert_eq!(s.size(), 7 + 3 - 1);
        assert!(s.verify().is_valid());
        assert!(s.label(1).ends_with("@1") && s.label(8).ends_with("@2"));
    }

    #[test]
    fn direct_sum_is_componentwise() {
        let i2 = symmetric_inverse_semigroup(2);
        let z2 = group_with_zero(&FiniteGroup::cyclic(2));
        let (s, emb) = direct_sum_with_embeddings(&[&i2, &z2]);
        assert_eq!(s.size(), 21);
        assert!(s.verify().is_valid());
        assert_eq!(s.label(ZERO), "0");
        let (swap, g) = (emb[0][i2.find_label("21").unwrap()], emb[1][2]);
        assert_eq!(s.label(swap), "21@1");
        assert_eq!(s.mul(swap, g), ZERO);
        let both = s.find_label("21@1+g1@2").unwrap();
        assert_eq!(s.mul(both, both), s.find_label("12@1+1@2").unwrap());
    }

    #[test]
    fn example_products() {
        let s = example_non_join();
        let (a, one, u) = (1, 3, 4);
        assert_eq!(s.mul(u, u), one);
        assert_eq!(s.mul(a, u), a);
        assert_eq!(s.mul(u, one), u);
        assert_eq!(s.idempotents(), vec![0, 1, 2, 3]);
    }
}
