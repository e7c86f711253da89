//! Small finite groups given by multiplication tables.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates the group axioms on a row-major table.
    pub fn from_table(mul: Vec<usize>, labels: Option<Vec<String>>) -> Result<Self> {
        let order = (mul.len() as f64).sqrt() as usize;
        if order == 0 || order * order != mul.len() {
            return Err(Error::Invalid("group table must be a non-empty square".into()));
        }
        if mul.iter().any(|&x| x >= order) {
            return Err(Error::Invalid("group table entry out of range".into()));
        }
        let m = |a: usize, b: usize| mul[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::Invalid("group table has no identity".into()))?;
        let mut inv = Vec::with_capacity(order);
        for a in 0..order {
            let b = (0..order)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| Error::Invalid(format!("element {a} has no inverse")))?;
            inv.push(b);
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::Invalid(format!(
                            "group table not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (0..order).map(|g| format!("g{g}")).collect());
        if labels.len() != order {
            return Err(Error::Invalid("wrong number of group labels".into()));
        }
        Ok(FiniteGroup {
            order,
            mul,
            inv,
            identity,
            labels,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z_n` with elements `0..n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let labels = (0..n)
            .map(|g| if g == 0 { "1".to_string() } else { format!("g{g}") })
            .collect();
        Self::from_table(mul, Some(labels)).expect("cyclic group table")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    /// Short human-readable name.
    pub fn describe(&self) -> String {
        if self.is_trivial() {
            "trivial".into()
        } else if self.is_cyclic() {
            format!("Z{}", self.order)
        } else if self.is_abelian() {
            format!("abelian group of order {}", self.order)
        } else {
            format!("group of order {}", self.order)
        }
    }

    /// Searches for an isomorphism `self → other` by backtracking on the
    /// images of a generating set.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        let gens = self.generators();
        let mut images = Vec::new();
        self.extend_iso(other, &gens, &mut images)
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// A small generating set, chosen greedily.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        while span.len() < self.order {
            let g = (0..self.order).find(|x| !span.contains(x)).expect("missing element");
            gens.push(g);
            span = self.closure(&gens);
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut span = vec![self.identity];
        let mut i = 0;
        while i < span.len() {
            for &g in gens {
                let x = self.mul(span[i], g);
                if !span.contains(&x) {
                    span.push(x);
                }
            }
            i += 1;
        }
        span
    }

    fn extend_iso(&self, other: &FiniteGroup, gens: &[usize], images: &mut Vec<usize>) -> Option<Vec<usize>> {
        if images.len() == gens.len() {
            return self.map_from_generators(other, gens, images);
        }
        let g = gens[images.len()];
        let want = self.element_order(g);
        for cand in 0..other.order {
            if other.element_order(cand) != want {
                continue;
            }
            images.push(cand);
            if let Some(m) = self.extend_iso(other, gens, images) {
                return Some(m);
            }
            images.pop();
        }
        None
    }

    fn map_from_generators(&self, other: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[self.identity] = other.identity;
        let mut queue = vec![self.identity];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = other.mul(map[x], h);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
            i += 1;
        }
        let mut seen = vec![false; other.order];
        for &y in &map {
            if y == usize::MAX || std::mem::replace(&mut seen[y], true) {
                return None;
            }
        }
        for a in 0..self.order {
            for b in 0..self.order {
                if map[self.mul(a, b)] != other.mul(map[a], map[b]) {
                    return None;
                }
            }
        }
        Some(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(z3.order(), 3);
        assert_eq!(z3.describe(), "Z3");
        assert_eq!(FiniteGroup::trivial().describe(), "trivial");
        assert!(z3.is_isomorphic(&FiniteGroup::cyclic(3)));
        assert!(!FiniteGroup::cyclic(4).is_isomorphic(&klein()));
    }

    fn klein() -> FiniteGroup {
        let mul = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
        FiniteGroup::from_table(mul, None).unwrap()
    }

    #[test]
    fn klein_group() {
        let k = klein();
        assert_eq!(k.describe(), "abelian group of order 4");
        assert!(k.is_isomorphic(&klein()));
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroup::from_table(vec![0, 0, 0, 0], None).is_err());
        assert!(FiniteGroup::from_table(vec![0, 1, 1], None).is_err());
    }
}
