//! Partial permutations and inverse semigroups generated by them.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::semigroup::InverseSemigroup;

/// Default element cap for [`generate`].
pub const DEFAULT_ELEMENT_CAP: usize = 20_000;

/// An injective partial map on the points `0..degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialPerm {
    images: Vec<Option<u32>>,
}

impl PartialPerm {
    /// Builds a partial permutation from `(point, image)` pairs, 0-based.
    pub fn new(degree: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut images = vec![None; degree];
        let mut hit = vec![false; degree];
        for &(x, y) in pairs {
            if x >= degree || y >= degree {
                return Err(Error::Invalid(format!("point out of range in {}->{}", x + 1, y + 1)));
            }
            if images[x].is_some() {
                return Err(Error::Invalid(format!("point {} mapped twice", x + 1)));
            }
            if hit[y] {
                return Err(Error::Invalid(format!("map is not injective at image {}", y + 1)));
            }
            images[x] = Some(y as u32);
            hit[y] = true;
        }
        Ok(PartialPerm { images })
    }

    pub fn from_images(images: Vec<Option<usize>>) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = images
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
            .collect();
        Self::new(images.len(), &pairs)
    }

    pub fn empty(degree: usize) -> Self {
        PartialPerm {
            images: vec![None; degree],
        }
    }

    pub fn identity(degree: usize) -> Self {
        PartialPerm {
            images: (0..degree as u32).map(Some).collect(),
        }
    }

    /// Identity map restricted to `points`.
    pub fn partial_identity(degree: usize, points: &[usize]) -> Result<Self> {
        let pairs: Vec<_> = points.iter().map(|&p| (p, p)).collect();
        Self::new(degree, &pairs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.images.get(x).copied().flatten().map(|y| y as usize)
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&x| self.images[x].is_some()).collect()
    }

    pub fn range(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.images.iter().flatten().map(|&y| y as usize).collect();
        r.sort_unstable();
        r
    }

    pub fn rank(&self) -> usize {
        self.images.iter().flatten().count()
    }

    pub fn is_idempotent(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(x, y)| y.is_none_or(|y| y as usize == x))
    }

    /// `x ↦ self(other(x))`, defined where `other(x)` lands in the domain of `self`.
    ///
    /// Panics if the degrees differ.
    pub fn compose(&self, other: &PartialPerm) -> PartialPerm {
        assert_eq!(
            self.degree(),
            other.degree(),
            "partial permutations over different point sets"
        );
        PartialPerm {
            images: other
                .images
                .iter()
                .map(|y| y.and_then(|y| self.images[y as usize]))
                .collect(),
        }
    }

    pub fn inverse(&self) -> PartialPerm {
        let mut images = vec![None; self.degree()];
        for (x, y) in self.images.iter().enumerate() {
            if let Some(y) = y {
                images[*y as usize] = Some(x as u32);
            }
        }
        PartialPerm { images }
    }

    /// Union of two maps, if it is again a partial permutation.
    pub fn union(&self, other: &PartialPerm) -> Option<PartialPerm> {
        let mut pairs = Vec::new();
        for x in 0..self.degree() {
            match (self.apply(x), other.apply(x)) {
                (Some(a), Some(b)) if a != b => return None,
                (Some(a), _) | (None, Some(a)) => pairs.push((x, a)),
                (None, None) => {}
            }
        }
        PartialPerm::new(self.degree(), &pairs).ok()
    }

    /// Compact label: the image of each point, `-` where undefined.
    /// For degree below 10 the images are concatenated (`"21"`, `"1-"`),
    /// otherwise comma separated.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .images
            .iter()
            .map(|y| y.map_or("-".to_string(), |y| (y + 1).to_string()))
            .collect();
        if self.degree() < 10 {
            parts.concat()
        } else {
            parts.join(",")
        }
    }
}

impl fmt::Display for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| format!("{}->{}", x + 1, y + 1)))
            .collect();
        write!(f, "{{{}}}", pairs.join(" "))
    }
}

/// Closes `gens ∪ gens⁻¹ ∪ {∅}` under composition.
///
/// Returns the abstract table with the empty map at index 0, and the
/// partial permutation represented by each element index.
pub fn generate(gens: &[PartialPerm], cap: usize) -> Result<(InverseSemigroup, Vec<PartialPerm>)> {
    let Some(first) = gens.first() else {
        return Err(Error::Invalid("at least one generator is required".into()));
    };
    let degree = first.degree();
    if gens.iter().any(|g| g.degree() != degree) {
        return Err(Error::Invalid("generators act on different point sets".into()));
    }
    let mut letters: Vec<PartialPerm> = Vec::new();
    for g in gens {
        for x in [g.clone(), g.inverse()] {
            if !letters.contains(&x) {
                letters.push(x);
            }
        }
    }
    let mut elems = vec![PartialPerm::empty(degree)];
    let mut index: HashMap<PartialPerm, usize> = HashMap::from([(elems[0].clone(), 0)]);
    let mut queue = VecDeque::new();
    for l in &letters {
        if !index.contains_key(l) {
            index.insert(l.clone(), elems.len());
            elems.push(l.clone());
            queue.push_back(elems.len() - 1);
        }
    }
    if elems.len() > cap {
        return Err(Error::ClosureBudgetExceeded { cap });
    }
    while let Some(i) = queue.pop_front() {
        for l in &letters {
            let p = elems[i].compose(l);
            if !index.contains_key(&p) {
                if elems.len() >= cap {
                    return Err(Error::ClosureBudgetExceeded { cap });
                }
                index.insert(p.clone(), elems.len());
                elems.push(p);
                queue.push_back(elems.len() - 1);
            }
        }
    }
    let s = InverseSemigroup::from_elements(&elems, |a, b| a.compose(b), |a| a.inverse(), |a| a.label())?;
    Ok((s, elems))
}

/// All partial permutations of `0..n`, empty map first, then by rank and
/// lexicographically by image vector.
pub fn all_partial_perms(n: usize) -> Vec<PartialPerm> {
    let mut out = Vec::new();
    let mut images: Vec<Option<u32>> = vec![None; n];
    let mut used = vec![false; n];
    fn rec(x: usize, images: &mut Vec<Option<u32>>, used: &mut Vec<bool>, out: &mut Vec<PartialPerm>) {
        if x == images.len() {
            out.push(PartialPerm { images: images.clone() });
            return;
        }
        images[x] = None;
        rec(x + 1, images, used, out);
        for y in 0..images.len() {
            if !used[y] {
                used[y] = true;
                images[x] = Some(y as u32);
                rec(x + 1, images, used, out);
                used[y] = false;
            }
        }
        images[x] = None;
    }
    rec(0, &mut images, &mut used, &mut out);
    out.sort_by(|a, b| a.rank().cmp(&b.rank()).then_with(|| a.cmp(b)));
    out
}

/// The symmetric inverse semigroup `I_n` of all partial permutations of an
/// `n`-element set.
pub fn symmetric_inverse_semigroup(n: usize) -> InverseSemigroup {
    symmetric_with_elements(n).0
}

pub fn symmetric_with_elements(n: usize) -> (InverseSemigroup, Vec<PartialPerm>) {
    let elems = all_partial_perms(n);
    let s = InverseSemigroup::from_elements(&elems, |a, b| a.compose(b), |a| a.inverse(), |a| a.label())
        .expect("I_n is closed");
    (s, elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(n: usize, pairs: &[(usize, usize)]) -> PartialPerm {
        let zero_based: Vec<_> = pairs.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        PartialPerm::new(n, &zero_based).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id = PartialPerm::identity(2);
        let g = pp(2, &[(1, 2)]);
        assert_eq!(id.compose(&g), g);
        let f = pp(2, &[(1, 2)]);
        let g = pp(2, &[(2, 1)]);
        assert_eq!(f.compose(&g), pp(2, &[(2, 2)]));
        assert_eq!(f.compose(&f), PartialPerm::empty(2));
    }

    #[test]
    fn compose_matches_table_of_i2() {
        // brute force: every product in the abstract table is the composite
        let (s, elems) = symmetric_with_elements(2);
        for a in s.elements() {
            for b in s.elements() {
                assert_eq!(elems[s.mul(a, b)], elems[a].compose(&elems[b]));
            }
        }
    }

    #[test]
    fn rejects_non_injective() {
        assert!(PartialPerm::new(2, &[(0, 1), (1, 1)]).is_err());
        assert!(PartialPerm::new(2, &[(0, 1), (0, 0)]).is_err());
        assert!(PartialPerm::new(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn generation_examples() {
        let swap = pp(2, &[(1, 2), (2, 1)]);
        let id1 = pp(2, &[(1, 1)]);
        let (s, elems) = generate(&[swap, id1], DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(s.size(), 7);
        assert_eq!(elems[0], PartialPerm::empty(2));
        assert!(s.verify().is_valid());

        let (s, _) = generate(&[PartialPerm::identity(1)], DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(s.size(), 2);

        let cycle = pp(3, &[(1, 2), (2, 3), (3, 1)]);
        let (s, _) = generate(&[cycle], DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(s.size(), 4);
    }

    #[test]
    fn generation_respects_cap() {
        let swap = pp(3, &[(1, 2), (2, 1), (3, 3)]);
        let cycle = pp(3, &[(1, 2), (2, 3), (3, 1)]);
        let id12 = pp(3, &[(1, 1), (2, 2)]);
        assert_eq!(
            generate(&[swap.clone(), cycle.clone(), id12.clone()], 10).unwrap_err(),
            Error::ClosureBudgetExceeded { cap: 10 }
        );
        assert_eq!(generate(&[swap, cycle, id12], 100).unwrap().0.size(), 34);
    }

    #[test]
    fn sizes_of_symmetric_inverse_semigroups() {
        // |I_n| = sum_k C(n,k)^2 k!
        let expected = [1, 2, 7, 34, 209];
        for (n, &size) in expected.iter().enumerate() {
            assert_eq!(symmetric_inverse_semigroup(n).size(), size);
        }
    }

    #[test]
    fn union_is_join_for_compatible_maps() {
        let a = pp(2, &[(1, 2)]);
        let b = pp(2, &[(2, 1)]);
        assert_eq!(a.union(&b), Some(pp(2, &[(1, 2), (2, 1)])));
        assert_eq!(a.union(&pp(2, &[(1, 1)])), None);
    }
}
