//! Finite partial orders and subsets of their carriers.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// A subset of `{0, ..., len-1}`.
///
/// Subsets are ordered as binary numbers with element `i` at bit `i`, which
/// is the canonical output order for upper sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subset(FixedBitSet);

impl Subset {
    pub fn empty(len: usize) -> Subset {
        Subset(FixedBitSet::with_capacity(len))
    }

    pub fn full(len: usize) -> Subset {
        let mut s = Subset::empty(len);
        s.0.insert_range(..);
        s
    }

    pub fn from_elements(len: usize, elements: impl IntoIterator<Item = usize>) -> Subset {
        let mut s = Subset::empty(len);
        for e in elements {
            s.0.insert(e);
        }
        s
    }

    pub fn from_mask(len: usize, mask: u64) -> Subset {
        Subset::from_elements(len, (0..len.min(64)).filter(|i| mask >> i & 1 == 1))
    }

    /// Size of the ambient carrier.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn count(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.0.remove(i);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn union_with(&mut self, other: &Subset) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &Subset) {
        self.0.intersect_with(&other.0);
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn complement(&self) -> Subset {
        let mut s = self.clone();
        s.0.toggle_range(..);
        s
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// The subset as a bit mask, when the carrier has at most 64 elements.
    pub fn mask(&self) -> Option<u64> {
        (self.universe() <= 64).then(|| self.iter().fold(0u64, |m, i| m | 1 << i))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe().cmp(&other.universe()).then_with(|| {
            let a = self.0.as_slice();
            let b = other.0.as_slice();
            a.iter().rev().cmp(b.iter().rev())
        })
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("order matrix is not square")]
    NotSquare,
    #[error("not reflexive at {0}")]
    NotReflexive(usize),
    #[error("not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("not transitive at ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
}

/// A partial order on `{0, ..., size-1}`, stored as principal up- and
/// down-sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinPoset {
    up: Vec<Subset>,
    down: Vec<Subset>,
}

impl FinPoset {
    pub fn from_leq(leq: &[Vec<bool>]) -> Result<FinPoset, PosetError> {
        let n = leq.len();
        if leq.iter().any(|row| row.len() != n) {
            return Err(PosetError::NotSquare);
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(PosetError::NotReflexive(x));
            }
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(PosetError::NotAntisymmetric(x, y));
                }
                for z in 0..n {
                    if leq[x][y] && leq[y][z] && !leq[x][z] {
                        return Err(PosetError::NotTransitive(x, y, z));
                    }
                }
            }
        }
        Ok(FinPoset::from_leq_unchecked(n, |x, y| leq[x][y]))
    }

    fn from_leq_unchecked(n: usize, leq: impl Fn(usize, usize) -> bool) -> FinPoset {
        let up = (0..n)
            .map(|x| Subset::from_elements(n, (0..n).filter(|&y| leq(x, y))))
            .collect();
        let down = (0..n)
            .map(|x| Subset::from_elements(n, (0..n).filter(|&y| leq(y, x))))
            .collect();
        FinPoset { up, down }
    }

    pub fn chain(n: usize) -> FinPoset {
        FinPoset::from_leq_unchecked(n, |x, y| x <= y)
    }

    pub fn antichain(n: usize) -> FinPoset {
        FinPoset::from_leq_unchecked(n, |x, y| x == y)
    }

    pub fn size(&self) -> usize {
        self.up.len()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.size())
            .map(|x| (0..self.size()).map(|y| self.leq(x, y)).collect())
            .collect()
    }

    /// `↑x`.
    pub fn principal_up(&self, x: usize) -> &Subset {
        &self.up[x]
    }

    /// `↓x`.
    pub fn principal_down(&self, x: usize) -> &Subset {
        &self.down[x]
    }

    pub fn up_closure(&self, s: &Subset) -> Subset {
        let mut out = Subset::empty(self.size());
        for x in s.iter() {
            out.union_with(&self.up[x]);
        }
        out
    }

    pub fn down_closure(&self, s: &Subset) -> Subset {
        let mut out = Subset::empty(self.size());
        for x in s.iter() {
            out.union_with(&self.down[x]);
        }
        out
    }

    pub fn is_upper(&self, s: &Subset) -> bool {
        s.iter().all(|x| self.up[x].is_subset(s))
    }

    pub fn is_lower(&self, s: &Subset) -> bool {
        s.iter().all(|x| self.down[x].is_subset(s))
    }

    pub fn minimal_elements(&self, s: &Subset) -> Vec<usize> {
        s.iter()
            .filter(|&x| self.down[x].intersection(s).count() == 1)
            .collect()
    }

    pub fn is_monotone(&self, f: &[usize], target: &FinPoset) -> bool {
        f.len() == self.size()
            && (0..self.size()).all(|x| {
                self.up[x].iter().all(|y| target.leq(f[x], f[y]))
            })
    }

    /// All upper sets, ascending in the [`Subset`] order.
    pub fn upper_sets(&self) -> Vec<Subset> {
        self.upper_sets_capped(usize::MAX)
            .expect("uncapped enumeration")
    }

    /// All upper sets, or `None` as soon as more than `cap` exist.
    pub fn upper_sets_capped(&self, cap: usize) -> Option<Vec<Subset>> {
        let n = self.size();
        let mut out = Vec::new();
        let ok = self.extend_upper(
            0,
            Subset::empty(n),
            Subset::empty(n),
            cap,
            &mut out,
        );
        if !ok {
            return None;
        }
        out.sort();
        Some(out)
    }

    fn extend_upper(
        &self,
        i: usize,
        inside: Subset,
        outside: Subset,
        cap: usize,
        out: &mut Vec<Subset>,
    ) -> bool {
        let n = self.size();
        let next = (i..n).find(|&x| !inside.contains(x) && !outside.contains(x));
        let Some(x) = next else {
            if out.len() >= cap {
                return false;
            }
            out.push(inside);
            return true;
        };
        let with = inside.union(&self.up[x]);
        if with.is_disjoint(&outside) && !self.extend_upper(x + 1, with, outside.clone(), cap, out) {
            return false;
        }
        let without = outside.union(&self.down[x]);
        if without.is_disjoint(&inside) {
            return self.extend_upper(x + 1, inside, without, cap, out);
        }
        true
    }

    /// All lower sets, ascending in the [`Subset`] order.
    pub fn lower_sets(&self) -> Vec<Subset> {
        let mut v: Vec<Subset> = self.upper_sets().iter().map(Subset::complement).collect();
        v.sort();
        v
    }

    /// Adds a new top-index element strictly above `below` and strictly
    /// below `above`.
    fn extend(&self, below: &Subset, above: &Subset) -> FinPoset {
        let n = self.size();
        let k = n;
        FinPoset::from_leq_unchecked(n + 1, |x, y| {
            if x == k && y == k {
                true
            } else if x == k {
                above.contains(y)
            } else if y == k {
                below.contains(x)
            } else {
                self.leq(x, y)
            }
        })
    }
}

/// Every partial order on `{0, ..., n-1}`, built by inserting elements one at
/// a time between a lower set and a compatible upper set.
pub fn all_posets(n: usize) -> Vec<FinPoset> {
    let mut level = vec![FinPoset::chain(0)];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &level {
            let uppers = p.upper_sets();
            let lowers = p.lower_sets();
            for below in &lowers {
                for above in &uppers {
                    if !below.is_disjoint(above) {
                        continue;
                    }
                    let compatible = below
                        .iter()
                        .all(|d| above.is_subset(p.principal_up(d)));
                    if compatible {
                        next.push(p.extend(below, above));
                    }
                }
            }
        }
        level = next;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_poset_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| all_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219, 4231]);
    }

    #[test]
    fn generated_posets_are_valid_and_distinct() {
        let ps = all_posets(4);
        for p in &ps {
            assert!(FinPoset::from_leq(&p.leq_matrix()).is_ok());
        }
        let set: std::collections::HashSet<_> = ps.iter().map(|p| p.leq_matrix()).collect();
        assert_eq!(set.len(), ps.len());
    }

    #[test]
    fn upper_sets_of_small_orders() {
        assert_eq!(FinPoset::chain(3).upper_sets().len(), 4);
        assert_eq!(FinPoset::antichain(3).upper_sets().len(), 8);
        let two = FinPoset::chain(2);
        let masks: Vec<u64> = two.upper_sets().iter().map(|s| s.mask().unwrap()).collect();
        assert_eq!(masks, vec![0b00, 0b10, 0b11]);
        assert!(FinPoset::antichain(4).upper_sets_capped(10).is_none());
    }

    #[test]
    fn upper_set_count_matches_brute_force() {
        for p in all_posets(4) {
            let brute = (0u64..16)
                .filter(|&m| p.is_upper(&Subset::from_mask(4, m)))
                .count();
            assert_eq!(p.upper_sets().len(), brute);
        }
    }

    #[test]
    fn rejects_non_orders() {
        assert_eq!(
            FinPoset::from_leq(&[vec![true, true], vec![true, true]]),
            Err(PosetError::NotAntisymmetric(0, 1))
        );
        assert_eq!(
            FinPoset::from_leq(&[vec![false]]),
            Err(PosetError::NotReflexive(0))
        );
        let nt = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert_eq!(FinPoset::from_leq(&nt), Err(PosetError::NotTransitive(0, 1, 2)));
    }

    #[test]
    fn subset_order_is_numeric() {
        let a = Subset::from_mask(70, 1 << 3);
        let b = Subset::from_elements(70, [65]);
        assert!(a < b);
        assert!(Subset::from_mask(3, 0b011) < Subset::from_mask(3, 0b100));
    }

    #[test]
    fn closures() {
        let p = FinPoset::chain(3);
        let s = Subset::from_elements(3, [1]);
        assert_eq!(p.up_closure(&s), Subset::from_elements(3, [1, 2]));
        assert_eq!(p.down_closure(&s), Subset::from_elements(3, [0, 1]));
        assert_eq!(p.minimal_elements(&Subset::from_elements(3, [1, 2])), vec![1]);
    }
}
