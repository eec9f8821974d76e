//! Families of subsets of a product ground, optionally closed under `∩` and `∪`.

use std::collections::HashMap;

use crate::bitset::{self, full, singleton, SetWord};
use crate::error::{input, Error, Result};

/// Default member cap for [`build_lattice`].
pub const DEFAULT_LATTICE_CAP: usize = 4096;

/// A family of subsets of `S1 × S2` (row-major), in canonical order.
/// Families from [`build_lattice`] are closed under `∩` and `∪`; families
/// from [`build_family`] are not, and LP constraints over them only use
/// pairs whose meet and join are present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetLattice {
    n_left: usize,
    n_right: usize,
    closed: bool,
    members: Vec<SetWord>,
    index: HashMap<SetWord, usize>,
    /// `rect[i] = Some((X1, X2))` when member `i` equals `X1 × X2`.
    rect: Vec<Option<(SetWord, SetWord)>>,
}

/// Whether `w` is a rectangle, and if so its canonical factors. The empty
/// set is reported as `∅ × ∅`.
pub fn rectangle_factors(w: SetWord, n_left: usize, n_right: usize) -> Option<(SetWord, SetWord)> {
    if w == 0 {
        return Some((0, 0));
    }
    let mut rows = 0;
    let mut cols = 0;
    for i in 0..n_left {
        let r = bitset::row(w, i, n_right);
        if r != 0 {
            rows |= singleton(i);
            cols |= r;
        }
    }
    (bitset::product(rows, cols, n_right) == w).then_some((rows, cols))
}

impl SubsetLattice {
    /// Wraps a family that is already closed; checks closure.
    pub fn from_members(n_left: usize, n_right: usize, mut members: Vec<SetWord>) -> Result<Self> {
        let total = n_left * n_right;
        if total > bitset::MAX_GROUND {
            return Err(Error::SizeOverflow(total));
        }
        if members.iter().any(|&m| m & !full(total) != 0) {
            return input("lattice member leaves the product ground");
        }
        bitset::sort_lex(&mut members);
        members.dedup();
        let index: HashMap<SetWord, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        for &a in &members {
            for &b in &members {
                if !index.contains_key(&(a & b)) || !index.contains_key(&(a | b)) {
                    return input(format!(
                        "family is not closed: {} and {}",
                        bitset::fmt_set(a),
                        bitset::fmt_set(b)
                    ));
                }
            }
        }
        let rect = members.iter().map(|&m| rectangle_factors(m, n_left, n_right)).collect();
        Ok(SubsetLattice { n_left, n_right, closed: true, members, index, rect })
    }

    /// Every subset of the product ground.
    pub fn full_boolean(n_left: usize, n_right: usize, cap: usize) -> Result<Self> {
        let total = n_left * n_right;
        if total >= 32 || 1usize << total > cap {
            return Err(Error::LatticeCap { cap, reached: cap });
        }
        let members: Vec<SetWord> = (0..1u64 << total).collect();
        let mut sorted = members;
        bitset::sort_lex(&mut sorted);
        let index = sorted.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let rect = sorted.iter().map(|&m| rectangle_factors(m, n_left, n_right)).collect();
        Ok(SubsetLattice { n_left, n_right, closed: true, members: sorted, index, rect })
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SetWord] {
        &self.members
    }

    pub fn member(&self, i: usize) -> SetWord {
        self.members[i]
    }

    pub fn index_of(&self, w: SetWord) -> Option<usize> {
        self.index.get(&w).copied()
    }

    pub fn contains(&self, w: SetWord) -> bool {
        self.index.contains_key(&w)
    }

    pub fn rectangle(&self, i: usize) -> Option<(SetWord, SetWord)> {
        self.rect[i]
    }

    pub fn rectangles(&self) -> impl Iterator<Item = (usize, SetWord, SetWord)> + '_ {
        self.rect.iter().enumerate().filter_map(|(i, r)| r.map(|(a, b)| (i, a, b)))
    }

    /// Pairs `(a, b)` with `a ⊊ b` and nothing of the family strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (bi, &b) in self.members.iter().enumerate() {
            let below: Vec<usize> =
                (0..self.members.len()).filter(|&a| a != bi && bitset::is_subset(self.members[a], b)).collect();
            for &a in &below {
                let ma = self.members[a];
                let covered = below.iter().any(|&c| c != a && bitset::is_subset(ma, self.members[c]) && self.members[c] != ma);
                if !covered {
                    out.push((a, bi));
                }
            }
        }
        out
    }

    /// A cover chain from the empty set up to member `i`, bottom first.
    pub fn chain_to(&self, i: usize) -> Vec<usize> {
        let mut chain = vec![i];
        let mut cur = self.members[i];
        while cur != 0 {
            // The largest proper subset in the family is covered by `cur`.
            let next = (0..self.members.len())
                .filter(|&a| self.members[a] != cur && bitset::is_subset(self.members[a], cur))
                .max_by_key(|&a| (bitset::card(self.members[a]), std::cmp::Reverse(a)))
                .expect("the empty set is a member");
            chain.push(next);
            cur = self.members[next];
        }
        chain.reverse();
        chain
    }
}

/// `∅`, the full product, the seeds, and the row slices `{e1} × (W ∩ row e1)`
/// of every seed `W` (the rectangles that rank arguments on the seeds use).
fn seed_family(n_left: usize, n_right: usize, seeds: &[SetWord]) -> Result<Vec<SetWord>> {
    let total = n_left * n_right;
    if total > bitset::MAX_GROUND {
        return Err(Error::SizeOverflow(total));
    }
    let ground = full(total);
    if seeds.iter().any(|&s| s & !ground != 0) {
        return input("seed leaves the product ground");
    }
    let mut start = vec![0, ground];
    for &s in seeds {
        start.push(s);
        for i in 0..n_left {
            let r = bitset::row(s, i, n_right);
            if r != 0 {
                start.push(bitset::product(singleton(i), r, n_right));
            }
        }
    }
    Ok(start)
}

/// The seed family without closure; see [`SubsetLattice`].
pub fn build_family(n_left: usize, n_right: usize, seeds: &[SetWord], cap: usize) -> Result<SubsetLattice> {
    let mut members = seed_family(n_left, n_right, seeds)?;
    bitset::sort_lex(&mut members);
    members.dedup();
    if members.len() > cap {
        return Err(Error::LatticeCap { cap, reached: members.len() });
    }
    let index = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let rect = members.iter().map(|&m| rectangle_factors(m, n_left, n_right)).collect();
    Ok(SubsetLattice { n_left, n_right, closed: false, members, index, rect })
}

/// Closes the seed family (see [`build_family`]) under pairwise `∩` and `∪`.
pub fn build_lattice(n_left: usize, n_right: usize, seeds: &[SetWord], cap: usize) -> Result<SubsetLattice> {
    let start = seed_family(n_left, n_right, seeds)?;
    let mut members: Vec<SetWord> = Vec::new();
    let mut seen: HashMap<SetWord, ()> = HashMap::new();
    let mut queue: Vec<SetWord> = Vec::new();
    for s in start {
        if seen.insert(s, ()).is_none() {
            queue.push(s);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let w = queue[head];
        head += 1;
        for k in 0..members.len() {
            let m = members[k];
            for c in [w & m, w | m] {
                if seen.insert(c, ()).is_none() {
                    queue.push(c);
                    if seen.len() > cap {
                        return Err(Error::LatticeCap { cap, reached: seen.len() });
                    }
                }
            }
        }
        members.push(w);
    }
    bitset::sort_lex(&mut members);
    let index = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let rect = members.iter().map(|&m| rectangle_factors(m, n_left, n_right)).collect();
    Ok(SubsetLattice { n_left, n_right, closed: true, members, index, rect })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_seeds() {
        // The full product brings its two row slices.
        let l = build_lattice(2, 3, &[0, full(6)], DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(l.members(), &[0, 0b000_111, full(6), 0b111_000]);
        assert_eq!(l.rectangle(l.index_of(full(6)).unwrap()), Some((0b11, 0b111)));
        assert_eq!(l.rectangle(1), Some((0b01, 0b111)));
    }

    #[test]
    fn closure_is_checked() {
        let l = build_lattice(2, 3, &[0b000_011, 0b110_000], DEFAULT_LATTICE_CAP).unwrap();
        for &a in l.members() {
            for &b in l.members() {
                assert!(l.contains(a & b) && l.contains(a | b));
            }
        }
        assert!(SubsetLattice::from_members(2, 3, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn cap_reports_partial_size() {
        let seeds: Vec<SetWord> = (0..12).map(singleton).collect();
        match build_lattice(3, 4, &seeds, 100) {
            Err(Error::LatticeCap { cap: 100, reached }) => assert!(reached > 100),
            other => panic!("expected a cap error, got {other:?}"),
        }
    }

    #[test]
    fn covers_and_chains() {
        let l = SubsetLattice::full_boolean(1, 3, 64).unwrap();
        // The Boolean lattice on 3 elements has 12 cover pairs.
        assert_eq!(l.covers().len(), 12);
        let top = l.index_of(0b111).unwrap();
        let chain = l.chain_to(top);
        assert_eq!(chain.len(), 4);
        assert_eq!(l.member(chain[0]), 0);
    }
}
