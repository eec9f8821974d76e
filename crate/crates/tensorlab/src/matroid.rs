//! Explicit matroids given by their basis families.

use std::collections::{HashMap, HashSet};

use crate::bitset::{self, card, contains, elements, full, singleton, SetWord};
use crate::error::{input, Error, Result};

/// Ground set `{0, .., n-1}` with optional display labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n > bitset::MAX_GROUND {
            return Err(Error::SizeOverflow(n));
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn labelled(labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        if n > bitset::MAX_GROUND {
            return Err(Error::SizeOverflow(n));
        }
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return input("ground labels must be pairwise distinct");
        }
        Ok(GroundSet { n, labels: Some(labels) })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|s| s == label),
            None => label.parse().ok().filter(|&i| i < self.n),
        }
    }

    pub fn full(&self) -> SetWord {
        full(self.n)
    }

    /// Ground set of the row-major product `self × right`.
    pub fn product(&self, right: &GroundSet) -> Result<GroundSet> {
        let n = self.n * right.n;
        if n > bitset::MAX_GROUND {
            return Err(Error::SizeOverflow(n));
        }
        if self.labels.is_none() && right.labels.is_none() {
            return GroundSet::new(n);
        }
        let mut labels = Vec::with_capacity(n);
        for i in 0..self.n {
            for j in 0..right.n {
                labels.push(format!("({},{})", self.label(i), right.label(j)));
            }
        }
        GroundSet::labelled(labels)
    }

    fn select(&self, keep: SetWord) -> GroundSet {
        GroundSet {
            n: card(keep) as usize,
            labels: self
                .labels
                .as_ref()
                .map(|l| elements(keep).map(|i| l[i].clone()).collect()),
        }
    }
}

/// A matroid stored as its sorted, deduplicated list of bases.
#[derive(Debug, Clone)]
pub struct Matroid {
    name: Option<String>,
    ground: GroundSet,
    rank: usize,
    bases: Vec<SetWord>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground.n == other.ground.n && self.rank == other.rank && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl Matroid {
    /// Validates every matroid axiom and builds the matroid.
    pub fn from_bases(ground: GroundSet, rank: usize, bases: Vec<SetWord>) -> Result<Matroid> {
        let m = Self::prepare(ground, rank, bases)?;
        check_exchange(&m.bases, m.ground.n)?;
        Ok(m)
    }

    /// Skips the exchange check; only for families produced by constructions
    /// that provably preserve the axioms (dual, direct sum, minors).
    pub(crate) fn from_bases_trusted(ground: GroundSet, rank: usize, bases: Vec<SetWord>) -> Matroid {
        let m = Self::prepare(ground, rank, bases).expect("trusted construction");
        debug_assert!(m.bases.len() > 4000 || check_exchange(&m.bases, m.ground.n).is_ok());
        m
    }

    fn prepare(ground: GroundSet, rank: usize, mut bases: Vec<SetWord>) -> Result<Matroid> {
        if bases.is_empty() {
            return input("a matroid needs at least one basis");
        }
        let mask = ground.full();
        for &b in &bases {
            if b & !mask != 0 {
                return input(format!("basis {} leaves the ground set", bitset::fmt_set(b)));
            }
            if card(b) as usize != rank {
                return input(format!(
                    "basis {} has {} elements, expected {rank}",
                    bitset::fmt_set(b),
                    card(b)
                ));
            }
        }
        bitset::sort_lex(&mut bases);
        Ok(Matroid { name: None, ground, rank, bases })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn with_ground(mut self, ground: GroundSet) -> Result<Self> {
        if ground.len() != self.ground.len() {
            return input("relabelled ground has a different size");
        }
        self.ground = ground;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.ground.n
    }

    pub fn full_rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[SetWord] {
        &self.bases
    }

    pub fn full_set(&self) -> SetWord {
        self.ground.full()
    }

    /// `max |B ∩ x|` over all bases.
    pub fn rank(&self, x: SetWord) -> usize {
        debug_assert!(x & !self.full_set() == 0, "set outside the ground");
        let cap = (card(x) as usize).min(self.rank) as u32;
        let mut best = 0;
        for &b in &self.bases {
            let c = card(b & x);
            if c > best {
                best = c;
                if best == cap {
                    break;
                }
            }
        }
        best as usize
    }

    pub fn checked_rank(&self, x: SetWord) -> Result<usize> {
        if x & !self.full_set() != 0 {
            return input(format!("set {} leaves the ground set", bitset::fmt_set(x)));
        }
        Ok(self.rank(x))
    }

    pub fn is_independent(&self, x: SetWord) -> bool {
        self.bases.iter().any(|&b| x & !b == 0)
    }

    pub fn is_basis(&self, x: SetWord) -> bool {
        card(x) as usize == self.rank && self.basis_index(x).is_some()
    }

    fn basis_index(&self, x: SetWord) -> Option<usize> {
        self.bases.binary_search_by(|&b| bitset::lex_cmp(b, x)).ok()
    }

    /// Largest superset of `x` with the same rank.
    pub fn closure(&self, x: SetWord) -> SetWord {
        let r = self.rank(x);
        let mut out = x;
        for e in elements(self.full_set() & !x) {
            if self.rank(x | singleton(e)) == r {
                out |= singleton(e);
            }
        }
        out
    }

    pub fn is_flat(&self, x: SetWord) -> bool {
        self.closure(x) == x
    }

    /// Lexicographically least maximal independent subset of `x`.
    pub fn max_independent_in(&self, x: SetWord) -> SetWord {
        let mut acc = 0;
        for e in elements(x) {
            if self.is_independent(acc | singleton(e)) {
                acc |= singleton(e);
            }
        }
        acc
    }

    /// All flats of rank `k`, in canonical order.
    pub fn flats_of_rank(&self, k: usize) -> Vec<SetWord> {
        if k > self.rank {
            return Vec::new();
        }
        if k == self.rank {
            return vec![self.full_set()];
        }
        let mut indep: HashSet<SetWord> = HashSet::new();
        for &b in &self.bases {
            for s in bitset::k_subsets_of(b, k) {
                indep.insert(s);
            }
        }
        let mut seen: HashSet<SetWord> = HashSet::new();
        let mut out = Vec::new();
        let mut keys: Vec<SetWord> = indep.into_iter().collect();
        bitset::sort_lex(&mut keys);
        for s in keys {
            // An independent k-set inside a known rank-k flat spans that flat.
            if out.iter().any(|&f: &SetWord| s & !f == 0) {
                continue;
            }
            let f = self.closure(s);
            if seen.insert(f) {
                out.push(f);
            }
        }
        bitset::sort_lex(&mut out);
        out
    }

    /// All flats, grouped by rank.
    pub fn flats(&self) -> Vec<Vec<SetWord>> {
        (0..=self.rank).map(|k| self.flats_of_rank(k)).collect()
    }

    pub fn loops(&self) -> SetWord {
        let union = self.bases.iter().fold(0, |acc, &b| acc | b);
        self.full_set() & !union
    }

    pub fn coloops(&self) -> SetWord {
        self.bases.iter().fold(self.full_set(), |acc, &b| acc & b)
    }

    /// `M \ del / con`, reindexed onto the surviving elements in order.
    pub fn minor(&self, del: SetWord, con: SetWord) -> Result<Matroid> {
        let mask = self.full_set();
        if (del | con) & !mask != 0 {
            return input("minor sets leave the ground set");
        }
        if del & con != 0 {
            return input("deletion and contraction sets overlap");
        }
        let keep = mask & !(del | con);
        let r_con = self.rank(con);
        let r_all = self.rank(keep | con);
        let mut bases: Vec<SetWord> = self
            .bases
            .iter()
            .filter(|&&b| card(b & (keep | con)) as usize == r_all && card(b & con) as usize == r_con)
            .map(|&b| compress(b & keep, keep))
            .collect();
        bitset::sort_lex(&mut bases);
        Ok(Matroid::from_bases_trusted(self.ground.select(keep), r_all - r_con, bases))
    }

    pub fn delete(&self, del: SetWord) -> Result<Matroid> {
        self.minor(del, 0)
    }

    pub fn contract(&self, con: SetWord) -> Result<Matroid> {
        self.minor(0, con)
    }

    /// Restriction `M | keep`.
    pub fn restrict(&self, keep: SetWord) -> Result<Matroid> {
        self.minor(self.full_set() & !keep, 0)
    }

    /// Direct sum; the elements of `other` follow those of `self`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n1 = self.n();
        let n = n1 + other.n();
        if n > bitset::MAX_GROUND {
            return Err(Error::SizeOverflow(n));
        }
        let ground = if self.ground.labels.is_some() || other.ground.labels.is_some() {
            let mut l: Vec<String> = (0..n1).map(|i| self.ground.label(i)).collect();
            l.extend((0..other.n()).map(|i| other.ground.label(i)));
            GroundSet::labelled(l).or_else(|_| GroundSet::new(n))?
        } else {
            GroundSet::new(n)?
        };
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &b1 in &self.bases {
            for &b2 in &other.bases {
                bases.push(b1 | (b2 << n1));
            }
        }
        Ok(Matroid::from_bases_trusted(ground, self.rank + other.rank, bases))
    }

    /// Bases are the complements of the bases of `self`.
    pub fn dual(&self) -> Matroid {
        let mask = self.full_set();
        let bases = self.bases.iter().map(|&b| mask & !b).collect();
        let mut m = Matroid::from_bases_trusted(self.ground.clone(), self.n() - self.rank, bases);
        m.name = self.name.as_ref().map(|s| format!("dual({s})"));
        m
    }

    /// Connected components of the circuit hypergraph, in order of least element.
    pub fn components(&self) -> Vec<SetWord> {
        let n = self.n();
        let b0 = self.bases[0];
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let nx = p[c];
                p[c] = r;
                c = nx;
            }
            r
        }
        let set: HashSet<SetWord> = self.bases.iter().copied().collect();
        // Fundamental circuits with respect to one basis generate connectivity.
        for e in elements(self.full_set() & !b0) {
            for b in elements(b0) {
                if set.contains(&((b0 & !singleton(b)) | singleton(e))) {
                    let (x, y) = (find(&mut parent, e), find(&mut parent, b));
                    if x != y {
                        parent[x.max(y)] = x.min(y);
                    }
                }
            }
        }
        let mut groups: HashMap<usize, SetWord> = HashMap::new();
        for e in 0..n {
            let r = find(&mut parent, e);
            *groups.entry(r).or_insert(0) |= singleton(e);
        }
        let mut out: Vec<SetWord> = groups.into_values().collect();
        out.sort_by_key(|&s| s.trailing_zeros());
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Removes loops and keeps the least element of each parallel class.
    ///
    /// The map sends each element to the index of its class in the
    /// simplification, or `None` for loops.
    pub fn simplify(&self) -> (Matroid, Vec<Option<usize>>) {
        let loops = self.loops();
        let mut class_of: Vec<Option<usize>> = vec![None; self.n()];
        let mut reps: Vec<usize> = Vec::new();
        for e in elements(self.full_set() & !loops) {
            let hit = reps
                .iter()
                .position(|&r| self.rank(singleton(r) | singleton(e)) == 1);
            match hit {
                Some(c) => class_of[e] = Some(c),
                None => {
                    class_of[e] = Some(reps.len());
                    reps.push(e);
                }
            }
        }
        let keep = bitset::from_indices(reps.iter().copied());
        let si = self.restrict(keep).expect("restriction to a subset of the ground");
        (si, class_of)
    }

    pub fn is_simple(&self) -> bool {
        self.loops() == 0
            && (0..self.n()).all(|i| (i + 1..self.n()).all(|j| self.rank(singleton(i) | singleton(j)) == 2))
    }

    /// Applies a relabelling: element `i` of `self` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Matroid> {
        if perm.len() != self.n() {
            return input("permutation length differs from ground size");
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || seen[p] {
                return input("not a permutation");
            }
            seen[p] = true;
        }
        let bases = self.bases.iter().map(|&b| map_set(b, perm)).collect();
        Ok(Matroid::from_bases_trusted(GroundSet::new(self.n())?, self.rank, bases))
    }

    /// Minimal dependent sets, in canonical order. Exponential in `n`.
    pub fn circuits(&self) -> Vec<SetWord> {
        let mut out: Vec<SetWord> = Vec::new();
        for k in 1..=(self.rank + 1).min(self.n()) {
            for s in bitset::k_subsets(self.n(), k) {
                if out.iter().any(|&c| c & !s == 0) {
                    continue;
                }
                if !self.is_independent(s) {
                    out.push(s);
                }
            }
        }
        bitset::sort_lex(&mut out);
        out
    }

    /// Some rank-preserving bijection `self → other`, if one exists.
    pub fn is_isomorphic(&self, other: &Matroid) -> Option<Vec<usize>> {
        crate::iso::find_isomorphism(self, other)
    }

    /// True iff every basis of `self` is independent in `freer`.
    pub fn weak_order_leq(&self, freer: &Matroid) -> Result<bool> {
        if self.n() != freer.n() {
            return input("weak order compares matroids on the same ground set");
        }
        if self.rank == freer.rank {
            let set: HashSet<SetWord> = freer.bases.iter().copied().collect();
            Ok(self.bases.iter().all(|b| set.contains(b)))
        } else {
            Ok(self.bases.iter().all(|&b| freer.is_independent(b)))
        }
    }
}

/// Image of a set under an element map.
pub fn map_set(x: SetWord, perm: &[usize]) -> SetWord {
    elements(x).fold(0, |acc, i| acc | singleton(perm[i]))
}

/// Renumbers the elements of `x ⊆ keep` by their position inside `keep`.
pub fn compress(x: SetWord, keep: SetWord) -> SetWord {
    let mut out = 0;
    for (pos, e) in elements(keep).enumerate() {
        if contains(x, e) {
            out |= singleton(pos);
        }
    }
    out
}

/// Inverse of [`compress`].
pub fn expand(x: SetWord, keep: SetWord) -> SetWord {
    let mut out = 0;
    for (pos, e) in elements(keep).enumerate() {
        if contains(x, pos) {
            out |= singleton(e);
        }
    }
    out
}

/// Verifies basis exchange over a lex-sorted family.
///
/// For a basis `B1` and `e ∈ B1` let `F = {f ∉ B1 : B1 - e + f is a basis}`.
/// Exchange for `(B1, e)` against every `B2` holds iff no basis avoids
/// `F + e`. Sets `F + e` repeat heavily (they are fundamental cocircuits in
/// a genuine matroid), so each distinct one is tested once with per-element
/// bit columns over the basis list.
pub(crate) fn check_exchange(bases: &[SetWord], n: usize) -> Result<()> {
    let m = bases.len();
    let words = m.div_ceil(64);
    let mut columns = vec![vec![0u64; words]; n];
    for (idx, &b) in bases.iter().enumerate() {
        for x in elements(b) {
            columns[x][idx / 64] |= 1 << (idx % 64);
        }
    }
    let last_mask = if m % 64 == 0 { u64::MAX } else { (1u64 << (m % 64)) - 1 };
    let set: HashSet<SetWord> = bases.iter().copied().collect();
    let mask = full(n);
    let mut verified: HashSet<SetWord> = HashSet::new();
    let mut acc = vec![0u64; words];
    for &b1 in bases {
        for e in elements(b1) {
            let base = b1 & !singleton(e);
            let mut t = singleton(e);
            for f in elements(mask & !b1) {
                if set.contains(&(base | singleton(f))) {
                    t |= singleton(f);
                }
            }
            if verified.contains(&t) {
                continue;
            }
            acc.iter_mut().for_each(|w| *w = 0);
            for x in elements(t) {
                for (a, c) in acc.iter_mut().zip(&columns[x]) {
                    *a |= c;
                }
            }
            for (w, &a) in acc.iter().enumerate() {
                let want = if w + 1 == words { last_mask } else { u64::MAX };
                let missing = want & !a;
                if missing != 0 {
                    let idx = w * 64 + missing.trailing_zeros() as usize;
                    return Err(Error::Exchange { b1, b2: bases[idx], e });
                }
            }
            verified.insert(t);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::from_indices;

    fn u(r: usize, n: usize) -> Matroid {
        Matroid::from_bases(GroundSet::new(n).unwrap(), r, bitset::k_subsets(n, r)).unwrap()
    }

    #[test]
    fn uniform_rank_and_closure() {
        let m = u(2, 3);
        assert_eq!(m.rank(0b111), 2);
        assert_eq!(m.rank(0), 0);
        assert_eq!(m.closure(0), 0);
        assert_eq!(m.closure(0b011), 0b111);
        assert_eq!(m.flats_of_rank(1), vec![0b001, 0b010, 0b100]);
    }

    #[test]
    fn exchange_violation_has_witness() {
        let g = GroundSet::new(4).unwrap();
        let err = Matroid::from_bases(g, 2, vec![0b0011, 0b1100]).unwrap_err();
        match err {
            Error::Exchange { b1, b2, e } => {
                assert!(contains(b1, e) && !contains(b2, e));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unequal_cardinalities_rejected() {
        let g = GroundSet::new(3).unwrap();
        assert!(matches!(
            Matroid::from_bases(g, 2, vec![0b011, 0b100]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn contraction_of_u23_is_u12() {
        let m = u(2, 3).contract(0b001).unwrap();
        assert_eq!(m, u(1, 2));
    }

    #[test]
    fn dual_and_direct_sum() {
        assert_eq!(u(2, 3).dual(), u(1, 3));
        assert_eq!(u(1, 1).direct_sum(&u(1, 1)).unwrap(), u(2, 2));
        let s = u(2, 3).direct_sum(&u(1, 2)).unwrap();
        assert_eq!(s.components(), vec![0b00111, 0b11000]);
        assert_eq!(u(2, 2).components().len(), 2);
    }

    #[test]
    fn simplify_collapses_parallel_class() {
        let (si, map) = u(1, 3).simplify();
        assert_eq!(si, u(1, 1));
        assert_eq!(map, vec![Some(0), Some(0), Some(0)]);
    }

    #[test]
    fn circuits_of_u23() {
        assert_eq!(u(2, 3).circuits(), vec![0b111]);
        assert_eq!(u(1, 2).circuits(), vec![from_indices([0, 1])]);
    }

    #[test]
    fn weak_order_examples() {
        let free = u(2, 3);
        let g = GroundSet::new(3).unwrap();
        let less = Matroid::from_bases(g, 2, vec![0b011, 0b101]).unwrap();
        assert!(less.weak_order_leq(&free).unwrap());
        assert!(!free.weak_order_leq(&less).unwrap());
        assert!(u(1, 2).weak_order_leq(&u(2, 2)).unwrap());
    }
}
