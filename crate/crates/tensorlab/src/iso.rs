//! Matroid isomorphism by invariant refinement followed by backtracking.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::bitset::{elements, singleton, SetWord};
use crate::matroid::{map_set, Matroid};

/// Per-element colours stable under line-incidence refinement.
fn colours(m: &Matroid) -> Vec<u64> {
    let n = m.n();
    let mut degree = vec![0usize; n];
    for &b in m.bases() {
        for e in elements(b) {
            degree[e] += 1;
        }
    }
    let lines = m.flats_of_rank(2.min(m.full_rank()));
    let loops = m.loops();
    let mut colour: Vec<u64> = (0..n)
        .map(|e| {
            let loop_flag = (loops >> e & 1) as usize;
            let parallel = m.closure(singleton(e)).count_ones() as usize;
            intern(&[degree[e], loop_flag, parallel])
        })
        .collect();
    for _ in 0..n.max(1) {
        let next: Vec<u64> = (0..n)
            .map(|e| {
                let mut profile: Vec<Vec<u64>> = lines
                    .iter()
                    .filter(|&&l| l >> e & 1 == 1)
                    .map(|&l| {
                        let mut c: Vec<u64> = elements(l).map(|x| colour[x]).collect();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                profile.sort();
                let mut key = vec![colour[e] as usize];
                for p in profile {
                    key.push(usize::MAX);
                    key.extend(p.into_iter().map(|c| c as usize));
                }
                intern(&key)
            })
            .collect();
        let classes = |c: &[u64]| c.iter().collect::<HashSet<_>>().len();
        let stable = classes(&next) == classes(&colour);
        colour = next;
        if stable {
            break;
        }
    }
    colour
}

/// Deterministic 64-bit digest of an integer sequence (FNV-1a).
fn intern(key: &[usize]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &k in key {
        for byte in (k as u64).to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

struct RankMemo<'a> {
    m: &'a Matroid,
    memo: HashMap<SetWord, usize>,
}

impl RankMemo<'_> {
    fn rank(&mut self, x: SetWord) -> usize {
        if let Some(&r) = self.memo.get(&x) {
            return r;
        }
        let r = self.m.rank(x);
        self.memo.insert(x, r);
        r
    }
}

pub(crate) fn find_isomorphism(a: &Matroid, b: &Matroid) -> Option<Vec<usize>> {
    let n = a.n();
    if n != b.n() || a.full_rank() != b.full_rank() || a.bases().len() != b.bases().len() {
        return None;
    }
    let ca = colours(a);
    let cb = colours(b);
    let mut count: BTreeMap<u64, i64> = BTreeMap::new();
    for &c in &ca {
        *count.entry(c).or_default() += 1;
    }
    for &c in &cb {
        *count.entry(c).or_default() -= 1;
    }
    if count.values().any(|&v| v != 0) {
        return None;
    }
    let mut class_size: HashMap<u64, usize> = HashMap::new();
    for &c in &ca {
        *class_size.entry(c).or_default() += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&e| (class_size[&ca[e]], e));

    let target: HashSet<SetWord> = b.bases().iter().copied().collect();
    let mut ra = RankMemo { m: a, memo: HashMap::new() };
    let mut rb = RankMemo { m: b, memo: HashMap::new() };
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let depth_limit = 3.min(a.full_rank() + 1);

    fn consistent(
        placed: &[usize],
        image: &[usize],
        new: usize,
        depth_limit: usize,
        ra: &mut RankMemo,
        rb: &mut RankMemo,
    ) -> bool {
        let single = singleton(new);
        if ra.rank(single) != rb.rank(singleton(image[new])) {
            return false;
        }
        for (i, &x) in placed.iter().enumerate() {
            let pair = single | singleton(x);
            let pimg = singleton(image[new]) | singleton(image[x]);
            if ra.rank(pair) != rb.rank(pimg) {
                return false;
            }
            if depth_limit >= 3 {
                for &y in &placed[..i] {
                    let t = pair | singleton(y);
                    let timg = pimg | singleton(image[y]);
                    if ra.rank(t) != rb.rank(timg) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        pos: usize,
        order: &[usize],
        ca: &[u64],
        cb: &[u64],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        depth_limit: usize,
        ra: &mut RankMemo,
        rb: &mut RankMemo,
        a: &Matroid,
        target: &HashSet<SetWord>,
    ) -> bool {
        if pos == order.len() {
            return a.bases().iter().all(|&bs| target.contains(&map_set(bs, image)));
        }
        let e = order[pos];
        for cand in 0..order.len() {
            if used[cand] || cb[cand] != ca[e] {
                continue;
            }
            image[e] = cand;
            if consistent(&order[..pos], image, e, depth_limit, ra, rb) {
                used[cand] = true;
                if search(pos + 1, order, ca, cb, image, used, depth_limit, ra, rb, a, target) {
                    return true;
                }
                used[cand] = false;
            }
            image[e] = usize::MAX;
        }
        false
    }

    if search(0, &order, &ca, &cb, &mut image, &mut used, depth_limit, &mut ra, &mut rb, a, &target) {
        Some(image)
    } else {
        None
    }
}
