//! Fixed-width subsets of a ground set with at most 64 elements.
//!
//! A subset is a plain `u64`; bit `i` set means element `i` is present.
//! Iteration orders below are all lexicographic on the bit vector read from
//! element 0 upward, which is the tie-breaking order used across the crate.

/// A subset of a ground set of at most 64 elements.
pub type SetWord = u64;

pub const MAX_GROUND: usize = 64;

#[inline]
pub fn full(n: usize) -> SetWord {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn singleton(i: usize) -> SetWord {
    1u64 << i
}

#[inline]
pub fn card(x: SetWord) -> u32 {
    x.count_ones()
}

#[inline]
pub fn contains(x: SetWord, i: usize) -> bool {
    x >> i & 1 == 1
}

#[inline]
pub fn is_subset(x: SetWord, y: SetWord) -> bool {
    x & !y == 0
}

pub fn from_indices<I: IntoIterator<Item = usize>>(items: I) -> SetWord {
    items.into_iter().fold(0, |acc, i| acc | singleton(i))
}

pub fn to_indices(x: SetWord) -> Vec<usize> {
    elements(x).collect()
}

/// Elements of `x` in increasing order.
pub fn elements(x: SetWord) -> impl Iterator<Item = usize> {
    let mut rest = x;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// Lowest element of a nonempty set.
#[inline]
pub fn min_element(x: SetWord) -> Option<usize> {
    (x != 0).then(|| x.trailing_zeros() as usize)
}

/// Canonical order: lexicographic comparison of the sorted element lists.
///
/// For sets of equal size this is `{0,5} < {1,2}`; a proper prefix comes
/// first, so `{0} < {0,1}`.
pub fn lex_cmp(a: SetWord, b: SetWord) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let d = a ^ b;
    if d == 0 {
        return Ordering::Equal;
    }
    let i = d.trailing_zeros();
    let above = if i >= 63 { 0 } else { !0u64 << (i + 1) };
    if contains(a, i as usize) {
        if b & above != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    } else if a & above != 0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Sorts sets into the canonical lexicographic order and removes duplicates.
pub fn sort_lex(sets: &mut Vec<SetWord>) {
    sets.sort_unstable_by(|&a, &b| lex_cmp(a, b));
    sets.dedup();
}

/// All subsets of `x` (including `0` and `x`), in increasing numeric order.
pub fn subsets(x: SetWord) -> impl Iterator<Item = SetWord> {
    let mut cur: Option<SetWord> = Some(0);
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == x { None } else { Some((out.wrapping_sub(x)) & x) };
        Some(out)
    })
}

/// All `k`-element subsets of `{0..n}` in lexicographic bit-vector order.
pub fn k_subsets(n: usize, k: usize) -> Vec<SetWord> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(from_indices(idx.iter().copied()));
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All `k`-element subsets of the set `x`, in lexicographic order.
pub fn k_subsets_of(x: SetWord, k: usize) -> Vec<SetWord> {
    let elems = to_indices(x);
    k_subsets(elems.len(), k)
        .into_iter()
        .map(|s| from_indices(elements(s).map(|i| elems[i])))
        .collect()
}

/// Index of the product element `(i, j)` under row-major indexing.
#[inline]
pub fn pair_index(i: usize, j: usize, n_right: usize) -> usize {
    i * n_right + j
}

/// Row-major product of two subsets, `x × y`.
pub fn product(x: SetWord, y: SetWord, n_right: usize) -> SetWord {
    let mut out = 0;
    for i in elements(x) {
        out |= y << (i * n_right);
    }
    out
}

/// The slice `{i} × S_2` of a product subset, returned as a subset of `S_2`.
#[inline]
pub fn row(x: SetWord, i: usize, n_right: usize) -> SetWord {
    (x >> (i * n_right)) & full(n_right)
}

/// The slice `S_1 × {j}` of a product subset, returned as a subset of `S_1`.
pub fn column(x: SetWord, j: usize, n_left: usize, n_right: usize) -> SetWord {
    let mut out = 0;
    for i in 0..n_left {
        if contains(x, pair_index(i, j, n_right)) {
            out |= singleton(i);
        }
    }
    out
}

/// Renders a subset as a brace list of indices, e.g. `{0,3,5}`.
pub fn fmt_set(x: SetWord) -> String {
    let items: Vec<String> = elements(x).map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_subsets_counts_and_order() {
        let s = k_subsets(5, 2);
        assert_eq!(s.len(), 10);
        assert_eq!(s[0], 0b00011);
        assert_eq!(s[1], 0b00101);
        assert_eq!(*s.last().unwrap(), 0b11000);
        assert_eq!(k_subsets(4, 0), vec![0]);
        assert_eq!(k_subsets(3, 4), Vec::<SetWord>::new());
    }

    #[test]
    fn lex_order_prefers_small_elements() {
        let mut v = vec![0b110, 0b1001, 0b011, 0b1];
        sort_lex(&mut v);
        assert_eq!(v, vec![0b1, 0b011, 0b1001, 0b110]);
        let ks = k_subsets(6, 3);
        let mut sorted = ks.clone();
        sort_lex(&mut sorted);
        assert_eq!(ks, sorted);
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let all: Vec<_> = subsets(0b1011).collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|&s| is_subset(s, 0b1011)));
    }

    #[test]
    fn product_and_slices() {
        let p = product(0b101, 0b011, 3);
        assert_eq!(to_indices(p), vec![0, 1, 6, 7]);
        assert_eq!(row(p, 2, 3), 0b011);
        assert_eq!(column(p, 1, 3, 3), 0b101);
    }
}
