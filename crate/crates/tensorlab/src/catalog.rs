//! Named matroids, each built from first principles and axiom-checked.

use std::fmt;
use std::str::FromStr;

use crate::bitset::{self, card, from_indices, k_subsets, SetWord};
use crate::error::{input, Error, Result};
use crate::matroid::{GroundSet, Matroid};

/// Lines of the Fano plane on `s1..s7`, 1-based.
pub const FANO_LINES: [[usize; 3]; 7] =
    [[1, 2, 6], [1, 3, 5], [1, 4, 7], [2, 3, 4], [2, 5, 7], [3, 6, 7], [4, 5, 6]];

/// Ground order of the non-Desargues configuration.
pub const NON_DESARGUES_LABELS: [&str; 10] =
    ["d", "a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3"];

pub const NON_DESARGUES_LINES: [[&str; 3]; 9] = [
    ["d", "a1", "b1"],
    ["d", "a2", "b2"],
    ["d", "a3", "b3"],
    ["a1", "a2", "c3"],
    ["a1", "a3", "c2"],
    ["a2", "a3", "c1"],
    ["b1", "b2", "c3"],
    ["b1", "b3", "c2"],
    ["b2", "b3", "c1"],
];

/// Triangles of `M(K_4)` on `e1..e6`, 1-based.
pub const K4_TRIANGLES: [[usize; 3]; 4] = [[1, 2, 6], [1, 3, 5], [2, 3, 4], [4, 5, 6]];

/// Pappus configuration on `1..9`; the last line is dropped for non-Pappus.
pub const PAPPUS_LINES: [[usize; 3]; 9] = [
    [1, 2, 3],
    [4, 5, 6],
    [1, 5, 7],
    [2, 4, 7],
    [1, 6, 8],
    [3, 4, 8],
    [2, 6, 9],
    [3, 5, 9],
    [7, 8, 9],
];

pub const VAMOS_LABELS: [&str; 8] = ["a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogKey {
    Uniform(usize, usize),
    Fano,
    NonFano,
    Vamos,
    NonPappus,
    NonDesargues,
    GraphicK4,
    CographicK33,
    Pg2(u64),
}

impl CatalogKey {
    pub const NAMED: [CatalogKey; 8] = [
        CatalogKey::Fano,
        CatalogKey::NonFano,
        CatalogKey::Vamos,
        CatalogKey::NonPappus,
        CatalogKey::NonDesargues,
        CatalogKey::GraphicK4,
        CatalogKey::CographicK33,
        CatalogKey::Pg2(2),
    ];

    pub fn validate(&self) -> Result<()> {
        match *self {
            CatalogKey::Uniform(r, n) if r > n || n > bitset::MAX_GROUND => {
                input(format!("uniform({r},{n}) needs 0 <= r <= n <= 64"))
            }
            CatalogKey::Pg2(p) if !is_prime(p) || p > 13 => {
                input(format!("pg(2,{p}) needs a prime p <= 13"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKey::Uniform(r, n) => write!(f, "uniform:{r},{n}"),
            CatalogKey::Fano => write!(f, "fano"),
            CatalogKey::NonFano => write!(f, "non_fano"),
            CatalogKey::Vamos => write!(f, "vamos"),
            CatalogKey::NonPappus => write!(f, "non_pappus"),
            CatalogKey::NonDesargues => write!(f, "non_desargues"),
            CatalogKey::GraphicK4 => write!(f, "graphic_k4"),
            CatalogKey::CographicK33 => write!(f, "cographic_k33"),
            CatalogKey::Pg2(p) => write!(f, "pg:2,{p}"),
        }
    }
}

impl FromStr for CatalogKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace('-', "_");
        let params = |rest: &str| -> Result<Vec<u64>> {
            rest.trim_matches(|c| c == '(' || c == ')' || c == ':')
                .split(',')
                .map(|x| x.trim().parse::<u64>().map_err(|_| Error::Input(format!("bad parameter in {s}"))))
                .collect()
        };
        let key = match t.as_str() {
            "fano" | "f7" => CatalogKey::Fano,
            "non_fano" | "nonfano" | "f7_minus" => CatalogKey::NonFano,
            "vamos" | "v8" => CatalogKey::Vamos,
            "non_pappus" | "nonpappus" => CatalogKey::NonPappus,
            "non_desargues" | "nondesargues" => CatalogKey::NonDesargues,
            "graphic_k4" | "k4" | "m(k4)" => CatalogKey::GraphicK4,
            "cographic_k33" | "k33_dual" => CatalogKey::CographicK33,
            _ if t.starts_with("uniform") || t.starts_with('u') && t[1..].starts_with(':') => {
                let rest = t.trim_start_matches("uniform").trim_start_matches('u');
                match params(rest)?.as_slice() {
                    [r, n] => CatalogKey::Uniform(*r as usize, *n as usize),
                    _ => return input(format!("uniform needs two parameters: {s}")),
                }
            }
            _ if t.starts_with("pg") => match params(&t[2..])?.as_slice() {
                [2, p] => CatalogKey::Pg2(*p),
                [_, _] => return input("only projective planes pg(2,p) are available"),
                _ => return input(format!("pg needs two parameters: {s}")),
            },
            _ => return input(format!("unknown catalog key {s}")),
        };
        key.validate()?;
        Ok(key)
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn one_based(lines: &[[usize; 3]]) -> Vec<SetWord> {
    lines.iter().map(|l| from_indices(l.iter().map(|i| i - 1))).collect()
}

pub fn build(key: CatalogKey) -> Result<Matroid> {
    key.validate()?;
    let m = match key {
        CatalogKey::Uniform(r, n) => uniform(r, n)?,
        CatalogKey::Fano => {
            lines_to_matroid(GroundSet::labelled(labels("s", 7))?, &one_based(&FANO_LINES))?
        }
        CatalogKey::NonFano => {
            lines_to_matroid(GroundSet::labelled(labels("t", 7))?, &one_based(&FANO_LINES[..6]))?
        }
        CatalogKey::Vamos => vamos()?,
        CatalogKey::NonPappus => {
            lines_to_matroid(GroundSet::labelled(labels("p", 9))?, &one_based(&PAPPUS_LINES[..8]))?
        }
        CatalogKey::NonDesargues => non_desargues()?,
        CatalogKey::GraphicK4 => {
            lines_to_matroid(GroundSet::labelled(labels("e", 6))?, &one_based(&K4_TRIANGLES))?
        }
        CatalogKey::CographicK33 => graphic_k33()?.dual(),
        CatalogKey::Pg2(p) => pg2(p)?,
    };
    Ok(m.with_name(key.to_string()))
}

pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
    CatalogKey::Uniform(r, n).validate()?;
    Matroid::from_bases(GroundSet::new(n)?, r, k_subsets(n, r))
        .map(|m| m.with_name(format!("uniform:{r},{n}")))
}

/// The simple rank-3 matroid whose dependent lines are exactly `lines`.
pub fn lines_to_matroid(ground: GroundSet, lines: &[SetWord]) -> Result<Matroid> {
    let n = ground.len();
    if n < 3 {
        return input("a rank-3 matroid needs at least three elements");
    }
    for (i, &l) in lines.iter().enumerate() {
        if card(l) < 3 {
            return input(format!("line {} has fewer than three points", bitset::fmt_set(l)));
        }
        if l & !ground.full() != 0 {
            return input(format!("line {} leaves the ground set", bitset::fmt_set(l)));
        }
        for &other in &lines[..i] {
            if card(l & other) > 1 {
                return input(format!(
                    "lines {} and {} share more than one point",
                    bitset::fmt_set(other),
                    bitset::fmt_set(l)
                ));
            }
        }
    }
    let bases = k_subsets(n, 3)
        .into_iter()
        .filter(|&t| lines.iter().all(|&l| t & !l != 0))
        .collect();
    Matroid::from_bases(ground, 3, bases)
}

fn vamos() -> Result<Matroid> {
    let ground = GroundSet::labelled(VAMOS_LABELS.iter().map(|s| s.to_string()).collect())?;
    let pair = |k: usize| from_indices([2 * k, 2 * k + 1]);
    // Pair unions a∪b, a∪c, a∪d, b∪c, b∪d are circuits; c∪d is a basis.
    let circuits: Vec<SetWord> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
        .iter()
        .map(|&(i, j)| pair(i) | pair(j))
        .collect();
    let bases = k_subsets(8, 4).into_iter().filter(|b| !circuits.contains(b)).collect();
    Matroid::from_bases(ground, 4, bases)
}

fn non_desargues() -> Result<Matroid> {
    let ground = GroundSet::labelled(NON_DESARGUES_LABELS.iter().map(|s| s.to_string()).collect())?;
    let lines: Vec<SetWord> = NON_DESARGUES_LINES
        .iter()
        .map(|l| from_indices(l.iter().map(|x| ground.index_of(x).expect("known label"))))
        .collect();
    lines_to_matroid(ground, &lines)
}

/// Graphic matroid of `K_{3,3}`; edge `(r_i, c_j)` is element `3i + j`.
pub fn graphic_k33() -> Result<Matroid> {
    let mut names = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            names.push(format!("r{i}c{j}"));
        }
    }
    let ground = GroundSet::labelled(names)?;
    let bases = k_subsets(9, 5)
        .into_iter()
        .filter(|&t| is_forest(t, 3))
        .collect();
    Matroid::from_bases(ground, 5, bases)
}

/// Whether the edge set `t` of `K_{k,k}` (edge `ki + j`) is acyclic.
fn is_forest(t: SetWord, k: usize) -> bool {
    let mut parent: Vec<usize> = (0..2 * k).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in bitset::elements(t) {
        let (u, v) = (e / k, k + e % k);
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Points of `PG(2,p)`: the normalised representatives of the 1-dimensional
/// subspaces of `GF(p)^3`, in lexicographic order. The first nonzero
/// coordinate of each representative is 1.
pub fn pg2_points(p: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    out.push(v);
                }
            }
        }
    }
    out
}

fn pg2(p: u64) -> Result<Matroid> {
    let pts = pg2_points(p);
    if pts.len() > bitset::MAX_GROUND {
        return Err(Error::SizeOverflow(pts.len()));
    }
    let ground = GroundSet::labelled(
        pts.iter().map(|v| format!("({},{},{})", v[0], v[1], v[2])).collect(),
    )?;
    // Lines of PG(2,p) are the point sets orthogonal to a dual point.
    let lines: Vec<SetWord> = pts
        .iter()
        .map(|h| {
            from_indices(
                pts.iter()
                    .enumerate()
                    .filter(|(_, v)| (h[0] * v[0] + h[1] * v[1] + h[2] * v[2]) % p == 0)
                    .map(|(i, _)| i),
            )
        })
        .collect();
    lines_to_matroid(ground, &lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_keys() {
        assert_eq!("uniform:2,3".parse::<CatalogKey>().unwrap(), CatalogKey::Uniform(2, 3));
        assert_eq!("non-fano".parse::<CatalogKey>().unwrap(), CatalogKey::NonFano);
        assert_eq!("pg(2,3)".parse::<CatalogKey>().unwrap(), CatalogKey::Pg2(3));
        assert!("pg:2,4".parse::<CatalogKey>().is_err());
        assert!("uniform:4,3".parse::<CatalogKey>().is_err());
        assert!("bogus".parse::<CatalogKey>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for key in CatalogKey::NAMED.iter().chain([CatalogKey::Uniform(3, 6)].iter()) {
            assert_eq!(key.to_string().parse::<CatalogKey>().unwrap(), *key);
        }
    }

    #[test]
    fn fano_shape() {
        let f = build(CatalogKey::Fano).unwrap();
        assert_eq!((f.n(), f.full_rank()), (7, 3));
        let three_point: Vec<_> = f.flats_of_rank(2).into_iter().filter(|&l| card(l) == 3).collect();
        assert_eq!(three_point.len(), 7);
    }

    #[test]
    fn empty_line_list_gives_u3n() {
        let m = lines_to_matroid(GroundSet::new(5).unwrap(), &[]).unwrap();
        assert_eq!(m, uniform(3, 5).unwrap());
    }

    #[test]
    fn overlapping_lines_rejected() {
        let g = GroundSet::new(5).unwrap();
        assert!(lines_to_matroid(g, &[0b00111, 0b01011]).is_err());
    }

    #[test]
    fn pg_sizes() {
        assert_eq!(pg2_points(3).len(), 13);
        assert_eq!(build(CatalogKey::Pg2(3)).unwrap().n(), 13);
        assert!(matches!(build(CatalogKey::Pg2(11)), Err(Error::SizeOverflow(133))));
    }
}
