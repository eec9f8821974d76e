//! Matrices over `GF(p)` and `Q`, their matroids, and Kronecker products.

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::bitset::{self, card, elements, full, singleton, SetWord};
use crate::error::{input, Error, Result};
use crate::field::{self, Echelon, FieldOps, FieldSpec, Gfp, Rationals};
use crate::matroid::{GroundSet, Matroid};
use crate::polymatroid::PolymatroidFn;

/// Anything that can answer rank queries on subsets of a ground set.
pub trait RankOracle {
    fn ground_size(&self) -> usize;
    fn rank_of(&self, x: SetWord) -> usize;
}

impl RankOracle for Matroid {
    fn ground_size(&self) -> usize {
        self.n()
    }
    fn rank_of(&self, x: SetWord) -> usize {
        self.rank(x)
    }
}

/// Where the columns of a matrix go.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnMap {
    /// `elements[c]` is the matroid element represented by column `c`.
    Elements(Vec<usize>),
    /// `blocks[s]` lists the columns of polymatroid element `s`.
    Partition(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Entries {
    Gf(Vec<Vec<u64>>),
    Q(Vec<Vec<BigRational>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRep {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Entries,
    column_map: ColumnMap,
}

impl MatrixRep {
    /// Builds a matrix from rational entries, reducing into `GF(p)` if needed.
    pub fn new(field: FieldSpec, entries: Vec<Vec<BigRational>>, column_map: Option<ColumnMap>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        if entries.iter().any(|r| r.len() != cols) {
            return input("matrix rows have different lengths");
        }
        let entries = match field {
            FieldSpec::Gf(p) => Entries::Gf(
                entries
                    .iter()
                    .map(|r| r.iter().map(|q| field::rational_to_gf(q, p)).collect::<Result<_>>())
                    .collect::<Result<_>>()?,
            ),
            FieldSpec::Q => Entries::Q(entries),
        };
        let column_map = column_map.unwrap_or_else(|| ColumnMap::Elements((0..cols).collect()));
        let m = MatrixRep { field, rows, cols, entries, column_map };
        m.validate_map()?;
        Ok(m)
    }

    pub fn from_ints(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        let e = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        Self::new(field, e, None)
    }

    pub fn with_column_map(mut self, map: ColumnMap) -> Result<Self> {
        self.column_map = map;
        self.validate_map()?;
        Ok(self)
    }

    fn validate_map(&self) -> Result<()> {
        match &self.column_map {
            ColumnMap::Elements(e) => {
                let mut seen = vec![false; self.cols];
                if e.len() != self.cols {
                    return input("column map must list one element per column");
                }
                for &x in e {
                    if x >= self.cols || seen[x] {
                        return input("column map is not a bijection onto the elements");
                    }
                    seen[x] = true;
                }
            }
            ColumnMap::Partition(blocks) => {
                let mut seen = vec![false; self.cols];
                for b in blocks {
                    for &c in b {
                        if c >= self.cols || seen[c] {
                            return input("partition blocks overlap or name a missing column");
                        }
                        seen[c] = true;
                    }
                }
                if seen.iter().any(|s| !s) {
                    return input("partition blocks do not cover all columns");
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column_map(&self) -> &ColumnMap {
        &self.column_map
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    /// Entry `(i, j)` as a rational (a residue in `0..p` over `GF(p)`).
    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        match &self.entries {
            Entries::Gf(e) => BigRational::from_integer(e[i][j].into()),
            Entries::Q(e) => e[i][j].clone(),
        }
    }

    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| field::fmt_rational(&self.entry(i, j))).collect())
            .collect()
    }

    /// Number of elements (columns for a bijection, blocks for a partition).
    pub fn element_count(&self) -> usize {
        match &self.column_map {
            ColumnMap::Elements(e) => e.len(),
            ColumnMap::Partition(b) => b.len(),
        }
    }

    /// Columns representing the element set `x`.
    pub fn columns_of(&self, x: SetWord) -> SetWord {
        match &self.column_map {
            ColumnMap::Elements(e) => {
                (0..self.cols).filter(|&c| bitset::contains(x, e[c])).fold(0, |a, c| a | singleton(c))
            }
            ColumnMap::Partition(b) => elements(x).fold(0, |a, s| a | bitset::from_indices(b[s].iter().copied())),
        }
    }

    /// Exact rank of the selected columns.
    pub fn matrix_rank(&self, cols: SetWord) -> Result<usize> {
        if self.cols < 64 && cols & !full(self.cols) != 0 {
            return input("column selection out of range");
        }
        Ok(self.rank_cols(cols))
    }

    fn rank_cols(&self, cols: SetWord) -> usize {
        match &self.entries {
            Entries::Gf(e) => {
                let p = match self.field {
                    FieldSpec::Gf(p) => p,
                    FieldSpec::Q => unreachable!(),
                };
                if p == 2 && self.rows <= 64 {
                    return gf2_rank(e, cols);
                }
                field::rank_of(&Gfp(p), elements(cols).map(|c| column(e, c)))
            }
            Entries::Q(e) => field::rank_of(&Rationals, elements(cols).map(|c| column(e, c))),
        }
    }

    /// Rank of the columns representing the element set `x`.
    pub fn element_rank(&self, x: SetWord) -> usize {
        self.rank_cols(self.columns_of(x))
    }

    pub fn full_rank(&self) -> usize {
        if self.cols > 64 {
            return self.rank_of_columns(&(0..self.cols).collect::<Vec<_>>());
        }
        self.rank_cols(full(self.cols))
    }

    /// Rank of an explicit column list; works past 64 columns.
    pub fn rank_of_columns(&self, cols: &[usize]) -> usize {
        match &self.entries {
            Entries::Gf(e) => field::rank_of(&Gfp(self.field.characteristic()), cols.iter().map(|&c| column(e, c))),
            Entries::Q(e) => field::rank_of(&Rationals, cols.iter().map(|&c| column(e, c))),
        }
    }

    /// Rank of an explicit element list under an element column map.
    pub fn rank_of_elements(&self, elems: &[usize]) -> Result<usize> {
        let ColumnMap::Elements(map) = &self.column_map else {
            return input("element ranks need an element column map");
        };
        let mut cols: Vec<usize> = (0..self.cols).filter(|&c| elems.contains(&map[c])).collect();
        cols.sort_unstable();
        Ok(self.rank_of_columns(&cols))
    }

    /// Kronecker product; the column map is the row-major product map.
    pub fn kronecker(&self, other: &MatrixRep) -> Result<MatrixRep> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let (m, n, p, q) = (self.rows, self.cols, other.rows, other.cols);
        let entries = match (&self.entries, &other.entries) {
            (Entries::Gf(a), Entries::Gf(b)) => {
                let f = Gfp(self.field.characteristic());
                Entries::Gf(kron(&f, a, b))
            }
            (Entries::Q(a), Entries::Q(b)) => Entries::Q(kron(&Rationals, a, b)),
            _ => unreachable!("entries follow the field"),
        };
        let column_map = match (&self.column_map, &other.column_map) {
            (ColumnMap::Elements(a), ColumnMap::Elements(b)) => {
                let n2 = b.len();
                let mut map = Vec::with_capacity(n * q);
                for &ea in a {
                    for &eb in b {
                        map.push(ea * n2 + eb);
                    }
                }
                ColumnMap::Elements(map)
            }
            (ca, cb) => {
                let ba = as_blocks(ca);
                let bb = as_blocks(cb);
                let mut blocks = Vec::with_capacity(ba.len() * bb.len());
                for x in &ba {
                    for y in &bb {
                        let mut cols: Vec<usize> =
                            x.iter().flat_map(|&i| y.iter().map(move |&j| i * q + j)).collect();
                        cols.sort_unstable();
                        blocks.push(cols);
                    }
                }
                ColumnMap::Partition(blocks)
            }
        };
        Ok(MatrixRep { field: self.field, rows: m * p, cols: n * q, entries, column_map })
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &MatrixRep) -> Result<MatrixRep> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.cols != other.rows {
            return input("inner dimensions differ");
        }
        let entries = match (&self.entries, &other.entries) {
            (Entries::Gf(a), Entries::Gf(b)) => Entries::Gf(matmul(&Gfp(self.field.characteristic()), a, b)),
            (Entries::Q(a), Entries::Q(b)) => Entries::Q(matmul(&Rationals, a, b)),
            _ => unreachable!("entries follow the field"),
        };
        Ok(MatrixRep {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            entries,
            column_map: ColumnMap::Elements((0..other.cols).collect()),
        })
    }

    /// A uniformly random matrix with entries from the field (over `Q`,
    /// integers in `-3..=3`).
    pub fn random<R: Rng>(field: FieldSpec, rows: usize, cols: usize, rng: &mut R) -> MatrixRep {
        let entries = match field {
            FieldSpec::Gf(p) => Entries::Gf((0..rows).map(|_| (0..cols).map(|_| rng.gen_range(0..p)).collect()).collect()),
            FieldSpec::Q => Entries::Q(
                (0..rows)
                    .map(|_| (0..cols).map(|_| BigRational::from_integer(rng.gen_range(-3i64..=3).into())).collect())
                    .collect(),
            ),
        };
        MatrixRep { field, rows, cols, entries, column_map: ColumnMap::Elements((0..cols).collect()) }
    }
}

fn as_blocks(map: &ColumnMap) -> Vec<Vec<usize>> {
    match map {
        ColumnMap::Elements(e) => {
            let mut blocks = vec![Vec::new(); e.len()];
            for (c, &x) in e.iter().enumerate() {
                blocks[x].push(c);
            }
            blocks
        }
        ColumnMap::Partition(b) => b.clone(),
    }
}

fn column<E: Clone>(e: &[Vec<E>], c: usize) -> Vec<E> {
    e.iter().map(|r| r[c].clone()).collect()
}

fn kron<F: FieldOps>(f: &F, a: &[Vec<F::E>], b: &[Vec<F::E>]) -> Vec<Vec<F::E>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for ra in a {
        for rb in b {
            let mut row = Vec::with_capacity(ra.len() * rb.len());
            for x in ra {
                for y in rb {
                    row.push(f.mul(x, y));
                }
            }
            out.push(row);
        }
    }
    out
}

fn matmul<F: FieldOps>(f: &F, a: &[Vec<F::E>], b: &[Vec<F::E>]) -> Vec<Vec<F::E>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|ra| {
            (0..cols)
                .map(|j| ra.iter().zip(b).fold(f.zero(), |acc, (x, rb)| f.add(&acc, &f.mul(x, &rb[j]))))
                .collect()
        })
        .collect()
}

/// Rank over `GF(2)` with columns packed into words.
fn gf2_rank(e: &[Vec<u64>], cols: SetWord) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for c in elements(cols) {
        let mut v = e.iter().enumerate().fold(0u64, |acc, (i, r)| acc | (r[c] & 1) << i);
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// The matroid of a matrix whose columns are in bijection with elements,
/// kept as a rank oracle so large products need not be materialised.
#[derive(Debug, Clone)]
pub struct LinearMatroid {
    rep: MatrixRep,
}

impl LinearMatroid {
    pub fn new(rep: MatrixRep) -> Result<Self> {
        match rep.column_map {
            ColumnMap::Elements(_) if rep.cols <= bitset::MAX_GROUND => Ok(LinearMatroid { rep }),
            ColumnMap::Elements(_) => Err(Error::SizeOverflow(rep.cols)),
            ColumnMap::Partition(_) => input("a linear matroid needs a column bijection"),
        }
    }

    pub fn rep(&self) -> &MatrixRep {
        &self.rep
    }

    /// Enumerates the bases (maximal-rank column sets) and axiom-checks them.
    pub fn to_matroid(&self) -> Result<Matroid> {
        let n = self.rep.cols;
        let r = self.rep.full_rank();
        let map = match &self.rep.column_map {
            ColumnMap::Elements(e) => e.clone(),
            ColumnMap::Partition(_) => unreachable!(),
        };
        let mut bases = Vec::new();
        match &self.rep.entries {
            Entries::Gf(e) => {
                let f = Gfp(self.rep.field.characteristic());
                collect_bases(&f, &(0..n).map(|c| column(e, c)).collect::<Vec<_>>(), r, &map, &mut bases);
            }
            Entries::Q(e) => {
                collect_bases(&Rationals, &(0..n).map(|c| column(e, c)).collect::<Vec<_>>(), r, &map, &mut bases);
            }
        }
        Matroid::from_bases(GroundSet::new(n)?, r, bases)
    }
}

impl RankOracle for LinearMatroid {
    fn ground_size(&self) -> usize {
        self.rep.cols
    }
    fn rank_of(&self, x: SetWord) -> usize {
        self.rep.element_rank(x)
    }
}

/// Depth-first enumeration of independent column sets of size `r`.
fn collect_bases<F: FieldOps>(f: &F, cols: &[Vec<F::E>], r: usize, map: &[usize], out: &mut Vec<SetWord>) {
    fn rec<F: FieldOps>(
        f: &F,
        cols: &[Vec<F::E>],
        r: usize,
        map: &[usize],
        start: usize,
        chosen: SetWord,
        ech: &Echelon<F>,
        out: &mut Vec<SetWord>,
    ) {
        if ech.len() == r {
            out.push(elements(chosen).fold(0, |a, c| a | singleton(map[c])));
            return;
        }
        let need = r - ech.len();
        for c in start..cols.len() {
            if cols.len() - c < need {
                break;
            }
            let mut next = ech.clone();
            if next.insert(f, cols[c].clone()) {
                rec(f, cols, r, map, c + 1, chosen | singleton(c), &next, out);
            }
        }
    }
    rec(f, cols, r, map, 0, 0, &Echelon::default(), out);
}

/// The matroid of a matrix with a column bijection.
pub fn matroid_from_rep(rep: &MatrixRep) -> Result<Matroid> {
    LinearMatroid::new(rep.clone())?.to_matroid()
}

/// The polymatroid `X ↦ rank(columns of X)` of a partitioned matrix.
pub fn polymatroid_from_rep(rep: &MatrixRep) -> Result<PolymatroidFn> {
    let k = rep.element_count();
    if k > crate::polymatroid::MAX_POLY_GROUND {
        return Err(Error::SizeOverflow(k));
    }
    let values = (0..=full(k))
        .map(|x| BigRational::from_integer((rep.element_rank(x) as i64).into()))
        .collect();
    PolymatroidFn::new(k, values)
}

/// Result of [`tensor_from_reps`].
#[derive(Debug, Clone)]
pub enum TensorRep {
    Matroid(LinearMatroid),
    Polymatroid(PolymatroidFn),
}

/// Tensor product represented by the Kronecker product of two matrices,
/// certified against the factor rank functions before it is returned.
pub fn tensor_from_reps(a: &MatrixRep, b: &MatrixRep) -> Result<TensorRep> {
    let k = a.kronecker(b)?;
    let partitioned = matches!(a.column_map, ColumnMap::Partition(_)) || matches!(b.column_map, ColumnMap::Partition(_));
    if partitioned {
        let phi = polymatroid_from_rep(&k)?;
        let p1 = polymatroid_from_rep(&a.clone().with_column_map(ColumnMap::Partition(as_blocks(&a.column_map)))?)?;
        let p2 = polymatroid_from_rep(&b.clone().with_column_map(ColumnMap::Partition(as_blocks(&b.column_map)))?)?;
        crate::tensor::check::is_poly_tensor_product(&phi, &p1, &p2)
            .into_result()
            .map_err(|w| Error::Certification(format!("Kronecker polymatroid fails {w}")))?;
        return Ok(TensorRep::Polymatroid(phi));
    }
    let lin = LinearMatroid::new(k)?;
    let l1 = LinearMatroid::new(a.clone())?;
    let l2 = LinearMatroid::new(b.clone())?;
    crate::tensor::check::is_tensor_product(&lin, &l1, &l2)?
        .into_result()
        .map_err(|w| Error::Certification(format!("Kronecker product fails {w}")))?;
    Ok(TensorRep::Matroid(lin))
}

/// `A` from the Fano construction: over `GF(2)` it represents `F_7`, over any
/// other characteristic it represents the non-Fano matroid.
pub fn fano_matrix(field: FieldSpec) -> Result<MatrixRep> {
    MatrixRep::from_ints(
        field,
        &[&[1, 0, 0, 1, 1, 0, 1], &[0, 1, 0, 1, 0, 1, 1], &[0, 0, 1, 0, 1, 1, 1]],
    )
}

/// A representation of `U_{2,3}` valid over every field.
pub fn u23_matrix(field: FieldSpec) -> Result<MatrixRep> {
    MatrixRep::from_ints(field, &[&[1, 0, 1], &[0, 1, 1]])
}

/// Identity matrix of size `k`.
pub fn identity(field: FieldSpec, k: usize) -> Result<MatrixRep> {
    let rows: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| (i == j) as i64).collect()).collect();
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    MatrixRep::from_ints(field, &refs)
}

/// Whether two matrices are equal entrywise.
pub fn same_entries(a: &MatrixRep, b: &MatrixRep) -> bool {
    a.rows == b.rows
        && a.cols == b.cols
        && (0..a.rows).all(|i| (0..a.cols).all(|j| (a.entry(i, j) - b.entry(i, j)).is_zero()))
}

/// Number of selected columns, for callers that select by element.
pub fn selection_size(x: SetWord) -> usize {
    card(x) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, uniform, CatalogKey};

    #[test]
    fn fano_matrix_ranks() {
        let a2 = fano_matrix(FieldSpec::Gf(2)).unwrap();
        // Column order is the matrix's own, not the s-labelling of the line list.
        assert_eq!(a2.matrix_rank(bitset::from_indices([0, 1, 3])).unwrap(), 2);
        assert_eq!(a2.matrix_rank(bitset::from_indices([0, 1, 5])).unwrap(), 3);
        assert_eq!(a2.matrix_rank(bitset::from_indices([3, 4, 5])).unwrap(), 2);
        let aq = fano_matrix(FieldSpec::Q).unwrap();
        assert_eq!(aq.matrix_rank(bitset::from_indices([3, 4, 5])).unwrap(), 3);
        assert_eq!(aq.matrix_rank(0).unwrap(), 0);
    }

    #[test]
    fn fano_matroids_from_matrix() {
        let f = matroid_from_rep(&fano_matrix(FieldSpec::Gf(2)).unwrap()).unwrap();
        assert!(f.is_isomorphic(&build(CatalogKey::Fano).unwrap()).is_some());
        let nf = matroid_from_rep(&fano_matrix(FieldSpec::Gf(3)).unwrap()).unwrap();
        assert!(nf.is_isomorphic(&build(CatalogKey::NonFano).unwrap()).is_some());
        let i3 = matroid_from_rep(&identity(FieldSpec::Q, 3).unwrap()).unwrap();
        assert_eq!(i3, uniform(3, 3).unwrap());
    }

    #[test]
    fn kronecker_of_identities() {
        let k = identity(FieldSpec::Q, 2).unwrap().kronecker(&identity(FieldSpec::Q, 3).unwrap()).unwrap();
        assert!(same_entries(&k, &identity(FieldSpec::Q, 6).unwrap()));
        let err = identity(FieldSpec::Q, 2).unwrap().kronecker(&identity(FieldSpec::Gf(2), 2).unwrap());
        assert!(matches!(err, Err(Error::FieldMismatch(_, _))));
    }

    #[test]
    fn gf2_fast_path_matches_generic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = MatrixRep::random(FieldSpec::Gf(2), 5, 8, &mut rng);
            let e = match m.entries() {
                Entries::Gf(e) => e.clone(),
                _ => unreachable!(),
            };
            for cols in [0u64, 0b1011, 0xff, 0b110110] {
                let generic = field::rank_of(&Gfp(2), elements(cols).map(|c| column(&e, c)));
                assert_eq!(gf2_rank(&e, cols), generic);
            }
        }
    }

    use rand::SeedableRng;
}
