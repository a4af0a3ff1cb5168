//! Exact integer homology of the labelled-forest complexes: boundary
//! matrices, Smith normal form, connectivity and chessboard obstructions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::complex::{Face, all_faces, chessboard_tree};
use crate::error::Result;
use crate::tree::CapacityTree;

/// Sparse integer matrix stored by columns, entries sorted by row.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn from_dense(a: &[Vec<i64>]) -> SparseMatrix {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let columns = (0..cols)
            .map(|j| (0..rows).filter(|&i| a[i][j] != 0).map(|i| (i, a[i][j])).collect())
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// `self * other`, or `None` on overflow.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.cols, other.rows);
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(k, b) in col {
                    for &(i, a) in &self.columns[k] {
                        let e = acc.entry(i).or_insert(0);
                        *e = e.checked_add(a.checked_mul(b)?)?;
                    }
                }
                Some(acc.into_iter().filter(|&(_, v)| v != 0).collect())
            })
            .collect::<Option<Vec<_>>>()?;
        Some(SparseMatrix { rows: self.rows, cols: other.cols, columns })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

/// Matrix entries the elimination can work with.
trait Entry: Clone + Zero + PartialEq {
    fn is_unit(&self) -> bool;
    /// `self - f * v`, or `None` on overflow.
    fn sub_mul(&self, f: &Self, v: &Self) -> Option<Self>;
    fn mul_unit(&self, p: &Self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
    fn sub_mul(&self, f: &i64, v: &i64) -> Option<i64> {
        self.checked_sub(f.checked_mul(*v)?)
    }
    fn mul_unit(&self, p: &i64) -> i64 {
        self * p
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(&self, f: &BigInt, v: &BigInt) -> Option<BigInt> {
        Some(self - f * v)
    }
    fn mul_unit(&self, p: &BigInt) -> BigInt {
        self * p
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Pivots on `±1` entries, fewest-entries rows first, deleting each pivot
/// row and column. Returns the number of pivots and the dense remainder,
/// or `None` if an entry overflowed.
fn eliminate_units<T: Entry>(m: &SparseMatrix, conv: impl Fn(i64) -> T) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut rows: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); m.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            rows[i].insert(j, conv(v));
            col_rows[j].insert(i);
        }
    }
    let mut pivots = 0;
    loop {
        let mut progress = false;
        for c in 0..m.cols {
            let Some(r) = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| rows[r][&c].is_unit())
                .min_by_key(|&r| rows[r].len())
            else {
                continue;
            };
            let p = rows[r][&c].clone();
            let pivot_row: Vec<(usize, T)> = rows[r].iter().map(|(&j, v)| (j, v.clone())).collect();
            let others: Vec<usize> = col_rows[c].iter().copied().filter(|&x| x != r).collect();
            for r2 in others {
                let f = rows[r2][&c].mul_unit(&p);
                for (j, v) in &pivot_row {
                    let cur = rows[r2].get(j).cloned().unwrap_or_else(T::zero);
                    let new = cur.sub_mul(&f, v)?;
                    if new.is_zero() {
                        rows[r2].remove(j);
                        col_rows[*j].remove(&r2);
                    } else {
                        rows[r2].insert(*j, new);
                        col_rows[*j].insert(r2);
                    }
                }
            }
            for (j, _) in &pivot_row {
                col_rows[*j].remove(&r);
            }
            rows[r].clear();
            pivots += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&i| !rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&j| !col_rows[j].is_empty()).collect();
    let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let dense = live_rows
        .iter()
        .map(|&i| {
            let mut row = vec![BigInt::zero(); live_cols.len()];
            for (j, v) in &rows[i] {
                row[col_pos[j]] = v.to_big();
            }
            row
        })
        .collect();
    Some((pivots, dense))
}

/// Invariant factors of a dense matrix.
fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = (t..m)
            .cartesian_product(t..n)
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (upper, lower) = a.split_at_mut(i);
                for (x, y) in lower[0][t..].iter_mut().zip(&upper[t][t..]) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                }
            }
            if clean {
                let p = a[t][t].clone();
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        let (upper, lower) = a.split_at_mut(i);
                        for (x, y) in upper[t][t..].iter_mut().zip(&lower[0][t..]) {
                            *x += y;
                        }
                    }
                    None => break,
                }
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// Nonzero invariant factors `d_1 | d_2 | ...`, computed exactly. Unit
/// pivots are eliminated sparsely in machine integers; on overflow the
/// elimination is redone with unbounded integers.
pub fn smith_normal_form(m: &SparseMatrix) -> Vec<BigInt> {
    let (units, rest) = eliminate_units(m, |v| v)
        .or_else(|| eliminate_units(m, BigInt::from))
        .expect("unbounded elimination cannot overflow");
    let mut out = vec![BigInt::one(); units];
    out.extend(dense_snf(rest));
    out
}

/// Reduced homology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: isize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "H~_{} = 0", self.degree);
        }
        let mut terms = Vec::new();
        if self.betti > 0 {
            terms.push(format!("Z^{}", self.betti));
        }
        terms.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "H~_{} = {}", self.degree, terms.join(" + "))
    }
}

/// Face counts, boundary matrices and reduced homology of a complex.
/// Index `k` of `face_counts` and `groups` is degree `k - 1`.
#[derive(Clone, Debug)]
pub struct ChainComplexSummary {
    pub face_counts: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
    pub groups: Vec<HomologyGroup>,
}

impl ChainComplexSummary {
    pub fn top_degree(&self) -> isize {
        self.face_counts.len() as isize - 2
    }

    pub fn group(&self, degree: isize) -> Option<&HomologyGroup> {
        usize::try_from(degree + 1).ok().and_then(|i| self.groups.get(i))
    }

    /// `∂_{k} ∘ ∂_{k+1} = 0` in every degree.
    pub fn boundary_squares_vanish(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].mul(&w[1]).is_some_and(|p| p.is_zero()))
    }

    pub fn euler_characteristic_matches(&self) -> bool {
        let sign = |k: usize| if k % 2 == 1 { 1i64 } else { -1 };
        let faces: i64 = self.face_counts.iter().enumerate().map(|(k, &c)| sign(k) * c as i64).sum();
        let betti: i64 = self.groups.iter().enumerate().map(|(k, g)| sign(k) * g.betti as i64).sum();
        faces == betti
    }

    /// Zero reduced homology in every degree up to `k`.
    pub fn vanishes_through(&self, k: isize) -> bool {
        self.groups.iter().filter(|g| g.degree <= k).all(HomologyGroup::is_zero)
    }

    /// Reduced homology is zero below the top degree and free in it.
    pub fn concentrated_in_top(&self) -> bool {
        let top = self.top_degree();
        self.vanishes_through(top - 1) && self.group(top).is_none_or(|g| g.torsion.is_empty())
    }

    /// `H~_k = ...` lines for degrees 0 through top, and degree -1 when
    /// it is nonzero.
    pub fn render(&self) -> String {
        self.groups
            .iter()
            .filter(|g| g.degree >= 0 || !g.is_zero())
            .map(|g| format!("{g}\n"))
            .collect()
    }

    /// `degree,betti,torsion-list` lines, torsion separated by `;`.
    pub fn render_machine(&self) -> String {
        self.groups
            .iter()
            .map(|g| format!("{},{},{}\n", g.degree, g.betti, g.torsion.iter().join(";")))
            .collect()
    }
}

/// Boundary matrices of a complex given by its faces grouped by number of
/// cut edges. Column `j` of matrix `k` is the boundary of face `j` with
/// `k + 1` cut edges, the `i`-th smallest edge removed with sign `(-1)^i`.
pub fn boundary_matrices(t: &CapacityTree, faces: &[Vec<Face>]) -> Result<Vec<SparseMatrix>> {
    (1..faces.len())
        .into_par_iter()
        .map(|k| {
            let index: HashMap<&Face, usize> = faces[k - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
            let columns = faces[k]
                .iter()
                .map(|f| {
                    let edges: Vec<u32> = (0..64).filter(|b| f.cut >> b & 1 == 1).collect();
                    let mut col: Vec<(usize, i64)> = edges
                        .iter()
                        .enumerate()
                        .map(|(i, b)| {
                            let g = f.restrict(t, f.cut & !(1u64 << b));
                            let row = *index.get(&g).ok_or_else(|| {
                                crate::Error::Precondition(format!("face {} is missing a facet of its boundary", f.render(t)))
                            })?;
                            Ok((row, if i % 2 == 0 { 1 } else { -1 }))
                        })
                        .collect::<Result<_>>()?;
                    col.sort_unstable();
                    Ok(col)
                })
                .collect::<Result<_>>()?;
            Ok(SparseMatrix { rows: faces[k - 1].len(), cols: faces[k].len(), columns })
        })
        .collect()
}

/// Reduced integer homology of the complex (`skeleton = None`) or its
/// `k`-skeleton.
pub fn reduced_homology(t: &CapacityTree, skeleton: Option<usize>, bound: usize) -> Result<ChainComplexSummary> {
    let faces = all_faces(t, skeleton, bound)?;
    let boundaries = boundary_matrices(t, &faces)?;
    let factors: Vec<Vec<BigInt>> = boundaries.par_iter().map(smith_normal_form).collect();
    let face_counts: Vec<usize> = faces.iter().map(Vec::len).collect();
    // rank of the map out of chain group k (k = 0 is the empty face)
    let rank_out = |k: usize| if k == 0 { 0 } else { factors[k - 1].len() };
    let groups = (0..face_counts.len())
        .map(|k| {
            let rank_in = factors.get(k).map_or(0, Vec::len);
            let torsion = factors
                .get(k)
                .map(|fs| fs.iter().filter(|d| !d.is_one()).cloned().collect())
                .unwrap_or_default();
            HomologyGroup {
                degree: k as isize - 1,
                betti: face_counts[k] - rank_out(k) - rank_in,
                torsion,
            }
        })
        .collect();
    Ok(ChainComplexSummary { face_counts, boundaries, groups })
}

/// Reduced homology of a unit-capacity tree's complex vanishes through
/// degree `n - b - 1`.
pub fn verify_connectivity_consequence(t: &CapacityTree, bound: usize) -> Result<bool> {
    let h = reduced_homology(t, None, bound)?;
    let k = t.len() as isize - t.leaf_count() as isize - 1;
    Ok(h.vanishes_through(k))
}

/// `min{m, n, floor((m + n + 1) / 3)} - 1`.
pub fn nu(m: u32, n: u32) -> i64 {
    i64::from(m.min(n).min((m + n + 1) / 3)) - 1
}

/// Which link of the chain "not shellable, so no inversion function, so
/// no greedy sorting" the homology of a chessboard complex establishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// Nonzero reduced homology below the top degree.
    LowHomology { degree: isize },
    /// Torsion in top homology.
    TopTorsion,
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub m: u32,
    pub n: u32,
    pub distributable: bool,
    pub homology: ChainComplexSummary,
    pub obstruction: Option<Obstruction>,
}

impl ObstructionReport {
    /// Torsion coefficients in `degree`, as integers when they fit.
    pub fn torsion(&self, degree: isize) -> Vec<u64> {
        self.homology
            .group(degree)
            .map(|g| g.torsion.iter().filter_map(ToPrimitive::to_u64).collect())
            .unwrap_or_default()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "chessboard M_{{{},{}}}: centre capacity {}, distributable={}, nu={}\n",
            self.m,
            self.n,
            self.n - self.m,
            self.distributable,
            nu(self.m, self.n)
        );
        out.push_str(&self.homology.render());
        match &self.obstruction {
            None => out.push_str("no obstruction: reduced homology is free and concentrated in the top degree\n"),
            Some(o) => {
                let why = match o {
                    Obstruction::LowHomology { degree } => format!("nonzero reduced homology in degree {degree} below the top"),
                    Obstruction::TopTorsion => "torsion in top homology".to_string(),
                };
                out.push_str(&format!("obstruction: {why}\n"));
                out.push_str("  => not shellable (a shellable complex is a wedge of top-dimensional spheres)\n");
                out.push_str("  => no inversion function (an inversion function yields a shelling)\n");
                out.push_str("  => no greedy sorting by local steps\n");
            }
        }
        out
    }
}

pub fn sorting_obstruction_report(m: u32, n: u32, bound: usize) -> Result<ObstructionReport> {
    let t = chessboard_tree(m, n)?;
    let homology = reduced_homology(&t, None, bound)?;
    let top = homology.top_degree();
    let obstruction = match homology.groups.iter().find(|g| g.degree < top && !g.is_zero()) {
        Some(g) => Some(Obstruction::LowHomology { degree: g.degree }),
        None => homology
            .group(top)
            .is_some_and(|g| !g.torsion.is_empty())
            .then_some(Obstruction::TopTorsion),
    };
    Ok(ObstructionReport { m, n, distributable: t.is_distributable(), homology, obstruction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DEFAULT_FACE_BOUND;

    fn snf(a: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&SparseMatrix::from_dense(a)).iter().map(|d| d.to_i64().unwrap()).collect()
    }

    #[test]
    fn invariant_factors() {
        assert_eq!(snf(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), [1, 1, 1]);
        assert_eq!(snf(&[vec![2, 0], vec![0, 0]]), [2]);
        assert_eq!(snf(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), [2, 6, 12]);
        assert_eq!(snf(&[vec![6, 0], vec![0, 4]]), [2, 12]);
    }

    #[test]
    fn nu_values() {
        assert_eq!((nu(2, 3), nu(3, 4), nu(1, 1)), (1, 1, 0));
    }

    #[test]
    fn hexagon_is_a_circle() {
        let h = reduced_homology(&chessboard_tree(2, 3).unwrap(), None, DEFAULT_FACE_BOUND).unwrap();
        assert_eq!(h.face_counts, [1, 6, 6]);
        assert_eq!(h.boundaries[1].columns.iter().map(Vec::len).collect::<Vec<_>>(), [2; 6]);
        assert_eq!(h.render(), "H~_0 = 0\nH~_1 = Z^1\n");
        assert!(h.boundary_squares_vanish() && h.euler_characteristic_matches());
    }

    #[test]
    fn two_points() {
        let h = reduced_homology(&CapacityTree::path(&[1, 1]), None, DEFAULT_FACE_BOUND).unwrap();
        assert_eq!(h.group(0).unwrap().betti, 1);
    }
}
