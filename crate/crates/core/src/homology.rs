//! Integral homology of normalized chain complexes.
//!
//! Boundary matrices are reduced in two phases. Unit pivots are eliminated
//! sparsely first; each contributes an invariant factor of 1. What remains is
//! put in Smith normal form densely. Arithmetic is generic over the scalar
//! and checked, so an `i64` run that overflows is redone over `BigInt`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed};
use serde::{Serialize, Serializer};

use crate::map::SimplicialMap;
use crate::sset::FiniteSimplicialSet;
use crate::union_find::UnionFind;

/// Integer scalars usable for exact elimination.
pub trait Scalar:
    Clone + fmt::Debug + PartialEq + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + ToBigInt + From<i32>
{
}

impl<T> Scalar for T where
    T: Clone + fmt::Debug + PartialEq + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + ToBigInt + From<i32>
{
}

/// A sparse integer matrix given by its nonzero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    /// Adds `v` at `(r, c)`, merging with an existing entry.
    pub fn push(&mut self, r: usize, c: usize, v: i64) {
        if v != 0 {
            self.entries.push((r, c, v));
        }
    }

    fn columns<R: Scalar>(&self) -> Option<Vec<BTreeMap<usize, R>>> {
        let mut cols: Vec<BTreeMap<usize, R>> = vec![BTreeMap::new(); self.cols];
        for &(r, c, v) in &self.entries {
            let e = cols[c].entry(r).or_insert_with(R::zero);
            *e = e.checked_add(&R::from(i32::try_from(v).ok()?))?;
        }
        for col in &mut cols {
            col.retain(|_, v| !v.is_zero());
        }
        Some(cols)
    }

    /// `self · other` over the integers (used to check `∂∂ = 0`).
    pub fn multiply_is_zero(&self, other: &SparseMatrix) -> bool {
        let mut by_row: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
        for &(r, c, v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), i128> = BTreeMap::new();
        for &(r, k, v) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, w) in row {
                    *acc.entry((r, c)).or_insert(0) += v as i128 * w as i128;
                }
            }
        }
        acc.values().all(|&x| x == 0)
    }
}

/// The nonzero invariant factors of a matrix over `R`, in divisibility
/// order, or `None` if some intermediate value overflowed `R`.
pub fn invariant_factors_in<R: Scalar>(m: &SparseMatrix) -> Option<Vec<R>> {
    let mut cols = m.columns::<R>()?;
    let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    for (c, col) in cols.iter().enumerate() {
        for &r in col.keys() {
            rows[r].insert(c);
        }
    }
    let mut active_col = vec![true; m.cols];
    let mut units = 0usize;
    loop {
        let mut progress = false;
        for c in 0..m.cols {
            if !active_col[c] {
                continue;
            }
            if cols[c].is_empty() {
                active_col[c] = false;
                continue;
            }
            let pivot = cols[c]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(r, _)| rows[**r].len())
                .map(|(r, v)| (*r, v.clone()));
            let Some((r, u)) = pivot else { continue };
            let pivot_col = std::mem::take(&mut cols[c]);
            let others: Vec<usize> = rows[r].iter().copied().filter(|&j| j != c).collect();
            for j in others {
                let factor = cols[j][&r].checked_mul(&u)?;
                for (k, v) in &pivot_col {
                    let delta = factor.checked_mul(v)?;
                    let e = cols[j].entry(*k).or_insert_with(R::zero);
                    *e = e.checked_sub(&delta)?;
                    if e.is_zero() {
                        cols[j].remove(k);
                        rows[*k].remove(&j);
                    } else {
                        rows[*k].insert(j);
                    }
                }
            }
            for k in pivot_col.keys() {
                rows[*k].remove(&c);
            }
            // Row r is now zero outside column c; drop it everywhere.
            for j in std::mem::take(&mut rows[r]) {
                cols[j].remove(&r);
            }
            active_col[c] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_cols: Vec<usize> = (0..m.cols).filter(|&c| active_col[c] && !cols[c].is_empty()).collect();
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| !rows[r].is_empty()).collect();
    let row_pos: BTreeMap<usize, usize> = live_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut dense = vec![vec![R::zero(); live_cols.len()]; live_rows.len()];
    for (j, &c) in live_cols.iter().enumerate() {
        for (r, v) in &cols[c] {
            dense[row_pos[r]][j] = v.clone();
        }
    }
    let mut factors = vec![R::one(); units];
    factors.extend(smith_diagonal(dense)?);
    Some(factors)
}

/// Smith normal form of a dense matrix; returns the nonzero diagonal.
pub fn smith_diagonal<R: Scalar>(mut a: Vec<Vec<R>>) -> Option<Vec<R>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let d = q.checked_mul(&a[t][j])?;
                    a[i][j] = a[i][j].checked_sub(&d)?;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                    a.swap(t, i);
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let d = q.checked_mul(&a[i][t])?;
                    a[i][j] = a[i][j].checked_sub(&d)?;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility by folding an offending row into row t.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] = a[t][j].checked_add(&a[i][j])?;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    Some(out)
}

/// Invariant factors over `i64`, redone over `BigInt` on overflow.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    match invariant_factors_in::<i64>(m) {
        Some(v) => v.into_iter().map(BigInt::from).collect(),
        None => invariant_factors_in::<BigInt>(m).expect("BigInt arithmetic cannot overflow"),
    }
}

/// A finitely generated abelian group `Z^rank ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for HomologyGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HomologyGroup", 2)?;
        st.serialize_field("rank", &self.rank)?;
        let torsion: Vec<String> = self.torsion.iter().map(|t| t.to_string()).collect();
        st.serialize_field("torsion", &torsion)?;
        st.end()
    }
}

/// A bounded chain complex of free abelian groups.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainComplex {
    /// Rank of each chain group.
    pub ranks: Vec<usize>,
    /// `boundaries[n]: C_n -> C_{n-1}`; `boundaries[0]` is the zero map.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn boundary(&self, n: usize) -> SparseMatrix {
        match self.boundaries.get(n) {
            Some(b) if n > 0 => b.clone(),
            _ => SparseMatrix::new(self.ranks.get(n.wrapping_sub(1)).copied().unwrap_or(0), self.rank(n)),
        }
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn is_complex(&self) -> bool {
        (2..self.ranks.len()).all(|n| self.boundary(n - 1).multiply_is_zero(&self.boundary(n)))
    }

    /// `H_0 .. H_max_degree`.
    pub fn homology(&self, max_degree: usize) -> Vec<HomologyGroup> {
        let factors: Vec<Vec<BigInt>> = (0..=max_degree + 1).map(|n| invariant_factors(&self.boundary(n))).collect();
        (0..=max_degree)
            .map(|n| {
                let cycles = self.rank(n) - factors[n].len();
                let torsion: Vec<BigInt> = factors[n + 1].iter().filter(|t| !t.is_one()).cloned().collect();
                HomologyGroup { rank: cycles - factors[n + 1].len(), torsion }
            })
            .collect()
    }
}

/// Normalized chains: basis the cells, degenerate faces dropped.
pub fn chain_complex(x: &FiniteSimplicialSet) -> ChainComplex {
    let top = if x.is_empty() { 0 } else { x.max_dim() };
    let ranks: Vec<usize> = (0..=top).map(|n| x.num_cells(n)).collect();
    let mut boundaries = vec![SparseMatrix::new(0, ranks[0])];
    for n in 1..=top {
        let mut m = SparseMatrix::new(ranks[n - 1], ranks[n]);
        for c in x.cells_of_dim(n) {
            for (i, f) in x.faces_of(c).iter().enumerate() {
                if !f.is_degenerate() {
                    m.push(f.cell.index(), c.index(), if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex { ranks, boundaries }
}

/// The mapping cone: `C_n = X_{n-1} ⊕ Y_n`, `d(x, y) = (-∂x, f(x) + ∂y)`.
pub fn mapping_cone(f: &SimplicialMap) -> ChainComplex {
    let x = chain_complex(f.source());
    let y = chain_complex(f.target());
    let top = (x.ranks.len()).max(y.ranks.len().saturating_sub(1));
    let ranks: Vec<usize> = (0..=top).map(|n| if n == 0 { y.rank(0) } else { x.rank(n - 1) + y.rank(n) }).collect();
    let mut boundaries = vec![SparseMatrix::new(0, ranks[0])];
    for n in 1..=top {
        let mut m = SparseMatrix::new(ranks[n - 1], ranks[n]);
        let xoff_prev = if n >= 2 { x.rank(n - 2) } else { 0 };
        // Columns: X_{n-1} first, then Y_n. Rows: X_{n-2} first, then Y_{n-1}.
        if n >= 2 {
            for &(r, c, v) in &x.boundary(n - 1).entries {
                m.push(r, c, -v);
            }
        }
        for c in f.source().cells_of_dim(n - 1) {
            let s = f.on_cell(c);
            if !s.is_degenerate() {
                m.push(xoff_prev + s.cell.index(), c.index(), 1);
            }
        }
        let xoff = x.rank(n - 1);
        for &(r, c, v) in &y.boundary(n).entries {
            m.push(xoff_prev + r, xoff + c, v);
        }
        boundaries.push(m);
    }
    ChainComplex { ranks, boundaries }
}

pub fn homology(x: &FiniteSimplicialSet, max_degree: usize) -> Vec<HomologyGroup> {
    chain_complex(x).homology(max_degree)
}

/// Connected components: a component index for every vertex.
pub fn components(x: &FiniteSimplicialSet) -> (usize, Vec<usize>) {
    let mut uf = UnionFind::new(x.num_cells(0));
    for e in x.cells_of_dim(1) {
        let fs = x.faces_of(e);
        uf.union(fs[0].cell.index(), fs[1].cell.index());
    }
    let mut label = vec![usize::MAX; x.num_cells(0)];
    let mut count = 0;
    let mut comp = Vec::with_capacity(x.num_cells(0));
    for v in 0..x.num_cells(0) {
        let r = uf.find(v);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        comp.push(label[r]);
    }
    (count, comp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::*;

    fn groups(x: &FiniteSimplicialSet, n: usize) -> Vec<String> {
        homology(x, n).iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn small_fixtures() {
        assert_eq!(groups(&standard_simplex(3), 3), ["Z", "0", "0", "0"]);
        assert_eq!(groups(&circle(), 2), ["Z", "Z", "0"]);
        assert_eq!(groups(&rp2(), 2), ["Z", "Z/2", "0"]);
        assert_eq!(groups(&boundary(3), 3), ["Z", "0", "Z", "0"]);
        assert_eq!(groups(&sphere(4), 4), ["Z", "0", "0", "0", "Z"]);
    }

    #[test]
    fn smith_of_small_matrices() {
        let d = smith_diagonal(vec![vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        assert_eq!(d, vec![2, 6, 12]);
        let d = smith_diagonal(vec![vec![2i64, 0], vec![0, 3]]).unwrap();
        assert_eq!(d, vec![1, 6]);
    }

    #[test]
    fn bigint_path_agrees() {
        let mut m = SparseMatrix::new(2, 2);
        m.push(0, 0, 4);
        m.push(1, 1, 6);
        m.push(0, 1, 2);
        let a = invariant_factors_in::<i64>(&m).unwrap();
        let b = invariant_factors_in::<BigInt>(&m).unwrap();
        assert_eq!(a.into_iter().map(BigInt::from).collect::<Vec<_>>(), b);
    }

    #[test]
    fn boundary_squares_to_zero() {
        assert!(chain_complex(&cone(&rp2())).is_complex());
    }
}
