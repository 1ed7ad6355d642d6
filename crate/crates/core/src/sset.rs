//! Finite simplicial sets in Eilenberg–Zilber normal form.
//!
//! Only nondegenerate simplices ("cells") are stored, each with its face
//! table. Every simplex is a [`SimplexRef`]: a cell together with a
//! surjective operator. Operator action goes through the epi-mono
//! factorization, with the injective part read off a precomputed table of
//! iterated faces.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::operator::Operator;

/// Dimensions above this are rejected unless a caller raises the cap.
pub const DEFAULT_DIM_CAP: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CellId {
    pub dim: u32,
    pub index: u32,
}

impl CellId {
    pub fn new(dim: usize, index: usize) -> Self {
        CellId { dim: dim as u32, index: index as u32 }
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn index(self) -> usize {
        self.index as usize
    }
}

/// A simplex `cell · degeneracy`, with `degeneracy` surjective onto the
/// cell's dimension.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub cell: CellId,
    pub degeneracy: Operator,
}

impl fmt::Debug for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})·{:?}", self.cell.dim, self.cell.index, self.degeneracy)
    }
}

impl SimplexRef {
    pub fn new(cell: CellId, degeneracy: Operator) -> Self {
        debug_assert!(degeneracy.is_surjective());
        debug_assert_eq!(degeneracy.codomain_dim(), cell.dim());
        SimplexRef { cell, degeneracy }
    }

    pub fn cell(cell: CellId) -> Self {
        SimplexRef { cell, degeneracy: Operator::identity(cell.dim()) }
    }

    pub fn dim(&self) -> usize {
        self.degeneracy.domain_dim()
    }

    pub fn is_degenerate(&self) -> bool {
        self.degeneracy.domain_dim() != self.degeneracy.codomain_dim()
    }

    pub fn as_cell(&self) -> Option<CellId> {
        (!self.is_degenerate()).then_some(self.cell)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub cell: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.cell, self.message)
    }
}

/// A face record as read from outside: `(target id, operator values)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawFace {
    pub target: String,
    pub values: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCell {
    pub id: String,
    pub dim: usize,
    pub faces: Vec<RawFace>,
}

#[derive(Clone)]
pub struct FiniteSimplicialSet {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<SimplexRef>>>,
    // subfaces[n][c][mask]: the face of cell c spanned by the vertex set `mask`.
    subfaces: Vec<Vec<Vec<SimplexRef>>>,
    lookup: HashMap<String, CellId>,
}

impl fmt::Debug for FiniteSimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSimplicialSet").field("cells", &self.cell_counts()).finish()
    }
}

impl PartialEq for FiniteSimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.faces == other.faces
    }
}

impl Eq for FiniteSimplicialSet {}

fn image_mask(op: &Operator) -> usize {
    op.values().fold(0usize, |m, v| m | (1 << v))
}

fn mono_from_mask(mask: usize, n: usize) -> Operator {
    let values: Vec<usize> = (0..=n).filter(|v| mask & (1 << v) != 0).collect();
    Operator::new(&values, n).expect("mask yields a monotone injection")
}

impl FiniteSimplicialSet {
    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new()).expect("empty set is valid")
    }

    /// Builds from names and face tables. Faces of vertices must be empty.
    /// Structural checks only; see [`validate`](Self::validate) for identities.
    pub fn from_parts(mut names: Vec<Vec<String>>, mut faces: Vec<Vec<Vec<SimplexRef>>>) -> Result<Self> {
        if names.len() != faces.len() {
            return Err(Error::Precondition("names and face tables differ in length".into()));
        }
        while names.last().is_some_and(|v| v.is_empty()) {
            names.pop();
            faces.pop();
        }
        let mut lookup = HashMap::new();
        for (n, level) in names.iter().enumerate() {
            if faces[n].len() != level.len() {
                return Err(Error::Precondition(format!("face table size mismatch in degree {n}")));
            }
            for (i, name) in level.iter().enumerate() {
                if lookup.insert(name.clone(), CellId::new(n, i)).is_some() {
                    return Err(Error::DuplicateId(name.clone()));
                }
            }
        }
        for (n, level) in faces.iter().enumerate() {
            for (i, fs) in level.iter().enumerate() {
                let expected = if n == 0 { 0 } else { n + 1 };
                if fs.len() != expected {
                    return Err(Error::Violation(format!(
                        "{} has {} faces, expected {expected}",
                        names[n][i],
                        fs.len()
                    )));
                }
                for r in fs {
                    let c = r.cell;
                    if c.dim() >= names.len() || c.index() >= names[c.dim()].len() {
                        return Err(Error::UnknownSimplex(format!("face of {}", names[n][i])));
                    }
                    if r.dim() + 1 != n || !r.degeneracy.is_surjective() || r.degeneracy.codomain_dim() != c.dim() {
                        return Err(Error::Violation(format!(
                            "face of {} is not a normalized {}-simplex",
                            names[n][i],
                            n - 1
                        )));
                    }
                }
            }
        }
        let mut x = FiniteSimplicialSet { names, faces, subfaces: Vec::new(), lookup };
        x.build_subfaces();
        Ok(x)
    }

    fn build_subfaces(&mut self) {
        let mut subfaces: Vec<Vec<Vec<SimplexRef>>> = Vec::with_capacity(self.faces.len());
        for n in 0..self.faces.len() {
            let mut level = Vec::with_capacity(self.faces[n].len());
            for i in 0..self.faces[n].len() {
                let full = (1usize << (n + 1)) - 1;
                let mut table = vec![SimplexRef::cell(CellId::new(n, i)); full + 1];
                for mask in 1..full {
                    let mono = mono_from_mask(mask, n);
                    // Drop the largest missing vertex first, then recurse in the face.
                    let missing = (0..=n).rev().find(|v| mask & (1 << v) == 0).unwrap();
                    let face = &self.faces[n][i][missing];
                    let inner_values: Vec<usize> =
                        mono.values().map(|v| if v > missing { v - 1 } else { v }).collect();
                    let inner = Operator::new(&inner_values, n - 1).unwrap();
                    table[mask] = eval_with(&subfaces, face, &inner);
                }
                level.push(table);
            }
            subfaces.push(level);
        }
        self.subfaces = subfaces;
    }

    /// Builds from id-addressed records, checking references and identities.
    pub fn from_records(records: &[RawCell], dim_cap: usize) -> Result<Self> {
        let mut names: Vec<Vec<String>> = Vec::new();
        let mut ids = HashMap::new();
        for r in records {
            if r.dim > dim_cap {
                return Err(Error::DimensionCap { dim: r.dim, cap: dim_cap });
            }
            if names.len() <= r.dim {
                names.resize(r.dim + 1, Vec::new());
            }
            if ids.insert(r.id.clone(), CellId::new(r.dim, names[r.dim].len())).is_some() {
                return Err(Error::DuplicateId(r.id.clone()));
            }
            names[r.dim].push(r.id.clone());
        }
        let mut faces: Vec<Vec<Vec<SimplexRef>>> = names.iter().map(|l| Vec::with_capacity(l.len())).collect();
        for r in records {
            let mut fs = Vec::with_capacity(r.faces.len());
            for f in &r.faces {
                let cell = *ids.get(&f.target).ok_or_else(|| Error::UnknownSimplex(f.target.clone()))?;
                let op = Operator::new(&f.values, cell.dim())?;
                if !op.is_surjective() {
                    return Err(Error::Violation(format!(
                        "face {}{:?} of {} is not a surjective degeneracy",
                        f.target, f.values, r.id
                    )));
                }
                fs.push(SimplexRef::new(cell, op));
            }
            faces[r.dim].push(fs);
        }
        let x = Self::from_parts(names, faces)?;
        if let Some(v) = x.validate().into_iter().next() {
            return Err(Error::Violation(v.to_string()));
        }
        Ok(x)
    }

    pub fn to_records(&self) -> Vec<RawCell> {
        let mut out = Vec::new();
        for c in self.cells() {
            let faces = self
                .faces_of(c)
                .iter()
                .map(|r| RawFace { target: self.name(r.cell).to_string(), values: r.degeneracy.values().collect() })
                .collect();
            out.push(RawCell { id: self.name(c).to_string(), dim: c.dim(), faces });
        }
        out
    }

    /// Every broken simplicial identity `d_i d_j = d_{j-1} d_i` (i < j).
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for c in self.cells() {
            let n = c.dim();
            if n < 2 {
                continue;
            }
            let fs = self.faces_of(c);
            for j in 1..=n {
                for i in 0..j {
                    let lhs = self.evaluate(&fs[j], &Operator::face(n - 1, i));
                    let rhs = self.evaluate(&fs[i], &Operator::face(n - 1, j - 1));
                    if lhs != rhs {
                        out.push(Violation {
                            cell: self.name(c).to_string(),
                            message: format!("d_{i} d_{j} != d_{} d_{i}", j - 1),
                        });
                    }
                }
            }
        }
        out
    }

    /// Largest dimension with a cell; 0 for the empty set.
    pub fn max_dim(&self) -> usize {
        self.names.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn num_cells(&self, n: usize) -> usize {
        self.names.get(n).map_or(0, |l| l.len())
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.names.iter().map(|l| l.len()).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.names.iter().map(|l| l.len()).sum()
    }

    pub fn cells_of_dim(&self, n: usize) -> impl Iterator<Item = CellId> {
        (0..self.num_cells(n)).map(move |i| CellId::new(n, i))
    }

    /// All cells, by increasing dimension.
    pub fn cells(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.names.len()).flat_map(move |n| self.cells_of_dim(n))
    }

    pub fn vertices(&self) -> impl Iterator<Item = CellId> {
        self.cells_of_dim(0)
    }

    pub fn name(&self, c: CellId) -> &str {
        &self.names[c.dim()][c.index()]
    }

    pub fn names(&self) -> &[Vec<String>] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<CellId> {
        self.lookup.get(name).copied()
    }

    pub fn faces_of(&self, c: CellId) -> &[SimplexRef] {
        &self.faces[c.dim()][c.index()]
    }

    pub fn face(&self, c: CellId, i: usize) -> &SimplexRef {
        &self.faces[c.dim()][c.index()][i]
    }

    /// The `k`-th vertex of a simplex.
    pub fn vertex_of(&self, s: &SimplexRef, k: usize) -> CellId {
        self.evaluate(s, &Operator::constant(0, s.dim(), k)).cell
    }

    /// Applies `op: [m] -> [n]` to an n-simplex, returning the m-simplex.
    pub fn evaluate(&self, s: &SimplexRef, op: &Operator) -> SimplexRef {
        eval_with(&self.subfaces, s, op)
    }

    pub fn try_evaluate(&self, s: &SimplexRef, op: &Operator) -> Result<SimplexRef> {
        if op.codomain_dim() != s.dim() {
            return Err(Error::DimensionMismatch { expected: s.dim(), found: op.codomain_dim() });
        }
        Ok(self.evaluate(s, op))
    }

    /// Normal form of `cell · op` for an arbitrary operator into the cell.
    pub fn normalize(&self, cell: CellId, op: &Operator) -> SimplexRef {
        self.evaluate(&SimplexRef::cell(cell), op)
    }

    /// All m-simplices, degenerate ones included, in a fixed order.
    pub fn simplices(&self, m: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for k in 0..=m.min(self.max_dim()) {
            if self.num_cells(k) == 0 {
                continue;
            }
            let surj = Operator::surjections(m, k);
            for c in self.cells_of_dim(k) {
                for s in &surj {
                    out.push(SimplexRef::new(c, s.clone()));
                }
            }
        }
        out
    }

    pub fn num_simplices(&self, m: usize) -> usize {
        (0..=m.min(self.max_dim())).map(|k| self.num_cells(k) * binomial(m, k)).sum()
    }

    pub fn check_dim_cap(&self, cap: usize) -> Result<()> {
        if !self.is_empty() && self.max_dim() > cap {
            return Err(Error::DimensionCap { dim: self.max_dim(), cap });
        }
        Ok(())
    }

    /// Human-readable label of a simplex: the cell id, plus the operator
    /// when degenerate.
    pub fn label(&self, s: &SimplexRef) -> String {
        if s.is_degenerate() {
            format!("{}{:?}", self.name(s.cell), s.degeneracy.raw_values())
        } else {
            self.name(s.cell).to_string()
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn eval_with(subfaces: &[Vec<Vec<SimplexRef>>], s: &SimplexRef, op: &Operator) -> SimplexRef {
    assert_eq!(op.codomain_dim(), s.dim(), "operator {op:?} does not apply to a {}-simplex", s.dim());
    let composite = s.degeneracy.compose(op);
    let (epi, mono) = composite.epi_mono();
    let face = &subfaces[s.cell.dim()][s.cell.index()][image_mask(&mono)];
    SimplexRef { cell: face.cell, degeneracy: face.degeneracy.compose(&epi) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::{standard_simplex, point};

    #[test]
    fn face_of_degenerate_vertex() {
        let x = point();
        let v = CellId::new(0, 0);
        let s = SimplexRef::new(v, Operator::constant(1, 0, 0));
        let d1 = x.evaluate(&s, &Operator::face(1, 1));
        assert_eq!(d1, SimplexRef::cell(v));
    }

    #[test]
    fn simplex_counts_match_binomials() {
        let x = standard_simplex(3);
        for m in 0..5 {
            assert_eq!(x.simplices(m).len(), x.num_simplices(m));
            // Simplices of Δ[3] in degree m are monotone maps [m] -> [3].
            assert_eq!(x.simplices(m).len(), binomial(m + 4, 3));
        }
    }

    #[test]
    fn edge_faces() {
        let x = standard_simplex(1);
        let e = SimplexRef::cell(CellId::new(1, 0));
        let d0 = x.evaluate(&e, &Operator::face(1, 0));
        assert_eq!(x.name(d0.cell), "1");
    }
}
