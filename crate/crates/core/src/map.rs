//! Simplicial maps, given by where each cell goes.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::sset::{CellId, FiniteSimplicialSet, SimplexRef};

pub type SSet = Arc<FiniteSimplicialSet>;

#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: SSet,
    target: SSet,
    assignment: Vec<Vec<SimplexRef>>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        same_set(&self.source, &other.source)
            && same_set(&self.target, &other.target)
            && self.assignment == other.assignment
    }
}

pub fn same_set(a: &SSet, b: &SSet) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SimplicialMap {
    /// Checks dimensions and compatibility with every face.
    pub fn new(source: SSet, target: SSet, assignment: Vec<Vec<SimplexRef>>) -> Result<Self> {
        let f = Self::new_unchecked(source, target, assignment);
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: SSet, target: SSet, mut assignment: Vec<Vec<SimplexRef>>) -> Self {
        assignment.resize(source.cell_counts().len(), Vec::new());
        SimplicialMap { source, target, assignment }
    }

    pub fn from_fn(source: SSet, target: SSet, mut f: impl FnMut(CellId) -> SimplexRef) -> Result<Self> {
        let assignment = (0..source.cell_counts().len())
            .map(|n| source.cells_of_dim(n).map(&mut f).collect())
            .collect();
        Self::new(source, target, assignment)
    }

    pub(crate) fn from_fn_unchecked(source: SSet, target: SSet, mut f: impl FnMut(CellId) -> SimplexRef) -> Self {
        let assignment = (0..source.cell_counts().len())
            .map(|n| source.cells_of_dim(n).map(&mut f).collect())
            .collect();
        let m = Self::new_unchecked(source, target, assignment);
        debug_assert!(m.check().is_ok(), "{:?}", m.check());
        m
    }

    pub fn identity(x: SSet) -> Self {
        Self::from_fn_unchecked(x.clone(), x, SimplexRef::cell)
    }

    /// The unique map to `Δ[0]`.
    pub fn terminal(x: SSet) -> Self {
        let pt = Arc::new(crate::standard::point());
        let v = CellId::new(0, 0);
        Self::from_fn_unchecked(x, pt, |c| SimplexRef::new(v, Operator::constant(c.dim(), 0, 0)))
    }

    /// The unique map from the empty set.
    pub fn initial(x: SSet) -> Self {
        Self::new_unchecked(Arc::new(FiniteSimplicialSet::empty()), x, Vec::new())
    }

    pub fn source(&self) -> &SSet {
        &self.source
    }

    pub fn target(&self) -> &SSet {
        &self.target
    }

    pub fn assignment(&self) -> &[Vec<SimplexRef>] {
        &self.assignment
    }

    pub fn on_cell(&self, c: CellId) -> &SimplexRef {
        &self.assignment[c.dim()][c.index()]
    }

    pub fn apply(&self, s: &SimplexRef) -> SimplexRef {
        self.target.evaluate(self.on_cell(s.cell), &s.degeneracy)
    }

    /// The first incompatibility with a face, if any.
    pub fn check(&self) -> Result<()> {
        for c in self.source.cells() {
            let img = self.on_cell(c);
            let valid_cell = img.cell.dim() < self.target.cell_counts().len()
                && img.cell.index() < self.target.num_cells(img.cell.dim());
            if !valid_cell {
                return Err(Error::UnknownSimplex(format!("image of {}", self.source.name(c))));
            }
            if img.dim() != c.dim() {
                return Err(Error::DimensionMismatch { expected: c.dim(), found: img.dim() });
            }
            if !img.degeneracy.is_surjective() || img.degeneracy.codomain_dim() != img.cell.dim() {
                return Err(Error::Violation(format!("image of {} is not normalized", self.source.name(c))));
            }
            for (i, face) in self.source.faces_of(c).iter().enumerate() {
                let lhs = self.apply(face);
                let rhs = self.target.evaluate(img, &Operator::face(c.dim(), i));
                if lhs != rhs {
                    return Err(Error::Violation(format!(
                        "map does not commute with d_{i} on {}",
                        self.source.name(c)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_set(&self.target, &g.source) {
            return Err(Error::NotComposable("target of the first map is not the source of the second".into()));
        }
        Ok(self.then_unchecked(g))
    }

    pub(crate) fn then_unchecked(&self, g: &SimplicialMap) -> SimplicialMap {
        let assignment =
            self.assignment.iter().map(|level| level.iter().map(|s| g.apply(s)).collect()).collect();
        SimplicialMap::new_unchecked(self.source.clone(), g.target.clone(), assignment)
    }

    /// Degreewise injective: cells go to distinct cells.
    pub fn is_mono(&self) -> bool {
        let mut seen = HashSet::new();
        self.assignment.iter().flatten().all(|s| !s.is_degenerate() && seen.insert(s.cell))
    }

    /// Degreewise surjective: every target cell is the image of a cell.
    pub fn is_epi(&self) -> bool {
        let hit: HashSet<CellId> =
            self.assignment.iter().flatten().filter(|s| !s.is_degenerate()).map(|s| s.cell).collect();
        hit.len() == self.target.total_cells()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.source.total_cells() == self.target.total_cells()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<SimplicialMap> {
        if !self.is_iso() {
            return None;
        }
        let mut back: HashMap<CellId, CellId> = HashMap::new();
        for c in self.source.cells() {
            back.insert(self.on_cell(c).cell, c);
        }
        Some(SimplicialMap::from_fn_unchecked(self.target.clone(), self.source.clone(), |c| {
            SimplexRef::cell(back[&c])
        }))
    }

    /// Cells of the target hit as cells, i.e. the nondegenerate part of the image.
    pub fn image_cells(&self) -> HashSet<CellId> {
        let mut out = HashSet::new();
        for c in self.source.cells() {
            let s = self.on_cell(c);
            out.insert(s.cell);
        }
        out
    }
}

/// `f` followed by `g`.
pub fn compose(f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
    f.then(g)
}

/// The smallest subcomplex containing the given cells, with its inclusion.
pub fn subcomplex(x: &SSet, cells: impl IntoIterator<Item = CellId>) -> SimplicialMap {
    let mut keep: HashSet<CellId> = HashSet::new();
    let mut stack: Vec<CellId> = cells.into_iter().collect();
    while let Some(c) = stack.pop() {
        if keep.insert(c) {
            for f in x.faces_of(c) {
                stack.push(f.cell);
            }
        }
    }
    let mut names: Vec<Vec<String>> = Vec::new();
    let mut faces: Vec<Vec<Vec<SimplexRef>>> = Vec::new();
    let mut renumber: HashMap<CellId, CellId> = HashMap::new();
    let mut back: Vec<Vec<CellId>> = Vec::new();
    for c in x.cells() {
        if !keep.contains(&c) {
            continue;
        }
        let n = c.dim();
        while names.len() <= n {
            names.push(Vec::new());
            faces.push(Vec::new());
            back.push(Vec::new());
        }
        let id = CellId::new(n, names[n].len());
        renumber.insert(c, id);
        names[n].push(x.name(c).to_string());
        faces[n].push(
            x.faces_of(c).iter().map(|f| SimplexRef::new(renumber[&f.cell], f.degeneracy.clone())).collect(),
        );
        back[n].push(c);
    }
    let sub = Arc::new(FiniteSimplicialSet::from_parts(names, faces).expect("subcomplex of a valid set"));
    SimplicialMap::from_fn_unchecked(sub, x.clone(), |c| SimplexRef::cell(back[c.dim()][c.index()]))
}

/// The image of a map, as a subcomplex of its target.
pub fn image(f: &SimplicialMap) -> SimplicialMap {
    subcomplex(f.target(), f.image_cells())
}

/// The map `Δ[n] -> X` classifying the n-simplex `s`.
pub fn characteristic_map(x: &SSet, s: &SimplexRef) -> SimplicialMap {
    let n = s.dim();
    let delta = Arc::new(crate::standard::standard_simplex(n));
    characteristic_map_from(&delta, x, s)
}

/// As [`characteristic_map`], with a caller-provided copy of `Δ[n]`.
pub fn characteristic_map_from(delta: &SSet, x: &SSet, s: &SimplexRef) -> SimplicialMap {
    let n = s.dim();
    SimplicialMap::from_fn_unchecked(delta.clone(), x.clone(), |c| {
        let mask = crate::standard::simplex_cell_mask(delta, c);
        let values: Vec<usize> = (0..=n).filter(|v| mask & (1 << v) != 0).collect();
        x.evaluate(s, &Operator::new(&values, n).unwrap())
    })
}

/// The map `Δ[m] -> Δ[n]` induced by a monotone operator.
pub fn standard_map(op: &Operator) -> SimplicialMap {
    let target = Arc::new(crate::standard::standard_simplex(op.codomain_dim()));
    let top = SimplexRef::cell(CellId::new(op.codomain_dim(), 0));
    let s = target.evaluate(&top, op);
    characteristic_map(&target, &s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::*;

    #[test]
    fn boundary_inclusion_is_mono() {
        let d2 = Arc::new(standard_simplex(2));
        let b = subcomplex(&d2, d2.cells_of_dim(1));
        assert_eq!(b.source().cell_counts(), vec![3, 3]);
        assert!(b.is_mono());
        assert!(!b.is_epi());
    }

    #[test]
    fn collapse_is_not_mono() {
        let d1 = Arc::new(standard_simplex(1));
        let t = SimplicialMap::terminal(d1);
        assert!(!t.is_mono());
        assert!(t.is_epi());
    }

    #[test]
    fn bad_assignment_rejected() {
        let d1 = Arc::new(standard_simplex(1));
        let pt = Arc::new(point());
        // Sending the edge to nothing of dimension 1 is a dimension error.
        let bad = vec![
            vec![SimplexRef::cell(CellId::new(0, 0)); 2],
            vec![SimplexRef::cell(CellId::new(0, 0))],
        ];
        assert!(SimplicialMap::new(d1, pt, bad).is_err());
    }

    #[test]
    fn characteristic_map_of_circle_loop() {
        let s1 = Arc::new(circle());
        let a = SimplexRef::cell(CellId::new(1, 0));
        let chi = characteristic_map(&s1, &a);
        assert!(chi.check().is_ok());
        assert!(chi.is_epi());
        assert!(!chi.is_mono());
    }
}
