//! Exhaustive search for simplicial maps, horn fillers and lifts.
//!
//! All checks here are bounded: they enumerate every square up to a given
//! dimension and search every candidate lift.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::{characteristic_map_from, SSet, SimplicialMap};
use crate::operator::Operator;
use crate::sset::{CellId, FiniteSimplicialSet, SimplexRef};
use crate::standard::{horn, standard_simplex};

/// Simplices of a target set, indexed by their tuple of faces.
pub struct TargetIndex {
    target: SSet,
    vertices: Vec<SimplexRef>,
    by_boundary: Vec<HashMap<Vec<SimplexRef>, Vec<SimplexRef>>>,
}

impl TargetIndex {
    pub fn new(target: &SSet, max_dim: usize) -> Self {
        let vertices = target.simplices(0);
        let mut by_boundary = vec![HashMap::new()];
        for n in 1..=max_dim {
            let faces: Vec<Operator> = (0..=n).map(|i| Operator::face(n, i)).collect();
            let mut table: HashMap<Vec<SimplexRef>, Vec<SimplexRef>> = HashMap::new();
            for s in target.simplices(n) {
                let key = faces.iter().map(|d| target.evaluate(&s, d)).collect();
                table.entry(key).or_default().push(s);
            }
            by_boundary.push(table);
        }
        TargetIndex { target: target.clone(), vertices, by_boundary }
    }

    pub fn target(&self) -> &SSet {
        &self.target
    }

    /// Every map `source -> target` that agrees with `fixed` where it is
    /// set and whose values pass `allow`. `visit` returns false to stop.
    /// Returns false if the search was stopped early.
    pub fn search(
        &self,
        source: &FiniteSimplicialSet,
        fixed: &HashMap<CellId, SimplexRef>,
        allow: &dyn Fn(CellId, &SimplexRef) -> bool,
        visit: &mut dyn FnMut(&[Vec<SimplexRef>]) -> bool,
    ) -> bool {
        if !source.is_empty() && source.max_dim() >= self.by_boundary.len() {
            panic!("target index built below the source dimension");
        }
        let cells: Vec<CellId> = source.cells().collect();
        let mut assign: Vec<Vec<SimplexRef>> =
            source.cell_counts().iter().map(|&k| vec![SimplexRef::cell(CellId::new(0, 0)); k]).collect();
        self.descend(source, &cells, 0, fixed, allow, &mut assign, visit)
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        source: &FiniteSimplicialSet,
        cells: &[CellId],
        at: usize,
        fixed: &HashMap<CellId, SimplexRef>,
        allow: &dyn Fn(CellId, &SimplexRef) -> bool,
        assign: &mut Vec<Vec<SimplexRef>>,
        visit: &mut dyn FnMut(&[Vec<SimplexRef>]) -> bool,
    ) -> bool {
        let Some(&c) = cells.get(at) else { return visit(assign) };
        let n = c.dim();
        let candidates: Vec<SimplexRef> = if n == 0 {
            match fixed.get(&c) {
                Some(s) => vec![s.clone()],
                None => self.vertices.clone(),
            }
        } else {
            let key: Vec<SimplexRef> = source
                .faces_of(c)
                .iter()
                .map(|f| self.target.evaluate(&assign[f.cell.dim()][f.cell.index()], &f.degeneracy))
                .collect();
            let found = self.by_boundary[n].get(&key).map(Vec::as_slice).unwrap_or(&[]);
            match fixed.get(&c) {
                Some(s) => found.iter().filter(|x| *x == s).cloned().collect(),
                None => found.to_vec(),
            }
        };
        for x in candidates {
            if !allow(c, &x) {
                continue;
            }
            assign[n][c.index()] = x;
            if !self.descend(source, cells, at + 1, fixed, allow, assign, visit) {
                return false;
            }
        }
        true
    }
}

/// Every simplicial map `a -> b`, up to `limit` of them.
pub fn all_maps(a: &SSet, b: &SSet, limit: usize) -> Result<Vec<SimplicialMap>> {
    let index = TargetIndex::new(b, if a.is_empty() { 0 } else { a.max_dim() });
    let mut out = Vec::new();
    let mut over = false;
    index.search(a, &HashMap::new(), &|_, _| true, &mut |asg| {
        if out.len() == limit {
            over = true;
            return false;
        }
        out.push(SimplicialMap::new_unchecked(a.clone(), b.clone(), asg.to_vec()));
        true
    });
    if over {
        return Err(Error::TooLarge(format!("more than {limit} maps")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftingProblem {
    pub dim: usize,
    /// The omitted face for horn problems.
    pub horn: Option<usize>,
    /// The simplex of the base the square lies over.
    pub base_simplex: String,
    /// Where the cells of the subobject go in the source.
    pub assignment: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub holds: bool,
    pub bound: usize,
    pub squares_checked: usize,
    pub failure: Option<LiftingProblem>,
}

/// Bounded Kan condition: every horn `Λ^k[n] -> X` over `Δ[n] -> Y` with
/// `n <= up_to_dim` has a filler.
pub fn has_horn_lifts(f: &SimplicialMap, up_to_dim: usize) -> Result<LiftReport> {
    let x = f.source();
    let y = f.target();
    let index = TargetIndex::new(x, up_to_dim);
    let mut checked = 0;
    for n in 1..=up_to_dim {
        let delta: SSet = Arc::new(standard_simplex(n));
        for k in 0..=n {
            let lambda = horn(n, k)?;
            let into: Vec<Vec<CellId>> = lambda
                .cell_counts()
                .iter()
                .enumerate()
                .map(|(d, &cnt)| (0..cnt).map(|i| delta.find(lambda.name(CellId::new(d, i))).unwrap()).collect())
                .collect();
            for ys in y.simplices(n) {
                let v = characteristic_map_from(&delta, y, &ys);
                let over_horn = |c: CellId, s: &SimplexRef| f.apply(s) == *v.on_cell(into[c.dim()][c.index()]);
                let over_delta = |c: CellId, s: &SimplexRef| f.apply(s) == *v.on_cell(c);
                let mut failure = None;
                index.search(&lambda, &HashMap::new(), &over_horn, &mut |h| {
                    checked += 1;
                    let fixed: HashMap<CellId, SimplexRef> = lambda
                        .cells()
                        .map(|c| (into[c.dim()][c.index()], h[c.dim()][c.index()].clone()))
                        .collect();
                    let mut found = false;
                    index.search(&delta, &fixed, &over_delta, &mut |_| {
                        found = true;
                        false
                    });
                    if !found {
                        failure = Some(LiftingProblem {
                            dim: n,
                            horn: Some(k),
                            base_simplex: y.label(&ys),
                            assignment: lambda.cells().map(|c| (lambda.name(c).to_string(), x.label(&h[c.dim()][c.index()]))).collect(),
                        });
                    }
                    found
                });
                if failure.is_some() {
                    return Ok(LiftReport { holds: false, bound: up_to_dim, squares_checked: checked, failure });
                }
            }
        }
    }
    Ok(LiftReport { holds: true, bound: up_to_dim, squares_checked: checked, failure: None })
}

/// Right lifting property of `f: X -> Y` against a mono `i: A -> B`.
pub fn has_rlp(f: &SimplicialMap, i: &SimplicialMap) -> Result<LiftReport> {
    if !i.is_mono() {
        return Err(Error::Precondition("lifting is only searched against monomorphisms".into()));
    }
    let (a, b) = (i.source(), i.target());
    let (x, y) = (f.source(), f.target());
    let dim = if b.is_empty() { 0 } else { b.max_dim() };
    let into_x = TargetIndex::new(x, dim);
    let into_y = TargetIndex::new(y, dim);
    let mut checked = 0;
    let mut failure = None;
    into_y.search(b, &HashMap::new(), &|_, _| true, &mut |v| {
        let v = v.to_vec();
        let over_a = |c: CellId, s: &SimplexRef| f.apply(s) == v_apply(y, &v, i.on_cell(c));
        let over_b = |c: CellId, s: &SimplexRef| f.apply(s) == v[c.dim()][c.index()];
        let mut ok = true;
        into_x.search(a, &HashMap::new(), &over_a, &mut |u| {
            checked += 1;
            let fixed: HashMap<CellId, SimplexRef> =
                a.cells().map(|c| (i.on_cell(c).cell, u[c.dim()][c.index()].clone())).collect();
            let mut found = false;
            into_x.search(b, &fixed, &over_b, &mut |_| {
                found = true;
                false
            });
            if !found {
                failure = Some(LiftingProblem {
                    dim,
                    horn: None,
                    base_simplex: b.cells().map(|c| y.label(&v[c.dim()][c.index()])).collect::<Vec<_>>().join(","),
                    assignment: a.cells().map(|c| (a.name(c).to_string(), x.label(&u[c.dim()][c.index()]))).collect(),
                });
                ok = false;
            }
            ok
        });
        ok
    });
    Ok(LiftReport { holds: failure.is_none(), bound: dim, squares_checked: checked, failure })
}

fn v_apply(y: &FiniteSimplicialSet, v: &[Vec<SimplexRef>], s: &SimplexRef) -> SimplexRef {
    y.evaluate(&v[s.cell.dim()][s.cell.index()], &s.degeneracy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::subcomplex;
    use crate::standard::*;

    fn arc(x: FiniteSimplicialSet) -> SSet {
        Arc::new(x)
    }

    #[test]
    fn circle_to_point_has_no_two_dimensional_fillers() {
        let t = SimplicialMap::terminal(arc(circle()));
        let r = has_horn_lifts(&t, 2).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failure.unwrap().dim, 2);
    }

    #[test]
    fn discrete_bundle_over_an_edge_is_kan() {
        let d1 = arc(standard_simplex(1));
        let p = crate::product::product(&arc(discrete(2)), &d1).unwrap();
        assert!(has_horn_lifts(&p.right, 3).unwrap().holds);
        // The edge itself is not a Kan complex.
        assert!(!has_horn_lifts(&SimplicialMap::terminal(d1), 2).unwrap().holds);
    }

    #[test]
    fn lifting_against_the_boundary_of_an_edge() {
        let d1 = arc(standard_simplex(1));
        let i = subcomplex(&d1, d1.cells_of_dim(0));
        let id = SimplicialMap::identity(d1.clone());
        assert!(has_rlp(&id, &i).unwrap().holds);
        // Swapped endpoints have no edge back.
        assert!(!has_rlp(&SimplicialMap::terminal(d1.clone()), &i).unwrap().holds);
        let two = i.source().clone();
        assert!(!has_rlp(&SimplicialMap::terminal(two), &i).unwrap().holds);
    }

    #[test]
    fn counts_maps() {
        let d1 = arc(standard_simplex(1));
        assert_eq!(all_maps(&d1, &d1, 10).unwrap().len(), 3);
    }
}
