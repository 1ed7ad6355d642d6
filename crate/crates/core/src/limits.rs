//! Colimits computed degreewise, pushouts, and the distributive law.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::category::FiniteCategory;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::map::{same_set, SSet, SimplicialMap};
use crate::normalize::{normalize, Normalized};
use crate::product::{fiber_product, FiberProduct};
use crate::sset::{CellId, SimplexRef};
use crate::union_find::UnionFind;

pub use crate::product::fiber_product as pullback;

type Key = (usize, SimplexRef);

pub struct Colimit {
    pub object: SSet,
    pub cocone: Vec<SimplicialMap>,
    normalized: Normalized<Key>,
}

impl Colimit {
    /// The map out of the colimit induced by a cocone `maps[o]: D(o) -> Z`.
    pub fn induced(&self, maps: &[SimplicialMap]) -> Result<SimplicialMap> {
        if maps.len() != self.cocone.len() {
            return Err(Error::Precondition("cocone has the wrong number of legs".into()));
        }
        let Some(target) = maps.first().map(|m| m.target().clone()) else {
            return Err(Error::Precondition("empty cocone has no target".into()));
        };
        let u = SimplicialMap::from_fn(self.object.clone(), target, |c| {
            let (o, s) = self.normalized.key(c);
            maps[*o].apply(s)
        })?;
        for (leg, m) in self.cocone.iter().zip(maps) {
            if leg.then_unchecked(&u) != *m {
                return Err(Error::Precondition("maps do not form a cocone".into()));
            }
        }
        Ok(u)
    }

    /// The cell of the colimit represented by `(object, cell)`.
    pub fn representative(&self, c: CellId) -> (usize, CellId) {
        let (o, s) = self.normalized.key(c);
        (*o, s.cell)
    }
}

/// Degreewise colimit: all simplices of all values, glued along every
/// arrow, then normalized.
pub fn colimit(d: &Diagram) -> Result<Colimit> {
    let shape = d.shape();
    let top = d.max_dim();
    let mut levels: Vec<Vec<Key>> = Vec::with_capacity(top + 1);
    let mut rep: Vec<HashMap<Key, Key>> = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let mut all: Vec<Key> = Vec::new();
        for o in 0..shape.num_objects() {
            for s in d.value(o).simplices(m) {
                all.push((o, s));
            }
        }
        let index: HashMap<&Key, usize> = all.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut uf = UnionFind::new(all.len());
        for a in shape.non_identity_arrows() {
            let arrow = shape.arrow(a);
            let f = d.map(a);
            for s in d.value(arrow.src).simplices(m) {
                let i = index[&(arrow.src, s.clone())];
                let j = index[&(arrow.dst, f.apply(&s))];
                uf.union(i, j);
            }
        }
        let mut reps = Vec::new();
        let mut table = HashMap::with_capacity(all.len());
        for i in 0..all.len() {
            let r = uf.find(i);
            if r == i {
                reps.push(all[i].clone());
            }
            table.insert(all[i].clone(), all[r].clone());
        }
        levels.push(reps);
        rep.push(table);
    }
    let normalized = normalize(
        levels,
        |(o, s), op| rep[op.domain_dim()][&(*o, d.value(*o).evaluate(s, op))].clone(),
        |(o, s)| format!("{}:{}", shape.objects()[*o], d.value(*o).label(s)),
    )?;
    let object = Arc::new(normalized.sset.clone());
    let cocone = (0..shape.num_objects())
        .map(|o| {
            SimplicialMap::from_fn_unchecked(d.value(o).clone(), object.clone(), |c| {
                let key = &rep[c.dim()][&(o, SimplexRef::cell(c))];
                normalized.nf[key].clone()
            })
        })
        .collect();
    Ok(Colimit { object, cocone, normalized })
}

pub struct Pushout {
    pub object: SSet,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    pub colimit: Colimit,
}

/// The pushout of `X <- A -> Y`.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout> {
    if !same_set(f.source(), g.source()) {
        return Err(Error::Precondition("pushout legs have different domains".into()));
    }
    let d = Diagram::new(
        Arc::new(FiniteCategory::span()),
        vec![f.target().clone(), g.target().clone(), f.source().clone()],
        vec![f.clone(), g.clone()],
    )?;
    let colimit = colimit(&d)?;
    Ok(Pushout {
        object: colimit.object.clone(),
        left: colimit.cocone[0].clone(),
        right: colimit.cocone[1].clone(),
        colimit,
    })
}

/// Whether the commuting square `A -> X, A -> Y, X -> P, Y -> P` is a
/// pushout: the comparison from the computed pushout must be an iso.
pub fn is_pushout_square(
    f: &SimplicialMap,
    g: &SimplicialMap,
    to_p_from_x: &SimplicialMap,
    to_p_from_y: &SimplicialMap,
) -> Result<bool> {
    let po = pushout(f, g)?;
    let u = po.colimit.induced(&[to_p_from_x.clone(), to_p_from_y.clone(), f.then(to_p_from_x)?])?;
    Ok(u.is_iso())
}

/// Whether the square `P -> X, P -> Y` over `X -> B <- Y` is a pullback.
pub fn is_pullback_square(
    px: &SimplicialMap,
    py: &SimplicialMap,
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> Result<bool> {
    let pb = fiber_product(f, g)?;
    Ok(pb.induced(px, py)?.is_iso())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributiveReport {
    pub holds: bool,
    /// Cell counts of `colim_i (A ×_B D(i))` and of `A`.
    pub colimit_cells: Vec<usize>,
    pub source_cells: Vec<usize>,
    /// The first degree where the comparison is not bijective on cells.
    pub counterexample_degree: Option<usize>,
}

/// Pulls `D` back along `a: A -> colim D` and checks that the colimit of
/// the pulled-back diagram maps isomorphically onto `A`.
pub fn verify_distributive_law(d: &Diagram, a: &SimplicialMap) -> Result<DistributiveReport> {
    let colim = colimit(d)?;
    if !same_set(a.target(), &colim.object) {
        return Err(Error::Precondition("map does not land in the colimit of the diagram".into()));
    }
    let shape = d.shape();
    let pbs: Vec<FiberProduct> =
        colim.cocone.iter().map(|leg| fiber_product(a, leg)).collect::<Result<_>>()?;
    let mut maps = Vec::new();
    for f in shape.non_identity_arrows() {
        let arrow = shape.arrow(f);
        let src = &pbs[arrow.src];
        let dst = &pbs[arrow.dst];
        let right = src.right.then_unchecked(d.map(f));
        maps.push(dst.induced(&src.left, &right)?);
    }
    let pulled = Diagram::new(shape.clone(), pbs.iter().map(|p| p.object.clone()).collect(), maps)?;
    let pc = colimit(&pulled)?;
    let legs: Vec<SimplicialMap> = pbs.iter().map(|p| p.left.clone()).collect();
    let u = pc.induced(&legs)?;
    let holds = u.is_iso();
    let mut counterexample_degree = None;
    if !holds {
        let top = pc.object.max_dim().max(a.source().max_dim());
        for n in 0..=top {
            let mut hit = vec![0usize; a.source().num_cells(n)];
            let mut bad = false;
            for c in pc.object.cells_of_dim(n) {
                let s = u.on_cell(c);
                if s.is_degenerate() {
                    bad = true;
                } else {
                    hit[s.cell.index()] += 1;
                }
            }
            if bad || hit.iter().any(|&h| h != 1) {
                counterexample_degree = Some(n);
                break;
            }
        }
    }
    Ok(DistributiveReport {
        holds,
        colimit_cells: pc.object.cell_counts(),
        source_cells: a.source().cell_counts(),
        counterexample_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{characteristic_map, subcomplex};
    use crate::standard::*;

    fn circle_span() -> Diagram {
        let d1 = Arc::new(standard_simplex(1));
        let inc = subcomplex(&d1, d1.cells_of_dim(0));
        let pt = Arc::new(point());
        let t = SimplicialMap::terminal(inc.source().clone());
        let collapse = SimplicialMap::new(t.source().clone(), pt.clone(), t.assignment().to_vec()).unwrap();
        Diagram::new(Arc::new(FiniteCategory::span()), vec![pt, d1, inc.source().clone()], vec![collapse, inc]).unwrap()
    }

    #[test]
    fn pushout_builds_circle() {
        let c = colimit(&circle_span()).unwrap();
        assert_eq!(c.object.cell_counts(), vec![1, 1]);
    }

    #[test]
    fn pushout_of_identities() {
        let a = Arc::new(rp2());
        let id = SimplicialMap::identity(a.clone());
        let p = pushout(&id, &id).unwrap();
        assert!(p.left.is_iso());
    }

    #[test]
    fn distributive_law_on_the_loop() {
        let d = circle_span();
        let colim = colimit(&d).unwrap();
        let a = SimplexRef::cell(CellId::new(1, 0));
        let chi = characteristic_map(&colim.object, &a);
        let r = verify_distributive_law(&d, &chi).unwrap();
        assert!(r.holds);
        assert_eq!(r.colimit_cells, vec![2, 1]);
    }
}
