//! Diagrams over posets of subsets: cofibrancy and the inductive pushout.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::category::{subset_label, FiniteCategory};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::limits::{colimit, is_pushout_square};
use crate::map::{SSet, SimplicialMap};
use crate::sset::FiniteSimplicialSet;

/// A colimit that may be indexed by the empty category.
pub struct SubColimit {
    pub object: SSet,
    /// `legs[k]` is the cocone leg of the k-th listed object.
    pub legs: Vec<SimplicialMap>,
    colimit: Option<crate::limits::Colimit>,
}

impl SubColimit {
    /// The map out of the colimit given compatible maps into `target`.
    pub fn induced(&self, maps: &[SimplicialMap], target: &SSet) -> Result<SimplicialMap> {
        match &self.colimit {
            Some(c) => c.induced(maps),
            None => Ok(SimplicialMap::initial(target.clone())),
        }
    }
}

/// Colimit of `d` restricted to the full subcategory on `objs`; the shape
/// must be thin.
pub fn colimit_over(d: &Diagram, objs: &[usize]) -> Result<SubColimit> {
    if objs.is_empty() {
        let object: SSet = Arc::new(FiniteSimplicialSet::empty());
        return Ok(SubColimit { object, legs: Vec::new(), colimit: None });
    }
    let shape = d.shape();
    let arrow = |a: usize, b: usize| shape.hom(objs[a], objs[b]).next();
    let names: Vec<String> = objs.iter().map(|&o| shape.objects()[o].clone()).collect();
    let sub = Arc::new(FiniteCategory::poset(names, |a, b| arrow(a, b).is_some())?);
    let values: Vec<SSet> = objs.iter().map(|&o| d.value(o).clone()).collect();
    let maps = sub
        .non_identity_arrows()
        .map(|a| d.map(arrow(sub.arrow(a).src, sub.arrow(a).dst).unwrap()).clone())
        .collect();
    let c = colimit(&Diagram::new(sub, values, maps)?)?;
    Ok(SubColimit { object: c.object.clone(), legs: c.cocone.clone(), colimit: Some(c) })
}

fn subset_objects(d: &Diagram) -> Result<(usize, HashMap<usize, usize>)> {
    let shape = d.shape().subset_shape().ok_or_else(|| Error::Precondition("shape is not a subset poset".into()))?;
    Ok((shape.n, shape.masks.iter().enumerate().map(|(i, &m)| (m, i)).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofibrancyReport {
    pub cofibrant: bool,
    /// The first subset whose latching map is not mono.
    pub failure: Option<String>,
}

/// For each subset `T` in the shape, `colim_{U ⊊ T} X(U) -> X(T)` is mono.
pub fn is_cofibrant_functor(d: &Diagram) -> Result<CofibrancyReport> {
    let (n, index) = subset_objects(d)?;
    let shape = d.shape();
    let mut masks: Vec<usize> = index.keys().copied().collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    for &t in &masks {
        let below: Vec<usize> = masks.iter().filter(|&&u| u != t && u & !t == 0).map(|u| index[u]).collect();
        let c = colimit_over(d, &below)?;
        let target = d.value(index[&t]);
        let maps: Vec<SimplicialMap> =
            below.iter().map(|&u| d.map(shape.hom(u, index[&t]).next().unwrap()).clone()).collect();
        if !c.induced(&maps, target)?.is_mono() {
            return Ok(CofibrancyReport { cofibrant: false, failure: Some(subset_label(t, n)) });
        }
    }
    Ok(CofibrancyReport { cofibrant: true, failure: None })
}

/// The square `colim X|S' -> colim X'`, `colim X|S' -> X(S')`,
/// `colim X' -> colim X`, `X(S') -> colim X` for `S' = {1..n-1}`.
pub struct PosetSquare {
    pub top: SimplicialMap,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    pub bottom: SimplicialMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetPushoutReport {
    pub is_pushout: bool,
    pub left_mono: bool,
    pub right_mono: bool,
    pub colimit_cells: Vec<usize>,
}

/// Builds and checks the pushout square for a diagram on the proper
/// subsets of `{1..n}`.
pub fn poset_pushout_decomposition(d: &Diagram) -> Result<(PosetSquare, PosetPushoutReport)> {
    let (n, index) = subset_objects(d)?;
    if n == 0 {
        return Err(Error::Precondition("the base set is empty".into()));
    }
    let full = (1usize << n) - 1;
    let last = 1usize << (n - 1);
    if index.contains_key(&full) || index.len() != (1 << n) - 1 {
        return Err(Error::Precondition("shape must be the proper subsets".into()));
    }
    let shape = d.shape();
    let arrow = |a: usize, b: usize| d.map(shape.hom(index[&a], index[&b]).next().unwrap());
    let s_prime = full & !last;
    let lower: Vec<usize> = (0..s_prime).filter(|t| t & !s_prime == 0).collect();
    let lower_objs: Vec<usize> = lower.iter().map(|t| index[t]).collect();
    let upper_objs: Vec<usize> = lower.iter().map(|t| index[&(t | last)]).collect();
    let all_objs: Vec<usize> = (0..full).map(|t| index[&t]).collect();
    let a = colimit_over(d, &lower_objs)?;
    let b = colimit_over(d, &upper_objs)?;
    let p = colimit_over(d, &all_objs)?;
    let x_s = d.value(index[&s_prime]);
    let top_maps: Vec<SimplicialMap> =
        lower.iter().enumerate().map(|(k, &t)| arrow(t, t | last).then_unchecked(&b.legs[k])).collect();
    let top = a.induced(&top_maps, &b.object)?;
    let left = a.induced(&lower.iter().map(|&t| arrow(t, s_prime).clone()).collect::<Vec<_>>(), x_s)?;
    let right = b.induced(&lower.iter().map(|&t| p.legs[t | last].clone()).collect::<Vec<_>>(), &p.object)?;
    // `all_objs` lists the subsets by mask, so legs are indexed by mask.
    let bottom = p.legs[s_prime].clone();
    let is_pushout = is_pushout_square(&top, &left, &right, &bottom)?;
    let report = PosetPushoutReport { is_pushout, left_mono: left.is_mono(), right_mono: right.is_mono(), colimit_cells: p.object.cell_counts() };
    Ok((PosetSquare { top, left, right, bottom }, report))
}

/// `T ↦ Δ[|T|-1]` on the subsets of `{1..n}` (proper ones if asked), with
/// face inclusions.
pub fn simplex_functor(n: usize, proper_only: bool) -> Result<Diagram> {
    let shape = Arc::new(FiniteCategory::subset_poset(n, proper_only));
    let masks = shape.subset_shape().unwrap().masks.clone();
    let full = crate::standard::standard_simplex(n.saturating_sub(1));
    let top: SSet = Arc::new(full);
    let faces: Vec<SimplicialMap> = masks
        .iter()
        .map(|&m| {
            let cells = top.cells().filter(|&c| crate::standard::simplex_cell_mask(&top, c) & !m == 0);
            crate::map::subcomplex(&top, cells)
        })
        .collect();
    let objects: Vec<SSet> = faces.iter().map(|f| f.source().clone()).collect();
    let maps = shape
        .non_identity_arrows()
        .map(|a| {
            let (s, t) = (shape.arrow(a).src, shape.arrow(a).dst);
            let back: HashMap<_, _> = faces[t].source().cells().map(|c| (faces[t].on_cell(c).cell, c)).collect();
            SimplicialMap::from_fn(objects[s].clone(), objects[t].clone(), |c| {
                crate::sset::SimplexRef::cell(back[&faces[s].on_cell(c).cell])
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Diagram::new(shape, objects, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::point;

    #[test]
    fn simplex_functor_is_cofibrant() {
        for n in 1..=3 {
            assert!(is_cofibrant_functor(&simplex_functor(n, false).unwrap()).unwrap().cofibrant);
        }
    }

    #[test]
    fn two_points_glued_to_one_is_not_cofibrant() {
        // Empty at the empty set and a point elsewhere.
        let shape = Arc::new(FiniteCategory::subset_poset(2, false));
        let pt: SSet = Arc::new(point());
        let empty: SSet = Arc::new(FiniteSimplicialSet::empty());
        let objects: Vec<SSet> = (0..shape.num_objects()).map(|o| if o == 0 { empty.clone() } else { pt.clone() }).collect();
        let maps = shape
            .non_identity_arrows()
            .map(|a| if shape.arrow(a).src == 0 { SimplicialMap::initial(pt.clone()) } else { SimplicialMap::identity(pt.clone()) })
            .collect();
        let d = Diagram::new(shape, objects, maps).unwrap();
        let r = is_cofibrant_functor(&d).unwrap();
        assert!(!r.cofibrant);
        assert_eq!(r.failure.as_deref(), Some("{1,2}"));
    }

    #[test]
    fn constant_point_is_cofibrant() {
        let shape = Arc::new(FiniteCategory::subset_poset(2, true));
        let pt: SSet = Arc::new(point());
        let k = shape.num_objects();
        let maps = shape.non_identity_arrows().map(|_| SimplicialMap::identity(pt.clone())).collect();
        let d = Diagram::new(shape, vec![pt; k], maps).unwrap();
        assert!(is_cofibrant_functor(&d).unwrap().cofibrant);
    }

    #[test]
    fn pushout_decomposition_of_the_simplex_functor() {
        for n in 1..=3 {
            let (_, r) = poset_pushout_decomposition(&simplex_functor(n, true).unwrap()).unwrap();
            assert!(r.is_pushout && r.left_mono && r.right_mono, "{r:?}");
        }
        let (_, r) = poset_pushout_decomposition(&simplex_functor(3, true).unwrap()).unwrap();
        // The boundary of a triangle.
        assert_eq!(r.colimit_cells, vec![3, 3]);
    }
}
