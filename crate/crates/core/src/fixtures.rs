//! Named diagrams and maps used by the checks, the tests and the CLI.

use std::sync::Arc;

use crate::category::FiniteCategory;
use crate::diagram::{Diagram, DiagramMap};
use crate::error::Result;
use crate::map::{subcomplex, SSet, SimplicialMap};
use crate::poset::simplex_functor;
use crate::product::{product, FiberProduct};
use crate::sset::SimplexRef;
use crate::boolean::DiagramSquare;
use crate::standard::{circle, cone, point, standard_simplex};

/// `Δ[0] <- S¹ -> Δ[0]`, whose homotopy colimit is a 2-sphere.
pub fn suspension_span() -> Diagram {
    let s1: SSet = Arc::new(circle());
    let t = SimplicialMap::terminal(s1.clone());
    let pt = t.target().clone();
    Diagram::new(Arc::new(FiniteCategory::span()), vec![pt.clone(), pt, s1], vec![t.clone(), t]).unwrap()
}

/// `CS¹ <- S¹ -> CS¹` along the base inclusions; its colimit is a 2-sphere.
pub fn cone_span() -> Diagram {
    let s1: SSet = Arc::new(circle());
    let c: SSet = Arc::new(cone(&s1));
    let base = SimplicialMap::from_fn(s1.clone(), c.clone(), SimplexRef::cell).unwrap();
    Diagram::new(Arc::new(FiniteCategory::span()), vec![c.clone(), c, s1], vec![base.clone(), base]).unwrap()
}

/// `sk_0 X ⊂ sk_1 X ⊂ ... ⊂ X` over a chain.
pub fn skeleton_chain(x: &SSet) -> Diagram {
    let top = if x.is_empty() { 0 } else { x.max_dim() };
    let incl: Vec<SimplicialMap> = (0..=top).map(|k| subcomplex(x, x.cells().filter(|c| c.dim() <= k))).collect();
    let shape = Arc::new(FiniteCategory::chain(top + 1));
    let objects: Vec<SSet> = incl.iter().map(|i| i.source().clone()).collect();
    let maps = shape
        .non_identity_arrows()
        .map(|a| {
            let (s, t) = (shape.arrow(a).src, shape.arrow(a).dst);
            // Skeleta keep the cell order of `x` in each dimension.
            SimplicialMap::from_fn(objects[s].clone(), objects[t].clone(), SimplexRef::cell).unwrap()
        })
        .collect();
    Diagram::new(shape, objects, maps).unwrap()
}

/// The faces of a triangle over the proper subsets of `{1,2,3}`.
pub fn triangle_boundary_poset() -> Diagram {
    simplex_functor(3, true).unwrap()
}

/// A diagram of one repeated value along identities.
pub fn constant_diagram(shape: Arc<FiniteCategory>, x: &SSet) -> Diagram {
    let maps = shape.non_identity_arrows().map(|_| SimplicialMap::identity(x.clone())).collect();
    let k = shape.num_objects();
    Diagram::new(shape, vec![x.clone(); k], maps).unwrap()
}

/// The pullback of `Δ[1] × S¹ -> Δ[1]` to the vertex `0`, as a constant
/// square over `shape`.
pub fn bundle_restriction_square(shape: Arc<FiniteCategory>) -> Result<DiagramSquare> {
    let d1: SSet = Arc::new(standard_simplex(1));
    let s1: SSet = Arc::new(circle());
    let y = constant_diagram(shape.clone(), &d1);
    let f = trivial_bundle(&y, &s1)?;
    let pt = constant_diagram(shape, &Arc::new(point()));
    let v0 = SimplicialMap::from_fn(pt.value(0).clone(), d1, |_| SimplexRef::cell(crate::sset::CellId::new(0, 0)))?;
    let g = DiagramMap::new(pt, y, vec![v0; f.shape().num_objects()])?;
    DiagramSquare::pullback(&f, &g)
}

/// `∅ -> Δ[0]`, `∅ -> S¹` over `S¹ -> Δ[0]`, constant over `shape`; the
/// homotopy pullback is `S¹`, not empty.
pub fn empty_corner_square(shape: Arc<FiniteCategory>) -> Result<DiagramSquare> {
    let s1: SSet = Arc::new(circle());
    let pt: SSet = Arc::new(point());
    let empty: SSet = Arc::new(crate::sset::FiniteSimplicialSet::empty());
    let k = shape.num_objects();
    let [p, x, y, b] = [&empty, &pt, &s1, &pt].map(|v| constant_diagram(shape.clone(), v));
    let px = DiagramMap::new(p.clone(), x.clone(), vec![SimplicialMap::initial(pt.clone()); k])?;
    let py = DiagramMap::new(p, y.clone(), vec![SimplicialMap::initial(s1.clone()); k])?;
    let f = DiagramMap::new(x, b.clone(), vec![SimplicialMap::identity(pt.clone()); k])?;
    let g = DiagramMap::new(y, b, vec![SimplicialMap::from_fn(s1.clone(), pt.clone(), |c| SimplicialMap::terminal(s1.clone()).on_cell(c).clone())?; k])?;
    Ok(DiagramSquare { px, py, f, g })
}

/// `Y × K -> Y`, objectwise.
pub fn trivial_bundle(y: &Diagram, k: &SSet) -> Result<DiagramMap> {
    let shape = y.shape().clone();
    let prods: Vec<FiberProduct> = y.values().iter().map(|v| product(v, k)).collect::<Result<_>>()?;
    let maps = shape
        .non_identity_arrows()
        .map(|a| {
            let (s, t) = (shape.arrow(a).src, shape.arrow(a).dst);
            prods[t].induced(&prods[s].left.then_unchecked(y.map(a)), &prods[s].right)
        })
        .collect::<Result<Vec<_>>>()?;
    let x = Diagram::new(shape, prods.iter().map(|p| p.object.clone()).collect(), maps)?;
    let components = prods.iter().map(|p| p.left.clone()).collect();
    DiagramMap::new(x, y.clone(), components)
}

/// A two-edge circle wrapped twice around `S¹`.
pub fn double_cover() -> Result<SimplicialMap> {
    let v = |i| SimplexRef::cell(crate::sset::CellId::new(0, i));
    let c2 = crate::sset::FiniteSimplicialSet::from_parts(
        vec![vec!["0".into(), "1".into()], vec!["a".into(), "b".into()]],
        vec![vec![Vec::new(), Vec::new()], vec![vec![v(1), v(0)], vec![v(0), v(1)]]],
    )?;
    let s1: SSet = Arc::new(circle());
    SimplicialMap::from_fn(Arc::new(c2), s1, |c| SimplexRef::cell(crate::sset::CellId::new(c.dim(), 0)))
}

/// Named maps covering certified, refuted and undecided comparisons.
pub fn map_corpus() -> Result<Vec<(String, SimplicialMap)>> {
    use crate::standard::{boundary, discrete, horn, rp2, sphere};
    let arc = |x: crate::sset::FiniteSimplicialSet| -> SSet { Arc::new(x) };
    let d1 = arc(standard_simplex(1));
    let d2 = arc(standard_simplex(2));
    let s1 = arc(circle());
    let vertex = |x: &SSet| SimplicialMap::from_fn(arc(point()), x.clone(), |_| SimplexRef::cell(crate::sset::CellId::new(0, 0)));
    let sub = |x: &SSet, y: crate::sset::FiniteSimplicialSet| {
        let names: Vec<String> = y.cells().map(|c| y.name(c).to_string()).collect();
        subcomplex(x, names.iter().map(|n| x.find(n).unwrap()))
    };
    let mut out: Vec<(String, SimplicialMap)> = vec![
        ("vertex-into-edge".into(), vertex(&d1)?),
        ("base-point-of-circle".into(), vertex(&s1)?),
        ("circle-to-point".into(), SimplicialMap::terminal(s1.clone())),
        ("two-points-to-point".into(), SimplicialMap::terminal(arc(discrete(2)))),
        ("sphere-to-point".into(), SimplicialMap::terminal(arc(sphere(2)))),
        ("projective-plane-to-point".into(), SimplicialMap::terminal(arc(rp2()))),
        ("triangle-to-point".into(), SimplicialMap::terminal(d2.clone())),
        ("triangle-boundary-inclusion".into(), sub(&d2, boundary(2))),
        ("double-cover".into(), double_cover()?),
        ("circle-identity".into(), SimplicialMap::identity(s1.clone())),
        ("cone-on-circle-to-point".into(), SimplicialMap::terminal(arc(cone(&s1)))),
        ("edge-projection".into(), product(&s1, &d1)?.left),
    ];
    for k in 0..=2 {
        out.push((format!("horn-{k}-inclusion"), sub(&d2, horn(2, k)?)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;
    use crate::limits::colimit;

    #[test]
    fn colimits_of_fixtures() {
        let c = colimit(&cone_span()).unwrap();
        let h: Vec<String> = homology(&c.object, 2).iter().map(|g| g.to_string()).collect();
        assert_eq!(h, ["Z", "0", "Z"]);
        let d2: SSet = Arc::new(standard_simplex(2));
        assert_eq!(colimit(&skeleton_chain(&d2)).unwrap().object.cell_counts(), vec![3, 3, 1]);
        assert_eq!(colimit(&triangle_boundary_poset()).unwrap().object.cell_counts(), vec![3, 3]);
    }
}
