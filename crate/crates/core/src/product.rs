//! Fiber products, products and coproducts.
//!
//! A simplex of `X ×_B Y` is a pair `(x, y)` with `f(x) = g(y)`. The pair
//! `(c·σ, d·τ)` is degenerate exactly when σ and τ repeat a common
//! position, so normal forms are read off by collapsing those positions.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::{same_set, SSet, SimplicialMap};
use crate::operator::{OpValues, Operator};
use crate::sset::{CellId, FiniteSimplicialSet, SimplexRef, DEFAULT_DIM_CAP};

type Pair = (SimplexRef, SimplexRef);

pub struct FiberProduct {
    pub object: SSet,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    cells: HashMap<Pair, CellId>,
}

/// Splits an n-simplex pair into `(nondegenerate pair, common degeneracy)`.
pub fn split_pair(x: &SimplexRef, y: &SimplexRef) -> (Pair, Operator) {
    let n = x.dim();
    debug_assert_eq!(n, y.dim());
    let sx = x.degeneracy.raw_values();
    let sy = y.degeneracy.raw_values();
    let mut theta: OpValues = OpValues::with_capacity(n + 1);
    let mut keep = Vec::with_capacity(n + 1);
    theta.push(0);
    keep.push(0);
    for j in 0..n {
        let collapse = sx[j] == sx[j + 1] && sy[j] == sy[j + 1];
        let last = *theta.last().unwrap();
        if collapse {
            theta.push(last);
        } else {
            theta.push(last + 1);
            keep.push(j + 1);
        }
    }
    let k = keep.len() - 1;
    let theta = Operator::from_values_unchecked(theta, k);
    let restrict = |s: &SimplexRef| {
        let v: OpValues = keep.iter().map(|&p| s.degeneracy.raw_values()[p]).collect();
        SimplexRef::new(s.cell, Operator::from_values_unchecked(v, s.cell.dim()))
    };
    ((restrict(x), restrict(y)), theta)
}

impl FiberProduct {
    /// Normal form of the simplex `(x, y)`; `None` unless `f(x) = g(y)`.
    pub fn pair(&self, x: &SimplexRef, y: &SimplexRef) -> Option<SimplexRef> {
        let (p, theta) = split_pair(x, y);
        self.cells.get(&p).map(|&c| SimplexRef::new(c, theta))
    }

    /// The map `Z -> X ×_B Y` induced by `a: Z -> X` and `b: Z -> Y`.
    pub fn induced(&self, a: &SimplicialMap, b: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_set(a.source(), b.source()) {
            return Err(Error::Precondition("cone legs have different sources".into()));
        }
        let mut assignment = Vec::new();
        for n in 0..a.source().cell_counts().len() {
            let mut level = Vec::new();
            for c in a.source().cells_of_dim(n) {
                let r = self
                    .pair(a.on_cell(c), b.on_cell(c))
                    .ok_or_else(|| Error::Precondition("cone does not commute over the base".into()))?;
                level.push(r);
            }
            assignment.push(level);
        }
        SimplicialMap::new(a.source().clone(), self.object.clone(), assignment)
    }
}

pub fn fiber_product(f: &SimplicialMap, g: &SimplicialMap) -> Result<FiberProduct> {
    fiber_product_capped(f, g, DEFAULT_DIM_CAP)
}

pub fn fiber_product_capped(f: &SimplicialMap, g: &SimplicialMap, cap: usize) -> Result<FiberProduct> {
    if !same_set(f.target(), g.target()) {
        return Err(Error::Precondition("pullback legs have different codomains".into()));
    }
    let x = f.source();
    let y = g.source();
    let top = if x.is_empty() || y.is_empty() { 0 } else { x.max_dim() + y.max_dim() };
    let mut names: Vec<Vec<String>> = Vec::new();
    let mut faces: Vec<Vec<Vec<SimplexRef>>> = Vec::new();
    let mut cells: HashMap<Pair, CellId> = HashMap::new();
    let mut keys: Vec<Vec<Pair>> = Vec::new();
    for m in 0..=top {
        let mut by_image: HashMap<SimplexRef, Vec<SimplexRef>> = HashMap::new();
        for s in x.simplices(m) {
            by_image.entry(f.apply(&s)).or_default().push(s);
        }
        let mut level_names = Vec::new();
        let mut level_faces = Vec::new();
        let mut level_keys = Vec::new();
        for t in y.simplices(m) {
            let Some(xs) = by_image.get(&g.apply(&t)) else { continue };
            for s in xs {
                if common_repeat(s, &t) {
                    continue;
                }
                if m > cap {
                    return Err(Error::DimensionCap { dim: m, cap });
                }
                let id = CellId::new(m, level_names.len());
                let mut fs = Vec::new();
                if m > 0 {
                    for i in 0..=m {
                        let d = Operator::face(m, i);
                        let (p, theta) = split_pair(&x.evaluate(s, &d), &y.evaluate(&t, &d));
                        fs.push(SimplexRef::new(cells[&p], theta));
                    }
                }
                level_names.push(format!("({},{})", x.label(s), y.label(&t)));
                level_faces.push(fs);
                cells.insert((s.clone(), t.clone()), id);
                level_keys.push((s.clone(), t.clone()));
            }
        }
        names.push(level_names);
        faces.push(level_faces);
        keys.push(level_keys);
    }
    let object = Arc::new(FiniteSimplicialSet::from_parts(names, faces)?);
    let left = SimplicialMap::from_fn_unchecked(object.clone(), x.clone(), |c| keys[c.dim()][c.index()].0.clone());
    let right = SimplicialMap::from_fn_unchecked(object.clone(), y.clone(), |c| keys[c.dim()][c.index()].1.clone());
    Ok(FiberProduct { object, left, right, cells })
}

fn common_repeat(x: &SimplexRef, y: &SimplexRef) -> bool {
    let a = x.degeneracy.raw_values();
    let b = y.degeneracy.raw_values();
    (0..a.len() - 1).any(|j| a[j] == a[j + 1] && b[j] == b[j + 1])
}

/// `X × Y` with its projections.
pub fn product(x: &SSet, y: &SSet) -> Result<FiberProduct> {
    let fx = SimplicialMap::terminal(x.clone());
    let fy = SimplicialMap::terminal(y.clone());
    fiber_product(&fx, &fy)
}

/// `f × g: X × X' -> Y × Y'`.
pub fn product_map(f: &SimplicialMap, g: &SimplicialMap) -> Result<(FiberProduct, FiberProduct, SimplicialMap)> {
    let src = product(f.source(), g.source())?;
    let tgt = product(f.target(), g.target())?;
    let a = src.left.then_unchecked(f);
    let b = src.right.then_unchecked(g);
    let m = tgt.induced(&a, &b)?;
    Ok((src, tgt, m))
}

pub struct Coproduct {
    pub object: SSet,
    pub injections: Vec<SimplicialMap>,
}

impl Coproduct {
    /// The map out of the coproduct given by one map per summand.
    pub fn copair(&self, maps: &[SimplicialMap]) -> Result<SimplicialMap> {
        if maps.len() != self.injections.len() {
            return Err(Error::Precondition("wrong number of summand maps".into()));
        }
        let target = match maps.first() {
            Some(m) => m.target().clone(),
            None => return Err(Error::Precondition("copairing needs a target".into())),
        };
        let mut assignment: Vec<Vec<SimplexRef>> = self.object.cell_counts().iter().map(|&k| Vec::with_capacity(k)).collect();
        for (inj, m) in self.injections.iter().zip(maps) {
            if !same_set(inj.source(), m.source()) || !same_set(m.target(), &target) {
                return Err(Error::Precondition("summand map has the wrong source or target".into()));
            }
            for c in inj.source().cells() {
                assignment[c.dim()].push(m.on_cell(c).clone());
            }
        }
        SimplicialMap::new(self.object.clone(), target, assignment)
    }
}

/// Disjoint union; cell ids are prefixed by the summand index as `k:id`.
pub fn coproduct(parts: &[SSet]) -> Coproduct {
    let labels: Vec<String> = (0..parts.len()).map(|k| k.to_string()).collect();
    coproduct_labeled(parts, &labels)
}

/// Disjoint union with cell ids prefixed as `label:id`.
pub fn coproduct_labeled(parts: &[SSet], labels: &[String]) -> Coproduct {
    let top = parts.iter().filter(|p| !p.is_empty()).map(|p| p.max_dim() + 1).max().unwrap_or(0);
    let mut names: Vec<Vec<String>> = vec![Vec::new(); top];
    let mut faces: Vec<Vec<Vec<SimplexRef>>> = vec![Vec::new(); top];
    let mut offsets: Vec<Vec<usize>> = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        let off: Vec<usize> = (0..top).map(|n| names[n].len()).collect();
        for c in p.cells() {
            names[c.dim()].push(format!("{}:{}", labels[k], p.name(c)));
            faces[c.dim()].push(
                p.faces_of(c)
                    .iter()
                    .map(|f| SimplexRef::new(CellId::new(f.cell.dim(), off[f.cell.dim()] + f.cell.index()), f.degeneracy.clone()))
                    .collect(),
            );
        }
        offsets.push(off);
    }
    let object = Arc::new(FiniteSimplicialSet::from_parts(names, faces).expect("disjoint union of valid sets"));
    let injections = parts
        .iter()
        .zip(&offsets)
        .map(|(p, off)| {
            SimplicialMap::from_fn_unchecked(p.clone(), object.clone(), |c| {
                SimplexRef::cell(CellId::new(c.dim(), off[c.dim()] + c.index()))
            })
        })
        .collect();
    Coproduct { object, injections }
}

/// Coproduct of maps `⊔ f_k: ⊔ X_k -> ⊔ Y_k`.
pub fn coproduct_map(maps: &[SimplicialMap]) -> (Coproduct, Coproduct, SimplicialMap) {
    let src = coproduct(&maps.iter().map(|m| m.source().clone()).collect::<Vec<_>>());
    let tgt = coproduct(&maps.iter().map(|m| m.target().clone()).collect::<Vec<_>>());
    let legs: Vec<SimplicialMap> = maps.iter().zip(&tgt.injections).map(|(m, j)| m.then_unchecked(j)).collect();
    let m = if maps.is_empty() {
        SimplicialMap::initial(tgt.object.clone())
    } else {
        src.copair(&legs).expect("legs share the coproduct target")
    };
    (src, tgt, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::*;

    fn s(x: FiniteSimplicialSet) -> SSet {
        Arc::new(x)
    }

    #[test]
    fn square_counts() {
        let d1 = s(standard_simplex(1));
        let p = product(&d1, &d1).unwrap();
        assert_eq!(p.object.cell_counts(), vec![4, 5, 2]);
        assert!(p.object.validate().is_empty());
    }

    #[test]
    fn point_is_a_unit() {
        let pt = s(point());
        let x = s(rp2());
        let p = product(&pt, &x).unwrap();
        assert!(p.right.is_iso());
    }

    #[test]
    fn disjoint_vertices_have_empty_pullback() {
        let d1 = s(standard_simplex(1));
        let pt = s(point());
        let v0 = SimplicialMap::from_fn(pt.clone(), d1.clone(), |_| SimplexRef::cell(CellId::new(0, 0))).unwrap();
        let v1 = SimplicialMap::from_fn(pt, d1, |_| SimplexRef::cell(CellId::new(0, 1))).unwrap();
        let p = fiber_product(&v0, &v1).unwrap();
        assert!(p.object.is_empty());
    }

    #[test]
    fn coproduct_of_points() {
        let pt = s(point());
        let c = coproduct(&[pt.clone(), pt]);
        assert_eq!(c.object.cell_counts(), vec![2]);
        assert!(coproduct(&[]).object.is_empty());
    }

    #[test]
    fn product_of_simplices_counts() {
        // Nondegenerate simplices of Δ[p] × Δ[q] are strictly increasing
        // lattice paths; in top dimension there are C(p+q, p).
        let a = s(standard_simplex(2));
        let b = s(standard_simplex(2));
        let p = product(&a, &b).unwrap();
        assert_eq!(p.object.num_cells(4), 6);
        assert!(p.object.validate().is_empty());
    }
}
