//! Homotopy colimits as diagonals of simplicial replacements, the tilde
//! construction, and checkers built on them.

pub mod filtration;
pub mod harness;
pub mod simplicial;

use std::collections::HashMap;

use serde::Serialize;

use crate::category::{ChainString, FiniteCategory, Functor};
use crate::certificate::{certify_weak_equivalence, CertifyOptions, WeakEquivalenceCertificate};
use crate::diagram::{Diagram, DiagramMap};
use crate::error::{Error, Result};
use crate::limits::{colimit, Colimit};
use crate::map::{SSet, SimplicialMap};
use crate::product::{coproduct_labeled, fiber_product, Coproduct};
use crate::sset::{CellId, SimplexRef};

pub use simplicial::{diagonal, diagonal_map, Diagonal, SimplicialObject, SimplicialObjectMap};

/// Level n is the coproduct of `D(i_0)` over strings `i_0 -> ... -> i_n`.
pub struct Replacement {
    pub object: SimplicialObject,
    pub strings: Vec<Vec<ChainString>>,
    index: Vec<HashMap<ChainString, usize>>,
    summands: Vec<Coproduct>,
    /// `(string, cell of D(start))` for every cell of every level.
    location: Vec<Vec<Vec<(usize, CellId)>>>,
}

impl Replacement {
    pub fn locate(&self, n: usize, c: CellId) -> (usize, CellId) {
        self.location[n][c.dim()][c.index()]
    }

    /// The simplex of `D(start)` behind a simplex of level n.
    pub fn split(&self, n: usize, s: &SimplexRef) -> (&ChainString, SimplexRef) {
        let (k, c) = self.locate(n, s.cell);
        (&self.strings[n][k], SimplexRef::new(c, s.degeneracy.clone()))
    }

    /// Places a simplex of `D(start)` in the summand of `string`.
    pub fn inject(&self, n: usize, string: &ChainString, s: &SimplexRef) -> SimplexRef {
        self.summands[n].injections[self.index[n][string]].apply(s)
    }
}

fn string_label(shape: &FiniteCategory, s: &ChainString) -> String {
    if s.is_empty() {
        format!("[{}]", shape.objects()[s.start])
    } else {
        let names: Vec<&str> = s.arrows.iter().map(|&a| shape.arrow(a).name.as_str()).collect();
        format!("[{}]", names.join(";"))
    }
}

/// The simplicial replacement, tabulated through level `top`.
pub fn simplicial_replacement(d: &Diagram, top: usize) -> Result<Replacement> {
    let shape = d.shape();
    let mut strings = Vec::new();
    let mut index = Vec::new();
    let mut summands: Vec<Coproduct> = Vec::new();
    let mut location = Vec::new();
    for n in 0..=top {
        let ss = shape.strings(n);
        let parts: Vec<SSet> = ss.iter().map(|s| d.value(s.start).clone()).collect();
        let labels: Vec<String> = ss.iter().map(|s| string_label(shape, s)).collect();
        let cop = coproduct_labeled(&parts, &labels);
        let mut loc: Vec<Vec<(usize, CellId)>> =
            cop.object.cell_counts().iter().map(|&k| vec![(0, CellId::new(0, 0)); k]).collect();
        for (k, inj) in cop.injections.iter().enumerate() {
            for c in inj.source().cells() {
                let t = inj.on_cell(c).cell;
                loc[t.dim()][t.index()] = (k, c);
            }
        }
        index.push(ss.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect::<HashMap<_, _>>());
        strings.push(ss);
        summands.push(cop);
        location.push(loc);
    }
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        let mut level = Vec::new();
        for i in 0..=n {
            let m = SimplicialMap::from_fn_unchecked(summands[n].object.clone(), summands[n - 1].object.clone(), |c| {
                let (k, c0) = location[n][c.dim()][c.index()];
                let s = &strings[n][k];
                let (t, value) = if i == 0 {
                    let a = s.arrows[0];
                    (ChainString { start: shape.arrow(a).dst, arrows: s.arrows[1..].to_vec() }, d.map(a).on_cell(c0).clone())
                } else if i == n {
                    (ChainString { start: s.start, arrows: s.arrows[..n - 1].to_vec() }, SimplexRef::cell(c0))
                } else {
                    let mut arrows = s.arrows[..i - 1].to_vec();
                    arrows.push(shape.compose(s.arrows[i - 1], s.arrows[i]).expect("composable string"));
                    arrows.extend_from_slice(&s.arrows[i + 1..]);
                    (ChainString { start: s.start, arrows }, SimplexRef::cell(c0))
                };
                summands[n - 1].injections[index[n - 1][&t]].apply(&value)
            });
            level.push(m);
        }
        faces.push(level);
    }
    let mut degeneracies = Vec::new();
    for n in 0..top {
        let mut level = Vec::new();
        for i in 0..=n {
            let m = SimplicialMap::from_fn_unchecked(summands[n].object.clone(), summands[n + 1].object.clone(), |c| {
                let (k, c0) = location[n][c.dim()][c.index()];
                let s = &strings[n][k];
                let mut arrows = s.arrows.clone();
                arrows.insert(i, shape.identity(shape.string_object(s, i)));
                let t = ChainString { start: s.start, arrows };
                summands[n + 1].injections[index[n + 1][&t]].apply(&SimplexRef::cell(c0))
            });
            level.push(m);
        }
        degeneracies.push(level);
    }
    let levels = summands.iter().map(|c| c.object.clone()).collect();
    let object = SimplicialObject::new_unchecked(levels, faces, degeneracies);
    debug_assert!(object.check().is_ok(), "{:?}", object.check());
    Ok(Replacement { object, strings, index, summands, location })
}

/// The levelwise map of replacements induced by a map of diagrams.
pub fn replacement_map(f: &DiagramMap, source: &Replacement, target: &Replacement) -> SimplicialObjectMap {
    let components = (0..=source.object.top())
        .map(|n| {
            SimplicialMap::from_fn_unchecked(source.object.level(n).clone(), target.object.level(n).clone(), |c| {
                let (s, x) = source.split(n, &SimplexRef::cell(c));
                target.inject(n, s, &f.components[s.start].apply(&x))
            })
        })
        .collect();
    SimplicialObjectMap { source: source.object.clone(), target: target.object.clone(), components }
}

/// The levelwise map from the replacement of `D ∘ u` to that of `D`.
fn reindex_map(u: &Functor, source: &Replacement, target: &Replacement) -> SimplicialObjectMap {
    let components = (0..=source.object.top())
        .map(|n| {
            SimplicialMap::from_fn_unchecked(source.object.level(n).clone(), target.object.level(n).clone(), |c| {
                let (s, x) = source.split(n, &SimplexRef::cell(c));
                target.inject(n, &u.map_string(s), &x)
            })
        })
        .collect();
    SimplicialObjectMap { source: source.object.clone(), target: target.object.clone(), components }
}

pub struct Hocolim {
    pub replacement: Replacement,
    pub diagonal: Diagonal,
    pub object: SSet,
}

/// Nerve dimension of the shape plus the largest value dimension.
pub fn default_bound(d: &Diagram) -> Result<usize> {
    Ok(d.shape().nerve_dim()? + d.max_dim())
}

pub fn hocolim(d: &Diagram, bound: Option<usize>) -> Result<Hocolim> {
    let bound = match bound {
        Some(b) => b,
        None => default_bound(d)?,
    };
    let replacement = simplicial_replacement(d, bound)?;
    let diagonal = diagonal(&replacement.object, bound)?;
    let object = diagonal.object.clone();
    Ok(Hocolim { replacement, diagonal, object })
}

/// `hocolim D -> colim D`, forgetting the string.
pub fn natural_map_to_colim(h: &Hocolim, colim: &Colimit) -> SimplicialMap {
    SimplicialMap::from_fn_unchecked(h.object.clone(), colim.object.clone(), |c| {
        let (n, s) = h.diagonal.key(c);
        let (string, x) = h.replacement.split(*n, s);
        colim.cocone[string.start].apply(&x)
    })
}

/// The map of homotopy colimits induced by a map of diagrams.
pub fn hocolim_map(f: &DiagramMap, source: &Hocolim, target: &Hocolim) -> SimplicialMap {
    let m = replacement_map(f, &source.replacement, &target.replacement);
    diagonal_map(&m, &source.diagonal, &target.diagonal)
}

/// Certificate for the natural map `hocolim D -> colim D`.
pub fn is_hocolim_diagram(d: &Diagram, options: &CertifyOptions) -> Result<WeakEquivalenceCertificate> {
    let h = hocolim(d, None)?;
    let c = colimit(d)?;
    let u = natural_map_to_colim(&h, &c);
    let mut opts = *options;
    let need = h.object.cell_counts().len().max(c.object.cell_counts().len()).saturating_sub(1);
    opts.degree_bound = Some(opts.degree_bound.unwrap_or(0).max(need));
    certify_weak_equivalence(&u, &opts)
}

pub struct Tilde {
    pub object: SSet,
    pub hocolim: Hocolim,
    pub functor: Functor,
    pub to_value: SimplicialMap,
}

/// `hocolim` over the category of objects over `i`, with its map to `D(i)`.
pub fn tilde(d: &Diagram, i: usize, bound: Option<usize>) -> Result<Tilde> {
    let shape = d.shape();
    if i >= shape.num_objects() {
        return Err(Error::Precondition(format!("no object {i}")));
    }
    let (over, u) = shape.over(i)?;
    let restricted = d.restrict(&u)?;
    let bound = match bound {
        Some(b) => b,
        None => default_bound(d)?,
    };
    let h = hocolim(&restricted, Some(bound))?;
    let arrow_of: Vec<usize> = over.objects().iter().map(|name| shape.arrow_index(name).expect("over object is an arrow")).collect();
    let to_value = SimplicialMap::from_fn_unchecked(h.object.clone(), d.value(i).clone(), |c| {
        let (n, s) = h.diagonal.key(c);
        let (string, x) = h.replacement.split(*n, s);
        d.map(arrow_of[string.start]).apply(&x)
    });
    Ok(Tilde { object: h.object.clone(), hocolim: h, functor: u, to_value })
}

/// `tilde(D, i) -> hocolim D`.
pub fn tilde_to_hocolim(t: &Tilde, h: &Hocolim) -> SimplicialMap {
    let m = reindex_map(&t.functor, &t.hocolim.replacement, &h.replacement);
    diagonal_map(&m, &t.hocolim.diagonal, &h.diagonal)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TildePullbackReport {
    pub object: String,
    pub holds: bool,
    pub tilde_cells: Vec<usize>,
    pub pullback_cells: Vec<usize>,
}

/// Checks that `X̃i -> Ỹi ×_{hocolim Y} hocolim X` is an isomorphism.
pub fn verify_tilde_pullback(f: &DiagramMap, i: usize) -> Result<TildePullbackReport> {
    f.check()?;
    let shape = f.shape();
    let bound = shape.nerve_dim()? + f.source.max_dim().max(f.target.max_dim());
    let hx = hocolim(&f.source, Some(bound))?;
    let hy = hocolim(&f.target, Some(bound))?;
    let tx = tilde(&f.source, i, Some(bound))?;
    let ty = tilde(&f.target, i, Some(bound))?;
    let hf = hocolim_map(f, &hx, &hy);
    let restricted = f.restrict(&tx.functor)?;
    let tf = hocolim_map(&restricted, &tx.hocolim, &ty.hocolim);
    let tx_h = tilde_to_hocolim(&tx, &hx);
    let ty_h = tilde_to_hocolim(&ty, &hy);
    let pb = fiber_product(&ty_h, &hf)?;
    let u = pb.induced(&tf, &tx_h)?;
    Ok(TildePullbackReport {
        object: shape.objects()[i].clone(),
        holds: u.is_iso(),
        tilde_cells: tx.object.cell_counts(),
        pullback_cells: pb.object.cell_counts(),
    })
}

/// Runs [`verify_tilde_pullback`] at every object.
pub fn verify_tilde_pullback_all(f: &DiagramMap) -> Result<Vec<TildePullbackReport>> {
    (0..f.shape().num_objects()).map(|i| verify_tilde_pullback(f, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use crate::homology::homology;
    use crate::standard::*;

    fn suspension_span() -> Diagram {
        let s1 = Arc::new(circle());
        let t = SimplicialMap::terminal(s1.clone());
        let pt = t.target().clone();
        Diagram::new(Arc::new(FiniteCategory::span()), vec![pt.clone(), pt, s1], vec![t.clone(), t]).unwrap()
    }

    #[test]
    fn span_replacement_has_five_strings_in_level_one() {
        let r = simplicial_replacement(&suspension_span(), 2).unwrap();
        assert_eq!(r.strings[1].len(), 5);
        assert!(r.object.check().is_ok());
    }

    #[test]
    fn suspension_of_the_circle() {
        let h = hocolim(&suspension_span(), None).unwrap();
        let groups: Vec<String> = homology(&h.object, 3).iter().map(|g| g.to_string()).collect();
        assert_eq!(groups, ["Z", "0", "Z", "0"]);
        assert!(is_hocolim_diagram(&suspension_span(), &CertifyOptions::default()).unwrap().is_refuted());
    }

    #[test]
    fn tilde_pullback_for_identity() {
        let d = suspension_span();
        let r = verify_tilde_pullback_all(&DiagramMap::identity(&d)).unwrap();
        assert!(r.iter().all(|x| x.holds));
    }

    #[test]
    fn hocolim_of_a_single_object() {
        let x = Arc::new(rp2());
        let d = Diagram::new(Arc::new(FiniteCategory::discrete(1)), vec![x], vec![]).unwrap();
        assert!(is_hocolim_diagram(&d, &CertifyOptions::default()).unwrap().is_certified());
    }
}
