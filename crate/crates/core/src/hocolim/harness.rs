//! Executable checks of statements about homotopy colimits and sharp maps.
//!
//! Every harness reports its hypotheses and conclusions separately. A
//! conclusion is only asserted when every hypothesis is certified, so an
//! indeterminate hypothesis never shows up as a failed conclusion.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::simplicial::{diagonal, diagonal_map, SimplicialObjectMap};
use super::is_hocolim_diagram;
use crate::category::FiniteCategory;
use crate::certificate::{certify_raised, CertifyOptions, Verdict};
use crate::diagram::{Diagram, DiagramMap};
use crate::error::{Error, Result};
use crate::limits::{colimit, Colimit};
use crate::map::{characteristic_map_from, standard_map, SSet, SimplicialMap};
use crate::operator::Operator;
use crate::poset::{colimit_over, is_cofibrant_functor};
use crate::product::fiber_product;
use crate::sharp::{is_homotopy_cartesian, is_sharp, CartesianOptions, Cartesianness, Leg, Sharpness, Square};
use crate::sset::{CellId, SimplexRef};
use crate::standard::{horn, simplex_cell_mask, standard_simplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Hypotheses and conclusions certified.
    Pass,
    /// Hypotheses certified but a conclusion refuted.
    Fail,
    /// Some hypothesis is not certified; conclusions are not asserted.
    HypothesisNotEstablished,
    /// Hypotheses certified, some conclusion indeterminate.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub outcome: Outcome,
    pub hypotheses: Vec<Check>,
    pub conclusions: Vec<Check>,
}

impl HarnessReport {
    pub fn new(hypotheses: Vec<Check>, conclusions: Vec<Check>) -> Self {
        let all = |v: &[Check], w: Verdict| v.iter().all(|c| c.verdict == w);
        let outcome = if !all(&hypotheses, Verdict::Certified) {
            Outcome::HypothesisNotEstablished
        } else if conclusions.iter().any(|c| c.verdict == Verdict::Refuted) {
            Outcome::Fail
        } else if all(&conclusions, Verdict::Certified) {
            Outcome::Pass
        } else {
            Outcome::Indeterminate
        };
        HarnessReport { outcome, hypotheses, conclusions }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

fn check(name: impl Into<String>, verdict: Verdict) -> Check {
    Check { name: name.into(), verdict }
}

fn from_sharpness(s: Sharpness) -> Verdict {
    match s {
        Sharpness::Sharp => Verdict::Certified,
        Sharpness::NotSharp => Verdict::Refuted,
        Sharpness::Indeterminate => Verdict::Indeterminate,
    }
}

/// Tries the left leg, then the right one.
pub fn cartesian_verdict(square: &Square, options: &CartesianOptions) -> Result<Verdict> {
    let mut v = is_homotopy_cartesian(square, Leg::Left, options)?.verdict;
    if v == Cartesianness::Indeterminate {
        v = is_homotopy_cartesian(square, Leg::Right, options)?.verdict;
    }
    Ok(match v {
        Cartesianness::Cartesian => Verdict::Certified,
        Cartesianness::NotCartesian => Verdict::Refuted,
        Cartesianness::Indeterminate => Verdict::Indeterminate,
    })
}

/// The map of colimits induced by a map of diagrams.
pub fn colimit_map(f: &DiagramMap, cx: &Colimit, cy: &Colimit) -> Result<SimplicialMap> {
    let legs: Vec<SimplicialMap> = f.components.iter().zip(&cy.cocone).map(|(c, l)| c.then_unchecked(l)).collect();
    cx.induced(&legs)
}

/// `Xi -> colim X` over `Yi -> colim Y`, one square per object.
fn object_to_colimit_squares(f: &DiagramMap) -> Result<Vec<(String, Square)>> {
    let cx = colimit(&f.source)?;
    let cy = colimit(&f.target)?;
    let cf = colimit_map(f, &cx, &cy)?;
    let shape = f.shape();
    (0..shape.num_objects())
        .map(|i| {
            let sq = Square::new(cx.cocone[i].clone(), f.components[i].clone(), cf.clone(), cy.cocone[i].clone())?;
            Ok((shape.objects()[i].clone(), sq))
        })
        .collect()
}

/// `Xi -> Xj` over `Yi -> Yj`, one square per non-identity arrow.
fn naturality_squares(f: &DiagramMap) -> Result<Vec<(String, Square)>> {
    let shape = f.shape();
    shape
        .non_identity_arrows()
        .map(|a| {
            let (i, j) = (shape.arrow(a).src, shape.arrow(a).dst);
            let sq = Square::new(
                f.source.map(a).clone(),
                f.components[i].clone(),
                f.components[j].clone(),
                f.target.map(a).clone(),
            )?;
            Ok((shape.arrow(a).name.clone(), sq))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HarnessOptions {
    pub certify: CertifyOptions,
    pub cartesian: CartesianOptions,
}

/// Part 1: if `Y` is a homotopy colimit diagram and every object-to-colimit
/// square is homotopy cartesian, then `X` is a homotopy colimit diagram.
/// Part 2: if `X` and `Y` are homotopy colimit diagrams and every
/// naturality square is homotopy cartesian, then so is every
/// object-to-colimit square.
pub fn verify_thm_hocolims(f: &DiagramMap, part: u8, options: &HarnessOptions) -> Result<HarnessReport> {
    f.check()?;
    let mut hyps = Vec::new();
    let mut concls = Vec::new();
    let y_hocolim = is_hocolim_diagram(&f.target, &options.certify)?.verdict;
    match part {
        1 => {
            hyps.push(check("target is a homotopy colimit diagram", y_hocolim));
            for (name, sq) in object_to_colimit_squares(f)? {
                hyps.push(check(format!("square to colimit at {name} is homotopy cartesian"), cartesian_verdict(&sq, &options.cartesian)?));
            }
            concls.push(check("source is a homotopy colimit diagram", is_hocolim_diagram(&f.source, &options.certify)?.verdict));
        }
        2 => {
            hyps.push(check("source is a homotopy colimit diagram", is_hocolim_diagram(&f.source, &options.certify)?.verdict));
            hyps.push(check("target is a homotopy colimit diagram", y_hocolim));
            for (name, sq) in naturality_squares(f)? {
                hyps.push(check(format!("naturality square at {name} is homotopy cartesian"), cartesian_verdict(&sq, &options.cartesian)?));
            }
            for (name, sq) in object_to_colimit_squares(f)? {
                concls.push(check(format!("square to colimit at {name} is homotopy cartesian"), cartesian_verdict(&sq, &options.cartesian)?));
            }
        }
        _ => return Err(Error::Precondition(format!("no part {part}; expected 1 or 2"))),
    }
    Ok(HarnessReport::new(hyps, concls))
}

/// Levelwise sharp maps whose operator squares are homotopy cartesian have
/// a sharp diagonal. Squares are checked on faces and degeneracies, which
/// generate all operators; homotopy cartesian squares paste.
pub fn verify_diagonal_sharp(p: &SimplicialObjectMap, options: &HarnessOptions) -> Result<HarnessReport> {
    p.check()?;
    let (x, y) = (&p.source, &p.target);
    let top = x.top();
    let mut hyps = Vec::new();
    for n in 0..=top {
        let r = is_sharp(&p.components[n], &options.cartesian.sharp)?;
        hyps.push(check(format!("level {n} map is sharp"), from_sharpness(r.verdict)));
    }
    for n in 0..=top {
        let ops = (0..n + 1).filter(|_| n > 0).map(|i| (format!("d_{i} on level {n}"), x.face(n, i), y.face(n, i), n - 1));
        let degs = (0..n + 1).filter(|_| n < top).map(|i| (format!("s_{i} on level {n}"), x.degeneracy(n, i), y.degeneracy(n, i), n + 1));
        for (name, xo, yo, m) in ops.chain(degs).collect::<Vec<_>>() {
            let sq = Square::new(xo.clone(), p.components[n].clone(), p.components[m].clone(), yo.clone())?;
            hyps.push(check(format!("square for {name} is homotopy cartesian"), cartesian_verdict(&sq, &options.cartesian)?));
        }
    }
    let dx = diagonal(x, top)?;
    let dy = diagonal(y, top)?;
    let dp = diagonal_map(p, &dx, &dy);
    let r = is_sharp(&dp, &options.cartesian.sharp)?;
    Ok(HarnessReport::new(hyps, vec![check("diagonal map is sharp", from_sharpness(r.verdict))]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialCase {
    /// A finite chain of monomorphisms.
    Chain,
    /// A span with one monomorphic leg in both diagrams.
    Span,
    /// Cofibrant diagrams on the proper subsets of a finite set.
    ProperSubsets,
}

fn all_mono(d: &Diagram) -> bool {
    d.shape().non_identity_arrows().all(|a| d.map(a).is_mono())
}

fn side_condition(f: &DiagramMap, case: SpecialCase) -> Result<Check> {
    let shape = f.shape();
    let ok = match case {
        SpecialCase::Chain => {
            let order = shape.topological_order()?;
            let total = order.windows(2).all(|w| shape.hom(w[0], w[1]).next().is_some());
            total && all_mono(&f.source) && all_mono(&f.target)
        }
        SpecialCase::Span => {
            let legs: Vec<usize> = shape.non_identity_arrows().collect();
            let is_span = shape.num_objects() == 3 && legs.len() == 2 && shape.arrow(legs[0]).src == shape.arrow(legs[1]).src;
            is_span && legs.iter().any(|&a| f.source.map(a).is_mono() && f.target.map(a).is_mono())
        }
        SpecialCase::ProperSubsets => {
            let proper = shape.subset_shape().is_some_and(|s| s.proper_only);
            proper && is_cofibrant_functor(&f.source)?.cofibrant && is_cofibrant_functor(&f.target)?.cofibrant
        }
    };
    let name = match case {
        SpecialCase::Chain => "shape is a chain and all maps are mono",
        SpecialCase::Span => "shape is a span with a mono leg in both diagrams",
        SpecialCase::ProperSubsets => "shape is a proper-subset poset and both diagrams are cofibrant",
    };
    Ok(check(name, if ok { Verdict::Certified } else { Verdict::Refuted }))
}

/// Levelwise sharp maps with homotopy cartesian naturality squares, over a
/// chain, a span, or a proper-subset poset, induce a sharp map of colimits
/// with homotopy cartesian object-to-colimit squares.
pub fn verify_special_diagrams(f: &DiagramMap, case: SpecialCase, options: &HarnessOptions) -> Result<HarnessReport> {
    f.check()?;
    let mut hyps = vec![side_condition(f, case)?];
    let shape = f.shape();
    for i in 0..shape.num_objects() {
        let r = is_sharp(&f.components[i], &options.cartesian.sharp)?;
        hyps.push(check(format!("component at {} is sharp", shape.objects()[i]), from_sharpness(r.verdict)));
    }
    for (name, sq) in naturality_squares(f)? {
        hyps.push(check(format!("naturality square at {name} is homotopy cartesian"), cartesian_verdict(&sq, &options.cartesian)?));
    }
    let cx = colimit(&f.source)?;
    let cy = colimit(&f.target)?;
    let cf = colimit_map(f, &cx, &cy)?;
    let mut concls = vec![check("map of colimits is sharp", from_sharpness(is_sharp(&cf, &options.cartesian.sharp)?.verdict))];
    for (name, sq) in object_to_colimit_squares(f)? {
        concls.push(check(format!("square to colimit at {name} is homotopy cartesian"), cartesian_verdict(&sq, &options.cartesian)?));
    }
    Ok(HarnessReport::new(hyps, concls))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HornGluingReport {
    pub harness: HarnessReport,
    /// `Q` agrees with the colimit of the pulled-back horn pieces.
    pub horn_colimit_agrees: bool,
    pub horn_cells: Vec<usize>,
    pub simplex_cells: Vec<usize>,
}

/// For `f: X -> Y` and an n-simplex `y` of `Y`: if every `P_δ -> P` is a
/// weak equivalence, then so is `Q -> P`, where `P`, `P_δ` and `Q` are the
/// pullbacks of `f` to `Δ[n]`, `Δ[m]` along `δ`, and `Λ^k[n]`.
pub fn verify_horn_gluing(f: &SimplicialMap, y: &SimplexRef, k: usize, options: &HarnessOptions) -> Result<HornGluingReport> {
    let n = y.dim();
    if k > n || n == 0 {
        return Err(Error::Precondition(format!("no horn Λ^{k}[{n}]")));
    }
    let delta: SSet = Arc::new(standard_simplex(n));
    let chi = characteristic_map_from(&delta, f.target(), y);
    let p = fiber_product(f, &chi)?;
    let mut hyps = Vec::new();
    for m in 0..=n {
        for op in Operator::all_monotone(m, n) {
            let p_d = fiber_product(&p.right, &standard_map(&op))?;
            let cert = certify_raised(&p_d.left, &options.certify)?;
            hyps.push(check(format!("pullback along {:?} is a weak equivalence", op.values().collect::<Vec<_>>()), cert.verdict));
        }
    }
    let lambda: SSet = Arc::new(horn(n, k)?);
    let into = SimplicialMap::from_fn_unchecked(lambda.clone(), delta.clone(), |c| {
        SimplexRef::cell(delta.find(lambda.name(c)).expect("horn cells are simplex cells"))
    });
    let q = fiber_product(f, &into.then_unchecked(&chi))?;
    let j = p.induced(&q.left, &q.right.then_unchecked(&into))?;
    let cert = certify_raised(&j, &options.certify)?;
    let horn_colimit_agrees = horn_pieces_agree(f, &chi, &delta, k, &q)?;
    Ok(HornGluingReport {
        harness: HarnessReport::new(hyps, vec![check("horn pullback is a weak equivalence", cert.verdict)]),
        horn_colimit_agrees,
        horn_cells: q.object.cell_counts(),
        simplex_cells: p.object.cell_counts(),
    })
}

/// `Q` as the colimit over proper subsets `T` of `{0..n} \ {k}` of the
/// pullbacks to the faces spanned by `T ∪ {k}`.
fn horn_pieces_agree(
    f: &SimplicialMap,
    chi: &SimplicialMap,
    delta: &SSet,
    k: usize,
    q: &crate::product::FiberProduct,
) -> Result<bool> {
    let n = delta.max_dim();
    let others: Vec<usize> = (0..=n).filter(|&v| v != k).collect();
    let shape = Arc::new(FiniteCategory::subset_poset(n, true));
    let masks = shape.subset_shape().unwrap().masks.clone();
    let vertex_mask = |t: usize| {
        others.iter().enumerate().filter(|(b, _)| t & (1 << b) != 0).fold(1usize << k, |m, (_, &v)| m | (1 << v))
    };
    let faces: Vec<SimplicialMap> = masks
        .iter()
        .map(|&t| {
            let vm = vertex_mask(t);
            crate::map::subcomplex(delta, delta.cells().filter(|&c| simplex_cell_mask(delta, c) & !vm == 0))
        })
        .collect();
    let pieces: Vec<crate::product::FiberProduct> =
        faces.iter().map(|face| fiber_product(f, &face.then_unchecked(chi))).collect::<Result<_>>()?;
    let maps = shape
        .non_identity_arrows()
        .map(|a| {
            let (s, t) = (shape.arrow(a).src, shape.arrow(a).dst);
            let back: HashMap<CellId, CellId> = faces[t].source().cells().map(|c| (faces[t].on_cell(c).cell, c)).collect();
            let face_map = SimplicialMap::from_fn_unchecked(faces[s].source().clone(), faces[t].source().clone(), |c| {
                SimplexRef::cell(back[&faces[s].on_cell(c).cell])
            });
            pieces[t].induced(&pieces[s].left, &pieces[s].right.then_unchecked(&face_map))
        })
        .collect::<Result<Vec<_>>>()?;
    let objects: Vec<SSet> = pieces.iter().map(|p| p.object.clone()).collect();
    let g = Diagram::new(shape, objects, maps)?;
    let all: Vec<usize> = (0..masks.len()).collect();
    let c = colimit_over(&g, &all)?;
    // Each piece maps to Q through its face of the horn.
    let horn_back: HashMap<String, CellId> = {
        let lambda = q.right.target();
        lambda.cells().map(|c| (lambda.name(c).to_string(), c)).collect()
    };
    let lambda = q.right.target().clone();
    let legs = pieces
        .iter()
        .zip(&faces)
        .map(|(piece, face)| {
            let to_horn = SimplicialMap::from_fn_unchecked(face.source().clone(), lambda.clone(), |c| {
                SimplexRef::cell(horn_back[delta.name(face.on_cell(c).cell)])
            });
            q.induced(&piece.left, &piece.right.then_unchecked(&to_horn))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(c.induced(&legs, &q.object)?.is_iso())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::product;
    use crate::standard::*;

    #[test]
    fn horn_gluing_on_a_projection() {
        let k: SSet = Arc::new(sphere(2));
        let d2: SSet = Arc::new(standard_simplex(2));
        let p = product(&k, &d2).unwrap();
        let top = SimplexRef::cell(CellId::new(2, 0));
        let r = verify_horn_gluing(&p.right, &top, 1, &HarnessOptions::default()).unwrap();
        assert!(r.harness.passed(), "{r:?}");
        assert!(r.horn_colimit_agrees);
    }

    fn bundles() -> Vec<(&'static str, DiagramMap)> {
        use crate::fixtures::*;
        let k: SSet = Arc::new(standard_simplex(1));
        let d2: SSet = Arc::new(standard_simplex(2));
        vec![
            ("cone span", trivial_bundle(&cone_span(), &k).unwrap()),
            ("skeleta", trivial_bundle(&skeleton_chain(&d2), &k).unwrap()),
            ("proper subsets", trivial_bundle(&triangle_boundary_poset(), &k).unwrap()),
        ]
    }

    #[test]
    fn hocolim_theorem_on_trivial_bundles() {
        for (name, f) in bundles() {
            for part in [1, 2] {
                let t = std::time::Instant::now();
                let r = verify_thm_hocolims(&f, part, &HarnessOptions::default()).unwrap();
                assert!(r.passed(), "{name} part {part}: {r:?}");
                eprintln!("{name} part {part}: {:?}", t.elapsed());
            }
        }
    }

    #[test]
    fn special_diagrams_on_trivial_bundles() {
        let cases = [SpecialCase::Span, SpecialCase::Chain, SpecialCase::ProperSubsets];
        for ((name, f), case) in bundles().into_iter().zip(cases) {
            let r = verify_special_diagrams(&f, case, &HarnessOptions::default()).unwrap();
            assert!(r.passed(), "{name}: {r:?}");
        }
    }

    #[test]
    fn identity_map_passes_trivially() {
        let d = crate::fixtures::cone_span();
        let r = verify_thm_hocolims(&DiagramMap::identity(&d), 2, &HarnessOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
