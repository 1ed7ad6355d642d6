//! The skeletal filtration of a diagonal and latching objects.
//!
//! `F_n` consists of the diagonal simplices that come from levels `<= n`
//! through a surjective operator. It is obtained from `F_{n-1}` by
//! attaching `X(n) × Δ[n]` along `X(n) × ∂Δ[n] ∪ L_{n-1}X × Δ[n]`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::simplicial::{diagonal, Diagonal, SimplicialObject};
use crate::category::FiniteCategory;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::limits::{colimit, is_pushout_square};
use crate::map::{subcomplex, SSet, SimplicialMap};
use crate::operator::Operator;
use crate::product::product;
use crate::sset::{CellId, SimplexRef};
use crate::standard::{simplex_cell_mask, standard_simplex};

/// Smallest `k` with the level-`m` simplex `s` in the image of some `X(σ)`,
/// `σ: [m] -> [k]` surjective.
fn horizontal_level(x: &SimplicialObject, m: usize, s: &SimplexRef) -> usize {
    let mut k = m;
    let mut cur = s.clone();
    'outer: while k > 0 {
        for i in 0..k {
            let down = x.face(k, i).apply(&cur);
            if x.degeneracy(k - 1, i).apply(&down) == cur {
                cur = down;
                k -= 1;
                continue 'outer;
            }
        }
        break;
    }
    k
}

/// A map into `x.target()` factored through the subcomplex `incl`.
fn corestrict(f: &SimplicialMap, incl: &SimplicialMap) -> Option<SimplicialMap> {
    let back: HashMap<CellId, CellId> = incl.source().cells().map(|c| (incl.on_cell(c).cell, c)).collect();
    let mut ok = true;
    let m = SimplicialMap::from_fn_unchecked(f.source().clone(), incl.source().clone(), |c| {
        let s = f.on_cell(c);
        match back.get(&s.cell) {
            Some(&b) => SimplexRef::new(b, s.degeneracy.clone()),
            None => {
                ok = false;
                SimplexRef::cell(CellId::new(0, 0))
            }
        }
    });
    ok.then_some(m)
}

/// `L_{n-1}X ⊂ X(n)`: the union of the images of `s_0, ..., s_{n-1}`.
pub fn latching_object(x: &SimplicialObject, n: usize) -> Result<SimplicialMap> {
    if n == 0 || n > x.top() {
        return Err(Error::Precondition(format!("latching object needs 1 <= n <= {}", x.top())));
    }
    let mut cells = HashSet::new();
    for i in 0..n {
        cells.extend(x.degeneracy(n - 1, i).image_cells());
    }
    Ok(subcomplex(x.level(n), cells))
}

/// The operator `[#T'] -> [#T]` attached to `T ⊂ T'`.
fn inclusion_operator(t: usize, t2: usize) -> Operator {
    let elems: Vec<usize> = (0..usize::BITS as usize).filter(|b| t2 & (1 << b) != 0).collect();
    let mut values = vec![0];
    values.extend(elems.iter().map(|&e| (t & ((2usize << e) - 1)).count_ones() as usize));
    Operator::new(&values, t.count_ones() as usize).expect("monotone surjection")
}

/// `T ↦ X(#T)` on the proper subsets of `{1..n}`.
pub fn latching_diagram(x: &SimplicialObject, n: usize) -> Result<Diagram> {
    if n == 0 || n > x.top() {
        return Err(Error::Precondition(format!("latching diagram needs 1 <= n <= {}", x.top())));
    }
    let shape = Arc::new(FiniteCategory::subset_poset(n, true));
    let masks = shape.subset_shape().expect("subset poset").masks.clone();
    let objects: Vec<SSet> = masks.iter().map(|m| x.level(m.count_ones() as usize).clone()).collect();
    let maps = shape
        .non_identity_arrows()
        .map(|a| x.act(&inclusion_operator(masks[shape.arrow(a).src], masks[shape.arrow(a).dst])))
        .collect();
    Diagram::new(shape, objects, maps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatchingReport {
    pub n: usize,
    pub union_cells: Vec<usize>,
    pub colimit_cells: Vec<usize>,
    /// The colimit maps isomorphically onto the union of degeneracy images.
    pub agree: bool,
}

/// Compares the two descriptions of `L_{n-1}X`.
pub fn verify_latching(x: &SimplicialObject, n: usize) -> Result<LatchingReport> {
    let union = latching_object(x, n)?;
    let d = latching_diagram(x, n)?;
    let c = colimit(&d)?;
    let full = (1usize << n) - 1;
    let masks = &d.shape().subset_shape().unwrap().masks;
    let legs: Vec<SimplicialMap> = masks.iter().map(|&m| x.act(&inclusion_operator(m, full))).collect();
    let u = c.induced(&legs)?;
    let agree = u.is_mono() && u.image_cells() == union.image_cells();
    Ok(LatchingReport { n, union_cells: union.source().cell_counts(), colimit_cells: c.object.cell_counts(), agree })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attachment {
    /// `F_0 ≅ X(0)`.
    Base,
    /// The square attaching `X(n) × Δ[n]` was built and checked.
    Pushout,
    /// Every simplex of `X(n)` is degenerate, so nothing is attached.
    Degenerate,
}

#[derive(Clone, Debug)]
pub struct FiltrationStage {
    pub n: usize,
    /// `F_n` as a subcomplex of the diagonal.
    pub inclusion: SimplicialMap,
    pub attachment: Attachment,
    /// Corner, its inclusion into `X(n) × Δ[n]`, and the attaching map.
    pub corner: Option<SimplicialMap>,
    pub attaching: Option<SimplicialMap>,
    pub characteristic: Option<SimplicialMap>,
    pub verified: bool,
}

pub struct Filtration {
    pub diagonal: Diagonal,
    levels: Vec<Vec<usize>>,
}

impl Filtration {
    /// The diagonal through the top tabulated level.
    pub fn new(x: &SimplicialObject) -> Result<Self> {
        let diagonal = diagonal(x, x.top())?;
        let levels = diagonal
            .object
            .cell_counts()
            .iter()
            .enumerate()
            .map(|(m, &k)| {
                (0..k)
                    .map(|i| {
                        let (lvl, s) = diagonal.key(CellId::new(m, i));
                        horizontal_level(x, *lvl, s)
                    })
                    .collect()
            })
            .collect();
        Ok(Filtration { diagonal, levels })
    }

    pub fn stage_inclusion(&self, n: usize) -> SimplicialMap {
        let cells = self.diagonal.object.cells().filter(|c| self.levels[c.dim()][c.index()] <= n);
        subcomplex(&self.diagonal.object, cells)
    }

    /// `F_n` with the square that builds it from `F_{n-1}`.
    pub fn stage(&self, x: &SimplicialObject, n: usize) -> Result<FiltrationStage> {
        let inclusion = self.stage_inclusion(n);
        let dim_n = if x.level(n).is_empty() { 0 } else { x.level(n).max_dim() };
        let latching = if n == 0 { None } else { Some(latching_object(x, n)?) };
        let degenerate = latching.as_ref().is_some_and(|l| l.is_epi());
        if degenerate && n + dim_n > x.top() {
            let prev = self.stage_inclusion(n - 1);
            let verified = prev.image_cells() == inclusion.image_cells();
            return Ok(FiltrationStage {
                n,
                inclusion,
                attachment: Attachment::Degenerate,
                corner: None,
                attaching: None,
                characteristic: None,
                verified,
            });
        }
        if n + dim_n > x.top() {
            return Err(Error::DimensionCap { dim: n + dim_n, cap: x.top() });
        }
        let delta: SSet = Arc::new(standard_simplex(n));
        let p = product(x.level(n), &delta)?;
        let op_of = |a: &SimplexRef| {
            let mask = simplex_cell_mask(&delta, a.cell);
            let verts: Vec<usize> = (0..=n).filter(|v| mask & (1 << v) != 0).collect();
            Operator::new(&verts, n).unwrap().compose(&a.degeneracy)
        };
        let to_diag = SimplicialMap::from_fn_unchecked(p.object.clone(), self.diagonal.object.clone(), |c| {
            let s = p.left.on_cell(c);
            let a = op_of(p.right.on_cell(c));
            let d = a.domain_dim();
            self.diagonal.lookup(d, &x.act_on(&a, s)).expect("diagonal tabulated far enough").clone()
        });
        let characteristic =
            corestrict(&to_diag, &inclusion).ok_or_else(|| Error::Precondition("attached cells leave F_n".into()))?;
        if n == 0 {
            let verified = characteristic.is_iso();
            return Ok(FiltrationStage {
                n,
                inclusion,
                attachment: Attachment::Base,
                corner: None,
                attaching: None,
                characteristic: Some(characteristic),
                verified,
            });
        }
        let in_latching = latching.unwrap().image_cells();
        let corner_cells = p.object.cells().filter(|&c| {
            let s = p.left.on_cell(c);
            in_latching.contains(&s.cell) || !op_of(p.right.on_cell(c)).is_surjective()
        });
        let corner = subcomplex(&p.object, corner_cells);
        let prev = self.stage_inclusion(n - 1);
        let attaching = corestrict(&corner.then_unchecked(&to_diag), &prev)
            .ok_or_else(|| Error::Precondition("corner does not land in the previous stage".into()))?;
        let step = corestrict(&prev, &inclusion).expect("stages are nested");
        let verified = is_pushout_square(&corner, &attaching, &characteristic, &step)?;
        Ok(FiltrationStage {
            n,
            inclusion,
            attachment: Attachment::Pushout,
            corner: Some(corner),
            attaching: Some(attaching),
            characteristic: Some(characteristic),
            verified,
        })
    }
}

/// `F_n` of the diagonal with its attaching square.
pub fn diagonal_filtration(x: &SimplicialObject, n: usize) -> Result<FiltrationStage> {
    if n > x.top() {
        return Err(Error::DimensionCap { dim: n, cap: x.top() });
    }
    Filtration::new(x)?.stage(x, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageSummary {
    pub n: usize,
    pub cells: Vec<usize>,
    pub attachment: Attachment,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub stages: Vec<StageSummary>,
    /// The colimit of `F_0 ⊂ F_1 ⊂ ...` maps isomorphically to the diagonal.
    pub reconstructs: bool,
    pub holds: bool,
}

/// Builds every stage, checks each square, and compares the colimit of the
/// stages with the diagonal.
pub fn verify_filtration(x: &SimplicialObject) -> Result<FiltrationReport> {
    let filt = Filtration::new(x)?;
    let stages: Vec<FiltrationStage> = (0..=x.top()).map(|n| filt.stage(x, n)).collect::<Result<_>>()?;
    let shape = Arc::new(FiniteCategory::chain(stages.len()));
    let objects: Vec<SSet> = stages.iter().map(|s| s.inclusion.source().clone()).collect();
    let maps = shape
        .non_identity_arrows()
        .map(|a| corestrict(&stages[shape.arrow(a).src].inclusion, &stages[shape.arrow(a).dst].inclusion).unwrap())
        .collect();
    let chain = Diagram::new(shape, objects, maps)?;
    let c = colimit(&chain)?;
    let legs: Vec<SimplicialMap> = stages.iter().map(|s| s.inclusion.clone()).collect();
    let reconstructs = c.induced(&legs)?.is_iso();
    let summaries: Vec<StageSummary> = stages
        .iter()
        .map(|s| StageSummary { n: s.n, cells: s.inclusion.source().cell_counts(), attachment: s.attachment, verified: s.verified })
        .collect();
    let holds = reconstructs && summaries.iter().all(|s| s.verified);
    Ok(FiltrationReport { stages: summaries, reconstructs, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::*;

    #[test]
    fn inclusion_operators_are_codegeneracies_on_maximal_subsets() {
        // {1,3} inside {1,2,3}: the second element is repeated.
        assert_eq!(inclusion_operator(0b101, 0b111).values().collect::<Vec<_>>(), vec![0, 1, 1, 2]);
        assert_eq!(inclusion_operator(0, 0b11).values().collect::<Vec<_>>(), vec![0, 0, 0]);
    }

    #[test]
    fn constant_object_filtration() {
        let k = Arc::new(circle());
        let x = SimplicialObject::constant(k.clone(), 3);
        let r = verify_filtration(&x).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(r.stages.iter().all(|s| s.cells == k.cell_counts()));
        for n in 1..=3 {
            let v = verify_latching(&x, n).unwrap();
            assert!(v.agree);
            assert_eq!(v.union_cells, k.cell_counts());
        }
    }

    fn suspension_span() -> Diagram {
        let s1 = Arc::new(circle());
        let t = SimplicialMap::terminal(s1.clone());
        let pt = t.target().clone();
        Diagram::new(Arc::new(FiniteCategory::span()), vec![pt.clone(), pt, s1], vec![t.clone(), t]).unwrap()
    }

    #[test]
    fn replacement_filtration() {
        let d = suspension_span();
        for top in [2, 3] {
            let r = crate::hocolim::simplicial_replacement(&d, top).unwrap();
            let rep = verify_filtration(&r.object).unwrap();
            assert!(rep.holds, "{rep:?}");
            // F_0 is the disjoint union of the values, and F_1 is everything.
            assert_eq!(rep.stages[0].cells, vec![3, 1]);
            assert_eq!(rep.stages[1].cells, rep.stages[top].cells);
        }
    }

    #[test]
    fn latching_of_a_discrete_replacement() {
        let d = Diagram::new(
            Arc::new(FiniteCategory::discrete(2)),
            vec![Arc::new(circle()), Arc::new(standard_simplex(1))],
            vec![],
        )
        .unwrap();
        let r = crate::hocolim::simplicial_replacement(&d, 2).unwrap();
        let v = verify_latching(&r.object, 1).unwrap();
        assert!(v.agree);
        assert_eq!(v.union_cells, vec![3, 2]);
    }
}
