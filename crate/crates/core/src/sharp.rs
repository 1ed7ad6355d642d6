//! Sharp maps and homotopy cartesian squares.
//!
//! `f: X -> Y` is checked one nondegenerate simplex `y: Δ[n] -> Y` at a
//! time: with `P_y = X ×_Y Δ[n]`, each vertex `v: Δ[0] -> Δ[n]` must make
//! `P_v = P_y ×_{Δ[n]} Δ[0] -> P_y` a weak equivalence.

use std::sync::Arc;

use serde::Serialize;

use crate::certificate::{certify_weak_equivalence, CertifyOptions, Verdict, WeakEquivalenceCertificate};
use crate::error::{Error, Result};
use crate::kan::{has_horn_lifts, LiftReport};
use crate::map::{characteristic_map_from, same_set, standard_map, SimplicialMap};
use crate::operator::Operator;
use crate::product::fiber_product;
use crate::sset::SimplexRef;
use crate::standard::standard_simplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sharpness {
    Sharp,
    NotSharp,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SharpOptions {
    /// Also check every monotone `δ: Δ[m] -> Δ[n]`, not only vertices.
    pub exhaustive: bool,
    pub certify: CertifyOptions,
}

#[derive(Clone, Debug, Serialize)]
pub struct SharpEntry {
    pub simplex: String,
    pub dim: usize,
    /// The operator `δ` as a value list; a single value is a vertex.
    pub delta: Vec<usize>,
    pub certificate: WeakEquivalenceCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct SharpnessReport {
    pub verdict: Sharpness,
    pub entries: Vec<SharpEntry>,
}

impl SharpnessReport {
    /// The first refuted comparison, if any.
    pub fn refutation(&self) -> Option<&SharpEntry> {
        self.entries.iter().find(|e| e.certificate.is_refuted())
    }
}

fn aggregate<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>) -> Sharpness {
    let mut all = true;
    for v in verdicts {
        match v {
            Verdict::Refuted => return Sharpness::NotSharp,
            Verdict::Indeterminate => all = false,
            Verdict::Certified => {}
        }
    }
    if all {
        Sharpness::Sharp
    } else {
        Sharpness::Indeterminate
    }
}

pub fn is_sharp(f: &SimplicialMap, options: &SharpOptions) -> Result<SharpnessReport> {
    let y = f.target();
    let mut entries = Vec::new();
    let top = if y.is_empty() { 0 } else { y.max_dim() };
    for n in 0..=top {
        let delta = Arc::new(standard_simplex(n));
        let deltas: Vec<Operator> = if options.exhaustive {
            (0..=n).flat_map(|m| Operator::all_monotone(m, n)).collect()
        } else {
            (0..=n).map(|v| Operator::constant(0, n, v)).collect()
        };
        for c in y.cells_of_dim(n) {
            let chi = characteristic_map_from(&delta, y, &SimplexRef::cell(c));
            let p_y = fiber_product(f, &chi)?;
            let to_delta = p_y.right.clone();
            for op in &deltas {
                let d = standard_map(op);
                let p_v = fiber_product(&to_delta, &d)?;
                let mut opts = options.certify;
                let need = p_v.object.cell_counts().len().max(p_y.object.cell_counts().len()).saturating_sub(1);
                opts.degree_bound = Some(opts.degree_bound.unwrap_or(0).max(need));
                let certificate = certify_weak_equivalence(&p_v.left, &opts)?;
                entries.push(SharpEntry { simplex: y.name(c).to_string(), dim: n, delta: op.values().collect(), certificate });
            }
        }
    }
    let verdict = aggregate(entries.iter().map(|e| &e.certificate.verdict));
    Ok(SharpnessReport { verdict, entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Leg {
    /// `X -> B`.
    Left,
    /// `Y -> B`.
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cartesianness {
    Cartesian,
    NotCartesian,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    SharpLeg,
    FibrationLeg,
}

/// A commuting square `P -> X -> B`, `P -> Y -> B`.
#[derive(Clone, Debug)]
pub struct Square {
    pub px: SimplicialMap,
    pub py: SimplicialMap,
    pub f: SimplicialMap,
    pub g: SimplicialMap,
}

impl Square {
    pub fn new(px: SimplicialMap, py: SimplicialMap, f: SimplicialMap, g: SimplicialMap) -> Result<Self> {
        let s = Square { px, py, f, g };
        s.check()?;
        Ok(s)
    }

    pub fn check(&self) -> Result<()> {
        if !same_set(self.px.source(), self.py.source())
            || !same_set(self.px.target(), self.f.source())
            || !same_set(self.py.target(), self.g.source())
            || !same_set(self.f.target(), self.g.target())
        {
            return Err(Error::NotComposable("square maps do not line up".into()));
        }
        if self.px.then_unchecked(&self.f) != self.py.then_unchecked(&self.g) {
            return Err(Error::Precondition("square does not commute".into()));
        }
        Ok(())
    }

    /// The strict pullback square of a cospan.
    pub fn pullback_of(f: &SimplicialMap, g: &SimplicialMap) -> Result<Self> {
        let pb = fiber_product(f, g)?;
        Ok(Square { px: pb.left, py: pb.right, f: f.clone(), g: g.clone() })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CartesianVerdict {
    pub verdict: Cartesianness,
    pub strategy: Option<Strategy>,
    pub leg: Leg,
    pub leg_sharpness: Option<Sharpness>,
    pub horn_check: Option<LiftReport>,
    pub comparison: Option<WeakEquivalenceCertificate>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CartesianOptions {
    pub sharp: SharpOptions,
    /// Horn dimension bound; defaults to one more than the largest dimension.
    pub horn_bound: Option<usize>,
}

pub fn is_homotopy_cartesian(square: &Square, leg: Leg, options: &CartesianOptions) -> Result<CartesianVerdict> {
    square.check()?;
    let leg_map = match leg {
        Leg::Left => &square.f,
        Leg::Right => &square.g,
    };
    let mut out = CartesianVerdict {
        verdict: Cartesianness::Indeterminate,
        strategy: None,
        leg,
        leg_sharpness: None,
        horn_check: None,
        comparison: None,
    };
    let report = is_sharp(leg_map, &options.sharp)?;
    out.leg_sharpness = Some(report.verdict);
    if report.verdict == Sharpness::Sharp {
        out.strategy = Some(Strategy::SharpLeg);
    } else {
        let dims = [leg_map.source(), leg_map.target()].iter().map(|x| x.cell_counts().len()).max().unwrap_or(1);
        let bound = options.horn_bound.unwrap_or(dims);
        let lifts = has_horn_lifts(leg_map, bound)?;
        if lifts.holds {
            out.strategy = Some(Strategy::FibrationLeg);
        }
        out.horn_check = Some(lifts);
    }
    if out.strategy.is_none() {
        return Ok(out);
    }
    let pb = fiber_product(&square.f, &square.g)?;
    let u = pb.induced(&square.px, &square.py)?;
    let need = u.source().cell_counts().len().max(u.target().cell_counts().len()).saturating_sub(1);
    let mut opts = options.sharp.certify;
    opts.degree_bound = Some(opts.degree_bound.unwrap_or(0).max(need));
    let cert = certify_weak_equivalence(&u, &opts)?;
    out.verdict = match cert.verdict {
        Verdict::Certified => Cartesianness::Cartesian,
        Verdict::Refuted => Cartesianness::NotCartesian,
        Verdict::Indeterminate => Cartesianness::Indeterminate,
    };
    out.comparison = Some(cert);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::SSet;
    use crate::product::product;
    use crate::standard::*;
    use crate::sset::CellId;

    fn arc(x: crate::FiniteSimplicialSet) -> SSet {
        Arc::new(x)
    }

    #[test]
    fn projections_are_sharp() {
        let p = product(&arc(circle()), &arc(standard_simplex(2))).unwrap();
        assert_eq!(is_sharp(&p.right, &SharpOptions::default()).unwrap().verdict, Sharpness::Sharp);
    }

    #[test]
    fn vertex_inclusion_is_not_sharp() {
        let d1 = arc(standard_simplex(1));
        let v = characteristic_map_from(&arc(point()), &d1, &SimplexRef::cell(CellId::new(0, 0)));
        let r = is_sharp(&v, &SharpOptions::default()).unwrap();
        assert_eq!(r.verdict, Sharpness::NotSharp);
        assert_eq!(r.refutation().unwrap().delta, vec![1]);
    }

    #[test]
    fn exhaustive_mode_agrees() {
        let p = product(&arc(discrete(2)), &arc(standard_simplex(2))).unwrap();
        let opts = SharpOptions { exhaustive: true, ..Default::default() };
        assert_eq!(is_sharp(&p.right, &opts).unwrap().verdict, Sharpness::Sharp);
    }

    #[test]
    fn circle_is_not_the_homotopy_pullback_of_points() {
        let pt = arc(point());
        let id = SimplicialMap::identity(pt.clone());
        let t = SimplicialMap::terminal(arc(circle()));
        let t = SimplicialMap::new(t.source().clone(), pt.clone(), t.assignment().to_vec()).unwrap();
        let sq = Square::new(t.clone(), t, id.clone(), id).unwrap();
        let v = is_homotopy_cartesian(&sq, Leg::Right, &CartesianOptions::default()).unwrap();
        assert_eq!(v.verdict, Cartesianness::NotCartesian);
    }
}
