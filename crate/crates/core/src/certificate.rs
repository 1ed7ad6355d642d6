//! Three-valued weak-equivalence certificates.
//!
//! Refutations rest on `π0` or integral homology and are always sound.
//! Certification needs homology to agree and one more argument: the map is
//! an isomorphism, the target collapses onto the image, both sides are
//! simply connected, every fiber over a simplex is contractible, or the
//! caller vouches for simple connectivity.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fundamental::{collapses_onto_image, is_collapsible, is_simply_connected};
use crate::homology::{components, homology, mapping_cone, HomologyGroup};
use crate::map::{characteristic_map, SSet, SimplicialMap};
use crate::product::fiber_product;
use crate::sset::{FiniteSimplicialSet, SimplexRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Refuted,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Isomorphism,
    Collapse,
    SimplyConnected,
    ContractibleFibers,
    AssertedSimplyConnected,
    /// Homology and `π1` agree below a truncation degree.
    Truncated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Assumption {
    SimplyConnectedAsserted,
    /// Only degrees below the bound were compared.
    TruncatedBelow(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi0Evidence {
    pub source_components: usize,
    pub target_components: usize,
    /// Component of the target receiving each source component.
    pub component_map: Vec<usize>,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeEvidence {
    pub degree: usize,
    pub source: HomologyGroup,
    pub target: HomologyGroup,
    /// Homology of the mapping cone in this degree; the map is an
    /// isomorphism in degree n when the cone vanishes in n and n + 1.
    pub cone: HomologyGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Pi0 { source_components: usize, target_components: usize },
    GroupMismatch { degree: usize, source: HomologyGroup, target: HomologyGroup },
    ConeHomology { degree: usize, group: HomologyGroup },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakEquivalenceCertificate {
    pub verdict: Verdict,
    pub route: Option<Route>,
    pub pi0: Pi0Evidence,
    pub homology: Vec<DegreeEvidence>,
    pub assumptions: Vec<Assumption>,
    pub degree_bound: usize,
    pub witnesses: Vec<Witness>,
}

impl WeakEquivalenceCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn is_refuted(&self) -> bool {
        self.verdict == Verdict::Refuted
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CertifyOptions {
    pub simply_connected_assertion: bool,
    pub degree_bound: Option<usize>,
}

fn dim_of(x: &FiniteSimplicialSet) -> usize {
    if x.is_empty() {
        0
    } else {
        x.max_dim()
    }
}

pub fn pi0_evidence(f: &SimplicialMap) -> Pi0Evidence {
    let (ns, cs) = components(f.source());
    let (nt, ct) = components(f.target());
    let mut component_map = vec![usize::MAX; ns];
    for v in f.source().vertices() {
        component_map[cs[v.index()]] = ct[f.on_cell(v).cell.index()];
    }
    let hit: HashSet<usize> = component_map.iter().copied().collect();
    let bijective = ns == nt && hit.len() == nt;
    Pi0Evidence { source_components: ns, target_components: nt, component_map, bijective }
}

/// `π0` and homology evidence up to `bound`, without choosing a verdict.
/// `cone_limit` caps the cone degrees inspected for refutation.
fn evidence(f: &SimplicialMap, bound: usize, cone_limit: usize) -> (Pi0Evidence, Vec<DegreeEvidence>, Vec<Witness>) {
    let pi0 = pi0_evidence(f);
    let mut witnesses = Vec::new();
    if !pi0.bijective {
        witnesses.push(Witness::Pi0 {
            source_components: pi0.source_components,
            target_components: pi0.target_components,
        });
    }
    let hx = homology(f.source(), bound);
    let hy = homology(f.target(), bound);
    let hc = mapping_cone(f).homology(bound + 1);
    let mut rows = Vec::new();
    for n in 0..=bound {
        if hx[n] != hy[n] {
            witnesses.push(Witness::GroupMismatch { degree: n, source: hx[n].clone(), target: hy[n].clone() });
        }
        rows.push(DegreeEvidence { degree: n, source: hx[n].clone(), target: hy[n].clone(), cone: hc[n].clone() });
    }
    for (n, g) in hc.iter().enumerate().take(cone_limit + 1) {
        if !g.is_zero() {
            witnesses.push(Witness::ConeHomology { degree: n, group: g.clone() });
        }
    }
    (pi0, rows, witnesses)
}

/// Certifies `x -> Δ[0]` using only non-recursive routes.
pub fn is_certified_contractible(x: &FiniteSimplicialSet) -> bool {
    if x.is_empty() {
        return false;
    }
    if is_collapsible(x) {
        return true;
    }
    let (k, _) = components(x);
    let top = dim_of(x);
    k == 1 && homology(x, top).iter().skip(1).all(HomologyGroup::is_zero) && is_simply_connected(x)
}

/// Whether the pullback of `f` along every nondegenerate simplex of the
/// target is certified contractible.
fn fibers_contractible(f: &SimplicialMap) -> Result<bool> {
    let y = f.target();
    for c in y.cells() {
        let chi = characteristic_map(y, &SimplexRef::cell(c));
        let p = fiber_product(f, &chi)?;
        if !is_certified_contractible(&p.object) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`certify_weak_equivalence`] with the degree bound raised to the
/// dimension where it falls short.
pub fn certify_raised(f: &SimplicialMap, options: &CertifyOptions) -> Result<WeakEquivalenceCertificate> {
    let need = dim_of(f.source()).max(dim_of(f.target()));
    let mut opts = *options;
    opts.degree_bound = opts.degree_bound.map(|b| b.max(need));
    certify_weak_equivalence(f, &opts)
}

pub fn certify_weak_equivalence(f: &SimplicialMap, options: &CertifyOptions) -> Result<WeakEquivalenceCertificate> {
    let need = dim_of(f.source()).max(dim_of(f.target()));
    let bound = options.degree_bound.unwrap_or(need);
    if bound < need {
        return Err(Error::Precondition(format!("degree bound {bound} is below the dimension {need}")));
    }
    let (pi0, homology, witnesses) = evidence(f, bound, bound + 1);
    let mut cert = WeakEquivalenceCertificate {
        verdict: Verdict::Indeterminate,
        route: None,
        pi0,
        homology,
        assumptions: Vec::new(),
        degree_bound: bound,
        witnesses,
    };
    if !cert.witnesses.is_empty() {
        cert.verdict = Verdict::Refuted;
        return Ok(cert);
    }
    let route = if f.is_iso() {
        Some(Route::Isomorphism)
    } else if collapses_onto_image(f) {
        Some(Route::Collapse)
    } else if is_simply_connected(f.source()) && is_simply_connected(f.target()) {
        Some(Route::SimplyConnected)
    } else if fibers_contractible(f)? {
        Some(Route::ContractibleFibers)
    } else if options.simply_connected_assertion {
        cert.assumptions.push(Assumption::SimplyConnectedAsserted);
        Some(Route::AssertedSimplyConnected)
    } else {
        None
    };
    if route.is_some() {
        cert.verdict = Verdict::Certified;
        cert.route = route;
    }
    Ok(cert)
}

/// Compares only degrees below `t`. The map must be mono; `π1` is checked
/// by simplifying the target's presentation relative to the image.
pub fn certify_truncated(f: &SimplicialMap, t: usize) -> WeakEquivalenceCertificate {
    let bound = t.saturating_sub(1);
    let (pi0, homology, mut witnesses) = evidence(f, bound, bound);
    // Cone vanishing below t gives isos below t - 1 and a surjection in
    // degree t - 1; equal finitely generated groups make that an iso too.
    witnesses.retain(|w| !matches!(w, Witness::ConeHomology { degree, .. } if *degree >= t));
    let mut cert = WeakEquivalenceCertificate {
        verdict: Verdict::Indeterminate,
        route: None,
        pi0,
        homology,
        assumptions: vec![Assumption::TruncatedBelow(t)],
        degree_bound: bound,
        witnesses,
    };
    if !cert.witnesses.is_empty() {
        cert.verdict = Verdict::Refuted;
    } else if t < 2 || (f.is_mono() && crate::fundamental::is_pi1_iso_onto(f.target(), &f.image_cells())) {
        cert.verdict = Verdict::Certified;
        cert.route = Some(Route::Truncated);
    }
    cert
}

/// Certificate for `x -> Δ[0]`.
pub fn certify_contractible(x: &SSet, options: &CertifyOptions) -> Result<WeakEquivalenceCertificate> {
    certify_weak_equivalence(&SimplicialMap::terminal(Arc::clone(x)), options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::*;

    fn arc(x: FiniteSimplicialSet) -> SSet {
        Arc::new(x)
    }

    #[test]
    fn identity_and_collapse_certify() {
        let x = arc(rp2());
        let c = certify_weak_equivalence(&SimplicialMap::identity(x), &CertifyOptions::default()).unwrap();
        assert_eq!(c.route, Some(Route::Isomorphism));
        let c = certify_contractible(&arc(standard_simplex(3)), &CertifyOptions::default()).unwrap();
        assert!(c.is_certified());
    }

    #[test]
    fn circle_to_point_is_refuted() {
        let c = certify_contractible(&arc(circle()), &CertifyOptions::default()).unwrap();
        assert!(c.is_refuted());
        assert!(c.witnesses.iter().any(|w| matches!(w, Witness::GroupMismatch { degree: 1, .. })));
    }

    #[test]
    fn bound_below_dimension_is_an_error() {
        let opts = CertifyOptions { degree_bound: Some(1), ..Default::default() };
        assert!(certify_contractible(&arc(standard_simplex(2)), &opts).is_err());
    }
}
