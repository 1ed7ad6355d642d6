//! Presheaves and sheaves of simplicial sets on finite boolean algebras.
//!
//! The algebra is the power set of `{0..atoms}`; elements are bitmasks.
//! A presheaf is a sheaf exactly when each value is the product of the
//! values at the atoms below it, and sheafification takes that product.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::certificate::{certify_raised, CertifyOptions, Verdict, WeakEquivalenceCertificate};
use crate::diagram::{Diagram, DiagramMap};
use crate::error::{Error, Result};
use crate::hocolim::harness::{cartesian_verdict, Check, HarnessReport};
use crate::kan::{has_horn_lifts, has_rlp, LiftReport};
use crate::map::{same_set, subcomplex, SSet, SimplicialMap};
use crate::product::{fiber_product, product, FiberProduct};
use crate::sharp::{is_sharp, CartesianOptions, SharpOptions, Sharpness, SharpnessReport, Square};
use crate::sset::{CellId, FiniteSimplicialSet, SimplexRef};
use crate::standard::{boundary, point, standard_simplex};

pub type Element = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BooleanAlgebra {
    pub atoms: usize,
}

impl BooleanAlgebra {
    pub fn new(atoms: usize) -> Result<Self> {
        if atoms > 16 {
            return Err(Error::TooLarge(format!("{atoms} atoms")));
        }
        Ok(BooleanAlgebra { atoms })
    }

    pub fn top(&self) -> Element {
        ((1u64 << self.atoms) - 1) as Element
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        0..=self.top()
    }

    pub fn meet(&self, a: Element, b: Element) -> Element {
        a & b
    }

    pub fn join(&self, a: Element, b: Element) -> Element {
        a | b
    }

    pub fn complement(&self, a: Element) -> Element {
        !a & self.top()
    }

    pub fn leq(&self, a: Element, b: Element) -> bool {
        a & !b == 0
    }

    /// The atoms below `b`, as elements.
    pub fn atoms_below(&self, b: Element) -> Vec<Element> {
        (0..self.atoms).map(|i| 1 << i).filter(|&a| b & a != 0).collect()
    }

    /// Checks complement, De Morgan and distributivity on all elements.
    pub fn check_laws(&self) -> bool {
        let els: Vec<Element> = self.elements().collect();
        els.iter().all(|&a| {
            let c = self.complement(a);
            self.join(a, c) == self.top()
                && self.meet(a, c) == 0
                && els.iter().all(|&b| {
                    self.complement(self.join(a, b)) == self.meet(c, self.complement(b))
                        && self.complement(self.meet(a, b)) == self.join(c, self.complement(b))
                        && els.iter().all(|&d| {
                            self.meet(a, self.join(b, d)) == self.join(self.meet(a, b), self.meet(a, d))
                                && self.join(a, self.meet(b, d)) == self.meet(self.join(a, b), self.join(a, d))
                        })
                })
        })
    }
}

/// Pairwise disjoint nonzero parts whose join is `element`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub element: Element,
    pub parts: Vec<Element>,
}

impl Decomposition {
    pub fn is_valid(&self) -> bool {
        let mut seen: Element = 0;
        for &p in &self.parts {
            if p == 0 || p & seen != 0 {
                return false;
            }
            seen |= p;
        }
        seen == self.element
    }
}

/// Every decomposition of `b` into nonzero parts; `0` has the empty one.
pub fn decompositions(b: Element) -> Vec<Decomposition> {
    fn go(rest: Element, acc: &mut Vec<Element>, out: &mut Vec<Vec<Element>>) {
        if rest == 0 {
            out.push(acc.clone());
            return;
        }
        // The part holding the lowest remaining atom.
        let low = rest & rest.wrapping_neg();
        let others = rest & !low;
        let mut sub = others;
        loop {
            acc.push(low | sub);
            go(others & !sub, acc, out);
            acc.pop();
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    let mut out = Vec::new();
    go(b, &mut Vec::new(), &mut out);
    out.into_iter().map(|parts| Decomposition { element: b, parts }).collect()
}

/// A product of finitely many sets with its projections.
pub struct ProductFamily {
    pub object: SSet,
    pub projections: Vec<SimplicialMap>,
    stages: Vec<FiberProduct>,
}

impl ProductFamily {
    pub fn new(values: &[SSet]) -> Result<Self> {
        match values {
            [] => {
                let object: SSet = Arc::new(point());
                Ok(ProductFamily { object, projections: Vec::new(), stages: Vec::new() })
            }
            [x] => Ok(ProductFamily { object: x.clone(), projections: vec![SimplicialMap::identity(x.clone())], stages: Vec::new() }),
            _ => {
                let mut object = values[0].clone();
                let mut projections = vec![SimplicialMap::identity(object.clone())];
                let mut stages = Vec::new();
                for v in &values[1..] {
                    let p = product(&object, v)?;
                    projections = projections.iter().map(|q| p.left.then_unchecked(q)).collect();
                    projections.push(p.right.clone());
                    object = p.object.clone();
                    stages.push(p);
                }
                Ok(ProductFamily { object, projections, stages })
            }
        }
    }

    /// The map into the product with the given components.
    pub fn tuple(&self, source: &SSet, maps: &[SimplicialMap]) -> Result<SimplicialMap> {
        if maps.len() != self.projections.len() {
            return Err(Error::Precondition("wrong number of components".into()));
        }
        match maps {
            [] => {
                let v = CellId::new(0, 0);
                Ok(SimplicialMap::from_fn_unchecked(source.clone(), self.object.clone(), |c| {
                    SimplexRef::new(v, crate::operator::Operator::constant(c.dim(), 0, 0))
                }))
            }
            [m] => Ok(m.clone()),
            _ => {
                let mut acc = maps[0].clone();
                for (stage, m) in self.stages.iter().zip(&maps[1..]) {
                    acc = stage.induced(&acc, m)?;
                }
                Ok(acc)
            }
        }
    }
}

/// A presheaf of simplicial sets on a finite boolean algebra.
#[derive(Clone, Debug)]
pub struct Presheaf {
    pub algebra: BooleanAlgebra,
    values: Vec<SSet>,
    /// `(b, b')` with `b' <= b`, mapping `X(b) -> X(b')`.
    restrictions: HashMap<(Element, Element), SimplicialMap>,
}

impl Presheaf {
    /// Restrictions are requested for every pair `b' <= b`.
    pub fn from_fn(
        algebra: BooleanAlgebra,
        values: Vec<SSet>,
        mut restrict: impl FnMut(Element, Element) -> Result<SimplicialMap>,
    ) -> Result<Self> {
        if values.len() != algebra.top() as usize + 1 {
            return Err(Error::Precondition("one value per element is required".into()));
        }
        let mut restrictions = HashMap::new();
        for b in algebra.elements() {
            for b2 in algebra.elements().filter(|&e| algebra.leq(e, b)) {
                restrictions.insert((b, b2), restrict(b, b2)?);
            }
        }
        let x = Presheaf { algebra, values, restrictions };
        x.check()?;
        Ok(x)
    }

    pub fn check(&self) -> Result<()> {
        let alg = &self.algebra;
        for b in alg.elements() {
            let id = &self.restrictions[&(b, b)];
            if *id != SimplicialMap::identity(self.values[b as usize].clone()) {
                return Err(Error::Functoriality(format!("restriction from {b:#b} to itself is not the identity")));
            }
            for b2 in alg.elements().filter(|&e| alg.leq(e, b)) {
                let r = &self.restrictions[&(b, b2)];
                if !same_set(r.source(), &self.values[b as usize]) || !same_set(r.target(), &self.values[b2 as usize]) {
                    return Err(Error::Functoriality(format!("restriction {b:#b} -> {b2:#b} has the wrong endpoints")));
                }
                for b3 in alg.elements().filter(|&e| alg.leq(e, b2)) {
                    if r.then_unchecked(&self.restrictions[&(b2, b3)]) != self.restrictions[&(b, b3)] {
                        return Err(Error::Functoriality(format!("restrictions {b:#b} -> {b2:#b} -> {b3:#b} do not compose")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, b: Element) -> &SSet {
        &self.values[b as usize]
    }

    pub fn restriction(&self, b: Element, b2: Element) -> &SimplicialMap {
        &self.restrictions[&(b, b2)]
    }

    /// `X(b) = ∏_{a <= b} K_a` with projections as restrictions.
    pub fn atom_family(atoms: &[SSet]) -> Result<Self> {
        let algebra = BooleanAlgebra::new(atoms.len())?;
        let families: Vec<ProductFamily> = algebra
            .elements()
            .map(|b| ProductFamily::new(&algebra.atoms_below(b).iter().map(|a| atoms[a.trailing_zeros() as usize].clone()).collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
        let values = families.iter().map(|f| f.object.clone()).collect();
        Self::from_fn(algebra, values, |b, b2| {
            let below = algebra.atoms_below(b);
            let comps: Vec<SimplicialMap> = algebra
                .atoms_below(b2)
                .iter()
                .map(|a| families[b as usize].projections[below.iter().position(|x| x == a).unwrap()].clone())
                .collect();
            families[b2 as usize].tuple(&families[b as usize].object, &comps)
        })
    }

    /// The constant presheaf with identity restrictions.
    pub fn constant(algebra: BooleanAlgebra, k: &SSet) -> Result<Self> {
        let values = vec![k.clone(); algebra.top() as usize + 1];
        Self::from_fn(algebra, values, |_, _| Ok(SimplicialMap::identity(k.clone())))
    }
}

/// `y(b)`: a point below `b`, empty elsewhere.
pub fn representable(algebra: BooleanAlgebra, b: Element) -> Result<Presheaf> {
    let pt: SSet = Arc::new(point());
    let empty: SSet = Arc::new(FiniteSimplicialSet::empty());
    let values = algebra.elements().map(|e| if algebra.leq(e, b) { pt.clone() } else { empty.clone() }).collect();
    Presheaf::from_fn(algebra, values, |e, e2| {
        Ok(if algebra.leq(e, b) {
            SimplicialMap::identity(pt.clone())
        } else if algebra.leq(e2, b) {
            SimplicialMap::initial(pt.clone())
        } else {
            SimplicialMap::identity(empty.clone())
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SheafReport {
    pub is_sheaf: bool,
    pub failure: Option<Decomposition>,
}

fn comparison(x: &Presheaf, d: &Decomposition) -> Result<bool> {
    let values: Vec<SSet> = d.parts.iter().map(|&p| x.value(p).clone()).collect();
    let fam = ProductFamily::new(&values)?;
    let maps: Vec<SimplicialMap> = d.parts.iter().map(|&p| x.restriction(d.element, p).clone()).collect();
    Ok(fam.tuple(x.value(d.element), &maps)?.is_iso())
}

/// Checks `X(b) -> ∏ X(a)` over the atoms below each `b`, including the
/// empty product at `0`.
pub fn is_sheaf(x: &Presheaf) -> Result<SheafReport> {
    for b in x.algebra.elements() {
        let d = Decomposition { element: b, parts: x.algebra.atoms_below(b) };
        if !comparison(x, &d)? {
            return Ok(SheafReport { is_sheaf: false, failure: Some(d) });
        }
    }
    Ok(SheafReport { is_sheaf: true, failure: None })
}

/// The same criterion over every decomposition of every element.
pub fn is_sheaf_all_decompositions(x: &Presheaf) -> Result<SheafReport> {
    for b in x.algebra.elements() {
        for d in decompositions(b) {
            if !comparison(x, &d)? {
                return Ok(SheafReport { is_sheaf: false, failure: Some(d) });
            }
        }
    }
    Ok(SheafReport { is_sheaf: true, failure: None })
}

/// A natural transformation of presheaves on the same algebra.
#[derive(Clone, Debug)]
pub struct PresheafMap {
    pub source: Presheaf,
    pub target: Presheaf,
    pub components: Vec<SimplicialMap>,
}

impl PresheafMap {
    pub fn new(source: Presheaf, target: Presheaf, components: Vec<SimplicialMap>) -> Result<Self> {
        let m = PresheafMap { source, target, components };
        m.check()?;
        Ok(m)
    }

    pub fn check(&self) -> Result<()> {
        let alg = self.source.algebra;
        if alg != self.target.algebra || self.components.len() != alg.top() as usize + 1 {
            return Err(Error::Functoriality("presheaf map tables do not match".into()));
        }
        for b in alg.elements() {
            let c = &self.components[b as usize];
            if !same_set(c.source(), self.source.value(b)) || !same_set(c.target(), self.target.value(b)) {
                return Err(Error::Functoriality(format!("component at {b:#b} has the wrong endpoints")));
            }
            for b2 in alg.elements().filter(|&e| alg.leq(e, b)) {
                let lhs = self.source.restriction(b, b2).then_unchecked(&self.components[b2 as usize]);
                if lhs != c.then_unchecked(self.target.restriction(b, b2)) {
                    return Err(Error::Functoriality(format!("naturality fails for {b:#b} -> {b2:#b}")));
                }
            }
        }
        Ok(())
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|c| c.is_iso())
    }

    /// Atomwise maps `f_a` assembled into a map of atom families.
    pub fn from_atoms(maps: &[SimplicialMap]) -> Result<Self> {
        let source = Presheaf::atom_family(&maps.iter().map(|m| m.source().clone()).collect::<Vec<_>>())?;
        let target = Presheaf::atom_family(&maps.iter().map(|m| m.target().clone()).collect::<Vec<_>>())?;
        let alg = source.algebra;
        let components = alg
            .elements()
            .map(|b| {
                let below = alg.atoms_below(b);
                let tfam = ProductFamily::new(&below.iter().map(|&a| target.value(a).clone()).collect::<Vec<_>>())?;
                let comps: Vec<SimplicialMap> =
                    below.iter().map(|&a| source.restriction(b, a).then_unchecked(&maps[a.trailing_zeros() as usize])).collect();
                let m = tfam.tuple(source.value(b), &comps)?;
                Ok(SimplicialMap::from_fn_unchecked(m.source().clone(), target.value(b).clone(), |c| m.on_cell(c).clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, components)
    }

    /// The components at the atoms.
    pub fn atom_components(&self) -> Vec<SimplicialMap> {
        self.source.algebra.atoms_below(self.source.algebra.top()).iter().map(|&a| self.components[a as usize].clone()).collect()
    }
}

pub struct Sheafification {
    pub sheaf: Presheaf,
    /// `η: X -> LX`.
    pub unit: PresheafMap,
}

/// `(LX)(b) = ∏_{a <= b} X(a)`, with `η` induced by restrictions.
pub fn sheafify(x: &Presheaf) -> Result<Sheafification> {
    let alg = x.algebra;
    let atoms: Vec<SSet> = alg.atoms_below(alg.top()).iter().map(|&a| x.value(a).clone()).collect();
    let sheaf = Presheaf::atom_family(&atoms)?;
    let components = alg
        .elements()
        .map(|b| {
            let below = alg.atoms_below(b);
            let fam = ProductFamily::new(&below.iter().map(|&a| x.value(a).clone()).collect::<Vec<_>>())?;
            let m = fam.tuple(x.value(b), &below.iter().map(|&a| x.restriction(b, a).clone()).collect::<Vec<_>>())?;
            Ok(SimplicialMap::from_fn_unchecked(x.value(b).clone(), sheaf.value(b).clone(), |c| m.on_cell(c).clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = PresheafMap::new(x.clone(), sheaf.clone(), components)?;
    Ok(Sheafification { sheaf, unit })
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalWeakEquivalence {
    pub verdict: Verdict,
    pub atoms: Vec<WeakEquivalenceCertificate>,
}

/// Atomwise certificates: every value of a sheaf is a product of atom
/// values, so the atoms decide.
pub fn local_weak_equivalence(f: &PresheafMap, options: &CertifyOptions) -> Result<LocalWeakEquivalence> {
    let atoms = f.atom_components().iter().map(|m| certify_raised(m, options)).collect::<Result<Vec<_>>>()?;
    let verdict = if atoms.iter().any(|c| c.is_refuted()) {
        Verdict::Refuted
    } else if atoms.iter().all(|c| c.is_certified()) {
        Verdict::Certified
    } else {
        Verdict::Indeterminate
    };
    Ok(LocalWeakEquivalence { verdict, atoms })
}

fn default_bound(f: &SimplicialMap) -> usize {
    [f.source(), f.target()].iter().map(|x| x.cell_counts().len()).max().unwrap_or(1)
}

/// Atomwise bounded Kan condition.
pub fn local_fibration(f: &PresheafMap, bound: Option<usize>) -> Result<Vec<LiftReport>> {
    f.atom_components().iter().map(|m| has_horn_lifts(m, bound.unwrap_or_else(|| default_bound(m)))).collect()
}

/// Atomwise lifting against `∂Δ[n] ⊂ Δ[n]` for `n` up to the bound.
pub fn trivial_fibration(f: &PresheafMap, bound: Option<usize>) -> Result<bool> {
    for m in f.atom_components() {
        let top = bound.unwrap_or_else(|| default_bound(&m));
        for n in 0..=top {
            let delta: SSet = Arc::new(standard_simplex(n));
            let i = if n == 0 {
                SimplicialMap::initial(delta)
            } else {
                let b = boundary(n);
                let cells: Vec<CellId> = delta.cells().filter(|c| c.dim() < n).collect();
                let inc = subcomplex(&delta, cells);
                debug_assert_eq!(inc.source().cell_counts(), b.cell_counts());
                inc
            };
            if !has_rlp(&m, &i)?.holds {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Restriction to the objects of the site: the family of values, as a
/// sheaf on the algebra of object subsets.
pub fn inverse_image_restriction(d: &Diagram) -> Result<Presheaf> {
    Presheaf::atom_family(d.values())
}

pub fn inverse_image_map(f: &DiagramMap) -> Result<PresheafMap> {
    PresheafMap::from_atoms(&f.components)
}

/// A commuting square of presheaves on a finite category.
#[derive(Clone, Debug)]
pub struct DiagramSquare {
    pub px: DiagramMap,
    pub py: DiagramMap,
    pub f: DiagramMap,
    pub g: DiagramMap,
}

impl DiagramSquare {
    /// The objectwise pullback of `f: X -> B` and `g: Y -> B`.
    pub fn pullback(f: &DiagramMap, g: &DiagramMap) -> Result<Self> {
        let shape = f.shape().clone();
        let prods: Vec<FiberProduct> =
            f.components.iter().zip(&g.components).map(|(a, b)| fiber_product(a, b)).collect::<Result<_>>()?;
        let maps = shape
            .non_identity_arrows()
            .map(|a| {
                let (s, t) = (shape.arrow(a).src, shape.arrow(a).dst);
                prods[t].induced(&prods[s].left.then_unchecked(f.source.map(a)), &prods[s].right.then_unchecked(g.source.map(a)))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Diagram::new(shape, prods.iter().map(|q| q.object.clone()).collect(), maps)?;
        let px = DiagramMap::new(p.clone(), f.source.clone(), prods.iter().map(|q| q.left.clone()).collect())?;
        let py = DiagramMap::new(p, g.source.clone(), prods.iter().map(|q| q.right.clone()).collect())?;
        Ok(DiagramSquare { px, py, f: f.clone(), g: g.clone() })
    }

    pub fn at(&self, o: usize) -> Result<Square> {
        Square::new(self.px.components[o].clone(), self.py.components[o].clone(), self.f.components[o].clone(), self.g.components[o].clone())
    }
}

/// Products of the restricted square are checked up to `max_rank` atoms;
/// rank one is the objectwise statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InverseImageOptions {
    pub cartesian: CartesianOptions,
    pub max_rank: usize,
}

impl Default for InverseImageOptions {
    fn default() -> Self {
        InverseImageOptions { cartesian: CartesianOptions::default(), max_rank: 2 }
    }
}

/// If the square is homotopy cartesian at every object, its restriction is
/// homotopy cartesian at every nonzero element of the algebra.
pub fn verify_inverse_image_preserves_hocartesian(sq: &DiagramSquare, opts: &InverseImageOptions) -> Result<HarnessReport> {
    let options = &opts.cartesian;
    let shape = sq.px.shape().clone();
    let mut hyps = Vec::new();
    for o in 0..shape.num_objects() {
        let v = cartesian_verdict(&sq.at(o)?, options)?;
        hyps.push(Check { name: format!("square at {} is homotopy cartesian", shape.objects()[o]), verdict: v });
    }
    let (px, py, f, g) = (inverse_image_map(&sq.px)?, inverse_image_map(&sq.py)?, inverse_image_map(&sq.f)?, inverse_image_map(&sq.g)?);
    let alg = px.source.algebra;
    let mut concls = Vec::new();
    for b in alg.elements().filter(|&b| b != 0 && b.count_ones() as usize <= opts.max_rank) {
        let s = Square::new(
            px.components[b as usize].clone(),
            py.components[b as usize].clone(),
            f.components[b as usize].clone(),
            g.components[b as usize].clone(),
        )?;
        let names: Vec<&str> = alg.atoms_below(b).iter().map(|a| shape.objects()[a.trailing_zeros() as usize].as_str()).collect();
        concls.push(Check { name: format!("restricted square at {{{}}} is homotopy cartesian", names.join(",")), verdict: cartesian_verdict(&s, options)? });
    }
    Ok(HarnessReport::new(hyps, concls))
}

#[derive(Clone, Debug, Serialize)]
pub struct SiteSharpness {
    pub verdict: Sharpness,
    pub objects: Vec<(String, SharpnessReport)>,
}

/// Objectwise sharpness of a map of presheaves on a finite category.
pub fn sharp_over_presheaf_site(f: &DiagramMap, options: &SharpOptions) -> Result<SiteSharpness> {
    let shape = f.shape();
    let objects: Vec<(String, SharpnessReport)> = (0..shape.num_objects())
        .map(|o| Ok((shape.objects()[o].clone(), is_sharp(&f.components[o], options)?)))
        .collect::<Result<_>>()?;
    let verdict = if objects.iter().any(|(_, r)| r.verdict == Sharpness::NotSharp) {
        Sharpness::NotSharp
    } else if objects.iter().all(|(_, r)| r.verdict == Sharpness::Sharp) {
        Sharpness::Sharp
    } else {
        Sharpness::Indeterminate
    };
    Ok(SiteSharpness { verdict, objects })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::*;

    fn arc(x: FiniteSimplicialSet) -> SSet {
        Arc::new(x)
    }

    #[test]
    fn laws_and_decompositions() {
        for n in 0..=4 {
            assert!(BooleanAlgebra::new(n).unwrap().check_laws());
        }
        // Bell numbers.
        let counts: Vec<usize> = [0u32, 1, 3, 7, 15].iter().map(|&b| decompositions(b).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15]);
        assert!(decompositions(0b1011).iter().all(Decomposition::is_valid));
    }

    #[test]
    fn atom_families_are_sheaves() {
        let x = Presheaf::atom_family(&[arc(circle()), arc(standard_simplex(1))]).unwrap();
        assert!(is_sheaf(&x).unwrap().is_sheaf);
        assert!(is_sheaf_all_decompositions(&x).unwrap().is_sheaf);
        let l = sheafify(&x).unwrap();
        assert!(l.unit.is_iso());
    }

    #[test]
    fn constant_presheaf_is_not_a_sheaf() {
        let alg = BooleanAlgebra::new(2).unwrap();
        let x = Presheaf::constant(alg, &arc(discrete(2))).unwrap();
        let r = is_sheaf(&x).unwrap();
        assert!(!r.is_sheaf);
        // The empty product at 0 fails first.
        assert_eq!(r.failure.unwrap().element, 0);
        let l = sheafify(&x).unwrap();
        assert!(is_sheaf(&l.sheaf).unwrap().is_sheaf);
        assert_eq!(l.sheaf.value(3).cell_counts(), vec![4]);
    }

    #[test]
    fn one_atom_with_point_at_zero() {
        let alg = BooleanAlgebra::new(1).unwrap();
        let x = Presheaf::constant(alg, &arc(point())).unwrap();
        assert!(is_sheaf(&x).unwrap().is_sheaf);
    }

    #[test]
    fn representables() {
        let alg = BooleanAlgebra::new(2).unwrap();
        for b in alg.elements() {
            let y = representable(alg, b).unwrap();
            assert!(is_sheaf(&y).unwrap().is_sheaf);
        }
        let top = representable(alg, 3).unwrap();
        assert!(alg.elements().all(|e| top.value(e).cell_counts() == vec![1]));
        let bottom = representable(alg, 0).unwrap();
        assert!(bottom.value(1).is_empty() && bottom.value(0).cell_counts() == vec![1]);
    }

    #[test]
    fn local_predicates() {
        let s1 = arc(circle());
        let id = PresheafMap::from_atoms(&[SimplicialMap::identity(s1.clone())]).unwrap();
        assert_eq!(local_weak_equivalence(&id, &CertifyOptions::default()).unwrap().verdict, Verdict::Certified);
        assert!(trivial_fibration(&id, None).unwrap());
        assert!(local_fibration(&id, None).unwrap().iter().all(|r| r.holds));
        let t = PresheafMap::from_atoms(&[SimplicialMap::terminal(s1)]).unwrap();
        assert_eq!(local_weak_equivalence(&t, &CertifyOptions::default()).unwrap().verdict, Verdict::Refuted);
    }

    #[test]
    fn inverse_image_on_arrow_and_span() {
        use crate::category::FiniteCategory;
        use crate::fixtures::{bundle_restriction_square, empty_corner_square};
        use crate::hocolim::harness::Outcome;
        let opts = InverseImageOptions::default();
        for shape in [FiniteCategory::chain(2), FiniteCategory::span()] {
            let shape = Arc::new(shape);
            let t = std::time::Instant::now();
            let r = verify_inverse_image_preserves_hocartesian(&bundle_restriction_square(shape.clone()).unwrap(), &opts).unwrap();
            assert_eq!(r.outcome, Outcome::Pass, "{r:?}");
            eprintln!("pass fixture {:?}", t.elapsed());
            let r = verify_inverse_image_preserves_hocartesian(&empty_corner_square(shape).unwrap(), &opts).unwrap();
            assert_eq!(r.outcome, Outcome::HypothesisNotEstablished, "{r:?}");
            assert!(r.conclusions.iter().all(|c| c.verdict == Verdict::Refuted), "{r:?}");
            eprintln!("{:?}", t.elapsed());
        }
    }
}
