//! Diagrams of simplicial sets over finite categories, and maps between them.

use std::sync::Arc;

use crate::category::{FiniteCategory, Functor};
use crate::error::{Error, Result};
use crate::map::{same_set, SSet, SimplicialMap};

#[derive(Clone, Debug)]
pub struct Diagram {
    shape: Arc<FiniteCategory>,
    objects: Vec<SSet>,
    arrows: Vec<SimplicialMap>,
}

impl Diagram {
    /// `maps` gives the non-identity arrows in order; identities are filled in.
    pub fn new(shape: Arc<FiniteCategory>, objects: Vec<SSet>, maps: Vec<SimplicialMap>) -> Result<Self> {
        if objects.len() != shape.num_objects() || maps.len() + shape.num_objects() != shape.num_arrows() {
            return Err(Error::Functoriality("diagram tables do not match the shape".into()));
        }
        let mut arrows: Vec<SimplicialMap> = objects.iter().map(|x| SimplicialMap::identity(x.clone())).collect();
        arrows.extend(maps);
        let d = Diagram { shape, objects, arrows };
        d.check()?;
        Ok(d)
    }

    /// Builds from maps on a generating set of arrows; every other arrow
    /// must be a composite of generators.
    pub fn generated(
        shape: Arc<FiniteCategory>,
        objects: Vec<SSet>,
        generators: Vec<(usize, SimplicialMap)>,
    ) -> Result<Self> {
        let mut known: Vec<Option<SimplicialMap>> = vec![None; shape.num_arrows()];
        for (o, x) in objects.iter().enumerate() {
            known[o] = Some(SimplicialMap::identity(x.clone()));
        }
        for (a, m) in generators {
            known[a] = Some(m);
        }
        loop {
            let mut progress = false;
            for f in 0..shape.num_arrows() {
                for g in shape.out_arrows(shape.arrow(f).dst) {
                    let h = shape.compose(f, g).unwrap();
                    if known[h].is_none() {
                        if let (Some(mf), Some(mg)) = (&known[f], &known[g]) {
                            known[h] = Some(mf.then(mg)?);
                            progress = true;
                        }
                    }
                }
            }
            if !progress {
                break;
            }
        }
        let n = objects.len();
        let mut maps = Vec::new();
        for (a, m) in known.into_iter().enumerate().skip(n) {
            maps.push(m.ok_or_else(|| {
                Error::Functoriality(format!("arrow {} is not generated", shape.arrow(a).name))
            })?);
        }
        Self::new(shape, objects, maps)
    }

    pub fn check(&self) -> Result<()> {
        let s = &self.shape;
        for (a, arrow) in s.arrows().iter().enumerate() {
            let m = &self.arrows[a];
            if !same_set(m.source(), &self.objects[arrow.src]) || !same_set(m.target(), &self.objects[arrow.dst]) {
                return Err(Error::Functoriality(format!("map for {} has the wrong endpoints", arrow.name)));
            }
            m.check()?;
        }
        for o in 0..s.num_objects() {
            if self.arrows[o] != SimplicialMap::identity(self.objects[o].clone()) {
                return Err(Error::Functoriality(format!("identity of {} is not sent to an identity", s.objects()[o])));
            }
        }
        for f in 0..s.num_arrows() {
            for g in s.out_arrows(s.arrow(f).dst) {
                let h = s.compose(f, g).unwrap();
                if self.arrows[f].then_unchecked(&self.arrows[g]) != self.arrows[h] {
                    return Err(Error::Functoriality(format!(
                        "{} then {} is not sent to the composite",
                        s.arrow(f).name,
                        s.arrow(g).name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &Arc<FiniteCategory> {
        &self.shape
    }

    pub fn value(&self, o: usize) -> &SSet {
        &self.objects[o]
    }

    pub fn values(&self) -> &[SSet] {
        &self.objects
    }

    pub fn map(&self, a: usize) -> &SimplicialMap {
        &self.arrows[a]
    }

    pub fn max_dim(&self) -> usize {
        self.objects.iter().filter(|x| !x.is_empty()).map(|x| x.max_dim()).max().unwrap_or(0)
    }

    /// Precomposition with a functor into this diagram's shape.
    pub fn restrict(&self, u: &Functor) -> Result<Diagram> {
        if *u.target != *self.shape {
            return Err(Error::Precondition("functor does not land in the diagram's shape".into()));
        }
        let objects: Vec<SSet> = u.on_objects.iter().map(|&o| self.objects[o].clone()).collect();
        let arrows = u.on_arrows.iter().map(|&a| self.arrows[a].clone()).collect();
        Ok(Diagram { shape: u.source.clone(), objects, arrows })
    }
}

#[derive(Clone, Debug)]
pub struct DiagramMap {
    pub source: Diagram,
    pub target: Diagram,
    pub components: Vec<SimplicialMap>,
}

impl DiagramMap {
    pub fn new(source: Diagram, target: Diagram, components: Vec<SimplicialMap>) -> Result<Self> {
        let m = DiagramMap { source, target, components };
        m.check()?;
        Ok(m)
    }

    pub fn identity(d: &Diagram) -> Self {
        let components = d.values().iter().map(|x| SimplicialMap::identity(x.clone())).collect();
        DiagramMap { source: d.clone(), target: d.clone(), components }
    }

    /// Naturality for every arrow.
    pub fn check(&self) -> Result<()> {
        let s = self.source.shape();
        if **s != **self.target.shape() || self.components.len() != s.num_objects() {
            return Err(Error::Functoriality("diagram map between different shapes".into()));
        }
        for (o, c) in self.components.iter().enumerate() {
            if !same_set(c.source(), self.source.value(o)) || !same_set(c.target(), self.target.value(o)) {
                return Err(Error::Functoriality(format!("component at {} has the wrong endpoints", s.objects()[o])));
            }
            c.check()?;
        }
        for (a, arrow) in s.arrows().iter().enumerate() {
            let lhs = self.source.map(a).then_unchecked(&self.components[arrow.dst]);
            let rhs = self.components[arrow.src].then_unchecked(self.target.map(a));
            if lhs != rhs {
                return Err(Error::Functoriality(format!("naturality square for {} does not commute", arrow.name)));
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &Arc<FiniteCategory> {
        self.source.shape()
    }

    pub fn restrict(&self, u: &Functor) -> Result<DiagramMap> {
        let components = u.on_objects.iter().map(|&o| self.components[o].clone()).collect();
        Ok(DiagramMap { source: self.source.restrict(u)?, target: self.target.restrict(u)?, components })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::subcomplex;
    use crate::standard::*;

    #[test]
    fn span_of_boundary_inclusions() {
        let d1 = Arc::new(standard_simplex(1));
        let inc = subcomplex(&d1, d1.cells_of_dim(0));
        let pt = Arc::new(point());
        let collapse = SimplicialMap::terminal(inc.source().clone());
        let collapse = SimplicialMap::new(collapse.source().clone(), pt.clone(), collapse.assignment().to_vec()).unwrap();
        let d = Diagram::new(
            Arc::new(FiniteCategory::span()),
            vec![pt, d1, inc.source().clone()],
            vec![collapse, inc],
        )
        .unwrap();
        assert_eq!(d.max_dim(), 1);
        assert!(DiagramMap::identity(&d).check().is_ok());
    }
}
