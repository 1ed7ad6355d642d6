//! Seeded generators for small random instances.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::boolean::{BooleanAlgebra, Element, Presheaf};
use crate::category::{Arrow, FiniteCategory};
use crate::diagram::{Diagram, DiagramMap};
use crate::error::Result;
use crate::fixtures::trivial_bundle;
use crate::kan::TargetIndex;
use crate::limits::colimit;
use crate::map::{subcomplex, SSet, SimplicialMap};
use crate::product::product;
use crate::sset::{CellId, SimplexRef};
use crate::standard::{boundary, circle, discrete, point, rp2, simplex_subcomplex, standard_simplex};

/// Bounds for generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_objects: usize,
    pub max_dim: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_objects: 4, max_dim: 2 }
    }
}

/// Maps enumerated before sampling stops.
const MAP_SAMPLE_CAP: usize = 2048;

/// A small nonempty simplicial set of dimension at most `max_dim`.
pub fn random_complex<R: Rng>(rng: &mut R, max_dim: usize) -> SSet {
    let pick = rng.gen_range(0..if max_dim >= 2 { 8 } else { 5 });
    let x = match pick {
        0 => point(),
        1 => discrete(2),
        2 => standard_simplex(1),
        3 => circle(),
        4 => {
            // A random graph on four vertices.
            let edges: Vec<usize> = [3, 5, 6, 9, 10, 12].into_iter().filter(|_| rng.gen_bool(0.4)).collect();
            simplex_subcomplex(3, move |m| m.count_ones() == 1 || edges.contains(&m))
        }
        5 => boundary(2),
        6 => {
            // Triangles of `∂Δ[3]` and their faces.
            let tris: Vec<usize> = [7, 11, 13, 14].into_iter().filter(|_| rng.gen_bool(0.5)).collect();
            simplex_subcomplex(3, move |m| m.count_ones() == 1 || tris.iter().any(|&t| m & !t == 0 && m.count_ones() <= 3))
        }
        _ => rp2(),
    };
    Arc::new(x)
}

/// A uniformly chosen map among the first few thousand found, if any.
pub fn random_map<R: Rng>(rng: &mut R, a: &SSet, b: &SSet) -> Option<SimplicialMap> {
    if a.is_empty() {
        return Some(SimplicialMap::initial(b.clone()));
    }
    if b.is_empty() {
        return None;
    }
    let index = TargetIndex::new(b, a.max_dim());
    let mut chosen: Option<Vec<Vec<SimplexRef>>> = None;
    let mut seen = 0usize;
    index.search(a, &HashMap::new(), &|_, _| true, &mut |asg| {
        seen += 1;
        if rng.gen_range(0..seen) == 0 {
            chosen = Some(asg.to_vec());
        }
        seen < MAP_SAMPLE_CAP
    });
    chosen.map(|asg| SimplicialMap::new_unchecked(a.clone(), b.clone(), asg))
}

/// A random subcomplex: all of `x` or the closure of a few cells.
pub fn random_subcomplex<R: Rng>(rng: &mut R, x: &SSet) -> SimplicialMap {
    let cells: Vec<CellId> = x.cells().collect();
    if rng.gen_bool(0.3) || cells.is_empty() {
        return subcomplex(x, cells);
    }
    let k = rng.gen_range(1..=3.min(cells.len()));
    subcomplex(x, cells.choose_multiple(rng, k).copied())
}

/// The free category on a random graph `i -> j` with `i < j`.
pub fn random_shape<R: Rng>(rng: &mut R, max_objects: usize) -> Arc<FiniteCategory> {
    let n = rng.gen_range(1..=max_objects.max(1));
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) && gens.len() < 4 {
                gens.push(Arrow { name: format!("g{i}{j}"), src: i, dst: j });
            }
        }
    }
    let objects = (0..n).map(|i| format!("o{i}")).collect();
    Arc::new(FiniteCategory::free(objects, &gens).expect("generating graph is acyclic"))
}

fn generators(shape: &FiniteCategory) -> Vec<usize> {
    shape.non_identity_arrows().filter(|&a| !shape.arrow(a).name.contains(';')).collect()
}

/// A diagram over a random free category with random values and maps.
pub fn random_diagram<R: Rng>(rng: &mut R, bounds: Bounds) -> Result<Diagram> {
    let shape = random_shape(rng, bounds.max_objects);
    let values: Vec<SSet> = (0..shape.num_objects()).map(|_| random_complex(rng, bounds.max_dim)).collect();
    let gens = generators(&shape)
        .into_iter()
        .map(|a| {
            let (s, t) = (shape.arrow(a).src, shape.arrow(a).dst);
            (a, random_map(rng, &values[s], &values[t]).expect("targets are nonempty"))
        })
        .collect();
    Diagram::generated(shape, values, gens)
}

/// A diagram and a map into its colimit, from a subcomplex or from a
/// random complex.
pub fn random_map_into_colimit<R: Rng>(rng: &mut R, bounds: Bounds) -> Result<(Diagram, SimplicialMap)> {
    let d = random_diagram(rng, bounds)?;
    let c = colimit(&d)?.object;
    if rng.gen_bool(0.5) {
        return Ok((d, random_subcomplex(rng, &c)));
    }
    let a = random_complex(rng, bounds.max_dim);
    let m = random_map(rng, &a, &c).expect("colimit is nonempty");
    Ok((d, m))
}

/// Restricts `d` to subcomplexes closed under the diagram maps.
fn random_subfunctor<R: Rng>(rng: &mut R, d: &Diagram) -> Result<DiagramMap> {
    let shape = d.shape().clone();
    let gens = generators(&shape);
    let mut incl: Vec<SimplicialMap> = Vec::new();
    for i in 0..shape.num_objects() {
        let mut cells: HashSet<CellId> = random_subcomplex(rng, d.value(i)).assignment().iter().flatten().map(|s| s.cell).collect();
        for &a in gens.iter().filter(|&&a| shape.arrow(a).dst == i) {
            let src = &incl[shape.arrow(a).src];
            cells.extend(src.source().cells().map(|c| d.map(a).apply(src.on_cell(c)).cell));
        }
        incl.push(subcomplex(d.value(i), cells));
    }
    let back: Vec<HashMap<CellId, CellId>> =
        incl.iter().map(|m| m.source().cells().map(|c| (m.on_cell(c).cell, c)).collect()).collect();
    let maps = gens
        .iter()
        .map(|&a| {
            let (s, t) = (shape.arrow(a).src, shape.arrow(a).dst);
            let m = SimplicialMap::from_fn(incl[s].source().clone(), incl[t].source().clone(), |c| {
                let img = d.map(a).apply(incl[s].on_cell(c));
                SimplexRef::new(back[t][&img.cell], img.degeneracy)
            })?;
            Ok((a, m))
        })
        .collect::<Result<Vec<_>>>()?;
    let x = Diagram::generated(shape, incl.iter().map(|m| m.source().clone()).collect(), maps)?;
    DiagramMap::new(x, d.clone(), incl)
}

/// A map of diagrams: a subfunctor inclusion, possibly followed by a
/// trivial bundle projection.
pub fn random_diagram_map<R: Rng>(rng: &mut R, bounds: Bounds) -> Result<DiagramMap> {
    let d = random_diagram(rng, bounds)?;
    let sub = random_subfunctor(rng, &d)?;
    if rng.gen_bool(0.5) {
        return Ok(sub);
    }
    let k = random_complex(rng, 1);
    let bundle = trivial_bundle(&sub.source, &k)?;
    let components = bundle.components.iter().zip(&sub.components).map(|(p, i)| p.then_unchecked(i)).collect();
    DiagramMap::new(bundle.source, d, components)
}

/// A presheaf on the subsets of at most `max_atoms` atoms: a random
/// subpresheaf of an atom family, sometimes times a constant discrete
/// factor.
pub fn random_presheaf<R: Rng>(rng: &mut R, max_atoms: usize) -> Result<Presheaf> {
    let n = rng.gen_range(1..=max_atoms.max(1));
    let pool = |rng: &mut R| -> SSet {
        Arc::new(match rng.gen_range(0..4) {
            0 => point(),
            1 => discrete(2),
            2 => standard_simplex(1),
            _ => circle(),
        })
    };
    let atoms: Vec<SSet> = (0..n).map(|_| pool(rng)).collect();
    let family = Presheaf::atom_family(&atoms)?;
    let alg = family.algebra;
    let chosen: Vec<HashSet<CellId>> = alg
        .elements()
        .map(|b| {
            let x = family.value(b);
            if rng.gen_bool(0.7) {
                x.cells().collect()
            } else {
                random_subcomplex(rng, x).assignment().iter().flatten().map(|s| s.cell).collect()
            }
        })
        .collect();
    // Keep the simplices whose every restriction stays in the chosen parts.
    let incl: Vec<SimplicialMap> = alg
        .elements()
        .map(|b| {
            let keep = family.value(b).cells().filter(|&c| {
                alg.elements()
                    .filter(|&e| alg.leq(e, b))
                    .all(|e| chosen[e as usize].contains(&family.restriction(b, e).on_cell(c).cell))
            });
            subcomplex(family.value(b), keep.collect::<Vec<_>>())
        })
        .collect();
    let back: Vec<HashMap<CellId, CellId>> =
        incl.iter().map(|m| m.source().cells().map(|c| (m.on_cell(c).cell, c)).collect()).collect();
    let restrict = |b: Element, e: Element| {
        SimplicialMap::from_fn(incl[b as usize].source().clone(), incl[e as usize].source().clone(), |c| {
            let img = family.restriction(b, e).apply(incl[b as usize].on_cell(c));
            SimplexRef::new(back[e as usize][&img.cell], img.degeneracy)
        })
    };
    let sub = Presheaf::from_fn(alg, incl.iter().map(|m| m.source().clone()).collect(), restrict)?;
    if rng.gen_bool(0.6) {
        return Ok(sub);
    }
    // A discrete factor keeps the products small.
    let c: SSet = Arc::new(discrete(rng.gen_range(2..=3)));
    with_constant_factor(&sub, alg, &c)
}

/// `X(b) × C` with restrictions `r × id`.
fn with_constant_factor(x: &Presheaf, alg: BooleanAlgebra, c: &SSet) -> Result<Presheaf> {
    let prods = alg.elements().map(|b| product(x.value(b), c)).collect::<Result<Vec<_>>>()?;
    Presheaf::from_fn(alg, prods.iter().map(|p| p.object.clone()).collect(), |b, e| {
        let (pb, pe) = (&prods[b as usize], &prods[e as usize]);
        pe.induced(&pb.left.then_unchecked(x.restriction(b, e)), &pb.right)
    })
}
