//! JSON file formats.
//!
//! Simplices are addressed by id; a face or a map value is a pair
//! `[target id, operator values]`, where the values list the monotone
//! surjection applied to the target (`[0,0]` is an edge's worth of a
//! degenerate vertex). Maps list `[source id, target id, values]` for every
//! nondegenerate simplex of the source. Identity arrows of a category are
//! implicit.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use sharpset::boolean::{BooleanAlgebra, Presheaf};
use sharpset::category::{Arrow, FiniteCategory};
use sharpset::diagram::{Diagram, DiagramMap};
use sharpset::map::{SSet, SimplicialMap};
use sharpset::operator::Operator;
use sharpset::sset::{CellId, FiniteSimplicialSet, RawCell, RawFace, SimplexRef};

#[derive(Debug)]
pub enum IoError {
    Read(String),
    /// Malformed JSON, with its position.
    Syntax(String),
    /// Well-formed input that violates an invariant.
    Invalid(String),
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Read(m) => write!(f, "cannot read input: {m}"),
            IoError::Syntax(m) => write!(f, "syntax error: {m}"),
            IoError::Invalid(m) => write!(f, "invalid input: {m}"),
        }
    }
}

impl From<sharpset::Error> for IoError {
    fn from(e: sharpset::Error) -> Self {
        IoError::Invalid(e.to_string())
    }
}

pub type IoResult<T> = Result<T, IoError>;

fn invalid(m: impl Into<String>) -> IoError {
    IoError::Invalid(m.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexRecord {
    pub id: String,
    pub dim: usize,
    #[serde(default)]
    pub faces: Vec<(String, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SSetRecord {
    pub simplices: Vec<SimplexRecord>,
}

pub type Assignment = Vec<(String, String, Vec<usize>)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapRecord {
    pub source: SSetRecord,
    pub target: SSetRecord,
    pub assignment: Assignment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowRecord {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// Without `composition` the arrows generate a free category; with it,
/// they are all the non-identity arrows and `composition` lists
/// `[first, second, composite]` for every composable pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramRecord {
    pub objects: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composition: Option<Vec<(String, String, String)>>,
    pub on_objects: BTreeMap<String, SSetRecord>,
    #[serde(default)]
    pub on_arrows: BTreeMap<String, Assignment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramMapRecord {
    pub source: DiagramRecord,
    pub target: DiagramRecord,
    pub components: BTreeMap<String, Assignment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeRecord {
    Diagram(DiagramMapRecord),
    Map(MapRecord),
}

/// `px: P -> X`, `py: P -> Y`, `f: X -> B`, `g: Y -> B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareRecord {
    pub px: EdgeRecord,
    pub py: EdgeRecord,
    pub f: EdgeRecord,
    pub g: EdgeRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementValue {
    pub element: u32,
    pub simplicial_set: SSetRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionRecord {
    pub from: u32,
    pub to: u32,
    pub assignment: Assignment,
}

/// Elements are bitmasks over `atoms`. Restrictions are given for every
/// `b -> b'` dropping a single atom; the rest are composites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafRecord {
    pub atoms: Vec<String>,
    pub values: Vec<ElementValue>,
    pub restrictions: Vec<RestrictionRecord>,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> IoResult<(T, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| IoError::Read(format!("{}: {e}", path.display())))?;
    let value = serde_json::from_slice(&bytes).map_err(|e| IoError::Syntax(format!("{}: {e}", path.display())))?;
    Ok((value, bytes))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("records serialize")
}

pub fn sset_from_record(r: &SSetRecord, dim_cap: usize) -> IoResult<SSet> {
    let raw: Vec<RawCell> = r
        .simplices
        .iter()
        .map(|s| RawCell {
            id: s.id.clone(),
            dim: s.dim,
            faces: s.faces.iter().map(|(t, v)| RawFace { target: t.clone(), values: v.clone() }).collect(),
        })
        .collect();
    Ok(Arc::new(FiniteSimplicialSet::from_records(&raw, dim_cap)?))
}

pub fn sset_to_record(x: &FiniteSimplicialSet) -> SSetRecord {
    SSetRecord {
        simplices: x
            .to_records()
            .into_iter()
            .map(|c| SimplexRecord { id: c.id, dim: c.dim, faces: c.faces.into_iter().map(|f| (f.target, f.values)).collect() })
            .collect(),
    }
}

pub fn map_from_assignment(source: &SSet, target: &SSet, a: &Assignment) -> IoResult<SimplicialMap> {
    let mut table: Vec<Vec<Option<SimplexRef>>> = source.cell_counts().iter().map(|&k| vec![None; k]).collect();
    for (s, t, values) in a {
        let c = source.find(s).ok_or_else(|| invalid(format!("unknown source simplex `{s}`")))?;
        let d = target.find(t).ok_or_else(|| invalid(format!("unknown target simplex `{t}`")))?;
        let op = Operator::new(values, d.dim())?;
        if !op.is_surjective() || op.domain_dim() != c.dim() {
            return Err(invalid(format!("value of `{s}` must be a degeneracy from dimension {}", c.dim())));
        }
        let slot = &mut table[c.dim()][c.index()];
        if slot.is_some() {
            return Err(invalid(format!("simplex `{s}` is assigned twice")));
        }
        *slot = Some(SimplexRef::new(d, op));
    }
    let mut assignment = Vec::with_capacity(table.len());
    for (dim, row) in table.into_iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (i, v) in row.into_iter().enumerate() {
            out.push(v.ok_or_else(|| invalid(format!("simplex `{}` is not assigned", source.name(CellId::new(dim, i)))))?);
        }
        assignment.push(out);
    }
    Ok(SimplicialMap::new(source.clone(), target.clone(), assignment)?)
}

pub fn assignment_of(f: &SimplicialMap) -> Assignment {
    let (x, y) = (f.source(), f.target());
    x.cells()
        .map(|c| {
            let s = f.on_cell(c);
            (x.name(c).to_string(), y.name(s.cell).to_string(), s.degeneracy.values().collect())
        })
        .collect()
}

pub fn map_from_record(r: &MapRecord, dim_cap: usize) -> IoResult<SimplicialMap> {
    let source = sset_from_record(&r.source, dim_cap)?;
    let target = sset_from_record(&r.target, dim_cap)?;
    map_from_assignment(&source, &target, &r.assignment)
}

pub fn map_to_record(f: &SimplicialMap) -> MapRecord {
    MapRecord { source: sset_to_record(f.source()), target: sset_to_record(f.target()), assignment: assignment_of(f) }
}

fn shape_from_record(r: &DiagramRecord) -> IoResult<Arc<FiniteCategory>> {
    let obj: HashMap<&str, usize> = r.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
    if obj.len() != r.objects.len() {
        return Err(invalid("duplicate object id"));
    }
    let find = |o: &str| obj.get(o).copied().ok_or_else(|| invalid(format!("unknown object `{o}`")));
    let arrows: Vec<Arrow> = r
        .arrows
        .iter()
        .map(|a| Ok(Arrow { name: a.id.clone(), src: find(&a.src)?, dst: find(&a.dst)? }))
        .collect::<IoResult<_>>()?;
    match &r.composition {
        None => Ok(Arc::new(FiniteCategory::free(r.objects.clone(), &arrows)?)),
        Some(table) => {
            let n = r.objects.len();
            let index: HashMap<&str, usize> = r.arrows.iter().enumerate().map(|(i, a)| (a.id.as_str(), n + i)).collect();
            let arrow = |a: &str| index.get(a).copied().ok_or_else(|| invalid(format!("unknown arrow `{a}`")));
            let comps = table.iter().map(|(f, g, h)| Ok((arrow(f)?, arrow(g)?, arrow(h)?))).collect::<IoResult<Vec<_>>>()?;
            Ok(Arc::new(FiniteCategory::new(r.objects.clone(), arrows, &comps)?))
        }
    }
}

pub fn diagram_from_record(r: &DiagramRecord, dim_cap: usize) -> IoResult<Diagram> {
    let shape = shape_from_record(r)?;
    let values: Vec<SSet> = r
        .objects
        .iter()
        .map(|o| sset_from_record(r.on_objects.get(o).ok_or_else(|| invalid(format!("no value for object `{o}`")))?, dim_cap))
        .collect::<IoResult<_>>()?;
    if r.on_objects.len() != r.objects.len() {
        return Err(invalid("values given for unknown objects"));
    }
    let mut generators = Vec::new();
    for (name, a) in &r.on_arrows {
        let i = shape.arrow_index(name).filter(|&i| !shape.is_identity(i)).ok_or_else(|| invalid(format!("unknown arrow `{name}`")))?;
        let (s, t) = (shape.arrow(i).src, shape.arrow(i).dst);
        generators.push((i, map_from_assignment(&values[s], &values[t], a)?));
    }
    Ok(Diagram::generated(shape, values, generators)?)
}

pub fn diagram_to_record(d: &Diagram) -> DiagramRecord {
    let shape = d.shape();
    let objects = shape.objects().to_vec();
    let arrows = shape
        .non_identity_arrows()
        .map(|a| {
            let ar = shape.arrow(a);
            ArrowRecord { id: ar.name.clone(), src: objects[ar.src].clone(), dst: objects[ar.dst].clone() }
        })
        .collect();
    let mut composition = Vec::new();
    for f in shape.non_identity_arrows() {
        for g in shape.non_identity_arrows() {
            if let Some(h) = shape.compose(f, g) {
                composition.push((shape.arrow(f).name.clone(), shape.arrow(g).name.clone(), shape.arrow(h).name.clone()));
            }
        }
    }
    DiagramRecord {
        on_objects: objects.iter().zip(d.values()).map(|(o, v)| (o.clone(), sset_to_record(v))).collect(),
        on_arrows: shape.non_identity_arrows().map(|a| (shape.arrow(a).name.clone(), assignment_of(d.map(a)))).collect(),
        objects,
        arrows,
        composition: Some(composition),
    }
}

pub fn diagram_map_from_record(r: &DiagramMapRecord, dim_cap: usize) -> IoResult<DiagramMap> {
    let source = diagram_from_record(&r.source, dim_cap)?;
    let target = diagram_from_record(&r.target, dim_cap)?;
    if source.shape() != target.shape() {
        return Err(invalid("source and target are indexed by different categories"));
    }
    let components = source
        .shape()
        .objects()
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let a = r.components.get(o).ok_or_else(|| invalid(format!("no component at `{o}`")))?;
            map_from_assignment(source.value(i), target.value(i), a)
        })
        .collect::<IoResult<Vec<_>>>()?;
    Ok(DiagramMap::new(source, target, components)?)
}

pub fn diagram_map_to_record(f: &DiagramMap) -> DiagramMapRecord {
    DiagramMapRecord {
        source: diagram_to_record(&f.source),
        target: diagram_to_record(&f.target),
        components: f.shape().objects().iter().zip(&f.components).map(|(o, c)| (o.clone(), assignment_of(c))).collect(),
    }
}

pub enum ParsedSquare {
    Maps(sharpset::sharp::Square),
    Diagrams(sharpset::boolean::DiagramSquare),
}

pub fn square_from_record(r: &SquareRecord, dim_cap: usize) -> IoResult<ParsedSquare> {
    use EdgeRecord::*;
    match (&r.px, &r.py, &r.f, &r.g) {
        (Map(px), Map(py), Map(f), Map(g)) => Ok(ParsedSquare::Maps(sharpset::sharp::Square::new(
            map_from_record(px, dim_cap)?,
            map_from_record(py, dim_cap)?,
            map_from_record(f, dim_cap)?,
            map_from_record(g, dim_cap)?,
        )?)),
        (Diagram(px), Diagram(py), Diagram(f), Diagram(g)) => {
            let sq = sharpset::boolean::DiagramSquare {
                px: diagram_map_from_record(px, dim_cap)?,
                py: diagram_map_from_record(py, dim_cap)?,
                f: diagram_map_from_record(f, dim_cap)?,
                g: diagram_map_from_record(g, dim_cap)?,
            };
            for o in 0..sq.px.shape().num_objects() {
                sq.at(o)?;
            }
            Ok(ParsedSquare::Diagrams(sq))
        }
        _ => Err(invalid("square mixes maps and maps of diagrams")),
    }
}

pub fn presheaf_from_record(r: &PresheafRecord, dim_cap: usize) -> IoResult<Presheaf> {
    let alg = BooleanAlgebra::new(r.atoms.len())?;
    let mut values: Vec<Option<SSet>> = vec![None; alg.top() as usize + 1];
    for v in &r.values {
        let slot = values.get_mut(v.element as usize).ok_or_else(|| invalid(format!("element {} is out of range", v.element)))?;
        if slot.is_some() {
            return Err(invalid(format!("element {} has two values", v.element)));
        }
        *slot = Some(sset_from_record(&v.simplicial_set, dim_cap)?);
    }
    let values: Vec<SSet> = values
        .into_iter()
        .enumerate()
        .map(|(b, v)| v.ok_or_else(|| invalid(format!("element {b} has no value"))))
        .collect::<IoResult<_>>()?;
    let mut covering: HashMap<(u32, u32), SimplicialMap> = HashMap::new();
    for rr in &r.restrictions {
        if rr.from > alg.top() || rr.to > alg.top() || (rr.from & !rr.to).count_ones() != 1 || !alg.leq(rr.to, rr.from) {
            return Err(invalid(format!("restriction {} -> {} must drop exactly one atom", rr.from, rr.to)));
        }
        let m = map_from_assignment(&values[rr.from as usize], &values[rr.to as usize], &rr.assignment)?;
        covering.insert((rr.from, rr.to), m);
    }
    let mut missing = None;
    let x = Presheaf::from_fn(alg, values.clone(), |b, e| {
        // Drop atoms from the lowest up; other orders are checked by the
        // functoriality test in the constructor.
        let mut m = SimplicialMap::identity(values[b as usize].clone());
        let mut cur = b;
        for a in alg.atoms_below(b & !e) {
            let next = cur & !a;
            match covering.get(&(cur, next)) {
                Some(step) => m = m.then(step)?,
                None => {
                    missing.get_or_insert((cur, next));
                    return Ok(SimplicialMap::identity(values[b as usize].clone()));
                }
            }
            cur = next;
        }
        Ok(m)
    });
    if let Some((a, b)) = missing {
        return Err(invalid(format!("no restriction {a} -> {b}")));
    }
    Ok(x?)
}

pub fn presheaf_to_record(x: &Presheaf, atoms: &[String]) -> PresheafRecord {
    let alg = x.algebra;
    let values = alg.elements().map(|b| ElementValue { element: b, simplicial_set: sset_to_record(x.value(b)) }).collect();
    let mut restrictions = Vec::new();
    for b in alg.elements() {
        for a in alg.atoms_below(b) {
            restrictions.push(RestrictionRecord { from: b, to: b & !a, assignment: assignment_of(x.restriction(b, b & !a)) });
        }
    }
    PresheafRecord { atoms: atoms.to_vec(), values, restrictions }
}
