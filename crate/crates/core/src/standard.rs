//! Standard simplices, their boundaries and horns, and a few small fixtures.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::sset::{CellId, FiniteSimplicialSet, SimplexRef};

/// Vertex set of a nonempty subset of `[n]`, written as digits.
pub fn subset_name(mask: usize, n: usize) -> String {
    let vs: Vec<String> = (0..=n).filter(|v| mask & (1 << v) != 0).map(|v| v.to_string()).collect();
    if n < 10 {
        vs.concat()
    } else {
        vs.join(",")
    }
}

/// The subcomplex of `Δ[n]` on the vertex subsets accepted by `keep`.
/// `keep` must be closed under taking nonempty subsets.
pub fn simplex_subcomplex(n: usize, keep: impl Fn(usize) -> bool) -> FiniteSimplicialSet {
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for mask in 1usize..(1 << (n + 1)) {
        if keep(mask) {
            by_dim[mask.count_ones() as usize - 1].push(mask);
        }
    }
    let mut ids: HashMap<usize, CellId> = HashMap::new();
    for (d, masks) in by_dim.iter().enumerate() {
        for (i, &m) in masks.iter().enumerate() {
            ids.insert(m, CellId::new(d, i));
        }
    }
    let names = by_dim.iter().map(|ms| ms.iter().map(|&m| subset_name(m, n)).collect()).collect();
    let faces = by_dim
        .iter()
        .enumerate()
        .map(|(d, ms)| {
            ms.iter()
                .map(|&m| {
                    if d == 0 {
                        return Vec::new();
                    }
                    let verts: Vec<usize> = (0..=n).filter(|v| m & (1 << v) != 0).collect();
                    verts.iter().map(|&v| SimplexRef::cell(ids[&(m & !(1 << v))])).collect()
                })
                .collect()
        })
        .collect();
    FiniteSimplicialSet::from_parts(names, faces).expect("subcomplexes of a simplex are valid")
}

pub fn standard_simplex(n: usize) -> FiniteSimplicialSet {
    simplex_subcomplex(n, |_| true)
}

pub fn boundary(n: usize) -> FiniteSimplicialSet {
    let full = (1usize << (n + 1)) - 1;
    simplex_subcomplex(n, move |m| m != full)
}

pub fn horn(n: usize, k: usize) -> Result<FiniteSimplicialSet> {
    if k > n || n == 0 {
        return Err(Error::Precondition(format!("no horn Λ^{k}[{n}]")));
    }
    let full = (1usize << (n + 1)) - 1;
    let face = full & !(1 << k);
    Ok(simplex_subcomplex(n, move |m| m != full && m != face))
}

/// The vertex set of a cell of a standard simplex, or of a subcomplex
/// containing all its vertices.
pub fn simplex_cell_mask(x: &FiniteSimplicialSet, c: CellId) -> usize {
    let s = SimplexRef::cell(c);
    (0..=c.dim()).fold(0, |m, k| m | (1 << x.vertex_of(&s, k).index()))
}

pub fn point() -> FiniteSimplicialSet {
    standard_simplex(0)
}

pub fn discrete(k: usize) -> FiniteSimplicialSet {
    let names = if k == 0 { Vec::new() } else { vec![(0..k).map(|i| format!("p{i}")).collect()] };
    let faces = if k == 0 { Vec::new() } else { vec![vec![Vec::new(); k]] };
    FiniteSimplicialSet::from_parts(names, faces).unwrap()
}

/// `Δ[n]/∂Δ[n]`: one vertex and one nondegenerate n-simplex.
pub fn sphere(n: usize) -> FiniteSimplicialSet {
    assert!(n >= 1, "sphere needs n >= 1");
    let v = CellId::new(0, 0);
    let mut names = vec![vec!["v".to_string()]];
    let mut faces = vec![vec![Vec::new()]];
    for _ in 1..n {
        names.push(Vec::new());
        faces.push(Vec::new());
    }
    names.push(vec!["e".to_string()]);
    faces.push(vec![vec![SimplexRef::new(v, Operator::constant(n - 1, 0, 0)); n + 1]]);
    FiniteSimplicialSet::from_parts(names, faces).unwrap()
}

/// The circle `Δ[1]/∂Δ[1]`, with vertex `v` and loop `a`.
pub fn circle() -> FiniteSimplicialSet {
    let v = CellId::new(0, 0);
    FiniteSimplicialSet::from_parts(
        vec![vec!["v".into()], vec!["a".into()]],
        vec![vec![Vec::new()], vec![vec![SimplexRef::cell(v), SimplexRef::cell(v)]]],
    )
    .unwrap()
}

/// The projective plane: one vertex, one loop `a`, and a triangle with
/// boundary `a · a`.
pub fn rp2() -> FiniteSimplicialSet {
    let v = CellId::new(0, 0);
    let a = SimplexRef::cell(CellId::new(1, 0));
    FiniteSimplicialSet::from_parts(
        vec![vec!["v".into()], vec!["a".into()], vec!["t".into()]],
        vec![
            vec![Vec::new()],
            vec![vec![SimplexRef::cell(v), SimplexRef::cell(v)]],
            vec![vec![a.clone(), SimplexRef::new(v, Operator::constant(1, 0, 0)), a]],
        ],
    )
    .unwrap()
}

/// The cone on `X`, with the apex as the last vertex of every new simplex.
pub fn cone(x: &FiniteSimplicialSet) -> FiniteSimplicialSet {
    let top = if x.is_empty() { 0 } else { x.max_dim() + 1 };
    let mut names: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    let mut faces: Vec<Vec<Vec<SimplexRef>>> = vec![Vec::new(); top + 1];
    // Old cells keep their positions; cone cells follow them.
    let offset: Vec<usize> = (0..=top).map(|n| x.num_cells(n)).collect();
    let apex = CellId::new(0, offset[0]);
    let coned = |c: CellId| CellId::new(c.dim() + 1, offset[c.dim() + 1] + c.index());
    let extend = |r: &SimplexRef| -> SimplexRef {
        // c(y·ρ) = (cy)·(ρ with the apex appended).
        let k = r.cell.dim();
        let mut values: Vec<usize> = r.degeneracy.values().collect();
        values.push(k + 1);
        SimplexRef::new(coned(r.cell), Operator::new(&values, k + 1).unwrap())
    };
    for c in x.cells() {
        names[c.dim()].push(x.name(c).to_string());
        faces[c.dim()].push(x.faces_of(c).to_vec());
    }
    names[0].push("apex".into());
    faces[0].push(Vec::new());
    for c in x.cells() {
        let n = c.dim();
        let mut fs = Vec::with_capacity(n + 2);
        if n == 0 {
            fs.push(SimplexRef::cell(apex));
        } else {
            for f in x.faces_of(c) {
                fs.push(extend(f));
            }
        }
        fs.push(SimplexRef::cell(c));
        names[n + 1].push(format!("c({})", x.name(c)));
        faces[n + 1].push(fs);
    }
    FiniteSimplicialSet::from_parts(names, faces).expect("cone of a valid set")
}
