//! Brute-force reference computations, written against the raw face data
//! only: normalized chains, dense integer Smith normal form, and vertex BFS.
#![allow(dead_code)]

use sharpset::map::SimplicialMap;
use sharpset::sset::{CellId, FiniteSimplicialSet, SimplexRef};

type Matrix = Vec<Vec<i128>>;

/// Boundary `C_n -> C_{n-1}` as a (cells of dim n-1) × (cells of dim n)
/// matrix, dropping degenerate faces.
pub fn boundary_matrix(x: &FiniteSimplicialSet, n: usize) -> Matrix {
    let rows = if n == 0 { 0 } else { x.num_cells(n - 1) };
    let mut m = vec![vec![0i128; x.num_cells(n)]; rows];
    if n == 0 {
        return m;
    }
    for (j, c) in x.cells_of_dim(n).enumerate() {
        for (i, f) in x.faces_of(c).iter().enumerate() {
            if !f.is_degenerate() {
                m[f.cell.index()][j] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    m
}

/// Diagonal of the Smith normal form (nonzero entries only).
pub fn invariant_factors(mut m: Matrix) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(a, b)| m[i][j].abs() < m[a][b].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for i in t..rows {
                        m[i][j] -= q * m[i][t];
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // The pivot must divide the rest of the block.
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    Some((i, _)) => {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // Move the smallest entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

/// Integral homology as (free rank, torsion coefficients) in degrees
/// `0..=top`.
pub fn homology(x: &FiniteSimplicialSet, top: usize) -> Vec<(usize, Vec<i128>)> {
    let facs: Vec<Vec<i128>> = (0..=top + 1).map(|n| invariant_factors(boundary_matrix(x, n))).collect();
    (0..=top)
        .map(|n| {
            let cycles = x.num_cells(n) - facs[n].len();
            let rank = cycles - facs[n + 1].len();
            (rank, facs[n + 1].iter().copied().filter(|&d| d > 1).collect())
        })
        .collect()
}

/// `"Z"`, `"0"`, `"Z^2 + Z/2"` and so on.
pub fn homology_strings(x: &FiniteSimplicialSet, top: usize) -> Vec<String> {
    homology(x, top)
        .into_iter()
        .map(|(r, t)| {
            let mut parts = Vec::new();
            match r {
                0 => {}
                1 => parts.push("Z".to_string()),
                _ => parts.push(format!("Z^{r}")),
            }
            parts.extend(t.iter().map(|d| format!("Z/{d}")));
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        })
        .collect()
}

fn chain_image(f: &SimplicialMap, c: CellId) -> Option<usize> {
    let s: &SimplexRef = f.on_cell(c);
    (!s.is_degenerate()).then(|| s.cell.index())
}

/// Whether the mapping cone of `f` is acyclic through degree `top + 1`.
pub fn cone_acyclic(f: &SimplicialMap, top: usize) -> bool {
    let (x, y) = (f.source(), f.target());
    // Cone_n = C_{n-1}(X) ⊕ C_n(Y); d(a, b) = (-da, f(a) + db).
    let dims = |n: usize| (if n == 0 { 0 } else { x.num_cells(n - 1) }) + y.num_cells(n);
    let cone_boundary = |n: usize| -> Matrix {
        let mut m = vec![vec![0i128; dims(n)]; if n == 0 { 0 } else { dims(n - 1) }];
        if n == 0 {
            return m;
        }
        let xoff_src = 0;
        let yoff_src = x.num_cells(n - 1);
        let yoff_dst = if n >= 2 { x.num_cells(n - 2) } else { 0 };
        if n >= 2 {
            let dx = boundary_matrix(x, n - 1);
            for (i, row) in dx.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    m[i][xoff_src + j] = -v;
                }
            }
        }
        for (j, c) in x.cells_of_dim(n - 1).enumerate() {
            if let Some(i) = chain_image(f, c) {
                m[yoff_dst + i][xoff_src + j] += 1;
            }
        }
        let dy = boundary_matrix(y, n);
        for (i, row) in dy.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[yoff_dst + i][yoff_src + j] = v;
            }
        }
        m
    };
    let ranks: Vec<usize> = (0..=top + 1).map(|n| invariant_factors(cone_boundary(n)).len()).collect();
    (0..=top + 1).all(|n| {
        let facs = invariant_factors(cone_boundary(n + 1));
        dims(n) - ranks[n] == facs.len() && facs.iter().all(|&d| d == 1)
    })
}

/// Connected components by BFS over edges.
pub fn components(x: &FiniteSimplicialSet) -> Vec<usize> {
    let n = x.num_cells(0);
    let mut adj = vec![Vec::new(); n];
    for e in x.cells_of_dim(1) {
        let (a, b) = (x.faces_of(e)[1].cell.index(), x.faces_of(e)[0].cell.index());
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut comp = vec![usize::MAX; n];
    let mut k = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([s]);
        comp[s] = k;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = k;
                    queue.push_back(w);
                }
            }
        }
        k += 1;
    }
    comp
}

pub fn pi0_bijective(f: &SimplicialMap) -> bool {
    let (cx, cy) = (components(f.source()), components(f.target()));
    let kx = cx.iter().copied().max().map_or(0, |m| m + 1);
    let ky = cy.iter().copied().max().map_or(0, |m| m + 1);
    let mut image = vec![None; kx];
    for v in f.source().cells_of_dim(0) {
        let w = f.on_cell(v).cell.index();
        match image[cx[v.index()]] {
            None => image[cx[v.index()]] = Some(cy[w]),
            Some(c) if c != cy[w] => return false,
            _ => {}
        }
    }
    let mut hit: Vec<usize> = image.into_iter().flatten().collect();
    hit.sort();
    hit.dedup();
    hit.len() == kx && kx == ky
}

/// A refutation the reference computation agrees with: `π0` is not
/// bijective or the mapping cone has homology.
pub fn genuine_mismatch(f: &SimplicialMap) -> bool {
    let top = [f.source(), f.target()].iter().map(|x| x.cell_counts().len()).max().unwrap_or(0);
    !pi0_bijective(f) || !cone_acyclic(f, top)
}
