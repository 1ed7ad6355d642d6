//! Barycentric subdivision and Kan's `Ex`, truncated at a chosen degree.

use std::collections::HashMap;
use std::sync::Arc;

use crate::certificate::{certify_truncated, WeakEquivalenceCertificate};
use crate::error::{Error, Result};
use crate::kan::TargetIndex;
use crate::map::{SSet, SimplicialMap};
use crate::normalize::{normalize, Normalized};
use crate::operator::Operator;
use crate::sset::{CellId, FiniteSimplicialSet, SimplexRef};
use crate::standard::{simplex_cell_mask, standard_simplex, subset_name};

/// A simplex of `Sd X`: a cell of `X` and a weakly increasing chain of
/// nonempty vertex sets of that cell ending at the full set.
type SdKey = (CellId, Vec<u16>);

/// Default ceiling on the number of simplices enumerated for `Ex`.
pub const DEFAULT_EX_CAP: usize = 200_000;

fn full(n: usize) -> u16 {
    ((1u32 << (n + 1)) - 1) as u16
}

/// Moves a chain whose last set is not full down to the face it spans.
fn sd_normal(x: &FiniteSimplicialSet, c: CellId, chain: Vec<u16>) -> SdKey {
    let last = *chain.last().expect("nonempty chain");
    if last == full(c.dim()) {
        return (c, chain);
    }
    let verts: Vec<usize> = (0..=c.dim()).filter(|v| last & (1 << v) != 0).collect();
    let s = x.evaluate(&SimplexRef::cell(c), &Operator::new(&verts, c.dim()).unwrap());
    let rho = &s.degeneracy;
    let chain = chain
        .iter()
        .map(|&set| {
            verts.iter().enumerate().filter(|(_, &v)| set & (1 << v) != 0).fold(0u16, |m, (p, _)| m | (1 << rho.value(p)))
        })
        .collect();
    (s.cell, chain)
}

fn chains(n: usize, m: usize) -> Vec<Vec<u16>> {
    // Built from the top: each set is a nonempty subset of the next.
    let mut out = vec![vec![full(n)]];
    for _ in 0..m {
        let mut next = Vec::new();
        for ch in &out {
            let above = ch[0];
            let mut sub = above;
            while sub != 0 {
                let mut c = vec![sub];
                c.extend_from_slice(ch);
                next.push(c);
                sub = (sub - 1) & above;
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Keys are enumerated through `degree`, which may exceed the dimension so
/// that degenerate simplices can be looked up.
fn subdivide(x: &FiniteSimplicialSet, degree: usize) -> Result<Normalized<SdKey>> {
    let top = if x.is_empty() { 0 } else { x.max_dim().max(degree) };
    let levels: Vec<Vec<SdKey>> = (0..=top)
        .map(|m| x.cells().flat_map(|c| chains(c.dim(), m).into_iter().map(move |ch| (c, ch))).collect())
        .collect();
    normalize(
        levels,
        |(c, ch), op| sd_normal(x, *c, op.values().map(|j| ch[j]).collect()),
        |(c, ch)| {
            let parts: Vec<String> = ch.iter().map(|&s| subset_name(s as usize, c.dim())).collect();
            format!("{}({})", x.name(*c), parts.join("|"))
        },
    )
}

/// The barycentric subdivision.
pub fn subdivision(x: &FiniteSimplicialSet) -> Result<FiniteSimplicialSet> {
    Ok(subdivide(x, 0)?.sset)
}

pub struct ExResult {
    pub object: SSet,
    /// `X -> Ex X` through the last-vertex map; requires the truncation to
    /// reach the dimension of `X`.
    pub unit: Option<SimplicialMap>,
    pub truncation: usize,
}

impl ExResult {
    /// Compares `X` and `Ex X` below the truncation degree.
    pub fn certify_unit(&self) -> Option<WeakEquivalenceCertificate> {
        self.unit.as_ref().map(|u| certify_truncated(u, self.truncation))
    }
}

/// Global vertex sets of the chain of an `Sd Δ[p]` cell.
fn global_chain(delta: &FiniteSimplicialSet, key: &SdKey) -> Vec<u16> {
    let verts: Vec<usize> = {
        let mask = simplex_cell_mask(delta, key.0);
        (0..=delta.max_dim()).filter(|v| mask & (1 << v) != 0).collect()
    };
    key.1
        .iter()
        .map(|&s| verts.iter().enumerate().filter(|(i, _)| s & (1 << i) != 0).fold(0u16, |m, (_, &v)| m | (1 << v)))
        .collect()
}

/// `Ex X` in degrees up to `truncation`: the n-simplices are the maps
/// `Sd Δ[n] -> X`.
pub fn ex(x: &SSet, truncation: usize) -> Result<ExResult> {
    ex_capped(x, truncation, DEFAULT_EX_CAP)
}

pub fn ex_capped(x: &SSet, truncation: usize, cap: usize) -> Result<ExResult> {
    let deltas: Vec<FiniteSimplicialSet> = (0..=truncation).map(standard_simplex).collect();
    let sds: Vec<Normalized<SdKey>> = deltas.iter().map(|d| subdivide(d, truncation)).collect::<Result<_>>()?;
    let sd_sets: Vec<SSet> = sds.iter().map(|s| Arc::new(s.sset.clone())).collect();
    let index = TargetIndex::new(x, sd_sets.iter().map(|s| s.max_dim()).max().unwrap_or(0));
    let mut levels: Vec<Vec<(usize, Vec<Vec<SimplexRef>>)>> = Vec::new();
    let mut total = 0usize;
    for (m, sd) in sd_sets.iter().enumerate() {
        let mut level = Vec::new();
        let mut over = false;
        index.search(sd, &HashMap::new(), &|_, _| true, &mut |g| {
            total += 1;
            if total > cap {
                over = true;
                return false;
            }
            level.push((m, g.to_vec()));
            true
        });
        if over {
            return Err(Error::TooLarge(format!("Ex has more than {cap} simplices below degree {}", truncation + 1)));
        }
        levels.push(level);
    }
    // Sd(θ) for θ: [p] -> [m], as images of the cells of Sd Δ[p].
    let mut sd_maps: HashMap<Operator, Vec<Vec<SimplexRef>>> = HashMap::new();
    let mut sd_of = |op: &Operator| -> Vec<Vec<SimplexRef>> {
        sd_maps
            .entry(op.clone())
            .or_insert_with(|| {
                let (p, m) = (op.domain_dim(), op.codomain_dim());
                let top = CellId::new(m, 0);
                sds[p]
                    .cell_keys
                    .iter()
                    .map(|keys| {
                        keys.iter()
                            .map(|k| {
                                let chain: Vec<u16> = global_chain(&deltas[p], k)
                                    .iter()
                                    .map(|&s| (0..=p).filter(|v| s & (1 << v) != 0).fold(0u16, |acc, v| acc | (1 << op.value(v))))
                                    .collect();
                                sds[m].nf[&sd_normal(&deltas[m], top, chain)].clone()
                            })
                            .collect()
                    })
                    .collect()
            })
            .clone()
    };
    let mut counters = vec![0usize; truncation + 1];
    let normalized = normalize(
        levels,
        |(m, g), op| {
            debug_assert_eq!(*m, op.codomain_dim());
            let images = sd_of(op);
            let g2 = images
                .iter()
                .map(|lvl| lvl.iter().map(|s| x.evaluate(&g[s.cell.dim()][s.cell.index()], &s.degeneracy)).collect())
                .collect();
            (op.domain_dim(), g2)
        },
        |(m, _)| {
            // Cells are numbered in enumeration order, which is deterministic.
            let k = &mut counters[*m];
            *k += 1;
            format!("ex{m}.{}", *k - 1)
        },
    )?;
    let object: SSet = Arc::new(normalized.sset.clone());
    let dim = if x.is_empty() { 0 } else { x.max_dim() };
    let unit = (dim <= truncation).then(|| {
        SimplicialMap::from_fn_unchecked(x.clone(), object.clone(), |c| {
            let n = c.dim();
            let g: Vec<Vec<SimplexRef>> = sds[n]
                .cell_keys
                .iter()
                .map(|keys| {
                    keys.iter()
                        .map(|k| {
                            let maxima: Vec<usize> =
                                global_chain(&deltas[n], k).iter().map(|&s| 15 - s.leading_zeros() as usize).collect();
                            x.evaluate(&SimplexRef::cell(c), &Operator::new(&maxima, n).unwrap())
                        })
                        .collect()
                })
                .collect();
            normalized.nf[&(n, g)].clone()
        })
    });
    Ok(ExResult { object, unit, truncation })
}

/// `Ex` applied `k` times, each stage truncated at `truncation`.
pub fn ex_iter(x: &SSet, k: usize, truncation: usize) -> Result<SSet> {
    let mut cur = x.clone();
    for _ in 0..k {
        cur = ex(&cur, truncation)?.object;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::*;

    #[test]
    fn subdivided_simplices() {
        assert_eq!(subdivision(&standard_simplex(1)).unwrap().cell_counts(), vec![3, 2]);
        assert_eq!(subdivision(&standard_simplex(2)).unwrap().cell_counts(), vec![7, 12, 6]);
        assert_eq!(subdivision(&circle()).unwrap().cell_counts(), vec![2, 2]);
    }

    #[test]
    fn ex_of_a_point_is_a_point() {
        let r = ex(&Arc::new(point()), 3).unwrap();
        assert_eq!(r.object.cell_counts(), vec![1]);
    }

    #[test]
    fn ex_of_the_circle() {
        let s1 = Arc::new(circle());
        let r = ex(&s1, 2).unwrap();
        assert!(r.object.num_cells(1) > s1.num_cells(1));
        let cert = r.certify_unit().unwrap();
        assert!(cert.is_certified(), "{cert:?}");
    }
}
