//! Edge-path presentations of the fundamental group, Tietze simplification,
//! and elementary collapses.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::map::SimplicialMap;
use crate::sset::{CellId, FiniteSimplicialSet, SimplexRef};
use crate::union_find::UnionFind;

/// Letters are `±(generator + 1)`.
pub type Word = Vec<i32>;

/// A group presentation. Generators listed in `protected` are never
/// eliminated; relators flagged in `marked` are the ones whose triviality
/// is being asked about.
#[derive(Clone, Debug, Default)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
    pub marked: Vec<bool>,
    pub protected: HashSet<usize>,
}

/// Substitutions stop once any word grows past this many letters.
const WORD_CAP: usize = 4096;

fn letter_gen(l: i32) -> usize {
    l.unsigned_abs() as usize - 1
}

fn free_reduce(w: &mut Word) {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w.iter() {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    *w = out;
}

fn cyclic_reduce(w: &mut Word) {
    free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.remove(0);
        w.pop();
    }
}

fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

impl Presentation {
    /// Eliminates unprotected generators that occur exactly once in some
    /// relator, until none is left or words get too long. Returns the
    /// surviving unprotected generators.
    pub fn simplify(&mut self) -> BTreeSet<usize> {
        let mut alive: BTreeSet<usize> = (0..self.generators).collect();
        loop {
            for r in &mut self.relators {
                cyclic_reduce(r);
            }
            let mut keep = Vec::new();
            for (r, m) in self.relators.drain(..).zip(self.marked.drain(..)) {
                if !r.is_empty() {
                    keep.push((r, m));
                }
            }
            (self.relators, self.marked) = keep.into_iter().unzip();

            let mut choice: Option<(usize, usize)> = None;
            for (ri, r) in self.relators.iter().enumerate() {
                if choice.is_some_and(|(cj, _)| self.relators[cj].len() <= r.len()) {
                    continue;
                }
                let mut counts = std::collections::HashMap::new();
                for &l in r {
                    *counts.entry(letter_gen(l)).or_insert(0usize) += 1;
                }
                if let Some(g) = r.iter().map(|&l| letter_gen(l)).find(|g| counts[g] == 1 && !self.protected.contains(g)) {
                    choice = Some((ri, g));
                }
            }
            let Some((ri, g)) = choice else { break };
            let r = self.relators.remove(ri);
            self.marked.remove(ri);
            let pos = r.iter().position(|&l| letter_gen(l) == g).unwrap();
            // Rotate so the generator comes first: x^e w = 1.
            let rotated: Word = r[pos..].iter().chain(&r[..pos]).copied().collect();
            let rest = &rotated[1..];
            let value = if rotated[0] > 0 { inverse(rest) } else { rest.to_vec() };
            let value_inv = inverse(&value);
            let plus = g as i32 + 1;
            let mut too_long = false;
            for w in &mut self.relators {
                if !w.iter().any(|&l| letter_gen(l) == g) {
                    continue;
                }
                let mut out = Vec::with_capacity(w.len() + value.len());
                for &l in w.iter() {
                    if l == plus {
                        out.extend_from_slice(&value);
                    } else if l == -plus {
                        out.extend_from_slice(&value_inv);
                    } else {
                        out.push(l);
                    }
                }
                free_reduce(&mut out);
                too_long |= out.len() > WORD_CAP;
                *w = out;
            }
            alive.remove(&g);
            if too_long {
                break;
            }
        }
        for r in &mut self.relators {
            cyclic_reduce(r);
        }
        alive.retain(|g| !self.protected.contains(g));
        alive
    }

    /// Whether every marked relator has become trivial.
    pub fn marked_trivial(&self) -> bool {
        self.relators.iter().zip(&self.marked).all(|(r, &m)| !m || r.is_empty())
    }
}

/// The edge-path presentation of `x` relative to a subcomplex: the spanning
/// forest grows from the subcomplex first, generators and relators coming
/// from the subcomplex are protected, and the others are marked.
pub fn edge_path_presentation(x: &FiniteSimplicialSet, sub: Option<&HashSet<CellId>>) -> Presentation {
    let in_sub = |c: CellId| sub.is_some_and(|s| s.contains(&c));
    let mut uf = UnionFind::new(x.num_cells(0));
    let mut tree = HashSet::new();
    let edges: Vec<CellId> = x.cells_of_dim(1).collect();
    for pass in [true, false] {
        for &e in &edges {
            if in_sub(e) != pass {
                continue;
            }
            let fs = x.faces_of(e);
            if uf.union(fs[0].cell.index(), fs[1].cell.index()) {
                tree.insert(e);
            }
        }
    }
    let mut gen_of = vec![usize::MAX; edges.len()];
    let mut p = Presentation::default();
    for &e in &edges {
        if !tree.contains(&e) {
            gen_of[e.index()] = p.generators;
            if in_sub(e) {
                p.protected.insert(p.generators);
            }
            p.generators += 1;
        }
    }
    let letter = |s: &SimplexRef, sign: i32| -> Option<i32> {
        if s.is_degenerate() {
            return None;
        }
        let g = gen_of[s.cell.index()];
        (g != usize::MAX).then(|| sign * (g as i32 + 1))
    };
    for t in x.cells_of_dim(2) {
        let fs = x.faces_of(t);
        let w: Word = [letter(&fs[2], 1), letter(&fs[0], 1), letter(&fs[1], -1)].into_iter().flatten().collect();
        p.relators.push(w);
        p.marked.push(!in_sub(t));
    }
    p
}

/// Certifies that every component of `x` has trivial fundamental group.
/// `false` means only that the simplification did not finish.
pub fn is_simply_connected(x: &FiniteSimplicialSet) -> bool {
    let mut p = edge_path_presentation(x, None);
    p.simplify().is_empty()
}

/// Certifies that including `sub` into `x` is onto on fundamental groups
/// with no new relations: all new generators are eliminated and every new
/// relator becomes trivial. Assumes the inclusion is a bijection on
/// components.
pub fn is_pi1_iso_onto(x: &FiniteSimplicialSet, sub: &HashSet<CellId>) -> bool {
    let mut p = edge_path_presentation(x, Some(sub));
    p.simplify().is_empty() && p.marked_trivial()
}

/// Tries to collapse `x` onto the cells in `keep` by removing free faces.
/// A face is free when it is referenced exactly once by a live cell, that
/// reference is a nondegenerate codimension-one face, and the coface itself
/// is not referenced by anything.
pub fn collapses_onto(x: &FiniteSimplicialSet, keep: &HashSet<CellId>) -> bool {
    let top = if x.is_empty() { return true } else { x.max_dim() };
    let idx = |c: CellId| c.index();
    let mut refs: Vec<Vec<usize>> = (0..=top).map(|n| vec![0; x.num_cells(n)]).collect();
    let mut cofaces: Vec<Vec<Vec<CellId>>> = (0..=top).map(|n| vec![Vec::new(); x.num_cells(n)]).collect();
    for c in x.cells() {
        if c.dim() == 0 {
            continue;
        }
        for f in x.faces_of(c) {
            refs[f.cell.dim()][idx(f.cell)] += 1;
            cofaces[f.cell.dim()][idx(f.cell)].push(c);
        }
    }
    let mut alive: Vec<Vec<bool>> = (0..=top).map(|n| vec![true; x.num_cells(n)]).collect();
    let mut remaining = x.total_cells();
    let mut queue: VecDeque<CellId> = x.cells().collect();
    while let Some(y) = queue.pop_front() {
        if !alive[y.dim()][idx(y)] || keep.contains(&y) || refs[y.dim()][idx(y)] != 1 {
            continue;
        }
        let Some(&z) = cofaces[y.dim()][idx(y)].iter().find(|z| alive[z.dim()][idx(**z)]) else { continue };
        if keep.contains(&z) || z.dim() != y.dim() + 1 || refs[z.dim()][idx(z)] != 0 {
            continue;
        }
        if !x.faces_of(z).iter().any(|f| f.cell == y && !f.is_degenerate()) {
            continue;
        }
        alive[y.dim()][idx(y)] = false;
        alive[z.dim()][idx(z)] = false;
        remaining -= 2;
        for f in x.faces_of(z).iter().chain(x.faces_of(y)) {
            let c = f.cell;
            refs[c.dim()][idx(c)] -= 1;
            queue.push_back(c);
            // c may now be the unreferenced coface of a free face.
            if refs[c.dim()][idx(c)] == 0 && c.dim() > 0 {
                queue.extend(x.faces_of(c).iter().map(|g| g.cell));
            }
        }
    }
    remaining == keep.len()
}

/// Whether the target of the mono `f` collapses onto its image.
pub fn collapses_onto_image(f: &SimplicialMap) -> bool {
    f.is_mono() && collapses_onto(f.target(), &f.image_cells())
}

/// Whether `x` collapses to one of its vertices.
pub fn is_collapsible(x: &FiniteSimplicialSet) -> bool {
    x.vertices().any(|v| collapses_onto(x, &HashSet::from([v])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::*;

    #[test]
    fn presentations_of_small_spaces() {
        assert!(is_simply_connected(&standard_simplex(3)));
        assert!(is_simply_connected(&boundary(3)));
        assert!(!is_simply_connected(&circle()));
        assert!(!is_simply_connected(&rp2()));
        assert!(is_simply_connected(&cone(&rp2())));
    }

    #[test]
    fn collapses() {
        assert!(is_collapsible(&standard_simplex(3)));
        assert!(!is_collapsible(&boundary(2)));
        assert!(is_collapsible(&cone(&circle())));
        assert!(!is_collapsible(&circle()));
    }

    #[test]
    fn protected_generators_survive() {
        let x = boundary(2);
        let edges: HashSet<CellId> = x.cells().collect();
        assert!(is_pi1_iso_onto(&x, &edges));
    }
}
