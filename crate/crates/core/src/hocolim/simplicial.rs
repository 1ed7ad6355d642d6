//! Simplicial objects in finite simplicial sets, tabulated up to a level.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::{same_set, SSet, SimplicialMap};
use crate::normalize::{normalize, Normalized};
use crate::operator::{Elementary, Operator};
use crate::sset::{CellId, SimplexRef};

#[derive(Clone, Debug)]
pub struct SimplicialObject {
    levels: Vec<SSet>,
    /// `faces[n][i]: X(n) -> X(n-1)`.
    faces: Vec<Vec<SimplicialMap>>,
    /// `degeneracies[n][i]: X(n) -> X(n+1)`, for `n` below the top level.
    degeneracies: Vec<Vec<SimplicialMap>>,
}

impl SimplicialObject {
    pub fn new(levels: Vec<SSet>, faces: Vec<Vec<SimplicialMap>>, degeneracies: Vec<Vec<SimplicialMap>>) -> Result<Self> {
        let x = SimplicialObject { levels, faces, degeneracies };
        x.check()?;
        Ok(x)
    }

    pub(crate) fn new_unchecked(
        levels: Vec<SSet>,
        faces: Vec<Vec<SimplicialMap>>,
        degeneracies: Vec<Vec<SimplicialMap>>,
    ) -> Self {
        SimplicialObject { levels, faces, degeneracies }
    }

    /// The constant object at `k`, tabulated through level `top`.
    pub fn constant(k: SSet, top: usize) -> Self {
        let id = SimplicialMap::identity(k.clone());
        SimplicialObject {
            levels: vec![k; top + 1],
            faces: (0..=top).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
            degeneracies: (0..top).map(|n| vec![id.clone(); n + 1]).collect(),
        }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &SSet {
        &self.levels[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &SimplicialMap {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> &SimplicialMap {
        &self.degeneracies[n][i]
    }

    /// Checks shapes, endpoints and every simplicial identity.
    pub fn check(&self) -> Result<()> {
        let top = self.top();
        let bad = |m: String| Err(Error::Functoriality(m));
        if self.faces.len() != top + 1 || self.degeneracies.len() != top {
            return bad("operator tables do not match the levels".into());
        }
        for n in 1..=top {
            if self.faces[n].len() != n + 1 {
                return bad(format!("level {n} needs {} faces", n + 1));
            }
            for f in &self.faces[n] {
                if !same_set(f.source(), &self.levels[n]) || !same_set(f.target(), &self.levels[n - 1]) {
                    return bad(format!("a face of level {n} has the wrong endpoints"));
                }
            }
        }
        for n in 0..top {
            if self.degeneracies[n].len() != n + 1 {
                return bad(format!("level {n} needs {} degeneracies", n + 1));
            }
            for s in &self.degeneracies[n] {
                if !same_set(s.source(), &self.levels[n]) || !same_set(s.target(), &self.levels[n + 1]) {
                    return bad(format!("a degeneracy of level {n} has the wrong endpoints"));
                }
            }
        }
        // Identities as actions on elements: `d_i d_j` applies `d_j` first.
        let then = |a: &SimplicialMap, b: &SimplicialMap| a.then_unchecked(b);
        for n in 2..=top {
            for j in 1..=n {
                for i in 0..j {
                    if then(&self.faces[n][j], &self.faces[n - 1][i]) != then(&self.faces[n][i], &self.faces[n - 1][j - 1]) {
                        return bad(format!("d_{i} d_{j} != d_{} d_{i} on level {n}", j - 1));
                    }
                }
            }
        }
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    if then(&self.degeneracies[n][j], &self.degeneracies[n + 1][i])
                        != then(&self.degeneracies[n][i], &self.degeneracies[n + 1][j + 1])
                    {
                        return bad(format!("s_{i} s_{j} != s_{} s_{i} on level {n}", j + 1));
                    }
                }
            }
        }
        for n in 0..top {
            let id = SimplicialMap::identity(self.levels[n].clone());
            for j in 0..=n {
                let s = &self.degeneracies[n][j];
                for i in 0..=n + 1 {
                    let lhs = then(s, &self.faces[n + 1][i]);
                    let ok = if i == j || i == j + 1 {
                        lhs == id
                    } else if i < j {
                        lhs == then(&self.faces[n][i], &self.degeneracies[n - 1][j - 1])
                    } else {
                        lhs == then(&self.faces[n][i - 1], &self.degeneracies[n - 1][j])
                    };
                    if !ok {
                        return bad(format!("d_{i} s_{j} identity fails on level {n}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `X(θ)` applied to a simplex of `X(n)`, for `θ: [m] -> [n]`.
    pub fn act_on(&self, op: &Operator, s: &SimplexRef) -> SimplexRef {
        let mut deg = op.codomain_dim();
        let mut cur = s.clone();
        for step in op.elementary_sequence() {
            match step {
                Elementary::Face(i) => {
                    cur = self.faces[deg][i].apply(&cur);
                    deg -= 1;
                }
                Elementary::Degeneracy(i) => {
                    cur = self.degeneracies[deg][i].apply(&cur);
                    deg += 1;
                }
            }
        }
        cur
    }

    /// `X(θ): X(n) -> X(m)` as a map.
    pub fn act(&self, op: &Operator) -> SimplicialMap {
        let src = self.levels[op.codomain_dim()].clone();
        let dst = self.levels[op.domain_dim()].clone();
        SimplicialMap::from_fn_unchecked(src, dst, |c| self.act_on(op, &SimplexRef::cell(c)))
    }

    /// The same object with its levels cut off above `top`.
    pub fn truncate(&self, top: usize) -> Self {
        let top = top.min(self.top());
        SimplicialObject {
            levels: self.levels[..=top].to_vec(),
            faces: self.faces[..=top].to_vec(),
            degeneracies: self.degeneracies[..top].to_vec(),
        }
    }
}

/// A levelwise map of simplicial objects.
#[derive(Clone, Debug)]
pub struct SimplicialObjectMap {
    pub source: SimplicialObject,
    pub target: SimplicialObject,
    pub components: Vec<SimplicialMap>,
}

impl SimplicialObjectMap {
    pub fn new(source: SimplicialObject, target: SimplicialObject, components: Vec<SimplicialMap>) -> Result<Self> {
        let m = SimplicialObjectMap { source, target, components };
        m.check()?;
        Ok(m)
    }

    pub fn check(&self) -> Result<()> {
        let top = self.source.top();
        if self.target.top() != top || self.components.len() != top + 1 {
            return Err(Error::Functoriality("simplicial objects tabulated to different levels".into()));
        }
        for n in 0..=top {
            let c = &self.components[n];
            if !same_set(c.source(), self.source.level(n)) || !same_set(c.target(), self.target.level(n)) {
                return Err(Error::Functoriality(format!("component {n} has the wrong endpoints")));
            }
            for i in 0..=n {
                if n > 0 {
                    let lhs = self.source.face(n, i).then_unchecked(&self.components[n - 1]);
                    if lhs != c.then_unchecked(self.target.face(n, i)) {
                        return Err(Error::Functoriality(format!("component {n} does not commute with d_{i}")));
                    }
                }
                if n < top {
                    let lhs = self.source.degeneracy(n, i).then_unchecked(&self.components[n + 1]);
                    if lhs != c.then_unchecked(self.target.degeneracy(n, i)) {
                        return Err(Error::Functoriality(format!("component {n} does not commute with s_{i}")));
                    }
                }
            }
        }
        Ok(())
    }
}

type DiagKey = (usize, SimplexRef);

/// The diagonal `[n] -> X(n)_n`.
pub struct Diagonal {
    pub object: SSet,
    normalized: Normalized<DiagKey>,
}

impl Diagonal {
    /// The level and level simplex behind a cell.
    pub fn key(&self, c: CellId) -> &DiagKey {
        self.normalized.key(c)
    }

    /// Normal form of the n-simplex `s` of level n.
    pub fn lookup(&self, n: usize, s: &SimplexRef) -> Option<&SimplexRef> {
        self.normalized.lookup(&(n, s.clone()))
    }
}

/// The diagonal through degree `bound`; levels must be tabulated that far.
pub fn diagonal(x: &SimplicialObject, bound: usize) -> Result<Diagonal> {
    if bound > x.top() {
        return Err(Error::DimensionCap { dim: bound, cap: x.top() });
    }
    let levels: Vec<Vec<DiagKey>> = (0..=bound).map(|n| x.level(n).simplices(n).into_iter().map(|s| (n, s)).collect()).collect();
    let normalized = normalize(
        levels,
        |(_, s), op| {
            let m = op.domain_dim();
            (m, x.level(m).evaluate(&x.act_on(op, s), op))
        },
        |(n, s)| format!("{n}|{}", x.level(*n).label(s)),
    )?;
    Ok(Diagonal { object: Arc::new(normalized.sset.clone()), normalized })
}

/// The map of diagonals induced by a levelwise map.
pub fn diagonal_map(f: &SimplicialObjectMap, source: &Diagonal, target: &Diagonal) -> SimplicialMap {
    SimplicialMap::from_fn_unchecked(source.object.clone(), target.object.clone(), |c| {
        let (n, s) = source.key(c);
        target.lookup(*n, &f.components[*n].apply(s)).expect("diagonal tabulated far enough").clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::*;

    #[test]
    fn constant_object_has_the_value_as_diagonal() {
        let k = Arc::new(rp2());
        let x = SimplicialObject::constant(k.clone(), 3);
        assert!(x.check().is_ok());
        let d = diagonal(&x, 3).unwrap();
        assert_eq!(d.object.cell_counts(), k.cell_counts());
    }
}
