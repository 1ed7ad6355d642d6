//! Turning an explicitly enumerated simplicial set into normal form.
//!
//! The input lists every simplex (degenerate or not) of each degree as a key,
//! together with the operator action on keys. A key `k` of degree n is
//! degenerate exactly when `s_j d_j k = k` for some `j < n`.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::sset::{CellId, FiniteSimplicialSet, SimplexRef};

pub struct Normalized<K> {
    pub sset: FiniteSimplicialSet,
    /// The key of each cell, indexed like the cells.
    pub cell_keys: Vec<Vec<K>>,
    pub nf: HashMap<K, SimplexRef>,
}

impl<K: Eq + Hash> Normalized<K> {
    pub fn lookup(&self, k: &K) -> Option<&SimplexRef> {
        self.nf.get(k)
    }

    pub fn key(&self, c: CellId) -> &K {
        &self.cell_keys[c.dim()][c.index()]
    }
}

/// `levels[n]` lists all n-simplices; `act(k, op)` applies an operator
/// `[m] -> [n]` to an n-simplex key.
pub fn normalize<K, A, L>(levels: Vec<Vec<K>>, mut act: A, mut label: L) -> Result<Normalized<K>>
where
    K: Clone + Eq + Hash,
    A: FnMut(&K, &Operator) -> K,
    L: FnMut(&K) -> String,
{
    let mut nf: HashMap<K, SimplexRef> = HashMap::new();
    let mut names: Vec<Vec<String>> = Vec::new();
    let mut faces: Vec<Vec<Vec<SimplexRef>>> = Vec::new();
    let mut cell_keys: Vec<Vec<K>> = Vec::new();
    let face_ops: Vec<Vec<Operator>> =
        (0..levels.len()).map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| Operator::face(n, i)).collect() }).collect();
    for (n, keys) in levels.into_iter().enumerate() {
        let mut level_names = Vec::new();
        let mut level_faces = Vec::new();
        let mut level_keys = Vec::new();
        'keys: for k in keys {
            if nf.contains_key(&k) {
                continue;
            }
            let mut face_keys = Vec::with_capacity(n + 1);
            for op in &face_ops[n] {
                face_keys.push(act(&k, op));
            }
            for j in 0..n {
                let sigma = Operator::degeneracy(n - 1, j);
                if act(&face_keys[j], &sigma) == k {
                    let r = nf.get(&face_keys[j]).ok_or_else(|| {
                        Error::Precondition(format!("face of degree-{n} key missing from degree {}", n - 1))
                    })?;
                    let r = SimplexRef::new(r.cell, r.degeneracy.compose(&sigma));
                    nf.insert(k, r);
                    continue 'keys;
                }
            }
            let mut fs = Vec::with_capacity(face_keys.len());
            for fk in &face_keys {
                let r = nf.get(fk).ok_or_else(|| {
                    Error::Precondition(format!("face of degree-{n} key missing from degree {}", n - 1))
                })?;
                fs.push(r.clone());
            }
            let id = CellId::new(n, level_names.len());
            level_names.push(label(&k));
            level_faces.push(fs);
            nf.insert(k.clone(), SimplexRef::cell(id));
            level_keys.push(k);
        }
        names.push(level_names);
        faces.push(level_faces);
        cell_keys.push(level_keys);
    }
    let sset = FiniteSimplicialSet::from_parts(names, faces)?;
    cell_keys.truncate(sset.cell_counts().len());
    Ok(Normalized { sset, cell_keys, nf })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::standard_simplex;

    #[test]
    fn renormalizing_a_normal_form_is_identity() {
        let x = standard_simplex(2);
        let levels: Vec<Vec<SimplexRef>> = (0..=3).map(|m| x.simplices(m)).collect();
        let n = normalize(levels, |s, op| x.evaluate(s, op), |s| x.label(s)).unwrap();
        assert_eq!(n.sset.cell_counts(), vec![3, 3, 1]);
        for m in 0..=3 {
            for s in x.simplices(m) {
                let r = n.nf[&s].clone();
                assert_eq!(x.label(&s), n.sset.label(&r));
            }
        }
    }
}
