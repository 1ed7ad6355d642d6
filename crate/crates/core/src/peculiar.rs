//! A pullback lemma for a ladder of finite sets.
//!
//! ```text
//! A  >->  X
//! |p      |
//! A' >->  X'
//! |       |q
//! B  >->  Y
//! ```
//! With monic horizontals, a pushout on top and a pullback outer rectangle,
//! the bottom square is a pullback.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::union_find::UnionFind;

/// Sets are `0..size`; maps are value tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ladder {
    pub a: usize,
    pub x: usize,
    pub a2: usize,
    pub x2: usize,
    pub b: usize,
    pub y: usize,
    pub a_x: Vec<usize>,
    pub p: Vec<usize>,
    pub x_x2: Vec<usize>,
    pub a2_x2: Vec<usize>,
    pub a2_b: Vec<usize>,
    pub q: Vec<usize>,
    pub b_y: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LadderVerdict {
    /// Preconditions hold and the bottom square is a pullback.
    Holds,
    /// Preconditions hold but the bottom square is not a pullback.
    Fails,
    Precondition { reason: String },
}

fn injective(f: &[usize]) -> bool {
    f.iter().collect::<HashSet<_>>().len() == f.len()
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&v| g[v]).collect()
}

/// Whether `P` with `P -> L`, `P -> R` is the pullback of `L -> Z <- R`.
fn is_pullback(p_l: &[usize], p_r: &[usize], l: &[usize], r: &[usize]) -> bool {
    let mut seen = HashSet::new();
    for (&u, &v) in p_l.iter().zip(p_r) {
        if l[u] != r[v] || !seen.insert((u, v)) {
            return false;
        }
    }
    let matching = (0..l.len()).flat_map(|u| (0..r.len()).map(move |v| (u, v))).filter(|&(u, v)| l[u] == r[v]).count();
    matching == seen.len()
}

/// Whether `X -> P <- A'` is the pushout of `X <- A -> A'`.
fn is_pushout(a_x: &[usize], p: &[usize], x_p: &[usize], a2_p: &[usize], x: usize, a2: usize, size: usize) -> bool {
    let mut uf = UnionFind::new(x + a2);
    for (&i, &j) in a_x.iter().zip(p) {
        uf.union(i, x + j);
    }
    let image: Vec<usize> = (0..x).map(|i| x_p[i]).chain((0..a2).map(|j| a2_p[j])).collect();
    // The comparison from the computed pushout must be a bijection.
    let mut class_image = std::collections::HashMap::new();
    for (k, &v) in image.iter().enumerate() {
        let c = uf.find(k);
        if *class_image.entry(c).or_insert(v) != v {
            return false;
        }
    }
    let values: HashSet<usize> = class_image.values().copied().collect();
    values.len() == class_image.len() && values.len() == size
}

impl Ladder {
    fn shapes_ok(&self) -> bool {
        let ok = |f: &[usize], dom: usize, cod: usize| f.len() == dom && f.iter().all(|&v| v < cod);
        ok(&self.a_x, self.a, self.x)
            && ok(&self.p, self.a, self.a2)
            && ok(&self.x_x2, self.x, self.x2)
            && ok(&self.a2_x2, self.a2, self.x2)
            && ok(&self.a2_b, self.a2, self.b)
            && ok(&self.q, self.x2, self.y)
            && ok(&self.b_y, self.b, self.y)
    }

    pub fn verify(&self) -> LadderVerdict {
        let pre = |reason: &str| LadderVerdict::Precondition { reason: reason.into() };
        if !self.shapes_ok() {
            return pre("map tables do not match the set sizes");
        }
        if !(injective(&self.a_x) && injective(&self.a2_x2) && injective(&self.b_y)) {
            return pre("a horizontal map is not injective");
        }
        if compose(&self.a_x, &self.x_x2) != compose(&self.p, &self.a2_x2) {
            return pre("top square does not commute");
        }
        if compose(&self.a2_x2, &self.q) != compose(&self.a2_b, &self.b_y) {
            return pre("bottom square does not commute");
        }
        if !is_pushout(&self.a_x, &self.p, &self.x_x2, &self.a2_x2, self.x, self.a2, self.x2) {
            return pre("top square is not a pushout");
        }
        let a_b = compose(&self.p, &self.a2_b);
        let x_y = compose(&self.x_x2, &self.q);
        if !is_pullback(&self.a_x, &a_b, &x_y, &self.b_y) {
            return pre("outer rectangle is not a pullback");
        }
        if is_pullback(&self.a2_x2, &self.a2_b, &self.q, &self.b_y) {
            LadderVerdict::Holds
        } else {
            LadderVerdict::Fails
        }
    }

    /// A random instance satisfying the preconditions, with sets of size at
    /// most `max`.
    pub fn random<R: Rng>(rng: &mut R, max: usize) -> Ladder {
        let y = rng.gen_range(1..=max);
        let mut ys: Vec<usize> = (0..y).collect();
        ys.shuffle(rng);
        let b = rng.gen_range(0..=y);
        let b_y = ys[..b].to_vec();
        let x = rng.gen_range(0..=max);
        let x_y: Vec<usize> = (0..x).map(|_| rng.gen_range(0..y)).collect();
        // A is the preimage of B in X.
        let a_x: Vec<usize> = (0..x).filter(|&i| b_y.contains(&x_y[i])).collect();
        let a = a_x.len();
        let a_b: Vec<usize> = a_x.iter().map(|&i| b_y.iter().position(|&v| v == x_y[i]).unwrap()).collect();
        // A' -> B with A -> A' over B: merge some points of A in the same
        // fibre and add a few extra points.
        let mut p = vec![usize::MAX; a];
        let mut a2_b = Vec::new();
        for i in 0..a {
            let join = (0..i).filter(|&j| a_b[j] == a_b[i]).collect::<Vec<_>>();
            if !join.is_empty() && rng.gen_bool(0.5) {
                p[i] = p[*join.choose(rng).unwrap()];
            } else {
                p[i] = a2_b.len();
                a2_b.push(a_b[i]);
            }
        }
        if b > 0 {
            for _ in 0..rng.gen_range(0..=2) {
                a2_b.push(rng.gen_range(0..b));
            }
        }
        let a2 = a2_b.len();
        // X' = X ⊔_A A': X \ A followed by A'.
        let outside: Vec<usize> = (0..x).filter(|i| !a_x.contains(i)).collect();
        let x2 = outside.len() + a2;
        let a2_x2: Vec<usize> = (0..a2).map(|j| outside.len() + j).collect();
        let x_x2: Vec<usize> = (0..x)
            .map(|i| match a_x.iter().position(|&k| k == i) {
                Some(pos) => a2_x2[p[pos]],
                None => outside.iter().position(|&k| k == i).unwrap(),
            })
            .collect();
        let mut q = vec![0; x2];
        for (k, &i) in outside.iter().enumerate() {
            q[k] = x_y[i];
        }
        for j in 0..a2 {
            q[a2_x2[j]] = b_y[a2_b[j]];
        }
        Ladder { a, x, a2, x2, b, y, a_x, p, x_x2, a2_x2, a2_b, q, b_y }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn identities(n: usize) -> Ladder {
        let id: Vec<usize> = (0..n).collect();
        Ladder {
            a: n,
            x: n,
            a2: n,
            x2: n,
            b: n,
            y: n,
            a_x: id.clone(),
            p: id.clone(),
            x_x2: id.clone(),
            a2_x2: id.clone(),
            a2_b: id.clone(),
            q: id.clone(),
            b_y: id,
        }
    }

    #[test]
    fn identity_ladder() {
        assert_eq!(identities(3).verify(), LadderVerdict::Holds);
    }

    #[test]
    fn empty_subsets() {
        // A = A' = B = ∅, X = X' over Y.
        let l = Ladder {
            a: 0,
            x: 2,
            a2: 0,
            x2: 2,
            b: 0,
            y: 1,
            a_x: vec![],
            p: vec![],
            x_x2: vec![0, 1],
            a2_x2: vec![],
            a2_b: vec![],
            q: vec![0, 0],
            b_y: vec![],
        };
        assert_eq!(l.verify(), LadderVerdict::Holds);
    }

    #[test]
    fn violated_preconditions_are_reported() {
        let mut l = identities(2);
        l.a_x = vec![0, 0];
        assert!(matches!(l.verify(), LadderVerdict::Precondition { .. }));
    }

    #[test]
    fn random_instances_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            assert_eq!(Ladder::random(&mut rng, 5).verify(), LadderVerdict::Holds);
        }
    }
}
