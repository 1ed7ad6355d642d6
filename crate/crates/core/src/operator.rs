//! Simplicial operators: weakly monotone maps `[m] -> [n]` of finite ordinals.
//!
//! An operator is stored as its explicit value list. Acting on a simplicial
//! set is contravariant: an operator `[m] -> [n]` sends n-simplices to
//! m-simplices.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type OpValues = SmallVec<[u8; 12]>;

/// A weakly monotone map `[domain_dim] -> [codomain_dim]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operator {
    codomain: u8,
    values: OpValues,
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->[{}]", self.values.as_slice(), self.codomain)
    }
}

/// One elementary step of an operator's action: apply `d_i` or `s_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    Face(usize),
    Degeneracy(usize),
}

impl Operator {
    pub fn new(values: &[usize], codomain_dim: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidOperator("empty value list".into()));
        }
        if codomain_dim > u8::MAX as usize || values.len() > u8::MAX as usize {
            return Err(Error::InvalidOperator("dimension too large".into()));
        }
        for w in values.windows(2) {
            if w[0] > w[1] {
                return Err(Error::InvalidOperator(format!("{values:?} is not monotone")));
            }
        }
        if values[values.len() - 1] > codomain_dim {
            return Err(Error::InvalidOperator(format!(
                "{values:?} exceeds codomain [{codomain_dim}]"
            )));
        }
        Ok(Self::from_values_unchecked(values.iter().map(|&v| v as u8).collect(), codomain_dim))
    }

    pub(crate) fn from_values_unchecked(values: OpValues, codomain_dim: usize) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        Operator { codomain: codomain_dim as u8, values }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_values_unchecked((0..=n as u8).collect(), n)
    }

    /// The coface `[n-1] -> [n]` that skips `i`; acts as the face `d_i`.
    pub fn face(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n, "face d_{i} undefined on [{n}]");
        let values = (0..=n as u8).filter(|&v| v as usize != i).collect();
        Self::from_values_unchecked(values, n)
    }

    /// The codegeneracy `[n+1] -> [n]` that repeats `i`; acts as `s_i`.
    pub fn degeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n, "degeneracy s_{i} undefined on [{n}]");
        let values = (0..=n as u8 + 1).map(|v| if v as usize > i { v - 1 } else { v }).collect();
        Self::from_values_unchecked(values, n)
    }

    /// The constant operator `[m] -> [n]` with value `v`.
    pub fn constant(m: usize, n: usize, v: usize) -> Self {
        assert!(v <= n);
        Self::from_values_unchecked(std::iter::repeat(v as u8).take(m + 1).collect(), n)
    }

    pub fn domain_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain as usize
    }

    pub fn values(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.values.iter().map(|&v| v as usize)
    }

    pub fn value(&self, i: usize) -> usize {
        self.values[i] as usize
    }

    pub fn raw_values(&self) -> &[u8] {
        &self.values
    }

    pub fn is_identity(&self) -> bool {
        self.domain_dim() == self.codomain_dim() && self.is_injective()
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.values[self.values.len() - 1] == self.codomain
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Operator) -> Operator {
        assert_eq!(
            inner.codomain_dim(),
            self.domain_dim(),
            "operators {inner:?} and {self:?} are not composable"
        );
        let values = inner.values.iter().map(|&v| self.values[v as usize]).collect();
        Self::from_values_unchecked(values, self.codomain_dim())
    }

    /// Factor `self = mono ∘ epi` with `epi` surjective and `mono` injective.
    pub fn epi_mono(&self) -> (Operator, Operator) {
        let mut image: OpValues = SmallVec::new();
        let mut epi: OpValues = SmallVec::with_capacity(self.values.len());
        for &v in &self.values {
            if image.last() != Some(&v) {
                image.push(v);
            }
            epi.push((image.len() - 1) as u8);
        }
        let k = image.len() - 1;
        let mono = Self::from_values_unchecked(image, self.codomain_dim());
        (Self::from_values_unchecked(epi, k), mono)
    }

    /// Indices `j` with `values[j] == values[j+1]`.
    pub fn repeated_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.windows(2).enumerate().filter(|(_, w)| w[0] == w[1]).map(|(j, _)| j)
    }

    /// Elementary steps, in application order, whose successive action
    /// equals the action of `self` on an n-simplex.
    pub fn elementary_sequence(&self) -> Vec<Elementary> {
        let (epi, mono) = self.epi_mono();
        let mut steps = Vec::new();
        // Faces: largest missing index first keeps smaller indices stable.
        let image: Vec<u8> = mono.values.to_vec();
        let mut missing: Vec<usize> =
            (0..=self.codomain_dim()).filter(|v| !image.contains(&(*v as u8))).collect();
        missing.reverse();
        steps.extend(missing.into_iter().map(Elementary::Face));
        degeneracy_steps(&epi, &mut steps);
        steps
    }

    /// All monotone maps `[m] -> [n]`.
    pub fn all_monotone(m: usize, n: usize) -> Vec<Operator> {
        let mut out = Vec::new();
        let mut current: OpValues = SmallVec::new();
        fn rec(m: usize, n: usize, lo: u8, cur: &mut OpValues, out: &mut Vec<Operator>) {
            if cur.len() == m + 1 {
                out.push(Operator::from_values_unchecked(cur.clone(), n));
                return;
            }
            for v in lo..=n as u8 {
                cur.push(v);
                rec(m, n, v, cur, out);
                cur.pop();
            }
        }
        rec(m, n, 0, &mut current, &mut out);
        out
    }

    /// All surjections `[m] -> [k]`, in lexicographic order.
    pub fn surjections(m: usize, k: usize) -> Vec<Operator> {
        if k > m {
            return Vec::new();
        }
        // Choose which k of the m gaps are steps.
        let mut out = Vec::new();
        let mut steps = vec![false; m];
        fn rec(pos: usize, left: usize, steps: &mut [bool], m: usize, k: usize, out: &mut Vec<Operator>) {
            if pos == m {
                if left == 0 {
                    let mut values: OpValues = SmallVec::with_capacity(m + 1);
                    let mut v = 0u8;
                    values.push(0);
                    for &s in steps.iter() {
                        if s {
                            v += 1;
                        }
                        values.push(v);
                    }
                    out.push(Operator::from_values_unchecked(values, k));
                }
                return;
            }
            if m - pos > left {
                steps[pos] = false;
                rec(pos + 1, left, steps, m, k, out);
            }
            if left > 0 {
                steps[pos] = true;
                rec(pos + 1, left - 1, steps, m, k, out);
                steps[pos] = false;
            }
        }
        rec(0, k, &mut steps, m, k, &mut out);
        out
    }

    /// All injections `[k] -> [n]`.
    pub fn injections(k: usize, n: usize) -> Vec<Operator> {
        let mut out = Vec::new();
        let mut cur: OpValues = SmallVec::new();
        fn rec(k: usize, n: usize, lo: usize, cur: &mut OpValues, out: &mut Vec<Operator>) {
            if cur.len() == k + 1 {
                out.push(Operator::from_values_unchecked(cur.clone(), n));
                return;
            }
            let need = k + 1 - cur.len();
            for v in lo..=n + 1 - need {
                cur.push(v as u8);
                rec(k, n, v + 1, cur, out);
                cur.pop();
            }
        }
        if k <= n {
            rec(k, n, 0, &mut cur, &mut out);
        }
        out
    }
}

fn degeneracy_steps(epi: &Operator, steps: &mut Vec<Elementary>) {
    // epi = rest ∘ σ_q for the largest repeated q; the action of σ_q comes last.
    let Some(q) = epi.repeated_positions().last() else {
        return;
    };
    let mut rest: OpValues = epi.values.clone();
    rest.remove(q + 1);
    let rest = Operator::from_values_unchecked(rest, epi.codomain_dim());
    degeneracy_steps(&rest, steps);
    steps.push(Elementary::Degeneracy(q));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_and_degeneracy_values() {
        assert_eq!(Operator::face(2, 1).raw_values(), &[0, 2]);
        assert_eq!(Operator::degeneracy(1, 0).raw_values(), &[0, 0, 1]);
        assert_eq!(Operator::degeneracy(1, 1).raw_values(), &[0, 1, 1]);
    }

    #[test]
    fn rejects_non_monotone() {
        assert!(Operator::new(&[1, 0], 1).is_err());
        assert!(Operator::new(&[0, 3], 2).is_err());
        assert!(Operator::new(&[], 2).is_err());
    }

    #[test]
    fn epi_mono_recomposes() {
        for op in Operator::all_monotone(3, 3) {
            let (e, m) = op.epi_mono();
            assert!(e.is_surjective());
            assert!(m.is_injective());
            assert_eq!(m.compose(&e), op);
            let (e2, m2) = m.compose(&e).epi_mono();
            assert_eq!((e2, m2), (e, m));
        }
    }

    #[test]
    fn counts() {
        assert_eq!(Operator::all_monotone(2, 2).len(), 10);
        assert_eq!(Operator::surjections(3, 1).len(), 3);
        assert_eq!(Operator::injections(1, 3).len(), 6);
    }

    #[test]
    fn simplicial_identities_on_cofaces() {
        // d_i d_j = d_{j-1} d_i for i < j, read as cofaces: δ_j δ_i = δ_i δ_{j-1}.
        for n in 2..5 {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = Operator::face(n, j).compose(&Operator::face(n - 1, i));
                    let rhs = Operator::face(n, i).compose(&Operator::face(n - 1, j - 1));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
