//! Finite categories, functors between them, and composable strings.
//!
//! Arrows are numbered with the identity of object `o` at index `o`;
//! non-identity arrows follow. `compose(f, g)` is "f then g".

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// Present when the category is the poset of subsets of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetShape {
    pub n: usize,
    pub proper_only: bool,
    /// Bitmask of each object; bit `k-1` stands for element `k`.
    pub masks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    comp: HashMap<(usize, usize), usize>,
    subsets: Option<SubsetShape>,
}

/// A composable string `start -> ... ` of arrows, identities allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainString {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl ChainString {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

impl FiniteCategory {
    /// `arrows` are the non-identity arrows; `composites` lists
    /// `(first, second, result)` over the full arrow numbering for every
    /// composable pair of non-identity arrows.
    pub fn new(objects: Vec<String>, arrows: Vec<Arrow>, composites: &[(usize, usize, usize)]) -> Result<Self> {
        let n = objects.len();
        let mut all: Vec<Arrow> =
            objects.iter().enumerate().map(|(i, o)| Arrow { name: format!("id_{o}"), src: i, dst: i }).collect();
        for a in arrows {
            if a.src >= n || a.dst >= n {
                return Err(Error::Precondition(format!("arrow {} has an unknown endpoint", a.name)));
            }
            all.push(a);
        }
        let mut comp = HashMap::new();
        for (f, a) in all.iter().enumerate() {
            comp.insert((a.src, f), f);
            comp.insert((f, a.dst), f);
        }
        for &(f, g, h) in composites {
            if f < n || g < n {
                continue;
            }
            let (af, ag, ah) = match (all.get(f), all.get(g), all.get(h)) {
                (Some(a), Some(b), Some(c)) => (a, b, c),
                _ => return Err(Error::Precondition("composite refers to an unknown arrow".into())),
            };
            if af.dst != ag.src || ah.src != af.src || ah.dst != ag.dst {
                return Err(Error::Functoriality(format!("{} then {} cannot be {}", af.name, ag.name, ah.name)));
            }
            if comp.insert((f, g), h).is_some_and(|old| old != h) {
                return Err(Error::Functoriality(format!("{} then {} given twice", af.name, ag.name)));
            }
        }
        let mut c = FiniteCategory { objects, arrows: all, comp, subsets: None };
        c.check()?;
        c.subsets = c.recognize_subsets();
        Ok(c)
    }

    /// Detects a poset isomorphic to the (proper) subsets of a finite set,
    /// so the shape survives being rebuilt from an arrow table.
    fn recognize_subsets(&self) -> Option<SubsetShape> {
        let n = self.objects.len();
        let leq = |a: usize, b: usize| self.hom(a, b).next().is_some();
        for a in 0..n {
            for b in 0..n {
                if self.hom(a, b).count() > 1 || (a != b && leq(a, b) && leq(b, a)) {
                    return None;
                }
            }
        }
        let bottom = (0..n).find(|&a| (0..n).all(|b| leq(a, b)))?;
        let atoms: Vec<usize> =
            (0..n).filter(|&x| x != bottom && (0..n).all(|y| y == x || y == bottom || !leq(y, x))).collect();
        let k = atoms.len();
        if k >= usize::BITS as usize - 1 {
            return None;
        }
        let masks: Vec<usize> =
            (0..n).map(|x| atoms.iter().enumerate().filter(|&(_, &a)| leq(a, x)).map(|(i, _)| 1 << i).sum()).collect();
        let full = (1usize << k) - 1;
        let distinct: HashSet<usize> = masks.iter().copied().collect();
        let proper_only = match n {
            _ if n == full + 1 => false,
            _ if n == full && !distinct.contains(&full) => true,
            _ => return None,
        };
        let order_matches = (0..n).all(|a| (0..n).all(|b| leq(a, b) == (masks[a] & !masks[b] == 0)));
        (distinct.len() == n && order_matches).then_some(SubsetShape { n: k, proper_only, masks })
    }

    /// Totality, associativity and unit laws on the full table.
    pub fn check(&self) -> Result<()> {
        let m = self.arrows.len();
        for f in 0..m {
            for g in 0..m {
                if self.arrows[f].dst != self.arrows[g].src {
                    continue;
                }
                if !self.comp.contains_key(&(f, g)) {
                    return Err(Error::Functoriality(format!(
                        "missing composite of {} then {}",
                        self.arrows[f].name, self.arrows[g].name
                    )));
                }
            }
        }
        for f in 0..m {
            for g in self.out_arrows(self.arrows[f].dst) {
                let fg = self.comp[&(f, g)];
                for h in self.out_arrows(self.arrows[g].dst) {
                    if self.comp[&(fg, h)] != self.comp[&(f, self.comp[&(g, h)])] {
                        return Err(Error::Functoriality(format!(
                            "composition not associative at {}, {}, {}",
                            self.arrows[f].name, self.arrows[g].name, self.arrows[h].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn discrete(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect(), Vec::new(), &[]).unwrap()
    }

    /// `a <- c -> b`, with arrows `f: c -> a` and `g: c -> b`.
    pub fn span() -> Self {
        Self::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![Arrow { name: "f".into(), src: 2, dst: 0 }, Arrow { name: "g".into(), src: 2, dst: 1 }],
            &[],
        )
        .unwrap()
    }

    /// The poset `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::poset((0..n).map(|i| i.to_string()).collect(), |a, b| a <= b).unwrap()
    }

    /// The thin category of a partial order on `0..objects.len()`.
    pub fn poset(objects: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = objects.len();
        let mut index = BTreeMap::new();
        let mut arrows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq(a, b) {
                    if leq(b, a) {
                        return Err(Error::Precondition("relation is not antisymmetric".into()));
                    }
                    index.insert((a, b), n + arrows.len());
                    arrows.push(Arrow { name: format!("{}<{}", objects[a], objects[b]), src: a, dst: b });
                }
            }
        }
        let mut composites = Vec::new();
        for (&(a, b), &f) in &index {
            for c in 0..n {
                if let Some(&g) = index.get(&(b, c)) {
                    let h = *index
                        .get(&(a, c))
                        .ok_or_else(|| Error::Precondition("relation is not transitive".into()))?;
                    composites.push((f, g, h));
                }
            }
        }
        Self::new(objects, arrows, &composites)
    }

    /// Subsets of `{1..n}` ordered by inclusion, optionally without `{1..n}`.
    pub fn subset_poset(n: usize, proper_only: bool) -> Self {
        let full = (1usize << n) - 1;
        let mut masks: Vec<usize> = (0..=full).filter(|&m| !(proper_only && m == full)).collect();
        masks.sort_by_key(|&m| (m.count_ones(), m));
        let names = masks.iter().map(|&m| subset_label(m, n)).collect();
        let ms = masks.clone();
        let mut c = Self::poset(names, move |a, b| ms[a] & !ms[b] == 0).unwrap();
        c.subsets = Some(SubsetShape { n, proper_only, masks });
        c
    }

    /// The free category on a finite directed acyclic graph.
    pub fn free(objects: Vec<String>, generators: &[Arrow]) -> Result<Self> {
        let n = objects.len();
        // Paths as generator sequences; enumerate by length.
        let mut paths: Vec<Vec<usize>> = (0..generators.len()).map(|g| vec![g]).collect();
        let mut frontier = paths.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let end = generators[*p.last().unwrap()].dst;
                for (g, a) in generators.iter().enumerate() {
                    if a.src == end {
                        let mut q = p.clone();
                        q.push(g);
                        if q.len() > generators.len() {
                            return Err(Error::Precondition("generating graph has a cycle".into()));
                        }
                        next.push(q);
                    }
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
        }
        let index: HashMap<Vec<usize>, usize> = paths.iter().enumerate().map(|(i, p)| (p.clone(), n + i)).collect();
        let arrows: Vec<Arrow> = paths
            .iter()
            .map(|p| Arrow {
                name: p.iter().map(|&g| generators[g].name.as_str()).collect::<Vec<_>>().join(";"),
                src: generators[p[0]].src,
                dst: generators[*p.last().unwrap()].dst,
            })
            .collect();
        let mut composites = Vec::new();
        for p in &paths {
            for q in &paths {
                if generators[*p.last().unwrap()].dst == generators[q[0]].src {
                    let mut pq = p.clone();
                    pq.extend(q);
                    composites.push((index[p], index[q], index[&pq]));
                }
            }
        }
        Self::new(objects, arrows, &composites)
    }

    /// Objects are arrows `a: j -> i`; a morphism `a -> b` is an arrow `h`
    /// with `h` then `b` equal to `a`. Returns the forgetful functor too.
    pub fn over(self: &Arc<Self>, i: usize) -> Result<(Arc<FiniteCategory>, Functor)> {
        if i >= self.objects.len() {
            return Err(Error::Precondition(format!("no object {i}")));
        }
        let objs: Vec<usize> = (0..self.arrows.len()).filter(|&a| self.arrows[a].dst == i).collect();
        let names: Vec<String> = objs.iter().map(|&a| self.arrows[a].name.clone()).collect();
        let mut arrows = Vec::new();
        let mut under: Vec<usize> = objs.iter().map(|&a| self.arrows[a].src).collect();
        let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for (ka, &a) in objs.iter().enumerate() {
            for (kb, &b) in objs.iter().enumerate() {
                for h in self.out_arrows(self.arrows[a].src) {
                    if self.arrows[h].dst != self.arrows[b].src || self.comp[&(h, b)] != a {
                        continue;
                    }
                    if self.is_identity(h) && ka == kb {
                        continue;
                    }
                    index.insert((ka, kb, h), objs.len() + arrows.len());
                    arrows.push(Arrow { name: format!("{}:{}->{}", self.arrows[h].name, names[ka], names[kb]), src: ka, dst: kb });
                    under.push(h);
                }
            }
        }
        let mut composites = Vec::new();
        for (&(ka, kb, h), &f) in &index {
            for (&(kb2, kc, h2), &g) in &index {
                if kb2 == kb {
                    let hh = self.comp[&(h, h2)];
                    let r = if ka == kc && self.is_identity(hh) { ka } else { index[&(ka, kc, hh)] };
                    composites.push((f, g, r));
                }
            }
        }
        let cat = Arc::new(FiniteCategory::new(names, arrows, &composites)?);
        let on_objects: Vec<usize> = objs.iter().map(|&a| self.arrows[a].src).collect();
        let on_arrows: Vec<usize> = {
            // Identity arrows of the over category come first.
            let mut v: Vec<usize> = on_objects.clone();
            v.extend(under.drain(objs.len()..));
            v
        };
        let functor = Functor::new(cat.clone(), self.clone(), on_objects, on_arrows)?;
        Ok((cat, functor))
    }

    pub fn opposite(&self) -> Self {
        let n = self.objects.len();
        let arrows: Vec<Arrow> = self.arrows[n..]
            .iter()
            .map(|a| Arrow { name: a.name.clone(), src: a.dst, dst: a.src })
            .collect();
        let composites: Vec<(usize, usize, usize)> =
            self.comp.iter().filter(|((f, g), _)| *f >= n && *g >= n).map(|(&(f, g), &h)| (g, f, h)).collect();
        FiniteCategory::new(self.objects.clone(), arrows, &composites).expect("opposite of a category")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.arrows[f]
    }

    pub fn identity(&self, o: usize) -> usize {
        o
    }

    pub fn is_identity(&self, f: usize) -> bool {
        f < self.objects.len()
    }

    pub fn non_identity_arrows(&self) -> impl Iterator<Item = usize> {
        self.objects.len()..self.arrows.len()
    }

    /// `f` then `g`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.comp.get(&(f, g)).copied()
    }

    pub fn out_arrows(&self, o: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&f| self.arrows[f].src == o)
    }

    pub fn hom(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&f| self.arrows[f].src == a && self.arrows[f].dst == b)
    }

    pub fn subset_shape(&self) -> Option<&SubsetShape> {
        self.subsets.as_ref()
    }

    /// The composite of a string's arrows from position `from` to `to`
    /// (object indices along the string); the identity when equal.
    pub fn string_composite(&self, s: &ChainString, from: usize, to: usize) -> usize {
        let mut f = self.identity(self.string_object(s, from));
        for k in from..to {
            f = self.comp[&(f, s.arrows[k])];
        }
        f
    }

    pub fn string_object(&self, s: &ChainString, k: usize) -> usize {
        if k == 0 {
            s.start
        } else {
            self.arrows[s.arrows[k - 1]].dst
        }
    }

    /// All composable strings of `n` arrows, identities included.
    pub fn strings(&self, n: usize) -> Vec<ChainString> {
        let mut out: Vec<ChainString> = (0..self.objects.len()).map(|o| ChainString { start: o, arrows: Vec::new() }).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for s in &out {
                let end = self.string_object(s, s.len());
                for f in self.out_arrows(end) {
                    let mut t = s.clone();
                    t.arrows.push(f);
                    next.push(t);
                }
            }
            out = next;
        }
        out
    }

    /// Length of the longest string of non-identity arrows; an error if
    /// such strings are unbounded.
    pub fn nerve_dim(&self) -> Result<usize> {
        let n = self.objects.len();
        let mut longest: Vec<Option<usize>> = vec![None; n];
        let mut state = vec![0u8; n];
        fn visit(c: &FiniteCategory, o: usize, longest: &mut [Option<usize>], state: &mut [u8]) -> Result<usize> {
            if let Some(l) = longest[o] {
                return Ok(l);
            }
            if state[o] == 1 {
                return Err(Error::Precondition("category has a cycle of non-identity arrows".into()));
            }
            state[o] = 1;
            let mut best = 0;
            for f in c.non_identity_arrows() {
                if c.arrows[f].src == o {
                    if c.arrows[f].dst == o {
                        return Err(Error::Precondition("category has a non-identity endomorphism".into()));
                    }
                    best = best.max(1 + visit(c, c.arrows[f].dst, longest, state)?);
                }
            }
            state[o] = 2;
            longest[o] = Some(best);
            Ok(best)
        }
        let mut best = 0;
        for o in 0..n {
            best = best.max(visit(self, o, &mut longest, &mut state)?);
        }
        Ok(best)
    }

    /// Objects in an order where every non-identity arrow goes forward.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        self.nerve_dim()?;
        let n = self.objects.len();
        let mut indeg = vec![0usize; n];
        for f in self.non_identity_arrows() {
            indeg[self.arrows[f].dst] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&o| indeg[o] == 0).rev().collect();
        let mut out = Vec::new();
        while let Some(o) = ready.pop() {
            out.push(o);
            for f in self.non_identity_arrows() {
                if self.arrows[f].src == o {
                    let d = self.arrows[f].dst;
                    indeg[d] -= 1;
                    if indeg[d] == 0 {
                        ready.push(d);
                    }
                }
            }
        }
        Ok(out)
    }
}

pub fn subset_label(mask: usize, n: usize) -> String {
    let parts: Vec<String> = (1..=n).filter(|k| mask & (1 << (k - 1)) != 0).map(|k| k.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

#[derive(Clone, Debug)]
pub struct Functor {
    pub source: Arc<FiniteCategory>,
    pub target: Arc<FiniteCategory>,
    pub on_objects: Vec<usize>,
    pub on_arrows: Vec<usize>,
}

impl Functor {
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        on_objects: Vec<usize>,
        on_arrows: Vec<usize>,
    ) -> Result<Self> {
        let f = Functor { source, target, on_objects, on_arrows };
        f.check()?;
        Ok(f)
    }

    pub fn check(&self) -> Result<()> {
        let s = &self.source;
        let t = &self.target;
        if self.on_objects.len() != s.num_objects() || self.on_arrows.len() != s.num_arrows() {
            return Err(Error::Functoriality("functor tables have the wrong size".into()));
        }
        for (a, arrow) in s.arrows().iter().enumerate() {
            let b = t.arrow(self.on_arrows[a]);
            if b.src != self.on_objects[arrow.src] || b.dst != self.on_objects[arrow.dst] {
                return Err(Error::Functoriality(format!("arrow {} lands between the wrong objects", arrow.name)));
            }
        }
        for o in 0..s.num_objects() {
            if !t.is_identity(self.on_arrows[o]) {
                return Err(Error::Functoriality(format!("identity of {} not preserved", s.objects()[o])));
            }
        }
        for f in 0..s.num_arrows() {
            for g in s.out_arrows(s.arrow(f).dst) {
                let lhs = self.on_arrows[s.compose(f, g).unwrap()];
                let rhs = t.compose(self.on_arrows[f], self.on_arrows[g]).unwrap();
                if lhs != rhs {
                    return Err(Error::Functoriality(format!(
                        "composite of {} then {} not preserved",
                        s.arrow(f).name,
                        s.arrow(g).name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn map_string(&self, s: &ChainString) -> ChainString {
        ChainString { start: self.on_objects[s.start], arrows: s.arrows.iter().map(|&a| self.on_arrows[a]).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_strings() {
        let c = FiniteCategory::span();
        // Three identity strings and two non-identity arrows.
        assert_eq!(c.strings(1).len(), 5);
        assert_eq!(c.nerve_dim().unwrap(), 1);
    }

    #[test]
    fn subset_poset_sizes() {
        let c = FiniteCategory::subset_poset(3, true);
        assert_eq!(c.num_objects(), 7);
        assert_eq!(c.nerve_dim().unwrap(), 2);
        assert_eq!(c.objects()[0], "{}");
    }

    #[test]
    fn subset_posets_are_recognized_from_their_tables() {
        let c = FiniteCategory::subset_poset(3, true);
        let arrows: Vec<Arrow> = c.non_identity_arrows().map(|a| c.arrow(a).clone()).collect();
        let n = c.num_objects();
        let mut table = Vec::new();
        for f in c.non_identity_arrows() {
            for g in c.non_identity_arrows() {
                if let Some(h) = c.compose(f, g) {
                    table.push((f, g, h));
                }
            }
        }
        let rebuilt = FiniteCategory::new(c.objects().to_vec(), arrows, &table).unwrap();
        let s = rebuilt.subset_shape().unwrap();
        assert_eq!((s.n, s.proper_only, s.masks.len()), (3, true, n));
        assert!(FiniteCategory::chain(3).subset_shape().is_none());
        // A span is the proper subsets of a two-element set.
        assert!(FiniteCategory::span().subset_shape().is_some_and(|s| s.proper_only && s.n == 2));
    }

    #[test]
    fn free_category_paths() {
        let c = FiniteCategory::free(
            vec!["x".into(), "y".into(), "z".into()],
            &[
                Arrow { name: "p".into(), src: 0, dst: 1 },
                Arrow { name: "q".into(), src: 1, dst: 2 },
                Arrow { name: "r".into(), src: 0, dst: 2 },
            ],
        )
        .unwrap();
        // Two parallel arrows x -> z: r and p;q.
        assert_eq!(c.hom(0, 2).count(), 2);
        assert_eq!(c.nerve_dim().unwrap(), 2);
    }

    #[test]
    fn over_category_of_chain_top() {
        let c = Arc::new(FiniteCategory::chain(3));
        let (over, u) = c.over(2).unwrap();
        assert_eq!(over.num_objects(), 3);
        assert!(u.check().is_ok());
        let op = c.opposite();
        assert!(op.check().is_ok());
    }

    #[test]
    fn incomplete_table_rejected() {
        let r = FiniteCategory::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![Arrow { name: "f".into(), src: 0, dst: 1 }, Arrow { name: "g".into(), src: 1, dst: 2 }],
            &[],
        );
        assert!(r.is_err());
    }
}
