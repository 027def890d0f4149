//! Homomorphisms, embeddings and isomorphisms between finite algebras.

use super::{FiniteRL, Op};
use serde::Serialize;

/// An operation-preserving map between two algebras, as an index array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Morphism {
    pub map: Vec<usize>,
}

impl Morphism {
    pub fn new(map: Vec<usize>) -> Self {
        Morphism { map }
    }

    pub fn identity(n: usize) -> Self {
        Morphism {
            map: (0..n).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `other ∘ self`
    pub fn then(&self, other: &Morphism) -> Morphism {
        Morphism {
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.iter().all(|x| seen.insert(*x))
    }
}

/// Kind of map sought by [`search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Homomorphism,
    Embedding,
}

/// Checks that `map` preserves every operation, the unit, and the zero when
/// both algebras have one.
pub fn is_homomorphism(src: &FiniteRL, dst: &FiniteRL, map: &[usize]) -> bool {
    first_broken(src, dst, map).is_none()
}

/// First operation instance that `map` fails to preserve, for diagnostics.
pub fn first_broken(src: &FiniteRL, dst: &FiniteRL, map: &[usize]) -> Option<String> {
    if map.len() != src.n() || map.iter().any(|&v| v >= dst.n()) {
        return Some("map has wrong shape".into());
    }
    if map[src.unit()] != dst.unit() {
        return Some("unit not preserved".into());
    }
    if let (Some(a), Some(b)) = (src.zero(), dst.zero()) {
        if map[a] != b {
            return Some("zero not preserved".into());
        }
    }
    for x in src.elements() {
        for y in src.elements() {
            for op in Op::ALL {
                if map[src.op(op, x, y)] != dst.op(op, map[x], map[y]) {
                    return Some(format!("{} not preserved at ({x}, {y})", op.name()));
                }
            }
        }
    }
    None
}

pub fn is_embedding(src: &FiniteRL, dst: &FiniteRL, map: &[usize]) -> bool {
    is_homomorphism(src, dst, map) && Morphism::new(map.to_vec()).is_injective()
}

struct Ctx<'a> {
    src: &'a FiniteRL,
    dst: &'a FiniteRL,
    kind: MapKind,
    /// for each element x, the (op, y, z) with op(y, z) = x
    producers: Vec<Vec<(Op, usize, usize)>>,
    fixed: &'a [Option<usize>],
    limit: usize,
    out: Vec<Vec<usize>>,
}

impl Ctx<'_> {
    fn consistent(&self, map: &[Option<usize>], x: usize, v: usize) -> bool {
        let (s, d) = (self.src, self.dst);
        if s.is_idempotent(x) && !d.is_idempotent(v) {
            return false;
        }
        for y in 0..s.n() {
            let Some(w) = (if y == x { Some(v) } else { map[y] }) else {
                continue;
            };
            match self.kind {
                MapKind::Embedding => {
                    if y != x && w == v {
                        return false;
                    }
                    if s.leq(x, y) != d.leq(v, w) || s.leq(y, x) != d.leq(w, v) {
                        return false;
                    }
                }
                MapKind::Homomorphism => {
                    if (s.leq(x, y) && !d.leq(v, w)) || (s.leq(y, x) && !d.leq(w, v)) {
                        return false;
                    }
                }
            }
            for op in Op::ALL {
                for (p, q, mp, mq) in [(x, y, v, w), (y, x, w, v)] {
                    let r = s.op(op, p, q);
                    let mr = if r == x { Some(v) } else { map[r] };
                    if let Some(mr) = mr {
                        if mr != d.op(op, mp, mq) {
                            return false;
                        }
                    }
                }
            }
        }
        for &(op, y, z) in &self.producers[x] {
            let my = if y == x { Some(v) } else { map[y] };
            let mz = if z == x { Some(v) } else { map[z] };
            if let (Some(my), Some(mz)) = (my, mz) {
                if d.op(op, my, mz) != v {
                    return false;
                }
            }
        }
        true
    }

    fn go(&mut self, map: &mut Vec<Option<usize>>, x: usize) {
        if self.out.len() >= self.limit {
            return;
        }
        let n = self.src.n();
        if x == n {
            self.out.push(map.iter().map(|v| v.unwrap()).collect());
            return;
        }
        let forced = if let Some(v) = self.fixed.get(x).copied().flatten() {
            Some(v)
        } else if x == self.src.unit() {
            Some(self.dst.unit())
        } else if self.src.zero() == Some(x) && self.dst.zero().is_some() {
            self.dst.zero()
        } else {
            None
        };
        let candidates: Vec<usize> = match forced {
            Some(v) => vec![v],
            None => (0..self.dst.n()).collect(),
        };
        for v in candidates {
            if self.consistent(map, x, v) {
                map[x] = Some(v);
                self.go(map, x + 1);
                map[x] = None;
                if self.out.len() >= self.limit {
                    return;
                }
            }
        }
    }
}

/// Backtracking search for maps of the given kind, in lexicographic order
/// of the map array. `fixed[x] = Some(v)` pins `x ↦ v`; at most `limit`
/// maps are returned.
pub fn search(
    src: &FiniteRL,
    dst: &FiniteRL,
    kind: MapKind,
    fixed: &[Option<usize>],
    limit: usize,
) -> Vec<Morphism> {
    if kind == MapKind::Embedding && src.n() > dst.n() {
        return Vec::new();
    }
    let n = src.n();
    let mut producers = vec![Vec::new(); n];
    for op in Op::ALL {
        for y in 0..n {
            for z in 0..n {
                producers[src.op(op, y, z)].push((op, y, z));
            }
        }
    }
    let mut ctx = Ctx {
        src,
        dst,
        kind,
        producers,
        fixed,
        limit,
        out: Vec::new(),
    };
    let mut map = vec![None; n];
    ctx.go(&mut map, 0);
    ctx.out.into_iter().map(Morphism::new).collect()
}

/// All embeddings of `src` into `dst`, in lexicographic order.
pub fn find_embeddings(src: &FiniteRL, dst: &FiniteRL) -> Vec<Morphism> {
    search(src, dst, MapKind::Embedding, &[], usize::MAX)
}

/// All homomorphisms of `src` into `dst`, in lexicographic order.
pub fn find_homomorphisms(src: &FiniteRL, dst: &FiniteRL) -> Vec<Morphism> {
    search(src, dst, MapKind::Homomorphism, &[], usize::MAX)
}

/// An isomorphism `a → b`, if one exists (the lexicographically first).
pub fn are_isomorphic(a: &FiniteRL, b: &FiniteRL) -> Option<Morphism> {
    if a.n() != b.n() || a.zero().is_some() != b.zero().is_some() {
        return None;
    }
    let inv = |x: &FiniteRL| {
        let h = x.heights();
        let mut v: Vec<(usize, usize, bool)> = x
            .elements()
            .map(|e| {
                (
                    x.elements().filter(|&y| x.leq(y, e)).count(),
                    h[e],
                    x.is_idempotent(e),
                )
            })
            .collect();
        v.sort();
        v
    };
    if inv(a) != inv(b) {
        return None;
    }
    search(a, b, MapKind::Embedding, &[], 1).into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn boolean_into_lukasiewicz_once() {
        let e = find_embeddings(&catalog::boolean(), &catalog::lukasiewicz(3));
        assert_eq!(e, vec![Morphism::new(vec![0, 2])]);
    }

    #[test]
    fn identity_found_first() {
        let a = catalog::boolean_square();
        assert_eq!(are_isomorphic(&a, &a).unwrap(), Morphism::identity(4));
    }

    #[test]
    fn godel_and_lukasiewicz_differ() {
        assert!(are_isomorphic(&catalog::godel(3), &catalog::lukasiewicz(3)).is_none());
    }
}
