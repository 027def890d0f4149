//! Enumeration of small algebras up to isomorphism: lattices, integral
//! residuated lattices, bounded ones with `0` the bottom, and GL2 chains.

use crate::algebra::FiniteRL;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::HashSet;

/// A lattice on `0..n` with `0` the bottom and `n - 1` the top, given by
/// its order matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    pub leq: Vec<Vec<bool>>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
}

impl Lattice {
    pub fn n(&self) -> usize {
        self.leq.len()
    }

    fn from_leq(leq: Vec<Vec<bool>>) -> Option<Lattice> {
        let n = leq.len();
        let bound = |x: usize, y: usize, up: bool| -> Option<usize> {
            let cands: Vec<usize> = (0..n)
                .filter(|&z| {
                    if up {
                        leq[x][z] && leq[y][z]
                    } else {
                        leq[z][x] && leq[z][y]
                    }
                })
                .collect();
            cands.iter().copied().find(|&z| {
                cands
                    .iter()
                    .all(|&w| if up { leq[z][w] } else { leq[w][z] })
            })
        };
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                join[x][y] = bound(x, y, true)?;
                meet[x][y] = bound(x, y, false)?;
            }
        }
        Some(Lattice { leq, join, meet })
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..m).collect();
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    go(0, &mut p, &mut out);
    out
}

/// Full permutations of `0..n` fixing the two ends.
fn middle_perms(n: usize) -> Vec<Vec<usize>> {
    if n <= 2 {
        return vec![(0..n).collect()];
    }
    permutations(n - 2)
        .into_iter()
        .map(|p| {
            let mut full = vec![0];
            full.extend(p.iter().map(|x| x + 1));
            full.push(n - 1);
            full
        })
        .collect()
}

fn leq_key(leq: &[Vec<bool>], perm: &[usize]) -> u64 {
    let n = leq.len();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let mut key = 0u64;
    for i in 0..n {
        for j in 0..n {
            key = key << 1 | leq[inv[i]][inv[j]] as u64;
        }
    }
    key
}

/// All lattices with `n` elements up to isomorphism, in a fixed order.
pub fn lattices(n: usize) -> Vec<Lattice> {
    assert!(
        (1..=8).contains(&n),
        "lattice enumeration supports 1..=8 elements"
    );
    if n == 1 {
        return vec![Lattice::from_leq(vec![vec![true]]).unwrap()];
    }
    let perms = middle_perms(n);
    let mid: Vec<(usize, usize)> = (1..n - 1)
        .flat_map(|i| (i + 1..n - 1).map(move |j| (i, j)))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << mid.len() {
        // naturally labelled: x < y only if x's index is smaller
        let mut leq = vec![vec![false; n]; n];
        for x in 0..n {
            leq[x][x] = true;
            leq[0][x] = true;
            leq[x][n - 1] = true;
        }
        for (k, &(i, j)) in mid.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let transitive =
            (0..n).all(|x| (0..n).all(|y| !leq[x][y] || (0..n).all(|z| !leq[y][z] || leq[x][z])));
        if !transitive {
            continue;
        }
        let Some(lat) = Lattice::from_leq(leq) else {
            continue;
        };
        let key = perms.iter().map(|p| leq_key(&lat.leq, p)).min().unwrap();
        if seen.insert(key) {
            out.push(lat);
        }
    }
    out
}

struct MulSearch<'a> {
    lat: &'a Lattice,
    n: usize,
    commutative: bool,
    table: Vec<usize>,
    out: Vec<Vec<usize>>,
}

const UNSET: usize = usize::MAX;

impl MulSearch<'_> {
    fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    fn consistent(&self, x: usize, y: usize) -> bool {
        let (n, lat) = (self.n, self.lat);
        let v = self.get(x, y);
        for z in 0..n {
            // monotone in both arguments
            for (p, q) in [(z, y), (x, z)] {
                let w = self.get(p, q);
                if w == UNSET {
                    continue;
                }
                let (a, b) = if (p, q) == (z, y) { (z, x) } else { (z, y) };
                if lat.leq[a][b] && !lat.leq[w][v] {
                    return false;
                }
                if lat.leq[b][a] && !lat.leq[v][w] {
                    return false;
                }
            }
        }
        // binary joins are preserved in each argument
        for z in 0..n {
            for (u, w) in [(y, z), (z, y)] {
                let j = lat.join[u][w];
                let (a, b, c) = (self.get(x, u), self.get(x, w), self.get(x, j));
                if a != UNSET && b != UNSET && c != UNSET && lat.join[a][b] != c {
                    return false;
                }
            }
            for (u, w) in [(x, z), (z, x)] {
                let j = lat.join[u][w];
                let (a, b, c) = (self.get(u, y), self.get(w, y), self.get(j, y));
                if a != UNSET && b != UNSET && c != UNSET && lat.join[a][b] != c {
                    return false;
                }
            }
        }
        true
    }

    fn preserves_joins(&self) -> bool {
        let (n, lat) = (self.n, self.lat);
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let j = lat.join[y][z];
                    self.get(x, j) == lat.join[self.get(x, y)][self.get(x, z)]
                        && self.get(j, x) == lat.join[self.get(y, x)][self.get(z, x)]
                })
            })
        })
    }

    fn associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n)
                .all(|y| (0..n).all(|z| self.get(self.get(x, y), z) == self.get(x, self.get(y, z))))
        })
    }

    fn go(&mut self, cells: &[(usize, usize)], k: usize) {
        if k == cells.len() {
            if self.preserves_joins() && self.associative() {
                self.out.push(self.table.clone());
            }
            return;
        }
        let (x, y) = cells[k];
        let n = self.n;
        let bound = self.lat.meet[x][y];
        for v in 0..n {
            if !self.lat.leq[v][bound] {
                continue;
            }
            self.table[x * n + y] = v;
            if self.commutative {
                self.table[y * n + x] = v;
            }
            if self.consistent(x, y) && (!self.commutative || self.consistent(y, x)) {
                self.go(cells, k + 1);
            }
            self.table[x * n + y] = UNSET;
            if self.commutative {
                self.table[y * n + x] = UNSET;
            }
        }
    }
}

fn automorphisms(lat: &Lattice) -> Vec<Vec<usize>> {
    let n = lat.n();
    middle_perms(n)
        .into_iter()
        .filter(|p| (0..n).all(|x| (0..n).all(|y| lat.leq[x][y] == lat.leq[p[x]][p[y]])))
        .collect()
}

/// Integral monoid multiplications on a lattice that preserve joins, up to
/// lattice automorphism.
fn multiplications(lat: &Lattice, commutative: bool) -> Vec<Vec<usize>> {
    let n = lat.n();
    let top = n - 1;
    let mut table = vec![UNSET; n * n];
    for x in 0..n {
        table[x * n + top] = x;
        table[top * n + x] = x;
        table[x * n] = 0;
        table[x] = 0;
    }
    let inner: Vec<usize> = (1..top).collect();
    let cells: Vec<(usize, usize)> = inner
        .iter()
        .flat_map(|&x| inner.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| !commutative || x <= y)
        .collect();
    let mut s = MulSearch {
        lat,
        n,
        commutative,
        table,
        out: Vec::new(),
    };
    s.go(&cells, 0);
    let autos = automorphisms(lat);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in s.out {
        let key = autos
            .iter()
            .map(|p| {
                let mut inv = vec![0; n];
                for (i, &q) in p.iter().enumerate() {
                    inv[q] = i;
                }
                (0..n * n)
                    .map(|c| p[t[inv[c / n] * n + inv[c % n]]])
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap();
        if seen.insert(key) {
            out.push(t);
        }
    }
    out
}

fn algebra_on(lat: &Lattice, mul: &[usize], zero: Option<usize>) -> FiniteRL {
    let n = lat.n();
    FiniteRL::from_order_mul(n, |x, y| lat.leq[x][y], |x, y| mul[x * n + y], n - 1, zero)
        .expect("join-preserving integral multiplication is residuated")
}

/// Integral residuated lattices with exactly `n` elements up to
/// isomorphism (unbounded signature).
pub fn irls(n: usize, commutative_only: bool) -> Vec<FiniteRL> {
    lattices(n)
        .iter()
        .flat_map(|lat| {
            multiplications(lat, commutative_only)
                .into_iter()
                .map(move |m| algebra_on(lat, &m, None))
        })
        .collect()
}

/// Bounded versions (`0` is the bottom) of [`irls`].
pub fn flw_algebras(n: usize, commutative_only: bool) -> Vec<FiniteRL> {
    irls(n, commutative_only)
        .into_iter()
        .map(|a| a.with_zero(Some(0)))
        .collect()
}

/// The GL2 chain whose blocks below `1` have the given sizes, bottom block
/// first. Products are `xy = min A(x ∧ y)` for `x, y < 1`.
pub fn gl2_chain_from_blocks(sizes: &[usize]) -> Result<FiniteRL> {
    if sizes.contains(&0) {
        return Err(Error::Precondition("blocks must be nonempty".into()));
    }
    let mut block_min = Vec::new();
    let mut labels = Vec::new();
    for (b, &s) in sizes.iter().enumerate() {
        let start = block_min.len();
        for k in 0..s {
            block_min.push(start);
            labels.push(if b == 0 && k == 0 {
                "0".to_string()
            } else {
                format!("b{b}.{k}")
            });
        }
    }
    labels.push("1".into());
    let n = block_min.len() + 1;
    let top = n - 1;
    let mul = |x: usize, y: usize| {
        if x == top {
            y
        } else if y == top {
            x
        } else {
            block_min[x.min(y)]
        }
    };
    Ok(FiniteRL::from_order_mul(n, |x, y| x <= y, mul, top, Some(0))?.with_labels(Some(labels)))
}

/// Compositions of `m` in lexicographic order.
pub fn compositions(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=m {
        for rest in compositions(m - first) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// All GL2 chains with `n ≥ 2` elements, one per block composition.
pub fn gl2_chains(n: usize) -> Vec<FiniteRL> {
    assert!(n >= 2);
    compositions(n - 1)
        .iter()
        .map(|c| gl2_chain_from_blocks(c).expect("nonempty blocks"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraClass {
    Irl,
    Flw,
    Gl2Chain,
}

/// Every algebra of the class with `1..=max_size` elements (GL2 chains from
/// 2 elements), smallest first.
pub fn enumerate(class: AlgebraClass, max_size: usize) -> Vec<FiniteRL> {
    match class {
        AlgebraClass::Irl => (1..=max_size).flat_map(|n| irls(n, false)).collect(),
        AlgebraClass::Flw => (1..=max_size)
            .flat_map(|n| flw_algebras(n, false))
            .collect(),
        AlgebraClass::Gl2Chain => (2..=max_size).flat_map(gl2_chains).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_valid;
    use crate::algebra::morphism::are_isomorphic;

    #[test]
    fn lattice_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| lattices(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn irl_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| irls(n, false).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 9, 49, 364]);
        for a in irls(5, false) {
            assert!(is_valid(&a));
        }
    }

    /// Independent count for four elements: every order with a top, every
    /// integral multiplication, residuals from the order, deduplicated by
    /// isomorphism search.
    #[test]
    fn four_element_count_by_brute_force() {
        let n = 4;
        let mut found: Vec<FiniteRL> = Vec::new();
        let cells: Vec<(usize, usize)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        let chain = |x: usize, y: usize| x <= y;
        let diamond = |x: usize, y: usize| x == y || x == 0 || y == 3;
        let orders: [&dyn Fn(usize, usize) -> bool; 2] = [&chain, &diamond];
        for leq in orders {
            for code in 0..3usize.pow(9) {
                let mut mul = vec![vec![0; n]; n];
                let mut c = code;
                for &(x, y) in &cells {
                    mul[x][y] = c % 3;
                    c /= 3;
                }
                for x in 0..n {
                    mul[x][3] = x;
                    mul[3][x] = x;
                }
                let Ok(a) = FiniteRL::from_order_mul(n, leq, |x, y| mul[x][y], 3, None) else {
                    continue;
                };
                if is_valid(&a) && !found.iter().any(|b| are_isomorphic(&a, b).is_some()) {
                    found.push(a);
                }
            }
        }
        assert_eq!(found.len(), irls(4, false).len());
    }

    #[test]
    fn gl2_chain_shapes() {
        let b = gl2_chain_from_blocks(&[1, 2]).unwrap();
        assert!(is_valid(&b));
        assert_eq!(b.mul(2, 2), 1);
        assert_eq!(b.ldiv(2, 1), 2);
        assert_eq!(gl2_chains(6).len(), 16);
        assert_eq!(enumerate(AlgebraClass::Gl2Chain, 4).len(), 1 + 2 + 4);
    }
}
