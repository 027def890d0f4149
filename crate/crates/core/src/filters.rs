//! Congruence filters, lattice ideals and the compatibility notions used by
//! the gluing constructions.
//!
//! A congruence filter `F` determines the congruence `x θ y ⇔ x\y, y\x ∈ F`.
//! The class operators `sigma` (class minimum) and `gamma` (class maximum)
//! describe how elements above `B - F` act on `B - F` in a gluing. For a
//! lattice ideal `I`, `ell(c) = max{c\i}` and `r(c) = max{i/c}` describe
//! divisions by elements whose products fall into `I`.

use crate::algebra::FiniteRL;
use crate::error::{Error, Result};
use crate::set::ElemSet;
use serde::Serialize;

/// Checks the congruence-filter conditions, reporting the first failure.
pub fn check_congruence_filter(a: &FiniteRL, f: ElemSet) -> Result<()> {
    let fail = |m: String| Err(Error::NotCongruenceFilter(m));
    if !f.contains(a.unit()) {
        return fail("does not contain the unit".into());
    }
    for x in f.iter() {
        for y in a.elements() {
            if a.leq(x, y) && !f.contains(y) {
                return fail(format!("not an upset: {} <= {}", a.label(x), a.label(y)));
            }
        }
    }
    for x in f.iter() {
        for y in f.iter() {
            if !f.contains(a.mul(x, y)) {
                return fail(format!(
                    "not closed under products at ({}, {})",
                    a.label(x),
                    a.label(y)
                ));
            }
        }
        for y in a.elements() {
            if !f.contains(a.ldiv(y, a.mul(x, y))) || !f.contains(a.rdiv(a.mul(y, x), y)) {
                return fail(format!(
                    "not closed under conjugates of {} by {}",
                    a.label(x),
                    a.label(y)
                ));
            }
        }
    }
    Ok(())
}

pub fn is_congruence_filter(a: &FiniteRL, f: ElemSet) -> bool {
    check_congruence_filter(a, f).is_ok()
}

/// Least congruence filter containing `seed`.
pub fn filter_generated(a: &FiniteRL, seed: ElemSet) -> ElemSet {
    let mut f = seed;
    f.insert(a.unit());
    loop {
        let mut g = a.up_closure(f);
        for x in f.iter() {
            for y in f.iter() {
                g.insert(a.mul(x, y));
            }
            for y in a.elements() {
                g.insert(a.ldiv(y, a.mul(x, y)));
                g.insert(a.rdiv(a.mul(y, x), y));
            }
        }
        if g == f {
            return f;
        }
        f = g;
    }
}

/// The congruence filters of an algebra ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterLattice {
    /// Sorted by size, then by bit pattern.
    pub filters: Vec<ElemSet>,
}

impl FilterLattice {
    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    /// Inclusion order as a boolean matrix.
    pub fn order(&self) -> Vec<Vec<bool>> {
        self.filters
            .iter()
            .map(|f| self.filters.iter().map(|g| f.is_subset(g)).collect())
            .collect()
    }

    /// Filters covering the least filter.
    pub fn atoms(&self) -> Vec<ElemSet> {
        let Some(&least) = self.filters.first() else {
            return vec![];
        };
        self.filters
            .iter()
            .copied()
            .filter(|f| {
                *f != least
                    && !self
                        .filters
                        .iter()
                        .any(|g| *g != least && *g != *f && g.is_subset(f))
            })
            .collect()
    }
}

/// All congruence filters, computed by joining principal filters.
pub fn all_congruence_filters(a: &FiniteRL) -> FilterLattice {
    let mut found: Vec<ElemSet> = vec![ElemSet::singleton(a.unit())];
    for x in a.elements() {
        let p = filter_generated(a, ElemSet::singleton(x));
        if !found.contains(&p) {
            found.push(p);
        }
    }
    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            let g = filter_generated(a, found[i].union(&found[j]));
            if !found.contains(&g) {
                found.push(g);
            }
        }
        i += 1;
    }
    found.sort_by_key(|f| (f.len(), f.bits()));
    FilterLattice { filters: found }
}

/// Whether two finite posets, given as `leq` matrices, are isomorphic.
pub fn posets_isomorphic(p: &[Vec<bool>], q: &[Vec<bool>]) -> bool {
    let n = p.len();
    if n != q.len() {
        return false;
    }
    let profile = |m: &[Vec<bool>], x: usize| {
        (
            (0..n).filter(|&y| m[y][x]).count(),
            (0..n).filter(|&y| m[x][y]).count(),
        )
    };
    let mut pp: Vec<_> = (0..n).map(|x| profile(p, x)).collect();
    let mut qq: Vec<_> = (0..n).map(|x| profile(q, x)).collect();
    let (pu, qu) = (pp.clone(), qq.clone());
    pp.sort();
    qq.sort();
    if pp != qq {
        return false;
    }
    fn go(
        x: usize,
        n: usize,
        p: &[Vec<bool>],
        q: &[Vec<bool>],
        pu: &[(usize, usize)],
        qu: &[(usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if x == n {
            return true;
        }
        for v in 0..n {
            if used[v] || pu[x] != qu[v] {
                continue;
            }
            if (0..x).all(|y| p[x][y] == q[v][map[y]] && p[y][x] == q[map[y]][v]) {
                map[x] = v;
                used[v] = true;
                if go(x + 1, n, p, q, pu, qu, map, used) {
                    return true;
                }
                used[v] = false;
            }
        }
        false
    }
    go(0, n, p, q, &pu, &qu, &mut vec![0; n], &mut vec![false; n])
}

/// Classes of the congruence determined by a congruence filter.
pub fn theta_classes(a: &FiniteRL, f: ElemSet) -> Vec<ElemSet> {
    let mut seen = ElemSet::new();
    let mut out = Vec::new();
    for x in a.elements() {
        if seen.contains(x) {
            continue;
        }
        let class: ElemSet = a
            .elements()
            .filter(|&y| f.contains(a.ldiv(x, y)) && f.contains(a.ldiv(y, x)))
            .collect();
        seen = seen.union(&class);
        out.push(class);
    }
    out
}

/// Class minimum and maximum maps of a congruence filter.
///
/// Both maps are indexed by element; they are `Some` on `B - F` (when the
/// class has the extremum) and at the unit, and `None` on `F - {1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassOps {
    pub filter: ElemSet,
    pub classes: Vec<ElemSet>,
    pub sigma: Vec<Option<usize>>,
    pub gamma: Vec<Option<usize>>,
}

impl ClassOps {
    /// `sigma` where defined; panics otherwise.
    pub fn s(&self, x: usize) -> usize {
        self.sigma[x].expect("sigma undefined")
    }
    /// `gamma` where defined; panics otherwise.
    pub fn g(&self, x: usize) -> usize {
        self.gamma[x].expect("gamma undefined")
    }
    /// Lower part `B - F`.
    pub fn lower(&self, a: &FiniteRL) -> ElemSet {
        a.all().difference(&self.filter)
    }
    pub fn sigma_total(&self, a: &FiniteRL) -> bool {
        self.lower(a).iter().all(|x| self.sigma[x].is_some())
    }
    pub fn gamma_total(&self, a: &FiniteRL) -> bool {
        self.lower(a).iter().all(|x| self.gamma[x].is_some())
    }
}

/// Computes the class operators of a congruence filter.
pub fn sigma_gamma(a: &FiniteRL, f: ElemSet) -> Result<ClassOps> {
    check_congruence_filter(a, f)?;
    let classes = theta_classes(a, f);
    let n = a.n();
    let mut sigma = vec![None; n];
    let mut gamma = vec![None; n];
    for class in &classes {
        let lo = a.min_of(*class);
        let hi = a.max_of(*class);
        for x in class.iter().filter(|x| !f.contains(*x)) {
            sigma[x] = lo;
            gamma[x] = hi;
        }
    }
    sigma[a.unit()] = Some(a.unit());
    gamma[a.unit()] = Some(a.unit());
    Ok(ClassOps {
        filter: f,
        classes,
        sigma,
        gamma,
    })
}

/// Overall verdict on a filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairKind {
    Lower,
    WeakLower,
    Incompatible,
}

/// Per-condition report on a lower pair `(B, F)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerPairReport {
    pub kind: PairKind,
    pub strict: bool,
    /// `(b, f)` with `b ∈ B - F` not strictly below `f ∈ F` (strict mode).
    pub position: Option<(usize, usize)>,
    /// An element of `B - F` whose class has no minimum.
    pub missing_min: Option<usize>,
    /// An element of `B - F` whose class has no maximum.
    pub missing_max: Option<usize>,
    /// `(b, x)` with `b·sigma(x)` or `sigma(x)·b` outside `sigma[B - F]`.
    pub absorbing: Option<(usize, usize)>,
    /// Non-strict mode: `(z, b)` where a join `z ∈ F` of lower elements
    /// does not act on `b` like the class operators.
    pub join_action: Option<(usize, usize)>,
    pub ops: ClassOps,
}

/// Checks whether `(a, f)` is a lower-compatible pair. In non-strict mode
/// `F` need not lie above `B - F`, but joins of lower elements landing in
/// `F` must multiply and divide like `sigma` and `gamma`.
pub fn check_lower_pair_mode(a: &FiniteRL, f: ElemSet, strict: bool) -> Result<LowerPairReport> {
    let ops = sigma_gamma(a, f)?;
    let lower = ops.lower(a);
    let position = if strict {
        lower
            .iter()
            .flat_map(|b| f.iter().map(move |x| (b, x)))
            .find(|&(b, x)| !a.lt(b, x))
    } else {
        None
    };
    let missing_min = lower.iter().find(|&x| ops.sigma[x].is_none());
    let missing_max = lower.iter().find(|&x| ops.gamma[x].is_none());
    let mut absorbing = None;
    if missing_min.is_none() {
        let image: ElemSet = lower.iter().map(|x| ops.s(x)).collect();
        absorbing = lower
            .iter()
            .flat_map(|b| lower.iter().map(move |x| (b, x)))
            .find(|&(b, x)| {
                let s = ops.s(x);
                !image.contains(a.mul(b, s)) || !image.contains(a.mul(s, b))
            });
    }
    let mut join_action = None;
    if !strict && missing_min.is_none() && missing_max.is_none() {
        'outer: for x in lower.iter() {
            for y in lower.iter() {
                let z = a.join(x, y);
                if !f.contains(z) {
                    continue;
                }
                for b in lower.iter() {
                    let (s, g) = (ops.s(b), ops.g(b));
                    if a.mul(z, b) != s
                        || a.mul(b, z) != s
                        || a.ldiv(z, b) != g
                        || a.rdiv(b, z) != g
                    {
                        join_action = Some((z, b));
                        break 'outer;
                    }
                }
            }
        }
    }
    let kind = if position.is_some()
        || missing_min.is_some()
        || absorbing.is_some()
        || join_action.is_some()
    {
        PairKind::Incompatible
    } else if missing_max.is_some() {
        PairKind::WeakLower
    } else {
        PairKind::Lower
    };
    Ok(LowerPairReport {
        kind,
        strict,
        position,
        missing_min,
        missing_max,
        absorbing,
        join_action,
        ops,
    })
}

/// Strict lower-pair check.
pub fn check_lower_pair(a: &FiniteRL, f: ElemSet) -> Result<LowerPairReport> {
    check_lower_pair_mode(a, f, true)
}

/// Checks that `i` is a lattice ideal (possibly empty).
pub fn check_ideal(a: &FiniteRL, i: ElemSet) -> Result<()> {
    for x in i.iter() {
        for y in a.elements() {
            if a.leq(y, x) && !i.contains(y) {
                return Err(Error::NotIdeal(format!(
                    "not a downset: {} <= {}",
                    a.label(y),
                    a.label(x)
                )));
            }
        }
        for y in i.iter() {
            if !i.contains(a.join(x, y)) {
                return Err(Error::NotIdeal(format!(
                    "not closed under joins at ({}, {})",
                    a.label(x),
                    a.label(y)
                )));
            }
        }
    }
    Ok(())
}

/// Divisor data of a lattice ideal `I`: `c ∈ C - I` is a left divisor when
/// `c·c' ∈ I` for some `c' ∈ C - I`, and a right divisor when `c''·c ∈ I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorOps {
    pub ideal: ElemSet,
    pub left_divisors: ElemSet,
    pub right_divisors: ElemSet,
    /// `max{c\i : i ∈ I}` on left divisors.
    pub ell: Vec<Option<usize>>,
    /// `max{i/c : i ∈ I}` on right divisors.
    pub r: Vec<Option<usize>>,
    /// Greatest element of `I`, if `I` is nonempty and has one.
    pub top_ideal: Option<usize>,
}

impl DivisorOps {
    pub fn is_divisor(&self, c: usize) -> bool {
        self.left_divisors.contains(c) || self.right_divisors.contains(c)
    }
}

/// Computes divisor sets and the maps `ell`, `r`.
pub fn divisor_ops(c: &FiniteRL, i: ElemSet) -> DivisorOps {
    let n = c.n();
    let rest = c.all().difference(&i);
    let left: ElemSet = rest
        .iter()
        .filter(|&x| rest.iter().any(|y| i.contains(c.mul(x, y))))
        .collect();
    let right: ElemSet = rest
        .iter()
        .filter(|&x| rest.iter().any(|y| i.contains(c.mul(y, x))))
        .collect();
    let mut ell = vec![None; n];
    let mut r = vec![None; n];
    for x in left.iter() {
        let vals: ElemSet = i.iter().map(|j| c.ldiv(x, j)).collect();
        ell[x] = c.max_of(vals);
    }
    for x in right.iter() {
        let vals: ElemSet = i.iter().map(|j| c.rdiv(j, x)).collect();
        r[x] = c.max_of(vals);
    }
    DivisorOps {
        ideal: i,
        left_divisors: left,
        right_divisors: right,
        ell,
        r,
        top_ideal: c.max_of(i),
    }
}

/// Per-condition report on an upper pair `(C, I)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperPairReport {
    pub compatible: bool,
    pub strict: bool,
    /// `(i, c)` with `i ∈ I` not strictly below `c ∈ C - I` (strict mode).
    pub position: Option<(usize, usize)>,
    /// A left divisor without `ell`.
    pub missing_ell: Option<usize>,
    /// A right divisor without `r`.
    pub missing_r: Option<usize>,
    pub ops: DivisorOps,
}

/// Checks whether `(c, i)` is an upper-compatible pair.
pub fn check_upper_pair(c: &FiniteRL, i: ElemSet, strict: bool) -> Result<UpperPairReport> {
    check_ideal(c, i)?;
    let ops = divisor_ops(c, i);
    let rest = c.all().difference(&i);
    let position = if strict {
        i.iter()
            .flat_map(|x| rest.iter().map(move |y| (x, y)))
            .find(|&(x, y)| !c.lt(x, y))
    } else {
        None
    };
    let missing_ell = ops.left_divisors.iter().find(|&x| ops.ell[x].is_none());
    let missing_r = ops.right_divisors.iter().find(|&x| ops.r[x].is_none());
    Ok(UpperPairReport {
        compatible: position.is_none() && missing_ell.is_none() && missing_r.is_none(),
        strict,
        position,
        missing_ell,
        missing_r,
        ops,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    fn set(v: &[usize]) -> ElemSet {
        v.iter().copied().collect()
    }

    #[test]
    fn godel_filters_form_a_chain() {
        let g = catalog::godel(3);
        let fl = all_congruence_filters(&g);
        assert_eq!(fl.filters, vec![set(&[2]), set(&[1, 2]), set(&[0, 1, 2])]);
    }

    #[test]
    fn lukasiewicz_is_simple() {
        let fl = all_congruence_filters(&catalog::lukasiewicz(3));
        assert_eq!(fl.filters, vec![set(&[2]), set(&[0, 1, 2])]);
        assert_eq!(all_congruence_filters(&catalog::trivial()).len(), 1);
    }

    #[test]
    fn unit_filter_gives_identity_operators() {
        let g = catalog::godel(4);
        let ops = sigma_gamma(&g, set(&[3])).unwrap();
        for x in 0..4 {
            assert_eq!(ops.sigma[x], Some(x));
            assert_eq!(ops.gamma[x], Some(x));
        }
    }

    #[test]
    fn upper_pair_of_lukasiewicz() {
        let rep = check_upper_pair(&catalog::lukasiewicz(3), set(&[0]), true).unwrap();
        assert!(rep.compatible);
        assert_eq!(rep.ops.ell[1], Some(1));
        assert_eq!(rep.ops.r[1], Some(1));
        let rep = check_upper_pair(&catalog::godel(4), set(&[0]), true).unwrap();
        assert!(rep.ops.left_divisors.is_empty() && rep.ops.right_divisors.is_empty());
    }

    #[test]
    fn ideal_not_strictly_below() {
        let sq = catalog::boolean_square();
        let rep = check_upper_pair(&sq, set(&[0, 1]), true).unwrap();
        assert_eq!(rep.position, Some((1, 2)));
        assert!(!rep.compatible);
        assert!(check_upper_pair(&sq, set(&[0, 1]), false)
            .unwrap()
            .position
            .is_none());
    }
}
