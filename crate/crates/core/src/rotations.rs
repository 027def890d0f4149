//! Nuclei, nuclear images and rotation constructions.
//!
//! The generalized disconnected rotation `A^δ` hangs a dually ordered copy
//! of `δ[A]` below `A`. The generalized `n`-rotation also inserts the
//! interior of an `n`-element Łukasiewicz chain between the two halves.

use crate::algebra::morphism::{find_embeddings, find_homomorphisms, is_embedding, Morphism};
use crate::algebra::{catalog, residuals_from_mul, FiniteRL, Op, RawTables};
use crate::amalgam::{check_amalgam, Amalgam, AmalgamCheck, VFormation};
use crate::error::{Error, Result};
use crate::gluing::{one_sum, Glued};
use crate::set::ElemSet;
use crate::terms::Term;
use serde::Serialize;

/// What a nucleus check found besides validity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NucleusReport {
    pub preserves_join: bool,
    pub preserves_meet: bool,
}

/// Checks that `delta` is a closure operator with `δ(x)δ(y) ≤ δ(xy)`.
pub fn check_nucleus(a: &FiniteRL, delta: &[usize]) -> Result<NucleusReport> {
    let n = a.n();
    if delta.len() != n || delta.iter().any(|&v| v >= n) {
        return Err(Error::InvalidNucleus("map has the wrong shape".into()));
    }
    for x in 0..n {
        if !a.leq(x, delta[x]) {
            return Err(Error::InvalidNucleus(format!(
                "not increasing at {}",
                a.label(x)
            )));
        }
        if delta[delta[x]] != delta[x] {
            return Err(Error::InvalidNucleus(format!(
                "not idempotent at {}",
                a.label(x)
            )));
        }
        for y in 0..n {
            if a.leq(x, y) && !a.leq(delta[x], delta[y]) {
                return Err(Error::InvalidNucleus(format!(
                    "not monotone at ({}, {})",
                    a.label(x),
                    a.label(y)
                )));
            }
            if !a.leq(a.mul(delta[x], delta[y]), delta[a.mul(x, y)]) {
                return Err(Error::InvalidNucleus(format!(
                    "δ({0})δ({1}) is not below δ({0}·{1})",
                    a.label(x),
                    a.label(y)
                )));
            }
        }
    }
    let pairs = || (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    Ok(NucleusReport {
        preserves_join: pairs().all(|(x, y)| delta[a.join(x, y)] == a.join(delta[x], delta[y])),
        preserves_meet: pairs().all(|(x, y)| delta[a.meet(x, y)] == a.meet(delta[x], delta[y])),
    })
}

pub fn identity_nucleus(a: &FiniteRL) -> Vec<usize> {
    (0..a.n()).collect()
}

/// Every nucleus of `a`, found through its image: a meet-closed set
/// containing `1` whose closure map satisfies the nucleus inequality.
pub fn all_nuclei(a: &FiniteRL) -> Vec<Vec<usize>> {
    let n = a.n();
    let u = a.unit();
    assert!(n <= 24, "nucleus enumeration is exponential");
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << (n - 1)) {
        let mut img: ElemSet = (0..n - 1).filter(|&x| bits >> x & 1 == 1).collect();
        img.insert(u);
        if !img
            .iter()
            .all(|x| img.iter().all(|y| img.contains(a.meet(x, y))))
        {
            continue;
        }
        let delta: Vec<usize> = (0..n)
            .map(|x| {
                a.min_of(img.iter().filter(|&y| a.leq(x, y)).collect())
                    .expect("meet-closed")
            })
            .collect();
        if check_nucleus(a, &delta).is_ok() {
            out.push(delta);
        }
    }
    out
}

/// The nuclear image `δ[A]` with `x ∨ y := δ(x ∨ y)` and `x·y := δ(xy)`.
/// Returns the algebra and the inclusion of its carrier into `A`.
pub fn nucleus_image(a: &FiniteRL, delta: &[usize]) -> Result<(FiniteRL, Vec<usize>)> {
    check_nucleus(a, delta)?;
    let img: Vec<usize> = (0..a.n()).filter(|&x| delta[x] == x).collect();
    let mut pos = vec![usize::MAX; a.n()];
    for (i, &x) in img.iter().enumerate() {
        pos[x] = i;
    }
    let m = img.len();
    let tab = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        (0..m)
            .map(|i| (0..m).map(|j| pos[f(img[i], img[j])]).collect())
            .collect()
    };
    let alg = FiniteRL::from_tables(RawTables {
        leq: (0..m)
            .map(|i| (0..m).map(|j| a.leq(img[i], img[j])).collect())
            .collect(),
        join: tab(&|x, y| delta[a.join(x, y)]),
        meet: tab(&|x, y| a.meet(x, y)),
        mul: tab(&|x, y| delta[a.mul(x, y)]),
        ldiv: tab(&|x, y| a.ldiv(x, y)),
        rdiv: tab(&|x, y| a.rdiv(x, y)),
        unit: pos[a.unit()],
        zero: a.zero().map(|z| pos[delta[z]]),
        labels: a
            .labels()
            .map(|l| img.iter().map(|&x| l[x].clone()).collect()),
    })?;
    Ok((alg, img))
}

/// A rotation together with the positions of its pieces.
#[derive(Debug, Clone)]
pub struct Rotated {
    pub algebra: FiniteRL,
    /// Index of each element of `A`.
    pub a_map: Vec<usize>,
    /// Index of `x'` for each `x ∈ δ[A]`.
    pub prime_map: Vec<Option<usize>>,
    /// Indices of `ℓ_1, ..., ℓ_{n-2}` (empty for `A^δ`).
    pub levels: Vec<usize>,
}

impl Rotated {
    /// `A` as a set of indices of the rotation.
    pub fn upper_part(&self) -> ElemSet {
        self.a_map.iter().copied().collect()
    }
}

fn primed_labels(a: &FiniteRL, primes: &[usize], levels: usize) -> Vec<String> {
    let mut v: Vec<String> = primes.iter().map(|&x| format!("{}'", a.label(x))).collect();
    v.extend((1..=levels).map(|i| format!("l{i}")));
    v.extend((0..a.n()).map(|x| a.label(x)));
    let mut seen = std::collections::HashSet::new();
    for s in v.iter_mut() {
        while !seen.insert(s.clone()) {
            s.push('\'');
        }
    }
    v
}

/// Carrier layout shared by both rotations: primes (of `δ[A]`, in
/// decreasing index order so that `1'` comes first), then the levels, then
/// `A`.
struct RotLayout {
    primes: Vec<usize>,
    levels: usize,
    an: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RotElem {
    Prime(usize),
    Level(usize),
    Upper(usize),
}

impl RotLayout {
    fn n(&self) -> usize {
        self.primes.len() + self.levels + self.an
    }
    fn elem(&self, d: usize) -> RotElem {
        let p = self.primes.len();
        if d < p {
            RotElem::Prime(self.primes[d])
        } else if d < p + self.levels {
            RotElem::Level(d - p + 1)
        } else {
            RotElem::Upper(d - p - self.levels)
        }
    }
    fn prime(&self, x: usize) -> usize {
        self.primes
            .iter()
            .position(|&y| y == x)
            .expect("element of the image")
    }
    fn level(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.primes.len() + i - 1
        }
    }
    fn upper(&self, x: usize) -> usize {
        self.primes.len() + self.levels + x
    }
    fn leq(&self, a: &FiniteRL, x: usize, y: usize) -> bool {
        match (self.elem(x), self.elem(y)) {
            (RotElem::Prime(p), RotElem::Prime(q)) => a.leq(q, p),
            (RotElem::Prime(_), _) => true,
            (RotElem::Level(_), RotElem::Prime(_)) => false,
            (RotElem::Level(i), RotElem::Level(j)) => i <= j,
            (RotElem::Level(_), RotElem::Upper(_)) => true,
            (RotElem::Upper(_), RotElem::Upper(q)) => a.leq(x - self.primes.len() - self.levels, q),
            (RotElem::Upper(_), _) => false,
        }
    }
}

fn rotation_layout(a: &FiniteRL, delta: &[usize], levels: usize) -> RotLayout {
    let mut primes: Vec<usize> = (0..a.n()).filter(|&x| delta[x] == x).collect();
    primes.reverse();
    RotLayout {
        primes,
        levels,
        an: a.n(),
    }
}

fn finish_rotation(a: &FiniteRL, lay: &RotLayout, algebra: FiniteRL) -> Rotated {
    Rotated {
        algebra,
        a_map: (0..a.n()).map(|x| lay.upper(x)).collect(),
        prime_map: (0..a.n())
            .map(|x| lay.primes.iter().position(|&y| y == x))
            .collect(),
        levels: (1..=lay.levels).map(|i| lay.level(i)).collect(),
    }
}

/// The generalized disconnected rotation `A^δ`. Bounded, with `0 = 1'`.
pub fn generalized_rotation(a: &FiniteRL, delta: &[usize]) -> Result<Rotated> {
    check_nucleus(a, delta)?;
    let lay = rotation_layout(a, delta, 0);
    let n = lay.n();
    let d = |x: usize| delta[x];
    let cell = |op: Op, x: usize, y: usize| -> usize {
        use RotElem::*;
        match (op, lay.elem(x), lay.elem(y)) {
            (_, Upper(p), Upper(q)) => lay.upper(a.op(op, p, q)),
            (Op::Meet, Prime(p), Prime(q)) => lay.prime(d(a.join(p, q))),
            (Op::Join, Prime(p), Prime(q)) => lay.prime(a.meet(p, q)),
            (Op::Meet, Prime(_), Upper(_)) | (Op::Join, Upper(_), Prime(_)) => x,
            (Op::Meet, Upper(_), Prime(_)) | (Op::Join, Prime(_), Upper(_)) => y,
            (Op::Mul, Prime(_), Prime(_)) => lay.prime(a.unit()),
            // a·b' = (b/a)', b'·a = (a\b)'
            (Op::Mul, Upper(p), Prime(q)) => lay.prime(a.rdiv(q, p)),
            (Op::Mul, Prime(q), Upper(p)) => lay.prime(a.ldiv(p, q)),
            // a\b' = δ(ba)', a'\b' = a/b
            (Op::Ldiv, Upper(p), Prime(q)) => lay.prime(d(a.mul(q, p))),
            (Op::Ldiv, Prime(p), Prime(q)) => lay.upper(a.rdiv(p, q)),
            (Op::Ldiv, Prime(_), Upper(_)) => lay.upper(a.unit()),
            // b'/a = δ(ab)', b'/a' = b\a
            (Op::Rdiv, Prime(q), Upper(p)) => lay.prime(d(a.mul(p, q))),
            (Op::Rdiv, Prime(q), Prime(p)) => lay.upper(a.ldiv(q, p)),
            (Op::Rdiv, Upper(_), Prime(_)) => lay.upper(a.unit()),
            _ => unreachable!("no levels in a disconnected rotation"),
        }
    };
    let tab = |op: Op| -> Vec<Vec<usize>> {
        (0..n)
            .map(|x| (0..n).map(|y| cell(op, x, y)).collect())
            .collect()
    };
    let algebra = FiniteRL::from_tables(RawTables {
        leq: (0..n)
            .map(|x| (0..n).map(|y| lay.leq(a, x, y)).collect())
            .collect(),
        join: tab(Op::Join),
        meet: tab(Op::Meet),
        mul: tab(Op::Mul),
        ldiv: tab(Op::Ldiv),
        rdiv: tab(Op::Rdiv),
        unit: n - 1,
        zero: Some(lay.prime(a.unit())),
        labels: Some(primed_labels(a, &lay.primes, 0)),
    })?;
    Ok(finish_rotation(a, &lay, algebra))
}

pub fn disconnected_rotation(a: &FiniteRL) -> Result<Rotated> {
    generalized_rotation(a, &identity_nucleus(a))
}

/// The `n`-element Łukasiewicz chain.
pub fn lukasiewicz_chain(n: usize) -> FiniteRL {
    catalog::lukasiewicz(n)
}

/// `Ł_n ⊕₁ A`.
pub fn n_lifting(n: usize, a: &FiniteRL) -> Result<Glued> {
    if n < 2 {
        return Err(Error::Precondition("liftings need n ≥ 2".into()));
    }
    one_sum(&lukasiewicz_chain(n), a)
}

/// The generalized `n`-rotation `A^δ_n`, built directly: products extend
/// `A^δ` and `Ł_n` with `aℓ_i = ℓ_i` and `b'ℓ_i = 0`; the lattice and the
/// divisions are read off the order and the product.
pub fn n_rotation(a: &FiniteRL, delta: &[usize], n: usize) -> Result<Rotated> {
    if n < 3 {
        return Err(Error::Precondition("n-rotations need n ≥ 3".into()));
    }
    let base = generalized_rotation(a, delta)?;
    let lay = rotation_layout(a, delta, n - 2);
    let size = lay.n();
    let top = n - 1;
    // map A^δ indices into the layout: primes first in both, then A
    let base_to = |x: usize| {
        if x < lay.primes.len() {
            x
        } else {
            lay.upper(x - lay.primes.len())
        }
    };
    let base_of = |x: usize| match lay.elem(x) {
        RotElem::Prime(_) => Some(x),
        RotElem::Upper(p) => Some(lay.primes.len() + p),
        RotElem::Level(_) => None,
    };
    let mul = |x: usize, y: usize| -> usize {
        use RotElem::*;
        if let (Some(p), Some(q)) = (base_of(x), base_of(y)) {
            return base_to(base.algebra.mul(p, q));
        }
        match (lay.elem(x), lay.elem(y)) {
            (Level(i), Level(j)) => lay.level((i + j).saturating_sub(top)),
            (Level(_), Upper(_)) => x,
            (Upper(_), Level(_)) => y,
            _ => lay.level(0),
        }
    };
    let leq: Vec<Vec<bool>> = (0..size)
        .map(|x| (0..size).map(|y| lay.leq(a, x, y)).collect())
        .collect();
    let mul_t: Vec<Vec<usize>> = (0..size)
        .map(|x| (0..size).map(|y| mul(x, y)).collect())
        .collect();
    let alg = residuals_from_mul(&leq, &mul_t, size - 1, Some(0))?;
    let algebra = alg.with_labels(Some(primed_labels(a, &lay.primes, n - 2)));
    Ok(finish_rotation(a, &lay, algebra))
}

/// The quadruple presenting `A^δ_n` as a gluing of `A^δ` and `Ł_n ⊕₁ A`
/// over the filter `A` and the ideal `{0}`.
pub fn rotation_quadruple(
    a: &FiniteRL,
    delta: &[usize],
    n: usize,
) -> Result<crate::quadruple::QuadrupleInput> {
    let rot = generalized_rotation(a, delta)?;
    let lift = n_lifting(n, a)?;
    let filter_pairs: Vec<(usize, usize)> = (0..a.n())
        .map(|x| (rot.a_map[x], lift.upper_map[x]))
        .collect();
    let lift_zero = lift.algebra.zero().expect("liftings are bounded");
    let rot_zero = rot.algebra.zero().expect("rotations are bounded");
    crate::quadruple::QuadrupleInput::new(
        rot.algebra,
        lift.algebra,
        &filter_pairs,
        &[(rot_zero, lift_zero)],
    )
}

/// A nucleus given by a one-variable term, evaluated pointwise and checked.
pub fn term_nucleus(a: &FiniteRL, term: &Term) -> Result<Vec<usize>> {
    if term.arity() > 1 {
        return Err(Error::Precondition(
            "a nucleus term has one variable".into(),
        ));
    }
    if term.uses_zero() && a.zero().is_none() {
        return Err(Error::Precondition(
            "the nucleus term uses 0 on an unbounded algebra".into(),
        ));
    }
    let delta: Vec<usize> = a.elements().map(|x| term.eval(a, &[x])).collect();
    check_nucleus(a, &delta)?;
    Ok(delta)
}

/// Extends `h: A → B` to `A^δ_na → B^δ_nb`: `h̄(a) = h(a)`,
/// `h̄(δ(a)') = δ(h(a))'` and `h̄(ℓ_i) = ℓ_{i·s}` with `s = (nb-1)/(na-1)`.
pub fn lift_to_rotations(
    h: &Morphism,
    from: &Rotated,
    to: &Rotated,
    b_delta: &[usize],
) -> Result<Morphism> {
    let na = from.levels.len() + 2;
    let nb = to.levels.len() + 2;
    if !(nb - 1).is_multiple_of(na - 1) {
        return Err(Error::Precondition(format!(
            "{} does not divide {}",
            na - 1,
            nb - 1
        )));
    }
    let scale = (nb - 1) / (na - 1);
    let mut map = vec![usize::MAX; from.algebra.n()];
    for (x, &pos) in from.a_map.iter().enumerate() {
        map[pos] = to.a_map[h.apply(x)];
        if let Some(p) = from.prime_map[x] {
            let target = b_delta[h.apply(x)];
            map[p] = to.prime_map[target]
                .ok_or_else(|| Error::Internal("δ-image without a primed copy".into()))?;
        }
    }
    for (i, &pos) in from.levels.iter().enumerate() {
        map[pos] = to.levels[(i + 1) * scale - 1];
    }
    if map.contains(&usize::MAX) {
        return Err(Error::Internal("rotation element left unmapped".into()));
    }
    Ok(Morphism::new(map))
}

/// Restricts a map between rotations to the copies of `A` and `B`, if it
/// sends `A` into `B`.
pub fn restrict_to_base(k: &Morphism, from: &Rotated, to: &Rotated) -> Option<Morphism> {
    from.a_map
        .iter()
        .map(|&pos| to.a_map.iter().position(|&t| t == k.apply(pos)))
        .collect::<Option<Vec<usize>>>()
        .map(Morphism::new)
}

/// Findings of [`rotation_amalgam_transfer_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    /// Sizes of the Łukasiewicz parts for `A`, `B`, `C` and the amalgam.
    pub sizes: [usize; 4],
    /// The lifted `ī`, `j̄` are embeddings.
    pub rotated_formation: bool,
    pub lifted_amalgam: AmalgamCheck,
    /// Embeddings of the rotated `A` into the rotated `B` and `C`.
    pub embeddings_checked: usize,
    /// Those that send `A` into the base and are the lift of their
    /// restriction.
    pub embeddings_determined: usize,
    /// Homomorphisms of the rotated `A` into the rotated `B`.
    pub homomorphisms_checked: usize,
    /// Those sending some element of `A` outside `B`.
    pub homomorphisms_leaving_base: usize,
}

impl TransferReport {
    pub fn holds(&self) -> bool {
        self.rotated_formation
            && self.lifted_amalgam.is_amalgam()
            && self.embeddings_checked == self.embeddings_determined
            && self.homomorphisms_leaving_base == 0
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Lifts an amalgam `(D, f, g)` of `v` to the `n`-rotations via the term
/// nucleus and checks that it amalgamates the rotated V-formation; also
/// checks that every embedding of the rotated `A` is determined by its
/// restriction to `A`, and that no homomorphism moves `A` out of the base.
pub fn rotation_amalgam_transfer_check(
    v: &VFormation,
    delta: &Term,
    n: usize,
    amalgam: &Amalgam,
) -> Result<TransferReport> {
    mixed_rotation_transfer_check(v, delta, [n, n, n], amalgam)
}

/// As [`rotation_amalgam_transfer_check`] with sizes `[na, nb, nc]` where
/// `na - 1` divides `nb - 1` and `nc - 1`; the amalgam is rotated with
/// `m - 1 = lcm(nb - 1, nc - 1)`.
pub fn mixed_rotation_transfer_check(
    v: &VFormation,
    delta: &Term,
    sizes: [usize; 3],
    amalgam: &Amalgam,
) -> Result<TransferReport> {
    let [na, nb, nc] = sizes;
    if sizes.iter().any(|&s| s < 3) {
        return Err(Error::Precondition("n-rotations need n ≥ 3".into()));
    }
    if (nb - 1) % (na - 1) != 0 || (nc - 1) % (na - 1) != 0 {
        return Err(Error::Precondition(format!(
            "{} must divide both {} and {}",
            na - 1,
            nb - 1,
            nc - 1
        )));
    }
    let check = check_amalgam(v, amalgam);
    if !check.is_amalgam() {
        return Err(Error::Precondition(
            "the given amalgam does not amalgamate the V-formation".into(),
        ));
    }
    let nd = (nb - 1) / gcd(nb - 1, nc - 1) * (nc - 1) + 1;
    let da = term_nucleus(&v.a, delta)?;
    let db = term_nucleus(&v.b, delta)?;
    let dc = term_nucleus(&v.c, delta)?;
    let dd = term_nucleus(&amalgam.d, delta)?;
    let ra = n_rotation(&v.a, &da, na)?;
    let rb = n_rotation(&v.b, &db, nb)?;
    let rc = n_rotation(&v.c, &dc, nc)?;
    let rd = n_rotation(&amalgam.d, &dd, nd)?;
    let i = lift_to_rotations(&v.i, &ra, &rb, &db)?;
    let j = lift_to_rotations(&v.j, &ra, &rc, &dc)?;
    let f = lift_to_rotations(&amalgam.h, &rb, &rd, &dd)?;
    let g = lift_to_rotations(&amalgam.k, &rc, &rd, &dd)?;
    let rotated_formation = is_embedding(&ra.algebra, &rb.algebra, &i.map)
        && is_embedding(&ra.algebra, &rc.algebra, &j.map);
    let rv = VFormation {
        a: ra.algebra.clone(),
        b: rb.algebra.clone(),
        c: rc.algebra.clone(),
        i,
        j,
    };
    let lifted_amalgam = check_amalgam(
        &rv,
        &Amalgam {
            d: rd.algebra.clone(),
            h: f,
            k: g,
        },
    );
    let mut embeddings_checked = 0;
    let mut embeddings_determined = 0;
    // restrictions are IRL embeddings: 0 is not a constant of the base
    let a_irl = v.a.clone().with_zero(None);
    for (target, t_delta, base) in [(&rb, &db, &v.b), (&rc, &dc, &v.c)] {
        let base_irl = base.clone().with_zero(None);
        for e in find_embeddings(&ra.algebra, &target.algebra) {
            embeddings_checked += 1;
            let back = restrict_to_base(&e, &ra, target)
                .filter(|r| is_embedding(&a_irl, &base_irl, &r.map))
                .and_then(|r| lift_to_rotations(&r, &ra, target, t_delta).ok());
            if back.as_ref() == Some(&e) {
                embeddings_determined += 1;
            }
        }
    }
    let homs = find_homomorphisms(&ra.algebra, &rb.algebra);
    let homomorphisms_leaving_base = homs
        .iter()
        .filter(|k| restrict_to_base(k, &ra, &rb).is_none())
        .count();
    Ok(TransferReport {
        sizes: [na, nb, nc, nd],
        rotated_formation,
        lifted_amalgam,
        embeddings_checked,
        embeddings_determined,
        homomorphisms_checked: homs.len(),
        homomorphisms_leaving_base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{is_valid, morphism::are_isomorphic};
    use crate::filters::sigma_gamma;

    fn chain_formation() -> (VFormation, Amalgam) {
        let a = catalog::boolean();
        let b = catalog::godel(3);
        let c = catalog::lukasiewicz(3);
        let v = VFormation::new(
            a,
            b,
            c,
            Morphism::new(vec![0, 2]),
            Morphism::new(vec![0, 2]),
        )
        .unwrap();
        let m = crate::amalgam::brute_force_amalgam(&v, &crate::corpus::small_bounded(5)).unwrap();
        (v, m)
    }

    #[test]
    fn transfer_lifts_an_amalgam() {
        let (v, m) = chain_formation();
        let (x, _) = crate::terms::parse_term("x").unwrap();
        let r = rotation_amalgam_transfer_check(&v, &x, 3, &m).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.embeddings_checked > 0 && r.homomorphisms_checked > 0);
    }

    #[test]
    fn transfer_with_mixed_sizes() {
        let (v, m) = chain_formation();
        let (x, _) = crate::terms::parse_term("x").unwrap();
        let r = mixed_rotation_transfer_check(&v, &x, [3, 5, 7], &m).unwrap();
        assert_eq!(r.sizes, [3, 5, 7, 13]);
        assert!(r.holds(), "{r:?}");
        assert!(mixed_rotation_transfer_check(&v, &x, [4, 5, 4], &m).is_err());
    }

    #[test]
    fn degenerate_transfer_is_the_rotation() {
        let a = catalog::lukasiewicz(3);
        let id = Morphism::identity(3);
        let v = VFormation::new(a.clone(), a.clone(), a.clone(), id.clone(), id.clone()).unwrap();
        let m = Amalgam {
            d: a,
            h: id.clone(),
            k: id,
        };
        let (x, _) = crate::terms::parse_term("x").unwrap();
        let r = rotation_amalgam_transfer_check(&v, &x, 4, &m).unwrap();
        assert!(r.holds() && r.lifted_amalgam.strong);
    }

    #[test]
    fn identity_and_constant_images() {
        let a = catalog::lukasiewicz(4);
        let (img, _) = nucleus_image(&a, &identity_nucleus(&a)).unwrap();
        assert!(img.same_tables(&a));
        let top = vec![a.unit(); a.n()];
        let (img, _) = nucleus_image(&a, &top).unwrap();
        assert_eq!(img.n(), 1);
    }

    #[test]
    fn nuclei_of_lukasiewicz_four_have_valid_images() {
        let a = catalog::lukasiewicz(4);
        let nuclei = all_nuclei(&a);
        assert!(nuclei.contains(&identity_nucleus(&a)));
        assert!(nuclei.contains(&vec![a.unit(); a.n()]));
        for d in &nuclei {
            assert!(is_valid(&nucleus_image(&a, d).unwrap().0));
        }
        // a brute force over all maps agrees on the count
        let n = a.n();
        let mut count = 0;
        for code in 0..n.pow(n as u32) {
            let d: Vec<usize> = (0..n).map(|i| code / n.pow(i as u32) % n).collect();
            if check_nucleus(&a, &d).is_ok() {
                count += 1;
            }
        }
        assert_eq!(count, nuclei.len());
    }

    #[test]
    fn rotation_of_two_chain_is_involutive() {
        let r = disconnected_rotation(&catalog::boolean()).unwrap().algebra;
        assert_eq!(r.n(), 4);
        assert!(is_valid(&r));
        let z = r.zero().unwrap();
        assert!(r.all().iter().all(|x| r.ldiv(r.ldiv(x, z), z) == x));
    }

    #[test]
    fn rotation_of_trivial_is_boolean() {
        let r = disconnected_rotation(&catalog::trivial()).unwrap().algebra;
        assert!(are_isomorphic(&r, &catalog::boolean()).is_some());
    }

    #[test]
    fn rotation_of_godel_three() {
        let a = catalog::godel(3);
        let r = disconnected_rotation(&a).unwrap();
        let d = &r.algebra;
        assert_eq!(d.n(), 6);
        assert!(is_valid(d));
        let z = d.zero().unwrap();
        for &x in &r.a_map {
            assert_eq!(d.ldiv(d.ldiv(x, z), z), x);
        }
    }

    #[test]
    fn constant_nucleus_adds_a_bottom() {
        let a = catalog::godel(3);
        let r = generalized_rotation(&a, &vec![a.unit(); a.n()]).unwrap();
        assert_eq!(r.algebra.n(), 4);
        assert!(is_valid(&r.algebra));
        assert!(r.algebra.is_commutative());
    }

    #[test]
    fn lifting_of_two_chain() {
        let g = n_lifting(3, &catalog::boolean()).unwrap().algebra;
        assert_eq!(g.n(), 4);
        let l1 = g.find("l1").unwrap();
        assert_eq!(Some(g.mul(l1, l1)), g.zero());
    }

    #[test]
    fn three_rotation_of_trivial_is_lukasiewicz() {
        let t = catalog::trivial();
        let r = n_rotation(&t, &identity_nucleus(&t), 3).unwrap().algebra;
        assert!(are_isomorphic(&r, &catalog::lukasiewicz(3)).is_some());
    }

    #[test]
    fn sigma_collapses_the_rotated_copy() {
        let a = catalog::godel(3);
        let r = disconnected_rotation(&a).unwrap();
        let ops = sigma_gamma(&r.algebra, r.upper_part()).unwrap();
        let z = r.algebra.zero().unwrap();
        for x in r.algebra.all().difference(&r.upper_part()).iter() {
            assert_eq!(ops.s(x), z);
        }
    }

    #[test]
    fn n_rotations_match_gluings() {
        for a in [
            catalog::boolean(),
            catalog::godel(3),
            catalog::lukasiewicz(3),
            catalog::boolean_square(),
        ] {
            for delta in all_nuclei(&a) {
                for n in 3..=5 {
                    let rot = n_rotation(&a, &delta, n).unwrap();
                    assert!(is_valid(&rot.algebra));
                    let q = rotation_quadruple(&a, &delta, n).unwrap();
                    let cq = crate::quadruple::check_quadruple(&q, true)
                        .unwrap()
                        .compatible()
                        .expect("rotation quadruple is compatible");
                    let g = crate::gluing::fi_gluing(&cq).unwrap();
                    assert!(are_isomorphic(&rot.algebra, &g.algebra).is_some());
                }
            }
        }
    }
}
