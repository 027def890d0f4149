//! Subalgebras, quotients and direct products.

use super::morphism::Morphism;
use super::{FiniteRL, Op, RawTables};
use crate::error::{Error, Result};
use crate::filters;
use crate::set::ElemSet;

/// Least subset containing `seed`, the unit (and the zero when
/// `keep_zero` is set and the algebra has one) closed under the five
/// binary operations.
pub fn closure(a: &FiniteRL, seed: ElemSet, keep_zero: bool) -> ElemSet {
    let mut s = seed;
    s.insert(a.unit());
    if keep_zero {
        if let Some(z) = a.zero() {
            s.insert(z);
        }
    }
    let mut frontier: Vec<usize> = s.to_vec();
    while let Some(x) = frontier.pop() {
        let members: Vec<usize> = s.to_vec();
        for y in members {
            for op in Op::ALL {
                for r in [a.op(op, x, y), a.op(op, y, x)] {
                    if s.insert(r) {
                        frontier.push(r);
                    }
                }
            }
        }
    }
    s
}

/// True when `s` is closed under all five operations and contains the unit.
pub fn is_closed(a: &FiniteRL, s: ElemSet) -> bool {
    s.contains(a.unit())
        && s.iter().all(|x| {
            s.iter()
                .all(|y| Op::ALL.iter().all(|&op| s.contains(a.op(op, x, y))))
        })
}

/// The algebra induced on a closed subset, listed in increasing index
/// order, together with its inclusion map. The zero is kept when it lies in
/// the subset.
pub fn induced(a: &FiniteRL, s: ElemSet) -> Result<(FiniteRL, Morphism)> {
    if !is_closed(a, s) {
        return Err(Error::Precondition(
            "subset is not closed under the operations".into(),
        ));
    }
    let elems = s.to_vec();
    let mut pos = vec![usize::MAX; a.n()];
    for (i, &e) in elems.iter().enumerate() {
        pos[e] = i;
    }
    let m = elems.len();
    let tab = |op: Op| -> Vec<Vec<usize>> {
        elems
            .iter()
            .map(|&x| elems.iter().map(|&y| pos[a.op(op, x, y)]).collect())
            .collect()
    };
    let sub = FiniteRL::from_tables(RawTables {
        leq: elems
            .iter()
            .map(|&x| elems.iter().map(|&y| a.leq(x, y)).collect())
            .collect(),
        join: tab(Op::Join),
        meet: tab(Op::Meet),
        mul: tab(Op::Mul),
        ldiv: tab(Op::Ldiv),
        rdiv: tab(Op::Rdiv),
        unit: pos[a.unit()],
        zero: a.zero().filter(|z| s.contains(*z)).map(|z| pos[z]),
        labels: a
            .labels()
            .map(|l| elems.iter().map(|&e| l[e].clone()).collect()),
    })?;
    debug_assert_eq!(sub.unit(), m - 1);
    Ok((sub, Morphism::new(elems)))
}

/// The subalgebra generated by `seed`.
pub fn subalgebra_generated(a: &FiniteRL, seed: ElemSet, keep_zero: bool) -> (FiniteRL, Morphism) {
    let s = closure(a, seed, keep_zero);
    induced(a, s).expect("closure is closed")
}

/// Quotient by the congruence of a congruence filter. Classes are indexed
/// by least member index, except that the class of the unit goes last.
pub fn homomorphic_image(a: &FiniteRL, filter: ElemSet) -> Result<(FiniteRL, Morphism)> {
    filters::check_congruence_filter(a, filter)?;
    let n = a.n();
    let related =
        |x: usize, y: usize| filter.contains(a.ldiv(x, y)) && filter.contains(a.ldiv(y, x));
    let mut rep = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if rep[x] == usize::MAX {
            let id = reps.len();
            reps.push(x);
            for y in x..n {
                if related(x, y) {
                    rep[y] = id;
                }
            }
        }
    }
    let k = reps.len();
    let unit_class = rep[a.unit()];
    // move the unit class last, keep the others in order
    let mut order: Vec<usize> = (0..k).filter(|&c| c != unit_class).collect();
    order.push(unit_class);
    let mut new_id = vec![0; k];
    for (i, &c) in order.iter().enumerate() {
        new_id[c] = i;
    }
    let q: Vec<usize> = (0..n).map(|x| new_id[rep[x]]).collect();
    let reps_sorted: Vec<usize> = order.iter().map(|&c| reps[c]).collect();
    let tab = |op: Op| -> Vec<Vec<usize>> {
        reps_sorted
            .iter()
            .map(|&x| reps_sorted.iter().map(|&y| q[a.op(op, x, y)]).collect())
            .collect()
    };
    let img = FiniteRL::from_tables(RawTables {
        leq: reps_sorted
            .iter()
            .map(|&x| {
                reps_sorted
                    .iter()
                    .map(|&y| filter.contains(a.ldiv(x, y)))
                    .collect()
            })
            .collect(),
        join: tab(Op::Join),
        meet: tab(Op::Meet),
        mul: tab(Op::Mul),
        ldiv: tab(Op::Ldiv),
        rdiv: tab(Op::Rdiv),
        unit: k - 1,
        zero: a.zero().map(|z| q[z]),
        labels: None,
    })?;
    Ok((img, Morphism::new(q)))
}

/// Direct product; element `(x, y)` has index `x * |b| + y`, so the unit
/// pair is last.
pub fn product(a: &FiniteRL, b: &FiniteRL) -> FiniteRL {
    let (na, nb) = (a.n(), b.n());
    let n = na * nb;
    let split = |i: usize| (i / nb, i % nb);
    let tab = |op: Op| -> Vec<Vec<usize>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let ((x1, y1), (x2, y2)) = (split(i), split(j));
                        a.op(op, x1, x2) * nb + b.op(op, y1, y2)
                    })
                    .collect()
            })
            .collect()
    };
    let labels = Some(
        (0..n)
            .map(|i| {
                let (x, y) = split(i);
                format!("({},{})", a.label(x), b.label(y))
            })
            .collect(),
    );
    FiniteRL::from_tables(RawTables {
        leq: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let ((x1, y1), (x2, y2)) = (split(i), split(j));
                        a.leq(x1, x2) && b.leq(y1, y2)
                    })
                    .collect()
            })
            .collect(),
        join: tab(Op::Join),
        meet: tab(Op::Meet),
        mul: tab(Op::Mul),
        ldiv: tab(Op::Ldiv),
        rdiv: tab(Op::Rdiv),
        unit: n - 1,
        zero: match (a.zero(), b.zero()) {
            (Some(x), Some(y)) => Some(x * nb + y),
            _ => None,
        },
        labels,
    })
    .expect("product tables are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, is_valid, morphism::are_isomorphic};

    #[test]
    fn generated_in_godel_chain() {
        let g = catalog::godel(3);
        let (s, inc) = subalgebra_generated(&g, ElemSet::singleton(1), false);
        assert_eq!(inc.map, vec![1, 2]);
        assert!(is_valid(&s));
        let (_, inc) = subalgebra_generated(&g, ElemSet::singleton(1), true);
        assert_eq!(inc.map, vec![0, 1, 2]);
        let t = g.clone().with_zero(None);
        let (s, _) = subalgebra_generated(&t, ElemSet::new(), false);
        assert_eq!(s.n(), 1);
    }

    #[test]
    fn quotient_by_unit_filter_is_isomorphic() {
        let a = catalog::lukasiewicz(4);
        let (q, _) = homomorphic_image(&a, ElemSet::singleton(3)).unwrap();
        assert!(are_isomorphic(&a, &q).is_some());
        let (q, _) = homomorphic_image(&a, a.all()).unwrap();
        assert_eq!(q.n(), 1);
    }

    #[test]
    fn product_of_booleans_is_square() {
        let p = product(&catalog::boolean(), &catalog::boolean());
        assert!(is_valid(&p));
        assert!(are_isomorphic(&p, &catalog::boolean_square()).is_some());
    }
}
