//! Small named algebras used as building blocks and test fixtures.

use super::FiniteRL;

/// A bounded chain `0 < 1 < ... < n-1` with the given multiplication.
/// Panics if the multiplication is not residuated.
pub fn chain(n: usize, mul: impl Fn(usize, usize) -> usize) -> FiniteRL {
    FiniteRL::from_order_mul(n, |x, y| x <= y, mul, n - 1, Some(0))
        .expect("chain multiplication must be residuated")
}

/// One-element algebra.
pub fn trivial() -> FiniteRL {
    chain(1, |_, _| 0).with_labels(Some(vec!["1".into()]))
}

/// Trivial algebra without a designated zero.
pub fn trivial_unbounded() -> FiniteRL {
    trivial().with_zero(None)
}

/// Two-element Boolean algebra `0 < 1`.
pub fn boolean() -> FiniteRL {
    chain(2, |x, y| x.min(y)).with_labels(Some(vec!["0".into(), "1".into()]))
}

/// Gödel chain with `n` elements: multiplication is meet.
pub fn godel(n: usize) -> FiniteRL {
    chain(n, |x, y| x.min(y)).with_labels(Some(chain_labels(n)))
}

/// Łukasiewicz chain with `n` elements: `x*y = max(0, x + y - 1)` on
/// `{0, 1/(n-1), ..., 1}`.
pub fn lukasiewicz(n: usize) -> FiniteRL {
    assert!(n >= 1);
    let top = n - 1;
    chain(n, |x, y| (x + y).saturating_sub(top)).with_labels(Some(
        (0..n)
            .map(|i| match i {
                0 => "0".to_string(),
                i if i == top => "1".to_string(),
                i => format!("l{i}"),
            })
            .collect(),
    ))
}

/// Four-element Boolean algebra `2 x 2` with atoms `p`, `q`.
pub fn boolean_square() -> FiniteRL {
    // 0 = bottom, 1 = p, 2 = q, 3 = top; bits encode coordinates
    let leq = |x: usize, y: usize| x & y == x;
    FiniteRL::from_order_mul(4, leq, |x, y| x & y, 3, Some(0))
        .expect("Boolean algebra is residuated")
        .with_labels(Some(vec!["0".into(), "p".into(), "q".into(), "1".into()]))
}

fn chain_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == n - 1 => "1".to_string(),
            i => format!("c{i}"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_valid;

    #[test]
    fn lukasiewicz_three() {
        let l = lukasiewicz(3);
        assert!(is_valid(&l));
        assert_eq!(l.mul(1, 1), 0);
        assert_eq!(l.ldiv(1, 0), 1);
    }

    #[test]
    fn square_is_valid() {
        let b = boolean_square();
        assert!(is_valid(&b));
        assert!(!b.is_chain());
    }
}
