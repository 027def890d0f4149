//! Finite integral residuated lattices stored as operation tables.
//!
//! Elements are indices `0..n`. The unit (the lattice top) always sits at
//! index `n - 1`; constructors permute the carrier to enforce this.

pub mod catalog;
pub mod io;
pub mod morphism;
pub mod sub;

use crate::error::{Error, Result};
use crate::set::{ElemSet, MAX_ELEMS};
use serde::Serialize;
use std::fmt;

/// Which binary operation a table or violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Join,
    Meet,
    Mul,
    Ldiv,
    Rdiv,
}

impl Op {
    pub const ALL: [Op; 5] = [Op::Join, Op::Meet, Op::Mul, Op::Ldiv, Op::Rdiv];

    pub fn name(self) -> &'static str {
        match self {
            Op::Join => "join",
            Op::Meet => "meet",
            Op::Mul => "mul",
            Op::Ldiv => "ldiv",
            Op::Rdiv => "rdiv",
        }
    }
}

/// Unvalidated tables, as read from a file or assembled by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTables {
    pub leq: Vec<Vec<bool>>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub ldiv: Vec<Vec<usize>>,
    pub rdiv: Vec<Vec<usize>>,
    pub unit: usize,
    pub zero: Option<usize>,
    pub labels: Option<Vec<String>>,
}

/// A finite algebra in the residuated-lattice signature.
///
/// Construction only checks that the tables are well formed; use
/// [`verify_axioms`] to check the residuated-lattice laws.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteRL {
    n: usize,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    mul: Vec<usize>,
    ldiv: Vec<usize>,
    rdiv: Vec<usize>,
    zero: Option<usize>,
    labels: Option<Vec<String>>,
}

fn flatten<T: Copy>(rows: &[Vec<T>], n: usize, what: &str) -> Result<Vec<T>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Structural(format!("{what} table is not {n}x{n}")));
    }
    Ok(rows.iter().flatten().copied().collect())
}

impl FiniteRL {
    /// Builds an algebra from raw tables, checking shapes and index ranges
    /// and moving the unit to index `n - 1`.
    pub fn from_tables(raw: RawTables) -> Result<Self> {
        let n = raw.leq.len();
        if n == 0 {
            return Err(Error::Structural("empty carrier".into()));
        }
        if n > MAX_ELEMS {
            return Err(Error::Structural(format!(
                "carrier of size {n} exceeds the supported {MAX_ELEMS}"
            )));
        }
        let leq = flatten(&raw.leq, n, "leq")?;
        let mut tabs = Vec::new();
        for (op, rows) in [
            (Op::Join, &raw.join),
            (Op::Meet, &raw.meet),
            (Op::Mul, &raw.mul),
            (Op::Ldiv, &raw.ldiv),
            (Op::Rdiv, &raw.rdiv),
        ] {
            let t = flatten(rows, n, op.name())?;
            if let Some(bad) = t.iter().find(|&&v| v >= n) {
                return Err(Error::Structural(format!(
                    "{} table contains index {bad} out of range",
                    op.name()
                )));
            }
            tabs.push(t);
        }
        if raw.unit >= n {
            return Err(Error::Structural(format!("unit {} out of range", raw.unit)));
        }
        if let Some(z) = raw.zero {
            if z >= n {
                return Err(Error::Structural(format!("zero {z} out of range")));
            }
        }
        if let Some(l) = &raw.labels {
            if l.len() != n {
                return Err(Error::Structural(format!(
                    "{} labels for {n} elements",
                    l.len()
                )));
            }
        }
        let rdiv = tabs.pop().unwrap();
        let ldiv = tabs.pop().unwrap();
        let mul = tabs.pop().unwrap();
        let meet = tabs.pop().unwrap();
        let join = tabs.pop().unwrap();
        let a = FiniteRL {
            n,
            leq,
            join,
            meet,
            mul,
            ldiv,
            rdiv,
            zero: raw.zero,
            labels: raw.labels,
        };
        Ok(if raw.unit == n - 1 {
            a
        } else {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(raw.unit, n - 1);
            a.relabel(&perm)
        })
    }

    /// Builds an algebra from an order and a multiplication, deriving the
    /// lattice operations and both residuals.
    pub fn from_order_mul(
        n: usize,
        leq: impl Fn(usize, usize) -> bool,
        mul: impl Fn(usize, usize) -> usize,
        unit: usize,
        zero: Option<usize>,
    ) -> Result<Self> {
        let leq_rows: Vec<Vec<bool>> = (0..n)
            .map(|x| (0..n).map(|y| leq(x, y)).collect())
            .collect();
        let mul_rows: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| mul(x, y)).collect())
            .collect();
        residuals_from_mul(&leq_rows, &mul_rows, unit, zero)
    }

    /// Applies a permutation of the carrier: element `x` becomes `perm[x]`.
    /// The caller must keep the unit at `n - 1`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteRL {
        let n = self.n;
        let mut inv = vec![0; n];
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        let remap = |t: &Vec<usize>| -> Vec<usize> {
            let mut out = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    out[perm[x] * n + perm[y]] = perm[t[x * n + y]];
                }
            }
            out
        };
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[perm[x] * n + perm[y]] = self.leq[x * n + y];
            }
        }
        FiniteRL {
            n,
            leq,
            join: remap(&self.join),
            meet: remap(&self.meet),
            mul: remap(&self.mul),
            ldiv: remap(&self.ldiv),
            rdiv: remap(&self.rdiv),
            zero: self.zero.map(|z| perm[z]),
            labels: self
                .labels
                .as_ref()
                .map(|l| (0..n).map(|p| l[inv[p]].clone()).collect()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn unit(&self) -> usize {
        self.n - 1
    }
    pub fn top(&self) -> usize {
        self.n - 1
    }
    pub fn zero(&self) -> Option<usize> {
        self.zero
    }
    pub fn is_bounded(&self) -> bool {
        self.zero.is_some()
    }
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element: its label or its index.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// Looks an element up by label (or by index written in decimal).
    pub fn find(&self, name: &str) -> Option<usize> {
        if let Some(l) = &self.labels {
            if let Some(i) = l.iter().position(|s| s == name) {
                return Some(i);
            }
        }
        name.parse::<usize>().ok().filter(|&i| i < self.n)
    }

    pub fn with_labels(mut self, labels: Option<Vec<String>>) -> FiniteRL {
        assert!(labels.as_ref().is_none_or(|l| l.len() == self.n));
        self.labels = labels;
        self
    }

    pub fn with_zero(mut self, zero: Option<usize>) -> FiniteRL {
        self.zero = zero;
        self
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }
    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }
    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y]
    }
    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n + y]
    }
    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y]
    }
    /// `x \ z`
    #[inline]
    pub fn ldiv(&self, x: usize, z: usize) -> usize {
        self.ldiv[x * self.n + z]
    }
    /// `z / y`
    #[inline]
    pub fn rdiv(&self, z: usize, y: usize) -> usize {
        self.rdiv[z * self.n + y]
    }

    #[inline]
    pub fn op(&self, op: Op, x: usize, y: usize) -> usize {
        match op {
            Op::Join => self.join(x, y),
            Op::Meet => self.meet(x, y),
            Op::Mul => self.mul(x, y),
            Op::Ldiv => self.ldiv(x, y),
            Op::Rdiv => self.rdiv(x, y),
        }
    }

    pub fn table(&self, op: Op) -> &[usize] {
        match op {
            Op::Join => &self.join,
            Op::Meet => &self.meet,
            Op::Mul => &self.mul,
            Op::Ldiv => &self.ldiv,
            Op::Rdiv => &self.rdiv,
        }
    }

    pub fn leq_table(&self) -> &[bool] {
        &self.leq
    }

    /// `x^k` with `x^0 = 1`.
    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.unit(), |acc, _| self.mul(acc, x))
    }

    /// Least element of the lattice, whether or not it is a designated zero.
    pub fn bottom(&self) -> usize {
        (0..self.n).fold(self.top(), |acc, x| self.meet(acc, x))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.leq(x, y) || self.leq(y, x)))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    /// Elements sorted by (height, index), height being the length of the
    /// longest chain from the bottom.
    pub fn by_height(&self) -> Vec<(usize, usize)> {
        let h = self.heights();
        let mut v: Vec<(usize, usize)> = (0..self.n).map(|x| (h[x], x)).collect();
        v.sort();
        v
    }

    pub fn heights(&self) -> Vec<usize> {
        let n = self.n;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&y| self.leq(y, x)).count());
        let mut h = vec![0; n];
        for &x in &order {
            h[x] = order
                .iter()
                .filter(|&&y| self.lt(y, x))
                .map(|&y| h[y] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Covering pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Elements of a chain listed from bottom to top. Panics if not a chain.
    pub fn chain_order(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.n).collect();
        v.sort_by(|&x, &y| {
            if x == y {
                std::cmp::Ordering::Equal
            } else if self.leq(x, y) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        v
    }

    /// Upward closure of a set.
    pub fn up_closure(&self, s: ElemSet) -> ElemSet {
        (0..self.n)
            .filter(|&y| s.iter().any(|x| self.leq(x, y)))
            .collect()
    }

    /// Downward closure of a set.
    pub fn down_closure(&self, s: ElemSet) -> ElemSet {
        (0..self.n)
            .filter(|&y| s.iter().any(|x| self.leq(y, x)))
            .collect()
    }

    /// Least element of a set in this order, if it has one.
    pub fn min_of(&self, s: ElemSet) -> Option<usize> {
        s.iter().find(|&x| s.iter().all(|y| self.leq(x, y)))
    }

    /// Greatest element of a set in this order, if it has one.
    pub fn max_of(&self, s: ElemSet) -> Option<usize> {
        s.iter().find(|&x| s.iter().all(|y| self.leq(y, x)))
    }

    /// Raw row-major tables, for serialization and comparisons.
    pub fn to_raw(&self) -> RawTables {
        let n = self.n;
        let rows =
            |t: &Vec<usize>| -> Vec<Vec<usize>> { t.chunks(n).map(|c| c.to_vec()).collect() };
        RawTables {
            leq: self.leq.chunks(n).map(|c| c.to_vec()).collect(),
            join: rows(&self.join),
            meet: rows(&self.meet),
            mul: rows(&self.mul),
            ldiv: rows(&self.ldiv),
            rdiv: rows(&self.rdiv),
            unit: n - 1,
            zero: self.zero,
            labels: self.labels.clone(),
        }
    }

    /// True when both algebras have identical tables, unit and zero.
    /// Labels are ignored.
    pub fn same_tables(&self, other: &FiniteRL) -> bool {
        self.n == other.n
            && self.leq == other.leq
            && self.join == other.join
            && self.meet == other.meet
            && self.mul == other.mul
            && self.ldiv == other.ldiv
            && self.rdiv == other.rdiv
            && self.zero == other.zero
    }

    /// First cell where two same-sized algebras differ, for diagnostics.
    pub fn first_difference(&self, other: &FiniteRL) -> Option<String> {
        if self.n != other.n {
            return Some(format!("sizes {} vs {}", self.n, other.n));
        }
        if self.zero != other.zero {
            return Some(format!("zero {:?} vs {:?}", self.zero, other.zero));
        }
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                if self.leq(x, y) != other.leq(x, y) {
                    return Some(format!("leq({x},{y})"));
                }
                for op in Op::ALL {
                    if self.op(op, x, y) != other.op(op, x, y) {
                        return Some(format!(
                            "{}({x},{y}) = {} vs {}",
                            op.name(),
                            self.op(op, x, y),
                            other.op(op, x, y)
                        ));
                    }
                }
            }
        }
        None
    }
}

impl fmt::Debug for FiniteRL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", io::to_text(self))
    }
}

/// Derives the lattice operations and residuals from an order and a
/// multiplication. Residuals are `x\z = max{y : xy <= z}` and
/// `z/y = max{x : xy <= z}`; if a maximum is missing the structure is not
/// residuated and the offending pair is reported.
pub fn residuals_from_mul(
    leq: &[Vec<bool>],
    mul: &[Vec<usize>],
    unit: usize,
    zero: Option<usize>,
) -> Result<FiniteRL> {
    let n = leq.len();
    if n == 0
        || mul.len() != n
        || leq.iter().any(|r| r.len() != n)
        || mul.iter().any(|r| r.len() != n)
    {
        return Err(Error::Structural(
            "tables must be non-empty and square".into(),
        ));
    }
    if mul.iter().flatten().any(|&v| v >= n) || unit >= n {
        return Err(Error::Structural("index out of range".into()));
    }
    let bound = |x: usize, y: usize, upper: bool| -> Option<usize> {
        let cands: Vec<usize> = (0..n)
            .filter(|&z| {
                if upper {
                    leq[x][z] && leq[y][z]
                } else {
                    leq[z][x] && leq[z][y]
                }
            })
            .collect();
        cands.iter().copied().find(|&z| {
            cands
                .iter()
                .all(|&w| if upper { leq[z][w] } else { leq[w][z] })
        })
    };
    let mut join = vec![vec![0; n]; n];
    let mut meet = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            join[x][y] = bound(x, y, true)
                .ok_or_else(|| Error::Structural(format!("no join of {x} and {y}")))?;
            meet[x][y] = bound(x, y, false)
                .ok_or_else(|| Error::Structural(format!("no meet of {x} and {y}")))?;
        }
    }
    let maximum = |cands: Vec<usize>| -> Option<usize> {
        cands
            .iter()
            .copied()
            .find(|&m| cands.iter().all(|&w| leq[w][m]))
    };
    let mut ldiv = vec![vec![0; n]; n];
    let mut rdiv = vec![vec![0; n]; n];
    for x in 0..n {
        for z in 0..n {
            ldiv[x][z] = maximum((0..n).filter(|&y| leq[mul[x][y]][z]).collect()).ok_or(
                Error::NotResiduated {
                    op: "ldiv",
                    x,
                    y: z,
                },
            )?;
            rdiv[z][x] = maximum((0..n).filter(|&w| leq[mul[w][x]][z]).collect()).ok_or(
                Error::NotResiduated {
                    op: "rdiv",
                    x: z,
                    y: x,
                },
            )?;
        }
    }
    FiniteRL::from_tables(RawTables {
        leq: leq.to_vec(),
        join,
        meet,
        mul: mul.to_vec(),
        ldiv,
        rdiv,
        unit,
        zero,
        labels: None,
    })
}

/// Which law a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    LeqReflexive,
    LeqAntisymmetric,
    LeqTransitive,
    JoinIsLub,
    MeetIsGlb,
    UnitIsTop,
    UnitLaw,
    MulAssociative,
    LeftResiduation,
    RightResiduation,
    ZeroIsBottom,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::LeqReflexive => "order reflexive",
            Axiom::LeqAntisymmetric => "order antisymmetric",
            Axiom::LeqTransitive => "order transitive",
            Axiom::JoinIsLub => "join is least upper bound",
            Axiom::MeetIsGlb => "meet is greatest lower bound",
            Axiom::UnitIsTop => "unit is top",
            Axiom::UnitLaw => "unit law",
            Axiom::MulAssociative => "mul associative",
            Axiom::LeftResiduation => "left residuation",
            Axiom::RightResiduation => "right residuation",
            Axiom::ZeroIsBottom => "zero is bottom",
        }
    }
}

/// A failed axiom with its first witness in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.axiom.name(), self.witness)
    }
}

/// Checks every integral residuated-lattice law exhaustively. Returns one
/// violation per failed axiom; empty means the algebra is valid.
pub fn verify_axioms(a: &FiniteRL) -> Vec<Violation> {
    let n = a.n();
    let u = a.unit();
    let mut out = Vec::new();
    let mut first = |axiom: Axiom, w: Option<Vec<usize>>| {
        if let Some(witness) = w {
            out.push(Violation { axiom, witness });
        }
    };
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let triples = || pairs().flat_map(move |(x, y)| (0..n).map(move |z| (x, y, z)));

    first(
        Axiom::LeqReflexive,
        (0..n).find(|&x| !a.leq(x, x)).map(|x| vec![x]),
    );
    first(
        Axiom::LeqAntisymmetric,
        pairs()
            .find(|&(x, y)| x != y && a.leq(x, y) && a.leq(y, x))
            .map(|(x, y)| vec![x, y]),
    );
    first(
        Axiom::LeqTransitive,
        triples()
            .find(|&(x, y, z)| a.leq(x, y) && a.leq(y, z) && !a.leq(x, z))
            .map(|(x, y, z)| vec![x, y, z]),
    );
    first(
        Axiom::JoinIsLub,
        triples()
            .find(|&(x, y, z)| {
                let j = a.join(x, y);
                !a.leq(x, j) || !a.leq(y, j) || (a.leq(x, z) && a.leq(y, z) && !a.leq(j, z))
            })
            .map(|(x, y, z)| vec![x, y, z]),
    );
    first(
        Axiom::MeetIsGlb,
        triples()
            .find(|&(x, y, z)| {
                let m = a.meet(x, y);
                !a.leq(m, x) || !a.leq(m, y) || (a.leq(z, x) && a.leq(z, y) && !a.leq(z, m))
            })
            .map(|(x, y, z)| vec![x, y, z]),
    );
    first(
        Axiom::UnitIsTop,
        (0..n).find(|&x| !a.leq(x, u)).map(|x| vec![x]),
    );
    first(
        Axiom::UnitLaw,
        (0..n)
            .find(|&x| a.mul(x, u) != x || a.mul(u, x) != x)
            .map(|x| vec![x]),
    );
    first(
        Axiom::MulAssociative,
        triples()
            .find(|&(x, y, z)| a.mul(a.mul(x, y), z) != a.mul(x, a.mul(y, z)))
            .map(|(x, y, z)| vec![x, y, z]),
    );
    first(
        Axiom::LeftResiduation,
        triples()
            .find(|&(x, y, z)| a.leq(a.mul(x, y), z) != a.leq(y, a.ldiv(x, z)))
            .map(|(x, y, z)| vec![x, y, z]),
    );
    first(
        Axiom::RightResiduation,
        triples()
            .find(|&(x, y, z)| a.leq(a.mul(x, y), z) != a.leq(x, a.rdiv(z, y)))
            .map(|(x, y, z)| vec![x, y, z]),
    );
    if let Some(z) = a.zero() {
        first(
            Axiom::ZeroIsBottom,
            (0..n).find(|&x| !a.leq(z, x)).map(|x| vec![z, x]),
        );
    }
    out
}

/// Convenience: `verify_axioms(a).is_empty()`.
pub fn is_valid(a: &FiniteRL) -> bool {
    verify_axioms(a).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn boolean_and_lukasiewicz_are_valid() {
        assert!(is_valid(&catalog::boolean()));
        assert!(is_valid(&catalog::lukasiewicz(3)));
        assert!(is_valid(&catalog::godel(5)));
    }

    #[test]
    fn planted_associativity_defect_is_reported() {
        // a*a = 0 with Gödel residuals left in place
        let g = catalog::godel(3);
        let mut raw = g.to_raw();
        raw.mul[1][1] = 0;
        let bad = FiniteRL::from_tables(raw).unwrap();
        let v = verify_axioms(&bad);
        assert!(v.iter().any(|v| v.axiom == Axiom::LeftResiduation));
    }

    #[test]
    fn residuals_of_godel_chain() {
        let g = catalog::godel(3);
        assert_eq!(g.ldiv(1, 0), 0);
        assert_eq!(g.ldiv(1, 1), 2);
        assert_eq!(g.ldiv(2, 1), 1);
    }

    #[test]
    fn unit_is_moved_last() {
        let raw = RawTables {
            leq: vec![vec![true, false], vec![true, true]],
            join: vec![vec![0, 1], vec![1, 1]],
            meet: vec![vec![0, 0], vec![0, 1]],
            mul: vec![vec![0, 0], vec![0, 1]],
            ldiv: vec![vec![1, 1], vec![0, 1]],
            rdiv: vec![vec![1, 0], vec![1, 1]],
            unit: 0,
            zero: Some(1),
            labels: Some(vec!["one".into(), "zero".into()]),
        };
        // element 0 is the top here
        let a = FiniteRL::from_tables(raw).unwrap();
        assert_eq!(a.label(1), "one");
        assert_eq!(a.zero(), Some(0));
    }

    #[test]
    fn structural_errors_precede_axioms() {
        let mut raw = catalog::boolean().to_raw();
        raw.mul[0] = vec![0];
        assert!(matches!(
            FiniteRL::from_tables(raw),
            Err(Error::Structural(_))
        ));
    }
}
