//! Partial integral residuated lattices and the triples that abstract the
//! lower and upper parts of a gluing.
//!
//! A lower triple `(K, sigma, gamma)` is what remains of `B` after deleting
//! a compatible filter `F` (keeping the unit); an upper triple
//! `(L, ell, r)` is what remains of `C` after deleting a compatible ideal.
//! `fit_two_element` and `fit_zero` rebuild total algebras from them.

use crate::algebra::{io, FiniteRL, Op, RawTables};
use crate::error::{Error, Result};
use crate::filters::{check_lower_pair, check_upper_pair, PairKind};
use crate::set::ElemSet;
use serde::Serialize;
use std::fmt;

/// A table cell of a partial operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Entry {
    Val(usize),
    Undef,
    /// Undefined in the stronger sense used by partial gluings: every
    /// element of `[y, 1)` divides below `y` and there is no coatom.
    StrongUndef,
}

impl Entry {
    pub fn val(self) -> Option<usize> {
        match self {
            Entry::Val(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_defined(self) -> bool {
        matches!(self, Entry::Val(_))
    }

    fn code(self) -> i64 {
        match self {
            Entry::Val(v) => v as i64,
            Entry::Undef => -1,
            Entry::StrongUndef => -2,
        }
    }
}

/// A partial algebra in the residuated-lattice signature with a total order
/// relation. The unit is at index `n - 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialRL {
    n: usize,
    leq: Vec<bool>,
    tables: [Vec<Entry>; 5],
    zero: Option<usize>,
    labels: Option<Vec<String>>,
}

fn op_index(op: Op) -> usize {
    match op {
        Op::Join => 0,
        Op::Meet => 1,
        Op::Mul => 2,
        Op::Ldiv => 3,
        Op::Rdiv => 4,
    }
}

impl PartialRL {
    /// Builds a partial algebra from an order and per-operation cell
    /// functions. The element `n - 1` must be the top.
    pub fn from_fn(
        n: usize,
        leq: impl Fn(usize, usize) -> bool,
        cell: impl Fn(Op, usize, usize) -> Entry,
        zero: Option<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if n == 0 || n > crate::set::MAX_ELEMS {
            return Err(Error::Structural(format!("unsupported carrier size {n}")));
        }
        let mut tables: [Vec<Entry>; 5] = Default::default();
        for op in Op::ALL {
            let t = &mut tables[op_index(op)];
            for x in 0..n {
                for y in 0..n {
                    let e = cell(op, x, y);
                    if let Entry::Val(v) = e {
                        if v >= n {
                            return Err(Error::Structural(format!(
                                "{} entry {v} out of range",
                                op.name()
                            )));
                        }
                    }
                    t.push(e);
                }
            }
        }
        if labels.as_ref().is_some_and(|l| l.len() != n) {
            return Err(Error::Structural("label count mismatch".into()));
        }
        Ok(PartialRL {
            n,
            leq: (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .map(|(x, y)| leq(x, y))
                .collect(),
            tables,
            zero,
            labels,
        })
    }

    /// A total algebra seen as a partial one.
    pub fn from_total(a: &FiniteRL) -> Self {
        PartialRL::from_fn(
            a.n(),
            |x, y| a.leq(x, y),
            |op, x, y| Entry::Val(a.op(op, x, y)),
            a.zero(),
            a.labels().map(|l| l.to_vec()),
        )
        .expect("total algebra is well formed")
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn unit(&self) -> usize {
        self.n - 1
    }
    pub fn zero(&self) -> Option<usize> {
        self.zero
    }
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
    pub fn label(&self, x: usize) -> String {
        self.labels
            .as_ref()
            .map_or_else(|| x.to_string(), |l| l[x].clone())
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
    pub fn get(&self, op: Op, x: usize, y: usize) -> Entry {
        self.tables[op_index(op)][x * self.n + y]
    }
    #[inline]
    pub fn def(&self, op: Op, x: usize, y: usize) -> Option<usize> {
        self.get(op, x, y).val()
    }

    pub fn is_total(&self) -> bool {
        self.tables.iter().all(|t| t.iter().all(|e| e.is_defined()))
    }

    /// The total algebra, when every cell is defined.
    pub fn to_total(&self) -> Result<FiniteRL> {
        let n = self.n;
        let tab = |op: Op| -> Result<Vec<Vec<usize>>> {
            (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| {
                            self.def(op, x, y).ok_or_else(|| {
                                Error::Precondition(format!("{}({x}, {y}) is undefined", op.name()))
                            })
                        })
                        .collect()
                })
                .collect()
        };
        FiniteRL::from_tables(RawTables {
            leq: (0..n)
                .map(|x| (0..n).map(|y| self.leq(x, y)).collect())
                .collect(),
            join: tab(Op::Join)?,
            meet: tab(Op::Meet)?,
            mul: tab(Op::Mul)?,
            ldiv: tab(Op::Ldiv)?,
            rdiv: tab(Op::Rdiv)?,
            unit: n - 1,
            zero: self.zero,
            labels: self.labels.clone(),
        })
    }

    /// Least upper bound in the order, if it exists.
    pub fn lub(&self, x: usize, y: usize) -> Option<usize> {
        let ub: Vec<usize> = (0..self.n)
            .filter(|&z| self.leq(x, z) && self.leq(y, z))
            .collect();
        ub.iter()
            .copied()
            .find(|&z| ub.iter().all(|&w| self.leq(z, w)))
    }

    /// Greatest lower bound in the order, if it exists.
    pub fn glb(&self, x: usize, y: usize) -> Option<usize> {
        let lb: Vec<usize> = (0..self.n)
            .filter(|&z| self.leq(z, x) && self.leq(z, y))
            .collect();
        lb.iter()
            .copied()
            .find(|&z| lb.iter().all(|&w| self.leq(w, z)))
    }

    pub fn max_of(&self, s: ElemSet) -> Option<usize> {
        s.iter().find(|&x| s.iter().all(|y| self.leq(y, x)))
    }

    pub fn min_of(&self, s: ElemSet) -> Option<usize> {
        s.iter().find(|&x| s.iter().all(|y| self.leq(x, y)))
    }

    /// The coatom, when `L - {1}` has a greatest element.
    pub fn coatom(&self) -> Option<usize> {
        if self.n < 2 {
            return None;
        }
        let rest = ElemSet::full(self.n - 1);
        let c = self.max_of(rest)?;
        // a unique maximal element of L - {1} that is the greatest one
        Some(c)
    }

    /// A coatom `c` with `L = {1} ∪ ↓c`. In a finite partial algebra this is
    /// the same as having a greatest element below the top.
    pub fn splitting_coatom(&self) -> Option<usize> {
        let c = self.coatom()?;
        (0..self.n - 1).all(|x| self.leq(x, c)).then_some(c)
    }

    pub fn bottom(&self) -> Option<usize> {
        self.min_of(ElemSet::full(self.n))
    }

    pub fn to_text(&self) -> String {
        let n = self.n;
        let mut out = format!("partial\nn {n}\nunit {}\n", self.unit());
        if let Some(z) = self.zero {
            out.push_str(&format!("zero {z}\n"));
        }
        if let Some(l) = &self.labels {
            out.push_str(&format!("labels {}\n", l.join(" ")));
        }
        out.push_str("leq\n");
        for x in 0..n {
            let row: String = (0..n)
                .map(|y| if self.leq(x, y) { '1' } else { '0' })
                .collect();
            out.push_str(&row);
            out.push('\n');
        }
        for op in Op::ALL {
            out.push_str(op.name());
            out.push('\n');
            for x in 0..n {
                let row: Vec<String> = (0..n)
                    .map(|y| self.get(op, x, y).code().to_string())
                    .collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }

    /// Parses the partial variant of the text format. All five tables are
    /// required.
    pub fn from_text(text: &str) -> Result<Self> {
        let doc = io::parse_doc(text)?;
        let n = doc.n;
        for op in Op::ALL {
            if !doc.tables.contains_key(op.name()) {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("missing `{}`", op.name()),
                });
            }
        }
        let unit = doc.unit.unwrap_or(n - 1);
        if unit != n - 1 {
            return Err(Error::Parse {
                line: 0,
                message: "partial algebras must list the unit last".into(),
            });
        }
        let leq = doc.leq.clone().unwrap();
        PartialRL::from_fn(
            n,
            |x, y| leq[x][y],
            |op, x, y| match doc.tables[op.name()][x][y] {
                -1 => Entry::Undef,
                -2 => Entry::StrongUndef,
                v => Entry::Val(v as usize),
            },
            doc.zero,
            doc.labels.clone(),
        )
    }
}

impl fmt::Debug for PartialRL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// A rule of the partial-algebra definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartialRule {
    Order,
    Integral,
    JoinRule,
    MeetRule,
    UnitLaw,
    Associative,
    Residuation,
    MulMonotone,
    DivisionMonotone,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialViolation {
    pub rule: PartialRule,
    pub witness: Vec<usize>,
}

/// Result of [`validate_partial`]: violations plus non-fatal warnings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PartialReport {
    pub violations: Vec<PartialViolation>,
    /// Undefined joins; the constructions never produce them.
    pub warnings: Vec<String>,
}

impl PartialReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every defined instance of the partial residuated-lattice laws.
/// The unit law is read as `x·1 = 1·x = x`.
pub fn validate_partial(p: &PartialRL) -> PartialReport {
    let n = p.n();
    let u = p.unit();
    let mut rep = PartialReport::default();
    let mut push = |rule, witness: Option<Vec<usize>>| {
        if let Some(witness) = witness {
            rep.violations.push(PartialViolation { rule, witness });
        }
    };
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let triples = || pairs().flat_map(move |(x, y)| (0..n).map(move |z| (x, y, z)));
    push(
        PartialRule::Order,
        triples()
            .find(|&(x, y, z)| {
                !p.leq(x, x)
                    || (x != y && p.leq(x, y) && p.leq(y, x))
                    || (p.leq(x, y) && p.leq(y, z) && !p.leq(x, z))
            })
            .map(|(x, y, z)| vec![x, y, z]),
    );
    push(
        PartialRule::Integral,
        (0..n).find(|&x| !p.leq(x, u)).map(|x| vec![x]),
    );
    push(
        PartialRule::JoinRule,
        pairs()
            .find(|&(x, y)| match p.get(Op::Join, x, y) {
                Entry::Val(v) => p.lub(x, y) != Some(v),
                _ => p.lub(x, y).is_some(),
            })
            .map(|(x, y)| vec![x, y]),
    );
    push(
        PartialRule::MeetRule,
        pairs()
            .find(|&(x, y)| match p.get(Op::Meet, x, y) {
                Entry::Val(v) => p.glb(x, y) != Some(v),
                _ => p.glb(x, y).is_some(),
            })
            .map(|(x, y)| vec![x, y]),
    );
    push(
        PartialRule::UnitLaw,
        (0..n)
            .find(|&x| p.def(Op::Mul, x, u) != Some(x) || p.def(Op::Mul, u, x) != Some(x))
            .map(|x| vec![x]),
    );
    push(
        PartialRule::Associative,
        triples()
            .find(|&(x, y, z)| {
                let left = p.def(Op::Mul, x, y).and_then(|xy| p.def(Op::Mul, xy, z));
                let right = p.def(Op::Mul, y, z).and_then(|yz| p.def(Op::Mul, x, yz));
                matches!((left, right), (Some(a), Some(b)) if a != b)
            })
            .map(|(x, y, z)| vec![x, y, z]),
    );
    push(
        PartialRule::Residuation,
        triples()
            .find(|&(x, y, z)| {
                match (
                    p.def(Op::Mul, x, y),
                    p.def(Op::Rdiv, z, y),
                    p.def(Op::Ldiv, x, z),
                ) {
                    (Some(m), Some(r), Some(l)) => {
                        let a = p.leq(m, z);
                        a != p.leq(x, r) || a != p.leq(y, l)
                    }
                    _ => false,
                }
            })
            .map(|(x, y, z)| vec![x, y, z]),
    );
    push(
        PartialRule::MulMonotone,
        triples()
            .find(|&(a, b, c)| {
                p.leq(a, b)
                    && (matches!((p.def(Op::Mul, a, c), p.def(Op::Mul, b, c)), (Some(x), Some(y)) if !p.leq(x, y))
                        || matches!((p.def(Op::Mul, c, a), p.def(Op::Mul, c, b)), (Some(x), Some(y)) if !p.leq(x, y)))
            })
            .map(|(a, b, c)| vec![a, b, c]),
    );
    push(
        PartialRule::DivisionMonotone,
        triples()
            .find(|&(x, y, z)| {
                if !p.leq(x, y) {
                    return false;
                }
                let bad = |a: Option<usize>, b: Option<usize>| matches!((a, b), (Some(a), Some(b)) if !p.leq(a, b));
                bad(p.def(Op::Ldiv, z, x), p.def(Op::Ldiv, z, y))
                    || bad(p.def(Op::Ldiv, y, z), p.def(Op::Ldiv, x, z))
                    || bad(p.def(Op::Rdiv, x, z), p.def(Op::Rdiv, y, z))
                    || bad(p.def(Op::Rdiv, z, y), p.def(Op::Rdiv, z, x))
            })
            .map(|(x, y, z)| vec![x, y, z]),
    );
    for (x, y) in pairs() {
        if x <= y && !p.get(Op::Join, x, y).is_defined() {
            rep.warnings.push(format!(
                "join of {} and {} is undefined",
                p.label(x),
                p.label(y)
            ));
        }
    }
    rep
}

/// `(K, sigma, gamma)`: a partial algebra whose only undefined cells are
/// divisions, with a strong conucleus and a closure operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerTriple {
    pub k: PartialRL,
    pub sigma: Vec<usize>,
    pub gamma: Vec<usize>,
}

/// A failed lower-triple property with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleViolation {
    pub property: String,
    pub witness: Vec<usize>,
}

fn tv(property: &str, witness: Vec<usize>) -> TripleViolation {
    TripleViolation {
        property: property.into(),
        witness,
    }
}

/// Checks every lower-triple property.
pub fn validate_lower_triple(t: &LowerTriple) -> Vec<TripleViolation> {
    let k = &t.k;
    let n = k.n();
    let u = k.unit();
    let (s, g) = (&t.sigma, &t.gamma);
    let mut out = Vec::new();
    if s.len() != n || g.len() != n || s.iter().chain(g).any(|&v| v >= n) {
        out.push(tv("operators have the wrong shape", vec![]));
        return out;
    }
    let rep = validate_partial(k);
    for v in rep.violations {
        out.push(tv(&format!("partial algebra: {:?}", v.rule), v.witness));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let mut first = |name: &str, w: Option<Vec<usize>>| {
        if let Some(w) = w {
            out.push(tv(name, w));
        }
    };
    first(
        "only divisions may be undefined",
        pairs
            .iter()
            .find(|&&(x, y)| {
                [Op::Join, Op::Meet, Op::Mul]
                    .iter()
                    .any(|&op| !k.get(op, x, y).is_defined())
            })
            .map(|&(x, y)| vec![x, y]),
    );
    first(
        "divisions undefined exactly when sigma(x) <= y and x is not below y",
        pairs
            .iter()
            .find(|&&(x, y)| {
                let expect_undef = k.leq(s[x], y) && !k.leq(x, y);
                k.get(Op::Ldiv, x, y).is_defined() == expect_undef
                    || k.get(Op::Rdiv, y, x).is_defined() == expect_undef
            })
            .map(|&(x, y)| vec![x, y]),
    );
    first(
        "sigma and gamma form a residuated pair",
        pairs
            .iter()
            .find(|&&(x, y)| k.leq(s[x], y) != k.leq(x, g[y]))
            .map(|&(x, y)| vec![x, y]),
    );
    first(
        "sigma is an interior operator with sigma(1) = 1",
        (0..n)
            .find(|&x| !k.leq(s[x], x) || s[s[x]] != s[x])
            .or((s[u] != u).then_some(u))
            .or_else(|| {
                pairs
                    .iter()
                    .find(|&&(x, y)| k.leq(x, y) && !k.leq(s[x], s[y]))
                    .map(|p| p.0)
            })
            .map(|x| vec![x]),
    );
    first(
        "sigma is a strong conucleus",
        pairs
            .iter()
            .filter(|&&(x, y)| x != u && y != u)
            .find(|&&(x, y)| {
                let xy = k.def(Op::Mul, x, y).unwrap_or(usize::MAX);
                xy == usize::MAX
                    || k.def(Op::Mul, x, s[y]) != Some(s[xy])
                    || k.def(Op::Mul, s[x], y) != Some(s[xy])
            })
            .map(|&(x, y)| vec![x, y]),
    );
    first(
        "gamma is a closure operator",
        (0..n)
            .find(|&x| !k.leq(x, g[x]) || g[g[x]] != g[x])
            .or_else(|| {
                pairs
                    .iter()
                    .find(|&&(x, y)| k.leq(x, y) && !k.leq(g[x], g[y]))
                    .map(|p| p.0)
            })
            .map(|x| vec![x]),
    );
    first(
        "products below sigma",
        pairs
            .iter()
            .filter(|&&(_, y)| y != u)
            .find(|&&(x, y)| {
                let below = |v: Option<usize>| v.is_some_and(|v| k.leq(v, s[x]));
                !below(k.def(Op::Mul, x, y)) || !below(k.def(Op::Mul, y, x))
            })
            .map(|&(x, y)| vec![x, y]),
    );
    out
}

/// A lower triple together with the lower algebra indices of its elements.
#[derive(Debug, Clone)]
pub struct ExtractedLower {
    pub triple: LowerTriple,
    /// `origin[k]` is the index in `B` of element `k` of the triple.
    pub origin: Vec<usize>,
}

/// Deletes `F - {1}` from a lower-compatible pair. Joins landing in
/// `F - {1}` become `1`; divisions landing there become undefined.
pub fn extract_lower_triple(b: &FiniteRL, f: ElemSet) -> Result<ExtractedLower> {
    let rep = check_lower_pair(b, f)?;
    if rep.kind != PairKind::Lower {
        return Err(Error::Precondition(format!(
            "not a lower-compatible pair ({:?})",
            rep.kind
        )));
    }
    let mut origin: Vec<usize> = b.all().difference(&f).to_vec();
    origin.push(b.unit());
    let m = origin.len();
    let mut pos = vec![usize::MAX; b.n()];
    for (i, &e) in origin.iter().enumerate() {
        pos[e] = i;
    }
    let upper_f = |v: usize| f.contains(v) && v != b.unit();
    let k = PartialRL::from_fn(
        m,
        |x, y| b.leq(origin[x], origin[y]),
        |op, x, y| {
            let v = b.op(op, origin[x], origin[y]);
            if !upper_f(v) {
                Entry::Val(pos[v])
            } else if op == Op::Join {
                Entry::Val(m - 1)
            } else {
                Entry::Undef
            }
        },
        b.zero().filter(|z| !f.contains(*z)).map(|z| pos[z]),
        b.labels()
            .map(|l| origin.iter().map(|&e| l[e].clone()).collect()),
    )?;
    let sigma = origin.iter().map(|&e| pos[rep.ops.s(e)]).collect();
    let gamma = origin.iter().map(|&e| pos[rep.ops.g(e)]).collect();
    Ok(ExtractedLower {
        triple: LowerTriple { k, sigma, gamma },
        origin,
    })
}

/// Adjoins an idempotent coatom `f` to a lower triple. Returns the algebra
/// (elements of `K - {1}` keep their indices, `f` is next, then `1`) and
/// the filter `{f, 1}`.
pub fn fit_two_element(t: &LowerTriple) -> Result<(FiniteRL, ElemSet)> {
    let bad = validate_lower_triple(t);
    if let Some(v) = bad.first() {
        return Err(Error::InvalidTriple(format!(
            "{} at {:?}",
            v.property, v.witness
        )));
    }
    let k = &t.k;
    let m = k.n();
    let ku = m - 1;
    let f = m - 1;
    let one = m;
    let n = m + 1;
    let leq = |x: usize, y: usize| -> bool {
        match (x == f || x == one, y == f || y == one) {
            (false, false) => k.leq(x, y),
            (false, true) => true,
            (true, false) => false,
            (true, true) => x == f || y == one,
        }
    };
    // K index of a B element that is not f
    let kx = |x: usize| if x == one { ku } else { x };
    let from_k = |v: usize| if v == ku { one } else { v };
    let cell = |op: Op, x: usize, y: usize| -> usize {
        if x != f && y != f {
            let (a, b2) = (kx(x), kx(y));
            return match (op, k.def(op, a, b2)) {
                (Op::Join, Some(v)) if v == ku && a != ku && b2 != ku => f,
                (_, Some(v)) => from_k(v),
                (_, None) => f,
            };
        }
        let other = if x == f { y } else { x };
        match op {
            Op::Join => {
                if other == one {
                    one
                } else {
                    f
                }
            }
            Op::Meet => {
                if other == one || other == f {
                    f
                } else {
                    other
                }
            }
            Op::Mul => {
                if other == one || other == f {
                    f
                } else {
                    t.sigma[other]
                }
            }
            Op::Ldiv | Op::Rdiv => {
                // numerator and denominator positions
                let (den, num) = if op == Op::Ldiv { (x, y) } else { (y, x) };
                if den == f && num == f {
                    one
                } else if den == f {
                    if num == one {
                        one
                    } else {
                        t.gamma[num]
                    }
                } else if den == one {
                    f
                } else {
                    one
                }
            }
        }
    };
    let tabs: Vec<Vec<Vec<usize>>> = Op::ALL
        .iter()
        .map(|&op| {
            (0..n)
                .map(|x| (0..n).map(|y| cell(op, x, y)).collect())
                .collect()
        })
        .collect();
    let labels = k.labels().map(|l| {
        let mut v: Vec<String> = l[..ku].to_vec();
        v.push("f".into());
        v.push(l[ku].clone());
        v
    });
    let mut it = tabs.into_iter();
    let a = FiniteRL::from_tables(RawTables {
        leq: (0..n)
            .map(|x| (0..n).map(|y| leq(x, y)).collect())
            .collect(),
        join: it.next().unwrap(),
        meet: it.next().unwrap(),
        mul: it.next().unwrap(),
        ldiv: it.next().unwrap(),
        rdiv: it.next().unwrap(),
        unit: one,
        zero: k.zero(),
        labels,
    })?;
    Ok((a, [f, one].into_iter().collect()))
}

/// `(L, ell, r)`: a partial algebra with partial maps describing divisions
/// into a deleted ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperTriple {
    pub l: PartialRL,
    pub ell: Vec<Option<usize>>,
    pub r: Vec<Option<usize>>,
}

impl UpperTriple {
    pub fn ell_domain(&self) -> ElemSet {
        (0..self.l.n()).filter(|&x| self.ell[x].is_some()).collect()
    }
    pub fn r_domain(&self) -> ElemSet {
        (0..self.l.n()).filter(|&x| self.r[x].is_some()).collect()
    }
}

/// Checks the nine upper-triple properties. An undefined product counts
/// as lying below every element, as it does once the ideal is restored.
pub fn validate_upper_triple(t: &UpperTriple) -> Vec<TripleViolation> {
    let l = &t.l;
    let n = l.n();
    let (ell, r) = (&t.ell, &t.r);
    let mut out = Vec::new();
    if ell.len() != n || r.len() != n {
        out.push(tv("maps have the wrong shape", vec![]));
        return out;
    }
    for v in validate_partial(l).violations {
        out.push(tv(&format!("partial algebra: {:?}", v.rule), v.witness));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let triples: Vec<(usize, usize, usize)> = pairs
        .iter()
        .flat_map(|&(x, y)| (0..n).map(move |z| (x, y, z)))
        .collect();
    let below = |v: Option<usize>, y: usize| v.is_some_and(|v| l.leq(y, v));
    let mut first = |name: &str, w: Option<Vec<usize>>| {
        if let Some(w) = w {
            out.push(tv(name, w));
        }
    };
    first(
        "(1) ell and r form a Galois connection",
        pairs
            .iter()
            .find(|&&(x, y)| below(ell[y], x) != below(r[x], y))
            .map(|&(x, y)| vec![x, y]),
    );
    first(
        "(2) domains are downsets and the maps antitone",
        triples
            .iter()
            .find(|&&(x, y, y2)| {
                l.leq(y, y2)
                    && ((below(r[y2], x) && !below(r[y], x))
                        || (below(ell[y2], x) && !below(ell[y], x)))
            })
            .map(|&(x, y, y2)| vec![x, y, y2]),
    );
    first(
        "(3) undefined products match ell and r",
        pairs
            .iter()
            .find(|&&(x, y)| {
                let undef = !l.get(Op::Mul, x, y).is_defined();
                undef != below(r[y], x) || undef != below(ell[x], y)
            })
            .map(|&(x, y)| vec![x, y]),
    );
    let prod_below =
        |x: usize, z: usize, y: usize| l.def(Op::Mul, x, z).is_none_or(|v| l.leq(v, y));
    first(
        "(4) undefined divisions have no solutions",
        pairs
            .iter()
            .find(|&&(x, y)| {
                let ld_undef = !l.get(Op::Ldiv, x, y).is_defined();
                let rd_undef = !l.get(Op::Rdiv, y, x).is_defined();
                ld_undef != !(0..n).any(|z| prod_below(x, z, y))
                    || rd_undef != !(0..n).any(|z| l.def(Op::Mul, z, x).is_none_or(|v| l.leq(v, y)))
            })
            .map(|&(x, y)| vec![x, y]),
    );
    first(
        "(5) x\\r(z) = ell(x)/z",
        pairs
            .iter()
            .find(|&&(x, z)| match (ell[x], r[z]) {
                (Some(lx), Some(rz)) => l.def(Op::Ldiv, x, rz) != l.def(Op::Rdiv, lx, z),
                _ => false,
            })
            .map(|&(x, z)| vec![x, z]),
    );
    first(
        "(6) divisions by elements outside the domains",
        pairs
            .iter()
            .find(|&&(x, z)| {
                (ell[x].is_none() && r[z].is_some_and(|rz| l.def(Op::Ldiv, x, rz) != Some(rz)))
                    || (r[z].is_none()
                        && ell[x].is_some_and(|lx| l.def(Op::Rdiv, lx, z) != Some(lx)))
            })
            .map(|&(x, z)| vec![x, z]),
    );
    first(
        "(7) ell(x) below every x\\z and r(x) below every w/x",
        pairs
            .iter()
            .find(|&&(x, z)| {
                ell[x].is_some_and(|lx| !l.def(Op::Ldiv, x, z).is_some_and(|v| l.leq(lx, v)))
                    || r[x].is_some_and(|rx| !l.def(Op::Rdiv, z, x).is_some_and(|v| l.leq(rx, v)))
            })
            .map(|&(x, z)| vec![x, z]),
    );
    first(
        "(8) meets undefined exactly without common lower bounds",
        pairs
            .iter()
            .find(|&&(x, y)| {
                let undef = !l.get(Op::Meet, x, y).is_defined();
                undef != !(0..n).any(|z| l.leq(z, x) && l.leq(z, y))
            })
            .map(|&(x, y)| vec![x, y]),
    );
    first(
        "(9) joins are defined",
        pairs
            .iter()
            .find(|&&(x, y)| !l.get(Op::Join, x, y).is_defined())
            .map(|&(x, y)| vec![x, y]),
    );
    out
}

/// An upper triple with the upper algebra indices of its elements.
#[derive(Debug, Clone)]
pub struct ExtractedUpper {
    pub triple: UpperTriple,
    pub origin: Vec<usize>,
}

/// Deletes a compatible ideal: products, meets and divisions landing in `I`
/// become undefined.
pub fn extract_upper_triple(c: &FiniteRL, i: ElemSet) -> Result<ExtractedUpper> {
    let rep = check_upper_pair(c, i, true)?;
    if !rep.compatible {
        return Err(Error::Precondition("not an upper-compatible pair".into()));
    }
    let origin: Vec<usize> = c.all().difference(&i).to_vec();
    let mut pos = vec![usize::MAX; c.n()];
    for (k, &e) in origin.iter().enumerate() {
        pos[e] = k;
    }
    let l = PartialRL::from_fn(
        origin.len(),
        |x, y| c.leq(origin[x], origin[y]),
        |op, x, y| {
            let v = c.op(op, origin[x], origin[y]);
            if i.contains(v) {
                Entry::Undef
            } else {
                Entry::Val(pos[v])
            }
        },
        None,
        c.labels()
            .map(|lb| origin.iter().map(|&e| lb[e].clone()).collect()),
    )?;
    let ell = origin
        .iter()
        .map(|&e| rep.ops.ell[e].map(|v| pos[v]))
        .collect();
    let r = origin
        .iter()
        .map(|&e| rep.ops.r[e].map(|v| pos[v]))
        .collect();
    Ok(ExtractedUpper {
        triple: UpperTriple { l, ell, r },
        origin,
    })
}

/// Adjoins an absorbing idempotent bottom `0` (index 0; elements of `L`
/// shift up by one). Returns the algebra and the ideal `{0}`.
pub fn fit_zero(t: &UpperTriple) -> Result<(FiniteRL, ElemSet)> {
    let bad = validate_upper_triple(t);
    if let Some(v) = bad.first() {
        return Err(Error::InvalidTriple(format!(
            "{} at {:?}",
            v.property, v.witness
        )));
    }
    let l = &t.l;
    let n = l.n() + 1;
    let up = |v: usize| v + 1;
    let cell = |op: Op, x: usize, y: usize| -> usize {
        match op {
            Op::Join => {
                if x == 0 {
                    y
                } else if y == 0 {
                    x
                } else {
                    up(l.def(op, x - 1, y - 1).expect("joins are defined"))
                }
            }
            Op::Meet => {
                if x == 0 || y == 0 {
                    0
                } else {
                    l.def(op, x - 1, y - 1).map_or(0, up)
                }
            }
            Op::Mul => {
                if x == 0 || y == 0 {
                    0
                } else {
                    l.def(op, x - 1, y - 1).map_or(0, up)
                }
            }
            Op::Ldiv => {
                if x == 0 {
                    n - 1
                } else if y == 0 {
                    t.ell[x - 1].map_or(0, up)
                } else {
                    l.def(op, x - 1, y - 1).map_or(0, up)
                }
            }
            Op::Rdiv => {
                // y is the denominator
                if y == 0 {
                    n - 1
                } else if x == 0 {
                    t.r[y - 1].map_or(0, up)
                } else {
                    l.def(op, x - 1, y - 1).map_or(0, up)
                }
            }
        }
    };
    let tab = |op: Op| -> Vec<Vec<usize>> {
        (0..n)
            .map(|x| (0..n).map(|y| cell(op, x, y)).collect())
            .collect()
    };
    let labels = l.labels().map(|lb| {
        let mut v = vec!["0".to_string()];
        v.extend(lb.iter().cloned());
        v
    });
    let a = FiniteRL::from_tables(RawTables {
        leq: (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| x == 0 || (y != 0 && l.leq(x - 1, y - 1)))
                    .collect()
            })
            .collect(),
        join: tab(Op::Join),
        meet: tab(Op::Meet),
        mul: tab(Op::Mul),
        ldiv: tab(Op::Ldiv),
        rdiv: tab(Op::Rdiv),
        unit: n - 1,
        zero: Some(0),
        labels,
    })?;
    Ok((a, ElemSet::singleton(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, is_valid, morphism::are_isomorphic};

    #[test]
    fn total_algebras_are_valid_partial_ones() {
        let p = PartialRL::from_total(&catalog::lukasiewicz(4));
        assert!(validate_partial(&p).is_valid());
        assert!(p.is_total());
    }

    #[test]
    fn planted_undefined_meet() {
        let a = catalog::godel(3);
        let p = PartialRL::from_fn(
            3,
            |x, y| a.leq(x, y),
            |op, x, y| {
                if op == Op::Meet && (x, y) == (1, 2) {
                    Entry::Undef
                } else {
                    Entry::Val(a.op(op, x, y))
                }
            },
            Some(0),
            None,
        )
        .unwrap();
        let rep = validate_partial(&p);
        assert_eq!(rep.violations[0].rule, PartialRule::MeetRule);
        assert_eq!(rep.violations[0].witness, vec![1, 2]);
    }

    #[test]
    fn two_chain_fits_to_godel_three() {
        let b = catalog::boolean();
        let ex = extract_lower_triple(&b, ElemSet::singleton(1)).unwrap();
        let (g, filt) = fit_two_element(&ex.triple).unwrap();
        assert!(is_valid(&g));
        assert!(are_isomorphic(&g, &catalog::godel(3)).is_some());
        let back = extract_lower_triple(&g, filt).unwrap();
        assert_eq!(back.triple, ex.triple);
    }

    #[test]
    fn lukasiewicz_upper_triple() {
        let l3 = catalog::lukasiewicz(3);
        let ex = extract_upper_triple(&l3, ElemSet::singleton(0)).unwrap();
        let t = &ex.triple;
        assert_eq!(t.l.n(), 2);
        assert!(!t.l.get(Op::Mul, 0, 0).is_defined());
        assert_eq!(t.ell[0], Some(0));
        assert_eq!(t.r[0], Some(0));
        let (c, _) = fit_zero(t).unwrap();
        assert!(c.same_tables(&l3));
    }

    #[test]
    fn partial_text_roundtrip() {
        let l3 = catalog::lukasiewicz(3);
        let t = extract_upper_triple(&l3, ElemSet::singleton(0))
            .unwrap()
            .triple
            .l;
        let s = t.to_text();
        assert_eq!(PartialRL::from_text(&s).unwrap(), t);
    }
}
