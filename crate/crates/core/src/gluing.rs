//! Gluing constructions: 1-sums, gluings over a congruence filter, gluings
//! over a filter and an ideal, partial gluings and the bottom completion
//! of a filter.
//!
//! Every total construction lays out its carrier as the elements private to
//! the lower algebra, then the upper algebra without its unit, then `1`.

use crate::algebra::{is_valid, verify_axioms, FiniteRL, Op, RawTables};
use crate::error::{Error, Result};
use crate::filters::{
    check_congruence_filter, check_lower_pair, check_lower_pair_mode, ClassOps, PairKind,
};
use crate::partial::{validate_partial, Entry, LowerTriple, PartialRL, UpperTriple};
use crate::quadruple::CompatQuadruple;
use crate::set::ElemSet;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GlueMode {
    OneSum,
    F,
    Fi,
    PartialUpper,
    PartialTau,
    Iterated,
    Bottomize,
}

/// How a glued algebra was produced, in its own indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub mode: GlueMode,
    pub strict: bool,
    /// Image of the shared filter (`{1}` for 1-sums).
    pub filter: ElemSet,
    /// Image of the shared ideal.
    pub ideal: ElemSet,
    /// Elements coming only from the lower part.
    pub lower_rest: ElemSet,
    /// Elements coming only from the upper part.
    pub upper_rest: ElemSet,
}

/// A total gluing together with the maps of its parts into it.
#[derive(Debug, Clone)]
pub struct Glued {
    pub algebra: FiniteRL,
    pub lower_map: Vec<usize>,
    pub upper_map: Vec<usize>,
    pub provenance: Provenance,
}

/// A partial gluing; `total` records whether every cell is defined.
#[derive(Debug, Clone)]
pub struct PartialGlued {
    pub algebra: PartialRL,
    pub total: bool,
    pub lower_map: Vec<usize>,
    pub upper_map: Vec<usize>,
    pub mode: GlueMode,
}

impl PartialGlued {
    pub fn to_total(&self) -> Result<FiniteRL> {
        self.algebra.to_total()
    }
}

/// Where an element of a glued carrier came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Part {
    /// Private to the lower algebra, with its lower index.
    Lower(usize),
    /// In the upper algebra, with its upper index and, when shared, the
    /// lower index.
    Upper(usize, Option<usize>),
}

struct Layout {
    parts: Vec<Part>,
    lower_map: Vec<usize>,
    upper_map: Vec<usize>,
}

/// `[lower_rest] ++ [upper - {1}] ++ [1]`; `to_lower` identifies shared
/// upper elements with lower ones.
fn layout(
    lower: &FiniteRL,
    upper: &FiniteRL,
    lower_rest: ElemSet,
    to_lower: &[Option<usize>],
) -> Layout {
    let mut parts: Vec<Part> = lower_rest.iter().map(Part::Lower).collect();
    parts.extend(
        (0..upper.n())
            .filter(|&c| c != upper.unit())
            .map(|c| Part::Upper(c, to_lower[c])),
    );
    parts.push(Part::Upper(upper.unit(), Some(lower.unit())));
    let mut lower_map = vec![usize::MAX; lower.n()];
    let mut upper_map = vec![usize::MAX; upper.n()];
    for (d, p) in parts.iter().enumerate() {
        match *p {
            Part::Lower(b) => lower_map[b] = d,
            Part::Upper(c, sb) => {
                upper_map[c] = d;
                if let Some(b) = sb {
                    lower_map[b] = d;
                }
            }
        }
    }
    Layout {
        parts,
        lower_map,
        upper_map,
    }
}

impl Layout {
    fn as_lower(&self, d: usize) -> Option<usize> {
        match self.parts[d] {
            Part::Lower(b) => Some(b),
            Part::Upper(_, sb) => sb,
        }
    }
    fn as_upper(&self, d: usize) -> Option<usize> {
        match self.parts[d] {
            Part::Lower(_) => None,
            Part::Upper(c, _) => Some(c),
        }
    }
}

fn merged_labels(lower: &FiniteRL, upper: &FiniteRL, lay: &Layout) -> Option<Vec<String>> {
    if lower.labels().is_none() && upper.labels().is_none() {
        return None;
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(lay.parts.len());
    // upper labels first so that lower-only elements get the primes
    let mut slots = vec![String::new(); lay.parts.len()];
    let order: Vec<usize> = (0..lay.parts.len())
        .filter(|&d| matches!(lay.parts[d], Part::Upper(..)))
        .chain((0..lay.parts.len()).filter(|&d| matches!(lay.parts[d], Part::Lower(_))))
        .collect();
    for d in order {
        let mut name = match lay.parts[d] {
            Part::Lower(b) => lower.label(b),
            Part::Upper(c, _) => upper.label(c),
        };
        while !seen.insert(name.clone()) {
            name.push('\'');
        }
        slots[d] = name;
    }
    out.extend(slots);
    Some(out)
}

fn assemble(
    n: usize,
    leq: impl Fn(usize, usize) -> bool,
    cell: impl Fn(Op, usize, usize) -> usize,
    zero: Option<usize>,
    labels: Option<Vec<String>>,
) -> Result<FiniteRL> {
    let tab = |op: Op| -> Vec<Vec<usize>> {
        (0..n)
            .map(|x| (0..n).map(|y| cell(op, x, y)).collect())
            .collect()
    };
    FiniteRL::from_tables(RawTables {
        leq: (0..n)
            .map(|x| (0..n).map(|y| leq(x, y)).collect())
            .collect(),
        join: tab(Op::Join),
        meet: tab(Op::Meet),
        mul: tab(Op::Mul),
        ldiv: tab(Op::Ldiv),
        rdiv: tab(Op::Rdiv),
        unit: n - 1,
        zero,
        labels,
    })
}

/// The least element among the images of the two zeros, if any.
fn glued_zero(
    d_leq: impl Fn(usize, usize) -> bool,
    n: usize,
    candidates: &[Option<usize>],
) -> Option<usize> {
    candidates
        .iter()
        .flatten()
        .copied()
        .find(|&z| (0..n).all(|x| d_leq(z, x)))
}

/// The 1-sum: `C` stacked on top of `B`, identifying the units.
pub fn one_sum(b: &FiniteRL, c: &FiniteRL) -> Result<Glued> {
    let bu = b.unit();
    let b_rest: ElemSet = b.all().difference(&ElemSet::singleton(bu));
    // joins reaching 1 are sent to the bottom of the (finite) upper algebra
    let c_bottom = c.bottom();
    let mut to_lower = vec![None; c.n()];
    to_lower[c.unit()] = Some(bu);
    let lay = layout(b, c, b_rest, &to_lower);
    let n = lay.parts.len();
    let leq = |x: usize, y: usize| match (lay.parts[x], lay.parts[y]) {
        (Part::Lower(p), Part::Lower(q)) => b.leq(p, q),
        (Part::Lower(_), Part::Upper(..)) => true,
        (Part::Upper(..), Part::Lower(_)) => false,
        (Part::Upper(p, _), Part::Upper(q, _)) => c.leq(p, q),
    };
    let cell = |op: Op, x: usize, y: usize| -> usize {
        match (lay.parts[x], lay.parts[y]) {
            (Part::Upper(p, _), Part::Upper(q, _)) => lay.upper_map[c.op(op, p, q)],
            (px, _) => {
                let (bx, by) = (lay.as_lower(x), lay.as_lower(y));
                if let (Some(p), Some(q)) = (bx, by) {
                    let v = b.op(op, p, q);
                    if op == Op::Join && v == bu && p != bu && q != bu {
                        return lay.upper_map[c_bottom];
                    }
                    return lay.lower_map[v];
                }
                // one side private to B, the other in C - {1}
                let lower_first = matches!(px, Part::Lower(_));
                match op {
                    Op::Mul | Op::Meet => {
                        if lower_first {
                            x
                        } else {
                            y
                        }
                    }
                    Op::Join => {
                        if lower_first {
                            y
                        } else {
                            x
                        }
                    }
                    Op::Ldiv => {
                        if lower_first {
                            n - 1
                        } else {
                            y
                        }
                    }
                    Op::Rdiv => {
                        if lower_first {
                            x
                        } else {
                            n - 1
                        }
                    }
                }
            }
        }
    };
    let zero = glued_zero(
        leq,
        n,
        &[
            b.zero().map(|z| lay.lower_map[z]),
            c.zero().map(|z| lay.upper_map[z]),
        ],
    );
    let algebra = assemble(n, leq, cell, zero, merged_labels(b, c, &lay))?;
    let provenance = Provenance {
        mode: GlueMode::OneSum,
        strict: true,
        filter: ElemSet::singleton(n - 1),
        ideal: ElemSet::new(),
        lower_rest: b_rest.iter().map(|x| lay.lower_map[x]).collect(),
        upper_rest: c
            .all()
            .difference(&ElemSet::singleton(c.unit()))
            .iter()
            .map(|x| lay.upper_map[x])
            .collect(),
    };
    Ok(Glued {
        algebra,
        lower_map: lay.lower_map,
        upper_map: lay.upper_map,
        provenance,
    })
}

fn check_pairs(
    b: &FiniteRL,
    c: &FiniteRL,
    pairs: &[(usize, usize)],
) -> Result<(ElemSet, Vec<Option<usize>>)> {
    let mut to_lower = vec![None; c.n()];
    let mut f = ElemSet::new();
    for &(x, y) in pairs {
        if x >= b.n() || y >= c.n() {
            return Err(Error::Structural(format!(
                "shared pair ({x}, {y}) out of range"
            )));
        }
        if f.contains(x) || to_lower[y].is_some() {
            return Err(Error::NotSharedSubalgebra(format!(
                "pair ({x}, {y}) repeats an element"
            )));
        }
        f.insert(x);
        to_lower[y] = Some(x);
    }
    if to_lower[c.unit()] != Some(b.unit()) {
        return Err(Error::NotSharedSubalgebra(
            "units are not identified".into(),
        ));
    }
    for x in f.iter() {
        for y in f.iter() {
            let (cx, cy) = (
                pairs.iter().find(|p| p.0 == x).unwrap().1,
                pairs.iter().find(|p| p.0 == y).unwrap().1,
            );
            if b.leq(x, y) != c.leq(cx, cy) {
                return Err(Error::NotSharedSubalgebra(format!(
                    "order differs at ({}, {})",
                    b.label(x),
                    b.label(y)
                )));
            }
            for op in Op::ALL {
                if to_lower[c.op(op, cx, cy)] != Some(b.op(op, x, y)) {
                    return Err(Error::NotSharedSubalgebra(format!(
                        "{} of ({}, {}) differs",
                        op.name(),
                        b.label(x),
                        b.label(y)
                    )));
                }
            }
        }
    }
    Ok((f, to_lower))
}

/// The gluing of `B` and `C` over a shared congruence filter `F`, given as
/// `(lower index, upper index)` pairs.
pub fn f_gluing(b: &FiniteRL, c: &FiniteRL, filter_pairs: &[(usize, usize)]) -> Result<Glued> {
    let (f, to_lower) = check_pairs(b, c, filter_pairs)?;
    let rep = check_lower_pair(b, f)?;
    if rep.kind != PairKind::Lower {
        return Err(Error::Precondition(format!(
            "the filter is not lower-compatible ({:?})",
            rep.kind
        )));
    }
    let fc: ElemSet = filter_pairs.iter().map(|p| p.1).collect();
    check_congruence_filter(c, fc)?;
    let c_rest = c.all().difference(&fc);
    if let Some((x, y)) = c_rest
        .iter()
        .flat_map(|x| fc.iter().map(move |y| (x, y)))
        .find(|&(x, y)| !c.lt(x, y))
    {
        return Err(Error::Precondition(format!(
            "{} is not strictly below the filter element {}",
            c.label(x),
            c.label(y)
        )));
    }
    let b_rest = b.all().difference(&f);
    let c_bottom = c.bottom();
    let ops: &ClassOps = &rep.ops;
    let lay = layout(b, c, b_rest, &to_lower);
    let n = lay.parts.len();
    let leq = |x: usize, y: usize| match (lay.as_lower(x), lay.as_lower(y)) {
        (Some(p), Some(q)) => b.leq(p, q),
        _ => match (lay.as_upper(x), lay.as_upper(y)) {
            (Some(p), Some(q)) => c.leq(p, q),
            (None, Some(_)) => true,
            _ => false,
        },
    };
    let cell = |op: Op, x: usize, y: usize| -> usize {
        let (bx, by) = (lay.as_lower(x), lay.as_lower(y));
        if let (Some(p), Some(q)) = (bx, by) {
            let v = b.op(op, p, q);
            if op == Op::Join && f.contains(v) && !f.contains(p) && !f.contains(q) {
                return lay.upper_map[c_bottom];
            }
            return lay.lower_map[v];
        }
        if let (Some(p), Some(q)) = (lay.as_upper(x), lay.as_upper(y)) {
            return lay.upper_map[c.op(op, p, q)];
        }
        // one element of B - F and one of C - F
        let lower_first = bx.is_some();
        let bval = bx.or(by).unwrap();
        match op {
            Op::Mul => lay.lower_map[ops.s(bval)],
            Op::Meet => {
                if lower_first {
                    x
                } else {
                    y
                }
            }
            Op::Join => {
                if lower_first {
                    y
                } else {
                    x
                }
            }
            Op::Ldiv => {
                if lower_first {
                    n - 1
                } else {
                    lay.lower_map[ops.g(bval)]
                }
            }
            Op::Rdiv => {
                if lower_first {
                    lay.lower_map[ops.g(bval)]
                } else {
                    n - 1
                }
            }
        }
    };
    let zero = glued_zero(
        leq,
        n,
        &[
            b.zero().map(|z| lay.lower_map[z]),
            c.zero().map(|z| lay.upper_map[z]),
        ],
    );
    let algebra = assemble(n, leq, cell, zero, merged_labels(b, c, &lay))?;
    let provenance = Provenance {
        mode: GlueMode::F,
        strict: true,
        filter: fc.iter().map(|x| lay.upper_map[x]).collect(),
        ideal: ElemSet::new(),
        lower_rest: b_rest.iter().map(|x| lay.lower_map[x]).collect(),
        upper_rest: c_rest.iter().map(|x| lay.upper_map[x]).collect(),
    };
    Ok(Glued {
        algebra,
        lower_map: lay.lower_map,
        upper_map: lay.upper_map,
        provenance,
    })
}

/// The gluing of a compatible quadruple over its filter and ideal. The
/// result is verified; a non-strict quadruple whose gluing is not a
/// residuated lattice is reported as a precondition failure.
pub fn fi_gluing(q: &CompatQuadruple) -> Result<Glued> {
    let inp = &q.input;
    let (b, c) = (&inp.lower, &inp.upper);
    let f = inp.filter;
    let b_minus = inp.lower_rest();
    let f_up = inp.filter_upper();
    let i_up = inp.ideal_upper();
    let c_minus = inp.upper_rest();
    let ops = &q.class_ops;
    let div = &q.divisors;
    let lay = layout(b, c, b_minus, &inp.to_lower());
    let n = lay.parts.len();
    let leq = |x: usize, y: usize| match (lay.as_lower(x), lay.as_lower(y)) {
        (Some(p), Some(q)) => b.leq(p, q),
        _ => match (lay.as_upper(x), lay.as_upper(y)) {
            (Some(p), Some(q)) => c.leq(p, q),
            // exactly one side is private to B
            (None, Some(q)) => !i_up.contains(q),
            (Some(p), None) => i_up.contains(p),
            (None, None) => unreachable!(),
        },
    };
    let top_lower = q.top_lower;
    let bottom_upper = q.bottom_upper;
    let cell = |op: Op, x: usize, y: usize| -> usize {
        let (bx, by) = (lay.as_lower(x), lay.as_lower(y));
        let (cx, cy) = (lay.as_upper(x), lay.as_upper(y));
        let in_b = bx.is_some() && by.is_some();
        let in_c = cx.is_some() && cy.is_some();
        if in_b && in_c && matches!(op, Op::Ldiv | Op::Rdiv) {
            let vb = lay.lower_map[b.op(op, bx.unwrap(), by.unwrap())];
            let vc = lay.upper_map[c.op(op, cx.unwrap(), cy.unwrap())];
            return if leq(vc, vb) { vb } else { vc };
        }
        if op == Op::Meet && in_c {
            let (p, qq) = (cx.unwrap(), cy.unwrap());
            let v = c.meet(p, qq);
            if i_up.contains(v) && !i_up.contains(p) && !i_up.contains(qq) {
                return lay.lower_map[top_lower.expect("checked by the quadruple")];
            }
            return lay.upper_map[v];
        }
        if in_b {
            let (p, qq) = (bx.unwrap(), by.unwrap());
            let v = b.op(op, p, qq);
            if op == Op::Join && f.contains(v) && !f.contains(p) && !f.contains(qq) {
                return lay.upper_map[bottom_upper.expect("checked by the quadruple")];
            }
            return lay.lower_map[v];
        }
        if in_c {
            return lay.upper_map[c.op(op, cx.unwrap(), cy.unwrap())];
        }
        // one element of B⁻ and one of C⁻
        let lower_first = cx.is_none();
        let (bv, cv) = if lower_first {
            (bx.unwrap(), cy.unwrap())
        } else {
            (by.unwrap(), cx.unwrap())
        };
        match op {
            Op::Mul => lay.lower_map[ops.s(bv)],
            Op::Meet => lay.lower_map[bv],
            Op::Join => lay.upper_map[cv],
            Op::Ldiv => {
                if lower_first {
                    n - 1
                } else if let Some(l) = div.ell[cv] {
                    lay.upper_map[l]
                } else {
                    lay.lower_map[ops.g(bv)]
                }
            }
            Op::Rdiv => {
                if !lower_first {
                    n - 1
                } else if let Some(r) = div.r[cv] {
                    lay.upper_map[r]
                } else {
                    lay.lower_map[ops.g(bv)]
                }
            }
        }
    };
    let zero = glued_zero(
        leq,
        n,
        &[
            b.zero().map(|z| lay.lower_map[z]),
            c.zero().map(|z| lay.upper_map[z]),
        ],
    );
    let algebra = assemble(n, leq, cell, zero, merged_labels(b, c, &lay));
    let algebra = match algebra {
        Ok(a) => a,
        Err(e) if !q.strict => {
            return Err(Error::Precondition(format!(
                "the non-strict gluing is not a residuated lattice: {e}"
            )))
        }
        Err(e) => return Err(Error::Internal(format!("gluing tables are malformed: {e}"))),
    };
    if let Some(v) = verify_axioms(&algebra).first() {
        let msg = format!("the gluing violates {v}");
        return Err(if q.strict {
            Error::Internal(msg)
        } else {
            Error::Precondition(msg)
        });
    }
    let provenance = Provenance {
        mode: GlueMode::Fi,
        strict: q.strict,
        filter: f_up.iter().map(|x| lay.upper_map[x]).collect(),
        ideal: i_up.iter().map(|x| lay.upper_map[x]).collect(),
        lower_rest: b_minus.iter().map(|x| lay.lower_map[x]).collect(),
        upper_rest: c_minus.iter().map(|x| lay.upper_map[x]).collect(),
    };
    Ok(Glued {
        algebra,
        lower_map: lay.lower_map,
        upper_map: lay.upper_map,
        provenance,
    })
}

/// A map of a part into a gluing that fails to preserve an operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrokenEmbedding {
    pub part: &'static str,
    pub op: Op,
    pub args: (usize, usize),
}

/// Checks the embedding contract of a gluing: both maps preserve every
/// operation, except joins of `B` landing in `F` and meets of `C` landing
/// in `I`, which are redirected.
pub fn check_embeddings(g: &Glued, b: &FiniteRL, c: &FiniteRL) -> Vec<BrokenEmbedding> {
    let d = &g.algebra;
    let mut out = Vec::new();
    let f_d = g.provenance.filter;
    let i_d = g.provenance.ideal;
    for (part, a, map) in [("lower", b, &g.lower_map), ("upper", c, &g.upper_map)] {
        for x in 0..a.n() {
            for y in 0..a.n() {
                for op in Op::ALL {
                    let v = map[a.op(op, x, y)];
                    if d.op(op, map[x], map[y]) == v {
                        continue;
                    }
                    let excused = match (part, op) {
                        ("lower", Op::Join) => {
                            f_d.contains(v) && !f_d.contains(map[x]) && !f_d.contains(map[y])
                        }
                        ("upper", Op::Meet) => {
                            i_d.contains(v) && !i_d.contains(map[x]) && !i_d.contains(map[y])
                        }
                        _ => false,
                    };
                    if !excused {
                        out.push(BrokenEmbedding {
                            part,
                            op,
                            args: (x, y),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Adjoins a new bottom `⊥` to the filter `F` of a lower-compatible pair.
/// Elements of `B - {1}` keep their indices, `⊥` takes the next one and the
/// unit moves to the end. Returns the algebra and the filter `F ∪ {⊥}`.
pub fn bottomize(b: &FiniteRL, f: ElemSet) -> Result<(FiniteRL, ElemSet)> {
    let rep = check_lower_pair(b, f)?;
    if rep.kind != PairKind::Lower {
        return Err(Error::Precondition(format!(
            "not a lower-compatible pair ({:?})",
            rep.kind
        )));
    }
    let ops = &rep.ops;
    let bu = b.unit();
    let bot = bu;
    let n = b.n() + 1;
    let one = n - 1;
    let to_d = |x: usize| if x == bu { one } else { x };
    let from_d = |x: usize| if x == one { bu } else { x };
    let in_f = |x: usize| x != bot && f.contains(from_d(x));
    let leq = |x: usize, y: usize| {
        if x == bot && y == bot {
            true
        } else if x == bot {
            in_f(y)
        } else if y == bot {
            !in_f(x)
        } else {
            b.leq(from_d(x), from_d(y))
        }
    };
    let cell = |op: Op, x: usize, y: usize| -> usize {
        if x != bot && y != bot {
            let (p, q) = (from_d(x), from_d(y));
            let v = b.op(op, p, q);
            if op == Op::Join && f.contains(v) && !f.contains(p) && !f.contains(q) {
                return bot;
            }
            return to_d(v);
        }
        if x == bot && y == bot {
            return match op {
                Op::Ldiv | Op::Rdiv => one,
                _ => bot,
            };
        }
        let other = if x == bot { y } else { x };
        let o = from_d(other);
        let other_in_f = in_f(other);
        match op {
            Op::Join => {
                if other_in_f {
                    other
                } else {
                    bot
                }
            }
            Op::Meet => {
                if other_in_f {
                    bot
                } else {
                    other
                }
            }
            Op::Mul => {
                if other_in_f {
                    bot
                } else {
                    to_d(ops.s(o))
                }
            }
            Op::Ldiv | Op::Rdiv => {
                let bot_is_den = (op == Op::Ldiv) == (x == bot);
                match (bot_is_den, other_in_f) {
                    (true, true) => one,
                    (true, false) => to_d(ops.g(o)),
                    (false, true) => bot,
                    (false, false) => one,
                }
            }
        }
    };
    let zero = b.zero().map(|z| if f.contains(z) { bot } else { to_d(z) });
    let labels = b.labels().map(|l| {
        let mut v: Vec<String> = l[..bu].to_vec();
        let mut name = "⊥".to_string();
        while l.contains(&name) {
            name.push('\'');
        }
        v.push(name);
        v.push(l[bu].clone());
        v
    });
    let a = assemble(n, leq, cell, zero, labels)?;
    let mut nf: ElemSet = f.iter().map(to_d).collect();
    nf.insert(bot);
    Ok((a, nf))
}

/// Which side of a partial gluing an index belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    K(usize),
    L(usize),
}

struct PartialLayout {
    km: usize,
    lm: usize,
}

impl PartialLayout {
    fn new(k: &PartialRL, l: &PartialRL) -> Self {
        PartialLayout {
            km: k.n() - 1,
            lm: l.n() - 1,
        }
    }
    fn n(&self) -> usize {
        self.km + self.lm + 1
    }
    fn side(&self, d: usize) -> Side {
        if d < self.km {
            Side::K(d)
        } else if d < self.km + self.lm {
            Side::L(d - self.km)
        } else {
            Side::L(self.lm)
        }
    }
    fn from_k(&self, x: usize) -> usize {
        if x == self.km {
            self.n() - 1
        } else {
            x
        }
    }
    fn from_l(&self, x: usize) -> usize {
        if x == self.lm {
            self.n() - 1
        } else {
            self.km + x
        }
    }
    /// `d` read as an element of `K` (the unit counts as both).
    fn k_of(&self, d: usize) -> Option<usize> {
        if d == self.n() - 1 {
            Some(self.km)
        } else if d < self.km {
            Some(d)
        } else {
            None
        }
    }
    fn l_of(&self, d: usize) -> Option<usize> {
        match self.side(d) {
            Side::L(x) => Some(x),
            Side::K(_) => None,
        }
    }
    fn leq(&self, k: &PartialRL, l: &PartialRL, x: usize, y: usize) -> bool {
        match (self.k_of(x), self.k_of(y)) {
            (Some(p), Some(q)) => k.leq(p, q),
            _ => match (self.l_of(x), self.l_of(y)) {
                (Some(p), Some(q)) => l.leq(p, q),
                (None, Some(_)) => true,
                _ => false,
            },
        }
    }
}

fn merged_partial_labels(k: &PartialRL, l: &PartialRL, lay: &PartialLayout) -> Option<Vec<String>> {
    if k.labels().is_none() && l.labels().is_none() {
        return None;
    }
    let mut seen = std::collections::HashSet::new();
    let mut slots = vec![String::new(); lay.n()];
    for d in (lay.km..lay.n()).chain(0..lay.km) {
        let mut name = match lay.side(d) {
            Side::K(x) => k.label(x),
            Side::L(x) => l.label(x),
        };
        while !seen.insert(name.clone()) {
            name.push('\'');
        }
        slots[d] = name;
    }
    Some(slots)
}

fn finish_partial(
    lay: &PartialLayout,
    k: &PartialRL,
    l: &PartialRL,
    cell: impl Fn(Op, usize, usize) -> Entry,
    mode: GlueMode,
) -> Result<PartialGlued> {
    let n = lay.n();
    let zero = k.zero().map(|z| lay.from_k(z)).filter(|&z| z != n - 1);
    let p = PartialRL::from_fn(
        n,
        |x, y| lay.leq(k, l, x, y),
        cell,
        zero,
        merged_partial_labels(k, l, lay),
    )?;
    let rep = validate_partial(&p);
    if let Some(v) = rep.violations.first() {
        return Err(Error::Internal(format!(
            "partial gluing breaks {:?} at {:?}",
            v.rule, v.witness
        )));
    }
    Ok(PartialGlued {
        total: p.is_total(),
        algebra: p,
        lower_map: (0..k.n()).map(|x| lay.from_k(x)).collect(),
        upper_map: (0..l.n()).map(|x| lay.from_l(x)).collect(),
        mode,
    })
}

/// Glues a lower-compatible triple under a partial algebra whose only
/// undefined cells are divisions. Total when `L` has a splitting coatom.
pub fn partial_upper_gluing(t: &LowerTriple, l: &PartialRL) -> Result<PartialGlued> {
    let k = &t.k;
    if let Some(v) = crate::partial::validate_lower_triple(t).first() {
        return Err(Error::InvalidTriple(format!(
            "{} at {:?}",
            v.property, v.witness
        )));
    }
    if let Some((op, x, y)) = [Op::Join, Op::Meet, Op::Mul]
        .iter()
        .flat_map(|&op| (0..l.n()).flat_map(move |x| (0..l.n()).map(move |y| (op, x, y))))
        .find(|&(op, x, y)| !l.get(op, x, y).is_defined())
    {
        return Err(Error::Precondition(format!(
            "{}({x}, {y}) is undefined in the upper part",
            op.name()
        )));
    }
    let ku = k.unit();
    let join_to_one = (0..ku).any(|x| (0..ku).any(|y| k.def(Op::Join, x, y) == Some(ku)));
    let l_bottom = l.bottom();
    if join_to_one && l_bottom.is_none() {
        return Err(Error::Precondition(
            "joins reach 1 in the lower part and the upper part has no bottom".into(),
        ));
    }
    let c_l = l.splitting_coatom();
    let lay = PartialLayout::new(k, l);
    let n = lay.n();
    let cell = |op: Op, x: usize, y: usize| -> Entry {
        let v = |e: Entry, f: &dyn Fn(usize) -> usize| match e {
            Entry::Val(a) => Entry::Val(f(a)),
            other => other,
        };
        if let (Some(p), Some(q)) = (lay.k_of(x), lay.k_of(y)) {
            let e = k.get(op, p, q);
            return match (op, e) {
                (Op::Join, Entry::Val(j)) if j == ku && p != ku && q != ku => {
                    Entry::Val(lay.from_l(l_bottom.unwrap()))
                }
                (Op::Ldiv | Op::Rdiv, Entry::Undef | Entry::StrongUndef) => match c_l {
                    Some(c) => Entry::Val(lay.from_l(c)),
                    None => e,
                },
                _ => v(e, &|a| lay.from_k(a)),
            };
        }
        if let (Some(p), Some(q)) = (lay.l_of(x), lay.l_of(y)) {
            return v(l.get(op, p, q), &|a| lay.from_l(a));
        }
        let lower_first = lay.k_of(x).is_some();
        let kv = lay.k_of(x).or(lay.k_of(y)).unwrap();
        match op {
            Op::Mul => Entry::Val(lay.from_k(t.sigma[kv])),
            Op::Meet => Entry::Val(lay.from_k(kv)),
            Op::Join => Entry::Val(if lower_first { y } else { x }),
            Op::Ldiv => Entry::Val(if lower_first {
                n - 1
            } else {
                lay.from_k(t.gamma[kv])
            }),
            Op::Rdiv => Entry::Val(if lower_first {
                lay.from_k(t.gamma[kv])
            } else {
                n - 1
            }),
        }
    };
    finish_partial(&lay, k, l, cell, GlueMode::PartialUpper)
}

/// A named failure of the partial-gluing assumptions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TauAssumption {
    A1,
    A2,
    A3,
    A4,
}

/// Checks the four assumptions of the partial gluing and returns the top
/// of the ideal when one is needed.
pub fn check_tau_assumptions(
    t: &LowerTriple,
    ideal: Option<ElemSet>,
    u: &UpperTriple,
) -> std::result::Result<Option<usize>, (TauAssumption, String)> {
    let k = &t.k;
    let l = &u.l;
    let ku = k.unit();
    let undefined_products =
        (0..l.n()).any(|x| (0..l.n()).any(|y| !l.get(Op::Mul, x, y).is_defined()));
    let top = match ideal {
        Some(i) => {
            if i.is_empty() || i.contains(ku) {
                return Err((
                    TauAssumption::A1,
                    "the ideal must be nonempty and proper".into(),
                ));
            }
            let down_closed = i
                .iter()
                .all(|x| (0..k.n()).all(|y| !k.leq(y, x) || i.contains(y)));
            let join_closed = i.iter().all(|x| {
                i.iter()
                    .all(|y| k.def(Op::Join, x, y).is_some_and(|j| i.contains(j)))
            });
            if !down_closed || !join_closed {
                return Err((TauAssumption::A1, "not a lattice ideal".into()));
            }
            let top = k.max_of(i).ok_or((
                TauAssumption::A1,
                "the ideal has no top element".to_string(),
            ))?;
            if k.def(Op::Mul, top, top) != Some(top) || t.sigma[top] != top {
                return Err((
                    TauAssumption::A1,
                    format!("{} is not an idempotent fixpoint of sigma", k.label(top)),
                ));
            }
            Some(top)
        }
        None => None,
    };
    if undefined_products {
        let top = top.ok_or((
            TauAssumption::A1,
            "undefined products in L need an ideal".to_string(),
        ))?;
        let i = ideal.unwrap();
        if let Some(x) = (0..ku).find(|&x| !i.contains(x) && t.sigma[x] != top) {
            return Err((
                TauAssumption::A2,
                format!("sigma({}) is not the top of the ideal", k.label(x)),
            ));
        }
        for y in i.iter() {
            let ty = k.def(Op::Mul, top, y).unwrap();
            let yt = k.def(Op::Mul, y, top).unwrap();
            if t.sigma[ty] != t.sigma[y] || t.sigma[yt] != t.sigma[y] {
                return Err((
                    TauAssumption::A2,
                    format!("sigma is not absorbed by the top at {}", k.label(y)),
                ));
            }
        }
    }
    let join_to_one = (0..ku).any(|x| (0..ku).any(|y| k.def(Op::Join, x, y) == Some(ku)));
    if join_to_one && l.bottom().is_none() {
        return Err((
            TauAssumption::A3,
            "joins reach 1 in K and L has no bottom".into(),
        ));
    }
    let undefined_meets =
        (0..l.n()).any(|x| (0..l.n()).any(|y| !l.get(Op::Meet, x, y).is_defined()));
    if undefined_meets && k.splitting_coatom().is_none() {
        return Err((
            TauAssumption::A4,
            "L has undefined meets and K has no splitting coatom".into(),
        ));
    }
    Ok(top)
}

/// The partial gluing of a lower triple (with an ideal of `K`) and an upper
/// triple. Total when `L` has a coatom.
pub fn partial_gluing_tau(
    t: &LowerTriple,
    ideal: Option<ElemSet>,
    u: &UpperTriple,
) -> Result<PartialGlued> {
    if let Some(v) = crate::partial::validate_lower_triple(t).first() {
        return Err(Error::InvalidTriple(format!(
            "lower: {} at {:?}",
            v.property, v.witness
        )));
    }
    if let Some(v) = crate::partial::validate_upper_triple(u).first() {
        return Err(Error::InvalidTriple(format!(
            "upper: {} at {:?}",
            v.property, v.witness
        )));
    }
    let top_i = check_tau_assumptions(t, ideal, u)
        .map_err(|(a, m)| Error::Precondition(format!("{a:?}: {m}")))?;
    let k = &t.k;
    let l = &u.l;
    let ku = k.unit();
    let ideal = ideal.unwrap_or_default();
    let c_l = l.coatom();
    let c_k = k.splitting_coatom();
    let l_bottom = l.bottom();
    let lay = PartialLayout::new(k, l);
    let n = lay.n();
    let cell = |op: Op, x: usize, y: usize| -> Entry {
        let from_k = |a: usize| Entry::Val(lay.from_k(a));
        let from_l = |a: usize| Entry::Val(lay.from_l(a));
        if let (Some(p), Some(q)) = (lay.k_of(x), lay.k_of(y)) {
            return match (op, k.get(op, p, q)) {
                (Op::Join, Entry::Val(j)) if j == ku && p != ku && q != ku => {
                    from_l(l_bottom.unwrap())
                }
                (_, Entry::Val(v)) => from_k(v),
                (_, e) => c_l.map_or(e, from_l),
            };
        }
        if let (Some(p), Some(q)) = (lay.l_of(x), lay.l_of(y)) {
            return match (op, l.get(op, p, q)) {
                (_, Entry::Val(v)) => from_l(v),
                (_, Entry::StrongUndef) => Entry::StrongUndef,
                (Op::Mul, _) => from_k(top_i.unwrap()),
                (Op::Meet, _) => from_k(c_k.unwrap()),
                (Op::Ldiv, _) => u.ell[p].map_or(Entry::Undef, from_l),
                (Op::Rdiv, _) => u.r[q].map_or(Entry::Undef, from_l),
                (Op::Join, _) => Entry::Undef,
            };
        }
        let lower_first = lay.k_of(x).is_some();
        let (kv, lv) = if lower_first {
            (lay.k_of(x).unwrap(), lay.l_of(y).unwrap())
        } else {
            (lay.k_of(y).unwrap(), lay.l_of(x).unwrap())
        };
        match op {
            Op::Mul => from_k(t.sigma[kv]),
            Op::Meet => from_k(kv),
            Op::Join => from_l(lv),
            Op::Ldiv => {
                if lower_first {
                    Entry::Val(n - 1)
                } else if !ideal.contains(kv) && u.ell[lv].is_some() {
                    from_l(u.ell[lv].unwrap())
                } else {
                    from_k(t.gamma[kv])
                }
            }
            Op::Rdiv => {
                if !lower_first {
                    Entry::Val(n - 1)
                } else if !ideal.contains(kv) && u.r[lv].is_some() {
                    from_l(u.r[lv].unwrap())
                } else {
                    from_k(t.gamma[kv])
                }
            }
        }
    };
    finish_partial(&lay, k, l, cell, GlueMode::PartialTau)
}

/// Bundles the parts of a gluing for the high-level entry point.
#[derive(Debug, Clone)]
pub enum GluingSpec {
    OneSum {
        lower: FiniteRL,
        upper: FiniteRL,
    },
    F {
        lower: FiniteRL,
        upper: FiniteRL,
        filter_pairs: Vec<(usize, usize)>,
    },
    Fi {
        input: crate::quadruple::QuadrupleInput,
        strict: bool,
    },
    PartialTau {
        lower: LowerTriple,
        ideal: Option<ElemSet>,
        upper: UpperTriple,
    },
}

/// Runs the construction named by a spec. Partial results must be total.
pub fn glue(spec: &GluingSpec) -> Result<Glued> {
    match spec {
        GluingSpec::OneSum { lower, upper } => one_sum(lower, upper),
        GluingSpec::F {
            lower,
            upper,
            filter_pairs,
        } => f_gluing(lower, upper, filter_pairs),
        GluingSpec::Fi { input, strict } => {
            match crate::quadruple::check_quadruple(input, *strict)? {
                crate::quadruple::QuadrupleVerdict::Compatible(q) => fi_gluing(&q),
                crate::quadruple::QuadrupleVerdict::Incompatible(rep) => {
                    let first = rep
                        .failures
                        .first()
                        .map(|f| f.detail.clone())
                        .unwrap_or_default();
                    Err(Error::Precondition(format!(
                        "incompatible quadruple: {first}"
                    )))
                }
            }
        }
        GluingSpec::PartialTau {
            lower,
            ideal,
            upper,
        } => {
            let pg = partial_gluing_tau(lower, *ideal, upper)?;
            let algebra = pg.to_total()?;
            if !is_valid(&algebra) {
                return Err(Error::Internal(
                    "total partial gluing is not a residuated lattice".into(),
                ));
            }
            let km = lower.k.n() - 1;
            let n = algebra.n();
            Ok(Glued {
                provenance: Provenance {
                    mode: GlueMode::PartialTau,
                    strict: true,
                    filter: ElemSet::singleton(n - 1),
                    ideal: ElemSet::new(),
                    lower_rest: (0..km).collect(),
                    upper_rest: (km..n - 1).collect(),
                },
                algebra,
                lower_map: pg.lower_map,
                upper_map: pg.upper_map,
            })
        }
    }
}

/// Non-strict lower pairs are accepted by [`fi_gluing`] through the
/// quadruple check; this helper exposes the lower-pair verdict alone.
pub fn lower_pair_kind(b: &FiniteRL, f: ElemSet, strict: bool) -> Result<PairKind> {
    Ok(check_lower_pair_mode(b, f, strict)?.kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, morphism::are_isomorphic};
    use crate::partial::{extract_lower_triple, extract_upper_triple};
    use crate::quadruple::check_quadruple;
    use crate::rotations::{identity_nucleus, n_rotation, rotation_quadruple};

    fn unit_pair(b: &FiniteRL, c: &FiniteRL) -> Vec<(usize, usize)> {
        vec![(b.unit(), c.unit())]
    }

    #[test]
    fn one_sum_of_two_chains_is_godel_three() {
        let g = one_sum(&catalog::boolean(), &catalog::boolean()).unwrap();
        assert!(is_valid(&g.algebra));
        assert!(are_isomorphic(&g.algebra, &catalog::godel(3)).is_some());
        assert!(check_embeddings(&g, &catalog::boolean(), &catalog::boolean()).is_empty());
    }

    #[test]
    fn trivial_is_neutral_for_one_sums() {
        let c = catalog::lukasiewicz(4);
        let t = catalog::trivial();
        assert!(are_isomorphic(&one_sum(&t, &c).unwrap().algebra, &c).is_some());
        assert!(are_isomorphic(&one_sum(&c, &t).unwrap().algebra, &c).is_some());
    }

    #[test]
    fn two_lukasiewicz_three_chains() {
        let l3 = catalog::lukasiewicz(3);
        let d = one_sum(&l3, &l3).unwrap().algebra;
        assert_eq!(d.n(), 5);
        assert!(is_valid(&d));
        assert!(d.is_chain());
        assert!(d.all().iter().all(|x| d.pow(x, 3) == d.pow(x, 2)));
    }

    #[test]
    fn unit_filter_gluing_is_the_one_sum() {
        let parts = [
            catalog::boolean(),
            catalog::godel(3),
            catalog::lukasiewicz(4),
            catalog::boolean_square(),
        ];
        for b in &parts {
            for c in &parts {
                let s = one_sum(b, c).unwrap().algebra;
                let f = f_gluing(b, c, &unit_pair(b, c)).unwrap().algebra;
                assert!(s.same_tables(&f), "{b:?}\n{c:?}");
                assert!(is_valid(&s));
            }
        }
    }

    #[test]
    fn gluing_over_a_two_element_filter() {
        let b = catalog::godel(4);
        let c = catalog::godel(3);
        let pairs = [(2, 1), (3, 2)];
        let g = f_gluing(&b, &c, &pairs).unwrap();
        assert!(is_valid(&g.algebra));
        assert!(are_isomorphic(&g.algebra, &catalog::godel(5)).is_some());
        assert!(check_embeddings(&g, &b, &c).is_empty());
        let q = crate::quadruple::QuadrupleInput::new(b.clone(), c.clone(), &pairs, &[]).unwrap();
        let cq = check_quadruple(&q, true).unwrap().compatible().unwrap();
        assert!(fi_gluing(&cq).unwrap().algebra.same_tables(&g.algebra));
    }

    #[test]
    fn rotation_is_a_filter_ideal_gluing() {
        let a = catalog::boolean();
        let q = rotation_quadruple(&a, &identity_nucleus(&a), 3).unwrap();
        let cq = check_quadruple(&q, true)
            .unwrap()
            .compatible()
            .expect("compatible");
        let g = fi_gluing(&cq).unwrap();
        assert_eq!(g.algebra.n(), 5);
        assert!(g.algebra.is_chain());
        let rot = n_rotation(&a, &identity_nucleus(&a), 3).unwrap();
        assert!(are_isomorphic(&g.algebra, &rot.algebra).is_some());
    }

    #[test]
    fn bottomize_unit_filter_adds_a_coatom() {
        for b in [
            catalog::boolean(),
            catalog::lukasiewicz(4),
            catalog::boolean_square(),
        ] {
            let (d, nf) = bottomize(&b, ElemSet::singleton(b.unit())).unwrap();
            assert!(is_valid(&d));
            assert_eq!(nf.len(), 2);
            let two = catalog::boolean();
            let g = f_gluing(&b, &two, &unit_pair(&b, &two)).unwrap().algebra;
            assert!(d.same_tables(&g));
        }
    }

    #[test]
    fn bottom_of_filter_acts_as_sigma_and_gamma() {
        let b = catalog::godel(4);
        let f: ElemSet = [2, 3].into_iter().collect();
        let (d, nf) = bottomize(&b, f).unwrap();
        assert!(is_valid(&d));
        let rep = check_lower_pair(&d, nf).unwrap();
        assert_eq!(rep.kind, PairKind::Lower);
        let bot = d.min_of(nf).unwrap();
        for x in d.all().difference(&nf).iter() {
            assert_eq!(rep.ops.s(x), d.mul(bot, x));
            assert_eq!(rep.ops.g(x), d.ldiv(bot, x));
        }
    }

    #[test]
    fn partial_upper_gluing_with_total_top_is_a_one_sum() {
        let b = catalog::boolean();
        let t = extract_lower_triple(&b, ElemSet::singleton(1))
            .unwrap()
            .triple;
        let l = PartialRL::from_total(&catalog::lukasiewicz(3));
        let pg = partial_upper_gluing(&t, &l).unwrap();
        assert!(pg.total);
        let d = pg.to_total().unwrap();
        assert!(d.same_tables(&one_sum(&b, &catalog::lukasiewicz(3)).unwrap().algebra));
    }

    #[test]
    fn tau_gluing_without_divisors_is_a_one_sum() {
        let b = catalog::boolean();
        let t = extract_lower_triple(&b, ElemSet::singleton(1))
            .unwrap()
            .triple;
        let u = extract_upper_triple(&catalog::godel(3), ElemSet::singleton(0))
            .unwrap()
            .triple;
        let pg = partial_gluing_tau(&t, None, &u).unwrap();
        assert!(pg.total);
        let d = pg.to_total().unwrap();
        assert!(d.same_tables(&one_sum(&b, &b).unwrap().algebra));
    }

    #[test]
    fn non_strict_filter_is_rejected_or_verified() {
        // B = boolean square with F = {q, 1}: not strictly above p
        let b = catalog::boolean_square();
        let c = catalog::godel(3);
        let q = crate::quadruple::QuadrupleInput::new(b, c, &[(2, 1), (3, 2)], &[]).unwrap();
        match check_quadruple(&q, false).unwrap() {
            crate::quadruple::QuadrupleVerdict::Compatible(cq) => match fi_gluing(&cq) {
                Ok(g) => assert!(is_valid(&g.algebra)),
                Err(e) => assert!(matches!(e, Error::Precondition(_))),
            },
            crate::quadruple::QuadrupleVerdict::Incompatible(_) => {}
        }
    }
}
