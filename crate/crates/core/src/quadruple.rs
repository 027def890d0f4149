//! Compatible quadruples `(B, F, C, I)`: the input of the filter–ideal
//! gluing.
//!
//! `B` is the lower algebra and `C` the upper one. They share `F ∪ I`,
//! given as pairs of indices. `F` is a congruence filter of `B` sitting on
//! top of everything, `I` a lattice ideal of `C` sitting below everything.

use crate::algebra::{FiniteRL, Op};
use crate::error::{Error, Result};
use crate::filters::{
    check_congruence_filter, check_lower_pair_mode, check_upper_pair, ClassOps, DivisorOps,
    LowerPairReport, PairKind, UpperPairReport,
};
use crate::set::ElemSet;
use serde::Serialize;

/// Lower algebra, upper algebra and their shared part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrupleInput {
    pub lower: FiniteRL,
    pub upper: FiniteRL,
    /// `F`, as indices of the lower algebra.
    pub filter: ElemSet,
    /// `I`, as indices of the lower algebra.
    pub ideal: ElemSet,
    /// Lower index to upper index on `F ∪ I`.
    pub to_upper: Vec<Option<usize>>,
}

impl QuadrupleInput {
    /// Pairs are `(lower index, upper index)`.
    pub fn new(
        lower: FiniteRL,
        upper: FiniteRL,
        filter_pairs: &[(usize, usize)],
        ideal_pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let mut to_upper = vec![None; lower.n()];
        let mut seen_upper = ElemSet::new();
        let mut filter = ElemSet::new();
        let mut ideal = ElemSet::new();
        for (k, &(b, c)) in filter_pairs.iter().chain(ideal_pairs).enumerate() {
            if b >= lower.n() || c >= upper.n() {
                return Err(Error::Structural(format!(
                    "shared pair ({b}, {c}) out of range"
                )));
            }
            if to_upper[b].is_some() || !seen_upper.insert(c) {
                return Err(Error::NotSharedSubalgebra(format!(
                    "pair ({b}, {c}) repeats an element"
                )));
            }
            to_upper[b] = Some(c);
            if k < filter_pairs.len() {
                filter.insert(b);
            } else {
                ideal.insert(b);
            }
        }
        Ok(QuadrupleInput {
            lower,
            upper,
            filter,
            ideal,
            to_upper,
        })
    }

    /// `F` as indices of the upper algebra.
    pub fn filter_upper(&self) -> ElemSet {
        self.filter
            .iter()
            .map(|b| self.to_upper[b].unwrap())
            .collect()
    }

    /// `I` as indices of the upper algebra.
    pub fn ideal_upper(&self) -> ElemSet {
        self.ideal
            .iter()
            .map(|b| self.to_upper[b].unwrap())
            .collect()
    }

    pub fn shared(&self) -> ElemSet {
        self.filter.union(&self.ideal)
    }

    /// Upper index to lower index on the shared part.
    pub fn to_lower(&self) -> Vec<Option<usize>> {
        let mut v = vec![None; self.upper.n()];
        for b in self.shared().iter() {
            v[self.to_upper[b].unwrap()] = Some(b);
        }
        v
    }

    /// `B⁻ = B - (F ∪ I)`.
    pub fn lower_rest(&self) -> ElemSet {
        self.lower.all().difference(&self.shared())
    }

    /// `C⁻ = C - (F ∪ I)`.
    pub fn upper_rest(&self) -> ElemSet {
        self.upper
            .all()
            .difference(&self.filter_upper())
            .difference(&self.ideal_upper())
    }
}

/// The numbered and structural conditions a quadruple must meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadCondition {
    LowerPair,
    UpperPair,
    FilterOfUpper,
    FilterAboveUpper,
    IdealBelowLower,
    /// Condition 1: a non-divisor in the upper part forces a (non-weak)
    /// lower pair.
    LowerPairRequired,
    /// Condition 2: products of upper elements landing in `I` act on the
    /// lower part like `sigma`.
    IdealProducts,
    /// Condition 3: joins of lower elements landing in `F` need a bottom of
    /// `C - I`.
    JoinBottom,
    /// Condition 4: meets of upper elements landing in `I` need a top of
    /// `B - F`.
    MeetTop,
}

impl QuadCondition {
    pub fn number(self) -> Option<u8> {
        match self {
            QuadCondition::LowerPairRequired => Some(1),
            QuadCondition::IdealProducts => Some(2),
            QuadCondition::JoinBottom => Some(3),
            QuadCondition::MeetTop => Some(4),
            _ => None,
        }
    }
}

/// A failed condition with its witness (indices; see the condition).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadFailure {
    pub condition: QuadCondition,
    pub witness: Vec<usize>,
    pub detail: String,
}

/// A division between shared elements on which the two algebras disagree.
/// The gluing uses the larger value, which is always the lower algebra's
/// value when it falls outside the shared part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisionNote {
    pub op: Op,
    /// Lower indices of the arguments.
    pub args: (usize, usize),
    pub lower_value: usize,
    pub upper_value: usize,
}

/// Full report of a quadruple check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadrupleReport {
    pub strict: bool,
    pub lower_pair: LowerPairReport,
    pub upper_pair: UpperPairReport,
    pub failures: Vec<QuadFailure>,
    pub division_notes: Vec<DivisionNote>,
}

impl QuadrupleReport {
    pub fn is_compatible(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, c: QuadCondition) -> bool {
        self.failures.iter().any(|f| f.condition == c)
    }
}

/// A checked compatible quadruple with its derived operators.
#[derive(Debug, Clone)]
pub struct CompatQuadruple {
    pub input: QuadrupleInput,
    pub strict: bool,
    /// `sigma`, `gamma` on lower indices.
    pub class_ops: ClassOps,
    /// Divisor sets, `ell`, `r` on upper indices.
    pub divisors: DivisorOps,
    /// Bottom of `C - I` (upper index), when it exists.
    pub bottom_upper: Option<usize>,
    /// Top of `B - F` (lower index), when it exists.
    pub top_lower: Option<usize>,
    pub report: QuadrupleReport,
}

/// Result of [`check_quadruple`].
#[derive(Debug, Clone)]
pub enum QuadrupleVerdict {
    Compatible(Box<CompatQuadruple>),
    Incompatible(Box<QuadrupleReport>),
}

impl QuadrupleVerdict {
    pub fn report(&self) -> &QuadrupleReport {
        match self {
            QuadrupleVerdict::Compatible(q) => &q.report,
            QuadrupleVerdict::Incompatible(r) => r,
        }
    }

    pub fn compatible(self) -> Option<CompatQuadruple> {
        match self {
            QuadrupleVerdict::Compatible(q) => Some(*q),
            QuadrupleVerdict::Incompatible(_) => None,
        }
    }
}

/// Checks the shared part: order, joins, meets and products agree and stay
/// inside `F ∪ I`. Division disagreements are returned as notes.
fn check_shared(q: &QuadrupleInput) -> Result<Vec<DivisionNote>> {
    let (b, c) = (&q.lower, &q.upper);
    let shared = q.shared();
    if !q.filter.intersection(&q.ideal).is_empty() {
        return Err(Error::NotSharedSubalgebra(
            "filter and ideal overlap".into(),
        ));
    }
    if q.to_upper[b.unit()] != Some(c.unit()) {
        return Err(Error::NotSharedSubalgebra(
            "units are not identified".into(),
        ));
    }
    let mut notes = Vec::new();
    for x in shared.iter() {
        for y in shared.iter() {
            let (tx, ty) = (q.to_upper[x].unwrap(), q.to_upper[y].unwrap());
            if b.leq(x, y) != c.leq(tx, ty) {
                return Err(Error::NotSharedSubalgebra(format!(
                    "order differs at ({}, {})",
                    b.label(x),
                    b.label(y)
                )));
            }
            for op in Op::ALL {
                let r = b.op(op, x, y);
                let rc = c.op(op, tx, ty);
                let agrees = shared.contains(r) && q.to_upper[r] == Some(rc);
                if agrees {
                    continue;
                }
                match op {
                    Op::Ldiv | Op::Rdiv => notes.push(DivisionNote {
                        op,
                        args: (x, y),
                        lower_value: r,
                        upper_value: rc,
                    }),
                    _ => {
                        return Err(Error::NotSharedSubalgebra(format!(
                            "{} of ({}, {}) differs or leaves the shared part",
                            op.name(),
                            b.label(x),
                            b.label(y)
                        )))
                    }
                }
            }
        }
    }
    Ok(notes)
}

/// Checks every compatibility condition of a quadruple. With `strict` off,
/// the lower and upper pairs may be non-strict.
pub fn check_quadruple(q: &QuadrupleInput, strict: bool) -> Result<QuadrupleVerdict> {
    let division_notes = check_shared(q)?;
    let (b, c) = (&q.lower, &q.upper);
    let f_up = q.filter_upper();
    let i_up = q.ideal_upper();
    let lower_pair = check_lower_pair_mode(b, q.filter, strict)?;
    let upper_pair = check_upper_pair(c, i_up, strict)?;
    let ops = &lower_pair.ops;
    let div = &upper_pair.ops;
    let b_minus = q.lower_rest();
    let c_minus = q.upper_rest();
    let mut failures = Vec::new();
    let mut fail = |condition, witness: Vec<usize>, detail: String| {
        failures.push(QuadFailure {
            condition,
            witness,
            detail,
        })
    };

    if lower_pair.kind == PairKind::Incompatible {
        fail(
            QuadCondition::LowerPair,
            vec![],
            "lower pair is incompatible".into(),
        );
    }
    if !upper_pair.compatible {
        fail(
            QuadCondition::UpperPair,
            vec![],
            "upper pair is incompatible".into(),
        );
    }
    if let Err(e) = check_congruence_filter(c, f_up) {
        fail(QuadCondition::FilterOfUpper, vec![], e.to_string());
    }
    let c_below_f = c.all().difference(&f_up);
    if let Some((x, f)) = c_below_f
        .iter()
        .flat_map(|x| f_up.iter().map(move |f| (x, f)))
        .find(|&(x, f)| !c.lt(x, f))
    {
        fail(
            QuadCondition::FilterAboveUpper,
            vec![x, f],
            format!("{} is not strictly below {}", c.label(x), c.label(f)),
        );
    }
    let b_above_i = b.all().difference(&q.ideal);
    if let Some((i, x)) = q
        .ideal
        .iter()
        .flat_map(|i| b_above_i.iter().map(move |x| (i, x)))
        .find(|&(i, x)| !b.lt(i, x))
    {
        fail(
            QuadCondition::IdealBelowLower,
            vec![i, x],
            format!("{} is not strictly below {}", b.label(i), b.label(x)),
        );
    }
    if let Some(x) = c_minus.iter().find(|&x| !div.is_divisor(x)) {
        if lower_pair.kind == PairKind::WeakLower {
            fail(
                QuadCondition::LowerPairRequired,
                vec![x],
                format!(
                    "{} is not a divisor but the lower pair is only weak",
                    c.label(x)
                ),
            );
        }
    }
    if lower_pair.missing_min.is_none() {
        let c_rest = c.all().difference(&i_up);
        let to_lower = q.to_lower();
        'cond2: for x in c_rest.iter() {
            for y in c_rest.iter() {
                let p = c.mul(x, y);
                if !i_up.contains(p) {
                    continue;
                }
                let pb = to_lower[p].unwrap();
                for z in b_minus.iter() {
                    let s = ops.s(z);
                    if b.mul(pb, z) != s || b.mul(z, pb) != s {
                        fail(
                            QuadCondition::IdealProducts,
                            vec![x, y, z],
                            format!(
                                "({}·{})·{} differs from sigma({})",
                                c.label(x),
                                c.label(y),
                                b.label(z),
                                b.label(z)
                            ),
                        );
                        break 'cond2;
                    }
                }
            }
        }
    }
    let b_rest = b.all().difference(&q.filter);
    let join_into_f = b_rest
        .iter()
        .flat_map(|x| b_rest.iter().map(move |y| (x, y)))
        .find(|&(x, y)| q.filter.contains(b.join(x, y)));
    let c_rest = c.all().difference(&i_up);
    let bottom_upper = c.min_of(c_rest);
    if let Some((x, y)) = join_into_f {
        if bottom_upper.is_none() {
            fail(
                QuadCondition::JoinBottom,
                vec![x, y],
                format!(
                    "{} ∨ {} lies in the filter but C - I has no bottom",
                    b.label(x),
                    b.label(y)
                ),
            );
        }
    }
    let meet_into_i = c_rest
        .iter()
        .flat_map(|x| c_rest.iter().map(move |y| (x, y)))
        .find(|&(x, y)| i_up.contains(c.meet(x, y)));
    let top_lower = b.max_of(b_rest);
    if let Some((x, y)) = meet_into_i {
        if top_lower.is_none() {
            fail(
                QuadCondition::MeetTop,
                vec![x, y],
                format!(
                    "{} ∧ {} lies in the ideal but B - F has no top",
                    c.label(x),
                    c.label(y)
                ),
            );
        }
    }
    let report = QuadrupleReport {
        strict,
        lower_pair: lower_pair.clone(),
        upper_pair: upper_pair.clone(),
        failures,
        division_notes,
    };
    if !report.is_compatible() {
        return Ok(QuadrupleVerdict::Incompatible(Box::new(report)));
    }
    Ok(QuadrupleVerdict::Compatible(Box::new(CompatQuadruple {
        input: q.clone(),
        strict,
        class_ops: lower_pair.ops,
        divisors: upper_pair.ops,
        bottom_upper,
        top_lower,
        report,
    })))
}
