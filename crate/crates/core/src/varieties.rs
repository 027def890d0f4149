//! Structure theory of gluings: which properties and equations survive a
//! gluing, the congruence filter lattice of a gluing, subdirect
//! irreducibility, homomorphic images and subalgebras.

use crate::algebra::morphism::are_isomorphic;
use crate::algebra::sub::{homomorphic_image, induced, is_closed};
use crate::algebra::FiniteRL;
use crate::error::{Error, Result};
use crate::filters::{
    all_congruence_filters, divisor_ops, is_congruence_filter, posets_isomorphic, sigma_gamma,
    DivisorOps,
};
use crate::gluing::{GlueMode, Glued};
use crate::set::ElemSet;
use crate::terms::{eval_equation, named, potency, Counterexample, Equation};
use serde::Serialize;

/// A glued algebra together with the two algebras it was built from.
#[derive(Debug, Clone, Copy)]
pub struct GluingView<'a> {
    pub glued: &'a Glued,
    pub lower: &'a FiniteRL,
    pub upper: &'a FiniteRL,
}

impl<'a> GluingView<'a> {
    pub fn new(glued: &'a Glued, lower: &'a FiniteRL, upper: &'a FiniteRL) -> Result<Self> {
        if glued.lower_map.len() != lower.n() || glued.upper_map.len() != upper.n() {
            return Err(Error::Precondition(
                "parts do not match the maps of the gluing".into(),
            ));
        }
        if matches!(
            glued.provenance.mode,
            GlueMode::PartialUpper | GlueMode::PartialTau | GlueMode::Iterated
        ) {
            return Err(Error::Precondition(
                "structure checks need a total filter or filter-ideal gluing".into(),
            ));
        }
        Ok(GluingView {
            glued,
            lower,
            upper,
        })
    }

    pub fn algebra(&self) -> &FiniteRL {
        &self.glued.algebra
    }

    fn pre(map: &[usize], s: ElemSet) -> ElemSet {
        (0..map.len()).filter(|&x| s.contains(map[x])).collect()
    }

    /// `F` in lower indices.
    pub fn filter_lower(&self) -> ElemSet {
        Self::pre(&self.glued.lower_map, self.glued.provenance.filter)
    }

    /// `F` in upper indices.
    pub fn filter_upper(&self) -> ElemSet {
        Self::pre(&self.glued.upper_map, self.glued.provenance.filter)
    }

    /// `I` in upper indices.
    pub fn ideal_upper(&self) -> ElemSet {
        Self::pre(&self.glued.upper_map, self.glued.provenance.ideal)
    }

    /// `I` in lower indices.
    pub fn ideal_lower(&self) -> ElemSet {
        Self::pre(&self.glued.lower_map, self.glued.provenance.ideal)
    }

    /// `C⁻ = C - (F ∪ I)` in upper indices.
    pub fn upper_rest(&self) -> ElemSet {
        Self::pre(&self.glued.upper_map, self.glued.provenance.upper_rest)
    }

    pub fn lower_rest(&self) -> ElemSet {
        Self::pre(&self.glued.lower_map, self.glued.provenance.lower_rest)
    }

    pub fn divisors(&self) -> DivisorOps {
        divisor_ops(self.upper, self.ideal_upper())
    }

    /// Divisors of `I` among the private upper elements.
    pub fn ideal_divisors(&self) -> ElemSet {
        let ops = self.divisors();
        ops.left_divisors
            .union(&ops.right_divisors)
            .intersection(&self.upper_rest())
    }
}

fn holds_all(a: &FiniteRL, eqs: &[Equation]) -> Result<bool> {
    crate::terms::satisfies(a, eqs)
}

fn first_failure(a: &FiniteRL, eqs: &[Equation]) -> Result<Option<(String, Counterexample)>> {
    for e in eqs {
        if let Some(ce) = eval_equation(a, e)? {
            return Ok(Some((e.to_string(), ce)));
        }
    }
    Ok(None)
}

/// Whether `fy = yf = y` for all `f ∈ F` and `y ∈ B - F`, that is, whether
/// `B` is the 1-sum of `(B - F) ∪ {1}` and `F`.
pub fn splits_over_filter(b: &FiniteRL, f: ElemSet) -> bool {
    let rest = b.all().difference(&f);
    f.iter()
        .all(|x| rest.iter().all(|y| b.mul(x, y) == y && b.mul(y, x) == y))
}

/// Semilinearity decided structurally: the congruence filters with a
/// totally ordered quotient meet in `{1}`.
pub fn is_semilinear_by_filters(a: &FiniteRL) -> bool {
    let mut meet = a.all();
    for f in all_congruence_filters(a).filters {
        let linear = a.elements().all(|x| {
            a.elements()
                .all(|y| f.contains(a.ldiv(x, y)) || f.contains(a.ldiv(y, x)))
        });
        if linear {
            meet = meet.intersection(&f);
        }
    }
    meet == ElemSet::singleton(a.unit())
}

/// `x(x\y) = xℓ(x) ≠ x∧y` for a left divisor `x` of the ideal and a
/// private lower element `y`, in glued indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityWitness {
    pub x: usize,
    pub y: usize,
    pub ell: usize,
    pub product: usize,
    pub meet: usize,
}

/// Looks for the divisibility failure forced by an ideal divisor.
pub fn divisibility_witness(v: &GluingView) -> Option<DivisibilityWitness> {
    let d = v.algebra();
    let ops = v.divisors();
    let g = v.glued;
    for c in ops.left_divisors.intersection(&v.upper_rest()).iter() {
        let ell = ops.ell[c]?;
        for b in v.lower_rest().iter() {
            let (x, y) = (g.upper_map[c], g.lower_map[b]);
            let product = d.mul(x, d.ldiv(x, y));
            let meet = d.meet(x, y);
            if d.ldiv(x, y) == g.upper_map[ell]
                && product == d.mul(x, g.upper_map[ell])
                && product != meet
            {
                return Some(DivisibilityWitness {
                    x,
                    y,
                    ell: g.upper_map[ell],
                    product,
                    meet,
                });
            }
        }
    }
    None
}

/// One property: its value on the gluing and the value predicted from the
/// parts (`None` when no prediction is made).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservationRow {
    pub property: String,
    pub glued: bool,
    pub predicted: Option<bool>,
    /// Failing equation and assignment on the gluing, if any.
    pub counterexample: Option<(String, Counterexample)>,
}

impl PreservationRow {
    pub fn agrees(&self) -> bool {
        self.predicted.is_none_or(|p| p == self.glued)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub rows: Vec<PreservationRow>,
    pub divisibility_witness: Option<DivisibilityWitness>,
}

impl PreservationReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agrees())
    }

    pub fn row(&self, property: &str) -> Option<&PreservationRow> {
        self.rows.iter().find(|r| r.property == property)
    }
}

fn eq_row(
    d: &FiniteRL,
    property: String,
    eqs: &[Equation],
    predicted: Option<bool>,
) -> Result<PreservationRow> {
    let counterexample = first_failure(d, eqs)?;
    Ok(PreservationRow {
        property,
        glued: counterexample.is_none(),
        predicted,
        counterexample,
    })
}

/// Whether an equation is covered by the transfer of monoid and
/// lattice-free one-variable equations.
fn transfers(e: &Equation) -> bool {
    fn lattice_free(t: &crate::terms::Term) -> bool {
        use crate::terms::Term::*;
        match t {
            Var(_) | One | Zero => true,
            Meet(..) | Join(..) => false,
            Pow(s, _) => lattice_free(s),
            Mul(s, t) | Ldiv(s, t) | Rdiv(s, t) => lattice_free(s) && lattice_free(t),
        }
    }
    e.is_monoid_equation()
        || (e.vars.len() <= 1
            && e.relation == crate::terms::Relation::Eq
            && !e.uses_zero()
            && lattice_free(&e.lhs)
            && lattice_free(&e.rhs))
}

/// Evaluates commutativity, divisibility, semilinearity, `n`-potency for
/// `n ≤ 3` and the given extra equations on the gluing, next to what the
/// parts predict.
pub fn preservation_suite(v: &GluingView, extra: &[Equation]) -> Result<PreservationReport> {
    let (b, c, d) = (v.lower, v.upper, v.algebra());
    let mut rows = Vec::new();

    let comm = named("comm")?;
    rows.push(eq_row(
        d,
        "commutative".into(),
        &comm,
        Some(holds_all(b, &comm)? && holds_all(c, &comm)?),
    )?);

    let div = named("div")?;
    // with no private lower elements the gluing is a copy of C
    let div_pred = if v.lower_rest().is_empty() {
        holds_all(c, &div)?
    } else {
        holds_all(b, &div)?
            && holds_all(c, &div)?
            && v.ideal_divisors().is_empty()
            && splits_over_filter(b, v.filter_lower())
    };
    rows.push(eq_row(d, "divisible".into(), &div, Some(div_pred))?);

    let sl = named("sl")?;
    let f_trivial = v.filter_lower().len() == 1;
    let sl_pred = if !f_trivial {
        holds_all(b, &sl)? && holds_all(c, &sl)?
    } else if !v.upper_rest().is_empty() {
        b.is_chain() && holds_all(c, &sl)?
    } else {
        holds_all(b, &sl)?
    };
    rows.push(eq_row(d, "semilinear".into(), &sl, Some(sl_pred))?);

    for n in 1..=3 {
        let p = [potency(n)];
        rows.push(eq_row(
            d,
            format!("{n}-potent"),
            &p,
            Some(holds_all(b, &p)? && holds_all(c, &p)?),
        )?);
    }
    for e in extra {
        let eqs = std::slice::from_ref(e);
        let predicted = if transfers(e) {
            Some(holds_all(b, eqs)? && holds_all(c, eqs)?)
        } else {
            None
        };
        rows.push(eq_row(d, e.to_string(), eqs, predicted)?);
    }
    let divisibility_witness = if rows[1].glued {
        None
    } else {
        divisibility_witness(v)
    };
    Ok(PreservationReport {
        rows,
        divisibility_witness,
    })
}

/// Which description of the filter lattice applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterCase {
    /// `C - I` is a congruence filter of `C`: filters of `C` inside `C - I`
    /// below, filters of `B` containing `F` above, `C - I` identified with
    /// `F`.
    OrdinalSum,
    /// Otherwise the filters are those of `C`.
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterLatticeReport {
    pub case: FilterCase,
    pub predicted_size: usize,
    pub actual_size: usize,
    pub matches: bool,
}

/// The ordinal sum of two posets identifying the top of `p` with the
/// bottom of `q`.
fn glued_sum(p: &[Vec<bool>], q: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let (np, nq) = (p.len(), q.len());
    // p's top and q's bottom are the last of p and the first of q.
    let n = np + nq - 1;
    let idx_q = |j: usize| np - 1 + j;
    let mut m = vec![vec![false; n]; n];
    for i in 0..np {
        for j in 0..np {
            m[i][j] = p[i][j];
        }
        for j in 0..nq {
            m[i][idx_q(j)] = true;
        }
    }
    for i in 0..nq {
        for j in 0..nq {
            m[idx_q(i)][idx_q(j)] = q[i][j];
        }
    }
    m
}

fn order_of(sets: &[ElemSet]) -> Vec<Vec<bool>> {
    sets.iter()
        .map(|f| sets.iter().map(|g| f.is_subset(g)).collect())
        .collect()
}

/// The predicted filter lattice as an order matrix. A filter of `C` inside
/// `F` is kept only when it is also a congruence filter of `B`.
fn predicted_filters(v: &GluingView) -> (FilterCase, Vec<Vec<bool>>) {
    let (b, c) = (v.lower, v.upper);
    let g = v.glued;
    let upper_part = c.all().difference(&v.ideal_upper());
    let f_upper = v.filter_upper();
    let f_lower = v.filter_lower();
    let in_lower = |h: &ElemSet| -> ElemSet {
        let img: ElemSet = h.iter().map(|x| g.upper_map[x]).collect();
        (0..b.n())
            .filter(|&x| img.contains(g.lower_map[x]))
            .collect()
    };
    let shared_ok = |h: &ElemSet| !h.is_subset(&f_upper) || is_congruence_filter(b, in_lower(h));
    let fil_c: Vec<ElemSet> = all_congruence_filters(c)
        .filters
        .into_iter()
        .filter(|h| shared_ok(h))
        .collect();
    if is_congruence_filter(c, upper_part) {
        // both lists are sorted by size, so C - I is last below and F first above
        let below: Vec<ElemSet> = fil_c
            .iter()
            .copied()
            .filter(|h| h.is_subset(&upper_part))
            .collect();
        let above: Vec<ElemSet> = all_congruence_filters(b)
            .filters
            .into_iter()
            .filter(|h| f_lower.is_subset(h))
            .collect();
        (
            FilterCase::OrdinalSum,
            glued_sum(&order_of(&below), &order_of(&above)),
        )
    } else {
        (FilterCase::Upper, order_of(&fil_c))
    }
}

/// Predicts the congruence filter lattice of a gluing from its parts and
/// compares it with the computed one.
pub fn filter_lattice_of_gluing(v: &GluingView) -> FilterLatticeReport {
    let actual = all_congruence_filters(v.algebra()).order();
    let (case, predicted) = predicted_filters(v);
    FilterLatticeReport {
        case,
        predicted_size: predicted.len(),
        actual_size: actual.len(),
        matches: posets_isomorphic(&predicted, &actual),
    }
}

/// Number of atoms of a finite poset whose element 0 is its least element.
fn atom_count(order: &[Vec<bool>]) -> usize {
    let n = order.len();
    (1..n)
        .filter(|&x| !(1..n).any(|y| y != x && order[y][x]))
        .count()
}

/// Subdirectly irreducible: the filter lattice has exactly one atom.
pub fn is_subdirectly_irreducible(a: &FiniteRL) -> bool {
    all_congruence_filters(a).atoms().len() == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SdiReport {
    pub glued: bool,
    /// Read off the predicted filter lattice.
    pub predicted: bool,
    /// Name and verdict of each algebra the gluing's verdict should equal.
    pub parts: Vec<(String, bool)>,
}

impl SdiReport {
    /// The verdict matches the predicted filter lattice.
    pub fn consistent(&self) -> bool {
        self.predicted == self.glued
    }

    /// The verdict matches every listed part. This can fail when a filter
    /// of `F` is not closed under conjugation by lower elements.
    pub fn parts_agree(&self) -> bool {
        self.parts.iter().all(|(_, p)| *p == self.glued)
    }
}

/// Subdirect irreducibility of a gluing next to that of `F`, `B` and `C`
/// (when `F ≠ {1}`) or of `C` alone (when `F = {1}`).
pub fn sdi_of_gluing(v: &GluingView) -> Result<SdiReport> {
    let glued = is_subdirectly_irreducible(v.algebra());
    let f = v.filter_lower();
    let mut parts = Vec::new();
    if f.len() > 1 {
        let (fa, _) = induced(v.lower, f)?;
        parts.push(("filter".to_string(), is_subdirectly_irreducible(&fa)));
        parts.push(("lower".to_string(), is_subdirectly_irreducible(v.lower)));
    }
    if f.len() == 1 && v.upper_rest().is_empty() {
        // nothing of C survives above B
        parts.push(("lower".to_string(), is_subdirectly_irreducible(v.lower)));
    } else {
        parts.push(("upper".to_string(), is_subdirectly_irreducible(v.upper)));
    }
    let predicted = atom_count(&predicted_filters(v).1) == 1;
    Ok(SdiReport {
        glued,
        predicted,
        parts,
    })
}

/// How the quotient by a congruence filter `H` of a gluing arises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImageCase {
    /// `H` meets `I`: the quotient is `C/H`.
    Upper,
    /// `H` misses `I` but meets `B⁻`: the quotient is `B/H`.
    Lower,
    /// Otherwise the quotient glues `B/H` and `C/H`.
    Glued,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageReport {
    pub case: ImageCase,
    pub quotient_size: usize,
    /// For the first two cases: whether the quotient is isomorphic to the
    /// stated one. For the last: whether its size is `|B/H| + |C/H|` minus
    /// the classes of the shared part.
    pub confirmed: bool,
}

/// Classifies and checks the quotient of a gluing by `h`.
pub fn homomorphic_image_case(v: &GluingView, h: ElemSet) -> Result<ImageReport> {
    let d = v.algebra();
    let (q, _) = homomorphic_image(d, h)?;
    let g = v.glued;
    let hb: ElemSet = (0..v.lower.n())
        .filter(|&x| h.contains(g.lower_map[x]))
        .collect();
    let hc: ElemSet = (0..v.upper.n())
        .filter(|&x| h.contains(g.upper_map[x]))
        .collect();
    let case = if !h.intersection(&g.provenance.ideal).is_empty() {
        ImageCase::Upper
    } else if !h.intersection(&g.provenance.lower_rest).is_empty() {
        ImageCase::Lower
    } else {
        ImageCase::Glued
    };
    let confirmed = match case {
        ImageCase::Upper => are_isomorphic(&q, &homomorphic_image(v.upper, hc)?.0).is_some(),
        ImageCase::Lower => are_isomorphic(&q, &homomorphic_image(v.lower, hb)?.0).is_some(),
        ImageCase::Glued => {
            let (qb, mb) = homomorphic_image(v.lower, hb)?;
            let (qc, _) = homomorphic_image(v.upper, hc)?;
            let shared: ElemSet = g.provenance.filter.union(&g.provenance.ideal);
            let shared_classes: ElemSet = (0..v.lower.n())
                .filter(|&x| shared.contains(g.lower_map[x]))
                .map(|x| mb.apply(x))
                .collect();
            q.n() == qb.n() + qc.n() - shared_classes.len()
        }
    };
    Ok(ImageReport {
        case,
        quotient_size: q.n(),
        confirmed,
    })
}

/// The four shapes a subalgebra of a gluing can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubalgebraCase {
    /// Contained in the upper part.
    OfUpper,
    /// Contained in the lower part.
    OfLower,
    /// Meets both private parts and contains an upper non-divisor.
    GluingWithNonDivisor,
    /// Meets both private parts; its private upper elements are divisors.
    GluingOfDivisors,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubalgebraReport {
    pub case: SubalgebraCase,
    /// Side conditions of the case and whether each holds.
    pub conditions: Vec<(String, bool)>,
}

impl SubalgebraReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|(_, ok)| *ok)
    }
}

/// Decides the case of a subalgebra `s` (glued indices) and checks the
/// closure conditions that come with it.
pub fn classify_subalgebra(v: &GluingView, s: ElemSet) -> Result<SubalgebraReport> {
    let d = v.algebra();
    if !is_closed(d, s) {
        return Err(Error::Precondition(
            "set is not a subalgebra of the gluing".into(),
        ));
    }
    let g = v.glued;
    let sb: ElemSet = (0..v.lower.n())
        .filter(|&x| s.contains(g.lower_map[x]))
        .collect();
    let sc: ElemSet = (0..v.upper.n())
        .filter(|&x| s.contains(g.upper_map[x]))
        .collect();
    let meets_lower = !s.intersection(&g.provenance.lower_rest).is_empty();
    let meets_upper = !s.intersection(&g.provenance.upper_rest).is_empty();
    let ops = v.divisors();
    let divisor_special = sc.iter().all(|c| {
        ops.ell[c].is_none_or(|l| !ops.left_divisors.contains(c) || sc.contains(l))
            && ops.r[c].is_none_or(|r| !ops.right_divisors.contains(c) || sc.contains(r))
    });
    let mut conditions = Vec::new();
    let case = if !meets_lower {
        conditions.push(("closed in upper".to_string(), is_closed(v.upper, sc)));
        SubalgebraCase::OfUpper
    } else if !meets_upper {
        conditions.push(("closed in lower".to_string(), is_closed(v.lower, sb)));
        SubalgebraCase::OfLower
    } else {
        let f = v.filter_lower();
        let cls = sigma_gamma(v.lower, f)?;
        let lower_private = sb.difference(&f).difference(&v.ideal_lower());
        let sigma_special = lower_private
            .iter()
            .all(|x| cls.sigma[x].is_none_or(|y| sb.contains(y)));
        let gamma_special = lower_private
            .iter()
            .all(|x| cls.gamma[x].is_none_or(|y| sb.contains(y)));
        let has_non_divisor = sc
            .intersection(&v.upper_rest())
            .iter()
            .any(|c| !ops.is_divisor(c));
        conditions.push(("closed in upper".to_string(), is_closed(v.upper, sc)));
        conditions.push(("divisor-special".to_string(), divisor_special));
        conditions.push(("sigma-special".to_string(), sigma_special));
        if has_non_divisor {
            conditions.push(("gamma-special".to_string(), gamma_special));
            SubalgebraCase::GluingWithNonDivisor
        } else {
            SubalgebraCase::GluingOfDivisors
        }
    };
    Ok(SubalgebraReport { case, conditions })
}

/// All subalgebras (unit included, zero not required) of an algebra with at
/// most 16 elements, by brute force over subsets.
pub fn all_subalgebras(a: &FiniteRL) -> Vec<ElemSet> {
    assert!(a.n() <= 16, "subset enumeration is limited to 16 elements");
    let u = a.unit();
    let others: Vec<usize> = a.elements().filter(|&x| x != u).collect();
    (0u32..1 << others.len())
        .map(|mask| {
            let mut s = ElemSet::singleton(u);
            for (k, &x) in others.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    s.insert(x);
                }
            }
            s
        })
        .filter(|s| is_closed(a, *s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::{boolean, boolean_square, godel, lukasiewicz};
    use crate::gluing::{f_gluing, fi_gluing, one_sum};
    use crate::quadruple::check_quadruple;
    use crate::rotations::{identity_nucleus, rotation_quadruple};

    fn view_of<'a>(g: &'a Glued, b: &'a FiniteRL, c: &'a FiniteRL) -> GluingView<'a> {
        GluingView::new(g, b, c).unwrap()
    }

    #[test]
    fn one_sum_of_two_chains_has_a_three_chain_of_filters() {
        let b = boolean();
        let g = one_sum(&b, &b).unwrap();
        let v = view_of(&g, &b, &b);
        let rep = filter_lattice_of_gluing(&v);
        assert_eq!(rep.case, FilterCase::OrdinalSum);
        assert_eq!(rep.actual_size, 3);
        assert!(rep.matches);
    }

    #[test]
    fn godel_filters_over_a_shared_filter() {
        let (b, c) = (godel(4), godel(3));
        let g = f_gluing(&b, &c, &[(2, 1), (3, 2)]).unwrap();
        let v = view_of(&g, &b, &c);
        let rep = filter_lattice_of_gluing(&v);
        assert_eq!(rep.actual_size, 5);
        assert!(rep.matches, "{rep:?}");
    }

    #[test]
    fn commutative_parts_give_commutative_gluings() {
        let (b, c) = (boolean_square(), lukasiewicz(3));
        let g = one_sum(&b, &c).unwrap();
        let rep = preservation_suite(&view_of(&g, &b, &c), &[]).unwrap();
        assert!(rep.row("commutative").unwrap().glued);
        assert!(rep.all_agree(), "{rep:?}");
    }

    #[test]
    fn one_sum_over_a_non_chain_is_not_semilinear() {
        let (b, c) = (boolean_square(), boolean());
        let g = one_sum(&b, &c).unwrap();
        let rep = preservation_suite(&view_of(&g, &b, &c), &[]).unwrap();
        let row = rep.row("semilinear").unwrap();
        assert!(!row.glued);
        assert_eq!(row.predicted, Some(false));
        assert!(!is_semilinear_by_filters(&g.algebra));
        assert!(is_semilinear_by_filters(&b));
    }

    #[test]
    fn rotation_gluing_has_an_ideal_divisor() {
        let a = boolean();
        let q = rotation_quadruple(&a, &identity_nucleus(&a), 3).unwrap();
        let cq = check_quadruple(&q, true).unwrap().compatible().unwrap();
        let g = fi_gluing(&cq).unwrap();
        let v = view_of(&g, &q.lower, &q.upper);
        let rep = preservation_suite(&v, &[]).unwrap();
        assert!(rep.all_agree(), "{rep:?}");
        let div = rep.row("divisible").unwrap();
        if !div.glued {
            let w = rep.divisibility_witness.clone().expect("witness");
            assert_ne!(w.product, w.meet);
        }
    }

    #[test]
    fn sdi_examples() {
        assert!(!is_subdirectly_irreducible(&boolean_square()));
        assert!(is_subdirectly_irreducible(&lukasiewicz(4)));
        assert!(is_subdirectly_irreducible(&godel(4)));
        let (b, c) = (boolean_square(), godel(3));
        let g = one_sum(&b, &c).unwrap();
        let rep = sdi_of_gluing(&view_of(&g, &b, &c)).unwrap();
        assert!(rep.glued && rep.consistent());
    }

    #[test]
    fn whole_upper_part_is_case_one() {
        let (b, c) = (boolean(), lukasiewicz(3));
        let g = one_sum(&b, &c).unwrap();
        let v = view_of(&g, &b, &c);
        let s: ElemSet = g.upper_map.iter().copied().collect();
        let rep = classify_subalgebra(&v, s).unwrap();
        assert_eq!(rep.case, SubalgebraCase::OfUpper);
        assert!(rep.all_hold());
    }

    #[test]
    fn every_subalgebra_of_small_one_sums_is_classified() {
        let algebras = [boolean(), godel(3), lukasiewicz(3), boolean_square()];
        for b in &algebras {
            for c in &algebras {
                let g = one_sum(b, c).unwrap();
                let v = view_of(&g, b, c);
                for s in all_subalgebras(&g.algebra) {
                    let rep = classify_subalgebra(&v, s).unwrap();
                    assert!(rep.all_hold(), "{rep:?} for {s:?}");
                }
                for h in all_congruence_filters(&g.algebra).filters {
                    assert!(homomorphic_image_case(&v, h).unwrap().confirmed);
                }
            }
        }
    }
}
