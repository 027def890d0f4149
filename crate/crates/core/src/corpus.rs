//! Deterministic corpora of gluing inputs built from small enumerated
//! algebras: 1-sums, gluings over shared filters, filter–ideal gluings and
//! rotation decompositions.

use crate::algebra::morphism::are_isomorphic;
use crate::algebra::sub::induced;
use crate::algebra::FiniteRL;
use crate::enumerate::gl2_chains;
use crate::enumerate::irls;
use crate::error::Result;
use crate::filters::{all_congruence_filters, check_lower_pair, PairKind};
use crate::gl2::{fold_partial_gluings, gl2_structure};
use crate::gluing::{f_gluing, fi_gluing, one_sum, partial_gluing_tau, Glued, PartialGlued};
use crate::partial::{extract_lower_triple, extract_upper_triple};
use crate::quadruple::{check_quadruple, QuadrupleInput};
use crate::rotations::{all_nuclei, rotation_quadruple};
use crate::set::ElemSet;
use crate::varieties::GluingView;

/// A gluing with the two algebras it was built from.
#[derive(Debug, Clone)]
pub struct GluingCase {
    pub label: String,
    pub lower: FiniteRL,
    pub upper: FiniteRL,
    pub glued: Glued,
}

impl GluingCase {
    pub fn view(&self) -> GluingView<'_> {
        GluingView::new(&self.glued, &self.lower, &self.upper).expect("corpus gluings are total")
    }
}

/// IRLs with `1..=max` elements, numbered in enumeration order.
pub fn small_irls(max: usize) -> Vec<FiniteRL> {
    (1..=max).flat_map(|n| irls(n, false)).collect()
}

/// Bounded copies (zero at the bottom) of [`small_irls`].
pub fn small_bounded(max: usize) -> Vec<FiniteRL> {
    small_irls(max)
        .into_iter()
        .map(|a| a.with_zero(Some(0)))
        .collect()
}

/// All 1-sums of pairs of algebras with at most `max` elements.
pub fn one_sum_cases(max: usize) -> Vec<GluingCase> {
    let algs = small_bounded(max);
    let mut out = Vec::new();
    for (i, b) in algs.iter().enumerate() {
        for (j, c) in algs.iter().enumerate() {
            let glued = one_sum(b, c).expect("1-sums always exist");
            out.push(GluingCase {
                label: format!("one-sum {i}+{j}"),
                lower: b.clone(),
                upper: c.clone(),
                glued,
            });
        }
    }
    out
}

/// Proper nontrivial congruence filters `F` of `b` such that `(b, F)` is a
/// lower-compatible pair.
fn lower_filters(b: &FiniteRL) -> Vec<ElemSet> {
    all_congruence_filters(b)
        .filters
        .into_iter()
        .filter(|f| f.len() > 1 && f.len() < b.n())
        .filter(|f| check_lower_pair(b, *f).is_ok_and(|r| r.kind == PairKind::Lower))
        .collect()
}

/// Congruence filters of `c` lying strictly above the rest of `c`.
fn top_filters(c: &FiniteRL) -> Vec<ElemSet> {
    all_congruence_filters(c)
        .filters
        .into_iter()
        .filter(|g| {
            let rest = c.all().difference(g);
            g.iter().all(|x| rest.iter().all(|y| c.lt(y, x)))
        })
        .collect()
}

/// Pairs matching `f ⊆ b` to `g ⊆ c` through an isomorphism of the induced
/// algebras.
fn matching_pairs(
    b: &FiniteRL,
    f: ElemSet,
    c: &FiniteRL,
    g: ElemSet,
) -> Option<Vec<(usize, usize)>> {
    if f.len() != g.len() {
        return None;
    }
    let (fa, fi) = induced(b, f).ok()?;
    let (ga, gi) = induced(c, g).ok()?;
    let iso = are_isomorphic(&fa, &ga)?;
    Some(
        (0..fa.n())
            .map(|k| (fi.apply(k), gi.apply(iso.apply(k))))
            .collect(),
    )
}

/// Gluings over shared proper filters, lower parts with at most
/// `max_lower` elements and upper parts with at most `max_upper`.
pub fn filter_cases(max_lower: usize, max_upper: usize, limit: usize) -> Vec<GluingCase> {
    let lowers = small_bounded(max_lower);
    let uppers = small_bounded(max_upper);
    let upper_filters: Vec<Vec<ElemSet>> = uppers.iter().map(top_filters).collect();
    let mut out = Vec::new();
    for (i, b) in lowers.iter().enumerate() {
        for f in lower_filters(b) {
            for (j, c) in uppers.iter().enumerate() {
                for &g in &upper_filters[j] {
                    if g.len() == c.n() {
                        continue;
                    }
                    let Some(pairs) = matching_pairs(b, f, c, g) else {
                        continue;
                    };
                    let Ok(glued) = f_gluing(b, c, &pairs) else {
                        continue;
                    };
                    out.push(GluingCase {
                        label: format!("filter {i}/{:#x} + {j}", f.bits()),
                        lower: b.clone(),
                        upper: c.clone(),
                        glued,
                    });
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// Filter–ideal gluings sharing a proper filter and the bottom elements.
pub fn filter_ideal_cases(max_lower: usize, max_upper: usize, limit: usize) -> Vec<GluingCase> {
    let lowers = small_bounded(max_lower);
    let uppers = small_bounded(max_upper);
    let mut out = Vec::new();
    for (i, b) in lowers.iter().enumerate() {
        if b.n() < 3 {
            continue;
        }
        for f in lower_filters(b) {
            for (j, c) in uppers.iter().enumerate() {
                for g in top_filters(c) {
                    if g.len() + 1 >= c.n() {
                        continue;
                    }
                    let Some(pairs) = matching_pairs(b, f, c, g) else {
                        continue;
                    };
                    let Ok(q) = QuadrupleInput::new(b.clone(), c.clone(), &pairs, &[(0, 0)]) else {
                        continue;
                    };
                    let Ok(verdict) = check_quadruple(&q, true) else {
                        continue;
                    };
                    let Some(cq) = verdict.compatible() else {
                        continue;
                    };
                    let Ok(glued) = fi_gluing(&cq) else { continue };
                    out.push(GluingCase {
                        label: format!("filter-ideal {i}/{:#x} + {j}", f.bits()),
                        lower: b.clone(),
                        upper: c.clone(),
                        glued,
                    });
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// Rotation decompositions `(A^δ, A, Ł_n ⊕₁ A, {0})` for every algebra
/// with at most `max` elements, every nucleus and the given `n`.
pub fn rotation_cases(max: usize, ns: &[usize]) -> Vec<GluingCase> {
    let mut out = Vec::new();
    for (i, a) in small_irls(max).iter().enumerate() {
        for (k, delta) in all_nuclei(a).iter().enumerate() {
            for &n in ns {
                let q = rotation_quadruple(a, delta, n).expect("rotation quadruple");
                let cq = check_quadruple(&q, true)
                    .expect("rotation quadruple is well formed")
                    .compatible()
                    .expect("rotation quadruple is compatible");
                let glued = fi_gluing(&cq).expect("rotation gluing");
                out.push(GluingCase {
                    label: format!("rotation {i} nucleus {k} n={n}"),
                    lower: q.lower.clone(),
                    upper: q.upper.clone(),
                    glued,
                });
            }
        }
    }
    out
}

/// A partial gluing of two extracted triples.
#[derive(Debug, Clone)]
pub struct TauCase {
    pub label: String,
    pub lower: FiniteRL,
    pub upper: FiniteRL,
    pub glued: PartialGlued,
}

/// Partial gluings of the lower triple of `(b, F)` with the upper triple of
/// `(c, I)`, over lower-compatible filters (including `{1}`) and every
/// subset `I` of `c` that extracts. Inputs violating the assumptions of the
/// construction are skipped.
pub fn tau_cases(max_lower: usize, max_upper: usize, limit: usize) -> Vec<TauCase> {
    let lowers = small_bounded(max_lower);
    let uppers = small_bounded(max_upper);
    let mut out = Vec::new();
    for (i, b) in lowers.iter().enumerate() {
        let mut filters = vec![ElemSet::singleton(b.unit())];
        filters.extend(lower_filters(b));
        for f in filters {
            let Ok(lower) = extract_lower_triple(b, f) else {
                continue;
            };
            for (j, c) in uppers.iter().enumerate() {
                for bits in 0u128..1 << c.n() {
                    let Ok(upper) = extract_upper_triple(c, ElemSet::from_bits(bits)) else {
                        continue;
                    };
                    let Ok(glued) = partial_gluing_tau(&lower.triple, None, &upper.triple) else {
                        continue;
                    };
                    out.push(TauCase {
                        label: format!("tau {i}/{:#x} + {j}/{bits:#x}", f.bits()),
                        lower: b.clone(),
                        upper: c.clone(),
                        glued,
                    });
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// Iterated gluings: GL2 chains with at most `max` elements folded from
/// their blocks, and 1-sums of three algebras with at most 3 elements.
pub fn iterated_cases(max: usize) -> Result<Vec<(String, FiniteRL)>> {
    let mut out = Vec::new();
    for n in 2..=max {
        for a in gl2_chains(n) {
            let g = gl2_structure(&a)?;
            let folded = fold_partial_gluings(&g.block_algebras())?;
            out.push((format!("gl2 {:?}", g.block_sizes()), folded));
        }
    }
    let parts = small_bounded(3);
    for (i, x) in parts.iter().enumerate() {
        for (j, y) in parts.iter().enumerate() {
            let xy = one_sum(x, y)?.algebra;
            for (k, z) in parts.iter().enumerate() {
                out.push((format!("one-sum {i}+{j}+{k}"), one_sum(&xy, z)?.algebra));
            }
        }
    }
    Ok(out)
}

/// The standard mixed corpus used by the structure sweeps.
pub fn standard_corpus() -> Vec<GluingCase> {
    let mut out = one_sum_cases(4);
    out.extend(filter_cases(5, 5, 150));
    out.extend(filter_ideal_cases(5, 5, 150));
    out.extend(rotation_cases(3, &[3, 4]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_has_every_kind() {
        let c = standard_corpus();
        for kind in ["one-sum", "filter ", "filter-ideal", "rotation"] {
            let k = c.iter().filter(|g| g.label.starts_with(kind)).count();
            assert!(k > 0, "no {kind} cases");
        }
        assert!(c.len() >= 200);
    }

    #[test]
    fn tau_and_iterated_cases_exist() {
        assert!(!tau_cases(3, 3, 50).is_empty());
        assert!(iterated_cases(4).unwrap().len() > 27);
    }
}
