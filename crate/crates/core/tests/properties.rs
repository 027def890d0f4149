use proptest::prelude::*;
use resglue::algebra::io::{from_text, to_text};
use resglue::algebra::morphism::{are_isomorphic, find_embeddings, is_embedding};
use resglue::algebra::sub::closure;
use resglue::algebra::{is_valid, FiniteRL};
use resglue::corpus::small_bounded;
use resglue::enumerate::{gl2_chains, irls};
use resglue::filters::{all_congruence_filters, check_lower_pair, PairKind};
use resglue::gl2::{gl2_generate, gl2_structure};
use resglue::gluing::{check_embeddings, one_sum};
use resglue::partial::{
    extract_lower_triple, extract_upper_triple, fit_two_element, fit_zero, validate_partial,
};
use resglue::rotations::{all_nuclei, check_nucleus, n_rotation};
use resglue::set::ElemSet;
use std::sync::OnceLock;

fn algebras() -> &'static [FiniteRL] {
    static CELL: OnceLock<Vec<FiniteRL>> = OnceLock::new();
    CELL.get_or_init(|| small_bounded(5))
}

fn chains() -> &'static [FiniteRL] {
    static CELL: OnceLock<Vec<FiniteRL>> = OnceLock::new();
    CELL.get_or_init(|| (2..=8).flat_map(gl2_chains).collect())
}

fn algebra() -> impl Strategy<Value = &'static FiniteRL> {
    (0..algebras().len()).prop_map(|i| &algebras()[i])
}

fn subset(a: &FiniteRL, bits: u128) -> ElemSet {
    ElemSet::from_bits(bits & ((1u128 << a.n()) - 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_format_round_trips_bit_exactly(a in algebra()) {
        let text = to_text(a);
        let back = from_text(&text).unwrap();
        prop_assert_eq!(to_text(&back), text);
        prop_assert!(back.same_tables(a));
    }

    #[test]
    fn closure_is_extensive_idempotent_and_monotone(a in algebra(), x in any::<u128>(), y in any::<u128>()) {
        let (x, y) = (subset(a, x), subset(a, y));
        let cx = closure(a, x, true);
        prop_assert!(x.is_subset(&cx));
        prop_assert_eq!(closure(a, cx, true), cx);
        prop_assert!(cx.is_subset(&closure(a, x.union(&y), true)));
    }

    #[test]
    fn one_sums_are_valid_and_embed_their_parts(b in algebra(), c in algebra()) {
        let g = one_sum(b, c).unwrap();
        prop_assert!(is_valid(&g.algebra));
        prop_assert!(check_embeddings(&g, b, c).is_empty());
        prop_assert_eq!(g.algebra.n(), b.n() + c.n() - 1);
    }

    #[test]
    fn found_embeddings_satisfy_the_contract(b in algebra(), c in algebra()) {
        // the bottom of a 1-sum comes from its lower part
        prop_assume!(b.n() > 1);
        let g = one_sum(b, c).unwrap();
        let found = find_embeddings(b, &g.algebra);
        // joins reaching 1 in B land on the bottom of C, so B need not embed
        if is_embedding(b, &g.algebra, &g.lower_map) {
            prop_assert!(found.iter().any(|m| m.map == g.lower_map));
        }
        for m in found {
            prop_assert!(m.is_injective() && is_embedding(b, &g.algebra, &m.map));
        }
    }

    #[test]
    fn lower_triples_fit_back(b in algebra(), pick in any::<usize>()) {
        let filters: Vec<ElemSet> = all_congruence_filters(b)
            .filters
            .into_iter()
            .filter(|f| check_lower_pair(b, *f).is_ok_and(|r| r.kind == PairKind::Lower))
            .collect();
        prop_assume!(!filters.is_empty());
        let t = extract_lower_triple(b, filters[pick % filters.len()]).unwrap().triple;
        prop_assert!(validate_partial(&t.k).is_valid());
        let (g, f) = fit_two_element(&t).unwrap();
        prop_assert!(is_valid(&g));
        prop_assert_eq!(extract_lower_triple(&g, f).unwrap().triple, t);
    }

    #[test]
    fn upper_triples_fit_back(c in algebra(), bits in any::<u128>()) {
        let Ok(t) = extract_upper_triple(c, subset(c, bits)) else { return Ok(()) };
        prop_assert!(validate_partial(&t.triple.l).is_valid());
        let (d, z) = fit_zero(&t.triple).unwrap();
        prop_assert!(is_valid(&d));
        prop_assert_eq!(extract_upper_triple(&d, z).unwrap().triple, t.triple);
    }

    #[test]
    fn rotations_are_valid(a in algebra(), pick in any::<usize>(), n in 3usize..6) {
        let a = a.clone().with_zero(None);
        let nuclei = all_nuclei(&a);
        let delta = &nuclei[pick % nuclei.len()];
        prop_assert!(check_nucleus(&a, delta).is_ok());
        let rot = n_rotation(&a, delta, n).unwrap();
        prop_assert!(is_valid(&rot.algebra));
    }

    #[test]
    fn generated_subalgebras_follow_the_closed_form(i in 0..chains().len(), bits in any::<u128>()) {
        let a = &chains()[i];
        let g = gl2_structure(a).unwrap();
        let gen = gl2_generate(&g, subset(a, bits)).unwrap();
        prop_assert!(gen.agrees());
        prop_assert!(gen.within_bound());
    }
}

#[test]
fn enumeration_is_free_of_duplicates() {
    for n in 1..=4 {
        let found = irls(n, false);
        for (i, x) in found.iter().enumerate() {
            assert!(
                found[i + 1..]
                    .iter()
                    .all(|y| are_isomorphic(x, y).is_none()),
                "duplicate of algebra {i} at size {n}"
            );
        }
    }
}
