// Cutting algebras into lower and upper triples, fitting them back and
// gluing two triples partially.

use resglue::algebra::catalog::{boolean, godel, lukasiewicz};
use resglue::gluing::{one_sum, partial_gluing_tau};
use resglue::partial::{
    extract_lower_triple, extract_upper_triple, fit_two_element, fit_zero, validate_partial,
};
use resglue::set::ElemSet;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g4 = godel(4);
    let lower = extract_lower_triple(&g4, [2, 3].into_iter().collect())?;
    let (fitted, filter) = fit_two_element(&lower.triple)?;
    assert_eq!(extract_lower_triple(&fitted, filter)?.triple, lower.triple);
    println!(
        "lower triple of G4 over {{2, 1}} has {} elements",
        lower.triple.k.n()
    );

    let l3 = lukasiewicz(3);
    let upper = extract_upper_triple(&l3, ElemSet::singleton(0))?;
    let (c, _) = fit_zero(&upper.triple)?;
    assert!(c.same_tables(&l3));
    println!("{}", upper.triple.l.to_text());

    let two = boolean();
    let t = extract_lower_triple(&two, ElemSet::singleton(1))?.triple;
    let u = extract_upper_triple(&godel(3), ElemSet::singleton(0))?.triple;
    let glued = partial_gluing_tau(&t, None, &u)?;
    assert!(validate_partial(&glued.algebra).is_valid());
    assert!(glued.to_total()?.same_tables(&one_sum(&two, &two)?.algebra));
    println!("partial gluing is total: {}", glued.total);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
