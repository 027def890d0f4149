// The three total gluings: 1-sum, gluing over a shared filter and gluing
// over a filter and an ideal.

use resglue::algebra::catalog::{boolean, chain, godel, lukasiewicz};
use resglue::algebra::is_valid;
use resglue::algebra::morphism::are_isomorphic;
use resglue::gluing::{check_embeddings, f_gluing, fi_gluing, one_sum};
use resglue::quadruple::{check_quadruple, QuadrupleInput};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let two = boolean();
    let sum = one_sum(&two, &two)?;
    assert!(are_isomorphic(&sum.algebra, &godel(3)).is_some());
    println!("2 ⊕₁ 2 has {} elements", sum.algebra.n());

    // share the top two elements of two Gödel chains
    let (b, c) = (godel(4), godel(3));
    let shared = f_gluing(&b, &c, &[(2, 1), (3, 2)])?;
    assert!(is_valid(&shared.algebra) && check_embeddings(&shared, &b, &c).is_empty());
    println!(
        "G4 and G3 over a 2-element filter: {} elements",
        shared.algebra.n()
    );

    // share a two-element filter and the bottom
    let b = chain(4, |x, y| match (x.min(y), x.max(y)) {
        (m, 3) => m,
        (2, 2) => 2,
        _ => 0,
    });
    let c = one_sum(&lukasiewicz(3), &two)?.algebra;
    let q = QuadrupleInput::new(b, c, &[(2, 2), (3, 3)], &[(0, 0)])?;
    let verdict = check_quadruple(&q, true)?;
    let failed = verdict.report().failures.len();
    match verdict.compatible() {
        Some(cq) => println!(
            "filter-ideal gluing: {} elements",
            fi_gluing(&cq)?.algebra.n()
        ),
        None => println!("incompatible: {failed} conditions fail"),
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
