// Generalized rotations and their description as a filter-ideal gluing.

use resglue::algebra::catalog::lukasiewicz;
use resglue::algebra::morphism::are_isomorphic;
use resglue::gluing::fi_gluing;
use resglue::quadruple::check_quadruple;
use resglue::rotations::{
    all_nuclei, generalized_rotation, n_rotation, rotation_quadruple, term_nucleus,
};
use resglue::terms::parse_term;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = lukasiewicz(3).with_zero(None);
    let square = term_nucleus(&a, &parse_term("x | x^2")?.0)?;
    println!("{} nuclei on Ł3 without its constant", all_nuclei(&a).len());
    let disconnected = generalized_rotation(&a, &square)?;
    println!("A^δ has {} elements", disconnected.algebra.n());
    for n in 3..=5 {
        let rot = n_rotation(&a, &square, n)?;
        let q = rotation_quadruple(&a, &square, n)?;
        let cq = check_quadruple(&q, true)?
            .compatible()
            .ok_or("rotation quadruple incompatible")?;
        let glued = fi_gluing(&cq)?;
        assert!(are_isomorphic(&rot.algebra, &glued.algebra).is_some());
        println!(
            "n = {n}: {} elements, isomorphic to its gluing",
            rot.algebra.n()
        );
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
