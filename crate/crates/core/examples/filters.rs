// Congruence filters, compatible pairs and the filter lattice of a gluing.

use resglue::algebra::catalog::{boolean_square, godel};
use resglue::filters::{all_congruence_filters, check_lower_pair, check_upper_pair};
use resglue::gluing::one_sum;
use resglue::set::ElemSet;
use resglue::varieties::{filter_lattice_of_gluing, is_subdirectly_irreducible, GluingView};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g4 = godel(4);
    let lattice = all_congruence_filters(&g4);
    println!("G4 has {} congruence filters", lattice.len());
    let pair = check_lower_pair(&g4, [2, 3].into_iter().collect())?;
    println!("({{2, 1}}) is a {:?} pair", pair.kind);
    let upper = check_upper_pair(&g4, ElemSet::singleton(0), true)?;
    println!("{{0}} compatible as an ideal: {}", upper.compatible);

    let square = boolean_square();
    assert!(!is_subdirectly_irreducible(&square));
    let glued = one_sum(&square, &g4)?;
    let view = GluingView::new(&glued, &square, &g4)?;
    let rep = filter_lattice_of_gluing(&view);
    assert!(rep.matches);
    println!(
        "{:?}: predicted {} filters, found {}",
        rep.case, rep.predicted_size, rep.actual_size
    );
    Ok(())
}

fn main() {
    run_example().unwrap();
}
