// Build a three-element Łukasiewicz chain, check the axioms and write it
// in the text format.

use resglue::algebra::catalog::lukasiewicz;
use resglue::algebra::io::{from_text, to_text};
use resglue::algebra::verify_axioms;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let l3 = lukasiewicz(3);
    let violations = verify_axioms(&l3);
    assert!(violations.is_empty());
    let text = to_text(&l3);
    let back = from_text(&text)?;
    assert!(back.same_tables(&l3));
    println!("{text}");
    println!("the middle element squares to {}", l3.label(l3.mul(1, 1)));
    Ok(())
}

fn main() {
    run_example().unwrap();
}
