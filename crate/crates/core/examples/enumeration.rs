// Counting small algebras up to isomorphism.

use resglue::enumerate::{enumerate, AlgebraClass};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for class in [AlgebraClass::Irl, AlgebraClass::Flw, AlgebraClass::Gl2Chain] {
        let found = enumerate(class, 4);
        let mut counts = [0usize; 5];
        for a in &found {
            counts[a.n()] += 1;
        }
        println!("{class:?}: {:?}", &counts[1..]);
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
