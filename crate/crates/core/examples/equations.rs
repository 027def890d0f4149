// Evaluating equations and comparing properties of a gluing with the
// properties of its parts.

use resglue::algebra::catalog::{boolean_square, lukasiewicz};
use resglue::gluing::one_sum;
use resglue::terms::{eval_equation, named, parse_equation_file};
use resglue::varieties::{preservation_suite, GluingView};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let l4 = lukasiewicz(4);
    for eq in parse_equation_file("x * y = y * x\nx = x * x\nx & y = x * (x \\ y)\n")? {
        match eval_equation(&l4, &eq)? {
            None => println!("holds: {eq}"),
            Some(c) => println!("fails: {eq} at {:?}", c.assignment),
        }
    }
    assert!(named("div")?
        .iter()
        .all(|e| eval_equation(&l4, e).is_ok_and(|c| c.is_none())));

    let (b, c) = (boolean_square(), l4);
    let glued = one_sum(&b, &c)?;
    let rep = preservation_suite(&GluingView::new(&glued, &b, &c)?, &[])?;
    for row in &rep.rows {
        println!(
            "{:<14} glued {:<5} predicted {:?}",
            row.property, row.glued, row.predicted
        );
    }
    assert!(rep.all_agree());
    Ok(())
}

fn main() {
    run_example().unwrap();
}
