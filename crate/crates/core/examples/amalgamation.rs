// Deciding amalgamation of GL2 chains, confirming by search, and lifting
// an amalgam to rotations.

use resglue::algebra::catalog::{boolean, godel, lukasiewicz};
use resglue::amalgam::{brute_force_amalgam, VFormation};
use resglue::corpus::small_bounded;
use resglue::gl2::{brute_force_gl2_amalgam, failing_triple, gl2_amalgam_decide, AmalgamDecision};
use resglue::rotations::rotation_amalgam_transfer_check;
use resglue::terms::parse_term;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let v = failing_triple();
    match gl2_amalgam_decide(&v)? {
        AmalgamDecision::Impossible {
            witness,
            obstruction,
        } => {
            println!(
                "no amalgam: witness {} ({obstruction:?})",
                v.a.label(witness)
            );
        }
        AmalgamDecision::Amalgam { amalgam, .. } => {
            println!("amalgam with {} elements", amalgam.d.n())
        }
    }
    assert!(brute_force_gl2_amalgam(&v, 7).is_none());

    let v = VFormation::with_first_embeddings(boolean(), godel(3), lukasiewicz(3))?;
    let candidates = small_bounded(5);
    let m = brute_force_amalgam(&v, &candidates).ok_or("no amalgam among small algebras")?;
    println!("G3 and Ł3 over 2 amalgamate in {} elements", m.d.n());
    let rep = rotation_amalgam_transfer_check(&v, &parse_term("x")?.0, 3, &m)?;
    assert!(rep.holds());
    println!(
        "lifted to 3-rotations, {} embeddings checked",
        rep.embeddings_checked
    );
    Ok(())
}

fn main() {
    run_example().unwrap();
}
