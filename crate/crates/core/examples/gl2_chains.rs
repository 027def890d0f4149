// GL2 chains: block decomposition, reconstruction from simple blocks and
// generated subalgebras.

use resglue::enumerate::gl2_chains;
use resglue::gl2::{gl2_generate, iterated_partial_gluing, recognize_gl2};
use resglue::set::ElemSet;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let chains = gl2_chains(6);
    println!("{} GL2 chains with 6 elements", chains.len());
    let g = recognize_gl2(&chains[chains.len() / 2])?;
    println!("blocks {:?}, Gödel: {}", g.block_sizes(), g.is_godel());
    let rebuilt = iterated_partial_gluing(&g.block_algebras())?;
    println!("rebuilt from blocks: {} elements", rebuilt.n());

    let seed = ElemSet::singleton(1);
    let gen = gl2_generate(&g, seed)?;
    assert!(gen.agrees() && gen.within_bound());
    println!(
        "{{1}} generates {} elements ({:?} case)",
        gen.fixpoint.len(),
        gen.case
    );
    Ok(())
}

fn main() {
    run_example().unwrap();
}
