//! Which classes pairing maximally with the fiber can be basic classes:
//! decompose K_X - K against the fiber and reducible-fiber components, bound
//! K_X^2 - K^2, and run the uniqueness tests.

use donaldson::lefschetz::{
    decompose_canonical_difference, model_fibration, normalize_and_bound, section_pairing_check, DecompositionResult,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let genera = [1, 2];
    let f = model_fibration(3, &genera)?;
    println!("model fibration, genus {}, lattice rank {}", f.genus, f.lattice().rank());
    println!("K_X = {:?}", f.manifold.canonical.as_ref().unwrap());

    for (n, c) in [(0, vec![0, 0]), (1, vec![0, 0]), (0, vec![1, 0]), (0, vec![-1, 2]), (2, vec![-1, -1])] {
        let k = DecompositionResult::class_from(&f, n, &c)?;
        let dec = decompose_canonical_difference(&f, &k)?;
        let sections = section_pairing_check(&f, &k)?;
        match normalize_and_bound(&f, &dec, &genera) {
            Ok(b) => println!(
                "n = {n}, c = {c:?}: normalized n = {}, c = {:?}, K_X^2 - K^2 = {}, trivial = {}, sections ok = {sections}",
                b.n, b.c, b.kx_sq_minus_k_sq, b.equality
            ),
            Err(e) => println!("n = {n}, c = {c:?}: {e}"),
        }
    }
    Ok(())
}
