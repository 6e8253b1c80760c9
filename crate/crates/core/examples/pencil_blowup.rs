//! Turn a Lefschetz pencil into a fibration by blowing up its base points and
//! check that only the canonical class survives the constraints.

use donaldson::cli::pencil_base;
use donaldson::lattice::H2Class;
use donaldson::lefschetz::{nonminimal_uniqueness, pencil_to_fibration};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = pencil_base();
    let omega = H2Class::basis(x.rank(), 0);
    for k in 1..=4 {
        match pencil_to_fibration(&x, &omega, k) {
            Ok(p) => {
                let f = &p.fibration;
                let l = f.lattice();
                let kt = f.manifold.canonical.as_ref().unwrap();
                println!(
                    "k = {k}: genus {}, {} base points, fiber^2 = {}, K.fiber = {}",
                    f.genus,
                    p.base_points,
                    l.square(&f.fiber)?,
                    l.pairing(kt, &f.fiber)?
                );
            }
            Err(e) => println!("k = {k}: {e}"),
        }
    }

    let f = pencil_to_fibration(&x, &omega, 3)?.fibration;
    let kx = f.manifold.canonical.clone().unwrap();
    println!("\nK_X:         {:?}", nonminimal_uniqueness(&f, &kx)?);
    println!("K_X - fiber: {:?}", nonminimal_uniqueness(&f, &(&kx - &f.fiber))?);
    Ok(())
}
