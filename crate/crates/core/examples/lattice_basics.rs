//! Intersection lattices and exact series: signatures, characteristic
//! classes, and Taylor coefficients of exp(q t^2) * sum c e^(lambda t).

use donaldson::exact_algebra::{rat, ExpSum, GaussianRational as G, QuadExpSeries};
use donaldson::lattice::{H2Class, Lattice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k3 = Lattice::standard(3, 19, true)?;
    println!("3H + 2(-E8): rank {}, signature {}, even {}", k3.rank(), k3.signature(), k3.is_even());

    let odd = Lattice::from_gram(vec![vec![1, 1, 0], vec![1, 0, 0], vec![0, 0, -1]])?;
    println!("odd lattice: b+ = {}, b- = {}", odd.b_plus(), odd.b_minus());
    for coords in [[1, 0, 0], [1, 1, 1], [0, 1, 1]] {
        let c = H2Class::new(coords.to_vec());
        println!("  {:?}: square {}, characteristic {}", c, odd.square(&c)?, odd.is_characteristic(&c)?);
    }

    let blown = odd.with_exceptional("E");
    let e = H2Class::basis(blown.rank(), 3);
    println!("after blowup: labels {:?}, E^2 = {}", blown.labels(), blown.square(&e)?);

    // exp(t^2/2) * cosh(2t)
    let s = QuadExpSeries::new(
        rat(1, 2),
        ExpSum::from_terms([(G::from_int(2), G::ratio(1, 2)), (G::from_int(-2), G::ratio(1, 2))]),
    );
    let coeffs: Vec<String> = (0..7).map(|n| s.taylor_coefficient(n).to_string()).collect();
    println!("D(h^n) for exp(t^2/2) cosh(2t): {}", coeffs.join(", "));
    Ok(())
}
