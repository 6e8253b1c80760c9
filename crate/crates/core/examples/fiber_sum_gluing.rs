//! Betti bookkeeping of fiber sums, and the top coefficient of a glued
//! Donaldson series factoring into one-sided sums.

use donaldson::cli::Catalog;
use donaldson::exact_algebra::rat;
use donaldson::geography::stipsicz_profiles;
use donaldson::moves::{
    fiber_sum_numerics, leading_factorization, munoz_glue, BettiTriple, DSplit, GluingInput, GluingTerm, WData,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = 10;
    let (v1, v2) = stipsicz_profiles(g)?;
    println!("V1 = {:?}: n+ = {}, n- = {}", v1.betti(), v1.n_plus(), v1.n_minus());
    println!("V2 = {:?}: n+ = {}, n- = {}", v2.betti(), v2.n_plus(), v2.n_minus());

    let mut w = BettiTriple::new(0, 3, 19);
    for (step, v) in [&v1, &v1, &v2].into_iter().enumerate() {
        let r = fiber_sum_numerics(w, v.betti(), g);
        println!(
            "after summand {}: b+ = {}, b- = {}, sigma = {}, e = {}",
            step + 1,
            r.b_plus,
            r.b_minus,
            r.sigma,
            r.euler
        );
        w = r.betti();
    }

    let input = GluingInput {
        genus: 3,
        x_terms: vec![
            GluingTerm::new(rat(1, 1), 4, 1),
            GluingTerm::new(rat(-3, 2), 4, 1),
            GluingTerm::new(rat(5, 1), -4, -1),
            GluingTerm::new(rat(7, 1), 0, 2),
        ],
        z_terms: vec![GluingTerm::new(rat(2, 1), 4, -1), GluingTerm::new(rat(1, 3), -4, 0)],
        w: WData { w_w_sq: 2, w_x_sq: 1, w_z_sq: -1, w_w_fiber: 1, w_x_fiber: 1, w_z_fiber: -1 },
        d: DSplit { sigma_dot_d: 1, d_sq: 3, d_x_sq: 1, d_z_sq: 2 },
    };
    let series = munoz_glue(&input)?;
    println!("\nglued series: {series}");
    let lf = leading_factorization(&input)?;
    println!(
        "top exponent {:?}: coefficient / (-eps 2^(7g-9)) = {} = ({}) * ({}), eps = {}",
        lf.exponent, lf.lhs, lf.rhs_x, lf.rhs_z, lf.epsilon
    );

    let catalog = Catalog::builtin();
    let pair = catalog.gluing("genus3-pair")?;
    let lf = leading_factorization(pair)?;
    println!("catalog pair genus3-pair: lhs {} nonvanishing {}", lf.lhs, lf.nonvanishing);
    Ok(())
}
