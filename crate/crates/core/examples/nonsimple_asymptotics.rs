//! Growth of D(h^n) along a fiber class for an exact Floer pairing model,
//! computed through the generating function and through eigenprojectors.

use donaldson::asymptotics::{
    analyze_model, builtin_models, conjugated_action, CongruenceData, FloerModel, JordanBlock,
};
use donaldson::exact_algebra::{GaussianRational as G, Matrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut models = builtin_models();

    // genus 3 grid: top eigenvalues 4 and -4, a nilpotent block and 2i below
    let blocks = [
        JordanBlock::new(G::from_int(4), 1),
        JordanBlock::new(G::from_int(-4), 1),
        JordanBlock::new(G::from_int(0), 3),
        JordanBlock::new(G::from_ints(0, 2), 1),
    ];
    let mut mixing = Matrix::identity(6);
    for r in 1..6 {
        mixing[(r, r - 1)] = G::from_int(1);
    }
    models.push(FloerModel {
        name: "custom".into(),
        genus: 3,
        action: conjugated_action(&blocks, &mixing).expect("invertible"),
        left: (1..=6).map(G::from_int).collect(),
        right: vec![G::from_int(1); 6],
        multiplicities: None,
        congruence: CongruenceData { w_sq: 0, b_plus: 3, b1: 0 },
    });

    for model in &models {
        let report = analyze_model(model)?;
        println!("{} (dim {}, genus {}):", model.name, model.dim(), model.genus);
        println!("  d0 = {}, a = {:?}", report.d0, report.a);
        println!("  D(h^n) ~ {} * {}^n for n = d0 mod 4", report.growth_constant, report.growth);
        for c in &report.checks {
            println!("  [{}] {}", if c.pass { "ok" } else { "FAIL" }, c.name);
        }
    }
    Ok(())
}
