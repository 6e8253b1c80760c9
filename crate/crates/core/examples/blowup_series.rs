//! Blow up a simple-type manifold, compare its Donaldson series with the
//! cosh/sinh form predicted from the original, then blow back down.

use donaldson::cli::pencil_base;
use donaldson::exact_algebra::{rat, GaussianRational, Hyperbolic, QuadExpSeries};
use donaldson::lattice::H2Class;
use donaldson::manifold_series::{donaldson_series, witten_consistency, EvalRequest};
use donaldson::moves::{blowdown, blowup};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = pencil_base();
    let xt = blowup(&x);
    println!("{}: rank {}, {} basic classes", xt.name, xt.rank(), xt.basic_classes.len());
    for e in &xt.basic_classes {
        println!("  {:?}  beta = {}  SW = {:?}", e.class, e.beta.as_ref().unwrap(), e.sw);
    }

    let e = H2Class::basis(xt.rank(), xt.rank() - 1);
    let w = H2Class::new(vec![1, 0, 1, 0]);
    let h_x = H2Class::new(vec![2, 1, 0, 1]);
    let h = &h_x.extended(xt.rank()) + &e.scale(2);
    let a = GaussianRational::from_int(xt.lattice.pairing(&e, &h)?);
    let base = donaldson_series(&x, &EvalRequest { w: w.clone(), h: h_x })?;
    let shift = rat(-(xt.lattice.pairing(&e, &h)?.pow(2)), 2);

    let direct = donaldson_series(&xt, &EvalRequest { w: w.extended(xt.rank()), h: h.clone() })?;
    let predicted = base.mul_hyperbolic(&a, Hyperbolic::Cosh, &shift);
    println!("\nD(w, h) on the blowup:        {direct}");
    println!("cosh prediction from X:       {predicted}");
    assert_eq!(direct, predicted);

    let direct = donaldson_series(&xt, &EvalRequest { w: &w.extended(xt.rank()) + &e, h })?;
    let sinh = base.mul_hyperbolic(&a, Hyperbolic::Sinh, &shift);
    let predicted = QuadExpSeries::new(sinh.gauss.clone(), sinh.expsum.neg());
    println!("D(w + E, h) on the blowup:    {direct}");
    println!("-sinh prediction from X:      {predicted}");
    assert_eq!(direct, predicted);

    let back = blowdown(&xt, &e)?;
    assert_eq!(back, x);
    println!(
        "\nblowdown restores {}; Witten constant {} -> {}",
        back.name,
        witten_consistency(&xt)?,
        witten_consistency(&back)?
    );
    for n in 0..5 {
        println!("  D(h^{n}) on the blowup = {}", direct.taylor_coefficient(n));
    }
    Ok(())
}
