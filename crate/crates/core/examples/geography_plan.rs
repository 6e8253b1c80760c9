//! Search for fiber-sum constructions whose b+ matches a comparison manifold
//! with strictly larger b-, in both planning modes.

use donaldson::exact_algebra::rat;
use donaldson::geography::{hypersurface_invariants, knot_surgery_profile, plan_fiber_sum, FibrationProfile, PlanMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in [4, 6, 8] {
        let h = hypersurface_invariants(d)?;
        println!("degree {d} surface: b+ = {}, b- = {}, ratio {}", h.b_plus, h.b_minus, h.ratio());
    }
    let k = knot_surgery_profile(2, 5)?;
    println!(
        "knot surgery g = 2, n = 5: b+ = {}, b- = {}, exceeds 7/2: {}",
        k.b_plus,
        k.b_minus,
        k.exceeds_ratio(&rat(7, 2))
    );

    for (genus, mode) in [(10, PlanMode::Hypersurface), (2, PlanMode::Hypersurface), (2, PlanMode::KnotSurgery)] {
        let start = FibrationProfile::new(format!("X(g={genus})"), 0, 3, 19, genus);
        println!();
        match plan_fiber_sum(&start, mode) {
            Ok(cert) => {
                println!("{mode:?} at genus {genus}:");
                for s in &cert.summands {
                    println!("  {} x {}", s.multiplicity, s.profile.name);
                }
                println!("  result b+ = {}, b- = {}", cert.resulting.b_plus, cert.resulting.b_minus);
                println!("  target {}", serde_json::to_string(&cert.target)?);
                println!("  checks pass: {}, verified: {}", cert.all_pass(), cert.verify());
            }
            Err(failure) => println!("{mode:?} at genus {genus} fails: {}", failure.reason),
        }
    }
    Ok(())
}
