//! End-to-end acceptance checks, one line per criterion. Runs without the
//! libtest harness so the report is printed even when everything passes.

mod common;

use std::time::Instant;

use donaldson::asymptotics::{
    analyze_model, build_f0, build_p, builtin_models, eigenprojector, generating_asymptotics, i_vandermonde,
    pairing_sequence, projected_sequence, FloerModel,
};
use donaldson::cli::pencil_base;
use donaldson::exact_algebra::{int, rat, ExpSum, GaussianRational as G, Hyperbolic, Matrix, QuadExpSeries, Rational};
use donaldson::geography::{
    elliptic_profile, hypersurface_invariants, knot_n_coefficient, knot_surgery_profile, ozbagci_obstruction,
    plan_fiber_sum, stipsicz_profiles, FibrationProfile, PlanMode, TargetDescriptor,
};
use donaldson::lattice::H2Class;
use donaldson::lefschetz::{
    decompose_canonical_difference, model_fibration, nonminimal_uniqueness, normalize_and_bound, pencil_to_fibration,
    DecompositionFailure, DecompositionResult, LefschetzError, NonminimalVerdict,
};
use donaldson::manifold_series::{degree_congruence, donaldson_series, witten_consistency, EvalRequest};
use donaldson::moves::{blowdown, blowup, fiber_sum_numerics, leading_factorization, munoz_glue, BettiTriple};
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn blowup_round_trip() -> Outcome {
    let mut rng = common::rng(1);
    for i in 0..100 {
        let x = common::random_manifold(&mut rng, i);
        let xt = blowup(&x);
        let e = H2Class::basis(xt.rank(), xt.rank() - 1);
        let back = blowdown(&xt, &e).map_err(|err| format!("{}: {err}", x.name))?;
        ensure!(back == x, "{}: blowdown(blowup(X)) differs from X", x.name);
        for entry in &xt.basic_classes {
            let k = H2Class::new(entry.class.coords[..x.rank()].to_vec());
            let original = x.entry(&k).ok_or(format!("{}: stray class {:?}", x.name, entry.class))?;
            ensure!(entry.sw == original.sw, "{}: SW changed on {:?}", x.name, entry.class);
        }
        let (c_x, c_xt) = (witten_consistency(&x).unwrap(), witten_consistency(&xt).unwrap());
        ensure!(c_x == &c_xt * int(2), "{}: Witten constant {c_x} is not twice {c_xt}", x.name);
        ensure!(xt.predicted_witten_constant() == Some(c_xt), "{}: blown-up constant off the formula", x.name);
    }
    Ok("100 random manifolds".into())
}

/// `exp(q·t²)·Σ c·e^{λt}` times `exp(−a²t²/2)·(e^{at} ± e^{−at})/2`, written out.
fn expand_hyperbolic(s: &QuadExpSeries, a: i64, minus_sign: i64) -> QuadExpSeries {
    let mut sum = ExpSum::new();
    let half = G::ratio(1, 2);
    for (lambda, c) in s.expsum.iter() {
        let c = c * &half;
        sum.add_term(lambda + &G::from_int(a), &c);
        sum.add_term(lambda - &G::from_int(a), &(&c * &G::from_int(minus_sign)));
    }
    QuadExpSeries::new(&s.gauss - &rat(a * a, 2), sum)
}

fn blowup_series_identity() -> Outcome {
    let mut rng = common::rng(2);
    for i in 0..100 {
        let x = common::random_manifold(&mut rng, i);
        let xt = blowup(&x);
        let rank = xt.rank();
        let e = H2Class::basis(rank, rank - 1);
        let w_x = common::random_class(&mut rng, x.rank(), 2);
        let h_x = common::random_class(&mut rng, x.rank(), 3);
        let j = rng.gen_range(-3..=3);
        let h = &h_x.extended(rank) + &e.scale(j);
        let a = xt.lattice.pairing(&e, &h).unwrap();
        let base = donaldson_series(&x, &EvalRequest { w: w_x.clone(), h: h_x }).unwrap();

        let w = w_x.extended(rank);
        let lhs = donaldson_series(&xt, &EvalRequest { w: w.clone(), h: h.clone() }).unwrap();
        ensure!(lhs == expand_hyperbolic(&base, a, 1), "{}: cosh identity fails", x.name);
        ensure!(
            lhs == base.mul_hyperbolic(&G::from_int(a), Hyperbolic::Cosh, &rat(-a * a, 2)),
            "{}: cosh form",
            x.name
        );

        let lhs = donaldson_series(&xt, &EvalRequest { w: &w + &e, h }).unwrap();
        let sinh = expand_hyperbolic(&base, a, -1);
        let negated = QuadExpSeries::new(sinh.gauss.clone(), sinh.expsum.neg());
        ensure!(lhs == negated, "{}: sinh identity fails", x.name);
        let via = base.mul_hyperbolic(&G::from_int(a), Hyperbolic::Sinh, &rat(-a * a, 2));
        ensure!(lhs == QuadExpSeries::new(via.gauss.clone(), via.expsum.neg()), "{}: sinh form", x.name);
    }
    Ok("100 random (X, w, h), both lines".into())
}

fn stipsicz_catalog() -> Outcome {
    for g in 2..=1000i64 {
        let (v1, v2) = stipsicz_profiles(g).map_err(|e| e.to_string())?;
        let expected = if g % 2 == 0 { [(g, 1, 5), (g - 2, 1, 13)] } else { [(g - 1, 1, 9), (g - 3, 1, 17)] };
        for (v, (b1, bp, bm)) in [&v1, &v2].into_iter().zip(expected) {
            ensure!((v.b1, v.b_plus, v.b_minus, v.genus) == (b1, bp, bm, g), "g = {g}: triple of {}", v.name);
        }
        let n_plus = |v: &FibrationProfile| v.b_plus - v.b1 + 2 * g - 1;
        let n_minus = |v: &FibrationProfile| v.b_minus - v.b1 + 2 * g - 1;
        ensure!(n_plus(&v1).gcd(&n_plus(&v2)) == 2, "g = {g}: gcd of n+ is not 2");
        if (g % 2 == 0 && g > 4) || (g % 2 == 1 && g > 7) {
            ensure!(n_minus(&v1) < 2 * n_plus(&v1), "g = {g}: n-/n+ of V1 is not below 2");
        } else {
            ensure!(n_minus(&v1) >= 2 * n_plus(&v1), "g = {g}: ratio below 2 outside the stated range");
        }
    }
    Ok("2 <= g <= 1000".into())
}

fn genus_two_obstruction() -> Outcome {
    let mut counted = 0;
    for sigma in -60..=60i64 {
        for euler in -60..=120i64 {
            if (sigma + euler) % 2 != 0 {
                continue;
            }
            let v = ozbagci_obstruction(sigma, euler);
            let value = 3 * sigma + euler;
            ensure!(v.value == value, "value at ({sigma}, {euler})");
            ensure!(v.feasible == (value <= -6), "feasibility at ({sigma}, {euler})");
            ensure!(v.in_forbidden_window == (value >= -4), "window at ({sigma}, {euler})");
            counted += 1;
        }
    }
    let start = FibrationProfile::new("X(g=2)", 0, 3, 19, 2);
    let failure = plan_fiber_sum(&start, PlanMode::Hypersurface).err().ok_or("hypersurface plan at g = 2 succeeded")?;
    let verdict = failure.obstruction.ok_or("failure does not cite the genus-2 obstruction")?;
    // the cited values are those of a genus-2 fibration: feasible, hence outside the demanded window
    ensure!(verdict.feasible && !verdict.in_forbidden_window, "cited verdict {verdict:?}");
    let cert = plan_fiber_sum(&start, PlanMode::KnotSurgery).map_err(|e| e.to_string())?;
    ensure!(cert.all_pass() && cert.verify(), "knot-surgery certificate checks fail");
    Ok(format!("{counted} (sigma, e) pairs; g = 2 hypersurface fails, knot surgery succeeds"))
}

fn gluing_factorization() -> Outcome {
    let mut rng = common::rng(5);
    for i in 0..100 {
        let inp = common::random_gluing(&mut rng);
        let top = 2 * inp.genus as i64 - 2;
        let series = munoz_glue(&inp).map_err(|e| format!("input {i}: {e}"))?;
        let half = (inp.w.w_w_sq - inp.w.w_x_sq - inp.w.w_z_sq) / 2;
        let eps = if ((inp.genus as i64 - 1) * half) % 2 == 0 { 1 } else { -1 };
        let power = int(2).pow(7 * inp.genus as i32 - 9);
        let sum = |terms: &[donaldson::moves::GluingTerm]| {
            terms.iter().filter(|t| t.fiber_pairing == top).fold(Rational::zero(), |acc, t| acc + &t.coefficient)
        };
        let (sa, sb) = (sum(&inp.x_terms), sum(&inp.z_terms));
        let expected = -(&power * int(eps)) * &sa * &sb;
        let exponent = common::top_exponent(&inp);
        let got = series.expsum.coefficient(&G::from_int(exponent));
        ensure!(got == G::real(expected.clone()), "input {i}: top coefficient {got} vs {expected}");

        // only extremal pairs contribute
        let mut allowed = vec![exponent];
        for a in inp.x_terms.iter().filter(|a| a.fiber_pairing == -top) {
            for b in inp.z_terms.iter().filter(|b| b.fiber_pairing == -top) {
                allowed.push(a.d_pairing + b.d_pairing - 2 * inp.d.sigma_dot_d);
            }
        }
        for (lambda, _) in series.expsum.iter() {
            ensure!(allowed.iter().any(|&x| G::from_int(x) == *lambda), "input {i}: stray exponent {lambda}");
        }
        ensure!(series.gauss == rat(inp.d.d_sq, 2), "input {i}: Gaussian factor");
        let lf = leading_factorization(&inp).map_err(|e| format!("input {i}: {e}"))?;
        ensure!(lf.epsilon == eps && lf.exponent == Some(exponent) && lf.lhs == &sa * &sb, "input {i}: {lf:?}");
    }
    Ok("100 random gluing inputs".into())
}

fn fiber_sum_laws() -> Outcome {
    let mut rng = common::rng(6);
    for i in 0..100 {
        let g = rng.gen_range(1..=12i64);
        let w = BettiTriple::new(0, 2 * rng.gen_range(0..=10) + 1, rng.gen_range(0..=40));
        let random_v = |rng: &mut rand::rngs::StdRng| {
            let b1 = rng.gen_range(0..=2 * g);
            BettiTriple::new(b1, rng.gen_range(1..=30), rng.gen_range(0..=60))
        };
        let (v1, v2) = (random_v(&mut rng), random_v(&mut rng));
        let r = fiber_sum_numerics(w, v1, g);
        ensure!(r.sigma == w.sigma() + v1.sigma(), "pair {i}: signature not additive");
        ensure!(r.euler == w.euler() + v1.euler() + 4 * g - 4, "pair {i}: Euler number law");
        ensure!(r.b1 == 0, "pair {i}: b1 changed");
        ensure!(r.b_plus - w.b_plus == v1.b_plus - v1.b1 + 2 * g - 1, "pair {i}: n+ increment");
        ensure!(r.b_minus - w.b_minus == v1.b_minus - v1.b1 + 2 * g - 1, "pair {i}: n- increment");
        let ab = fiber_sum_numerics(r.betti(), v2, g);
        let ba = fiber_sum_numerics(fiber_sum_numerics(w, v2, g).betti(), v1, g);
        ensure!(ab == ba, "pair {i}: order dependence");
    }
    Ok("100 random profile pairs".into())
}

fn hypersurface_oracle() -> Outcome {
    let h = hypersurface_invariants(4).map_err(|e| e.to_string())?;
    ensure!((h.euler, h.sigma, h.b_plus, h.b_minus) == (24, -16, 3, 19), "degree 4: {h:?}");
    let k3 = elliptic_profile(2).map_err(|e| e.to_string())?;
    ensure!(
        (k3.euler(), k3.signature(), k3.b_plus as i64, k3.b_minus as i64) == (24, -16, 3, 19),
        "E(2) disagrees with the quartic"
    );
    let mut previous: Option<Rational> = None;
    for d in 4..=100i64 {
        let h = hypersurface_invariants(d).map_err(|e| e.to_string())?;
        // Noether and Chern numbers of a degree-d surface: c₁² = d(d−4)², c₂ = d(d² − 4d + 6)
        ensure!(h.euler == d * (d * d - 4 * d + 6), "degree {d}: Euler number");
        ensure!(3 * h.sigma == d * (d - 4) * (d - 4) - 2 * h.euler, "degree {d}: signature");
        let ratio = h.ratio();
        ensure!(ratio > int(2), "degree {d}: ratio {ratio} not above 2");
        if let Some(p) = &previous {
            ensure!(ratio < *p, "degree {d}: ratio not strictly decreasing");
        }
        previous = Some(ratio);
    }
    Ok("degree 4 = E(2); ratio decreasing to 2 on 4..=100".into())
}

fn knot_surgery_geography() -> Outcome {
    let r = rat(7, 2);
    ensure!(knot_n_coefficient(&r) == int(-1), "n-coefficient at 7/2");
    for g in 1..=12i64 {
        // c₁² + 3χ_h = −n + 5(g − 1) < 5/2  ⇔  n ≥ 5g − 7
        let threshold = (5 * g - 7).max(1);
        for n in 1..=threshold + 150 {
            let k = knot_surgery_profile(g, n).map_err(|e| e.to_string())?;
            ensure!(k.c1_sq == 8 * (g + n - 1) && k.chi_h == 3 * n + g - 1, "(g, n) = ({g}, {n}): formulas");
            ensure!(k.c1_sq == 2 * k.euler + 3 * k.sigma && 4 * k.chi_h == k.euler + k.sigma, "({g}, {n}): Noether");
            ensure!(k.b_plus + k.b_minus + 2 == k.euler, "({g}, {n}): Betti sum");
            let exceeds = k.exceeds_ratio(&r);
            ensure!(exceeds == (int(k.b_minus) / int(k.b_plus) > r), "({g}, {n}): ratio test disagrees with b-/b+");
            ensure!(exceeds == (n >= threshold), "({g}, {n}): threshold {threshold}");
            if (n + g) % 2 == 1 {
                ensure!(k.b_plus % 4 == 3, "({g}, {n}): b+ = {} with n + g odd", k.b_plus);
            }
        }
    }
    let start = FibrationProfile::new("X(g=10)", 0, 3, 19, 10);
    let cert = plan_fiber_sum(&start, PlanMode::KnotSurgery).map_err(|e| e.to_string())?;
    let TargetDescriptor::KnotSurgery(k) = &cert.target else {
        return Err("knot mode produced a hypersurface target".into());
    };
    ensure!(k.b_plus % 4 == 3 && cert.all_pass() && cert.verify(), "witness {k:?}");
    Ok(format!("thresholds for g <= 12; witness (g, n) = ({}, {})", k.knot_genus, k.n))
}

fn constraint_engine() -> Outcome {
    let mut cases = 0;
    for genera in [vec![1], vec![1, 2], vec![2, 1, 3], vec![3, 3]] {
        let genus = 4;
        let f = model_fibration(genus, &genera).map_err(|e| e.to_string())?;
        let kx = f.manifold.canonical.clone().unwrap();
        let l = f.lattice();
        let k_count = genera.len() as u32;
        for n in -3..=3 {
            for code in 0..7i64.pow(k_count) {
                let c: Vec<i64> = (0..k_count).map(|i| (code / 7i64.pow(i)) % 7 - 3).collect();
                let k = DecompositionResult::class_from(&f, n, &c).map_err(|e| e.to_string())?;
                let dec = decompose_canonical_difference(&f, &k).map_err(|e| e.to_string())?;
                ensure!(dec.n == n && dec.c == c, "round trip ({n}, {c:?}) gave ({}, {:?})", dec.n, dec.c);
                ensure!(dec.valid == (n >= 0), "validity of n = {n}");
                if n < 0 {
                    ensure!(dec.failure == Some(DecompositionFailure::NegativeN), "failure tag for n = {n}");
                }
                cases += 1;
                let direct = l.square(&kx).unwrap() - l.square(&k).unwrap();
                match normalize_and_bound(&f, &dec, &genera) {
                    Ok(b) => {
                        ensure!(b.kx_sq_minus_k_sq == direct, "({n}, {c:?}): bound {} vs {direct}", b.kx_sq_minus_k_sq);
                        ensure!(direct >= 0, "({n}, {c:?}): K_X^2 - K^2 = {direct} < 0");
                        ensure!(b.equality == dec.is_trivial(), "({n}, {c:?}): equality iff trivial");
                    }
                    Err(LefschetzError::NormalizedNegative(m)) => {
                        let flipped: i64 = n + c.iter().filter(|&&x| x < 0).sum::<i64>();
                        ensure!(m == flipped && m < 0, "({n}, {c:?}): spurious negative {m}");
                    }
                    Err(e) => return Err(format!("({n}, {c:?}): {e}")),
                }
            }
        }
    }
    let pencil = pencil_to_fibration(&pencil_base(), &H2Class::basis(4, 0), 3).map_err(|e| e.to_string())?;
    let f = pencil.fibration;
    let kx = f.manifold.canonical.clone().unwrap();
    let accepted = nonminimal_uniqueness(&f, &kx).map_err(|e| e.to_string())?;
    ensure!(accepted == NonminimalVerdict::EqualsCanonical, "K_X: {accepted:?}");
    let rejected = nonminimal_uniqueness(&f, &(&kx - &f.fiber)).map_err(|e| e.to_string())?;
    ensure!(matches!(rejected, NonminimalVerdict::Excluded { .. }), "K_X - Sigma: {rejected:?}");
    Ok(format!("{cases} decompositions; pencil fixture accepts K_X, rejects K_X - Sigma"))
}

/// `c_r` read off the Jordan coordinates: the top blocks are 1×1, so
/// `π_λ = S·E_λ·S⁻¹` and `leftᵀπ_λ right = (leftᵀS)_j·(S⁻¹right)_j`.
fn jordan_coefficients(grid: &common::GridModel) -> [G; 4] {
    let top = G::from_int(grid.model.growth());
    let c: Vec<G> = (0..4)
        .map(|r| match common::top_position(&grid.blocks, &(&G::i_pow(r) * &top)) {
            Some(j) => {
                let (l, rr) = common::eigen_coordinates(&grid.model, &grid.mixing, j);
                &l * &rr
            }
            None => G::zero(),
        })
        .collect();
    [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]
}

fn matrix_route(model: &FloerModel) -> [G; 4] {
    let top = G::from_int(model.growth());
    let c: Vec<G> = (0..4)
        .map(|r| {
            let pi = eigenprojector(&model.action, &(&G::i_pow(r) * &top));
            donaldson::exact_algebra::dot(&model.left, &pi.mul_vec(&model.right))
        })
        .collect();
    [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]
}

fn check_leading(model: &FloerModel, c: &[G; 4]) -> Result<(), String> {
    let report = analyze_model(model).map_err(|e| format!("{}: {e}", model.name))?;
    ensure!(report.all_pass(), "{}: failing checks {:?}", model.name, report.checks);
    let d0 = report.d0;
    let cong = degree_congruence(model.congruence.w_sq, model.congruence.b_plus, model.congruence.b1, d0)
        .map_err(|e| e.to_string())?;
    ensure!(cong.allowed && cong.d0 == d0, "{}: d0 = {d0} vs {cong:?}", model.name);
    let expected = (0..4).fold(G::zero(), |acc, r| &acc + &(&G::i_pow(r * d0) * &c[r as usize]));
    ensure!(report.growth_constant == expected, "{}: {} vs {expected}", model.name, report.growth_constant);
    let lambda = G::from_int(model.growth());
    ensure!(report.leading == &expected * &lambda.pow(d0 as u64), "{}: leading", model.name);
    Ok(())
}

fn asymptotic_pipeline() -> Outcome {
    for g in 2..=50i64 {
        let f = build_f0(g).map_err(|e| e.to_string())?;
        ensure!(f.degree() == Some(3 + 4 * (g as usize - 1)), "g = {g}: degree");
        for k in 0..g {
            for r in 0..4 {
                let x = G::i_pow(r).scale(&int(2 * k));
                let top = k == g - 1 && r == 0;
                ensure!(f.eval(&x).is_zero() != top, "g = {g}: f0 at i^{r}·{}", 2 * k);
            }
        }
    }
    let det = i_vandermonde().determinant();
    ensure!(det.norm_sq() == int(256), "i-Vandermonde determinant {det}");

    let mut rng = common::rng(10);
    for i in 0..20 {
        let grid = common::random_grid_model(&mut rng, i);
        let model = &grid.model;
        // p from block sizes: (A⁴)^⌈s/4⌉ kills a nilpotent block of size s, (A⁴ − μ⁴) one of size 1
        let mut mults = vec![0usize; model.genus as usize - 1];
        for b in &grid.blocks {
            let fourth = b.eigenvalue.pow(4);
            let k = (0..model.genus).find(|&k| G::from_int(2 * k).pow(4) == fourth).unwrap() as usize;
            if k < mults.len() {
                let need = if k == 0 { b.size.div_ceil(4) } else { b.size };
                mults[k] = mults[k].max(need);
            }
        }
        let lambda4 = G::from_int(model.growth()).pow(4);
        let mut pa = Matrix::identity(model.dim());
        let a4 = model.action.pow(4);
        for (k, &m) in mults.iter().enumerate() {
            for _ in 0..m {
                pa = pa.mul(&a4.shift(&G::from_int(2 * k as i64).pow(4)));
            }
        }
        let direct: Vec<G> = (0..=24)
            .map(|n| donaldson::exact_algebra::dot(&model.left, &pa.mul(&model.action.pow(n)).mul_vec(&model.right)))
            .collect();
        for n in 0..=20 {
            ensure!(direct[n + 4] == &lambda4 * &direct[n], "{}: recurrence at n = {n}", model.name);
        }
        let p = build_p(model.genus, &mults).map_err(|e| e.to_string())?;
        let library = projected_sequence(model, &p, 24).map_err(|e| e.to_string())?;
        let scale = library[0].clone();
        ensure!(
            direct.iter().zip(&library).all(|(d, l)| d * &scale == l * &direct[0]),
            "{}: projected sequence is not proportional to the direct one",
            model.name
        );
        let c = jordan_coefficients(&grid);
        ensure!(c == matrix_route(model), "{}: projector route vs Jordan coordinates", model.name);
        check_leading(model, &c)?;

        let seq = pairing_sequence(model, 2 * p.degree().unwrap() + 8);
        let d0 = model.congruence.d0().map_err(|e| e.to_string())?;
        let report = generating_asymptotics(&seq, model.genus, &mults, d0).map_err(|e| e.to_string())?;
        let expected = (0..4).fold(G::zero(), |acc, r| &acc + &(&G::i_pow(r * d0) * &c[r as usize]));
        ensure!(report.growth_constant == expected, "{}: generating route with block-size exponents", model.name);
    }
    for model in builtin_models() {
        check_leading(&model, &matrix_route(&model))?;
    }
    Ok("f0 for g <= 50; |det| = 16; 20 random grid models; all fixtures".into())
}

fn pencil_arithmetic() -> Outcome {
    let x = pencil_base();
    let omega = H2Class::basis(4, 0);
    let k = x.canonical.clone().unwrap();
    ensure!(x.lattice.square(&omega).unwrap() == 1 && x.lattice.pairing(&k, &omega).unwrap() == 1, "fixture");
    let p = pencil_to_fibration(&x, &omega, 3).map_err(|e| e.to_string())?;
    let f = &p.fibration;
    let l = f.lattice();
    let kt = f.manifold.canonical.clone().unwrap();
    let (sq, ks) = (l.square(&f.fiber).unwrap(), l.pairing(&kt, &f.fiber).unwrap());
    ensure!(
        f.genus == 7 && p.base_points == 9 && sq == 0 && ks == 12,
        "g = {}, n = {}, {sq}, {ks}",
        f.genus,
        p.base_points
    );
    ensure!(
        f.sections.len() == 9 && f.sections.iter().all(|s| l.pairing(&s.class, &f.fiber).unwrap() == 1),
        "sections"
    );
    Ok("g = 7, n = 9, fiber square 0, K.fiber = 12".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("blowup/blowdown round trip", blowup_round_trip),
        ("blowup series identity", blowup_series_identity),
        ("Stipsicz catalog", stipsicz_catalog),
        ("genus-2 obstruction", genus_two_obstruction),
        ("gluing factorization", gluing_factorization),
        ("fiber-sum numerics", fiber_sum_laws),
        ("hypersurface oracle", hypersurface_oracle),
        ("knot-surgery geography", knot_surgery_geography),
        ("canonical-class constraints", constraint_engine),
        ("nonsimple asymptotics pipeline", asymptotic_pipeline),
        ("pencil arithmetic", pencil_arithmetic),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {}: {name} ({detail}; {ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
