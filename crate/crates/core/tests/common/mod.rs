//! Random generators shared by the integration tests.
#![allow(dead_code)]

use donaldson::asymptotics::{conjugated_action, CongruenceData, FloerModel, JordanBlock};
use donaldson::exact_algebra::{int, GaussianRational as G, Matrix, Rational};
use donaldson::lattice::{H2Class, Lattice};
use donaldson::manifold_series::{BasicClassEntry, Manifold};
use donaldson::moves::{DSplit, GluingInput, GluingTerm, WData};
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `Pᵀ·G·P` for a random unit upper-triangular `P`.
fn scramble(gram: &[Vec<i64>], rng: &mut StdRng) -> Vec<Vec<i64>> {
    let n = gram.len();
    let mut p = vec![vec![0i64; n]; n];
    for (i, row) in p.iter_mut().enumerate() {
        row[i] = 1;
        for x in row.iter_mut().skip(i + 1) {
            *x = rng.gen_range(-1..=1);
        }
    }
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for a in 0..n {
                for b in 0..n {
                    s += p[a][i] * gram[a][b] * p[b][j];
                }
            }
            out[i][j] = s;
        }
    }
    out
}

/// Unimodular lattice of rank at most 6 with odd `b⁺ ≥ 3`.
pub fn random_lattice(rng: &mut StdRng) -> Lattice {
    let base = match rng.gen_range(0..4) {
        0 => Lattice::standard(3, 3, true).unwrap(),
        1 => Lattice::standard(5, rng.gen_range(0..=1), false).unwrap(),
        _ => Lattice::standard(3, rng.gen_range(0..=3), false).unwrap(),
    };
    let gram = if rng.gen_bool(0.5) { scramble(base.gram(), rng) } else { base.gram().to_vec() };
    Lattice::from_gram(gram).unwrap()
}

/// Some characteristic vector: `G⁻¹·diag(G)`.
pub fn characteristic(l: &Lattice) -> H2Class {
    let g = Matrix::from_rows(l.gram().iter().map(|r| r.iter().map(|&x| G::from_int(x)).collect()).collect()).unwrap();
    let diag: Vec<G> = (0..l.rank()).map(|i| G::from_int(l.gram()[i][i])).collect();
    let c = g.solve(&diag).expect("unimodular");
    H2Class::new(c.iter().map(|x| x.as_integer().expect("integral").to_i64().unwrap()).collect())
}

/// Simple-type manifold with up to four characteristic basic classes,
/// `β = c·SW` for the predicted Witten constant and `K_X` the first class.
pub fn random_manifold(rng: &mut StdRng, index: usize) -> Manifold {
    let lattice = random_lattice(rng);
    let rank = lattice.rank();
    let c0 = characteristic(&lattice);
    let count = rng.gen_range(1..=4);
    let mut classes: Vec<H2Class> = Vec::new();
    while classes.len() < count {
        let v = H2Class::new((0..rank).map(|_| 2 * rng.gen_range(-1..=1)).collect());
        let k = &c0 + &v;
        if !classes.contains(&k) {
            classes.push(k);
        }
    }
    let mut x = Manifold::from_lattice(format!("random-{index}"), lattice);
    x.spin = x.lattice.is_even();
    let c = x.predicted_witten_constant().expect("odd b+");
    let entries = classes
        .iter()
        .map(|k| {
            let sw = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
            BasicClassEntry::new(k.clone(), Some(&c * int(sw)), Some(sw))
        })
        .collect();
    x.canonical = Some(classes[0].clone());
    let x = x.with_classes(entries);
    x.validate().unwrap();
    x
}

pub fn random_class(rng: &mut StdRng, rank: usize, bound: i64) -> H2Class {
    H2Class::new((0..rank).map(|_| rng.gen_range(-bound..=bound)).collect())
}

pub fn random_rational(rng: &mut StdRng) -> Rational {
    loop {
        let num = rng.gen_range(-9..=9);
        if num != 0 {
            return Rational::new(num.into(), rng.gen_range(1..=4).into());
        }
    }
}

/// Gluing input with every extremal term of a side sharing one `D` pairing, so
/// the top exponent is unique; resampled until no `−(2g−2)` pair lands on it.
pub fn random_gluing(rng: &mut StdRng) -> GluingInput {
    loop {
        let genus = rng.gen_range(2..=6u32);
        let top = 2 * genus as i64 - 2;
        let side = |rng: &mut StdRng| {
            let d_top = rng.gen_range(-6..=6);
            let mut terms: Vec<GluingTerm> =
                (0..rng.gen_range(1..=3)).map(|_| GluingTerm::new(random_rational(rng), top, d_top)).collect();
            for _ in 0..rng.gen_range(0..=3) {
                let fiber = match rng.gen_range(0..3) {
                    0 => -top,
                    _ => rng.gen_range(-top + 1..top),
                };
                terms.push(GluingTerm::new(random_rational(rng), fiber, rng.gen_range(-6..=6)));
            }
            terms
        };
        let x_terms = side(rng);
        let z_terms = side(rng);
        let odd = |rng: &mut StdRng| 2 * rng.gen_range(-3..=3) + 1;
        let w_x_sq = rng.gen_range(-5..=5);
        let w_z_sq = rng.gen_range(-5..=5);
        let w = WData {
            w_w_sq: w_x_sq + w_z_sq + 2 * rng.gen_range(-3..=3),
            w_x_sq,
            w_z_sq,
            w_w_fiber: odd(rng),
            w_x_fiber: odd(rng),
            w_z_fiber: odd(rng),
        };
        let d_x_sq = rng.gen_range(-8..=8);
        let d_z_sq = rng.gen_range(-8..=8);
        let d = DSplit { sigma_dot_d: rng.gen_range(-3..=3), d_sq: d_x_sq + d_z_sq, d_x_sq, d_z_sq };
        let inp = GluingInput { genus, x_terms, z_terms, w, d };

        let plus = top_exponent(&inp);
        let collides = inp.x_terms.iter().filter(|a| a.fiber_pairing == -top).any(|a| {
            inp.z_terms
                .iter()
                .filter(|b| b.fiber_pairing == -top)
                .any(|b| a.d_pairing + b.d_pairing - 2 * inp.d.sigma_dot_d == plus)
        });
        if !collides {
            return inp;
        }
    }
}

pub fn top_exponent(inp: &GluingInput) -> i64 {
    let top = 2 * inp.genus as i64 - 2;
    let dx = inp.x_terms.iter().find(|a| a.fiber_pairing == top).unwrap().d_pairing;
    let dz = inp.z_terms.iter().find(|b| b.fiber_pairing == top).unwrap().d_pairing;
    dx + dz + 2 * inp.d.sigma_dot_d
}

/// A grid-spectrum model `S·J·S⁻¹` together with the ingredients an oracle needs.
pub struct GridModel {
    pub model: FloerModel,
    pub blocks: Vec<JordanBlock>,
    pub mixing: Matrix,
}

/// Random model of dimension at most 10: semisimple top eigenvalues
/// `iʳ(2g − 2)` with `2g − 2` always present, Jordan blocks below the top,
/// and a unit lower times unit upper triangular mixing matrix.
pub fn random_grid_model(rng: &mut StdRng, index: usize) -> GridModel {
    let genus = rng.gen_range(2..=4i64);
    let top = 2 * genus - 2;
    let mut blocks = vec![JordanBlock::new(G::from_int(top), 1)];
    for r in 1..4 {
        if rng.gen_bool(0.5) {
            blocks.push(JordanBlock::new(G::i_pow(r).scale(&int(top)), 1));
        }
    }
    let mut dim: usize = blocks.len();
    let extra = rng.gen_range(0..=6usize);
    while dim < 4 + extra && dim < 10 {
        let k = rng.gen_range(0..genus - 1);
        let r = rng.gen_range(0..4);
        let size = rng.gen_range(1..=3usize).min(10 - dim);
        blocks.push(JordanBlock::new(G::i_pow(r).scale(&int(2 * k)), size));
        dim += size;
    }
    blocks.shuffle(rng);
    let mut lower = Matrix::identity(dim);
    let mut upper = Matrix::identity(dim);
    for r in 0..dim {
        for c in 0..r {
            lower[(r, c)] = G::from_int(rng.gen_range(-1..=1));
            upper[(c, r)] = G::from_int(rng.gen_range(-1..=1));
        }
    }
    let mixing = lower.mul(&upper);
    let action = conjugated_action(&blocks, &mixing).expect("unimodular mixing");
    let vector =
        |rng: &mut StdRng| (0..dim).map(|_| G::from_ints(rng.gen_range(-3..=3), rng.gen_range(-1..=1))).collect();
    let mut model = FloerModel {
        name: format!("random-grid-{index}"),
        genus,
        action,
        left: vector(rng),
        right: vector(rng),
        multiplicities: None,
        congruence: CongruenceData { w_sq: rng.gen_range(-6..=6), b_plus: 2 * rng.gen_range(1..=5) + 1, b1: 0 },
    };
    // force a nonzero pairing on the 2g − 2 eigenline
    let at = top_position(&blocks, &G::from_int(top)).unwrap();
    loop {
        let (l, r) = eigen_coordinates(&model, &mixing, at);
        if !(&l * &r).is_zero() {
            break;
        }
        model.left = vector(rng);
        model.right = vector(rng);
    }
    GridModel { model, blocks, mixing }
}

/// Index in Jordan coordinates of the size-1 block with the given eigenvalue.
pub fn top_position(blocks: &[JordanBlock], lambda: &G) -> Option<usize> {
    let mut at = 0;
    for b in blocks {
        if &b.eigenvalue == lambda && b.size == 1 {
            return Some(at);
        }
        at += b.size;
    }
    None
}

/// `(leftᵀS)_j` and `(S⁻¹right)_j`.
pub fn eigen_coordinates(model: &FloerModel, mixing: &Matrix, j: usize) -> (G, G) {
    let l = mixing.transpose().mul_vec(&model.left);
    let r = mixing.inverse().unwrap().mul_vec(&model.right);
    (l[j].clone(), r[j].clone())
}
