//! Random test data. Every sampler draws uniform reals in `[0, 1)` from a
//! caller-supplied closure so the core crate stays free of RNG dependencies.

use crate::grassmann::Grassmann;
use crate::minkowski::{self, PositiveTriple, SuperVector};
use crate::superlinalg::{OspElement, SuperMatrix};

pub fn uniform(rng: &mut impl FnMut() -> f64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng()
}

fn with_parity(rank: u8, body: f64, soul: f64, odd: bool, rng: &mut impl FnMut() -> f64) -> Grassmann {
    let mut x = Grassmann::scalar(rank, if odd { 0.0 } else { body });
    for m in 1u32..(1u32 << rank) {
        if (m.count_ones() % 2 == 1) == odd {
            x.set_coeff(m, soul * uniform(rng, -1.0, 1.0));
        }
    }
    x
}

/// Even element with the given body and soul coefficients in `[−soul, soul]`.
pub fn even(rank: u8, body: f64, soul: f64, rng: &mut impl FnMut() -> f64) -> Grassmann {
    with_parity(rank, body, soul, false, rng)
}

/// Even element with body uniform in `[lo, hi)`.
pub fn even_in(rank: u8, lo: f64, hi: f64, soul: f64, rng: &mut impl FnMut() -> f64) -> Grassmann {
    let b = uniform(rng, lo, hi);
    even(rank, b, soul, rng)
}

/// Odd element with coefficients in `[−scale, scale]`.
pub fn odd(rank: u8, scale: f64, rng: &mut impl FnMut() -> f64) -> Grassmann {
    with_parity(rank, 0.0, scale, true, rng)
}

/// Odd element supported on the generators `g{k}` for `k` in `gens`, each
/// monomial of odd degree in those generators getting a random coefficient.
pub fn odd_in(rank: u8, gens: &[usize], scale: f64, rng: &mut impl FnMut() -> f64) -> Grassmann {
    let mut x = Grassmann::zero(rank);
    let n = gens.len();
    for sub in 1u32..(1u32 << n) {
        if sub.count_ones() % 2 == 1 {
            let mut m = 0u32;
            for (i, &g) in gens.iter().enumerate() {
                if sub & (1 << i) != 0 {
                    m |= 1 << (g - 1);
                }
            }
            x.set_coeff(m, scale * uniform(rng, -1.0, 1.0));
        }
    }
    x
}

/// Product of two lower-triangular stabilizer elements, a diagonal, a power
/// of the quarter rotation and a rotation by a random angle. Membership holds
/// by closure.
pub fn osp(rank: u8, rng: &mut impl FnMut() -> f64) -> OspElement {
    let s1 = stabilizer0(rank, rng);
    let s2 = stabilizer0(rank, rng);
    let p = even_in(rank, 0.6, 1.6, 0.3, rng);
    let d = OspElement::diag_inv(&p).expect("positive body");
    let k = (uniform(rng, 0.0, 4.0) as usize).min(3);
    let mut g = s1.mul(&d);
    for _ in 0..k {
        g = g.mul(&OspElement::rotate90(rank));
    }
    g.mul(&rotation(rank, uniform(rng, -1.5, 1.5))).mul(&s2)
}

/// Rotation by `angle` in the `SO(2)` subgroup.
pub fn rotation(rank: u8, angle: f64) -> OspElement {
    let (s, c) = (libm::sin(angle), libm::cos(angle));
    let m = SuperMatrix::from_reals(rank, [[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]]);
    OspElement::new(m, 1e-12).expect("rotations are members")
}

fn stabilizer0(rank: u8, rng: &mut impl FnMut() -> f64) -> OspElement {
    let c = even_in(rank, -1.0, 1.0, 0.3, rng);
    let b = odd(rank, 0.3, rng);
    OspElement::stabilizer(&c, &b, &Grassmann::zero(rank)).expect("parities are fixed by construction")
}

/// Bosonic element of the same shape (all souls zero).
pub fn sl2(rank: u8, rng: &mut impl FnMut() -> f64) -> OspElement {
    let zero = Grassmann::zero(rank);
    let c1 = Grassmann::scalar(rank, uniform(rng, -1.0, 1.0));
    let c2 = Grassmann::scalar(rank, uniform(rng, -1.0, 1.0));
    let p = Grassmann::scalar(rank, uniform(rng, 0.6, 1.6));
    let s1 = OspElement::stabilizer(&c1, &zero, &zero).expect("even parameter");
    let s2 = OspElement::stabilizer(&c2, &zero, &zero).expect("even parameter");
    let k = (uniform(rng, 0.0, 4.0) as usize).min(3);
    let mut g = s1.mul(&OspElement::diag_inv(&p).expect("positive body"));
    for _ in 0..k {
        g = g.mul(&OspElement::rotate90(rank));
    }
    g.mul(&rotation(rank, uniform(rng, -1.5, 1.5))).mul(&s2)
}

/// Point of the special light cone: a random group element applied to a
/// positive multiple of `(1,0,0,0,0)`.
pub fn special_point(rank: u8, rng: &mut impl FnMut() -> f64) -> SuperVector {
    let k = even_in(rank, 0.5, 2.0, 0.3, rng);
    let g = osp(rank, rng);
    minkowski::act(&g, &SuperVector::e1(rank).scale(&k))
}

/// Light-cone point with a nonzero fermion label.
pub fn light_cone_point(rank: u8, rng: &mut impl FnMut() -> f64) -> SuperVector {
    let th = odd(rank, 0.3, rng);
    let k = even_in(rank, 0.5, 2.0, 0.3, rng);
    let g = osp(rank, rng);
    minkowski::act(&g, &SuperVector::e_theta(&th).scale(&k))
}

/// Point `(x1, x2, y, φ, θ)` with arbitrary coordinates.
pub fn vector(rank: u8, rng: &mut impl FnMut() -> f64) -> SuperVector {
    SuperVector {
        x1: even_in(rank, -2.0, 2.0, 0.3, rng),
        x2: even_in(rank, -2.0, 2.0, 0.3, rng),
        y: even_in(rank, -2.0, 2.0, 0.3, rng),
        phi: odd(rank, 0.3, rng),
        theta: odd(rank, 0.3, rng),
    }
}

/// Positive triple obtained by moving a random standard triple with a random group element.
pub fn positive_triple(rank: u8, rng: &mut impl FnMut() -> f64) -> PositiveTriple {
    let a = even_in(rank, 0.6, 1.8, 0.2, rng);
    let b = even_in(rank, 0.6, 1.8, 0.2, rng);
    let e = even_in(rank, 0.6, 1.8, 0.2, rng);
    let phi = odd(rank, 0.3, rng);
    let (r, s, t) = minkowski::rst_from_lambdas(&a, &b, &e).expect("positive bodies");
    let g = osp(rank, rng);
    minkowski::standard_triple(&r, &s, &t, &phi).act(&g)
}
