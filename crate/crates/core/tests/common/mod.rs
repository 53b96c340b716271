#![allow(dead_code)]

use omegalim::scalar::{self, Scalar};
use omegalim::{BaseAtom, InNumber, Limit, Prototype, Term};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn omega_pow(e: Scalar) -> Prototype {
    Prototype::from_factors([(BaseAtom::Log(0), e)])
}

fn log_pow(k: u32, e: Scalar) -> Prototype {
    Prototype::from_factors([(BaseAtom::Log(k), e)])
}

/// Exponents with small denominators, never zero.
fn small_exponent(rng: &mut TestRng) -> Scalar {
    let choices = [(-2, 1), (-3, 2), (-1, 1), (-1, 2), (1, 3), (1, 2), (1, 1), (3, 2), (2, 1), (3, 1)];
    let (p, q) = *choices.choose(rng).unwrap();
    scalar::ratio(p, q)
}

/// A generation-two prototype: `ω^a · ln(ω)^b · exp(ω)^c`, each part optional.
pub fn gen2_proto(rng: &mut TestRng) -> Prototype {
    let mut p = Prototype::unit();
    if rng.gen_bool(0.7) {
        p = p.mul(&omega_pow(small_exponent(rng))).unwrap();
    }
    if rng.gen_bool(0.4) {
        p = p.mul(&log_pow(1, small_exponent(rng))).unwrap();
    }
    if rng.gen_bool(0.3) {
        let e = Prototype::exp_of(&InNumber::from(Prototype::omega())).unwrap();
        p = p.mul(&e.pow(&scalar::int(if rng.gen_bool(0.5) { 1 } else { -1 })).unwrap()).unwrap();
    }
    p
}

pub fn small_rational(rng: &mut TestRng) -> Scalar {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=6);
        if n != 0 {
            return scalar::ratio(n, d);
        }
    }
}

/// One to three terms with rational coefficients.
pub fn gen2_limit(rng: &mut TestRng) -> Limit {
    let k = rng.gen_range(1..=3);
    Limit::from_terms((0..k).map(|_| Term::new(small_rational(rng), gen2_proto(rng))).collect())
}

pub fn nonzero_limit(rng: &mut TestRng) -> Limit {
    loop {
        let l = gen2_limit(rng);
        if !l.is_zero() {
            return l;
        }
    }
}

/// A ratio of limits, or a plain limit about a third of the time.
pub fn gen2_innumber(rng: &mut TestRng) -> InNumber {
    let num = gen2_limit(rng);
    if rng.gen_bool(0.35) {
        return InNumber::from(num);
    }
    InNumber::new(num, nonzero_limit(rng)).unwrap()
}

/// Arguments of exponentials in the comparison generator.
fn exp_argument(rng: &mut TestRng) -> InNumber {
    let half = scalar::ratio(1, 2);
    let one = scalar::int(1);
    let choices = [
        omega_pow(half),
        Prototype::omega(),
        omega_pow(one.clone()).mul(&log_pow(1, scalar::int(-1))).unwrap(),
        omega_pow(one).mul(&log_pow(1, scalar::int(1))).unwrap(),
    ];
    let p = choices.choose(rng).unwrap().clone();
    let c = if rng.gen_bool(0.25) { scalar::int(2) } else { scalar::int(1) };
    InNumber::from(Term::new(c, p))
}

/// Prototypes up to generation three whose pairwise orderings are already
/// decided at indices between 10⁶ and 10⁹. At most one logarithmic factor,
/// and exponentials only of arguments below `ω·ln(ω)`.
pub fn comparable_proto(rng: &mut TestRng) -> Prototype {
    let mut p = Prototype::unit();
    let factors = rng.gen_range(1..=3);
    let mut used_log = false;
    for _ in 0..factors {
        let f = match rng.gen_range(0..3) {
            0 if !used_log => {
                used_log = true;
                let k = rng.gen_range(1..=2);
                log_pow(k, scalar::int(if rng.gen_bool(0.5) { 1 } else { -1 }))
            }
            0 | 1 => {
                let e = [(-1, 1), (-1, 2), (1, 2), (1, 1), (2, 1)];
                let (a, b) = *e.choose(rng).unwrap();
                omega_pow(scalar::ratio(a, b))
            }
            _ => {
                let e = Prototype::exp_of(&exp_argument(rng)).unwrap();
                e.pow(&scalar::int(if rng.gen_bool(0.5) { 1 } else { -1 })).unwrap()
            }
        };
        p = p.mul(&f).unwrap();
    }
    p
}
