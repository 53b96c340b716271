mod common;

use std::cmp::Ordering;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use omegalim::engine::limit_of;
use omegalim::generations::{self, Params};
use omegalim::oracle::{self, default_schedule, numeric_compare};
use omegalim::parse::{parse_proto, parse_value, Value};
use omegalim::scalar;
use omegalim::{InNumber, Prototype, SeqExpr, TowerValue};

use common::TestRng;

fn rng(seed: u64) -> TestRng {
    common::rng(seed)
}

/// Sequences whose limits are exact: rational combinations of a few leaves.
fn exact_seq(rng: &mut TestRng, depth: u32) -> SeqExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        let leaves = [
            SeqExpr::n(),
            SeqExpr::n().ln(),
            SeqExpr::n().exp(),
            SeqExpr::n().pow(scalar::ratio(1, 2)),
            SeqExpr::n().powi(-1),
        ];
        if rng.gen_bool(0.25) {
            return SeqExpr::c(rng.gen_range(1..=5));
        }
        return leaves.choose(rng).unwrap().clone();
    }
    let (a, b) = (exact_seq(rng, depth - 1), exact_seq(rng, depth - 1));
    match rng.gen_range(0..3) {
        0 => a.add(b),
        1 => a.sub(b),
        _ => a.mul(b),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn prototype_order_is_total_and_antisymmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q) = (common::comparable_proto(&mut r), common::gen2_proto(&mut r));
        prop_assert_eq!(p.compare(&q), q.compare(&p).reverse());
        prop_assert_eq!(p.compare(&p), Ordering::Equal);
    }

    #[test]
    fn prototype_order_is_transitive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut v = [common::comparable_proto(&mut r), common::comparable_proto(&mut r), common::comparable_proto(&mut r)];
        v.sort_by(|a, b| a.compare(b));
        prop_assert_ne!(v[0].compare(&v[2]), Ordering::Greater);
        prop_assert_ne!(v[0].compare(&v[1]), Ordering::Greater);
        prop_assert_ne!(v[1].compare(&v[2]), Ordering::Greater);
    }

    #[test]
    fn prototypes_form_an_ordered_group(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q, s) = (common::comparable_proto(&mut r), common::comparable_proto(&mut r), common::gen2_proto(&mut r));
        let pq = p.mul(&q).unwrap();
        prop_assert!(pq.div(&q).unwrap() == p);
        prop_assert!(p.mul(&q.mul(&s).unwrap()).unwrap() == pq.mul(&s).unwrap());
        prop_assert!(pq == q.mul(&p).unwrap());
        prop_assert!(p.mul(&Prototype::unit()).unwrap() == p);
        prop_assert_eq!(p.mul(&s).unwrap().compare(&q.mul(&s).unwrap()), p.compare(&q));
        prop_assert_eq!(p.is_infinite(), p.compare(&Prototype::unit()) == Ordering::Greater);
    }

    #[test]
    fn innumber_field_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y, z) = (common::gen2_innumber(&mut r), common::gen2_innumber(&mut r), common::gen2_innumber(&mut r));
        prop_assert!(x.add(&y).add(&z) == x.add(&y.add(&z)));
        prop_assert!(x.mul(&y.add(&z)) == x.mul(&y).add(&x.mul(&z)));
        prop_assert!(x.sub(&x).is_zero());
        if !y.is_zero() {
            prop_assert!(x.div(&y).unwrap().mul(&y) == x);
        }
    }

    #[test]
    fn innumber_order_is_compatible(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y, z) = (common::gen2_innumber(&mut r), common::gen2_innumber(&mut r), common::gen2_innumber(&mut r));
        let o = x.compare(&y);
        prop_assert_eq!(o, x.sub(&y).sign());
        prop_assert_eq!(x.add(&z).compare(&y.add(&z)), o);
        match z.sign() {
            Ordering::Greater => prop_assert_eq!(x.mul(&z).compare(&y.mul(&z)), o),
            Ordering::Less => prop_assert_eq!(x.mul(&z).compare(&y.mul(&z)), o.reverse()),
            Ordering::Equal => {}
        }
    }

    #[test]
    fn limits_are_closed_and_inverses_are_ratios(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (common::gen2_limit(&mut r), common::nonzero_limit(&mut r));
        prop_assert!(InNumber::from(a.add(&b)).is_limit());
        prop_assert!(InNumber::from(a.mul(&b)).is_limit());
        let inv = InNumber::from(b.clone()).inv().unwrap();
        prop_assert_eq!(inv.is_limit(), b.len() == 1);
        prop_assert!(inv.mul(&InNumber::from(b)) == InNumber::one());
    }

    #[test]
    fn expansions_are_prefix_stable(seed in any::<u64>(), k in 1usize..6) {
        let mut r = rng(seed);
        let x = common::gen2_innumber(&mut r);
        let short = x.truncate(k);
        let long = x.truncate(k + 1);
        prop_assert!(long.len() >= short.len());
        prop_assert_eq!(&long.terms()[..short.len()], short.terms());
    }

    #[test]
    fn rendering_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = common::comparable_proto(&mut r);
        let back = parse_proto(&p.to_string()).unwrap();
        prop_assert!(back.structurally_eq(&p), "{} reparsed as {}", p, back);
        let x = common::gen2_innumber(&mut r);
        match parse_value(&x.to_string(), 4).unwrap() {
            Value::Number(y) => prop_assert!(y == x, "{} reparsed as {}", x, y),
            Value::Class(c) => prop_assert!(false, "{} reparsed as class {}", x, c),
        }
    }

    #[test]
    fn limits_are_homomorphic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (exact_seq(&mut r, 2), exact_seq(&mut r, 2));
        let (la, lb) = (limit_of(&a, 4).unwrap(), limit_of(&b, 4).unwrap());
        prop_assert!(limit_of(&a.clone().add(b.clone()), 4).unwrap() == la.add(&lb));
        prop_assert!(limit_of(&a.clone().sub(b.clone()), 4).unwrap() == la.sub(&lb));
        prop_assert!(limit_of(&a.clone().mul(b.clone()), 4).unwrap() == la.mul(&lb));
        if !lb.is_zero() {
            prop_assert!(limit_of(&a.div(b), 4).unwrap() == la.div(&lb).unwrap());
        }
    }

    #[test]
    fn tower_normalization_is_idempotent(h in 0u32..4, m in 1.0f64..1e14) {
        let t = TowerValue::tower(h, m);
        prop_assert_eq!(TowerValue::tower(t.height(), t.mantissa()), t);
        let u = TowerValue::tower(h, m * 1.5);
        prop_assert_eq!(t.compare(&u), Ordering::Less);
        if let (Some(lt), Some(lu)) = (t.ln(), u.ln()) {
            prop_assert_ne!(lt.compare(&lu), Ordering::Greater);
        }
    }
}

#[test]
fn generation_two_pairs_stabilize_numerically() {
    let rows = generations::table(2).unwrap().unwrap();
    let schedule = default_schedule();
    for pair in rows.windows(2) {
        let r = numeric_compare(&pair[0].proto, &pair[1].proto, &schedule).unwrap();
        assert!(r.stable, "{} vs {}", pair[0].proto, pair[1].proto);
        assert_eq!(r.ordering, Ordering::Less, "{} vs {}", pair[0].proto, pair[1].proto);
    }
}

#[test]
fn eval_proto_is_eventually_monotone() {
    let mut r = rng(7);
    for _ in 0..100 {
        let p = common::comparable_proto(&mut r);
        if !p.is_infinite() {
            continue;
        }
        let values: Vec<TowerValue> = (4..=9).map(|k| oracle::eval_proto_at(&p, 10f64.powi(k)).unwrap()).collect();
        for w in values.windows(2) {
            assert_eq!(w[0].compare(&w[1]), Ordering::Less, "{p}: {values:?}");
        }
    }
}

#[test]
fn generation_chains_are_parameter_instances() {
    let p = Params::new(scalar::ratio(1, 2), scalar::int(2), scalar::int(3), scalar::int(1));
    for g in 0..=3 {
        let entries = generations::chain(g, &p).unwrap().unwrap();
        assert_eq!(entries.len(), generations::templates(g).unwrap().len());
    }
}
