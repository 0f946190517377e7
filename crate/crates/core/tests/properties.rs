use std::sync::Arc;

use bch_workbench::codes::{bch_build, dual, min_distance, CodeSpec, Family, LinearCode, TraceDual};
use bch_workbench::cyclotomic::coset_leaders;
use bch_workbench::designs::{verify_design, weight4_blocks_det};
use bch_workbench::diophantine::{gcd_minus_plus, gcd_plus_plus, UnitEquation};
use bch_workbench::enumerate::{weight_histogram, DEFAULT_BUDGET};
use bch_workbench::galois::{field, Field};
use bch_workbench::linalg::Matrix;
use bch_workbench::subfield::{bch_subfield_embedding, subfield_subcode_bch};
use bch_workbench::weights::{macwilliams, WeightDistribution};
use bch_workbench::Error;
use num_bigint::BigUint;
use proptest::prelude::*;

const FIELDS: [(u32, u32); 8] = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (2, 4), (5, 2)];
const FAMILY: [(u64, u64); 8] = [(8, 3), (9, 3), (9, 1), (16, 6), (16, 7), (25, 10), (27, 4), (32, 14)];

fn pick_field(i: usize) -> Arc<Field> {
    let (p, m) = FIELDS[i % FIELDS.len()];
    field(p, m).unwrap()
}

fn euclid(a: BigUint, b: BigUint) -> BigUint {
    if b == BigUint::ZERO {
        a
    } else {
        let r = &a % &b;
        euclid(b, r)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(fi in 0usize..8, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = pick_field(fi);
        let (a, b, c) = (a % f.order(), b % f.order(), c % f.order());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        prop_assert_eq!(f.pow_nn(a, f.order() as u64), a);
    }

    #[test]
    fn macwilliams_is_an_involution(fi in 0usize..4, n in 2usize..8, seed in prop::collection::vec(any::<u32>(), 64)) {
        let f = pick_field(fi);
        let k = 1 + seed[0] as usize % (n - 1);
        let rows: Vec<Vec<u32>> = (0..k).map(|r| (0..n).map(|c| seed[1 + r * n + c] % f.order()).collect()).collect();
        let code = LinearCode::from_generator(f.clone(), &Matrix::from_rows(&rows, n));
        let q = f.order() as u64;
        let a = WeightDistribution::from_counts(n, q, code.k, &weight_histogram(&f, &code.gen_matrix, DEFAULT_BUDGET).unwrap());
        let b = macwilliams(&a).unwrap();
        let direct = weight_histogram(&f, &code.check_matrix, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(&b, &WeightDistribution::from_counts(n, q, n - code.k, &direct));
        prop_assert_eq!(macwilliams(&b).unwrap(), a);
    }

    #[test]
    fn trace_words_lie_in_the_dual(ci in 0usize..8, a in any::<u32>(), b in any::<u32>()) {
        let (q, h) = FAMILY[ci];
        let td = TraceDual::new(q, h).unwrap();
        let (a, b) = (a % td.ext.order(), b % td.ext.order());
        let d = dual(&bch_build(CodeSpec::antiprimitive(q, h)).unwrap());
        prop_assert!(d.contains(&td.codeword(a, b)));
        if a != 0 || b != 0 {
            let n = UnitEquation::new(q, h).unwrap().count(a, b).unwrap().value as usize;
            prop_assert_eq!(td.weight(a, b), q as usize + 1 - n);
        }
    }

    #[test]
    fn closed_form_counts_agree(ci in 0usize..8, x in 1u32..u32::MAX, zero_a in any::<bool>()) {
        let (q, h) = FAMILY[ci];
        let eq = UnitEquation::new(q, h).unwrap();
        let x = 1 + x % (eq.ext.order() - 1);
        let (a, b) = if zero_a { (0, x) } else { (x, 0) };
        let predicted = eq.predict(a, b).unwrap().value;
        prop_assert_eq!(predicted, eq.count(a, b).unwrap().value);
        prop_assert!(eq.allowed().contains(&predicted));
    }

    #[test]
    fn gcd_closed_forms(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), i in 1u64..30, s in 1u64..30) {
        let big = |e: u64| BigUint::from(p).pow(e as u32);
        let one = BigUint::from(1u32);
        prop_assert_eq!(euclid(big(i) + &one, big(s) + &one), BigUint::from(gcd_plus_plus(p, i, s)));
        prop_assert_eq!(euclid(big(i) - &one, big(s) + &one), BigUint::from(gcd_minus_plus(p, i, s)));
    }

    #[test]
    fn cosets_partition(n in 2u64..200, qi in 0usize..6) {
        let q = [2u64, 3, 4, 5, 8, 9][qi];
        prop_assume!(bch_workbench::arith::gcd(n, q) == 1);
        let mut seen = vec![0u32; n as usize];
        for c in coset_leaders(n, q).unwrap() {
            prop_assert_eq!(c.leader, *c.members.iter().min().unwrap());
            for &m in &c.members {
                seen[m as usize] += 1;
                prop_assert!(c.members.contains(&(m * q % n)));
            }
        }
        prop_assert!(seen.iter().all(|&x| x == 1));
    }

    #[test]
    fn dropping_a_block_breaks_the_design(ci in 0usize..3, drop in any::<prop::sample::Index>()) {
        let (q, h) = [(9u64, 3u64), (16, 6), (27, 12)][ci];
        let mut blocks = weight4_blocks_det(q, h, DEFAULT_BUDGET).unwrap();
        verify_design(&blocks, q as usize + 1, 3).unwrap();
        blocks.remove(drop.index(blocks.len()));
        let broken = matches!(verify_design(&blocks, q as usize + 1, 3), Err(Error::NotRegular { .. }));
        prop_assert!(broken);
    }
}

#[test]
fn subcode_words_are_parent_words() {
    for (q, h, t) in [(16u64, 4u64, 2u32), (16, 4, 1), (9, 3, 1), (27, 12, 1), (32, 8, 1), (64, 16, 2)] {
        let spec = CodeSpec::antiprimitive(q, h);
        let parent = bch_build(spec).unwrap();
        let sub = subfield_subcode_bch(spec, t).unwrap();
        let emb = bch_subfield_embedding(spec, t).unwrap();
        for r in 0..sub.k {
            let lifted: Vec<u32> = sub.gen_matrix.row(r).iter().map(|&x| emb.up(x)).collect();
            assert!(parent.contains(&lifted), "q={q} h={h} t={t}");
        }
        assert!(sub.n - (q.ilog(sub.q()) as usize) * (sub.n - parent.k) <= sub.k);
        assert_ne!(Family::detect(q, h), Family::Generic);
        if q <= 32 {
            let (d, d_parent) = (min_distance(&sub, DEFAULT_BUDGET).unwrap(), min_distance(&parent, DEFAULT_BUDGET).unwrap());
            assert!(d >= d_parent, "q={q} h={h} t={t}: {d} < {d_parent}");
        }
    }
}
