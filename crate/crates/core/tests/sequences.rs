use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use finring::seq::{ElemOf, IntSeq, Moduli, Regularity, SeqModel, SeqPoint, SeqRing, Vasc, VascElem};

/// Indices past every exception, far enough to cover several periods.
const HORIZON: usize = 64;

fn periodic() -> SeqRing<IntSeq> {
    SeqRing::new(IntSeq::new(Moduli::periodic(&[4, 6, 9]).unwrap()))
}

fn powers() -> SeqRing<IntSeq> {
    SeqRing::new(IntSeq::new(Moduli::powers(2, 1).unwrap()))
}

fn seq_elem() -> impl Strategy<Value = (Vec<(usize, i64)>, i64)> {
    (prop::collection::vec((0usize..12, -50i64..50), 0..4), -50i64..50)
}

fn build(s: &SeqRing<IntSeq>, (ex, t): &(Vec<(usize, i64)>, i64)) -> ElemOf<IntSeq> {
    let m = s.model();
    let exceptions: BTreeMap<usize, BigInt> = ex.iter().map(|&(n, c)| (n, m.reduce(&BigInt::from(c), n))).collect();
    s.elem(exceptions, BigInt::from(*t))
}

fn vasc_elem() -> impl Strategy<Value = VascElem> {
    (-20i64..20, prop::collection::btree_set(0usize..10, 0..5)).prop_map(|(m, x)| VascElem::new(m, x))
}

fn check_coordinatewise(s: &SeqRing<IntSeq>, a: &ElemOf<IntSeq>, b: &ElemOf<IntSeq>) -> Result<(), TestCaseError> {
    let m = s.model();
    let (sum, prod, neg) = (s.add(a, b), s.mul(a, b), s.neg(a));
    for n in 0..HORIZON {
        let (x, y) = (s.coord(a, n), s.coord(b, n));
        prop_assert_eq!(s.coord(&sum, n), m.c_add(n, &x, &y));
        prop_assert_eq!(s.coord(&prod, n), m.c_mul(n, &x, &y));
        prop_assert_eq!(s.coord(&neg, n), m.c_neg(n, &x));
    }
    Ok(())
}

proptest! {
    #[test]
    fn periodic_arithmetic_is_coordinatewise(a in seq_elem(), b in seq_elem()) {
        let s = periodic();
        check_coordinatewise(&s, &build(&s, &a), &build(&s, &b))?;
    }

    #[test]
    fn powers_arithmetic_is_coordinatewise(a in seq_elem(), b in seq_elem()) {
        let s = powers();
        check_coordinatewise(&s, &build(&s, &a), &build(&s, &b))?;
    }

    #[test]
    fn normal_form_is_canonical(a in seq_elem()) {
        // Equal sequences compare equal however they were written.
        let s = periodic();
        let x = build(&s, &a);
        let y = s.add(&s.mul(&x, &s.one()), &s.zero());
        prop_assert_eq!(&x, &y);
        for (&n, c) in &x.exceptions {
            prop_assert_ne!(c, &s.model().reduce(&x.tail, n));
        }
        prop_assert_eq!(s.parse(&s.to_json(&x)).unwrap(), x);
    }

    #[test]
    fn regularity_certificates_annihilate(a in seq_elem()) {
        let s = periodic();
        let x = build(&s, &a);
        match s.regularity(&x) {
            Regularity::AllUnits => {
                for n in 0..HORIZON {
                    prop_assert!(s.model().c_is_unit(n, &s.coord(&x, n)));
                }
            }
            Regularity::Annihilator(w) => {
                prop_assert!(!s.is_zero(&w));
                prop_assert!(s.is_zero(&s.mul(&w, &x)));
            }
        }
    }

    #[test]
    fn separating_idempotents_separate(i in 0usize..20, j in 0usize..20, inf in any::<bool>()) {
        let s = periodic();
        let x = if inf { SeqPoint::Infinity } else { SeqPoint::At(i) };
        let y = SeqPoint::At(j);
        prop_assume!(x != y);
        let e = s.separating_idempotent(x, y).unwrap();
        prop_assert!(s.is_idempotent(&e));
        prop_assert!(s.point_in_open(x, &e) != s.point_in_open(y, &e));
    }

    #[test]
    fn vasconcelos_ring_axioms(a in vasc_elem(), b in vasc_elem(), c in vasc_elem()) {
        let r = Vasc;
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
        prop_assert!(r.is_zero(&r.add(&a, &r.neg(&a))));
    }

    #[test]
    fn vasconcelos_almost_clean(a in vasc_elem()) {
        let r = Vasc;
        let (e, t) = r.almost_clean_decompose(&a).unwrap();
        prop_assert_eq!(r.mul(&e, &e), e.clone());
        prop_assert!(r.is_regular(&t));
        prop_assert_eq!(r.add(&e, &t), a);
    }

    #[test]
    fn vasconcelos_annihilator_agrees_with_search(a in vasc_elem()) {
        let r = Vasc;
        let found = r.bounded_annihilator_search(&a, 11);
        prop_assert_eq!(r.annihilator(&a).is_some(), found.is_some());
        if let Some(w) = r.annihilator(&a) {
            prop_assert!(r.is_zero(&r.mul(&w, &a)));
        }
    }

    #[test]
    fn vasconcelos_refuter_escapes_generated_ideal(
        half in 1i64..10,
        x in prop::collection::btree_set(0usize..10, 0..5),
        gens in prop::collection::vec(prop::collection::btree_set(0usize..12, 0..4), 0..4),
    ) {
        let r = Vasc;
        let a = VascElem::new(2 * half, x);
        // Generators inside (0:a): supports disjoint from a's.
        let gens: Vec<VascElem> = gens
            .into_iter()
            .map(|g| VascElem::new(0, g.difference(&a.x).copied().collect::<Vec<_>>()))
            .collect();
        let w = r.annihilator_refuter(&a, &gens).unwrap();
        prop_assert!(r.is_zero(&r.mul(&w, &a)));
        let k = *w.x.iter().next().unwrap();
        prop_assert!(gens.iter().all(|g| !g.x.contains(&k)));
    }
}

#[test]
fn refuter_rejects_regular_and_zero_m() {
    let r = Vasc;
    assert!(r.annihilator_refuter(&VascElem::new(3, []), &[]).is_err());
    assert!(r.annihilator_refuter(&VascElem::new(0, [1]), &[]).is_err());
}

#[test]
fn points_start_at_infinity() {
    let s = periodic();
    let pts: Vec<SeqPoint> = s.points().take(3).collect();
    assert_eq!(pts, [SeqPoint::Infinity, SeqPoint::At(0), SeqPoint::At(1)]);
    assert!(s.stalk(SeqPoint::Infinity).unwrap().finite().is_some());
    assert!(powers().stalk(SeqPoint::Infinity).unwrap().finite().is_none());
}
