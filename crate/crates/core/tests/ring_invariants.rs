use std::sync::OnceLock;

use proptest::prelude::*;

use finring::properties::{almost_clean_decomposition, clean_decomposition, hermite_witness, is_edr, snf, Matrix};
use finring::spectrum::{idempotent_generator, is_pure, pspec};
use finring::{Elem, Ring, RingDescriptor};

const DESCRIPTORS: &[&str] = &[
    r#"{"kind":"zmod","n":12}"#,
    r#"{"kind":"zmod","n":8}"#,
    r#"{"kind":"product","factors":[{"kind":"zmod","n":4},{"kind":"zmod","n":3}]}"#,
    r#"{"kind":"product","factors":[{"kind":"zmod","n":2},{"kind":"zmod","n":2},{"kind":"zmod","n":3}]}"#,
    r#"{"kind":"nilpotent_algebra","p":2,"vars":["x","y"],"truncation_degree":2}"#,
    r#"{"kind":"trivial_extension","ring":{"kind":"zmod","n":6},"module":{"cyclic_summands":[[2],[3]]}}"#,
];

fn rings() -> &'static [Ring] {
    static RINGS: OnceLock<Vec<Ring>> = OnceLock::new();
    RINGS.get_or_init(|| {
        DESCRIPTORS
            .iter()
            .map(|d| RingDescriptor::from_json(d).unwrap().build().unwrap())
            .collect()
    })
}

/// A ring index and `k` raw element seeds, reduced mod the ring size at use.
fn ring_and(k: usize) -> impl Strategy<Value = (usize, Vec<u32>)> {
    (0..DESCRIPTORS.len(), prop::collection::vec(any::<u32>(), k))
}

fn elems(r: &Ring, seeds: &[u32]) -> Vec<Elem> {
    seeds.iter().map(|s| Elem(s % r.size() as u32)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms((i, s) in ring_and(3)) {
        let r = &rings()[i];
        let [a, b, c] = elems(r, &s)[..] else { unreachable!() };
        prop_assert_eq!(r.add(a, b), r.add(b, a));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.add(a, r.neg(a)), r.zero());
        prop_assert_eq!(r.mul(a, r.one()), a);
    }

    #[test]
    fn literal_round_trip((i, s) in ring_and(1)) {
        let r = &rings()[i];
        let a = elems(r, &s)[0];
        prop_assert_eq!(r.parse(&r.literal(a)).unwrap(), a);
    }

    #[test]
    fn hermite_witness_is_valid((i, s) in ring_and(2)) {
        let r = &rings()[i];
        let [a, b] = elems(r, &s)[..] else { unreachable!() };
        if let Some((d, a1, b1)) = hermite_witness(r, a, b).unwrap() {
            prop_assert_eq!(r.mul(d, a1), a);
            prop_assert_eq!(r.mul(d, b1), b);
            prop_assert!(r.ideal(&[a1, b1]).is_whole());
        }
    }

    #[test]
    fn decompositions_are_valid((i, s) in ring_and(1)) {
        let r = &rings()[i];
        let a = elems(r, &s)[0];
        if let Some((e, u)) = clean_decomposition(r, a) {
            prop_assert!(r.is_idempotent(e) && r.is_unit(u));
            prop_assert_eq!(r.add(e, u), a);
        }
        // Finite rings are clean, hence almost clean.
        let (e, t) = almost_clean_decomposition(r, a).expect("finite rings are almost clean");
        prop_assert!(r.is_idempotent(e) && r.is_regular(t));
        prop_assert_eq!(r.add(e, t), a);
    }

    #[test]
    fn snf_verifies((i, s) in ring_and(9), dims in (1usize..=3, 1usize..=3)) {
        let r = &rings()[i];
        prop_assume!(is_edr(r).unwrap());
        let (m, n) = dims;
        let a = Matrix::new(m, n, elems(r, &s[..m * n]));
        let f = snf(r, &a).unwrap();
        prop_assert_eq!(f.p.mul(r, &a).mul(r, &f.q), f.d.clone());
        prop_assert!(f.d.is_diagonal());
        prop_assert!(r.is_unit(f.p.det(r)) && r.is_unit(f.q.det(r)));
        let diag = f.d.diagonal();
        for w in diag.windows(2) {
            prop_assert!(r.principal(w[1]).is_subset(&r.principal(w[0])));
        }
    }
}

#[test]
fn pure_ideals_of_blocks_are_idempotent_generated() {
    for r in rings() {
        for block in pspec(r).unwrap() {
            let a = &block.pure_ideal;
            assert!(is_pure(r, a).pure, "{}", r.name());
            let e = idempotent_generator(r, a).expect("finite pure ideals are generated by an idempotent");
            assert_eq!(r.principal(e).elements().count(), a.len());
        }
    }
}

#[test]
fn non_edr_ring_rejects_snf() {
    let r = &rings()[4];
    assert!(!is_edr(r).unwrap());
    let a = Matrix::new(1, 2, vec![Elem(1), Elem(2)]);
    assert!(matches!(snf(r, &a), Err(finring::Error::NotEdr)));
}
