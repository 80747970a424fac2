//! `Z × (Z/2)^(N)` with `(m,x)(n,y) = (mn, nx + my + xy)`; the second factor
//! is finitely supported and multiplies coordinatewise.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VascElem {
    pub m: BigInt,
    /// Support of the `(Z/2)^(N)` part.
    pub x: BTreeSet<usize>,
}

impl VascElem {
    pub fn new(m: impl Into<BigInt>, x: impl IntoIterator<Item = usize>) -> VascElem {
        VascElem {
            m: m.into(),
            x: x.into_iter().collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let m = match self.m.to_i64() {
            Some(k) => json!(k),
            None => json!(self.m.to_string()),
        };
        json!({"m": m, "x": self.x})
    }

    pub fn from_json(v: &Value) -> Result<VascElem> {
        let m = match v.get("m") {
            Some(Value::Number(n)) => n.as_i64().map(BigInt::from),
            Some(Value::String(s)) => s.parse().ok(),
            _ => None,
        }
        .ok_or_else(|| Error::Parse(format!("bad m in {v}")))?;
        let x = match v.get("x") {
            None => BTreeSet::new(),
            Some(xs) => serde_json::from_value(xs.clone()).map_err(|e| Error::Parse(e.to_string()))?,
        };
        Ok(VascElem { m, x })
    }
}

fn odd(m: &BigInt) -> bool {
    m.is_odd()
}

fn sym_diff(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.symmetric_difference(b).copied().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Vasc;

impl Vasc {
    pub fn zero(&self) -> VascElem {
        VascElem::new(0, [])
    }

    pub fn one(&self) -> VascElem {
        VascElem::new(1, [])
    }

    pub fn add(&self, a: &VascElem, b: &VascElem) -> VascElem {
        VascElem {
            m: &a.m + &b.m,
            x: sym_diff(&a.x, &b.x),
        }
    }

    pub fn neg(&self, a: &VascElem) -> VascElem {
        VascElem {
            m: -&a.m,
            x: a.x.clone(),
        }
    }

    pub fn sub(&self, a: &VascElem, b: &VascElem) -> VascElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &VascElem, b: &VascElem) -> VascElem {
        let empty = BTreeSet::new();
        let nx = if odd(&b.m) { &a.x } else { &empty };
        let my = if odd(&a.m) { &b.x } else { &empty };
        let xy: BTreeSet<usize> = a.x.intersection(&b.x).copied().collect();
        VascElem {
            m: &a.m * &b.m,
            x: sym_diff(&sym_diff(nx, my), &xy),
        }
    }

    pub fn is_zero(&self, a: &VascElem) -> bool {
        a.m.is_zero() && a.x.is_empty()
    }

    pub fn is_idempotent(&self, a: &VascElem) -> bool {
        a.m.is_zero() || a.m.is_one()
    }

    pub fn is_regular(&self, a: &VascElem) -> bool {
        odd(&a.m) && a.x.is_empty()
    }

    /// `None` when regular; otherwise `(0, {i})` with `m + x_i` even.
    pub fn annihilator(&self, a: &VascElem) -> Option<VascElem> {
        if self.is_regular(a) {
            return None;
        }
        let i = if odd(&a.m) {
            *a.x.iter().next().expect("odd m with empty x is regular")
        } else {
            (0..).find(|i| !a.x.contains(i)).expect("finite support")
        };
        let w = VascElem::new(0, [i]);
        debug_assert!(self.is_zero(&self.mul(&w, a)));
        Some(w)
    }

    /// `a = e + r` with `e` idempotent and `r` regular: `m` odd splits as
    /// `(0,x) + (m,∅)`, `m` even as `(1,x) + (m−1,∅)`.
    pub fn almost_clean_decompose(&self, a: &VascElem) -> Result<(VascElem, VascElem)> {
        let (e, r) = if odd(&a.m) {
            (VascElem::new(0, a.x.iter().copied()), VascElem::new(a.m.clone(), []))
        } else {
            (VascElem::new(1, a.x.iter().copied()), VascElem::new(&a.m - 1, []))
        };
        if !self.is_idempotent(&e) || self.mul(&e, &e) != e || !self.is_regular(&r) || self.add(&e, &r) != *a {
            return Err(Error::InvariantViolated(format!("bad decomposition of {a:?}")));
        }
        Ok((e, r))
    }

    /// Least nonzero `(n, y)` with `n ∈ [−2, 2]`, `y ⊆ [0, bound)` and
    /// `(n, y)·a = 0`, ordered by `n` then the bitmask of `y`.
    pub fn bounded_annihilator_search(&self, a: &VascElem, bound: usize) -> Option<VascElem> {
        assert!(bound < 32, "support bound too large for exhaustive search");
        for n in -2i64..=2 {
            for mask in 0u32..(1 << bound) {
                if n == 0 && mask == 0 {
                    continue;
                }
                let w = VascElem::new(n, (0..bound).filter(|i| mask >> i & 1 == 1));
                if self.is_zero(&self.mul(&w, a)) {
                    return Some(w);
                }
            }
        }
        None
    }

    /// An element of `(0:a)` outside the ideal generated by `gens`.
    ///
    /// For even `m ≠ 0`, `(0:(m,x)) = 0 × {y : y ∩ x = ∅}`. An ideal generated
    /// by `(0,s_i)` has supports inside `∪ s_i`, so `(0, {k})` for the least
    /// `k` outside `x ∪ s_1 ∪ …` is a non-member.
    pub fn annihilator_refuter(&self, a: &VascElem, gens: &[VascElem]) -> Result<VascElem> {
        if odd(&a.m) || a.m.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "the annihilator of {} is finitely generated",
                a.to_json()
            )));
        }
        if let Some(g) = gens.iter().find(|g| !self.is_zero(&self.mul(g, a))) {
            return Err(Error::NotInAnnihilator(g.to_json().to_string()));
        }
        let used: BTreeSet<usize> = gens.iter().flat_map(|g| g.x.iter().copied()).chain(a.x.iter().copied()).collect();
        let k = (0..).find(|k| !used.contains(k)).expect("finite support");
        let w = VascElem::new(0, [k]);
        if !self.is_zero(&self.mul(&w, a)) || gens.iter().any(|g| !g.m.is_zero()) {
            return Err(Error::InvariantViolated("refuter preconditions".into()));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(m: i64, x: &[usize]) -> VascElem {
        VascElem::new(m, x.iter().copied())
    }

    #[test]
    fn decompositions() {
        let r = Vasc;
        assert_eq!(r.almost_clean_decompose(&v(5, &[0, 2])).unwrap(), (v(0, &[0, 2]), v(5, &[])));
        assert_eq!(r.almost_clean_decompose(&v(4, &[1])).unwrap(), (v(1, &[1]), v(3, &[])));
        assert_eq!(r.almost_clean_decompose(&v(0, &[])).unwrap(), (v(1, &[]), v(-1, &[])));
    }

    #[test]
    fn classifiers() {
        let r = Vasc;
        assert!(r.is_idempotent(&v(1, &[0])));
        assert!(!r.is_regular(&v(1, &[0])));
        assert_eq!(r.annihilator(&v(1, &[0])), Some(v(0, &[0])));
        assert!(r.is_regular(&v(7, &[])));
        assert!(!r.is_regular(&v(2, &[])));
        assert_eq!(r.annihilator(&v(2, &[])), Some(v(0, &[0])));
    }

    #[test]
    fn refuter() {
        let r = Vasc;
        let w = r.annihilator_refuter(&v(2, &[]), &[v(0, &[0]), v(0, &[1])]).unwrap();
        assert_eq!(w, v(0, &[2]));
        assert!(matches!(
            r.annihilator_refuter(&v(2, &[]), &[v(1, &[])]),
            Err(Error::NotInAnnihilator(_))
        ));
        assert_eq!(r.annihilator_refuter(&v(2, &[]), &[]).unwrap(), v(0, &[0]));
    }

    #[test]
    fn json_round_trip() {
        let a = v(-3, &[1, 4]);
        assert_eq!(VascElem::from_json(&a.to_json()).unwrap(), a);
    }
}
