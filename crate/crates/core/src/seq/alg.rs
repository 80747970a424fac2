//! Sequences over quotients of a finite algebra `V`: `R_n = V/I_{n mod P}`,
//! with tails drawn from the diagonal image of `V` plus extra periodic
//! generators.
//!
//! A tail is a vector over one period. The tail domain is the subring of
//! `Π_{k<P} R_k` generated by those vectors, built once as a table ring.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::{SeqModel, Stalk};
use crate::error::{Error, Result};
use crate::ring::{Elem, Ideal, Ring};

#[derive(Debug, Clone)]
pub struct AlgSeq {
    base: Ring,
    coords: Vec<Ring>,
    tail: Ring,
    /// Tail element index to its period vector.
    vectors: Vec<Vec<Elem>>,
    /// Base element to its diagonal tail.
    diag: Vec<Elem>,
}

impl AlgSeq {
    /// `pattern` lists `I_0, …, I_{P−1}`; each extra generator lists one
    /// base element per period coordinate.
    pub fn new(base: Ring, pattern: Vec<Ideal>, extras: Vec<Vec<Elem>>) -> Result<AlgSeq> {
        if pattern.is_empty() {
            return Err(Error::InvalidDescriptor("empty ideal pattern".into()));
        }
        if pattern.iter().any(|i| i.is_whole()) {
            return Err(Error::InvalidDescriptor("coordinate rings must be nonzero".into()));
        }
        let p = pattern.len();
        let coords: Vec<Ring> = pattern.iter().map(|i| base.quotient(i)).collect::<Result<_>>()?;
        let project = |b: &[Elem]| -> Vec<Elem> { (0..p).map(|k| coords[k].project(b[k])).collect() };
        let diagonal = |b: Elem| -> Vec<Elem> { project(&vec![b; p]) };

        let mut seeds: Vec<Vec<Elem>> = base.elements().map(diagonal).collect();
        for e in &extras {
            if e.len() != p {
                return Err(Error::InvalidDescriptor(format!(
                    "extra tail generator has {} coordinates, period is {p}",
                    e.len()
                )));
            }
            seeds.push(project(e));
        }
        let vadd = |a: &[Elem], b: &[Elem]| -> Vec<Elem> { (0..p).map(|k| coords[k].add(a[k], b[k])).collect() };
        let vmul = |a: &[Elem], b: &[Elem]| -> Vec<Elem> { (0..p).map(|k| coords[k].mul(a[k], b[k])).collect() };

        let mut set: BTreeSet<Vec<Elem>> = seeds.into_iter().collect();
        let cap = base.caps().elements;
        loop {
            let cur: Vec<_> = set.iter().cloned().collect();
            let before = set.len();
            for a in &cur {
                for b in &cur {
                    set.insert(vadd(a, b));
                    set.insert(vmul(a, b));
                }
            }
            if set.len() as u64 > cap as u64 {
                return Err(Error::cap("elements", set.len() as u64, cap as u64));
            }
            if set.len() == before {
                break;
            }
        }
        let vectors: Vec<Vec<Elem>> = set.into_iter().collect();
        let index = |v: &[Elem]| Elem(vectors.binary_search_by(|w| w.as_slice().cmp(v)).expect("closed") as u32);
        let n = vectors.len();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in &vectors {
            for b in &vectors {
                add.push(index(&vadd(a, b)).0);
                mul.push(index(&vmul(a, b)).0);
            }
        }
        let labels = vectors
            .iter()
            .map(|v| {
                let parts: Vec<String> = v.iter().zip(&coords).map(|(&c, r)| r.fmt_elem(c)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let one = index(&diagonal(base.one()));
        let tail = Ring::from_tables("tail domain", labels, add, mul, one, base.caps())?;
        let diag = base.elements().map(|b| index(&diagonal(b))).collect();
        Ok(AlgSeq {
            base,
            coords,
            tail,
            vectors,
            diag,
        })
    }

    /// `V = F₂[x]/(x²)` with `R_{2p} = V` and `R_{2p+1} = V/xV ≅ F₂`.
    pub fn non_qif() -> AlgSeq {
        let v = Ring::nilpotent(2, &["x"], 2, vec![]).expect("small algebra");
        let x = v.parse(&json!([0, 1])).expect("x");
        AlgSeq::new(v.clone(), vec![v.zero_ideal(), v.principal(x)], vec![]).expect("valid pattern")
    }

    /// `R_n = V` for all `n`, with tails spanned by `1`, `y = (x, 0)` and
    /// `z = (0, x)` over a period of two.
    pub fn q3() -> AlgSeq {
        let v = Ring::nilpotent(2, &["x"], 2, vec![]).expect("small algebra");
        let x = v.parse(&json!([0, 1])).expect("x");
        let o = v.zero();
        AlgSeq::new(v.clone(), vec![v.zero_ideal(), v.zero_ideal()], vec![vec![x, o], vec![o, x]])
            .expect("valid pattern")
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn period(&self) -> usize {
        self.coords.len()
    }

    pub fn coord_ring(&self, n: usize) -> &Ring {
        &self.coords[n % self.period()]
    }

    pub fn tail_ring(&self) -> &Ring {
        &self.tail
    }

    /// The constant tail of a base element.
    pub fn diagonal(&self, b: Elem) -> Elem {
        self.diag[b.idx()]
    }

    /// The tail with the given period vector, if it lies in the tail domain.
    pub fn tail_of(&self, v: &[Elem]) -> Option<Elem> {
        self.vectors.binary_search_by(|w| w.as_slice().cmp(v)).ok().map(|i| Elem(i as u32))
    }
}

impl SeqModel for AlgSeq {
    type Coord = Elem;
    type Tail = Elem;

    fn reduce(&self, t: &Elem, n: usize) -> Elem {
        self.vectors[t.idx()][n % self.period()]
    }

    fn c_add(&self, n: usize, a: &Elem, b: &Elem) -> Elem {
        self.coord_ring(n).add(*a, *b)
    }

    fn c_mul(&self, n: usize, a: &Elem, b: &Elem) -> Elem {
        self.coord_ring(n).mul(*a, *b)
    }

    fn c_neg(&self, n: usize, a: &Elem) -> Elem {
        self.coord_ring(n).neg(*a)
    }

    fn c_zero(&self, _: usize) -> Elem {
        Elem(0)
    }

    fn c_one(&self, n: usize) -> Elem {
        self.coord_ring(n).one()
    }

    fn c_is_unit(&self, n: usize, a: &Elem) -> bool {
        self.coord_ring(n).is_unit(*a)
    }

    fn c_is_idempotent(&self, n: usize, a: &Elem) -> bool {
        self.coord_ring(n).is_idempotent(*a)
    }

    fn c_annihilator(&self, n: usize, a: &Elem) -> Option<Elem> {
        let r = self.coord_ring(n);
        r.elements().skip(1).find(|&c| r.mul(c, *a) == r.zero())
    }

    fn t_add(&self, a: &Elem, b: &Elem) -> Elem {
        self.tail.add(*a, *b)
    }

    fn t_mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.tail.mul(*a, *b)
    }

    fn t_neg(&self, a: &Elem) -> Elem {
        self.tail.neg(*a)
    }

    fn t_zero(&self) -> Elem {
        self.tail.zero()
    }

    fn t_one(&self) -> Elem {
        self.tail.one()
    }

    fn t_is_idempotent(&self, t: &Elem) -> bool {
        self.tail.is_idempotent(*t)
    }

    fn t_first_nonunit(&self, t: &Elem, from: usize) -> Option<usize> {
        (from..from + self.period()).find(|&n| !self.c_is_unit(n, &self.reduce(t, n)))
    }

    fn stalk_at(&self, n: usize) -> Result<Stalk> {
        Ok(Stalk::Finite(self.coord_ring(n).clone()))
    }

    fn stalk_at_infinity(&self) -> Result<Stalk> {
        Ok(Stalk::Finite(self.tail.clone()))
    }

    fn coord_literal(&self, n: usize, a: &Elem) -> Value {
        self.base.literal(self.coord_ring(n).lift(*a))
    }

    fn tail_literal(&self, t: &Elem) -> Value {
        let v = &self.vectors[t.idx()];
        Value::Array((0..self.period()).map(|k| self.coord_literal(k, &v[k])).collect())
    }

    fn parse_coord(&self, n: usize, v: &Value) -> Result<Elem> {
        Ok(self.coord_ring(n).project(self.base.parse(v)?))
    }

    /// A base literal (constant tail) or a list with one literal per period coordinate.
    fn parse_tail(&self, v: &Value) -> Result<Elem> {
        if let Ok(b) = self.base.parse(v) {
            return Ok(self.diagonal(b));
        }
        let items = v
            .as_array()
            .filter(|a| a.len() == self.period())
            .ok_or_else(|| Error::Parse(format!("bad tail literal {v}")))?;
        let vec = items
            .iter()
            .enumerate()
            .map(|(k, x)| self.parse_coord(k, x))
            .collect::<Result<Vec<_>>>()?;
        self.tail_of(&vec)
            .ok_or_else(|| Error::Parse(format!("{v} is not in the tail domain")))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{SeqPoint, SeqRing};
    use super::*;
    use crate::properties::arithmetical_check;
    use crate::ring::find_isomorphism;

    #[test]
    fn non_qif_stalks() {
        let r = SeqRing::new(AlgSeq::non_qif());
        let v = Ring::nilpotent(2, &["X"], 2, vec![]).unwrap();
        let k = Ring::zmod(2).unwrap();
        let s4 = r.stalk(SeqPoint::At(4)).unwrap();
        let s3 = r.stalk(SeqPoint::At(3)).unwrap();
        assert!(find_isomorphism(s4.finite().unwrap(), &v).is_some());
        assert!(find_isomorphism(s3.finite().unwrap(), &k).is_some());
        let inf = r.stalk(SeqPoint::Infinity).unwrap();
        assert!(find_isomorphism(inf.finite().unwrap(), &v).is_some());
    }

    #[test]
    fn non_qif_annihilator_of_x() {
        let m = AlgSeq::non_qif();
        let x = m.base().parse(&json!([0, 1])).unwrap();
        let r = SeqRing::new(m);
        let a = r.from_tail(r.model().diagonal(x));
        let w = r.annihilator_refuter(&a, &[a.clone()]).unwrap();
        assert_eq!(w, r.e(1));
    }

    #[test]
    fn q3_tail_domain_is_not_arithmetical() {
        let r = SeqRing::new(AlgSeq::q3());
        let t = r.stalk(SeqPoint::Infinity).unwrap().finite().unwrap().clone();
        assert_eq!(t.size(), 8);
        let target = Ring::nilpotent(2, &["Y", "Z"], 2, vec![]).unwrap();
        assert!(find_isomorphism(&t, &target).is_some());
        assert!(!arithmetical_check(&t).unwrap().holds);
    }

    #[test]
    fn q3_yz_product_has_no_exceptions() {
        let m = AlgSeq::q3();
        let v = m.base().clone();
        let x = v.parse(&json!([0, 1])).unwrap();
        let y = m.tail_of(&[x, v.zero()]).unwrap();
        let z = m.tail_of(&[v.zero(), x]).unwrap();
        let r = SeqRing::new(m);
        let p = r.mul(&r.from_tail(y), &r.from_tail(z));
        assert!(r.is_zero(&p));
    }

    #[test]
    fn tail_literals_round_trip() {
        let r = SeqRing::new(AlgSeq::q3());
        let a = r.parse(&json!({"exceptions": {"3": [1, 1]}, "tail": [[0, 1], [0, 0]]})).unwrap();
        assert_eq!(r.parse(&r.to_json(&a)).unwrap(), a);
        assert_eq!(a.exceptions.len(), 1);
    }
}
