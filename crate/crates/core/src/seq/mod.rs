//! Rings of eventually constant sequences: `r = (r_n)` with `r_n ∈ R_n`,
//! equal to the reduction of a tail value for all large `n`.
//!
//! An element is a finite map of exceptional coordinates plus a tail. The
//! form is canonical: an exception equal to the tail reduction is dropped,
//! so derived equality is ring equality.

pub mod alg;
pub mod int;
pub mod vasc;

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::Ring;

pub use alg::AlgSeq;
pub use int::{IntSeq, Moduli};
pub use vasc::{Vasc, VascElem};

/// Coordinate rings `R_n` together with a tail domain and its reductions.
pub trait SeqModel: Debug {
    type Coord: Clone + Eq + Debug;
    type Tail: Clone + Eq + Debug;

    fn reduce(&self, t: &Self::Tail, n: usize) -> Self::Coord;
    fn c_add(&self, n: usize, a: &Self::Coord, b: &Self::Coord) -> Self::Coord;
    fn c_mul(&self, n: usize, a: &Self::Coord, b: &Self::Coord) -> Self::Coord;
    fn c_neg(&self, n: usize, a: &Self::Coord) -> Self::Coord;
    fn c_zero(&self, n: usize) -> Self::Coord;
    fn c_one(&self, n: usize) -> Self::Coord;
    fn c_is_unit(&self, n: usize, a: &Self::Coord) -> bool;
    fn c_is_idempotent(&self, n: usize, a: &Self::Coord) -> bool;
    /// Least nonzero `c ∈ R_n` with `c·a = 0`.
    fn c_annihilator(&self, n: usize, a: &Self::Coord) -> Option<Self::Coord>;

    fn t_add(&self, a: &Self::Tail, b: &Self::Tail) -> Self::Tail;
    fn t_mul(&self, a: &Self::Tail, b: &Self::Tail) -> Self::Tail;
    fn t_neg(&self, a: &Self::Tail) -> Self::Tail;
    fn t_zero(&self) -> Self::Tail;
    fn t_one(&self) -> Self::Tail;
    /// Canonical representative, so derived equality is tail equality.
    fn t_canon(&self, t: Self::Tail) -> Self::Tail {
        t
    }
    /// Idempotent under every reduction from some index on.
    fn t_is_idempotent(&self, t: &Self::Tail) -> bool;
    /// First `n ≥ from` whose reduction of `t` is not a unit.
    fn t_first_nonunit(&self, t: &Self::Tail, from: usize) -> Option<usize>;

    fn stalk_at(&self, n: usize) -> Result<Stalk>;
    /// `R/⊕R_n`, which is the ring of tail values.
    fn stalk_at_infinity(&self) -> Result<Stalk>;

    fn coord_literal(&self, n: usize, a: &Self::Coord) -> Value;
    fn tail_literal(&self, t: &Self::Tail) -> Value;
    fn parse_coord(&self, n: usize, v: &Value) -> Result<Self::Coord>;
    fn parse_tail(&self, v: &Value) -> Result<Self::Tail>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqElem<C, T> {
    pub exceptions: BTreeMap<usize, C>,
    pub tail: T,
}

pub type ElemOf<M> = SeqElem<<M as SeqModel>::Coord, <M as SeqModel>::Tail>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeqPoint {
    Infinity,
    At(usize),
}

impl SeqPoint {
    pub fn pure_ideal_description(&self) -> String {
        match self {
            SeqPoint::Infinity => "⊕R_n".to_string(),
            SeqPoint::At(n) => format!("R(1−e_{n})"),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SeqPoint::Infinity => json!({"tag": "x_inf", "pure_ideal": self.pure_ideal_description()}),
            SeqPoint::At(n) => json!({"tag": "x_n", "n": n, "pure_ideal": self.pure_ideal_description()}),
        }
    }
}

/// A local ring at a point: finite, or the integers when the tail domain is `Z`.
#[derive(Debug, Clone)]
pub enum Stalk {
    Finite(Ring),
    Integers,
}

impl Stalk {
    pub fn finite(&self) -> Option<&Ring> {
        match self {
            Stalk::Finite(r) => Some(r),
            Stalk::Integers => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regularity<E> {
    /// Every coordinate is a unit.
    AllUnits,
    /// A nonzero finitely supported element killing the input.
    Annihilator(E),
}

#[derive(Debug, Clone)]
pub struct SeqRing<M: SeqModel> {
    model: M,
}

impl<M: SeqModel> SeqRing<M> {
    pub fn new(model: M) -> Self {
        SeqRing { model }
    }

    pub fn model(&self) -> &M {
        &self.model
    }

    /// Builds an element, normalizing away redundant exceptions.
    pub fn elem(&self, exceptions: BTreeMap<usize, M::Coord>, tail: M::Tail) -> ElemOf<M> {
        let tail = self.model.t_canon(tail);
        let exceptions = exceptions
            .into_iter()
            .filter(|(n, c)| *c != self.model.reduce(&tail, *n))
            .collect();
        SeqElem { exceptions, tail }
    }

    pub fn from_tail(&self, tail: M::Tail) -> ElemOf<M> {
        SeqElem {
            exceptions: BTreeMap::new(),
            tail: self.model.t_canon(tail),
        }
    }

    pub fn zero(&self) -> ElemOf<M> {
        self.from_tail(self.model.t_zero())
    }

    pub fn one(&self) -> ElemOf<M> {
        self.from_tail(self.model.t_one())
    }

    /// The idempotent `e_n`: 1 at coordinate `n`, 0 elsewhere.
    pub fn e(&self, n: usize) -> ElemOf<M> {
        self.single(n, self.model.c_one(n))
    }

    /// `c·e_n`.
    pub fn single(&self, n: usize, c: M::Coord) -> ElemOf<M> {
        self.elem(BTreeMap::from([(n, c)]), self.model.t_zero())
    }

    pub fn coord(&self, a: &ElemOf<M>, n: usize) -> M::Coord {
        match a.exceptions.get(&n) {
            Some(c) => c.clone(),
            None => self.model.reduce(&a.tail, n),
        }
    }

    fn combine(
        &self,
        a: &ElemOf<M>,
        b: &ElemOf<M>,
        tail: M::Tail,
        op: impl Fn(usize, &M::Coord, &M::Coord) -> M::Coord,
    ) -> ElemOf<M> {
        let keys = a.exceptions.keys().chain(b.exceptions.keys());
        let exceptions = keys
            .map(|&n| (n, op(n, &self.coord(a, n), &self.coord(b, n))))
            .collect();
        self.elem(exceptions, tail)
    }

    pub fn add(&self, a: &ElemOf<M>, b: &ElemOf<M>) -> ElemOf<M> {
        let t = self.model.t_add(&a.tail, &b.tail);
        self.combine(a, b, t, |n, x, y| self.model.c_add(n, x, y))
    }

    pub fn mul(&self, a: &ElemOf<M>, b: &ElemOf<M>) -> ElemOf<M> {
        let t = self.model.t_mul(&a.tail, &b.tail);
        self.combine(a, b, t, |n, x, y| self.model.c_mul(n, x, y))
    }

    pub fn neg(&self, a: &ElemOf<M>) -> ElemOf<M> {
        let t = self.model.t_neg(&a.tail);
        self.combine(a, a, t, |n, x, _| self.model.c_neg(n, x))
    }

    pub fn sub(&self, a: &ElemOf<M>, b: &ElemOf<M>) -> ElemOf<M> {
        self.add(a, &self.neg(b))
    }

    pub fn is_zero(&self, a: &ElemOf<M>) -> bool {
        *a == self.zero()
    }

    /// Exceptions past the support are reductions of the tail, so the
    /// exceptional coordinates and the tail decide idempotency.
    pub fn is_idempotent(&self, a: &ElemOf<M>) -> bool {
        self.model.t_is_idempotent(&a.tail)
            && a.exceptions.iter().all(|(&n, c)| self.model.c_is_idempotent(n, c))
            && self.below_support(a).all(|n| self.model.c_is_idempotent(n, &self.coord(a, n)))
    }

    fn below_support(&self, a: &ElemOf<M>) -> std::ops::Range<usize> {
        0..a.exceptions.keys().next_back().map_or(0, |&n| n + 1)
    }

    pub fn regularity(&self, a: &ElemOf<M>) -> Regularity<ElemOf<M>> {
        let bound = self.below_support(a).end;
        let bad = (0..bound)
            .find(|&n| !self.model.c_is_unit(n, &self.coord(a, n)))
            .or_else(|| self.model.t_first_nonunit(&a.tail, bound));
        match bad {
            None => Regularity::AllUnits,
            Some(n) => {
                let c = self
                    .model
                    .c_annihilator(n, &self.coord(a, n))
                    .expect("a non-unit of a finite ring is a zero divisor");
                Regularity::Annihilator(self.single(n, c))
            }
        }
    }

    pub fn is_regular(&self, a: &ElemOf<M>) -> bool {
        self.regularity(a) == Regularity::AllUnits
    }

    /// `x_∞` first, then `x_0, x_1, …`; the stream is infinite.
    pub fn points(&self) -> impl Iterator<Item = SeqPoint> {
        std::iter::once(SeqPoint::Infinity).chain((0..).map(SeqPoint::At))
    }

    /// Membership in the pure ideal `A(x)` of a point.
    pub fn in_pure_ideal(&self, x: SeqPoint, a: &ElemOf<M>) -> bool {
        match x {
            SeqPoint::Infinity => a.tail == self.model.t_zero(),
            SeqPoint::At(n) => self.coord(a, n) == self.model.c_zero(n),
        }
    }

    /// `x ⊆ D(e)` for an idempotent `e`, i.e. `1 − e ∈ A(x)`.
    pub fn point_in_open(&self, x: SeqPoint, e: &ElemOf<M>) -> bool {
        self.is_idempotent(e) && self.in_pure_ideal(x, &self.sub(&self.one(), e))
    }

    /// An idempotent `e` with `x ⊆ D(e)` and `y ⊆ D(1−e)`.
    pub fn separating_idempotent(&self, x: SeqPoint, y: SeqPoint) -> Result<ElemOf<M>> {
        let e = match (x, y) {
            _ if x == y => return Err(Error::SamePoint),
            (SeqPoint::At(m), _) => self.e(m),
            (SeqPoint::Infinity, SeqPoint::At(m)) => self.sub(&self.one(), &self.e(m)),
            (SeqPoint::Infinity, SeqPoint::Infinity) => unreachable!(),
        };
        let f = self.sub(&self.one(), &e);
        if !(self.point_in_open(x, &e) && self.point_in_open(y, &f)) {
            return Err(Error::InvariantViolated(format!("{e:?} does not separate {x:?} from {y:?}")));
        }
        Ok(e)
    }

    pub fn stalk(&self, x: SeqPoint) -> Result<Stalk> {
        match x {
            SeqPoint::Infinity => self.model.stalk_at_infinity(),
            SeqPoint::At(n) => self.model.stalk_at(n),
        }
    }

    /// An element of `(0:a)` outside the ideal generated by `gens`.
    ///
    /// Picks the least coordinate `n` where every generator vanishes. Every
    /// element of the generated ideal vanishes there too, so a nonzero
    /// `c·e_n` with `c·a_n = 0` is a non-member.
    pub fn annihilator_refuter(&self, a: &ElemOf<M>, gens: &[ElemOf<M>]) -> Result<ElemOf<M>> {
        if let Some(g) = gens.iter().find(|g| !self.is_zero(&self.mul(g, a))) {
            return Err(Error::NotInAnnihilator(self.to_json(g).to_string()));
        }
        let bound = gens.iter().map(|g| self.below_support(g).end).max().unwrap_or(0);
        // Past every support a generator's coordinates repeat with its tail;
        // a tail that never vanishes makes the search unbounded, so it is capped.
        let limit = bound + 4096;
        for n in 0..limit {
            let zero = self.model.c_zero(n);
            if gens.iter().any(|g| self.coord(g, n) != zero) {
                continue;
            }
            if let Some(c) = self.model.c_annihilator(n, &self.coord(a, n)) {
                let w = self.single(n, c);
                debug_assert!(self.is_zero(&self.mul(&w, a)));
                return Ok(w);
            }
        }
        Err(Error::InvalidArgument(format!(
            "no coordinate below {limit} where all generators vanish and a is a zero divisor"
        )))
    }

    /// Bounded search for `a = e + r` with `e` idempotent and `r` regular,
    /// over idempotents whose exceptions lie below `support`.
    pub fn almost_clean_search(
        &self,
        a: &ElemOf<M>,
        support: usize,
        tails: &[M::Tail],
        coords: impl Fn(usize) -> Vec<M::Coord>,
    ) -> Option<(ElemOf<M>, ElemOf<M>)> {
        let idems: Vec<Vec<M::Coord>> = (0..support)
            .map(|n| coords(n).into_iter().filter(|c| self.model.c_is_idempotent(n, c)).collect())
            .collect();
        for t in tails.iter().filter(|t| self.model.t_is_idempotent(t)) {
            let mut choice = vec![0usize; support];
            loop {
                let exc = (0..support).map(|n| (n, idems[n][choice[n]].clone())).collect();
                let e = self.elem(exc, t.clone());
                let r = self.sub(a, &e);
                if self.is_idempotent(&e) && self.is_regular(&r) {
                    return Some((e, r));
                }
                let Some(k) = (0..support).find(|&k| choice[k] + 1 < idems[k].len()) else {
                    break;
                };
                choice[k] += 1;
                choice[..k].iter_mut().for_each(|c| *c = 0);
            }
        }
        None
    }

    pub fn to_json(&self, a: &ElemOf<M>) -> Value {
        let exc: serde_json::Map<String, Value> = a
            .exceptions
            .iter()
            .map(|(n, c)| (n.to_string(), self.model.coord_literal(*n, c)))
            .collect();
        json!({"exceptions": exc, "tail": self.model.tail_literal(&a.tail)})
    }

    pub fn parse(&self, v: &Value) -> Result<ElemOf<M>> {
        let tail = self.model.parse_tail(v.get("tail").ok_or_else(|| Error::Parse("missing tail".into()))?)?;
        let mut exceptions = BTreeMap::new();
        if let Some(map) = v.get("exceptions") {
            let map = map.as_object().ok_or_else(|| Error::Parse("exceptions must be an object".into()))?;
            for (k, c) in map {
                let n: usize = k.parse().map_err(|_| Error::Parse(format!("bad coordinate index {k}")))?;
                exceptions.insert(n, self.model.parse_coord(n, c)?);
            }
        }
        Ok(self.elem(exceptions, tail))
    }
}

/// JSON names for the sequence rings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeqDescriptor {
    Seq(SeqSpec),
    Vasconcelos,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tail", rename_all = "snake_case", deny_unknown_fields)]
pub enum SeqSpec {
    /// `R_n = Z/m_n`; either `pattern` repeats periodically or `R_n = Z/base^(n+offset)`.
    Integer {
        #[serde(default)]
        pattern: Vec<u64>,
        #[serde(default)]
        powers: Option<(u64, u32)>,
    },
    /// `R_n = V/I_{n mod P}` for a finite base algebra `V`.
    Algebra {
        base: crate::ring::RingDescriptor,
        pattern: Vec<Vec<Value>>,
        #[serde(default)]
        extra_tail_generators: Vec<Vec<Value>>,
    },
}

/// A built sequence ring of either family.
#[derive(Debug, Clone)]
pub enum AnySeq {
    Integer(SeqRing<IntSeq>),
    Algebra(SeqRing<AlgSeq>),
    Vasconcelos(Vasc),
}

impl SeqDescriptor {
    pub fn from_json(text: &str) -> Result<SeqDescriptor> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<AnySeq> {
        Ok(match self {
            SeqDescriptor::Vasconcelos => AnySeq::Vasconcelos(Vasc),
            SeqDescriptor::Seq(SeqSpec::Integer { pattern, powers }) => {
                let moduli = match (pattern.is_empty(), powers) {
                    (false, None) => Moduli::periodic(pattern)?,
                    (true, Some((b, o))) => Moduli::powers(*b, *o)?,
                    _ => {
                        return Err(Error::InvalidDescriptor(
                            "give exactly one of pattern and powers".into(),
                        ))
                    }
                };
                AnySeq::Integer(SeqRing::new(IntSeq::new(moduli)))
            }
            SeqDescriptor::Seq(SeqSpec::Algebra {
                base,
                pattern,
                extra_tail_generators,
            }) => {
                let base = base.build()?;
                let ideals = pattern
                    .iter()
                    .map(|g| Ok(base.ideal(&base.parse_all(g)?)))
                    .collect::<Result<Vec<_>>>()?;
                let extras = extra_tail_generators
                    .iter()
                    .map(|g| base.parse_all(g))
                    .collect::<Result<Vec<_>>>()?;
                AnySeq::Algebra(SeqRing::new(AlgSeq::new(base, ideals, extras)?))
            }
        })
    }
}
