//! Finite commutative rings with canonically ordered elements.
//!
//! Every ring enumerates its elements as indices `0..size` in the canonical
//! order: lexicographic on the encoding. Index 0 is always the zero element,
//! so the least witness of any search is simply the one with smallest indices.

mod descriptor;
mod hom;
mod ideal;
mod module;
mod structure;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use descriptor::{ModuleDescriptor, RingDescriptor};
pub use hom::{find_isomorphism, RingHom};
pub use ideal::{Ideal, PrincipalIdeals};
pub use module::CyclicModule;
pub use structure::LocalFactor;

/// A ring element, as its index in the canonical order of its ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Enumeration limits. Exceeding any of them is an error, never a silent sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub elements: usize,
    pub ideals: usize,
    pub search: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            elements: 1_000_000,
            ideals: 1 << 16,
            search: 100_000_000,
        }
    }
}

/// Rings up to this size get full addition and multiplication tables.
const TABLE_LIMIT: usize = 1024;

#[derive(Clone)]
pub struct Ring(Arc<Inner>);

struct Inner {
    kind: Kind,
    size: usize,
    one: Elem,
    caps: Caps,
    add_t: Option<Box<[u32]>>,
    mul_t: Option<Box<[u32]>>,
    neg_t: Box<[u32]>,
    cache: Cache,
}

#[derive(Default)]
pub(crate) struct Cache {
    pub(crate) idempotents: OnceLock<Vec<Elem>>,
    pub(crate) units: OnceLock<Vec<bool>>,
    pub(crate) principal: OnceLock<Arc<PrincipalIdeals>>,
    pub(crate) ideals: OnceLock<Result<Arc<Vec<Ideal>>>>,
    pub(crate) maximal: OnceLock<Result<Arc<Vec<Ideal>>>>,
    pub(crate) spectrum: OnceLock<Result<Arc<crate::spectrum::Spectrum>>>,
    pub(crate) local_factors: OnceLock<Arc<Vec<LocalFactor>>>,
    pub(crate) edr: OnceLock<bool>,
}

pub(crate) enum Kind {
    ZMod {
        n: u32,
    },
    Product {
        factors: Vec<Ring>,
        place: Vec<usize>,
    },
    Nilpotent(Nil),
    TrivialExt {
        base: Ring,
        module: CyclicModule,
    },
    Quotient {
        base: Ring,
        ideal: Ideal,
        reps: Vec<Elem>,
        class_of: Vec<u32>,
    },
    Corner {
        base: Ring,
        e: Elem,
        members: Vec<Elem>,
        index_of: Vec<u32>,
    },
    Table {
        name: String,
        labels: Vec<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
    },
}

pub(crate) struct Nil {
    p: u32,
    vars: Vec<String>,
    trunc: u32,
    extra: Vec<Vec<u32>>,
    basis: Vec<Vec<u32>>,
    /// `bmul[i * dim + j]` is the basis index of `basis[i] * basis[j]`, if nonzero.
    bmul: Vec<Option<u32>>,
}

impl Nil {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn digits(&self, a: Elem) -> Vec<u32> {
        let d = self.dim();
        let mut out = vec![0; d];
        let mut x = a.0;
        for i in (0..d).rev() {
            out[i] = x % self.p;
            x /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[u32]) -> Elem {
        Elem(digits.iter().fold(0, |acc, &c| acc * self.p + c))
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.digits(a), self.digits(b));
        let d = self.dim();
        let mut out = vec![0u64; d];
        for (i, &xi) in x.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (j, &yj) in y.iter().enumerate().filter(|(_, c)| **c != 0) {
                if let Some(k) = self.bmul[i * d + j] {
                    out[k as usize] += u64::from(xi) * u64::from(yj);
                }
            }
        }
        let p = u64::from(self.p);
        let digits: Vec<u32> = out.into_iter().map(|c| (c % p) as u32).collect();
        self.encode(&digits)
    }

    fn add(&self, a: Elem, b: Elem, sign: i64) -> Elem {
        let p = i64::from(self.p);
        let digits: Vec<u32> = self
            .digits(a)
            .into_iter()
            .zip(self.digits(b))
            .map(|(x, y)| (i64::from(x) + sign * i64::from(y)).rem_euclid(p) as u32)
            .collect();
        self.encode(&digits)
    }

    fn monomial_name(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .zip(&self.vars)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Monomials of total degree below `trunc` not divisible by any extra relation,
/// graded by degree, then lexicographic with the first variable largest.
fn monomial_basis(nvars: usize, trunc: u32, extra: &[Vec<u32>]) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut basis = Vec::new();
    for deg in 0..trunc {
        let mut layer = Vec::new();
        if nvars == 0 {
            if deg == 0 {
                layer.push(Vec::new());
            }
        } else {
            rec(nvars, deg, &mut Vec::new(), &mut layer);
        }
        basis.extend(layer);
    }
    basis.retain(|m| {
        !extra
            .iter()
            .any(|r| r.iter().zip(m).all(|(re, me)| me >= re))
    });
    basis
}

impl Ring {
    fn build(kind: Kind, size: usize, one: Elem, caps: Caps) -> Result<Ring> {
        if size > caps.elements {
            return Err(Error::cap("elements", size as u128, caps.elements as u128));
        }
        let mut inner = Inner {
            kind,
            size,
            one,
            caps,
            add_t: None,
            mul_t: None,
            neg_t: Box::new([]),
            cache: Cache::default(),
        };
        inner.neg_t = (0..size as u32).map(|a| inner.neg_raw(Elem(a)).0).collect();
        if size <= TABLE_LIMIT {
            let mut add = Vec::with_capacity(size * size);
            let mut mul = Vec::with_capacity(size * size);
            for a in 0..size as u32 {
                for b in 0..size as u32 {
                    add.push(inner.add_raw(Elem(a), Elem(b)).0);
                    mul.push(inner.mul_raw(Elem(a), Elem(b)).0);
                }
            }
            inner.add_t = Some(add.into());
            inner.mul_t = Some(mul.into());
        }
        Ok(Ring(Arc::new(inner)))
    }

    pub fn zmod(n: u32) -> Result<Ring> {
        Ring::zmod_with(n, Caps::default())
    }

    pub fn zmod_with(n: u32, caps: Caps) -> Result<Ring> {
        if n < 2 {
            return Err(Error::InvalidDescriptor(format!("ZMod needs n >= 2, got {n}")));
        }
        Ring::build(Kind::ZMod { n }, n as usize, Elem(1), caps)
    }

    pub fn product(factors: Vec<Ring>) -> Result<Ring> {
        let caps = factors.first().map(|f| f.caps()).unwrap_or_default();
        Ring::product_with(factors, caps)
    }

    pub fn product_with(factors: Vec<Ring>, caps: Caps) -> Result<Ring> {
        if factors.is_empty() {
            return Err(Error::InvalidDescriptor("product needs at least one factor".into()));
        }
        let mut size: u128 = 1;
        for f in &factors {
            size *= f.size() as u128;
            if size > caps.elements as u128 {
                return Err(Error::cap("elements", size, caps.elements as u128));
            }
        }
        let mut place = vec![1usize; factors.len()];
        for i in (0..factors.len() - 1).rev() {
            place[i] = place[i + 1] * factors[i + 1].size();
        }
        let one = Elem(factors.iter().zip(&place).map(|(f, p)| f.one().idx() * p).sum::<usize>() as u32);
        Ring::build(Kind::Product { factors, place }, size as usize, one, caps)
    }

    pub fn nilpotent(p: u32, vars: &[&str], trunc: u32, extra: Vec<Vec<u32>>) -> Result<Ring> {
        let vars = vars.iter().map(|s| s.to_string()).collect();
        Ring::nilpotent_with(p, vars, trunc, extra, Caps::default())
    }

    pub fn nilpotent_with(
        p: u32,
        vars: Vec<String>,
        trunc: u32,
        extra: Vec<Vec<u32>>,
        caps: Caps,
    ) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
        }
        if trunc < 1 {
            return Err(Error::InvalidDescriptor("truncation degree must be >= 1".into()));
        }
        if let Some(r) = extra.iter().find(|r| r.len() != vars.len()) {
            return Err(Error::InvalidDescriptor(format!(
                "relation {r:?} has {} exponents for {} variables",
                r.len(),
                vars.len()
            )));
        }
        let basis = monomial_basis(vars.len(), trunc, &extra);
        if basis.is_empty() {
            return Err(Error::InvalidDescriptor("relations kill the identity".into()));
        }
        let size = (p as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
        if size > caps.elements as u128 {
            return Err(Error::cap("elements", size, caps.elements as u128));
        }
        let dim = basis.len();
        let mut bmul = vec![None; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let m: Vec<u32> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
                bmul[i * dim + j] = basis.iter().position(|b| *b == m).map(|k| k as u32);
            }
        }
        let nil = Nil {
            p,
            vars,
            trunc,
            extra,
            basis,
            bmul,
        };
        let one = Elem((p as u128).pow(dim as u32 - 1) as u32);
        Ring::build(Kind::Nilpotent(nil), size as usize, one, caps)
    }

    /// `R ⋉ M` with multiplication `(r,x)(s,y) = (rs, ry + sx)`.
    pub fn trivial_extension(module: CyclicModule) -> Result<Ring> {
        let base = module.ring().clone();
        let caps = base.caps();
        let size = base.size() as u128 * module.size() as u128;
        if size > caps.elements as u128 {
            return Err(Error::cap("elements", size, caps.elements as u128));
        }
        let one = Elem((base.one().idx() * module.size()) as u32);
        Ring::build(Kind::TrivialExt { base, module }, size as usize, one, caps)
    }

    /// `R / I`, elements ordered by their least representative.
    pub fn quotient(&self, ideal: &Ideal) -> Result<Ring> {
        let n = self.size();
        let mut class_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let members: Vec<Elem> = ideal.elements().collect();
        for x in self.elements() {
            if class_of[x.idx()] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &i in &members {
                class_of[self.add(x, i).idx()] = c;
            }
        }
        let one = Elem(class_of[self.one().idx()]);
        let size = reps.len();
        Ring::build(
            Kind::Quotient {
                base: self.clone(),
                ideal: ideal.clone(),
                reps,
                class_of,
            },
            size,
            one,
            self.caps(),
        )
    }

    /// The ring `R·e` with identity `e`, for an idempotent `e`.
    pub fn corner(&self, e: Elem) -> Result<Ring> {
        if self.mul(e, e) != e {
            return Err(Error::InvalidArgument(format!(
                "{} is not idempotent",
                self.fmt_elem(e)
            )));
        }
        let mut members: Vec<Elem> = self.elements().map(|r| self.mul(r, e)).collect();
        members.sort_unstable();
        members.dedup();
        let mut index_of = vec![u32::MAX; self.size()];
        for (i, m) in members.iter().enumerate() {
            index_of[m.idx()] = i as u32;
        }
        let one = Elem(index_of[e.idx()]);
        let size = members.len();
        Ring::build(
            Kind::Corner {
                base: self.clone(),
                e,
                members,
                index_of,
            },
            size,
            one,
            self.caps(),
        )
    }

    /// A ring given by explicit operation tables; element 0 must be the zero.
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
        one: Elem,
        caps: Caps,
    ) -> Result<Ring> {
        let n = labels.len();
        if n == 0 || add.len() != n * n || mul.len() != n * n {
            return Err(Error::InvalidDescriptor("table dimensions do not match".into()));
        }
        if (0..n).any(|a| add[a] as usize != a) {
            return Err(Error::InvalidDescriptor("element 0 is not the additive identity".into()));
        }
        let name = name.into();
        Ring::build(
            Kind::Table {
                name,
                labels,
                add,
                mul,
            },
            n,
            one,
            caps,
        )
    }

    pub(crate) fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub(crate) fn cache(&self) -> &Cache {
        &self.0.cache
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn caps(&self) -> Caps {
        self.0.caps
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        self.0.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.size as u32).map(Elem)
    }

    pub fn ptr_eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.add_t {
            Some(t) => Elem(t[a.idx() * self.0.size + b.idx()]),
            None => self.0.add_raw(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.mul_t {
            Some(t) => Elem(t[a.idx() * self.0.size + b.idx()]),
            None => self.0.mul_raw(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg_t[a.idx()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        let (mut acc, mut base, mut k) = (self.one(), a, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `k·1` for an integer `k`.
    pub fn from_int(&self, k: i64) -> Elem {
        let mut acc = self.zero();
        for _ in 0..k.unsigned_abs() % self.additive_order(self.one()) as u64 {
            acc = self.add(acc, self.one());
        }
        if k < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    pub fn additive_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != Elem::ZERO {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    pub fn sum(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    pub fn name(&self) -> String {
        match self.kind() {
            Kind::ZMod { n } => format!("Z/{n}"),
            Kind::Product { factors, .. } => {
                let parts: Vec<String> = factors.iter().map(|f| f.name()).collect();
                format!("({})", parts.join(" x "))
            }
            Kind::Nilpotent(nil) => {
                let mut rels = vec![format!("({})^{}", nil.vars.join(","), nil.trunc)];
                rels.extend(nil.extra.iter().map(|m| nil.monomial_name(m)));
                format!("F{}[{}]/<{}>", nil.p, nil.vars.join(","), rels.join(", "))
            }
            Kind::TrivialExt { base, module } => format!("{} |x {}", base.name(), module.name()),
            Kind::Quotient { base, ideal, .. } => {
                format!("{}/{}", base.name(), base.fmt_ideal(ideal))
            }
            Kind::Corner { base, e, .. } => format!("{}*{}", base.name(), base.fmt_elem(*e)),
            Kind::Table { name, .. } => name.clone(),
        }
    }

    /// JSON literal of an element, in the input format of its descriptor.
    pub fn literal(&self, a: Elem) -> Value {
        match self.kind() {
            Kind::ZMod { .. } => json!(a.0),
            Kind::Product { factors, .. } => {
                Value::Array(factors.iter().zip(self.split(a)).map(|(f, x)| f.literal(x)).collect())
            }
            Kind::Nilpotent(nil) => json!(nil.digits(a)),
            Kind::TrivialExt { base, module } => {
                let (r, m) = self.te_split(a);
                json!([base.literal(r), module.literal(m)])
            }
            Kind::Quotient { base, reps, .. } => base.literal(reps[a.idx()]),
            Kind::Corner { base, members, .. } => base.literal(members[a.idx()]),
            Kind::Table { labels, .. } => json!(labels[a.idx()]),
        }
    }

    pub fn fmt_elem(&self, a: Elem) -> String {
        match self.kind() {
            Kind::Nilpotent(nil) => {
                let terms: Vec<String> = nil
                    .digits(a)
                    .iter()
                    .zip(&nil.basis)
                    .filter(|(c, _)| **c != 0)
                    .map(|(c, m)| {
                        let mono = nil.monomial_name(m);
                        match (*c, mono.as_str()) {
                            (c, "1") => c.to_string(),
                            (1, _) => mono,
                            (c, _) => format!("{c}{mono}"),
                        }
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
            Kind::Table { labels, .. } => labels[a.idx()].clone(),
            _ => self.literal(a).to_string(),
        }
    }

    pub fn fmt_ideal(&self, i: &Ideal) -> String {
        let gens: Vec<String> = i.gens().iter().map(|g| self.fmt_elem(*g)).collect();
        format!("({})", gens.join(","))
    }

    pub fn parse(&self, v: &Value) -> Result<Elem> {
        let bad = || Error::Parse(format!("{v} is not an element of {}", self.name()));
        match self.kind() {
            Kind::ZMod { n } => {
                let k = v.as_i64().ok_or_else(bad)?;
                Ok(Elem(k.rem_euclid(i64::from(*n)) as u32))
            }
            Kind::Product { factors, place } => {
                let arr = v.as_array().filter(|a| a.len() == factors.len()).ok_or_else(bad)?;
                let mut idx = 0;
                for ((f, p), x) in factors.iter().zip(place).zip(arr) {
                    idx += f.parse(x)?.idx() * p;
                }
                Ok(Elem(idx as u32))
            }
            Kind::Nilpotent(nil) => {
                let arr = v.as_array().filter(|a| a.len() <= nil.dim()).ok_or_else(bad)?;
                let mut digits = vec![0u32; nil.dim()];
                for (d, x) in digits.iter_mut().zip(arr) {
                    *d = x.as_i64().ok_or_else(bad)?.rem_euclid(i64::from(nil.p)) as u32;
                }
                Ok(nil.encode(&digits))
            }
            Kind::TrivialExt { base, module } => {
                let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
                let r = base.parse(&arr[0])?;
                let m = module.parse(&arr[1])?;
                Ok(self.te_join(r, m))
            }
            Kind::Quotient { base, class_of, .. } => Ok(Elem(class_of[base.parse(v)?.idx()])),
            Kind::Corner { base, index_of, .. } => {
                let x = base.parse(v)?;
                match index_of[x.idx()] {
                    u32::MAX => Err(bad()),
                    i => Ok(Elem(i)),
                }
            }
            Kind::Table { labels, .. } => {
                if let Some(s) = v.as_str() {
                    labels.iter().position(|l| l == s).map(|i| Elem(i as u32)).ok_or_else(bad)
                } else {
                    let k = v.as_u64().filter(|k| (*k as usize) < labels.len()).ok_or_else(bad)?;
                    Ok(Elem(k as u32))
                }
            }
        }
    }

    pub fn parse_all(&self, vs: &[Value]) -> Result<Vec<Elem>> {
        vs.iter().map(|v| self.parse(v)).collect()
    }

    /// Components of an element of a product ring.
    pub fn split(&self, a: Elem) -> Vec<Elem> {
        match self.kind() {
            Kind::Product { factors, place } => factors
                .iter()
                .zip(place)
                .map(|(f, p)| Elem(((a.idx() / p) % f.size()) as u32))
                .collect(),
            _ => vec![a],
        }
    }

    pub fn join(&self, parts: &[Elem]) -> Elem {
        match self.kind() {
            Kind::Product { place, .. } => {
                Elem(parts.iter().zip(place).map(|(x, p)| x.idx() * p).sum::<usize>() as u32)
            }
            _ => parts[0],
        }
    }

    pub fn factors(&self) -> Option<&[Ring]> {
        match self.kind() {
            Kind::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// Base ring and module of a trivial extension.
    pub fn trivial_extension_parts(&self) -> Option<(&Ring, &CyclicModule)> {
        match self.kind() {
            Kind::TrivialExt { base, module } => Some((base, module)),
            _ => None,
        }
    }

    pub(crate) fn te_split(&self, a: Elem) -> (Elem, Elem) {
        match self.kind() {
            Kind::TrivialExt { module, .. } => {
                let m = module.size();
                (Elem((a.idx() / m) as u32), Elem((a.idx() % m) as u32))
            }
            _ => (a, Elem::ZERO),
        }
    }

    pub(crate) fn te_join(&self, r: Elem, m: Elem) -> Elem {
        match self.kind() {
            Kind::TrivialExt { module, .. } => Elem((r.idx() * module.size() + m.idx()) as u32),
            _ => r,
        }
    }

    /// For `R/I`: the base ring, the ideal, and the projection of a base element.
    pub fn quotient_parts(&self) -> Option<(&Ring, &Ideal)> {
        match self.kind() {
            Kind::Quotient { base, ideal, .. } => Some((base, ideal)),
            _ => None,
        }
    }

    pub fn project(&self, base_elem: Elem) -> Elem {
        match self.kind() {
            Kind::Quotient { class_of, .. } => Elem(class_of[base_elem.idx()]),
            _ => base_elem,
        }
    }

    /// Least representative of a class of `R/I`.
    pub fn lift(&self, a: Elem) -> Elem {
        match self.kind() {
            Kind::Quotient { reps, .. } => reps[a.idx()],
            Kind::Corner { members, .. } => members[a.idx()],
            _ => a,
        }
    }

    /// For `R·e`: the base ring, `e`, and the index of a base element if it lies in `R·e`.
    pub fn corner_parts(&self) -> Option<(&Ring, Elem)> {
        match self.kind() {
            Kind::Corner { base, e, .. } => Some((base, *e)),
            _ => None,
        }
    }

    pub fn corner_index(&self, base_elem: Elem) -> Option<Elem> {
        match self.kind() {
            Kind::Corner { index_of, .. } => match index_of[base_elem.idx()] {
                u32::MAX => None,
                i => Some(Elem(i)),
            },
            _ => Some(base_elem),
        }
    }
}

impl Inner {
    fn add_raw(&self, a: Elem, b: Elem) -> Elem {
        match &self.kind {
            Kind::ZMod { n } => Elem(((u64::from(a.0) + u64::from(b.0)) % u64::from(*n)) as u32),
            Kind::Product { factors, place } => {
                let mut idx = 0;
                for (f, p) in factors.iter().zip(place) {
                    let x = Elem(((a.idx() / p) % f.size()) as u32);
                    let y = Elem(((b.idx() / p) % f.size()) as u32);
                    idx += f.add(x, y).idx() * p;
                }
                Elem(idx as u32)
            }
            Kind::Nilpotent(nil) => nil.add(a, b, 1),
            Kind::TrivialExt { base, module } => {
                let m = module.size();
                let (r, x) = (Elem((a.idx() / m) as u32), Elem((a.idx() % m) as u32));
                let (s, y) = (Elem((b.idx() / m) as u32), Elem((b.idx() % m) as u32));
                Elem((base.add(r, s).idx() * m + module.add(x, y).idx()) as u32)
            }
            Kind::Quotient {
                base, reps, class_of, ..
            } => Elem(class_of[base.add(reps[a.idx()], reps[b.idx()]).idx()]),
            Kind::Corner {
                base,
                members,
                index_of,
                ..
            } => Elem(index_of[base.add(members[a.idx()], members[b.idx()]).idx()]),
            Kind::Table { add, .. } => Elem(add[a.idx() * self.size + b.idx()]),
        }
    }

    fn mul_raw(&self, a: Elem, b: Elem) -> Elem {
        match &self.kind {
            Kind::ZMod { n } => Elem(((u64::from(a.0) * u64::from(b.0)) % u64::from(*n)) as u32),
            Kind::Product { factors, place } => {
                let mut idx = 0;
                for (f, p) in factors.iter().zip(place) {
                    let x = Elem(((a.idx() / p) % f.size()) as u32);
                    let y = Elem(((b.idx() / p) % f.size()) as u32);
                    idx += f.mul(x, y).idx() * p;
                }
                Elem(idx as u32)
            }
            Kind::Nilpotent(nil) => nil.mul(a, b),
            Kind::TrivialExt { base, module } => {
                let m = module.size();
                let (r, x) = (Elem((a.idx() / m) as u32), Elem((a.idx() % m) as u32));
                let (s, y) = (Elem((b.idx() / m) as u32), Elem((b.idx() % m) as u32));
                let rs = base.mul(r, s);
                let mx = module.add(module.smul(r, y), module.smul(s, x));
                Elem((rs.idx() * m + mx.idx()) as u32)
            }
            Kind::Quotient {
                base, reps, class_of, ..
            } => Elem(class_of[base.mul(reps[a.idx()], reps[b.idx()]).idx()]),
            Kind::Corner {
                base,
                members,
                index_of,
                ..
            } => Elem(index_of[base.mul(members[a.idx()], members[b.idx()]).idx()]),
            Kind::Table { mul, .. } => Elem(mul[a.idx() * self.size + b.idx()]),
        }
    }

    fn neg_raw(&self, a: Elem) -> Elem {
        match &self.kind {
            Kind::ZMod { n } => Elem((n - a.0) % n),
            Kind::Nilpotent(nil) => nil.add(Elem::ZERO, a, -1),
            _ => (0..self.size as u32)
                .map(Elem)
                .find(|&b| self.add_raw(a, b) == Elem::ZERO)
                .expect("additive inverse exists"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({}, |R|={})", self.name(), self.size())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_basis_is_graded() {
        let r = Ring::nilpotent(2, &["x", "y"], 3, vec![]).unwrap();
        let Kind::Nilpotent(nil) = r.kind() else { unreachable!() };
        assert_eq!(
            nil.basis,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        let s = Ring::nilpotent(2, &["x", "y"], 3, vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(s.size(), 16);
    }

    #[test]
    fn element_order_and_literals() {
        let r = Ring::nilpotent(2, &["x", "y"], 2, vec![]).unwrap();
        assert_eq!(r.size(), 8);
        assert_eq!(r.literal(Elem(1)), json!([0, 0, 1]));
        assert_eq!(r.literal(r.one()), json!([1, 0, 0]));
        assert_eq!(r.fmt_elem(Elem(3)), "x+y");
        let x = r.parse(&json!([0, 1])).unwrap();
        assert_eq!(r.mul(x, x), Elem::ZERO);

        let p = Ring::product(vec![Ring::zmod(2).unwrap(), Ring::zmod(2).unwrap()]).unwrap();
        let lits: Vec<Value> = p.elements().map(|a| p.literal(a)).collect();
        assert_eq!(lits, vec![json!([0, 0]), json!([0, 1]), json!([1, 0]), json!([1, 1])]);
        assert_eq!(p.one(), Elem(3));
    }

    #[test]
    fn quotient_and_corner() {
        let z6 = Ring::zmod(6).unwrap();
        let i = z6.principal(Elem(2));
        let q = z6.quotient(&i).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(q.lift(Elem(1)), Elem(1));
        let c = z6.corner(Elem(4)).unwrap();
        assert_eq!(c.size(), 3);
        assert_eq!(c.lift(c.one()), Elem(4));
        assert!(z6.corner(Elem(2)).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let caps = Caps {
            elements: 100,
            ..Caps::default()
        };
        let err = Ring::nilpotent_with(3, vec!["x".into()], 5, vec![], caps).unwrap_err();
        assert!(matches!(err, Error::CapacityExceeded { .. }));
    }
}
