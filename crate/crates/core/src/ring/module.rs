use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde_json::Value;

use super::{Elem, Ideal, Ring};
use crate::error::{Error, Result};

/// `R/I₁ ⊕ … ⊕ R/I_k` with the evident action.
///
/// Elements are encoded mixed-radix with the first summand most significant;
/// each component is an element of `R/I_j`, ordered by least representative.
#[derive(Clone)]
pub struct CyclicModule(Arc<Inner>);

struct Inner {
    ring: Ring,
    summands: Vec<Ideal>,
    quotients: Vec<Ring>,
    place: Vec<usize>,
    size: usize,
    add_t: Option<Vec<u32>>,
    smul_t: Option<Vec<u32>>,
}

const TABLE_LIMIT: usize = 1 << 20;

impl CyclicModule {
    pub fn new(ring: &Ring, summands: Vec<Ideal>) -> Result<CyclicModule> {
        let quotients: Vec<Ring> = summands.iter().map(|i| ring.quotient(i)).collect::<Result<_>>()?;
        let cap = ring.caps().elements as u128;
        let size: u128 = quotients.iter().map(|q| q.size() as u128).product();
        if size > cap {
            return Err(Error::cap("module elements", size, cap));
        }
        let size = size as usize;
        let mut place = vec![1usize; quotients.len()];
        for i in (0..quotients.len().saturating_sub(1)).rev() {
            place[i] = place[i + 1] * quotients[i + 1].size();
        }
        let mut inner = Inner {
            ring: ring.clone(),
            summands,
            quotients,
            place,
            size,
            add_t: None,
            smul_t: None,
        };
        if size * size <= TABLE_LIMIT && ring.size() * size <= TABLE_LIMIT {
            let add = (0..size * size)
                .map(|t| inner.add_raw(Elem((t / size) as u32), Elem((t % size) as u32)).0)
                .collect();
            let smul = (0..ring.size() * size)
                .map(|t| inner.smul_raw(Elem((t / size) as u32), Elem((t % size) as u32)).0)
                .collect();
            inner.add_t = Some(add);
            inner.smul_t = Some(smul);
        }
        Ok(CyclicModule(Arc::new(inner)))
    }

    /// The free module `Rⁿ`.
    pub fn free(ring: &Ring, n: usize) -> Result<CyclicModule> {
        CyclicModule::new(ring, vec![ring.zero_ideal(); n])
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn summands(&self) -> &[Ideal] {
        &self.0.summands
    }

    pub fn quotients(&self) -> &[Ring] {
        &self.0.quotients
    }

    pub fn rank(&self) -> usize {
        self.0.summands.len()
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.size as u32).map(Elem)
    }

    pub fn component(&self, m: Elem, k: usize) -> Elem {
        self.0.component(m, k)
    }

    pub fn compose(&self, parts: &[Elem]) -> Elem {
        self.0.compose(parts)
    }

    /// The canonical generator `e_k` of the k-th summand.
    pub fn generator(&self, k: usize) -> Elem {
        let mut parts = vec![Elem::ZERO; self.rank()];
        parts[k] = self.0.quotients[k].one();
        self.compose(&parts)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.add_t {
            Some(t) => Elem(t[a.idx() * self.0.size + b.idx()]),
            None => self.0.add_raw(a, b),
        }
    }

    #[inline]
    pub fn smul(&self, r: Elem, m: Elem) -> Elem {
        match &self.0.smul_t {
            Some(t) => Elem(t[r.idx() * self.0.size + m.idx()]),
            None => self.0.smul_raw(r, m),
        }
    }

    pub fn neg(&self, m: Elem) -> Elem {
        let minus_one = self.0.ring.neg(self.0.ring.one());
        self.smul(minus_one, m)
    }

    /// `Σ rᵢ·mᵢ`.
    pub fn combine(&self, coeffs: &[Elem], ms: &[Elem]) -> Elem {
        coeffs
            .iter()
            .zip(ms)
            .fold(Elem::ZERO, |acc, (&r, &m)| self.add(acc, self.smul(r, m)))
    }

    /// Submodule generated by `gens`, as a member set.
    pub fn span(&self, gens: &[Elem]) -> FixedBitSet {
        let mut members = FixedBitSet::with_capacity(self.size());
        members.insert(0);
        let mut list = vec![Elem::ZERO];
        for &g in gens {
            for r in self.0.ring.elements() {
                let y = self.smul(r, g);
                if members.contains(y.idx()) {
                    continue;
                }
                let base = list.clone();
                let mut step = y;
                while !members.contains(step.idx()) {
                    for &s in &base {
                        let z = self.add(s, step);
                        members.insert(z.idx());
                        list.push(z);
                    }
                    step = self.add(step, y);
                }
            }
        }
        members
    }

    /// `M / A·M`, again a sum of cyclic modules with summands `I_k + A`.
    pub fn reduce_by(&self, a: &Ideal) -> Result<CyclicModule> {
        let ring = &self.0.ring;
        let summands = self.0.summands.iter().map(|i| ring.ideal_sum(i, a)).collect();
        CyclicModule::new(ring, summands)
    }

    /// Elements killed by every generator of `I`.
    pub fn killed_by(&self, i: &Ideal) -> Vec<Elem> {
        let gens = self.0.ring.greedy_gens(i);
        self.elements()
            .filter(|&m| gens.iter().all(|&g| self.smul(g, m) == Elem::ZERO))
            .collect()
    }

    pub fn literal(&self, m: Elem) -> Value {
        let parts = (0..self.rank())
            .map(|k| self.0.quotients[k].literal(self.component(m, k)))
            .collect();
        Value::Array(parts)
    }

    pub fn parse(&self, v: &Value) -> Result<Elem> {
        let arr = v
            .as_array()
            .filter(|a| a.len() == self.rank())
            .ok_or_else(|| Error::Parse(format!("{v} is not an element of {}", self.name())))?;
        let parts: Vec<Elem> = arr
            .iter()
            .zip(&self.0.quotients)
            .map(|(x, q)| q.parse(x))
            .collect::<Result<_>>()?;
        Ok(self.compose(&parts))
    }

    pub fn fmt_elem(&self, m: Elem) -> String {
        self.literal(m).to_string()
    }

    pub fn name(&self) -> String {
        if self.rank() == 0 {
            return "0".into();
        }
        let parts: Vec<String> = self
            .0
            .summands
            .iter()
            .map(|i| {
                if i.is_zero() {
                    "R".to_string()
                } else {
                    format!("R/{}", self.0.ring.fmt_ideal(i))
                }
            })
            .collect();
        format!("[{}]", parts.join(" + "))
    }
}

impl Inner {
    fn component(&self, m: Elem, k: usize) -> Elem {
        Elem(((m.idx() / self.place[k]) % self.quotients[k].size()) as u32)
    }

    fn compose(&self, parts: &[Elem]) -> Elem {
        Elem(parts.iter().zip(&self.place).map(|(x, p)| x.idx() * p).sum::<usize>() as u32)
    }

    fn add_raw(&self, a: Elem, b: Elem) -> Elem {
        let parts: Vec<Elem> = self
            .quotients
            .iter()
            .enumerate()
            .map(|(k, q)| q.add(self.component(a, k), self.component(b, k)))
            .collect();
        self.compose(&parts)
    }

    fn smul_raw(&self, r: Elem, m: Elem) -> Elem {
        let parts: Vec<Elem> = self
            .quotients
            .iter()
            .enumerate()
            .map(|(k, q)| q.mul(q.project(r), self.component(m, k)))
            .collect();
        self.compose(&parts)
    }
}

impl fmt::Debug for CyclicModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicModule({} over {})", self.name(), self.0.ring.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crt_module_is_cyclic() {
        let r = Ring::zmod(6).unwrap();
        let m = CyclicModule::new(&r, vec![r.principal(Elem(2)), r.principal(Elem(3))]).unwrap();
        assert_eq!(m.size(), 6);
        let g = m.add(m.generator(0), m.generator(1));
        assert_eq!(m.span(&[g]).count_ones(..), 6);
        assert_eq!(m.span(&[m.generator(0)]).count_ones(..), 2);
    }

    #[test]
    fn action_and_reduction() {
        let r = Ring::zmod(4).unwrap();
        let m = CyclicModule::free(&r, 2).unwrap();
        let v = m.parse(&serde_json::json!([1, 3])).unwrap();
        let w = m.smul(Elem(2), v);
        assert_eq!(m.literal(w), serde_json::json!([2, 2]));
        let red = m.reduce_by(&r.principal(Elem(2))).unwrap();
        assert_eq!(red.size(), 4);
        assert_eq!(m.neg(v), m.parse(&serde_json::json!([3, 1])).unwrap());
    }
}
