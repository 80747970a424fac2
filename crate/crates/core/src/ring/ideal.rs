use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{Elem, Kind, Ring};
use crate::error::{Error, Result};

/// An ideal of a finite ring: its full member set plus a generating list.
///
/// Equality, hashing and ordering use the member set only. The canonical
/// order compares sorted member lists lexicographically.
#[derive(Debug, Clone)]
pub struct Ideal {
    members: FixedBitSet,
    len: usize,
    gens: Vec<Elem>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Ideal {}

impl std::hash::Hash for Ideal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state)
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.ones().cmp(other.members.ones())
    }
}

impl Ideal {
    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(a.idx())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.len == 1
    }

    pub fn is_whole(&self) -> bool {
        self.len == self.members.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.ones().map(|i| Elem(i as u32))
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Least element outside the ideal, if any.
    pub fn least_outside(&self) -> Option<Elem> {
        self.members.zeroes().next().map(|i| Elem(i as u32))
    }
}

/// Distinct principal ideals and, per element, which one it generates.
///
/// Principal ideals are numbered in order of their least generator, so
/// `least_gen[pid[a]]` is the canonical generator of `Ra`.
#[derive(Debug)]
pub struct PrincipalIdeals {
    pub pid: Vec<u32>,
    pub ideals: Vec<Ideal>,
    pub least_gen: Vec<Elem>,
}

impl Ring {
    pub fn zero_ideal(&self) -> Ideal {
        let mut members = FixedBitSet::with_capacity(self.size());
        members.insert(0);
        Ideal {
            members,
            len: 1,
            gens: vec![],
        }
    }

    pub fn whole(&self) -> Ideal {
        let mut members = FixedBitSet::with_capacity(self.size());
        members.insert_range(..);
        Ideal {
            members,
            len: self.size(),
            gens: vec![self.one()],
        }
    }

    pub fn principal(&self, a: Elem) -> Ideal {
        let mut members = FixedBitSet::with_capacity(self.size());
        for r in self.elements() {
            members.insert(self.mul(r, a).idx());
        }
        let len = members.count_ones(..);
        let gens = if a == Elem::ZERO { vec![] } else { vec![a] };
        Ideal { members, len, gens }
    }

    /// Smallest ideal containing both; generators are concatenated.
    pub fn ideal_sum(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let mut out = self.join_members(i, j);
        out.gens = i.gens.iter().chain(&j.gens).copied().collect();
        out
    }

    /// `I + J` as a union of cosets of `I`; linear in the size of the result.
    fn join_members(&self, i: &Ideal, j: &Ideal) -> Ideal {
        if j.is_subset(i) {
            return Ideal {
                gens: vec![],
                ..i.clone()
            };
        }
        let mut members = i.members.clone();
        let mut list: Vec<Elem> = i.elements().collect();
        for y in j.elements() {
            if members.contains(y.idx()) {
                continue;
            }
            // Add cosets s + k·y until the multiple of y falls back into the group.
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
        let len = list.len();
        Ideal {
            members,
            len,
            gens: vec![],
        }
    }

    pub fn ideal(&self, gens: &[Elem]) -> Ideal {
        let mut acc = self.zero_ideal();
        for &g in gens {
            if !acc.contains(g) {
                acc = self.join_members(&acc, &self.principal(g));
            }
        }
        acc.gens = gens.iter().copied().filter(|g| *g != Elem::ZERO).collect();
        acc
    }

    /// The ideal with the given member set, with canonical greedy generators.
    ///
    /// The caller guarantees the set is an ideal.
    pub fn ideal_from_members(&self, members: FixedBitSet) -> Ideal {
        let len = members.count_ones(..);
        let mut out = Ideal {
            members,
            len,
            gens: vec![],
        };
        out.gens = self.greedy_gens(&out);
        out
    }

    /// Generators picked as the least element not yet generated, repeatedly.
    pub fn greedy_gens(&self, i: &Ideal) -> Vec<Elem> {
        let mut acc = self.zero_ideal();
        let mut gens = Vec::new();
        for x in i.elements() {
            if !acc.contains(x) {
                acc = self.join_members(&acc, &self.principal(x));
                gens.push(x);
                if acc.len == i.len {
                    break;
                }
            }
        }
        gens
    }

    pub fn is_ideal(&self, set: &FixedBitSet) -> bool {
        if !set.contains(0) {
            return false;
        }
        let members: Vec<usize> = set.ones().collect();
        members.iter().all(|&a| {
            members.iter().all(|&b| set.contains(self.add(Elem(a as u32), Elem(b as u32)).idx()))
                && self.elements().all(|r| set.contains(self.mul(r, Elem(a as u32)).idx()))
        })
    }

    pub fn intersect(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let mut members = i.members.clone();
        members.intersect_with(&j.members);
        self.ideal_from_members(members)
    }

    pub fn ideal_product(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let gi = if i.gens.is_empty() && !i.is_zero() { self.greedy_gens(i) } else { i.gens.clone() };
        let gj = if j.gens.is_empty() && !j.is_zero() { self.greedy_gens(j) } else { j.gens.clone() };
        let prods: Vec<Elem> = gi.iter().flat_map(|&a| gj.iter().map(move |&b| (a, b))).map(|(a, b)| self.mul(a, b)).collect();
        let mut out = self.ideal(&prods);
        out.gens = self.greedy_gens(&out);
        out
    }

    /// `(I : J) = {r : rJ ⊆ I}`.
    pub fn colon(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let gens = if j.gens.is_empty() && !j.is_zero() { self.greedy_gens(j) } else { j.gens.clone() };
        let mut members = FixedBitSet::with_capacity(self.size());
        for r in self.elements() {
            if gens.iter().all(|&g| i.contains(self.mul(r, g))) {
                members.insert(r.idx());
            }
        }
        self.ideal_from_members(members)
    }

    /// `(0 : J)`.
    pub fn annihilator(&self, j: &Ideal) -> Ideal {
        self.colon(&self.zero_ideal(), j)
    }

    pub fn annihilator_of(&self, a: Elem) -> Ideal {
        let mut members = FixedBitSet::with_capacity(self.size());
        for r in self.elements() {
            if self.mul(r, a) == Elem::ZERO {
                members.insert(r.idx());
            }
        }
        self.ideal_from_members(members)
    }

    pub fn principal_ideals(&self) -> Arc<PrincipalIdeals> {
        self.cache()
            .principal
            .get_or_init(|| {
                let n = self.size();
                let mut pid = vec![u32::MAX; n];
                let mut ideals: Vec<Ideal> = Vec::new();
                let mut least_gen = Vec::new();
                let mut index: std::collections::HashMap<FixedBitSet, u32> = Default::default();
                for a in self.elements() {
                    let p = self.principal(a);
                    let next = ideals.len() as u32;
                    let id = *index.entry(p.members.clone()).or_insert(next);
                    if id == next {
                        ideals.push(p);
                        least_gen.push(a);
                    }
                    pid[a.idx()] = id;
                }
                Arc::new(PrincipalIdeals {
                    pid,
                    ideals,
                    least_gen,
                })
            })
            .clone()
    }

    /// Every ideal, in canonical order.
    pub fn ideals(&self) -> Result<Arc<Vec<Ideal>>> {
        self.cache()
            .ideals
            .get_or_init(|| self.compute_ideals().map(Arc::new))
            .clone()
    }

    fn compute_ideals(&self) -> Result<Vec<Ideal>> {
        let cap = self.caps().ideals;
        let mut out = if let Kind::Product { factors, .. } = self.kind() {
            // Ideals of a product are products of ideals of the factors.
            let lattices: Vec<Arc<Vec<Ideal>>> = factors.iter().map(|f| f.ideals()).collect::<Result<_>>()?;
            let count: u128 = lattices.iter().map(|l| l.len() as u128).product();
            if count > cap as u128 {
                return Err(Error::cap("ideals", count, cap as u128));
            }
            (0..count as usize)
                .map(|t| {
                    let mut rem = t;
                    let mut parts: Vec<&Ideal> = lattices
                        .iter()
                        .rev()
                        .map(|l| {
                            let i = &l[rem % l.len()];
                            rem /= l.len();
                            i
                        })
                        .collect();
                    parts.reverse();
                    self.product_ideal(&parts)
                })
                .collect()
        } else {
            let principals = self.principal_ideals();
            let mut seen: HashSet<FixedBitSet> = HashSet::new();
            let mut out = vec![];
            let mut queue = VecDeque::new();
            let zero = self.zero_ideal();
            seen.insert(zero.members.clone());
            queue.push_back(zero);
            while let Some(i) = queue.pop_front() {
                for p in &principals.ideals {
                    if p.is_subset(&i) {
                        continue;
                    }
                    let j = self.join_members(&i, p);
                    if seen.insert(j.members.clone()) {
                        if seen.len() > cap {
                            return Err(Error::cap("ideals", seen.len() as u128, cap as u128));
                        }
                        queue.push_back(j);
                    }
                }
                out.push(i);
            }
            for i in &mut out {
                i.gens = self.greedy_gens(i);
            }
            out
        };
        out.sort();
        Ok(out)
    }

    /// The ideal `I₁ × … × I_k` of a product ring.
    pub fn product_ideal(&self, parts: &[&Ideal]) -> Ideal {
        let Kind::Product { factors, place } = self.kind() else {
            return parts[0].clone();
        };
        let mut idxs = vec![0usize];
        debug_assert_eq!(factors.len(), parts.len());
        for (p, i) in place.iter().zip(parts) {
            idxs = idxs
                .iter()
                .flat_map(|&base| i.elements().map(move |x| base + x.idx() * p))
                .collect();
        }
        let mut members = FixedBitSet::with_capacity(self.size());
        for i in &idxs {
            members.insert(*i);
        }
        let mut gens = Vec::new();
        for (k, part) in parts.iter().enumerate() {
            for g in part.gens() {
                let mut comps = vec![Elem::ZERO; parts.len()];
                comps[k] = *g;
                gens.push(self.join(&comps));
            }
        }
        Ideal {
            members,
            len: idxs.len(),
            gens,
        }
    }

    /// Maximal ideals in canonical order.
    pub fn maximal_ideals(&self) -> Result<Arc<Vec<Ideal>>> {
        self.cache()
            .maximal
            .get_or_init(|| {
                let ideals = self.ideals()?;
                let proper: Vec<&Ideal> = ideals.iter().filter(|i| !i.is_whole()).collect();
                let max = proper
                    .iter()
                    .filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.is_subset(j)))
                    .map(|i| (*i).clone())
                    .collect();
                Ok(Arc::new(max))
            })
            .clone()
    }

    pub fn is_prime_ideal(&self, p: &Ideal) -> bool {
        if p.is_whole() {
            return false;
        }
        let outside: Vec<Elem> = p.members.zeroes().map(|i| Elem(i as u32)).collect();
        outside
            .iter()
            .all(|&a| outside.iter().all(|&b| !p.contains(self.mul(a, b))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elems(i: &Ideal) -> Vec<u32> {
        i.elements().map(|e| e.0).collect()
    }

    #[test]
    fn zmod_ideals() {
        let r = Ring::zmod(12).unwrap();
        let ideals = r.ideals().unwrap();
        assert_eq!(ideals.len(), 6);
        let sum = r.ideal_sum(&r.principal(Elem(4)), &r.principal(Elem(6)));
        assert_eq!(elems(&sum), vec![0, 2, 4, 6, 8, 10]);
        let meet = r.intersect(&r.principal(Elem(4)), &r.principal(Elem(6)));
        assert_eq!(elems(&meet), vec![0]);
        let ann = r.annihilator_of(Elem(4));
        assert_eq!(elems(&ann), vec![0, 3, 6, 9]);
        assert_eq!(ann.gens(), &[Elem(3)]);
    }

    #[test]
    fn nilpotent_ideals() {
        let r = Ring::nilpotent(2, &["x", "y"], 2, vec![]).unwrap();
        let ideals = r.ideals().unwrap();
        // zero, three lines, the maximal ideal, the whole ring
        assert_eq!(ideals.len(), 6);
        let m = r.maximal_ideals().unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].len(), 4);
        assert_eq!(r.greedy_gens(&m[0]).len(), 2);
    }

    #[test]
    fn product_lattice_matches_generic_bfs() {
        let r = Ring::product(vec![Ring::zmod(4).unwrap(), Ring::zmod(6).unwrap()]).unwrap();
        let fast = r.ideals().unwrap();
        // Generic closure over all subsets of principal ideals.
        let pi = r.principal_ideals();
        let mut all: HashSet<Ideal> = HashSet::new();
        for mask in 0u32..(1 << pi.ideals.len()) {
            let mut acc = r.zero_ideal();
            for (k, p) in pi.ideals.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    acc = r.ideal_sum(&acc, p);
                }
            }
            all.insert(acc);
        }
        assert_eq!(fast.len(), all.len());
        assert!(fast.iter().all(|i| all.contains(i)));
    }

    #[test]
    fn colon_and_product() {
        let r = Ring::zmod(8).unwrap();
        let i2 = r.principal(Elem(2));
        let i4 = r.principal(Elem(4));
        assert_eq!(r.ideal_product(&i2, &i2), i4);
        assert_eq!(r.colon(&i4, &i2), i2);
        assert!(r.is_prime_ideal(&i2));
        assert!(!r.is_prime_ideal(&i4));
    }
}
