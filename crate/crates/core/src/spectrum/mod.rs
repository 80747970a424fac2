//! Prime spectrum, the comparability quotient pSpec, pure ideals and the
//! Boolean ring of idempotents.
//!
//! In a finite ring every prime is both maximal and minimal, so the blocks of
//! pSpec are single primes and the quotient is discrete. The code below does
//! not rely on that: blocks are computed as connected components of the
//! comparability graph, and the finite-case facts are checked, not assumed.

mod report;

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde_json::json;

use crate::error::{Error, Result};
use crate::report::PropertyReport;
use crate::ring::{Elem, Ideal, Ring, RingHom};

pub use report::{dot, spectrum_json};

#[derive(Debug, Clone)]
pub struct SpecPoint {
    pub prime: Ideal,
    pub is_maximal: bool,
    pub is_minimal: bool,
}

/// A point of pSpec: a comparability class of primes and its pure ideal `A(x)`.
#[derive(Debug, Clone)]
pub struct SpecBlock {
    /// Indices into [`Spectrum::points`], ascending.
    pub primes: Vec<usize>,
    pub pure_ideal: Ideal,
    /// Idempotent generating `A(x)`.
    pub idempotent: Elem,
}

#[derive(Debug)]
pub struct Spectrum {
    pub points: Vec<SpecPoint>,
    pub blocks: Vec<SpecBlock>,
    block_of: Vec<usize>,
}

impl Spectrum {
    pub fn block_of(&self, point: usize) -> usize {
        self.block_of[point]
    }

    /// Primes containing `a`, i.e. `V(A)` as point indices.
    pub fn v(&self, a: &Ideal) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| a.is_subset(&self.points[i].prime)).collect()
    }

    /// Primes not containing `e`, i.e. `D(e)`.
    pub fn d(&self, e: Elem) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| !self.points[i].prime.contains(e)).collect()
    }

    /// Primes of the given blocks, ascending.
    pub fn union_of(&self, blocks: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = blocks.iter().flat_map(|&b| self.blocks[b].primes.iter().copied()).collect();
        out.sort_unstable();
        out
    }
}

fn primes_of(r: &Ring) -> Result<Vec<Ideal>> {
    let mut primes = if let Some(factors) = r.factors() {
        // Primes of a product are pullbacks of primes of one factor.
        let wholes: Vec<Ideal> = factors.iter().map(|f| f.whole()).collect();
        let mut out = vec![];
        for (k, f) in factors.iter().enumerate() {
            for p in primes_of(f)? {
                let parts: Vec<&Ideal> = (0..factors.len()).map(|j| if j == k { &p } else { &wholes[j] }).collect();
                out.push(r.product_ideal(&parts));
            }
        }
        out
    } else {
        r.ideals()?.iter().filter(|i| r.is_prime_ideal(i)).cloned().collect()
    };
    primes.sort();
    for p in &mut primes {
        if p.gens().is_empty() && !p.is_zero() {
            *p = r.ideal(&r.greedy_gens(p));
        }
    }
    Ok(primes)
}

impl Ring {
    pub fn spectrum(&self) -> Result<Arc<Spectrum>> {
        self.cache()
            .spectrum
            .get_or_init(|| compute_spectrum(self).map(Arc::new))
            .clone()
    }
}

fn compute_spectrum(r: &Ring) -> Result<Spectrum> {
    let primes = primes_of(r)?;
    let n = primes.len();
    let below = |i: usize, j: usize| primes[i].is_subset(&primes[j]);
    let points: Vec<SpecPoint> = (0..n)
        .map(|i| SpecPoint {
            prime: primes[i].clone(),
            is_maximal: !(0..n).any(|j| j != i && below(i, j)),
            is_minimal: !(0..n).any(|j| j != i && below(j, i)),
        })
        .collect();

    // Connected components of the comparability graph, by repeated merging.
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while comp[i] != i {
            comp[i] = comp[comp[i]];
            i = comp[i];
        }
        i
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && below(i, j) {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![];
    let mut root_to_group = std::collections::HashMap::new();
    for i in 0..n {
        let root = find(&mut comp, i);
        let g = *root_to_group.entry(root).or_insert_with(|| {
            groups.push(vec![]);
            groups.len() - 1
        });
        groups[g].push(i);
    }
    // Primes are sorted, so groups come out ordered by their least prime.
    let mut block_of = vec![0; n];
    let mut blocks = Vec::with_capacity(groups.len());
    for (b, group) in groups.into_iter().enumerate() {
        let mut a = r.whole();
        for &i in &group {
            a = r.intersect(&a, &kernel_0p(r, &points[i].prime));
        }
        let v: Vec<usize> = (0..n).filter(|&i| a.is_subset(&points[i].prime)).collect();
        if v != group {
            return Err(Error::InvariantViolated(format!(
                "V(A(x)) differs from block {b} in {}",
                r.name()
            )));
        }
        let idempotent = idempotent_generator(r, &a).ok_or_else(|| {
            Error::InvariantViolated(format!("A(x) of block {b} in {} has no idempotent generator", r.name()))
        })?;
        for &i in &group {
            block_of[i] = b;
        }
        blocks.push(SpecBlock {
            primes: group,
            pure_ideal: a,
            idempotent,
        });
    }
    Ok(Spectrum {
        points,
        blocks,
        block_of,
    })
}

/// Least idempotent `e` with `Re = A`, if any.
pub fn idempotent_generator(r: &Ring, a: &Ideal) -> Option<Elem> {
    r.idempotents()
        .iter()
        .copied()
        .find(|&e| a.contains(e) && a.elements().all(|x| r.mul(x, e) == x))
}

pub fn spec(r: &Ring) -> Result<Vec<SpecPoint>> {
    Ok(r.spectrum()?.points.clone())
}

pub fn pspec(r: &Ring) -> Result<Vec<SpecBlock>> {
    Ok(r.spectrum()?.blocks.clone())
}

/// `0_P = {r : sr = 0 for some s ∉ P}`, the kernel of `R → R_P`.
pub fn kernel_0p(r: &Ring, p: &Ideal) -> Ideal {
    let outside: Vec<Elem> = r.elements().filter(|&s| !p.contains(s)).collect();
    let mut members = FixedBitSet::with_capacity(r.size());
    for x in r.elements() {
        if outside.iter().any(|&s| r.mul(s, x) == Elem::ZERO) {
            members.insert(x.idx());
        }
    }
    r.ideal_from_members(members)
}

/// Outcome of the purity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Purity {
    pub pure: bool,
    /// Least `a ∈ A` with no `b ∈ A` such that `a = ab`.
    pub counterexample: Option<Elem>,
    /// Least `t ∈ A` with `g = gt` for every listed generator.
    pub common_unit: Option<Elem>,
}

/// `A` is pure iff every `a ∈ A` has some `b ∈ A` with `a = ab`.
pub fn is_pure(r: &Ring, a: &Ideal) -> Purity {
    let counterexample = a
        .elements()
        .find(|&x| !a.elements().any(|b| r.mul(x, b) == x));
    let common_unit = if counterexample.is_none() {
        common_t(r, a, a.gens())
    } else {
        None
    };
    Purity {
        pure: counterexample.is_none(),
        counterexample,
        common_unit,
    }
}

/// Least `t ∈ A` with `aᵢ = aᵢt` for the whole family.
pub fn common_t(r: &Ring, a: &Ideal, family: &[Elem]) -> Option<Elem> {
    a.elements().find(|&t| family.iter().all(|&x| r.mul(x, t) == x))
}

/// The three decidable purity conditions, evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PurityConditions {
    /// A common `t` exists for the family of all elements of `A`.
    pub common_family: bool,
    pub elementwise: bool,
    /// `A ∩ B = AB` for every ideal `B`.
    pub flat: bool,
}

pub fn purity_conditions(r: &Ring, a: &Ideal) -> Result<PurityConditions> {
    let all: Vec<Elem> = a.elements().collect();
    let common_family = common_t(r, a, &all).is_some();
    let elementwise = is_pure(r, a).pure;
    let ideals = r.ideals()?;
    let flat = ideals
        .iter()
        .all(|b| r.intersect(a, b) == r.ideal_product(a, b));
    Ok(PurityConditions {
        common_family,
        elementwise,
        flat,
    })
}

/// For an up-closed set `C` of primes: `∩_{P∈C} 0_P` if `C` is a union of
/// blocks with `V` of that ideal equal to `C`, otherwise `None`.
pub fn pure_saturation_check(r: &Ring, c: &[usize]) -> Result<Option<Ideal>> {
    let s = r.spectrum()?;
    let mut set: Vec<usize> = c.to_vec();
    set.sort_unstable();
    set.dedup();
    let closed_under_blocks = set
        .iter()
        .all(|&i| s.blocks[s.block_of(i)].primes.iter().all(|j| set.contains(j)));
    if !closed_under_blocks {
        return Ok(None);
    }
    let mut a = r.whole();
    for &i in &set {
        a = r.intersect(&a, &kernel_0p(r, &s.points[i].prime));
    }
    Ok((s.v(&a) == set).then_some(a))
}

/// `B(R)`: the idempotents under `e ⊕ f = e + f − 2ef` and `e ⊙ f = ef`.
#[derive(Debug, Clone)]
pub struct BooleanRing {
    pub carrier: Vec<Elem>,
    pub ring: Ring,
}

impl BooleanRing {
    /// Position of an idempotent of R in the carrier.
    pub fn index(&self, e: Elem) -> Option<Elem> {
        self.carrier.binary_search(&e).ok().map(|i| Elem(i as u32))
    }
}

pub fn boolean_ring(r: &Ring) -> Result<BooleanRing> {
    let carrier = r.idempotents().to_vec();
    let k = carrier.len();
    let pos = |e: Elem| carrier.binary_search(&e).expect("idempotents are closed") as u32;
    let mut add = Vec::with_capacity(k * k);
    let mut mul = Vec::with_capacity(k * k);
    for &e in &carrier {
        for &f in &carrier {
            let ef = r.mul(e, f);
            let sum = r.sub(r.add(e, f), r.add(ef, ef));
            add.push(pos(sum));
            mul.push(pos(ef));
        }
    }
    let labels = carrier.iter().map(|&e| r.fmt_elem(e)).collect();
    let one = Elem(pos(r.one()));
    let ring = Ring::from_tables(format!("B({})", r.name()), labels, add, mul, one, r.caps())?;
    Ok(BooleanRing { carrier, ring })
}

/// `X(R) = Spec B(R)`.
pub fn x_of(b: &BooleanRing) -> Result<Vec<SpecPoint>> {
    spec(&b.ring)
}

/// `τ(x)`: the Boolean prime of idempotents lying in the primes of block `x`.
/// Returned as indices into `x_of`, one per block.
pub fn tau(r: &Ring) -> Result<Vec<usize>> {
    let s = r.spectrum()?;
    let b = boolean_ring(r)?;
    let xs = x_of(&b)?;
    let mut out = Vec::with_capacity(s.blocks.len());
    for (bi, block) in s.blocks.iter().enumerate() {
        let member_set = |p: &Ideal| -> Vec<Elem> { b.carrier.iter().copied().filter(|&e| p.contains(e)).collect() };
        let first = member_set(&s.points[block.primes[0]].prime);
        if block.primes.iter().any(|&i| member_set(&s.points[i].prime) != first) {
            return Err(Error::InvariantViolated(format!("τ is not well defined on block {bi}")));
        }
        let target = xs
            .iter()
            .position(|xi| {
                b.carrier
                    .iter()
                    .enumerate()
                    .all(|(k, e)| xi.prime.contains(Elem(k as u32)) == first.contains(e))
            })
            .ok_or_else(|| Error::InvariantViolated(format!("τ(block {bi}) is not a prime of B(R)")))?;
        out.push(target);
    }
    let mut seen = out.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != out.len() || out.len() != xs.len() {
        return Err(Error::InvariantViolated(format!("τ is not bijective on {}", r.name())));
    }
    Ok(out)
}

/// Ideal generated by the idempotents of the Boolean prime `xi`.
pub fn stalk_ideal(r: &Ring, xi: usize) -> Result<Ideal> {
    let b = boolean_ring(r)?;
    let xs = x_of(&b)?;
    let point = xs
        .get(xi)
        .ok_or_else(|| Error::InvalidArgument(format!("no point {xi} in X(R)")))?;
    let gens: Vec<Elem> = point.prime.elements().map(|k| b.carrier[k.idx()]).collect();
    Ok(r.ideal(&gens))
}

/// `R / (idempotents in ξ)`.
pub fn stalk_at(r: &Ring, xi: usize) -> Result<Ring> {
    r.quotient(&stalk_ideal(r, xi)?)
}

/// Each prime lies under exactly one maximal ideal; counterexample `(P, M₁, M₂)`.
pub fn gelfand_check(r: &Ring) -> Result<PropertyReport> {
    let s = r.spectrum()?;
    for (i, p) in s.points.iter().enumerate() {
        let over: Vec<usize> = (0..s.points.len())
            .filter(|&j| s.points[j].is_maximal && p.prime.is_subset(&s.points[j].prime))
            .collect();
        if over.len() != 1 {
            let show = |k: usize| json!(r.fmt_ideal(&s.points[k].prime));
            let cex = json!([show(i), over.first().map(|&k| show(k)), over.get(1).map(|&k| show(k))]);
            return Ok(PropertyReport::fail("gelfand", cex));
        }
    }
    Ok(PropertyReport::pass("gelfand", None))
}

/// `ᵃφ : Spec T → Spec R`, `L ↦ φ⁻¹(L)`, as point indices.
pub fn induced_spec_map(phi: &RingHom) -> Result<Vec<usize>> {
    let (sr, st) = (phi.src().spectrum()?, phi.dst().spectrum()?);
    st.points
        .iter()
        .map(|l| {
            let pre = phi.preimage(&l.prime);
            sr.points
                .iter()
                .position(|p| p.prime == pre)
                .ok_or_else(|| Error::InvariantViolated("preimage of a prime is not prime".into()))
        })
        .collect()
}

/// `ᵇφ : pSpec T → pSpec R`, checked to make `λ_R ∘ ᵃφ = ᵇφ ∘ λ_T` commute.
pub fn induced_pspec_map(phi: &RingHom) -> Result<Vec<usize>> {
    let (sr, st) = (phi.src().spectrum()?, phi.dst().spectrum()?);
    let a = induced_spec_map(phi)?;
    let b: Vec<usize> = st.blocks.iter().map(|y| sr.block_of(a[y.primes[0]])).collect();
    for (l, &p) in a.iter().enumerate() {
        if sr.block_of(p) != b[st.block_of(l)] {
            return Err(Error::InvariantViolated("pSpec square does not commute".into()));
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> Ring {
        Ring::zmod(n).unwrap()
    }

    fn elems(i: &Ideal) -> Vec<u32> {
        i.elements().map(|e| e.0).collect()
    }

    #[test]
    fn zmod6_spectrum() {
        let r = z(6);
        let s = r.spectrum().unwrap();
        assert_eq!(s.points.len(), 2);
        assert_eq!(elems(&s.points[0].prime), vec![0, 2, 4]);
        assert!(s.points.iter().all(|p| p.is_maximal && p.is_minimal));
        assert_eq!(s.blocks.len(), 2);
        assert_eq!(elems(&s.blocks[0].pure_ideal), vec![0, 2, 4]);
        assert_eq!(elems(&s.blocks[1].pure_ideal), vec![0, 3]);
        assert_eq!(elems(&kernel_0p(&r, &s.points[0].prime)), vec![0, 2, 4]);
    }

    #[test]
    fn local_rings_have_one_block() {
        for r in [z(4), Ring::nilpotent(2, &["x", "y"], 2, vec![]).unwrap()] {
            let s = r.spectrum().unwrap();
            assert_eq!(s.points.len(), 1);
            assert_eq!(s.blocks.len(), 1);
            assert!(s.blocks[0].pure_ideal.is_zero());
        }
        let r = Ring::nilpotent(2, &["x", "y"], 2, vec![]).unwrap();
        assert_eq!(r.spectrum().unwrap().points[0].prime.len(), 4);
    }

    #[test]
    fn product_blocks_are_coordinate_kernels() {
        let r = Ring::product(vec![z(4), z(9)]).unwrap();
        let s = r.spectrum().unwrap();
        assert_eq!(s.blocks.len(), 2);
        let first_kernel = r.product_ideal(&[&z(4).zero_ideal(), &z(9).whole()]);
        assert_eq!(s.blocks[0].pure_ideal, first_kernel);
    }

    #[test]
    fn purity_examples() {
        let r6 = z(6);
        let p = is_pure(&r6, &r6.principal(Elem(2)));
        assert!(p.pure);
        assert_eq!(p.common_unit, Some(Elem(4)));
        let r4 = z(4);
        let p = is_pure(&r4, &r4.principal(Elem(2)));
        assert_eq!(p.counterexample, Some(Elem(2)));
        assert!(is_pure(&r4, &r4.zero_ideal()).pure && is_pure(&r4, &r4.whole()).pure);
    }

    #[test]
    fn saturation_examples() {
        let r = z(6);
        assert_eq!(elems(&pure_saturation_check(&r, &[0]).unwrap().unwrap()), vec![0, 2, 4]);
        assert!(pure_saturation_check(&r, &[0, 1]).unwrap().unwrap().is_zero());
        assert!(pure_saturation_check(&r, &[]).unwrap().unwrap().is_whole());
    }

    #[test]
    fn boolean_ring_and_tau() {
        let r = z(6);
        let b = boolean_ring(&r).unwrap();
        assert_eq!(b.ring.size(), 4);
        assert_eq!(b.ring.check_axioms(), Ok(()));
        assert!(b.ring.elements().all(|e| b.ring.add(e, e) == Elem::ZERO));
        assert_eq!(x_of(&b).unwrap().len(), 2);
        let t = tau(&r).unwrap();
        // block (2) goes to the Boolean prime containing 4 and not 3
        let xs = x_of(&b).unwrap();
        let xi = &xs[t[0]].prime;
        assert!(xi.contains(b.index(Elem(4)).unwrap()) && !xi.contains(b.index(Elem(3)).unwrap()));
        assert_eq!(stalk_at(&r, t[0]).unwrap().size(), 2);
    }

    #[test]
    fn induced_maps() {
        let r = z(6);
        let (q, phi) = {
            let phi = RingHom::quotient_map(&r, &r.principal(Elem(3))).unwrap();
            (phi.dst().clone(), phi)
        };
        assert_eq!(q.size(), 3);
        assert_eq!(induced_pspec_map(&phi).unwrap(), vec![1]);
        let f2 = z(2);
        let p = Ring::product(vec![z(2), z(2)]).unwrap();
        let diag = RingHom::new(&f2, &p, |a| p.join(&[a, a])).unwrap();
        assert_eq!(induced_pspec_map(&diag).unwrap(), vec![0, 0]);
        assert_eq!(induced_pspec_map(&RingHom::identity(&r)).unwrap(), vec![0, 1]);
    }

    #[test]
    fn gelfand_on_small_rings() {
        for n in 2..=30 {
            assert!(gelfand_check(&z(n)).unwrap().holds);
        }
    }
}
