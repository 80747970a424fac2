//! Self-injectivity and its relatives on finite rings.
//!
//! A finite ring is artinian, so FP-injective and injective coincide, and
//! coherence is automatic. Self-injectivity is decided two independent ways:
//! Baer's criterion over all ideal homomorphisms, and `A = (0:(0:A))`.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::par;
use crate::properties::is_arithmetical;
use crate::report::PropertyReport;
use crate::ring::{Elem, Ideal, Ring};

/// An R-linear map `I → R`, as its value on each member of `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealHom {
    pub ideal: Ideal,
    /// `values[x]` for members `x`; other slots are unused.
    values: Vec<Elem>,
}

impl IdealHom {
    pub fn apply(&self, x: Elem) -> Option<Elem> {
        self.ideal.contains(x).then(|| self.values[x.idx()])
    }

    /// Checks additivity and R-linearity on every member.
    pub fn is_linear(&self, r: &Ring) -> bool {
        let members: Vec<Elem> = self.ideal.elements().collect();
        members.iter().all(|&x| {
            members.iter().all(|&y| self.values[r.add(x, y).idx()] == r.add(self.values[x.idx()], self.values[y.idx()]))
                && r.elements().all(|s| self.values[r.mul(s, x).idx()] == r.mul(s, self.values[x.idx()]))
        })
    }

    /// Some `r` with `φ(x) = r·x` on I, the least one.
    pub fn extension(&self, r: &Ring) -> Option<Elem> {
        r.elements()
            .find(|&s| self.ideal.elements().all(|x| r.mul(s, x) == self.values[x.idx()]))
    }

    pub fn to_json(&self, r: &Ring) -> Value {
        json!({
            "ideal": r.greedy_gens(&self.ideal).iter().map(|&g| r.literal(g)).collect::<Vec<_>>(),
            "images": r.greedy_gens(&self.ideal).iter()
                .map(|&g| json!([r.literal(g), r.literal(self.values[g.idx()])]))
                .collect::<Vec<_>>(),
        })
    }
}

/// Every homomorphism `I → R`, generator images in lexicographic order.
///
/// Built one generator at a time: `g ↦ y` extends `φ` on `J` iff
/// `s·y = φ(s·g)` for every `s ∈ (J : g)`.
pub fn ideal_homs(r: &Ring, i: &Ideal) -> Result<Vec<IdealHom>> {
    let gens = r.greedy_gens(i);
    let n = r.size();
    let mut out = Vec::new();
    // Partial homs: (members of J, values on J).
    let mut frontier: Vec<(FixedBitSet, Vec<Elem>)> = {
        let z = r.zero_ideal();
        vec![(z.members().clone(), vec![Elem::ZERO; n])]
    };
    let cap = r.caps().search;
    for &g in &gens {
        let mut next = Vec::new();
        for (members, values) in &frontier {
            let colon: Vec<Elem> = r.elements().filter(|&s| members.contains(r.mul(s, g).idx())).collect();
            let span: Vec<Elem> = members.ones().map(|x| Elem(x as u32)).collect();
            for y in r.elements() {
                if colon.iter().any(|&s| r.mul(s, y) != values[r.mul(s, g).idx()]) {
                    continue;
                }
                let mut m2 = members.clone();
                let mut v2 = values.clone();
                for s in r.elements() {
                    let (sg, sy) = (r.mul(s, g), r.mul(s, y));
                    for &x in &span {
                        let z = r.add(x, sg);
                        if !m2.contains(z.idx()) {
                            m2.insert(z.idx());
                            v2[z.idx()] = r.add(values[x.idx()], sy);
                        }
                    }
                }
                next.push((m2, v2));
            }
            if next.len() as u128 > cap {
                return Err(Error::cap("ideal homomorphisms", next.len() as u128, cap));
            }
        }
        frontier = next;
    }
    for (members, values) in frontier {
        debug_assert_eq!(&members, i.members());
        out.push(IdealHom {
            ideal: i.clone(),
            values,
        });
    }
    Ok(out)
}

/// Baer's criterion on one ring: the least non-extending hom, if any.
fn baer_failure(r: &Ring) -> Result<Option<IdealHom>> {
    let ideals = r.ideals()?;
    let found = par::find_first(&ideals, |i| {
        let restrictions: HashSet<Vec<Elem>> = r
            .elements()
            .map(|s| i.elements().map(|x| r.mul(s, x)).collect())
            .collect();
        match ideal_homs(r, i) {
            Err(e) => Some(Err(e)),
            Ok(homs) => homs
                .into_iter()
                .find(|h| !restrictions.contains(&i.elements().map(|x| h.values[x.idx()]).collect::<Vec<_>>()))
                .map(Ok),
        }
    });
    found.transpose()
}

/// Every hom from an ideal into R is multiplication by an element.
///
/// Decided on each local factor `R·e`; homs into a product split coordinatewise.
pub fn baer_self_injective(r: &Ring) -> Result<PropertyReport> {
    for f in r.local_factors().iter() {
        if let Some(h) = baer_failure(&f.ring)? {
            let t = &f.ring;
            let lift = |x: Elem| r.literal(t.lift(x));
            let gens = t.greedy_gens(&h.ideal);
            let cex = json!({
                "ideal": gens.iter().map(|&g| lift(g)).collect::<Vec<_>>(),
                "images": gens.iter().map(|&g| json!([lift(g), lift(h.values[g.idx()])])).collect::<Vec<_>>(),
            });
            return Ok(PropertyReport::fail("baer_self_injective", cex));
        }
    }
    Ok(PropertyReport::pass(
        "baer_self_injective",
        Some(json!({ "local_factors": r.local_factors().len() })),
    ))
}

/// Least ideal with `A ≠ (0:(0:A))`.
pub fn double_annihilator_failure(r: &Ring) -> Result<Option<Ideal>> {
    let ideals = r.ideals()?;
    Ok(par::find_first(&ideals, |a| {
        (r.annihilator(&r.annihilator(a)) != *a).then(|| a.clone())
    }))
}

pub fn double_annihilator_check(r: &Ring) -> Result<PropertyReport> {
    Ok(match double_annihilator_failure(r)? {
        None => PropertyReport::pass(
            "double_annihilator",
            Some(json!({ "ideals": r.ideals()?.len() })),
        ),
        Some(a) => PropertyReport::fail("double_annihilator", ideal_json(r, &a)),
    })
}

fn ideal_json(r: &Ring, i: &Ideal) -> Value {
    Value::Array(r.greedy_gens(i).into_iter().map(|g| r.literal(g)).collect())
}

pub fn is_self_injective(r: &Ring) -> Result<bool> {
    Ok(double_annihilator_failure(r)?.is_none())
}

/// `R/A` self-injective for every proper ideal `A`; `Q(R/A) = R/A` here.
pub fn fractionally_if_check(r: &Ring) -> Result<PropertyReport> {
    let ideals = r.ideals()?;
    let proper: Vec<&Ideal> = ideals.iter().filter(|a| !a.is_whole()).collect();
    let failure = par::find_first(&proper, |a| match r.quotient(a).and_then(|q| is_self_injective(&q)) {
        Ok(true) => None,
        Ok(false) => Some(Ok((*a).clone())),
        Err(e) => Some(Err(e)),
    })
    .transpose()?;
    Ok(match failure {
        None => PropertyReport::pass("fractionally_if", Some(json!({ "quotients": proper.len() }))),
        Some(a) => PropertyReport::fail("fractionally_if", ideal_json(r, &a)),
    })
}

/// `A^♯ = {r : rA ⊊ A}`, reading the containment strictly.
pub fn sharp(r: &Ring, a: &Ideal) -> Result<Ideal> {
    if a.is_zero() || a.is_whole() {
        return Err(Error::UndefinedForZeroOrUnitIdeal);
    }
    let mut members = FixedBitSet::with_capacity(r.size());
    for s in r.elements() {
        let mut image = FixedBitSet::with_capacity(r.size());
        for x in a.elements() {
            image.insert(r.mul(s, x).idx());
        }
        if image.count_ones(..) < a.len() {
            members.insert(s.idx());
        }
    }
    if !r.is_ideal(&members) {
        return Err(Error::InvalidArgument(format!(
            "A^♯ of {} is not an ideal of {}",
            r.fmt_ideal(a),
            r.name()
        )));
    }
    Ok(r.ideal_from_members(members))
}

/// No nonzero prime `L` with `L² = L` in any local factor.
pub fn strongly_discrete_check(r: &Ring) -> Result<PropertyReport> {
    if !is_arithmetical(r)? {
        return Err(Error::NotArithmetical);
    }
    for f in r.local_factors().iter() {
        let t = &f.ring;
        let spec = t.spectrum()?;
        for p in &spec.points {
            let l = &p.prime;
            if !l.is_zero() && t.ideal_product(l, l) == *l {
                let gens: Vec<Elem> = t.greedy_gens(l).into_iter().map(|g| t.lift(g)).collect();
                return Ok(PropertyReport::fail("strongly_discrete", ideal_json(r, &r.ideal(&gens))));
            }
        }
    }
    Ok(PropertyReport::pass(
        "strongly_discrete",
        Some(json!({ "local_factors": r.local_factors().len() })),
    ))
}

/// An ideal of a chain ring is prime or the pullback of a principal ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotVal {
    Prime { generator: Elem },
    /// In a finite chain ring `A^♯` is maximal, so the localization is R
    /// itself and `A` pulls back from the principal ideal it already is.
    PrincipalPullback { generator: Elem },
}

impl QuotVal {
    pub fn to_json(&self, r: &Ring) -> Value {
        match self {
            QuotVal::Prime { generator } => json!({"kind": "prime", "generator": r.literal(*generator)}),
            QuotVal::PrincipalPullback { generator } => {
                json!({"kind": "principal_pullback", "generator": r.literal(*generator)})
            }
        }
    }
}

pub fn is_chain_ring(r: &Ring) -> Result<bool> {
    Ok(r.is_local() && is_arithmetical(r)?)
}

pub fn quotval_classify(r: &Ring, a: &Ideal) -> Result<QuotVal> {
    if !is_chain_ring(r)? {
        return Err(Error::NotAChainRing);
    }
    let generator = a
        .elements()
        .find(|&g| r.principal(g) == *a)
        .ok_or_else(|| Error::InvariantViolated("ideal of a chain ring is not principal".into()))?;
    Ok(if r.is_prime_ideal(a) {
        QuotVal::Prime { generator }
    } else {
        QuotVal::PrincipalPullback { generator }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> Ring {
        Ring::zmod(n).unwrap()
    }

    fn kxy2() -> Ring {
        Ring::nilpotent(2, &["x", "y"], 2, vec![]).unwrap()
    }

    #[test]
    fn homs_from_ideal_of_zmod4() {
        let r = z(4);
        let homs = ideal_homs(&r, &r.principal(Elem(2))).unwrap();
        assert_eq!(homs.len(), 2);
        assert!(homs.iter().all(|h| h.is_linear(&r) && h.extension(&r).is_some()));
        assert!(baer_self_injective(&r).unwrap().holds);
    }

    #[test]
    fn kxy2_is_not_self_injective() {
        let k = kxy2();
        let rep = baer_self_injective(&k).unwrap();
        assert!(!rep.holds);
        // the hom x ↦ x, y ↦ 0 on (x, y) does not extend either
        let x = k.parse(&json!([0, 1, 0])).unwrap();
        let y = k.parse(&json!([0, 0, 1])).unwrap();
        let m = k.ideal(&[x, y]);
        let h = ideal_homs(&k, &m)
            .unwrap()
            .into_iter()
            .find(|h| h.apply(x) == Some(x) && h.apply(y) == Some(Elem::ZERO))
            .unwrap();
        assert!(h.is_linear(&k) && h.extension(&k).is_none());
        assert!(!double_annihilator_check(&k).unwrap().holds);
        let ax = k.principal(x);
        assert_eq!(k.annihilator(&ax), m);
        assert_eq!(k.annihilator(&m), m);
    }

    #[test]
    fn fractionally_if_examples() {
        assert!(fractionally_if_check(&z(4)).unwrap().holds);
        assert!(fractionally_if_check(&z(5)).unwrap().holds);
        let rep = fractionally_if_check(&kxy2()).unwrap();
        assert_eq!(rep.counterexample, Some(json!([])));
    }

    #[test]
    fn sharp_examples() {
        let r = z(8);
        assert_eq!(sharp(&r, &r.principal(Elem(2))).unwrap(), r.principal(Elem(2)));
        assert_eq!(sharp(&r, &r.principal(Elem(4))).unwrap(), r.principal(Elem(2)));
        assert_eq!(sharp(&z(4), &z(4).principal(Elem(2))).unwrap(), z(4).principal(Elem(2)));
        assert_eq!(sharp(&r, &r.zero_ideal()), Err(Error::UndefinedForZeroOrUnitIdeal));
        assert_eq!(sharp(&r, &r.whole()), Err(Error::UndefinedForZeroOrUnitIdeal));
    }

    #[test]
    fn strongly_discrete_and_quotval() {
        assert!(strongly_discrete_check(&z(8)).unwrap().holds);
        assert!(strongly_discrete_check(&z(7)).unwrap().holds);
        assert_eq!(strongly_discrete_check(&kxy2()), Err(Error::NotArithmetical));
        let r = z(8);
        assert_eq!(
            quotval_classify(&r, &r.principal(Elem(4))).unwrap(),
            QuotVal::PrincipalPullback { generator: Elem(4) }
        );
        assert_eq!(quotval_classify(&r, &r.principal(Elem(2))).unwrap(), QuotVal::Prime { generator: Elem(2) });
        assert!(matches!(quotval_classify(&z(9), &z(9).principal(Elem(3))), Ok(QuotVal::Prime { .. })));
        assert_eq!(quotval_classify(&z(6), &z(6).principal(Elem(2))), Err(Error::NotAChainRing));
    }
}
