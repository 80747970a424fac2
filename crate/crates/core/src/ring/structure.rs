use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{Elem, Ideal, Kind, Ring};
use crate::error::{Error, Result};
use crate::par;

/// A local factor `R·e` for a primitive idempotent `e`.
#[derive(Debug, Clone)]
pub struct LocalFactor {
    pub idempotent: Elem,
    pub ring: Ring,
}

impl Ring {
    pub fn idempotents(&self) -> &[Elem] {
        self.cache()
            .idempotents
            .get_or_init(|| self.elements().filter(|&e| self.mul(e, e) == e).collect())
    }

    pub fn is_idempotent(&self, e: Elem) -> bool {
        self.mul(e, e) == e
    }

    fn unit_flags(&self) -> &[bool] {
        self.cache().units.get_or_init(|| {
            let one = self.one();
            let n = self.size();
            par::map_range(n, |a| self.elements().any(|b| self.mul(Elem(a as u32), b) == one))
        })
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.unit_flags()[a.idx()]
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        let one = self.one();
        self.elements().find(|&b| self.mul(a, b) == one)
    }

    /// Elements whose multiplication map is injective.
    ///
    /// Computed by the injectivity scan, then checked against the unit set:
    /// an injective self-map of a finite set is a bijection.
    pub fn regular_elements(&self) -> Vec<Elem> {
        let regular: Vec<Elem> = self.elements().filter(|&a| self.is_regular(a)).collect();
        assert!(
            regular.iter().all(|&a| self.is_unit(a)) && regular.len() == self.units().len(),
            "regular elements differ from units in {}",
            self.name()
        );
        regular
    }

    pub fn is_regular(&self, a: Elem) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.size());
        self.elements().all(|x| {
            let y = self.mul(a, x).idx();
            let fresh = !seen.contains(y);
            seen.insert(y);
            fresh
        })
    }

    pub fn is_nilpotent(&self, a: Elem) -> bool {
        let mut x = a;
        for _ in 0..=self.size() {
            if x == Elem::ZERO {
                return true;
            }
            x = self.mul(x, a);
        }
        false
    }

    pub fn nilradical(&self) -> Ideal {
        let mut members = FixedBitSet::with_capacity(self.size());
        for a in self.elements().filter(|&a| self.is_nilpotent(a)) {
            members.insert(a.idx());
        }
        self.ideal_from_members(members)
    }

    /// Nonzero idempotents with no nonzero idempotent strictly below them.
    pub fn primitive_idempotents(&self) -> Vec<Elem> {
        let idem = self.idempotents();
        idem.iter()
            .copied()
            .filter(|&e| e != Elem::ZERO)
            .filter(|&e| {
                !idem
                    .iter()
                    .any(|&f| f != Elem::ZERO && f != e && self.mul(f, e) == f)
            })
            .collect()
    }

    /// `R ≅ Π R·eᵢ` over the primitive idempotents, in element order.
    pub fn local_factors(&self) -> Arc<Vec<LocalFactor>> {
        self.cache()
            .local_factors
            .get_or_init(|| {
                let factors = self
                    .primitive_idempotents()
                    .into_iter()
                    .map(|e| LocalFactor {
                        idempotent: e,
                        ring: self.corner(e).expect("primitive idempotent"),
                    })
                    .collect();
                Arc::new(factors)
            })
            .clone()
    }

    pub fn is_local(&self) -> bool {
        self.idempotents().len() == 2 || self.size() == 1
    }

    /// `(r,x)(s,y) = (rs, ry + sx)` evaluated from the components.
    pub fn trivial_extension_mul(&self, a: Elem, b: Elem) -> Result<Elem> {
        let Kind::TrivialExt { base, module } = self.kind() else {
            return Err(Error::TypeMismatch(format!("{} is not a trivial extension", self.name())));
        };
        if a.idx() >= self.size() || b.idx() >= self.size() {
            return Err(Error::TypeMismatch("element outside the ring".into()));
        }
        let (r, x) = self.te_split(a);
        let (s, y) = self.te_split(b);
        let m = module.add(module.smul(r, y), module.smul(s, x));
        Ok(self.te_join(base.mul(r, s), m))
    }

    /// Exhaustive ring-axiom check; returns the first violated law.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let one = self.one();
        for a in self.elements() {
            if self.add(a, Elem::ZERO) != a || self.mul(a, one) != a {
                return Err(format!("identity fails at {}", self.fmt_elem(a)));
            }
            if self.add(a, self.neg(a)) != Elem::ZERO {
                return Err(format!("negation fails at {}", self.fmt_elem(a)));
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at ({}, {})", self.fmt_elem(a), self.fmt_elem(b)));
                }
                for c in self.elements() {
                    let ab = self.add(a, b);
                    if self.add(ab, c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(ab, c) != self.add(self.mul(a, c), self.mul(b, c))
                    {
                        return Err(format!(
                            "associativity or distributivity fails at ({}, {}, {})",
                            self.fmt_elem(a),
                            self.fmt_elem(b),
                            self.fmt_elem(c)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::CyclicModule;

    fn z(n: u32) -> Ring {
        Ring::zmod(n).unwrap()
    }

    fn ids(v: &[Elem]) -> Vec<u32> {
        v.iter().map(|e| e.0).collect()
    }

    #[test]
    fn zmod6_structure() {
        let r = z(6);
        assert_eq!(ids(r.idempotents()), vec![0, 1, 3, 4]);
        assert_eq!(ids(&r.regular_elements()), vec![1, 5]);
        assert!(r.nilradical().is_zero());
        let lf = r.local_factors();
        assert_eq!(lf.iter().map(|f| f.idempotent.0).collect::<Vec<_>>(), vec![3, 4]);
        assert_eq!(lf.iter().map(|f| f.ring.size()).collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn zmod4_structure() {
        let r = z(4);
        assert_eq!(ids(r.idempotents()), vec![0, 1]);
        assert_eq!(ids(&r.regular_elements()), vec![1, 3]);
        assert_eq!(r.nilradical().elements().map(|e| e.0).collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(r.local_factors().len(), 1);
    }

    #[test]
    fn trivial_extension_formula() {
        let r = z(4);
        let m = CyclicModule::new(&r, vec![r.principal(Elem(2))]).unwrap();
        let t = Ring::trivial_extension(m).unwrap();
        let a = t.parse(&serde_json::json!([2, [1]])).unwrap();
        let b = t.parse(&serde_json::json!([3, [1]])).unwrap();
        let c = t.trivial_extension_mul(a, b).unwrap();
        assert_eq!(t.literal(c), serde_json::json!([2, [1]]));
        assert_eq!(c, t.mul(a, b));
        assert!(z(4).trivial_extension_mul(Elem(1), Elem(1)).is_err());

        let t2 = Ring::trivial_extension(CyclicModule::free(&z(2), 1).unwrap()).unwrap();
        let nil: Vec<_> = t2.nilradical().elements().map(|e| t2.literal(e)).collect();
        assert_eq!(nil, vec![serde_json::json!([0, [0]]), serde_json::json!([0, [1]])]);
    }

    #[test]
    fn axioms_hold_on_constructions() {
        let rings = vec![
            z(12),
            Ring::product(vec![z(2), z(4)]).unwrap(),
            Ring::nilpotent(3, &["x"], 3, vec![]).unwrap(),
            Ring::trivial_extension(CyclicModule::free(&z(4), 1).unwrap()).unwrap(),
            z(12).quotient(&z(12).principal(Elem(4))).unwrap(),
            z(12).corner(Elem(9)).unwrap(),
        ];
        for r in rings {
            assert_eq!(r.check_axioms(), Ok(()), "{}", r.name());
            let lf = r.local_factors();
            let prod: usize = lf.iter().map(|f| f.ring.size()).product();
            assert_eq!(prod, r.size());
            assert_eq!(r.sum(lf.iter().map(|f| f.idempotent)), r.one());
        }
    }
}
