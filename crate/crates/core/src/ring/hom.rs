use super::{Elem, Ideal, Ring};
use crate::error::{Error, Result};

/// A unital ring homomorphism given by its value table.
#[derive(Debug, Clone)]
pub struct RingHom {
    src: Ring,
    dst: Ring,
    map: Vec<Elem>,
}

impl RingHom {
    /// Tabulates `f` and checks additivity, multiplicativity and `f(1) = 1` exhaustively.
    pub fn new(src: &Ring, dst: &Ring, f: impl Fn(Elem) -> Elem) -> Result<RingHom> {
        let map: Vec<Elem> = src.elements().map(f).collect();
        let hom = RingHom {
            src: src.clone(),
            dst: dst.clone(),
            map,
        };
        hom.verify()?;
        Ok(hom)
    }

    fn verify(&self) -> Result<()> {
        let (s, t) = (&self.src, &self.dst);
        let fail = |a: Elem, b: Elem| Error::NotAHomomorphism {
            a: s.fmt_elem(a),
            b: s.fmt_elem(b),
        };
        if self.apply(s.one()) != t.one() {
            return Err(fail(s.one(), s.one()));
        }
        for a in s.elements() {
            for b in s.elements() {
                let (fa, fb) = (self.apply(a), self.apply(b));
                if self.apply(s.add(a, b)) != t.add(fa, fb) || self.apply(s.mul(a, b)) != t.mul(fa, fb) {
                    return Err(fail(a, b));
                }
            }
        }
        Ok(())
    }

    pub fn identity(r: &Ring) -> RingHom {
        RingHom {
            src: r.clone(),
            dst: r.clone(),
            map: r.elements().collect(),
        }
    }

    /// `R → R/I`.
    pub fn quotient_map(r: &Ring, i: &Ideal) -> Result<RingHom> {
        let q = r.quotient(i)?;
        Ok(RingHom {
            map: r.elements().map(|a| q.project(a)).collect(),
            src: r.clone(),
            dst: q,
        })
    }

    pub fn src(&self) -> &Ring {
        &self.src
    }

    pub fn dst(&self) -> &Ring {
        &self.dst
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a.idx()]
    }

    /// `φ⁻¹(J)` as an ideal of the source.
    pub fn preimage(&self, j: &Ideal) -> Ideal {
        let mut members = fixedbitset::FixedBitSet::with_capacity(self.src.size());
        for a in self.src.elements().filter(|&a| j.contains(self.apply(a))) {
            members.insert(a.idx());
        }
        self.src.ideal_from_members(members)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.dst.size()];
        self.src.size() == self.dst.size()
            && self.map.iter().all(|b| !std::mem::replace(&mut seen[b.idx()], true))
    }
}

/// Invariants preserved by any isomorphism, used to prune generator images.
fn signature(r: &Ring, a: Elem) -> (usize, usize, bool, bool, usize) {
    let nil = {
        let mut x = a;
        let mut k = 1;
        while x != Elem::ZERO && k <= r.size() {
            x = r.mul(x, a);
            k += 1;
        }
        if x == Elem::ZERO {
            k
        } else {
            0
        }
    };
    let ann = r.elements().filter(|&b| r.mul(a, b) == Elem::ZERO).count();
    (r.additive_order(a), nil, r.is_unit(a), r.is_idempotent(a), ann)
}

/// Least elements (greedily) generating `r` as a ring.
fn ring_generators(r: &Ring) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut have = closure(r, &gens);
    while let Some(x) = r.elements().find(|x| !have[x.idx()]) {
        gens.push(x);
        have = closure(r, &gens);
    }
    gens
}

fn closure(r: &Ring, gens: &[Elem]) -> Vec<bool> {
    let mut have = vec![false; r.size()];
    let mut list = vec![];
    for x in [Elem::ZERO, r.one()].into_iter().chain(gens.iter().copied()) {
        if !have[x.idx()] {
            have[x.idx()] = true;
            list.push(x);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for j in 0..=i {
            let y = list[j];
            for z in [r.add(x, y), r.mul(x, y)] {
                if !have[z.idx()] {
                    have[z.idx()] = true;
                    list.push(z);
                }
            }
        }
        i += 1;
    }
    have
}

/// Extends generator images to a map by closing under `+` and `·`;
/// `None` on any inconsistency.
fn extend(r: &Ring, t: &Ring, gens: &[Elem], imgs: &[Elem]) -> Option<Vec<Elem>> {
    let mut map: Vec<Option<Elem>> = vec![None; r.size()];
    let mut list = vec![];
    let seed = [(Elem::ZERO, Elem::ZERO), (r.one(), t.one())];
    for (x, y) in seed.into_iter().chain(gens.iter().copied().zip(imgs.iter().copied())) {
        match map[x.idx()] {
            Some(prev) if prev != y => return None,
            Some(_) => {}
            None => {
                map[x.idx()] = Some(y);
                list.push(x);
            }
        }
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        let fx = map[x.idx()].unwrap();
        for j in 0..=i {
            let y = list[j];
            let fy = map[y.idx()].unwrap();
            for (z, fz) in [(r.add(x, y), t.add(fx, fy)), (r.mul(x, y), t.mul(fx, fy))] {
                match map[z.idx()] {
                    Some(prev) if prev != fz => return None,
                    Some(_) => {}
                    None => {
                        map[z.idx()] = Some(fz);
                        list.push(z);
                    }
                }
            }
        }
        i += 1;
    }
    map.into_iter().collect()
}

/// A ring isomorphism `r → t`, by backtracking over images of ring generators.
pub fn find_isomorphism(r: &Ring, t: &Ring) -> Option<RingHom> {
    if r.size() != t.size()
        || r.idempotents().len() != t.idempotents().len()
        || r.units().len() != t.units().len()
    {
        return None;
    }
    let gens = ring_generators(r);
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let sig = signature(r, g);
            t.elements().filter(|&y| signature(t, y) == sig).collect()
        })
        .collect();
    let mut imgs = Vec::with_capacity(gens.len());
    fn search(
        r: &Ring,
        t: &Ring,
        gens: &[Elem],
        candidates: &[Vec<Elem>],
        imgs: &mut Vec<Elem>,
    ) -> Option<Vec<Elem>> {
        if imgs.len() == gens.len() {
            let map = extend(r, t, gens, imgs)?;
            let hom = RingHom {
                src: r.clone(),
                dst: t.clone(),
                map,
            };
            return (hom.is_bijective() && hom.verify().is_ok()).then_some(hom.map);
        }
        for &c in &candidates[imgs.len()] {
            imgs.push(c);
            if let Some(m) = search(r, t, gens, candidates, imgs) {
                return Some(m);
            }
            imgs.pop();
        }
        None
    }
    search(r, t, &gens, &candidates, &mut imgs).map(|map| RingHom {
        src: r.clone(),
        dst: t.clone(),
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crt_isomorphism_found() {
        let z6 = Ring::zmod(6).unwrap();
        let p = Ring::product(vec![Ring::zmod(2).unwrap(), Ring::zmod(3).unwrap()]).unwrap();
        let iso = find_isomorphism(&z6, &p).expect("Z/6 = Z/2 x Z/3");
        assert_eq!(p.split(iso.apply(Elem(5))), vec![Elem(1), Elem(2)]);
        assert!(find_isomorphism(&Ring::zmod(4).unwrap(), &Ring::product(vec![Ring::zmod(2).unwrap(), Ring::zmod(2).unwrap()]).unwrap()).is_none());
    }

    #[test]
    fn nilpotent_isomorphism_classes() {
        let a = Ring::nilpotent(2, &["x"], 2, vec![]).unwrap();
        let b = Ring::zmod(4).unwrap();
        assert!(find_isomorphism(&a, &b).is_none());
        let c = Ring::nilpotent(2, &["y", "z"], 3, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        let d = Ring::nilpotent(2, &["y", "z"], 2, vec![]).unwrap();
        assert!(find_isomorphism(&c, &d).is_some());
    }

    #[test]
    fn hom_verification_rejects_non_maps() {
        let z4 = Ring::zmod(4).unwrap();
        let z2 = Ring::zmod(2).unwrap();
        assert!(RingHom::new(&z4, &z2, |a| Elem(a.0 % 2)).is_ok());
        let err = RingHom::new(&z2, &z4, |a| a).unwrap_err();
        assert!(matches!(err, Error::NotAHomomorphism { .. }));
    }
}
