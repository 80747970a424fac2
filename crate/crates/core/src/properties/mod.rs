//! Decision procedures for Bézout, Hermite, elementary divisor, arithmetical,
//! clean, almost clean and PP rings, with least witnesses.
//!
//! On a finite ring regular elements are units, every prime is minimal and
//! maximal, and `R ≅ Π R·eᵢ` over local factors. The procedures below still
//! compute each notion from its definition; those coincidences are asserted,
//! not assumed.

mod snf;

use std::collections::HashMap;
use std::sync::Mutex;

use fixedbitset::FixedBitSet;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gluing::{hermite_system, Gluer, PolySystem};
use crate::par;
use crate::report::PropertyReport;
use crate::ring::{Elem, Ideal, Ring};

pub use snf::{fitting_ideals, snf, snf_unchecked, Matrix, Snf, SnfEngine};

/// Bit `k` set iff the element lies in the k-th maximal ideal.
///
/// A finite ring has at most `log₂|R|` maximal ideals, so 64 bits suffice.
pub(crate) fn maximal_masks(r: &Ring) -> Result<Vec<u64>> {
    let max = r.maximal_ideals()?;
    if max.len() > 64 {
        return Err(Error::InvariantViolated("more than 64 maximal ideals".into()));
    }
    Ok(r.elements()
        .map(|a| {
            max.iter()
                .enumerate()
                .filter(|(_, m)| m.contains(a))
                .fold(0u64, |acc, (k, _)| acc | 1 << k)
        })
        .collect())
}

fn lit_pair(r: &Ring, a: Elem, b: Elem) -> Value {
    json!([r.literal(a), r.literal(b)])
}

fn ideal_json(r: &Ring, i: &Ideal) -> Value {
    Value::Array(r.greedy_gens(i).into_iter().map(|g| r.literal(g)).collect())
}

/// Least pair `(a, b)`, `a < b`, whose principal-ideal classes fail `bad`.
fn least_pair(r: &Ring, bad: impl Fn(usize, usize) -> bool) -> Option<(Elem, Elem)> {
    let pi = r.principal_ideals();
    r.elements()
        .flat_map(|a| r.elements().skip(a.idx() + 1).map(move |b| (a, b)))
        .find(|&(a, b)| bad(pi.pid[a.idx()] as usize, pi.pid[b.idx()] as usize))
}

/// Every two-generated ideal principal; by induction, every finitely generated one.
pub fn bezout_check(r: &Ring) -> Result<PropertyReport> {
    let pi = r.principal_ideals();
    let k = pi.ideals.len();
    let index: HashMap<&FixedBitSet, usize> = pi.ideals.iter().enumerate().map(|(i, p)| (p.members(), i)).collect();
    let principal_sum = par::map_range(k * k, |t| {
        let (i, j) = (t / k, t % k);
        index.contains_key(r.ideal_sum(&pi.ideals[i], &pi.ideals[j]).members())
    });
    Ok(match least_pair(r, |i, j| !principal_sum[i * k + j]) {
        None => PropertyReport::pass("bezout", Some(json!({ "principal_ideals": k }))),
        Some((a, b)) => PropertyReport::fail("bezout", lit_pair(r, a, b)),
    })
}

pub fn is_bezout(r: &Ring) -> Result<bool> {
    Ok(bezout_check(r)?.holds)
}

fn hermite_search(r: &Ring, masks: &[u64], a: Elem, b: Elem) -> Option<(Elem, Elem, Elem)> {
    let mut ta = Vec::new();
    let mut tb = Vec::new();
    for d in r.elements() {
        ta.clear();
        tb.clear();
        for x in r.elements() {
            let y = r.mul(d, x);
            if y == a {
                ta.push(x);
            }
            if y == b {
                tb.push(x);
            }
        }
        for &a1 in &ta {
            if let Some(&b1) = tb.iter().find(|&&b1| masks[a1.idx()] & masks[b1.idx()] == 0) {
                return Some((d, a1, b1));
            }
        }
    }
    None
}

/// Least `(d, a′, b′)` with `a = d·a′`, `b = d·b′`, `Ra′ + Rb′ = R`.
pub fn hermite_witness(r: &Ring, a: Elem, b: Elem) -> Result<Option<(Elem, Elem, Elem)>> {
    Ok(hermite_search(r, &maximal_masks(r)?, a, b))
}

/// Hermite pairwise. Solvability depends only on the principal ideals `Ra`,
/// `Rb` (rescale `a′`, `b′` by the units relating associates).
pub fn hermite_check(r: &Ring) -> Result<PropertyReport> {
    let masks = maximal_masks(r)?;
    let pi = r.principal_ideals();
    let k = pi.ideals.len();
    let ok = par::map_range(k * k, |t| {
        hermite_search(r, &masks, pi.least_gen[t / k], pi.least_gen[t % k]).is_some()
    });
    Ok(match least_pair(r, |i, j| !ok[i * k + j]) {
        None => PropertyReport::pass("hermite", Some(json!({ "class_pairs": k * k }))),
        Some((a, b)) => PropertyReport::fail("hermite", lit_pair(r, a, b)),
    })
}

/// Hermite witnesses obtained by solving locally at each block and gluing.
///
/// Local solutions depend only on the classes of `a`, `b` modulo `A(x)`, and
/// are memoized on them.
pub struct HermiteGluer {
    ring: Ring,
    gluer: Gluer,
    memo: Mutex<HashMap<(usize, Elem, Elem), Option<Vec<Elem>>>>,
}

impl HermiteGluer {
    pub fn new(r: &Ring) -> Result<HermiteGluer> {
        Ok(HermiteGluer {
            ring: r.clone(),
            gluer: Gluer::new(&crate::gluing::Algebra::itself(r))?,
            memo: Mutex::new(HashMap::new()),
        })
    }

    /// `(d, a′, b′)` of a glued solution, or `None` if some block has no local one.
    pub fn witness(&self, a: Elem, b: Elem) -> Result<Option<(Elem, Elem, Elem)>> {
        let sys: PolySystem = hermite_system(&self.ring, a, b);
        let mut locals = Vec::with_capacity(self.gluer.blocks.len());
        for ctx in &self.gluer.blocks {
            let key = (ctx.block, ctx.quotient.project(a), ctx.quotient.project(b));
            let cached = self.memo.lock().expect("memo lock").get(&key).cloned();
            let local = match cached {
                Some(l) => l,
                None => {
                    let l = self.gluer.solve_local(&sys, ctx.block)?;
                    self.memo.lock().expect("memo lock").insert(key, l.clone());
                    l
                }
            };
            match local {
                Some(l) => locals.push((ctx.block, l)),
                None => return Ok(None),
            }
        }
        let d = self.gluer.glue(&sys, &locals)?;
        Ok(Some((d[0], d[1], d[2])))
    }
}

/// Least `(S, T, X, Y)` with `aSX + bTX + cTY = 1`.
pub fn gh_witness(r: &Ring, a: Elem, b: Elem, c: Elem) -> Result<Option<[Elem; 4]>> {
    let masks = maximal_masks(r)?;
    let one = r.one();
    for s in r.elements() {
        for t in r.elements() {
            let u = r.add(r.mul(a, s), r.mul(b, t));
            let v = r.mul(c, t);
            if masks[u.idx()] & masks[v.idx()] != 0 {
                continue;
            }
            for x in r.elements() {
                let rest = r.sub(one, r.mul(u, x));
                if let Some(y) = r.elements().find(|&y| r.mul(v, y) == rest) {
                    return Ok(Some([s, t, x, y]));
                }
            }
        }
    }
    Ok(None)
}

/// Per local factor: for each class triple, unimodular implies solvable.
///
/// Solvability is invariant under replacing each of `a`, `b`, `c` by an
/// associate, and holds in R iff it holds in every factor.
fn gh_factor_table(t: &Ring) -> Result<Vec<bool>> {
    let masks = maximal_masks(t)?;
    let pi = t.principal_ideals();
    let k = pi.ideals.len();
    let g = &pi.least_gen;
    Ok(par::map_range(k * k * k, |idx| {
        let (a, b, c) = (g[idx / (k * k)], g[idx / k % k], g[idx % k]);
        if masks[a.idx()] & masks[b.idx()] & masks[c.idx()] != 0 {
            return true;
        }
        t.elements().any(|s| {
            t.elements().any(|tt| {
                let u = t.add(t.mul(a, s), t.mul(b, tt));
                masks[u.idx()] & masks[t.mul(c, tt).idx()] == 0
            })
        })
    }))
}

pub fn gh_triple_check(r: &Ring) -> Result<PropertyReport> {
    let factors = r.local_factors();
    let tables = factors
        .iter()
        .map(|f| gh_factor_table(&f.ring))
        .collect::<Result<Vec<_>>>()?;
    if tables.iter().all(|t| t.iter().all(|&b| b)) {
        return Ok(PropertyReport::pass(
            "gh_triple",
            Some(json!({ "local_factors": factors.len() })),
        ));
    }
    let proj: Vec<(Vec<u32>, usize)> = factors
        .iter()
        .map(|f| {
            let pi = f.ring.principal_ideals();
            let p = r
                .elements()
                .map(|a| pi.pid[f.ring.corner_index(r.mul(a, f.idempotent)).expect("in corner").idx()])
                .collect();
            (p, pi.ideals.len())
        })
        .collect();
    let fails = |a: Elem, b: Elem, c: Elem| {
        proj.iter().zip(&tables).any(|((p, k), tab)| {
            let (i, j, l) = (p[a.idx()] as usize, p[b.idx()] as usize, p[c.idx()] as usize);
            !tab[(i * k + j) * k + l]
        })
    };
    for a in r.elements() {
        for b in r.elements() {
            if let Some(c) = r.elements().find(|&c| fails(a, b, c)) {
                return Ok(PropertyReport::fail(
                    "gh_triple",
                    json!([r.literal(a), r.literal(b), r.literal(c)]),
                ));
            }
        }
    }
    Err(Error::InvariantViolated("failing factor triple has no lift".into()))
}

/// Hermite and triple criterion, without the cross-checks of [`edr_check`]. Cached.
pub fn is_edr(r: &Ring) -> Result<bool> {
    if let Some(&v) = r.cache().edr.get() {
        return Ok(v);
    }
    let v = hermite_check(r)?.holds && gh_triple_check(r)?.holds;
    let _ = r.cache().edr.set(v);
    Ok(v)
}

/// Whether the reduction to `R/L` over minimal primes applies, and its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdrReduction {
    /// Every stalk `R/A(x)` is Bézout, the hypothesis of the reduction.
    pub applicable: bool,
    pub direct: bool,
    /// Conjunction of the verdicts on `R/L`.
    pub via_minimal_primes: bool,
}

pub fn edr_reduction(r: &Ring) -> Result<EdrReduction> {
    let spec = r.spectrum()?;
    let mut applicable = true;
    for b in &spec.blocks {
        applicable &= is_bezout(&r.quotient(&b.pure_ideal)?)?;
    }
    let mut via = true;
    for p in spec.points.iter().filter(|p| p.is_minimal) {
        via &= is_edr(&r.quotient(&p.prime)?)?;
    }
    Ok(EdrReduction {
        applicable,
        direct: is_edr(r)?,
        via_minimal_primes: via,
    })
}

/// Matrices used to cross-validate an EDR verdict against constructive SNF:
/// every `1×2` matrix, and a seeded sample of `2×2` ones.
fn snf_budget(r: &Ring) -> Vec<Matrix> {
    use rand::{Rng as _, SeedableRng};
    let mut out: Vec<Matrix> = r
        .elements()
        .flat_map(|a| r.elements().map(move |b| Matrix::new(1, 2, vec![a, b])))
        .collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let n = r.size() as u32;
    out.extend((0..64).map(|_| Matrix::new(2, 2, (0..4).map(|_| Elem(rng.gen_range(0..n))).collect())));
    out
}

/// Hermite ∧ triple criterion, certified by SNF on a budget of matrices and by
/// the reduction to minimal primes whenever its hypothesis holds.
pub fn edr_check(r: &Ring) -> Result<PropertyReport> {
    let hermite = hermite_check(r)?;
    let gh = gh_triple_check(r)?;
    let verdict = hermite.holds && gh.holds;
    let _ = r.cache().edr.set(verdict);
    let engine = SnfEngine::new(r)?;
    let budget = snf_budget(r);
    let failures = par::map(&budget, |m| engine.diagonalize(m).is_err());
    let constructive = failures.iter().all(|&f| !f);
    if constructive != verdict {
        return Err(Error::InvariantViolated(format!(
            "EDR witness equations say {verdict}, SNF on the budget says {constructive}"
        )));
    }
    let red = edr_reduction(r)?;
    if red.applicable && red.direct != red.via_minimal_primes {
        return Err(Error::InvariantViolated("EDR reduction to minimal primes disagrees".into()));
    }
    let reduction = json!({ "applicable": red.applicable, "via_minimal_primes": red.via_minimal_primes });
    Ok(if verdict {
        PropertyReport::pass(
            "edr",
            Some(json!({ "snf_matrices": budget.len(), "reduction": reduction })),
        )
    } else {
        let cex = if !hermite.holds {
            json!({ "hermite": hermite.counterexample })
        } else {
            json!({ "gh_triple": gh.counterexample })
        };
        PropertyReport::fail("edr", cex)
    })
}

/// Every local factor has totally ordered ideals.
pub fn arithmetical_check(r: &Ring) -> Result<PropertyReport> {
    for f in r.local_factors().iter() {
        let t = &f.ring;
        let ideals = t.ideals()?;
        for (i, a) in ideals.iter().enumerate() {
            if let Some(b) = ideals[i + 1..].iter().find(|b| !a.is_subset(b) && !b.is_subset(a)) {
                let up = |x: &Ideal| {
                    let gens: Vec<Elem> = t.greedy_gens(x).into_iter().map(|g| t.lift(g)).collect();
                    ideal_json(r, &r.ideal(&gens))
                };
                return Ok(PropertyReport::fail("arithmetical", json!([up(a), up(b)])));
            }
        }
    }
    Ok(PropertyReport::pass(
        "arithmetical",
        Some(json!({ "local_factors": r.local_factors().len() })),
    ))
}

pub fn is_arithmetical(r: &Ring) -> Result<bool> {
    Ok(arithmetical_check(r)?.holds)
}

/// Least `(e, u)` with `e` idempotent, `u` a unit, `a = e + u`.
pub fn clean_decomposition(r: &Ring, a: Elem) -> Option<(Elem, Elem)> {
    r.idempotents()
        .iter()
        .map(|&e| (e, r.sub(a, e)))
        .find(|&(_, u)| r.is_unit(u))
}

fn regular_flags(r: &Ring) -> Vec<bool> {
    par::map_range(r.size(), |a| r.is_regular(Elem(a as u32)))
}

/// Least `(e, s)` with `e` idempotent, `s` regular, `a = e + s`.
pub fn almost_clean_decomposition(r: &Ring, a: Elem) -> Option<(Elem, Elem)> {
    r.idempotents()
        .iter()
        .map(|&e| (e, r.sub(a, e)))
        .find(|&(_, s)| r.is_regular(s))
}

fn decomposition_check(
    r: &Ring,
    name: &str,
    decompose: impl Fn(Elem) -> Option<(Elem, Elem)> + Sync + Send,
) -> PropertyReport {
    match par::find_first_range(r.size(), |a| decompose(Elem(a as u32)).is_none().then_some(())) {
        None => PropertyReport::pass(name, Some(json!({ "elements": r.size() }))),
        Some((a, ())) => PropertyReport::fail(name, r.literal(Elem(a as u32))),
    }
}

pub fn clean_check(r: &Ring) -> PropertyReport {
    decomposition_check(r, "clean", |a| clean_decomposition(r, a))
}

pub fn almost_clean_check(r: &Ring) -> PropertyReport {
    let reg = regular_flags(r);
    decomposition_check(r, "almost_clean", |a| {
        r.idempotents()
            .iter()
            .map(|&e| (e, r.sub(a, e)))
            .find(|&(_, s)| reg[s.idx()])
    })
}

/// Least `(e, s)` with `e` idempotent, `s` regular, `a = e·s`.
pub fn pp_decomposition(r: &Ring, a: Elem) -> Option<(Elem, Elem)> {
    let reg: Vec<Elem> = r.elements().filter(|&s| r.is_regular(s)).collect();
    r.idempotents()
        .iter()
        .find_map(|&e| reg.iter().find(|&&s| r.mul(e, s) == a).map(|&s| (e, s)))
}

/// Every element is idempotent × regular; cross-checked against the
/// annihilator form (every `(0:a)` generated by an idempotent).
pub fn pp_check(r: &Ring) -> Result<PropertyReport> {
    let reg: Vec<Elem> = r.elements().filter(|&s| r.is_regular(s)).collect();
    let decomposable = |a: Elem| {
        r.idempotents()
            .iter()
            .any(|&e| reg.iter().any(|&s| r.mul(e, s) == a))
    };
    let first_bad = par::find_first_range(r.size(), |a| (!decomposable(Elem(a as u32))).then_some(()));
    let annihilator_form = par::find_first_range(r.size(), |a| {
        let ann = r.annihilator_of(Elem(a as u32));
        crate::spectrum::idempotent_generator(r, &ann).is_none().then_some(())
    });
    if first_bad.is_some() != annihilator_form.is_some() {
        return Err(Error::InvariantViolated(format!(
            "PP decomposition and annihilator form disagree on {}",
            r.name()
        )));
    }
    Ok(match first_bad {
        None => PropertyReport::pass("pp", Some(json!({ "elements": r.size() }))),
        Some((a, ())) => PropertyReport::fail("pp", r.literal(Elem(a as u32))),
    })
}

/// `Φ_R`: indices into `spec(R)` of the primes meeting no regular element.
pub fn phi_set(r: &Ring) -> Result<Vec<usize>> {
    let reg = regular_flags(r);
    let spec = r.spectrum()?;
    Ok((0..spec.points.len())
        .filter(|&i| !spec.points[i].prime.elements().any(|a| reg[a.idx()]))
        .collect())
}

/// The three conditions of the local almost-clean characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoalClean {
    /// Each `a` has `a` or `a − 1` regular.
    pub each_or_shift_regular: bool,
    /// Almost clean and indecomposable.
    pub almost_clean_indecomposable: bool,
    /// `L + L′ ≠ R` for all `L, L′ ∈ Φ_R`.
    pub phi_pairwise_proper: bool,
}

impl LoalClean {
    pub fn agree(&self) -> bool {
        self.each_or_shift_regular == self.almost_clean_indecomposable
            && self.almost_clean_indecomposable == self.phi_pairwise_proper
    }
}

pub fn loalclean(r: &Ring) -> Result<LoalClean> {
    let reg = regular_flags(r);
    let one = r.one();
    let i = r.elements().all(|a| reg[a.idx()] || reg[r.sub(a, one).idx()]);
    let ii = almost_clean_check(r).holds && r.idempotents().len() <= 2;
    let spec = r.spectrum()?;
    let phi = phi_set(r)?;
    let iii = phi.iter().all(|&p| {
        phi.iter()
            .all(|&q| !r.ideal_sum(&spec.points[p].prime, &spec.points[q].prime).is_whole())
    });
    Ok(LoalClean {
        each_or_shift_regular: i,
        almost_clean_indecomposable: ii,
        phi_pairwise_proper: iii,
    })
}

pub fn loalclean_equiv(r: &Ring) -> Result<PropertyReport> {
    let c = loalclean(r)?;
    let v = json!({
        "each_or_shift_regular": c.each_or_shift_regular,
        "almost_clean_indecomposable": c.almost_clean_indecomposable,
        "phi_pairwise_proper": c.phi_pairwise_proper,
    });
    Ok(if c.agree() {
        PropertyReport::pass("loalclean_equiv", Some(v))
    } else {
        PropertyReport::fail("loalclean_equiv", v)
    })
}

/// The ring of fractions of a finite ring is the ring itself.
#[derive(Debug, Clone)]
pub struct TotalQuotient {
    pub ring: Ring,
    /// Every regular element is a unit: the certificate for `Q(R) = R`.
    pub regular_are_units: bool,
    pub valuation: bool,
    pub almost_clean_indecomposable: bool,
}

/// `Q(R) = R` with its certificate; for arithmetical R, asserts
/// `Q` valuation ⟺ R almost clean and indecomposable.
pub fn total_quotient_note(r: &Ring) -> Result<TotalQuotient> {
    let reg = regular_flags(r);
    let regular_are_units = r.elements().all(|a| reg[a.idx()] == r.is_unit(a));
    let ideals = r.ideals()?;
    let valuation = ideals
        .iter()
        .all(|a| ideals.iter().all(|b| a.is_subset(b) || b.is_subset(a)));
    let aci = almost_clean_check(r).holds && r.idempotents().len() <= 2;
    if is_arithmetical(r)? && valuation != aci {
        return Err(Error::InvariantViolated(format!(
            "valuation and almost-clean-indecomposable differ on {}",
            r.name()
        )));
    }
    Ok(TotalQuotient {
        ring: r.clone(),
        regular_are_units,
        valuation,
        almost_clean_indecomposable: aci,
    })
}

/// The conditions of the almost-clean theorem over pSpec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hausd {
    pub almost_clean: bool,
    /// For every block `x` and `r`: `r` or `r − 1` is congruent to a regular
    /// element modulo `A(x)`. First failure as `(block, r)`.
    pub congruent_to_regular: Result<(), (usize, Elem)>,
    /// Every stalk `R/A(x)` almost clean. First failing block.
    pub stalks_almost_clean: Result<(), usize>,
}

pub fn hausd(r: &Ring) -> Result<Hausd> {
    let spec = r.spectrum()?;
    let reg = regular_flags(r);
    let one = r.one();
    let mut ii = Ok(());
    let mut iii = Ok(());
    for (b, block) in spec.blocks.iter().enumerate() {
        let q = r.quotient(&block.pure_ideal)?;
        let mut hit = FixedBitSet::with_capacity(q.size());
        for s in r.elements().filter(|s| reg[s.idx()]) {
            hit.insert(q.project(s).idx());
        }
        if ii.is_ok() {
            if let Some(x) = r
                .elements()
                .find(|&x| !hit.contains(q.project(x).idx()) && !hit.contains(q.project(r.sub(x, one)).idx()))
            {
                ii = Err((b, x));
            }
        }
        if iii.is_ok() && !almost_clean_check(&q).holds {
            iii = Err(b);
        }
    }
    Ok(Hausd {
        almost_clean: almost_clean_check(r).holds,
        congruent_to_regular: ii,
        stalks_almost_clean: iii,
    })
}

/// (i) ⟺ (ii) ⟹ (iii), and all three agree since principal ideals of a
/// finite ring are finitely presented.
pub fn hausd_check(r: &Ring) -> Result<PropertyReport> {
    let h = hausd(r)?;
    let v = json!({
        "almost_clean": h.almost_clean,
        "congruent_to_regular": h.congruent_to_regular.is_ok(),
        "stalks_almost_clean": h.stalks_almost_clean.is_ok(),
    });
    let agree = h.almost_clean == h.congruent_to_regular.is_ok()
        && h.congruent_to_regular.is_ok() == h.stalks_almost_clean.is_ok();
    Ok(if agree {
        PropertyReport::pass("almost_clean_local", Some(v))
    } else {
        PropertyReport::fail("almost_clean_local", v)
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

    fn e(x: u32) -> Elem {
        Elem(x)
    }

    #[test]
    fn bezout_verdicts() {
        assert!(bezout_check(&z(12)).unwrap().holds);
        let k = kxy2();
        let rep = bezout_check(&k).unwrap();
        assert!(!rep.holds);
        let (y, x) = (k.parse(&json!([0, 0, 1])).unwrap(), k.parse(&json!([0, 1, 0])).unwrap());
        assert_eq!(rep.counterexample, Some(lit_pair(&k, y, x)));
    }

    #[test]
    fn hermite_examples() {
        let r = z(6);
        assert_eq!(hermite_witness(&r, e(2), e(3)).unwrap(), Some((e(1), e(2), e(3))));
        assert_eq!(hermite_witness(&r, e(2), e(4)).unwrap(), Some((e(2), e(1), e(2))));
        // least is (0,0,1); (0,1,0) is also a witness
        assert_eq!(hermite_witness(&r, e(0), e(0)).unwrap(), Some((e(0), e(0), e(1))));
        assert!(hermite_check(&r).unwrap().holds);
        assert!(!hermite_check(&kxy2()).unwrap().holds);
    }

    #[test]
    fn glued_hermite_solves_equations() {
        let r = z(12);
        let g = HermiteGluer::new(&r).unwrap();
        let masks = maximal_masks(&r).unwrap();
        for a in r.elements() {
            for b in r.elements() {
                let (d, a1, b1) = g.witness(a, b).unwrap().unwrap();
                assert_eq!(r.mul(d, a1), a);
                assert_eq!(r.mul(d, b1), b);
                assert_eq!(masks[a1.idx()] & masks[b1.idx()], 0);
            }
        }
    }

    #[test]
    fn gh_examples() {
        let r = z(6);
        assert_eq!(gh_witness(&r, e(2), e(3), e(0)).unwrap(), Some([e(1), e(1), e(5), e(0)]));
        assert_eq!(gh_witness(&r, e(1), e(0), e(0)).unwrap(), Some([e(1), e(0), e(1), e(0)]));
        for n in 2..=16 {
            assert!(gh_triple_check(&z(n)).unwrap().holds, "Z/{n}");
        }
    }

    #[test]
    fn edr_examples() {
        assert!(edr_check(&z(6)).unwrap().holds);
        assert!(edr_check(&z(4)).unwrap().holds);
        let k = kxy2();
        let rep = edr_check(&k).unwrap();
        assert!(!rep.holds);
        let red = edr_reduction(&k).unwrap();
        assert!(!red.applicable && red.via_minimal_primes && !red.direct);
    }

    #[test]
    fn arithmetical_examples() {
        assert!(arithmetical_check(&z(12)).unwrap().holds);
        assert!(arithmetical_check(&z(7)).unwrap().holds);
        let k = kxy2();
        let rep = arithmetical_check(&k).unwrap();
        assert_eq!(rep.counterexample, Some(json!([[[0, 0, 1]], [[0, 1, 0]]])));
    }

    #[test]
    fn clean_examples() {
        let r = z(6);
        assert_eq!(clean_decomposition(&r, e(3)), Some((e(4), e(5))));
        assert_eq!(clean_decomposition(&r, e(0)), Some((e(1), e(5))));
        assert_eq!(clean_decomposition(&z(4), e(2)), Some((e(1), e(1))));
        assert_eq!(almost_clean_decomposition(&r, e(3)), Some((e(4), e(5))));
        assert_eq!(almost_clean_decomposition(&z(7), e(3)), Some((e(0), e(3))));
        assert!(clean_check(&kxy2()).holds && almost_clean_check(&kxy2()).holds);
    }

    #[test]
    fn pp_examples() {
        let r = z(6);
        assert_eq!(pp_decomposition(&r, e(2)), Some((e(4), e(5))));
        assert_eq!(pp_decomposition(&z(4), e(2)), None);
        assert_eq!(pp_decomposition(&r, e(5)), Some((e(1), e(5))));
        assert!(pp_check(&r).unwrap().holds);
        assert!(!pp_check(&z(4)).unwrap().holds);
    }

    #[test]
    fn loalclean_examples() {
        let c = loalclean(&z(4)).unwrap();
        assert!(c.each_or_shift_regular && c.almost_clean_indecomposable && c.phi_pairwise_proper);
        assert_eq!(phi_set(&z(4)).unwrap().len(), 1);
        let c = loalclean(&z(6)).unwrap();
        assert!(!c.each_or_shift_regular && !c.almost_clean_indecomposable && !c.phi_pairwise_proper);
        assert!(loalclean(&z(5)).unwrap().agree());
    }

    #[test]
    fn total_quotient_examples() {
        let q = total_quotient_note(&z(4)).unwrap();
        assert!(q.regular_are_units && q.valuation && q.almost_clean_indecomposable);
        let q = total_quotient_note(&z(6)).unwrap();
        assert!(!q.valuation && !q.almost_clean_indecomposable);
        assert!(hausd_check(&z(12)).unwrap().holds);
    }
}
