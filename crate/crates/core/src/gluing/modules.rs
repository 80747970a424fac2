use itertools::Itertools;
use serde_json::{json, Value};

use super::{Algebra, Gluer, Letter, PolySystem};
use crate::error::{Error, Result};
use crate::ring::{CyclicModule, Elem, Ideal, Ring};

/// An R-linear map between sums of cyclic modules, given on generators.
#[derive(Debug, Clone)]
pub struct ModuleHom {
    pub source: CyclicModule,
    pub target: CyclicModule,
    /// Image of the k-th canonical generator of the source.
    pub images: Vec<Elem>,
}

impl ModuleHom {
    /// Checks `I_k·images[k] = 0` for every summand.
    pub fn new(source: &CyclicModule, target: &CyclicModule, images: Vec<Elem>) -> Result<ModuleHom> {
        if images.len() != source.rank() {
            return Err(Error::InvalidArgument("one image per generator expected".into()));
        }
        for (i, &m) in source.summands().iter().zip(&images) {
            let r = source.ring();
            if r.greedy_gens(i).iter().any(|&c| target.smul(c, m) != Elem::ZERO) {
                return Err(Error::InvalidArgument(format!(
                    "{} is not killed by {}",
                    target.fmt_elem(m),
                    r.fmt_ideal(i)
                )));
            }
        }
        Ok(ModuleHom {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn apply(&self, x: Elem) -> Elem {
        let coeffs: Vec<Elem> = (0..self.source.rank())
            .map(|k| self.source.quotients()[k].lift(self.source.component(x, k)))
            .collect();
        self.target.combine(&coeffs, &self.images)
    }

    pub fn is_surjective(&self) -> bool {
        self.target.span(&self.images).count_ones(..) == self.target.size()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size() == self.target.size() && self.is_surjective()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.name(),
            "target": self.target.name(),
            "images": self.images.iter().map(|&m| self.target.literal(m)).collect::<Vec<_>>(),
        })
    }
}

fn require_same_ring(f: &CyclicModule, m: &CyclicModule) -> Result<()> {
    if f.ring().ptr_eq(m.ring()) {
        Ok(())
    } else {
        Err(Error::TypeMismatch("modules over different rings".into()))
    }
}

/// Least number of elements generating `M`, by search over cyclic submodules.
pub fn gen_count(m: &CyclicModule) -> Result<usize> {
    if m.size() == 1 {
        return Ok(0);
    }
    let full = m.size();
    // One representative per nonzero cyclic submodule.
    let mut seen = std::collections::HashSet::new();
    let reps: Vec<Elem> = m
        .elements()
        .skip(1)
        .filter(|&x| seen.insert(m.span(&[x])))
        .collect();
    let cap = m.ring().caps().search;
    for k in 1..=m.rank() {
        let count = binomial(reps.len() as u128, k as u128);
        if count > cap {
            return Err(Error::cap("generator subsets", count, cap));
        }
        if reps
            .iter()
            .copied()
            .combinations(k)
            .any(|gens| m.span(&gens).count_ones(..) == full)
        {
            return Ok(k);
        }
    }
    Err(Error::InvariantViolated("canonical generators fail to span".into()))
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `max_x μ(M / A(x)M)` over pSpec.
pub fn gen_count_local(m: &CyclicModule) -> Result<usize> {
    let spec = m.ring().spectrum()?;
    spec.blocks
        .iter()
        .map(|b| gen_count(&m.reduce_by(&b.pure_ideal)?))
        .try_fold(0, |acc, k| k.map(|k| acc.max(k)))
}

/// Variable layout of the epimorphism and isomorphism systems.
struct Layout {
    n: usize,
    p: usize,
    /// Relations of F: `(summand, generator of I_summand)`.
    f_rel: Vec<(usize, Elem)>,
    /// Relations of M.
    m_rel: Vec<(usize, Elem)>,
    iso: bool,
}

impl Layout {
    fn new(f: &CyclicModule, m: &CyclicModule, iso: bool) -> Layout {
        let rels = |c: &CyclicModule| -> Vec<(usize, Elem)> {
            c.summands()
                .iter()
                .enumerate()
                .flat_map(|(k, i)| c.ring().greedy_gens(i).into_iter().map(move |g| (k, g)))
                .collect()
        };
        Layout {
            n: f.rank(),
            p: m.rank(),
            f_rel: rels(f),
            m_rel: if iso { rels(m) } else { vec![] },
            iso,
        }
    }
    fn x(&self, j: usize, i: usize) -> usize {
        j * self.n + i
    }
    fn y(&self, i: usize) -> usize {
        self.p * self.n + i
    }
    fn z(&self, i: usize, j: usize) -> usize {
        self.p * self.n + self.n + i * self.p + j
    }
    fn w(&self, k: usize, l: usize) -> usize {
        self.p * self.n + self.n + self.n * self.p + k * self.f_rel.len() + l
    }
    fn nvars(&self) -> usize {
        self.w(self.m_rel.len(), 0)
    }
}

/// The system over `S = R ⋉ M` whose solutions are epimorphisms `F → M`:
/// `Σᵢ X_{j,i} Yᵢ = (0, m_j)`, `Yᵢ = Σ_j Z_{i,j} (0, m_j)`, `(c, 0)·Yᵢ = 0`
/// for each relation `c` of the i-th summand of F.
pub fn epi_system(f: &CyclicModule, m: &CyclicModule) -> Result<PolySystem> {
    build_system(f, m, false)
}

/// The epimorphism system plus `Σ_j (d_{k,j},0) X_{j,i} = Σ_l W_{k,l} (c_{l,i},0)`,
/// which forces the kernel of `Yᵢ ↦ ·` to be generated by relations of F.
pub fn iso_system(f: &CyclicModule, m: &CyclicModule) -> Result<PolySystem> {
    build_system(f, m, true)
}

fn build_system(f: &CyclicModule, m: &CyclicModule, iso: bool) -> Result<PolySystem> {
    require_same_ring(f, m)?;
    let alg = Algebra::trivial_extension(m)?;
    let s = &alg.ring;
    let lay = Layout::new(f, m, iso);
    let gens: Vec<Elem> = (0..lay.p).map(|j| s.te_join(Elem::ZERO, m.generator(j))).collect();
    let minus = |a: Elem| s.neg(a);
    use Letter::*;
    let mut polys = vec![];
    for j in 0..lay.p {
        let mut p: Vec<Vec<Letter>> = (0..lay.n).map(|i| vec![Var(lay.x(j, i)), Var(lay.y(i))]).collect();
        p.push(vec![Const(minus(s.one())), Param(j)]);
        polys.push(p);
    }
    for i in 0..lay.n {
        let mut p = vec![vec![Var(lay.y(i))]];
        for j in 0..lay.p {
            p.push(vec![Const(minus(s.one())), Var(lay.z(i, j)), Param(j)]);
        }
        polys.push(p);
    }
    for &(i, c) in &lay.f_rel {
        polys.push(vec![vec![Const(alg.embed(c)), Var(lay.y(i))]]);
    }
    if iso {
        for (k, &(j, d)) in lay.m_rel.iter().enumerate() {
            for i in 0..lay.n {
                let mut p = vec![vec![Const(alg.embed(d)), Var(lay.x(j, i))]];
                for (l, &(il, c)) in lay.f_rel.iter().enumerate() {
                    if il == i {
                        p.push(vec![Const(minus(alg.embed(c))), Var(lay.w(k, l))]);
                    }
                }
                polys.push(p);
            }
        }
    }
    PolySystem::new(alg, gens, polys, lay.nvars())
}

/// Odometer over `q^len` in lexicographic order; least tuple satisfying `pred`.
fn least_tuple(q: &Ring, len: usize, cap: u128, mut pred: impl FnMut(&[Elem]) -> bool) -> Result<Option<Vec<Elem>>> {
    let space = (q.size() as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if space > cap {
        return Err(Error::cap("coefficient search", space, cap));
    }
    let mut t = vec![Elem::ZERO; len];
    loop {
        if pred(&t) {
            return Ok(Some(t));
        }
        let mut k = len;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            t[k].0 += 1;
            if t[k].idx() < q.size() {
                break;
            }
            t[k] = Elem::ZERO;
        }
    }
}

/// Maps an element of M to its class in `M̄ = M/A·M` and back (least lift).
struct Reduction {
    bar: CyclicModule,
}

impl Reduction {
    fn down(&self, m: &CyclicModule, x: Elem) -> Elem {
        let parts: Vec<Elem> = (0..m.rank())
            .map(|k| self.bar.quotients()[k].project(m.quotients()[k].lift(m.component(x, k))))
            .collect();
        self.bar.compose(&parts)
    }
    fn up(&self, m: &CyclicModule, x: Elem) -> Elem {
        let parts: Vec<Elem> = (0..m.rank())
            .map(|k| m.quotients()[k].project(self.bar.quotients()[k].lift(self.bar.component(x, k))))
            .collect();
        m.compose(&parts)
    }
}

/// Local solution of the epi (or iso) system at one block, searched in the
/// reductions `R̄ = R/A(x)` and `M̄`, as an assignment in S.
fn local_solution(
    f: &CyclicModule,
    m: &CyclicModule,
    alg: &Algebra,
    lay: &Layout,
    a: &Ideal,
) -> Result<Option<Vec<Elem>>> {
    let r = f.ring();
    let s = &alg.ring;
    let cap = r.caps().search;
    let rbar = r.quotient(a)?;
    let red = Reduction { bar: m.reduce_by(a)? };
    let mbar = &red.bar;
    if lay.iso && f.reduce_by(a)?.size() != mbar.size() {
        return Ok(None);
    }
    let cands: Vec<Vec<Elem>> = f.summands().iter().map(|i| mbar.killed_by(i)).collect();
    let space = cands.iter().map(|c| c.len() as u128).fold(1u128, |x, y| x.saturating_mul(y));
    if space > cap {
        return Err(Error::cap("local image search", space, cap));
    }
    let full = mbar.size();
    let images = if lay.n == 0 {
        (full == 1).then(Vec::new)
    } else {
        cands
            .into_iter()
            .multi_cartesian_product()
            .find(|t| mbar.span(t).count_ones(..) == full)
    };
    let Some(images) = images else {
        return Ok(None);
    };
    let lift_r = |x: Elem| alg.embed(rbar.lift(x));
    let mut sol = vec![Elem::ZERO; lay.nvars()];
    let mut rows = vec![vec![Elem::ZERO; lay.n]; lay.p];
    for (j, row) in rows.iter_mut().enumerate() {
        let target = red.down(m, m.generator(j));
        let coeffs = least_tuple(&rbar, lay.n, cap, |c| {
            let lifted: Vec<Elem> = c.iter().map(|&x| rbar.lift(x)).collect();
            mbar.combine(&lifted, &images) == target
        })?
        .ok_or_else(|| Error::InvariantViolated("spanning images miss a generator".into()))?;
        for (i, &c) in coeffs.iter().enumerate() {
            sol[lay.x(j, i)] = lift_r(c);
        }
        *row = coeffs;
    }
    for (i, &img) in images.iter().enumerate() {
        sol[lay.y(i)] = s.te_join(Elem::ZERO, red.up(m, img));
        for j in 0..lay.p {
            let coord = mbar.quotients()[j].lift(mbar.component(img, j));
            sol[lay.z(i, j)] = alg.embed(coord);
        }
    }
    for (k, &(j, d)) in lay.m_rel.iter().enumerate() {
        for i in 0..lay.n {
            let v = rbar.mul(rbar.project(d), rows[j][i]);
            let ls: Vec<usize> = (0..lay.f_rel.len()).filter(|&l| lay.f_rel[l].0 == i).collect();
            let w = least_tuple(&rbar, ls.len(), cap, |w| {
                rbar.sum(ls.iter().zip(w).map(|(&l, &x)| rbar.mul(rbar.project(lay.f_rel[l].1), x))) == v
            })?
            .ok_or_else(|| Error::InvariantViolated("relation not in the span of relations".into()))?;
            for (&l, &x) in ls.iter().zip(&w) {
                sol[lay.w(k, l)] = lift_r(x);
            }
        }
    }
    Ok(Some(sol))
}

fn glued_hom(f: &CyclicModule, m: &CyclicModule, iso: bool) -> Result<Option<ModuleHom>> {
    let sys = build_system(f, m, iso)?;
    let lay = Layout::new(f, m, iso);
    let gluer = Gluer::new(&sys.algebra)?;
    let spec = f.ring().spectrum()?;
    let mut locals = vec![];
    for (b, block) in spec.blocks.iter().enumerate() {
        match local_solution(f, m, &sys.algebra, &lay, &block.pure_ideal)? {
            Some(sol) => locals.push((b, sol)),
            None => return Ok(None),
        }
    }
    let d = gluer.glue(&sys, &locals)?;
    let s = &sys.algebra.ring;
    let images = (0..lay.n).map(|i| s.te_split(d[lay.y(i)]).1).collect();
    let hom = ModuleHom::new(f, m, images)?;
    let ok = if iso { hom.is_bijective() } else { hom.is_surjective() };
    if !ok {
        return Err(Error::InvariantViolated("glued map has the wrong type".into()));
    }
    Ok(Some(hom))
}

/// An epimorphism `F → M` obtained by gluing local ones, if one exists.
pub fn epi_from(f: &CyclicModule, m: &CyclicModule) -> Result<Option<ModuleHom>> {
    require_same_ring(f, m)?;
    glued_hom(f, m, false)
}

/// Whether `F ≅ M`, decided by gluing local isomorphisms.
pub fn iso_test(f: &CyclicModule, m: &CyclicModule) -> Result<bool> {
    require_same_ring(f, m)?;
    if f.size() != m.size() {
        return Ok(false);
    }
    Ok(glued_hom(f, m, true)?.is_some())
}

fn brute_force(f: &CyclicModule, m: &CyclicModule, bijective: bool) -> Result<Option<ModuleHom>> {
    require_same_ring(f, m)?;
    if bijective && f.size() != m.size() {
        return Ok(None);
    }
    let cands: Vec<Vec<Elem>> = f.summands().iter().map(|i| m.killed_by(i)).collect();
    let space = cands.iter().map(|c| c.len() as u128).fold(1u128, |x, y| x.saturating_mul(y));
    let cap = f.ring().caps().search;
    if space > cap {
        return Err(Error::cap("homomorphism search", space, cap));
    }
    if f.rank() == 0 {
        return Ok((m.size() == 1).then(|| ModuleHom::new(f, m, vec![])).transpose()?);
    }
    let full = m.size();
    cands
        .into_iter()
        .multi_cartesian_product()
        .find(|t| m.span(t).count_ones(..) == full)
        .map(|t| ModuleHom::new(f, m, t))
        .transpose()
}

/// Least epimorphism `F → M` by exhaustive search over images of generators.
pub fn brute_force_epi(f: &CyclicModule, m: &CyclicModule) -> Result<Option<ModuleHom>> {
    brute_force(f, m, false)
}

pub fn brute_force_iso(f: &CyclicModule, m: &CyclicModule) -> Result<Option<ModuleHom>> {
    brute_force(f, m, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(r: &Ring, summands: &[&[u32]]) -> CyclicModule {
        let ideals = summands
            .iter()
            .map(|g| r.ideal(&g.iter().map(|&x| Elem(x)).collect::<Vec<_>>()))
            .collect();
        CyclicModule::new(r, ideals).unwrap()
    }

    #[test]
    fn quotient_map_is_found() {
        let r = Ring::zmod(4).unwrap();
        let f = module(&r, &[&[]]);
        let m = module(&r, &[&[2]]);
        let hom = epi_from(&f, &m).unwrap().unwrap();
        assert_eq!(hom.images, vec![m.generator(0)]);
        assert!(epi_from(&m, &f).unwrap().is_none());
    }

    #[test]
    fn crt_isomorphism() {
        let r = Ring::zmod(6).unwrap();
        let f = module(&r, &[&[2], &[3]]);
        let m = module(&r, &[&[]]);
        assert!(iso_test(&f, &m).unwrap());
        assert!(brute_force_iso(&f, &m).unwrap().is_some());
        // a sum of two copies of Z/2 is not cyclic over Z/4
        let r4 = Ring::zmod(4).unwrap();
        let two = module(&r4, &[&[2], &[2]]);
        assert!(!iso_test(&two, &module(&r4, &[&[]])).unwrap());
        assert!(!iso_test(&module(&r4, &[&[2]]), &module(&r4, &[&[]])).unwrap());
    }

    #[test]
    fn generator_counts() {
        let r = Ring::zmod(6).unwrap();
        assert_eq!(gen_count(&module(&r, &[&[2], &[3]])).unwrap(), 1);
        let r4 = Ring::zmod(4).unwrap();
        let two = module(&r4, &[&[2], &[2]]);
        assert_eq!(gen_count(&two).unwrap(), 2);
        assert_eq!(gen_count_local(&two).unwrap(), 2);
        assert_eq!(gen_count(&module(&r4, &[&[1]])).unwrap(), 0);
    }

    #[test]
    fn systems_accept_glued_solutions() {
        let r = Ring::zmod(12).unwrap();
        let f = module(&r, &[&[], &[]]);
        let m = module(&r, &[&[2], &[3]]);
        assert_eq!(epi_from(&f, &m).unwrap().is_some(), brute_force_epi(&f, &m).unwrap().is_some());
        let sys = iso_system(&m, &module(&r, &[&[6]])).unwrap();
        assert!(sys.nvars > 0);
        assert!(iso_test(&m, &module(&r, &[&[6]])).unwrap());
    }
}
