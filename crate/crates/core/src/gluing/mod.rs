//! Gluing solutions of polynomial systems along pSpec.
//!
//! A system over an R-algebra S that is solvable modulo `A(x)S` at every block
//! `x` is solvable in S: with `e_x = 1 − f_x`, where `f_x` is the idempotent
//! generating `A(x)`, each `e_x` kills the local residuals, and
//! `d = Σ e_x b_x` over an orthogonal refinement of the `e_x` is exact.

mod modules;

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{CyclicModule, Elem, Ideal, Ring};

pub use modules::{
    brute_force_epi, brute_force_iso, epi_from, epi_system, gen_count, gen_count_local, iso_system, iso_test,
    ModuleHom,
};

/// An R-algebra `S` with its structure map `R → S`.
#[derive(Debug, Clone)]
pub struct Algebra {
    pub base: Ring,
    pub ring: Ring,
    embed: Arc<Vec<Elem>>,
}

impl Algebra {
    pub fn itself(r: &Ring) -> Algebra {
        Algebra {
            base: r.clone(),
            ring: r.clone(),
            embed: Arc::new(r.elements().collect()),
        }
    }

    /// `S = R ⋉ M` with `r ↦ (r, 0)`.
    pub fn trivial_extension(m: &CyclicModule) -> Result<Algebra> {
        let s = Ring::trivial_extension(m.clone())?;
        let embed = m.ring().elements().map(|r| s.te_join(r, Elem::ZERO)).collect();
        Ok(Algebra {
            base: m.ring().clone(),
            ring: s,
            embed: Arc::new(embed),
        })
    }

    #[inline]
    pub fn embed(&self, r: Elem) -> Elem {
        self.embed[r.idx()]
    }

    /// The extension `I·S` of an ideal of R.
    pub fn extend(&self, i: &Ideal) -> Ideal {
        let gens: Vec<Elem> = self.base.greedy_gens(i).into_iter().map(|g| self.embed(g)).collect();
        self.ring.ideal(&gens)
    }
}

/// One factor of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    /// A literal element of S.
    Const(Elem),
    /// The i-th declared constant `aᵢ`.
    Param(usize),
    /// The i-th unknown `yᵢ`.
    Var(usize),
}

/// Polynomials over S: each polynomial is a sum of words, each word a product
/// of letters evaluated left to right.
#[derive(Debug, Clone)]
pub struct PolySystem {
    pub algebra: Algebra,
    pub constants: Vec<Elem>,
    pub polys: Vec<Vec<Vec<Letter>>>,
    pub nvars: usize,
}

impl PolySystem {
    pub fn new(algebra: Algebra, constants: Vec<Elem>, polys: Vec<Vec<Vec<Letter>>>, nvars: usize) -> Result<Self> {
        for word in polys.iter().flatten() {
            for l in word {
                match *l {
                    Letter::Var(i) if i >= nvars => {
                        return Err(Error::InvalidArgument(format!("undeclared variable y{i}")))
                    }
                    Letter::Param(i) if i >= constants.len() => {
                        return Err(Error::InvalidArgument(format!("undeclared constant a{i}")))
                    }
                    Letter::Const(c) if c.idx() >= algebra.ring.size() => {
                        return Err(Error::InvalidArgument("constant outside the algebra".into()))
                    }
                    _ => {}
                }
            }
        }
        Ok(PolySystem {
            algebra,
            constants,
            polys,
            nvars,
        })
    }

    /// `{"constants":[…],"polys":[[word,…],…]}`, letters `["c",lit]`, `["a",i]`, `["v",i]`.
    pub fn from_json(algebra: Algebra, v: &Value) -> Result<Self> {
        let s = &algebra.ring;
        let bad = |what: &str| Error::Parse(format!("system: {what}"));
        let constants = match v.get("constants") {
            Some(c) => s.parse_all(c.as_array().ok_or_else(|| bad("constants must be an array"))?)?,
            None => vec![],
        };
        let mut nvars = v.get("vars").and_then(Value::as_u64).unwrap_or(0) as usize;
        let mut polys = vec![];
        for p in v.get("polys").and_then(Value::as_array).ok_or_else(|| bad("missing polys"))? {
            let mut words = vec![];
            for w in p.as_array().ok_or_else(|| bad("poly must be an array of words"))? {
                let mut word = vec![];
                for l in w.as_array().ok_or_else(|| bad("word must be an array of letters"))? {
                    let pair = l.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("letter must be a pair"))?;
                    let idx = || pair[1].as_u64().map(|i| i as usize).ok_or_else(|| bad("index expected"));
                    word.push(match pair[0].as_str() {
                        Some("c") => Letter::Const(s.parse(&pair[1])?),
                        Some("a") => Letter::Param(idx()?),
                        Some("v") => {
                            let i = idx()?;
                            nvars = nvars.max(i + 1);
                            Letter::Var(i)
                        }
                        _ => return Err(bad("letter tag must be c, a or v")),
                    });
                }
                words.push(word);
            }
            polys.push(words);
        }
        PolySystem::new(algebra, constants, polys, nvars)
    }

    pub fn to_json(&self) -> Value {
        let s = &self.algebra.ring;
        let letter = |l: &Letter| match *l {
            Letter::Const(c) => json!(["c", s.literal(c)]),
            Letter::Param(i) => json!(["a", i]),
            Letter::Var(i) => json!(["v", i]),
        };
        json!({
            "constants": self.constants.iter().map(|&c| s.literal(c)).collect::<Vec<_>>(),
            "polys": self.polys.iter().map(|p| p.iter().map(|w| w.iter().map(letter).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "vars": self.nvars,
        })
    }

    /// Values of all polynomials at an assignment, in S.
    pub fn eval(&self, assignment: &[Elem]) -> Vec<Elem> {
        let s = &self.algebra.ring;
        self.polys
            .iter()
            .map(|p| {
                s.sum(p.iter().map(|w| {
                    w.iter().fold(s.one(), |acc, l| {
                        let v = match *l {
                            Letter::Const(c) => c,
                            Letter::Param(i) => self.constants[i],
                            Letter::Var(i) => assignment[i],
                        };
                        s.mul(acc, v)
                    })
                }))
            })
            .collect()
    }

    pub fn is_solution(&self, assignment: &[Elem]) -> bool {
        self.eval(assignment).iter().all(|&v| v == Elem::ZERO)
    }
}

/// Per-block data: the quotient `S/A(x)S` and the separating idempotent `e_x`.
#[derive(Debug, Clone)]
pub struct BlockContext {
    pub block: usize,
    pub quotient: Ring,
    /// `e_x` in R.
    pub e: Elem,
}

/// Precomputed gluing data for one algebra.
#[derive(Debug, Clone)]
pub struct Gluer {
    pub algebra: Algebra,
    pub blocks: Vec<BlockContext>,
}

/// A polynomial compiled to a quotient: terms of (coefficient, variables).
struct Compiled {
    terms: Vec<(Elem, Vec<usize>)>,
    max_var: Option<usize>,
}

impl Gluer {
    pub fn new(algebra: &Algebra) -> Result<Gluer> {
        let r = &algebra.base;
        let spec = r.spectrum()?;
        let blocks = spec
            .blocks
            .iter()
            .enumerate()
            .map(|(b, block)| {
                let quotient = algebra.ring.quotient(&algebra.extend(&block.pure_ideal))?;
                Ok(BlockContext {
                    block: b,
                    quotient,
                    e: r.sub(r.one(), block.idempotent),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Gluer {
            algebra: algebra.clone(),
            blocks,
        })
    }

    fn compile(&self, sys: &PolySystem, q: &Ring) -> Vec<Compiled> {
        sys.polys
            .iter()
            .map(|p| {
                let terms: Vec<(Elem, Vec<usize>)> = p
                    .iter()
                    .map(|w| {
                        let mut coef = q.one();
                        let mut vars = vec![];
                        for l in w {
                            match *l {
                                Letter::Const(c) => coef = q.mul(coef, q.project(c)),
                                Letter::Param(i) => coef = q.mul(coef, q.project(sys.constants[i])),
                                Letter::Var(i) => vars.push(i),
                            }
                        }
                        (coef, vars)
                    })
                    .collect();
                let max_var = terms.iter().flat_map(|(_, v)| v.iter().copied()).max();
                Compiled { terms, max_var }
            })
            .collect()
    }

    /// Least assignment in S with every `fᵢ ∈ A(x)S`, searched in `S/A(x)S`.
    ///
    /// Classes are ordered by least representative, so the lexicographically
    /// least solution in the quotient lifts to the least solution in S.
    pub fn solve_local(&self, sys: &PolySystem, block: usize) -> Result<Option<Vec<Elem>>> {
        let ctx = self
            .blocks
            .get(block)
            .ok_or_else(|| Error::InvalidArgument(format!("no block {block}")))?;
        let q = &ctx.quotient;
        let space = (q.size() as u128).checked_pow(sys.nvars as u32).unwrap_or(u128::MAX);
        let cap = self.algebra.ring.caps().search;
        if space > cap {
            return Err(Error::cap("local search space", space, cap));
        }
        let compiled = self.compile(sys, q);
        let eval = |c: &Compiled, a: &[Elem]| {
            q.sum(c.terms.iter().map(|(coef, vars)| vars.iter().fold(*coef, |acc, &v| q.mul(acc, a[v]))))
        };
        if compiled.iter().any(|c| c.max_var.is_none() && eval(c, &[]) != Elem::ZERO) {
            return Ok(None);
        }
        let mut by_last: Vec<Vec<&Compiled>> = vec![vec![]; sys.nvars];
        for c in &compiled {
            if let Some(v) = c.max_var {
                by_last[v].push(c);
            }
        }
        let n = sys.nvars;
        let mut a = vec![Elem::ZERO; n];
        if n == 0 {
            return Ok(Some(vec![]));
        }
        // Iterative depth-first search in lexicographic order.
        let size = q.size() as u32;
        let mut depth = 0usize;
        a[0] = Elem(0);
        loop {
            let ok = by_last[depth].iter().all(|c| eval(c, &a) == Elem::ZERO);
            if ok && depth + 1 == n {
                return Ok(Some(a.iter().map(|&x| q.lift(x)).collect()));
            }
            if ok {
                depth += 1;
                a[depth] = Elem(0);
                continue;
            }
            loop {
                a[depth].0 += 1;
                if a[depth].0 < size {
                    break;
                }
                if depth == 0 {
                    return Ok(None);
                }
                depth -= 1;
            }
        }
    }

    /// Glues one local solution per block into an exact global solution.
    pub fn glue(&self, sys: &PolySystem, locals: &[(usize, Vec<Elem>)]) -> Result<Vec<Elem>> {
        let r = &self.algebra.base;
        let s = &self.algebra.ring;
        let spec = r.spectrum()?;
        let mut ordered: Vec<Option<&Vec<Elem>>> = vec![None; self.blocks.len()];
        for (b, sol) in locals {
            let slot = ordered
                .get_mut(*b)
                .ok_or_else(|| Error::InvalidArgument(format!("no block {b}")))?;
            if sol.len() != sys.nvars {
                return Err(Error::InvalidArgument(format!("local solution at block {b} has wrong length")));
            }
            *slot = Some(sol);
        }
        let mut es = Vec::with_capacity(self.blocks.len());
        for (ctx, sol) in self.blocks.iter().zip(&ordered) {
            let sol = sol.ok_or_else(|| Error::InvalidArgument(format!("block {} has no local solution", ctx.block)))?;
            let in_d = spec.blocks[ctx.block]
                .primes
                .iter()
                .all(|&i| !spec.points[i].prime.contains(ctx.e));
            let kills = sys.eval(sol).iter().all(|&v| s.mul(self.algebra.embed(ctx.e), v) == Elem::ZERO);
            if !in_d || !kills {
                return Err(Error::GluingFailed { block: ctx.block });
            }
            es.push(ctx.e);
        }
        let cover = orthogonalize_cover(r, &es)?;
        let d: Vec<Elem> = (0..sys.nvars)
            .map(|l| {
                s.sum(
                    cover
                        .iter()
                        .zip(&ordered)
                        .map(|(&e, sol)| s.mul(self.algebra.embed(e), sol.unwrap()[l])),
                )
            })
            .collect();
        if !sys.is_solution(&d) {
            return Err(Error::InvariantViolated("glued assignment is not an exact solution".into()));
        }
        Ok(d)
    }

    /// Local solutions at every block, glued; `None` if some block has none.
    pub fn solve(&self, sys: &PolySystem) -> Result<Option<Vec<Elem>>> {
        let mut locals = Vec::with_capacity(self.blocks.len());
        for ctx in &self.blocks {
            match self.solve_local(sys, ctx.block)? {
                Some(sol) => locals.push((ctx.block, sol)),
                None => return Ok(None),
            }
        }
        self.glue(sys, &locals).map(Some)
    }
}

pub fn solve_local(sys: &PolySystem, block: usize) -> Result<Option<Vec<Elem>>> {
    Gluer::new(&sys.algebra)?.solve_local(sys, block)
}

pub fn glue(sys: &PolySystem, locals: &[(usize, Vec<Elem>)]) -> Result<Vec<Elem>> {
    Gluer::new(&sys.algebra)?.glue(sys, locals)
}

/// `e′ⱼ = eⱼ·Π_{i<j}(1 − eᵢ)`: orthogonal, summing to 1, with `e′ⱼ ≤ eⱼ`.
pub fn orthogonalize_cover(r: &Ring, es: &[Elem]) -> Result<Vec<Elem>> {
    if let Some(&e) = es.iter().find(|&&e| !r.is_idempotent(e)) {
        return Err(Error::InvalidArgument(format!("{} is not idempotent", r.fmt_elem(e))));
    }
    if !r.ideal(es).is_whole() {
        return Err(Error::NotACover);
    }
    let mut rest = r.one();
    let out: Vec<Elem> = es
        .iter()
        .map(|&e| {
            let refined = r.mul(e, rest);
            rest = r.mul(rest, r.sub(r.one(), e));
            refined
        })
        .collect();
    debug_assert_eq!(r.sum(out.iter().copied()), r.one());
    Ok(out)
}

/// The Hermite system `a = d·a′`, `b = d·b′`, `s·a′ + t·b′ = 1` over R,
/// in variables `(d, a′, b′, s, t)`.
pub fn hermite_system(r: &Ring, a: Elem, b: Elem) -> PolySystem {
    use Letter::*;
    let minus_one = r.neg(r.one());
    let polys = vec![
        vec![vec![Param(0)], vec![Const(minus_one), Var(0), Var(1)]],
        vec![vec![Param(1)], vec![Const(minus_one), Var(0), Var(2)]],
        vec![vec![Var(3), Var(1)], vec![Var(4), Var(2)], vec![Const(minus_one)]],
    ];
    PolySystem::new(Algebra::itself(r), vec![a, b], polys, 5).expect("well-formed system")
}

/// The triple system `aSX + bTX + cTY = 1` in variables `(S, T, X, Y)`.
pub fn triple_system(r: &Ring, a: Elem, b: Elem, c: Elem) -> PolySystem {
    use Letter::*;
    let polys = vec![vec![
        vec![Param(0), Var(0), Var(2)],
        vec![Param(1), Var(1), Var(2)],
        vec![Param(2), Var(1), Var(3)],
        vec![Const(r.neg(r.one()))],
    ]];
    PolySystem::new(Algebra::itself(r), vec![a, b, c], polys, 4).expect("well-formed system")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> Ring {
        Ring::zmod(n).unwrap()
    }

    fn idempotent_system(r: &Ring, extra: Option<Elem>) -> PolySystem {
        use Letter::*;
        let m1 = r.neg(r.one());
        let mut polys = vec![vec![vec![Var(0), Var(0)], vec![Const(m1), Var(0)]]];
        if let Some(target) = extra {
            polys.push(vec![vec![Var(0)], vec![Const(r.neg(target))]]);
        }
        PolySystem::new(Algebra::itself(r), vec![], polys, 1).unwrap()
    }

    #[test]
    fn local_solutions_on_zmod6() {
        let r = z(6);
        let g = Gluer::new(&Algebra::itself(&r)).unwrap();
        let sys = idempotent_system(&r, Some(r.one()));
        assert_eq!(g.solve_local(&sys, 0).unwrap(), Some(vec![Elem(1)]));
        let sys0 = idempotent_system(&r, None);
        assert_eq!(g.solve_local(&sys0, 1).unwrap(), Some(vec![Elem(0)]));
    }

    #[test]
    fn unsatisfiable_constant() {
        use Letter::*;
        let r = z(4);
        let sys = PolySystem::new(
            Algebra::itself(&r),
            vec![],
            vec![vec![vec![Const(Elem(0)), Var(0)], vec![Const(r.neg(r.one()))]]],
            1,
        )
        .unwrap();
        assert_eq!(solve_local(&sys, 0).unwrap(), None);
    }

    #[test]
    fn glue_idempotent_from_blocks() {
        let r = z(6);
        let sys = idempotent_system(&r, None);
        let d = glue(&sys, &[(0, vec![Elem(1)]), (1, vec![Elem(0)])]).unwrap();
        assert_eq!(d, vec![Elem(3)]);
        // a wrong local solution cannot be glued
        let bad = glue(&idempotent_system(&r, Some(Elem(1))), &[(0, vec![Elem(2)]), (1, vec![Elem(1)])]);
        assert_eq!(bad, Err(Error::GluingFailed { block: 0 }));
    }

    #[test]
    fn single_block_returns_local() {
        let r = z(8);
        let sys = hermite_system(&r, Elem(2), Elem(4));
        let g = Gluer::new(&Algebra::itself(&r)).unwrap();
        let local = g.solve_local(&sys, 0).unwrap().unwrap();
        assert_eq!(g.glue(&sys, &[(0, local.clone())]).unwrap(), local);
    }

    #[test]
    fn hermite_glue_matches_known_witness() {
        let r = z(6);
        let sys = hermite_system(&r, Elem(2), Elem(3));
        let d = Gluer::new(&Algebra::itself(&r)).unwrap().solve(&sys).unwrap().unwrap();
        assert_eq!(&d[..3], &[Elem(1), Elem(2), Elem(3)]);
    }

    #[test]
    fn orthogonalize_examples() {
        let r = z(6);
        assert_eq!(orthogonalize_cover(&r, &[Elem(3), Elem(4)]).unwrap(), vec![Elem(3), Elem(4)]);
        assert_eq!(orthogonalize_cover(&r, &[Elem(1), Elem(3)]).unwrap(), vec![Elem(1), Elem(0)]);
        assert_eq!(orthogonalize_cover(&r, &[Elem(3)]), Err(Error::NotACover));
        let f = Ring::product(vec![z(2), z(3), z(5)]).unwrap();
        let coords: Vec<Elem> = (0..3)
            .map(|k| {
                let mut parts = vec![Elem::ZERO; 3];
                parts[k] = Elem(1);
                f.join(&parts)
            })
            .collect();
        let doubled = [coords[0], coords[0], coords[1], coords[2], coords[2]];
        let out = orthogonalize_cover(&f, &doubled).unwrap();
        assert_eq!(out, vec![coords[0], Elem::ZERO, coords[1], coords[2], Elem::ZERO]);
    }

    #[test]
    fn system_json_round_trip() {
        let r = z(6);
        let sys = hermite_system(&r, Elem(2), Elem(3));
        let back = PolySystem::from_json(Algebra::itself(&r), &sys.to_json()).unwrap();
        assert_eq!(back.polys, sys.polys);
        assert_eq!(back.constants, sys.constants);
    }
}
