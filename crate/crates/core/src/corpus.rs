//! The default sweep corpus: small rings covering every constructor, and the
//! modules over them used by the generator-count sweep.

use itertools::Itertools;
use serde_json::json;

use crate::error::Result;
use crate::ring::{CyclicModule, Ideal, ModuleDescriptor, Ring, RingDescriptor};

#[derive(Debug, Clone)]
pub struct CorpusRing {
    pub descriptor: RingDescriptor,
    pub ring: Ring,
}

fn zmod(n: u32) -> RingDescriptor {
    RingDescriptor::Zmod { n }
}

fn nil(p: u32, vars: &[&str], d: u32, extra: &[&[u32]]) -> RingDescriptor {
    RingDescriptor::NilpotentAlgebra {
        p,
        vars: vars.iter().map(|v| v.to_string()).collect(),
        truncation_degree: d,
        extra_relations: extra.iter().map(|m| m.to_vec()).collect(),
    }
}

fn product(factors: &[RingDescriptor]) -> RingDescriptor {
    RingDescriptor::Product {
        factors: factors.to_vec(),
    }
}

/// `ring ⋉ (⊕ ring/(g))` with one generator list per summand.
fn trivial(n: u32, summands: &[&[u32]]) -> RingDescriptor {
    RingDescriptor::TrivialExtension {
        ring: Box::new(zmod(n)),
        module: ModuleDescriptor {
            cyclic_summands: summands
                .iter()
                .map(|gens| gens.iter().map(|g| json!(g)).collect())
                .collect(),
        },
    }
}

/// Descriptors in sweep order: residue rings, products of chain rings,
/// nilpotent algebras, trivial extensions.
pub fn default_descriptors() -> Vec<RingDescriptor> {
    let mut out: Vec<RingDescriptor> = (2..=30).map(zmod).collect();

    let chains = [zmod(2), zmod(3), zmod(4), nil(2, &["x"], 2, &[]), zmod(9), nil(2, &["x"], 3, &[])];
    for pair in chains.iter().combinations_with_replacement(2) {
        out.push(product(&[pair[0].clone(), pair[1].clone()]));
    }
    for triple in [
        [zmod(2), zmod(2), zmod(2)],
        [zmod(2), zmod(2), zmod(4)],
        [zmod(2), zmod(3), zmod(4)],
        [zmod(3), zmod(4), nil(2, &["x"], 2, &[])],
        [zmod(2), zmod(4), zmod(9)],
        [zmod(2), zmod(5), zmod(7)],
    ] {
        out.push(product(&triple));
    }

    out.extend([
        nil(2, &["x"], 3, &[]),
        nil(2, &["x"], 4, &[]),
        nil(3, &["x"], 2, &[]),
        nil(2, &["x", "y"], 2, &[]),
        nil(2, &["x", "y"], 3, &[&[2, 0], &[0, 2]]),
        nil(2, &["x", "y"], 3, &[&[2, 0], &[1, 1]]),
        nil(2, &["x", "y", "z"], 2, &[]),
    ]);

    out.extend([
        trivial(4, &[&[2]]),
        trivial(4, &[&[]]),
        trivial(4, &[&[2], &[2]]),
        trivial(4, &[&[], &[2]]),
        trivial(6, &[&[2]]),
        trivial(6, &[&[3]]),
        trivial(6, &[&[]]),
        trivial(6, &[&[2], &[3]]),
    ]);
    out
}

pub fn default_corpus() -> Result<Vec<CorpusRing>> {
    default_descriptors()
        .into_iter()
        .map(|descriptor| {
            let ring = descriptor.build()?;
            Ok(CorpusRing { descriptor, ring })
        })
        .collect()
}

/// Every `R/I₁ ⊕ … ⊕ R/I_k` with `1 ≤ k ≤ max_summands`, summands ordered by
/// ideal index (so each isomorphism type of summand list appears once), of
/// size at most `max_size`. The zero summand `R/R` is skipped.
pub fn modules_over(r: &Ring, max_summands: usize, max_size: usize) -> Result<Vec<CyclicModule>> {
    let ideals: Vec<Ideal> = r.ideals()?.iter().filter(|i| !i.is_whole()).cloned().collect();
    let mut out = Vec::new();
    for k in 1..=max_summands {
        for pick in (0..ideals.len()).combinations_with_replacement(k) {
            let size: usize = pick.iter().map(|&i| r.size() / ideals[i].len()).product();
            if size > max_size {
                continue;
            }
            out.push(CyclicModule::new(r, pick.iter().map(|&i| ideals[i].clone()).collect())?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_builds_and_respects_size_bounds() {
        let c = default_corpus().unwrap();
        assert!(c.len() >= 60);
        for r in &c {
            assert!(r.ring.size() <= 512, "{}", r.ring.name());
        }
        let nilpotent = c
            .iter()
            .filter(|r| matches!(r.descriptor, RingDescriptor::NilpotentAlgebra { .. }))
            .all(|r| r.ring.size() <= 16);
        assert!(nilpotent);
    }

    #[test]
    fn modules_over_z4() {
        let r = Ring::zmod(4).unwrap();
        let ms = modules_over(&r, 2, 64).unwrap();
        // Summand types Z/4, Z/2: 2 singles and 3 pairs.
        assert_eq!(ms.len(), 5);
    }
}
