use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Caps, CyclicModule, Ring};
use crate::error::{Error, Result};

/// Constructor tree naming a finite ring; the JSON form of ring files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingDescriptor {
    Zmod {
        n: u32,
    },
    Product {
        factors: Vec<RingDescriptor>,
    },
    /// `(Z/p)[vars]` modulo all monomials of degree ≥ `truncation_degree`
    /// and the extra monomials, given as exponent vectors.
    NilpotentAlgebra {
        p: u32,
        vars: Vec<String>,
        truncation_degree: u32,
        #[serde(default)]
        extra_relations: Vec<Vec<u32>>,
    },
    TrivialExtension {
        ring: Box<RingDescriptor>,
        module: ModuleDescriptor,
    },
}

/// `R/I₁ ⊕ … ⊕ R/I_k`, each ideal given by generator literals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDescriptor {
    pub cyclic_summands: Vec<Vec<Value>>,
}

impl RingDescriptor {
    pub fn build(&self) -> Result<Ring> {
        self.build_with(Caps::default())
    }

    pub fn build_with(&self, caps: Caps) -> Result<Ring> {
        match self {
            RingDescriptor::Zmod { n } => Ring::zmod_with(*n, caps),
            RingDescriptor::Product { factors } => {
                let rings = factors.iter().map(|f| f.build_with(caps)).collect::<Result<_>>()?;
                Ring::product_with(rings, caps)
            }
            RingDescriptor::NilpotentAlgebra {
                p,
                vars,
                truncation_degree,
                extra_relations,
            } => Ring::nilpotent_with(*p, vars.clone(), *truncation_degree, extra_relations.clone(), caps),
            RingDescriptor::TrivialExtension { ring, module } => {
                let base = ring.build_with(caps)?;
                Ring::trivial_extension(module.build(&base)?)
            }
        }
    }

    pub fn from_json(text: &str) -> Result<RingDescriptor> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }
}

impl ModuleDescriptor {
    pub fn build(&self, ring: &Ring) -> Result<CyclicModule> {
        let ideals = self
            .cyclic_summands
            .iter()
            .map(|gens| Ok(ring.ideal(&ring.parse_all(gens)?)))
            .collect::<Result<_>>()?;
        CyclicModule::new(ring, ideals)
    }

    pub fn of(ring: &Ring, module: &CyclicModule) -> ModuleDescriptor {
        ModuleDescriptor {
            cyclic_summands: module
                .summands()
                .iter()
                .map(|i| i.gens().iter().map(|g| ring.literal(*g)).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{"kind":"trivial_extension","ring":{"kind":"zmod","n":4},
                       "module":{"cyclic_summands":[[2],[]]}}"#;
        let d = RingDescriptor::from_json(text).unwrap();
        let r = d.build().unwrap();
        assert_eq!(r.size(), 4 * 2 * 4);
        assert_eq!(RingDescriptor::from_json(&d.to_json()).unwrap(), d);

        let nil = r#"{"kind":"nilpotent_algebra","p":2,"vars":["x","y"],"truncation_degree":2}"#;
        assert_eq!(RingDescriptor::from_json(nil).unwrap().build().unwrap().size(), 8);
    }

    #[test]
    fn bad_descriptors_are_rejected() {
        assert!(RingDescriptor::from_json(r#"{"kind":"zmod","n":1}"#).unwrap().build().is_err());
        assert!(RingDescriptor::from_json(r#"{"kind":"field","n":2}"#).is_err());
        assert!(RingDescriptor::from_json(r#"{"kind":"product","factors":[]}"#).unwrap().build().is_err());
        let np = r#"{"kind":"nilpotent_algebra","p":4,"vars":["x"],"truncation_degree":2}"#;
        assert!(RingDescriptor::from_json(np).unwrap().build().is_err());
    }
}
