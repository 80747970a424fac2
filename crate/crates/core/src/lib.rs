//! Exact decision procedures for finite commutative rings: spectra and the
//! comparability quotient pSpec, pure ideals, idempotent gluing of polynomial
//! systems, Hermite and elementary-divisor witnesses, Smith normal form,
//! self-injectivity tests, and symbolic models of a few infinite rings built
//! from eventually constant sequences.

pub mod corpus;
pub mod error;
pub mod fpinj;
pub mod gluing;
pub mod par;
pub mod properties;
pub mod report;
pub mod seq;
pub mod ring;
pub mod spectrum;
pub mod suite;

pub use error::{Error, Result};
pub use report::PropertyReport;
pub use ring::{Caps, CyclicModule, Elem, Ideal, ModuleDescriptor, Ring, RingDescriptor, RingHom};
