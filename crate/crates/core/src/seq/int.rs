//! `R = {r ∈ Π Z/m_n : r_n = d + m_n Z for large n}` with tail values `d ∈ Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::{SeqModel, Stalk};
use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Moduli {
    /// `m_n = pattern[n mod len]`.
    Periodic(Vec<BigInt>),
    /// `m_n = base^(n+offset)`, strictly growing.
    Powers { base: BigInt, offset: u32 },
}

impl Moduli {
    pub fn periodic(pattern: &[u64]) -> Result<Moduli> {
        if pattern.is_empty() || pattern.iter().any(|&m| m < 2) {
            return Err(Error::InvalidDescriptor("moduli must be at least 2".into()));
        }
        Ok(Moduli::Periodic(pattern.iter().map(|&m| BigInt::from(m)).collect()))
    }

    pub fn powers(base: u64, offset: u32) -> Result<Moduli> {
        if base < 2 || offset == 0 {
            return Err(Error::InvalidDescriptor("powers need base ≥ 2 and offset ≥ 1".into()));
        }
        Ok(Moduli::Powers {
            base: BigInt::from(base),
            offset,
        })
    }
}

#[derive(Debug, Clone)]
pub struct IntSeq {
    moduli: Moduli,
    /// For periodic moduli, tails are canonical modulo this.
    lcm: Option<BigInt>,
}

impl IntSeq {
    pub fn new(moduli: Moduli) -> IntSeq {
        let lcm = match &moduli {
            Moduli::Periodic(ms) => Some(ms.iter().fold(BigInt::one(), |l, m| l.lcm(m))),
            Moduli::Powers { .. } => None,
        };
        IntSeq { moduli, lcm }
    }

    pub fn moduli(&self) -> &Moduli {
        &self.moduli
    }

    pub fn modulus(&self, n: usize) -> BigInt {
        match &self.moduli {
            Moduli::Periodic(ms) => ms[n % ms.len()].clone(),
            Moduli::Powers { base, offset } => num_traits::pow(base.clone(), n + *offset as usize),
        }
    }

    fn canon_tail(&self, t: BigInt) -> BigInt {
        match &self.lcm {
            Some(l) => t.mod_floor(l),
            None => t,
        }
    }

    /// Residues of `R_n`, for exhaustive searches over small coordinates.
    pub fn residues(&self, n: usize) -> Vec<BigInt> {
        let m = self.modulus(n).to_u64().unwrap_or(u64::MAX);
        (0..m).map(BigInt::from).collect()
    }
}

fn int_literal(a: &BigInt) -> Value {
    match a.to_i64() {
        Some(k) => json!(k),
        None => json!(a.to_string()),
    }
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("not an integer: {s}"))),
        _ => Err(Error::Parse(format!("not an integer: {v}"))),
    }
}

impl SeqModel for IntSeq {
    type Coord = BigInt;
    type Tail = BigInt;

    fn reduce(&self, t: &BigInt, n: usize) -> BigInt {
        t.mod_floor(&self.modulus(n))
    }

    fn c_add(&self, n: usize, a: &BigInt, b: &BigInt) -> BigInt {
        (a + b).mod_floor(&self.modulus(n))
    }

    fn c_mul(&self, n: usize, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b).mod_floor(&self.modulus(n))
    }

    fn c_neg(&self, n: usize, a: &BigInt) -> BigInt {
        (-a).mod_floor(&self.modulus(n))
    }

    fn c_zero(&self, _: usize) -> BigInt {
        BigInt::zero()
    }

    fn c_one(&self, _: usize) -> BigInt {
        BigInt::one()
    }

    fn c_is_unit(&self, n: usize, a: &BigInt) -> bool {
        a.gcd(&self.modulus(n)).is_one()
    }

    fn c_is_idempotent(&self, n: usize, a: &BigInt) -> bool {
        self.c_mul(n, a, a) == *a
    }

    fn c_annihilator(&self, n: usize, a: &BigInt) -> Option<BigInt> {
        let m = self.modulus(n);
        let g = a.gcd(&m);
        (!g.is_one()).then(|| &m / &g)
    }

    fn t_add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.canon_tail(a + b)
    }

    fn t_mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.canon_tail(a * b)
    }

    fn t_neg(&self, a: &BigInt) -> BigInt {
        self.canon_tail(-a)
    }

    fn t_zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn t_one(&self) -> BigInt {
        BigInt::one()
    }

    fn t_canon(&self, t: BigInt) -> BigInt {
        self.canon_tail(t)
    }

    /// Under growing moduli, `d² ≡ d` for all large `n` forces `d² = d`.
    fn t_is_idempotent(&self, t: &BigInt) -> bool {
        self.t_mul(t, t) == *t
    }

    fn t_first_nonunit(&self, t: &BigInt, from: usize) -> Option<usize> {
        match &self.moduli {
            Moduli::Periodic(ms) => (from..from + ms.len()).find(|&n| !self.c_is_unit(n, &self.reduce(t, n))),
            Moduli::Powers { base, .. } => (!t.gcd(base).is_one()).then_some(from),
        }
    }

    fn stalk_at(&self, n: usize) -> Result<Stalk> {
        let m = self.modulus(n);
        let m = m.to_u32().ok_or_else(|| Error::cap("elements", m.to_u128().unwrap_or(u128::MAX), u32::MAX))?;
        Ok(Stalk::Finite(Ring::zmod(m)?))
    }

    fn stalk_at_infinity(&self) -> Result<Stalk> {
        match &self.lcm {
            Some(l) => {
                let l = l.to_u32().ok_or_else(|| Error::cap("elements", l.to_u128().unwrap_or(u128::MAX), u32::MAX))?;
                Ok(Stalk::Finite(Ring::zmod(l)?))
            }
            None => Ok(Stalk::Integers),
        }
    }

    fn coord_literal(&self, _: usize, a: &BigInt) -> Value {
        int_literal(a)
    }

    fn tail_literal(&self, t: &BigInt) -> Value {
        int_literal(t)
    }

    fn parse_coord(&self, n: usize, v: &Value) -> Result<BigInt> {
        Ok(parse_int(v)?.mod_floor(&self.modulus(n)))
    }

    fn parse_tail(&self, v: &Value) -> Result<BigInt> {
        Ok(self.canon_tail(parse_int(v)?))
    }
}
