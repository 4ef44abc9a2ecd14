use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integers modulo a prime `q`. Elements are stored reduced in `0..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    q: u32,
}

pub const GF2: PrimeField = PrimeField { q: 2 };

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Moduli are capped at `2^16` to keep lookups and products small.
    pub const MAX_MODULUS: u32 = 1 << 16;

    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q) || q > Self::MAX_MODULUS {
            return Err(Error::InvalidParams(format!("{q} is not a supported prime modulus")));
        }
        Ok(PrimeField { q })
    }

    pub fn q(self) -> u32 {
        self.q
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q as u64 - b as u64) % self.q as u64) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        self.sub(0, a)
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.q != 0, "zero has no inverse");
        let mut result = 1u32;
        let mut base = a % self.q;
        let mut e = self.q - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn contains(self, a: u32) -> bool {
        a < self.q
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(q: u32) -> Result<Self> {
        PrimeField::new(q)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.q
    }
}
