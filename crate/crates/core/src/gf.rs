//! Arithmetic and Gaussian elimination over prime fields GF(q).

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::FieldTooSmall(q));
        }
        if (2..).take_while(|d| d * d <= q).any(|d| q.is_multiple_of(d)) {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Canonical representative of an arbitrary integer.
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.q as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q as u64 - b as u64) % self.q as u64) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.q), "zero has no inverse");
        // Fermat: a^(q-2).
        let mut result = 1u64;
        let mut base = a as u64 % self.q as u64;
        let mut exp = self.q - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * base % self.q as u64;
            }
            base = base * base % self.q as u64;
            exp >>= 1;
        }
        result as u32
    }

    /// `acc += c * row`, elementwise.
    pub fn axpy(&self, acc: &mut [u32], c: u32, row: &[u32]) {
        if c == 0 {
            return;
        }
        for (a, &r) in acc.iter_mut().zip(row) {
            *a = self.add(*a, self.mul(c, r));
        }
    }

    /// Rank of the matrix whose rows are `rows`.
    pub fn rank(&self, rows: &[Vec<u32>]) -> usize {
        let mut m: Vec<Vec<u32>> = rows.to_vec();
        let width = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..width {
            let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, p);
            let inv = self.inv(m[rank][col]);
            for v in m[rank].iter_mut() {
                *v = self.mul(*v, inv);
            }
            let pivot = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let c = self.sub(0, row[col]);
                    self.axpy(row, c, &pivot);
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }
}
