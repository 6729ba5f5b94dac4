//! Row-reduced spanning sets over the prime field F_p.

use crate::error::{Error, Result};
use crate::permgrp::is_prime;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

/// An echelon basis of a subspace of F_p^dim. Each stored row has a pivot column where
/// it is 1 and every other stored row is 0.
#[derive(Clone, Debug)]
pub struct ModpBasis {
    p: u64,
    dim: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModpBasis {
    pub fn new(p: u64, dim: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(ModpBasis { p, dim, rows: Vec::new() })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &mut [u64]) {
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                let f = self.p - c;
                for (x, r) in v.iter_mut().zip(row) {
                    if *r != 0 {
                        *x = (*x + f * r) % self.p;
                    }
                }
            }
        }
    }

    /// Reduce entries mod p; accepts signed input.
    pub fn canon(&self, v: &[i64]) -> Vec<u64> {
        v.iter().map(|&x| x.rem_euclid(self.p as i64) as u64).collect()
    }

    /// Add a vector; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v: Vec<u64> = v.iter().map(|x| x % self.p).collect();
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&x| x != 0) else { return false };
        let inv = inv_mod(v[piv], self.p);
        for x in v.iter_mut() {
            *x = *x * inv % self.p;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                let f = self.p - c;
                for (x, r) in row.iter_mut().zip(&v) {
                    if *r != 0 {
                        *x = (*x + f * r) % self.p;
                    }
                }
            }
        }
        self.rows.push((piv, v));
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v: Vec<u64> = v.iter().map(|x| x % self.p).collect();
        self.reduce(&mut v);
        v.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_membership() {
        let mut b = ModpBasis::new(3, 3).unwrap();
        assert!(b.insert(&[1, 2, 0]));
        assert!(b.insert(&[0, 1, 1]));
        assert!(!b.insert(&[2, 1, 0]));
        assert!(b.contains(&[1, 0, 1]));
        assert!(!b.contains(&[0, 0, 1]));
        assert_eq!(b.rank(), 2);
        assert!(ModpBasis::new(4, 2).is_err());
    }

    #[test]
    fn inverse_mod() {
        for p in [2u64, 3, 5, 7, 13] {
            for x in 1..p {
                assert_eq!(x * inv_mod(x, p) % p, 1);
            }
        }
    }
}
