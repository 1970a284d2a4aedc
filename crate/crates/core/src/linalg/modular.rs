//! Rank modulo a word-sized prime. Only ever used as a fast pre-check ahead
//! of the exact computation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;

use super::{Rational, SparseVector};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases cover all of `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly drawn prime in `[2^61, 2^62)`.
pub fn random_prime_62<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

fn reduce_int(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    debug_assert!(!r.is_negative());
    r.to_u64().expect("residue fits")
}

/// `r mod p`, or `None` when the denominator vanishes modulo `p`.
fn reduce_rational(r: &Rational, p: u64) -> Option<u64> {
    let num = reduce_int(r.numer(), p);
    let den = reduce_int(r.denom(), p);
    if den == 0 {
        return None;
    }
    Some(mul_mod(num, pow_mod(den, p - 2, p), p))
}

/// Rank of `vectors` over `F_p`. Returns `None` if some denominator is
/// divisible by `p`.
pub fn rank_mod_p(vectors: &[SparseVector], p: u64) -> Option<usize> {
    let mut rows: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for v in vectors {
        let mut row = BTreeMap::new();
        for (i, c) in v.iter() {
            let r = reduce_rational(c, p)?;
            if r != 0 {
                row.insert(i, r);
            }
        }
        let mut cursor = 0;
        while let Some((&k, &c)) = row.range(cursor..).next() {
            cursor = k + 1;
            if let Some(pivot_row) = rows.get(&k) {
                let factor = p - c;
                for (&j, &e) in pivot_row {
                    let delta = mul_mod(factor, e, p);
                    let slot = row.entry(j).or_insert(0);
                    *slot = (*slot + delta) % p;
                    if *slot == 0 {
                        row.remove(&j);
                    }
                }
            }
        }
        if let Some((&pivot, &lead)) = row.iter().next() {
            let inv = pow_mod(lead, p - 2, p);
            for e in row.values_mut() {
                *e = mul_mod(*e, inv, p);
            }
            rows.insert(pivot, row);
        }
    }
    Some(rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
        assert!(is_prime_u64((1u64 << 61) - 1));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn drawn_primes_are_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..4 {
            let p = random_prime_62(&mut rng);
            assert!((1 << 61..1 << 62).contains(&p));
            assert!(is_prime_u64(p));
        }
    }

    #[test]
    fn modular_rank_detects_characteristic() {
        let q = |n: i64| Rational::from_integer(n.into());
        let a = SparseVector::from_dense(&[q(1), q(1)]);
        let b = SparseVector::from_dense(&[q(1), q(6)]);
        assert_eq!(rank_mod_p(&[a.clone(), b.clone()], 5), Some(1));
        assert_eq!(rank_mod_p(&[a, b], 7), Some(2));
        let half = SparseVector::from_dense(&[Rational::new(1.into(), 2.into())]);
        assert_eq!(rank_mod_p(std::slice::from_ref(&half), 2), None);
        assert_eq!(rank_mod_p(&[half], 3), Some(1));
    }
}
