//! Multi-modular inversion in `ℚ[x]/(f)` for monic integer `f`.
//!
//! The inverse of an integer polynomial `a` is computed modulo a run of
//! 31-bit primes, lifted by Chinese remaindering and recovered coefficient by
//! coefficient with rational reconstruction. Candidates are checked exactly
//! by the caller, so a wrong reconstruction only costs another round.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const PRIME_CEILING: u64 = 1 << 31;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Descending primes below `2^31`.
pub(crate) fn primes() -> impl Iterator<Item = u64> {
    (3..PRIME_CEILING).rev().step_by(2).filter(|&n| is_prime(n))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p")
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// `a^{-1} mod (f, p)` with `f` monic of degree `d`, or `None` if `a` is not
/// a unit modulo `p`.
fn inverse_mod_p(a: &[BigInt], f: &[BigInt], p: u64) -> Option<Vec<u64>> {
    let d = f.len() - 1;
    let mut r0: Vec<u64> = f.iter().map(|c| reduce(c, p)).collect();
    let mut r1: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while r1.len() > 1 {
        // r0 = q·r1 + r, s2 = s0 - q·s1
        let lead_inv = inv_mod(*r1.last().expect("nonempty"), p);
        let mut rem = r0.clone();
        let mut quot = vec![0u64; rem.len().saturating_sub(r1.len()) + 1];
        while rem.len() >= r1.len() {
            let shift = rem.len() - r1.len();
            let c = rem.last().copied().unwrap_or(0) * lead_inv % p;
            quot[shift] = c;
            for (i, &b) in r1.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + p - c * b % p) % p;
            }
            trim(&mut rem);
            if rem.is_empty() {
                break;
            }
        }
        let mut s2 = s0.clone();
        s2.resize(s2.len().max(quot.len() + s1.len()), 0);
        for (i, &q) in quot.iter().enumerate() {
            if q == 0 {
                continue;
            }
            for (j, &s) in s1.iter().enumerate() {
                s2[i + j] = (s2[i + j] + p - q * s % p) % p;
            }
        }
        trim(&mut s2);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        trim(&mut r1);
    }
    if r1.is_empty() {
        return None;
    }
    let c = inv_mod(r1[0], p);
    let mut out: Vec<u64> = s1.iter().map(|&s| s * c % p).collect();
    out.resize(d, 0);
    Some(out)
}

/// Smallest `n/d` with `n ≡ r·d (mod m)`, `|n|, d ≤ sqrt(m/2)`.
fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r2) = r0.div_rem(&r1);
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let q = BigRational::new(r1, t1);
    (q.denom().gcd(m).is_one()).then_some(q)
}

/// Inverse of `a` in `ℚ[x]/(f)`, verified by `check`.
pub(crate) fn inverse<F>(a: &[BigInt], f: &[BigInt], mut check: F) -> Option<Vec<BigRational>>
where
    F: FnMut(&[BigRational]) -> bool,
{
    let d = f.len() - 1;
    let mut modulus = BigInt::one();
    let mut residues = vec![BigInt::zero(); d];
    let mut used = 0usize;
    let mut next_attempt = 1usize;
    for p in primes() {
        let Some(inv) = inverse_mod_p(a, f, p) else {
            continue;
        };
        // Garner step: x ≡ residues (mod modulus), x ≡ inv (mod p).
        let pb = BigInt::from(p);
        let m_inv = inv_mod(reduce(&modulus, p), p);
        for (r, &v) in residues.iter_mut().zip(&inv) {
            let diff = (v + p - reduce(r, p)) % p;
            let k = diff * m_inv % p;
            *r += &modulus * k;
        }
        modulus *= &pb;
        used += 1;
        if used < next_attempt {
            continue;
        }
        next_attempt = used + used.div_ceil(2);
        let candidate: Option<Vec<BigRational>> = residues
            .iter()
            .map(|r| rational_reconstruct(r, &modulus))
            .collect();
        if let Some(c) = candidate {
            if check(&c) {
                return Some(c);
            }
        }
        if used > 4096 {
            return None;
        }
    }
    None
}
