//! Exact arithmetic in `ℚ(ζ)`, `ζ = e^{iπ/N}`, represented as `ℚ[x]/(Φ_{2N})`.
//!
//! The geometric representation of a Coxeter group with labels `m_st` only
//! needs the numbers `cos(π/m_st)`, all of which live in the real subfield of
//! `ℚ(ζ)` once `N` is the lcm of the finite labels. Elements are stored as an
//! integer numerator polynomial of degree `< φ(2N)` over a positive common
//! denominator, so matrices built from reflections stay integral and cheap.
//!
//! Zero tests are exact. Signs of real elements are decided by evaluating at
//! `ζ` with outward-rounded fixed-point intervals, doubling the working
//! precision from 64 bits until the enclosure excludes zero.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::Label;

/// First rung of the precision ladder, in bits.
pub const START_PRECISION: u32 = 64;
/// Last rung of the precision ladder, in bits.
pub const MAX_PRECISION: u32 = 4096;
const LADDER: usize = 7;
const GUARD_BITS: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("sign requested for a non-real scalar")]
    NotReal,
    #[error("sign undecided at {MAX_PRECISION} bits")]
    PrecisionExhausted,
    #[error("division by zero")]
    DivisionByZero,
    #[error("label {m} does not divide N = {n}")]
    LabelNotDividing { m: u32, n: u64 },
}

/// Integer polynomial `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut known: Vec<(u64, Vec<BigInt>)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        // x^d - 1 divided by Φ_e for every proper divisor e of d.
        let mut poly = vec![BigInt::zero(); d as usize + 1];
        poly[0] = BigInt::from(-1);
        poly[d as usize] = BigInt::one();
        for (e, phi) in &known {
            if d % e == 0 {
                poly = exact_div_monic(&poly, phi);
            }
        }
        known.push((d, poly));
    }
    known.pop().expect("n is a divisor of itself").1
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// A closed interval `[lo, hi] · 2^-bits`.
#[derive(Debug, Clone)]
struct Interval {
    lo: BigInt,
    hi: BigInt,
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Enclosure of `atan(1/k) · 2^bits`.
fn atan_inv(k: u64, bits: u32) -> Interval {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = (BigInt::one() << bits).div_floor(&k);
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut j = 0u64;
    while !power.is_zero() {
        let term = power.div_floor(&BigInt::from(2 * j + 1));
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        terms += 1;
        power = power.div_floor(&k2);
        j += 1;
    }
    let slack = BigInt::from(terms + 2);
    Interval {
        lo: &sum - &slack,
        hi: &sum + &slack,
    }
}

fn pi_interval(bits: u32) -> Interval {
    let a = atan_inv(5, bits);
    let b = atan_inv(239, bits);
    Interval {
        lo: a.lo * 16 - b.hi * 4,
        hi: a.hi * 16 - b.lo * 4,
    }
}

/// Enclosure of `cos(θ) · 2^bits` for `θ ∈ [0, π/2]` given as an interval.
fn cos_interval(theta: &Interval, bits: u32) -> Interval {
    let unit = BigInt::one() << bits;
    let lo0 = theta.lo.clone().max(BigInt::zero());
    let sq = Interval {
        lo: (&lo0 * &lo0) >> bits,
        hi: ceil_div(&(&theta.hi * &theta.hi), &unit),
    };
    let mut term = Interval {
        lo: unit.clone(),
        hi: unit.clone(),
    };
    let mut acc = term.clone();
    let mut j = 1u64;
    loop {
        let d = BigInt::from((2 * j - 1) * (2 * j));
        let scale = &unit * &d;
        term = Interval {
            lo: (&term.lo * &sq.lo).div_floor(&scale),
            hi: ceil_div(&(&term.hi * &sq.hi), &scale),
        };
        if j % 2 == 1 {
            acc.lo -= &term.hi;
            acc.hi -= &term.lo;
        } else {
            acc.lo += &term.lo;
            acc.hi += &term.hi;
        }
        if j >= 2 && term.hi <= BigInt::one() {
            break;
        }
        j += 1;
    }
    acc.lo -= 2;
    acc.hi += 2;
    acc
}

/// Enclosures of `cos(kπ/N)` for `k < count`, scaled by `2^bits`.
fn cos_table(n: u64, count: usize, bits: u32) -> Vec<Interval> {
    let pi = pi_interval(bits + 8);
    let nn = BigInt::from(n);
    (0..count as u64)
        .map(|k| {
            // Reduce kπ/N into [0, π/2], tracking the sign flip.
            let mut k = k % (2 * n);
            if k > n {
                k = 2 * n - k;
            }
            let (k, negate) = if 2 * k > n { (n - k, true) } else { (k, false) };
            let kk = BigInt::from(k);
            let theta = Interval {
                lo: (&pi.lo * &kk).div_floor(&nn) >> 8u32,
                hi: ceil_div(&ceil_div(&(&pi.hi * &kk), &nn), &BigInt::from(256)),
            };
            let c = cos_interval(&theta, bits);
            if negate {
                Interval { lo: -c.hi, hi: -c.lo }
            } else {
                c
            }
        })
        .collect()
}

/// The field `ℚ[x]/(Φ_{2N})` attached to one working graph.
pub struct FieldContext {
    n: u64,
    modulus: Vec<BigInt>,
    degree: usize,
    /// `x^(degree + j) mod Φ` for `j ∈ [0, degree - 1)`.
    reduction: Vec<Vec<BigInt>>,
    /// `ζ^j mod Φ` for `j ∈ [0, 2N)`.
    powers: Vec<Vec<BigInt>>,
    cos_cache: [OnceLock<Vec<Interval>>; LADDER],
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("n", &self.n)
            .field("degree", &self.degree)
            .finish()
    }
}

impl FieldContext {
    /// Field for `N = lcm(labels)` (`N = 1` for no labels).
    pub fn for_labels<I: IntoIterator<Item = u32>>(labels: I) -> Arc<FieldContext> {
        let n = labels
            .into_iter()
            .fold(1u64, |acc, m| acc.lcm(&u64::from(m)));
        FieldContext::new(n)
    }

    pub fn new(n: u64) -> Arc<FieldContext> {
        assert!(n >= 1, "N must be positive");
        let modulus = cyclotomic_polynomial(2 * n);
        let degree = modulus.len() - 1;
        let reduce = |poly: &mut Vec<BigInt>| {
            for k in (degree..poly.len()).rev() {
                let c = std::mem::take(&mut poly[k]);
                if c.is_zero() {
                    continue;
                }
                for (j, mj) in modulus.iter().enumerate().take(degree) {
                    poly[k - degree + j] -= &c * mj;
                }
            }
            poly.truncate(degree);
        };
        let mut reduction = Vec::new();
        for j in 0..degree.saturating_sub(1) {
            let mut p = vec![BigInt::zero(); degree + j + 1];
            p[degree + j] = BigInt::one();
            reduce(&mut p);
            reduction.push(p);
        }
        let mut powers = Vec::with_capacity(2 * n as usize);
        let mut current = vec![BigInt::zero(); degree];
        current[0] = BigInt::one();
        for _ in 0..2 * n {
            powers.push(current.clone());
            let mut shifted = vec![BigInt::zero(); degree + 1];
            for (i, c) in current.iter().enumerate() {
                shifted[i + 1] = c.clone();
            }
            reduce(&mut shifted);
            current = shifted;
        }
        Arc::new(FieldContext {
            n,
            modulus,
            degree,
            reduction,
            powers,
            cos_cache: Default::default(),
        })
    }

    /// `N`, so that `ζ = e^{iπ/N}`.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `deg Φ_{2N} = φ(2N)`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of `Φ_{2N}`, lowest degree first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    fn cos_table(&self, rung: usize) -> &[Interval] {
        self.cos_cache[rung].get_or_init(|| {
            cos_table(
                self.n,
                self.degree,
                (START_PRECISION << rung) + GUARD_BITS,
            )
        })
    }
}

/// Convenience constructors; these live on `Arc<FieldContext>` so scalars can
/// hold a cheap handle to their field.
pub trait FieldExt {
    fn zero(&self) -> Scalar;
    fn one(&self) -> Scalar;
    fn integer(&self, k: i64) -> Scalar;
    fn rational(&self, q: BigRational) -> Scalar;
    /// `ζ^k` (not real in general).
    fn zeta_pow(&self, k: i64) -> Scalar;
    /// `cos(π/m)`, with `cos(π/∞) = 1`.
    fn cos_pi_over(&self, m: Label) -> Result<Scalar, ScalarError>;
    /// `2cos(π/m)`, an algebraic integer; `2` for `m = ∞`.
    fn two_cos_pi_over(&self, m: Label) -> Result<Scalar, ScalarError>;
}

impl FieldExt for Arc<FieldContext> {
    fn zero(&self) -> Scalar {
        Scalar {
            ctx: self.clone(),
            num: vec![BigInt::zero(); self.degree],
            den: BigInt::one(),
            real: true,
        }
    }

    fn one(&self) -> Scalar {
        self.integer(1)
    }

    fn integer(&self, k: i64) -> Scalar {
        let mut s = self.zero();
        s.num[0] = BigInt::from(k);
        s
    }

    fn rational(&self, q: BigRational) -> Scalar {
        let (numer, denom) = q.into_raw();
        let mut s = self.zero();
        s.num[0] = numer;
        s.den = denom;
        s.normalize();
        s
    }

    fn zeta_pow(&self, k: i64) -> Scalar {
        let period = 2 * self.n as i64;
        let idx = k.rem_euclid(period) as usize;
        let mut s = self.zero();
        s.num = self.powers[idx].clone();
        s.real = idx == 0 || idx as u64 == self.n;
        s
    }

    fn cos_pi_over(&self, m: Label) -> Result<Scalar, ScalarError> {
        let mut s = self.two_cos_pi_over(m)?;
        s.den = BigInt::from(2);
        s.normalize();
        Ok(s)
    }

    fn two_cos_pi_over(&self, m: Label) -> Result<Scalar, ScalarError> {
        match m {
            Label::Infinite => Ok(self.integer(2)),
            Label::Finite(m) => {
                if m == 0 || !self.n.is_multiple_of(u64::from(m)) {
                    return Err(ScalarError::LabelNotDividing { m, n: self.n });
                }
                let k = (self.n / u64::from(m)) as i64;
                let mut s = &self.zeta_pow(k) + &self.zeta_pow(-k);
                s.real = true;
                Ok(s)
            }
        }
    }
}

/// The sign of a real scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// An element of `ℚ(ζ)`: `(Σ num_k ζ^k) / den`.
#[derive(Clone)]
pub struct Scalar {
    ctx: Arc<FieldContext>,
    num: Vec<BigInt>,
    den: BigInt,
    /// Set when the value is known to be real; see [`Scalar::is_real`].
    real: bool,
}

impl Scalar {
    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    /// Numerator coefficients in the power basis of `ζ`.
    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Coefficients as rationals in the power basis of `ζ`.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    fn is_constant(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in `ℚ`.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_constant()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    fn normalize(&mut self) {
        if self.den.is_one() {
            return;
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    fn same_field(&self, other: &Scalar) {
        debug_assert_eq!(self.ctx.n, other.ctx.n, "scalars from different fields");
    }

    /// Complex conjugation, `ζ ↦ ζ^{2N-1}`.
    pub fn conj(&self) -> Scalar {
        let two_n = 2 * self.ctx.n as usize;
        let mut out = vec![BigInt::zero(); self.ctx.degree];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.ctx.powers[(two_n - k) % two_n];
            for (o, pj) in out.iter_mut().zip(p) {
                if !pj.is_zero() {
                    *o += c * pj;
                }
            }
        }
        Scalar {
            ctx: self.ctx.clone(),
            num: out,
            den: self.den.clone(),
            real: self.real,
        }
    }

    /// True if the scalar is fixed by conjugation.
    pub fn is_real(&self) -> bool {
        self.real || self.is_constant() || self.conj() == *self
    }

    /// Multiplicative inverse.
    ///
    /// Computed modulo word-size primes and lifted; the extended Euclidean
    /// algorithm over `ℚ[x]` is kept as a fallback.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.is_constant() {
            let q = BigRational::new(self.den.clone(), self.num[0].clone());
            let mut s = self.ctx.rational(q);
            s.real = self.real;
            return Ok(s);
        }
        let lifted = crate::modp::inverse(&self.num, &self.ctx.modulus, |coeffs| {
            (&Scalar::from_rationals(&self.ctx, coeffs) * self).is_one_over(&self.den)
        });
        if let Some(coeffs) = lifted {
            let mut s = Scalar::from_rationals(&self.ctx, &coeffs).scale_int_big(&self.den);
            s.real = self.real;
            return Ok(s);
        }
        self.inv_euclid()
    }

    /// `self == 1/den` for an integer `den`.
    fn is_one_over(&self, den: &BigInt) -> bool {
        self.is_constant() && &self.num[0] * den == self.den
    }

    fn scale_int_big(&self, k: &BigInt) -> Scalar {
        let mut s = Scalar {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|c| c * k).collect(),
            den: self.den.clone(),
            real: self.real,
        };
        s.normalize();
        s
    }

    fn inv_euclid(&self) -> Result<Scalar, ScalarError> {
        let to_q = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        // Invariant: r_i ≡ s_i · self (mod Φ).
        let mut r0 = to_q(&self.ctx.modulus);
        let mut r1: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect();
        let mut s0: Vec<BigRational> = vec![BigRational::zero()];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        trim(&mut r1);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            trim(&mut r1);
        }
        // r1 is a nonzero constant since Φ is irreducible.
        let c = r1[0].clone();
        let mut coeffs: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        coeffs.resize(self.ctx.degree, BigRational::zero());
        let mut s = Scalar::from_rationals(&self.ctx, &coeffs);
        s.real = self.real;
        Ok(s)
    }

    /// Builds a scalar from rational power-basis coefficients (at most `degree` of them).
    pub fn from_rationals(ctx: &Arc<FieldContext>, coeffs: &[BigRational]) -> Scalar {
        assert!(coeffs.len() <= ctx.degree);
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut num = vec![BigInt::zero(); ctx.degree];
        for (slot, q) in num.iter_mut().zip(coeffs) {
            *slot = q.numer() * (&den / q.denom());
        }
        let mut s = Scalar {
            ctx: ctx.clone(),
            num,
            den,
            real: false,
        };
        s.normalize();
        s.real = s.is_constant();
        s
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// Floating-point approximation of the real part.
    pub fn to_f64(&self) -> f64 {
        let n = self.ctx.n as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        self.num
            .iter()
            .enumerate()
            .map(|(k, c)| {
                c.to_f64().unwrap_or(f64::NAN) * (k as f64 * std::f64::consts::PI / n).cos()
            })
            .sum::<f64>()
            / den
    }

    /// Exact sign of a real scalar.
    pub fn sign(&self) -> Result<Sign, ScalarError> {
        if self.is_constant() {
            return Ok(match self.num[0].sign() {
                num_bigint::Sign::Minus => Sign::Negative,
                num_bigint::Sign::NoSign => Sign::Zero,
                num_bigint::Sign::Plus => Sign::Positive,
            });
        }
        if !self.is_real() {
            return Err(ScalarError::NotReal);
        }
        // The value is nonzero here: the numerator polynomial is not zero.
        for rung in 0..LADDER {
            let table = self.ctx.cos_table(rung);
            let mut lo = BigInt::zero();
            let mut hi = BigInt::zero();
            for (c, iv) in self.num.iter().zip(table) {
                if c.is_zero() {
                    continue;
                }
                if c.is_positive() {
                    lo += c * &iv.lo;
                    hi += c * &iv.hi;
                } else {
                    lo += c * &iv.hi;
                    hi += c * &iv.lo;
                }
            }
            if lo.is_positive() {
                return Ok(Sign::Positive);
            }
            if hi.is_negative() {
                return Ok(Sign::Negative);
            }
        }
        Err(ScalarError::PrecisionExhausted)
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        let k = BigInt::from(k);
        let mut s = Scalar {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|c| c * &k).collect(),
            den: self.den.clone(),
            real: self.real,
        };
        s.normalize();
        s
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![BigRational::zero()], rem);
    }
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
    }
    rem.truncate(db.max(1));
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.ctx.n == other.ctx.n && self.den == other.den && self.num == other.num
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self} ≈ {})", self.to_f64())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "{}", BigRational::new(self.num[0].clone(), self.den.clone()));
        }
        let mut first = true;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), self.den.clone());
            let (neg, mag) = if q.is_negative() { (true, -q) } else { (false, q) };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn add_like(a: &Scalar, b: &Scalar, negate_b: bool) -> Scalar {
    a.same_field(b);
    let num = if a.den == b.den {
        a.num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| if negate_b { x - y } else { x + y })
            .collect()
    } else {
        a.num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                let l = x * &b.den;
                let r = y * &a.den;
                if negate_b {
                    l - r
                } else {
                    l + r
                }
            })
            .collect()
    };
    let den = if a.den == b.den {
        a.den.clone()
    } else {
        &a.den * &b.den
    };
    let mut s = Scalar {
        ctx: a.ctx.clone(),
        num,
        den,
        real: a.real && b.real,
    };
    if !s.den.is_one() {
        s.normalize();
    }
    s
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        add_like(self, rhs, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        add_like(self, rhs, true)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
            real: self.real,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.same_field(rhs);
        let ctx = &self.ctx;
        let deg = ctx.degree;
        let real = self.real && rhs.real;
        if self.is_zero() || rhs.is_zero() {
            return ctx.zero();
        }
        let (konst, other) = if self.is_constant() {
            (Some(self), rhs)
        } else if rhs.is_constant() {
            (Some(rhs), self)
        } else {
            (None, rhs)
        };
        let (num, den) = if let Some(k) = konst {
            let c = &k.num[0];
            (
                other.num.iter().map(|x| x * c).collect::<Vec<_>>(),
                &k.den * &other.den,
            )
        } else {
            let mut prod = vec![BigInt::zero(); 2 * deg - 1];
            for (i, x) in self.num.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in rhs.num.iter().enumerate() {
                    if !y.is_zero() {
                        prod[i + j] += x * y;
                    }
                }
            }
            let (low, high) = prod.split_at_mut(deg);
            for (c, row) in high.iter().zip(&ctx.reduction) {
                if c.is_zero() {
                    continue;
                }
                for (l, r) in low.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *l += c * r;
                    }
                }
            }
            prod.truncate(deg);
            (prod, &self.den * &rhs.den)
        };
        let mut s = Scalar {
            ctx: ctx.clone(),
            num,
            den,
            real,
        };
        s.normalize();
        s
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
