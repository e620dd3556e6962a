//! Exact arithmetic in the cyclotomic field Q(ζ_m).
//!
//! An element is stored as its reduced residue modulo the m-th cyclotomic
//! polynomial Φ_m, i.e. a rational vector of length φ(m) in the power basis
//! 1, ζ, ζ², …. For m ∈ {1, 2} this is just Q and multiplication takes a
//! scalar fast path.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Default field order: Q with signs ±1 available as ζ₂^k.
pub const DEFAULT_ORDER: u32 = 2;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycScalar {
    order: u32,
    coeffs: Vec<Rational>,
}

pub fn euler_phi(m: u32) -> usize {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn poly_trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Exact quotient of integer polynomials (coefficients low to high), `den` monic.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

fn compute_cyclotomic(m: u32) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

/// The m-th cyclotomic polynomial, integer coefficients from low to high degree.
pub fn cyclotomic_poly(m: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().expect("cyclotomic cache poisoned").get(&m) {
        return p.clone();
    }
    let p = Arc::new(compute_cyclotomic(m));
    cache
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(m)
        .or_insert(p)
        .clone()
}

/// Reduce a rational polynomial modulo the monic Φ_m, padding to length φ(m).
fn reduce(m: u32, mut p: Vec<Rational>) -> Vec<Rational> {
    let phi = euler_phi(m);
    if p.len() > phi {
        let f = cyclotomic_poly(m);
        for k in (phi..p.len()).rev() {
            let c = std::mem::replace(&mut p[k], Rational::zero());
            if c.is_zero() {
                continue;
            }
            for (j, fj) in f.iter().enumerate().take(phi) {
                if !fj.is_zero() {
                    p[k - phi + j] -= &c * Rational::from_integer(fj.clone());
                }
            }
        }
        p.truncate(phi);
    }
    p.resize(phi, Rational::zero());
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

/// Division with remainder in Q[x]; `b` nonzero and trimmed.
fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
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
    poly_trim(&mut rem);
    poly_trim(&mut quot);
    (quot, rem)
}

impl CycScalar {
    pub fn zero(m: u32) -> Self {
        assert!(m > 0, "cyclotomic order must be positive");
        CycScalar { order: m, coeffs: vec![Rational::zero(); euler_phi(m)] }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, Rational::one())
    }

    pub fn from_int(m: u32, v: i64) -> Self {
        Self::from_rational(m, Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(m: u32, num: i64, den: i64) -> Self {
        Self::from_rational(m, Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(m: u32, r: Rational) -> Self {
        let mut s = Self::zero(m);
        s.coeffs[0] = r;
        s
    }

    /// Build from power-basis coefficients of any length; the result is reduced.
    pub fn from_coeffs(m: u32, coeffs: Vec<Rational>) -> Self {
        assert!(m > 0, "cyclotomic order must be positive");
        CycScalar { order: m, coeffs: reduce(m, coeffs) }
    }

    /// ζ_m^k for any integer k.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut p = vec![Rational::zero(); e + 1];
        p[e] = Rational::one();
        Self::from_coeffs(m, p)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// The exponent k in 0..m with self = ζ_m^k, if any.
    pub fn root_exponent(&self) -> Option<u32> {
        (0..self.order).find(|&k| *self == Self::root_of_unity(self.order, k as i64))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::IncompatibleField(self.order, other.order))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycScalar { order: self.order, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycScalar { order: self.order, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.coeffs.len() == 1 {
            return Ok(CycScalar { order: self.order, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] });
        }
        Ok(CycScalar { order: self.order, coeffs: reduce(self.order, poly_mul(&self.coeffs, &other.coeffs)) })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_m.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() == 1 {
            return Ok(CycScalar { order: self.order, coeffs: vec![self.coeffs[0].recip()] });
        }
        let f: Vec<Rational> =
            cyclotomic_poly(self.order).iter().map(|c| Rational::from_integer(c.clone())).collect();
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        // invariant: t0 * self ≡ r0, t1 * self ≡ r1 (mod Φ_m)
        let (mut r0, mut r1) = (f, a);
        let (mut t0, mut t1) = (Vec::<Rational>::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let t = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        // r0 is a nonzero constant since Φ_m is irreducible
        let c = r0[0].recip();
        let t: Vec<Rational> = t0.into_iter().map(|x| x * &c).collect();
        Ok(Self::from_coeffs(self.order, t))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }
}

impl Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.try_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.try_sub(rhs).expect("cyclotomic order mismatch")
    }
}

impl Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.try_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "z{}", self.order)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    m: u32,
    coeffs: Vec<String>,
}

pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr { m: self.order, coeffs: self.coeffs.iter().map(rational_to_string).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ScalarRepr::deserialize(deserializer)?;
        if repr.m == 0 {
            return Err(D::Error::custom("cyclotomic order must be positive"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(CycScalar::from_coeffs(repr.m, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycScalar {
        CycScalar::root_of_unity(m, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |m| cyclotomic_poly(m).iter().map(|c| c.try_into().unwrap()).collect::<Vec<i64>>();
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn sums() {
        let x = CycScalar::from_ratio(5, 3, 7);
        assert_eq!(&CycScalar::zero(5) + &x, x);
        assert_eq!(&z(4, 1) + &z(4, 1), z(4, 1).scale(&Rational::from_integer(2.into())));
        assert_eq!(&z(3, 1) + &z(3, 2), CycScalar::from_int(3, -1));
    }

    #[test]
    fn products() {
        let x = &z(7, 3) + &CycScalar::from_ratio(7, 1, 2);
        assert_eq!(&CycScalar::one(7) * &x, x);
        assert_eq!(&z(4, 1) * &z(4, 1), CycScalar::from_int(4, -1));
        let m1 = CycScalar::from_int(2, -1);
        assert_eq!(&m1 * &m1, CycScalar::one(2));
    }

    #[test]
    fn inverses() {
        assert_eq!(CycScalar::one(4).inv().unwrap(), CycScalar::one(4));
        assert_eq!(z(4, 1).inv().unwrap(), -z(4, 1));
        assert_eq!(CycScalar::from_int(2, 2).inv().unwrap(), CycScalar::from_ratio(2, 1, 2));
        assert_eq!(CycScalar::zero(3).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn order_mismatch() {
        assert_eq!(z(3, 1).try_add(&z(4, 1)), Err(Error::IncompatibleField(3, 4)));
        assert_eq!(z(3, 1).try_mul(&z(4, 1)), Err(Error::IncompatibleField(3, 4)));
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        for m in 1..=12u32 {
            assert!(z(m, 1).pow(m as i64).unwrap().is_one(), "m = {m}");
            for j in 1..m {
                assert!(!z(m, j as i64).is_one(), "m = {m}, j = {j}");
            }
            assert_eq!(z(m, 1).root_exponent(), Some(1 % m));
        }
    }

    #[test]
    fn json_round_trip() {
        let x = &z(5, 2) + &CycScalar::from_ratio(5, -3, 4);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"m":5,"coeffs":["-3/4","0","1","0"]}"#);
        let y: CycScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn display() {
        assert_eq!(CycScalar::from_ratio(2, -1, 2).to_string(), "-1/2");
        assert_eq!((&z(4, 1) + &CycScalar::one(4)).to_string(), "1 + z4");
    }
}
