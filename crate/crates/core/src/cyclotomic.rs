//! Exact arithmetic in cyclotomic fields.
//!
//! An element of `Q(ζ_N)` is stored over the tensor basis obtained from the
//! prime-power decomposition `N = ∏ p^e`: the basis of `Q(ζ_{p^e})` is
//! `ζ_{p^e}^j` for `0 ≤ j < φ(p^e)`, and a basis element of `Q(ζ_N)` is the
//! product of one such power per prime, i.e. `ζ_N^k` with
//! `k = Σ j_p · N/p^e (mod N)`.
//!
//! This basis is nested: the basis of every subfield `Q(ζ_d)`, `d | N`, is a
//! subset of the basis of `Q(ζ_N)`. The minimal conductor of a value can
//! therefore be read off its support, which makes the canonical form cheap
//! to compute and equality structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// An exact element of a cyclotomic field in canonical form.
///
/// `terms` holds `(k, c_k)` pairs, sorted by `k`, nonzero `c_k`, and every `k`
/// is a basis exponent for `conductor`. The conductor is the smallest `N`
/// (with `N ≢ 2 mod 4`) whose field contains the value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycNum {
    conductor: u32,
    terms: Vec<(u32, BigRational)>,
}

#[derive(Clone, Copy)]
struct Part {
    p: u32,
    e: u32,
    q: u32,
    // N / q
    cof: u32,
    // (N / q)^{-1} mod q
    inv: u32,
    phi: u32,
}

struct Basis {
    n: u32,
    parts: Vec<Part>,
}

fn factor(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn inv_mod(a: u32, m: u32) -> u32 {
    if m == 1 {
        return 0;
    }
    let g = (a as i64).extended_gcd(&(m as i64));
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(m as i64) as u32
}

impl Basis {
    fn new(n: u32) -> Basis {
        debug_assert!(n % 4 != 2, "working conductor must not be 2 mod 4");
        let parts = factor(n)
            .into_iter()
            .map(|(p, e)| {
                let q = p.pow(e);
                let cof = n / q;
                Part { p, e, q, cof, inv: inv_mod(cof % q, q), phi: q / p * (p - 1) }
            })
            .collect();
        Basis { n, parts }
    }

    fn component(&self, part: &Part, k: u32) -> u32 {
        ((k as u64 * part.inv as u64) % part.q as u64) as u32
    }

    /// Writes `ζ_N^k` in the basis as a signed sum of basis exponents.
    fn expand(&self, k: u32) -> Vec<(u32, bool)> {
        let n = self.n as u64;
        let mut acc: Vec<(u64, bool)> = vec![(0, true)];
        for part in &self.parts {
            let c = self.component(part, k % self.n);
            let pieces: Vec<(u32, bool)> = if c < part.phi {
                vec![(c, true)]
            } else {
                let step = part.q / part.p;
                let r = c - part.phi;
                (0..part.p - 1).map(|i| (i * step + r, false)).collect()
            };
            let mut next = Vec::with_capacity(acc.len() * pieces.len());
            for &(k0, s0) in &acc {
                for &(j, s1) in &pieces {
                    next.push(((k0 + j as u64 * part.cof as u64) % n, s0 == s1));
                }
            }
            acc = next;
        }
        acc.into_iter().map(|(k, s)| (k as u32, s)).collect()
    }

    /// Canonical form of a dense coefficient vector indexed by basis exponent.
    fn canonical(&self, dense: Vec<BigRational>) -> CycNum {
        let support: Vec<(u32, BigRational)> =
            dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k as u32, c)).collect();
        if support.is_empty() {
            return CycNum::zero();
        }
        // Conductor level per prime: the smallest f with every component divisible by p^{e-f}.
        let levels: Vec<u32> = self
            .parts
            .iter()
            .map(|part| {
                support
                    .iter()
                    .map(|&(k, _)| {
                        let j = self.component(part, k);
                        if j == 0 {
                            0
                        } else {
                            let mut v = 0;
                            let mut jj = j;
                            while jj.is_multiple_of(part.p) {
                                jj /= part.p;
                                v += 1;
                            }
                            part.e - v
                        }
                    })
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let new_n: u32 = self.parts.iter().zip(&levels).map(|(part, &f)| part.p.pow(f)).product();
        let target = Basis::new(new_n);
        let mut terms: Vec<(u32, BigRational)> = support
            .into_iter()
            .map(|(k, c)| {
                let mut k2: u64 = 0;
                for (part, &f) in self.parts.iter().zip(&levels) {
                    if f == 0 {
                        continue;
                    }
                    let j = self.component(part, k) / part.p.pow(part.e - f);
                    let tp = target.parts.iter().find(|t| t.p == part.p).expect("prime present");
                    k2 += j as u64 * tp.cof as u64;
                }
                ((k2 % new_n as u64) as u32, c)
            })
            .collect();
        terms.sort_by_key(|t| t.0);
        CycNum { conductor: new_n, terms }
    }

    fn dense_of(&self, x: &CycNum) -> Vec<BigRational> {
        let mut dense = vec![BigRational::zero(); self.n as usize];
        let scale = self.n / x.conductor;
        for (k, c) in &x.terms {
            for (b, s) in self.expand(k * scale) {
                let slot = &mut dense[b as usize];
                if s {
                    *slot += c;
                } else {
                    *slot -= c;
                }
            }
        }
        dense
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

impl CycNum {
    pub fn zero() -> CycNum {
        CycNum { conductor: 1, terms: Vec::new() }
    }

    pub fn one() -> CycNum {
        CycNum::from_int(1)
    }

    pub fn from_int(v: i64) -> CycNum {
        CycNum::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> CycNum {
        CycNum::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> CycNum {
        if r.is_zero() {
            CycNum::zero()
        } else {
            CycNum { conductor: 1, terms: vec![(0, r)] }
        }
    }

    /// `ζ_N^k` with `ζ_N = e^{2πi/N}`.
    pub fn root_of_unity(n: u32, k: i64) -> CycNum {
        assert!(n >= 1, "root_of_unity needs N >= 1");
        let (m, k) = if n % 4 == 2 { (2 * n, 2 * k) } else { (n, k) };
        let k = k.rem_euclid(m as i64) as u32;
        let basis = Basis::new(m);
        let mut dense = vec![BigRational::zero(); m as usize];
        for (b, s) in basis.expand(k) {
            if s {
                dense[b as usize] += BigRational::one();
            } else {
                dense[b as usize] -= BigRational::one();
            }
        }
        basis.canonical(dense)
    }

    pub fn i() -> CycNum {
        CycNum::root_of_unity(4, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn terms(&self) -> &[(u32, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    /// The rational value, if this number is rational.
    pub fn to_rational(&self) -> Option<BigRational> {
        match (self.conductor, self.terms.as_slice()) {
            (_, []) => Some(BigRational::zero()),
            (1, [(0, c)]) => Some(c.clone()),
            _ => None,
        }
    }

    /// The value as an `i64`, if it is a rational integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        let r = self.to_rational()?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    fn binary(&self, other: &CycNum, f: impl Fn(&Basis, Vec<BigRational>, Vec<BigRational>) -> Vec<BigRational>) -> CycNum {
        let basis = Basis::new(lcm(self.conductor, other.conductor));
        let a = basis.dense_of(self);
        let b = basis.dense_of(other);
        let out = f(&basis, a, b);
        basis.canonical(out)
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^a`; `a` must be coprime to the conductor.
    pub fn galois(&self, a: i64) -> CycNum {
        let n = self.conductor;
        let a = a.rem_euclid(n as i64) as u32;
        debug_assert!(n == 1 || a.gcd(&n) == 1);
        let basis = Basis::new(n);
        let mut dense = vec![BigRational::zero(); n as usize];
        for (k, c) in &self.terms {
            let img = ((*k as u64 * a as u64) % n as u64) as u32;
            for (b, s) in basis.expand(img) {
                if s {
                    dense[b as usize] += c;
                } else {
                    dense[b as usize] -= c;
                }
            }
        }
        basis.canonical(dense)
    }

    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    pub fn inv(&self) -> Result<CycNum, Error> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        if let Some(r) = self.to_rational() {
            return Ok(CycNum::from_rational(r.recip()));
        }
        // x^{-1} = (∏_{a≠1} σ_a(x)) / N(x), where N(x) is rational.
        let n = self.conductor;
        let mut others = CycNum::one();
        for a in 2..n {
            if a.gcd(&n) == 1 {
                others = &others * &self.galois(a as i64);
            }
        }
        let norm = (&others * self).to_rational().expect("field norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        if r.is_zero() {
            return CycNum::zero();
        }
        CycNum { conductor: self.conductor, terms: self.terms.iter().map(|(k, c)| (*k, c * r)).collect() }
    }

    pub fn pow(&self, e: i64) -> Result<CycNum, Error> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one();
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

    /// Smallest `n ≥ 1` with `self^n = 1`, or `None` when this is not a root of unity.
    pub fn multiplicative_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        // Roots of unity in Q(ζ_N) have order dividing lcm(2, N).
        let bound = lcm(2, self.conductor);
        let mut acc = self.clone();
        for n in 1..=bound {
            if acc.is_one() {
                return Some(n);
            }
            acc = &acc * self;
        }
        None
    }

    /// Writes a root of unity as `(m, k)` with `self = ζ_m^k`, `m` its order and `gcd(k, m) = 1`.
    pub fn root_of_unity_exponent(&self) -> Option<(u32, u32)> {
        let m = self.multiplicative_order()?;
        (0..m.max(1)).find(|&k| k.gcd(&m) == 1 && CycNum::root_of_unity(m, k as i64) == *self).map(|k| (m, k))
    }

    /// The canonical square root of a root of unity: `ζ_m^k ↦ ζ_{2m}^k`.
    pub fn sqrt_of_root_of_unity(&self) -> Result<CycNum, Error> {
        let (m, k) = self.root_of_unity_exponent().ok_or_else(|| Error::Domain(format!("{self} is not a root of unity")))?;
        Ok(CycNum::root_of_unity(2 * m, k as i64))
    }

    /// Floating approximation, for diagnostics only.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.terms
            .iter()
            .map(|(k, c)| {
                let c = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(c, 2.0 * std::f64::consts::PI * *k as f64 / n)
            })
            .sum()
    }
}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

impl From<i64> for CycNum {
    fn from(v: i64) -> Self {
        CycNum::from_int(v)
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        self.binary(rhs, |_, mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        })
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { conductor: self.conductor, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero();
        }
        if let Some(r) = self.to_rational() {
            return rhs.scale(&r);
        }
        if let Some(r) = rhs.to_rational() {
            return self.scale(&r);
        }
        let n = lcm(self.conductor, rhs.conductor);
        let basis = Basis::new(n);
        let lift = |x: &CycNum| -> Vec<(u32, BigRational)> {
            let s = n / x.conductor;
            x.terms.iter().map(|(k, c)| (k * s, c.clone())).collect()
        };
        let a = lift(self);
        let b = lift(rhs);
        let mut dense = vec![BigRational::zero(); n as usize];
        for (ka, ca) in &a {
            for (kb, cb) in &b {
                let prod = ca * cb;
                for (slot, s) in basis.expand((ka + kb) % n) {
                    if s {
                        dense[slot as usize] += &prod;
                    } else {
                        dense[slot as usize] -= &prod;
                    }
                }
            }
        }
        basis.canonical(dense)
    }
}

impl<'a> Div<&'a CycNum> for &'a CycNum {
    type Output = Result<CycNum, Error>;
    fn div(self, rhs: &CycNum) -> Result<CycNum, Error> {
        Ok(self * &rhs.inv()?)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// GAP-style rendering, e.g. `-1/2*E(8)^3+E(8)`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                out.push('-');
            } else if idx > 0 {
                out.push('+');
            }
            if *k == 0 {
                out.push_str(&fmt_rational(&mag));
                continue;
            }
            if !mag.is_one() {
                out.push_str(&fmt_rational(&mag));
                out.push('*');
            }
            out.push_str(&format!("E({})", self.conductor));
            if *k != 1 {
                out.push_str(&format!("^{k}"));
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn parse_term(t: &str) -> Result<CycNum, Error> {
    let t = t.trim();
    let bad = || Error::Parse(format!("bad cyclotomic term '{t}'"));
    let (coef, root) = match t.find("E(") {
        None => return Ok(CycNum::from_rational(parse_rational(t)?)),
        Some(pos) => {
            let head = t[..pos].trim().trim_end_matches('*').trim();
            let coef = match head {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                h => parse_rational(h)?,
            };
            (coef, &t[pos..])
        }
    };
    let close = root.find(')').ok_or_else(bad)?;
    let n: u32 = root[2..close].trim().parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    let rest = root[close + 1..].trim();
    let k: i64 = if rest.is_empty() {
        1
    } else {
        let e = rest.strip_prefix('^').ok_or_else(bad)?;
        e.trim().trim_start_matches('(').trim_end_matches(')').parse().map_err(|_| bad())?
    };
    Ok(CycNum::root_of_unity(n, k).scale(&coef))
}

/// Parses sums of terms like `2`, `-1/2`, `E(8)^3`, `-3*E(4)`, `E(3)+E(3)^2`.
impl FromStr for CycNum {
    type Err = Error;
    fn from_str(s: &str) -> Result<CycNum, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty cyclotomic literal".into()));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        let mut depth = 0;
        let bytes = s.as_bytes();
        for (i, &ch) in bytes.iter().enumerate() {
            match ch {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > start && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' => {
                    pieces.push(&s[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        pieces.push(&s[start..]);
        let mut acc = CycNum::zero();
        for p in pieces {
            acc = &acc + &parse_term(p)?;
        }
        Ok(acc)
    }
}

/// One `{conductor, exponent, numerator, denominator}` record of the JSON encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub conductor: u32,
    pub exponent: u32,
    pub numerator: i64,
    pub denominator: i64,
}

impl CycNum {
    pub fn to_records(&self) -> Result<Vec<TermRecord>, Error> {
        self.terms
            .iter()
            .map(|(k, c)| {
                let numerator = c.numer().to_i64();
                let denominator = c.denom().to_i64();
                match (numerator, denominator) {
                    (Some(numerator), Some(denominator)) => {
                        Ok(TermRecord { conductor: self.conductor, exponent: *k, numerator, denominator })
                    }
                    _ => Err(Error::Domain(format!("coefficient of {self} exceeds i64"))),
                }
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<CycNum, Error> {
        let mut acc = CycNum::zero();
        for r in records {
            if r.conductor == 0 || r.denominator == 0 {
                return Err(Error::Parse("record with zero conductor or denominator".into()));
            }
            let c = BigRational::new(BigInt::from(r.numerator), BigInt::from(r.denominator));
            acc = &acc + &CycNum::root_of_unity(r.conductor, r.exponent as i64).scale(&c);
        }
        Ok(acc)
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_records().map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<CycNum, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        CycNum::from_records(&records).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k)
    }

    #[test]
    fn basic_identities() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycNum::from_int(-1));
        let s2 = &z(8, 1) + &z(8, 7);
        assert_eq!(&s2 * &s2, CycNum::from_int(2));
        assert_eq!(CycNum::from_int(2).inv().unwrap(), CycNum::from_ratio(1, 2));
        assert_eq!(z(6, 3), CycNum::from_int(-1));
        assert!(z(3, 1).pow(3).unwrap().is_one());
        assert_eq!(z(12, 2), z(6, 1));
        assert_eq!(&z(3, 1) + &z(3, 2), CycNum::from_int(-1));
    }

    #[test]
    fn conductor_is_minimal() {
        assert_eq!(z(6, 1).conductor(), 3);
        assert_eq!(z(24, 6).conductor(), 4);
        let s3 = &z(12, 1) + &z(12, 11);
        assert_eq!(s3.conductor(), 12);
        assert_eq!((&s3 * &s3).conductor(), 1);
        assert_eq!(z(10, 3).conductor(), 5);
    }

    #[test]
    fn square_roots() {
        assert_eq!(CycNum::from_int(-1).sqrt_of_root_of_unity().unwrap(), CycNum::i());
        assert!(CycNum::one().sqrt_of_root_of_unity().unwrap().is_one());
        let w = z(3, 1).sqrt_of_root_of_unity().unwrap();
        assert_eq!(w, z(6, 1));
        assert_eq!(&w * &w, z(3, 1));
        assert!(CycNum::from_int(2).sqrt_of_root_of_unity().is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(z(8, 1).multiplicative_order(), Some(8));
        assert_eq!(CycNum::from_int(-1).multiplicative_order(), Some(2));
        assert_eq!(CycNum::from_int(2).multiplicative_order(), None);
        assert_eq!((-z(3, 1)).multiplicative_order(), Some(6));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(matches!(CycNum::zero().inv(), Err(Error::Domain(_))));
    }

    #[test]
    fn parse_and_display() {
        for s in ["0", "-1/2", "E(8)^3", "-3*E(4)", "E(5)+2*E(5)^3", "1/3*E(24)^5-E(24)"] {
            let x: CycNum = s.parse().unwrap();
            let y: CycNum = x.to_string().parse().unwrap();
            assert_eq!(x, y, "{s}");
        }
        assert_eq!("E(3)+E(3)^2".parse::<CycNum>().unwrap(), CycNum::from_int(-1));
        assert_eq!("E(4)^-1".parse::<CycNum>().unwrap(), -CycNum::i());
    }

    #[test]
    fn json_records() {
        let x: CycNum = "1/2*E(8)-E(8)^3+5".parse().unwrap();
        let j = serde_json::to_string(&x).unwrap();
        let y: CycNum = serde_json::from_str(&j).unwrap();
        assert_eq!(x, y);
        assert_eq!(serde_json::to_string(&CycNum::zero()).unwrap(), "[]");
    }

    const CONDUCTORS: [u32; 9] = [1, 3, 4, 5, 8, 9, 12, 15, 24];

    fn arb_cyc() -> impl Strategy<Value = CycNum> {
        (prop::sample::select(CONDUCTORS.to_vec()), prop::collection::vec((0i64..48, -4i64..5, 1i64..4), 0..4)).prop_map(|(n, ts)| {
            ts.into_iter()
                .fold(CycNum::zero(), |acc, (k, a, b)| &acc + &CycNum::root_of_unity(n, k).scale(&BigRational::new(a.into(), b.into())))
        })
    }

    fn renormalize(x: &CycNum) -> CycNum {
        let basis = Basis::new(x.conductor);
        basis.canonical(basis.dense_of(x))
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn conjugation(a in arb_cyc(), b in arb_cyc()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        }

        #[test]
        fn canonical_idempotent(a in arb_cyc(), b in arb_cyc()) {
            let p = &a * &b;
            prop_assert_eq!(renormalize(&p), p);
        }

        #[test]
        fn float_shadow(a in arb_cyc(), b in arb_cyc()) {
            let (fa, fb) = (a.to_complex(), b.to_complex());
            prop_assert!(close((&a + &b).to_complex(), fa + fb));
            prop_assert!(close((&a * &b).to_complex(), fa * fb));
            prop_assert!(close(a.conj().to_complex(), fa.conj()));
            if !b.is_zero() {
                prop_assert!(close((&a / &b).unwrap().to_complex(), fa / fb));
            }
        }
    }
}
