//! Exact arithmetic in the cyclotomic field `Q(z)`, `z = exp(2*pi*i/48)`.
//!
//! Elements are polynomials of degree < 16 in `z` reduced modulo the 48th
//! cyclotomic polynomial `x^16 - x^8 + 1`. The field contains `i`, `omega`,
//! `sqrt(2)`, `sqrt(3)` and `cos`/`sin` of every multiple of `pi/8`.
//!
//! Coefficients are kept as `i128` numerators over a single positive common
//! denominator, reduced so that the gcd of everything is 1. That makes the
//! representation canonical: equal values have identical fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const DEGREE: usize = 16;
pub const ORDER: i64 = 48;

/// Exponents `k` with `gcd(k, 48) = 1`; `z -> z^k` runs over the Galois group.
const GALOIS_UNITS: [i64; 16] = [1, 5, 7, 11, 13, 17, 19, 23, 25, 29, 31, 35, 37, 41, 43, 47];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("division by zero in Q(zeta_48)")]
    DivisionByZero,
    #[error("cannot parse cyclotomic element: {0}")]
    Parse(String),
    #[error("unknown constant: {0}")]
    UnknownConstant(String),
    #[error("cyclotomic coefficient overflow")]
    Overflow,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloElt {
    den: i128,
    num: [i128; DEGREE],
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
fn ck_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("cyclotomic coefficient overflow")
}

#[inline]
fn ck_add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("cyclotomic coefficient overflow")
}

/// Reduce a coefficient vector of arbitrary length modulo `x^16 - x^8 + 1`.
fn reduce_poly(mut c: Vec<i128>) -> [i128; DEGREE] {
    for d in (DEGREE..c.len()).rev() {
        let v = c[d];
        if v != 0 {
            c[d - 8] = ck_add(c[d - 8], v);
            c[d - 16] = ck_add(c[d - 16], -v);
            c[d] = 0;
        }
    }
    let mut out = [0i128; DEGREE];
    for (o, v) in out.iter_mut().zip(c) {
        *o = v;
    }
    out
}

fn big_one() -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); DEGREE];
    v[0] = BigInt::one();
    v
}

fn big_reduce(mut c: Vec<BigInt>) -> Vec<BigInt> {
    for d in (DEGREE..c.len()).rev() {
        let v = std::mem::take(&mut c[d]);
        if !v.is_zero() {
            c[d - 8] += &v;
            c[d - 16] -= &v;
        }
    }
    c.truncate(DEGREE);
    c
}

fn big_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); 2 * DEGREE - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            c[i + j] += x * y;
        }
    }
    big_reduce(c)
}

fn big_galois(a: &[BigInt], k: i64) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); 24];
    for (j, v) in a.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        let e = (j as i64 * k).rem_euclid(ORDER) as usize;
        if e < 24 {
            c[e] += v;
        } else {
            c[e - 24] -= v;
        }
    }
    big_reduce(c)
}

impl CycloElt {
    fn normalized(mut num: [i128; DEGREE], mut den: i128) -> Self {
        assert!(den != 0);
        if num.iter().all(|&x| x == 0) {
            return Self::zero();
        }
        if den < 0 {
            den = -den;
            for x in num.iter_mut() {
                *x = -*x;
            }
        }
        let mut g = den;
        for &x in num.iter() {
            if x != 0 {
                g = gcd(g, x);
                if g == 1 {
                    break;
                }
            }
        }
        if g > 1 {
            den /= g;
            for x in num.iter_mut() {
                *x /= g;
            }
        }
        CycloElt { den, num }
    }

    pub fn zero() -> Self {
        CycloElt { den: 1, num: [0; DEGREE] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        let mut num = [0; DEGREE];
        num[0] = v as i128;
        CycloElt { den: 1, num }
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        let mut num = [0; DEGREE];
        num[0] = p as i128;
        Self::normalized(num, q as i128)
    }

    /// `z^k` for any integer `k`.
    pub fn zeta(k: i64) -> Self {
        let k = k.rem_euclid(ORDER) as usize;
        let mut c = vec![0i128; k.max(DEGREE) + 1];
        c[k] = 1;
        Self::normalized(reduce_poly(c), 1)
    }

    /// Build from rational coefficients `(p, q)` of `1, z, ..., z^15`.
    pub fn from_coeffs(coeffs: &[(i128, i128)]) -> Self {
        let mut den: i128 = 1;
        for &(_, q) in coeffs {
            assert!(q != 0, "zero denominator");
            den = ck_mul(den / gcd(den, q), q.abs());
        }
        let mut c = vec![0i128; coeffs.len().max(DEGREE)];
        for (k, &(p, q)) in coeffs.iter().enumerate() {
            c[k] = ck_mul(p * q.signum(), den / q.abs());
        }
        Self::normalized(reduce_poly(c), den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.den == 1 && self.num[0] == 1 && self.num[1..].iter().all(|&x| x == 0)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|&x| x == 0)
    }

    /// The rational value `(p, q)` if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<(i128, i128)> {
        self.is_rational().then(|| (self.num[0], self.den))
    }

    pub fn as_integer(&self) -> Option<i128> {
        match self.as_rational() {
            Some((p, 1)) => Some(p),
            _ => None,
        }
    }

    /// Rational coefficient of `z^k` as `(numerator, denominator)` in lowest terms.
    pub fn coeff(&self, k: usize) -> (i128, i128) {
        let p = self.num[k];
        if p == 0 {
            return (0, 1);
        }
        let g = gcd(p, self.den);
        (p / g, self.den / g)
    }

    /// Number of nonzero coefficients; a rough size measure used for pivoting.
    pub fn weight(&self) -> usize {
        self.num.iter().filter(|&&x| x != 0).count()
    }

    /// Apply the Galois automorphism `z -> z^k` (`k` coprime to 48).
    pub fn galois(&self, k: i64) -> Self {
        debug_assert!(GALOIS_UNITS.contains(&k.rem_euclid(ORDER)));
        let mut c = vec![0i128; ORDER as usize];
        for (j, &v) in self.num.iter().enumerate() {
            if v != 0 {
                let e = (j as i64 * k).rem_euclid(ORDER) as usize;
                c[e] = ck_add(c[e], v);
            }
        }
        // z^24 = -1 folds the upper half down before the polynomial reduction.
        for e in 24..48 {
            let v = c[e];
            if v != 0 {
                c[e - 24] = ck_add(c[e - 24], -v);
                c[e] = 0;
            }
        }
        c.truncate(24);
        Self::normalized(reduce_poly(c), self.den)
    }

    /// Complex conjugation, `z -> z^-1`.
    pub fn conj(&self) -> Self {
        self.galois(ORDER - 1)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some((p, q)) = self.as_rational() {
            let mut num = [0; DEGREE];
            num[0] = q;
            return Ok(Self::normalized(num, p));
        }
        // a^-1 = (product of the other conjugates) / norm(a); the intermediate
        // product outgrows i128 long before the reduced inverse does.
        let num: Vec<BigInt> = self.num.iter().map(|&x| BigInt::from(x)).collect();
        let mut rest = big_one();
        for &k in &GALOIS_UNITS[1..] {
            rest = big_mul(&rest, &big_galois(&num, k));
        }
        let norm = big_mul(&num, &rest);
        debug_assert!(norm[1..].iter().all(Zero::is_zero), "field norm must be rational");
        let mut den = norm[0].clone();
        let mut out: Vec<BigInt> = rest.iter().map(|x| x * self.den).collect();
        let g = out.iter().fold(den.clone(), |g, x| g.gcd(x));
        if den.is_negative() {
            den = -den;
            out.iter_mut().for_each(|x| *x = -&*x);
        }
        let fit = |x: &BigInt| i128::try_from(&(x / &g)).map_err(|_| CycloError::Overflow);
        let mut small = [0i128; DEGREE];
        for (o, x) in small.iter_mut().zip(&out) {
            *o = fit(x)?;
        }
        Ok(Self::normalized(small, fit(&den)?))
    }

    pub fn div(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let mut num = self.num;
        for x in num.iter_mut() {
            *x = ck_mul(*x, k as i128);
        }
        Self::normalized(num, self.den)
    }

    /// Evaluate a rational-coefficient polynomial at this element (Horner).
    pub fn eval_poly(&self, coeffs_low_first: &[i64]) -> Self {
        let mut acc = Self::zero();
        for &c in coeffs_low_first.iter().rev() {
            acc = &(&acc * self) + &Self::from_int(c);
        }
        acc
    }

    // Named constants.

    pub fn i() -> Self {
        Self::zeta(12)
    }

    pub fn omega() -> Self {
        Self::zeta(16)
    }

    pub fn sqrt2() -> Self {
        &Self::zeta(6) + &Self::zeta(-6)
    }

    pub fn sqrt3() -> Self {
        &Self::zeta(4) + &Self::zeta(-4)
    }

    pub fn inv_sqrt2() -> Self {
        Self::sqrt2().mul_ratio(1, 2)
    }

    /// `cos(k*pi/8) = (z^{3k} + z^{-3k}) / 2`.
    pub fn cos_pi8(k: i64) -> Self {
        (&Self::zeta(3 * k) + &Self::zeta(-3 * k)).mul_ratio(1, 2)
    }

    /// `sin(k*pi/8) = (z^{3k} - z^{-3k}) / 2i`.
    pub fn sin_pi8(k: i64) -> Self {
        let d = &Self::zeta(3 * k) - &Self::zeta(-3 * k);
        // 1/(2i) = -i/2
        &d * &Self::zeta(-12).mul_ratio(1, 2)
    }

    pub fn mul_ratio(&self, p: i64, q: i64) -> Self {
        let mut num = self.num;
        for x in num.iter_mut() {
            *x = ck_mul(*x, p as i128);
        }
        Self::normalized(num, ck_mul(self.den, q as i128))
    }

    /// Look up a named constant: `sqrt2`, `sqrt3`, `i`, `omega`, `cos(k)`,
    /// `sin(k)` (argument in units of `pi/8`), `zeta(k)`, or a rational `p/q`.
    pub fn named(name: &str) -> Result<Self, CycloError> {
        let s = name.trim();
        let arg = |prefix: &str| -> Option<i64> {
            s.strip_prefix(prefix)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.trim().parse().ok())
        };
        match s {
            "sqrt2" => return Ok(Self::sqrt2()),
            "sqrt3" => return Ok(Self::sqrt3()),
            "i" => return Ok(Self::i()),
            "omega" => return Ok(Self::omega()),
            "omega2" => return Ok(Self::omega().pow(2)),
            _ => {}
        }
        if let Some(k) = arg("cos") {
            return Ok(Self::cos_pi8(k));
        }
        if let Some(k) = arg("sin") {
            return Ok(Self::sin_pi8(k));
        }
        if let Some(k) = arg("zeta") {
            return Ok(Self::zeta(k));
        }
        parse_rational(s)
            .map(|(p, q)| Self::normalized(rat_num(p), q))
            .ok_or_else(|| CycloError::UnknownConstant(s.to_string()))
    }
}

fn rat_num(p: i128) -> [i128; DEGREE] {
    let mut num = [0; DEGREE];
    num[0] = p;
    num
}

fn parse_rational(s: &str) -> Option<(i128, i128)> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i128 = q.trim().parse().ok()?;
            (q != 0).then_some(())?;
            Some((p.trim().parse().ok()?, q))
        }
        None => Some((s.parse().ok()?, 1)),
    }
}

impl Default for CycloElt {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a CycloElt> for &'a CycloElt {
    type Output = CycloElt;
    fn add(self, rhs: &CycloElt) -> CycloElt {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let g = gcd(self.den, rhs.den);
        let (fa, fb) = (rhs.den / g, self.den / g);
        let mut num = [0i128; DEGREE];
        for k in 0..DEGREE {
            num[k] = ck_add(ck_mul(self.num[k], fa), ck_mul(rhs.num[k], fb));
        }
        CycloElt::normalized(num, ck_mul(self.den, fa))
    }
}

impl<'a> Sub<&'a CycloElt> for &'a CycloElt {
    type Output = CycloElt;
    fn sub(self, rhs: &CycloElt) -> CycloElt {
        self + &(-rhs)
    }
}

impl Neg for &CycloElt {
    type Output = CycloElt;
    fn neg(self) -> CycloElt {
        let mut num = self.num;
        for x in num.iter_mut() {
            *x = -*x;
        }
        CycloElt { den: self.den, num }
    }
}

impl Neg for CycloElt {
    type Output = CycloElt;
    fn neg(self) -> CycloElt {
        -&self
    }
}

impl<'a> Mul<&'a CycloElt> for &'a CycloElt {
    type Output = CycloElt;
    fn mul(self, rhs: &CycloElt) -> CycloElt {
        if self.is_zero() || rhs.is_zero() {
            return CycloElt::zero();
        }
        if self.is_rational() && rhs.is_rational() {
            return CycloElt::normalized(rat_num(ck_mul(self.num[0], rhs.num[0])), ck_mul(self.den, rhs.den));
        }
        let mut c = vec![0i128; 2 * DEGREE - 1];
        for (i, &a) in self.num.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.num.iter().enumerate() {
                if b != 0 {
                    c[i + j] = ck_add(c[i + j], ck_mul(a, b));
                }
            }
        }
        CycloElt::normalized(reduce_poly(c), ck_mul(self.den, rhs.den))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloElt> for CycloElt {
            type Output = CycloElt;
            fn $m(self, rhs: CycloElt) -> CycloElt {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in 0..DEGREE {
            let (p, q) = self.coeff(k);
            if p == 0 {
                continue;
            }
            let mag = if q == 1 { format!("{}", p.abs()) } else { format!("{}/{}", p.abs(), q) };
            if first {
                if p < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if p < 0 { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*z")?,
                _ => write!(f, "{mag}*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({self})")
    }
}

impl FromStr for CycloElt {
    type Err = CycloError;

    /// Parses sums of terms `c`, `c*z`, `c*z^k`, `z`, `z^k` where `c` is an
    /// integer or `p/q`. Exponents may exceed 15; they are reduced.
    fn from_str(s: &str) -> Result<Self, CycloError> {
        let err = || CycloError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        // split into signed terms
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (idx, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(cur.is_empty() && idx == 0) && !cur.ends_with('^') {
                if cur.is_empty() {
                    return Err(err());
                }
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && idx == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(err());
        }
        terms.push((neg, cur));
        let mut acc = CycloElt::zero();
        for (neg, t) in terms {
            let (coef, power) = match t.split_once('z') {
                None => (t.as_str(), None),
                Some((c, rest)) => {
                    let c = c.strip_suffix('*').unwrap_or(c);
                    let e: i64 = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?
                    };
                    (c, Some(e))
                }
            };
            let (p, q) = if coef.is_empty() { (1, 1) } else { parse_rational(coef).ok_or_else(err)? };
            let mut term = CycloElt::normalized(rat_num(p), q);
            if let Some(e) = power {
                term = &term * &CycloElt::zeta(e);
            }
            acc = if neg { &acc - &term } else { &acc + &term };
        }
        Ok(acc)
    }
}

impl Serialize for CycloElt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CycloElt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The four basic field operations, for callers that pick one at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(a: &CycloElt, b: &CycloElt, op: FieldOp) -> Result<CycloElt, CycloError> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.div(b)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64) -> CycloElt {
        CycloElt::zeta(k)
    }

    #[test]
    fn root_of_unity_order() {
        assert!((&z(16) * &z(32)).is_one());
        assert_eq!(z(24), -CycloElt::one());
        assert!(z(48).is_one());
    }

    #[test]
    fn sqrt2_squared() {
        let s = &z(6) + &z(-6);
        assert_eq!(&s * &s, CycloElt::from_int(2));
        let inv = s.inv().unwrap();
        assert!((&inv * &s).is_one());
    }

    #[test]
    fn cyclotomic_polynomial_vanishes() {
        let zeta = z(1);
        assert!(zeta.eval_poly(&[1, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 1]).is_zero());
    }

    #[test]
    fn trig_constants() {
        assert_eq!(CycloElt::cos_pi8(2), CycloElt::sqrt2().mul_ratio(1, 2));
        let c = CycloElt::cos_pi8(1);
        let half_angle = (&CycloElt::from_int(2) + &CycloElt::sqrt2()).mul_ratio(1, 4);
        assert_eq!(&c * &c, half_angle);
        assert!((&CycloElt::sin_pi8(1) - &CycloElt::cos_pi8(3)).is_zero());
        let (s, c) = (CycloElt::sin_pi8(3), CycloElt::cos_pi8(3));
        assert!((&(&s * &s) + &(&c * &c)).is_one());
    }

    #[test]
    fn named_constants_reality() {
        for name in ["sqrt2", "sqrt3", "cos(1)", "sin(5)", "cos(7)", "3/7"] {
            assert!(CycloElt::named(name).unwrap().is_real(), "{name}");
        }
        assert!(!CycloElt::i().is_real());
        assert!(!CycloElt::omega().is_real());
        let w = CycloElt::omega();
        assert!(w.pow(3).is_one());
        assert!((&(&CycloElt::one() + &w) + &w.pow(2)).is_zero());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(CycloElt::one().div(&CycloElt::zero()), Err(CycloError::DivisionByZero));
        assert_eq!(
            field_arith(&CycloElt::one(), &CycloElt::zero(), FieldOp::Div),
            Err(CycloError::DivisionByZero)
        );
    }

    #[test]
    fn text_round_trip() {
        let x = &CycloElt::cos_pi8(1) + &z(7).mul_ratio(-3, 5);
        let s = x.to_string();
        assert_eq!(s.parse::<CycloElt>().unwrap(), x);
        assert_eq!("0".parse::<CycloElt>().unwrap(), CycloElt::zero());
        assert_eq!("-1/2 + z^24".parse::<CycloElt>().unwrap(), CycloElt::from_ratio(-3, 2));
        assert!("1 +".parse::<CycloElt>().is_err());
    }
}
