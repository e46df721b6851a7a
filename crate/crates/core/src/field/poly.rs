//! Dense univariate polynomials over the rationals.
//!
//! The indeterminate is `s = τ^(1/D)`; the context denominator `D` lives on
//! [`FieldElement`](super::FieldElement), not here.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Polynomial in one variable with rational coefficients.
///
/// `coeffs[i]` is the coefficient of `s^i`. Trailing zeros are never
/// stored, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self { coeffs }
    }

    /// Builds from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Nonzero terms as `(degree, coefficient)`, lowest degree first.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest degree carrying a nonzero coefficient (the `s`-adic order).
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn low_coeff(&self) -> Option<&Rational> {
        self.low_degree().map(|i| &self.coeffs[i])
    }

    pub fn lead_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms().count() == 1
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `s^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divides by `s^k`; every term must have degree at least `k`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.low_degree().is_none_or(|d| d >= k));
        if k == 0 {
            return self.clone();
        }
        Self {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    /// Substitutes `s -> s^m`.
    pub fn inflate(&self, m: usize) -> Self {
        if m == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.terms() {
            coeffs[i * m] = c.clone();
        }
        Self { coeffs }
    }

    /// Substitutes `s^m -> s`; every term degree must be a multiple of `m`.
    pub fn deflate(&self, m: usize) -> Self {
        if m == 1 || self.is_zero() {
            return self.clone();
        }
        debug_assert!(self.terms().all(|(i, _)| i % m == 0));
        Self {
            coeffs: self.coeffs.iter().step_by(m).cloned().collect(),
        }
    }

    /// Gcd of the degrees of all nonzero terms; 0 when only a constant term exists.
    pub fn exponent_gcd(&self) -> usize {
        self.terms().fold(0usize, |g, (i, _)| g.gcd(&i))
    }

    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        if divisor.is_monomial() {
            let (k, c) = divisor.terms().next().map(|(k, c)| (k, c.clone())).unwrap();
            let q = self.shift_down(k);
            return if c.is_one() { q } else { q.scale(&c.recip()) };
        }
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        // Powers of s split off cheaply; the s-free parts go through Euclid.
        let k = a.low_degree().unwrap().min(b.low_degree().unwrap());
        let a0 = a.shift_down(a.low_degree().unwrap());
        let b0 = b.shift_down(b.low_degree().unwrap());
        let core = if a0.degree() == Some(0) || b0.degree() == Some(0) {
            Self::one()
        } else {
            integer_gcd(&a0, &b0)
        };
        core.shift_up(k)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Writes the polynomial in `t`, rendering `s^i` as `t^(i/denom)`,
    /// and shifting every exponent by `offset` (in units of `s`).
    pub(crate) fn fmt_in_t(&self, denom: u32, offset: i64, f: &mut impl fmt::Write) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.terms() {
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let exp = Rational::new((i as i64 + offset).into(), (denom as i64).into());
            write_term(&mag, &exp, f)?;
        }
        Ok(())
    }
}

fn write_term(mag: &Rational, exp: &Rational, f: &mut impl fmt::Write) -> fmt::Result {
    if exp.is_zero() {
        return write!(f, "{mag}");
    }
    if !mag.is_one() {
        write!(f, "{mag}*")?;
    }
    f.write_str("t")?;
    if exp.is_one() {
        Ok(())
    } else if exp.is_integer() {
        write!(f, "^{exp}")
    } else {
        write!(f, "^({exp})")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.fmt_in_t(1, 0, &mut s)?;
        write!(f, "Polynomial({})", s.replace('t', "s"))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, Rational::zero());
        for (c, d) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= d;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

/// Primes below 2^31, so residue products fit in a `u64`.
const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Integer polynomial proportional to `p` with unit content and positive leading coefficient.
fn primitive(p: &Polynomial) -> Vec<BigInt> {
    let l = p.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let v: Vec<BigInt> = p.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    primitive_part(v)
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if v.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for c in &mut v {
            *c = &*c / &g;
        }
    }
    v
}

/// Residues mod `p`; `None` if the leading coefficient vanishes.
fn residues(v: &[BigInt], p: u64) -> Option<Vec<u64>> {
    let pb = BigInt::from(p);
    let r: Vec<u64> = v.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    (r.last() != Some(&0)).then_some(r)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Degree of the gcd over `F_p`.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let c = a.last().unwrap() * inv % p;
            let off = a.len() - b.len();
            for (j, bc) in b.iter().enumerate() {
                a[off + j] = (a[off + j] + p - c * bc % p) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Pseudo-remainder of `a` by `b` over the integers.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let off = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[off + j] -= &lr * bc;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// Monic gcd of two nonzero polynomials with nonzero constant terms.
///
/// Coprimality modulo a prime settles the common case; otherwise a
/// primitive remainder sequence keeps coefficients from swelling.
fn integer_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (mut x, mut y) = (primitive(a), primitive(b));
    for p in PRIMES {
        if let (Some(xr), Some(yr)) = (residues(&x, p), residues(&y, p)) {
            if gcd_degree_mod(xr, yr, p) == 0 {
                return Polynomial::one();
            }
            break;
        }
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let r = primitive_part(prem(&x, &y));
        x = y;
        y = r;
    }
    if y.len() == 1 {
        return Polynomial::one();
    }
    Polynomial::from_coeffs(x.into_iter().map(Rational::from_integer).collect()).monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn division_with_remainder() {
        // (s^2 + 3s + 5) = (s + 1)(s + 2) + 3
        let (q, r) = p(&[5, 3, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[2, 1]));
        assert_eq!(r, p(&[3]));
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = p(&[1, 1]);
        let a = &f * &p(&[-2, 0, 1]);
        let b = &f * &p(&[3, 1]);
        assert_eq!(Polynomial::gcd(&a, &b), f);
        // s-power parts
        let a = p(&[0, 0, 2, 2]);
        let b = p(&[0, 3]);
        assert_eq!(Polynomial::gcd(&a, &b), p(&[0, 1]));
    }

    #[test]
    fn inflate_deflate() {
        let a = p(&[1, 0, 2]);
        assert_eq!(a.inflate(3), p(&[1, 0, 0, 0, 0, 0, 2]));
        assert_eq!(a.inflate(3).deflate(3), a);
        assert_eq!(a.exponent_gcd(), 2);
        assert_eq!(p(&[4]).exponent_gcd(), 0);
    }
}
