use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{FieldContext, FieldError, Polynomial, Rational};

/// Exact element of ℚ(τ^(1/D)) in canonical form.
///
/// Canonical form: `num / den` with `gcd(num, den) = 1`, the lowest-order
/// coefficient of `den` equal to 1, zero stored as `0/1`, and `denom` the
/// smallest context denominator in which the element is expressible. Equal
/// elements are therefore structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    num: Polynomial,
    den: Polynomial,
    denom: u32,
}

impl FieldElement {
    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
            denom: 1,
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self {
            num: Polynomial::constant(q),
            den: Polynomial::one(),
            denom: 1,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// The infinitesimal `τ`.
    pub fn tau() -> Self {
        Self::tau_pow(&Rational::one())
    }

    /// The infinitely large element `𝒩 = τ⁻¹`.
    pub fn big_n() -> Self {
        Self::tau_pow(&-Rational::one())
    }

    /// `τ^q` for any rational `q`, in the minimal context `denom(q)`.
    pub fn tau_pow(q: &Rational) -> Self {
        let d: u32 = u32::try_from(q.denom()).expect("exponent denominator too large");
        let k: i64 = i64::try_from(q.numer()).expect("exponent numerator too large");
        let mono = Polynomial::monomial(Rational::one(), k.unsigned_abs() as usize);
        let (num, den) = if k >= 0 {
            (mono, Polynomial::one())
        } else {
            (Polynomial::one(), mono)
        };
        Self { num, den, denom: d }
    }

    /// `c · τ^q`.
    pub fn monomial(c: Rational, q: &Rational) -> Self {
        let t = Self::tau_pow(q);
        &Self::from_rational(c) * &t
    }

    /// Builds `num / den` over `s = τ^(1/denom)` and canonicalizes.
    pub fn from_parts(num: Polynomial, den: Polynomial, denom: u32) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if denom == 0 {
            return Err(FieldError::InvalidContext);
        }
        Ok(Self::canonical(num, den, denom))
    }

    fn canonical(num: Polynomial, den: Polynomial, denom: u32) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let k = num.low_degree().unwrap().min(den.low_degree().unwrap());
        let (mut num, mut den) = (num.shift_down(k), den.shift_down(k));
        if !(num.is_monomial() || den.is_monomial()) {
            let g = Polynomial::gcd(&num, &den);
            if !g.is_one() {
                num = num.exact_div(&g);
                den = den.exact_div(&g);
            }
        }
        let lc = den.low_coeff().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        let m = (denom as usize).gcd(&num.exponent_gcd()).gcd(&den.exponent_gcd());
        if m > 1 {
            num = num.deflate(m);
            den = den.deflate(m);
        }
        Self {
            num,
            den,
            denom: denom / m as u32,
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    /// Minimal context denominator of this element.
    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn context(&self) -> FieldContext {
        FieldContext { denom: self.denom }
    }

    /// Numerator and denominator re-expressed over `τ^(1/target)`.
    pub fn lifted(&self, target: u32) -> Result<(Polynomial, Polynomial), FieldError> {
        if target == 0 || !target.is_multiple_of(self.denom) {
            return Err(FieldError::ContextMismatch {
                source_denom: self.denom,
                target,
            });
        }
        let m = (target / self.denom) as usize;
        Ok((self.num.inflate(m), self.den.inflate(m)))
    }

    fn lift_pair(a: &Self, b: &Self) -> (u32, Polynomial, Polynomial, Polynomial, Polynomial) {
        let d = a.denom.lcm(&b.denom);
        let (an, ad) = a.lifted(d).expect("lcm is a common multiple");
        let (bn, bd) = b.lifted(d).expect("lcm is a common multiple");
        (d, an, ad, bn, bd)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Sign of the germ at `τ -> 0⁺`: -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self.num.low_coeff() {
            None => 0,
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Valuation: the lowest `τ`-exponent, `None` standing for `+∞` at zero.
    pub fn ord(&self) -> Option<Rational> {
        let n = self.num.low_degree()?;
        let d = self.den.low_degree().unwrap();
        Some(Rational::new(
            BigInt::from(n as i64 - d as i64),
            BigInt::from(self.denom),
        ))
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.ord().is_some_and(|o| o.is_positive())
    }

    /// `ord ≥ 0`: not infinitely large.
    pub fn is_at_most_finite(&self) -> bool {
        self.ord().is_none_or(|o| !o.is_negative())
    }

    /// Real part: the unique rational differing from `self` by an infinitesimal.
    pub fn rho(&self) -> Result<Rational, FieldError> {
        match self.ord() {
            None => Ok(Rational::zero()),
            Some(o) if o.is_negative() => Err(FieldError::InfinitelyLarge(self.to_string())),
            Some(o) if o.is_positive() => Ok(Rational::zero()),
            Some(_) => Ok(self.num.low_coeff().unwrap() / self.den.low_coeff().unwrap()),
        }
    }

    /// The rational value when `self` has no `τ`-dependence.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.den.is_one() && self.num.degree().is_none_or(|d| d == 0))
            .then(|| self.num.low_coeff().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn recip(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        let lc = den.low_coeff().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Self {
            num,
            den,
            denom: self.denom,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, FieldError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn positive_pair(a: &Self, b: &Self) -> Result<Rational, FieldError> {
        if !a.is_positive() || !b.is_positive() {
            return Err(FieldError::NonPositiveArgument);
        }
        Ok(a.ord().unwrap() - b.ord().unwrap())
    }

    /// `a ≺≺ b`: `a / b` is infinitesimal.
    pub fn rel_ll(a: &Self, b: &Self) -> Result<bool, FieldError> {
        Ok(Self::positive_pair(a, b)?.is_positive())
    }

    /// `a ≾ b`: `a / b` is at most finite.
    pub fn rel_lesssim(a: &Self, b: &Self) -> Result<bool, FieldError> {
        Ok(!Self::positive_pair(a, b)?.is_negative())
    }

    /// `a ≃ b`: `a / b` is finite and not infinitesimal.
    pub fn rel_simeq(a: &Self, b: &Self) -> Result<bool, FieldError> {
        Ok(Self::positive_pair(a, b)?.is_zero())
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a FieldElement>) -> Self {
        items.into_iter().fold(Self::zero(), |acc, x| &acc + x)
    }
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for FieldElement {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Both denominators have positive germs, so the sign of
    /// `a/b - c/d` is the sign of `ad - cb`.
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let (_, an, ad, bn, bd) = Self::lift_pair(self, other);
        let diff = &(&an * &bd) - &(&bn * &ad);
        match diff.low_coeff() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            num: -&self.num,
            den: self.den.clone(),
            denom: self.denom,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (d, an, ad, bn, bd) = FieldElement::lift_pair(self, rhs);
        if ad == bd {
            return FieldElement::canonical(&an + &bn, ad, d);
        }
        FieldElement::canonical(&(&an * &bd) + &(&bn * &ad), &ad * &bd, d)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        if self.is_zero() || rhs.is_zero() {
            return FieldElement::zero();
        }
        if let Some(q) = rhs.as_rational() {
            if q.is_one() {
                return self.clone();
            }
            return FieldElement {
                num: self.num.scale(&q),
                den: self.den.clone(),
                denom: self.denom,
            };
        }
        if let Some(q) = self.as_rational() {
            return FieldElement {
                num: rhs.num.scale(&q),
                den: rhs.den.clone(),
                denom: rhs.denom,
            };
        }
        let (d, an, ad, bn, bd) = FieldElement::lift_pair(self, rhs);
        // Cross-cancel so the product is already coprime.
        let g1 = Polynomial::gcd(&an, &bd);
        let g2 = Polynomial::gcd(&bn, &ad);
        let num = &an.exact_div(&g1) * &bn.exact_div(&g2);
        let den = &ad.exact_div(&g2) * &bd.exact_div(&g1);
        FieldElement::canonical(num, den, d)
    }
}

impl Div for &FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero; see [`FieldElement::checked_div`].
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("field division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement { (&self).$m(&rhs) }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement { (&self).$m(rhs) }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for FieldElement {
    /// Renders in the literal grammar accepted by [`super::parse_literal`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_monomial() {
            // den = s^k after normalization, so this is a Laurent polynomial.
            let k = self.den.low_degree().unwrap() as i64;
            let mut s = String::new();
            self.num.fmt_in_t(self.denom, -k, &mut s)?;
            return f.write_str(&s);
        }
        let mut n = String::new();
        let mut d = String::new();
        self.num.fmt_in_t(self.denom, 0, &mut n)?;
        self.den.fmt_in_t(self.denom, 0, &mut d)?;
        write!(f, "({n})/({d})")
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement[{self}]")
    }
}
