use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Basis, ExactError, PrecisionContext, Rational};

/// `c0 + c1*beta_1 + ... + cm*beta_m` with rational coefficients over a shared basis.
///
/// Every scalar carries an outward-rounded double enclosure of its value. Most
/// comparisons are decided by that enclosure alone; the rest fall through to
/// exact dyadic enclosures of increasing precision.
#[derive(Clone)]
pub struct ExactScalar {
    basis: Arc<Basis>,
    coeffs: Box<[Rational]>,
    approx: (f64, f64),
}

impl ExactScalar {
    /// `coeffs[0]` is the constant term; the rest follow the basis order.
    pub fn new(basis: Arc<Basis>, coeffs: Vec<Rational>) -> Result<Self, ExactError> {
        if coeffs.len() != basis.len() + 1 {
            return Err(ExactError::CoefficientCount { expected: basis.len() + 1, got: coeffs.len() });
        }
        Ok(Self::from_parts(basis, coeffs.into_boxed_slice()))
    }

    pub fn rational(basis: Arc<Basis>, value: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); basis.len() + 1];
        coeffs[0] = value;
        Self::from_parts(basis, coeffs.into_boxed_slice())
    }

    pub fn zero(basis: Arc<Basis>) -> Self {
        Self::rational(basis, Rational::zero())
    }

    pub fn one(basis: Arc<Basis>) -> Self {
        Self::rational(basis, Rational::one())
    }

    fn from_parts(basis: Arc<Basis>, coeffs: Box<[Rational]>) -> Self {
        let approx = approximate(&basis, &coeffs);
        ExactScalar { basis, coeffs, approx }
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Exact zero test: with an independent basis, zero iff every coefficient is.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// Double enclosure `[lo, hi]` of the value.
    pub fn approx(&self) -> (f64, f64) {
        self.approx
    }

    /// Midpoint of the double enclosure, for display and sampling only.
    pub fn to_f64(&self) -> f64 {
        0.5 * self.approx.0 + 0.5 * self.approx.1
    }

    pub fn same_basis(&self, other: &ExactScalar) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis
    }

    fn check_basis(&self, other: &ExactScalar) -> Result<(), ExactError> {
        if self.same_basis(other) {
            Ok(())
        } else {
            Err(ExactError::BasisMismatch { left: self.basis.to_string(), right: other.basis.to_string() })
        }
    }

    pub fn try_add(&self, other: &ExactScalar) -> Result<ExactScalar, ExactError> {
        self.check_basis(other)?;
        Ok(self.zip_with(other, Rational::add))
    }

    pub fn try_sub(&self, other: &ExactScalar) -> Result<ExactScalar, ExactError> {
        self.check_basis(other)?;
        Ok(self.zip_with(other, Rational::sub))
    }

    fn zip_with(&self, other: &ExactScalar, f: impl Fn(&Rational, &Rational) -> Rational) -> ExactScalar {
        let coeffs = self.coeffs.iter().zip(other.coeffs.iter()).map(|(a, b)| f(a, b)).collect();
        Self::from_parts(self.basis.clone(), coeffs)
    }

    pub fn scale(&self, factor: &Rational) -> ExactScalar {
        let coeffs = self.coeffs.iter().map(|c| c.mul(factor)).collect();
        Self::from_parts(self.basis.clone(), coeffs)
    }

    /// Certified enclosure of the value using `bits`-bit dyadic root enclosures.
    pub fn enclose(&self, bits: u32) -> (BigRational, BigRational) {
        let mut lo = self.coeffs[0].to_big();
        let mut hi = lo.clone();
        for (c, e) in self.coeffs[1..].iter().zip(self.basis.elements()) {
            if c.is_zero() {
                continue;
            }
            let (rlo, rhi) = e.enclosure(bits);
            let c = c.to_big();
            if c.is_positive() {
                lo += &c * rlo;
                hi += &c * rhi;
            } else {
                lo += &c * rhi;
                hi += &c * rlo;
            }
        }
        (lo, hi)
    }

    /// Sign of the value: exact for zero, certified numerically otherwise.
    pub fn sign(&self, ctx: &PrecisionContext) -> Result<i8, ExactError> {
        if self.is_zero() {
            return Ok(0);
        }
        if self.is_rational() {
            return Ok(self.coeffs[0].signum());
        }
        let (lo, hi) = self.approx;
        if lo > 0.0 {
            return Ok(1);
        }
        if hi < 0.0 {
            return Ok(-1);
        }
        let mut bits = ctx.start_bits;
        loop {
            let (lo, hi) = self.enclose(bits);
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            if bits >= ctx.max_bits {
                return Err(ExactError::PrecisionExhausted { max_bits: ctx.max_bits, value: self.to_string() });
            }
            bits = bits.saturating_mul(2).min(ctx.max_bits);
        }
    }

    /// Total order on scalars over one basis.
    pub fn compare(&self, other: &ExactScalar, ctx: &PrecisionContext) -> Result<Ordering, ExactError> {
        self.check_basis(other)?;
        if self.coeffs == other.coeffs {
            return Ok(Ordering::Equal);
        }
        if self.approx.1 < other.approx.0 {
            return Ok(Ordering::Less);
        }
        if self.approx.0 > other.approx.1 {
            return Ok(Ordering::Greater);
        }
        Ok(self.zip_with(other, Rational::sub).sign(ctx)?.cmp(&0))
    }

    pub fn lt(&self, other: &ExactScalar, ctx: &PrecisionContext) -> Result<bool, ExactError> {
        Ok(self.compare(other, ctx)? == Ordering::Less)
    }

    pub fn le(&self, other: &ExactScalar, ctx: &PrecisionContext) -> Result<bool, ExactError> {
        Ok(self.compare(other, ctx)? != Ordering::Greater)
    }

    /// Decimal expansion with `digits` fractional digits, rounded half away from zero.
    pub fn to_decimal(&self, digits: u32, ctx: &PrecisionContext) -> Result<Decimal, ExactError> {
        if digits > 1000 {
            return Err(ExactError::TooManyDigits(digits));
        }
        let scale = BigRational::from_integer(BigInt::from(10u32).pow(digits));
        if self.is_rational() {
            let n = round_half_away(&(self.coeffs[0].to_big() * &scale));
            return Ok(Decimal { text: format_scaled(&n, digits), unresolved: false });
        }
        // log2(10) < 3.33
        let needed = (digits as u64 * 333 / 100 + 32).min(u32::MAX as u64) as u32;
        let mut bits = ctx.start_bits.max(needed).min(ctx.max_bits.max(needed));
        let cap = ctx.max_bits.max(needed);
        loop {
            let (lo, hi) = self.enclose(bits);
            let rlo = round_half_away(&(&lo * &scale));
            let rhi = round_half_away(&(&hi * &scale));
            if rlo == rhi {
                return Ok(Decimal { text: format_scaled(&rlo, digits), unresolved: false });
            }
            if bits >= cap {
                let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
                let n = round_half_away(&(mid * &scale));
                return Ok(Decimal { text: format_scaled(&n, digits), unresolved: true });
            }
            bits = bits.saturating_mul(2).min(cap);
        }
    }

    /// Twelve-digit decimal used in reports.
    pub fn decimal12(&self, ctx: &PrecisionContext) -> Result<String, ExactError> {
        Ok(self.to_decimal(12, ctx)?.text)
    }
}

/// A decimal rendering; `unresolved` marks a midpoint reported because the
/// enclosure still straddled a rounding boundary at the precision cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    pub text: String,
    pub unresolved: bool,
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)?;
        if self.unresolved {
            f.write_str(" (unresolved)")?;
        }
        Ok(())
    }
}

fn round_half_away(q: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    let (n, d) = (q.numer(), q.denom());
    // floor((2|n| + d) / 2d) with the sign restored
    let mag = (n.abs() * &two + d).div_floor(&(d * &two));
    if n.is_negative() {
        -mag
    } else {
        mag
    }
}

fn format_scaled(n: &BigInt, digits: u32) -> String {
    let neg = n.is_negative() && !n.is_zero();
    let mut body = n.abs().to_string();
    let digits = digits as usize;
    if body.len() <= digits {
        body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
    }
    let split = body.len() - digits;
    let (int, frac) = body.split_at(split);
    let mut out = String::with_capacity(body.len() + 2);
    if neg {
        out.push('-');
    }
    out.push_str(int);
    if digits > 0 {
        out.push('.');
        out.push_str(frac);
    }
    out
}

fn approximate(basis: &Basis, coeffs: &[Rational]) -> (f64, f64) {
    let (mut lo, mut hi) = coeffs[0].enclosure_f64();
    for (j, c) in coeffs[1..].iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (clo, chi) = c.enclosure_f64();
        let (blo, bhi) = basis.approx(j);
        let (plo, phi) = if clo >= 0.0 {
            (clo * blo, chi * bhi)
        } else if chi <= 0.0 {
            (clo * bhi, chi * blo)
        } else {
            (clo * bhi, chi * bhi)
        };
        lo = (lo + plo.next_down()).next_down();
        hi = (hi + phi.next_up()).next_up();
    }
    if lo.is_nan() || hi.is_nan() {
        (f64::NEG_INFINITY, f64::INFINITY)
    } else {
        (lo, hi)
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        self.same_basis(other) && self.coeffs == other.coeffs
    }
}

impl Eq for ExactScalar {}

impl Hash for ExactScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state)
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({self})")
    }
}

/// Panics on a basis mismatch; use [`ExactScalar::try_add`] for untrusted operands.
impl Add for &ExactScalar {
    type Output = ExactScalar;

    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        self.try_add(rhs).expect("scalar addition across bases")
    }
}

/// Panics on a basis mismatch; use [`ExactScalar::try_sub`] for untrusted operands.
impl Sub for &ExactScalar {
    type Output = ExactScalar;

    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self.try_sub(rhs).expect("scalar subtraction across bases")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;

    fn neg(self) -> ExactScalar {
        ExactScalar::from_parts(self.basis.clone(), self.coeffs.iter().map(Rational::neg).collect())
    }
}
