use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// Arbitrary-precision rational in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in an `i64` (excluding
/// `i64::MIN`) are stored inline; everything else is boxed. The split is
/// canonical, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(Ratio::from_integer(0)))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(Ratio::from_integer(1)))
    }

    pub fn from_integer(n: i64) -> Self {
        if n == i64::MIN {
            Self::from_big(BigRational::from_integer(BigInt::from(n)))
        } else {
            Rational(Repr::Small(Ratio::from_integer(n)))
        }
    }

    /// `num / den`; errors on a zero denominator.
    pub fn new(num: i64, den: i64) -> Result<Self, ExactError> {
        if den == 0 {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::from_big(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::from_big(BigRational::new(num, den)))
    }

    /// Canonicalizes a big rational, demoting it to the inline form when it fits.
    pub fn from_big(q: BigRational) -> Self {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rational(Repr::Small(Ratio::new_raw(n, d))),
            _ => Rational(Repr::Big(Box::new(q))),
        }
    }

    fn from_small(q: Ratio<i64>) -> Self {
        if *q.numer() == i64::MIN {
            Self::from_big(small_to_big(&q))
        } else {
            Rational(Repr::Small(q))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(q) => small_to_big(q),
            Repr::Big(q) => (**q).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(q) => BigInt::from(*q.numer()),
            Repr::Big(q) => q.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(q) => BigInt::from(*q.denom()),
            Repr::Big(q) => q.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(q) => q.is_zero(),
            Repr::Big(q) => q.is_zero(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(q) => q.is_integer(),
            Repr::Big(q) => q.is_integer(),
        }
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match &self.0 {
            Repr::Small(q) => q.numer().signum() as i8,
            Repr::Big(q) => {
                if q.is_positive() {
                    1
                } else if q.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn add(&self, other: &Rational) -> Rational {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(s) = a.checked_add(b) {
                return Self::from_small(s);
            }
        }
        Self::from_big(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(s) = a.checked_sub(b) {
                return Self::from_small(s);
            }
        }
        Self::from_big(self.to_big() - other.to_big())
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(s) = a.checked_mul(b) {
                return Self::from_small(s);
            }
        }
        Self::from_big(self.to_big() * other.to_big())
    }

    pub fn neg(&self) -> Rational {
        match &self.0 {
            // i64::MIN never appears inline, so negation cannot overflow
            Repr::Small(q) => Rational(Repr::Small(-*q)),
            Repr::Big(q) => Self::from_big(-(**q).clone()),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Guaranteed enclosure `[lo, hi]` of the value by finite-or-infinite doubles.
    pub fn enclosure_f64(&self) -> (f64, f64) {
        const EXACT: i64 = 1 << 53;
        if let Repr::Small(q) = &self.0 {
            let (n, d) = (*q.numer(), *q.denom());
            if n.abs() <= EXACT && d <= EXACT {
                if d == 1 {
                    let x = n as f64;
                    return (x, x);
                }
                // both operands exact, so the quotient is within half an ulp
                let x = n as f64 / d as f64;
                return (x.next_down(), x.next_up());
            }
        }
        let exact = self.to_big();
        let guess = exact.to_f64().unwrap_or(f64::NAN);
        if !guess.is_finite() {
            return if exact.is_positive() {
                (f64::MAX, f64::INFINITY)
            } else {
                (f64::NEG_INFINITY, f64::MIN)
            };
        }
        let mut lo = guess;
        while lo > f64::MIN && BigRational::from_float(lo).is_none_or(|v| v > exact) {
            lo = lo.next_down();
        }
        let mut hi = guess;
        while hi < f64::MAX && BigRational::from_float(hi).is_none_or(|v| v < exact) {
            hi = hi.next_up();
        }
        let lo = if BigRational::from_float(lo).is_some_and(|v| v <= exact) { lo } else { f64::NEG_INFINITY };
        let hi = if BigRational::from_float(hi).is_some_and(|v| v >= exact) { hi } else { f64::INFINITY };
        (lo, hi)
    }

    /// Is this the square of a rational? Returns the root when it is.
    pub fn rational_sqrt(&self) -> Option<Rational> {
        if self.signum() < 0 {
            return None;
        }
        let (n, d) = (self.numer(), self.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        if &rn * &rn == n && &rd * &rd == d {
            Some(Self::from_big(BigRational::new(rn, rd)))
        } else {
            None
        }
    }
}

fn small_to_big(q: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            let lhs = i128::from(*a.numer()) * i128::from(*b.denom());
            let rhs = i128::from(*b.numer()) * i128::from(*a.denom());
            return lhs.cmp(&rhs);
        }
        self.to_big().cmp(&other.to_big())
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Self::from_big(q)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Repr::Small(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Repr::Big(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Repr::Big(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `int ['/' posint]` with an optional leading sign and no inner whitespace.
impl FromStr for Rational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ExactError::Syntax { input: s.to_string(), pos: 0, expected: "rational literal" };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num: BigInt = parse_int(num, true).ok_or_else(bad)?;
        let den: BigInt = match den {
            Some(d) => parse_int(d, false).ok_or_else(bad)?,
            None => BigInt::one(),
        };
        Self::from_bigints(num, den)
    }
}

fn parse_int(s: &str, signed: bool) -> Option<BigInt> {
    let digits = if signed { s.strip_prefix(['-', '+']).unwrap_or(s) } else { s };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}
