use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{ExactError, Rational};

/// Square root of a positive rational that is not a rational square.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BasisElement {
    radicand: Rational,
    label: String,
}

impl BasisElement {
    pub fn sqrt(radicand: Rational) -> Result<Self, ExactError> {
        if radicand.signum() <= 0 {
            return Err(ExactError::InvalidBasis(format!("radicand {radicand} is not positive")));
        }
        if radicand.rational_sqrt().is_some() {
            return Err(ExactError::PerfectSquareRadicand(radicand.to_string()));
        }
        let label = format!("sqrt({radicand})");
        Ok(BasisElement { radicand, label })
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Dyadic enclosure `[m / 2^bits, (m + 1) / 2^bits]` of the root.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let scale = BigInt::one() << bits;
        // floor(sqrt(floor(N))) == floor(sqrt(N)) for real N >= 0
        let scaled = (self.radicand.numer() << (2 * bits as usize)) / self.radicand.denom();
        let m = scaled.sqrt();
        let lo = BigRational::new(m.clone(), scale.clone());
        let hi = BigRational::new(m + 1u32, scale);
        (lo, hi)
    }
}

/// Ordered set of irrationals `beta_1..beta_m` such that `{1, beta_1, .., beta_m}`
/// is linearly independent over the rationals.
///
/// Only square roots are admitted. Two roots are rejected when their ratio is
/// rational; the remaining family is independent because square roots of
/// distinct square-free integers are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Basis {
    elements: Vec<BasisElement>,
    /// outward-rounded double enclosures of each element
    approx: Vec<(ordered::F64, ordered::F64)>,
}

mod ordered {
    /// Bitwise-compared double, so `Basis` can derive `Eq`/`Hash`.
    #[derive(Clone, Copy, Debug)]
    pub struct F64(pub f64);

    impl PartialEq for F64 {
        fn eq(&self, other: &Self) -> bool {
            self.0.to_bits() == other.0.to_bits()
        }
    }
    impl Eq for F64 {}
    impl std::hash::Hash for F64 {
        fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
            self.0.to_bits().hash(state)
        }
    }
}

impl Basis {
    /// The empty basis: plain rationals.
    pub fn rational() -> Self {
        Basis { elements: Vec::new(), approx: Vec::new() }
    }

    pub fn new(elements: Vec<BasisElement>) -> Result<Self, ExactError> {
        for (i, a) in elements.iter().enumerate() {
            for b in &elements[..i] {
                // sqrt(a)/sqrt(b) rational <=> a*b is a rational square
                if a.radicand.mul(&b.radicand).rational_sqrt().is_some() {
                    return Err(ExactError::InvalidBasis(format!(
                        "{} and {} are rationally dependent",
                        b.label, a.label
                    )));
                }
            }
        }
        let approx = elements
            .iter()
            .map(|e| {
                let (lo, hi) = e.enclosure(96);
                let lo = Rational::from_big(lo).enclosure_f64().0;
                let hi = Rational::from_big(hi).enclosure_f64().1;
                (ordered::F64(lo), ordered::F64(hi))
            })
            .collect();
        Ok(Basis { elements, approx })
    }

    pub fn from_radicands<I: IntoIterator<Item = Rational>>(radicands: I) -> Result<Self, ExactError> {
        Self::new(radicands.into_iter().map(BasisElement::sqrt).collect::<Result<_, _>>()?)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn position(&self, radicand: &Rational) -> Option<usize> {
        self.elements.iter().position(|e| &e.radicand == radicand)
    }

    pub(crate) fn approx(&self, j: usize) -> (f64, f64) {
        let (lo, hi) = self.approx[j];
        (lo.0, hi.0)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{1")?;
        for e in &self.elements {
            write!(f, ", {}", e.label)?;
        }
        f.write_str("}")
    }
}
