use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{Permutation, PermutationClass};
use crate::exact::{Basis, ExactScalar, PrecisionContext};
use crate::limits::Budget;
use crate::{Error, Result};

/// Which of the two maps: the left-closed `T` on `[0,1)` or its right-closed dual on `(0,1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    #[serde(rename = "T")]
    T,
    #[serde(rename = "dual")]
    Dual,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::T => "T",
            Variant::Dual => "dual",
        })
    }
}

/// Length vector and permutation, before validation.
#[derive(Clone, Debug)]
pub struct IetSpec {
    pub basis: Arc<Basis>,
    pub lengths: Vec<ExactScalar>,
    pub permutation: Permutation,
}

/// Piecewise translation on a partition `breaks[0] = 0 < .. < breaks[n] = 1`:
/// the piece with symbol `i` moves by `trans[i-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stepper {
    breaks: Vec<ExactScalar>,
    trans: Vec<ExactScalar>,
}

impl Stepper {
    pub fn breaks(&self) -> &[ExactScalar] {
        &self.breaks
    }

    pub fn translations(&self) -> &[ExactScalar] {
        &self.trans
    }

    /// One-indexed piece containing `x`: `[b_{i-1}, b_i)` for `T`, `(b_{i-1}, b_i]` for the dual.
    pub fn locate(&self, variant: Variant, x: &ExactScalar, ctx: &PrecisionContext) -> Result<usize> {
        let n = self.trans.len();
        let (zero, one) = (&self.breaks[0], &self.breaks[n]);
        let inside = match variant {
            Variant::T => zero.le(x, ctx)? && x.lt(one, ctx)?,
            Variant::Dual => zero.lt(x, ctx)? && x.le(one, ctx)?,
        };
        if !inside {
            let domain = match variant {
                Variant::T => "[0,1)",
                Variant::Dual => "(0,1]",
            };
            return Err(Error::Domain(format!("{x} not in {domain}")));
        }
        // largest i in 0..n with b_i <= x (T) or b_i < x (dual)
        let (mut lo, mut hi) = (0, n);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let below = matches!(
                (variant, self.breaks[mid].compare(x, ctx)?),
                (_, Ordering::Less) | (Variant::T, Ordering::Equal)
            );
            if below {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo + 1)
    }

    pub fn step(&self, variant: Variant, x: &ExactScalar, ctx: &PrecisionContext) -> Result<ExactScalar> {
        let i = self.locate(variant, x, ctx)?;
        Ok(x + &self.trans[i - 1])
    }
}

/// A validated interval exchange transformation together with its dual.
///
/// Breakpoints `b`, image breakpoints `b_tau` and translation constants are
/// computed once. Backward steps use the inverse transformation built from
/// `(a^tau, tau^-1)`, whose partition is `b_tau`.
#[derive(Clone, Debug)]
pub struct Iet {
    spec: IetSpec,
    class: PermutationClass,
    ctx: PrecisionContext,
    forward: Stepper,
    backward: Stepper,
}

impl Iet {
    pub fn build(spec: IetSpec) -> Result<Self> {
        Self::build_with_precision(spec, PrecisionContext::default())
    }

    pub fn build_with_precision(spec: IetSpec, ctx: PrecisionContext) -> Result<Self> {
        let n = spec.permutation.len();
        if spec.lengths.len() != n {
            return Err(Error::Invalid(format!("{} lengths for a permutation of {n}", spec.lengths.len())));
        }
        let zero = ExactScalar::zero(spec.basis.clone());
        let one = ExactScalar::one(spec.basis.clone());
        for (i, a) in spec.lengths.iter().enumerate() {
            if !a.same_basis(&zero) {
                return Err(Error::Invalid(format!("length {} is over a different basis", i + 1)));
            }
            if a.sign(&ctx)? <= 0 {
                return Err(Error::Invalid(format!("length {} = {a} is not positive", i + 1)));
            }
        }
        let b = prefix_sums(&zero, spec.lengths.iter());
        let defect = &b[n] - &one;
        if !defect.is_zero() {
            return Err(Error::Invalid(format!("lengths sum to 1 + ({defect}), not 1")));
        }
        let tau = &spec.permutation;
        let inv = tau.inverse();
        let b_tau = prefix_sums(&zero, (1..=n).map(|j| &spec.lengths[inv.apply(j) - 1]));
        let trans: Vec<_> = (1..=n).map(|i| &b_tau[tau.apply(i) - 1] - &b[i - 1]).collect();
        let back_trans: Vec<_> = (1..=n).map(|j| -&trans[inv.apply(j) - 1]).collect();
        let class = tau.classify();
        Ok(Iet {
            class,
            ctx,
            forward: Stepper { breaks: b, trans },
            backward: Stepper { breaks: b_tau, trans: back_trans },
            spec,
        })
    }

    /// The transformation of `(a^tau, tau^-1)`, which inverts this one.
    pub fn inverse(&self) -> Result<Iet> {
        let inv = self.spec.permutation.inverse();
        let lengths = (1..=self.n()).map(|j| self.spec.lengths[inv.apply(j) - 1].clone()).collect();
        let spec = IetSpec { basis: self.spec.basis.clone(), lengths, permutation: inv };
        Iet::build_with_precision(spec, self.ctx)
    }

    pub fn n(&self) -> usize {
        self.spec.permutation.len()
    }

    pub fn spec(&self) -> &IetSpec {
        &self.spec
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.spec.basis
    }

    pub fn permutation(&self) -> &Permutation {
        &self.spec.permutation
    }

    pub fn classification(&self) -> PermutationClass {
        self.class
    }

    pub fn precision(&self) -> &PrecisionContext {
        &self.ctx
    }

    /// `b_0 .. b_n`.
    pub fn breakpoints(&self) -> &[ExactScalar] {
        &self.forward.breaks
    }

    /// `b^tau_0 .. b^tau_n`.
    pub fn image_breakpoints(&self) -> &[ExactScalar] {
        &self.backward.breaks
    }

    /// The interior breakpoints `D = {b_1 .. b_{n-1}}`.
    pub fn interior_breakpoints(&self) -> &[ExactScalar] {
        &self.forward.breaks[1..self.n()]
    }

    /// `t_i = b^tau_{tau(i)-1} - b_{i-1}`.
    pub fn translations(&self) -> &[ExactScalar] {
        &self.forward.trans
    }

    pub fn forward(&self) -> &Stepper {
        &self.forward
    }

    pub fn backward(&self) -> &Stepper {
        &self.backward
    }

    pub fn zero(&self) -> &ExactScalar {
        &self.forward.breaks[0]
    }

    pub fn one(&self) -> &ExactScalar {
        &self.forward.breaks[self.n()]
    }

    pub fn compare(&self, a: &ExactScalar, b: &ExactScalar) -> Result<Ordering> {
        Ok(a.compare(b, &self.ctx)?)
    }

    /// One-indexed interval of `x`: `J_i` for `T`, the closed-right `J_i` for the dual.
    pub fn symbol(&self, variant: Variant, x: &ExactScalar) -> Result<usize> {
        self.forward.locate(variant, x, &self.ctx)
    }

    pub fn step(&self, variant: Variant, x: &ExactScalar) -> Result<ExactScalar> {
        self.forward.step(variant, x, &self.ctx)
    }

    pub fn step_back(&self, variant: Variant, x: &ExactScalar) -> Result<ExactScalar> {
        self.backward.step(variant, x, &self.ctx)
    }

    /// `power`-fold iterate of `T` or its dual; negative powers step the inverse.
    pub fn apply(&self, variant: Variant, power: i64, x: &ExactScalar) -> Result<ExactScalar> {
        self.apply_budgeted(variant, power, x, &Budget::new(crate::Limits::default().max_steps))
    }

    pub fn apply_budgeted(&self, variant: Variant, power: i64, x: &ExactScalar, budget: &Budget) -> Result<ExactScalar> {
        budget.charge(power.unsigned_abs(), "apply")?;
        let stepper = if power >= 0 { &self.forward } else { &self.backward };
        if power == 0 {
            stepper.locate(variant, x, &self.ctx)?;
            return Ok(x.clone());
        }
        let mut y = x.clone();
        for _ in 0..power.unsigned_abs() {
            y = stepper.step(variant, &y, &self.ctx)?;
        }
        Ok(y)
    }

    pub fn boundary_images(&self) -> Result<BoundaryImages> {
        let n = self.n();
        let b = self.breakpoints();
        let b_tau = self.image_breakpoints();
        let tau = self.permutation();
        let interior = (1..n)
            .map(|i| BreakpointImage {
                index: i,
                point: b[i].clone(),
                // the dual image is the left limit, T is right-continuous
                dual_image: b_tau[tau.apply(i)].clone(),
                t_image: b_tau[tau.apply(i + 1) - 1].clone(),
            })
            .collect();
        let t_zero = self.step(Variant::T, self.zero())?;
        let dual_one = self.step(Variant::Dual, self.one())?;
        let t_inv_zero = self.step_back(Variant::T, self.zero())?;
        let dual_inv_one = self.step_back(Variant::Dual, self.one())?;
        Ok(BoundaryImages {
            t_zero_equals_dual_one: t_zero == dual_one,
            t_inv_zero_equals_dual_inv_one: t_inv_zero == dual_inv_one,
            interior,
            t_zero,
            dual_one,
            t_inv_zero,
            dual_inv_one,
        })
    }
}

fn prefix_sums<'a>(zero: &ExactScalar, items: impl Iterator<Item = &'a ExactScalar>) -> Vec<ExactScalar> {
    let mut out = vec![zero.clone()];
    for a in items {
        let next = out.last().expect("nonempty") + a;
        out.push(next);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakpointImage {
    /// `i` in `b_i`, one-indexed
    pub index: usize,
    pub point: ExactScalar,
    pub dual_image: ExactScalar,
    pub t_image: ExactScalar,
}

/// Images of the partition points under both maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryImages {
    pub interior: Vec<BreakpointImage>,
    pub t_zero: ExactScalar,
    pub dual_one: ExactScalar,
    pub t_inv_zero: ExactScalar,
    pub dual_inv_one: ExactScalar,
    pub t_zero_equals_dual_one: bool,
    pub t_inv_zero_equals_dual_inv_one: bool,
}
