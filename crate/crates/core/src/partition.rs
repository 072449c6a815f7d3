//! Level partitions: the common refinement of `T^-p(J_i)`, `p < k`.
//!
//! Level `k + 1` is obtained from level `k` by cutting each cell `[a, b)` at
//! the preimages under `T^k` of the breakpoints its image straddles. Cell
//! endpoints and the `T^k` translation constant are carried exactly; words are
//! kept as parent links per level and materialized at the end. The dual
//! partition has the same endpoints, words and constants with every cell
//! closed on the right instead.

use serde::Serialize;

use crate::exact::{ExactScalar, PrecisionContext};
use crate::exec;
use crate::iet::{Iet, Variant};
use crate::limits::{Budget, Limits};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IntervalKind {
    /// `[left, right)`
    #[serde(rename = "Lr")]
    Lr,
    /// `(left, right]`
    #[serde(rename = "lR")]
    LR,
}

impl IntervalKind {
    pub fn of(variant: Variant) -> Self {
        match variant {
            Variant::T => IntervalKind::Lr,
            Variant::Dual => IntervalKind::LR,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfOpenInterval {
    pub left: ExactScalar,
    pub right: ExactScalar,
    pub kind: IntervalKind,
}

impl HalfOpenInterval {
    pub fn contains(&self, x: &ExactScalar, ctx: &PrecisionContext) -> Result<bool> {
        Ok(match self.kind {
            IntervalKind::Lr => self.left.le(x, ctx)? && x.lt(&self.right, ctx)?,
            IntervalKind::LR => self.left.lt(x, ctx)? && x.le(&self.right, ctx)?,
        })
    }

    pub fn length(&self) -> ExactScalar {
        &self.right - &self.left
    }
}

impl std::fmt::Display for HalfOpenInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            IntervalKind::Lr => write!(f, "[{}, {})", self.left, self.right),
            IntervalKind::LR => write!(f, "({}, {}]", self.left, self.right),
        }
    }
}

/// One cell of a level-`k` partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCell {
    pub interval: HalfOpenInterval,
    /// one-indexed symbols `j_0 .. j_{k-1}`: `T^p` maps the cell into `J_{j_p}`
    pub word: Vec<usize>,
    /// the constant by which `T^k` translates the cell
    pub translation: ExactScalar,
}

impl LevelCell {
    /// Entry `p` is the constant by which `T^(p+1)` translates the cell.
    pub fn translations_by_power(&self, iet: &Iet) -> Vec<ExactScalar> {
        let t = iet.translations();
        let mut acc = iet.zero().clone();
        self.word
            .iter()
            .map(|&j| {
                acc = &acc + &t[j - 1];
                acc.clone()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPartition {
    pub level: usize,
    pub variant: Variant,
    /// ordered left to right
    pub cells: Vec<LevelCell>,
}

impl LevelPartition {
    /// Index of the cell containing `x`; boundary points follow the cell kind.
    pub fn locate(&self, x: &ExactScalar, iet: &Iet) -> Result<usize> {
        check_domain(iet, self.variant, x)?;
        let ctx = iet.precision();
        // T: last cell with left <= x; dual: first cell with x <= right
        let (mut lo, mut hi) = (0usize, self.cells.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            let cell = &self.cells[mid].interval;
            let go_right = match self.variant {
                Variant::T => cell.left.le(x, ctx)?,
                Variant::Dual => cell.right.lt(x, ctx)?,
            };
            if go_right {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        Ok(match self.variant {
            Variant::T => lo - 1,
            Variant::Dual => lo,
        })
    }

    pub fn words(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.iter().map(|c| c.word.as_slice())
    }
}

fn check_domain(iet: &Iet, variant: Variant, x: &ExactScalar) -> Result<()> {
    // locating the level-1 symbol performs the exact domain test
    iet.symbol(variant, x).map(|_| ())
}

#[derive(Clone, Debug)]
struct WorkCell {
    left: ExactScalar,
    right: ExactScalar,
    /// `T^k` image of `left`
    img_left: ExactScalar,
    /// left limit of `T^k` at `right`
    img_right: ExactScalar,
    shift: ExactScalar,
}

/// Incremental builder of level partitions, one level per [`Refiner::refine`].
pub struct Refiner<'a> {
    iet: &'a Iet,
    limits: Limits,
    budget: Budget,
    cells: Vec<WorkCell>,
    /// per level, per cell: (index of parent cell in the previous level, symbol)
    history: Vec<Vec<(u32, u32)>>,
}

impl<'a> Refiner<'a> {
    /// Starts at level 1: the intervals `J_i`.
    pub fn new(iet: &'a Iet, limits: Limits) -> Result<Self> {
        let budget = limits.budget();
        let b = iet.breakpoints();
        let t = iet.translations();
        let cells: Vec<_> = (0..iet.n())
            .map(|i| WorkCell {
                left: b[i].clone(),
                right: b[i + 1].clone(),
                img_left: &b[i] + &t[i],
                img_right: &b[i + 1] + &t[i],
                shift: t[i].clone(),
            })
            .collect();
        budget.charge(cells.len() as u64, "level partition")?;
        let history = vec![(0..iet.n()).map(|i| (u32::MAX, i as u32 + 1)).collect()];
        let refiner = Refiner { iet, limits, budget, cells, history };
        refiner.check_cells()?;
        Ok(refiner)
    }

    pub fn level(&self) -> usize {
        self.history.len()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn steps_used(&self) -> u64 {
        self.budget.used()
    }

    fn check_cells(&self) -> Result<()> {
        if self.cells.len() > self.limits.max_cells {
            return Err(Error::Budget {
                limit: self.limits.max_cells as u64,
                unit: "cells",
                context: format!("level {} partition", self.level()),
            });
        }
        Ok(())
    }

    /// Level `k` -> level `k + 1`.
    pub fn refine(&mut self) -> Result<()> {
        self.budget.charge(self.cells.len() as u64, "level partition")?;
        let iet = self.iet;
        let indexed: Vec<(usize, &WorkCell)> = self.cells.iter().enumerate().collect();
        let pieces = exec::map(self.limits.execution, &indexed, |&(i, cell)| split_cell(iet, i, cell));
        let mut cells = Vec::with_capacity(self.cells.len() + iet.n());
        let mut links = Vec::with_capacity(cells.capacity());
        for piece in pieces {
            for (parent, sym, cell) in piece? {
                cells.push(cell);
                links.push((parent as u32, sym as u32));
            }
        }
        self.cells = cells;
        self.history.push(links);
        self.check_cells()
    }

    /// Lowest cell index whose `T^k` translation constant is exactly zero.
    pub fn first_fixed_cell(&self) -> Option<usize> {
        self.cells.iter().position(|c| c.shift.is_zero())
    }

    pub fn interval(&self, i: usize, variant: Variant) -> HalfOpenInterval {
        let c = &self.cells[i];
        HalfOpenInterval { left: c.left.clone(), right: c.right.clone(), kind: IntervalKind::of(variant) }
    }

    fn word(&self, mut i: usize) -> Vec<usize> {
        let mut word = vec![0; self.level()];
        for (depth, links) in self.history.iter().enumerate().rev() {
            let (parent, sym) = links[i];
            word[depth] = sym as usize;
            i = parent as usize;
        }
        word
    }

    pub fn partition(&self, variant: Variant) -> LevelPartition {
        let cells = (0..self.cells.len())
            .map(|i| LevelCell {
                interval: self.interval(i, variant),
                word: self.word(i),
                translation: self.cells[i].shift.clone(),
            })
            .collect();
        LevelPartition { level: self.level(), variant, cells }
    }
}

fn split_cell(iet: &Iet, index: usize, cell: &WorkCell) -> Result<Vec<(usize, usize, WorkCell)>> {
    let b = iet.breakpoints();
    let t = iet.translations();
    // the image [img_left, img_right) meets J_first .. J_last
    let first = iet.symbol(Variant::T, &cell.img_left)?;
    let last = iet.symbol(Variant::Dual, &cell.img_right)?;
    let mut out = Vec::with_capacity(last + 1 - first);
    let mut left = cell.left.clone();
    let mut img_left = cell.img_left.clone();
    for j in first..=last {
        let (right, img_right) = if j == last {
            (cell.right.clone(), cell.img_right.clone())
        } else {
            (&b[j] - &cell.shift, b[j].clone())
        };
        let child = WorkCell {
            img_left: &img_left + &t[j - 1],
            img_right: &img_right + &t[j - 1],
            shift: &cell.shift + &t[j - 1],
            left,
            right: right.clone(),
        };
        out.push((index, j, child));
        left = right;
        img_left = img_right;
    }
    Ok(out)
}

/// The level-`k` partition of `T` (cells `[a, b)`) or of the dual (cells `(a, b]`).
pub fn level_partition(iet: &Iet, k: usize, variant: Variant, limits: &Limits) -> Result<LevelPartition> {
    if k == 0 {
        return Err(Error::Invalid("partition level must be at least 1".into()));
    }
    let mut r = Refiner::new(iet, *limits)?;
    while r.level() < k {
        r.refine()?;
    }
    Ok(r.partition(variant))
}

/// The level-`k` cell containing `x`.
pub fn cell_of(iet: &Iet, k: usize, x: &ExactScalar, variant: Variant, limits: &Limits) -> Result<LevelCell> {
    check_domain(iet, variant, x)?;
    let p = level_partition(iet, k, variant, limits)?;
    let i = p.locate(x, iet)?;
    let mut cells = p.cells;
    Ok(cells.swap_remove(i))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityReport {
    pub max_k: usize,
    pub found: bool,
    pub period: Option<usize>,
    /// leftmost level-`period` cell on which `T^period` is the identity
    pub witness: Option<HalfOpenInterval>,
}

/// Scans levels `1..=max_k` for a cell fixed by `T^k`; the least such `k` is the
/// least period of any periodic point.
pub fn detect_periodicity(iet: &Iet, max_k: usize, limits: &Limits) -> Result<PeriodicityReport> {
    if max_k == 0 {
        return Err(Error::Invalid("max_k must be at least 1".into()));
    }
    let mut r = Refiner::new(iet, *limits)?;
    loop {
        if let Some(i) = r.first_fixed_cell() {
            return Ok(PeriodicityReport {
                max_k,
                found: true,
                period: Some(r.level()),
                witness: Some(r.interval(i, Variant::T)),
            });
        }
        if r.level() == max_k {
            return Ok(PeriodicityReport { max_k, found: false, period: None, witness: None });
        }
        r.refine()?;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationIntervalReport {
    pub depth: usize,
    pub point: ExactScalar,
    pub interval: HalfOpenInterval,
}

/// The maximal interval around `x` on which each of `T, T^2, .., T^depth` is a
/// single translation.
pub fn max_translation_interval(iet: &Iet, x: &ExactScalar, depth: usize, limits: &Limits) -> Result<TranslationIntervalReport> {
    check_domain(iet, Variant::T, x)?;
    let p = level_partition(iet, depth, Variant::T, limits)?;
    let home = p.locate(x, iet)?;
    let consts = |i: usize| p.cells[i].translations_by_power(iet);
    let target = consts(home);
    let mut lo = home;
    while lo > 0 && consts(lo - 1) == target {
        lo -= 1;
    }
    let mut hi = home;
    while hi + 1 < p.cells.len() && consts(hi + 1) == target {
        hi += 1;
    }
    let interval = HalfOpenInterval {
        left: p.cells[lo].interval.left.clone(),
        right: p.cells[hi].interval.right.clone(),
        kind: IntervalKind::Lr,
    };
    Ok(TranslationIntervalReport { depth, point: x.clone(), interval })
}
