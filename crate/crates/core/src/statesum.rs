//! State sums over all `2^n` over/under choices of a shadow.
//!
//! States are enumerated in binary order of their choice masks and split
//! into fixed-size chunks that are summed independently and merged by
//! polynomial addition, so the result does not depend on scheduling.

use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::{DiagramError, Shadow};
use crate::poly::{IntPolynomial, TermCounter};
use crate::warping;

pub const DEFAULT_CROSSING_LIMIT: usize = 20;

/// Hard ceiling imposed by the 64-bit state masks.
const MASK_BITS: usize = 62;

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateSumError {
    #[error("shadow has no crossings")]
    EmptyShadow,
    #[error("{n} crossings exceed the limit of {limit} ({states} states); raise the limit to proceed")]
    TooManyCrossings { n: usize, limit: usize, states: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSumReport {
    pub n: usize,
    /// `Z_P = sum of X_D` over all states.
    pub z: IntPolynomial,
    /// Sum of `W_D` over all states.
    pub w_total: IntPolynomial,
    pub closed_form_ok: bool,
    pub states_enumerated: u64,
}

/// `2n (1+t)^(n-1)`.
pub fn closed_form_z(n: usize) -> IntPolynomial {
    if n == 0 {
        return IntPolynomial::zero();
    }
    IntPolynomial::one_plus_t_pow(2 * n as i64, n - 1)
}

/// `2n (1+t)^n`.
pub fn closed_form_w_total(n: usize) -> IntPolynomial {
    IntPolynomial::one_plus_t_pow(2 * n as i64, n)
}

/// Precomputed layout of a shadow for fast per-state evaluation.
struct StateKernel<'a> {
    shadow: &'a Shadow,
    is_first: Vec<bool>,
    /// Bit of the crossing at position 0; its second visit is met first from edge 0.
    wrap_bit: u64,
    full: u64,
}

impl<'a> StateKernel<'a> {
    fn new(shadow: &'a Shadow) -> Self {
        let n = shadow.crossing_count();
        let firsts = shadow.first_positions();
        let mut is_first = vec![false; shadow.sequence().len()];
        for &p in firsts {
            is_first[p] = true;
        }
        let wrap_bit = 1u64 << (shadow.sequence()[0] - 1);
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Self { shadow, is_first, wrap_bit, full }
    }

    #[inline]
    fn is_over(&self, mask: u64, pos: usize) -> bool {
        let bit = mask >> (self.shadow.sequence()[pos] - 1) & 1 == 1;
        bit == self.is_first[pos]
    }

    /// Fills `degrees` with `d(e)` of the state `mask`.
    fn degrees(&self, mask: u64, degrees: &mut [usize]) {
        let d0 = ((!mask & self.full & !self.wrap_bit).count_ones()
            + (mask & self.wrap_bit).count_ones()) as isize;
        let mut d = d0;
        degrees[0] = d0 as usize;
        for (pos, slot) in degrees.iter_mut().enumerate().skip(1) {
            d += if self.is_over(mask, pos) { 1 } else { -1 };
            *slot = d as usize;
        }
    }

    fn accumulate(&self, masks: std::ops::Range<u64>) -> (TermCounter, TermCounter) {
        let n = self.shadow.crossing_count();
        let len = self.shadow.sequence().len();
        let firsts = self.shadow.first_positions();
        let seconds = self.shadow.second_positions();
        let mut z = TermCounter::with_capacity(n);
        let mut w = TermCounter::with_capacity(n + 1);
        let mut degrees = vec![0usize; len];
        for mask in masks {
            self.degrees(mask, &mut degrees);
            for &d in &degrees {
                w.add(d, 1);
            }
            for c in 0..n {
                let over = if mask >> c & 1 == 1 { firsts[c] } else { seconds[c] };
                z.add(degrees[(over + len - 1) % len], 1);
            }
        }
        (z, w)
    }
}

fn check_size(p: &Shadow, limit: usize) -> Result<usize, StateSumError> {
    let n = p.crossing_count();
    if n == 0 {
        return Err(StateSumError::EmptyShadow);
    }
    if n > limit.min(MASK_BITS) {
        return Err(StateSumError::TooManyCrossings {
            n,
            limit,
            states: format!("2^{n}"),
        });
    }
    Ok(n)
}

fn chunks(n: usize) -> impl ParallelIterator<Item = std::ops::Range<u64>> {
    let total = 1u64 << n;
    let count = total.div_ceil(CHUNK);
    (0..count).into_par_iter().map(move |k| k * CHUNK..((k + 1) * CHUNK).min(total))
}

pub fn state_sum(p: &Shadow) -> Result<StateSumReport, StateSumError> {
    state_sum_with_limit(p, DEFAULT_CROSSING_LIMIT)
}

/// `Z_P` and `sum W_D` over every state of `p`, checked against the closed forms.
pub fn state_sum_with_limit(p: &Shadow, limit: usize) -> Result<StateSumReport, StateSumError> {
    let n = check_size(p, limit)?;
    let kernel = StateKernel::new(p);
    let (z, w) = chunks(n)
        .map(|range| kernel.accumulate(range))
        .reduce(
            || (TermCounter::default(), TermCounter::default()),
            |(mut z, mut w), (z2, w2)| {
                z.merge(&z2);
                w.merge(&w2);
                (z, w)
            },
        );
    let z = z.into_poly();
    let w_total = w.into_poly();
    let closed_form_ok = z == closed_form_z(n) && w_total == closed_form_w_total(n);
    Ok(StateSumReport { n, z, w_total, closed_form_ok, states_enumerated: 1u64 << n })
}

/// Number of states with `d(edge) = m`, indexed by `m`.
pub fn edge_degree_distribution(p: &Shadow, edge: usize) -> Result<Vec<u64>, StateSumError> {
    let n = check_size(p, DEFAULT_CROSSING_LIMIT)?;
    if edge >= p.edge_count() {
        return Err(DiagramError::IndexOutOfRange { edge, edges: p.edge_count() }.into());
    }
    let kernel = StateKernel::new(p);
    let len = p.sequence().len();
    let counts = chunks(n)
        .map(|range| {
            let mut counts = vec![0u64; n + 1];
            let mut degrees = vec![0usize; len];
            for mask in range {
                kernel.degrees(mask, &mut degrees);
                counts[degrees[edge]] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(counts)
}

/// Same sums by building every state and applying the warping definitions.
pub fn state_sum_reference(p: &Shadow) -> (IntPolynomial, IntPolynomial) {
    let n = p.crossing_count();
    (0..1u64 << n)
        .map(|mask| {
            let d = p.assign_state_mask(mask);
            (warping::warping_crossing_polynomial(&d), warping::warping_polynomial(&d))
        })
        .fold((IntPolynomial::zero(), IntPolynomial::zero()), |(z, w), (x, wd)| (z + x, w + wd))
}
