//! Truncated series bookkeeping and compensated accumulation.

use crate::error::{Error, Result};

/// Value of a truncated series together with its truncation bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    /// Magnitude of the first omitted term.
    pub tail_estimate: f64,
}

/// Kahan-Babuska (Neumaier) compensated sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Consecutive terms whose magnitudes must be nonincreasing before a series
/// is considered to be in its tail.
pub(crate) const DECAY_WINDOW: usize = 5;

/// Sums `term(0) + term(1) + ...` with the crate-wide truncation policy.
///
/// The partial sum stops before term `n` once `|term(n)| < rel_tol * |sum|`
/// and the last [`DECAY_WINDOW`] term magnitudes (including `term(n)`) are
/// nonincreasing; an exactly zero next term also stops the sum. At most
/// `max_terms` terms are added; the first omitted term is always evaluated
/// and reported as the tail estimate. Reaching the cap while the tail is
/// still growing is a [`Error::NonConvergence`].
pub(crate) fn sum_series<F>(mut term: F, max_terms: usize, rel_tol: f64) -> Result<SeriesResult>
where
    F: FnMut(usize) -> Result<f64>,
{
    let mut acc = CompensatedSum::new();
    let mut recent: Vec<f64> = Vec::with_capacity(max_terms + 1);
    for n in 0..=max_terms {
        let t = term(n)?;
        if !t.is_finite() {
            return Err(Error::NonFinite(format!("series term {n} is {t}")));
        }
        recent.push(t.abs());
        let decaying = recent.len() >= DECAY_WINDOW
            && recent[recent.len() - DECAY_WINDOW..]
                .windows(2)
                .all(|w| w[1] <= w[0]);
        let sum = acc.value();
        if n > 0 && (t == 0.0 || (decaying && t.abs() < rel_tol * sum.abs())) {
            return Ok(SeriesResult {
                value: sum,
                terms_used: n,
                tail_estimate: t.abs(),
            });
        }
        if n == max_terms {
            if !decaying {
                return Err(Error::non_convergence(format!(
                    "series terms still growing after {max_terms} terms"
                )));
            }
            return Ok(SeriesResult {
                value: sum,
                terms_used: n,
                tail_estimate: t.abs(),
            });
        }
        acc.add(t);
    }
    unreachable!("loop returns at n == max_terms")
}
