//! Geometric bisection for monotone maps on the positive half-line.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// Final bracket.
    pub lo: f64,
    pub hi: f64,
    pub iterations: u32,
}

/// Grows `[lo, hi]` by `factor` per side (at most `max_steps` times each)
/// until a nondecreasing `f` satisfies `f(lo) <= 0 <= f(hi)`.
pub fn expand_bracket<F>(f: &mut F, mut lo: f64, mut hi: f64, factor: f64, max_steps: u32) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut steps = 0;
    while f(hi)? < 0.0 {
        if steps == max_steps {
            return Err(Error::BracketFailure { lo, hi });
        }
        lo = hi;
        hi *= factor;
        steps += 1;
    }
    steps = 0;
    while f(lo)? > 0.0 {
        if steps == max_steps {
            return Err(Error::BracketFailure { lo, hi });
        }
        hi = lo;
        lo /= factor;
        steps += 1;
    }
    Ok((lo, hi))
}

/// Bisects a nondecreasing `f` on `[lo, hi]` at geometric midpoints until
/// `hi / lo - 1 <= rel_width`.
///
/// Requires `0 < lo < hi` and `f(lo) <= 0 <= f(hi)`; returns the endpoint
/// with the smaller `|f|`.
pub fn bisect_log<F>(f: &mut F, mut lo: f64, mut hi: f64, rel_width: f64, max_iter: u32) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::Domain("bisection bracket must satisfy 0 < lo < hi"));
    }
    let mut f_lo = f(lo)?;
    let mut f_hi = f(hi)?;
    if f_lo > 0.0 || f_hi < 0.0 {
        return Err(Error::BracketFailure { lo, hi });
    }
    let mut iterations = 0;
    while hi / lo - 1.0 > rel_width && iterations < max_iter {
        let mid = libm::sqrt(lo) * libm::sqrt(hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        iterations += 1;
        if f_mid == 0.0 {
            return Ok(Root { x: mid, lo: mid, hi: mid, iterations });
        }
        if f_mid < 0.0 {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    let x = if f_lo.abs() <= f_hi.abs() { lo } else { hi };
    Ok(Root { x, lo, hi, iterations })
}
