//! Integer-order Bessel functions of the first kind, `J_0(z) ..= J_n(z)`,
//! for real `z ≥ 0`.
//!
//! Rows are produced with Miller's downward recurrence
//! `J_{n-1} = (2n/z) J_n - J_{n+1}`, started well above both the requested
//! order and the turning point `n ≈ z`, and normalized with
//! `J_0 + 2 Σ_{k≥1} J_{2k} = 1`. Downward recurrence is stable in the
//! evanescent region `n > z` where upward recurrence loses every digit.

use crate::error::{Error, Result};
use crate::real::Real;

/// `J_0(z), ..., J_{n_max}(z)` for one argument.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselRow<T> {
    argument: T,
    values: Vec<T>,
}

impl<T: Real> BesselRow<T> {
    pub fn argument(&self) -> T {
        self.argument
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `J_n(z)` for `0 ≤ n ≤ n_max`.
    ///
    /// # Panics
    ///
    /// Panics if `n > n_max`.
    pub fn get(&self, n: usize) -> T {
        self.values[n]
    }

    /// `J_n(z)` for any integer order, via `J_{-n} = (-1)^n J_n`.
    /// Orders beyond the row are treated as zero.
    pub fn signed(&self, n: i64) -> T {
        let m = n.unsigned_abs() as usize;
        let v = self.values.get(m).copied().unwrap_or_else(T::zero);
        if n < 0 && m % 2 == 1 {
            -v
        } else {
            v
        }
    }
}

/// Highest order the downward recurrence starts from.
fn start_order<T: Real>(z: T, n_max: usize) -> usize {
    let turning = z.ceil().to_usize().unwrap_or(usize::MAX);
    let airy = (T::lit(10.0) * (z + T::one()).cbrt())
        .ceil()
        .to_usize()
        .unwrap_or(usize::MAX);
    n_max.max(turning).saturating_add(15).saturating_add(airy)
}

/// Evaluates `J_0(z) ..= J_{n_max}(z)`.
pub fn bessel_row<T: Real>(z: T, n_max: usize) -> Result<BesselRow<T>> {
    if !z.is_finite() || z < T::zero() {
        return Err(Error::NegativeArgument(z.as_f64()));
    }
    let mut values = vec![T::zero(); n_max + 1];
    if z == T::zero() {
        values[0] = T::one();
        return Ok(BesselRow {
            argument: z,
            values,
        });
    }
    if z < T::epsilon().sqrt().sqrt() {
        small_argument_series(z, &mut values);
        return Ok(BesselRow {
            argument: z,
            values,
        });
    }

    let two = T::lit(2.0);
    let inv_rescale = T::RESCALE.recip();
    let n_start = start_order(z, n_max);

    // Unnormalized trial sequence: j_{n_start+1} = 0, j_{n_start} = tiny.
    let mut upper = T::zero();
    let mut current = T::min_positive_value().sqrt();
    let mut norm = if n_start % 2 == 0 {
        two * current
    } else {
        T::zero()
    };
    if n_start <= n_max {
        values[n_start] = current;
    }

    for n in (1..=n_start).rev() {
        let lower = two * T::from_index(n) / z * current - upper;
        upper = current;
        current = lower;
        let order = n - 1;
        if order <= n_max {
            values[order] = current;
        }
        if order == 0 {
            norm += current;
        } else if order % 2 == 0 {
            norm += two * current;
        }
        if current.abs() > T::RESCALE {
            current *= inv_rescale;
            upper *= inv_rescale;
            norm *= inv_rescale;
            for v in values.iter_mut().skip(order) {
                *v *= inv_rescale;
            }
        }
    }

    let scale = norm.recip();
    for v in &mut values {
        *v *= scale;
    }
    Ok(BesselRow {
        argument: z,
        values,
    })
}

/// Three leading terms of the power series; the truncation error is
/// `O((z/2)^6)` relative, below rounding for `z < ε^{1/4}`.
fn small_argument_series<T: Real>(z: T, values: &mut [T]) {
    let half = z / T::lit(2.0);
    let q = half * half;
    let mut lead = T::one();
    for (n, v) in values.iter_mut().enumerate() {
        if n > 0 {
            lead = lead * half / T::from_index(n);
        }
        let n1 = T::from_index(n + 1);
        let n2 = T::from_index(n + 2);
        *v = lead * (T::one() - q / n1 + q * q / (T::lit(2.0) * n1 * n2));
    }
}
