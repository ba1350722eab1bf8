//! Log-log regression of survival curves.

use crate::analytic::SurvivalCurve;
use crate::error::{Error, Result};
use crate::real::Real;

/// Minimum number of samples inside a fit window.
pub const MIN_FIT_SAMPLES: usize = 16;
/// Minimum number of samples inside one smoothing span.
pub const MIN_SMOOTHING_SAMPLES: usize = 8;

/// Least-squares line `ln P = intercept + slope · ln t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit<T> {
    pub slope: T,
    pub intercept: T,
    /// Root-mean-square residual in log-log space.
    pub residual: T,
    pub window: (T, T),
    pub samples: usize,
}

impl<T: Real> PowerLawFit<T> {
    /// Ordinary least squares with uniform weights over the samples whose
    /// time lies in `window`. No smoothing is applied.
    pub fn fit(times: &[T], values: &[T], window: (T, T)) -> Result<Self> {
        let (lo, hi) = window;
        if !(lo > T::zero() && hi > lo && hi.is_finite()) {
            return Err(Error::InvalidFitWindow {
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (&t, &v) in times.iter().zip(values) {
            if t < lo || t > hi {
                continue;
            }
            if v.is_nan() || v <= T::zero() {
                return Err(Error::NonPositiveSample {
                    time: t.as_f64(),
                    value: v.as_f64(),
                });
            }
            xs.push(t.ln());
            ys.push(v.ln());
        }
        if xs.len() < MIN_FIT_SAMPLES {
            return Err(Error::TooFewSamples {
                needed: MIN_FIT_SAMPLES,
                got: xs.len(),
            });
        }

        let n = T::from_index(xs.len());
        let mean_x = xs.iter().fold(T::zero(), |a, &x| a + x) / n;
        let mean_y = ys.iter().fold(T::zero(), |a, &y| a + y) / n;
        let (mut sxx, mut sxy) = (T::zero(), T::zero());
        for (&x, &y) in xs.iter().zip(&ys) {
            sxx += (x - mean_x) * (x - mean_x);
            sxy += (x - mean_x) * (y - mean_y);
        }
        let slope = sxy / sxx;
        let intercept = mean_y - slope * mean_x;
        let sse = xs.iter().zip(&ys).fold(T::zero(), |a, (&x, &y)| {
            let r = y - intercept - slope * x;
            a + r * r
        });
        Ok(Self {
            slope,
            intercept,
            residual: (sse / n).sqrt(),
            window,
            samples: xs.len(),
        })
    }
}

/// Moving average of a piecewise-linear signal over `[t - half_span, t + half_span]`
/// at each sample whose span lies inside the sampled range.
///
/// Returns `(t, average)` pairs.
pub fn moving_average<T: Real>(times: &[T], values: &[T], half_span: T) -> Result<Vec<(T, T)>> {
    let n = times.len().min(values.len());
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    let mut cumulative = Vec::with_capacity(n);
    cumulative.push(T::zero());
    for i in 1..n {
        let area = (times[i] - times[i - 1]) * (values[i] + values[i - 1]) / T::lit(2.0);
        cumulative.push(cumulative[i - 1] + area);
    }
    let integral_to = |s: T| -> T {
        // last sample at or before s
        let j = times[..n]
            .partition_point(|&t| t <= s)
            .saturating_sub(1)
            .min(n - 2);
        let frac = (s - times[j]) / (times[j + 1] - times[j]);
        let v_s = values[j] + (values[j + 1] - values[j]) * frac;
        cumulative[j] + (s - times[j]) * (values[j] + v_s) / T::lit(2.0)
    };

    let (first, last) = (times[0], times[n - 1]);
    let mut out = Vec::new();
    for &t in &times[..n] {
        let (a, b) = (t - half_span, t + half_span);
        if a < first || b > last {
            continue;
        }
        let inside =
            times[..n].partition_point(|&s| s <= b) - times[..n].partition_point(|&s| s < a);
        if inside < MIN_SMOOTHING_SAMPLES {
            return Err(Error::TooFewSamples {
                needed: MIN_SMOOTHING_SAMPLES,
                got: inside,
            });
        }
        out.push((t, (integral_to(b) - integral_to(a)) / (b - a)));
    }
    Ok(out)
}

/// Decay exponent of a survival curve over `window`.
///
/// Each sample is first replaced by its average over one oscillation period
/// of `J_n(2γt)²`, i.e. a centered span of `Δt = π/(2γ)`. The curve must
/// extend half a span beyond both ends of the window and resolve each span
/// with at least [`MIN_SMOOTHING_SAMPLES`] points.
pub fn fit_power_law<T: Real>(curve: &SurvivalCurve<T>, window: (T, T)) -> Result<PowerLawFit<T>> {
    let (lo, hi) = window;
    let half_span = T::FRAC_PI_4() / curve.params().gamma();
    let times = curve.times();
    let covered =
        !times.is_empty() && lo - half_span >= times[0] && hi + half_span <= times[times.len() - 1];
    if !covered || !(lo > T::zero() && hi > lo) {
        return Err(Error::InvalidFitWindow {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    let smoothed = moving_average(times, curve.values(), half_span)?;
    let (ts, vs): (Vec<T>, Vec<T>) = smoothed.into_iter().unzip();
    PowerLawFit::fit(&ts, &vs, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::WalkParams;

    #[test]
    fn exact_power_law() {
        let times: Vec<f64> = (0..200).map(|i| 50.0 + 450.0 * i as f64 / 199.0).collect();
        let values: Vec<f64> = times.iter().map(|t| 3.7 * t.powi(-2)).collect();
        let fit = PowerLawFit::fit(&times, &values, (50.0, 500.0)).unwrap();
        assert!((fit.slope + 2.0).abs() < 1e-10);
        assert!((fit.intercept - 3.7f64.ln()).abs() < 1e-9);
        assert!(fit.residual < 1e-12);
        assert_eq!(fit.samples, 200);
    }

    #[test]
    fn fit_errors() {
        let times: Vec<f64> = (1..=20).map(f64::from).collect();
        let mut values = vec![1.0; 20];
        assert!(matches!(
            PowerLawFit::fit(&times, &values, (5.0, 10.0)),
            Err(Error::TooFewSamples { needed: 16, got: 6 })
        ));
        assert!(PowerLawFit::fit(&times, &values, (0.0, 10.0)).is_err());
        assert!(PowerLawFit::fit(&times, &values, (10.0, 5.0)).is_err());
        values[3] = 0.0;
        assert!(matches!(
            PowerLawFit::fit(&times, &values, (1.0, 20.0)),
            Err(Error::NonPositiveSample { .. })
        ));
    }

    #[test]
    fn moving_average_of_linear_signal_is_exact() {
        let times: Vec<f64> = (0..101).map(|i| i as f64 * 0.1).collect();
        let values: Vec<f64> = times.iter().map(|t| 2.0 * t + 1.0).collect();
        let avg = moving_average(&times, &values, 0.45).unwrap();
        assert_eq!(avg.first().unwrap().0, 0.5);
        for (t, v) in avg {
            assert!((v - (2.0 * t + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn moving_average_removes_period() {
        let period = std::f64::consts::FRAC_PI_2;
        let times: Vec<f64> = (0..4001).map(|i| i as f64 * 0.005).collect();
        let values: Vec<f64> = times.iter().map(|t| 1.0 + (4.0 * t).sin()).collect();
        for (_, v) in moving_average(&times, &values, period / 2.0).unwrap() {
            assert!((v - 1.0).abs() < 1e-4);
        }
    }

    #[test]
    fn smoothing_needs_resolution_and_coverage() {
        let p = WalkParams::new(1.0, 0.0, 0.0).unwrap();
        let times: Vec<f64> = (0..300).map(|i| 40.0 + 2.0 * i as f64).collect();
        let values = vec![0.01; 300];
        let curve = SurvivalCurve::new(p, times, values).unwrap();
        assert!(matches!(
            fit_power_law(&curve, (50.0, 500.0)),
            Err(Error::TooFewSamples { .. })
        ));
        assert!(matches!(
            fit_power_law(&curve, (50.0, 700.0)),
            Err(Error::InvalidFitWindow { .. })
        ));
    }
}
