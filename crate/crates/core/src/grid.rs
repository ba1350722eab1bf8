use std::str::FromStr;

use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spacing {
    Linear,
    Logarithmic,
}

impl FromStr for Spacing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lin" | "linear" => Ok(Self::Linear),
            "log" | "logarithmic" => Ok(Self::Logarithmic),
            other => Err(Error::InvalidGrid(format!("unknown spacing {other:?}"))),
        }
    }
}

/// Strictly increasing, nonnegative sample times. Endpoints are exact.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid<T> {
    points: Vec<T>,
}

impl<T: Real> TimeGrid<T> {
    pub fn new(spacing: Spacing, t_min: T, t_max: T, n_points: usize) -> Result<Self> {
        if n_points < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {n_points}"
            )));
        }
        if !(t_min.is_finite() && t_max.is_finite() && t_min >= T::zero() && t_max > t_min) {
            return Err(Error::InvalidGrid(format!(
                "need 0 <= t_min < t_max, got [{t_min}, {t_max}]"
            )));
        }
        let last = T::from_index(n_points - 1);
        let points: Vec<T> = match spacing {
            Spacing::Linear => {
                let span = t_max - t_min;
                (0..n_points)
                    .map(|i| t_min + span * T::from_index(i) / last)
                    .collect()
            }
            Spacing::Logarithmic => {
                if t_min <= T::zero() {
                    return Err(Error::InvalidGrid("log spacing requires t_min > 0".into()));
                }
                let (a, b) = (t_min.ln(), t_max.ln());
                (0..n_points)
                    .map(|i| (a + (b - a) * T::from_index(i) / last).exp())
                    .collect()
            }
        };
        Self::from_points(pin_endpoints(points, t_min, t_max))
    }

    pub fn linear(t_min: T, t_max: T, n_points: usize) -> Result<Self> {
        Self::new(Spacing::Linear, t_min, t_max, n_points)
    }

    pub fn logarithmic(t_min: T, t_max: T, n_points: usize) -> Result<Self> {
        Self::new(Spacing::Logarithmic, t_min, t_max, n_points)
    }

    pub fn from_points(points: Vec<T>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("empty grid".into()));
        }
        crate::analytic::check_times(&points)?;
        Ok(Self { points })
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> T {
        self.points[self.points.len() - 1]
    }
}

fn pin_endpoints<T: Real>(mut points: Vec<T>, t_min: T, t_max: T) -> Vec<T> {
    let n = points.len();
    points[0] = t_min;
    points[n - 1] = t_max;
    points
}
