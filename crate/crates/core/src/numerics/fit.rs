//! Small least-squares helpers.

use crate::error::{Error, Result};

/// Slope and intercept of the least-squares line through (x, y).
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::Numeric(
            "linear fit needs at least two matched samples".into(),
        ));
    }
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return Err(Error::Numeric("degenerate abscissae in linear fit".into()));
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    Ok((slope, intercept))
}

/// Exponential growth rate from a log-linear fit of y(x) > 0.
pub fn growth_rate(x: &[f64], y: &[f64]) -> Result<f64> {
    let logs: Vec<f64> = y
        .iter()
        .map(|v| {
            if *v > 0.0 {
                Ok(v.ln())
            } else {
                Err(Error::Numeric(
                    "growth rate fit requires positive samples".into(),
                ))
            }
        })
        .collect::<Result<_>>()?;
    linear_fit(x, &logs).map(|(slope, _)| slope)
}

/// Indices of local maxima whose prominence over the neighbouring valleys
/// exceeds `min_prominence`.
pub fn find_peaks(y: &[f64], min_prominence: f64) -> Vec<usize> {
    let mut peaks = Vec::new();
    for i in 1..y.len().saturating_sub(1) {
        if y[i] > y[i - 1] && y[i] >= y[i + 1] {
            let mut left_min = y[i];
            for j in (0..i).rev() {
                if y[j] > y[i] {
                    break;
                }
                left_min = left_min.min(y[j]);
            }
            let mut right_min = y[i];
            for &v in &y[i + 1..] {
                if v > y[i] {
                    break;
                }
                right_min = right_min.min(v);
            }
            if y[i] - left_min.max(right_min) >= min_prominence {
                peaks.push(i);
            }
        }
    }
    peaks
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn recovers_exponential_rate() {
        let x: Vec<f64> = (0..50).map(|i| i as f64 * 0.1).collect();
        let y: Vec<f64> = x.iter().map(|t| 3.0 * (0.7 * t).exp()).collect();
        let rate = growth_rate(&x, &y).unwrap();
        assert_relative_eq!(rate, 0.7, max_relative = 1e-12);
    }

    #[test]
    fn peak_detection_with_prominence() {
        let y: Vec<f64> = (0..200)
            .map(|i| {
                let t = i as f64 * 0.1;
                t.sin().powi(2) + 0.01 * (13.0 * t).sin()
            })
            .collect();
        let peaks = find_peaks(&y, 0.5);
        assert!(peaks.len() >= 2);
        for &p in &peaks {
            assert!(y[p] > 0.9);
        }
    }
}
