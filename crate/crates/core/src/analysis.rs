//! Diagnostics for long `<x>(t)` series: sign changes, linear trend and the
//! period of the slow oscillation riding on the trend.

use crate::coin::PhasePair;
use crate::error::{Result, WalkError};
use crate::evolution::{expectation_series, GameSequence};

/// Tuning of the oscillation estimate in [`diagnose_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnoseOptions {
    /// Width of the centered moving average applied to the detrended series
    /// before looking for crossings. 24 removes every ripple whose period
    /// divides it, which covers all sequences of period up to 4.
    pub smoothing_window: usize,
    /// Crossing thresholds at `±hysteresis * rms` of the smoothed residual.
    pub hysteresis: f64,
    /// Residuals with smaller RMS are treated as having no oscillation.
    pub min_amplitude: f64,
}

impl Default for DiagnoseOptions {
    fn default() -> Self {
        Self { smoothing_window: 24, hysteresis: 0.25, min_amplitude: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesDiagnostics {
    /// First `t` whose sign differs from the sign of the first entry.
    pub first_sign_change: Option<usize>,
    /// Last `t` with `<x> > 0`.
    pub last_positive_step: Option<usize>,
    /// Ordinary least-squares slope of `<x>` against `t`.
    pub linear_trend_slope: f64,
    pub intercept: f64,
    /// Period of the slow oscillation of the detrended, smoothed series.
    pub dominant_period: Option<f64>,
    /// Times at which the smoothed residual crossed its opposite threshold.
    pub crossings: Vec<f64>,
    /// RMS of what the moving average removed from the detrended series.
    pub short_oscillation_rms: f64,
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

fn validate(series: &[(usize, f64)]) -> Result<()> {
    if series.is_empty() {
        return Err(WalkError::EmptySeries);
    }
    if let Some(k) = (1..series.len()).find(|&k| series[k].0 <= series[k - 1].0) {
        return Err(WalkError::NonIncreasingTime(k));
    }
    Ok(())
}

/// Least-squares `(slope, intercept)`; a single point has slope 0.
pub fn least_squares(series: &[(usize, f64)]) -> (f64, f64) {
    let n = series.len() as f64;
    let mean_t = series.iter().map(|&(t, _)| t as f64).sum::<f64>() / n;
    let mean_x = series.iter().map(|&(_, x)| x).sum::<f64>() / n;
    let (sxy, sxx) = series.iter().fold((0.0, 0.0), |(sxy, sxx), &(t, x)| {
        let dt = t as f64 - mean_t;
        (sxy + dt * (x - mean_x), sxx + dt * dt)
    });
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (slope, mean_x - slope * mean_t)
}

pub fn diagnose(series: &[(usize, f64)]) -> Result<SeriesDiagnostics> {
    diagnose_with(series, &DiagnoseOptions::default())
}

pub fn diagnose_with(series: &[(usize, f64)], opts: &DiagnoseOptions) -> Result<SeriesDiagnostics> {
    validate(series)?;
    let start = sign(series[0].1);
    let first_sign_change = series.iter().find(|&&(_, x)| sign(x) != start).map(|&(t, _)| t);
    let last_positive_step = series.iter().rev().find(|&&(_, x)| x > 0.0).map(|&(t, _)| t);
    let (slope, intercept) = least_squares(series);

    let resid: Vec<f64> = series.iter().map(|&(t, x)| x - (intercept + slope * t as f64)).collect();
    let w = opts.smoothing_window.clamp(1, resid.len());
    let smoothed: Vec<(f64, f64)> = resid
        .windows(w)
        .zip(series.windows(w))
        .map(|(r, s)| {
            let centre = s.iter().map(|&(t, _)| t as f64).sum::<f64>() / w as f64;
            (centre, r.iter().sum::<f64>() / w as f64)
        })
        .collect();

    let short: Vec<f64> = smoothed.iter().enumerate().map(|(k, &(_, m))| resid[k + w / 2] - m).collect();
    let short_oscillation_rms = rms(&short);

    let level = rms(&smoothed.iter().map(|&(_, m)| m).collect::<Vec<_>>());
    let mut crossings = Vec::new();
    if level >= opts.min_amplitude {
        let h = opts.hysteresis * level;
        let mut side = 0i8;
        for &(t, m) in &smoothed {
            let now = if m > h {
                1
            } else if m < -h {
                -1
            } else {
                continue;
            };
            if side != 0 && now != side {
                crossings.push(t);
            }
            side = now;
        }
    }
    let dominant_period = (crossings.len() >= 2).then(|| {
        let span = crossings[crossings.len() - 1] - crossings[0];
        2.0 * span / (crossings.len() - 1) as f64
    });

    Ok(SeriesDiagnostics {
        first_sign_change,
        last_positive_step,
        linear_trend_slope: slope,
        intercept,
        dominant_period,
        crossings,
        short_oscillation_rms,
    })
}

fn rms(v: &[f64]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    (v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64).sqrt()
}

/// Pointwise `<x>_sequence(t) - <x>_A(t)` against game A played alone at
/// phase `alpha`. `series` must cover `t = 1..=t_max`.
pub fn compare_to_game_a(series: &[(usize, f64)], alpha: f64, t_max: usize) -> Result<Vec<(usize, f64)>> {
    validate(series)?;
    if series.len() != t_max {
        return Err(WalkError::LengthMismatch { actual: series.len(), expected: t_max });
    }
    let baseline = expectation_series(&GameSequence::new(vec![crate::coin::Game::A])?, PhasePair::single(alpha), t_max)?;
    series
        .iter()
        .zip(&baseline)
        .map(|(&(t, x), &(tb, xb))| {
            if t != tb {
                Err(WalkError::LengthMismatch { actual: t, expected: tb })
            } else {
                Ok((t, x - xb))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> GameSequence {
        s.parse().unwrap()
    }

    #[test]
    fn constant_negative_series() {
        let s: Vec<_> = (1..=50).map(|t| (t, -1.0)).collect();
        let d = diagnose(&s).unwrap();
        assert_eq!(d.first_sign_change, None);
        assert_eq!(d.last_positive_step, None);
        assert_eq!(d.linear_trend_slope, 0.0);
        assert_eq!(d.dominant_period, None);
    }

    #[test]
    fn straight_line() {
        let s: Vec<_> = (1..=1000).map(|t| (t, -0.01 * t as f64)).collect();
        let d = diagnose(&s).unwrap();
        assert!((d.linear_trend_slope + 0.01).abs() < 1e-9);
        assert_eq!(d.last_positive_step, None);
        assert_eq!(d.first_sign_change, None);
        assert_eq!(d.dominant_period, None);
    }

    #[test]
    fn sine_on_a_trend() {
        let s: Vec<_> = (1..=1000)
            .map(|t| {
                let tf = t as f64;
                (t, -0.002 * tf + 0.5 * (2.0 * std::f64::consts::PI * tf / 250.0).sin() + 0.05 * (tf * 2.1).sin())
            })
            .collect();
        let d = diagnose(&s).unwrap();
        let p = d.dominant_period.unwrap();
        assert!((p - 250.0).abs() < 10.0, "{p}");
        // the sine is not orthogonal to t, so OLS picks up part of it
        assert!((d.linear_trend_slope + 0.002).abs() < 1e-3);
        assert!(d.short_oscillation_rms > 0.01);
        assert!(d.first_sign_change.is_some());
        assert!(d.last_positive_step.unwrap() < 1000);
    }

    #[test]
    fn errors() {
        assert_eq!(diagnose(&[]), Err(WalkError::EmptySeries));
        assert_eq!(diagnose(&[(1, 0.0), (1, 0.0)]), Err(WalkError::NonIncreasingTime(1)));
        let s: Vec<_> = (1..=5).map(|t| (t, 0.0)).collect();
        assert_eq!(compare_to_game_a(&s, 0.1, 6), Err(WalkError::LengthMismatch { actual: 5, expected: 6 }));
    }

    #[test]
    fn single_point() {
        let d = diagnose(&[(3, 2.0)]).unwrap();
        assert_eq!(d.linear_trend_slope, 0.0);
        assert_eq!(d.last_positive_step, Some(3));
    }

    #[test]
    fn game_a_against_itself_is_zero() {
        let s = expectation_series(&seq("A"), PhasePair::single(0.02), 200).unwrap();
        let diff = compare_to_game_a(&s, 0.02, 200).unwrap();
        assert!(diff.iter().all(|&(_, d)| d == 0.0));
    }

    #[test]
    fn comparison_is_antisymmetric() {
        let s_pos = expectation_series(&seq("ABB"), PhasePair::new(0.005, 0.03), 300).unwrap();
        let s_neg = expectation_series(&seq("ABB"), PhasePair::new(-0.005, -0.03), 300).unwrap();
        let d_pos = compare_to_game_a(&s_pos, 0.005, 300).unwrap();
        let d_neg = compare_to_game_a(&s_neg, -0.005, 300).unwrap();
        for (a, b) in d_pos.iter().zip(&d_neg) {
            assert!((a.1 + b.1).abs() < 1e-10);
        }
    }

    proptest! {
        #[test]
        fn negation_flips_slope_and_keeps_sign_changes(
            values in prop::collection::vec(-5.0f64..5.0, 1..300)
        ) {
            let s: Vec<_> = values.iter().enumerate().map(|(i, &x)| (i + 1, x)).collect();
            let n: Vec<_> = s.iter().map(|&(t, x)| (t, -x)).collect();
            let (d, e) = (diagnose(&s).unwrap(), diagnose(&n).unwrap());
            prop_assert_eq!(d.first_sign_change, e.first_sign_change);
            prop_assert!((d.linear_trend_slope + e.linear_trend_slope).abs() < 1e-12);
            prop_assert_eq!(d.crossings, e.crossings);
            prop_assert_eq!(d.dominant_period, e.dominant_period);
        }

        #[test]
        fn first_change_precedes_last_positive(values in prop::collection::vec(-5.0f64..5.0, 1..200)) {
            let s: Vec<_> = values.iter().enumerate().map(|(i, &x)| (i + 1, x)).collect();
            let d = diagnose(&s).unwrap();
            if s[0].1 <= 0.0 {
                if let (Some(a), Some(b)) = (d.first_sign_change, d.last_positive_step) {
                    prop_assert!(a <= b);
                }
            }
        }
    }
}
