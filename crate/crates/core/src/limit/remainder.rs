//! Classification of a sampled remainder `r(n_j)` as decaying, bounded or
//! growing from its log–log slope and a first-vs-last quartile comparison.

use serde::{Deserialize, Serialize};

use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RemainderClass {
    /// `r(n) = o(1)`
    Decaying,
    /// `r(n) = O(1)` but not visibly decaying
    Bounded,
    Growing,
    Inconclusive,
}

impl RemainderClass {
    pub fn as_str(self) -> &'static str {
        match self {
            RemainderClass::Decaying => "decaying",
            RemainderClass::Bounded => "bounded",
            RemainderClass::Growing => "growing",
            RemainderClass::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifierParams<T> {
    /// Slopes within `±slope_threshold` count as flat.
    pub slope_threshold: T,
    /// Remainders with `|r| <= floor` are treated as zero and left out of the fit.
    pub floor: T,
}

impl<T: Scalar> Default for ClassifierParams<T> {
    fn default() -> Self {
        Self {
            slope_threshold: T::lit(0.1),
            floor: T::lit(1e-13),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemainderFit<T> {
    pub checkpoints: Vec<u64>,
    pub remainders: Vec<T>,
    pub class: RemainderClass,
    /// Least-squares slope of `ln|r|` on `ln n`; `None` with fewer than two
    /// usable points.
    pub loglog_slope: Option<T>,
    /// Standard error of the slope; `None` with fewer than three usable points.
    pub slope_stderr: Option<T>,
    pub warnings: Vec<String>,
}

/// Ordinary least squares `y = a + b·x`, returning `(b, stderr(b))`.
pub fn ols_slope<T: Scalar>(xs: &[T], ys: &[T]) -> Option<(T, Option<T>)> {
    let m = xs.len();
    if m < 2 || ys.len() != m {
        return None;
    }
    let mf = T::from_count(m as u64);
    let mx = xs.iter().copied().sum::<T>() / mf;
    let my = ys.iter().copied().sum::<T>() / mf;
    let sxx: T = xs.iter().map(|&x| (x - mx) * (x - mx)).sum();
    if !(sxx > T::zero()) {
        return None;
    }
    let sxy: T = xs.iter().zip(ys).map(|(&x, &y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let stderr = (m >= 3).then(|| {
        let intercept = my - slope * mx;
        let rss: T = xs
            .iter()
            .zip(ys)
            .map(|(&x, &y)| {
                let e = y - intercept - slope * x;
                e * e
            })
            .sum();
        (rss / T::from_count(m as u64 - 2) / sxx).sqrt()
    });
    Some((slope, stderr))
}

/// Classifies `remainders[j] = r(checkpoints[j])`.
///
/// * decaying: slope `< −threshold` and the largest `|r|` in the last quartile
///   is below the largest in the first quartile; also when every remainder in
///   the last quartile is at or below the floor (exact vanishing)
/// * bounded: `|slope| <= threshold`
/// * growing: slope `> threshold` and the last quartile exceeds the first
/// * inconclusive: everything else, including more than half the points at
///   the floor or non-finite remainders
pub fn classify_remainders<T: Scalar>(
    checkpoints: &[u64],
    remainders: Vec<T>,
    params: &ClassifierParams<T>,
) -> RemainderFit<T> {
    assert_eq!(checkpoints.len(), remainders.len());
    let m = remainders.len();
    let mut fit = RemainderFit {
        checkpoints: checkpoints.to_vec(),
        remainders,
        class: RemainderClass::Inconclusive,
        loglog_slope: None,
        slope_stderr: None,
        warnings: Vec::new(),
    };
    if m == 0 {
        fit.warnings.push("no checkpoints".into());
        return fit;
    }
    if fit.remainders.iter().any(|r| !r.is_finite()) {
        fit.warnings.push("non-finite remainder".into());
        return fit;
    }

    let (xs, ys): (Vec<T>, Vec<T>) = checkpoints
        .iter()
        .zip(&fit.remainders)
        .filter(|(_, r)| r.abs() > params.floor)
        .map(|(&n, r)| (T::from_count(n).ln(), r.abs().ln()))
        .unzip();
    if let Some((slope, stderr)) = ols_slope(&xs, &ys) {
        fit.loglog_slope = Some(slope);
        fit.slope_stderr = stderr;
    }

    let quartile = m.div_ceil(4);
    let max_abs = |rs: &[T]| rs.iter().fold(T::zero(), |acc, r| acc.max(r.abs()));
    let first = max_abs(&fit.remainders[..quartile]);
    let last = max_abs(&fit.remainders[m - quartile..]);

    if last <= params.floor {
        fit.warnings
            .push("remainder vanishes at every checkpoint of the last quartile".into());
        fit.class = RemainderClass::Decaying;
        return fit;
    }
    let excluded = m - xs.len();
    if 2 * excluded > m {
        fit.warnings.push(format!(
            "{excluded} of {m} remainders at or below the floor"
        ));
        return fit;
    }
    let Some(slope) = fit.loglog_slope else {
        fit.warnings
            .push("too few usable points for a slope".into());
        return fit;
    };
    let t = params.slope_threshold;
    fit.class = if slope < -t {
        if last < first {
            RemainderClass::Decaying
        } else {
            fit.warnings
                .push("negative slope but last quartile does not shrink".into());
            RemainderClass::Inconclusive
        }
    } else if slope <= t {
        RemainderClass::Bounded
    } else if last > first {
        RemainderClass::Growing
    } else {
        fit.warnings
            .push("positive slope but last quartile does not grow".into());
        RemainderClass::Inconclusive
    };
    fit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::Checkpoints;

    fn classify(r: impl Fn(f64) -> f64) -> RemainderFit<f64> {
        let c = Checkpoints::geometric(100, 2.0, 10_000_000).unwrap();
        let rs = c.as_slice().iter().map(|&n| r(n as f64)).collect();
        classify_remainders(c.as_slice(), rs, &ClassifierParams::default())
    }

    #[test]
    fn power_laws() {
        for alpha in [0.5, 1.0, 2.0] {
            let fit = classify(|n| n.powf(-alpha));
            assert_eq!(fit.class, RemainderClass::Decaying);
            assert!((fit.loglog_slope.unwrap() + alpha).abs() < 1e-12);
            assert!(fit.slope_stderr.unwrap() < 1e-12);
        }
    }

    #[test]
    fn constant_and_log() {
        assert_eq!(classify(|_| 0.3).class, RemainderClass::Bounded);
        assert_eq!(classify(|n| n.ln()).class, RemainderClass::Growing);
        assert_eq!(classify(|n| -n.sqrt()).class, RemainderClass::Growing);
    }

    #[test]
    fn inverse_log_from_ten() {
        let c = Checkpoints::default_for(10_000_000).unwrap();
        let rs = c
            .as_slice()
            .iter()
            .map(|&n| 1.0 / (n as f64).ln())
            .collect();
        let fit = classify_remainders(c.as_slice(), rs, &ClassifierParams::default());
        assert_eq!(fit.class, RemainderClass::Decaying);
    }

    #[test]
    fn zeros() {
        let fit = classify(|_| 0.0);
        assert_eq!(fit.class, RemainderClass::Decaying);
        assert_eq!(fit.loglog_slope, None);
        // mostly zero but not at the end: no verdict
        let c = [10, 20, 40, 80, 160, 320, 640, 1280];
        let rs = vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0];
        let fit = classify_remainders(&c, rs, &ClassifierParams::default());
        assert_eq!(fit.class, RemainderClass::Inconclusive);
    }

    #[test]
    fn oscillating_sign_uses_magnitude() {
        let fit = classify(|n| {
            let s = if (n.log2() as i64) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            s / n
        });
        assert_eq!(fit.class, RemainderClass::Decaying);
    }

    #[test]
    fn nan_is_inconclusive() {
        let fit = classify_remainders(&[1, 2], vec![1.0, f64::NAN], &ClassifierParams::default());
        assert_eq!(fit.class, RemainderClass::Inconclusive);
    }

    #[test]
    fn ols_on_known_points() {
        // y = 1 + 2x with residuals (+1, -1, -1, +1) around the line
        let xs = [0.0f64, 1.0, 2.0, 3.0];
        let ys = [2.0, 2.0, 4.0, 8.0];
        let (b, se) = ols_slope(&xs, &ys).unwrap();
        assert!((b - 2.0).abs() < 1e-15);
        // rss = 4, sxx = 5, se = sqrt(4/2/5)
        assert!((se.unwrap() - (0.4f64).sqrt()).abs() < 1e-15);
        assert!(ols_slope(&[1.0], &[1.0]).is_none());
        assert!(ols_slope(&[1.0, 1.0], &[1.0, 2.0]).is_none());
    }
}
