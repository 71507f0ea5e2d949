//! Multi-level 1-D discrete wavelet transform.
//!
//! Analysis keeps the full-length convention: a level with input length N
//! and filter length F yields `(N + F - 1) / 2` coefficients per band, so
//! reconstruction is exact for every boundary mode.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::filters::{self, FilterBank};
use crate::error::{Result, VibroError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveletFamily {
    /// `dbN`, N vanishing moments, 2N taps.
    Daubechies(u8),
    /// `biorP.Q`: P reconstruction and Q decomposition vanishing moments.
    Biorthogonal(u8, u8),
}

impl WaveletFamily {
    pub(crate) fn bank(&self) -> FilterBank {
        match *self {
            WaveletFamily::Daubechies(n) => filters::daubechies(n as usize),
            WaveletFamily::Biorthogonal(p, q) => filters::biorthogonal(p as usize, q as usize),
        }
        .expect("family validated at construction")
    }

    pub fn filter_len(&self) -> usize {
        self.bank().dec_lo.len()
    }

    pub fn is_orthogonal(&self) -> bool {
        matches!(self, WaveletFamily::Daubechies(_))
    }

    /// Every family with shipped filter coefficients.
    pub fn all() -> Vec<WaveletFamily> {
        let mut v: Vec<_> = (1..=10).map(WaveletFamily::Daubechies).collect();
        for (p, q) in [
            (1, 1), (1, 3), (1, 5), (2, 2), (2, 4), (2, 6), (2, 8), (3, 1), (3, 3),
            (3, 5), (3, 7), (3, 9), (4, 4), (5, 5), (6, 8),
        ] {
            v.push(WaveletFamily::Biorthogonal(p, q));
        }
        v
    }
}

impl fmt::Display for WaveletFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WaveletFamily::Daubechies(n) => write!(f, "db{n}"),
            WaveletFamily::Biorthogonal(p, q) => write!(f, "bior{p}.{q}"),
        }
    }
}

impl FromStr for WaveletFamily {
    type Err = VibroError;

    /// Accepts `db4`, `daubechies-4`, `bior2.2` and `biorthogonal-2.2`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let unknown = || VibroError::UnknownWavelet(s.to_string());
        let family = if let Some(rest) = lower.strip_prefix("daubechies-").or_else(|| lower.strip_prefix("db")) {
            WaveletFamily::Daubechies(rest.parse().map_err(|_| unknown())?)
        } else if let Some(rest) = lower.strip_prefix("biorthogonal-").or_else(|| lower.strip_prefix("bior")) {
            let (p, q) = rest.split_once('.').ok_or_else(unknown)?;
            WaveletFamily::Biorthogonal(p.parse().map_err(|_| unknown())?, q.parse().map_err(|_| unknown())?)
        } else {
            return Err(unknown());
        };
        let known = match family {
            WaveletFamily::Daubechies(n) => filters::daubechies(n as usize).is_some(),
            WaveletFamily::Biorthogonal(p, q) => filters::biorthogonal(p as usize, q as usize).is_some(),
        };
        if known {
            Ok(family)
        } else {
            Err(unknown())
        }
    }
}

impl Serialize for WaveletFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for WaveletFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryMode {
    /// Half-sample mirror: `x[-1] = x[0]`.
    #[default]
    Symmetric,
    Periodic,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WaveletSpec {
    pub family: WaveletFamily,
    pub levels: usize,
    #[serde(default)]
    pub boundary: BoundaryMode,
}

impl WaveletSpec {
    pub fn new(family: WaveletFamily, levels: usize) -> Self {
        Self { family, levels, boundary: BoundaryMode::Symmetric }
    }

    /// Checks the level count against a series of length `len`.
    pub fn validate_for(&self, len: usize) -> Result<()> {
        let max = max_level(len);
        if self.levels == 0 || self.levels > max {
            return Err(VibroError::LevelTooDeep { requested: self.levels, length: len, max });
        }
        Ok(())
    }
}

/// Deepest legal level for a series of length `len`: `floor(log2(len))`.
pub fn max_level(len: usize) -> usize {
    if len < 2 {
        0
    } else {
        (usize::BITS - 1 - len.leading_zeros()) as usize
    }
}

/// Coefficients of a multi-level decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientPyramid {
    /// Approximation at the deepest level.
    pub approx: Vec<f64>,
    /// Details, finest (level 1) first.
    pub details: Vec<Vec<f64>>,
    /// Input length at each level, level 1 first.
    pub input_lengths: Vec<usize>,
}

impl CoefficientPyramid {
    pub fn levels(&self) -> usize {
        self.details.len()
    }
}

#[inline]
fn extend_index(i: isize, n: usize, mode: BoundaryMode) -> Option<usize> {
    let n_i = n as isize;
    if (0..n_i).contains(&i) {
        return Some(i as usize);
    }
    match mode {
        BoundaryMode::Zero => None,
        BoundaryMode::Periodic => Some(i.rem_euclid(n_i) as usize),
        BoundaryMode::Symmetric => {
            let r = i.rem_euclid(2 * n_i);
            Some(if r < n_i { r as usize } else { (2 * n_i - 1 - r) as usize })
        }
    }
}

fn analysis_step(x: &[f64], lo: &[f64], hi: &[f64], mode: BoundaryMode) -> (Vec<f64>, Vec<f64>) {
    let n = x.len();
    let f = lo.len();
    let m = (n + f - 1) / 2;
    let mut a = vec![0.0; m];
    let mut d = vec![0.0; m];
    for i in 0..m {
        let (mut sa, mut sd) = (0.0, 0.0);
        for j in 0..f {
            let idx = 2 * i as isize + 1 - j as isize;
            if let Some(k) = extend_index(idx, n, mode) {
                sa += lo[j] * x[k];
                sd += hi[j] * x[k];
            }
        }
        a[i] = sa;
        d[i] = sd;
    }
    (a, d)
}

fn synthesis_step(a: &[f64], d: &[f64], lo: &[f64], hi: &[f64], out_len: usize) -> Vec<f64> {
    let f = lo.len();
    let m = a.len();
    let mut out = vec![0.0; out_len];
    for (o, slot) in out.iter_mut().enumerate() {
        // Position o in the output is sample o + F - 1 of the upsampled convolution.
        let n = o + f - 1;
        let mut s = 0.0;
        // Coefficient i sits at 2i + 1, so tap index is n - 2i - 1.
        let i_min = n.saturating_sub(f).div_ceil(2);
        let i_max = ((n - 1) / 2).min(m - 1);
        for i in i_min..=i_max {
            let tap = n - 2 * i - 1;
            s += a[i] * lo[tap] + d[i] * hi[tap];
        }
        *slot = s;
    }
    out
}

/// Forward transform.
pub fn dwt(x: &[f64], spec: &WaveletSpec) -> Result<CoefficientPyramid> {
    spec.validate_for(x.len())?;
    let bank = spec.family.bank();
    let mut approx = x.to_vec();
    let mut details = Vec::with_capacity(spec.levels);
    let mut input_lengths = Vec::with_capacity(spec.levels);
    for _ in 0..spec.levels {
        input_lengths.push(approx.len());
        let (a, d) = analysis_step(&approx, bank.dec_lo, bank.dec_hi, spec.boundary);
        details.push(d);
        approx = a;
    }
    Ok(CoefficientPyramid { approx, details, input_lengths })
}

/// Inverse transform; the family must match the one used for analysis.
pub fn idwt(pyramid: &CoefficientPyramid, spec: &WaveletSpec) -> Result<Vec<f64>> {
    let levels = pyramid.levels();
    if levels == 0 || pyramid.input_lengths.len() != levels {
        return Err(VibroError::Shape("pyramid level bookkeeping is inconsistent".into()));
    }
    let bank = spec.family.bank();
    let mut approx = pyramid.approx.clone();
    for level in (0..levels).rev() {
        let d = &pyramid.details[level];
        if d.len() != approx.len() {
            return Err(VibroError::Shape(format!(
                "level {}: approximation has {} coefficients, detail {}",
                level + 1,
                approx.len(),
                d.len()
            )));
        }
        approx = synthesis_step(&approx, d, bank.rec_lo, bank.rec_hi, pyramid.input_lengths[level]);
    }
    Ok(approx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn db(n: u8) -> WaveletFamily {
        WaveletFamily::Daubechies(n)
    }

    #[test]
    fn haar_constant_kills_details() {
        let p = dwt(&[1.0; 4], &WaveletSpec::new(db(1), 1)).unwrap();
        let r2 = std::f64::consts::SQRT_2;
        assert_eq!(p.approx.len(), 2);
        for (a, d) in p.approx.iter().zip(&p.details[0]) {
            assert!((a - r2).abs() < 1e-15);
            assert!(d.abs() < 1e-15);
        }
    }

    #[test]
    fn ramp_has_vanishing_db2_details() {
        let x: Vec<f64> = (0..64).map(|i| 0.5 * i as f64 - 3.0).collect();
        let p = dwt(&x, &WaveletSpec::new(db(2), 1)).unwrap();
        let d = &p.details[0];
        // Coefficients whose support touches the mirrored boundary are excluded.
        let f = 4;
        for &c in &d[f / 2..d.len() - f / 2] {
            assert!(c.abs() < 1e-10, "{c}");
        }
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!("db4".parse::<WaveletFamily>().unwrap(), db(4));
        assert_eq!("Daubechies-4".parse::<WaveletFamily>().unwrap(), db(4));
        assert_eq!("bior2.2".parse::<WaveletFamily>().unwrap(), WaveletFamily::Biorthogonal(2, 2));
        assert_eq!("biorthogonal-3.5".parse::<WaveletFamily>().unwrap().to_string(), "bior3.5");
        assert!(matches!("db42".parse::<WaveletFamily>(), Err(VibroError::UnknownWavelet(_))));
        assert!("coif2".parse::<WaveletFamily>().is_err());
        assert!("bior2.3".parse::<WaveletFamily>().is_err());
    }

    #[test]
    fn too_deep_is_rejected() {
        let x = vec![0.0; 64];
        let err = dwt(&x, &WaveletSpec::new(db(4), 7)).unwrap_err();
        assert!(matches!(err, VibroError::LevelTooDeep { requested: 7, length: 64, max: 6 }), "{err}");
        assert!(dwt(&x, &WaveletSpec::new(db(4), 0)).is_err());
        assert_eq!(max_level(64), 6);
        assert_eq!(max_level(500), 8);
        assert_eq!(max_level(1), 0);
    }
}
