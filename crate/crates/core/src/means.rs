//! Pythagorean means, moving averages of extended functions over windows
//! of consecutive integers, and the constructive inverse of the moving
//! geometric average.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

use crate::extension::ModExtended;
use crate::{AfError, Result};

/// The three Pythagorean combinators. Geometric and harmonic means of a
/// window containing 0 are 0 by convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum MeanKind {
    #[serde(rename = "AM")]
    Arithmetic,
    #[serde(rename = "GM")]
    Geometric,
    #[serde(rename = "HM")]
    Harmonic,
}

impl MeanKind {
    pub const ALL: [MeanKind; 3] = [MeanKind::Arithmetic, MeanKind::Geometric, MeanKind::Harmonic];

    /// Short token used in CSV headers and CLI flags.
    pub fn token(self) -> &'static str {
        match self {
            MeanKind::Arithmetic => "am",
            MeanKind::Geometric => "gm",
            MeanKind::Harmonic => "hm",
        }
    }

    /// One-character suffix of the nine-preorder label alphabet.
    pub fn label_char(self) -> char {
        match self {
            MeanKind::Arithmetic => '+',
            MeanKind::Geometric => '*',
            MeanKind::Harmonic => 'H',
        }
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MeanKind::Arithmetic => "AM",
            MeanKind::Geometric => "GM",
            MeanKind::Harmonic => "HM",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for MeanKind {
    type Err = AfError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "am" | "+" => Ok(MeanKind::Arithmetic),
            "gm" | "*" => Ok(MeanKind::Geometric),
            "hm" | "h" => Ok(MeanKind::Harmonic),
            _ => Err(AfError::Config(format!("unknown mean kind '{s}'"))),
        }
    }
}

/// Mean of a nonempty window of nonnegative reals.
///
/// The geometric mean takes the literal root of the product for short
/// windows and the exponential of the mean logarithm otherwise; ordering
/// decisions must go through [`compare_key`] instead of comparing these
/// values directly.
pub fn mean(kind: MeanKind, values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(AfError::Domain("mean of an empty window".into()));
    }
    if let Some(v) = values.iter().find(|v| **v < 0.0 || !v.is_finite()) {
        return Err(AfError::Domain(format!("mean of invalid value {v}")));
    }
    let m = values.len() as f64;
    Ok(match kind {
        MeanKind::Arithmetic => values.iter().sum::<f64>() / m,
        MeanKind::Geometric => {
            if values.contains(&0.0) {
                0.0
            } else if values.len() < 4 {
                values.iter().product::<f64>().powf(1.0 / m)
            } else {
                (values.iter().map(|v| v.ln()).sum::<f64>() / m).exp()
            }
        }
        MeanKind::Harmonic => {
            if values.contains(&0.0) {
                0.0
            } else {
                m / values.iter().map(|v| 1.0 / v).sum::<f64>()
            }
        }
    })
}

fn window(ext: &ModExtended, m: usize, x: i64) -> Vec<f64> {
    (0..m as i64).map(|i| ext.eval(x + i)).collect()
}

/// Mean of the extension over the forward window `(x, ..., x + m - 1)`.
pub fn moving_average(ext: &ModExtended, m: usize, kind: MeanKind, x: i64) -> Result<f64> {
    if m < 1 {
        return Err(AfError::Domain("moving average needs a window >= 1".into()));
    }
    mean(kind, &window(ext, m, x))
}

/// Monotone proxy for comparing moving averages. Arithmetic and harmonic
/// averages are their own keys; the geometric key is the mean logarithm,
/// with negative infinity standing in for windows containing a zero.
pub fn compare_key(ext: &ModExtended, m: usize, kind: MeanKind, x: i64) -> Result<f64> {
    if m < 1 {
        return Err(AfError::Domain("compare key needs a window >= 1".into()));
    }
    let w = window(ext, m, x);
    match kind {
        MeanKind::Geometric => {
            if w.contains(&0.0) {
                Ok(f64::NEG_INFINITY)
            } else {
                Ok(w.iter().map(|v| v.ln()).sum::<f64>() / w.len() as f64)
            }
        }
        _ => mean(kind, &w),
    }
}

/// One full period of a moving average: `values[x - 1]` holds the average
/// at `x` for `x` in `1..=n`, and the profile repeats with period `n`.
#[derive(Debug, Clone, Serialize)]
pub struct MaProfile {
    pub modulus: u64,
    pub window: usize,
    pub kind: MeanKind,
    pub values: Vec<f64>,
}

impl MaProfile {
    pub fn value_at(&self, x: i64) -> f64 {
        let n = self.modulus as i64;
        self.values[(x - 1).rem_euclid(n) as usize]
    }

    /// CSV rows `x,value` with a header, values printed at `precision`
    /// decimals. JSON serialization keeps full precision instead.
    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::from("x,value\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{:.*}\n", i + 1, precision, v));
        }
        out
    }
}

/// Materializes the moving average of `ext` over one period.
pub fn profile(ext: &ModExtended, m: usize, kind: MeanKind) -> Result<MaProfile> {
    let values = (1..=ext.modulus() as i64)
        .map(|x| moving_average(ext, m, kind, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(MaProfile {
        modulus: ext.modulus(),
        window: m,
        kind,
        values,
    })
}

/// A target function on a contiguous integer window, the input of the
/// reverse moving-average construction.
#[derive(Debug, Clone)]
pub struct GmTarget {
    lo: i64,
    values: Vec<f64>,
}

impl GmTarget {
    pub fn new(lo: i64, values: Vec<f64>) -> Self {
        GmTarget { lo, values }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    pub fn get(&self, x: i64) -> Option<f64> {
        if x < self.lo || x > self.hi() {
            None
        } else {
            Some(self.values[(x - self.lo) as usize])
        }
    }

    fn require(&self, x: i64) -> Result<f64> {
        self.get(x)
            .ok_or_else(|| AfError::Domain(format!("target has no value at {x}")))
    }
}

/// The function `r` constructed by [`reverse_geometric`], defined on
/// `[target.lo, target.hi + m - 1]`.
pub type ReverseGm = BTreeMap<i64, f64>;

/// Moving geometric average of a constructed map; evaluation helper for
/// round-trip checks.
pub fn moving_gm_of_map(r: &ReverseGm, m: usize, x: i64) -> Result<f64> {
    let w = (0..m as i64)
        .map(|i| {
            r.get(&(x + i))
                .copied()
                .ok_or_else(|| AfError::Domain(format!("r has no value at {}", x + i)))
        })
        .collect::<Result<Vec<_>>>()?;
    mean(MeanKind::Geometric, &w)
}

/// Constructs a generating function `r` whose order-`m` moving geometric
/// average reproduces `target` on its window.
///
/// The target must vanish on the band `-m+2 ..= 1` (forced by `r(1) = 0`)
/// and be strictly positive elsewhere on its window; for `m >= 2` the
/// window has to contain the whole band, since both recursions are
/// anchored there. The free values `r(2..=m)` and `r(-m+2..=0)` default
/// to 1 when no seeds are given.
pub fn reverse_geometric(
    target: &GmTarget,
    m: usize,
    seeds_y: Option<&[f64]>,
    seeds_z: Option<&[f64]>,
) -> Result<ReverseGm> {
    if m < 1 {
        return Err(AfError::Domain("reverse needs m >= 1".into()));
    }
    let band_lo = -(m as i64) + 2;
    for x in target.lo()..=target.hi() {
        let v = target.require(x)?;
        if (band_lo..=1).contains(&x) {
            if v != 0.0 {
                return Err(AfError::Domain(format!(
                    "target({x}) = {v} inside the forced-zero band"
                )));
            }
        } else if v <= 0.0 {
            return Err(AfError::Domain(format!(
                "target({x}) = {v} must be positive outside the band"
            )));
        }
    }

    if m == 1 {
        return Ok((target.lo()..=target.hi())
            .map(|x| (x, target.get(x).unwrap()))
            .collect());
    }
    if target.lo() > band_lo || target.hi() < 1 {
        return Err(AfError::Domain(format!(
            "target window [{}, {}] must contain the zero band [{band_lo}, 1]",
            target.lo(),
            target.hi()
        )));
    }

    let default_seeds = vec![1.0; m - 1];
    let ys = seeds_y.unwrap_or(&default_seeds);
    let zs = seeds_z.unwrap_or(&default_seeds);
    if ys.len() != m - 1 || zs.len() != m - 1 {
        return Err(AfError::Domain(format!(
            "need exactly {} seeds on each side",
            m - 1
        )));
    }
    if ys.iter().chain(zs).any(|&s| s <= 0.0) {
        return Err(AfError::Domain("seeds must be positive".into()));
    }

    let mi = m as i64;
    let mut r: ReverseGm = BTreeMap::new();
    r.insert(1, 0.0);
    // Seeds: r(i) = y_i for 2 <= i <= m, r(i) = z_i for -m+2 <= i <= 0.
    for (idx, i) in (2..=mi).enumerate() {
        r.insert(i, ys[idx]);
    }
    for (idx, i) in (band_lo..=0).enumerate() {
        r.insert(i, zs[idx]);
    }

    // Forward: r(m+1) = f(2)^m / prod(y), then
    // r(m+i) = (f(i+1)/f(i))^m * r(i) for i > 1.
    if target.hi() >= 2 {
        let y_prod: f64 = ys.iter().product();
        r.insert(mi + 1, target.require(2)?.powi(m as i32) / y_prod);
        let mut i = 2i64;
        while mi + i < target.hi() + mi {
            let ratio = target.require(i + 1)? / target.require(i)?;
            let prev = r[&i];
            r.insert(mi + i, ratio.powi(m as i32) * prev);
            i += 1;
        }
    }

    // Backward: r(-m+1) = f(-m+1)^m / prod(z), then
    // r(-m+i) = (f(-m+i)/f(-m+i+1))^m * r(i) for i < 1.
    if target.lo() <= -mi + 1 {
        let z_prod: f64 = zs.iter().product();
        r.insert(-mi + 1, target.require(-mi + 1)?.powi(m as i32) / z_prod);
        let mut i = 0i64;
        while -mi + i >= target.lo() {
            let ratio = target.require(-mi + i)? / target.require(-mi + i + 1)?;
            let next = r[&i];
            r.insert(-mi + i, ratio.powi(m as i32) * next);
            i -= 1;
        }
    }

    Ok(r)
}

/// Runs the order-2 reverse harmonic recursion `2/f(x) = 1/r(x) + 1/r(x+1)`
/// from the seed `r(2)` and returns the resulting values `r(2), r(3), ...`
/// up to `target.hi() + 1`. Unlike the geometric construction this can
/// produce negative values, which witness that no generating reverse
/// function exists for the given target.
pub fn reverse_harmonic_m2(target: &GmTarget, seed_r2: f64) -> Result<Vec<(i64, f64)>> {
    if seed_r2 <= 0.0 {
        return Err(AfError::Domain("seed r(2) must be positive".into()));
    }
    let mut recip = 1.0 / seed_r2;
    let mut out = vec![(2, seed_r2)];
    for x in 2..=target.hi() {
        let f = target.require(x)?;
        if f <= 0.0 {
            return Err(AfError::Domain(format!("target({x}) must be positive")));
        }
        recip = 2.0 / f - recip;
        out.push((x + 1, 1.0 / recip));
    }
    Ok(out)
}
