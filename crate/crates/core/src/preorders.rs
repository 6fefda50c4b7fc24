//! Preorders induced by moving-average keys: relation matrices over one
//! period, the nine-preorder family of a function triple with its
//! equivalence-class partition, persistence under growing moduli, and
//! extrema/duality analyses of the underlying profiles.

use std::fmt;

use serde::Serialize;

use crate::arith::FunctionTriple;
use crate::extension::{extend, ModExtended};
use crate::means::{compare_key, profile, MeanKind};
use crate::metrics::{MetricClass, MetricSpec};
use crate::{AfError, Result, KEY_TIE_TOL};

/// Slot of a function inside a triple `(f, g, h) = (f, e^f, e^(-f))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TripleSlot {
    Gen,
    Exp,
    NegExp,
}

impl TripleSlot {
    pub const ALL: [TripleSlot; 3] = [TripleSlot::Gen, TripleSlot::Exp, TripleSlot::NegExp];

    fn letter(self) -> char {
        match self {
            TripleSlot::Gen => 'f',
            TripleSlot::Exp => 'g',
            TripleSlot::NegExp => 'h',
        }
    }

    fn class(self) -> MetricClass {
        match self {
            TripleSlot::Gen => MetricClass::Generating,
            TripleSlot::Exp => MetricClass::AboveUnit,
            TripleSlot::NegExp => MetricClass::BelowUnit,
        }
    }
}

/// One of the nine (function, mean) preorder labels of a triple, written
/// `f+`, `f*`, `fH`, `g+`, `g*`, `gH`, `h+`, `h*`, `hH`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PreorderLabel {
    pub slot: TripleSlot,
    pub kind: MeanKind,
}

const fn lbl(slot: TripleSlot, kind: MeanKind) -> PreorderLabel {
    PreorderLabel { slot, kind }
}

/// The fixed label alphabet `f+ f* fH g+ g* gH h+ h* hH`.
pub const ALL_LABELS: [PreorderLabel; 9] = [
    lbl(TripleSlot::Gen, MeanKind::Arithmetic),
    lbl(TripleSlot::Gen, MeanKind::Geometric),
    lbl(TripleSlot::Gen, MeanKind::Harmonic),
    lbl(TripleSlot::Exp, MeanKind::Arithmetic),
    lbl(TripleSlot::Exp, MeanKind::Geometric),
    lbl(TripleSlot::Exp, MeanKind::Harmonic),
    lbl(TripleSlot::NegExp, MeanKind::Arithmetic),
    lbl(TripleSlot::NegExp, MeanKind::Geometric),
    lbl(TripleSlot::NegExp, MeanKind::Harmonic),
];

impl fmt::Display for PreorderLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.slot.letter(), self.kind.label_char())
    }
}

impl std::str::FromStr for PreorderLabel {
    type Err = AfError;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let (slot, kind) = (chars.next(), chars.next());
        if chars.next().is_some() {
            return Err(AfError::Config(format!("bad preorder label '{s}'")));
        }
        let slot = match slot {
            Some('f') => TripleSlot::Gen,
            Some('g') => TripleSlot::Exp,
            Some('h') => TripleSlot::NegExp,
            _ => return Err(AfError::Config(format!("bad preorder label '{s}'"))),
        };
        let kind = match kind {
            Some('+') => MeanKind::Arithmetic,
            Some('*') => MeanKind::Geometric,
            Some('H') => MeanKind::Harmonic,
            _ => return Err(AfError::Config(format!("bad preorder label '{s}'"))),
        };
        Ok(PreorderLabel { slot, kind })
    }
}

/// A preorder on consecutive-integer windows, wrapped around a metric
/// spec. Generating and above-unit keys order ascending, below-unit keys
/// descending; ties are taken at [`KEY_TIE_TOL`] relative.
#[derive(Debug, Clone)]
pub struct PreorderSpec {
    spec: MetricSpec,
}

impl PreorderSpec {
    pub fn new(spec: MetricSpec) -> Self {
        PreorderSpec { spec }
    }

    /// Spec for one label of a triple, extending the slot function by `n`.
    pub fn for_label(
        triple: &FunctionTriple,
        n: u64,
        m: usize,
        label: PreorderLabel,
    ) -> Result<Self> {
        let desc = match label.slot {
            TripleSlot::Gen => &triple.f,
            TripleSlot::Exp => &triple.g,
            TripleSlot::NegExp => &triple.h,
        };
        let ext = extend(desc, n)?;
        Ok(PreorderSpec {
            spec: MetricSpec::new(label.slot.class(), ext, m, label.kind)?,
        })
    }

    pub fn metric(&self) -> &MetricSpec {
        &self.spec
    }

    pub fn modulus(&self) -> u64 {
        self.spec.ext().modulus()
    }

    /// True when larger keys rank earlier (below-unit functions).
    pub fn descending(&self) -> bool {
        self.spec.class() == MetricClass::BelowUnit
    }

    pub fn key(&self, x: i64) -> f64 {
        compare_key(self.spec.ext(), self.spec.window(), self.spec.kind(), x)
            .expect("keys over a materialized extension cannot fail")
    }

    /// One key per period position, indexed by `x - 1`.
    pub fn keys(&self) -> Vec<f64> {
        (1..=self.modulus() as i64).map(|x| self.key(x)).collect()
    }
}

fn keys_equal(a: f64, b: f64) -> bool {
    if a == b {
        return true;
    }
    if a.is_infinite() || b.is_infinite() {
        return false;
    }
    (a - b).abs() <= KEY_TIE_TOL * 1.0_f64.max(a.abs()).max(b.abs())
}

fn key_pair_related(a: f64, b: f64, descending: bool) -> bool {
    if descending {
        a > b || keys_equal(a, b)
    } else {
        a < b || keys_equal(a, b)
    }
}

/// Window at `x` precedes window at `y` under the given preorder.
pub fn compare(spec: &PreorderSpec, x: i64, y: i64) -> bool {
    key_pair_related(spec.key(x), spec.key(y), spec.descending())
}

/// The complete relation over one period: cell `(x, y)` holds iff the
/// window at `x` precedes the window at `y`. Periodicity makes this
/// matrix the full preorder up to residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreorderMatrix {
    modulus: u64,
    cells: Vec<bool>,
}

impl PreorderMatrix {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// 1-based lookup.
    pub fn get(&self, x: u64, y: u64) -> bool {
        self.cells[((x - 1) * self.modulus + (y - 1)) as usize]
    }

    /// Grid of `0`/`1` rows, one line per `x`.
    pub fn to_csv(&self) -> String {
        let n = self.modulus;
        let mut out = String::new();
        for x in 1..=n {
            let row: Vec<&str> = (1..=n)
                .map(|y| if self.get(x, y) { "1" } else { "0" })
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Materializes the relation matrix of a preorder over its period.
pub fn matrix(spec: &PreorderSpec) -> PreorderMatrix {
    let keys = spec.keys();
    let n = spec.modulus() as usize;
    let desc = spec.descending();
    let mut cells = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            cells[x * n + y] = key_pair_related(keys[x], keys[y], desc);
        }
    }
    PreorderMatrix {
        modulus: spec.modulus(),
        cells,
    }
}

/// Partition of the nine preorder labels of a triple into classes of
/// identical relations. The three groups that are equivalent for every
/// admissible triple are asserted, so at most five blocks remain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreorderPartition {
    blocks: Vec<Vec<PreorderLabel>>,
}

#[derive(Serialize)]
struct PartitionJson<'a> {
    blocks: &'a Vec<Vec<String>>,
}

impl PreorderPartition {
    pub fn blocks(&self) -> &[Vec<PreorderLabel>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing `label`.
    pub fn block_of(&self, label: PreorderLabel) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&label))
            .expect("partition covers the full alphabet")
    }

    /// JSON of the shape `{"blocks": [["f+","g*","h*"], ...]}` with the
    /// fixed label alphabet and stable ordering.
    pub fn to_json(&self) -> String {
        let blocks: Vec<Vec<String>> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|l| l.to_string()).collect())
            .collect();
        serde_json::to_string(&PartitionJson { blocks: &blocks }).expect("serialization")
    }
}

/// The label groups that provably induce the same preorder for every
/// admissible triple.
pub const GUARANTEED_GROUPS: [&[PreorderLabel]; 3] = [
    &[ALL_LABELS[0], ALL_LABELS[4], ALL_LABELS[7]], // f+, g*, h*
    &[ALL_LABELS[3], ALL_LABELS[8]],                // g+, hH
    &[ALL_LABELS[6], ALL_LABELS[5]],                // h+, gH
];

/// Computes all nine relation matrices of `triple` over modulus `n` with
/// window `m` and groups labels whose matrices agree cell for cell. A
/// split guaranteed group can only mean an implementation bug and is
/// reported as an internal-consistency error, never as valid output.
pub fn partition(triple: &FunctionTriple, n: u64, m: usize) -> Result<PreorderPartition> {
    let mut reps: Vec<(PreorderMatrix, Vec<PreorderLabel>)> = Vec::new();
    for label in ALL_LABELS {
        let spec = PreorderSpec::for_label(triple, n, m, label)?;
        let mat = matrix(&spec);
        match reps.iter_mut().find(|(rep, _)| *rep == mat) {
            Some((_, labels)) => labels.push(label),
            None => reps.push((mat, vec![label])),
        }
    }
    let partition = PreorderPartition {
        blocks: reps.into_iter().map(|(_, labels)| labels).collect(),
    };
    for group in GUARANTEED_GROUPS {
        let first = partition.block_of(group[0]);
        for &label in &group[1..] {
            if partition.block_of(label) != first {
                return Err(AfError::Internal(format!(
                    "guaranteed group around {} split across blocks for {} (n={n}, m={m})",
                    group[0], triple.f.name(),
                )));
            }
        }
    }
    if partition.block_count() > 5 {
        return Err(AfError::Internal(format!(
            "{} blocks exceed the five-class bound",
            partition.block_count()
        )));
    }
    Ok(partition)
}

/// Checks that a preorder disagreement witnessed inside the stable range
/// `1..=n-m+1` persists when the modulus grows from `n` to `k`: the keys
/// there only depend on function values up to `n`, which both moduli
/// evaluate identically. Returns true when no disagreement exists at `n`
/// or when the same disagreement recurs at `k`.
pub fn persistence_check(
    triple: &FunctionTriple,
    n: u64,
    m: usize,
    k: u64,
    positions: (i64, i64),
    labels: (PreorderLabel, PreorderLabel),
) -> Result<bool> {
    if k < n {
        return Err(AfError::Domain(format!("k = {k} must be at least n = {n}")));
    }
    let (x, y) = positions;
    let stable = n as i64 - m as i64 + 1;
    if !(1..=stable).contains(&x) || !(1..=stable).contains(&y) {
        return Err(AfError::Domain(format!(
            "positions ({x}, {y}) outside the stable range 1..={stable}"
        )));
    }
    let at = |modulus: u64, label: PreorderLabel| -> Result<bool> {
        let spec = PreorderSpec::for_label(triple, modulus, m, label)?;
        Ok(compare(&spec, x, y))
    };
    let (r1n, r2n) = (at(n, labels.0)?, at(n, labels.1)?);
    if r1n == r2n {
        return Ok(true);
    }
    Ok(at(k, labels.0)? == r1n && at(k, labels.1)? == r2n)
}

/// Extrema of one moving-average profile over a period. Ties within the
/// key tolerance are all listed.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremaReport {
    pub kind: MeanKind,
    pub window: usize,
    pub argmax: Vec<u64>,
    pub argmin: Vec<u64>,
    pub max: f64,
    pub min: f64,
}

/// Scans the profile of `ext` for extrema.
pub fn extrema(ext: &ModExtended, m: usize, kind: MeanKind) -> Result<ExtremaReport> {
    if m < 1 || m as u64 > ext.modulus() {
        return Err(AfError::Domain(format!(
            "extrema window {m} outside 1..={}",
            ext.modulus()
        )));
    }
    let prof = profile(ext, m, kind)?;
    let max = prof.values.iter().cloned().fold(f64::MIN, f64::max);
    let min = prof.values.iter().cloned().fold(f64::MAX, f64::min);
    let collect = |target: f64| -> Vec<u64> {
        prof.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| keys_equal(v, target))
            .map(|(i, _)| i as u64 + 1)
            .collect()
    };
    Ok(ExtremaReport {
        kind,
        window: m,
        argmax: collect(max),
        argmin: collect(min),
        max,
        min,
    })
}

/// Witness mapping of the extrema duality between the window-`m` and the
/// window-`(n-m)` arithmetic profiles: positions shift by `m` and swap
/// roles. `identity_gap` is the largest deviation of the full-period
/// decomposition `(m/n) p_m(x) + ((n-m)/n) p_{n-m}(x+m) = mean` observed.
#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub holds: bool,
    pub max_to_min: Vec<(u64, u64)>,
    pub min_to_max: Vec<(u64, u64)>,
    pub identity_gap: f64,
}

/// Checks the arithmetic-mean duality of extrema for window `m < n`.
pub fn duality_check(ext: &ModExtended, m: usize) -> Result<DualityReport> {
    let n = ext.modulus();
    if m < 1 || m as u64 >= n {
        return Err(AfError::Domain(format!(
            "duality window {m} outside 1..{n}"
        )));
    }
    let co = (n - m as u64) as usize;
    let fore = extrema(ext, m, MeanKind::Arithmetic)?;
    let aft = extrema(ext, co, MeanKind::Arithmetic)?;
    let p_fore = profile(ext, m, MeanKind::Arithmetic)?;
    let p_aft = profile(ext, co, MeanKind::Arithmetic)?;
    let full = profile(ext, n as usize, MeanKind::Arithmetic)?.values[0];

    let wrap = |x: u64| -> u64 { (x as i64 + m as i64 - 1).rem_euclid(n as i64) as u64 + 1 };
    let mut holds = true;
    let mut max_to_min = Vec::new();
    for &x0 in &fore.argmax {
        let t = wrap(x0);
        holds &= aft.argmin.contains(&t);
        max_to_min.push((x0, t));
    }
    let mut min_to_max = Vec::new();
    for &x1 in &fore.argmin {
        let t = wrap(x1);
        holds &= aft.argmax.contains(&t);
        min_to_max.push((x1, t));
    }

    let mut identity_gap: f64 = 0.0;
    for x in 1..=n as i64 {
        let lhs = m as f64 / n as f64 * p_fore.value_at(x)
            + co as f64 / n as f64 * p_aft.value_at(x + m as i64);
        identity_gap = identity_gap.max((lhs - full).abs() / full.abs().max(1.0));
    }

    Ok(DualityReport {
        holds,
        max_to_min,
        min_to_max,
        identity_gap,
    })
}
