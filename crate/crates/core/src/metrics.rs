//! Centred pseudometrics on `Z`, tuple pseudometrics on `Z^m` combining
//! coordinate distances by Pythagorean means, centred pseudometrics on
//! `Z^m` and on consecutive-integer windows, and a metric-axiom checker.

use std::fmt;

use crate::arith::ClassTag;
use crate::extension::ModExtended;
use crate::means::{self, MeanKind};
use crate::{AfError, Result};

/// The three pseudometric families, keyed by the range contract of the
/// inducing function: distances are `f(x) + f(y)` for generating
/// functions, `g(x) + g(y) - 2` above the unit, `2 - h(x) - h(y)` below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricClass {
    Generating,
    AboveUnit,
    BelowUnit,
}

impl MetricClass {
    /// Collapses a range tag onto the family it belongs to.
    pub fn from_tag(tag: ClassTag) -> MetricClass {
        match tag {
            ClassTag::Generating | ClassTag::GeneratingSubUnit => MetricClass::Generating,
            ClassTag::AboveUnit => MetricClass::AboveUnit,
            ClassTag::BelowUnit | ClassTag::BelowUnitPositive => MetricClass::BelowUnit,
        }
    }

    /// Centred distance from the pair of function values at two points.
    /// The grouping keeps every family exactly symmetric under argument
    /// swap, since only the commutative sum sees both values.
    fn combine(self, fx: f64, fy: f64) -> f64 {
        match self {
            MetricClass::Generating => fx + fy,
            MetricClass::AboveUnit => (fx + fy) - 2.0,
            MetricClass::BelowUnit => 2.0 - (fx + fy),
        }
    }
}

impl fmt::Display for MetricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MetricClass::Generating => "generating",
            MetricClass::AboveUnit => "above-unit",
            MetricClass::BelowUnit => "below-unit",
        };
        f.write_str(s)
    }
}

/// One pseudometric on consecutive-integer windows: a classified extended
/// function, a window length and a mean kind.
#[derive(Debug, Clone)]
pub struct MetricSpec {
    class: MetricClass,
    ext: ModExtended,
    window: usize,
    kind: MeanKind,
}

impl MetricSpec {
    /// Builds a spec after checking that the extended function actually
    /// carries the range contract the requested family relies on.
    pub fn new(class: MetricClass, ext: ModExtended, window: usize, kind: MeanKind) -> Result<Self> {
        if window < 1 {
            return Err(AfError::Domain("metric window must be >= 1".into()));
        }
        if let Some(v) = ext.period_values().iter().find(|v| **v < 0.0 || !v.is_finite()) {
            return Err(AfError::Domain(format!(
                "{} takes the invalid value {v} inside its period",
                ext.base().name()
            )));
        }
        match ext.tag() {
            Some(tag) if MetricClass::from_tag(tag) == class => Ok(MetricSpec {
                class,
                ext,
                window,
                kind,
            }),
            tag => Err(AfError::Domain(format!(
                "{} does not satisfy the {class} contract (tag {tag:?})",
                ext.base().name()
            ))),
        }
    }

    /// Builds a spec inferring the family from the function's own tag.
    pub fn for_ext(ext: ModExtended, window: usize, kind: MeanKind) -> Result<Self> {
        let tag = ext.tag().ok_or_else(|| {
            AfError::Domain(format!("{} carries no range tag", ext.base().name()))
        })?;
        MetricSpec::new(MetricClass::from_tag(tag), ext, window, kind)
    }

    pub fn class(&self) -> MetricClass {
        self.class
    }

    pub fn ext(&self) -> &ModExtended {
        &self.ext
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn kind(&self) -> MeanKind {
        self.kind
    }
}

/// Centred pseudometric on `Z` induced by the extended function.
pub fn dist_z(class: MetricClass, ext: &ModExtended, x: i64, y: i64) -> f64 {
    if x == y {
        return 0.0;
    }
    class.combine(ext.eval(x), ext.eval(y))
}

fn ensure_same_len(xs: &[i64], ys: &[i64]) -> Result<usize> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(AfError::Domain(format!(
            "tuples must share a positive length, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    Ok(xs.len())
}

/// Pseudometric on `Z^m` combining the coordinate distances by the given
/// mean: the positional route, sensitive to coordinate pairing.
pub fn dist_tuple(
    class: MetricClass,
    ext: &ModExtended,
    kind: MeanKind,
    xs: &[i64],
    ys: &[i64],
) -> Result<f64> {
    ensure_same_len(xs, ys)?;
    let coord: Vec<f64> = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| dist_z(class, ext, x, y))
        .collect();
    means::mean(kind, &coord)
}

/// Mean of the extended function over an arbitrary tuple; the generating
/// value the centred pseudometrics are built from.
pub fn tuple_mean(ext: &ModExtended, kind: MeanKind, xs: &[i64]) -> Result<f64> {
    let values: Vec<f64> = xs.iter().map(|&x| ext.eval(x)).collect();
    means::mean(kind, &values)
}

/// Centred pseudometric on `Z^m`: tuples are compared through their mean
/// function values only, so the positional pairing plays no role. The
/// distance vanishes exactly on equal tuples.
pub fn dist_centred(
    class: MetricClass,
    ext: &ModExtended,
    kind: MeanKind,
    xs: &[i64],
    ys: &[i64],
) -> Result<f64> {
    ensure_same_len(xs, ys)?;
    if xs == ys {
        return Ok(0.0);
    }
    Ok(class.combine(tuple_mean(ext, kind, xs)?, tuple_mean(ext, kind, ys)?))
}

/// Centred pseudometric on consecutive-integer windows, identified by
/// their first elements; the specialization of [`dist_centred`] whose
/// tuple means become moving averages.
pub fn dist_sci(spec: &MetricSpec, x: i64, y: i64) -> f64 {
    if x == y {
        return 0.0;
    }
    let fx = means::moving_average(&spec.ext, spec.window, spec.kind, x)
        .expect("windows over a materialized extension cannot fail");
    let fy = means::moving_average(&spec.ext, spec.window, spec.kind, y)
        .expect("windows over a materialized extension cannot fail");
    spec.class.combine(fx, fy)
}

/// Outcome of comparing the positional and the centred route on a pair of
/// tuples under the compressed-pseudometrics relations: equality for the
/// arithmetic mean, domination of the centred route otherwise.
#[derive(Debug, Clone, Copy)]
pub struct CompressedCheck {
    pub tuple: f64,
    pub centred: f64,
    pub holds: bool,
}

/// Evaluates both routes for a generating-class function on tuples that
/// agree or disagree in every coordinate; mixed tuples are a precondition
/// error rather than a verdict.
pub fn compressed_relation_check(
    ext: &ModExtended,
    kind: MeanKind,
    xs: &[i64],
    ys: &[i64],
) -> Result<CompressedCheck> {
    ensure_same_len(xs, ys)?;
    let equal = xs.iter().zip(ys).filter(|(x, y)| x == y).count();
    if equal != 0 && equal != xs.len() {
        return Err(AfError::Precondition(format!(
            "{equal} of {} coordinates agree; need all or none",
            xs.len()
        )));
    }
    let tuple = dist_tuple(MetricClass::Generating, ext, kind, xs, ys)?;
    let centred = dist_centred(MetricClass::Generating, ext, kind, xs, ys)?;
    let slack = 1e-12 * tuple.abs().max(centred.abs()).max(1.0);
    let holds = match kind {
        MeanKind::Arithmetic => (tuple - centred).abs() <= slack,
        MeanKind::Geometric | MeanKind::Harmonic => tuple >= centred - slack,
    };
    Ok(CompressedCheck {
        tuple,
        centred,
        holds,
    })
}

/// A single axiom violation with its witness points.
#[derive(Debug, Clone, PartialEq)]
pub enum AxiomViolation {
    Identity { a: i64, d: f64 },
    Symmetry { a: i64, b: i64, dab: f64, dba: f64 },
    Triangle { a: i64, b: i64, c: i64, direct: f64, detour: f64 },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Identity { a, d } => write!(f, "d({a},{a}) = {d} != 0"),
            AxiomViolation::Symmetry { a, b, dab, dba } => {
                write!(f, "d({a},{b}) = {dab} != d({b},{a}) = {dba}")
            }
            AxiomViolation::Triangle {
                a,
                b,
                c,
                direct,
                detour,
            } => write!(f, "d({a},{c}) = {direct} > d({a},{b}) + d({b},{c}) = {detour}"),
        }
    }
}

/// Result of checking the pseudometric axioms over a sample.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub points: usize,
    pub triples_checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks identity, symmetry and the triangle inequality of a black-box
/// distance over the sample. Identity and symmetry are exact; the
/// triangle check allows `max(1e-12, 1e-9 * scale)` of additive slack for
/// summation-order noise. Triples are enumerated lexicographically and
/// capped at `trials`, so reports are deterministic.
pub fn check_axioms<D>(dist: D, sample: &[i64], trials: usize) -> AxiomReport
where
    D: Fn(i64, i64) -> f64,
{
    let mut violations = Vec::new();
    for &a in sample {
        let d = dist(a, a);
        if d != 0.0 {
            violations.push(AxiomViolation::Identity { a, d });
        }
    }
    for (i, &a) in sample.iter().enumerate() {
        for &b in &sample[i + 1..] {
            let dab = dist(a, b);
            let dba = dist(b, a);
            if dab != dba {
                violations.push(AxiomViolation::Symmetry { a, b, dab, dba });
            }
        }
    }
    let mut triples = 0usize;
    'outer: for &a in sample {
        for &b in sample {
            for &c in sample {
                if triples >= trials {
                    break 'outer;
                }
                triples += 1;
                let direct = dist(a, c);
                let detour = dist(a, b) + dist(b, c);
                let slack = (1e-9 * direct.abs().max(detour.abs())).max(1e-12);
                if direct > detour + slack {
                    violations.push(AxiomViolation::Triangle {
                        a,
                        b,
                        c,
                        direct,
                        detour,
                    });
                }
            }
        }
    }
    AxiomReport {
        points: sample.len(),
        triples_checked: triples,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::extend;
    use crate::registry::lookup;

    fn ext(name: &str, n: u64) -> ModExtended {
        extend(&lookup(name).unwrap(), n).unwrap()
    }

    #[test]
    fn dist_z_examples() {
        let om13 = ext("Omega", 13);
        assert_eq!(dist_z(MetricClass::Generating, &om13, 5, 5), 0.0);
        assert_eq!(dist_z(MetricClass::Generating, &om13, 1, 4), 2.0);
        let rec13 = ext("recip", 13);
        assert!((dist_z(MetricClass::BelowUnit, &rec13, 1, 2) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn dist_tuple_examples() {
        let ld6 = ext("ld", 6);
        for kind in MeanKind::ALL {
            let d = dist_tuple(MetricClass::Generating, &ld6, kind, &[2, 3], &[2, 3]).unwrap();
            assert_eq!(d, 0.0);
        }
        // One equal coordinate nullifies the geometric route.
        let d =
            dist_tuple(MetricClass::Generating, &ld6, MeanKind::Geometric, &[2, 3], &[2, 5])
                .unwrap();
        assert_eq!(d, 0.0);
        let d =
            dist_tuple(MetricClass::Generating, &ld6, MeanKind::Arithmetic, &[2, 3], &[6, 1])
                .unwrap();
        assert!((d - 0.8333).abs() < 5e-5);
        assert!(dist_tuple(MetricClass::Generating, &ld6, MeanKind::Arithmetic, &[1], &[]).is_err());
    }

    #[test]
    fn dist_centred_examples() {
        let ld6 = ext("ld", 6);
        let d = dist_centred(
            MetricClass::Generating,
            &ld6,
            MeanKind::Arithmetic,
            &[2, 3],
            &[5, 6],
        )
        .unwrap();
        // Exactly 5/12 + 31/60; the printed 0.4167 + 0.5167 = 0.9334
        // carries two roundings.
        assert!((d - 14.0 / 15.0).abs() < 1e-12);
        assert!((d - 0.9334).abs() < 1e-4);
        assert_eq!(
            dist_centred(
                MetricClass::Generating,
                &ld6,
                MeanKind::Arithmetic,
                &[2, 3],
                &[2, 3]
            )
            .unwrap(),
            0.0
        );
        // Below-unit distances stay within [0, 2].
        let rec = ext("recip", 13);
        for kind in MeanKind::ALL {
            for x in 1..=13 {
                for y in 1..=13 {
                    let d =
                        dist_centred(MetricClass::BelowUnit, &rec, kind, &[x, x + 1], &[y, y + 1])
                            .unwrap();
                    assert!((-1e-12..=2.0 + 1e-12).contains(&d));
                }
            }
        }
    }

    #[test]
    fn dist_sci_examples() {
        let ld6 = MetricSpec::new(
            MetricClass::Generating,
            ext("ld", 6),
            2,
            MeanKind::Arithmetic,
        )
        .unwrap();
        assert_eq!(dist_sci(&ld6, 4, 4), 0.0);
        assert!((dist_sci(&ld6, 2, 5) - 14.0 / 15.0).abs() < 1e-12);
        assert!((dist_sci(&ld6, 2, 5) - 0.9334).abs() < 1e-4);

        let eld6 = MetricSpec::new(
            MetricClass::AboveUnit,
            ext("exp(ld)", 6),
            2,
            MeanKind::Arithmetic,
        )
        .unwrap();
        // 1.3244 + 1.5222 - 2 read off the table; two roundings stack.
        assert!((dist_sci(&eld6, 1, 2) - 0.8466).abs() < 1e-4);
    }

    #[test]
    fn dist_sci_matches_centred_windows() {
        let spec = MetricSpec::for_ext(ext("tau", 13), 3, MeanKind::Harmonic).unwrap();
        for x in -5..=15i64 {
            for y in -5..=15i64 {
                let xs: Vec<i64> = (x..x + 3).collect();
                let ys: Vec<i64> = (y..y + 3).collect();
                let via_windows =
                    dist_centred(MetricClass::AboveUnit, spec.ext(), spec.kind(), &xs, &ys)
                        .unwrap();
                assert_eq!(dist_sci(&spec, x, y), via_windows);
            }
        }
    }

    #[test]
    fn spec_rejects_mismatched_family() {
        assert!(MetricSpec::new(
            MetricClass::Generating,
            ext("tau", 13),
            2,
            MeanKind::Arithmetic
        )
        .is_err());
        assert!(MetricSpec::new(
            MetricClass::AboveUnit,
            ext("tau", 13),
            0,
            MeanKind::Arithmetic
        )
        .is_err());
    }

    #[test]
    fn permuted_tuples_keep_positive_distance() {
        // The centred distance vanishes only on equal tuples. Permutations
        // share their mean values, so the distance is twice the common
        // mean rather than zero; the relation treats tuples, not multisets.
        let ld6 = ext("ld", 6);
        let xs = [2, 3, 4];
        let ys = [4, 3, 2];
        let d = dist_centred(MetricClass::Generating, &ld6, MeanKind::Arithmetic, &xs, &ys)
            .unwrap();
        let f = tuple_mean(&ld6, MeanKind::Arithmetic, &xs).unwrap();
        assert!((d - 2.0 * f).abs() < 1e-12);
        assert!(d > 0.0);
    }

    #[test]
    fn centre_property() {
        // Distance from the all-ones tuple recovers the generating value.
        let ld6 = ext("ld", 6);
        for kind in MeanKind::ALL {
            for x in 1..=6i64 {
                let xs = [x, x + 1];
                let d = dist_centred(MetricClass::Generating, &ld6, kind, &[1, 1], &xs).unwrap();
                let f = tuple_mean(&ld6, kind, &xs).unwrap();
                if xs != [1, 1] {
                    assert!((d - f).abs() <= 1e-12 * f.max(1.0));
                }
            }
        }
    }

    #[test]
    fn axioms_hold_on_generated_metrics() {
        let sample: Vec<i64> = (1..=100).collect();
        let om13 = ext("Omega", 13);
        let report = check_axioms(
            |a, b| dist_z(MetricClass::Generating, &om13, a, b),
            &sample,
            1_100_000,
        );
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.triples_checked, 1_000_000);

        let sample: Vec<i64> = (1..=40).collect();
        assert!(report.passed(), "{:?}", report.violations);

        let spec =
            MetricSpec::new(MetricClass::Generating, om13.clone(), 2, MeanKind::Geometric).unwrap();
        let report = check_axioms(|a, b| dist_sci(&spec, a, b), &sample, 200_000);
        assert!(report.passed(), "{:?}", report.violations);

        let report = check_axioms(
            |a, b| {
                dist_tuple(
                    MetricClass::Generating,
                    &om13,
                    MeanKind::Geometric,
                    &[a, a + 1],
                    &[b, b + 1],
                )
                .unwrap()
            },
            &sample,
            200_000,
        );
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn tuple_gm_hm_triangle_counterexamples() {
        // The geometric and harmonic tuple combinations are genuinely not
        // triangle metrics, even though each coordinate distance is one:
        // superadditivity of those means over sums runs against the
        // required subadditivity. Two integer-exact witnesses.
        let tau13 = ext("tau", 13);
        let d = |x: i64, y: i64| {
            dist_tuple(
                MetricClass::AboveUnit,
                &tau13,
                MeanKind::Geometric,
                &[x, x + 1],
                &[y, y + 1],
            )
            .unwrap()
        };
        assert_eq!(d(11, 12), 6.0);
        assert!((d(11, 1) - 6.0_f64.sqrt()).abs() < 1e-12);
        assert!((d(1, 12) - 10.0_f64.sqrt()).abs() < 1e-12);
        assert!(d(11, 12) > d(11, 1) + d(1, 12));

        let om8 = ext("Omega", 8);
        let d = |x: i64, y: i64| {
            dist_tuple(
                MetricClass::Generating,
                &om8,
                MeanKind::Harmonic,
                &[x, x + 1],
                &[y, y + 1],
            )
            .unwrap()
        };
        assert!((d(7, 8) - 24.0 / 7.0).abs() < 1e-12);
        assert!((d(7, 1) - 1.6).abs() < 1e-12);
        assert!((d(1, 8) - 1.5).abs() < 1e-12);
        assert!(d(7, 8) > d(7, 1) + d(1, 8));
    }

    #[test]
    fn axioms_flag_broken_distance() {
        let ld6 = ext("ld", 6);
        let report = check_axioms(|a, b| ld6.eval(a) - ld6.eval(b), &(1..=6).collect::<Vec<_>>(), 1000);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, AxiomViolation::Symmetry { .. })));
    }

    #[test]
    fn compressed_examples() {
        let om13 = ext("Omega", 13);
        let c = compressed_relation_check(&om13, MeanKind::Arithmetic, &[2, 3], &[4, 5]).unwrap();
        assert!(c.holds);
        assert!((c.tuple - c.centred).abs() < 1e-12);

        let c = compressed_relation_check(&om13, MeanKind::Geometric, &[2, 3], &[4, 5]).unwrap();
        assert!(c.holds);
        assert!(c.tuple >= c.centred - 1e-12);

        let c = compressed_relation_check(&om13, MeanKind::Harmonic, &[2, 3], &[2, 3]).unwrap();
        assert_eq!((c.tuple, c.centred), (0.0, 0.0));

        assert!(matches!(
            compressed_relation_check(&om13, MeanKind::Arithmetic, &[2, 3], &[2, 5]),
            Err(AfError::Precondition(_))
        ));
    }
}
