//! Base arithmetic functions on the positive integers: prime factorization,
//! a catalog of classical functions, classification into admissible sets,
//! and the transforms that build function triples and supplements.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::{AfError, Result};

/// Largest argument accepted by [`factorize`]. Trial division against a
/// fixed small-prime sieve stays fast up to here.
pub const FACTORIZE_MAX: u64 = 1_000_000_000;

/// Largest argument for which prime-sum functions (`theta`) are evaluated.
pub const THETA_MAX: u64 = 1 << 20;

/// Default probe bound used by [`classify`] when callers have no opinion.
/// Range conditions of admissible functions are universally quantified;
/// the probe turns them into an audited finite assumption.
pub const DEFAULT_PROBE_RANGE: u64 = 1000;

fn primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = THETA_MAX as usize;
        let mut composite = vec![false; limit + 1];
        let mut out = Vec::new();
        for p in 2..=limit {
            if !composite[p] {
                out.push(p as u32);
                let mut q = p * p;
                while q <= limit {
                    composite[q] = true;
                    q += p;
                }
            }
        }
        out
    })
}

/// Prime factorization `x = p1^a1 * ... * pk^ak` with primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Product of all prime powers; recovers the factored input.
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, a)| p.pow(a)).product()
    }
}

/// Factorizes `x` by trial division over the precomputed sieve.
/// `factorize(1)` yields the empty product.
pub fn factorize(x: u64) -> Result<Factorization> {
    if x == 0 || x > FACTORIZE_MAX {
        return Err(AfError::Domain(format!(
            "factorize: argument {x} outside 1..={FACTORIZE_MAX}"
        )));
    }
    let mut rest = x;
    let mut factors = Vec::new();
    for &p in primes() {
        let p = p as u64;
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut a = 0u32;
            while rest % p == 0 {
                rest /= p;
                a += 1;
            }
            factors.push((p, a));
        }
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { factors })
}

/// Admissible class of an arithmetic function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FnClass {
    /// Additive with nonnegative values; forces `f(1) = 0`.
    Additive,
    /// Multiplicative with values `>= 1`; forces `g(1) = 1`.
    Multiplicative,
    /// Multiplicative with values in `[0, 1]`; forces `h(1) = 1`.
    Subunit,
    /// Subunit with strictly positive values.
    SubunitPositive,
    /// No admissible structure detected.
    Generic,
}

impl FnClass {
    /// True for `Subunit` and its positive refinement.
    pub fn is_subunit(self) -> bool {
        matches!(self, FnClass::Subunit | FnClass::SubunitPositive)
    }
}

impl fmt::Display for FnClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FnClass::Additive => "additive",
            FnClass::Multiplicative => "multiplicative",
            FnClass::Subunit => "subunit",
            FnClass::SubunitPositive => "subunit-positive",
            FnClass::Generic => "generic",
        };
        f.write_str(s)
    }
}

/// Range contract of a function relative to the centre value at 1.
/// The tag decides which pseudometric formula applies, independently of
/// any additive or multiplicative structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassTag {
    /// `f(1) = 0`, `f >= 0`.
    Generating,
    /// Generating with all values `<= 1`.
    GeneratingSubUnit,
    /// `g(1) = 1`, `g >= 1`.
    AboveUnit,
    /// `h(1) = 1`, `0 <= h <= 1`.
    BelowUnit,
    /// BelowUnit with strictly positive values.
    BelowUnitPositive,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassTag::Generating => "generating",
            ClassTag::GeneratingSubUnit => "generating-subunit",
            ClassTag::AboveUnit => "above-unit",
            ClassTag::BelowUnit => "below-unit",
            ClassTag::BelowUnitPositive => "below-unit-positive",
        };
        f.write_str(s)
    }
}

type EvalFn = Arc<dyn Fn(u64) -> Result<f64> + Send + Sync>;

/// A named arithmetic function `N -> R>=0` with declared morphism flags
/// and a probed classification. Immutable after construction and cheap to
/// clone; safe to share across threads.
#[derive(Clone)]
pub struct FunctionDescriptor {
    name: String,
    eval: EvalFn,
    is_additive: bool,
    is_multiplicative: bool,
    class: FnClass,
    tag: Option<ClassTag>,
}

impl fmt::Debug for FunctionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionDescriptor")
            .field("name", &self.name)
            .field("is_additive", &self.is_additive)
            .field("is_multiplicative", &self.is_multiplicative)
            .field("class", &self.class)
            .field("tag", &self.tag)
            .finish()
    }
}

impl FunctionDescriptor {
    /// Wraps a closure as an unclassified descriptor. The morphism flags
    /// are declared by the caller, not probed.
    pub fn from_fn<F>(name: &str, is_additive: bool, is_multiplicative: bool, eval: F) -> Self
    where
        F: Fn(u64) -> Result<f64> + Send + Sync + 'static,
    {
        FunctionDescriptor {
            name: name.to_string(),
            eval: Arc::new(eval),
            is_additive,
            is_multiplicative,
            class: FnClass::Generic,
            tag: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_additive(&self) -> bool {
        self.is_additive
    }

    pub fn is_multiplicative(&self) -> bool {
        self.is_multiplicative
    }

    /// Admissible class assigned by the last [`classify`] call.
    pub fn class(&self) -> FnClass {
        self.class
    }

    /// Range-contract tag assigned by the last [`classify`] call.
    pub fn tag(&self) -> Option<ClassTag> {
        self.tag
    }

    /// Evaluates the function at `x >= 1`. Adding positive zero folds the
    /// negative zero of empty float sums back to plain zero.
    pub fn eval(&self, x: u64) -> Result<f64> {
        if x == 0 {
            return Err(AfError::Domain(format!(
                "{}: argument must be positive",
                self.name
            )));
        }
        Ok((self.eval)(x)? + 0.0)
    }
}

/// Evaluates a descriptor at `x`; thin alias kept for symmetry with the
/// catalog operations.
pub fn eval_base(f: &FunctionDescriptor, x: u64) -> Result<f64> {
    f.eval(x)
}

const UNIT_EPS: f64 = 1e-12;

/// Probes `f` on `1..=probe_range` and returns a copy with the admissible
/// class and range tag set. Any violation degrades to `Generic` / no tag.
/// Idempotent and deterministic for a fixed probe range.
pub fn classify(f: &FunctionDescriptor, probe_range: u64) -> Result<FunctionDescriptor> {
    if probe_range < 2 {
        return Err(AfError::Domain(
            "classify: probe_range must be at least 2".into(),
        ));
    }
    let mut nonneg = true;
    let mut all_ge_one = true;
    let mut all_le_one = true;
    let mut all_positive = true;
    let at_one = f.eval(1)?;
    for x in 1..=probe_range {
        let v = f.eval(x)?;
        if !v.is_finite() || v < 0.0 {
            nonneg = false;
            break;
        }
        all_ge_one &= v >= 1.0 - UNIT_EPS;
        all_le_one &= v <= 1.0 + UNIT_EPS;
        all_positive &= v > 0.0;
    }

    let mut out = f.clone();
    out.class = FnClass::Generic;
    out.tag = None;
    if !nonneg {
        return Ok(out);
    }

    let one_is_zero = at_one.abs() <= UNIT_EPS;
    let one_is_one = (at_one - 1.0).abs() <= UNIT_EPS;

    out.tag = if one_is_zero {
        if all_le_one {
            Some(ClassTag::GeneratingSubUnit)
        } else {
            Some(ClassTag::Generating)
        }
    } else if one_is_one && all_ge_one {
        Some(ClassTag::AboveUnit)
    } else if one_is_one && all_le_one {
        if all_positive {
            Some(ClassTag::BelowUnitPositive)
        } else {
            Some(ClassTag::BelowUnit)
        }
    } else {
        None
    };

    out.class = if f.is_additive && one_is_zero {
        FnClass::Additive
    } else if f.is_multiplicative && one_is_one && all_ge_one {
        FnClass::Multiplicative
    } else if f.is_multiplicative && one_is_one && all_le_one {
        if all_positive {
            FnClass::SubunitPositive
        } else {
            FnClass::Subunit
        }
    } else {
        FnClass::Generic
    };
    Ok(out)
}

/// Transform kinds between generating functions and their supplements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    /// `g = f + 1`; needs a generating input.
    ShiftUp,
    /// `f = g - 1`; needs an above-unit input.
    ShiftDown,
    /// `h = 1 - f`; needs a generating input bounded by 1.
    OneMinus,
    /// `g = e^f`; needs an additive or generating input.
    Exp,
    /// `h = e^(-f)`; needs an additive or generating input.
    NegExp,
    /// `e^(g-1)`, the order-preserving self-map of the above-unit set.
    Digamma,
    /// `1/g`; needs strictly positive values.
    Reciprocal,
}

impl TransformKind {
    /// Registry token used in composed names like `exp(ld)`.
    pub fn token(self) -> &'static str {
        match self {
            TransformKind::ShiftUp => "shiftup",
            TransformKind::ShiftDown => "shiftdown",
            TransformKind::OneMinus => "oneminus",
            TransformKind::Exp => "exp",
            TransformKind::NegExp => "negexp",
            TransformKind::Digamma => "digamma",
            TransformKind::Reciprocal => "recip",
        }
    }
}

fn require_tag(f: &FunctionDescriptor, ok: &[ClassTag], kind: TransformKind) -> Result<()> {
    match f.tag {
        Some(t) if ok.contains(&t) => Ok(()),
        other => Err(AfError::Domain(format!(
            "transform {}: input {} has incompatible tag {:?}",
            kind.token(),
            f.name,
            other
        ))),
    }
}

/// Applies `kind` to `f` and reclassifies the result with the default
/// probe range. The input must already be classified.
pub fn transform(f: &FunctionDescriptor, kind: TransformKind) -> Result<FunctionDescriptor> {
    use ClassTag::*;
    let name = format!("{}({})", kind.token(), f.name);
    let inner = f.eval.clone();
    let out: FunctionDescriptor = match kind {
        TransformKind::ShiftUp => {
            require_tag(f, &[Generating, GeneratingSubUnit], kind)?;
            FunctionDescriptor::from_fn(&name, false, false, move |x| Ok(inner(x)? + 1.0))
        }
        TransformKind::ShiftDown => {
            require_tag(f, &[AboveUnit], kind)?;
            FunctionDescriptor::from_fn(&name, false, false, move |x| Ok(inner(x)? - 1.0))
        }
        TransformKind::OneMinus => {
            require_tag(f, &[GeneratingSubUnit], kind)?;
            FunctionDescriptor::from_fn(&name, false, false, move |x| Ok(1.0 - inner(x)?))
        }
        TransformKind::Exp => {
            if f.class != FnClass::Additive {
                require_tag(f, &[Generating, GeneratingSubUnit], kind)?;
            }
            let mult = f.is_additive;
            FunctionDescriptor::from_fn(&name, false, mult, move |x| Ok(inner(x)?.exp()))
        }
        TransformKind::NegExp => {
            if f.class != FnClass::Additive {
                require_tag(f, &[Generating, GeneratingSubUnit], kind)?;
            }
            let mult = f.is_additive;
            FunctionDescriptor::from_fn(&name, false, mult, move |x| Ok((-inner(x)?).exp()))
        }
        TransformKind::Digamma => {
            require_tag(f, &[AboveUnit], kind)?;
            FunctionDescriptor::from_fn(&name, false, false, move |x| Ok((inner(x)? - 1.0).exp()))
        }
        TransformKind::Reciprocal => {
            for x in 1..=DEFAULT_PROBE_RANGE {
                if f.eval(x)? == 0.0 {
                    return Err(AfError::Domain(format!(
                        "transform recip: {}({x}) = 0 has no reciprocal",
                        f.name
                    )));
                }
            }
            let mult = f.is_multiplicative;
            FunctionDescriptor::from_fn(&name, false, mult, move |x| {
                let v = inner(x)?;
                if v == 0.0 {
                    return Err(AfError::Domain(format!("recip: value 0 at {x}")));
                }
                Ok(1.0 / v)
            })
        }
    };
    classify(&out, DEFAULT_PROBE_RANGE)
}

/// Natural logarithm of a strictly positive descriptor; used to move from
/// a multiplicative function to its additive companion.
pub fn log_of(f: &FunctionDescriptor) -> Result<FunctionDescriptor> {
    let name = format!("log({})", f.name);
    let inner = f.eval.clone();
    let add = f.is_multiplicative;
    let out = FunctionDescriptor::from_fn(&name, add, false, move |x| {
        let v = inner(x)?;
        if v <= 0.0 {
            return Err(AfError::Domain(format!("log: value {v} at {x}")));
        }
        Ok(v.ln())
    });
    classify(&out, DEFAULT_PROBE_RANGE)
}

fn neglog_of(f: &FunctionDescriptor) -> Result<FunctionDescriptor> {
    let name = format!("neglog({})", f.name);
    let inner = f.eval.clone();
    let add = f.is_multiplicative;
    let out = FunctionDescriptor::from_fn(&name, add, false, move |x| {
        let v = inner(x)?;
        if v <= 0.0 {
            return Err(AfError::Domain(format!("neglog: value {v} at {x}")));
        }
        Ok(-v.ln())
    });
    classify(&out, DEFAULT_PROBE_RANGE)
}

/// A function triple `(f, g, h)` with `g = e^f` and `h = e^(-f)`: one
/// additive representative together with its multiplicative companions
/// above and below 1.
#[derive(Debug, Clone)]
pub struct FunctionTriple {
    pub f: FunctionDescriptor,
    pub g: FunctionDescriptor,
    pub h: FunctionDescriptor,
}

/// Builds the triple `(f, e^f, e^(-f))` of an additive function.
pub fn build_triple(f: &FunctionDescriptor) -> Result<FunctionTriple> {
    if f.class != FnClass::Additive {
        return Err(AfError::Domain(format!(
            "build_triple: {} has class {}, additive required",
            f.name, f.class
        )));
    }
    Ok(FunctionTriple {
        f: f.clone(),
        g: transform(f, TransformKind::Exp)?,
        h: transform(f, TransformKind::NegExp)?,
    })
}

/// Completes `desc` into a function triple, whichever admissible slot it
/// occupies: an additive function is exponentiated, a multiplicative one
/// contributes its logarithm and reciprocal, a positive subunit one its
/// negated logarithm and reciprocal.
pub fn triple_of(desc: &FunctionDescriptor) -> Result<FunctionTriple> {
    match desc.class {
        FnClass::Additive => build_triple(desc),
        FnClass::Multiplicative => Ok(FunctionTriple {
            f: log_of(desc)?,
            g: desc.clone(),
            h: transform(desc, TransformKind::Reciprocal)?,
        }),
        FnClass::SubunitPositive => Ok(FunctionTriple {
            f: neglog_of(desc)?,
            g: transform(desc, TransformKind::Reciprocal)?,
            h: desc.clone(),
        }),
        other => Err(AfError::Domain(format!(
            "triple_of: {} has class {}, admissible class required",
            desc.name, other
        ))),
    }
}

// ---------------------------------------------------------------------------
// Catalog functions.

/// Number of prime divisors of `x` counted with multiplicity.
pub fn big_omega(x: u64) -> Result<f64> {
    Ok(factorize(x)?
        .factors()
        .iter()
        .map(|&(_, a)| a as f64)
        .sum())
}

/// Number of distinct prime divisors of `x`.
pub fn small_omega(x: u64) -> Result<f64> {
    Ok(factorize(x)?.factors().len() as f64)
}

/// Number of divisors of `x`.
pub fn divisor_count(x: u64) -> Result<f64> {
    Ok(factorize(x)?
        .factors()
        .iter()
        .map(|&(_, a)| (a + 1) as f64)
        .product())
}

/// Logarithmic derivative: `ld(x) = sum a_i / p_i` over the prime
/// factorization, the totally additive solution of `ld(p) = 1/p`.
pub fn log_derivative(x: u64) -> Result<f64> {
    Ok(factorize(x)?
        .factors()
        .iter()
        .map(|&(p, a)| a as f64 / p as f64)
        .sum())
}

/// Euler totient.
pub fn totient(x: u64) -> Result<f64> {
    let mut out: u64 = 1;
    for &(p, a) in factorize(x)?.factors() {
        out *= p.pow(a - 1) * (p - 1);
    }
    Ok(out as f64)
}

/// Chebyshev prime-log sum `theta(x) = sum of ln p over primes p <= x`,
/// accumulated over ascending primes. `theta(1) = 0` as the empty sum.
pub fn chebyshev_theta(x: u64) -> Result<f64> {
    if x > THETA_MAX {
        return Err(AfError::Domain(format!(
            "theta: argument {x} exceeds supported bound {THETA_MAX}"
        )));
    }
    let mut sum = 0.0;
    for &p in primes() {
        if p as u64 > x {
            break;
        }
        sum += (p as f64).ln();
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builtin(name: &str) -> FunctionDescriptor {
        crate::registry::lookup(name).unwrap()
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(20).unwrap().factors(), &[(2, 2), (5, 1)]);
        let f = factorize(5040).unwrap();
        assert_eq!(f.factors(), &[(2, 4), (3, 2), (5, 1), (7, 1)]);
        assert_eq!(f.value(), 5040);
        // Independent check: count each prime's exponent by divisor scan.
        for &(p, a) in f.factors() {
            let mut v = 5040u64;
            let mut count = 0;
            while v % p == 0 {
                v /= p;
                count += 1;
            }
            assert_eq!(count, a);
        }
        assert!(factorize(0).is_err());
        assert!(factorize(FACTORIZE_MAX + 1).is_err());
    }

    #[test]
    fn factorize_large_prime_tail() {
        // 2 * 499999999 (prime tail above the trial bound loop).
        let f = factorize(999_999_998).unwrap();
        assert_eq!(f.value(), 999_999_998);
    }

    #[test]
    fn catalog_values() {
        assert_eq!(big_omega(20).unwrap(), 3.0);
        assert_eq!(divisor_count(20).unwrap(), 6.0);
        assert!((log_derivative(6).unwrap() - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(totient(8).unwrap(), 4.0);
        let t = chebyshev_theta(2).unwrap();
        assert!((t - 2.0_f64.ln()).abs() < 1e-15);
        assert!((1.0 / (1.0 + t) - 0.5906).abs() < 5e-5);
        assert_eq!(chebyshev_theta(1).unwrap(), 0.0);
    }

    #[test]
    fn ld_functional_equation() {
        assert_eq!(log_derivative(1).unwrap(), 0.0);
        for &p in primes().iter().take(100) {
            let v = log_derivative(p as u64).unwrap();
            assert!((v - 1.0 / p as f64).abs() <= 1e-12 * v.max(1.0));
        }
    }

    #[test]
    fn classify_builtins() {
        assert_eq!(builtin("Omega").class(), FnClass::Additive);
        assert_eq!(builtin("tau").class(), FnClass::Multiplicative);
        assert_eq!(builtin("recip").class(), FnClass::SubunitPositive);
        assert!(builtin("recip").class().is_subunit());
        assert_eq!(builtin("theta").class(), FnClass::Generic);
        assert_eq!(builtin("theta").tag(), Some(ClassTag::Generating));
        assert_eq!(builtin("htheta").tag(), Some(ClassTag::BelowUnitPositive));
    }

    #[test]
    fn classify_idempotent() {
        let f = builtin("ld");
        let once = classify(&f, 500).unwrap();
        let twice = classify(&once, 500).unwrap();
        assert_eq!(once.class(), twice.class());
        assert_eq!(once.tag(), twice.tag());
    }

    #[test]
    fn classify_degrades_to_generic() {
        let f = FunctionDescriptor::from_fn("signed", false, false, |x| {
            Ok(if x % 2 == 0 { -1.0 } else { 0.0 })
        });
        let c = classify(&f, 10).unwrap();
        assert_eq!(c.class(), FnClass::Generic);
        assert_eq!(c.tag(), None);
    }

    #[test]
    fn transform_examples() {
        let omega = builtin("Omega");
        let e_omega = transform(&omega, TransformKind::Exp).unwrap();
        assert!((e_omega.eval(4).unwrap() - 2.0_f64.exp().powi(1)).abs() < 1e-12);
        assert!((e_omega.eval(4).unwrap() - 7.389056).abs() < 1e-5);

        let ld = builtin("ld");
        let neg = transform(&ld, TransformKind::NegExp).unwrap();
        assert_eq!(neg.eval(1).unwrap(), 1.0);
        let pos = transform(&ld, TransformKind::Exp).unwrap();
        let prod = pos.eval(2).unwrap() * neg.eval(2).unwrap();
        assert!((prod - 1.0).abs() < 1e-12);
    }

    #[test]
    fn transform_rejects_incompatible() {
        let tau = builtin("tau");
        assert!(matches!(
            transform(&tau, TransformKind::Exp),
            Err(AfError::Domain(_))
        ));
        let ld = builtin("ld");
        // ld(4) = 1 but ld(8) = 1.5 > 1, so one_minus is out.
        assert!(matches!(
            transform(&ld, TransformKind::OneMinus),
            Err(AfError::Domain(_))
        ));
    }

    #[test]
    fn transform_shift_and_digamma() {
        let ld = builtin("ld");
        let up = transform(&ld, TransformKind::ShiftUp).unwrap();
        assert_eq!(up.tag(), Some(ClassTag::AboveUnit));
        let down = transform(&up, TransformKind::ShiftDown).unwrap();
        assert!((down.eval(6).unwrap() - 5.0 / 6.0).abs() < 1e-12);
        let dig = transform(&up, TransformKind::Digamma).unwrap();
        assert_eq!(dig.tag(), Some(ClassTag::AboveUnit));
        // digamma(g)(x) = e^(g(x)-1) = e^(ld(x)).
        assert!((dig.eval(6).unwrap() - (5.0_f64 / 6.0).exp()).abs() < 1e-12);
    }

    #[test]
    fn reciprocal_of_zero_rejected() {
        let omega = builtin("Omega");
        assert!(matches!(
            transform(&omega, TransformKind::Reciprocal),
            Err(AfError::Domain(_))
        ));
    }

    #[test]
    fn triple_classes() {
        let triple = build_triple(&builtin("ld")).unwrap();
        assert_eq!(triple.g.class(), FnClass::Multiplicative);
        assert_eq!(triple.h.class(), FnClass::SubunitPositive);
        let triple = build_triple(&builtin("omega")).unwrap();
        assert_eq!(triple.g.class(), FnClass::Multiplicative);
        assert_eq!(triple.h.class(), FnClass::SubunitPositive);
        assert!(build_triple(&builtin("tau")).is_err());
    }

    #[test]
    fn triple_of_any_slot() {
        let from_tau = triple_of(&builtin("tau")).unwrap();
        assert_eq!(from_tau.f.class(), FnClass::Additive);
        assert!((from_tau.f.eval(12).unwrap() - 6.0_f64.ln()).abs() < 1e-12);
        assert!((from_tau.h.eval(12).unwrap() - 1.0 / 6.0).abs() < 1e-12);

        let from_recip = triple_of(&builtin("recip")).unwrap();
        assert_eq!(from_recip.g.class(), FnClass::Multiplicative);
        assert!((from_recip.g.eval(7).unwrap() - 7.0).abs() < 1e-12);
        assert!((from_recip.f.eval(7).unwrap() - 7.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_constant_triple() {
        let zero = classify(
            &FunctionDescriptor::from_fn("zero", true, false, |_| Ok(0.0)),
            100,
        )
        .unwrap();
        let t = build_triple(&zero).unwrap();
        for x in 1..=50 {
            assert_eq!(t.f.eval(x).unwrap(), 0.0);
            assert_eq!(t.g.eval(x).unwrap(), 1.0);
            assert_eq!(t.h.eval(x).unwrap(), 1.0);
        }
    }

    #[test]
    fn morphism_spot_checks() {
        use rand::{Rng, SeedableRng};
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let additive = ["Omega", "omega", "ld", "logtau"];
        let multiplicative = ["tau", "phi", "recip"];
        for name in additive.iter().chain(&multiplicative) {
            let f = builtin(name);
            let mut done = 0;
            while done < 200 {
                let a = rng.gen_range(1..=10_000u64);
                let b = rng.gen_range(1..=10_000u64);
                if gcd(a, b) != 1 {
                    continue;
                }
                done += 1;
                let lhs = f.eval(a * b).unwrap();
                let rhs = if f.is_additive() {
                    f.eval(a).unwrap() + f.eval(b).unwrap()
                } else {
                    f.eval(a).unwrap() * f.eval(b).unwrap()
                };
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()).max(1.0),
                    "{name}({a}*{b}): {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn triple_consistency_range() {
        let t = build_triple(&builtin("ld")).unwrap();
        for x in 1..=10_000u64 {
            let f = t.f.eval(x).unwrap();
            let g = t.g.eval(x).unwrap();
            let h = t.h.eval(x).unwrap();
            assert!((g - f.exp()).abs() <= 1e-12 * g.max(1.0), "x={x}");
            assert!((h - 1.0 / g).abs() <= 1e-12, "x={x}");
        }
    }
}
