//! The modulus-`n` lift of an arithmetic function from the naturals to all
//! of `Z` via the residue transform `x -> 1 + ((x - 1) mod n)`, together
//! with its gcd-even structure and restricted morphism checks.

use crate::arith::{ClassTag, FunctionDescriptor};
use crate::{AfError, Result};

/// An arithmetic function extended to all integers with period `n`. The
/// first period `1..=n` is materialized at construction time, so later
/// evaluation is a table lookup and never fails.
#[derive(Debug, Clone)]
pub struct ModExtended {
    base: FunctionDescriptor,
    modulus: u64,
    values: Vec<f64>,
}

/// Lifts `f` to `Z` with modulus `n >= 2`. The lift agrees with `f` on
/// `1..=n` and is `n`-periodic everywhere; the range tag of `f` carries
/// over unchanged.
pub fn extend(f: &FunctionDescriptor, n: u64) -> Result<ModExtended> {
    if n < 2 {
        return Err(AfError::Domain(format!(
            "extend: modulus {n} too small, need n >= 2"
        )));
    }
    let values = (1..=n).map(|x| f.eval(x)).collect::<Result<Vec<_>>>()?;
    Ok(ModExtended {
        base: f.clone(),
        modulus: n,
        values,
    })
}

impl ModExtended {
    pub fn base(&self) -> &FunctionDescriptor {
        &self.base
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Range tag inherited from the base function.
    pub fn tag(&self) -> Option<ClassTag> {
        self.base.tag()
    }

    /// Positive representative `1 + ((x - 1) mod n)` of `x`.
    pub fn residue(&self, x: i64) -> u64 {
        let n = self.modulus as i64;
        ((x - 1).rem_euclid(n) + 1) as u64
    }

    /// Value of the extension at any integer.
    pub fn eval(&self, x: i64) -> f64 {
        self.values[(self.residue(x) - 1) as usize]
    }

    /// The materialized first period, indexed by `x - 1` for `x` in `1..=n`.
    pub fn period_values(&self) -> &[f64] {
        &self.values
    }
}

/// Value of the extension at any integer; alias for [`ModExtended::eval`].
pub fn eval_extended(ext: &ModExtended, x: i64) -> f64 {
    ext.eval(x)
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// True iff the base function factors through `gcd(., n)` on the first
/// period: all residues sharing a gcd with `n` share a value. Such lifts
/// are even, `f(x) = f(-x) = f(n - x)`.
pub fn is_gcd_even(ext: &ModExtended) -> bool {
    let n = ext.modulus();
    let mut by_gcd: std::collections::HashMap<u64, f64> = std::collections::HashMap::new();
    for x in 1..=n {
        let g = gcd(x, n);
        let v = ext.eval(x as i64);
        match by_gcd.get(&g) {
            Some(&seen) if seen != v => return false,
            Some(_) => {}
            None => {
                by_gcd.insert(g, v);
            }
        }
    }
    true
}

/// Checks whether the restricted additivity (resp. multiplicativity) of
/// the base survives extension at the pair `(x, y)`. The hypothesis of the
/// restricted morphism lemma — coprime residues whose product stays within
/// the first period — must hold; otherwise this is a precondition error,
/// which is deliberately distinct from a `false` verdict.
pub fn check_restricted_morphism(ext: &ModExtended, x: i64, y: i64) -> Result<bool> {
    let xr = ext.residue(x);
    let yr = ext.residue(y);
    if gcd(xr, yr) != 1 {
        return Err(AfError::Precondition(format!(
            "residues {xr} and {yr} are not coprime"
        )));
    }
    if xr * yr > ext.modulus() {
        return Err(AfError::Precondition(format!(
            "residue product {} exceeds modulus {}",
            xr * yr,
            ext.modulus()
        )));
    }
    let prod = (x as i128) * (y as i128);
    let n = ext.modulus() as i128;
    let residue_of_prod = ((prod - 1).rem_euclid(n) + 1) as i64;
    let lhs = ext.eval(residue_of_prod);
    let fx = ext.eval(x);
    let fy = ext.eval(y);
    let rhs = if ext.base().is_additive() {
        fx + fy
    } else if ext.base().is_multiplicative() {
        fx * fy
    } else {
        return Err(AfError::Domain(format!(
            "{} is neither additive nor multiplicative",
            ext.base().name()
        )));
    };
    Ok((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()).max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::classify;
    use crate::registry::lookup;
    use rand::{Rng, SeedableRng};

    #[test]
    fn extend_examples() {
        let ld6 = extend(&lookup("ld").unwrap(), 6).unwrap();
        assert_eq!(ld6.eval(7), 0.0);

        let om13 = extend(&lookup("Omega").unwrap(), 13).unwrap();
        assert_eq!(om13.eval(20), 1.0); // residue 7, one prime factor

        let phi8 = extend(&lookup("phi").unwrap(), 8).unwrap();
        assert_eq!(phi8.eval(-7), 1.0);
        assert_eq!(phi8.eval(6), 2.0);
        assert_eq!(phi8.eval(14), 2.0);

        let tau13 = extend(&lookup("tau").unwrap(), 13).unwrap();
        assert_eq!(tau13.eval(11), 2.0);

        assert!(extend(&lookup("ld").unwrap(), 1).is_err());
    }

    #[test]
    fn tag_inherited() {
        assert_eq!(
            extend(&lookup("ld").unwrap(), 6).unwrap().tag(),
            Some(ClassTag::Generating)
        );
        assert_eq!(
            extend(&lookup("tau").unwrap(), 13).unwrap().tag(),
            Some(ClassTag::AboveUnit)
        );
        assert_eq!(
            extend(&lookup("recip").unwrap(), 13).unwrap().tag(),
            Some(ClassTag::BelowUnitPositive)
        );
    }

    #[test]
    fn periodicity_exact() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for name in ["ld", "phi", "theta"] {
            let ext = extend(&lookup(name).unwrap(), 11).unwrap();
            let n = ext.modulus() as i64;
            for _ in 0..500 {
                let x = rng.gen_range(-10 * n..=10 * n);
                assert_eq!(ext.eval(x), ext.eval(x + n));
            }
        }
    }

    #[test]
    fn window_identity() {
        let ext = extend(&lookup("tau").unwrap(), 17).unwrap();
        for x in 1..=17u64 {
            assert_eq!(ext.eval(x as i64), lookup("tau").unwrap().eval(x).unwrap());
        }
    }

    #[test]
    fn gcd_even_cases() {
        let one = classify(
            &FunctionDescriptor::from_fn("one", false, true, |_| Ok(1.0)),
            100,
        )
        .unwrap();
        assert!(is_gcd_even(&extend(&one, 9).unwrap()));

        let ident = FunctionDescriptor::from_fn("id", false, true, |x| Ok(x as f64));
        assert!(!is_gcd_even(&extend(&ident, 6).unwrap()));

        let tau_gcd12 = FunctionDescriptor::from_fn("taugcd12", false, false, |x| {
            crate::arith::divisor_count(super::gcd(x, 12))
        });
        let ext = extend(&tau_gcd12, 12).unwrap();
        assert!(is_gcd_even(&ext));
        // Brute-force consequence of gcd-evenness over one period.
        for x in 1..=12i64 {
            for y in 1..=12i64 {
                if super::gcd(x as u64, 12) == super::gcd(y as u64, 12) {
                    assert_eq!(ext.eval(x), ext.eval(y));
                }
            }
            assert_eq!(ext.eval(x), ext.eval(-x));
            assert_eq!(ext.eval(x), ext.eval(12 - x));
        }
    }

    #[test]
    fn restricted_morphism() {
        let om13 = extend(&lookup("Omega").unwrap(), 13).unwrap();
        assert!(matches!(
            check_restricted_morphism(&om13, 4, 5),
            Err(AfError::Precondition(_))
        ));

        let om30 = extend(&lookup("Omega").unwrap(), 30).unwrap();
        assert!(check_restricted_morphism(&om30, 4, 5).unwrap());

        let tau30 = extend(&lookup("tau").unwrap(), 30).unwrap();
        assert!(check_restricted_morphism(&tau30, 4, 5).unwrap());

        let tau6 = extend(&lookup("tau").unwrap(), 6).unwrap();
        assert!(matches!(
            check_restricted_morphism(&tau6, 2, 4),
            Err(AfError::Precondition(_))
        ));

        let theta30 = extend(&lookup("theta").unwrap(), 30).unwrap();
        assert!(matches!(
            check_restricted_morphism(&theta30, 2, 3),
            Err(AfError::Domain(_))
        ));
    }

    #[test]
    fn shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<FunctionDescriptor>();
        assert_send_sync::<ModExtended>();

        // Four threads sum one full period each, shifted by whole
        // periods; periodicity makes every sum identical.
        let ext = std::sync::Arc::new(extend(&lookup("tau").unwrap(), 13).unwrap());
        let handles: Vec<_> = (0..4i64)
            .map(|t| {
                let e = ext.clone();
                std::thread::spawn(move || (1..=13).map(|x| e.eval(x + 13 * t)).sum::<f64>())
            })
            .collect();
        let sums: Vec<f64> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(sums.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn morphism_counterexample_values() {
        // The extension with n = 13 at x = 4, y = 5 is neither additive
        // nor multiplicative for any of the three witness functions.
        let om = extend(&lookup("Omega").unwrap(), 13).unwrap();
        assert_eq!(om.eval(20), 1.0);
        assert_eq!(om.eval(4) + om.eval(5), 3.0);
        assert_eq!(om.eval(4) * om.eval(5), 2.0);

        let tau = extend(&lookup("tau").unwrap(), 13).unwrap();
        assert_eq!(tau.eval(20), 2.0);
        assert_eq!(tau.eval(4) * tau.eval(5), 6.0);
        assert_eq!(tau.eval(4) + tau.eval(5), 5.0);

        let rec = extend(&lookup("recip").unwrap(), 13).unwrap();
        assert!((rec.eval(20) - 1.0 / 7.0).abs() < 1e-15);
        assert!((rec.eval(4) * rec.eval(5) - 1.0 / 20.0).abs() < 1e-15);
        assert!((rec.eval(4) + rec.eval(5) - 9.0 / 20.0).abs() < 1e-15);
    }
}
