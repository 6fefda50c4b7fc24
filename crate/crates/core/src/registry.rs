//! Name-based access to the function catalog. Base functions are addressed
//! by plain names (`Omega`, `omega`, `tau`, `ld`, `phi`, `theta`, `recip`,
//! `htheta`, `logtau`), transform compositions by `kind(name)` such as
//! `exp(ld)`, `negexp(ld)` or `recip(tau)`, and modular extensions by
//! `name@modulus` such as `ld@6`.

use crate::arith::{
    self, classify, transform, FunctionDescriptor, TransformKind, DEFAULT_PROBE_RANGE,
};
use crate::extension::{extend, ModExtended};
use crate::{AfError, Result};

/// Plain names of all catalog functions, in registry order.
pub const BUILTIN_NAMES: [&str; 9] = [
    "Omega", "omega", "tau", "ld", "phi", "theta", "recip", "htheta", "logtau",
];

fn base(name: &str) -> Option<FunctionDescriptor> {
    let d = match name {
        "Omega" => FunctionDescriptor::from_fn("Omega", true, false, arith::big_omega),
        "omega" => FunctionDescriptor::from_fn("omega", true, false, arith::small_omega),
        "tau" | "nd" => FunctionDescriptor::from_fn("tau", false, true, arith::divisor_count),
        "ld" => FunctionDescriptor::from_fn("ld", true, false, arith::log_derivative),
        "phi" => FunctionDescriptor::from_fn("phi", false, true, arith::totient),
        "theta" => FunctionDescriptor::from_fn("theta", false, false, arith::chebyshev_theta),
        "recip" => FunctionDescriptor::from_fn("recip", false, true, |x| Ok(1.0 / x as f64)),
        "htheta" => FunctionDescriptor::from_fn("htheta", false, false, |x| {
            Ok(1.0 / (1.0 + arith::chebyshev_theta(x)?))
        }),
        "logtau" => FunctionDescriptor::from_fn("logtau", true, false, |x| {
            Ok(arith::divisor_count(x)?.ln())
        }),
        _ => return None,
    };
    Some(d)
}

/// Resolves a registry name to a classified descriptor.
pub fn lookup(name: &str) -> Result<FunctionDescriptor> {
    let name = name.trim();
    if let Some(d) = base(name) {
        return classify(&d, DEFAULT_PROBE_RANGE);
    }
    if let Some((head, rest)) = name.split_once('(') {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| AfError::Config(format!("unbalanced parentheses in '{name}'")))?;
        let arg = lookup(inner)?;
        let kind = match head {
            "exp" => TransformKind::Exp,
            "negexp" => TransformKind::NegExp,
            "recip" => TransformKind::Reciprocal,
            "shiftup" => TransformKind::ShiftUp,
            "shiftdown" => TransformKind::ShiftDown,
            "oneminus" => TransformKind::OneMinus,
            "digamma" => TransformKind::Digamma,
            "log" => return arith::log_of(&arg),
            _ => return Err(AfError::Config(format!("unknown transform '{head}'"))),
        };
        return transform(&arg, kind);
    }
    Err(AfError::Config(format!("unknown function '{name}'")))
}

/// Parses the `name@modulus` form into a ready modular extension.
pub fn parse_extended(spec: &str) -> Result<ModExtended> {
    let (name, modulus) = spec
        .split_once('@')
        .ok_or_else(|| AfError::Config(format!("expected name@modulus, got '{spec}'")))?;
    let n: u64 = modulus
        .trim()
        .parse()
        .map_err(|_| AfError::Config(format!("bad modulus in '{spec}'")))?;
    extend(&lookup(name)?, n)
}
