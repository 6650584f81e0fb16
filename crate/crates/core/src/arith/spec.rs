use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::{
    constant_table, dirichlet_character, identity_table, rademacher_table, sieve_prime_indicator, sieve_tau_k,
    sieve_totient, zero_table, FunctionTable,
};
use crate::error::{Error, Result};

/// A selectable arithmetic function.
///
/// Grammar: `zero`, `one`, `const:<c>`, `id`, `tau` (same as `tau2`),
/// `tau<k>`, `prime`, `phi`, `rademacher`, `chi4`, and
/// `chi:<q>:<v0>,<v1>,...` with each value a real number, `i`, `-i`, or
/// `<real>i`.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    Zero,
    Constant(i64),
    Identity,
    Tau(u32),
    Prime,
    Totient,
    /// Signs drawn from the stream of the run seed.
    Rademacher,
    Character { q: usize, residues: Vec<Complex64> },
}

fn parse_residue(tok: &str) -> Option<Complex64> {
    let t = tok.trim();
    if let Some(im) = t.strip_suffix('i') {
        let v = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            s => s.parse().ok()?,
        };
        return Some(Complex64::new(0.0, v));
    }
    t.parse().ok().map(|v| Complex64::new(v, 0.0))
}

fn fmt_residue(z: &Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}i", z.im)
    }
}

impl FunctionSpec {
    /// Tabulates the function on `1..=n`; `seed` feeds the random variant.
    pub fn build(&self, n: usize, seed: u64) -> Result<FunctionTable> {
        match self {
            FunctionSpec::Zero => Ok(zero_table(n)),
            FunctionSpec::Constant(c) => Ok(constant_table(n, *c)),
            FunctionSpec::Identity => Ok(identity_table(n)),
            FunctionSpec::Tau(k) => sieve_tau_k(n, *k),
            FunctionSpec::Prime => sieve_prime_indicator(n),
            FunctionSpec::Totient => sieve_totient(n),
            FunctionSpec::Rademacher => Ok(rademacher_table(n, seed)),
            FunctionSpec::Character { q, residues } => dirichlet_character(n, *q, residues),
        }
    }

    /// Whether the table depends on the seed.
    pub fn is_random(&self) -> bool {
        matches!(self, FunctionSpec::Rademacher)
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::parse(s, why);
        Ok(match s {
            "zero" => FunctionSpec::Zero,
            "one" => FunctionSpec::Constant(1),
            "id" => FunctionSpec::Identity,
            "tau" => FunctionSpec::Tau(2),
            "prime" => FunctionSpec::Prime,
            "phi" => FunctionSpec::Totient,
            "rademacher" => FunctionSpec::Rademacher,
            "chi4" => FunctionSpec::Character {
                q: 4,
                residues: [0.0, 1.0, 0.0, -1.0].iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            },
            _ => {
                if let Some(c) = s.strip_prefix("const:") {
                    FunctionSpec::Constant(c.parse().map_err(|_| bad("constant must be an integer"))?)
                } else if let Some(k) = s.strip_prefix("tau") {
                    let k: u32 = k.parse().map_err(|_| bad("expected tau<k>"))?;
                    if k < 2 {
                        return Err(bad("tau_k needs k >= 2"));
                    }
                    FunctionSpec::Tau(k)
                } else if let Some(rest) = s.strip_prefix("chi:") {
                    let (q, vals) = rest.split_once(':').ok_or_else(|| bad("expected chi:<q>:<values>"))?;
                    let q: usize = q.parse().map_err(|_| bad("modulus must be a positive integer"))?;
                    let residues = vals
                        .split(',')
                        .map(|t| parse_residue(t).ok_or_else(|| bad("bad residue value")))
                        .collect::<Result<Vec<_>>>()?;
                    FunctionSpec::Character { q, residues }
                } else {
                    return Err(bad("unknown function; expected zero, one, const:<c>, id, tau<k>, prime, phi, rademacher, chi4 or chi:<q>:<values>"));
                }
            }
        })
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Zero => write!(f, "zero"),
            FunctionSpec::Constant(1) => write!(f, "one"),
            FunctionSpec::Constant(c) => write!(f, "const:{c}"),
            FunctionSpec::Identity => write!(f, "id"),
            FunctionSpec::Tau(k) => write!(f, "tau{k}"),
            FunctionSpec::Prime => write!(f, "prime"),
            FunctionSpec::Totient => write!(f, "phi"),
            FunctionSpec::Rademacher => write!(f, "rademacher"),
            FunctionSpec::Character { q, residues } => {
                let vals: Vec<String> = residues.iter().map(fmt_residue).collect();
                write!(f, "chi:{q}:{}", vals.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["zero", "one", "const:3", "id", "tau2", "tau3", "prime", "phi", "rademacher", "chi:5:0,1,1i,-1i,-1"] {
            let f: FunctionSpec = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert_eq!("tau".parse::<FunctionSpec>().unwrap(), FunctionSpec::Tau(2));
        assert!("tau1".parse::<FunctionSpec>().is_err());
        assert!("sigma".parse::<FunctionSpec>().is_err());
    }

    #[test]
    fn builds_tables() {
        let t = "chi4".parse::<FunctionSpec>().unwrap().build(12, 0).unwrap();
        assert_eq!(t.int_value(3), Some(-1));
        let c = "chi:5:0,1,i,-i,-1".parse::<FunctionSpec>().unwrap().build(10, 0).unwrap();
        assert_eq!(c.value(2), Complex64::new(0.0, 1.0));
        let r1 = FunctionSpec::Rademacher.build(100, 1).unwrap();
        let r2 = FunctionSpec::Rademacher.build(100, 2).unwrap();
        assert_ne!(r1, r2);
    }
}
