use num_complex::Complex64;
use num_integer::Integer;

use super::{FunctionTable, TableKind};
use crate::error::{Error, Result};
use crate::rng::RademacherStream;

/// Memory allowed for one table including its prefix indexes and sieve
/// scratch space.
pub const TABLE_BYTE_BUDGET: usize = 3 << 30;

/// Bytes per entry: value, exact square prefix, prefix max, one scratch row.
const BYTES_PER_ENTRY: usize = 8 + 16 + 8 + 8;

fn check_budget(n: usize) -> Result<()> {
    if n.saturating_mul(BYTES_PER_ENTRY) > TABLE_BYTE_BUDGET {
        return Err(Error::CapacityExceeded(format!(
            "a table of {n} entries exceeds the {} MiB budget",
            TABLE_BYTE_BUDGET >> 20
        )));
    }
    Ok(())
}

/// `tau_k(m)`, the number of ordered factorisations `m = d_1 ... d_k`,
/// by `k - 1` Dirichlet convolutions with the constant function 1.
pub fn sieve_tau_k(n: usize, k: u32) -> Result<FunctionTable> {
    if k < 2 {
        return Err(Error::out_of_range("k", format!("tau_k needs k >= 2, got {k}")));
    }
    if k > 245 {
        return Err(Error::CapacityExceeded(format!("k = {k} has no cache tag")));
    }
    check_budget(n)?;
    let mut cur = vec![1i64; n + 1];
    cur[0] = 0;
    for _ in 1..k {
        let mut next = vec![0i64; n + 1];
        for (d, &c) in cur.iter().enumerate().skip(1) {
            for j in (d..=n).step_by(d) {
                next[j] = next[j]
                    .checked_add(c)
                    .ok_or_else(|| Error::CapacityExceeded(format!("tau_{k}({j}) overflows 64 bits")))?;
            }
        }
        cur = next;
    }
    Ok(FunctionTable::from_int_padded(format!("tau{k}"), TableKind::Tau(k as u8), cur))
}

/// Characteristic function of the primes (sieve of Eratosthenes).
pub fn sieve_prime_indicator(n: usize) -> Result<FunctionTable> {
    check_budget(n)?;
    let mut v = vec![1i64; n + 1];
    v[0] = 0;
    if n >= 1 {
        v[1] = 0;
    }
    let mut p = 2;
    while p * p <= n {
        if v[p] == 1 {
            for j in (p * p..=n).step_by(p) {
                v[j] = 0;
            }
        }
        p += 1;
    }
    Ok(FunctionTable::from_int_padded("prime".into(), TableKind::PrimeIndicator, v))
}

/// Euler's totient by a linear sieve.
pub fn sieve_totient(n: usize) -> Result<FunctionTable> {
    check_budget(n)?;
    let mut phi = vec![0i64; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    if n >= 1 {
        phi[1] = 1;
    }
    for i in 2..=n {
        if phi[i] == 0 {
            phi[i] = i as i64 - 1;
            primes.push(i);
        }
        for &p in &primes {
            let j = i * p;
            if j > n {
                break;
            }
            if i % p == 0 {
                phi[j] = phi[i] * p as i64;
                break;
            }
            phi[j] = phi[i] * (p as i64 - 1);
        }
    }
    Ok(FunctionTable::from_int_padded("phi".into(), TableKind::Totient, phi))
}

const CHARACTER_TOL: f64 = 1e-9;

/// Extends a character given on residues `0..q` periodically to `1..=n`.
///
/// The residue table must vanish exactly on residues sharing a factor with
/// `q`, have unit modulus elsewhere, and be completely multiplicative.
pub fn dirichlet_character(n: usize, q: usize, residues: &[Complex64]) -> Result<FunctionTable> {
    check_budget(n)?;
    if q == 0 || residues.len() != q {
        return Err(Error::InvalidCharacter(format!("expected {q} residue values, got {}", residues.len())));
    }
    if q > 1 << 14 {
        return Err(Error::CapacityExceeded(format!("modulus {q} too large to validate")));
    }
    for (a, z) in residues.iter().enumerate() {
        let coprime = a.gcd(&q) == 1;
        if coprime && (z.norm() - 1.0).abs() > CHARACTER_TOL {
            return Err(Error::InvalidCharacter(format!("|chi({a})| = {} but {a} is coprime to {q}", z.norm())));
        }
        if !coprime && *z != Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidCharacter(format!("chi({a}) must vanish since gcd({a}, {q}) > 1")));
        }
    }
    for a in 0..q {
        for b in a..q {
            let lhs = residues[a * b % q];
            if (lhs - residues[a] * residues[b]).norm() > CHARACTER_TOL {
                return Err(Error::InvalidCharacter(format!("chi({a}*{b}) != chi({a}) chi({b}) modulo {q}")));
            }
        }
    }
    let name = format!("chi{q}");
    let integral = residues.iter().all(|z| z.im == 0.0 && z.re.fract() == 0.0);
    if integral {
        let mut v: Vec<i64> = (0..=n).map(|m| residues[m % q].re as i64).collect();
        v[0] = 0;
        Ok(FunctionTable::from_int_padded(name, TableKind::Character, v))
    } else {
        Ok(FunctionTable::from_complex_values(name, TableKind::Character, (1..=n).map(|m| residues[m % q]).collect()))
    }
}

/// `f(m) = c`.
pub fn constant_table(n: usize, c: i64) -> FunctionTable {
    let name = if c == 1 { "one".to_string() } else { format!("const{c}") };
    let mut v = vec![c; n + 1];
    v[0] = 0;
    FunctionTable::from_int_padded(name, TableKind::Constant, v)
}

/// `f(m) = 0`.
pub fn zero_table(n: usize) -> FunctionTable {
    FunctionTable::from_int_padded("zero".into(), TableKind::Zero, vec![0; n + 1])
}

/// `f(m) = m`.
pub fn identity_table(n: usize) -> FunctionTable {
    FunctionTable::from_int_padded("id".into(), TableKind::Identity, (0..=n as i64).collect())
}

/// Independent fair signs `f(1), ..., f(n)` from [`RademacherStream`].
pub fn rademacher_table(n: usize, seed: u64) -> FunctionTable {
    let mut v = Vec::with_capacity(n + 1);
    v.push(0);
    v.extend(RademacherStream::new(seed).take(n));
    FunctionTable::from_int_padded("rademacher".into(), TableKind::Rademacher, v)
}
