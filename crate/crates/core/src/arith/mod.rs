//! Tabulated arithmetic functions with prefix statistics.
//!
//! A [`FunctionTable`] stores `f(1..=N)` together with the prefix sums of
//! `|f(m)|^2` and the prefix maxima of `|f(m)|`. Integer-valued functions
//! keep their values as `i64` and their square sums as exact `u128`.

mod sieve;
mod spec;

use num_complex::Complex64;
use serde::Serialize;

pub use sieve::{
    constant_table, dirichlet_character, identity_table, rademacher_table, sieve_prime_indicator, sieve_tau_k,
    sieve_totient, zero_table, TABLE_BYTE_BUDGET,
};
pub use spec::FunctionSpec;

use crate::error::{Error, Result};

/// Which function a table holds; also the type tag of the cache format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TableKind {
    Other,
    Constant,
    Identity,
    PrimeIndicator,
    Totient,
    Rademacher,
    Character,
    Zero,
    Tau(u8),
}

impl TableKind {
    pub fn tag(self) -> u8 {
        match self {
            TableKind::Other => 0,
            TableKind::Constant => 1,
            TableKind::Identity => 2,
            TableKind::PrimeIndicator => 3,
            TableKind::Totient => 4,
            TableKind::Rademacher => 5,
            TableKind::Character => 6,
            TableKind::Zero => 7,
            TableKind::Tau(k) => 10 + k,
        }
    }

    pub fn from_tag(tag: u8) -> Option<TableKind> {
        Some(match tag {
            0 => TableKind::Other,
            1 => TableKind::Constant,
            2 => TableKind::Identity,
            3 => TableKind::PrimeIndicator,
            4 => TableKind::Totient,
            5 => TableKind::Rademacher,
            6 => TableKind::Character,
            7 => TableKind::Zero,
            t if t >= 12 => TableKind::Tau(t - 10),
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Values {
    Int(Vec<i64>),
    Complex(Vec<Complex64>),
}

#[derive(Clone, Debug, PartialEq)]
enum PrefixSq {
    Exact(Vec<u128>),
    Float(Vec<f64>),
}

/// `f(1..=N)` with prefix square sums and prefix maxima. Index 0 holds a
/// zero placeholder so that `value(m)` is `f(m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionTable {
    name: String,
    kind: TableKind,
    values: Values,
    prefix_sq: PrefixSq,
    prefix_max: Vec<f64>,
}

impl FunctionTable {
    /// Builds a table from `f(1), ..., f(N)`.
    pub fn from_int_values(name: impl Into<String>, kind: TableKind, values: Vec<i64>) -> Self {
        let mut v = Vec::with_capacity(values.len() + 1);
        v.push(0);
        v.extend(values);
        Self::from_int_padded(name.into(), kind, v)
    }

    pub(crate) fn from_int_padded(name: String, kind: TableKind, v: Vec<i64>) -> Self {
        let mut sq = Vec::with_capacity(v.len());
        let mut mx = Vec::with_capacity(v.len());
        let (mut s, mut m) = (0u128, 0u64);
        for (i, &x) in v.iter().enumerate() {
            if i > 0 {
                let a = x.unsigned_abs();
                s += a as u128 * a as u128;
                m = m.max(a);
            }
            sq.push(s);
            mx.push(m as f64);
        }
        FunctionTable { name, kind, values: Values::Int(v), prefix_sq: PrefixSq::Exact(sq), prefix_max: mx }
    }

    pub fn from_complex_values(name: impl Into<String>, kind: TableKind, values: Vec<Complex64>) -> Self {
        let mut v = Vec::with_capacity(values.len() + 1);
        v.push(Complex64::new(0.0, 0.0));
        v.extend(values);
        let mut sq = Vec::with_capacity(v.len());
        let mut mx = Vec::with_capacity(v.len());
        let mut acc = crate::numeric::NeumaierSum::new();
        let mut m = 0f64;
        for (i, z) in v.iter().enumerate() {
            if i > 0 {
                acc.add(z.norm_sqr());
                m = m.max(z.norm());
            }
            sq.push(acc.value());
            mx.push(m);
        }
        FunctionTable {
            name: name.into(),
            kind,
            values: Values::Complex(v),
            prefix_sq: PrefixSq::Float(sq),
            prefix_max: mx,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    /// Largest tabulated argument.
    pub fn n(&self) -> usize {
        self.prefix_max.len() - 1
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.values, Values::Int(_))
    }

    pub fn is_real(&self) -> bool {
        match &self.values {
            Values::Int(_) => true,
            Values::Complex(v) => v.iter().all(|z| z.im == 0.0),
        }
    }

    /// `f(m)` for `1 <= m <= N`; `f(0)` reads as zero.
    pub fn value(&self, m: usize) -> Complex64 {
        match &self.values {
            Values::Int(v) => Complex64::new(v[m] as f64, 0.0),
            Values::Complex(v) => v[m],
        }
    }

    pub fn int_value(&self, m: usize) -> Option<i64> {
        match &self.values {
            Values::Int(v) => Some(v[m]),
            Values::Complex(_) => None,
        }
    }

    /// Integer values with the index-0 placeholder.
    pub fn int_values(&self) -> Option<&[i64]> {
        match &self.values {
            Values::Int(v) => Some(v),
            Values::Complex(_) => None,
        }
    }

    /// All values as complex numbers, with the index-0 placeholder.
    pub fn complex_values(&self) -> Vec<Complex64> {
        (0..=self.n()).map(|m| self.value(m)).collect()
    }

    /// Fails unless `x <= N`.
    pub fn require(&self, x: usize) -> Result<()> {
        if x > self.n() {
            return Err(Error::TableTooShort { name: self.name.clone(), len: self.n(), needed: x });
        }
        Ok(())
    }

    /// `sum_{m <= x} |f(m)|^2`.
    pub fn prefix_sq(&self, x: usize) -> f64 {
        match &self.prefix_sq {
            PrefixSq::Exact(v) => v[x] as f64,
            PrefixSq::Float(v) => v[x],
        }
    }

    pub fn prefix_sq_exact(&self, x: usize) -> Option<u128> {
        match &self.prefix_sq {
            PrefixSq::Exact(v) => Some(v[x]),
            PrefixSq::Float(_) => None,
        }
    }

    /// `||f|_x||_2`.
    pub fn l2_norm(&self, x: usize) -> f64 {
        self.prefix_sq(x).sqrt()
    }

    /// `max_{m <= x} |f(m)|` (zero for `x = 0`).
    pub fn prefix_max(&self, x: usize) -> f64 {
        self.prefix_max[x]
    }

    /// `M(f, x) = 1 + max_{m <= x} |f(m)|`, with `x` clamped to `N`.
    pub fn m_bound(&self, x: usize) -> f64 {
        1.0 + self.prefix_max[x.min(self.n())]
    }

    /// The same function restricted to `1..=n`.
    pub fn truncated(&self, n: usize) -> FunctionTable {
        let n = n.min(self.n());
        match &self.values {
            Values::Int(v) => Self::from_int_padded(self.name.clone(), self.kind, v[..=n].to_vec()),
            Values::Complex(v) => Self::from_complex_values(self.name.clone(), self.kind, v[1..=n].to_vec()),
        }
    }

    /// `sum_{m <= x} f(m)`.
    pub fn plain_sum(&self, x: usize) -> Complex64 {
        match &self.values {
            Values::Int(v) => Complex64::new(v[1..=x].iter().map(|&a| a as i128).sum::<i128>() as f64, 0.0),
            Values::Complex(v) => {
                let mut s = crate::numeric::ComplexSum::new();
                v[1..=x].iter().for_each(|&z| s.add(z));
                s.value()
            }
        }
    }

    /// Exact `sum_{m <= x} f(m)` for integer tables.
    pub fn plain_sum_exact(&self, x: usize) -> Option<i128> {
        self.int_values().map(|v| v[1..=x].iter().map(|&a| a as i128).sum())
    }
}

/// One dyadic growth ratio `||f|_{2^{r+1}}|| / ||f|_{2^r}||`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRatio {
    pub r: u32,
    /// `None` when `||f|_{2^r}||_2 = 0`.
    pub ratio: Option<f64>,
}

/// Dyadic growth ratios for `3 <= r <= floor(log2 N) - 1`.
///
/// Zero norms are reported per row; [`growth_ratio_errors`] turns them into
/// [`Error::ZeroNorm`] values.
pub fn growth_ratios(table: &FunctionTable) -> Result<Vec<GrowthRatio>> {
    let n = table.n();
    if n < 16 {
        return Err(Error::out_of_range("N", format!("growth ratios need N >= 16, got {n}")));
    }
    let top = n.ilog2() - 1;
    Ok((3..=top)
        .map(|r| {
            let (a, b) = (table.prefix_sq(1 << r), table.prefix_sq(1 << (r + 1)));
            let ratio = (a > 0.0).then(|| match (table.prefix_sq_exact(1 << r), table.prefix_sq_exact(1 << (r + 1))) {
                (Some(a), Some(b)) => exact_sqrt_ratio(a, b),
                _ => (b / a).sqrt(),
            });
            GrowthRatio { r, ratio }
        })
        .collect())
}

/// `sqrt(b / a)` for exact integers, avoiding the rounding of each
/// conversion when the quotient is itself exact.
fn exact_sqrt_ratio(a: u128, b: u128) -> f64 {
    if b.is_multiple_of(a) {
        ((b / a) as f64).sqrt()
    } else {
        (b as f64 / a as f64).sqrt()
    }
}

/// The zero-norm rows of a growth report as errors.
pub fn growth_ratio_errors(rows: &[GrowthRatio]) -> Vec<Error> {
    rows.iter().filter(|g| g.ratio.is_none()).map(|g| Error::ZeroNorm { r: g.r }).collect()
}

/// `prefix_sq[x] / (x (ln x)^{k^2 - 1})`, the normalised second moment of `tau_k`.
pub fn moment_ratio(table: &FunctionTable, x: usize, k: u32) -> f64 {
    let lx = (x as f64).ln();
    table.prefix_sq(x) / (x as f64 * lx.powi((k * k - 1) as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_statistics() {
        let t = FunctionTable::from_int_values("t", TableKind::Other, vec![3, -4, 1]);
        assert_eq!(t.n(), 3);
        assert_eq!(t.prefix_sq_exact(2), Some(25));
        assert_eq!(t.prefix_max(3), 4.0);
        assert_eq!(t.m_bound(0), 1.0);
        assert_eq!(t.m_bound(10), 5.0);
        assert_eq!(t.plain_sum_exact(3), Some(0));
        assert!(t.require(4).is_err());
    }

    #[test]
    fn complex_prefix() {
        let t = FunctionTable::from_complex_values("c", TableKind::Other, vec![Complex64::new(0.0, 1.0); 4]);
        assert_eq!(t.prefix_sq(4), 4.0);
        assert!(!t.is_real());
        assert_eq!(t.plain_sum(4), Complex64::new(0.0, 4.0));
    }

    #[test]
    fn growth_examples() {
        let one = constant_table(1 << 12, 1);
        for g in growth_ratios(&one).unwrap() {
            assert!((g.ratio.unwrap() - 2f64.sqrt()).abs() < 1e-12);
        }
        let id = identity_table(1 << 12);
        for g in growth_ratios(&id).unwrap().iter().filter(|g| g.r >= 8) {
            assert!((g.ratio.unwrap() / (2.0 * 2f64.sqrt()) - 1.0).abs() < 0.05);
        }
        let z = zero_table(64);
        let rows = growth_ratios(&z).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(growth_ratio_errors(&rows).len(), 3);
        assert!(growth_ratios(&constant_table(15, 1)).is_err());
    }

    #[test]
    fn tags_round_trip() {
        for k in [
            TableKind::Other,
            TableKind::Constant,
            TableKind::Identity,
            TableKind::PrimeIndicator,
            TableKind::Totient,
            TableKind::Rademacher,
            TableKind::Character,
            TableKind::Zero,
            TableKind::Tau(2),
            TableKind::Tau(5),
        ] {
            assert_eq!(TableKind::from_tag(k.tag()), Some(k));
        }
        assert_eq!(TableKind::from_tag(9), None);
    }
}
