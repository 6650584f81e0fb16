//! On-disk cache for integer-valued tables.
//!
//! Layout: the magic bytes `BLAB1`, the table length `N` as a little-endian
//! `u64`, a one-byte type tag (see [`TableKind::tag`]), then `f(1), ..., f(N)`
//! as little-endian `i64`.

use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::arith::{FunctionTable, TableKind};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 5] = b"BLAB1";

pub fn encode(table: &FunctionTable) -> Result<Vec<u8>> {
    let values = table
        .int_values()
        .ok_or_else(|| Error::Cache(format!("{} is not integer-valued", table.name())))?;
    let mut out = Vec::with_capacity(14 + 8 * table.n());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(table.n() as u64).to_le_bytes());
    out.push(table.kind().tag());
    for v in &values[1..] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    Ok(out)
}

pub fn decode(bytes: &[u8], name: &str) -> Result<FunctionTable> {
    if bytes.len() < 14 || &bytes[..5] != MAGIC {
        return Err(Error::Cache("missing BLAB1 header".into()));
    }
    let n = u64::from_le_bytes(bytes[5..13].try_into().expect("8 bytes"));
    let kind = TableKind::from_tag(bytes[13]).ok_or_else(|| Error::Cache(format!("unknown type tag {}", bytes[13])))?;
    let body = &bytes[14..];
    if n.checked_mul(8) != Some(body.len() as u64) {
        return Err(Error::Cache(format!("header announces {n} values but {} bytes follow", body.len())));
    }
    let values = body.chunks_exact(8).map(|c| i64::from_le_bytes(c.try_into().expect("8 bytes"))).collect();
    Ok(FunctionTable::from_int_values(name, kind, values))
}

pub fn write_table(path: &Path, table: &FunctionTable) -> Result<()> {
    let bytes = encode(table)?;
    let mut w = BufWriter::new(fs::File::create(path)?);
    w.write_all(&bytes)?;
    w.flush()?;
    Ok(())
}

/// Reads a cached table; the name is taken from the caller since the
/// format does not store one.
pub fn read_table(path: &Path, name: &str) -> Result<FunctionTable> {
    let mut bytes = Vec::new();
    fs::File::open(path)?.read_to_end(&mut bytes)?;
    decode(&bytes, name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rademacher_table, sieve_tau_k};
    use num_complex::Complex64;

    #[test]
    fn round_trip() {
        let t = sieve_tau_k(1000, 3).unwrap();
        let bytes = encode(&t).unwrap();
        assert_eq!(&bytes[..5], b"BLAB1");
        assert_eq!(bytes.len(), 14 + 8000);
        assert_eq!(bytes[13], 13);
        assert_eq!(decode(&bytes, "tau3").unwrap(), t);
        let r = rademacher_table(64, 3);
        assert_eq!(decode(&encode(&r).unwrap(), "rademacher").unwrap(), r);
    }

    #[test]
    fn rejects_corruption() {
        let t = sieve_tau_k(10, 2).unwrap();
        let mut bytes = encode(&t).unwrap();
        bytes.pop();
        assert!(decode(&bytes, "x").is_err());
        assert!(decode(b"BLAB2xxxxxxxxxxxxx", "x").is_err());
        let c = FunctionTable::from_complex_values("c", TableKind::Other, vec![Complex64::new(0.5, 0.0)]);
        assert!(encode(&c).is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join(format!("blab-cache-test-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let p = dir.join("tau2.blab");
        let t = sieve_tau_k(500, 2).unwrap();
        write_table(&p, &t).unwrap();
        assert_eq!(read_table(&p, "tau2").unwrap(), t);
        fs::remove_dir_all(&dir).unwrap();
    }
}
