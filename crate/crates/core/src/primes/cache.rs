//! On-disk prime list: the 8-byte magic `PRIMES01` followed by little-endian `u64` primes.

use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"PRIMES01";

/// File name used inside a cache directory.
pub const CACHE_FILE: &str = "primes.bin";

pub fn write_primes(path: &Path, primes: &[u64]) -> Result<()> {
    let tmp = path.with_extension("bin.tmp");
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        w.write_all(MAGIC)?;
        for p in primes {
            w.write_all(&p.to_le_bytes())?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_primes(path: &Path) -> Result<Vec<u64>> {
    let bad = |msg: &str| Error::Cache {
        path: path.to_path_buf(),
        msg: msg.to_string(),
    };
    let mut r = BufReader::new(fs::File::open(path)?);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).map_err(|_| bad("missing header"))?;
    if &magic != MAGIC {
        return Err(bad("wrong magic"));
    }
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() % 8 != 0 {
        return Err(bad("truncated entry"));
    }
    let primes: Vec<u64> = bytes
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    if primes.first().is_some_and(|&p| p != 2) || primes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("entries are not the increasing primes from 2"));
    }
    Ok(primes)
}

/// Primes up to `limit`, served from `dir/primes.bin` when it reaches far enough.
///
/// A cache that is too short is regenerated and rewritten. The stored list is
/// trusted to be the complete prefix of primes up to its last entry.
pub fn primes_upto_cached(limit: u64, dir: Option<&Path>) -> Result<Vec<u64>> {
    let Some(dir) = dir else {
        return super::primes_upto(limit);
    };
    let path: PathBuf = dir.join(CACHE_FILE);
    if path.exists() {
        let cached = read_primes(&path)?;
        if cached.last().is_some_and(|&p| p >= limit) {
            let end = cached.partition_point(|&p| p <= limit);
            let mut cached = cached;
            cached.truncate(end);
            return Ok(cached);
        }
    }
    let primes = super::primes_upto(limit)?;
    fs::create_dir_all(dir)?;
    write_primes(&path, &primes)?;
    Ok(primes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_is_magic_then_le_words() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.bin");
        write_primes(&path, &[2, 3, 5]).unwrap();
        let bytes = fs::read(&path).unwrap();
        assert_eq!(&bytes[..8], b"PRIMES01");
        assert_eq!(bytes.len(), 8 + 3 * 8);
        assert_eq!(&bytes[8..16], &2u64.to_le_bytes());
        assert_eq!(&bytes[24..32], &5u64.to_le_bytes());
        assert_eq!(read_primes(&path).unwrap(), vec![2, 3, 5]);
    }

    #[test]
    fn rejects_bad_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.bin");
        fs::write(&path, b"PRIMES02").unwrap();
        assert!(matches!(read_primes(&path), Err(Error::Cache { .. })));
        let mut bytes = MAGIC.to_vec();
        bytes.extend_from_slice(&[1, 2, 3]);
        fs::write(&path, &bytes).unwrap();
        assert!(matches!(read_primes(&path), Err(Error::Cache { .. })));
    }

    #[test]
    fn cached_prefix_is_reused_and_extended() {
        let dir = tempfile::tempdir().unwrap();
        let a = primes_upto_cached(1000, Some(dir.path())).unwrap();
        assert_eq!(a, super::super::primes_upto(1000).unwrap());
        let b = primes_upto_cached(100, Some(dir.path())).unwrap();
        assert_eq!(b.len(), 25);
        let c = primes_upto_cached(5000, Some(dir.path())).unwrap();
        assert_eq!(c.len(), 669);
        assert_eq!(read_primes(&dir.path().join(CACHE_FILE)).unwrap(), c);
    }
}
