//! Fetching a zero table: download (or copy), check a caller-supplied
//! SHA-256, and only then move it into the data directory.

use std::fs::{self, File};
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{usage, Error, Result};
use crate::zerodata::{load_zeros, ZeroSet};

/// Lower-case hex SHA-256 of a file.
pub fn sha256_file(path: impl AsRef<Path>) -> Result<String> {
    let mut f = File::open(path.as_ref())?;
    let mut h = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = f.read(&mut buf)?;
        if n == 0 {
            break;
        }
        h.update(&buf[..n]);
    }
    Ok(hex::encode(h.finalize()))
}

fn open_source(source: &str) -> Result<Box<dyn Read>> {
    if let Some(rest) = source.strip_prefix("file://") {
        return Ok(Box::new(File::open(rest)?));
    }
    if source.starts_with("http://") || source.starts_with("https://") {
        let resp = ureq::get(source).call().map_err(|e| Error::Download(format!("{source}: {e}")))?;
        return Ok(Box::new(resp.into_reader()));
    }
    if source.contains("://") {
        return Err(usage(format!("unsupported URL scheme in {source}")));
    }
    Ok(Box::new(File::open(source)?))
}

/// Retrieves `source` (http(s)://, file:// or a plain path) into `data_dir`
/// as `file_name`, refusing it unless its SHA-256 equals `expected_sha256`.
///
/// The download goes to a temporary file next to the target and is renamed
/// into place after the checksum and a full parse succeed, so a failed
/// fetch never leaves a partial table behind.
pub fn fetch_zero_table(source: &str, expected_sha256: &str, data_dir: &Path, file_name: &str) -> Result<PathBuf> {
    let expected = expected_sha256.trim().to_ascii_lowercase();
    if expected.len() != 64 || !expected.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(usage("expected checksum must be 64 hex digits (SHA-256)"));
    }
    if file_name.is_empty() || file_name.contains(['/', '\\']) {
        return Err(usage(format!("bad target file name {file_name:?}")));
    }
    fs::create_dir_all(data_dir)?;
    let target = data_dir.join(file_name);
    let tmp = data_dir.join(format!(".{file_name}.partial"));
    let result = (|| {
        let mut reader = open_source(source)?;
        let mut out = File::create(&tmp)?;
        let mut h = Sha256::new();
        let mut buf = vec![0u8; 1 << 16];
        loop {
            let n = match reader.read(&mut buf) {
                Ok(0) => break,
                Ok(n) => n,
                Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
                Err(e) => return Err(Error::Download(format!("{source}: {e}"))),
            };
            h.update(&buf[..n]);
            out.write_all(&buf[..n])?;
        }
        out.sync_all()?;
        let actual = hex::encode(h.finalize());
        if actual != expected {
            return Err(Error::Checksum { expected: expected.clone(), actual });
        }
        load_zeros(&tmp, None)?;
        fs::rename(&tmp, &target)?;
        Ok(target.clone())
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Loads a table after checking its SHA-256.
pub fn load_verified(path: impl AsRef<Path>, expected_sha256: &str, t_cap: Option<f64>) -> Result<ZeroSet> {
    let actual = sha256_file(path.as_ref())?;
    let expected = expected_sha256.trim().to_ascii_lowercase();
    if actual != expected {
        return Err(Error::Checksum { expected, actual });
    }
    load_zeros(path, t_cap)
}
