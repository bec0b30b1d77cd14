//! On-disk cache of function tables.
//!
//! Record layout, all integers little-endian:
//!
//! ```text
//! "ACOR" | version: u16 | kind tag: u8 | lo: u64 | hi: u64 | values | checksum: u64
//! ```
//!
//! Small kinds store one `i8` per element. Λ stores `prime: u64, exponent: u8`
//! per element, with `prime = 0` for "not a prime power". The checksum is
//! 64-bit FNV-1a over every preceding byte. A record that fails any check is
//! ignored and rebuilt; the cache never changes a result.

use std::fs;
use std::path::{Path, PathBuf};

use crate::arith::{FunctionKind, PrimePower};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::sieve::{build_table_with, FunctionTable, TableValues};
use crate::window::Window;

pub const MAGIC: &[u8; 4] = b"ACOR";
pub const FORMAT_VERSION: u16 = 1;
/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "ACOR_CACHE_DIR";

const HEADER_LEN: usize = 4 + 2 + 1 + 8 + 8;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0100_0000_01b3);
    }
    hash
}

pub fn encode(table: &FunctionTable) -> Vec<u8> {
    let window = table.window();
    let mut out = Vec::with_capacity(HEADER_LEN + 9 * table.values().len() + 8);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.push(table.kind().tag());
    out.extend_from_slice(&window.lo().to_le_bytes());
    out.extend_from_slice(&window.hi().to_le_bytes());
    match table.values() {
        TableValues::Small(values) => out.extend(values.iter().map(|&v| v as u8)),
        TableValues::PrimePowers(values) => {
            for v in values {
                let (prime, exponent) = v.map_or((0, 0), |pp| (pp.prime, pp.exponent as u8));
                out.extend_from_slice(&prime.to_le_bytes());
                out.push(exponent);
            }
        }
    }
    let checksum = fnv1a64(&out);
    out.extend_from_slice(&checksum.to_le_bytes());
    out
}

fn read_u64(bytes: &[u8], at: usize) -> u64 {
    u64::from_le_bytes(bytes[at..at + 8].try_into().expect("8 bytes"))
}

pub fn decode(bytes: &[u8]) -> Result<FunctionTable> {
    let bad = |what: &str| Error::Cache(what.to_string());
    if bytes.len() < HEADER_LEN + 8 {
        return Err(bad("record truncated"));
    }
    if &bytes[..4] != MAGIC {
        return Err(bad("bad magic"));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != FORMAT_VERSION {
        return Err(Error::Cache(format!("unsupported format version {version}")));
    }
    let body_end = bytes.len() - 8;
    if fnv1a64(&bytes[..body_end]) != read_u64(bytes, body_end) {
        return Err(bad("checksum mismatch"));
    }
    let kind = FunctionKind::from_tag(bytes[6]).ok_or_else(|| bad("unknown kind tag"))?;
    let window = Window::new(read_u64(bytes, 7), read_u64(bytes, 15))?;
    let payload = &bytes[HEADER_LEN..body_end];
    let len = window.len() as usize;
    let values = if kind == FunctionKind::Mangoldt {
        if payload.len() != len * 9 {
            return Err(bad("payload length does not match window"));
        }
        TableValues::PrimePowers(
            payload
                .chunks_exact(9)
                .map(|c| {
                    let prime = read_u64(c, 0);
                    (prime != 0).then_some(PrimePower { prime, exponent: c[8] as u32 })
                })
                .collect(),
        )
    } else {
        if payload.len() != len {
            return Err(bad("payload length does not match window"));
        }
        TableValues::Small(payload.iter().map(|&b| b as i8).collect())
    };
    FunctionTable::new(kind, window, values)
}

pub fn record_path(dir: &Path, kind: FunctionKind, window: Window) -> PathBuf {
    dir.join(format!("{}_{}_{}.acor", kind.name(), window.lo(), window.hi()))
}

/// The cache directory named by [`CACHE_DIR_ENV`], if set and non-empty.
pub fn dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Loads a table from `dir` if a valid record exists, otherwise builds it and
/// tries to store it. Write failures are ignored.
pub fn load_or_build(kind: FunctionKind, window: Window, dir: &Path, config: &Config) -> Result<FunctionTable> {
    let path = record_path(dir, kind, window);
    if let Ok(bytes) = fs::read(&path) {
        if let Ok(table) = decode(&bytes) {
            if table.kind() == kind && table.window() == window {
                return Ok(table);
            }
        }
    }
    let table = build_table_with(kind, window, config)?;
    if fs::create_dir_all(dir).is_ok() {
        let _ = fs::write(&path, encode(&table));
    }
    Ok(table)
}
