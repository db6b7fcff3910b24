//! Reference values shipped with the crate, one `key = value ; tag` per line.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;

pub const GOLDEN: &str = include_str!("../data/golden.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub tag: String,
}

pub fn parse(text: &str) -> Result<Vec<Entry>, String> {
    let mut out: Vec<Entry> = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (kv, tag) = line.split_once(';').unwrap_or((line, ""));
        let (k, v) = kv.split_once('=').ok_or_else(|| alloc::format!("line {}: expected key = value", no + 1))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || v.is_empty() {
            return Err(alloc::format!("line {}: empty key or value", no + 1));
        }
        if out.iter().any(|e| e.key == k) {
            return Err(alloc::format!("line {}: duplicate key {}", no + 1, k));
        }
        out.push(Entry { key: k.into(), value: v.into(), tag: tag.trim().into() });
    }
    Ok(out)
}

pub fn entries() -> Vec<Entry> {
    parse(GOLDEN).expect("shipped golden file parses")
}

pub fn get(key: &str) -> Option<Entry> {
    entries().into_iter().find(|e| e.key == key)
}

/// Integer value of `key`; panics if the shipped file lacks it.
pub fn int(key: &str) -> BigUint {
    get(key)
        .and_then(|e| e.value.parse().ok())
        .unwrap_or_else(|| panic!("golden value {} missing or not an integer", key))
}

pub fn u64(key: &str) -> u64 {
    int(key).try_into().expect("golden value fits u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_file() {
        let e = entries();
        assert!(e.iter().all(|x| !x.tag.is_empty()));
        assert_eq!(u64("index.3"), 36);
        assert!(parse("a = 1\na = 2").is_err());
        assert!(parse("junk").is_err());
    }
}
