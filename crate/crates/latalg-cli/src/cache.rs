//! On-disk caches of graded basis listings.
//!
//! A cache file is UTF-8 text:
//!
//! ```text
//! latalg-basis-cache
//! version: <crate version>
//! which: b
//! alphabet: a,b
//! order: <name of the order inside each grade>
//! grades: 1..5
//! [grade 1] 2
//! a
//! b
//! …
//! checksum: sha256:<hex digest of every byte before this line>
//! ```
//!
//! Reading checks the version stamp first (a file from another version is
//! rejected naming both versions), then the checksum, then the structure.

use sha2::{Digest, Sha256};

use crate::listing::{Listing, Which};

/// The version stamp written into new caches.
pub const CACHE_VERSION: &str = env!("CARGO_PKG_VERSION");

const MAGIC: &str = "latalg-basis-cache";

/// Problems with a cache file.
#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum CacheError {
    /// The file was written by another version.
    #[error("cache was written by version {found}, but this is version {current}; regenerate it with `cache write`")]
    Version {
        /// The version stamp in the file.
        found: String,
        /// The running version.
        current: String,
    },
    /// The content does not match the recorded checksum.
    #[error("checksum mismatch: file records {recorded}, content hashes to {actual}")]
    Checksum {
        /// Digest recorded in the file.
        recorded: String,
        /// Digest of the content.
        actual: String,
    },
    /// Structural problem, with the 1-based line number.
    #[error("malformed cache at line {line}: {msg}")]
    Format {
        /// Line number.
        line: usize,
        /// Description.
        msg: String,
    },
}

fn digest(content: &str) -> String {
    hex::encode(Sha256::digest(content.as_bytes()))
}

/// Serializes a listing (rendered in text style) into the cache format.
pub fn encode(listing: &Listing) -> String {
    let mut s = String::new();
    s.push_str(MAGIC);
    s.push('\n');
    s.push_str(&format!("version: {CACHE_VERSION}\n"));
    s.push_str(&format!("which: {}\n", listing.which.name()));
    s.push_str(&format!("alphabet: {}\n", listing.alphabet.join(",")));
    s.push_str(&format!("order: {}\n", listing.which.order()));
    s.push_str(&format!("grades: 1..{}\n", listing.grades.len()));
    for (i, g) in listing.grades.iter().enumerate() {
        s.push_str(&format!("[grade {}] {}\n", i + 1, g.len()));
        for x in g {
            s.push_str(x);
            s.push('\n');
        }
    }
    let sum = digest(&s);
    s.push_str(&format!("checksum: sha256:{sum}\n"));
    s
}

/// Parses and validates a cache file.
pub fn decode(text: &str) -> Result<Listing, CacheError> {
    let bad = |line: usize, msg: &str| CacheError::Format { line, msg: msg.to_string() };
    let lines: Vec<&str> = text.lines().collect();
    if lines.first() != Some(&MAGIC) {
        return Err(bad(1, "not a basis cache"));
    }
    let field = |i: usize, key: &str| -> Result<&str, CacheError> {
        lines
            .get(i)
            .and_then(|l| l.strip_prefix(key))
            .and_then(|l| l.strip_prefix(": "))
            .ok_or_else(|| bad(i + 1, &format!("expected `{key}: …`")))
    };
    let version = field(1, "version")?;
    if version != CACHE_VERSION {
        return Err(CacheError::Version { found: version.to_string(), current: CACHE_VERSION.to_string() });
    }
    let last = lines.len() - 1;
    let recorded = field(last, "checksum")?
        .strip_prefix("sha256:")
        .ok_or_else(|| bad(last + 1, "unsupported checksum algorithm"))?;
    let body_len = text.rfind("checksum: ").expect("checksum line present");
    let actual = digest(&text[..body_len]);
    if recorded != actual {
        return Err(CacheError::Checksum { recorded: recorded.to_string(), actual });
    }
    let which = Which::from_name(field(2, "which")?).ok_or_else(|| bad(3, "unknown basis"))?;
    let alphabet: Vec<String> = field(3, "alphabet")?.split(',').map(str::to_string).collect();
    if field(4, "order")? != which.order() {
        return Err(bad(5, "order does not match the basis"));
    }
    let max_grade: usize = field(5, "grades")?
        .strip_prefix("1..")
        .and_then(|g| g.parse().ok())
        .ok_or_else(|| bad(6, "expected `grades: 1..k`"))?;
    let mut grades = Vec::with_capacity(max_grade);
    let mut i = 6;
    for g in 1..=max_grade {
        let head = lines.get(i).copied().unwrap_or("");
        let count: usize = head
            .strip_prefix(&format!("[grade {g}] "))
            .and_then(|c| c.parse().ok())
            .ok_or_else(|| bad(i + 1, &format!("expected `[grade {g}] <count>`")))?;
        i += 1;
        if i + count > last {
            return Err(bad(i + 1, "grade section runs past the checksum"));
        }
        grades.push(lines[i..i + count].iter().map(|s| s.to_string()).collect());
        i += count;
    }
    if i != last {
        return Err(bad(i + 1, "unexpected content before the checksum"));
    }
    Ok(Listing { which, alphabet, grades })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::listing::{build, Style};
    use latalg::Alphabet;

    fn sample() -> Listing {
        build(Which::B, &Alphabet::standard(1), 5, Style::Text)
    }

    #[test]
    fn round_trip_is_exact() {
        let l = sample();
        let text = encode(&l);
        assert_eq!(decode(&text).unwrap(), l);
        assert_eq!(encode(&decode(&text).unwrap()), text);
    }

    #[test]
    fn corruption_is_detected() {
        let text = encode(&sample());
        let pos = text.find("[s(a)").unwrap() + 1;
        let mut bytes = text.into_bytes();
        bytes[pos] = b't';
        let err = decode(std::str::from_utf8(&bytes).unwrap()).unwrap_err();
        assert!(matches!(err, CacheError::Checksum { .. }), "{err}");
    }

    #[test]
    fn other_versions_are_rejected_by_name() {
        let text = encode(&sample()).replace(&format!("version: {CACHE_VERSION}"), "version: 0.0.1");
        let err = decode(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("0.0.1") && msg.contains(CACHE_VERSION), "{msg}");
    }
}
