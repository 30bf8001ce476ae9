//! Content hashing and serialization helpers shared by all certificates.

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Hex SHA-256 of the compact JSON encoding of `value`.
pub fn content_hash<T: Serialize + ?Sized>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("certificate values serialize");
    hex::encode(Sha256::digest(&bytes))
}

/// Pretty JSON with a trailing newline, stable for a fixed input.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("certificate values serialize");
    s.push('\n');
    s
}
