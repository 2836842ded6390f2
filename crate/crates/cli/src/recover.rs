//! Accountability tooling: brute-force a vote identifier back to the
//! registered id it was issued to, given the identity server's secret.

use thiserror::Error;
use vouch_core::crypto::Digest;
use vouch_core::protocol::identity::recover_identity;

#[derive(Debug, Error, PartialEq)]
pub enum RecoverInputError {
    #[error("{name}: expected 64 hex characters")]
    BadDigest { name: &'static str },
    #[error("k_is: expected 64 hex characters")]
    BadSecret,
    #[error("ids: expected a range like 0..100000")]
    BadRange,
}

fn parse_digest(name: &'static str, s: &str) -> Result<Digest, RecoverInputError> {
    Digest::from_hex(s.trim()).map_err(|_| RecoverInputError::BadDigest { name })
}

fn parse_range(s: &str) -> Result<std::ops::Range<u64>, RecoverInputError> {
    let (a, b) = s.trim().split_once("..").ok_or(RecoverInputError::BadRange)?;
    let start: u64 = a.parse().map_err(|_| RecoverInputError::BadRange)?;
    let end: u64 = b.parse().map_err(|_| RecoverInputError::BadRange)?;
    Ok(start..end)
}

/// Scans `ids` for the identity behind `upsilon`. Returns the printable
/// outcome: the id, or "not found".
pub fn recover(
    upsilon_hex: &str,
    h_m_hex: &str,
    k_is_hex: &str,
    ids: &str,
) -> Result<String, RecoverInputError> {
    let upsilon = parse_digest("upsilon", upsilon_hex)?;
    let h_m = parse_digest("report_hash", h_m_hex)?;
    let mut k_is = [0u8; 32];
    hex::decode_to_slice(k_is_hex.trim(), &mut k_is).map_err(|_| RecoverInputError::BadSecret)?;
    let range = parse_range(ids)?;
    Ok(match recover_identity(&upsilon, &h_m, &k_is, range) {
        Some(id) => id.to_string(),
        None => "not found".to_string(),
    })
}
