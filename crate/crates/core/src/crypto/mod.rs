//! Cryptographic primitives: hashing, authenticated encryption, signatures,
//! and the group Diffie-Hellman exchange behind token negotiation.

use std::fmt;

use sha2::{Digest as _, Sha256};

pub mod aead;
pub mod gdh;
pub mod sig;

pub use aead::{decrypt, encrypt, AuthFailure, Ciphertext, SymmetricKey};
pub use gdh::{gdh_exchange, GdhError, GdhMessage, GdhStage, GroupKey, GroupParams};
pub use sig::{sign, verify, PublicKey, Signature, SigningKeyPair};

pub const DIGEST_LEN: usize = 32;

/// 32-octet hash value. Default algorithm is SHA-256; everything downstream
/// goes through [`hash`] / [`hash_parts`], so swapping the algorithm is a
/// local change.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digest(pub [u8; DIGEST_LEN]);

impl Digest {
    pub fn as_bytes(&self) -> &[u8; DIGEST_LEN] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, hex::FromHexError> {
        let mut out = [0u8; DIGEST_LEN];
        hex::decode_to_slice(s, &mut out)?;
        Ok(Digest(out))
    }

    /// First four bytes as hex, used by trace lines.
    pub fn short_hex(&self) -> String {
        hex::encode(&self.0[..4])
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({}..)", self.short_hex())
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn hash(data: &[u8]) -> Digest {
    Digest(Sha256::digest(data).into())
}

/// Hash of several fields, each length-prefixed (u32 big-endian), so that
/// field boundaries are unambiguous regardless of their contents.
pub fn hash_parts(parts: &[&[u8]]) -> Digest {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u32).to_be_bytes());
        h.update(p);
    }
    Digest(h.finalize().into())
}

/// Token derivation: tau is the hash of the canonical key encoding.
pub fn derive_token(k: &GroupKey) -> Digest {
    hash(k.as_bytes())
}

/// Symmetric key used for E_K, domain-separated from token derivation so a
/// raw group element never doubles as a cipher key.
pub fn derive_sym_key(k: &GroupKey) -> SymmetricKey {
    let mut h = Sha256::new();
    h.update(b"vue-enc");
    h.update(k.as_bytes());
    SymmetricKey(h.finalize().into())
}
