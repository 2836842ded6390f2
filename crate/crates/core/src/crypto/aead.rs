//! Authenticated symmetric encryption. Default construction is AES-256-GCM
//! with a fresh random 96-bit nonce carried in front of the ciphertext.

use aes_gcm::aead::Aead;
use aes_gcm::{Aes256Gcm, Key, KeyInit, Nonce};
use rand::RngCore;
use thiserror::Error;

pub const NONCE_LEN: usize = 12;
pub const TAG_LEN: usize = 16;

#[derive(Clone, PartialEq, Eq)]
pub struct SymmetricKey(pub [u8; 32]);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciphertext(pub Vec<u8>);

impl Ciphertext {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Decryption failed: wrong key, truncated, or tampered ciphertext.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("authenticated decryption failed")]
pub struct AuthFailure;

pub fn encrypt(key: &SymmetricKey, plaintext: &[u8], rng: &mut impl RngCore) -> Ciphertext {
    let mut nonce = [0u8; NONCE_LEN];
    rng.fill_bytes(&mut nonce);
    let cipher = Aes256Gcm::new(Key::<Aes256Gcm>::from_slice(&key.0));
    let mut out = nonce.to_vec();
    let ct = cipher
        .encrypt(Nonce::from_slice(&nonce), plaintext)
        .expect("AES-GCM encryption cannot fail for in-memory buffers");
    out.extend_from_slice(&ct);
    Ciphertext(out)
}

pub fn decrypt(key: &SymmetricKey, ct: &Ciphertext) -> Result<Vec<u8>, AuthFailure> {
    if ct.0.len() < NONCE_LEN + TAG_LEN {
        return Err(AuthFailure);
    }
    let (nonce, body) = ct.0.split_at(NONCE_LEN);
    let cipher = Aes256Gcm::new(Key::<Aes256Gcm>::from_slice(&key.0));
    cipher
        .decrypt(Nonce::from_slice(nonce), body)
        .map_err(|_| AuthFailure)
}
