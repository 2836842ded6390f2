//! Signatures for voting tickets. Ed25519; any scheme with the standard
//! unforgeability contract would do.

use ed25519_dalek::{Signer, Verifier};
use rand::{CryptoRng, RngCore};

pub type PublicKey = ed25519_dalek::VerifyingKey;
pub type Signature = ed25519_dalek::Signature;

pub struct SigningKeyPair {
    secret: ed25519_dalek::SigningKey,
}

impl SigningKeyPair {
    pub fn generate(rng: &mut (impl RngCore + CryptoRng)) -> Self {
        Self {
            secret: ed25519_dalek::SigningKey::generate(rng),
        }
    }

    pub fn public(&self) -> PublicKey {
        self.secret.verifying_key()
    }

    pub fn sign(&self, message: &[u8]) -> Signature {
        self.secret.sign(message)
    }
}

pub fn sign(kp: &SigningKeyPair, message: &[u8]) -> Signature {
    kp.sign(message)
}

pub fn verify(pk: &PublicKey, message: &[u8], sig: &Signature) -> bool {
    pk.verify(message, sig).is_ok()
}
