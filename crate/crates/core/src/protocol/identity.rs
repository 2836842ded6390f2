//! The identity server: authenticates registered users and issues voting
//! tickets without ever seeing a report body, plus the brute-force identity
//! recovery that combines verifier and IS knowledge.

use std::collections::HashSet;

use rand::{CryptoRng, RngCore};
use thiserror::Error;

use crate::crypto::{hash_parts, Digest, PublicKey, SigningKeyPair};
use crate::protocol::rate_limit::{RateLimiter, RateLimiterConfig};
use crate::protocol::VotingTicket;

/// upsilon = h(id, h(M), k_is) over the length-prefixed field encoding.
pub fn compute_vote_identifier(id: u64, h_m: &Digest, k_is: &[u8; 32]) -> Digest {
    hash_parts(&[&id.to_be_bytes(), h_m.as_bytes(), k_is])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum IssueError {
    #[error("unknown identity")]
    UnknownIdentity,
    #[error("rate limited")]
    RateLimited,
}

pub struct IdentityServerState {
    k_is: [u8; 32],
    keypair: SigningKeyPair,
    registered: HashSet<u64>,
    limiter: RateLimiter<u64>,
}

impl IdentityServerState {
    pub fn new(rng: &mut (impl RngCore + CryptoRng), limits: RateLimiterConfig) -> Self {
        let mut k_is = [0u8; 32];
        rng.fill_bytes(&mut k_is);
        Self::with_secret(k_is, rng, limits)
    }

    /// Explicit k_is, for tests and for the recovery tooling that must know
    /// the secret out of band.
    pub fn with_secret(
        k_is: [u8; 32],
        rng: &mut (impl RngCore + CryptoRng),
        limits: RateLimiterConfig,
    ) -> Self {
        IdentityServerState {
            k_is,
            keypair: SigningKeyPair::generate(rng),
            registered: HashSet::new(),
            limiter: RateLimiter::new(limits),
        }
    }

    pub fn register(&mut self, id: u64) {
        self.registered.insert(id);
    }

    pub fn register_range(&mut self, ids: std::ops::Range<u64>) {
        for id in ids {
            self.registered.insert(id);
        }
    }

    pub fn public_key(&self) -> PublicKey {
        self.keypair.public()
    }

    /// Issues a ticket for (id, h(M)). The IS only ever sees the hash.
    pub fn issue_ticket(
        &mut self,
        id: u64,
        h_m: &Digest,
        now: f64,
    ) -> Result<VotingTicket, IssueError> {
        if !self.registered.contains(&id) {
            return Err(IssueError::UnknownIdentity);
        }
        if !self.limiter.allow(id, now) {
            return Err(IssueError::RateLimited);
        }
        let upsilon = compute_vote_identifier(id, h_m, &self.k_is);
        let sig = self.keypair.sign(&VotingTicket::signing_bytes(h_m, &upsilon));
        Ok(VotingTicket { upsilon, sig })
    }
}

/// Brute-force accountability: scan the id universe for the identifier whose
/// recomputed upsilon matches. Linear in the universe size by construction.
pub fn recover_identity(
    upsilon: &Digest,
    h_m: &Digest,
    k_is: &[u8; 32],
    id_universe: impl IntoIterator<Item = u64>,
) -> Option<u64> {
    id_universe
        .into_iter()
        .find(|&id| compute_vote_identifier(id, h_m, k_is) == *upsilon)
}
