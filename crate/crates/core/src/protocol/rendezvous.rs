//! Rendezvous points: untrusted stores addressed by hashed tokens where
//! confirmation requests wait for polling witnesses.

use std::collections::HashMap;

use crate::crypto::{hash, Ciphertext, Digest};

/// Store index for a token: the big-endian integer value of hash(tau),
/// reduced mod the store count.
pub fn rp_index(tau: &Digest, n: usize) -> usize {
    assert!(n >= 1, "rendezvous store count must be at least 1");
    let rp_id = hash(tau.as_bytes());
    let n = n as u128;
    let reduced = rp_id
        .as_bytes()
        .iter()
        .fold(0u128, |acc, &b| (acc * 256 + b as u128) % n);
    reduced as usize
}

/// N token-addressed stores. Polls return everything recorded for a token;
/// deduplication of re-deliveries is the caller's job.
pub struct RendezvousRegistry {
    stores: Vec<HashMap<Digest, Vec<Ciphertext>>>,
}

impl RendezvousRegistry {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rendezvous store count must be at least 1");
        RendezvousRegistry {
            stores: (0..n).map(|_| HashMap::new()).collect(),
        }
    }

    pub fn store_count(&self) -> usize {
        self.stores.len()
    }

    pub fn deposit(&mut self, tau: &Digest, ct: Ciphertext) {
        let idx = rp_index(tau, self.stores.len());
        self.stores[idx].entry(*tau).or_default().push(ct);
    }

    /// All stored ciphertexts for each queried token.
    pub fn poll(&self, taus: &[Digest]) -> Vec<(Digest, Ciphertext)> {
        let mut out = Vec::new();
        for tau in taus {
            let idx = rp_index(tau, self.stores.len());
            if let Some(cts) = self.stores[idx].get(tau) {
                for ct in cts {
                    out.push((*tau, ct.clone()));
                }
            }
        }
        out
    }

    /// Entries for a token at one specific store index; lets tests verify
    /// that nothing leaks into the wrong store.
    pub fn entries_at(&self, store: usize, tau: &Digest) -> &[Ciphertext] {
        self.stores[store].get(tau).map(Vec::as_slice).unwrap_or(&[])
    }
}
