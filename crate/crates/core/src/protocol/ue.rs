//! User-equipment side: building reports from currently valid tokens and
//! opening polled confirmation requests.

use std::collections::{HashMap, HashSet};

use rand::RngCore;

use crate::crypto::{decrypt, derive_sym_key, encrypt, hash, AuthFailure, Ciphertext, Digest};
use crate::protocol::{Report, ReportMessage, TokenRecord, VoteDecision, VotingTicket};

/// Builds rho = (ticket, M, alphas): one alpha per token valid at `now`,
/// each carrying the message encrypted under that token's group key.
pub fn build_report(
    tokens: &[TokenRecord],
    message: ReportMessage,
    ticket: VotingTicket,
    now: f64,
    rng: &mut impl RngCore,
) -> Report {
    let encoded = message.encode();
    let alphas = tokens
        .iter()
        .filter(|t| t.is_valid_at(now))
        .map(|t| {
            let key = derive_sym_key(&t.group_key);
            (t.tau, encrypt(&key, &encoded, rng))
        })
        .collect();
    Report {
        ticket,
        message,
        alphas,
    }
}

/// Decrypts a polled request with the stored group key for `tau`.
pub fn open_request(
    tokens: &[TokenRecord],
    tau: &Digest,
    ct: &Ciphertext,
) -> Result<ReportMessage, AuthFailure> {
    let record = tokens.iter().find(|t| &t.tau == tau).ok_or(AuthFailure)?;
    let plaintext = decrypt(&derive_sym_key(&record.group_key), ct)?;
    ReportMessage::decode(&plaintext).map_err(|_| AuthFailure)
}

/// Outcome of handling one polled (tau, ciphertext) pair.
#[derive(Debug, PartialEq)]
pub enum RequestOutcome {
    /// Already handled (same ciphertext seen before).
    Duplicate,
    /// No matching token or the ciphertext failed authentication.
    Unreadable,
    /// Decrypted; carries a cached decision when one exists for this h(M).
    Opened {
        message: ReportMessage,
        predecided: Option<VoteDecision>,
    },
}

/// Per-device protocol state: held tokens, the seen-set that deduplicates
/// re-delivered requests, and the cache of pre-decided reports that enables
/// answering without user interaction.
pub struct UeState {
    pub id: u64,
    tokens: Vec<TokenRecord>,
    seen_requests: HashSet<Digest>,
    predecided: HashMap<Digest, VoteDecision>,
}

impl UeState {
    pub fn new(id: u64) -> Self {
        UeState {
            id,
            tokens: Vec::new(),
            seen_requests: HashSet::new(),
            predecided: HashMap::new(),
        }
    }

    pub fn add_token(&mut self, record: TokenRecord) {
        self.tokens.push(record);
    }

    pub fn tokens(&self) -> &[TokenRecord] {
        &self.tokens
    }

    pub fn drop_expired(&mut self, now: f64) {
        self.tokens.retain(|t| now < t.received_at + t.validity);
    }

    /// Tokens usable for polling or reporting at `now`, in reception order.
    pub fn valid_taus(&self, now: f64) -> Vec<Digest> {
        self.tokens
            .iter()
            .filter(|t| t.is_valid_at(now))
            .map(|t| t.tau)
            .collect()
    }

    pub fn build_report(
        &self,
        message: ReportMessage,
        ticket: VotingTicket,
        now: f64,
        rng: &mut impl RngCore,
    ) -> Report {
        build_report(&self.tokens, message, ticket, now, rng)
    }

    /// Records a decision made ahead of time so later requests for the same
    /// report are answered without interaction.
    pub fn predecide(&mut self, h_m: Digest, decision: VoteDecision) {
        self.predecided.insert(h_m, decision);
    }

    pub fn handle_request(&mut self, tau: &Digest, ct: &Ciphertext) -> RequestOutcome {
        if !self.seen_requests.insert(hash(ct.as_bytes())) {
            return RequestOutcome::Duplicate;
        }
        match open_request(&self.tokens, tau, ct) {
            Err(AuthFailure) => RequestOutcome::Unreadable,
            Ok(message) => {
                let predecided = self.predecided.get(&message.digest()).copied();
                RequestOutcome::Opened {
                    message,
                    predecided,
                }
            }
        }
    }
}
