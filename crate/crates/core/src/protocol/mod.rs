//! Domain types and entity state machines for witness-based report
//! verification: user equipment (UE), identity server (IS), verifier, and
//! rendezvous points (RP).
//!
//! All wire-visible types have canonical octet encodings (length-prefixed
//! fields in declaration order, big-endian integers) so that h(M) and the
//! ticket signature input are reproducible across implementations.

use crate::crypto::{hash, Ciphertext, Digest, GroupKey, Signature};

mod encoding;
pub mod identity;
pub mod rate_limit;
pub mod rendezvous;
pub mod trace;
pub mod ue;
pub mod verifier;

pub use encoding::{DecodeError, Decoder, Encoder};
pub use identity::{
    compute_vote_identifier, recover_identity, IdentityServerState, IssueError,
};
pub use rate_limit::{RateLimiter, RateLimiterConfig};
pub use rendezvous::{rp_index, RendezvousRegistry};
pub use trace::{MessageKind, Role, TraceEntry};
pub use ue::{build_report, open_request, RequestOutcome, UeState};
pub use verifier::{RejectReason, Tally, TallyStatus, VerifierState, VoteCounts};

/// Tokens expire five minutes after reception unless configured otherwise.
pub const DEFAULT_TOKEN_VALIDITY: f64 = 300.0;

/// Default absolute deadline offset after which a defer no longer holds a
/// tally in the pending state.
pub const DEFAULT_TALLY_DEADLINE: f64 = 600.0;

/// A negotiated proximity token as stored by every negotiation participant.
#[derive(Clone, Debug)]
pub struct TokenRecord {
    pub tau: Digest,
    pub group_key: GroupKey,
    pub received_at: f64,
    pub validity: f64,
}

impl TokenRecord {
    pub fn new(group_key: GroupKey, received_at: f64, validity: f64) -> Self {
        TokenRecord {
            tau: crate::crypto::derive_token(&group_key),
            group_key,
            received_at,
            validity,
        }
    }

    pub fn is_valid_at(&self, t: f64) -> bool {
        self.received_at <= t && t < self.received_at + self.validity
    }
}

/// The message M carried inside a report: location, time, description and a
/// fresh random nonce.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportMessage {
    pub nonce: [u8; 16],
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub description: Vec<u8>,
}

impl ReportMessage {
    pub fn encode(&self) -> Vec<u8> {
        let mut e = Encoder::new();
        e.bytes(&self.nonce);
        e.f64(self.x);
        e.f64(self.y);
        e.f64(self.t);
        e.bytes(&self.description);
        e.finish()
    }

    pub fn decode(data: &[u8]) -> Result<Self, DecodeError> {
        let mut d = Decoder::new(data);
        let nonce_vec = d.bytes()?;
        let nonce: [u8; 16] = nonce_vec.try_into().map_err(|_| DecodeError::BadField)?;
        let x = d.f64()?;
        let y = d.f64()?;
        let t = d.f64()?;
        let description = d.bytes()?;
        d.finish()?;
        Ok(ReportMessage {
            nonce,
            x,
            y,
            t,
            description,
        })
    }

    /// h(M) over the canonical encoding.
    pub fn digest(&self) -> Digest {
        hash(&self.encode())
    }
}

/// IS-signed binding of a report hash to a per-user vote identifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VotingTicket {
    pub upsilon: Digest,
    pub sig: Signature,
}

impl VotingTicket {
    pub fn encode(&self) -> Vec<u8> {
        let mut e = Encoder::new();
        e.bytes(self.upsilon.as_bytes());
        e.bytes(&self.sig.to_bytes());
        e.finish()
    }

    /// The octets the IS signs: h(M) followed by upsilon, both fixed-width.
    pub fn signing_bytes(h_m: &Digest, upsilon: &Digest) -> Vec<u8> {
        let mut out = Vec::with_capacity(64);
        out.extend_from_slice(h_m.as_bytes());
        out.extend_from_slice(upsilon.as_bytes());
        out
    }
}

/// A report rho = (ticket, M, alphas), where each alpha pairs a token with
/// the message encrypted under that token's group key.
#[derive(Clone, Debug)]
pub struct Report {
    pub ticket: VotingTicket,
    pub message: ReportMessage,
    pub alphas: Vec<(Digest, Ciphertext)>,
}

impl Report {
    pub fn encode(&self) -> Vec<u8> {
        let mut e = Encoder::new();
        e.raw(&self.ticket.encode());
        e.raw(&self.message.encode());
        e.u32(self.alphas.len() as u32);
        for (tau, ct) in &self.alphas {
            e.bytes(tau.as_bytes());
            e.bytes(ct.as_bytes());
        }
        e.finish()
    }
}

/// The four-valued vote decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VoteDecision {
    True,
    False,
    Unsure,
    Defer,
}

impl VoteDecision {
    pub fn as_byte(self) -> u8 {
        match self {
            VoteDecision::True => 0,
            VoteDecision::False => 1,
            VoteDecision::Unsure => 2,
            VoteDecision::Defer => 3,
        }
    }

    pub fn is_decisive(self) -> bool {
        matches!(self, VoteDecision::True | VoteDecision::False)
    }

    pub fn label(self) -> &'static str {
        match self {
            VoteDecision::True => "true",
            VoteDecision::False => "false",
            VoteDecision::Unsure => "unsure",
            VoteDecision::Defer => "defer",
        }
    }
}

/// A witness vote V = (ticket, decision).
#[derive(Clone, Debug)]
pub struct Vote {
    pub ticket: VotingTicket,
    pub decision: VoteDecision,
}

impl Vote {
    pub fn encode(&self) -> Vec<u8> {
        let mut e = Encoder::new();
        e.raw(&self.ticket.encode());
        e.bytes(&[self.decision.as_byte()]);
        e.finish()
    }
}
