//! Witness-based verification of user-submitted event reports, plus the
//! mobility/connectivity simulation used to evaluate it.
//!
//! The crate splits into two halves. The protocol half ([`crypto`],
//! [`protocol`]) implements proximity-token negotiation, report and vote
//! handling, rendezvous-point distribution and identity recovery. The
//! simulation half ([`mobility`], [`connectivity`], [`engine`], [`sweep`])
//! drives those pieces inside a synthetic urban field and measures witness
//! availability and voting outcomes.

pub mod connectivity;
pub mod crypto;
pub mod engine;
pub mod mobility;
pub mod protocol;
pub mod stats;
pub mod sweep;
