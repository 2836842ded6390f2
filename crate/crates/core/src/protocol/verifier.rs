//! The verifier: accepts reports, enforces one submission per (h(M), upsilon),
//! counts votes, and tallies.

use std::collections::HashMap;

use thiserror::Error;

use crate::crypto::{verify, Ciphertext, Digest, PublicKey};
use crate::protocol::rate_limit::{RateLimiter, RateLimiterConfig};
use crate::protocol::rendezvous::RendezvousRegistry;
use crate::protocol::{Report, Vote, VoteDecision, VotingTicket};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RejectReason {
    #[error("bad signature")]
    BadSignature,
    #[error("duplicate vote identifier")]
    DuplicateUpsilon,
    #[error("rate limited")]
    RateLimited,
    #[error("unknown report")]
    UnknownReport,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VoteCounts {
    pub true_votes: u32,
    pub false_votes: u32,
    pub unsure_votes: u32,
    pub defer_votes: u32,
}

impl VoteCounts {
    fn add(&mut self, d: VoteDecision) {
        match d {
            VoteDecision::True => self.true_votes += 1,
            VoteDecision::False => self.false_votes += 1,
            VoteDecision::Unsure => self.unsure_votes += 1,
            VoteDecision::Defer => self.defer_votes += 1,
        }
    }

    fn remove(&mut self, d: VoteDecision) {
        match d {
            VoteDecision::True => self.true_votes -= 1,
            VoteDecision::False => self.false_votes -= 1,
            VoteDecision::Unsure => self.unsure_votes -= 1,
            VoteDecision::Defer => self.defer_votes -= 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TallyStatus {
    Pending,
    Confirmed,
    Rejected,
    Undecided,
}

impl TallyStatus {
    pub fn label(self) -> &'static str {
        match self {
            TallyStatus::Pending => "pending",
            TallyStatus::Confirmed => "confirmed",
            TallyStatus::Rejected => "rejected",
            TallyStatus::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tally {
    pub counts: VoteCounts,
    pub status: TallyStatus,
}

/// Decision rule: open defers keep the tally pending until the deadline;
/// afterwards strict majority of decisive votes, tie means undecided.
pub fn tally_status(counts: &VoteCounts, now: f64, deadline: f64) -> TallyStatus {
    if counts.defer_votes > 0 && now < deadline {
        TallyStatus::Pending
    } else if counts.true_votes > counts.false_votes {
        TallyStatus::Confirmed
    } else if counts.false_votes > counts.true_votes {
        TallyStatus::Rejected
    } else {
        TallyStatus::Undecided
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Submission {
    Report,
    Vote(VoteDecision),
}

struct ReportEntry {
    report: Report,
    counts: VoteCounts,
    submissions: HashMap<Digest, Submission>,
}

pub struct VerifierState {
    is_pubkey: PublicKey,
    limiter: RateLimiter<u64>,
    reports: HashMap<Digest, ReportEntry>,
}

impl VerifierState {
    pub fn new(is_pubkey: PublicKey, limits: RateLimiterConfig) -> Self {
        VerifierState {
            is_pubkey,
            limiter: RateLimiter::new(limits),
            reports: HashMap::new(),
        }
    }

    fn ticket_valid(&self, h_m: &Digest, ticket: &VotingTicket) -> bool {
        let msg = VotingTicket::signing_bytes(h_m, &ticket.upsilon);
        verify(&self.is_pubkey, &msg, &ticket.sig)
    }

    /// Accepts a report if its ticket verifies, its upsilon is unused for
    /// this h(M), and the source is within rate limits.
    pub fn accept_report(
        &mut self,
        report: &Report,
        source: u64,
        now: f64,
    ) -> Result<(), RejectReason> {
        if !self.limiter.allow(source, now) {
            return Err(RejectReason::RateLimited);
        }
        let h_m = report.message.digest();
        if !self.ticket_valid(&h_m, &report.ticket) {
            return Err(RejectReason::BadSignature);
        }
        let upsilon = report.ticket.upsilon;
        let entry = self.reports.entry(h_m).or_insert_with(|| ReportEntry {
            report: report.clone(),
            counts: VoteCounts::default(),
            submissions: HashMap::new(),
        });
        if entry.submissions.contains_key(&upsilon) {
            return Err(RejectReason::DuplicateUpsilon);
        }
        entry.submissions.insert(upsilon, Submission::Report);
        Ok(())
    }

    /// Accepts a vote on a known report. A non-defer vote replaces a prior
    /// defer from the same upsilon; every other reuse is rejected.
    pub fn accept_vote(
        &mut self,
        h_m: &Digest,
        vote: &Vote,
        source: u64,
        now: f64,
    ) -> Result<(), RejectReason> {
        if !self.limiter.allow(source, now) {
            return Err(RejectReason::RateLimited);
        }
        if !self.reports.contains_key(h_m) {
            return Err(RejectReason::UnknownReport);
        }
        if !self.ticket_valid(h_m, &vote.ticket) {
            return Err(RejectReason::BadSignature);
        }
        let entry = self.reports.get_mut(h_m).expect("checked above");
        let upsilon = vote.ticket.upsilon;
        match entry.submissions.get(&upsilon) {
            None => {
                entry.submissions.insert(upsilon, Submission::Vote(vote.decision));
                entry.counts.add(vote.decision);
                Ok(())
            }
            Some(Submission::Vote(VoteDecision::Defer)) if vote.decision != VoteDecision::Defer => {
                entry.counts.remove(VoteDecision::Defer);
                entry.counts.add(vote.decision);
                entry.submissions.insert(upsilon, Submission::Vote(vote.decision));
                Ok(())
            }
            Some(_) => Err(RejectReason::DuplicateUpsilon),
        }
    }

    pub fn tally(&self, h_m: &Digest, now: f64, deadline: f64) -> Result<Tally, RejectReason> {
        let entry = self.reports.get(h_m).ok_or(RejectReason::UnknownReport)?;
        Ok(Tally {
            counts: entry.counts,
            status: tally_status(&entry.counts, now, deadline),
        })
    }

    pub fn report(&self, h_m: &Digest) -> Option<&Report> {
        self.reports.get(h_m).map(|e| &e.report)
    }

    /// Count of decisive submissions recorded for (h(M), upsilon): used by
    /// property tests for the one-submission invariant.
    pub fn accepted_decisive(&self, h_m: &Digest, upsilon: &Digest) -> u32 {
        match self.reports.get(h_m).and_then(|e| e.submissions.get(upsilon)) {
            Some(Submission::Vote(d)) if d.is_decisive() => 1,
            _ => 0,
        }
    }

    /// Forwards each alpha of an accepted report to its rendezvous store.
    pub fn deposit_requests(
        &self,
        h_m: &Digest,
        registry: &mut RendezvousRegistry,
    ) -> Result<usize, RejectReason> {
        let entry = self.reports.get(h_m).ok_or(RejectReason::UnknownReport)?;
        for (tau, ct) in &entry.report.alphas {
            registry.deposit(tau, ct.clone());
        }
        Ok(entry.report.alphas.len())
    }
}

/// Convenience used by tests to fabricate ciphertext-free reports.
pub fn report_with_alphas(
    ticket: VotingTicket,
    message: crate::protocol::ReportMessage,
    alphas: Vec<(Digest, Ciphertext)>,
) -> Report {
    Report {
        ticket,
        message,
        alphas,
    }
}
