//! Scripted five-device protocol walkthrough with real group key agreement,
//! printed as a message trace. The script covers negotiation, reporting,
//! confirmation requests and witness feedback, and must end in a confirmed
//! tally with the reporter's duplicate vote rejected.

use std::io::Write;

use num_bigint::{BigUint, RandBigInt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vouch_core::crypto::gdh::{gdh_exchange, GdhStage, GroupParams};
use vouch_core::crypto::{derive_token, Digest};
use vouch_core::protocol::identity::IdentityServerState;
use vouch_core::protocol::rate_limit::RateLimiterConfig;
use vouch_core::protocol::rendezvous::{rp_index, RendezvousRegistry};
use vouch_core::protocol::verifier::{RejectReason, TallyStatus, VerifierState};
use vouch_core::protocol::{
    MessageKind, ReportMessage, RequestOutcome, Role, TokenRecord, TraceEntry, UeState, Vote,
    VoteDecision, DEFAULT_TALLY_DEADLINE, DEFAULT_TOKEN_VALIDITY,
};

const UE_COUNT: u64 = 5;
const RP_COUNT: usize = 4;

#[derive(Debug)]
pub struct DemoFailure(pub String);

struct Demo<'a, W: Write> {
    out: &'a mut W,
    rng: ChaCha8Rng,
    params: GroupParams,
    ues: Vec<UeState>,
    is: IdentityServerState,
    verifier: VerifierState,
    rps: RendezvousRegistry,
}

impl<W: Write> Demo<'_, W> {
    fn emit(&mut self, entry: TraceEntry) -> Result<(), DemoFailure> {
        writeln!(self.out, "{entry}").map_err(|e| DemoFailure(format!("write failed: {e}")))
    }

    fn banner(&mut self, text: &str) -> Result<(), DemoFailure> {
        writeln!(self.out, "\n== {text} ==")
            .map_err(|e| DemoFailure(format!("write failed: {e}")))
    }

    fn info(&mut self, text: &str) -> Result<(), DemoFailure> {
        writeln!(self.out, "{text}").map_err(|e| DemoFailure(format!("write failed: {e}")))
    }

    /// Runs one GDH exchange among `members`, traces its messages, and hands
    /// every member the resulting token.
    fn negotiate(&mut self, members: &[u64], t: f64) -> Result<Digest, DemoFailure> {
        let one = BigUint::from(1u32);
        let q = self.params.q.clone();
        let secrets: Vec<BigUint> =
            members.iter().map(|_| self.rng.gen_biguint_range(&one, &q)).collect();
        let (key, transcript) = gdh_exchange(&self.params, &secrets)
            .map_err(|e| DemoFailure(format!("negotiation failed: {e}")))?;
        for msg in &transcript {
            let from = Role::Ue(members[msg.sender]);
            match msg.stage {
                GdhStage::Upflow => {
                    let entry = TraceEntry::new(t, from, Role::Ue(members[msg.sender + 1]), MessageKind::GdhUpflow)
                        .note(format!("values={}", msg.values.len()));
                    self.emit(entry)?;
                }
                GdhStage::Downflow => {
                    for (i, &id) in members.iter().enumerate() {
                        if i == msg.sender {
                            continue;
                        }
                        let entry = TraceEntry::new(t, from, Role::Ue(id), MessageKind::GdhDownflow)
                            .note(format!("values={}", msg.values.len()));
                        self.emit(entry)?;
                    }
                }
            }
        }
        let tau = derive_token(&key);
        for &id in members {
            self.ues[id as usize].add_token(TokenRecord::new(
                key.clone(),
                t,
                DEFAULT_TOKEN_VALIDITY,
            ));
        }
        self.info(&format!(
            "   members ue{} hold token tau={}",
            members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",ue"),
            tau.to_hex()
        ))?;
        Ok(tau)
    }
}

/// Runs the demo script against `out`. Any deviation from the expected
/// outcome is a failure, reported as `Err`.
pub fn run_demo(seed: u64, out: &mut impl Write) -> Result<(), DemoFailure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let is = IdentityServerState::new(&mut rng, RateLimiterConfig::default());
    let mut demo = Demo {
        verifier: VerifierState::new(is.public_key(), RateLimiterConfig::default()),
        is,
        rng,
        params: GroupParams::modp_2048(),
        ues: (0..UE_COUNT).map(UeState::new).collect(),
        rps: RendezvousRegistry::new(RP_COUNT),
        out,
    };
    demo.is.register_range(0..UE_COUNT);
    demo.info(&format!(
        "vouch demo: {UE_COUNT} devices, {RP_COUNT} rendezvous stores, 2048-bit group, seed {seed}"
    ))?;

    // Phase 1: two overlapping proximity groups negotiate tokens.
    demo.banner("phase 1: token negotiation")?;
    demo.negotiate(&[0, 1, 2, 3, 4], 0.0)?;
    demo.negotiate(&[0, 1, 2], 30.0)?;

    // Phase 2: ue0 observes an event, fetches a ticket, submits the report.
    demo.banner("phase 2: report submission")?;
    let now = 120.0;
    let message = ReportMessage {
        nonce: demo.rng.gen(),
        x: 2130.0,
        y: 844.0,
        t: now,
        description: b"collapsed footbridge".to_vec(),
    };
    let h_m = message.digest();
    demo.emit(TraceEntry::new(now, Role::Ue(0), Role::IdentityServer, MessageKind::TicketRequest).about(h_m))?;
    let ticket0 = demo
        .is
        .issue_ticket(0, &h_m, now)
        .map_err(|e| DemoFailure(format!("ticket issuance failed: {e}")))?;
    demo.emit(
        TraceEntry::new(now, Role::IdentityServer, Role::Ue(0), MessageKind::TicketIssued)
            .about(h_m)
            .note(format!("upsilon={}", ticket0.upsilon.short_hex())),
    )?;
    let report = demo.ues[0].build_report(message, ticket0, now, &mut demo.rng);
    if report.alphas.len() != 2 {
        return Err(DemoFailure(format!("expected 2 alphas, got {}", report.alphas.len())));
    }
    demo.emit(
        TraceEntry::new(now, Role::Ue(0), Role::Verifier, MessageKind::ReportSubmitted)
            .about(h_m)
            .note(format!("alphas={}", report.alphas.len())),
    )?;
    demo.verifier
        .accept_report(&report, 0, now)
        .map_err(|e| DemoFailure(format!("report rejected: {e:?}")))?;

    // Phase 3: the verifier deposits one confirmation request per token at
    // the store the token hashes to; witnesses poll and decrypt.
    demo.banner("phase 3: confirmation requests")?;
    let alphas: Vec<Digest> = report.alphas.iter().map(|(tau, _)| *tau).collect();
    demo.verifier
        .deposit_requests(&h_m, &mut demo.rps)
        .map_err(|e| DemoFailure(format!("deposit failed: {e:?}")))?;
    for tau in &alphas {
        let idx = rp_index(tau, RP_COUNT);
        let entry = TraceEntry::new(now, Role::Verifier, Role::Rendezvous(idx), MessageKind::Deposit)
            .about(h_m)
            .note(format!("tau={} rp={idx}", tau.to_hex()));
        demo.emit(entry)?;
    }

    let mut decisions: Vec<(u64, VoteDecision)> = Vec::new();
    for id in 1..UE_COUNT {
        let poll_time = now + 30.0 + id as f64;
        let taus = demo.ues[id as usize].valid_taus(poll_time);
        let polled = demo.rps.poll(&taus);
        demo.emit(
            TraceEntry::new(poll_time, Role::Ue(id), Role::Rendezvous(rp_index(&taus[0], RP_COUNT)), MessageKind::Poll)
                .note(format!("tokens={} hits={}", taus.len(), polled.len())),
        )?;
        for (tau, ct) in &polled {
            let idx = rp_index(tau, RP_COUNT);
            match demo.ues[id as usize].handle_request(tau, ct) {
                RequestOutcome::Opened { message, predecided: None } => {
                    let opened = message.digest();
                    if opened != h_m {
                        return Err(DemoFailure("witness decrypted a different report".into()));
                    }
                    // ue3 was out of sight of the event; everyone else saw it.
                    let decision = if id == 3 { VoteDecision::Unsure } else { VoteDecision::True };
                    demo.ues[id as usize].predecide(opened, decision);
                    decisions.push((id, decision));
                    demo.emit(
                        TraceEntry::new(poll_time, Role::Rendezvous(idx), Role::Ue(id), MessageKind::Request)
                            .about(opened)
                            .note("opened"),
                    )?;
                }
                RequestOutcome::Opened { message, predecided: Some(d) } => {
                    demo.emit(
                        TraceEntry::new(poll_time, Role::Rendezvous(idx), Role::Ue(id), MessageKind::Request)
                            .about(message.digest())
                            .note(format!("already decided ({}), not voting twice", d.label())),
                    )?;
                }
                RequestOutcome::Duplicate => {
                    demo.emit(
                        TraceEntry::new(poll_time, Role::Rendezvous(idx), Role::Ue(id), MessageKind::Request)
                            .note("duplicate delivery ignored"),
                    )?;
                }
                RequestOutcome::Unreadable => {
                    return Err(DemoFailure(format!("ue{id} could not decrypt a polled request")));
                }
            }
        }
    }

    // Phase 4: witnesses fetch their own tickets and vote; the reporter's
    // attempt to vote on its own report is rejected as a duplicate upsilon.
    demo.banner("phase 4: witness feedback")?;
    let vote_time = now + 60.0;
    for &(id, decision) in &decisions {
        demo.emit(TraceEntry::new(vote_time, Role::Ue(id), Role::IdentityServer, MessageKind::TicketRequest).about(h_m))?;
        let ticket = demo
            .is
            .issue_ticket(id, &h_m, vote_time)
            .map_err(|e| DemoFailure(format!("ticket issuance failed: {e}")))?;
        demo.emit(
            TraceEntry::new(vote_time, Role::IdentityServer, Role::Ue(id), MessageKind::TicketIssued)
                .about(h_m)
                .note(format!("upsilon={}", ticket.upsilon.short_hex())),
        )?;
        demo.verifier
            .accept_vote(&h_m, &Vote { ticket, decision }, id, vote_time)
            .map_err(|e| DemoFailure(format!("vote rejected: {e:?}")))?;
        demo.emit(
            TraceEntry::new(vote_time, Role::Ue(id), Role::Verifier, MessageKind::Vote)
                .about(h_m)
                .note(format!("decision={}", decision.label())),
        )?;
    }

    let dup = Vote { ticket: report.ticket.clone(), decision: VoteDecision::True };
    match demo.verifier.accept_vote(&h_m, &dup, 0, vote_time) {
        Err(RejectReason::DuplicateUpsilon) => {
            demo.emit(
                TraceEntry::new(vote_time, Role::Ue(0), Role::Verifier, MessageKind::Vote)
                    .about(h_m)
                    .note("rejected: duplicate upsilon"),
            )?;
        }
        other => {
            return Err(DemoFailure(format!(
                "reporter's duplicate vote should be rejected, got {other:?}"
            )));
        }
    }

    let tally = demo
        .verifier
        .tally(&h_m, vote_time + 1.0, now + DEFAULT_TALLY_DEADLINE)
        .map_err(|e| DemoFailure(format!("tally failed: {e:?}")))?;
    demo.emit(
        TraceEntry::new(vote_time + 1.0, Role::Verifier, Role::Verifier, MessageKind::Tally)
            .about(h_m)
            .note(format!(
                "{} (true={} false={} unsure={} defer={})",
                tally.status.label(),
                tally.counts.true_votes,
                tally.counts.false_votes,
                tally.counts.unsure_votes,
                tally.counts.defer_votes
            )),
    )?;
    if tally.status != TallyStatus::Confirmed {
        return Err(DemoFailure(format!("expected a confirmed tally, got {:?}", tally.status)));
    }
    demo.info("\ndemo complete: report confirmed by its witnesses")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo_trace_is_complete_and_consistent() {
        let mut buf = Vec::new();
        run_demo(42, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        for phase in ["phase 1", "phase 2", "phase 3", "phase 4"] {
            assert!(text.contains(phase), "missing {phase}");
        }
        assert_eq!(text.matches("ticket-issued").count(), 5);
        assert!(text.contains("rejected: duplicate upsilon"));
        assert!(text.contains("confirmed (true=3 false=0 unsure=1 defer=0)"));
    }

    #[test]
    fn deposit_lines_point_at_the_right_store() {
        let mut buf = Vec::new();
        run_demo(7, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut deposits = 0;
        for line in text.lines().filter(|l| l.contains("tau=")) {
            let Some(tau_hex) = line.split("tau=").nth(1).and_then(|s| s.split(' ').next())
            else {
                continue;
            };
            if !line.contains("rp=") {
                continue;
            }
            deposits += 1;
            let tau = Digest::from_hex(tau_hex).unwrap();
            let idx: usize = line.split("rp=").nth(1).unwrap().trim().parse().unwrap();
            assert_eq!(rp_index(&tau, RP_COUNT), idx);
        }
        assert_eq!(deposits, 2);
    }
}
