//! Full protocol walk-through: five co-located devices negotiate a group key,
//! one reports an event, the rest are reached through the rendezvous stores
//! and vote, and the verifier tallies the outcome.

use num_bigint::RandBigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vouch_core::crypto::gdh::{gdh_exchange, GroupParams};
use vouch_core::crypto::{derive_token, hash};
use vouch_core::protocol::identity::{recover_identity, IdentityServerState};
use vouch_core::protocol::rate_limit::RateLimiterConfig;
use vouch_core::protocol::rendezvous::{rp_index, RendezvousRegistry};
use vouch_core::protocol::verifier::{RejectReason, TallyStatus, VerifierState};
use vouch_core::protocol::{
    MessageKind, ReportMessage, RequestOutcome, Role, TokenRecord, TraceEntry, UeState, Vote,
    VoteDecision, DEFAULT_TALLY_DEADLINE, DEFAULT_TOKEN_VALIDITY,
};

const N: usize = 5;

fn negotiate(
    params: &GroupParams,
    ues: &mut [UeState],
    now: f64,
    rng: &mut ChaCha8Rng,
) -> vouch_core::crypto::Digest {
    let secrets: Vec<_> = ues
        .iter()
        .map(|_| rng.gen_biguint_range(&1u32.into(), &params.q))
        .collect();
    let (key, transcript) = gdh_exchange(params, &secrets).unwrap();
    assert_eq!(transcript.len(), ues.len());
    let tau = derive_token(&key);
    for ue in ues.iter_mut() {
        ue.add_token(TokenRecord::new(key.clone(), now, DEFAULT_TOKEN_VALIDITY));
    }
    tau
}

#[test]
fn report_is_verified_by_group_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let params = GroupParams::safe64();

    let mut is = IdentityServerState::new(&mut rng, RateLimiterConfig::default());
    is.register_range(0..100);
    let mut verifier = VerifierState::new(is.public_key(), RateLimiterConfig::default());
    let mut rps = RendezvousRegistry::new(4);

    let mut ues: Vec<UeState> = (0..N as u64).map(UeState::new).collect();

    // Phase 1: proximity token negotiation at t=100.
    let tau = negotiate(&params, &mut ues, 100.0, &mut rng);
    for ue in &ues {
        assert_eq!(ue.valid_taus(150.0), vec![tau]);
    }

    // Phase 2: ue0 observes an event at t=220 and reports it.
    let now = 220.0;
    let message = ReportMessage {
        nonce: rand::Rng::gen(&mut rng),
        x: 1250.0,
        y: 430.5,
        t: now,
        description: b"road blocked".to_vec(),
    };
    let h_m = message.digest();
    let ticket0 = is.issue_ticket(0, &h_m, now).unwrap();
    let report = ues[0].build_report(message, ticket0, now, &mut rng);
    assert_eq!(report.alphas.len(), 1);
    verifier.accept_report(&report, 0, now).unwrap();

    // Phase 3: the verifier deposits one request per alpha; witnesses poll.
    let deposited = verifier.deposit_requests(&h_m, &mut rps).unwrap();
    assert_eq!(deposited, 1);
    assert_eq!(rps.entries_at(rp_index(&tau, 4), &tau).len(), 1);

    let mut decisions = Vec::new();
    for ue in ues[1..].iter_mut() {
        let polled = rps.poll(&ue.valid_taus(now + 5.0));
        assert_eq!(polled.len(), 1);
        let (ptau, ct) = &polled[0];
        match ue.handle_request(ptau, ct) {
            RequestOutcome::Opened { message, .. } => {
                assert_eq!(message.digest(), h_m);
                // ue1 and ue2 saw the event; the others did not.
                let saw = ue.id <= 2;
                decisions.push((ue.id, if saw { VoteDecision::True } else { VoteDecision::Unsure }));
            }
            other => panic!("witness failed to open request: {other:?}"),
        }
    }

    // Phase 4: witnesses fetch tickets and vote; the tally confirms.
    let vote_time = now + 30.0;
    for (id, decision) in decisions {
        let ticket = is.issue_ticket(id, &h_m, vote_time).unwrap();
        verifier
            .accept_vote(&h_m, &Vote { ticket, decision }, id, vote_time)
            .unwrap();
    }
    let tally = verifier.tally(&h_m, vote_time, now + DEFAULT_TALLY_DEADLINE).unwrap();
    assert_eq!(tally.counts.true_votes, 2);
    assert_eq!(tally.counts.unsure_votes, 2);
    assert_eq!(tally.counts.false_votes, 0);
    assert_eq!(tally.status, TallyStatus::Confirmed);

    // The reporter already submitted under its upsilon: voting again on the
    // same report is a duplicate regardless of decision.
    let again = is.issue_ticket(0, &h_m, vote_time).unwrap();
    let err = verifier
        .accept_vote(&h_m, &Vote { ticket: again, decision: VoteDecision::True }, 0, vote_time)
        .unwrap_err();
    assert_eq!(err, RejectReason::DuplicateUpsilon);
}

#[test]
fn deferred_witness_keeps_tally_pending_until_replacement() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let params = GroupParams::safe64();
    let mut is = IdentityServerState::new(&mut rng, RateLimiterConfig::default());
    is.register_range(0..10);
    let mut verifier = VerifierState::new(is.public_key(), RateLimiterConfig::default());

    let mut ues: Vec<UeState> = (0..3).map(UeState::new).collect();
    negotiate(&params, &mut ues, 0.0, &mut rng);

    let message = ReportMessage {
        nonce: [9; 16],
        x: 10.0,
        y: 20.0,
        t: 50.0,
        description: b"smoke".to_vec(),
    };
    let h_m = message.digest();
    let ticket = is.issue_ticket(0, &h_m, 50.0).unwrap();
    let report = ues[0].build_report(message, ticket, 50.0, &mut rng);
    verifier.accept_report(&report, 0, 50.0).unwrap();

    let deadline = 50.0 + DEFAULT_TALLY_DEADLINE;
    let t1 = is.issue_ticket(1, &h_m, 60.0).unwrap();
    verifier
        .accept_vote(&h_m, &Vote { ticket: t1.clone(), decision: VoteDecision::Defer }, 1, 60.0)
        .unwrap();
    let t2 = is.issue_ticket(2, &h_m, 60.0).unwrap();
    verifier
        .accept_vote(&h_m, &Vote { ticket: t2, decision: VoteDecision::True }, 2, 60.0)
        .unwrap();

    assert_eq!(verifier.tally(&h_m, 70.0, deadline).unwrap().status, TallyStatus::Pending);
    // Past the deadline an open defer no longer blocks the decision.
    assert_eq!(
        verifier.tally(&h_m, deadline + 1.0, deadline).unwrap().status,
        TallyStatus::Confirmed
    );

    // The defer resolves into a real vote; the pending state clears.
    verifier
        .accept_vote(&h_m, &Vote { ticket: t1, decision: VoteDecision::True }, 1, 80.0)
        .unwrap();
    let tally = verifier.tally(&h_m, 90.0, deadline).unwrap();
    assert_eq!(tally.counts.defer_votes, 0);
    assert_eq!(tally.counts.true_votes, 2);
    assert_eq!(tally.status, TallyStatus::Confirmed);
}

#[test]
fn foreign_group_cannot_read_or_vote() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let params = GroupParams::safe64();
    let mut is = IdentityServerState::new(&mut rng, RateLimiterConfig::default());
    is.register_range(0..10);
    let mut verifier = VerifierState::new(is.public_key(), RateLimiterConfig::default());
    let mut rps = RendezvousRegistry::new(4);

    let mut group_a: Vec<UeState> = (0..2).map(UeState::new).collect();
    let mut group_b: Vec<UeState> = (2..4).map(UeState::new).collect();
    let tau_a = negotiate(&params, &mut group_a, 0.0, &mut rng);
    let tau_b = negotiate(&params, &mut group_b, 0.0, &mut rng);
    assert_ne!(tau_a, tau_b);

    let message = ReportMessage {
        nonce: [1; 16],
        x: 0.0,
        y: 0.0,
        t: 10.0,
        description: b"flood".to_vec(),
    };
    let h_m = message.digest();
    let ticket = is.issue_ticket(0, &h_m, 10.0).unwrap();
    let report = group_a[0].build_report(message, ticket, 10.0, &mut rng);
    verifier.accept_report(&report, 0, 10.0).unwrap();
    verifier.deposit_requests(&h_m, &mut rps).unwrap();

    // Polling with the other group's token yields nothing.
    assert!(rps.poll(&group_b[0].valid_taus(15.0)).is_empty());

    // Even handed the raw ciphertext under a mismatched token, decryption
    // fails and the device records a failed request, not a vote.
    let (_, ct) = &rps.poll(&[tau_a])[0];
    assert!(matches!(group_b[0].handle_request(&tau_b, ct), RequestOutcome::Unreadable));
}

#[test]
fn dishonest_vote_is_attributable() {
    let mut rng = ChaCha8Rng::seed_from_u64(555);
    let k_is = [7u8; 32];
    let mut is = IdentityServerState::with_secret(k_is, &mut rng, RateLimiterConfig::default());
    is.register_range(0..100_000);

    let h_m = hash(b"disputed report");
    let ticket = is.issue_ticket(41_837, &h_m, 0.0).unwrap();
    let found = recover_identity(&ticket.upsilon, &h_m, &k_is, 0..100_000);
    assert_eq!(found, Some(41_837));
}

#[test]
fn trace_renders_protocol_phases() {
    let entry = TraceEntry::new(220.0, Role::Ue(3), Role::Verifier, MessageKind::Vote)
        .about(hash(b"m"))
        .note("decision=true");
    let line = entry.to_string();
    assert!(line.contains("ue3"));
    assert!(line.contains("verifier"));
    assert!(line.contains("decision=true"));
}
