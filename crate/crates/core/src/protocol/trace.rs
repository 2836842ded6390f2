//! Message-level trace records, used by the demo walkthrough to narrate one
//! end-to-end protocol run.

use std::fmt;

use crate::crypto::Digest;

/// A protocol party.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Ue(u64),
    IdentityServer,
    Verifier,
    Rendezvous(usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Ue(id) => write!(f, "ue{id}"),
            Role::IdentityServer => write!(f, "is"),
            Role::Verifier => write!(f, "verifier"),
            Role::Rendezvous(i) => write!(f, "rp{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MessageKind {
    GdhUpflow,
    GdhDownflow,
    TicketRequest,
    TicketIssued,
    ReportSubmitted,
    Deposit,
    Poll,
    Request,
    Vote,
    Tally,
}

impl MessageKind {
    pub fn label(&self) -> &'static str {
        match self {
            MessageKind::GdhUpflow => "gdh-upflow",
            MessageKind::GdhDownflow => "gdh-downflow",
            MessageKind::TicketRequest => "ticket-request",
            MessageKind::TicketIssued => "ticket-issued",
            MessageKind::ReportSubmitted => "report",
            MessageKind::Deposit => "deposit",
            MessageKind::Poll => "poll",
            MessageKind::Request => "request",
            MessageKind::Vote => "vote",
            MessageKind::Tally => "tally",
        }
    }
}

/// One traced message. Formats as a single fixed-shape line:
/// `[   12.0s] ue3 -> verifier  vote  h(M)=ab12cd34  decision=true`
#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub t: f64,
    pub from: Role,
    pub to: Role,
    pub kind: MessageKind,
    pub h_m: Option<Digest>,
    pub note: Option<String>,
}

impl TraceEntry {
    pub fn new(t: f64, from: Role, to: Role, kind: MessageKind) -> Self {
        TraceEntry {
            t,
            from,
            to,
            kind,
            h_m: None,
            note: None,
        }
    }

    pub fn about(mut self, h_m: Digest) -> Self {
        self.h_m = Some(h_m);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:>7.1}s] {:>8} -> {:<8}  {:<14}",
            self.t,
            self.from.to_string(),
            self.to.to_string(),
            self.kind.label()
        )?;
        if let Some(h_m) = &self.h_m {
            write!(f, "  h(M)={}", h_m.short_hex())?;
        }
        if let Some(note) = &self.note {
            write!(f, "  {note}")?;
        }
        Ok(())
    }
}
