use thiserror::Error;

/// Every failure an operation in this crate can report.
///
/// [`Error::code`] gives the stable upper-case code used in reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex `{0}` does not exist in the complex")]
    UnresolvedVertex(String),
    #[error("`{kind}` `{id}` does not exist in the complex")]
    UnresolvedId { kind: &'static str, id: String },
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("malformed: {0}")]
    Malformed(String),
    #[error("cycles `{0}` and `{1}` are concentric")]
    Concentric(String, String),
    #[error("member cycles share no interior")]
    NoSharedInterior,
    #[error("a vortex cycle needs at least two cycles, got {0}")]
    TooFewCycles(usize),
    #[error("hole `{0}` is not inside the cycle")]
    HoleOutside(String),
    #[error("probe `{probe}` is not applicable to {target}")]
    ProbeInapplicable { probe: String, target: String },
    #[error("probe `{0}` is missing from a feature vector")]
    MissingProbe(String),
    #[error("proximity is undefined against the empty set")]
    EmptyArgument,
    #[error("no cluster anchored at `{0}`")]
    UnknownCluster(String),
    #[error("resolution too low: {0}")]
    ResolutionTooLow(String),
    #[error("region {0} is not convex")]
    NotConvex(usize),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnresolvedVertex(_) => "UNRESOLVED_VERTEX",
            Error::UnresolvedId { .. } => "UNRESOLVED_ID",
            Error::DuplicateId { .. } => "DUPLICATE_ID",
            Error::Malformed(_) => "MALFORMED",
            Error::Concentric(..) => "CONCENTRIC",
            Error::NoSharedInterior => "NO_SHARED_INTERIOR",
            Error::TooFewCycles(_) => "TOO_FEW_CYCLES",
            Error::HoleOutside(_) => "HOLE_OUTSIDE",
            Error::ProbeInapplicable { .. } => "PROBE_INAPPLICABLE",
            Error::MissingProbe(_) => "MISSING_PROBE",
            Error::EmptyArgument => "EMPTY_ARGUMENT",
            Error::UnknownCluster(_) => "UNKNOWN_CLUSTER",
            Error::ResolutionTooLow(_) => "RESOLUTION_TOO_LOW",
            Error::NotConvex(_) => "NOT_CONVEX",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
