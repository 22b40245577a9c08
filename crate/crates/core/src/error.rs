use thiserror::Error;

/// Everything that can go wrong while building or interrogating lattices and
/// their operator families.
#[derive(Debug, Error)]
pub enum Error {
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    NotAPoset(String, String),
    #[error("`{a}` and `{b}` have no {missing}")]
    NotALattice {
        a: String,
        b: String,
        missing: &'static str,
    },
    #[error("poset has no {0} element")]
    NoBounds(&'static str),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("duplicate cover pair ({0}, {1})")]
    DuplicateCover(String, String),
    #[error("map is not inflationary at `{0}`")]
    NotInflationary(String),
    #[error("map is not monotone: `{0}` <= `{1}` but images are not ordered")]
    NotMonotone(String, String),
    #[error("map is not total: no image for `{0}`")]
    NotTotal(String),
    #[error("objects live on different lattices ({0} vs {1})")]
    HostMismatch(String, String),
    #[error("operation needs a non-empty family")]
    EmptyFamily,
    #[error("enumeration bound {bound} exceeded (reached {reached} while enumerating {what})")]
    EnumerationBoundExceeded {
        bound: usize,
        reached: usize,
        what: String,
    },
    #[error("lattice has {size} elements, above the configured maximum of {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("interval set is not basic")]
    NotBasic,
    #[error("inflator is not a nucleus")]
    NotANucleus,
    #[error("inflator is not a member of the family")]
    MemberNotInFamily,
    #[error("self-map is not an inflator on the nuclei lattice: {0}")]
    NotAnInflatorOnNl(String),
    #[error("family is not closed under composition with the given inflator")]
    NotClosedUnderComposition,
    #[error("nuclei lattice is not distributive at ({0}, {1}, {2})")]
    FrameViolation(usize, usize, usize),
    #[error("join of the qualifying nuclei for [{0}, {1}] no longer qualifies")]
    ConditionLostAtJoin(String, String),
    #[error("two computation routes disagree: {0}")]
    RouteDisagreement(String),
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by a configured size or enumeration bound.
    pub fn is_bound(&self) -> bool {
        matches!(
            self,
            Error::EnumerationBoundExceeded { .. } | Error::TooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
