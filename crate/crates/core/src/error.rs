use core::fmt;

/// Errors raised by the library. Numerical failures and invalid input share one type.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    RankMismatch { left: u8, right: u8 },
    GeneratorOutOfRange { rank: u8 },
    ZeroBody,
    NonPositiveBody,
    OddInput,
    WrongParity(&'static str),
    NotMember { residual: f64 },
    Degenerate(&'static str),
    NotOnLightCone { residual: f64 },
    NotSpecial { label: f64 },
    NotPositive,
    NotTrivalent { vertex: usize },
    NotInvolutive,
    LoopEdge { edge: usize },
    UnknownEdge { edge: usize },
    UnknownVertex { vertex: usize },
    Kasteleyn { face: usize },
    CurveNotClosed,
    AmbiguousTrace { generator: usize, trace: f64 },
    NotBipartite,
    Parse(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankMismatch { left, right } => write!(f, "Grassmann rank mismatch: {left} vs {right}"),
            Error::GeneratorOutOfRange { rank } => write!(f, "generator index outside rank {rank}"),
            Error::ZeroBody => write!(f, "element with zero body is not invertible"),
            Error::NonPositiveBody => write!(f, "body must be positive"),
            Error::OddInput => write!(f, "even element required"),
            Error::WrongParity(what) => write!(f, "wrong parity for {what}"),
            Error::NotMember { residual } => write!(f, "not an OSp(1|2) element (residual {residual:e})"),
            Error::Degenerate(what) => write!(f, "degenerate input: {what}"),
            Error::NotOnLightCone { residual } => write!(f, "point is off the light cone (residual {residual:e})"),
            Error::NotSpecial { label } => write!(f, "point has nonzero fermion label (size {label:e})"),
            Error::NotPositive => write!(f, "triple is not positively oriented"),
            Error::NotTrivalent { vertex } => write!(f, "vertex v{vertex} is not trivalent"),
            Error::NotInvolutive => write!(f, "edge pairing is not an involution on half-edges"),
            Error::LoopEdge { edge } => write!(f, "edge e{edge} is a loop and cannot be flipped"),
            Error::UnknownEdge { edge } => write!(f, "no edge e{edge}"),
            Error::UnknownVertex { vertex } => write!(f, "no vertex v{vertex}"),
            Error::Kasteleyn { face } => write!(f, "Kasteleyn condition fails on face {face}"),
            Error::CurveNotClosed => write!(f, "curve is not closed"),
            Error::AmbiguousTrace { generator, trace } => {
                write!(f, "generator {generator}: bosonic trace {trace:e} too close to zero to pick a spin lift")
            }
            Error::NotBipartite => write!(f, "no bipartite spine reached within the flip search limit"),
            Error::Parse(what) => write!(f, "parse error: {what}"),
        }
    }
}
