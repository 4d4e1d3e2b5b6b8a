use thiserror::Error;

/// Errors raised by the engine. The variant name leads every message so that
/// command-line front ends can surface it verbatim.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("EmptyInput: no facets given")]
    EmptyInput,
    #[error("MixedDimension: facet {facet:?} has dimension {found}, expected {expected}")]
    MixedDimension { facet: Vec<usize>, expected: usize, found: usize },
    #[error("RepeatedVertexInFacet: facet {0:?} repeats a vertex")]
    RepeatedVertexInFacet(Vec<usize>),
    #[error("SparseVertexIds: vertex ids must be exactly 0..{expected}, vertex {missing} is unused")]
    SparseVertexIds { expected: usize, missing: usize },
    #[error("UnknownVertex: vertex {0} is not in the complex")]
    UnknownVertex(usize),
    #[error("UnknownManifold: {0}")]
    UnknownManifold(String),
    #[error("NotAManifold: {0}")]
    NotAManifold(String),
    #[error("FacetFile: {0}")]
    FacetFile(String),
    #[error("TooLarge: {0}")]
    TooLarge(String),
    #[error("BadDegree: degree {degree} is outside {allowed}")]
    BadDegree { degree: usize, allowed: String },
    #[error("NotACocycle: cochain of degree {0} has nonzero coboundary")]
    NotACocycle(usize),
    #[error("PairingDegenerate: Poincare pairing H^{degree} x H^{complement} is singular")]
    PairingDegenerate { degree: usize, complement: usize },
    #[error("DegreeMismatch: Lagrangian has degree {lagrangian}, manifold requires {required}")]
    DegreeMismatch { lagrangian: usize, required: usize },
    #[error("NotIdempotent: H^0 class is not a union of components")]
    NotIdempotent,
    #[error("NotHomogeneous: Lagrangian monomials have mixed degrees")]
    NotHomogeneous,
    #[error("LagrangianSyntax: {0}")]
    LagrangianSyntax(String),
    #[error("InternalSignMismatch: Z/W counts disagree at vertex {vertex}")]
    InternalSignMismatch { vertex: usize },
    #[error("NotFlat: spin configuration has holonomy around triangle {0:?}")]
    NotFlat(Vec<usize>),
    #[error("NotAutomorphism: {0}")]
    NotAutomorphism(String),
    #[error("InconclusiveNullity: {0}")]
    InconclusiveNullity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
