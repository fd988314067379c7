use thiserror::Error;

use crate::model::Face;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("length {name} = {value} is not positive")]
    NonPositiveLength { name: &'static str, value: f64 },

    #[error("sides {pair:?} sum to {sum}, which does not exceed side {opposite} = {value}")]
    TriangleInequalityViolated {
        pair: (&'static str, &'static str),
        sum: f64,
        opposite: &'static str,
        value: f64,
    },

    #[error("face {face} violates the triangle inequality")]
    FaceTriangleInequalityViolated { face: Face },

    #[error("edge lengths do not span a solid (volume term {gram} below threshold {threshold})")]
    NotRealizable { gram: f64, threshold: f64 },

    #[error("denominator vanishes (point at infinity)")]
    DegenerateDenominator,

    #[error("component at vertex {vertex} is zero")]
    ZeroComponent { vertex: &'static str },

    #[error("component at vertex {vertex} equals one")]
    UnitComponent { vertex: &'static str },

    #[error("components sum to {sum} instead of 1")]
    ComponentSum { sum: f64 },

    #[error("ratio {value} is zero or not finite")]
    InvalidRatio { value: f64 },

    #[error("Ceva product is {product} instead of 1")]
    CevaViolated { product: f64 },

    #[error("face components disagree on a common center (defect {defect})")]
    InconsistentFaces { defect: f64 },

    #[error("angle at {vertex} is right, orthocenter ratios have a pole")]
    RightAngleOrthocenter { vertex: &'static str },

    #[error("squared distance {value} is negative beyond tolerance")]
    NegativeSquaredDistance { value: f64 },

    #[error("excenter opposite {vertex} is at infinity (S - 2S^X = {excess})")]
    ExcenterDenominatorZero { vertex: &'static str, excess: f64 },

    #[error("transversal is parallel to side {side}")]
    ParallelSide { side: &'static str },

    #[error("transversal passes through vertex {vertex}")]
    ThroughVertex { vertex: &'static str },

    #[error("embedding collapsed (height squared {height_sq})")]
    NumericalCollapse { height_sq: f64 },

    #[error("tolerance must be non-negative and finite (rtol {rtol}, atol {atol})")]
    InvalidTolerance { rtol: f64, atol: f64 },
}

impl GeometryError {
    /// Stable variant name, used by front ends for machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::NonPositiveLength { .. } => "NonPositiveLength",
            Self::TriangleInequalityViolated { .. } => "TriangleInequalityViolated",
            Self::FaceTriangleInequalityViolated { .. } => "FaceTriangleInequalityViolated",
            Self::NotRealizable { .. } => "NotRealizable",
            Self::DegenerateDenominator => "DegenerateDenominator",
            Self::ZeroComponent { .. } => "ZeroComponent",
            Self::UnitComponent { .. } => "UnitComponent",
            Self::ComponentSum { .. } => "ComponentSum",
            Self::InvalidRatio { .. } => "InvalidRatio",
            Self::CevaViolated { .. } => "CevaViolated",
            Self::InconsistentFaces { .. } => "InconsistentFaces",
            Self::RightAngleOrthocenter { .. } => "RightAngleOrthocenter",
            Self::NegativeSquaredDistance { .. } => "NegativeSquaredDistance",
            Self::ExcenterDenominatorZero { .. } => "ExcenterDenominatorZero",
            Self::ParallelSide { .. } => "ParallelSide",
            Self::ThroughVertex { .. } => "ThroughVertex",
            Self::NumericalCollapse { .. } => "NumericalCollapse",
            Self::InvalidTolerance { .. } => "InvalidTolerance",
        }
    }
}

pub type Result<T> = std::result::Result<T, GeometryError>;
