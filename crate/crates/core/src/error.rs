use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible variable sets: {0:?} vs {1:?}")]
    IncompatibleVariables(Vec<String>, Vec<String>),
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("series is not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("division by an identically zero factor")]
    ZeroFactor,
    #[error("pole at a negative integer argument {0}")]
    NegativeIntegerPole(i64),
    #[error("F2 applied to a state of charge {0}")]
    ChargedF2(i64),
    #[error("scalar^H applied to odd charge {0}")]
    OddChargeEnergyPower(i64),
    #[error("energy cap exceeded: |lambda| = {0} > {1}")]
    EnergyCapExceeded(i64, String),
    #[error("operator sequence has no finite energy bound at position {0}")]
    UnboundedEnergy(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("missing lower-point data for block {0:?}")]
    MissingData(Vec<usize>),
    #[error("pole at t = 0 in {0}")]
    PoleAtZero(String),
    #[error("non-polynomial t-dependence in {0}")]
    NonPolynomial(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
