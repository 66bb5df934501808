use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inverse of zero")]
    InvertZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("element has negative value")]
    NegativeValue,
    #[error("{0} is not in the value group")]
    NotInValueGroup(String),
    #[error("negative exponent {0}")]
    NegativeExponent(String),
    #[error("expansion base is not monic")]
    NonMonicBase,
    #[error("expansion base is constant")]
    ConstantBase,
    #[error("division by the zero polynomial")]
    DivByZero,
    #[error("augmentation value {gamma} does not exceed {current}")]
    ValueNotIncreased { gamma: String, current: String },
    #[error("not a key polynomial: {0}")]
    NotAKeyPolynomial(String),
    #[error("infinite value in the interior of a chain")]
    InfiniteGammaInInterior,
    #[error("zero input")]
    ZeroInput,
    #[error("residue field is imperfect; residual data unsupported")]
    ImperfectResidueUnsupported,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("residue field unsupported by the engine")]
    ResidueUnsupported,
    #[error("maximum chain depth {0} exceeded")]
    DepthExceeded(usize),
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("extension is not purely inertial")]
    NotPurelyInertial,
    #[error("residue of the root does not generate the residue extension")]
    ResidueNotGenerated,
    #[error("extension is not purely ramified")]
    NotPurelyRamified,
    #[error("value of the generator is not positive")]
    GammaNotPositive,
    #[error("denominator vanishes at every sample")]
    DenominatorVanishes,
    #[error("parse error at `{token}`: {message}")]
    Parse { token: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
