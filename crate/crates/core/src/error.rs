use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// States or operators built over incompatible metrics.
    MetricMismatch,
    DimensionMismatch { expected: usize, got: usize },
    /// Norm below `EPS_NORM`; the state carries no direction.
    DegenerateState,
    /// Operator fails the (weighted) self-adjointness check.
    NotHermitian { max_deviation: f64 },
    /// A state required to be normalized is not.
    Unnormalized { norm: f64 },
    /// Variance came out below -1e-12.
    NegativeVariance { value: f64 },
    /// An expectation that must be real carries a large imaginary part.
    ImaginaryResidue { imag: f64 },
    MomentOrderTooLarge { k: usize, max: usize },
    /// The inequality only applies under exact orthogonality.
    OrthogonalityRequired { overlap: f64 },
    DegenerateSpectrum,
    ZeroDenominator,
    /// The claimed eigenpair does not solve the eigenvalue equation.
    EigenResidualTooLarge { residual: f64 },
    /// Both standard deviations must be nonzero.
    DegenerateUncertainty,
    /// Argument outside the stated validity window.
    OutOfWindow { what: &'static str },
    EmptyInput,
    InvalidInput { what: &'static str },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MetricMismatch => write!(f, "states live on different metrics"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::DegenerateState => write!(f, "state norm below degeneracy threshold"),
            Error::NotHermitian { max_deviation } => {
                write!(f, "operator is not hermitian (max deviation {max_deviation:e})")
            }
            Error::Unnormalized { norm } => write!(f, "state is not normalized (norm {norm})"),
            Error::NegativeVariance { value } => {
                write!(f, "variance {value:e} below numerical floor")
            }
            Error::ImaginaryResidue { imag } => {
                write!(f, "expected real value has imaginary part {imag:e}")
            }
            Error::MomentOrderTooLarge { k, max } => {
                write!(f, "moment order {k} exceeds maximum {max}")
            }
            Error::OrthogonalityRequired { overlap } => {
                write!(f, "inequality requires orthogonal states (overlap {overlap:e})")
            }
            Error::DegenerateSpectrum => write!(f, "degenerate spectrum: epsilon2 = epsilon1"),
            Error::ZeroDenominator => write!(f, "zero denominator"),
            Error::EigenResidualTooLarge { residual } => {
                write!(f, "eigenpair residual {residual:e} too large")
            }
            Error::DegenerateUncertainty => {
                write!(f, "zero standard deviation: state is an eigenstate")
            }
            Error::OutOfWindow { what } => write!(f, "outside validity window: {what}"),
            Error::EmptyInput => write!(f, "empty input"),
            Error::InvalidInput { what } => write!(f, "invalid input: {what}"),
        }
    }
}

impl core::error::Error for Error {}
