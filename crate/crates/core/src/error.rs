use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain(String),
    /// Operands live on different grids or pictures.
    GridMismatch(String),
    /// The Fourier quadrature failed its certification gate.
    FourierDefect { defect: f64, threshold: f64 },
    /// The kernel oscillates too fast for the grid step over the required window.
    Undersampled { resolved_product: f64, required: f64 },
    /// A test function reaches outside the grid.
    SupportOverflow { support_radius: f64, half_range: f64 },
    /// A cutoff parameter requires samples beyond the grid.
    LambdaOutOfRange { lambda: f64, max_lambda: f64 },
    /// A translation that is not an exact multiple of the grid step.
    NonLatticeShift { shift: f64, step: f64 },
    /// An operator fails to commute with a named member of the action.
    NotCommuting { index: usize, defect: f64 },
    /// An operator fails to be symmetric.
    NotSymmetric { defect: f64 },
    /// The commutant of the action is not abelian.
    NonAbelianCommutant,
    /// A group presentation or table is invalid for the requested operation.
    Group(String),
    /// A least-squares design is rank deficient.
    DegenerateFit(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::GridMismatch(msg) => write!(f, "grid mismatch: {msg}"),
            Error::FourierDefect { defect, threshold } => write!(
                f,
                "Fourier quadrature defect {defect:.3e} exceeds threshold {threshold:.3e}"
            ),
            Error::Undersampled {
                resolved_product,
                required,
            } => write!(
                f,
                "kernel resolved only up to module product {resolved_product:.3e}, need {required:.3e}"
            ),
            Error::SupportOverflow {
                support_radius,
                half_range,
            } => write!(
                f,
                "test function support radius {support_radius} exceeds grid half range {half_range}"
            ),
            Error::LambdaOutOfRange { lambda, max_lambda } => {
                write!(f, "cutoff {lambda} beyond grid (max {max_lambda})")
            }
            Error::NonLatticeShift { shift, step } => {
                write!(f, "shift {shift} is not a multiple of the grid step {step}")
            }
            Error::NotCommuting { index, defect } => write!(
                f,
                "operator does not commute with action element {index} (defect {defect:.3e})"
            ),
            Error::NotSymmetric { defect } => {
                write!(f, "operator is not symmetric (defect {defect:.3e})")
            }
            Error::NonAbelianCommutant => write!(f, "commutant of the action is not abelian"),
            Error::Group(msg) => write!(f, "group error: {msg}"),
            Error::DegenerateFit(msg) => write!(f, "degenerate fit: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
