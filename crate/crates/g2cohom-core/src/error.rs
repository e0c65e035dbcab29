use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-invertible: {0}")]
    NonInvertible(String),
    #[error("not in overlap: the u component vanishes")]
    NotInOverlap,
    #[error("chart switch required: {0}")]
    ChartSwitch(String),
    #[error("not an octonion automorphism (residual {0:.3e})")]
    NotAutomorphism(f64),
    #[error("inadmissible metric: {0}")]
    InadmissibleMetric(String),
    #[error("singular endomorphism")]
    Singular,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
