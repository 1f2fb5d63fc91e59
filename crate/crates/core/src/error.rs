use thiserror::Error;

/// Errors produced by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not reach its tail bound within {terms} terms")]
    Truncation { terms: usize },

    #[error("point {re:+.6e}{im:+.6e}i lies within {guard:e} of a zero")]
    NearZero { re: f64, im: f64, guard: f64 },

    #[error("branch continuation failed: {0}")]
    Branch(String),

    #[error("interpolation did not reach {target:e} with {nodes} nodes")]
    Resolution { nodes: usize, target: f64 },

    #[error("quadrature did not converge: estimate {estimate:e} above tolerance {tol:e}")]
    Quadrature { estimate: f64, tol: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn near_zero(z: num_complex::Complex64, guard: f64) -> Self {
        Error::NearZero {
            re: z.re,
            im: z.im,
            guard,
        }
    }
}
