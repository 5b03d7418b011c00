use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Lattice shape or run configuration is not usable.
    #[error("configuration error: {0}")]
    Config(String),

    /// The cosine matrix `[cos θ^{kl}]` is (numerically) singular, so the dual triad is undefined.
    #[error("singular geometry{}: |det C| = {det:e}", site_suffix(.site))]
    SingularGeometry {
        det: f64,
        /// `(j, p₁, p₂)` when known.
        site: Option<(i64, i64, i64)>,
    },

    /// A gravitational-wave angle square root would be taken of a negative number.
    #[error("sign condition violated at T={time}: the expression involving {constant} is {value:e} < 0")]
    SignCondition {
        constant: &'static str,
        time: f64,
        value: f64,
    },

    #[error("malformed triad: {0}")]
    MalformedTriad(String),

    #[error("wavenumber q={q} does not fit the lattice; nearest admissible q is {nearest}")]
    IncompatibleWavevector { q: f64, nearest: f64 },

    #[error("direction of q is undefined at |q| = 0")]
    ZeroWavevector,

    #[error("closed-form eigenvectors are only available for q_X > 0 (got q_X = {qx})")]
    UnsupportedBranch { qx: f64 },

    #[error("defective matrix: repeated eigenvalue {re} + {im}i has a single eigenvector")]
    Defective { re: f64, im: f64 },

    #[error("field is not band-limited: top-half spectral weight {fraction:e} exceeds {limit:e}")]
    NotBandLimited { fraction: f64, limit: f64 },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn site_suffix(site: &Option<(i64, i64, i64)>) -> String {
    match site {
        Some((j, p1, p2)) => format!(" at j={j}, p=({p1},{p2})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attach a lattice location to a singular-geometry error.
    pub(crate) fn at_site(self, j: i64, p1: i64, p2: i64) -> Self {
        match self {
            Error::SingularGeometry { det, .. } => Error::SingularGeometry {
                det,
                site: Some((j, p1, p2)),
            },
            other => other,
        }
    }
}
