use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used to map failures onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input or I/O failure.
    Input,
    /// The requested computation does not apply to this graph.
    Inapplicable,
    /// A numerical check failed (residual, rank audit, bookkeeping).
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: node index {index} out of range (side has {bound} nodes)")]
    IndexOutOfRange {
        line: usize,
        index: usize,
        bound: usize,
    },

    #[error("graph must have at least one node on each side")]
    ZeroNodes,

    #[error("inconsistent alist: {0}")]
    InconsistentAlist(String),

    #[error("infeasible degree specification: {0}")]
    InfeasibleDegrees(String),

    #[error("could not generate a simple connected graph after {attempts} attempts")]
    RepairFailed { attempts: usize },

    #[error("dense decomposition of dimension {dimension} exceeds cap {cap}")]
    DenseCapExceeded { dimension: usize, cap: usize },

    #[error("eigendecomposition failed to converge")]
    NoConvergence,

    #[error("adjacency spectrum is not symmetric about the origin near {value}")]
    AsymmetricSpectrum { value: f64 },

    #[error("graph is not bi-regular")]
    NotBiregular,

    #[error("graph is not connected")]
    Disconnected,

    #[error("degrees ({d_v}, {d_c}) violate q2 >= 2, q1 >= 1")]
    DegreeHypothesis { d_v: usize, d_c: usize },

    #[error("graph is a forest (infinite girth)")]
    Forest,

    #[error("cycle length {k} outside the valid window [{girth}, {}] for girth {girth}", 2 * girth - 2)]
    LengthOutOfWindow { k: usize, girth: usize },

    #[error("rank audit failed: eigenvalue rank {spectral} but biadjacency rank {biadjacency} (expected twice)")]
    RankMismatch { spectral: usize, biadjacency: usize },

    #[error("adjacency rank {0} is odd")]
    OddRank(usize),

    #[error("spectrum has {actual} eigenvalues, expected {expected}")]
    SpectrumSize { expected: usize, actual: usize },

    #[error("{step} produced {actual} eigenvalues, expected {expected}")]
    StepCount {
        step: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("root xi = 1 produced by lambda = {lambda}, which is not +-sqrt(d_v d_c)")]
    SpuriousUnitRoot { lambda: f64 },

    #[error("k = {k}: raw count {raw} is {residual:e} away from an integer")]
    Residual { k: usize, raw: f64, residual: f64 },

    #[error("k = {k}: power sum has imaginary part {imag:e} (real part {real:e})")]
    ImaginaryPowerSum { k: usize, real: f64, imag: f64 },

    #[error("count for k = {k} is not a nonnegative integer: {detail}")]
    NonIntegralCount { k: usize, detail: String },

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("unsupported cycle length {0}")]
    UnsupportedLength(usize),

    #[error("missing count for k = {0}")]
    MissingCount(usize),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            Parse { .. }
            | IndexOutOfRange { .. }
            | ZeroNodes
            | InconsistentAlist(_)
            | InfeasibleDegrees(_)
            | RepairFailed { .. }
            | Io(_) => ErrorKind::Input,
            DenseCapExceeded { .. }
            | NotBiregular
            | Disconnected
            | DegreeHypothesis { .. }
            | Forest
            | LengthOutOfWindow { .. }
            | SizeCap(_)
            | UnsupportedLength(_)
            | MissingCount(_) => ErrorKind::Inapplicable,
            NoConvergence
            | AsymmetricSpectrum { .. }
            | RankMismatch { .. }
            | OddRank(_)
            | SpectrumSize { .. }
            | StepCount { .. }
            | SpuriousUnitRoot { .. }
            | Residual { .. }
            | ImaginaryPowerSum { .. }
            | NonIntegralCount { .. }
            | Overflow(_) => ErrorKind::Numerical,
        }
    }
}
