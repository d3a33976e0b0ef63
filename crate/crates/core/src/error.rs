use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop edge at vertex {0}; graphs must be simple")]
    LoopEdge(usize),

    #[error("{n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("{{{0}, {1}}} is not an edge of the graph")]
    NotAnEdge(usize, usize),

    #[error("invalid labels: {0}")]
    InvalidLabels(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("unknown field `{0}` (expected rational, gf2 or gfp:<p>)")]
    UnknownField(String),

    #[error("unknown format `{0}`")]
    UnknownFormat(String),

    #[error("{what}: {n} vertices exceeds the cap of {max}")]
    CapExceeded { what: &'static str, n: usize, max: usize },

    #[error("Betti position ({i}, {j}) has i + j > {n}; the number is 0")]
    CellOutOfRange { i: usize, j: usize, n: usize },

    #[error("malformed bouquet rooted at {root}: {reason}")]
    MalformedBouquet { root: usize, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
