use std::path::PathBuf;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot open {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("file not found: {0}")]
    NotFound(PathBuf),
    #[error("unsupported image format in {0} (expected binary PGM `P5` or 8-bit grayscale PNG)")]
    UnsupportedFormat(PathBuf),
    #[error("malformed PGM header: {0}")]
    MalformedHeader(String),
    #[error("unsupported maxval {0}, only 255 is accepted")]
    UnsupportedMaxval(u32),
    #[error("truncated pixel payload: expected {expected} bytes, found {actual}")]
    TruncatedPayload { expected: usize, actual: usize },
    #[error("png: {0}")]
    Png(String),

    #[error("invalid image: {0}")]
    InvalidImage(String),
    #[error("rect {rect} does not fit inside a {width}x{height} image")]
    RectOutOfBounds {
        rect: crate::RoiRect,
        width: usize,
        height: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("series of length {len} is shorter than the smoothing window {window}")]
    SeriesTooShort { len: usize, window: usize },

    #[error("phantom: {0}")]
    Phantom(String),

    #[error("config key `{key}`: {message}")]
    Config { key: String, message: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("unknown report metric `{0}`")]
    UnknownMetric(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        let path = path.into();
        if source.kind() == std::io::ErrorKind::NotFound {
            Error::NotFound(path)
        } else {
            Error::Io { path, source }
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
