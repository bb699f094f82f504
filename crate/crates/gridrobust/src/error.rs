use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// Where in an input file a problem was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Line(u64),
    /// Position inside a JSON array, e.g. `edges[3]`.
    Element {
        section: &'static str,
        index: usize,
    },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(n) => write!(f, "line {n}"),
            Location::Element { section, index } => write!(f, "{section}[{index}]"),
        }
    }
}

fn at(loc: &Option<Location>) -> String {
    loc.as_ref().map(|l| format!(":{l}")).unwrap_or_default()
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}:{location}: {reason}")]
    Parse {
        file: String,
        location: Location,
        reason: String,
    },
    #[error("{file}{}: {source}", at(location))]
    Invalid {
        file: String,
        location: Option<Location>,
        #[source]
        source: gridrobust_core::Error,
    },
    #[error(transparent)]
    Analysis(#[from] gridrobust_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Stable category printed on stderr as `error[<category>]`.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Io { .. } => "io",
            Error::Parse { .. } => "parse",
            Error::Invalid { .. } => "validation",
            Error::Analysis(e) => e.category(),
            Error::Usage(_) => "usage",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.category() {
            "usage" => 2,
            "io" => 3,
            "parse" => 4,
            "validation" => 5,
            _ => 6,
        }
    }
}
