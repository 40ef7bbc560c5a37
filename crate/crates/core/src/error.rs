use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("invalid bipartition: {0}")]
    InvalidPartition(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not a Koenig-Egervary graph")]
    NotKoenigEgervary,
    #[error("set is not a critical independent set")]
    NotCriticalIndependent,
    #[error("sets must be disjoint")]
    NotDisjoint,
    #[error("set is not contained in the requested side")]
    NotWithinSide,
    #[error("{what} needs n <= {limit}, graph has n = {n}")]
    LimitExceeded { what: &'static str, n: usize, limit: usize },
    #[error("invalid graph family: {0}")]
    InvalidFamily(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("fixture `{name}` failed validation: {failures:?}")]
    FixtureValidation { name: String, failures: Vec<String> },
    #[error("property `{0}` does not fail on this graph")]
    PropertyHolds(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("corpus: {0}")]
    Corpus(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::LimitExceeded { .. })
    }
}
