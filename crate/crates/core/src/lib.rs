//! Persistent dynamic forests built from Euler-tour trees stored in finger
//! trees whose nodes are annotated with sets of vertex pairs.
//!
//! ```
//! use ettforest::{Forest, OrderedPairSet};
//!
//! let f = Forest::<OrderedPairSet>::of_singletons(4);
//! let f = f.link(0, 1).link(1, 2);
//! assert!(f.connected(0, 2).connected);
//! let f = f.cut(1, 2);
//! assert!(!f.connected(0, 2).connected);
//! ```

pub mod ett;
pub mod fingertree;
pub mod forest;
mod hooks;
#[cfg(any(test, feature = "instrument"))]
pub mod instrument;
pub mod measure;
pub mod oracle;

pub use ett::{EulerTree, RoseTree, TourError};
pub use fingertree::{FingerTree, Measure, Monoid, SearchResult};
pub use forest::{ConnectivityAnswer, CutStatus, Forest, LinkStatus};
pub use measure::{HashedPairSet, OrderedPairSet, PairSet, SetBackend, VertexId, VertexPair};
pub use oracle::NaiveForest;
